//! Dense matrices over a coefficient ring.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};


use crate::poly::Poly;
use crate::ring::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, R::one())
    }

    pub fn scalar(n: usize, a: R) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { a.clone() } else { R::zero() })
    }

    pub fn diag(d: &[R]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { R::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<R> = rows.into_iter().flatten().collect();
        Self::from_vec(r, c, data)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| R::from_i64(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<R>], rows: usize) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    /// Nilpotent Jordan block of size n (ones on the superdiagonal).
    pub fn jordan_block(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if j == i + 1 { R::one() } else { R::zero() })
    }

    /// Elementary matrix E_{ij}.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(rows, cols);
        m[(i, j)] = R::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[R] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<R> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn residue(&self) -> Matrix<R::Residue> {
        self.map(|x| x.residue())
    }

    pub fn lift(m: &Matrix<R::Residue>) -> Self {
        m.map(|x| R::lift(x))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, a: &R) -> Self {
        self.map(|x| x.clone() * a.clone())
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter()
                    .zip(v)
                    .fold(R::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents need invertibility.
    pub fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inverse().map(|m| m.pow(e.unsigned_abs()))
        }
    }

    pub fn commutator(&self, o: &Self) -> Self {
        &(self * o) - &(o * self)
    }

    pub fn kronecker(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self[(i / o.rows, j / o.cols)].clone() * o[(i % o.rows, j % o.cols)].clone()
        })
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        Self::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                o[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Self::from_vec(self.rows + o.rows, self.cols, data)
    }

    pub fn block_diag(blocks: &[Matrix<R>]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zero(r, c);
        let (mut i0, mut j0) = (0, 0);
        for b in blocks {
            m.set_block(i0, j0, b);
            i0 += b.rows;
            j0 += b.cols;
        }
        m
    }

    pub fn block(&self, i0: usize, j0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(i0 + i, j0 + j)].clone())
    }

    pub fn set_block(&mut self, i0: usize, j0: usize, b: &Matrix<R>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(i0 + i, j0 + j)] = b[(i, j)].clone();
            }
        }
    }

    /// Row-major flattening.
    pub fn to_vec(&self) -> Vec<R> {
        self.data.clone()
    }

    /// Gauss–Jordan with unit pivots; valid over local rings.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&i| a[(i, k)].is_unit())?;
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
            let u = a[(k, k)].inv()?;
            a.scale_row(k, &u);
            inv.scale_row(k, &u);
            for i in 0..n {
                if i != k && !a[(i, k)].is_zero() {
                    let f = a[(i, k)].clone();
                    a.add_row_multiple(i, k, &(-f.clone()));
                    inv.add_row_multiple(i, k, &(-f));
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.det().is_unit()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, u: &R) {
        for j in 0..self.cols {
            let x = self[(i, j)].clone();
            self[(i, j)] = x * u.clone();
        }
    }

    /// row_i += f · row_k
    pub fn add_row_multiple(&mut self, i: usize, k: usize, f: &R) {
        for j in 0..self.cols {
            let x = self[(i, j)].clone() + f.clone() * self[(k, j)].clone();
            self[(i, j)] = x;
        }
    }

    /// det(x·1 − A) by the division-free Berkowitz algorithm.
    pub fn charpoly(&self) -> Poly<R> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        // coefficients high degree first
        let mut v = vec![R::one(), -self[(0, 0)].clone()];
        for r in 1..n {
            let ar = self.block(0, 0, r, r);
            let row = self.block(r, 0, 1, r);
            let mut s = self.block(0, r, r, 1);
            let mut col = vec![R::one(), -self[(r, r)].clone()];
            for _ in 0..r {
                col.push(-(&row * &s)[(0, 0)].clone());
                s = &ar * &s;
            }
            let mut next = vec![R::zero(); r + 2];
            for (i, ni) in next.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate().take(i + 1) {
                    *ni = ni.clone() + col[i - j].clone() * vj.clone();
                }
            }
            v = next;
        }
        v.reverse();
        Poly::new(v)
    }

    pub fn det(&self) -> R {
        let cp = self.charpoly();
        let c0 = cp.coeff(0);
        if self.rows % 2 == 0 {
            c0
        } else {
            -c0
        }
    }

    /// Xⁿ = 0 for square X of size n.
    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u64).is_zero()
    }

    pub fn is_unipotent(&self) -> bool {
        self.is_square() && (self - &Self::identity(self.rows)).is_nilpotent()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(
            (0..self.rows)
                .map(|i| {
                    serde_json::Value::from(
                        self.row(i).iter().map(|x| x.to_json()).collect::<Vec<_>>(),
                    )
                })
                .collect::<Vec<_>>(),
        )
    }

    pub fn random<G: rand::Rng + ?Sized>(rows: usize, cols: usize, rng: &mut G) -> Self {
        Self::from_fn(rows, cols, |_, _| R::random(rng))
    }

    pub fn random_invertible<G: rand::Rng + ?Sized>(n: usize, rng: &mut G) -> Self {
        loop {
            let m = Self::random(n, n, rng);
            if m.is_invertible() {
                return m;
            }
        }
    }
}

/// Row echelon data over a field.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub rref: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn echelon(&self) -> Echelon<F> {
        let mut a = self.clone();
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let u = a[(r, c)].inv().unwrap();
            a.scale_row(r, &u);
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = -a[(i, c)].clone();
                    a.add_row_multiple(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of {v : Mv = 0}, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let Echelon { rref, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![F::zero(); self.cols];
                v[fc] = F::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -rref[(r, fc)].clone();
                }
                v
            })
            .collect()
    }

    /// Some x with Mx = b.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let aug = self.hstack(&Matrix::from_cols(&[b.to_vec()], self.rows));
        let Echelon { rref, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = rref[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Basis of the column space, taken from the original pivot columns.
    pub fn column_basis(&self) -> Vec<Vec<F>> {
        self.echelon().pivots.iter().map(|&c| self.col(c)).collect()
    }
}

/// Rank of a family of vectors of equal length.
pub fn span_dim<F: Field>(vs: &[Vec<F>], len: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    Matrix::from_cols(vs, len).rank()
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl<R: Ring> Mul for &Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, o: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out: Matrix<R> = Matrix::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * o.data[k * o.cols + j].clone();
                }
            }
        }
        out
    }
}

impl<R: Ring> Mul for Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, o: Matrix<R>) -> Matrix<R> {
        &self * &o
    }
}

impl<R: Ring> Add for &Matrix<R> {
    type Output = Matrix<R>;
    fn add(self, o: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<R: Ring> Add for Matrix<R> {
    type Output = Matrix<R>;
    fn add(self, o: Matrix<R>) -> Matrix<R> {
        &self + &o
    }
}

impl<R: Ring> Sub for &Matrix<R> {
    type Output = Matrix<R>;
    fn sub(self, o: &Matrix<R>) -> Matrix<R> {
        self + &(-o)
    }
}

impl<R: Ring> Sub for Matrix<R> {
    type Output = Matrix<R>;
    fn sub(self, o: Matrix<R>) -> Matrix<R> {
        &self - &o
    }
}

impl<R: Ring> Neg for &Matrix<R> {
    type Output = Matrix<R>;
    fn neg(self) -> Matrix<R> {
        self.map(|x| -x.clone())
    }
}

impl<R: Ring> Neg for Matrix<R> {
    type Output = Matrix<R>;
    fn neg(self) -> Matrix<R> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{F7, Z25, Z9};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn mat7(v: Vec<u64>, n: usize) -> Matrix<F7> {
        Matrix::from_vec(n, n, v.into_iter().map(|x| F7::from_i64(x as i64)).collect())
    }

    fn naive_det<R: Ring>(m: &Matrix<R>) -> R {
        let n = m.rows();
        if n == 0 {
            return R::one();
        }
        let mut acc = R::zero();
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |a, b| {
                m[(a + 1, if b < j { b } else { b + 1 })].clone()
            });
            let term = m[(0, j)].clone() * naive_det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn charpoly_cayley_hamilton_and_det() {
        let m = Matrix::<Z9>::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 0]]);
        assert!(m.charpoly().eval_matrix(&m).is_zero());
        assert_eq!(m.det(), naive_det(&m));
        assert_eq!(m.charpoly().coeff(2), -m.trace());
    }

    #[test]
    fn inverse_over_local_ring() {
        let m = Matrix::<Z25>::from_i64(&[&[5, 1], &[1, 0]]);
        let i = m.inverse().unwrap();
        assert!((&m * &i).is_identity());
        assert!(Matrix::<Z25>::from_i64(&[&[5, 0], &[0, 1]]).inverse().is_none());
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::<F7>::identity(3).kernel_basis().is_empty());
        assert_eq!(Matrix::<F7>::zero(2, 3).kernel_basis().len(), 3);
    }

    proptest! {
        #[test]
        fn mul_associative(a in prop::collection::vec(0u64..7, 9),
                           b in prop::collection::vec(0u64..7, 9),
                           c in prop::collection::vec(0u64..7, 9)) {
            let (a, b, c) = (mat7(a, 3), mat7(b, 3), mat7(c, 3));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn det_multiplicative(a in prop::collection::vec(0u64..7, 9),
                              b in prop::collection::vec(0u64..7, 9)) {
            let (a, b) = (mat7(a, 3), mat7(b, 3));
            prop_assert_eq!((&a * &b).det(), a.det() * b.det());
            prop_assert_eq!(a.det(), naive_det(&a));
        }

        #[test]
        fn kernel_is_kernel(a in prop::collection::vec(0u64..7, 12)) {
            let m = Matrix::from_vec(3, 4, a.into_iter().map(|x| F7::from_i64(x as i64)).collect());
            let k = m.kernel_basis();
            prop_assert_eq!(k.len(), 4 - m.rank());
            for v in &k {
                prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(span_dim(&k, 4), k.len());
        }
    }
}
