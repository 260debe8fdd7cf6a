//! Truncated exponential and logarithm, and Jordan types of nilpotents.

use serde::Serialize;

use crate::error::{pre, Result};
use crate::matrix::Matrix;
use crate::ring::{Field, Ring};

/// A partition of n, parts nonincreasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return pre("partition parts must be positive");
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// All partitions of n, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = vec![];
        rec(n, n, &mut vec![], &mut out);
        out
    }

    /// Block diagonal sum of Jordan blocks J_{λ₁} ⊕ J_{λ₂} ⊕ ….
    pub fn nilpotent<R: Ring>(&self) -> Matrix<R> {
        let blocks: Vec<_> = self.0.iter().map(|&m| Matrix::jordan_block(m)).collect();
        Matrix::block_diag(&blocks)
    }
}

fn check_char<R: Ring>(n: usize) -> Result<()> {
    if (R::CHAR as usize) < n {
        return pre(format!(
            "truncated exp/log needs ℓ ≥ n, got ℓ = {} and n = {n}",
            R::CHAR
        ));
    }
    Ok(())
}

/// 1 + X + X²/2! + ⋯ + X^{n−1}/(n−1)!
pub fn trunc_exp<R: Ring>(x: &Matrix<R>) -> Result<Matrix<R>> {
    let n = x.rows();
    check_char::<R>(n)?;
    if !x.is_nilpotent() {
        return pre("trunc_exp input is not nilpotent");
    }
    let mut acc = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..n {
        let ik = R::from_i64(k as i64).inv().expect("k < ℓ is a unit");
        term = (&term * x).scale(&ik);
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Σ_{k=1}^{n−1} (−1)^{k+1} (A−1)^k / k
pub fn trunc_log<R: Ring>(a: &Matrix<R>) -> Result<Matrix<R>> {
    let n = a.rows();
    check_char::<R>(n)?;
    let u = a - &Matrix::identity(n);
    if !u.is_nilpotent() {
        return pre("trunc_log input is not unipotent");
    }
    let mut acc = Matrix::zero(n, n);
    let mut pw = Matrix::identity(n);
    for k in 1..n {
        pw = &pw * &u;
        let mut c = R::from_i64(k as i64).inv().expect("k < ℓ is a unit");
        if k % 2 == 0 {
            c = -c;
        }
        acc = &acc + &pw.scale(&c);
    }
    Ok(acc)
}

/// Jordan type from the rank sequence of powers.
pub fn jordan_partition<F: Field>(x: &Matrix<F>) -> Result<Partition> {
    if !x.is_nilpotent() {
        return pre("jordan_partition input is not nilpotent");
    }
    let n = x.rows();
    let mut ranks = vec![n];
    let mut pw = Matrix::identity(n);
    for _ in 1..=n {
        pw = &pw * x;
        ranks.push(pw.rank());
    }
    // at_least[i] = number of blocks of size ≥ i
    let at_least: Vec<usize> = (1..=n).map(|i| ranks[i - 1] - ranks[i]).collect();
    let mut parts = vec![];
    for i in 1..=n {
        let next = if i < n { at_least[i] } else { 0 };
        for _ in 0..(at_least[i - 1] - next) {
            parts.push(i);
        }
    }
    Partition::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{F5, F7};

    #[test]
    fn exp_j3_f7() {
        let e = trunc_exp(&Matrix::<F7>::jordan_block(3)).unwrap();
        assert_eq!(e, Matrix::from_i64(&[&[1, 1, 4], &[0, 1, 1], &[0, 0, 1]]));
        assert_eq!(trunc_log(&e).unwrap(), Matrix::jordan_block(3));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(trunc_exp(&Matrix::<F5>::identity(2)).is_err());
        assert!(trunc_log(&Matrix::<F5>::zero(2, 2)).is_err());
        assert!(trunc_exp(&Matrix::<crate::ring::F3>::zero(4, 4)).is_err());
        assert!(jordan_partition(&Matrix::<F5>::identity(2)).is_err());
    }

    #[test]
    fn partitions_enumerated() {
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(Partition::all(3)[0].parts(), &[3]);
        assert_eq!(
            jordan_partition(&Matrix::<F5>::zero(3, 3)).unwrap().parts(),
            &[1, 1, 1]
        );
        for p in Partition::all(5) {
            assert_eq!(jordan_partition(&p.nilpotent::<F7>()).unwrap(), p);
        }
    }
}
