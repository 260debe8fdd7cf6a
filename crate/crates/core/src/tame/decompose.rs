use crate::error::{contract, pre, Result};
use crate::hensel::hensel_factor;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::ring::Ring;

/// M = M₀ ⊕ ⋯ ⊕ M_s with ρ(φ) block diagonal in the new basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDecomposition<R> {
    /// Columns are the new basis; blocks are consecutive.
    pub basis_change: Matrix<R>,
    pub sizes: Vec<usize>,
    /// Characteristic polynomial of ρ(φ) on each block.
    pub factors: Vec<Poly<R>>,
    pub phi: Matrix<R>,
    pub t: Matrix<R>,
    /// q is not an eigenvalue of φ on Hom(M̄_j, M̄_i) for all i ≠ j.
    pub part2_hypothesis: bool,
}

impl<R: Ring> BlockDecomposition<R> {
    fn offsets(&self) -> Vec<usize> {
        let mut o = vec![0];
        for s in &self.sizes {
            o.push(o.last().unwrap() + s);
        }
        o
    }

    pub fn phi_block(&self, i: usize) -> Matrix<R> {
        let o = self.offsets();
        self.phi.block(o[i], o[i], self.sizes[i], self.sizes[i])
    }

    pub fn t_block(&self, i: usize, j: usize) -> Matrix<R> {
        let o = self.offsets();
        self.t.block(o[i], o[j], self.sizes[i], self.sizes[j])
    }

    /// Idempotents of the decomposition in the original basis.
    pub fn projectors(&self) -> Vec<Matrix<R>> {
        let n = self.basis_change.rows();
        let gi = self.basis_change.inverse().expect("basis change invertible");
        let o = self.offsets();
        (0..self.sizes.len())
            .map(|i| {
                let mut e = Matrix::zero(n, n);
                for k in o[i]..o[i + 1] {
                    e[(k, k)] = R::one();
                }
                &(&self.basis_change * &e) * &gi
            })
            .collect()
    }
}

fn is_block_diagonal<R: Ring>(m: &Matrix<R>, sizes: &[usize]) -> bool {
    let mut block_of = vec![];
    for (b, &s) in sizes.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(b, s));
    }
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| block_of[i] == block_of[j] || m[(i, j)].is_zero()))
}

/// The unique decomposition of M lifting the coprime residual factorization
/// of the characteristic polynomial of ρ(φ).
pub fn hensel_decompose_rep<R: Ring>(
    rho_t: &Matrix<R>,
    rho_phi: &Matrix<R>,
    residual: &[Poly<R::Residue>],
    q: i64,
) -> Result<BlockDecomposition<R>> {
    let n = rho_phi.rows();
    let cp = rho_phi.charpoly();
    let factors = hensel_factor(&cp, residual)?;
    let mut cols: Vec<Vec<R>> = vec![];
    let mut sizes = vec![];
    for i in 0..factors.len() {
        let others: Vec<Poly<R>> = factors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, f)| f.clone())
            .collect();
        let qi = Poly::product(&others).eval_matrix(rho_phi);
        let piv = qi.residue().echelon().pivots;
        if piv.len() as isize != factors[i].degree() {
            return contract("block rank differs from the factor degree");
        }
        // normalize so the block basis is the identity on its pivot rows
        let c = Matrix::from_cols(&piv.iter().map(|&c| qi.col(c)).collect::<Vec<_>>(), n);
        let rows = c.transpose().residue().echelon().pivots;
        let sub = Matrix::from_fn(rows.len(), rows.len(), |a, b| c[(rows[a], b)].clone());
        let Some(sub_inv) = sub.inverse() else {
            return contract("block basis has no unit minor");
        };
        let c = &c * &sub_inv;
        cols.extend((0..c.cols()).map(|j| c.col(j)));
        sizes.push(piv.len());
    }
    let g = Matrix::from_cols(&cols, n);
    let Some(gi) = g.inverse() else {
        return contract("block bases do not span M");
    };
    let phi = &(&gi * rho_phi) * &g;
    let t = &(&gi * rho_t) * &g;
    if !is_block_diagonal(&phi, &sizes) {
        return contract("ρ(φ) is not block diagonal in the Hensel basis");
    }
    let mut d = BlockDecomposition {
        basis_change: g,
        sizes,
        factors,
        phi,
        t,
        part2_hypothesis: false,
    };
    let qres = R::from_i64(q).residue();
    let blocks: Vec<_> = (0..d.sizes.len()).map(|i| d.phi_block(i).residue()).collect();
    let mut hyp = true;
    for i in 0..blocks.len() {
        for j in 0..blocks.len() {
            if i == j {
                continue;
            }
            let Some(inv_t) = blocks[j].inverse().map(|m| m.transpose()) else {
                return pre("ρ(φ) is not invertible");
            };
            let op = blocks[i].kronecker(&inv_t);
            let k = op.rows();
            let shifted = &op - &Matrix::scalar(k, qres.clone());
            if shifted.rank() < k {
                hyp = false;
            }
        }
    }
    d.part2_hypothesis = hyp;
    if hyp && !is_block_diagonal(&d.t, &d.sizes) {
        return contract("contract violation: ρ(t) has off-diagonal blocks although q avoids the Hom eigenvalues");
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{F7, Z49};

    #[test]
    fn already_diagonal_over_field() {
        let phi = Matrix::<F7>::diag(&[F7::from_i64(1), F7::from_i64(2)]);
        let res = vec![Poly::linear(F7::from_i64(1)), Poly::linear(F7::from_i64(2))];
        let d = hensel_decompose_rep(&Matrix::identity(2), &phi, &res, 3).unwrap();
        assert!(d.basis_change.is_identity());
        assert_eq!(d.sizes, vec![1, 1]);
    }

    #[test]
    fn dense_lift_mod_49() {
        let phi = Matrix::<Z49>::from_i64(&[&[1 + 7 * 3, 7 * 2], &[7 * 5, 2 + 7]]);
        let res = vec![Poly::linear(F7::from_i64(1)), Poly::linear(F7::from_i64(2))];
        let d = hensel_decompose_rep(&Matrix::identity(2), &phi, &res, 3).unwrap();
        assert_eq!(d.sizes, vec![1, 1]);
        let p = d.projectors();
        assert!((&p[0] + &p[1]).is_identity());
        assert_eq!(&p[0] * &phi, &phi * &p[0]);
    }
}
