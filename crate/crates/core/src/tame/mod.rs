//! Conjugate self-dual representations of the q-tame group.

mod cohomology;
mod decompose;
mod level_raising;
mod pairs;
mod tangent;

use serde::Serialize;

pub use cohomology::{ad_module, tame_cohomology, AdModule, CohomologyDims, TameModule};
pub use decompose::{hensel_decompose_rep, BlockDecomposition};
pub use level_raising::{
    level_raising_standard, tangent_level_raising, LevelRaisingReport,
};
pub use pairs::{enumerate_tame_pairs, PairCount};
pub use tangent::tangent_min;

use crate::error::{pre, Error, Result};
use crate::gn::{GnElement, PresentedGroup, PresentedGroupHom};
use crate::matrix::Matrix;
use crate::nilpotent::{trunc_exp, Partition};
use crate::ring::{Field, Ring};

/// r(t) = (A, 1), r(φ_q) = (B, −χ(φ_q))𝔠 with χ(φ_q) = (−1)^μ·q^c.
#[derive(Clone, Debug, PartialEq)]
pub struct TameRep<R> {
    pub n: usize,
    pub q: i64,
    pub a: Matrix<R>,
    pub b: Matrix<R>,
    pub mu_parity: u8,
    pub cyc_power: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TangentReport {
    pub h0: usize,
    pub h1: usize,
    pub l1: usize,
    pub l: usize,
}

impl TangentReport {
    /// dim L¹ = N² + dim L − dim H⁰
    pub fn identity_holds(&self, n: usize) -> bool {
        self.l1 + self.h0 == n * n + self.l
    }
}

/// T_q = ⟨t, φ | φtφ⁻¹ = t^q⟩.
pub fn tame_group(q: i64) -> PresentedGroup {
    PresentedGroup {
        generators: vec!["t".into(), "phi".into()],
        relations: vec![("phi t phi^-1 = t^q".into(), vec![(1, 1), (0, 1), (1, -1), (0, -q)])],
    }
}

impl<R: Ring> TameRep<R> {
    pub fn new(q: i64, a: Matrix<R>, b: Matrix<R>, mu_parity: u8, cyc_power: i64) -> Self {
        TameRep {
            n: a.rows(),
            q,
            a,
            b,
            mu_parity: mu_parity % 2,
            cyc_power,
        }
    }

    /// The minimally ramified representative of Jordan type λ:
    /// A = exp(J_λ), B = minimal_B0(λ, q).
    pub fn minimal(partition: &Partition, q: i64, mu_parity: u8, cyc_power: i64) -> Result<Self> {
        let a = trunc_exp(&partition.nilpotent::<R>())?;
        Ok(Self::new(q, a, minimal_b0(partition, q), mu_parity, cyc_power))
    }

    pub fn q_elt(&self) -> R {
        R::from_i64(self.q)
    }

    pub fn chi_phi(&self) -> Result<R> {
        let s = if self.mu_parity == 1 { -R::one() } else { R::one() };
        let qc = self
            .q_elt()
            .powi(self.cyc_power)
            .ok_or_else(|| Error::Precondition("q is not a unit".into()))?;
        Ok(s * qc)
    }

    /// μ-component m of r(φ_q) = (B, m)𝔠, so that ν∘r(φ_q) = χ(φ_q).
    pub fn m(&self) -> Result<R> {
        Ok(-self.chi_phi()?)
    }

    pub fn r_t(&self) -> GnElement<R> {
        GnElement::new(self.a.clone(), R::one(), false)
    }

    pub fn r_phi(&self) -> Result<GnElement<R>> {
        Ok(GnElement::new(self.b.clone(), self.m()?, true))
    }

    /// r(φ_q²) = (m·B·ᵗB⁻¹, m²)
    pub fn r_phi_w(&self) -> Result<GnElement<R>> {
        let p = self.r_phi()?;
        p.mul(&p)
    }

    pub fn to_hom(&self) -> Result<PresentedGroupHom<GnElement<R>>> {
        PresentedGroupHom::new(tame_group(self.q), vec![self.r_t(), self.r_phi()?])
    }

    pub fn validate(&self) -> Result<Validation> {
        if R::from_i64(self.q).residue() == <R::Residue as num_traits::Zero>::zero() {
            return pre(format!("ℓ = {} divides q = {}", R::CHAR, self.q));
        }
        let mut diagnostics = vec![];
        if self.a.rows() != self.n || self.b.rows() != self.n || !self.a.is_square() || !self.b.is_square() {
            return Err(Error::Shape("A and B must be N×N".into()));
        }
        if !self.a.is_unipotent() {
            diagnostics.push("A is not unipotent".to_string());
        }
        match (self.a.transpose().inverse(), self.b.inverse()) {
            (Some(ati), Some(bi)) => {
                let lhs = &(&self.b * &ati) * &bi;
                if lhs != self.a.pow(self.q as u64) {
                    diagnostics.push("B·ᵗA⁻¹·B⁻¹ ≠ A^q".to_string());
                }
            }
            (None, _) => diagnostics.push("A is not invertible".to_string()),
            (_, None) => diagnostics.push("B is not invertible".to_string()),
        }
        if diagnostics.is_empty() {
            if let Err(e) = self.to_hom() {
                diagnostics.push(format!("homomorphism check: {e}"));
            }
        }
        Ok(Validation {
            ok: diagnostics.is_empty(),
            diagnostics,
        })
    }
}

/// diag(A_{λ₁}, …) with A_m antidiagonal 1, −q, …, (−q)^{m−1} read from the
/// bottom-left corner to the top-right.
pub fn minimal_b0<R: Ring>(partition: &Partition, q: i64) -> Matrix<R> {
    let mq = -R::from_i64(q);
    let blocks: Vec<Matrix<R>> = partition
        .parts()
        .iter()
        .map(|&m| {
            let mut blk = Matrix::zero(m, m);
            for k in 0..m {
                blk[(m - 1 - k, k)] = mq.pow(k as u64);
            }
            blk
        })
        .collect();
    Matrix::block_diag(&blocks)
}

/// The matrix of a linear operator on M_N(R) in the row-major basis.
pub fn operator_matrix<R: Ring>(n: usize, f: impl Fn(&Matrix<R>) -> Matrix<R>) -> Matrix<R> {
    let cols: Vec<Vec<R>> = (0..n * n)
        .map(|k| f(&Matrix::unit(n, n, k / n, k % n)).to_vec())
        .collect();
    Matrix::from_cols(&cols, n * n)
}

pub(crate) fn require_field_char<F: Field>(n: usize) -> Result<()> {
    if (F::CHAR as usize) < n {
        return pre(format!("need ℓ ≥ N, got ℓ = {} and N = {n}", F::CHAR));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{F5, F7};

    #[test]
    fn b0_examples() {
        let p1 = Partition::new(vec![1]).unwrap();
        assert_eq!(minimal_b0::<F7>(&p1, 3), Matrix::identity(1));
        let p2 = Partition::new(vec![2]).unwrap();
        assert_eq!(minimal_b0::<F7>(&p2, 3), Matrix::from_i64(&[&[0, -3], &[1, 0]]));
        let p3 = Partition::new(vec![3]).unwrap();
        let b = minimal_b0::<F7>(&p3, 2);
        assert_eq!(b, Matrix::from_i64(&[&[0, 0, 4], &[0, -2, 0], &[1, 0, 0]]));
        for p in Partition::all(4) {
            let b = minimal_b0::<F7>(&p, 2);
            let x = p.nilpotent::<F7>();
            let lhs = &(&b * &x.transpose()) * &b.inverse().unwrap();
            assert_eq!(lhs, x.scale(&F7::from_i64(-2)));
        }
    }

    #[test]
    fn validation_examples() {
        let any_b = Matrix::<F5>::from_i64(&[&[1, 2], &[3, 4]]);
        let r = TameRep::new(2, Matrix::identity(2), any_b, 0, 0);
        let v = r.validate().unwrap();
        assert!(v.ok, "{:?}", v.diagnostics);
        let p2 = Partition::new(vec![2]).unwrap();
        let r = TameRep::<F5>::minimal(&p2, 2, 1, -1).unwrap();
        assert!(r.validate().unwrap().ok);
        let a = &Matrix::<F5>::identity(2) + &Matrix::jordan_block(2);
        let bad = TameRep::new(2, a, Matrix::identity(2), 0, 0);
        let v = bad.validate().unwrap();
        assert!(!v.ok);
        assert!(TameRep::new(5, Matrix::<F5>::identity(1), Matrix::identity(1), 0, 0)
            .validate()
            .is_err());
    }
}
