use serde::Serialize;

use super::{operator_matrix, TameRep};
use crate::error::{contract, Result};
use crate::matrix::Matrix;
use crate::ring::Field;

/// A finite k[T_q]-module: t acts by `t`, φ by `p`, and φtφ⁻¹ = t^q.
#[derive(Clone, Debug, PartialEq)]
pub struct TameModule<F> {
    pub t: Matrix<F>,
    pub p: Matrix<F>,
    pub q: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub h0: usize,
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
}

/// Which group ad r̄ is restricted to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdModule {
    /// Γ̃ = T_q, φ acting through ad r̄(φ_q).
    Full,
    /// Γ = T_{q²}, generated by t and φ_q².
    Sub,
}

impl<F: Field> TameModule<F> {
    pub fn trivial(q: u64) -> Self {
        TameModule {
            t: Matrix::identity(1),
            p: Matrix::identity(1),
            q,
        }
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    /// 1 + T + ⋯ + T^{q−1}
    pub fn norm_t(&self) -> Matrix<F> {
        let d = self.dim();
        let mut acc = Matrix::zero(d, d);
        let mut pw = Matrix::identity(d);
        for _ in 0..self.q {
            acc = &acc + &pw;
            pw = &pw * &self.t;
        }
        acc
    }

    /// Relation map (x_t, x_φ) ↦ x_φ + P·x_t − (PTP⁻¹)·x_φ − (1 + ⋯ + T^{q−1})·x_t.
    pub fn cocycle_matrix(&self) -> Matrix<F> {
        let d = self.dim();
        let id = Matrix::identity(d);
        let pinv = self.p.inverse().expect("φ acts invertibly");
        let ptp = &(&self.p * &self.t) * &pinv;
        (&self.p - &self.norm_t()).hstack(&(&id - &ptp))
    }

    /// m ↦ ((T − 1)m, (P − 1)m)
    pub fn coboundary_matrix(&self) -> Matrix<F> {
        let id = Matrix::identity(self.dim());
        (&self.t - &id).vstack(&(&self.p - &id))
    }

    pub fn dims(&self) -> Result<CohomologyDims> {
        let d = self.dim();
        let z = self.cocycle_matrix();
        let bmat = self.coboundary_matrix();
        if !(&z * &bmat).is_zero() {
            return contract("coboundaries fail the cocycle relation");
        }
        let b1 = bmat.rank();
        let h0 = d - b1;
        let z1 = 2 * d - z.rank();
        Ok(CohomologyDims {
            h0,
            z1,
            b1,
            h1: z1 - b1,
        })
    }
}

/// ad r̄ as a module for T_q or T_{q²}.
pub fn ad_module<F: Field>(r: &TameRep<F>, which: AdModule) -> Result<TameModule<F>> {
    let n = r.n;
    let rt = r.r_t();
    let t = operator_matrix(n, |x| rt.ad(x).expect("square"));
    let (g, q) = match which {
        AdModule::Full => (r.r_phi()?, r.q as u64),
        AdModule::Sub => (r.r_phi_w()?, (r.q * r.q) as u64),
    };
    let p = operator_matrix(n, |x| g.ad(x).expect("square"));
    Ok(TameModule { t, p, q })
}

/// (dim H⁰, dim H¹) of ad r̄; coefficients are a field by type.
pub fn tame_cohomology<F: Field>(r: &TameRep<F>, which: AdModule) -> Result<(usize, usize)> {
    let v = r.validate()?;
    if !v.ok {
        return crate::error::pre(format!("invalid tame representation: {:?}", v.diagnostics));
    }
    let d = ad_module(r, which)?.dims()?;
    Ok((d.h0, d.h1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::F7;

    #[test]
    fn trivial_module() {
        // ℓ ∤ q − 1: only the φ-direction survives
        let d = TameModule::<F7>::trivial(3).dims().unwrap();
        assert_eq!((d.h0, d.h1), (1, 1));
        // ℓ | q − 1: t-direction is free too
        let d = TameModule::<F7>::trivial(8).dims().unwrap();
        assert_eq!((d.h0, d.h1), (1, 2));
    }

    #[test]
    fn rank_one_ad() {
        let r = TameRep::<F7>::new(2, Matrix::identity(1), Matrix::identity(1), 0, 0);
        assert_eq!(tame_cohomology(&r, AdModule::Sub).unwrap(), (1, 1));
        // 𝔠 acts on ad by x ↦ −x, so nothing survives over T_q
        assert_eq!(tame_cohomology(&r, AdModule::Full).unwrap(), (0, 0));
    }
}
