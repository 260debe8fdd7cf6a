use super::cohomology::{ad_module, AdModule};
use super::{operator_matrix, require_field_char, TameRep, TangentReport};
use crate::error::{contract, pre, Result};
use crate::matrix::{span_dim, Matrix};
use crate::nilpotent::{trunc_exp, trunc_log};
use crate::ring::{Dual, Field};

/// Z ↦ x_t where exp(X̄ + ε[Z, X̄]) = (1 + ε·x_t)·Ā, computed over k[ε].
pub(crate) fn orbit_tangent_map<F: Field>(xbar: &Matrix<F>) -> Result<Matrix<F>> {
    let n = xbar.rows();
    let abar = trunc_exp(xbar)?;
    let abar_inv = abar.inverse().expect("unipotent");
    let xd: Matrix<Dual<F>> = xbar.map(|x| Dual::constant(x.clone()));
    let ainv_d = abar_inv.map(|x| Dual::constant(x.clone()));
    let mut cols = vec![];
    for k in 0..n * n {
        let z = Matrix::<F>::unit(n, n, k / n, k % n);
        let zc = z.commutator(xbar).map(|x| Dual::new(F::zero(), x.clone()));
        let a = trunc_exp(&(&xd + &zc))?;
        let xt = (&a * &ainv_d).map(|d| d.b.clone());
        cols.push(xt.to_vec());
    }
    Ok(Matrix::from_cols(&cols, n * n))
}

/// Assembles the report from a spanning set of L¹ inside Z¹ ⊂ (ad)².
pub(crate) fn report_from_l1<F: Field>(
    r: &TameRep<F>,
    l1: &[Vec<F>],
) -> Result<TangentReport> {
    let n = r.n;
    let module = ad_module(r, AdModule::Full)?;
    let dims = module.dims()?;
    let z = module.cocycle_matrix();
    for v in l1 {
        if z.apply(v).iter().any(|x| !x.is_zero()) {
            return contract("L¹ vector fails the cocycle relation");
        }
    }
    let d = 2 * n * n;
    let l1_dim = span_dim(l1, d);
    let bmat = module.coboundary_matrix();
    let b1: Vec<Vec<F>> = (0..bmat.cols()).map(|j| bmat.col(j)).collect();
    let mut both = l1.to_vec();
    both.extend(b1.iter().cloned());
    let sum = span_dim(&both, d);
    if sum != l1_dim {
        return contract("L¹ is not stable under conjugation by 1 + 𝔪·M_N");
    }
    Ok(TangentReport {
        h0: dims.h0,
        h1: dims.h1,
        l1: l1_dim,
        l: sum - dims.b1,
    })
}

/// Tangent space of the minimally ramified problem at r̄.
pub fn tangent_min<F: Field>(r: &TameRep<F>) -> Result<TangentReport> {
    let n = r.n;
    require_field_char::<F>(n)?;
    let v = r.validate()?;
    if !v.ok {
        return pre(format!("invalid tame representation: {:?}", v.diagnostics));
    }
    let xbar = trunc_log(&r.a)?;
    let lt = orbit_tangent_map(&xbar)?;
    // differential of the orbit map is Z ↦ (1 − Ad Ā)Z
    let ad_a = operator_matrix(n, |z| r.r_t().ad(z).expect("square"));
    if lt != &Matrix::identity(n * n) - &ad_a {
        return contract("orbit tangent differs from (1 − Ad Ā)");
    }
    let module = ad_module(r, AdModule::Full)?;
    let z = module.cocycle_matrix();
    let nn = n * n;
    // unknowns (Z, x_φ)
    let embed = Matrix::block_diag(&[lt.clone(), Matrix::identity(nn)]);
    let sys = &z * &embed;
    let l1: Vec<Vec<F>> = sys
        .kernel_basis()
        .into_iter()
        .map(|sol| embed.apply(&sol))
        .collect();
    report_from_l1(r, &l1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::Partition;
    use crate::ring::{F11, F7};

    #[test]
    fn scalar_case() {
        let r = TameRep::<F7>::minimal(&Partition::new(vec![1]).unwrap(), 2, 0, 0).unwrap();
        let t = tangent_min(&r).unwrap();
        assert_eq!(t.l1, 1);
        assert_eq!(t.l, t.h0);
    }

    #[test]
    fn j2_q2_l7() {
        let r = TameRep::<F7>::minimal(&Partition::new(vec![2]).unwrap(), 2, 1, -1).unwrap();
        let t = tangent_min(&r).unwrap();
        assert_eq!(t.l, t.h0);
        assert!(t.identity_holds(2));
    }

    #[test]
    fn j21_over_f11() {
        let r = TameRep::<F11>::minimal(&Partition::new(vec![2, 1]).unwrap(), 2, 0, -2).unwrap();
        let t = tangent_min(&r).unwrap();
        assert_eq!(t.l1, 9);
        assert_eq!(t.l, t.h0);
    }
}
