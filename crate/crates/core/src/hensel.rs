//! Lifting coprime factorizations from the residue field.


use crate::error::{contract, pre, Result};
use crate::poly::Poly;
use crate::ring::{Field, Ring};

/// Partial-fraction cofactors: sᵢ with Σ sᵢ·∏_{j≠i} fⱼ = 1 and deg sᵢ < deg fᵢ.
pub fn cofactors<F: Field>(fs: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
    let mut out = vec![];
    for i in 0..fs.len() {
        let q = Poly::product(
            &fs.iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, f)| f.clone())
                .collect::<Vec<_>>(),
        );
        let (g, s, _) = q.xgcd(&fs[i]);
        if g.degree() != 0 {
            return pre(format!("residual factor {i} is not coprime to the others"));
        }
        out.push(if fs[i].degree() == 0 {
            Poly::zero()
        } else {
            s.divrem(&fs[i]).1
        });
    }
    Ok(out)
}

/// The unique monic lifts of a coprime residual factorization of P.
pub fn hensel_factor<R: Ring>(p: &Poly<R>, residual: &[Poly<R::Residue>]) -> Result<Vec<Poly<R>>> {
    if !p.is_monic() {
        return pre("polynomial is not monic");
    }
    if residual.iter().any(|f| !f.is_monic()) {
        return pre("residual factors must be monic");
    }
    if Poly::product(residual) != p.residue() {
        return pre("residual factors do not multiply to P mod the maximal ideal");
    }
    let s = cofactors(residual)?;
    let s_lift: Vec<Poly<R>> = s.iter().map(Poly::lift).collect();
    let mut fs: Vec<Poly<R>> = residual.iter().map(Poly::lift).collect();
    for _ in 0..=R::nilpotency() {
        let e = p.clone() - Poly::product(&fs);
        if e.is_zero() {
            return Ok(fs);
        }
        for (f, si) in fs.iter_mut().zip(&s_lift) {
            let d = (si.clone() * e.clone()).rem_monic(f);
            *f = f.clone() + d;
        }
    }
    if Poly::product(&fs) == *p {
        Ok(fs)
    } else {
        contract("Hensel iteration failed to converge")
    }
}

/// Monic factors over the residue field grouped by root, for split polynomials.
pub fn split_residual<F: Field>(p: &Poly<F>) -> Option<Vec<Poly<F>>> {
    let roots = p.roots();
    if roots.len() as isize != p.degree() {
        return None;
    }
    let mut out: Vec<(F, u32)> = vec![];
    for r in roots {
        match out.iter_mut().find(|(x, _)| *x == r) {
            Some(e) => e.1 += 1,
            None => out.push((r, 1)),
        }
    }
    Some(
        out.into_iter()
            .map(|(r, m)| Poly::linear(r).pow(m))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{F5, F7, Z25};

    #[test]
    fn field_case_is_identity() {
        let p = Poly::<F7>::from_i64(&[-1, 0, 1]);
        let res = vec![Poly::from_i64(&[-1, 1]), Poly::from_i64(&[1, 1])];
        assert_eq!(hensel_factor(&p, &res).unwrap(), res);
    }

    #[test]
    fn sqrt_six_mod_25() {
        let p = Poly::<Z25>::from_i64(&[-6, 0, 1]);
        let res = vec![Poly::<F5>::from_i64(&[-1, 1]), Poly::from_i64(&[1, 1])];
        let f = hensel_factor(&p, &res).unwrap();
        // x + 9 reduces to x − 1 mod 5
        assert_eq!(f[0], Poly::from_i64(&[9, 1]));
        assert_eq!(f[1], Poly::from_i64(&[-9, 1]));
    }

    #[test]
    fn single_factor_unchanged() {
        let p = Poly::<Z25>::linear(Z25::from_i64(7)).pow(3);
        let res = vec![p.residue()];
        assert_eq!(hensel_factor(&p, &res).unwrap(), vec![p]);
    }

    #[test]
    fn rejects_bad_residual_data() {
        let p = Poly::<Z25>::from_i64(&[-6, 0, 1]);
        let wrong = vec![Poly::<F5>::from_i64(&[-2, 1]), Poly::from_i64(&[1, 1])];
        assert!(hensel_factor(&p, &wrong).is_err());
        let q = Poly::<Z25>::from_i64(&[1, -2, 1]);
        let dup = vec![Poly::<F5>::from_i64(&[-1, 1]), Poly::from_i64(&[-1, 1])];
        assert!(hensel_factor(&q, &dup).is_err());
        let nonmonic = Poly::<Z25>::from_i64(&[1, 2]);
        assert!(hensel_factor(&nonmonic, &[Poly::from_i64(&[3, 1])]).is_err());
    }
}
