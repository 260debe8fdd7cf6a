use serde::Serialize;

use super::cohomology::{ad_module, AdModule};
use super::decompose::hensel_decompose_rep;
use super::tangent::report_from_l1;
use super::{require_field_char, TameRep, TangentReport};
use crate::error::{contract, pre, Result};
use crate::gn::GnElement;
use crate::hensel::hensel_factor;
use crate::matrix::{span_dim, Matrix};
use crate::poly::Poly;
use crate::ring::{Dual, Field};

#[derive(Clone, Debug, Serialize)]
pub struct LevelRaisingReport {
    pub n: usize,
    pub q: i64,
    pub l: u64,
    pub mix: TangentReport,
    pub ram: TangentReport,
    pub unr: TangentReport,
    /// dim of L¹(unr) ∩ L¹(ram)
    pub unr_cap_ram: usize,
    /// Frobenius in the P₀ condition and the q it is normalized by.
    pub convention: String,
    pub phi_w_roots: Vec<serde_json::Value>,
}

/// Unramified r̄ with r̄(φ_q) = (diag(B̄₀, 1), m)𝔠, B̄₀ = [[0, s], [q, 0]],
/// s = (−1)^{μ+1}, χ = η^μ ε^{1−N}.
///
/// Then r̄^♮(φ_q²) = diag(q^{−N}, q^{−N+2}, m, …, m) with m = −χ(φ_q).
pub fn level_raising_standard<F: Field>(n: usize, q: i64, mu_parity: u8) -> TameRep<F> {
    let s = if mu_parity % 2 == 0 { -F::one() } else { F::one() };
    let mut b = Matrix::identity(n);
    b[(0, 0)] = F::zero();
    b[(1, 1)] = F::zero();
    b[(0, 1)] = s;
    b[(1, 0)] = F::from_i64(q);
    TameRep::new(q, Matrix::identity(n), b, mu_parity, 1 - n as i64)
}

/// Rows expressing "X·v = 0" on the X half of (X, Y).
fn kill_rows<F: Field>(n: usize, pre_mult: &Matrix<F>, v: &[F]) -> Vec<Vec<F>> {
    (0..pre_mult.rows())
        .map(|i| {
            let mut row = vec![F::zero(); 2 * n * n];
            for k in 0..n {
                for j in 0..n {
                    row[k * n + j] = pre_mult[(i, k)].clone() * v[j].clone();
                }
            }
            row
        })
        .collect()
}

fn solve_rows<F: Field>(rows: &[Vec<F>], width: usize) -> Vec<Vec<F>> {
    if rows.is_empty() {
        return (0..width)
            .map(|k| (0..width).map(|j| if j == k { F::one() } else { F::zero() }).collect())
            .collect();
    }
    Matrix::from_rows(rows.to_vec()).kernel_basis()
}

/// Tangent spaces of 𝒟^mix, 𝒟^ram and 𝒟^unr at an unramified r̄.
pub fn tangent_level_raising<F: Field>(r: &TameRep<F>) -> Result<LevelRaisingReport> {
    let n = r.n;
    if n < 2 {
        return pre("level raising needs N ≥ 2");
    }
    require_field_char::<F>(n)?;
    let v = r.validate()?;
    if !v.ok {
        return pre(format!("invalid tame representation: {:?}", v.diagnostics));
    }
    if !r.a.is_identity() {
        return pre("r̄ must be unramified");
    }
    let q = r.q_elt();
    if (q.clone() * q.clone() - F::one()).is_zero() {
        return pre(format!("ℓ = {} divides q² − 1", F::CHAR));
    }
    let qinv = q.inv().expect("ℓ ∤ q");
    let a0 = qinv.pow(n as u64);
    let a1 = a0.clone() * q.clone() * q.clone();
    let phi_w = r.r_phi_w()?.g;
    let cp = phi_w.charpoly();
    let roots = cp.roots();
    let mult = |a: &F| roots.iter().filter(|x| *x == a).count();
    if mult(&a0) != 1 || mult(&a1) != 1 {
        return pre(format!(
            "generalized eigenvalues {:?} (over {}) do not contain {{q^-N, q^-N+2}} = {{{:?}, {:?}}} exactly once",
            roots,
            F::describe(),
            a0,
            a1
        ));
    }
    let p0bar = Poly::linear(a0.clone()) * Poly::linear(a1.clone());
    let p1bar = cp.divrem_monic(&p0bar).0;
    let m0 = p0bar.eval_matrix(&phi_w).kernel_basis();
    let m1 = p1bar.eval_matrix(&phi_w).kernel_basis();
    if m0.len() != 2 || m0.len() + m1.len() != n {
        return contract("generalized eigenspaces have the wrong dimensions");
    }
    let nn = n * n;
    let width = 2 * nn;
    let module = ad_module(r, AdModule::Full)?;
    let zmat = module.cocycle_matrix();
    let cocycle_rows: Vec<Vec<F>> = (0..zmat.rows()).map(|i| zmat.row(i)).collect();

    let p0_at = p0bar.eval_matrix(&phi_w);
    let mut mix_rows = cocycle_rows.clone();
    for v in &m1 {
        mix_rows.extend(kill_rows(n, &Matrix::identity(n), v));
    }
    for v in &m0 {
        mix_rows.extend(kill_rows(n, &p0_at, v));
    }
    let mut unr_only = vec![];
    for k in 0..nn {
        let mut row = vec![F::zero(); width];
        row[k] = F::one();
        unr_only.push(row);
    }
    let ram_only = p0_eps_rows(r, &p0bar, &p1bar)?;

    let mut unr_rows = mix_rows.clone();
    unr_rows.extend(unr_only.iter().cloned());
    let mut ram_rows = mix_rows.clone();
    ram_rows.extend(ram_only.iter().cloned());
    let mut cap_rows = ram_rows.clone();
    cap_rows.extend(unr_only.iter().cloned());

    let mix_l1 = solve_rows(&mix_rows, width);
    let unr_l1 = solve_rows(&unr_rows, width);
    let ram_l1 = solve_rows(&ram_rows, width);
    let cap = solve_rows(&cap_rows, width);

    cross_check_p0(r, &p0bar, &p1bar)?;

    Ok(LevelRaisingReport {
        n,
        q: r.q,
        l: F::CHAR,
        mix: report_from_l1(r, &mix_l1)?,
        ram: report_from_l1(r, &ram_l1)?,
        unr: report_from_l1(r, &unr_l1)?,
        unr_cap_ram: span_dim(&cap, width),
        convention: "P0 is the characteristic polynomial of r(phi_q^2) on M0, target (T - q^-N)(T - q^-N+2) with q = |v|; |w| = q^2".into(),
        phi_w_roots: roots.iter().map(|x| x.to_json()).collect(),
    })
}

/// Lift with r(φ_q) = ((1 + εY)B̄, m)𝔠.
fn phi_w_along<F: Field>(r: &TameRep<F>, y: &Matrix<F>) -> Result<Matrix<Dual<F>>> {
    let n = r.n;
    let one_eps = &Matrix::<Dual<F>>::identity(n) + &y.map(|x| Dual::new(F::zero(), x.clone()));
    let b = &one_eps * &r.b.map(|x| Dual::constant(x.clone()));
    let g = GnElement::new(b, Dual::constant(r.m()?), true);
    Ok(g.mul(&g)?.g)
}

/// ε-parts of the T⁰ and T¹ coefficients of P₀ as functionals on Y.
fn p0_eps_rows<F: Field>(r: &TameRep<F>, p0bar: &Poly<F>, p1bar: &Poly<F>) -> Result<Vec<Vec<F>>> {
    let n = r.n;
    let nn = n * n;
    let mut rows = vec![vec![F::zero(); 2 * nn], vec![F::zero(); 2 * nn]];
    for k in 0..nn {
        let y = Matrix::<F>::unit(n, n, k / n, k % n);
        let phi = phi_w_along(r, &y)?;
        let f = hensel_factor(&phi.charpoly(), &[p0bar.clone(), p1bar.clone()])?;
        rows[0][nn + k] = f[0].coeff(0).b.clone();
        rows[1][nn + k] = f[0].coeff(1).b.clone();
    }
    Ok(rows)
}

/// P₀ from the polynomial factorization agrees with the charpoly of the M₀
/// block of the Hensel decomposition along a dense tangent direction.
fn cross_check_p0<F: Field>(r: &TameRep<F>, p0bar: &Poly<F>, p1bar: &Poly<F>) -> Result<()> {
    let n = r.n;
    let y = Matrix::<F>::from_fn(n, n, |i, j| F::from_i64((i * n + j + 1) as i64));
    let phi = phi_w_along(r, &y)?;
    let f = hensel_factor(&phi.charpoly(), &[p0bar.clone(), p1bar.clone()])?;
    let d = hensel_decompose_rep(
        &Matrix::identity(n),
        &phi,
        &[p0bar.clone(), p1bar.clone()],
        r.q * r.q,
    )?;
    if d.phi_block(0).charpoly() != f[0] {
        return contract("P₀ from Hensel factorization differs from the block characteristic polynomial");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{F5, F7};

    #[test]
    fn n2_q2_l7() {
        let r = level_raising_standard::<F7>(2, 2, 0);
        let rep = tangent_level_raising(&r).unwrap();
        assert_eq!((rep.mix.l1, rep.ram.l1, rep.unr.l1), (5, 4, 4));
        assert_eq!(rep.unr_cap_ram, 3);
        for t in [rep.mix, rep.ram, rep.unr] {
            assert!(t.identity_holds(2));
        }
    }

    #[test]
    fn n3_q2_l5() {
        let r = level_raising_standard::<F5>(3, 2, 0);
        let rep = tangent_level_raising(&r).unwrap();
        assert_eq!((rep.mix.l1, rep.ram.l1, rep.unr.l1), (10, 9, 9));
    }

    #[test]
    fn hypothesis_violation_rejected() {
        // φ_w acts by the scalar q^{-1}·(−1), neither q^{-2} nor 1
        let r = TameRep::<F7>::new(2, Matrix::identity(2), Matrix::identity(2), 0, -1);
        let e = tangent_level_raising(&r).unwrap_err();
        assert!(e.to_string().contains("exactly once"));
    }
}
