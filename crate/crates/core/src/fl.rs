//! λ-torsion Fontaine–Laffaille modules stored in adapted bases.
//!
//! M = ⊕_{τ ∈ ℤ/f} M_τ with M_τ = Rⁿ. Basis vector e_j of M_τ carries a weight
//! w_j and Fil^m M_τ is spanned by the e_j with w_j ≥ m. The Frobenius is kept
//! as one matrix Φ_τ: gr^•M_τ → M_{τ−1} whose column j is Φ^{w_j}(e_j); the
//! lower Φ^i are the ℓ-power multiples forced by Φ^i|Fil^{i+1} = ℓΦ^{i+1}.
//! σ shifts indices by +1 and 𝔠 by f/2.

use serde::Serialize;

use crate::error::{contract, pre, Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Field, ReduceTo, Ring};
use crate::tame::Validation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Place {
    Inert,
    Split,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FLModule<R> {
    pub place: Place,
    pub weights: Vec<Vec<u32>>,
    pub phi: Vec<Matrix<R>>,
}

/// ⟨x, y⟩_τ = xᵀ·P_τ·y on M_{τ^𝔠} × M_τ, with P_{τ^𝔠} = sign·P_τᵀ.
#[derive(Clone, Debug, PartialEq)]
pub struct FLPairing<R> {
    pub b: u32,
    pub sign: i64,
    pub mats: Vec<Matrix<R>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomExt {
    pub hom: usize,
    pub fil0: usize,
    pub hom_gr: usize,
    pub ext: usize,
}

impl HomExt {
    pub fn is_exact(&self) -> bool {
        self.hom + self.hom_gr == self.fil0 + self.ext
    }
}

/// Dimensions along 0 → H⁰ → Fil⁰Hom⁺ → Hom⁺_{σ⊗1} → L → 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FLTangent {
    pub fil0_plus: usize,
    pub hom_plus: usize,
    pub h0: usize,
    pub l: usize,
}

impl FLTangent {
    /// The closed forms with d = [F⁺_v : ℚ_ℓ].
    pub fn matches_formulas(&self, d: usize, n: usize) -> bool {
        self.fil0_plus == d * n * (n + 1) / 2
            && self.hom_plus == d * n * n
            && self.l + self.fil0_plus == self.h0 + self.hom_plus
            && self.l - self.h0 == d * n * (n - 1) / 2
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FLLift<R> {
    pub module: FLModule<R>,
    pub pairing: FLPairing<R>,
}

fn lpow<R: Ring>(e: u32) -> R {
    R::from_i64(R::CHAR as i64).pow(e as u64)
}

fn sign_elt<R: Ring>(s: i64) -> R {
    R::from_i64(s)
}

/// Antidiagonal identity.
pub fn hyperbolic<R: Ring>(n: usize) -> Matrix<R> {
    Matrix::from_fn(n, n, |i, j| if i + j + 1 == n { R::one() } else { R::zero() })
}

/// Entry (j, i) scaled by ℓ^{w_rows[j] − w_cols[i]}; fails if a nonzero entry
/// would lower the filtration.
fn grade<R: Ring>(g: &Matrix<R>, w_rows: &[u32], w_cols: &[u32]) -> Result<Matrix<R>> {
    let mut out = Matrix::zero(g.rows(), g.cols());
    for j in 0..g.rows() {
        for i in 0..g.cols() {
            if w_rows[j] >= w_cols[i] {
                out[(j, i)] = lpow::<R>(w_rows[j] - w_cols[i]) * g[(j, i)].clone();
            } else if !g[(j, i)].is_zero() {
                return pre(format!("entry ({j}, {i}) does not preserve the filtration"));
            }
        }
    }
    Ok(out)
}

/// Target of ⟨Φx, Φy⟩ for the pairing matrix p between bases with the given weights.
fn frob_target<R: Ring>(p: &Matrix<R>, w_left: &[u32], w_right: &[u32], b: u32) -> Matrix<R> {
    Matrix::from_fn(p.rows(), p.cols(), |k, j| {
        let s = w_left[k] + w_right[j];
        if s <= b {
            lpow::<R>(b - s) * p[(k, j)].clone()
        } else {
            R::zero()
        }
    })
}

impl<R: Ring> FLModule<R> {
    pub fn new(place: Place, weights: Vec<Vec<u32>>, phi: Vec<Matrix<R>>) -> Result<Self> {
        let f = weights.len();
        if f == 0 || phi.len() != f {
            return Err(Error::Shape("need one weight list and one Φ per embedding".into()));
        }
        if place == Place::Inert && f % 2 == 1 {
            return pre("inert model needs an even number of embeddings");
        }
        let n = weights[0].len();
        for (tau, (w, p)) in weights.iter().zip(&phi).enumerate() {
            if w.len() != n || p.rows() != n || p.cols() != n {
                return Err(Error::Shape(format!("embedding {tau} does not have rank {n}")));
            }
        }
        Ok(FLModule { place, weights, phi })
    }

    /// R{b}: rank one, weight b everywhere, Φ^b(e_b) = e_b.
    pub fn unit_object(f: usize, place: Place, b: u32) -> Result<Self> {
        Self::new(place, vec![vec![b]; f], vec![Matrix::identity(1); f])
    }

    pub fn zero_object(f: usize, place: Place) -> Result<Self> {
        Self::new(place, vec![vec![]; f], vec![Matrix::zero(0, 0); f])
    }

    pub fn f(&self) -> usize {
        self.weights.len()
    }

    pub fn rank(&self) -> usize {
        self.weights[0].len()
    }

    /// f⁺ = f/2 for the inert model.
    pub fn fplus(&self) -> Option<usize> {
        (self.place == Place::Inert).then(|| self.f() / 2)
    }

    /// [F⁺_v : ℚ_ℓ]
    pub fn local_degree(&self) -> usize {
        self.fplus().unwrap_or(self.f())
    }

    pub fn conj(&self, tau: usize) -> usize {
        (tau + self.f() / 2) % self.f()
    }

    pub fn prev(&self, tau: usize) -> usize {
        (tau + self.f() - 1) % self.f()
    }

    pub fn hodge_tate(&self, tau: usize) -> Vec<u32> {
        let mut w = self.weights[tau].clone();
        w.sort_unstable();
        w
    }

    pub fn is_regular(&self) -> bool {
        (0..self.f()).all(|t| self.hodge_tate(t).windows(2).all(|p| p[0] != p[1]))
    }

    pub fn reduce<S: Ring>(&self) -> FLModule<S>
    where
        R: ReduceTo<S>,
    {
        FLModule {
            place: self.place,
            weights: self.weights.clone(),
            phi: self.phi.iter().map(|m| m.map(|x| x.reduce())).collect(),
        }
    }

    /// The same object in the basis whose τ-part has columns g[τ] (in old
    /// coordinates) carrying weights new_weights[τ].
    pub fn change_basis(&self, g: &[Matrix<R>], new_weights: Vec<Vec<u32>>) -> Result<Self> {
        let f = self.f();
        let mut ginv = vec![];
        for (tau, m) in g.iter().enumerate() {
            match m.inverse() {
                Some(i) => ginv.push(i),
                None => return pre(format!("basis change at τ = {tau} is not invertible")),
            }
        }
        let mut phi = vec![];
        for tau in 0..f {
            let gr = grade(&g[tau], &self.weights[tau], &new_weights[tau])?;
            phi.push(&(&ginv[self.prev(tau)] * &self.phi[tau]) * &gr);
        }
        Self::new(self.place, new_weights, phi)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "place": self.place,
            "f": self.f(),
            "weights": (0..self.f()).map(|t| self.hodge_tate(t)).collect::<Vec<_>>(),
            "phi": self.phi.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
        })
    }
}

impl<R: Ring> FLPairing<R> {
    pub fn reduce<S: Ring>(&self) -> FLPairing<S>
    where
        R: ReduceTo<S>,
    {
        FLPairing {
            b: self.b,
            sign: self.sign,
            mats: self.mats.iter().map(|m| m.map(|x| x.reduce())).collect(),
        }
    }

    /// P'_τ = g_{τ^𝔠}ᵀ·P_τ·g_τ
    pub fn change_basis(&self, g: &[Matrix<R>]) -> Self {
        let f = self.mats.len();
        let mats = (0..f)
            .map(|t| &(&g[(t + f / 2) % f].transpose() * &self.mats[t]) * &g[t])
            .collect();
        FLPairing {
            b: self.b,
            sign: self.sign,
            mats,
        }
    }
}

pub fn fl_validate<R: Ring>(m: &FLModule<R>) -> Validation {
    let mut diagnostics = vec![];
    let f = m.f();
    if m.place == Place::Inert && f % 2 == 1 {
        diagnostics.push(format!("inert model with odd f = {f}"));
    }
    let n = m.rank();
    for tau in 0..f {
        if m.weights[tau].len() != n || m.phi[tau].rows() != n || m.phi[tau].cols() != n {
            diagnostics.push(format!("τ = {tau}: rank differs from {n}"));
            continue;
        }
        for &w in &m.weights[tau] {
            if w as u64 + 2 > R::CHAR {
                diagnostics.push(format!("τ = {tau}: weight {w} outside [0, ℓ − 2], Fil^(ℓ−1) ≠ 0"));
            }
        }
        if !m.phi[tau].is_invertible() {
            diagnostics.push(format!(
                "τ = {tau}: ⊕Φ^i: gr^•M_τ → M_(τ−1) is not an isomorphism (strength condition fails)"
            ));
        }
    }
    Validation {
        ok: diagnostics.is_empty(),
        diagnostics,
    }
}

fn require_valid<R: Ring>(m: &FLModule<R>) -> Result<()> {
    let v = fl_validate(m);
    if !v.ok {
        return pre(format!("invalid Fontaine–Laffaille module: {:?}", v.diagnostics));
    }
    Ok(())
}

/// M^σ applied `power` times: M^σ_τ = M_{τ−1}.
pub fn fl_twist<R: Ring>(m: &FLModule<R>, power: usize) -> FLModule<R> {
    let f = m.f();
    let src = |t: usize| (t + f * (power / f + 1) - power) % f;
    FLModule {
        place: m.place,
        weights: (0..f).map(|t| m.weights[src(t)].clone()).collect(),
        phi: (0..f).map(|t| m.phi[src(t)].clone()).collect(),
    }
}

/// M^∨{b} in the dual bases: weights b − w and Φ^∨_τ = (Φ_τ⁻¹)ᵀ.
pub fn fl_dual<R: Ring>(m: &FLModule<R>, b: u32) -> Result<FLModule<R>> {
    require_valid(m)?;
    if let Some(w) = m.weights.iter().flatten().find(|&&w| w > b) {
        return pre(format!("weight {w} exceeds b = {b}"));
    }
    let weights = m.weights.iter().map(|ws| ws.iter().map(|w| b - w).collect()).collect();
    let phi = m
        .phi
        .iter()
        .map(|p| p.inverse().expect("validated").transpose())
        .collect();
    FLModule::new(m.place, weights, phi)
}

/// The pairing of M transported to M^∨{b}: P_τ ↦ (P_τ⁻¹)ᵀ.
pub fn fl_dual_pairing<R: Ring>(p: &FLPairing<R>) -> Result<FLPairing<R>> {
    let mut mats = vec![];
    for (tau, m) in p.mats.iter().enumerate() {
        let Some(i) = m.inverse() else {
            return pre(format!("pairing at τ = {tau} is not perfect"));
        };
        mats.push(i.transpose());
    }
    Ok(FLPairing {
        b: p.b,
        sign: p.sign,
        mats,
    })
}

/// Unknowns laid out as f blocks of size rows × cols, row-major within blocks.
fn flatten<F: Field>(ms: &[Matrix<F>]) -> Vec<F> {
    ms.iter().flat_map(|m| m.to_vec()).collect()
}

fn unit_blocks<F: Field>(f: usize, rows: usize, cols: usize, tau: usize, a: usize, j: usize) -> Vec<Matrix<F>> {
    (0..f)
        .map(|t| {
            if t == tau {
                Matrix::unit(rows, cols, a, j)
            } else {
                Matrix::zero(rows, cols)
            }
        })
        .collect()
}

fn fil0_positions(w_to: &[Vec<u32>], w_from: &[Vec<u32>]) -> Vec<(usize, usize, usize)> {
    let mut out = vec![];
    for tau in 0..w_to.len() {
        for a in 0..w_to[tau].len() {
            for j in 0..w_from[tau].len() {
                if w_to[tau][a] >= w_from[tau][j] {
                    out.push((tau, a, j));
                }
            }
        }
    }
    out
}

/// α(f)_τ = f_{τ−1}·Φ₁ − Φ₂·f_τ on gr^•M₁,τ.
fn alpha<F: Field>(m1: &FLModule<F>, m2: &FLModule<F>, fs: &[Matrix<F>]) -> Result<Vec<Matrix<F>>> {
    (0..m1.f())
        .map(|t| {
            let gr = grade(&fs[t], &m2.weights[t], &m1.weights[t])?;
            Ok(&(&fs[m1.prev(t)] * &m1.phi[t]) - &(&m2.phi[t] * &gr))
        })
        .collect()
}

fn alpha_matrix<F: Field>(
    m1: &FLModule<F>,
    m2: &FLModule<F>,
    pos: &[(usize, usize, usize)],
) -> Result<Matrix<F>> {
    let (f, n1, n2) = (m1.f(), m1.rank(), m2.rank());
    let cols = pos
        .iter()
        .map(|&(t, a, j)| Ok(flatten(&alpha(m1, m2, &unit_blocks(f, n2, n1, t, a, j))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_cols(&cols, f * n1 * n2))
}

/// Dimensions in 0 → Hom_MF → Fil⁰Hom → Hom_{σ⊗1}(gr^•M₁, M₂) → Ext¹_MF → 0.
pub fn fl_hom_ext<F: Field>(m1: &FLModule<F>, m2: &FLModule<F>) -> Result<HomExt> {
    if m1.f() != m2.f() || m1.place != m2.place {
        return Err(Error::Shape("objects live over different embedding sets".into()));
    }
    require_valid(m1)?;
    require_valid(m2)?;
    let pos = fil0_positions(&m2.weights, &m1.weights);
    let a = alpha_matrix(m1, m2, &pos)?;
    let r = a.rank();
    let hom_gr = m1.f() * m1.rank() * m2.rank();
    Ok(HomExt {
        hom: pos.len() - r,
        fil0: pos.len(),
        hom_gr,
        ext: hom_gr - r,
    })
}

pub fn fl_pairing_check<R: Ring>(m: &FLModule<R>, p: &FLPairing<R>) -> Result<Validation> {
    if m.place != Place::Inert {
        return pre("conjugate-duality pairings live on the inert model");
    }
    let f = m.f();
    let n = m.rank();
    let b = p.b;
    let mut d = vec![];
    if p.mats.len() != f || p.mats.iter().any(|x| x.rows() != n || x.cols() != n) {
        return Err(Error::Shape("one n×n pairing matrix per embedding".into()));
    }
    if p.sign != 1 && p.sign != -1 {
        d.push(format!("sign {} is not ±1", p.sign));
    }
    if let Some(w) = m.weights.iter().flatten().find(|&&w| w > b) {
        d.push(format!("weight {w} exceeds b = {b}"));
    }
    for tau in 0..f {
        let c = m.conj(tau);
        let pt = &p.mats[tau];
        if !pt.is_invertible() {
            d.push(format!("τ = {tau}: pairing is not perfect"));
        }
        if p.mats[c] != pt.transpose().scale(&sign_elt(p.sign)) {
            d.push(format!("τ = {tau}: P_(τ^c) ≠ {}·P_τᵀ", p.sign));
        }
        let lhs = &(&m.phi[c].transpose() * &p.mats[m.prev(tau)]) * &m.phi[tau];
        if lhs != frob_target(pt, &m.weights[c], &m.weights[tau], b) {
            d.push(format!("τ = {tau}: ⟨Φx, Φy⟩ ≠ ℓ^(b−i−j)⟨x, y⟩"));
        }
        for i in 0..=b + 1 {
            let fil: Vec<usize> = (0..n).filter(|&j| m.weights[tau][j] >= i).collect();
            let ann: Vec<usize> = (0..n).filter(|&k| m.weights[c][k] + i >= b + 1).collect();
            let kills = ann.iter().all(|&k| fil.iter().all(|&j| pt[(k, j)].is_zero()));
            if !kills || ann.len() + fil.len() != n {
                d.push(format!("(τ, i) = ({tau}, {i}): annihilator of Fil^i is not Fil^(b+1−i)"));
            }
        }
    }
    Ok(Validation {
        ok: d.is_empty(),
        diagnostics: d,
    })
}

/// The self-dual object with hyperbolic pairing ⟨e_{τ^𝔠,i}, e_{τ,j}⟩ = δ_{i,n+1−j}
/// on τ ∈ Σ⁺ = {0, …, f⁺−1}. Weights and Φ are free on Σ⁺; on τ^𝔠 the weights are
/// b − w in reversed order and Φ is the unique map compatible with the pairing.
pub fn self_dual_hyperbolic<R: Ring>(
    b: u32,
    sign: i64,
    weights_plus: &[Vec<u32>],
    phi_plus: &[Matrix<R>],
) -> Result<(FLModule<R>, FLPairing<R>)> {
    let fp = weights_plus.len();
    if fp == 0 || phi_plus.len() != fp {
        return Err(Error::Shape("one weight list and one Φ per τ ∈ Σ⁺".into()));
    }
    let n = weights_plus[0].len();
    if let Some(w) = weights_plus.iter().flatten().find(|&&w| w > b) {
        return pre(format!("weight {w} exceeds b = {b}"));
    }
    let mut weights = weights_plus.to_vec();
    for w in weights_plus {
        if w.len() != n {
            return Err(Error::Shape("ranks differ across Σ⁺".into()));
        }
        weights.push((0..n).map(|i| b - w[n - 1 - i]).collect());
    }
    let j = hyperbolic::<R>(n);
    let mut mats = vec![j.clone(); fp];
    mats.extend(vec![j.scale(&sign_elt(sign)); fp]);
    let f = 2 * fp;
    let prev = |t: usize| (t + f - 1) % f;
    let mut phi = phi_plus.to_vec();
    for tau in 0..fp {
        let c = tau + fp;
        let q = frob_target(&mats[tau], &weights[c], &weights[tau], b);
        let (Some(pi), Some(ppi)) = (phi_plus[tau].inverse(), mats[prev(tau)].inverse()) else {
            return pre(format!("Φ at τ = {tau} is not invertible"));
        };
        phi.push((&(&q * &pi) * &ppi).transpose());
    }
    let m = FLModule::new(Place::Inert, weights, phi)?;
    Ok((m, FLPairing { b, sign, mats }))
}

/// Dimensions of Fil⁰Hom⁺, Hom⁺_{σ⊗1}, H⁰ and L. Inert objects need the
/// pairing; split objects take `None` and use the plain four-term sequence.
pub fn fl_tangent<F: Field>(m: &FLModule<F>, p: Option<&FLPairing<F>>) -> Result<FLTangent> {
    require_valid(m)?;
    if !m.is_regular() {
        return pre("weights are not regular");
    }
    let p = match (m.place, p) {
        (Place::Split, None) => {
            let he = fl_hom_ext(m, m)?;
            return Ok(FLTangent {
                fil0_plus: he.fil0,
                hom_plus: he.hom_gr,
                h0: he.hom,
                l: he.ext,
            });
        }
        (Place::Split, Some(_)) => return pre("split places carry no pairing"),
        (Place::Inert, None) => return pre("inert places need a pairing"),
        (Place::Inert, Some(p)) => p,
    };
    let v = fl_pairing_check(m, p)?;
    if !v.ok {
        return pre(format!("invalid pairing: {:?}", v.diagnostics));
    }
    let (f, n) = (m.f(), m.rank());
    let width = f * n * n;
    let pos = fil0_positions(&m.weights, &m.weights);
    // f_{τ^𝔠}ᵀ·P_τ + P_τ·f_τ = 0
    let f_plus = |fs: &[Matrix<F>]| -> Vec<Matrix<F>> {
        (0..f)
            .map(|t| &(&fs[m.conj(t)].transpose() * &p.mats[t]) + &(&p.mats[t] * &fs[t]))
            .collect()
    };
    // ⟨Φx, φy⟩ + ⟨φx, Φy⟩ = 0 on all graded pairs
    let phi_plus = |ph: &[Matrix<F>]| -> Vec<Matrix<F>> {
        (0..f)
            .map(|t| {
                let c = m.conj(t);
                let pp = &p.mats[m.prev(t)];
                &(&(&m.phi[c].transpose() * pp) * &ph[t]) + &(&(&ph[c].transpose() * pp) * &m.phi[t])
            })
            .collect()
    };
    let cf: Vec<Vec<F>> = pos
        .iter()
        .map(|&(t, a, j)| flatten(&f_plus(&unit_blocks(f, n, n, t, a, j))))
        .collect();
    let fil0_plus: Vec<Vec<F>> = Matrix::from_cols(&cf, width).kernel_basis();
    let mut cphi = vec![];
    for t in 0..f {
        for a in 0..n {
            for j in 0..n {
                cphi.push(flatten(&phi_plus(&unit_blocks(f, n, n, t, a, j))));
            }
        }
    }
    let cphi = Matrix::from_cols(&cphi, width);
    let hom_plus = width - cphi.rank();
    let amat = alpha_matrix(m, m, &pos)?;
    let images: Vec<Vec<F>> = fil0_plus.iter().map(|v| amat.apply(v)).collect();
    for im in &images {
        if cphi.apply(im).iter().any(|x| !x.is_zero()) {
            return contract("α does not carry Fil⁰Hom⁺ into Hom⁺");
        }
    }
    let r = crate::matrix::span_dim(&images, width);
    Ok(FLTangent {
        fil0_plus: fil0_plus.len(),
        hom_plus,
        h0: fil0_plus.len() - r,
        l: hom_plus - r,
    })
}

/// One infinitesimal lifting step S = R/I → R with 𝔪_R·I = 0, following the
/// smoothness construction: hyperbolic adapted bases on Σ⁺, an arbitrary lift of
/// Φ on Σ⁺, the pairing-determined Φ on the conjugate half, then the original
/// basis restored so the output reduces to the input exactly.
pub fn fl_lift<S: Ring, R: ReduceTo<S>>(m: &FLModule<S>, p: &FLPairing<S>) -> Result<FLLift<R>> {
    if R::CHAR != S::CHAR || !(R::nilpotency() == S::nilpotency() || R::nilpotency() == S::nilpotency() + 1) {
        return Err(Error::Unsupported(format!(
            "lifting from {} to {}",
            S::describe(),
            R::describe()
        )));
    }
    require_valid(m)?;
    let v = fl_pairing_check(m, p)?;
    if !v.ok {
        return pre(format!("invalid pairing: {:?}", v.diagnostics));
    }
    let (f, n, b) = (m.f(), m.rank(), p.b);
    let fp = f / 2;
    let jn = hyperbolic::<S>(n);
    let mut g = vec![Matrix::<S>::identity(n); f];
    let mut w_new = m.weights.clone();
    for tau in 0..fp {
        let pinv = p.mats[tau].inverse().expect("perfect");
        g[tau + fp] = &pinv.transpose() * &jn;
        w_new[tau + fp] = (0..n).map(|i| b - m.weights[tau][n - 1 - i]).collect();
    }
    let m1 = m.change_basis(&g, w_new)?;
    let p1 = p.change_basis(&g);
    if (0..fp).any(|t| p1.mats[t] != jn) {
        return contract("rebased pairing is not hyperbolic");
    }
    let phi_plus: Vec<Matrix<R>> = m1.phi[..fp].iter().map(|x| x.map(R::section)).collect();
    let (mt, pt) = self_dual_hyperbolic::<R>(b, p.sign, &m1.weights[..fp], &phi_plus)?;
    if mt.weights != m1.weights {
        return contract("rebased weights disagree with the hyperbolic model");
    }
    let gt: Vec<Matrix<R>> = g
        .iter()
        .map(|x| x.map(R::section).inverse().expect("unit determinant lifts"))
        .collect();
    let module = mt.change_basis(&gt, m.weights.clone())?;
    let pairing = pt.change_basis(&gt);
    let ok_mod = fl_validate(&module);
    let ok_pair = fl_pairing_check(&module, &pairing)?;
    if !ok_mod.ok || !ok_pair.ok {
        return contract(format!(
            "lift fails validation: {:?} {:?}",
            ok_mod.diagnostics, ok_pair.diagnostics
        ));
    }
    if &module.reduce::<S>() != m || &pairing.reduce::<S>() != p {
        return contract("lift does not reduce to the input");
    }
    Ok(FLLift { module, pairing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Dual, F5, F7, Z25};
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256StarStar;

    fn rng() -> Xoshiro256StarStar {
        Xoshiro256StarStar::seed_from_u64(17)
    }

    fn random_self_dual<R: Ring>(
        g: &mut Xoshiro256StarStar,
        fp: usize,
        b: u32,
        wplus: Vec<u32>,
        sign: i64,
    ) -> (FLModule<R>, FLPairing<R>) {
        let n = wplus.len();
        let phis: Vec<Matrix<R>> = (0..fp).map(|_| Matrix::random_invertible(n, g)).collect();
        self_dual_hyperbolic(b, sign, &vec![wplus; fp], &phis).unwrap()
    }

    #[test]
    fn unit_object_and_strength() {
        let m = FLModule::<F5>::unit_object(2, Place::Inert, 3).unwrap();
        assert!(fl_validate(&m).ok);
        let mut bad = FLModule::<F5>::new(
            Place::Split,
            vec![vec![0, 1]],
            vec![Matrix::from_i64(&[&[1, 2], &[2, 4]])],
        )
        .unwrap();
        let v = fl_validate(&bad);
        assert!(!v.ok && v.diagnostics[0].contains("strength"));
        bad.weights[0] = vec![0, 4];
        assert!(fl_validate(&bad).diagnostics.iter().any(|d| d.contains("ℓ − 2")));
    }

    #[test]
    fn twist_bookkeeping() {
        let m = FLModule::<F7>::new(
            Place::Inert,
            vec![vec![0, 1], vec![2, 3]],
            vec![Matrix::identity(2), Matrix::from_i64(&[&[1, 1], &[0, 1]])],
        )
        .unwrap();
        assert_eq!(fl_twist(&m, 0), m);
        assert_eq!(fl_twist(&m, 2), m);
        let t = fl_twist(&m, 1);
        assert_eq!(t.weights, vec![vec![2, 3], vec![0, 1]]);
        assert_eq!(fl_twist(&t, 3), m);
    }

    #[test]
    fn duality() {
        let m = FLModule::<F5>::unit_object(1, Place::Split, 2).unwrap();
        assert_eq!(fl_dual(&m, 2).unwrap().weights, vec![vec![0]]);
        let mut g = rng();
        let (m, p) = random_self_dual::<F5>(&mut g, 1, 1, vec![1, 0], 1);
        let d = fl_dual(&m, 1).unwrap();
        assert_eq!(d.hodge_tate(0), vec![0, 1]);
        assert_eq!(fl_dual(&d, 1).unwrap(), m);
        assert!(fl_dual(&m, 0).is_err());
        let dp = fl_dual_pairing(&p).unwrap();
        assert!(fl_pairing_check(&d, &dp).unwrap().ok);
    }

    #[test]
    fn hom_ext_small() {
        let m = FLModule::<F5>::unit_object(1, Place::Split, 0).unwrap();
        let he = fl_hom_ext(&m, &m).unwrap();
        assert_eq!((he.hom, he.fil0, he.hom_gr, he.ext), (1, 1, 1, 1));
        let z = FLModule::<F5>::zero_object(1, Place::Split).unwrap();
        let he = fl_hom_ext(&m, &z).unwrap();
        assert_eq!((he.hom, he.fil0, he.hom_gr, he.ext), (0, 0, 0, 0));
    }

    #[test]
    fn hom_ext_exactness_random() {
        let mut g = rng();
        for _ in 0..20 {
            let (m1, _) = random_self_dual::<F7>(&mut g, 2, 3, vec![3, 1, 0], 1);
            let (m2, _) = random_self_dual::<F7>(&mut g, 2, 2, vec![0, 2], -1);
            assert!(fl_hom_ext(&m1, &m2).unwrap().is_exact());
            assert!(fl_hom_ext(&m2, &m1).unwrap().is_exact());
        }
    }

    #[test]
    fn pairing_conditions() {
        let mut g = rng();
        let (m, p) = random_self_dual::<F5>(&mut g, 1, 1, vec![1, 0], 1);
        assert!(fl_pairing_check(&m, &p).unwrap().ok);
        let mut bad = m.clone();
        bad.weights[1] = vec![0, 1];
        let v = fl_pairing_check(&bad, &p).unwrap();
        assert!(!v.ok);
        assert!(v.diagnostics.iter().any(|d| d.contains("(τ, i) = (0, 1)")));
    }

    #[test]
    fn tangent_closed_forms() {
        let mut g = rng();
        let (m, p) = random_self_dual::<F5>(&mut g, 1, 1, vec![1, 0], 1);
        let t = fl_tangent(&m, Some(&p)).unwrap();
        assert_eq!((t.fil0_plus, t.hom_plus, t.l), (3, 4, t.h0 + 1));
        let (m, p) = random_self_dual::<F7>(&mut g, 2, 3, vec![3, 2, 0], -1);
        let t = fl_tangent(&m, Some(&p)).unwrap();
        assert_eq!((t.fil0_plus, t.hom_plus, t.l), (12, 18, t.h0 + 6));
        assert!(t.matches_formulas(2, 3));
    }

    #[test]
    fn tangent_split() {
        let mut g = rng();
        let phi = vec![Matrix::<F7>::random_invertible(3, &mut g), Matrix::random_invertible(3, &mut g)];
        let m = FLModule::new(Place::Split, vec![vec![0, 1, 4], vec![2, 3, 0]], phi).unwrap();
        let t = fl_tangent(&m, None).unwrap();
        assert!(t.matches_formulas(2, 3));
    }

    #[test]
    fn lifts() {
        let mut g = rng();
        let (m, p) = random_self_dual::<F5>(&mut g, 1, 1, vec![1, 0], 1);
        // move away from the hyperbolic basis so the rebasing step matters
        let h = vec![Matrix::identity(2), Matrix::from_i64(&[&[2, 3], &[0, 1]])];
        let m = m.change_basis(&h, m.weights.clone()).unwrap();
        let p = p.change_basis(&h);
        assert!(fl_pairing_check(&m, &p).unwrap().ok);
        let same = fl_lift::<F5, F5>(&m, &p).unwrap();
        assert_eq!((same.module, same.pairing), (m.clone(), p.clone()));
        fl_lift::<F5, Dual<F5>>(&m, &p).unwrap();
        let z = fl_lift::<F5, Z25>(&m, &p).unwrap();
        assert!(fl_validate(&z.module).ok);
    }
}
