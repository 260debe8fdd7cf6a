//! Unitary Satake parameters, the torus-level homomorphism, and the link to
//! Frobenius eigenvalues.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{pre, Error, Result};
use crate::poly::Poly;
use crate::ring::{Field, Fp, Fq};

/// The vector order is the chosen ordering of the multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatakeParameter<F> {
    Inert(Vec<F>),
    Split(Vec<F>, Vec<F>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unitarity<F> {
    pub unitary: bool,
    /// P_{α₁}(T) = c·T^N·P_{α₂}(T⁻¹) in the split case.
    pub c: Option<F>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FromFrobenius<F> {
    #[serde(skip)]
    pub param: SatakeParameter<F>,
    pub unitary: bool,
}

fn char_poly<F: Field>(a: &[F]) -> Poly<F> {
    Poly::product(&a.iter().map(|x| Poly::linear(x.clone())).collect::<Vec<_>>())
}

/// T^N·P(T⁻¹) = reversed coefficients.
fn reversed<F: Field>(p: &Poly<F>, n: usize) -> Poly<F> {
    Poly::new((0..=n).map(|j| p.coeff(n - j)).collect())
}

fn sorted<F: Ord + Clone>(v: &[F]) -> Vec<F> {
    let mut s = v.to_vec();
    s.sort();
    s
}

fn inverses<F: Field>(v: &[F]) -> Result<Vec<F>> {
    v.iter()
        .map(|x| x.inv().ok_or_else(|| Error::Precondition("Satake parameters are units".into())))
        .collect()
}

impl<F: Field> SatakeParameter<F> {
    pub fn rank(&self) -> usize {
        match self {
            SatakeParameter::Inert(a) | SatakeParameter::Split(a, _) => a.len(),
        }
    }

    fn check_units(&self) -> Result<()> {
        let all: Vec<&F> = match self {
            SatakeParameter::Inert(a) => a.iter().collect(),
            SatakeParameter::Split(a, b) => {
                if a.len() != b.len() {
                    return Err(Error::Shape("split halves differ in size".into()));
                }
                a.iter().chain(b).collect()
            }
        };
        if all.iter().any(|x| x.is_zero()) {
            return pre("Satake parameters must be nonzero");
        }
        Ok(())
    }

    /// The defining polynomial identity, compared coefficient by coefficient.
    pub fn unitary_check(&self) -> Result<Unitarity<F>> {
        self.check_units()?;
        let n = self.rank();
        let sign = if n % 2 == 0 { F::one() } else { -F::one() };
        match self {
            SatakeParameter::Inert(a) => {
                let p = char_poly(a);
                let rhs = reversed(&p, n).scale(&sign);
                Ok(Unitarity {
                    unitary: p == rhs,
                    c: None,
                })
            }
            SatakeParameter::Split(a1, a2) => {
                let p1 = char_poly(a1);
                let r2 = reversed(&char_poly(a2), n);
                // leading coefficient of T^N·P₂(T⁻¹) is (−1)^N·∏α₂
                let lead = r2.coeff(n);
                let c = lead.inv().expect("units");
                let unitary = p1 == r2.scale(&c);
                Ok(Unitarity {
                    unitary,
                    c: unitary.then_some(c),
                })
            }
        }
    }

    /// An ordering with α_i·α_{N+1−i} = 1 (resp. α_{1,i}·α_{2,N+1−i} = 1), built
    /// greedily from the sorted multiset.
    pub fn valid_ordering(&self) -> Result<Self> {
        self.check_units()?;
        match self {
            SatakeParameter::Inert(a) => {
                let n = a.len();
                let mut rest = sorted(a);
                let mut front = vec![];
                let mut middle = None;
                while !rest.is_empty() {
                    let x = rest.remove(0);
                    let xi = x.inv().expect("unit");
                    if let Some(p) = rest.iter().position(|y| *y == xi) {
                        rest.remove(p);
                        front.push(x);
                    } else if xi == x && n % 2 == 1 && middle.is_none() {
                        middle = Some(x);
                    } else {
                        return pre(format!("{x:?} has no partner α⁻¹ in the multiset"));
                    }
                }
                let mut out = front.clone();
                out.extend(middle);
                out.extend(front.iter().rev().map(|x| x.inv().expect("unit")));
                Ok(SatakeParameter::Inert(out))
            }
            SatakeParameter::Split(a1, a2) => {
                let o1 = sorted(a1);
                let o2: Vec<F> = inverses(&o1)?.into_iter().rev().collect();
                if sorted(&o2) != sorted(a2) {
                    return pre("α₂ is not the inverse multiset of α₁");
                }
                Ok(SatakeParameter::Split(o1, o2))
            }
        }
    }

    pub fn is_valid_ordering(&self) -> bool {
        let n = self.rank();
        match self {
            SatakeParameter::Inert(a) => (0..n).all(|i| (a[i].clone() * a[n - 1 - i].clone()).is_one()),
            SatakeParameter::Split(a1, a2) => {
                (0..n).all(|i| (a1[i].clone() * a2[n - 1 - i].clone()).is_one())
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let enc = |v: &[F]| sorted(v).iter().map(|x| x.to_json()).collect::<Vec<_>>();
        match self {
            SatakeParameter::Inert(a) => serde_json::json!({"kind": "inert", "alpha": enc(a)}),
            SatakeParameter::Split(a, b) => {
                serde_json::json!({"kind": "split", "alpha1": enc(a), "alpha2": enc(b)})
            }
        }
    }
}

fn check_cocharacter<F: Field>(p: &SatakeParameter<F>, x: &[i64]) -> Result<()> {
    let n = p.rank();
    if x.len() != n {
        return Err(Error::Shape(format!("cocharacter has {} entries, N = {n}", x.len())));
    }
    if let SatakeParameter::Inert(_) = p {
        if (0..n).any(|i| x[i] + x[n - 1 - i] != 0) {
            return pre("inert cocharacters satisfy t_i + t_(N+1−i) = 0");
        }
    }
    if !p.is_valid_ordering() {
        return pre("ordering does not pair α_i with its inverse");
    }
    Ok(())
}

/// Value of the torus homomorphism at (ϖ^{t₁}, …, ϖ^{t_N}).
pub fn torus_character<F: Field>(p: &SatakeParameter<F>, x: &[i64]) -> Result<F> {
    check_cocharacter(p, x)?;
    let (a, k) = match p {
        SatakeParameter::Inert(a) => (a, a.len() / 2),
        SatakeParameter::Split(a, _) => (a, a.len()),
    };
    let mut v = F::one();
    for i in 0..k {
        v = v * a[i].powi(x[i]).expect("unit");
    }
    Ok(v)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Distinct elements of the Weyl orbit of x: signed permutations of the first
/// ⌊N/2⌋ coordinates (inert) or all permutations (split).
pub fn weyl_orbit<F: Field>(p: &SatakeParameter<F>, x: &[i64]) -> BTreeSet<Vec<i64>> {
    let n = x.len();
    let mut orbit = BTreeSet::new();
    match p {
        SatakeParameter::Inert(_) => {
            let k = n / 2;
            for perm in permutations(k) {
                for signs in 0..(1u32 << k) {
                    let mut y = vec![0; n];
                    for i in 0..k {
                        let s = if signs >> i & 1 == 1 { -1 } else { 1 };
                        y[i] = s * x[perm[i]];
                        y[n - 1 - i] = -y[i];
                    }
                    orbit.insert(y);
                }
            }
        }
        SatakeParameter::Split(..) => {
            for perm in permutations(n) {
                orbit.insert(perm.iter().map(|&i| x[i]).collect());
            }
        }
    }
    orbit
}

/// Σ over the Weyl orbit of x of the torus character.
pub fn weyl_orbit_value<F: Field>(p: &SatakeParameter<F>, x: &[i64]) -> Result<F> {
    check_cocharacter(p, x)?;
    let mut s = F::zero();
    for y in weyl_orbit(p, x) {
        s = s + torus_character(p, &y)?;
    }
    Ok(s)
}

/// Generalized eigenvalues of r̄^♮(φ_w⁻¹), one multiset per place above v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobeniusData<F> {
    Inert(Vec<F>),
    Split(Vec<F>, Vec<F>),
}

impl<const P: u64> FrobeniusData<Fp<P>> {
    pub fn embed_quadratic(&self) -> FrobeniusData<Fq<P, 2>> {
        let e = |v: &Vec<Fp<P>>| v.iter().map(|x| Fq::embed(*x)).collect();
        match self {
            FrobeniusData::Inert(a) => FrobeniusData::Inert(e(a)),
            FrobeniusData::Split(a, b) => FrobeniusData::Split(e(a), e(b)),
        }
    }
}

/// α_i = eig_i·‖v‖^{1−N} (inert) or eig_{j,i}·‖v‖^{(1−N)/2} (split), the half
/// power being the inverse of the smallest square root of ‖v‖^{N−1}.
pub fn satake_from_frobenius<F: Field>(data: &FrobeniusData<F>, qv: i64, n: usize) -> Result<FromFrobenius<F>> {
    let q = F::from_i64(qv);
    if q.is_zero() {
        return pre(format!("ℓ = {} divides ‖v‖ = {qv}", F::CHAR));
    }
    let e = n as i64 - 1;
    let check = |v: &[F]| -> Result<()> {
        if v.len() != n {
            return Err(Error::Shape(format!("expected {n} eigenvalues, got {}", v.len())));
        }
        Ok(())
    };
    let param = match data {
        FrobeniusData::Inert(a) => {
            check(a)?;
            let s = q.powi(-e).expect("unit");
            SatakeParameter::Inert(a.iter().map(|x| x.clone() * s.clone()).collect())
        }
        FrobeniusData::Split(a, b) => {
            check(a)?;
            check(b)?;
            let s = if e % 2 == 0 {
                q.powi(-e / 2).expect("unit")
            } else {
                let r = q.pow(e as u64).sqrt().ok_or_else(|| {
                    Error::Unsupported(format!(
                        "‖v‖^{e} has no square root in {}; pass to the quadratic extension",
                        F::describe()
                    ))
                })?;
                r.inv().expect("unit")
            };
            let sc = |v: &Vec<F>| v.iter().map(|x| x.clone() * s.clone()).collect();
            SatakeParameter::Split(sc(a), sc(b))
        }
    };
    let unitary = param.unitary_check()?.unitary;
    Ok(FromFrobenius { param, unitary })
}

/// The same over 𝔽_p, or over 𝔽_{p²} when the split half power needs it.
pub fn satake_from_frobenius_prime<const P: u64>(
    data: &FrobeniusData<Fp<P>>,
    qv: i64,
    n: usize,
) -> Result<SatakeOverPrime<P>> {
    match satake_from_frobenius(data, qv, n) {
        Ok(r) => Ok(SatakeOverPrime::Base(r)),
        Err(Error::Unsupported(_)) => {
            satake_from_frobenius(&data.embed_quadratic(), qv, n).map(SatakeOverPrime::Quadratic)
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatakeOverPrime<const P: u64> {
    Base(FromFrobenius<Fp<P>>),
    Quadratic(FromFrobenius<Fq<P, 2>>),
}

impl<const P: u64> SatakeOverPrime<P> {
    pub fn unitary(&self) -> bool {
        match self {
            SatakeOverPrime::Base(r) => r.unitary,
            SatakeOverPrime::Quadratic(r) => r.unitary,
        }
    }
}

/// Whether q^{−N} and q^{−N+2} each occur exactly once.
pub fn level_raising_eigcheck<F: Field>(eigs: &[F], q: i64, n: usize) -> Result<bool> {
    let qe = F::from_i64(q);
    if (qe.clone() * qe.clone() - F::one()).is_zero() || qe.is_zero() {
        return pre(format!("ℓ = {} divides q(q² − 1) for q = {q}", F::CHAR));
    }
    let a0 = qe.powi(-(n as i64)).expect("unit");
    let a1 = qe.powi(2 - n as i64).expect("unit");
    let mult = |a: &F| eigs.iter().filter(|x| *x == a).count();
    Ok(mult(&a0) == 1 && mult(&a1) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, F13, F7};

    fn f7(v: &[i64]) -> Vec<F7> {
        v.iter().map(|&x| F7::from_i64(x)).collect()
    }

    #[test]
    fn unitarity_examples() {
        for a in 1..7 {
            let ai = F7::from_i64(a).inv().unwrap();
            let p = SatakeParameter::Inert(vec![F7::from_i64(a), ai]);
            assert!(p.unitary_check().unwrap().unitary);
        }
        assert!(!SatakeParameter::Inert(f7(&[-1])).unitary_check().unwrap().unitary);
        assert!(SatakeParameter::Inert(f7(&[1])).unitary_check().unwrap().unitary);
        let u = SatakeParameter::Split(f7(&[3, 5]), f7(&[5, 3])).unitary_check().unwrap();
        assert!(u.unitary);
        assert_eq!(u.c, Some(F7::from_i64(1)));
        assert!(SatakeParameter::Inert(vec![F7::from_i64(0)]).unitary_check().is_err());
    }

    #[test]
    fn torus_and_orbit() {
        let p = SatakeParameter::Inert(f7(&[3, 5]));
        assert_eq!(torus_character(&p, &[0, 0]).unwrap(), F7::from_i64(1));
        assert_eq!(torus_character(&p, &[2, -2]).unwrap(), F7::from_i64(2));
        assert_eq!(weyl_orbit(&p, &[0, 0]).len(), 1);
        assert_eq!(weyl_orbit_value(&p, &[1, -1]).unwrap(), F7::from_i64(1));
        let r = SatakeParameter::Inert(f7(&[5, 3]));
        assert_eq!(weyl_orbit_value(&r, &[1, -1]).unwrap(), F7::from_i64(1));
        assert!(torus_character(&p, &[1, 1]).is_err());
        assert!(torus_character(&SatakeParameter::Inert(f7(&[3, 3])), &[1, -1]).is_err());
    }

    #[test]
    fn orderings() {
        let p = SatakeParameter::Inert(f7(&[6, 3, 1, 5, 6]));
        let o = p.valid_ordering().unwrap();
        assert!(o.is_valid_ordering());
        assert!(SatakeParameter::Inert(f7(&[3, 3])).valid_ordering().is_err());
        let s = SatakeParameter::Split(f7(&[2, 3]), f7(&[5, 4])).valid_ordering().unwrap();
        assert!(s.is_valid_ordering());
    }

    #[test]
    fn from_frobenius() {
        // eigenvalues ‖v‖^{N−1} give the trivial parameter
        let r = satake_from_frobenius(&FrobeniusData::Inert(f7(&[4, 4, 4])), 2, 3).unwrap();
        assert_eq!(r.param, SatakeParameter::Inert(f7(&[1, 1, 1])));
        assert!(r.unitary);
        let a = F7::from_i64(3);
        let eigs = vec![F7::from_i64(2) * a, F7::from_i64(2) * a.inv().unwrap()];
        let r = satake_from_frobenius(&FrobeniusData::Inert(eigs), 2, 2).unwrap();
        assert_eq!(r.param, SatakeParameter::Inert(vec![a, a.inv().unwrap()]));
        assert!(r.unitary);
        // 3 is not a square mod 7, so the split half power needs 𝔽₄₉
        let d = FrobeniusData::Split(f7(&[1, 2]), f7(&[1, 2]));
        assert!(matches!(satake_from_frobenius(&d, 3, 2), Err(Error::Unsupported(_))));
        let r = satake_from_frobenius_prime(&d, 3, 2).unwrap();
        assert!(matches!(r, SatakeOverPrime::Quadratic(_)));
        assert!(!r.unitary());
    }

    #[test]
    fn eigcheck() {
        let q = 2;
        let f = |x: i64| F13::from_i64(2).powi(x).unwrap();
        assert!(level_raising_eigcheck(&[f(-4), f(-2), F13::from_i64(5), F13::from_i64(7)], q, 4).unwrap());
        assert!(!level_raising_eigcheck(&[f(-4), f(-4), f(-2), F13::from_i64(7)], q, 4).unwrap());
        assert!(level_raising_eigcheck(&[F13::from_i64(1)], 14, 1).is_err());
    }
}
