//! Rigidity screening for symmetric powers of an elliptic curve over ℚ with an
//! imaginary quadratic CM field F.
//!
//! Every prime ℓ outside the reported set is certified; primes inside are not
//! claimed to fail.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::sync::OnceLock;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{contract, pre, Error, Result};

pub const DEFAULT_COUNTING_BOUND: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a: [i64; 5],
    pub c4: BigInt,
    pub c6: BigInt,
    pub disc: BigInt,
    pub j: BigRational,
}

impl WeierstrassCurve {
    pub fn new(a: [i64; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a.map(BigInt::from);
        let b2 = &a1 * &a1 + 4 * &a2;
        let b4 = 2 * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + 4 * &a6;
        let b8 = &a1 * &a1 * &a6 + 4 * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        let c4: BigInt = &b2 * &b2 - 24 * &b4;
        let b2cube: BigInt = &b2 * &b2 * &b2;
        let c6: BigInt = -b2cube + 36 * &b2 * &b4 - 216 * &b6;
        let b2b8: BigInt = &b2 * &b2 * &b8;
        let disc: BigInt = -b2b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6;
        if disc.is_zero() {
            return pre("singular curve: Δ = 0");
        }
        if BigInt::from(1728) * &disc != &c4 * &c4 * &c4 - &c6 * &c6 {
            return contract("1728Δ ≠ c₄³ − c₆²");
        }
        let j = BigRational::new(&c4 * &c4 * &c4, disc.clone());
        Ok(WeierstrassCurve { a, c4, c6, disc, j })
    }

    pub fn coeffs(&self) -> [i64; 5] {
        self.a
    }
}

impl FromStr for WeierstrassCurve {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Precondition(format!("curve coefficients: {e}")))?;
        let a: [i64; 5] = v
            .try_into()
            .map_err(|_| Error::Precondition("expected a1,a2,a3,a4,a6".into()))?;
        WeierstrassCurve::new(a)
    }
}

fn val(x: &BigInt, q: u64) -> u32 {
    if x.is_zero() {
        return u32::MAX;
    }
    let q = BigInt::from(q);
    let mut x = x.clone();
    let mut v = 0;
    while (&x % &q).is_zero() {
        x /= &q;
        v += 1;
    }
    v
}

fn mod_q(x: &BigInt, q: u64) -> u64 {
    x.mod_floor(&BigInt::from(q)).to_u64().expect("residue")
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let (mut r, mut b) = (1 % m, b as u128 % m);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u64
}

/// Legendre symbol for an odd prime q.
fn legendre(x: u64, q: u64) -> i64 {
    let x = x % q;
    if x == 0 {
        0
    } else if pow_mod(x, (q - 1) / 2, q) == 1 {
        1
    } else {
        -1
    }
}

fn is_prime(q: u64) -> bool {
    num_prime::nt_funcs::is_prime64(q)
}

pub fn prime_factors(n: u128) -> BTreeSet<u64> {
    if n <= 1 {
        return BTreeSet::new();
    }
    num_prime::nt_funcs::factorize128(n)
        .into_keys()
        .map(|p| u64::try_from(p).expect("prime factor fits in u64"))
        .collect()
}

fn big_prime_factors(n: &BigInt) -> Result<BTreeSet<u64>> {
    let m = n
        .abs()
        .to_u128()
        .ok_or_else(|| Error::Unsupported(format!("factoring {n} exceeds 128 bits")))?;
    Ok(prime_factors(m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// Whether cm_disc is a negative fundamental discriminant.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d >= -2 {
        return false;
    }
    let squarefree = |m: u64| prime_factors(m as u128).iter().all(|&p| m % (p * p) != 0);
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

pub fn splitting(cm_disc: i64, q: u64) -> Splitting {
    if cm_disc.unsigned_abs() % q == 0 {
        Splitting::Ramified
    } else if q == 2 {
        if cm_disc.rem_euclid(8) == 1 {
            Splitting::Split
        } else {
            Splitting::Inert
        }
    } else if legendre(cm_disc.rem_euclid(q as i64) as u64, q) == 1 {
        Splitting::Split
    } else {
        Splitting::Inert
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReductionKind {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive { e: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub q: u64,
    pub kind: ReductionKind,
    /// v_q(j) when negative
    pub u: Option<i64>,
    pub v_disc_min: u32,
}

/// #E(𝔽_q) including the point at infinity, for y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆.
/// On a nodal cubic the node is counted too.
fn count_points(a: [u64; 5], q: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = a.map(|x| x as u128 % q as u128);
    let qq = q as u128;
    let rhs = |x: u128| (x * x % qq * x + a2 * x % qq * x + a4 * x + a6) % qq;
    let mut n = 1u64;
    if q == 2 {
        for x in 0..qq {
            for y in 0..qq {
                if (y * y + a1 * x * y + a3 * y) % qq == rhs(x) {
                    n += 1;
                }
            }
        }
        return n;
    }
    for x in 0..qq {
        let h = (a1 * x + a3) % qq;
        let d = (h * h + 4 * rhs(x)) % qq;
        n += (1 + legendre(d as u64, q)) as u64;
    }
    n
}

fn reduce_coeffs(a: [i64; 5], q: u64) -> [u64; 5] {
    a.map(|x| x.rem_euclid(q as i64) as u64)
}

/// Short model y² = x³ − 27c₄x − 54c₆ after removing q^{4k}, q^{6k}.
fn short_model(e: &WeierstrassCurve, q: u64, k: u32) -> [u64; 5] {
    let s4 = BigInt::from(q).pow(4 * k);
    let s6 = BigInt::from(q).pow(6 * k);
    let a4 = -(BigInt::from(27)) * (&e.c4 / s4);
    let a6 = -(BigInt::from(54)) * (&e.c6 / s6);
    [0, 0, 0, mod_q(&a4, q), mod_q(&a6, q)]
}

fn min_shift(e: &WeierstrassCurve, q: u64) -> u32 {
    let k4 = val(&e.c4, q) / 4;
    let k6 = val(&e.c6, q) / 6;
    let kd = val(&e.disc, q) / 12;
    k4.min(k6).min(kd)
}

fn j_valuation(e: &WeierstrassCurve, q: u64) -> i64 {
    let num = val(e.j.numer(), q);
    let den = val(e.j.denom(), q) as i64;
    if num == u32::MAX {
        i64::MAX
    } else {
        num as i64 - den
    }
}

/// Reduction type at q. For q ∈ {2, 3} only good and multiplicative reduction
/// are recognised.
pub fn reduction_analyze(e: &WeierstrassCurve, q: u64) -> Result<Reduction> {
    if !is_prime(q) {
        return pre(format!("{q} is not prime"));
    }
    let vj = j_valuation(e, q);
    let u = (vj < 0).then_some(vj);
    if q < 5 {
        let vd = val(&e.disc, q);
        let kind = if vd == 0 {
            ReductionKind::Good
        } else if val(&e.c4, q) == 0 {
            let n = count_points(reduce_coeffs(e.a, q), q);
            if n == q {
                ReductionKind::SplitMultiplicative
            } else if n == q + 2 {
                ReductionKind::NonsplitMultiplicative
            } else {
                return contract(format!("nodal cubic mod {q} has {n} points"));
            }
        } else {
            return Err(Error::Unsupported(format!(
                "reduction at q = {q} is neither visibly good nor multiplicative; conservative mode required"
            )));
        };
        return Ok(Reduction { q, kind, u, v_disc_min: vd });
    }
    let k = min_shift(e, q);
    let vd = val(&e.disc, q) - 12 * k;
    let vc4 = val(&e.c4, q).saturating_sub(4 * k);
    let kind = if vd == 0 {
        ReductionKind::Good
    } else if vc4 == 0 {
        let c6 = &e.c6 / BigInt::from(q).pow(6 * k);
        if legendre(mod_q(&-c6, q), q) == 1 {
            ReductionKind::SplitMultiplicative
        } else {
            ReductionKind::NonsplitMultiplicative
        }
    } else if u.is_some() {
        ReductionKind::Additive { e: 2 }
    } else {
        ReductionKind::Additive { e: 12 / (vd.gcd(&12)) }
    };
    Ok(Reduction { q, kind, u, v_disc_min: vd })
}

/// Concurrent a_q memo keyed by curve and prime.
#[derive(Default)]
pub struct TraceCache(DashMap<([i64; 5], u64), i64>);

impl TraceCache {
    pub fn global() -> &'static TraceCache {
        static CACHE: OnceLock<TraceCache> = OnceLock::new();
        CACHE.get_or_init(TraceCache::default)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// a_q = q + 1 − #E(𝔽_q) for a prime of good reduction.
pub fn trace_frobenius(e: &WeierstrassCurve, q: u64, bound: u64) -> Result<i64> {
    if q > bound {
        return Err(Error::Unsupported(format!("counting bound exceeded: q = {q} > {bound}")));
    }
    let key = (e.a, q);
    if let Some(a) = TraceCache::global().0.get(&key) {
        return Ok(*a);
    }
    let r = reduction_analyze(e, q)?;
    if r.kind != ReductionKind::Good {
        return pre(format!("bad reduction at {q}"));
    }
    let model = if q < 5 {
        reduce_coeffs(e.a, q)
    } else {
        short_model(e, q, min_shift(e, q))
    };
    let a = q as i64 + 1 - count_points(model, q) as i64;
    if (a * a) as u64 > 4 * q {
        return contract(format!("Hasse bound fails: a_{q} = {a}"));
    }
    TraceCache::global().0.insert(key, a);
    Ok(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReasonTag {
    SmallEll,
    QPowerMinusOne,
    JValuation,
    EigenvalueRatio,
    BaseChangeDegree,
    RamifiedInF,
    SigmaPlus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reason {
    pub tag: ReasonTag,
    pub primes: BTreeSet<u64>,
    pub note: String,
}

fn reason(tag: ReasonTag, primes: BTreeSet<u64>, note: impl Into<String>) -> Reason {
    Reason { tag, primes, note: note.into() }
}

fn overflow() -> Error {
    Error::Unsupported("value exceeds 128-bit range".into())
}

/// s_j = α^j + β^j for α + β = a, αβ = q_w.
pub fn power_sums(a: i64, qw: u64, upto: usize) -> Result<Vec<i128>> {
    let mut s = vec![2i128, a as i128];
    while s.len() <= upto {
        let k = s.len();
        let next = (a as i128)
            .checked_mul(s[k - 1])
            .and_then(|x| x.checked_sub((qw as i128).checked_mul(s[k - 2])?))
            .ok_or_else(overflow)?;
        s.push(next);
    }
    s.truncate(upto + 1);
    Ok(s)
}

/// Norm of α^m − q_w β^m, i.e. q_w^m(1 + q_w²) − q_w·s_{2m}.
pub fn eigen_ratio_norm(a: i64, qw: u64, m: u32) -> Result<i128> {
    let s = power_sums(a, qw, 2 * m as usize)?;
    let q = qw as i128;
    let qm = q.checked_pow(m).ok_or_else(overflow)?;
    let lhs = qm.checked_mul(1 + q.checked_mul(q).ok_or_else(overflow)?).ok_or_else(overflow)?;
    let rhs = q.checked_mul(s[2 * m as usize]).ok_or_else(overflow)?;
    lhs.checked_sub(rhs).ok_or_else(overflow)
}

fn q_power_primes(qw: u64, n: usize) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for i in 1..=n as u32 {
        let v = (qw as u128).checked_pow(i).ok_or_else(overflow)? - 1;
        out.extend(prime_factors(v));
    }
    Ok(out)
}

/// Exclusions at a good place with residue field of size q_w and trace a.
pub fn excluded_primes_good(a: i64, qw: u64, n: usize) -> Result<Vec<Reason>> {
    let mut ratio = BTreeSet::new();
    let mut ms = vec![];
    let mut m = n as i64 - 1;
    while m > 0 {
        let e = eigen_ratio_norm(a, qw, m as u32)?;
        if e == 0 {
            return contract(format!("E_{m} = 0 for a = {a}, q_w = {qw}"));
        }
        ratio.extend(prime_factors(e.unsigned_abs()));
        ms.push(m);
        m -= 2;
    }
    Ok(vec![
        reason(
            ReasonTag::QPowerMinusOne,
            q_power_primes(qw, n)?,
            format!("ℓ divides ∏_(i≤{n}) ({qw}^i − 1)"),
        ),
        reason(
            ReasonTag::EigenvalueRatio,
            ratio,
            format!("ℓ divides the norm of α^m − {qw}β^m for m ∈ {ms:?}"),
        ),
    ])
}

/// Exclusions at a multiplicative place with v(j) = u and base change degree e.
pub fn excluded_primes_mult(u: i64, e: u32) -> Result<BTreeSet<u64>> {
    if u >= 0 {
        return pre("multiplicative places have v(j) < 0");
    }
    let mut out = prime_factors(u.unsigned_abs() as u128 * e as u128);
    out.extend((2..=e as u64).filter(|&p| is_prime(p)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceReport {
    pub q: u64,
    pub splitting: Splitting,
    /// residue field size ‖w‖
    pub qw: u64,
    pub reduction: ReductionKind,
    pub a_q: Option<i64>,
    /// trace of Frobenius over the residue field of size ‖w‖
    pub a_w: Option<i64>,
    pub u: Option<i64>,
    pub e: u32,
    pub reasons: Vec<Reason>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExclusionReport {
    pub curve: [i64; 5],
    pub cm_disc: i64,
    pub n: usize,
    pub sigma_plus: BTreeSet<u64>,
    pub places: Vec<PlaceReport>,
    pub global: Vec<Reason>,
    pub excluded: BTreeSet<u64>,
    pub similitude_readings: Vec<String>,
    pub certificate: String,
}

/// Primes at which the given model has bad reduction (or cannot be shown good).
pub fn bad_primes(e: &WeierstrassCurve) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for p in big_prime_factors(&e.disc)? {
        match reduction_analyze(e, p) {
            Ok(r) if r.kind == ReductionKind::Good => {}
            _ => {
                out.insert(p);
            }
        }
    }
    Ok(out)
}

pub fn analyze_place(e: &WeierstrassCurve, cm_disc: i64, q: u64, n: usize, bound: u64) -> Result<PlaceReport> {
    let sp = splitting(cm_disc, q);
    let qw = if sp == Splitting::Inert { q.checked_mul(q).ok_or_else(overflow)? } else { q };
    let r = reduction_analyze(e, q)?;
    let mut rep = PlaceReport {
        q,
        splitting: sp,
        qw,
        reduction: r.kind,
        a_q: None,
        a_w: None,
        u: r.u,
        e: 1,
        reasons: vec![],
    };
    match r.kind {
        ReductionKind::Good => {
            let a = trace_frobenius(e, q, bound)?;
            let aw = if sp == Splitting::Inert { a * a - 2 * q as i64 } else { a };
            rep.a_q = Some(a);
            rep.a_w = Some(aw);
            rep.reasons = excluded_primes_good(aw, qw, n)?;
        }
        ReductionKind::SplitMultiplicative | ReductionKind::NonsplitMultiplicative => {
            // nonsplit becomes split over the unramified quadratic extension
            let nonsplit = r.kind == ReductionKind::NonsplitMultiplicative;
            rep.e = if nonsplit && sp != Splitting::Inert { 2 } else { 1 };
            let u = r.u.ok_or_else(|| Error::Contract("multiplicative reduction with v(j) ≥ 0".into()))?;
            rep.reasons = mult_reasons(u, rep.e, qw, n)?;
        }
        ReductionKind::Additive { e: deg } => {
            if q < 5 {
                return Err(Error::Unsupported(format!("additive reduction at {q}")));
            }
            rep.e = deg;
            if let Some(u) = r.u {
                rep.reasons = mult_reasons(u, deg, qw, n)?;
            } else {
                rep.reasons = additive_good_reasons(deg, qw, n)?;
            }
        }
    }
    Ok(rep)
}

fn mult_reasons(u: i64, e: u32, qw: u64, n: usize) -> Result<Vec<Reason>> {
    Ok(vec![
        reason(
            ReasonTag::QPowerMinusOne,
            q_power_primes(qw, n)?,
            format!("ℓ divides ∏_(i≤{n}) ({qw}^i − 1)"),
        ),
        reason(
            ReasonTag::JValuation,
            prime_factors(u.unsigned_abs() as u128 * e as u128),
            format!("ℓ divides u·e = {}", u * e as i64),
        ),
        reason(
            ReasonTag::BaseChangeDegree,
            (2..=e as u64).filter(|&p| is_prime(p)).collect(),
            format!("ℓ ≤ e = {e}"),
        ),
    ])
}

/// Potentially good additive reduction: the trace after base change is not
/// computed, so every Weil-admissible trace contributes.
fn additive_good_reasons(e: u32, qw: u64, n: usize) -> Result<Vec<Reason>> {
    let bound = (2.0 * (qw as f64).sqrt()).floor() as i64;
    let mut ratio = BTreeSet::new();
    for a in -bound..=bound {
        if (a * a) as u64 > 4 * qw {
            continue;
        }
        for r in excluded_primes_good(a, qw, n)? {
            if r.tag == ReasonTag::EigenvalueRatio {
                ratio.extend(r.primes);
            }
        }
    }
    Ok(vec![
        reason(
            ReasonTag::QPowerMinusOne,
            q_power_primes(qw, n)?,
            format!("ℓ divides ∏_(i≤{n}) ({qw}^i − 1)"),
        ),
        reason(
            ReasonTag::EigenvalueRatio,
            ratio,
            format!("union over all traces |a| ≤ 2√{qw} after base change"),
        ),
        reason(
            ReasonTag::BaseChangeDegree,
            (2..=e as u64).filter(|&p| is_prime(p)).collect(),
            format!("ℓ ≤ e = {e}"),
        ),
    ])
}

pub fn screen(
    e: &WeierstrassCurve,
    cm_disc: i64,
    sigma_plus: &BTreeSet<u64>,
    n: usize,
    bound: u64,
) -> Result<ExclusionReport> {
    if n < 2 {
        return pre("N ≥ 2");
    }
    if !is_fundamental_discriminant(cm_disc) {
        return pre(format!("{cm_disc} is not a negative fundamental discriminant"));
    }
    if let Some(p) = sigma_plus.iter().find(|&&p| !is_prime(p)) {
        return pre(format!("Σ⁺ contains the non-prime {p}"));
    }
    let ramified = prime_factors(cm_disc.unsigned_abs() as u128);
    for p in ramified.iter().chain(bad_primes(e)?.iter()) {
        if !sigma_plus.contains(p) {
            return pre(format!("Σ⁺ is missing the prime {p}"));
        }
    }
    let places = sigma_plus
        .iter()
        .map(|&q| analyze_place(e, cm_disc, q, n, bound))
        .collect::<Result<Vec<_>>>()?;
    let max_e = places.iter().map(|p| p.e).max().unwrap_or(1);
    let global = vec![
        reason(
            ReasonTag::SmallEll,
            (2..=n as u64).filter(|&p| is_prime(p)).collect(),
            format!("ℓ < N + 1 = {}", n + 1),
        ),
        reason(ReasonTag::RamifiedInF, ramified, "ℓ ramified in F"),
        reason(ReasonTag::SigmaPlus, sigma_plus.clone(), "ℓ lies under a place of Σ⁺"),
        reason(
            ReasonTag::BaseChangeDegree,
            (2..=max_e as u64).filter(|&p| is_prime(p)).collect(),
            format!("ℓ ≤ max base change degree {max_e}"),
        ),
    ];
    let mut excluded = BTreeSet::new();
    for r in places.iter().flat_map(|p| p.reasons.iter()).chain(global.iter()) {
        excluded.extend(r.primes.iter().copied());
    }
    let list = excluded.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
    let certificate = format!(
        "for every prime ℓ outside {{{list}}}, the residual representation of Sym^{} of the curve is rigid for (Σ⁺, ∅); \
         the set may strictly contain the exceptional primes and no prime in it is claimed to fail",
        n - 1
    );
    Ok(ExclusionReport {
        curve: e.a,
        cm_disc,
        n,
        sigma_plus: sigma_plus.clone(),
        places,
        global,
        excluded,
        similitude_readings: vec![
            format!("η^{} ε^{}", n - 1, 1 - n as i64),
            format!("η^{} ε^{}", n, 1 - n as i64),
        ],
        certificate,
    })
}

/// Per-tag union of a report, for quick inspection.
pub fn by_tag(r: &ExclusionReport) -> BTreeMap<ReasonTag, BTreeSet<u64>> {
    let mut m: BTreeMap<ReasonTag, BTreeSet<u64>> = BTreeMap::new();
    for x in r.places.iter().flat_map(|p| p.reasons.iter()).chain(r.global.iter()) {
        m.entry(x.tag).or_default().extend(x.primes.iter().copied());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e37() -> WeierstrassCurve {
        "0,0,1,-1,0".parse().unwrap()
    }

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn invariants() {
        let e = e37();
        assert_eq!(e.disc, BigInt::from(37));
        assert_eq!(e.c4, BigInt::from(48));
        assert!("0,0,0,0,0".parse::<WeierstrassCurve>().is_err());
    }

    #[test]
    fn reduction_types() {
        let e = e37();
        assert_eq!(reduction_analyze(&e, 5).unwrap().kind, ReductionKind::Good);
        let r = reduction_analyze(&e, 37).unwrap();
        // −c₆ = 216 is a non-residue mod 37
        assert_eq!(r.kind, ReductionKind::NonsplitMultiplicative);
        assert_eq!(r.u, Some(-1));
        let f = WeierstrassCurve::new([0, 0, 0, 25, 0]).unwrap();
        assert!(matches!(reduction_analyze(&f, 5).unwrap().kind, ReductionKind::Additive { .. }));
        // non-minimal at 5: y² = x³ + 5⁴x + 5⁶ is a twist-free rescaling
        let g = WeierstrassCurve::new([0, 0, 0, 625, 15625]).unwrap();
        let h = WeierstrassCurve::new([0, 0, 0, 1, 1]).unwrap();
        assert_eq!(reduction_analyze(&g, 5).unwrap().kind, ReductionKind::Good);
        assert_eq!(trace_frobenius(&g, 5, 100).unwrap(), trace_frobenius(&h, 5, 100).unwrap());
        assert!(matches!(
            reduction_analyze(&WeierstrassCurve::new([0, 0, 0, 2, 0]).unwrap(), 2),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn traces() {
        let e = e37();
        assert_eq!(trace_frobenius(&e, 2, 100).unwrap(), -2);
        assert_eq!(trace_frobenius(&e, 5, 100).unwrap(), -2);
        assert!(trace_frobenius(&e, 101, 100).is_err());
    }

    #[test]
    fn exclusions() {
        let r = excluded_primes_good(-2, 5, 2).unwrap();
        assert_eq!(eigen_ratio_norm(-2, 5, 1).unwrap(), 160);
        let all: BTreeSet<u64> = r.iter().flat_map(|x| x.primes.clone()).collect();
        assert_eq!(all, set(&[2, 3, 5]));
        assert_eq!(excluded_primes_mult(-1, 1).unwrap(), set(&[]));
        assert_eq!(excluded_primes_mult(-5, 1).unwrap(), set(&[5]));
        assert_eq!(excluded_primes_mult(-6, 2).unwrap(), set(&[2, 3]));
    }

    #[test]
    fn screen_example() {
        let e = e37();
        let r = screen(&e, -4, &set(&[2, 37]), 2, 1000).unwrap();
        assert_eq!(r.excluded, set(&[2, 3, 5, 19, 37]));
        assert_eq!(r.places[0].splitting, Splitting::Ramified);
        assert_eq!(r.places[1].splitting, Splitting::Split);
        let err = screen(&e, -4, &set(&[2]), 2, 1000).unwrap_err();
        assert!(err.to_string().contains("37"));
        let r4 = screen(&e, -4, &set(&[2, 37]), 4, 1000).unwrap();
        assert!(r.excluded.is_subset(&r4.excluded));
    }

    #[test]
    fn discriminants() {
        assert!(is_fundamental_discriminant(-4));
        assert!(is_fundamental_discriminant(-3));
        assert!(is_fundamental_discriminant(-8));
        assert!(!is_fundamental_discriminant(-12 * 4));
        assert!(!is_fundamental_discriminant(-5));
        assert_eq!(splitting(-4, 5), Splitting::Split);
        assert_eq!(splitting(-4, 3), Splitting::Inert);
        assert_eq!(splitting(-7, 2), Splitting::Split);
    }
}
