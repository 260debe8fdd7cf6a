//! The nine acceptance checks, shared by `galdef selftest` and the
//! `acceptance` test target.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256StarStar;
use rayon::prelude::*;
use serde::Serialize;

use galdef_core::ec::{self, WeierstrassCurve};
use galdef_core::fl::{self, FLModule, FLPairing};
use galdef_core::hensel::hensel_factor;
use galdef_core::nilpotent::{jordan_partition, trunc_exp, trunc_log};
use galdef_core::numerology::{patching_dimensions, taylor_wiles_generators, PatchingInput};
use galdef_core::satake::{weyl_orbit_value, SatakeParameter};
use galdef_core::tame::{ad_module, level_raising_standard, tangent_level_raising, tangent_min, AdModule, TameModule, TameRep};
use galdef_core::{Dual, Field, Matrix, Partition, Ring, F11, F13, F2, F3, F5, F7, Z25, Z9};
use galdef_oracle as oracle;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub limit: Duration,
}

impl CriterionResult {
    pub fn within_limit(&self) -> bool {
        self.elapsed < self.limit
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {}: {} ({} cases, {:.2}s of {}s){}",
            if self.passed && self.within_limit() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.cases,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            match self.failures.first() {
                Some(f) => format!(": {f}"),
                None => String::new(),
            }
        )
    }
}

/// Outcome of one grid point: Ok(()) or a description of the mismatch.
type Check = std::result::Result<(), String>;

fn finish(id: u8, name: &'static str, limit_s: u64, start: Instant, checks: Vec<Check>) -> CriterionResult {
    let cases = checks.len();
    let mut failures: Vec<String> = checks.into_iter().filter_map(|c| c.err()).collect();
    if cases == 0 {
        failures.push("empty grid".into());
    }
    failures.truncate(20);
    CriterionResult {
        id,
        name,
        passed: failures.is_empty(),
        cases,
        failures,
        elapsed: start.elapsed(),
        limit: Duration::from_secs(limit_s),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng_for(seed: u64, stream: u64, index: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index.rotate_left(32))
}

/// Runs `$body` with `$F` bound to 𝔽_ℓ for the primes the suite uses.
macro_rules! with_field {
    ($l:expr, $F:ident => $body:expr) => {
        match $l {
            2 => {
                type $F = F2;
                $body
            }
            3 => {
                type $F = F3;
                $body
            }
            5 => {
                type $F = F5;
                $body
            }
            7 => {
                type $F = F7;
                $body
            }
            11 => {
                type $F = F11;
                $body
            }
            13 => {
                type $F = F13;
                $body
            }
            other => Err(format!("no field of size {other} is compiled in").into()),
        }
    };
}
pub(crate) use with_field;

// 1 -------------------------------------------------------------------------

fn minimal_case<F: Field>(part: &Partition, q: i64, mu: u8) -> Check {
    let n = part.size();
    let r = TameRep::<F>::minimal(part, q, mu, 1 - n as i64).map_err(|e| e.to_string())?;
    let t = tangent_min(&r).map_err(|e| format!("{part:?} q={q} ℓ={}: {e}", F::CHAR))?;
    ensure(t.l == t.h0 && t.identity_holds(n), || {
        format!("{part:?} q={q} ℓ={} μ={mu}: {t:?}", F::CHAR)
    })
}

pub fn criterion_minimal_tame() -> CriterionResult {
    let start = Instant::now();
    let mut grid = vec![];
    for n in 1..=3usize {
        for part in Partition::all(n) {
            for q in [2i64, 3, 5] {
                for l in [7i64, 11, 13] {
                    if (1..=n as u32).any(|i| (q.pow(2 * i) - 1) % l == 0) {
                        continue;
                    }
                    for mu in [0u8, 1] {
                        grid.push((part.clone(), q, l, mu));
                    }
                }
            }
        }
    }
    let checks = grid
        .par_iter()
        .map(|(part, q, l, mu)| with_field!(*l, F => minimal_case::<F>(part, *q, *mu)))
        .collect();
    finish(1, "minimally ramified tangent = H⁰ and the L¹ identity", 10, start, checks)
}

// 2 -------------------------------------------------------------------------

/// None when (N, q, ℓ) is outside the level-raising hypotheses.
fn level_raising_case<F: Field>(n: usize, q: i64) -> Option<Check> {
    let qe = F::from_i64(q);
    if qe.is_zero() || (qe.clone() * qe.clone() - F::one()).is_zero() || (F::CHAR as usize) <= n {
        return None;
    }
    let r = level_raising_standard::<F>(n, q, 0);
    let roots = r.r_phi_w().ok()?.g.charpoly().roots();
    if !galdef_core::satake::level_raising_eigcheck(&roots, q, n).ok()? {
        return None;
    }
    Some(match tangent_level_raising(&r) {
        Err(e) => Err(format!("N={n} q={q} ℓ={}: {e}", F::CHAR)),
        Ok(rep) => {
            let got = (rep.mix.l1, rep.ram.l1, rep.unr.l1);
            let want = (n * n + 1, n * n, n * n);
            let ids = [rep.mix, rep.ram, rep.unr].iter().all(|t| t.identity_holds(n));
            ensure(got == want && ids, || format!("N={n} q={q} ℓ={}: got {got:?}, want {want:?}", F::CHAR))
        }
    })
}

pub fn criterion_level_raising() -> CriterionResult {
    let start = Instant::now();
    let mut grid = vec![];
    for n in 2..=4usize {
        for q in [2i64, 3, 5, 7] {
            for l in [5i64, 7, 11, 13] {
                grid.push((n, q, l));
            }
        }
    }
    let out: Vec<Option<Check>> = grid
        .par_iter()
        .map(|&(n, q, l)| {
            let r: std::result::Result<Option<Check>, String> =
                with_field!(l, F => Ok(level_raising_case::<F>(n, q)));
            r.unwrap_or_else(|e| Some(Err(e)))
        })
        .collect();
    let mut checks: Vec<Check> = out.iter().flatten().cloned().collect();
    for n in 2..=4usize {
        let covered = grid.iter().zip(&out).any(|(g, c)| g.0 == n && c.is_some());
        if !covered {
            checks.push(Err(format!("no admissible (q, ℓ) for N = {n}")));
        }
    }
    finish(2, "level raising tangent dimensions (N²+1, N², N²)", 10, start, checks)
}

// 3 -------------------------------------------------------------------------

fn cohomology_case<F: Field>(m: &TameModule<F>) -> Check {
    let d = m.dims().map_err(|e| e.to_string())?;
    let b = oracle::cohomology::brute_cohomology(&m.t, &m.p, m.q);
    ensure((d.h0, d.h1) == b, || {
        format!("{} dim {} q={}: presentation {:?}, enumeration {b:?}", F::describe(), m.dim(), m.q, (d.h0, d.h1))
    })
}

fn relation_holds<F: Field>(t: &Matrix<F>, p: &Matrix<F>, q: u64) -> bool {
    match p.inverse() {
        Some(pi) => &(p * t) * &pi == t.pow(q),
        None => false,
    }
}

/// Every (T, P) ∈ GL_d(F)² with PTP⁻¹ = T^q.
fn all_modules<F: Field>(d: usize, q: u64) -> Vec<TameModule<F>> {
    let gl: Vec<Matrix<F>> = oracle::all_vectors::<F>(d * d)
        .into_iter()
        .map(|v| Matrix::from_vec(d, d, v))
        .filter(|m| m.is_invertible())
        .collect();
    let mut out = vec![];
    for t in &gl {
        let tq = t.pow(q);
        for p in &gl {
            if &(p * t) == &(&tq * p) {
                out.push(TameModule { t: t.clone(), p: p.clone(), q });
            }
        }
    }
    out
}

fn direct_sum<F: Field>(a: &TameModule<F>, b: &TameModule<F>) -> TameModule<F> {
    TameModule {
        t: Matrix::block_diag(&[a.t.clone(), b.t.clone()]),
        p: Matrix::block_diag(&[a.p.clone(), b.p.clone()]),
        q: a.q,
    }
}

fn sample<T: Clone>(v: &[T], k: usize, g: &mut Xoshiro256StarStar) -> Vec<T> {
    use rand::seq::IndexedRandom;
    (0..k).filter_map(|_| v.choose(g).cloned()).collect()
}

pub fn criterion_cohomology(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut g = rng_for(seed, 3, 0);
    let mut f3: Vec<TameModule<F3>> = vec![];
    let mut f2: Vec<TameModule<F2>> = vec![];
    for q in [2u64, 4, 5] {
        let two = all_modules::<F3>(2, q);
        let ones = all_modules::<F3>(1, q);
        f3.extend(ones.iter().cloned());
        f3.extend(two.iter().cloned());
        for (a, b) in sample(&two, 40, &mut g).iter().zip(sample(&two, 40, &mut g)) {
            f3.push(direct_sum(a, &b));
        }
        for (a, b) in sample(&two, 20, &mut g).iter().zip(sample(&ones, 20, &mut g)) {
            f3.push(direct_sum(a, &b));
        }
        // ad r̄ for minimally ramified r̄, N ≤ 2
        for n in 1..=2 {
            for part in Partition::all(n) {
                for mu in [0, 1] {
                    if let Ok(r) = TameRep::<F3>::minimal(&part, q as i64, mu, 1 - n as i64) {
                        for which in [AdModule::Full, AdModule::Sub] {
                            if let Ok(m) = ad_module(&r, which) {
                                f3.push(m);
                            }
                        }
                    }
                }
            }
        }
    }
    for q in [3u64, 5] {
        let two = all_modules::<F2>(2, q);
        let three = all_modules::<F2>(3, q);
        f2.extend(two.iter().cloned());
        f2.extend(sample(&three, 40, &mut g));
        for (a, b) in sample(&two, 20, &mut g).iter().zip(sample(&two, 20, &mut g)) {
            f2.push(direct_sum(a, &b));
        }
        for (a, b) in sample(&three, 20, &mut g).iter().zip(sample(&three, 20, &mut g)) {
            f2.push(direct_sum(a, &b));
        }
    }
    let mut checks: Vec<Check> = f3
        .iter()
        .filter(|m| relation_holds(&m.t, &m.p, m.q))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|m| cohomology_case(m))
        .collect();
    checks.extend(
        f2.iter()
            .filter(|m| relation_holds(&m.t, &m.p, m.q))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|m| cohomology_case(m))
            .collect::<Vec<_>>(),
    );
    finish(3, "presented cohomology equals cocycle enumeration", 30, start, checks)
}

// 4 and 5 -----------------------------------------------------------------

#[derive(Clone, Debug)]
struct FlCase {
    l: u64,
    fplus: usize,
    n: usize,
    b: u32,
    weights: Vec<Vec<u32>>,
    sign: i64,
    index: u64,
}

/// N distinct weights in [0, b], listed in decreasing order.
fn weight_sets(n: usize, b: u32) -> Vec<Vec<u32>> {
    fn go(start: u32, b: u32, n: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if acc.len() == n {
            let mut w = acc.clone();
            w.reverse();
            out.push(w);
            return;
        }
        for x in start..=b {
            acc.push(x);
            go(x + 1, b, n, acc, out);
            acc.pop();
        }
    }
    let mut out = vec![];
    go(0, b, n, &mut vec![], &mut out);
    out
}

fn fl_grid() -> Vec<FlCase> {
    let mut out = vec![];
    for l in [5u64, 7] {
        for fplus in [1usize, 2] {
            for n in [2usize, 3] {
                for b in 0..=(l as u32 - 2) {
                    let sets = weight_sets(n, b);
                    let mut patterns: Vec<Vec<Vec<u32>>> = vec![vec![]];
                    for _ in 0..fplus {
                        patterns = patterns
                            .into_iter()
                            .flat_map(|p| {
                                sets.iter().map(move |s| {
                                    let mut p = p.clone();
                                    p.push(s.clone());
                                    p
                                })
                            })
                            .collect();
                    }
                    for weights in patterns {
                        let index = out.len() as u64;
                        out.push(FlCase {
                            l,
                            fplus,
                            n,
                            b,
                            weights,
                            sign: if index % 2 == 0 { 1 } else { -1 },
                            index,
                        });
                    }
                }
            }
        }
    }
    out
}

fn fl_object<R: Ring>(c: &FlCase, seed: u64) -> std::result::Result<(FLModule<R>, FLPairing<R>), String> {
    let mut g = rng_for(seed, 4, c.index);
    let phis: Vec<Matrix<R>> = (0..c.fplus).map(|_| Matrix::random_invertible(c.n, &mut g)).collect();
    fl::self_dual_hyperbolic(c.b, c.sign, &c.weights, &phis).map_err(|e| format!("{c:?}: {e}"))
}

fn fl_dims_case<F: Field>(c: &FlCase, seed: u64) -> Check {
    let (m, p) = fl_object::<F>(c, seed)?;
    let t = fl::fl_tangent(&m, Some(&p)).map_err(|e| format!("{c:?}: {e}"))?;
    let he = fl::fl_hom_ext(&m, &m).map_err(|e| format!("{c:?}: {e}"))?;
    let d = c.fplus;
    let n = c.n;
    ensure(t.matches_formulas(d, n) && he.is_exact(), || {
        format!(
            "ℓ={} f⁺={d} N={n} b={} w={:?}: got ({}, {}, {}), want ({}, {}, {})",
            c.l,
            c.b,
            c.weights,
            t.fil0_plus,
            t.hom_plus,
            t.l as i64 - t.h0 as i64,
            d * n * (n + 1) / 2,
            d * n * n,
            d * n * (n - 1) / 2
        )
    })
}

fn fl_brute_case(c: &FlCase, seed: u64) -> Check {
    let (m, _) = fl_object::<F5>(c, seed)?;
    let he = fl::fl_hom_ext(&m, &m).map_err(|e| e.to_string())?;
    let brute = oracle::fl::brute_hom_ext(&m, &m);
    ensure((he.hom, he.ext) == brute, || {
        format!("b={} w={:?}: linear algebra {:?}, enumeration {brute:?}", c.b, c.weights, (he.hom, he.ext))
    })
}

pub fn criterion_fl_dims(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let grid = fl_grid();
    let mut checks: Vec<Check> = grid
        .par_iter()
        .map(|c| with_field!(c.l, F => fl_dims_case::<F>(c, seed)))
        .collect();
    let small: Vec<&FlCase> = grid.iter().filter(|c| c.l == 5 && c.fplus == 1 && c.n == 2).collect();
    checks.extend(small.par_iter().map(|c| fl_brute_case(c, seed)).collect::<Vec<_>>());
    finish(4, "Fontaine–Laffaille tangent dimensions and exactness", 20, start, checks)
}

fn lift_case<S: Ring, R: galdef_core::ReduceTo<S>>(m: &FLModule<S>, p: &FLPairing<S>, what: &str) -> Check {
    let lifted = fl::fl_lift::<S, R>(m, p).map_err(|e| format!("{what}: {e}"))?;
    ensure(lifted.module.reduce::<S>() == *m && lifted.pairing.reduce::<S>() == *p, || {
        format!("{what}: lift does not reduce to the input")
    })
}

fn fl_lift_case<F: Field>(c: &FlCase, seed: u64) -> Vec<Check>
where
    Dual<F>: galdef_core::ReduceTo<F>,
{
    let tag = format!("ℓ={} f⁺={} N={} b={} w={:?}", c.l, c.fplus, c.n, c.b, c.weights);
    match fl_object::<F>(c, seed) {
        Ok((m, p)) => vec![lift_case::<F, Dual<F>>(&m, &p, &format!("{tag} to k[ε]"))],
        Err(e) => vec![Err(e)],
    }
}

fn fl_lift_z25_case(c: &FlCase, seed: u64) -> Check {
    let (m, p) = fl_object::<F5>(c, seed)?;
    let tag = format!("f⁺={} N={} b={} w={:?}", c.fplus, c.n, c.b, c.weights);
    lift_case::<F5, Z25>(&m, &p, &format!("{tag} to ℤ/25"))
}

pub fn criterion_fl_lift(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let grid = fl_grid();
    let checks: Vec<Check> = grid
        .par_iter()
        .flat_map(|c| match c.l {
            5 => {
                let mut v = fl_lift_case::<F5>(c, seed);
                v.push(fl_lift_z25_case(c, seed));
                v
            }
            7 => fl_lift_case::<F7>(c, seed),
            l => vec![Err(format!("unexpected ℓ = {l}"))],
        })
        .collect();
    finish(5, "Fontaine–Laffaille lifts k → k[ε] and 𝔽₅ → ℤ/25", 10, start, checks)
}

// 6 -------------------------------------------------------------------------

fn multisets<F: Field>(els: &[F], n: usize) -> Vec<Vec<F>> {
    fn go<F: Clone>(els: &[F], start: usize, n: usize, acc: &mut Vec<F>, out: &mut Vec<Vec<F>>) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        for i in start..els.len() {
            acc.push(els[i].clone());
            go(els, i, n, acc, out);
            acc.pop();
        }
    }
    let mut out = vec![];
    go(els, 0, n, &mut vec![], &mut out);
    out
}

fn units<F: Field>() -> Vec<F> {
    F::elements().into_iter().filter(|x| !x.is_zero()).collect()
}

/// Integer vectors in [−r, r]^k.
fn box_points(k: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-r..=r).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn inert_cochars(n: usize, r: i64) -> Vec<Vec<i64>> {
    box_points(n / 2, r)
        .into_iter()
        .map(|h| {
            let mut x = vec![0; n];
            for (i, t) in h.iter().enumerate() {
                x[i] = *t;
                x[n - 1 - i] = -t;
            }
            x
        })
        .collect()
}

fn orbit_invariance(orderings: &[SatakeParameter<F7>], xs: &[Vec<i64>]) -> Check {
    for x in xs {
        let vals: BTreeSet<F7> = orderings
            .iter()
            .map(|p| weyl_orbit_value(p, x))
            .collect::<galdef_core::Result<_>>()
            .map_err(|e| e.to_string())?;
        if vals.len() > 1 {
            return Err(format!("x = {x:?}: {} distinct orbit values over {:?}", vals.len(), orderings[0]));
        }
    }
    Ok(())
}

pub fn criterion_unitarity() -> CriterionResult {
    let start = Instant::now();
    let u = units::<F7>();
    let mut checks: Vec<Check> = vec![];
    for n in 1..=3 {
        let ms = multisets(&u, n);
        for a in &ms {
            let got = SatakeParameter::Inert(a.clone()).unitary_check().map(|r| r.unitary);
            let want = oracle::satake::unitary_inert(a);
            checks.push(ensure(got == Ok(want), || format!("inert {a:?}: {got:?} vs {want}")));
        }
        for a in &ms {
            for b in &ms {
                let got = SatakeParameter::Split(a.clone(), b.clone()).unitary_check().map(|r| r.unitary);
                let want = oracle::satake::unitary_split(a, b);
                checks.push(ensure(got == Ok(want), || format!("split {a:?}, {b:?}: {got:?} vs {want}")));
            }
        }
    }
    for n in 1..=4 {
        let ms = multisets(&u, n);
        let inert: Vec<Check> = ms
            .par_iter()
            .filter_map(|a| {
                let ords = oracle::satake::valid_orderings_inert(a);
                if ords.is_empty() {
                    return None;
                }
                let ps: Vec<SatakeParameter<F7>> = ords.into_iter().map(SatakeParameter::Inert).collect();
                let chosen = SatakeParameter::Inert(a.clone()).valid_ordering();
                if !matches!(&chosen, Ok(c) if ps.contains(c)) {
                    return Some(Err(format!("{a:?}: greedy ordering {chosen:?} is not valid")));
                }
                Some(orbit_invariance(&ps, &inert_cochars(n, 2)))
            })
            .collect();
        checks.extend(inert);
        let r = if n == 4 { 1 } else { 2 };
        let split: Vec<Check> = ms
            .par_iter()
            .map(|a| {
                let b: Vec<F7> = a.iter().map(|x| x.inv().expect("unit")).collect();
                let ps: Vec<SatakeParameter<F7>> = oracle::satake::valid_orderings_split(a, &b)
                    .into_iter()
                    .map(|(x, y)| SatakeParameter::Split(x, y))
                    .collect();
                orbit_invariance(&ps, &box_points(n, r))
            })
            .collect();
        checks.extend(split);
    }
    finish(6, "unitarity criteria agree; Weyl-orbit values ignore the ordering", 10, start, checks)
}

// 7 -------------------------------------------------------------------------

pub fn criterion_screener() -> CriterionResult {
    let start = Instant::now();
    let mut checks: Vec<Check> = vec![];
    let coeffs = [0, 0, 1, -1, 0];
    let run = || -> std::result::Result<Vec<Check>, String> {
        let e = WeierstrassCurve::new(coeffs).map_err(|e| e.to_string())?;
        let sigma: BTreeSet<u64> = [2, 37].into();
        let rep = ec::screen(&e, -4, &sigma, 2, ec::DEFAULT_COUNTING_BOUND).map_err(|e| e.to_string())?;
        let (places, total) = oracle::ec::screen_script(coeffs, -4, &[2, 37], 2);
        let mut c = vec![];
        let a2 = ec::trace_frobenius(&e, 2, 1000).map_err(|e| e.to_string())?;
        let a5 = ec::trace_frobenius(&e, 5, 1000).map_err(|e| e.to_string())?;
        c.push(ensure(a2 == -2 && oracle::ec::naive_trace(coeffs, 2) == -2, || format!("a₂ = {a2}")));
        c.push(ensure(a5 == -2 && oracle::ec::naive_trace(coeffs, 5) == -2, || format!("a₅ = {a5}")));
        let at2: BTreeSet<u64> = rep.places[0].reasons.iter().flat_map(|r| r.primes.iter().copied()).collect();
        let want2: BTreeSet<u64> = [2, 3, 5].into();
        c.push(ensure(at2 == want2 && places[&2].primes == want2, || format!("place 2: {at2:?}")));
        let want: BTreeSet<u64> = [2, 3, 5, 19, 37].into();
        c.push(ensure(rep.excluded == want && total == want, || {
            format!("global: core {:?}, script {total:?}", rep.excluded)
        }));
        for p in &rep.places {
            let s = &places[&p.q];
            let mine: BTreeSet<u64> = p.reasons.iter().flat_map(|r| r.primes.iter().copied()).collect();
            c.push(ensure(mine == s.primes && p.qw == s.qw && p.a_q == s.a_q, || {
                format!("place {}: core {mine:?}, script {:?}", p.q, s.primes)
            }));
        }
        // traces against naive counts, with the Hasse bound
        for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 43, 47] {
            let a = ec::trace_frobenius(&e, q, 1000).map_err(|e| e.to_string())?;
            c.push(ensure(a == oracle::ec::naive_trace(coeffs, q) && (a * a) as u64 <= 4 * q, || {
                format!("a_{q} = {a}")
            }));
        }
        // ratio norm by recurrence and by direct expansion
        for qw in 2..=100u64 {
            let r = (2.0 * (qw as f64).sqrt()).floor() as i64;
            for a in -r..=r {
                if (a * a) as u64 > 4 * qw {
                    continue;
                }
                for m in 1..=10u32 {
                    let x = ec::eigen_ratio_norm(a, qw, m).map_err(|e| e.to_string())?;
                    let y = oracle::ec::e_m_direct(a, qw as i64, m);
                    if x != y || x == 0 {
                        c.push(Err(format!("E_{m}(a={a}, q={qw}): {x} vs {y}")));
                    }
                }
            }
        }
        // monotonicity N → N + 2
        let r4 = ec::screen(&e, -4, &sigma, 4, ec::DEFAULT_COUNTING_BOUND).map_err(|e| e.to_string())?;
        c.push(ensure(rep.excluded.is_subset(&r4.excluded), || "N = 2 set not inside N = 4 set".into()));
        let missing = ec::screen(&e, -4, &[2].into(), 2, ec::DEFAULT_COUNTING_BOUND);
        c.push(ensure(matches!(&missing, Err(err) if err.to_string().contains("37")), || {
            "Σ⁺ without 37 accepted".into()
        }));
        Ok(c)
    };
    match run() {
        Ok(c) => checks.extend(c),
        Err(e) => checks.push(Err(e)),
    }
    finish(7, "screener reproduces the y² + y = x³ − x example", 5, start, checks)
}

// 8 -------------------------------------------------------------------------

pub fn criterion_numerology() -> CriterionResult {
    let start = Instant::now();
    let t_ell_choices: [&[i64]; 5] = [&[], &[1], &[2], &[1, 2], &[3, 1, 1]];
    let mut checks = vec![];
    for b in 0..12i64 {
        for n in 1..=5i64 {
            for deg in 1..=5i64 {
                for mu in 0..2u8 {
                    for size_t in 0..=4i64 {
                        for t in t_ell_choices {
                            if t.len() as i64 > size_t {
                                continue;
                            }
                            let input = PatchingInput {
                                b,
                                t_ell_degrees: t.to_vec(),
                                size_t,
                                n,
                                deg_fplus: deg,
                                mu_parity: mu,
                            };
                            let g = taylor_wiles_generators(&input);
                            let d = patching_dimensions(&input);
                            let (Ok(g), Ok(d)) = (g, d) else {
                                checks.push(Err(format!("{input:?} rejected")));
                                continue;
                            };
                            let hg = oracle::numerology::generators(b, t, n, deg, mu as i64);
                            let (hs, hr) = oracle::numerology::dims(b, size_t, n, deg, mu as i64);
                            let local: i64 = t.iter().map(|x| x * n * (n - 1) / 2).sum();
                            let same = (mu as i64 - n) % 2 == 0;
                            checks.push(ensure(
                                g == hg
                                    && (d.dim_s, d.dim_r) == (hs, hr)
                                    && d.parity_ok == same
                                    && d.dim_r - d.dim_s == g - b + local,
                                || format!("{input:?}: g={g} dims={d:?}"),
                            ));
                        }
                    }
                }
            }
        }
    }
    if checks.len() < 10_000 {
        checks.push(Err(format!("grid has only {} points", checks.len())));
    }
    finish(8, "Taylor–Wiles numerology on a 10⁴-point grid", 1, start, checks)
}

// 9 -------------------------------------------------------------------------

fn exp_log_case<F: Field>(x: &Matrix<F>, brute: bool) -> Check {
    let e = trunc_exp(x).map_err(|e| e.to_string())?;
    let back = trunc_log(&e).map_err(|e| e.to_string())?;
    let ok = &back == x && e == oracle::nilpotent::horner_exp(x) && oracle::nilpotent::horner_log(&e) == *x;
    let jordan_ok = !brute
        || jordan_partition(x).map(|p| p.parts().to_vec()).ok() == Some(oracle::nilpotent::jordan_type_brute(x));
    ensure(ok && jordan_ok, || format!("X = {x:?} over {}", F::describe()))
}

fn random_nilpotent<F: Field>(n: usize, g: &mut Xoshiro256StarStar) -> Matrix<F> {
    use rand::seq::IndexedRandom;
    let parts = Partition::all(n);
    let p = parts.choose(g).expect("nonempty");
    let c = Matrix::<F>::random_invertible(n, g);
    &(&c * &p.nilpotent::<F>()) * &c.inverse().expect("invertible")
}

fn hensel_cases<R: Ring>() -> Vec<Check> {
    let mut polys = vec![];
    for d in 2..=3 {
        polys.extend(oracle::hensel::monic_polys::<R>(d));
    }
    polys
        .par_iter()
        .flat_map_iter(|p| {
            let pb = p.residue();
            let d = pb.degree() as usize;
            let mut out = vec![];
            for k in 1..d {
                for gb in oracle::hensel::monic_polys::<R::Residue>(k) {
                    let (hb, rem) = pb.divrem(&gb);
                    if !rem.is_zero() || gb.gcd(&hb).degree() != 0 {
                        continue;
                    }
                    let all = oracle::hensel::lifted_pairs::<R>(p, &gb, &hb);
                    let got = hensel_factor(p, &[gb.clone(), hb.clone()]);
                    out.push(match got {
                        Ok(f) if all.len() == 1 && all[0] == (f[0].clone(), f[1].clone()) => Ok(()),
                        other => Err(format!(
                            "{} P = {:?}, ḡ = {:?}: {} lifts, Hensel gave {:?}",
                            R::describe(),
                            p.coeffs(),
                            gb.coeffs(),
                            all.len(),
                            other.map(|f| f.iter().map(|x| x.coeffs().to_vec()).collect::<Vec<_>>())
                        )),
                    });
                }
            }
            out
        })
        .collect()
}

pub fn criterion_exp_log_hensel(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut checks: Vec<Check> = vec![];
    let all2: Vec<Matrix<F5>> = oracle::all_vectors::<F5>(4)
        .into_iter()
        .map(|v| Matrix::from_vec(2, 2, v))
        .collect();
    for x in all2.iter().filter(|x| x.is_nilpotent()) {
        checks.push(exp_log_case(x, true));
    }
    let id = Matrix::<F5>::identity(2);
    for a in all2.iter().filter(|a| (*a - &id).is_nilpotent()) {
        let ok = trunc_exp(&trunc_log(a).unwrap_or_else(|_| id.clone())).ok().as_ref() == Some(a);
        checks.push(ensure(ok, || format!("exp(log A) ≠ A for {a:?}")));
    }
    let randomized: Vec<Check> = (0..6000u64)
        .into_par_iter()
        .map(|i| {
            let mut g = rng_for(seed, 9, i);
            let n = 2 + (i % 3) as usize;
            if i % 2 == 0 {
                exp_log_case(&random_nilpotent::<F7>(n, &mut g), n <= 3)
            } else {
                exp_log_case(&random_nilpotent::<F11>(n, &mut g), n <= 2)
            }
        })
        .collect();
    checks.extend(randomized);
    checks.extend(hensel_cases::<Z9>());
    checks.extend(hensel_cases::<Z25>());
    finish(9, "exp/log round trips and Hensel uniqueness", 10, start, checks)
}

pub fn run_all(seed: u64, only: Option<&[u8]>) -> Vec<CriterionResult> {
    let want = |i: u8| only.is_none_or(|o| o.contains(&i));
    let mut out = vec![];
    if want(1) {
        out.push(criterion_minimal_tame());
    }
    if want(2) {
        out.push(criterion_level_raising());
    }
    if want(3) {
        out.push(criterion_cohomology(seed));
    }
    if want(4) {
        out.push(criterion_fl_dims(seed));
    }
    if want(5) {
        out.push(criterion_fl_lift(seed));
    }
    if want(6) {
        out.push(criterion_unitarity());
    }
    if want(7) {
        out.push(criterion_screener());
    }
    if want(8) {
        out.push(criterion_numerology());
    }
    if want(9) {
        out.push(criterion_exp_log_hensel(seed));
    }
    out
}
