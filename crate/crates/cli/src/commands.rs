use std::collections::BTreeSet;

use clap::{Args, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256StarStar;
use serde_json::json;

use galdef_core::ec::{self, ExclusionReport, ReductionKind, WeierstrassCurve};
use galdef_core::fl::{self, FLModule, Place};
use galdef_core::numerology::{patching_dimensions, taylor_wiles_generators, PatchingInput};
use galdef_core::satake::{self, FrobeniusData, SatakeParameter};
use galdef_core::tame::{self, AdModule, TameRep};
use galdef_core::{Dual, Field, Matrix, Partition, F11, F13, F2, F3, F5, F7, Z25};
use galdef_oracle as oracle;

use crate::suite::{self, with_field};
use crate::{Failure, Report, Verdict};

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// tangent spaces of a minimally ramified or level-raising tame representation
    Tame(TameArgs),
    /// Fontaine–Laffaille tangent dimensions, Hom/Ext and lifting
    Fl(FlArgs),
    /// unitarity, orderings and Weyl-orbit values of Satake parameters
    Satake(SatakeArgs),
    /// rigidity screen for an elliptic curve
    Screen(ScreenArgs),
    /// Taylor–Wiles generator count and patching dimensions
    Numerology(NumerologyArgs),
    /// run the full verification suite
    Selftest(SelftestArgs),
}

fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, Failure>
where
    T::Err: std::fmt::Display,
{
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|e| Failure::usage(format!("bad list entry {t:?}: {e}"))))
        .collect()
}

#[derive(Debug, Args)]
pub struct TameArgs {
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub q: i64,
    #[arg(long)]
    pub ell: u64,
    /// Jordan type of the unipotent part, e.g. 2,1 (defaults to [N])
    #[arg(long)]
    pub partition: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub mu_parity: u8,
    /// c in χ = η^μ ε^c (defaults to 1 − N)
    #[arg(long, allow_negative_numbers = true)]
    pub cyc_power: Option<i64>,
    /// the unramified level-raising representation instead of the minimal one
    #[arg(long)]
    pub level_raising: bool,
}

fn tame_report<F: Field>(a: &TameArgs, seed: u64) -> Result<Report, Failure> {
    let inputs = json!({
        "N": a.n, "q": a.q, "ell": a.ell, "partition": a.partition, "mu_parity": a.mu_parity,
        "cyc_power": a.cyc_power, "level_raising": a.level_raising,
    });
    if a.level_raising {
        let r = tame::level_raising_standard::<F>(a.n, a.q, a.mu_parity);
        let rep = tame::tangent_level_raising(&r)?;
        let n2 = a.n * a.n;
        let verdicts = vec![
            Verdict::new("dim L1(mix) = N^2 + 1", rep.mix.l1 == n2 + 1),
            Verdict::new("dim L1(ram) = N^2", rep.ram.l1 == n2),
            Verdict::new("dim L1(unr) = N^2", rep.unr.l1 == n2),
            Verdict::new(
                "dim L1 = N^2 + dim L - dim H0 for each problem",
                [rep.mix, rep.ram, rep.unr].iter().all(|t| t.identity_holds(a.n)),
            ),
        ];
        let results = serde_json::to_value(&rep).expect("serializable");
        return Ok(Report::new("tame", inputs, seed, results, verdicts));
    }
    let parts = match &a.partition {
        Some(p) => list::<usize>(p)?,
        None => vec![a.n],
    };
    let part = Partition::new(parts)?;
    if part.size() != a.n {
        return Err(Failure::usage(format!("partition sums to {}, N = {}", part.size(), a.n)));
    }
    let r = TameRep::<F>::minimal(&part, a.q, a.mu_parity, a.cyc_power.unwrap_or(1 - a.n as i64))?;
    let t = tame::tangent_min(&r)?;
    let full = tame::ad_module(&r, AdModule::Full)?.dims()?;
    let sub = tame::ad_module(&r, AdModule::Sub)?.dims()?;
    let brute = (F::size().pow((a.n * a.n) as u32) <= 81)
        .then(|| oracle::cohomology::brute_cohomology(&tame::ad_module(&r, AdModule::Full).unwrap().t, &tame::ad_module(&r, AdModule::Full).unwrap().p, a.q as u64));
    let mut verdicts = vec![
        Verdict::new("dim L(min) = dim H0", t.l == t.h0),
        Verdict::new("dim L1 = N^2 + dim L - dim H0", t.identity_holds(a.n)),
    ];
    if let Some(b) = brute {
        verdicts.push(Verdict::new("(H0, H1) match cocycle enumeration", b == (full.h0, full.h1)));
    }
    let results = json!({
        "tangent": t,
        "cohomology_full": full,
        "cohomology_sub": sub,
        "representation": {"A": r.a.to_json(), "B": r.b.to_json()},
    });
    Ok(Report::new("tame", inputs, seed, results, verdicts))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlaceArg {
    Inert,
    Split,
}

#[derive(Debug, Args)]
pub struct FlArgs {
    #[arg(long)]
    pub ell: u64,
    #[arg(long = "N")]
    pub n: usize,
    /// number of embeddings in Σ⁺ (inert) or of the split orbit
    #[arg(long, default_value_t = 1)]
    pub fplus: usize,
    #[arg(long, value_enum, default_value = "inert")]
    pub place: PlaceArg,
    /// duality weight; defaults to ℓ − 2
    #[arg(long)]
    pub b: Option<u32>,
    /// weights per embedding of Σ⁺ separated by ';', e.g. "2,1,0;3,1,0"
    #[arg(long)]
    pub weights: Option<String>,
    /// symmetry sign of the pairing
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub sign: i64,
}

fn fl_report<F: Field>(a: &FlArgs, seed: u64) -> Result<Report, Failure>
where
    Dual<F>: galdef_core::ReduceTo<F>,
{
    let b = a.b.unwrap_or(a.ell as u32 - 2);
    let weights: Vec<Vec<u32>> = match &a.weights {
        Some(w) => w.split(';').map(list::<u32>).collect::<Result<_, _>>()?,
        None => vec![(0..a.n as u32).rev().collect(); a.fplus],
    };
    if weights.len() != a.fplus || weights.iter().any(|w| w.len() != a.n) {
        return Err(Failure::usage(format!("need {} weight lists of length {}", a.fplus, a.n)));
    }
    let mut g = Xoshiro256StarStar::seed_from_u64(seed);
    let phis: Vec<Matrix<F>> = (0..a.fplus).map(|_| Matrix::random_invertible(a.n, &mut g)).collect();
    let inputs = json!({
        "ell": a.ell, "N": a.n, "fplus": a.fplus, "place": format!("{:?}", a.place).to_lowercase(),
        "b": b, "weights": weights, "sign": a.sign,
    });
    let (m, p) = match a.place {
        PlaceArg::Inert => {
            let (m, p) = fl::self_dual_hyperbolic(b, a.sign, &weights, &phis)?;
            (m, Some(p))
        }
        PlaceArg::Split => (FLModule::new(Place::Split, weights.clone(), phis)?, None),
    };
    let t = fl::fl_tangent(&m, p.as_ref())?;
    let he = fl::fl_hom_ext(&m, &m)?;
    let d = m.local_degree();
    let n = a.n;
    let mut verdicts = vec![
        Verdict::new("dim Fil0 Hom+ = d N(N+1)/2", t.fil0_plus == d * n * (n + 1) / 2),
        Verdict::new("dim Hom+ = d N^2", t.hom_plus == d * n * n),
        Verdict::new("dim L - dim H0 = d N(N-1)/2", t.l == t.h0 + d * n * (n - 1) / 2),
        Verdict::new("Hom/Ext four-term sequence is exact", he.is_exact()),
    ];
    let mut results = json!({
        "module": m.to_json(),
        "tangent": t,
        "hom_ext": he,
    });
    if let Some(p) = &p {
        let lifted = fl::fl_lift::<F, Dual<F>>(&m, p);
        let ok = matches!(&lifted, Ok(l) if l.module.reduce::<F>() == m);
        verdicts.push(Verdict::new("lift to k[eps] reduces to the input", ok));
        results["lift_dual"] = json!(lifted.map(|l| l.module.to_json()).map_err(|e| e.to_string()).ok());
    }
    Ok(Report::new("fl", inputs, seed, results, verdicts))
}

fn fl_z25_extra(a: &FlArgs, report: &mut Report, seed: u64) -> Result<(), Failure> {
    if a.ell != 5 || a.place != PlaceArg::Inert {
        return Ok(());
    }
    let b = a.b.unwrap_or(3);
    let weights: Vec<Vec<u32>> = serde_json::from_value(report.inputs["weights"].clone()).map_err(|e| Failure::usage(e.to_string()))?;
    let mut g = Xoshiro256StarStar::seed_from_u64(seed);
    let phis: Vec<Matrix<F5>> = (0..a.fplus).map(|_| Matrix::random_invertible(a.n, &mut g)).collect();
    let (m, p) = fl::self_dual_hyperbolic(b, a.sign, &weights, &phis)?;
    let lifted = fl::fl_lift::<F5, Z25>(&m, &p);
    let ok = matches!(&lifted, Ok(l) if l.module.reduce::<F5>() == m);
    report.verdicts.push(Verdict::new("lift to Z/25 reduces to the input", ok));
    report.ok = report.verdicts.iter().all(|v| v.pass);
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Inert,
    Split,
}

#[derive(Debug, Args)]
pub struct SatakeArgs {
    #[arg(long)]
    pub ell: u64,
    #[arg(long, value_enum, default_value = "inert")]
    pub kind: KindArg,
    /// α (inert) or α₁ (split), comma separated residues
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha2: Option<String>,
    /// cocharacter (t₁, …, t_N) for the torus character and Weyl-orbit value
    #[arg(long, allow_hyphen_values = true)]
    pub cochar: Option<String>,
    /// treat α as Frobenius eigenvalues at a place with ‖v‖ = qv
    #[arg(long)]
    pub qv: Option<i64>,
}

fn satake_report<F: Field>(a: &SatakeArgs, seed: u64) -> Result<Report, Failure> {
    let conv = |s: &str| -> Result<Vec<F>, Failure> { Ok(list::<i64>(s)?.into_iter().map(F::from_i64).collect()) };
    let a1 = conv(&a.alpha)?;
    let a2 = match (&a.kind, &a.alpha2) {
        (KindArg::Split, Some(s)) => Some(conv(s)?),
        (KindArg::Split, None) => return Err(Failure::usage("split parameters need --alpha2")),
        (KindArg::Inert, _) => None,
    };
    let inputs = json!({
        "ell": a.ell, "kind": format!("{:?}", a.kind).to_lowercase(), "alpha": a.alpha,
        "alpha2": a.alpha2, "cochar": a.cochar, "qv": a.qv,
    });
    let n = a1.len();
    let mut results = json!({});
    let param = match a.qv {
        Some(qv) => {
            let data = match &a2 {
                Some(b) => FrobeniusData::Split(a1.clone(), b.clone()),
                None => FrobeniusData::Inert(a1.clone()),
            };
            let r = satake::satake_from_frobenius(&data, qv, n)?;
            results["from_frobenius"] = json!({"unitary": r.unitary});
            r.param
        }
        None => match a2 {
            Some(b) => SatakeParameter::Split(a1, b),
            None => SatakeParameter::Inert(a1),
        },
    };
    let u = param.unitary_check()?;
    let multiset = match &param {
        SatakeParameter::Inert(x) => oracle::satake::unitary_inert(x),
        SatakeParameter::Split(x, y) => oracle::satake::unitary_split(x, y),
    };
    results["parameter"] = param.to_json();
    results["unitary"] = json!(u.unitary);
    results["c"] = json!(u.c.map(|c| c.to_json()));
    let mut verdicts = vec![Verdict::new("polynomial identity agrees with the multiset criterion", u.unitary == multiset)];
    let ordered = param.valid_ordering();
    results["ordering"] = match &ordered {
        Ok(SatakeParameter::Inert(x)) => json!(x.iter().map(|v| v.to_json()).collect::<Vec<_>>()),
        Ok(SatakeParameter::Split(x, y)) => json!([
            x.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            y.iter().map(|v| v.to_json()).collect::<Vec<_>>()
        ]),
        Err(e) => json!({"error": e.to_string()}),
    };
    if let (Some(c), Ok(o)) = (&a.cochar, &ordered) {
        let x = list::<i64>(c)?;
        results["torus_character"] = satake::torus_character(o, &x)?.to_json();
        let v = satake::weyl_orbit_value(o, &x)?;
        results["weyl_orbit_value"] = v.to_json();
        let others: Vec<SatakeParameter<F>> = match o {
            SatakeParameter::Inert(x) => oracle::satake::valid_orderings_inert(x).into_iter().map(SatakeParameter::Inert).collect(),
            SatakeParameter::Split(x, y) => oracle::satake::valid_orderings_split(x, y)
                .into_iter()
                .map(|(p, q)| SatakeParameter::Split(p, q))
                .collect(),
        };
        let same = others.iter().all(|p| satake::weyl_orbit_value(p, &x).as_ref() == Ok(&v));
        verdicts.push(Verdict::new("Weyl-orbit value is the same for every valid ordering", same));
    }
    Ok(Report::new("satake", inputs, seed, results, verdicts))
}

#[derive(Debug, Args)]
pub struct ScreenArgs {
    /// a1,a2,a3,a4,a6
    #[arg(long, allow_hyphen_values = true)]
    pub curve: String,
    #[arg(long, allow_negative_numbers = true)]
    pub cm_disc: i64,
    /// the primes of Σ⁺, comma separated
    #[arg(long)]
    pub sigma: String,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long, default_value_t = ec::DEFAULT_COUNTING_BOUND)]
    pub counting_bound: u64,
}

fn screen_report(a: &ScreenArgs, seed: u64) -> Result<Report, Failure> {
    let e: WeierstrassCurve = a.curve.parse()?;
    let sigma: BTreeSet<u64> = list::<u64>(&a.sigma)?.into_iter().collect();
    let rep: ExclusionReport = ec::screen(&e, a.cm_disc, &sigma, a.n, a.counting_bound)?;
    let inputs = json!({"curve": e.a, "cm_disc": a.cm_disc, "sigma": sigma, "N": a.n, "counting_bound": a.counting_bound});
    let hasse = rep
        .places
        .iter()
        .all(|p| p.a_q.is_none_or(|x| (x * x) as u64 <= 4 * p.q));
    let union: BTreeSet<u64> = rep
        .places
        .iter()
        .flat_map(|p| p.reasons.iter())
        .chain(rep.global.iter())
        .flat_map(|r| r.primes.iter().copied())
        .collect();
    let mut verdicts = vec![
        Verdict::new("Hasse bound for every computed trace", hasse),
        Verdict::new("final set is the union of the tagged parts", union == rep.excluded),
    ];
    let scriptable = rep.places.iter().all(|p| !matches!(p.reduction, ReductionKind::Additive { .. }))
        && rep.places.iter().all(|p| p.q <= 2000);
    if scriptable {
        let sig: Vec<u64> = sigma.iter().copied().collect();
        let (_, total) = oracle::ec::screen_script(e.a, a.cm_disc, &sig, a.n as u32);
        verdicts.push(Verdict::new("independent straight-line screen agrees", total == rep.excluded));
    }
    let results = serde_json::to_value(&rep).expect("serializable");
    Ok(Report::new("screen", inputs, seed, results, verdicts))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Parity {
    Same,
    Opposite,
}

#[derive(Debug, Args)]
pub struct NumerologyArgs {
    #[arg(long)]
    pub b: i64,
    #[arg(long = "N")]
    pub n: i64,
    #[arg(long = "degF")]
    pub deg_f: i64,
    /// μ relative to N mod 2
    #[arg(long, value_enum)]
    pub mu_parity: Parity,
    /// local degrees of the ℓ-adic places in T
    #[arg(long = "T-ell", default_value = "")]
    pub t_ell: String,
    /// |T|; defaults to the number of ℓ-adic degrees
    #[arg(long = "size-T")]
    pub size_t: Option<i64>,
}

fn numerology_report(a: &NumerologyArgs, seed: u64) -> Result<Report, Failure> {
    let t_ell = list::<i64>(&a.t_ell)?;
    let mu = match a.mu_parity {
        Parity::Same => a.n.rem_euclid(2) as u8,
        Parity::Opposite => (a.n + 1).rem_euclid(2) as u8,
    };
    let input = PatchingInput {
        b: a.b,
        size_t: a.size_t.unwrap_or(t_ell.len() as i64),
        t_ell_degrees: t_ell.clone(),
        n: a.n,
        deg_fplus: a.deg_f,
        mu_parity: mu,
    };
    let g = taylor_wiles_generators(&input)?;
    let d = patching_dimensions(&input)?;
    let hg = oracle::numerology::generators(a.b, &t_ell, a.n, a.deg_f, mu as i64);
    let hd = oracle::numerology::dims(a.b, input.size_t, a.n, a.deg_f, mu as i64);
    let verdicts = vec![
        Verdict::new("g matches the expanded formula", g == hg),
        Verdict::new("(dim S, dim R) match the expanded formulas", (d.dim_s, d.dim_r) == hd),
        Verdict::new("parity verdict holds exactly when mu = N mod 2", d.parity_ok == (a.mu_parity == Parity::Same)),
    ];
    let results = json!({"g": g, "dim_S_inf": d.dim_s, "dim_R_inf": d.dim_r, "parity_ok": d.parity_ok});
    Ok(Report::new("numerology", serde_json::to_value(&input).expect("serializable"), seed, results, verdicts))
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// restrict to these criteria, e.g. 1,7
    #[arg(long)]
    pub only: Option<String>,
}

fn selftest_report(a: &SelftestArgs, seed: u64) -> Result<Report, Failure> {
    let only = a.only.as_deref().map(list::<u8>).transpose()?;
    let results = suite::run_all(seed, only.as_deref());
    for r in &results {
        eprintln!("{}", r.line());
    }
    let verdicts = results
        .iter()
        .map(|r| Verdict::new(format!("criterion {}: {}", r.id, r.name), r.passed))
        .collect();
    Ok(Report::new("selftest", json!({"only": only}), seed, serde_json::to_value(&results).expect("serializable"), verdicts))
}

pub fn execute(cmd: &Cmd, seed: u64) -> Result<Report, Failure> {
    match cmd {
        Cmd::Tame(a) => with_field!(a.ell, F => tame_report::<F>(a, seed)),
        Cmd::Fl(a) => {
            let mut r = match a.ell {
                5 => fl_report::<F5>(a, seed),
                7 => fl_report::<F7>(a, seed),
                11 => fl_report::<F11>(a, seed),
                13 => fl_report::<F13>(a, seed),
                l => Err(Failure::usage(format!("ℓ = {l} is not supported; choose 5, 7, 11 or 13"))),
            }?;
            fl_z25_extra(a, &mut r, seed)?;
            Ok(r)
        }
        Cmd::Satake(a) => with_field!(a.ell, F => satake_report::<F>(a, seed)),
        Cmd::Screen(a) => screen_report(a, seed),
        Cmd::Numerology(a) => numerology_report(a, seed),
        Cmd::Selftest(a) => selftest_report(a, seed),
    }
}
