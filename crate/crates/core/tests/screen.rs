use std::collections::BTreeSet;

use galdef_core::ec::{self, ReductionKind, Splitting, WeierstrassCurve};
use galdef_oracle as oracle;
use proptest::prelude::*;

fn curve() -> WeierstrassCurve {
    "0,0,1,-1,0".parse().unwrap()
}

fn set(v: &[u64]) -> BTreeSet<u64> {
    v.iter().copied().collect()
}

#[test]
fn conductor_37_example() {
    let e = curve();
    assert_eq!(ec::bad_primes(&e).unwrap(), set(&[37]));
    assert_eq!(ec::reduction_analyze(&e, 5).unwrap().kind, ReductionKind::Good);
    let r37 = ec::reduction_analyze(&e, 37).unwrap();
    assert_eq!(r37.kind, ReductionKind::NonsplitMultiplicative);
    assert_eq!(r37.u, Some(-1));
    assert_eq!(ec::trace_frobenius(&e, 2, 1 << 10).unwrap(), -2);
    assert_eq!(ec::trace_frobenius(&e, 5, 1 << 10).unwrap(), -2);

    let rep = ec::screen(&e, -4, &set(&[2, 37]), 2, ec::DEFAULT_COUNTING_BOUND).unwrap();
    assert_eq!(rep.excluded, set(&[2, 3, 5, 19, 37]));
    let p2 = rep.places.iter().find(|p| p.q == 2).unwrap();
    assert_eq!(p2.splitting, Splitting::Ramified);
    let at2: BTreeSet<u64> = p2.reasons.iter().flat_map(|r| r.primes.iter().copied()).collect();
    assert_eq!(at2, set(&[2, 3, 5]));

    let (_, script) = oracle::ec::screen_script([0, 0, 1, -1, 0], -4, &[2, 37], 2);
    assert_eq!(script, rep.excluded);
}

#[test]
fn missing_bad_prime_is_named() {
    let err = ec::screen(&curve(), -4, &set(&[2]), 2, ec::DEFAULT_COUNTING_BOUND).unwrap_err();
    assert!(err.to_string().contains("37"), "{err}");
}

#[test]
fn counting_bound_is_enforced() {
    let err = ec::trace_frobenius(&curve(), 10007, 1000).unwrap_err();
    assert!(err.to_string().contains("counting bound"), "{err}");
}

#[test]
fn split_good_place_norms() {
    // N = 2, ‖w‖ = 5, a = −2: E₁ = 160
    assert_eq!(ec::eigen_ratio_norm(-2, 5, 1).unwrap(), 160);
    assert_eq!(oracle::ec::e_m_direct(-2, 5, 1), 160);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// More places or a larger N never shrink the excluded set.
    #[test]
    fn screen_is_monotone(extra in prop::sample::select(vec![3u64, 5, 7, 11, 13])) {
        let e = curve();
        let base = ec::screen(&e, -4, &set(&[2, 37]), 2, ec::DEFAULT_COUNTING_BOUND).unwrap();
        let more = ec::screen(&e, -4, &set(&[2, 37, extra]), 2, ec::DEFAULT_COUNTING_BOUND).unwrap();
        prop_assert!(base.excluded.is_subset(&more.excluded));
        let wider = ec::screen(&e, -4, &set(&[2, 37, extra]), 4, ec::DEFAULT_COUNTING_BOUND).unwrap();
        prop_assert!(more.excluded.is_subset(&wider.excluded));
    }
}
