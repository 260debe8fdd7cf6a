//! Library results against the brute-force reference implementations.

use galdef_core::ec::{self, WeierstrassCurve};
use galdef_core::hensel::hensel_factor;
use galdef_core::nilpotent::{jordan_partition, trunc_exp, trunc_log};
use galdef_core::numerology::{patching_dimensions, taylor_wiles_generators, PatchingInput};
use galdef_core::satake::SatakeParameter;
use galdef_core::tame::{ad_module, tame_cohomology, AdModule, TameRep};
use galdef_core::{Matrix, Partition, Poly, Ring, F13, F3, F5, F7, Z25, Z9};
use galdef_oracle as oracle;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256StarStar;

/// A random nilpotent matrix: strictly upper triangular, then conjugated.
fn nilpotent<R: Ring>(n: usize, seed: u64) -> Matrix<R> {
    let mut g = Xoshiro256StarStar::seed_from_u64(seed);
    let r = Matrix::<R>::random(n, n, &mut g);
    let u = Matrix::from_fn(n, n, |i, j| if j > i { r[(i, j)].clone() } else { R::zero() });
    let p = Matrix::<R>::random_invertible(n, &mut g);
    let pi = p.inverse().unwrap();
    &(&p * &u) * &pi
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_matches_horner_and_log_inverts(n in 1usize..5, seed: u64) {
        let x = nilpotent::<Z25>(n, seed);
        let e = trunc_exp(&x).unwrap();
        prop_assert_eq!(&e, &oracle::nilpotent::horner_exp(&x));
        prop_assert_eq!(trunc_log(&e).unwrap(), x.clone());
        prop_assert_eq!(oracle::nilpotent::horner_log(&e), x);
    }

    #[test]
    fn jordan_type_matches_kernel_counts(n in 1usize..4, seed: u64) {
        let x = nilpotent::<F5>(n, seed);
        let mut want = oracle::nilpotent::jordan_type_brute(&x);
        want.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(jordan_partition(&x).unwrap().parts().to_vec(), want);
    }

    #[test]
    fn trace_agrees_with_point_count_and_hasse(
        a in proptest::array::uniform5(-6i64..7),
        q in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23]),
    ) {
        let Ok(e) = WeierstrassCurve::new(a) else { return Ok(()) };
        let (_, _, disc) = oracle::ec::invariants(a);
        prop_assume!(disc.rem_euclid(q as i128) != 0);
        let t = ec::trace_frobenius(&e, q, ec::DEFAULT_COUNTING_BOUND).unwrap();
        prop_assert_eq!(t, oracle::ec::naive_trace(a, q));
        prop_assert!((t * t) as u64 <= 4 * q);
    }

    #[test]
    fn eigen_ratio_norm_two_ways(q in prop::sample::select(vec![2i64, 3, 5, 7, 25, 49]), t in 0.0f64..1.0, m in 1u32..6) {
        let bound = (2.0 * (q as f64).sqrt()).floor() as i64;
        let a = -bound + (t * (2 * bound + 1) as f64) as i64;
        prop_assert_eq!(ec::eigen_ratio_norm(a, q as u64, m).unwrap(), oracle::ec::e_m_direct(a, q, m));
    }

    #[test]
    fn numerology_expanded(b in 0i64..40, n in 1i64..8, d in 1i64..6, same in any::<bool>(), ts in prop::collection::vec(1i64..4, 0..4)) {
        let mu = if same { n % 2 } else { (n + 1) % 2 };
        let input = PatchingInput {
            b,
            size_t: ts.len() as i64,
            t_ell_degrees: ts.clone(),
            n,
            deg_fplus: d,
            mu_parity: mu as u8,
        };
        prop_assert_eq!(taylor_wiles_generators(&input).unwrap(), oracle::numerology::generators(b, &ts, n, d, mu));
        let dims = patching_dimensions(&input).unwrap();
        prop_assert_eq!((dims.dim_s, dims.dim_r), oracle::numerology::dims(b, ts.len() as i64, n, d, mu));
        prop_assert_eq!(dims.parity_ok, same);
    }

    #[test]
    fn unitarity_identity_vs_multiset(v in prop::collection::vec(1i64..13, 1..5), w in prop::collection::vec(1i64..13, 1..5)) {
        let a: Vec<F13> = v.iter().map(|&x| F13::from_i64(x)).collect();
        let inert = SatakeParameter::Inert(a.clone());
        prop_assert_eq!(inert.unitary_check().unwrap().unitary, oracle::satake::unitary_inert(&a));
        let b: Vec<F13> = w.iter().cycle().take(a.len()).map(|&x| F13::from_i64(x)).collect();
        let split = SatakeParameter::Split(a.clone(), b.clone());
        prop_assert_eq!(split.unitary_check().unwrap().unitary, oracle::satake::unitary_split(&a, &b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hensel_lift_is_the_unique_lift(c in prop::collection::vec(0i64..9, 3), split in 1usize..3) {
        let mut cs = c.clone();
        cs.push(1);
        let p = Poly::<Z9>::from_i64(&cs);
        let pb = p.residue();
        for gb in oracle::hensel::monic_polys::<F3>(split) {
            let (hb, rem) = pb.divrem(&gb);
            if !rem.is_zero() || gb.gcd(&hb).degree() != 0 {
                continue;
            }
            let all = oracle::hensel::lifted_pairs::<Z9>(&p, &gb, &hb);
            let f = hensel_factor(&p, &[gb.clone(), hb.clone()]).unwrap();
            prop_assert_eq!(all, vec![(f[0].clone(), f[1].clone())]);
        }
    }
}

#[test]
fn tame_cohomology_small_cases_by_enumeration() {
    for (q, parts) in [(2, vec![2]), (2, vec![1, 1]), (5, vec![2]), (4, vec![1, 1])] {
        let p = Partition::new(parts).unwrap();
        let r = TameRep::<F3>::minimal(&p, q, 0, -1).unwrap();
        let m = ad_module(&r, AdModule::Full).unwrap();
        let want = oracle::cohomology::brute_cohomology(&m.t, &m.p, q as u64);
        assert_eq!(tame_cohomology(&r, AdModule::Full).unwrap(), want, "q = {q}, {p:?}");
    }
}

#[test]
fn tame_cohomology_over_f7() {
    let p = Partition::new(vec![2]).unwrap();
    let r = TameRep::<F7>::minimal(&p, 3, 1, -1).unwrap();
    let m = ad_module(&r, AdModule::Full).unwrap();
    let want = oracle::cohomology::brute_cohomology(&m.t, &m.p, 3);
    assert_eq!(tame_cohomology(&r, AdModule::Full).unwrap(), want);
}
