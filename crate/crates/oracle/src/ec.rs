//! A straight-line re-derivation of the screener numbers: naive point counts,
//! trial-division factoring and the ratio norm expanded in ℤ[x]/(x² − ax + q).

use std::collections::{BTreeMap, BTreeSet};

/// (c₄, c₆, Δ) from the b-invariants, in i128.
pub fn invariants(a: [i64; 5]) -> (i128, i128, i128) {
    let [a1, a2, a3, a4, a6] = a.map(|x| x as i128);
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let c4 = b2 * b2 - 24 * b4;
    let c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    let d = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    (c4, c6, d)
}

/// Affine solutions of the long Weierstrass equation mod q, plus infinity.
pub fn naive_points(a: [i64; 5], q: u64) -> u64 {
    let q = q as i128;
    let [a1, a2, a3, a4, a6] = a.map(|x| (x as i128).rem_euclid(q));
    let mut n = 1;
    for x in 0..q {
        for y in 0..q {
            let l = y * y + a1 * x * y + a3 * y;
            let r = x * x * x + a2 * x * x + a4 * x + a6;
            if (l - r).rem_euclid(q) == 0 {
                n += 1;
            }
        }
    }
    n
}

pub fn naive_trace(a: [i64; 5], q: u64) -> i64 {
    q as i64 + 1 - naive_points(a, q) as i64
}

/// (α^m − qβ^m)(β^m − qα^m) with α = x, β = a − x in ℤ[x]/(x² − ax + q).
pub fn e_m_direct(a: i64, q: i64, m: u32) -> i128 {
    let (a, q) = (a as i128, q as i128);
    let mul = |u: (i128, i128), v: (i128, i128)| {
        let t = u.1 * v.1;
        (u.0 * v.0 - q * t, u.0 * v.1 + u.1 * v.0 + a * t)
    };
    let pw = |u: (i128, i128)| (0..m).fold((1, 0), |acc, _| mul(acc, u));
    let am = pw((0, 1));
    let bm = pw((a, -1));
    let l = (am.0 - q * bm.0, am.1 - q * bm.1);
    let r = (bm.0 - q * am.0, bm.1 - q * am.1);
    let (c, x) = mul(l, r);
    assert_eq!(x, 0, "the norm is rational");
    c
}

pub fn trial_primes(mut n: u128) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut p = 2u128;
    while p * p <= n {
        while n % p == 0 {
            out.insert(p as u64);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.insert(n as u64);
    }
    out
}

fn primes_upto(n: u64) -> BTreeSet<u64> {
    (2..=n).filter(|&p| trial_primes(p as u128) == BTreeSet::from([p])).collect()
}

fn is_square_mod(x: i64, q: i64) -> bool {
    (0..q).any(|y| (y * y - x).rem_euclid(q) == 0)
}

fn val(mut x: i128, q: i128) -> u32 {
    let mut v = 0;
    while x != 0 && x % q == 0 {
        x /= q;
        v += 1;
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptPlace {
    pub qw: u64,
    pub a_q: Option<i64>,
    pub primes: BTreeSet<u64>,
}

/// Exclusion sets for places of good or multiplicative reduction only.
pub fn screen_script(
    a: [i64; 5],
    cm_disc: i64,
    sigma: &[u64],
    n: u32,
) -> (BTreeMap<u64, ScriptPlace>, BTreeSet<u64>) {
    let (c4, _, d) = invariants(a);
    let mut places = BTreeMap::new();
    let mut total = BTreeSet::new();
    let mut max_e = 1;
    for &q in sigma {
        let qi = q as i64;
        let split_in_f = if cm_disc % qi == 0 {
            true
        } else if q == 2 {
            cm_disc.rem_euclid(8) == 1
        } else {
            is_square_mod(cm_disc, qi)
        };
        let qw = if split_in_f { q } else { q * q };
        let mut s: BTreeSet<u64> = BTreeSet::new();
        for i in 1..=n {
            s.extend(trial_primes((qw as u128).pow(i) - 1));
        }
        let mut aq = None;
        if d % q as i128 != 0 {
            let t = naive_trace(a, q);
            aq = Some(t);
            let tw = if qw == q { t } else { t * t - 2 * qi };
            let mut m = n as i64 - 1;
            while m > 0 {
                s.extend(trial_primes(e_m_direct(tw, qw as i64, m as u32).unsigned_abs()));
                m -= 2;
            }
        } else if c4 % q as i128 != 0 {
            let u = -(val(d, q as i128) as i64);
            let split_mult = naive_points(a, q) == q;
            let e = if !split_mult && qw == q { 2 } else { 1 };
            max_e = max_e.max(e);
            s.extend(trial_primes((u.unsigned_abs() * e) as u128));
            s.extend(primes_upto(e));
        } else {
            panic!("the script covers good and multiplicative places only");
        }
        total.extend(s.iter().copied());
        places.insert(q, ScriptPlace { qw, a_q: aq, primes: s });
    }
    total.extend(primes_upto(n as u64));
    total.extend(trial_primes(cm_disc.unsigned_abs() as u128));
    total.extend(sigma.iter().copied());
    total.extend(primes_upto(max_e));
    (places, total)
}
