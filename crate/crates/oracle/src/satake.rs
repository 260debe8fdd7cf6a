//! Multiset form of unitarity and all valid orderings by permutation search.

use std::collections::{BTreeMap, BTreeSet};

use galdef_core::Field;

fn counts<F: Field>(v: &[F]) -> BTreeMap<F, usize> {
    let mut m = BTreeMap::new();
    for x in v {
        *m.entry(x.clone()).or_insert(0) += 1;
    }
    m
}

fn inverted<F: Field>(v: &[F]) -> Vec<F> {
    v.iter().map(|x| x.inv().expect("unit")).collect()
}

/// Closed under inversion (with multiplicity) and of product one.
pub fn unitary_inert<F: Field>(a: &[F]) -> bool {
    let prod = a.iter().fold(F::one(), |p, x| p * x.clone());
    counts(a) == counts(&inverted(a)) && prod.is_one()
}

/// α₁ is the inverse multiset of α₂.
pub fn unitary_split<F: Field>(a1: &[F], a2: &[F]) -> bool {
    counts(a1) == counts(&inverted(a2))
}

fn perms<F: Field>(v: &[F]) -> BTreeSet<Vec<F>> {
    if v.is_empty() {
        return BTreeSet::from([vec![]]);
    }
    let mut out = BTreeSet::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in perms(&rest) {
            p.insert(0, x.clone());
            out.insert(p);
        }
    }
    out
}

pub fn valid_orderings_inert<F: Field>(a: &[F]) -> Vec<Vec<F>> {
    let n = a.len();
    perms(a)
        .into_iter()
        .filter(|p| (0..n).all(|i| (p[i].clone() * p[n - 1 - i].clone()).is_one()))
        .collect()
}

pub fn valid_orderings_split<F: Field>(a1: &[F], a2: &[F]) -> Vec<(Vec<F>, Vec<F>)> {
    let n = a1.len();
    let p2 = perms(a2);
    let mut out = vec![];
    for p in perms(a1) {
        for q in &p2 {
            if (0..n).all(|i| (p[i].clone() * q[n - 1 - i].clone()).is_one()) {
                out.push((p.clone(), q.clone()));
            }
        }
    }
    out
}
