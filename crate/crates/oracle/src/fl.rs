//! Hom and Ext¹ between Fontaine–Laffaille objects by enumerating every
//! filtration-compatible map.

use std::collections::BTreeSet;

use galdef_core::fl::FLModule;
use galdef_core::{Field, Matrix};

use crate::log_size;

/// (dim Hom, dim Ext¹): Hom is the kernel of f ↦ f∘Φ₁ − Φ₂∘gr f on Fil⁰Hom,
/// Ext¹ the quotient of graded maps by the image of that map.
pub fn brute_hom_ext<F: Field>(m1: &FLModule<F>, m2: &FLModule<F>) -> (usize, usize) {
    let f = m1.weights.len();
    let (n1, n2) = (m1.weights[0].len(), m2.weights[0].len());
    let mut pos = vec![];
    for t in 0..f {
        for a in 0..n2 {
            for j in 0..n1 {
                if m2.weights[t][a] >= m1.weights[t][j] {
                    pos.push((t, a, j));
                }
            }
        }
    }
    let els = F::elements();
    let k = els.len();
    let total = k.pow(pos.len() as u32);
    let mut kernel = 0usize;
    let mut image = BTreeSet::new();
    for mut code in 0..total {
        let mut fs = vec![Matrix::<F>::zero(n2, n1); f];
        let mut gr = vec![Matrix::<F>::zero(n2, n1); f];
        for &(t, a, j) in &pos {
            let x = els[code % k].clone();
            code /= k;
            if m2.weights[t][a] == m1.weights[t][j] {
                gr[t][(a, j)] = x.clone();
            }
            fs[t][(a, j)] = x;
        }
        let mut val = vec![];
        for t in 0..f {
            let prev = (t + f - 1) % f;
            let d = &(&fs[prev] * &m1.phi[t]) - &(&m2.phi[t] * &gr[t]);
            val.extend(d.to_vec());
        }
        if val.iter().all(|x| x.is_zero()) {
            kernel += 1;
        }
        image.insert(val);
    }
    (log_size::<F>(kernel), f * n1 * n2 - log_size::<F>(image.len()))
}
