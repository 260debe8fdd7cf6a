//! (H⁰, H¹) of ⟨t, φ | φtφ⁻¹ = t^q⟩ by enumerating every cocycle.

use std::collections::HashSet;

use galdef_core::{Field, Matrix};

use crate::{all_vectors, log_size};

#[derive(Clone)]
struct Affine<F> {
    v: Vec<F>,
    g: Matrix<F>,
}

impl<F: Field> Affine<F> {
    fn mul(&self, o: &Self) -> Self {
        let gv = self.g.apply(&o.v);
        Affine {
            v: self.v.iter().zip(gv).map(|(a, b)| a.clone() + b).collect(),
            g: &self.g * &o.g,
        }
    }

    fn inv(&self) -> Self {
        let gi = self.g.inverse().expect("invertible action");
        Affine {
            v: gi.apply(&self.v).into_iter().map(|x| -x).collect(),
            g: gi,
        }
    }
}

/// Cocycles are the pairs (x_t, x_φ) for which the affine images of t and φ
/// satisfy the defining relation in M ⋊ GL(M).
pub fn brute_cohomology<F: Field>(t: &Matrix<F>, p: &Matrix<F>, q: u64) -> (usize, usize) {
    let d = t.rows();
    let vs = all_vectors::<F>(d);
    let mut z = 0usize;
    for xt in &vs {
        let at = Affine { v: xt.clone(), g: t.clone() };
        let mut tq = Affine { v: vec![F::zero(); d], g: Matrix::identity(d) };
        for _ in 0..q {
            tq = tq.mul(&at);
        }
        for xp in &vs {
            let ap = Affine { v: xp.clone(), g: p.clone() };
            if ap.mul(&at).mul(&ap.inv()).v == tq.v {
                z += 1;
            }
        }
    }
    let mut b = HashSet::new();
    let mut h0 = 0usize;
    let id = Matrix::<F>::identity(d);
    for m in &vs {
        let bt = (t - &id).apply(m);
        let bp = (p - &id).apply(m);
        if bt.iter().chain(&bp).all(|x| x.is_zero()) {
            h0 += 1;
        }
        b.insert((bt, bp));
    }
    let (z, b, h0) = (log_size::<F>(z), log_size::<F>(b.len()), log_size::<F>(h0));
    (h0, z - b)
}
