//! Slow, direct reference computations. Nothing here shares an algorithm with
//! `galdef-core`; only the scalar and matrix arithmetic types are reused.

pub mod cohomology;
pub mod ec;
pub mod fl;
pub mod hensel;
pub mod nilpotent;
pub mod numerology;
pub mod satake;

use galdef_core::Ring;

/// All vectors of length d over R, in a fixed order.
pub fn all_vectors<R: Ring>(d: usize) -> Vec<Vec<R>> {
    let els = R::elements();
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                els.iter().map(move |x| {
                    let mut w = v.clone();
                    w.push(x.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// k with |R|^k = count; panics when count is not a power of |R|.
pub fn log_size<R: Ring>(count: usize) -> usize {
    let s = R::size() as usize;
    let (mut k, mut c) = (0, count);
    while c > 1 {
        assert_eq!(c % s, 0, "{count} is not a power of {s}");
        c /= s;
        k += 1;
    }
    k
}
