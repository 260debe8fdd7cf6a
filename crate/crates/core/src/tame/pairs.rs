use crate::error::{pre, Result};
use crate::matrix::Matrix;
use crate::ring::Field;

#[derive(Clone, Debug)]
pub struct PairCount<F> {
    pub count: u64,
    pub sample: Vec<(Matrix<F>, Matrix<F>)>,
}

/// Largest |M_n(𝔽)|² we are willing to scan.
pub const PAIR_SEARCH_LIMIT: u64 = 10_000_000;

fn all_matrices<F: Field>(n: usize) -> Vec<Matrix<F>> {
    let els = F::elements();
    let k = els.len();
    let total = k.pow((n * n) as u32);
    (0..total)
        .map(|mut code| {
            Matrix::from_fn(n, n, |_, _| {
                let x = els[code % k].clone();
                code /= k;
                x
            })
        })
        .collect()
}

/// Pairs (A, B) ∈ GL_n(𝔽)² with B·A·B⁻¹ = A^q, optionally with det B fixed.
pub fn enumerate_tame_pairs<F: Field>(
    n: usize,
    q: i64,
    det_b: Option<F>,
    sample_size: usize,
) -> Result<PairCount<F>> {
    let space = F::size()
        .checked_pow(2 * (n * n) as u32)
        .filter(|&s| s <= PAIR_SEARCH_LIMIT);
    if space.is_none() {
        return pre(format!(
            "search space |M_{n}({})|² exceeds {PAIR_SEARCH_LIMIT}",
            F::describe()
        ));
    }
    let gl: Vec<(Matrix<F>, F)> = all_matrices::<F>(n)
        .into_iter()
        .map(|m| {
            let d = m.det();
            (m, d)
        })
        .filter(|(_, d)| !d.is_zero())
        .collect();
    let bs: Vec<&Matrix<F>> = gl
        .iter()
        .filter(|(_, d)| det_b.as_ref().is_none_or(|t| t == d))
        .map(|(m, _)| m)
        .collect();
    let mut count = 0;
    let mut sample = vec![];
    for (a, _) in &gl {
        let aq = a.pow(q as u64);
        for b in &bs {
            if &(*b * a) == &(&aq * *b) {
                count += 1;
                if sample.len() < sample_size {
                    sample.push((a.clone(), (*b).clone()));
                }
            }
        }
    }
    Ok(PairCount { count, sample })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{F11, F5, F7};

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    #[test]
    fn rank_one_closed_form() {
        for q in [2i64, 3, 4, 5, 8, 9] {
            let c = enumerate_tame_pairs::<F7>(1, q, None, 0).unwrap().count;
            assert_eq!(c, gcd(q as u64 - 1, 6) * 6);
        }
        // q ≡ 1 mod ℓ − 1: every a works
        assert_eq!(enumerate_tame_pairs::<F5>(1, 9, None, 0).unwrap().count, 16);
    }

    #[test]
    fn too_large_rejected() {
        assert!(enumerate_tame_pairs::<F11>(2, 2, None, 0).is_err());
    }
}
