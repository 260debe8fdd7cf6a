//! Horner-form exponential and logarithm, and Jordan types from kernel sizes.

use galdef_core::{Field, Matrix, Ring};

use crate::{all_vectors, log_size};

/// I + X(I + X/2(I + X/3(⋯))) truncated at X^{n−1}.
pub fn horner_exp<R: Ring>(x: &Matrix<R>) -> Matrix<R> {
    let n = x.rows();
    let id = Matrix::<R>::identity(n);
    let mut acc = id.clone();
    for k in (1..n).rev() {
        let ik = R::from_i64(k as i64).inv().expect("k < ℓ");
        acc = &id + &(x * &acc).scale(&ik);
    }
    acc
}

/// log(1 + U) = U(1 − U(1/2 − U(1/3 − ⋯))) truncated at U^{n−1}.
pub fn horner_log<R: Ring>(a: &Matrix<R>) -> Matrix<R> {
    let n = a.rows();
    let id = Matrix::<R>::identity(n);
    let u = a - &id;
    let mut acc = Matrix::<R>::zero(n, n);
    for k in (1..n).rev() {
        let ik = R::from_i64(k as i64).inv().expect("k < ℓ");
        acc = &id.scale(&ik) - &(&u * &acc);
    }
    &u * &acc
}

/// Jordan type of a nilpotent matrix: the number of blocks of size ≥ k is
/// dim ker X^k − dim ker X^{k−1}, with kernels counted vector by vector.
pub fn jordan_type_brute<F: Field>(x: &Matrix<F>) -> Vec<usize> {
    let n = x.rows();
    let vs = all_vectors::<F>(n);
    let mut kers = vec![0usize];
    let mut pw = Matrix::<F>::identity(n);
    for _ in 0..n {
        pw = &pw * x;
        let c = vs.iter().filter(|v| pw.apply(v).iter().all(|y| y.is_zero())).count();
        kers.push(log_size::<F>(c));
    }
    let at_least: Vec<usize> = (1..=n).map(|k| kers[k] - kers[k - 1]).collect();
    let mut parts = vec![];
    for k in 1..=n {
        let next = if k < n { at_least[k] } else { 0 };
        for _ in 0..(at_least[k - 1] - next) {
            parts.push(k);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}
