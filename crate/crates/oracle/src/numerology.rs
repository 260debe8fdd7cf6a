//! The generator count and patching dimensions written out term by term.

fn minus_one_pow(k: i64) -> i64 {
    (-1i64).pow(k.unsigned_abs() as u32 % 2)
}

pub fn generators(b: i64, t_ell: &[i64], n: i64, deg_fplus: i64, mu: i64) -> i64 {
    let local: i64 = t_ell.iter().map(|d| d * n * (n - 1) / 2).sum();
    b - local - n * deg_fplus * (1 + minus_one_pow(mu + 1 - n)) / 2
}

pub fn dims(b: i64, size_t: i64, n: i64, deg_fplus: i64, mu: i64) -> (i64, i64) {
    let s = 1 + size_t * n * n + b;
    (s, s - n * deg_fplus * (1 + minus_one_pow(mu + 1 - n)) / 2)
}
