//! Taylor–Wiles generator counts and patching dimensions.

use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatchingInput {
    /// number of Taylor–Wiles primes
    pub b: i64,
    /// [F⁺_v : ℚ_ℓ] for the ℓ-adic places in T
    pub t_ell_degrees: Vec<i64>,
    pub size_t: i64,
    pub n: i64,
    pub deg_fplus: i64,
    pub mu_parity: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PatchingDimensions {
    pub dim_s: i64,
    pub dim_r: i64,
    pub parity_ok: bool,
}

fn overflow() -> Error {
    Error::Precondition("integer overflow".into())
}

trait Checked: Sized {
    fn add_(self, o: Self) -> Result<Self>;
    fn sub_(self, o: Self) -> Result<Self>;
    fn mul_(self, o: Self) -> Result<Self>;
}

impl Checked for i64 {
    fn add_(self, o: i64) -> Result<i64> {
        self.checked_add(o).ok_or_else(overflow)
    }
    fn sub_(self, o: i64) -> Result<i64> {
        self.checked_sub(o).ok_or_else(overflow)
    }
    fn mul_(self, o: i64) -> Result<i64> {
        self.checked_mul(o).ok_or_else(overflow)
    }
}

impl PatchingInput {
    pub fn validate(&self) -> Result<()> {
        if self.b < 0 || self.size_t < 0 || self.n < 0 || self.deg_fplus < 0 {
            return pre("patching inputs are nonnegative");
        }
        if self.t_ell_degrees.iter().any(|&d| d < 0) {
            return pre("local degrees are nonnegative");
        }
        if (self.t_ell_degrees.len() as i64) > self.size_t {
            return pre("|T| is at least the number of ℓ-adic places in T");
        }
        Ok(())
    }

    pub fn parity_matches(&self) -> bool {
        (self.mu_parity as i64 - self.n).rem_euclid(2) == 0
    }

    /// N·[F⁺:ℚ]·(1 + (−1)^{μ+1−N})/2: zero when μ ≡ N, else N·[F⁺:ℚ].
    pub fn parity_deficit(&self) -> Result<i64> {
        if self.parity_matches() {
            Ok(0)
        } else {
            self.n.mul_(self.deg_fplus)
        }
    }
}

pub fn taylor_wiles_generators(input: &PatchingInput) -> Result<i64> {
    input.validate()?;
    let half = input.n.mul_(input.n.sub_(1)?)? / 2;
    let mut g = input.b;
    for &d in &input.t_ell_degrees {
        g = g.sub_(d.mul_(half)?)?;
    }
    g.sub_(input.parity_deficit()?)
}

pub fn patching_dimensions(input: &PatchingInput) -> Result<PatchingDimensions> {
    input.validate()?;
    let dim_s = 1i64.add_(input.size_t.mul_(input.n.mul_(input.n)?)?)?.add_(input.b)?;
    let dim_r = dim_s.sub_(input.parity_deficit()?)?;
    Ok(PatchingDimensions {
        dim_s,
        dim_r,
        parity_ok: dim_r >= dim_s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inp(b: i64, t: Vec<i64>, size_t: i64, n: i64, deg: i64, mu: u8) -> PatchingInput {
        PatchingInput {
            b,
            t_ell_degrees: t,
            size_t,
            n,
            deg_fplus: deg,
            mu_parity: mu,
        }
    }

    #[test]
    fn generators() {
        assert_eq!(taylor_wiles_generators(&inp(0, vec![], 0, 2, 1, 0)).unwrap(), 0);
        assert_eq!(taylor_wiles_generators(&inp(5, vec![1], 1, 2, 1, 0)).unwrap(), 4);
        assert_eq!(taylor_wiles_generators(&inp(5, vec![], 0, 2, 1, 1)).unwrap(), 3);
    }

    #[test]
    fn dimensions() {
        let d = patching_dimensions(&inp(3, vec![1], 2, 2, 1, 0)).unwrap();
        assert_eq!((d.dim_s, d.dim_r, d.parity_ok), (12, 12, true));
        let d = patching_dimensions(&inp(0, vec![], 0, 1, 1, 0)).unwrap();
        assert_eq!((d.dim_s, d.dim_r, d.parity_ok), (1, 0, false));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(taylor_wiles_generators(&inp(1, vec![1, 1], 1, 2, 1, 0)).is_err());
        assert!(patching_dimensions(&inp(-1, vec![], 0, 2, 1, 0)).is_err());
        assert!(patching_dimensions(&inp(i64::MAX, vec![], 1, 2, 1, 0)).is_err());
    }
}
