use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Field, Ring};

/// ℤ/Lᴱ for a prime L.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Zmod<const L: u64, const E: u32>(u64);

/// The prime field 𝔽_P.
pub type Fp<const P: u64> = Zmod<P, 1>;

impl<const L: u64, const E: u32> Zmod<L, E> {
    pub const MODULUS: u64 = L.pow(E);

    pub fn new(v: u64) -> Self {
        Zmod(v % Self::MODULUS)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    /// Symmetric representative in (−M/2, M/2].
    pub fn signed(&self) -> i64 {
        let m = Self::MODULUS;
        if self.0 > m / 2 {
            self.0 as i64 - m as i64
        } else {
            self.0 as i64
        }
    }
}

impl<const L: u64, const E: u32> fmt::Debug for Zmod<L, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const L: u64, const E: u32> fmt::Display for Zmod<L, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const L: u64, const E: u32> Add for Zmod<L, E> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Zmod(if s >= Self::MODULUS { s - Self::MODULUS } else { s })
    }
}

impl<const L: u64, const E: u32> Sub for Zmod<L, E> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Zmod(if self.0 >= o.0 {
            self.0 - o.0
        } else {
            self.0 + Self::MODULUS - o.0
        })
    }
}

impl<const L: u64, const E: u32> Neg for Zmod<L, E> {
    type Output = Self;
    fn neg(self) -> Self {
        Zmod(if self.0 == 0 { 0 } else { Self::MODULUS - self.0 })
    }
}

impl<const L: u64, const E: u32> Mul for Zmod<L, E> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Zmod(((self.0 as u128 * o.0 as u128) % Self::MODULUS as u128) as u64)
    }
}

impl<const L: u64, const E: u32> Zero for Zmod<L, E> {
    fn zero() -> Self {
        Zmod(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const L: u64, const E: u32> One for Zmod<L, E> {
    fn one() -> Self {
        Zmod(1 % Self::MODULUS)
    }
}

fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

impl<const L: u64, const E: u32> Ring for Zmod<L, E> {
    type Residue = Zmod<L, 1>;
    const CHAR: u64 = L;

    fn from_i64(n: i64) -> Self {
        Zmod((n as i128).rem_euclid(Self::MODULUS as i128) as u64)
    }

    fn residue(&self) -> Zmod<L, 1> {
        Zmod(self.0 % L)
    }

    fn lift(r: &Zmod<L, 1>) -> Self {
        Zmod(r.0)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 % L == 0 {
            return None;
        }
        inverse_mod(self.0, Self::MODULUS).map(Zmod)
    }

    fn nilpotency() -> u32 {
        E
    }

    fn size() -> u64 {
        Self::MODULUS
    }

    fn elements() -> Vec<Self> {
        (0..Self::MODULUS).map(Zmod).collect()
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(self.0)
    }

    fn describe() -> String {
        if E == 1 {
            format!("F_{L}")
        } else {
            format!("Z/{L}^{E}")
        }
    }
}

impl<const P: u64> Field for Zmod<P, 1> {
    fn sqrt(&self) -> Option<Self> {
        (0..P).map(Zmod).find(|r| *r * *r == *self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        type Z = Zmod<5, 2>;
        assert_eq!(Z::MODULUS, 25);
        assert_eq!(Z::from_i64(-1).value(), 24);
        assert_eq!(Z::new(9) * Z::new(9), Z::new(6));
        assert_eq!(Z::new(7).inv().unwrap() * Z::new(7), Z::one());
        assert!(Z::new(10).inv().is_none());
        assert_eq!(Z::new(24).signed(), -1);
    }
}
