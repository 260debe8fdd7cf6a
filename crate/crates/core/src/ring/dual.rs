use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Ring;

/// R[ε]/(ε²), elements a + bε.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Dual<R> {
    pub a: R,
    pub b: R,
}

impl<R: Ring> Dual<R> {
    pub fn new(a: R, b: R) -> Self {
        Dual { a, b }
    }

    pub fn eps() -> Self {
        Dual::new(R::zero(), R::one())
    }

    pub fn constant(a: R) -> Self {
        Dual::new(a, R::zero())
    }
}

impl<R: fmt::Debug> fmt::Debug for Dual<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}+{:?}e)", self.a, self.b)
    }
}

impl<R: Ring> Add for Dual<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.a + o.a, self.b + o.b)
    }
}

impl<R: Ring> Sub for Dual<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.a - o.a, self.b - o.b)
    }
}

impl<R: Ring> Neg for Dual<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.a, -self.b)
    }
}

impl<R: Ring> Mul for Dual<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let b = self.a.clone() * o.b + self.b * o.a.clone();
        Dual::new(self.a * o.a, b)
    }
}

impl<R: Ring> Zero for Dual<R> {
    fn zero() -> Self {
        Dual::new(R::zero(), R::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<R: Ring> One for Dual<R> {
    fn one() -> Self {
        Dual::new(R::one(), R::zero())
    }
}

impl<R: Ring> Ring for Dual<R> {
    type Residue = R::Residue;
    const CHAR: u64 = R::CHAR;

    fn from_i64(n: i64) -> Self {
        Dual::constant(R::from_i64(n))
    }

    fn residue(&self) -> R::Residue {
        self.a.residue()
    }

    fn lift(r: &R::Residue) -> Self {
        Dual::constant(R::lift(r))
    }

    fn inv(&self) -> Option<Self> {
        let ia = self.a.inv()?;
        let b = -(self.b.clone() * ia.clone() * ia.clone());
        Some(Dual::new(ia, b))
    }

    fn nilpotency() -> u32 {
        R::nilpotency() + 1
    }

    fn size() -> u64 {
        R::size() * R::size()
    }

    fn elements() -> Vec<Self> {
        let base = R::elements();
        let mut out = Vec::with_capacity(base.len() * base.len());
        for a in &base {
            for b in &base {
                out.push(Dual::new(a.clone(), b.clone()));
            }
        }
        out
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!([self.a.to_json(), self.b.to_json()])
    }

    fn describe() -> String {
        format!("{}[e]", R::describe())
    }
}
