//! Coefficient rings: prime fields, extension fields, truncated integers and
//! dual numbers over any of these.

mod dual;
mod fq;
mod zmod;

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use dual::Dual;
pub use fq::{conway_like_modulus, Fq};
pub use zmod::{Fp, Zmod};

/// A finite local ring whose residue field has characteristic `CHAR`.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Eq
    + Hash
    + Ord
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    type Residue: Field;

    /// The residue characteristic ℓ.
    const CHAR: u64;

    fn from_i64(n: i64) -> Self;

    fn residue(&self) -> Self::Residue;

    /// Coefficientwise section of the residue map (not a ring map in general).
    fn lift(r: &Self::Residue) -> Self;

    fn inv(&self) -> Option<Self>;

    fn is_unit(&self) -> bool {
        !self.residue().is_zero()
    }

    /// Smallest n with 𝔪ⁿ = 0.
    fn nilpotency() -> u32;

    fn size() -> u64;

    /// Every element, in a fixed order.
    fn elements() -> Vec<Self>;

    fn to_json(&self) -> serde_json::Value;

    fn describe() -> String;

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents need a unit.
    fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inv().map(|u| u.pow(e.unsigned_abs()))
        }
    }

    fn random<G: rand::Rng + ?Sized>(rng: &mut G) -> Self {
        let all = Self::elements();
        all[rng.random_range(0..all.len())].clone()
    }

    fn random_unit<G: rand::Rng + ?Sized>(rng: &mut G) -> Self {
        loop {
            let x = Self::random(rng);
            if x.is_unit() {
                return x;
            }
        }
    }
}

/// A finite field; its own residue field.
pub trait Field: Ring<Residue = Self> {
    /// Lexicographically smallest square root, if any.
    fn sqrt(&self) -> Option<Self> {
        Self::elements()
            .into_iter()
            .find(|r| r.clone() * r.clone() == *self)
    }
}

/// Ring maps used when lifting objects one infinitesimal step.
pub trait ReduceTo<S: Ring>: Ring {
    fn reduce(&self) -> S;
    /// A set-theoretic section of [`ReduceTo::reduce`].
    fn section(s: &S) -> Self;
}

impl<R: Ring> ReduceTo<R> for R {
    fn reduce(&self) -> R {
        self.clone()
    }
    fn section(s: &R) -> R {
        s.clone()
    }
}

impl<F: Field> ReduceTo<F> for Dual<F> {
    fn reduce(&self) -> F {
        self.a.clone()
    }
    fn section(s: &F) -> Self {
        Dual::new(s.clone(), F::zero())
    }
}

impl<const L: u64> ReduceTo<Zmod<L, 1>> for Zmod<L, 2> {
    fn reduce(&self) -> Zmod<L, 1> {
        self.residue()
    }
    fn section(s: &Zmod<L, 1>) -> Self {
        Self::lift(s)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Tests ring axioms on the given triples; returns the first failing law.
pub fn check_ring_axioms<R: Ring>(a: &R, b: &R, c: &R) -> Result<(), &'static str> {
    let (a, b, c) = (a.clone(), b.clone(), c.clone());
    if (a.clone() + b.clone()) + c.clone() != a.clone() + (b.clone() + c.clone()) {
        return Err("additive associativity");
    }
    if a.clone() + b.clone() != b.clone() + a.clone() {
        return Err("additive commutativity");
    }
    if (a.clone() * b.clone()) * c.clone() != a.clone() * (b.clone() * c.clone()) {
        return Err("multiplicative associativity");
    }
    if a.clone() * b.clone() != b.clone() * a.clone() {
        return Err("multiplicative commutativity");
    }
    if a.clone() * (b.clone() + c.clone()) != a.clone() * b.clone() + a.clone() * c.clone() {
        return Err("distributivity");
    }
    if a.clone() + R::zero() != a || a.clone() * R::one() != a {
        return Err("identities");
    }
    if a.clone() + (-a.clone()) != R::zero() {
        return Err("additive inverse");
    }
    Ok(())
}

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
pub type F11 = Fp<11>;
pub type F13 = Fp<13>;
pub type F4 = Fq<2, 2>;
pub type F9 = Fq<3, 2>;
pub type F25 = Fq<5, 2>;
pub type F49 = Fq<7, 2>;
pub type F121 = Fq<11, 2>;
pub type F169 = Fq<13, 2>;
pub type Z9 = Zmod<3, 2>;
pub type Z25 = Zmod<5, 2>;
pub type Z49 = Zmod<7, 2>;
pub type Z27 = Zmod<3, 3>;
pub type D3 = Dual<F3>;
pub type D5 = Dual<F5>;
pub type D7 = Dual<F7>;
pub type D11 = Dual<F11>;
pub type D13 = Dual<F13>;

#[cfg(test)]
mod tests {
    use super::*;

    fn exhaustive_axioms<R: Ring>() {
        let els = R::elements();
        assert_eq!(els.len() as u64, R::size());
        for a in &els {
            for b in &els {
                for c in els.iter().step_by(1 + els.len() / 7) {
                    check_ring_axioms(a, b, c).unwrap();
                }
            }
        }
    }

    fn local_properties<R: Ring>() {
        let els = R::elements();
        let nonunits: Vec<_> = els.iter().filter(|x| !x.is_unit()).cloned().collect();
        for a in &nonunits {
            for b in &nonunits {
                assert!(!(a.clone() + b.clone()).is_unit());
            }
        }
        for a in &els {
            assert_eq!(a.is_unit(), a.inv().is_some());
            if let Some(i) = a.inv() {
                assert_eq!(i * a.clone(), R::one());
            }
            for b in els.iter().step_by(3) {
                assert_eq!(
                    (a.clone() * b.clone()).residue(),
                    a.residue() * b.residue()
                );
                assert_eq!(
                    (a.clone() + b.clone()).residue(),
                    a.residue() + b.residue()
                );
            }
        }
        for r in R::Residue::elements() {
            assert_eq!(R::lift(&r).residue(), r);
        }
        let n = R::nilpotency();
        for a in &nonunits {
            assert!(a.pow(n as u64).is_zero());
        }
    }

    #[test]
    fn axioms_small_rings() {
        exhaustive_axioms::<F2>();
        exhaustive_axioms::<F5>();
        exhaustive_axioms::<Z9>();
        exhaustive_axioms::<F4>();
        exhaustive_axioms::<F9>();
        exhaustive_axioms::<D3>();
        exhaustive_axioms::<Dual<Z9>>();
    }

    #[test]
    fn local_ring_properties() {
        local_properties::<F7>();
        local_properties::<Z25>();
        local_properties::<Z27>();
        local_properties::<F25>();
        local_properties::<D5>();
        local_properties::<Dual<Z9>>();
        local_properties::<Dual<F9>>();
    }

    #[test]
    fn nilpotency_indices() {
        assert_eq!(F5::nilpotency(), 1);
        assert_eq!(Z25::nilpotency(), 2);
        assert_eq!(D5::nilpotency(), 2);
        assert_eq!(Dual::<Z9>::nilpotency(), 3);
        let m = Dual::<Z9>::new(Z9::from_i64(3), Z9::one());
        assert!(!m.pow(2).is_zero());
        assert!(m.pow(3).is_zero());
    }

    #[test]
    fn field_sqrt() {
        assert_eq!(F7::from_i64(2).sqrt(), Some(F7::from_i64(3)));
        assert_eq!(F7::from_i64(3).sqrt(), None);
        let three = F49::from_i64(3);
        let r = three.sqrt().unwrap();
        assert_eq!(r.clone() * r, three);
    }
}
