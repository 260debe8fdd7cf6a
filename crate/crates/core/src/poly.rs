//! Dense univariate polynomials, coefficients low degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use crate::matrix::Matrix;
use crate::ring::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    c: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| R::from_i64(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { c: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(a: R) -> Self {
        Self::new(vec![a])
    }

    pub fn x() -> Self {
        Self::new(vec![R::zero(), R::one()])
    }

    /// x − a
    pub fn linear(a: R) -> Self {
        Self::new(vec![-a, R::one()])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; −1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lead(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.c.iter().map(f).collect())
    }

    pub fn residue(&self) -> Poly<R::Residue> {
        self.map(|x| x.residue())
    }

    pub fn lift(p: &Poly<R::Residue>) -> Self {
        p.map(|x| R::lift(x))
    }

    pub fn scale(&self, a: &R) -> Self {
        Self::new(self.c.iter().map(|x| x.clone() * a.clone()).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }

    pub fn eval(&self, x: &R) -> R {
        self.c
            .iter()
            .rev()
            .fold(R::zero(), |acc, a| acc * x.clone() + a.clone())
    }

    pub fn eval_matrix(&self, m: &Matrix<R>) -> Matrix<R> {
        let n = m.rows();
        let mut acc = Matrix::zero(n, n);
        for a in self.c.iter().rev() {
            acc = &acc * m + Matrix::scalar(n, a.clone());
        }
        acc
    }

    /// Division by a monic divisor.
    pub fn divrem_monic(&self, d: &Poly<R>) -> (Poly<R>, Poly<R>) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let mut q = vec![R::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let lead = r[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (i, di) in d.c.iter().enumerate() {
                r[k + i] = r[k + i].clone() - lead.clone() * di.clone();
            }
            q[k] = lead;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem_monic(&self, d: &Poly<R>) -> Poly<R> {
        self.divrem_monic(d).1
    }

    pub fn product(ps: &[Poly<R>]) -> Poly<R> {
        ps.iter().fold(Poly::one(), |a, b| a * b.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(self.c.iter().map(|x| x.to_json()).collect::<Vec<_>>())
    }
}

impl<F: Field> Poly<F> {
    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Some(i) => self.scale(&i),
            None => self.clone(),
        }
    }

    pub fn divrem(&self, d: &Poly<F>) -> (Poly<F>, Poly<F>) {
        let inv = d.lead().inv().expect("division by zero polynomial");
        let (q, r) = self.divrem_monic(&d.scale(&inv));
        (q.scale(&inv), r)
    }

    pub fn gcd(&self, o: &Poly<F>) -> Poly<F> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s·self + t·o = g = gcd, g monic.
    pub fn xgcd(&self, o: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0 - q.clone() * s1.clone();
            let t2 = t0 - q * t1.clone();
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        match r0.lead().inv() {
            Some(i) => (r0.scale(&i), s0.scale(&i), t0.scale(&i)),
            None => (r0, s0, t0),
        }
    }

    /// Roots with multiplicity, by exhaustive evaluation.
    pub fn roots(&self) -> Vec<F> {
        let mut out = vec![];
        let mut p = self.clone();
        for a in F::elements() {
            while p.degree() > 0 && p.eval(&a).is_zero() {
                p = p.divrem_monic(&Poly::linear(a.clone())).0;
                out.push(a.clone());
            }
        }
        out
    }
}

impl<R: fmt::Debug> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly::new(self.c.into_iter().map(|x| -x).collect())
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![R::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{F7, Z25};

    #[test]
    fn division() {
        let p = Poly::<Z25>::from_i64(&[-6, 0, 1]);
        let (q, r) = p.divrem_monic(&Poly::linear(Z25::from_i64(9)));
        assert!(r.is_zero());
        assert_eq!(q, Poly::linear(Z25::from_i64(-9)));
    }

    #[test]
    fn xgcd_bezout() {
        let a = Poly::<F7>::from_i64(&[1, 2, 0, 1]);
        let b = Poly::<F7>::from_i64(&[3, 1, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s * a.clone() + t * b.clone(), g);
        assert_eq!(g, a.gcd(&b));
    }

    #[test]
    fn roots_with_multiplicity() {
        let p = Poly::<F7>::linear(F7::from_i64(2)).pow(2) * Poly::linear(F7::from_i64(5));
        assert_eq!(p.roots(), vec![F7::from_i64(2), F7::from_i64(2), F7::from_i64(5)]);
    }
}
