use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use super::{Field, Ring, Zmod};

/// 𝔽_{Pᴰ} as 𝔽_P[x]/(m(x)), m the lowest irreducible monic of degree D.
///
/// Coefficients are stored low degree first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq<const P: u64, const D: usize> {
    c: [u64; D],
}

static MODULI: OnceLock<RwLock<HashMap<(u64, usize), Vec<u64>>>> = OnceLock::new();

fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let d = m.len() - 1;
    while a.len() > d {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let off = a.len() - d;
            for (i, mi) in m[..d].iter().enumerate() {
                a[off + i] = (a[off + i] + p - lead * mi % p) % p;
            }
        }
    }
    a
}

fn has_factor_of_degree(f: &[u64], k: usize, p: u64) -> bool {
    let total = p.pow(k as u32);
    (0..total).any(|code| {
        let mut g: Vec<u64> = (0..k).map(|i| code / p.pow(i as u32) % p).collect();
        g.push(1);
        poly_rem(f.to_vec(), &g, p).iter().all(|&c| c == 0)
    })
}

/// Lowest monic irreducible of degree `d` over 𝔽_p, ordering by the base-p
/// integer Σ cᵢpⁱ of the non-leading coefficients. Low degree first.
pub fn conway_like_modulus(p: u64, d: usize) -> Vec<u64> {
    let cache = MODULI.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(m) = cache.read().unwrap().get(&(p, d)) {
        return m.clone();
    }
    let total = p.pow(d as u32);
    let m = (0..total)
        .map(|code| {
            let mut f: Vec<u64> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
            f.push(1);
            f
        })
        .find(|f| (1..=d / 2).all(|k| !has_factor_of_degree(f, k, p)))
        .expect("irreducible polynomials exist in every degree");
    cache.write().unwrap().insert((p, d), m.clone());
    m
}

impl<const P: u64, const D: usize> Fq<P, D> {
    pub fn from_coeffs(c: [u64; D]) -> Self {
        Fq { c: c.map(|x| x % P) }
    }

    pub fn coeffs(&self) -> [u64; D] {
        self.c
    }

    pub fn embed(x: Zmod<P, 1>) -> Self {
        let mut c = [0; D];
        c[0] = x.value();
        Fq { c }
    }
}

impl<const P: u64, const D: usize> fmt::Debug for Fq<P, D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c)
    }
}

impl<const P: u64, const D: usize> Add for Fq<P, D> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(o.c) {
            *x = (*x + y) % P;
        }
        Fq { c }
    }
}

impl<const P: u64, const D: usize> Sub for Fq<P, D> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(o.c) {
            *x = (*x + P - y) % P;
        }
        Fq { c }
    }
}

impl<const P: u64, const D: usize> Neg for Fq<P, D> {
    type Output = Self;
    fn neg(self) -> Self {
        Fq {
            c: self.c.map(|x| (P - x) % P),
        }
    }
}

impl<const P: u64, const D: usize> Mul for Fq<P, D> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut prod = vec![0u64; 2 * D - 1];
        for i in 0..D {
            if self.c[i] == 0 {
                continue;
            }
            for j in 0..D {
                prod[i + j] = (prod[i + j] + self.c[i] * o.c[j]) % P;
            }
        }
        let m = conway_like_modulus(P, D);
        let r = poly_rem(prod, &m, P);
        let mut c = [0; D];
        c[..r.len()].copy_from_slice(&r);
        Fq { c }
    }
}

impl<const P: u64, const D: usize> Zero for Fq<P, D> {
    fn zero() -> Self {
        Fq { c: [0; D] }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

impl<const P: u64, const D: usize> One for Fq<P, D> {
    fn one() -> Self {
        let mut c = [0; D];
        c[0] = 1 % P;
        Fq { c }
    }
}

impl<const P: u64, const D: usize> Ring for Fq<P, D> {
    type Residue = Self;
    const CHAR: u64 = P;

    fn from_i64(n: i64) -> Self {
        Self::embed(Zmod::<P, 1>::from_i64(n))
    }

    fn residue(&self) -> Self {
        *self
    }

    fn lift(r: &Self) -> Self {
        *r
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(P.pow(D as u32) - 2))
        }
    }

    fn nilpotency() -> u32 {
        1
    }

    fn size() -> u64 {
        P.pow(D as u32)
    }

    fn elements() -> Vec<Self> {
        (0..Self::size())
            .map(|code| {
                let mut c = [0; D];
                for (i, x) in c.iter_mut().enumerate() {
                    *x = code / P.pow(i as u32) % P;
                }
                Fq { c }
            })
            .collect()
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(self.c.to_vec())
    }

    fn describe() -> String {
        format!("F_{P}^{D}")
    }
}

impl<const P: u64, const D: usize> Field for Fq<P, D> {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_are_lowest() {
        assert_eq!(conway_like_modulus(2, 2), vec![1, 1, 1]);
        assert_eq!(conway_like_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(conway_like_modulus(5, 2), vec![2, 0, 1]);
        assert_eq!(conway_like_modulus(2, 3), vec![1, 1, 0, 1]);
    }

    #[test]
    fn multiplicative_group_cyclic_order() {
        type K = Fq<3, 2>;
        for x in K::elements().into_iter().filter(|x| !x.is_zero()) {
            assert_eq!(x.pow(8), K::one());
            assert_eq!(x.inv().unwrap() * x, K::one());
        }
    }
}
