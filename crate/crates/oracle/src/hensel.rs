//! Every monic factorization P = g·h over R lifting a given residual pair.

use galdef_core::{Poly, Ring};

fn fibre<R: Ring>(x: &R::Residue) -> Vec<R> {
    R::elements().into_iter().filter(|y| y.residue() == *x).collect()
}

/// All monic lifts of a monic residual polynomial.
pub fn monic_lifts<R: Ring>(p: &Poly<R::Residue>) -> Vec<Poly<R>> {
    let d = p.degree() as usize;
    let mut out: Vec<Vec<R>> = vec![vec![]];
    for i in 0..d {
        let f = fibre::<R>(&p.coeff(i));
        out = out
            .into_iter()
            .flat_map(|c| {
                f.iter().map(move |x| {
                    let mut c = c.clone();
                    c.push(x.clone());
                    c
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|mut c| {
            c.push(R::one());
            Poly::new(c)
        })
        .collect()
}

/// Pairs (g, h) of monic lifts of (ḡ, h̄) with g·h = P.
pub fn lifted_pairs<R: Ring>(p: &Poly<R>, g: &Poly<R::Residue>, h: &Poly<R::Residue>) -> Vec<(Poly<R>, Poly<R>)> {
    let hs = monic_lifts::<R>(h);
    let mut out = vec![];
    for gl in monic_lifts::<R>(g) {
        for hl in &hs {
            if gl.clone() * hl.clone() == *p {
                out.push((gl.clone(), hl.clone()));
            }
        }
    }
    out
}

/// All monic polynomials of degree d over R.
pub fn monic_polys<R: Ring>(d: usize) -> Vec<Poly<R>> {
    let mut out: Vec<Vec<R>> = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|c| {
                R::elements().into_iter().map(move |x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|mut c| {
            c.push(R::one());
            Poly::new(c)
        })
        .collect()
}
