//! The group 𝒢_N(R) = (GL_N × GL_1) ⋊ {1, 𝔠}, finitely presented groups and
//! homomorphisms into it.

use std::fmt::Debug;

use crate::error::{contract, pre, Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;

/// (g, μ)·𝔠^c
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GnElement<R> {
    pub g: Matrix<R>,
    pub mu: R,
    pub c: bool,
}

impl<R: Ring> GnElement<R> {
    pub fn new(g: Matrix<R>, mu: R, c: bool) -> Self {
        GnElement { g, mu, c }
    }

    pub fn identity(n: usize) -> Self {
        GnElement::new(Matrix::identity(n), R::one(), false)
    }

    /// The element 𝔠 = (1, 1)𝔠.
    pub fn conj(n: usize) -> Self {
        GnElement::new(Matrix::identity(n), R::one(), true)
    }

    pub fn n(&self) -> usize {
        self.g.rows()
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.n() != o.n() {
            return Err(Error::Shape(format!("𝒢_{} times 𝒢_{}", self.n(), o.n())));
        }
        let g = if self.c {
            let ginv = o
                .g
                .transpose()
                .inverse()
                .ok_or_else(|| Error::Precondition("matrix part is not invertible".into()))?;
            &self.g * &ginv.scale(&o.mu)
        } else {
            &self.g * &o.g
        };
        Ok(GnElement::new(g, self.mu.clone() * o.mu.clone(), self.c ^ o.c))
    }

    pub fn inverse(&self) -> Option<Self> {
        let mi = self.mu.inv()?;
        if self.c {
            Some(GnElement::new(self.g.transpose().scale(&mi), mi, true))
        } else {
            Some(GnElement::new(self.g.inverse()?, mi, false))
        }
    }

    /// The similitude character ν.
    pub fn nu(&self) -> R {
        if self.c {
            -self.mu.clone()
        } else {
            self.mu.clone()
        }
    }

    /// Adjoint action on M_N.
    pub fn ad(&self, x: &Matrix<R>) -> Result<Matrix<R>> {
        if x.rows() != self.n() || x.cols() != self.n() {
            return Err(Error::Shape("ad argument size".into()));
        }
        let gi = self
            .g
            .inverse()
            .ok_or_else(|| Error::Precondition("matrix part is not invertible".into()))?;
        let y = if self.c { -x.transpose() } else { x.clone() };
        Ok(&(&self.g * &y) * &gi)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"g": self.g.to_json(), "mu": self.mu.to_json(), "c": self.c as u8})
    }
}

/// Anything we can evaluate group words in.
pub trait GroupElement: Clone + Debug + PartialEq {
    fn op(&self, o: &Self) -> Self;
    fn inv_elt(&self) -> Option<Self>;
    fn identity_like(&self) -> Self;
    fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }
}

impl<R: Ring> GroupElement for Matrix<R> {
    fn op(&self, o: &Self) -> Self {
        self * o
    }
    fn inv_elt(&self) -> Option<Self> {
        self.inverse()
    }
    fn identity_like(&self) -> Self {
        Matrix::identity(self.rows())
    }
}

impl<R: Ring> GroupElement for GnElement<R> {
    fn op(&self, o: &Self) -> Self {
        self.mul(o).expect("group operands of equal size")
    }
    fn inv_elt(&self) -> Option<Self> {
        self.inverse()
    }
    fn identity_like(&self) -> Self {
        GnElement::identity(self.n())
    }
}

/// A word as (generator index, exponent) letters.
pub type Word = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGroup {
    pub generators: Vec<String>,
    /// Named relators, each required to evaluate to the identity.
    pub relations: Vec<(String, Word)>,
}

impl PresentedGroup {
    pub fn generator(&self, name: &str) -> usize {
        self.generators
            .iter()
            .position(|g| g == name)
            .unwrap_or_else(|| panic!("unknown generator {name}"))
    }
}

pub fn eval_word<G: GroupElement>(images: &[G], w: &Word) -> Result<G> {
    let mut acc = images[0].identity_like();
    for &(g, e) in w {
        let base = if e < 0 {
            images[g]
                .inv_elt()
                .ok_or_else(|| Error::Precondition(format!("image of generator {g} not invertible")))?
        } else {
            images[g].clone()
        };
        let mut k = e.unsigned_abs();
        let mut sq = base;
        let mut p = acc.identity_like();
        while k > 0 {
            if k & 1 == 1 {
                p = p.op(&sq);
            }
            sq = sq.op(&sq);
            k >>= 1;
        }
        acc = acc.op(&p);
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct PresentedGroupHom<G> {
    pub group: PresentedGroup,
    pub images: Vec<G>,
}

impl<G: GroupElement> PresentedGroupHom<G> {
    pub fn new(group: PresentedGroup, images: Vec<G>) -> Result<Self> {
        if images.len() != group.generators.len() {
            return Err(Error::Shape("one image per generator required".into()));
        }
        let h = PresentedGroupHom { group, images };
        h.verify()?;
        Ok(h)
    }

    pub fn eval(&self, w: &Word) -> Result<G> {
        eval_word(&self.images, w)
    }

    pub fn image(&self, name: &str) -> &G {
        &self.images[self.group.generator(name)]
    }

    /// Every relator maps to the identity; names the first that fails.
    pub fn verify(&self) -> Result<()> {
        for (name, w) in &self.group.relations {
            if !self.eval(w)?.is_identity() {
                return pre(format!("relation {name} is violated"));
            }
        }
        Ok(())
    }
}

/// Γ ⊂ Γ̃ of index two: presentations of both, the conjugation action of a
/// fixed γ ∈ Γ̃ ∖ Γ on generators of Γ, and γ² as a word in Γ.
///
/// Γ̃ has the generators of Γ first and γ last.
#[derive(Clone, Debug)]
pub struct IndexTwo {
    pub sub: PresentedGroup,
    pub full: PresentedGroup,
    pub conj: Vec<Word>,
    pub gamma_sq: Word,
}

impl IndexTwo {
    pub fn gamma(&self) -> usize {
        self.full.generators.len() - 1
    }
}

/// T_{q²} = ⟨t, Φ⟩ inside T_q = ⟨t, Φ, γ⟩ with γ = φ_q, Φ = γ².
pub fn tame_index_two(q: i64) -> IndexTwo {
    let (t, phi, g) = (0, 1, 2);
    let sub = PresentedGroup {
        generators: vec!["t".into(), "Phi".into()],
        relations: vec![("Phi t Phi^-1 = t^(q^2)".into(), vec![(phi, 1), (t, 1), (phi, -1), (t, -q * q)])],
    };
    let mut rels = sub.relations.clone();
    rels.push(("gamma t gamma^-1 = t^q".into(), vec![(g, 1), (t, 1), (g, -1), (t, -q)]));
    rels.push(("gamma^2 = Phi".into(), vec![(g, 2), (phi, -1)]));
    rels.push(("gamma Phi gamma^-1 = Phi".into(), vec![(g, 1), (phi, 1), (g, -1), (phi, -1)]));
    IndexTwo {
        sub,
        full: PresentedGroup {
            generators: vec!["t".into(), "Phi".into(), "gamma".into()],
            relations: rels,
        },
        conj: vec![vec![(t, q)], vec![(phi, 1)]],
        gamma_sq: vec![(phi, 1)],
    }
}

fn check_duality<R: Ring>(
    rho: &PresentedGroupHom<Matrix<R>>,
    data: &IndexTwo,
    b: &Matrix<R>,
    chi: &[R],
) -> Result<()> {
    let bi = b
        .inverse()
        .ok_or_else(|| Error::Precondition("B is not invertible".into()))?;
    for (i, x) in rho.images.iter().enumerate() {
        let lhs = rho.eval(&data.conj[i])?;
        let dual = x
            .transpose()
            .inverse()
            .ok_or_else(|| Error::Precondition("ρ image not invertible".into()))?
            .scale(&chi[i]);
        if lhs != &(b * &dual) * &bi {
            return pre(format!(
                "ρ^γ = B∘χρ^∨∘B⁻¹ fails at generator {}",
                data.sub.generators[i]
            ));
        }
    }
    Ok(())
}

/// The unique r: Γ̃ → 𝒢_N with r|_Γ = (ρ, χ)·1 and r(γ) = (B, μ_B·χ(γ))𝔠.
///
/// `chi` holds χ on the generators of Γ; `chi_gamma` is χ(γ).
pub fn extend_to_gn<R: Ring>(
    rho: &PresentedGroupHom<Matrix<R>>,
    data: &IndexTwo,
    b: &Matrix<R>,
    chi: &[R],
    chi_gamma: &R,
    mu_b: &R,
) -> Result<PresentedGroupHom<GnElement<R>>> {
    if *mu_b != R::one() && *mu_b != -R::one() {
        return pre("μ_B must be ±1");
    }
    if chi.len() != rho.images.len() {
        return Err(Error::Shape("χ needs one value per generator of Γ".into()));
    }
    rho.verify()?;
    check_duality(rho, data, b, chi)?;
    let bt_inv = b
        .transpose()
        .inverse()
        .ok_or_else(|| Error::Precondition("B is not invertible".into()))?;
    let cg_inv = chi_gamma
        .inv()
        .ok_or_else(|| Error::Precondition("χ(γ) is not a unit".into()))?;
    let rho_g2 = rho.eval(&data.gamma_sq)?;
    if &(b * &bt_inv) != &rho_g2.scale(&(mu_b.clone() * cg_inv)) {
        return pre("B·ᵗB⁻¹ = μ_B·χ(γ)⁻¹·ρ(γ²) fails");
    }
    let mut images: Vec<GnElement<R>> = rho
        .images
        .iter()
        .zip(chi)
        .map(|(g, c)| GnElement::new(g.clone(), c.clone(), false))
        .collect();
    let rg = GnElement::new(b.clone(), mu_b.clone() * chi_gamma.clone(), true);
    images.push(rg.clone());
    let r = PresentedGroupHom {
        group: data.full.clone(),
        images,
    };
    let chi_g2 = eval_char(chi, &data.gamma_sq)?;
    if rg.mul(&rg)? != GnElement::new(rho_g2, chi_g2, false) {
        return contract("r(γ)² differs from (ρ(γ²), χ(γ²))");
    }
    if let Err(e) = r.verify() {
        return contract(format!("extension is not a homomorphism: {e}"));
    }
    Ok(r)
}

impl<R: Ring> GroupElement for ScalarUnit<R> {
    fn op(&self, o: &Self) -> Self {
        ScalarUnit(self.0.clone() * o.0.clone())
    }
    fn inv_elt(&self) -> Option<Self> {
        self.0.inv().map(ScalarUnit)
    }
    fn identity_like(&self) -> Self {
        ScalarUnit(R::one())
    }
}

/// Units of R under multiplication, for evaluating characters on words.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarUnit<R>(pub R);

pub fn eval_char<R: Ring>(chi: &[R], w: &Word) -> Result<R> {
    let units: Vec<_> = chi.iter().cloned().map(ScalarUnit).collect();
    eval_word(&units, w).map(|u| u.0)
}

/// Restriction of r to Γ: (ρ, χ|_Γ).
pub fn restrict<R: Ring>(
    r: &PresentedGroupHom<GnElement<R>>,
    data: &IndexTwo,
) -> Result<(PresentedGroupHom<Matrix<R>>, Vec<R>)> {
    let k = data.sub.generators.len();
    if r.images[..k].iter().any(|x| x.c) {
        return pre("r maps Γ outside GL_N × GL_1");
    }
    let rho = PresentedGroupHom::new(
        data.sub.clone(),
        r.images[..k].iter().map(|x| x.g.clone()).collect(),
    )?;
    Ok((rho, r.images[..k].iter().map(|x| x.mu.clone()).collect()))
}

/// Reads B off r(γ) = (B, m)𝔠 and checks r^{♮,γ} = B∘χr^{♮,∨}∘B⁻¹ with χ = ν∘r.
///
/// Returns B and μ_B relative to the given χ(γ).
pub fn recover_b<R: Ring>(
    r: &PresentedGroupHom<GnElement<R>>,
    data: &IndexTwo,
    chi_gamma: &R,
) -> Result<(Matrix<R>, R)> {
    let rg = &r.images[data.gamma()];
    if !rg.c {
        return pre("r(γ) is not in the 𝔠-coset");
    }
    let (rho, chi) = restrict(r, data)?;
    check_duality(&rho, data, &rg.g, &chi)?;
    let mu_b = rg.mu.clone()
        * chi_gamma
            .inv()
            .ok_or_else(|| Error::Precondition("χ(γ) is not a unit".into()))?;
    Ok((rg.g.clone(), mu_b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{F3, F5, F7};

    #[test]
    fn c_squared_and_nu() {
        let c = GnElement::<F5>::conj(2);
        assert_eq!(c.mul(&c).unwrap(), GnElement::identity(2));
        assert_eq!(c.nu(), -F5::from_i64(1));
        let g = GnElement::new(Matrix::<F5>::from_i64(&[&[1, 1], &[0, 1]]), F5::from_i64(1), false);
        let cgc = c.mul(&g).unwrap().mul(&c).unwrap();
        assert_eq!(cgc.g, Matrix::from_i64(&[&[1, 0], &[4, 1]]));
        assert!(!cgc.c);
    }

    #[test]
    fn ad_of_c() {
        let x = Matrix::<F7>::from_i64(&[&[0, 1], &[0, 0]]);
        let y = GnElement::conj(2).ad(&x).unwrap();
        assert_eq!(y, Matrix::from_i64(&[&[0, 0], &[-1, 0]]));
    }

    #[test]
    fn exhaustive_group_axioms_n1_f3() {
        let mut els = vec![];
        for g in [1, 2] {
            for mu in [1, 2] {
                for c in [false, true] {
                    els.push(GnElement::new(
                        Matrix::<F3>::from_i64(&[&[g]]),
                        F3::from_i64(mu),
                        c,
                    ));
                }
            }
        }
        for a in &els {
            let ai = a.inverse().unwrap();
            assert!(a.mul(&ai).unwrap().is_identity());
            assert!(ai.mul(a).unwrap().is_identity());
            for b in &els {
                let ab = a.mul(b).unwrap();
                assert!(els.contains(&ab));
                assert_eq!(ab.nu(), a.nu() * b.nu());
                for c in &els {
                    assert_eq!(ab.mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn n1_extension_needs_sign() {
        let data = tame_index_two(2);
        let one = Matrix::<F5>::identity(1);
        let rho = PresentedGroupHom::new(data.sub.clone(), vec![one.clone(), one.clone()]).unwrap();
        let chi = vec![F5::from_i64(1), F5::from_i64(1)];
        let m1 = -F5::from_i64(1);
        assert!(extend_to_gn(&rho, &data, &one, &chi, &m1, &F5::from_i64(1)).is_err());
        let r = extend_to_gn(&rho, &data, &one, &chi, &m1, &m1).unwrap();
        let rg = r.image("gamma");
        assert_eq!(*rg, GnElement::new(one.clone(), F5::from_i64(1), true));
        assert_eq!(rg.mul(rg).unwrap(), GnElement::identity(1));
        let (b, mu_b) = recover_b(&r, &data, &m1).unwrap();
        assert_eq!((b, mu_b), (one, m1));
    }

    #[test]
    fn scalar_char_words() {
        let chi = vec![F7::from_i64(3), F7::from_i64(2)];
        assert_eq!(eval_char(&chi, &vec![(0, 2), (1, -1)]).unwrap(), F7::from_i64(1));
    }
}
