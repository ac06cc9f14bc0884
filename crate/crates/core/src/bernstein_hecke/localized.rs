//! The localized model: F(T) ⋊ (W ⋊ Γ) with basis f·𝒯_w J_γ.

use std::collections::BTreeMap;
use std::fmt;

use super::{BasisKey, HeckeAlgebra, HeckeElement};
use crate::error::{Error, Result};
use crate::exact_rings::{lattice, TorusFunction, TorusRational, VLaurent};
use crate::root_datum::GroupElement;

/// Σ f_{w,γ} 𝒯_w J_γ with rational coefficients; zero coefficients are never stored.
#[derive(Clone)]
pub struct LocalizedElement {
    alg: HeckeAlgebra,
    terms: BTreeMap<(usize, usize), TorusRational>,
}

impl LocalizedElement {
    pub fn zero(alg: &HeckeAlgebra) -> Self {
        LocalizedElement { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &HeckeAlgebra) -> Self {
        Self::term(alg, TorusRational::one(alg.ctx(), alg.rank()), 0, 0)
    }

    /// f·𝒯_w J_γ.
    pub fn term(alg: &HeckeAlgebra, f: TorusRational, w: usize, g: usize) -> Self {
        let mut e = Self::zero(alg);
        e.add_term((w, g), f);
        e
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), TorusRational> {
        &self.terms
    }

    pub fn coeff(&self, w: usize, g: usize) -> TorusRational {
        self.terms.get(&(w, g)).cloned().unwrap_or_else(|| TorusRational::zero(self.alg.ctx(), self.alg.rank()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: (usize, usize), f: TorusRational) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&k) {
            Some(old) => &old + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(k, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.alg.ensure_same(&other.alg)?;
        let mut out = self.clone();
        for (k, f) in &other.terms {
            out.add_term(*k, f.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &TorusRational) -> Self {
        let mut out = Self::zero(&self.alg);
        for (k, f) in &self.terms {
            out.add_term(*k, f * c);
        }
        out
    }

    /// (f 𝒯_w J_γ)(g 𝒯_u J_δ) = f·(wγ)(g) 𝒯_{w·γuγ⁻¹} J_{γδ}.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.alg.ensure_same(&other.alg)?;
        let d = self.alg.datum();
        let mut out = Self::zero(&self.alg);
        for (&(w, g), f) in &self.terms {
            let m = d.matrix(GroupElement { w, g });
            for (&(u, h), f2) in &other.terms {
                let p = d.mul(GroupElement { w, g }, GroupElement { w: u, g: h });
                out.add_term((p.w, p.g), f * &f2.apply_matrix(&m));
            }
        }
        Ok(out)
    }

    /// Every coefficient is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(|f| f.as_polynomial().is_some())
    }
}

impl PartialEq for LocalizedElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_as(&other.alg)
            && self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(k, f)| other.terms.get(k) == Some(f))
    }
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let wg = self.alg.datum().weyl();
        let parts: Vec<String> =
            self.terms.iter().map(|((w, g), c)| format!("[{c}]*T{:?}*J{g}", wg.word(*w))).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl HeckeAlgebra {
    fn rational(&self, num: TorusFunction, den: &TorusFunction) -> TorusRational {
        TorusRational::new(num, den).expect("nonzero denominator")
    }

    /// The factor c_s multiplying 𝒯'_s + 1 in the image of N_s.
    pub(crate) fn c_factor(&self, s: usize) -> TorusRational {
        let sd = self.simple_data(s);
        let (ctx, r) = (self.ctx(), self.rank());
        let one = TorusFunction::one(ctx, r);
        let h = || TorusFunction::theta(ctx, sd.root.clone());
        let (l, ls) = (sd.labels.lambda, sd.labels.lambda_star);
        if sd.two_div {
            let qa = VLaurent::v_pow(ctx, l + ls);
            let qs = VLaurent::v_pow(ctx, l - ls);
            let num = &(&h().scale(&qa) - &one) * &(&h().scale(&qs) + &one);
            let den = &TorusFunction::theta(ctx, lattice::scale(&sd.root, 2)) - &one;
            self.rational(num, &den)
        } else {
            let num = &h().scale(&VLaurent::v_pow(ctx, 2 * l)) - &one;
            self.rational(num, &(&h() - &one))
        }
    }

    /// Image of N_s: v^{−λ}[(𝒯_s θ_{−εh} + 1)c_s − 1].
    pub fn localized_simple(&self, s: usize) -> LocalizedElement {
        let sd = self.simple_data(s);
        let (ctx, r) = (self.ctx(), self.rank());
        let c = self.c_factor(s);
        let vl = VLaurent::v_pow(ctx, -sd.labels.lambda);
        let w = self.datum().weyl().simple_index(s);
        let refl = self.datum().reflection(self.datum().simple_root(s));
        // 𝒯_s θ_{−εh} c = θ_{εh} s(c) 𝒯_s
        let top = c.apply_matrix(refl).shift(&lattice::scale(&sd.root, sd.eps)).scale(&vl);
        let bottom = (&c - &TorusRational::one(ctx, r)).scale(&vl);
        let mut e = LocalizedElement::term(self, top, w, 0);
        e.add_term((0, 0), bottom);
        e
    }

    fn localized_nw_table(&self) -> &Vec<LocalizedElement> {
        self.inner.localized_nw.get_or_init(|| {
            let wg = self.datum().weyl();
            let mut out: Vec<LocalizedElement> = Vec::with_capacity(wg.len());
            out.push(LocalizedElement::one(self));
            for w in 1..wg.len() {
                let s = wg.word(w)[0];
                let rest = wg.left_mul(s, w);
                let e = self.localized_simple(s).multiply(&out[rest]).expect("same algebra");
                out.push(e);
            }
            out
        })
    }

    /// Image of N_w.
    pub fn localized_nw(&self, w: usize) -> &LocalizedElement {
        &self.localized_nw_table()[w]
    }

    /// Image of θ_x.
    pub fn localized_theta(&self, x: Vec<i64>) -> LocalizedElement {
        LocalizedElement::term(self, TorusFunction::theta(self.ctx(), x).into(), 0, 0)
    }

    /// Image of J_γ.
    pub fn localized_j(&self, g: usize) -> LocalizedElement {
        LocalizedElement::term(self, TorusRational::one(self.ctx(), self.rank()), 0, g)
    }
}

/// The embedding ℋ → F(T) ⋊ (W ⋊ Γ).
pub fn to_localized(h: &HeckeElement) -> LocalizedElement {
    let alg = h.algebra();
    let mut out = LocalizedElement::zero(alg);
    for ((w, g), p) in h.by_group_element() {
        let p: TorusRational = p.into();
        for (&(u, _), f) in alg.localized_nw(w).terms() {
            out.add_term((u, g), &p * f);
        }
    }
    out
}

/// Inverse of [`to_localized`] on its image; `NotIntegral` lists coefficients
/// that are not Laurent polynomials.
pub fn from_localized(e: &LocalizedElement) -> Result<HeckeElement> {
    let alg = e.algebra().clone();
    let wg = alg.datum().weyl();
    let mut rest = e.clone();
    let mut out = alg.zero();
    while let Some((&(w, g), f)) = rest.terms.iter().max_by_key(|((w, g), _)| (wg.length(*w), *w, *g)) {
        let lead = alg.localized_nw(w).coeff(w, 0);
        let q = f.div(&lead)?;
        let Some(p) = q.as_polynomial() else {
            return Err(Error::NotIntegral(vec![format!("coefficient of N{:?}J{g}: {q}", wg.word(w))]));
        };
        let p = p.clone();
        for (x, c) in p.terms() {
            out.add_term(BasisKey { x: x.clone(), w, g }, c.clone());
        }
        let pr: TorusRational = p.into();
        let mut next = rest.clone();
        for (&(u, _), f2) in alg.localized_nw(w).terms() {
            next.add_term((u, g), -&(&pr * f2));
        }
        if next.terms.contains_key(&(w, g)) {
            return Err(Error::NotIntegral(vec![format!("leading term at N{:?}J{g} did not cancel", wg.word(w))]));
        }
        rest = next;
    }
    Ok(out)
}

impl HeckeElement {
    pub fn to_localized(&self) -> LocalizedElement {
        to_localized(self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{gl, sl2};
    use super::*;
    use crate::label_calculus::Labels;

    #[test]
    fn simple_image_satisfies_quadratic_relation() {
        for (l, eps) in [(Labels::new(1, 1), 0), (Labels::new(3, 1), 0), (Labels::new(3, 1), 1), (Labels::new(2, 0), 1)] {
            let h = sl2(l, eps);
            let n = h.localized_simple(0);
            let lhs = n.multiply(&n).unwrap();
            let a = TorusRational::from(TorusFunction::constant(1, VLaurent::v_diff(h.ctx(), l.lambda)));
            let rhs = LocalizedElement::one(&h).add(&n.scale(&a)).unwrap();
            assert_eq!(lhs, rhs, "labels {l} eps {eps}");
        }
    }

    #[test]
    fn round_trip() {
        let h = gl(3);
        let e = &(&h.theta(vec![2, -1, 0]) * &h.n_w(3)) + &h.n_w(h.datum().weyl().longest());
        assert_eq!(from_localized(&e.to_localized()).unwrap(), e);
    }

    #[test]
    fn non_integral_is_reported() {
        let h = sl2(Labels::new(1, 1), 0);
        let ctx = h.ctx();
        let one = TorusFunction::one(ctx, 1);
        let f = TorusRational::new(one.clone(), &(&TorusFunction::theta(ctx, vec![1]) - &one)).unwrap();
        let e = LocalizedElement::term(&h, f, 0, 0);
        assert!(matches!(from_localized(&e), Err(Error::NotIntegral(_))));
    }
}
