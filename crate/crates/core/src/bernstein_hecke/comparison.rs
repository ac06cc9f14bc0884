//! The anti-isomorphism ψ between the two sides and central twists.

use super::{BasisKey, HeckeAlgebra, HeckeElement};
use crate::error::{Error, Result};
use crate::exact_rings::TorusPoint;

/// ψ(θ_x N_w J_γ) = J_{γ⁻¹} N_{w⁻¹} θ_x, expanded in the target algebra.
///
/// The two algebras must share the root datum and carry the same labels.
pub fn comparison_iso(h: &HeckeElement, target: &HeckeAlgebra) -> Result<HeckeElement> {
    let src = h.algebra();
    let (a, b) = (src.datum(), target.datum());
    if a.roots() != b.roots() || a.coroots() != b.coroots() || a.simple() != b.simple() {
        return Err(Error::Config("source and target data are not identified".into()));
    }
    if a.gamma().matrices() != b.gamma().matrices() {
        return Err(Error::Config("source and target Γ differ".into()));
    }
    if src.labels() != target.labels() {
        return Err(Error::LabelMismatch(format!(
            "source labels {:?} differ from target labels {:?}",
            src.labels().orbit_labels(),
            target.labels().orbit_labels()
        )));
    }
    let wg = b.weyl();
    let gamma = b.gamma();
    let mut out = target.zero();
    for (BasisKey { x, w, g }, c) in h.terms() {
        let left = target.j(gamma.inverse(*g));
        let mid = target.n_w(wg.inverse(*w));
        let term = &(&left * &mid) * &target.theta(x.clone());
        out = &out + &term.scale(c);
    }
    Ok(out)
}

/// θ_x ↦ z(x)⁻¹θ_x into the algebra with basepoint z·basepoint.
///
/// z must be fixed by W ⋊ Γ and trivial on every root, so that the labels and
/// relations are unchanged.
pub fn twist_by_character(z: &TorusPoint, h: &HeckeElement) -> Result<HeckeElement> {
    let alg = h.algebra();
    let d = alg.datum();
    if z.rank() != alg.rank() || z.ctx() != alg.ctx() {
        return Err(Error::Config("twist character has the wrong rank or coefficients".into()));
    }
    if !d.is_group_fixed(z) {
        return Err(Error::InvalidPoint(format!("{z} is not fixed by W ⋊ Γ")));
    }
    if let Some(i) = (0..d.roots().len()).find(|&i| !z.value(d.root(i)).is_one()) {
        return Err(Error::InvalidPoint(format!("{z} is nontrivial on the root {:?}", d.root(i))));
    }
    let target = alg.with_basepoint(alg.basepoint().mul(z));
    let mut out = target.zero();
    let zi = z.inv();
    for (k, c) in h.terms() {
        out.add_term(k.clone(), c * &zi.value(&k.x));
    }
    Ok(out)
}

impl HeckeAlgebra {
    /// The algebra that [`twist_by_character`] lands in.
    pub fn twisted(&self, z: &TorusPoint) -> Result<HeckeAlgebra> {
        Ok(twist_by_character(z, &self.one())?.algebra().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{gl, sl2};
    use super::*;
    use crate::exact_rings::Ctx;
    use crate::label_calculus::Labels;

    #[test]
    fn psi_fixes_simple_reflections() {
        let h = gl(3);
        for s in 0..2 {
            assert_eq!(comparison_iso(&h.n_simple(s), &h).unwrap(), h.n_simple(s));
        }
    }

    #[test]
    fn psi_is_anti_multiplicative_in_a2() {
        let h = gl(3);
        let ab = &h.n_simple(0) * &h.n_simple(1);
        assert_eq!(comparison_iso(&ab, &h).unwrap(), &h.n_simple(1) * &h.n_simple(0));
        let a = &h.theta(vec![1, 0, 0]) * &h.n_simple(0);
        let b = &h.n_simple(1) * &h.theta(vec![0, -1, 1]);
        let lhs = comparison_iso(&(&a * &b), &h).unwrap();
        let rhs = &comparison_iso(&b, &h).unwrap() * &comparison_iso(&a, &h).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn psi_rejects_label_mismatch() {
        let a = sl2(Labels::new(1, 1), 0);
        let b = sl2(Labels::new(3, 1), 0);
        assert!(matches!(comparison_iso(&a.one(), &b), Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn central_twist_round_trip() {
        let h = gl(2);
        let ctx = Ctx::default();
        let z = TorusPoint::new(ctx, vec![6, 6], vec![0, 0]).unwrap();
        let e = &(&h.theta(vec![1, 0]) * &h.n_simple(0)) + &h.theta(vec![0, 3]);
        let t = twist_by_character(&z, &e).unwrap();
        assert_eq!(t.coeff(&BasisKey { x: vec![0, 3], w: 0, g: 0 }), crate::VLaurent::from_int(ctx, -1));
        let back = twist_by_character(&z.inv(), &t).unwrap();
        assert_eq!(back, e);
        let bad = TorusPoint::new(ctx, vec![6, 0], vec![0, 0]).unwrap();
        assert!(twist_by_character(&bad, &e).is_err());
    }
}
