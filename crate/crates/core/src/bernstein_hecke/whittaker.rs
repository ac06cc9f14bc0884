//! The Whittaker-normalized right action on the rank-one module F(T)·1.
//!
//! On the Bernstein generators, g·θ_x = gθ_x, g·N_s = v^{−λ}[(g − s(g))c_s − g]
//! and g·J_γ = det(γ)·(g∘γ), where (θ_x∘γ) = θ_{γ⁻¹x}. In the localized model
//! 1·𝒯_s = −θ_{εh} and g·𝒯_w J_γ = (g∘wγ)(1·𝒯_w J_γ).

use num_rational::Rational64;

use super::{HeckeAlgebra, HeckeElement, LocalizedElement};
use crate::error::Result;
use crate::exact_rings::{lattice, TorusFunction, TorusPoint, TorusRational, VLaurent};
use crate::root_datum::GroupElement;

impl HeckeAlgebra {
    fn act_simple(&self, g: &TorusRational, s: usize) -> TorusRational {
        let sd = self.simple_data(s);
        let refl = self.datum().reflection(self.datum().simple_root(s));
        let c = self.c_factor(s);
        let diff = g - &g.apply_matrix(refl);
        (&(&diff * &c) - g).scale(&VLaurent::v_pow(self.ctx(), -sd.labels.lambda))
    }

    fn act_gamma(&self, g: &TorusRational, k: usize) -> TorusRational {
        let gamma = self.datum().gamma();
        g.apply_matrix(gamma.inverse_matrix(k)).scale(&VLaurent::from_int(self.ctx(), gamma.det(k)))
    }

    /// 1·𝒯_w.
    fn tw_value(&self, w: usize) -> TorusRational {
        let d = self.datum();
        let mut phi = TorusRational::one(self.ctx(), self.rank());
        for &s in d.weyl().word(w) {
            let sd = self.simple_data(s);
            let refl = d.reflection(d.simple_root(s));
            let t = TorusFunction::theta(self.ctx(), lattice::scale(&sd.root, sd.eps));
            phi = -&(&phi.apply_matrix(refl) * &TorusRational::from(t));
        }
        phi
    }

    /// The Steinberg weight: t(h_s) = v^{−(λ+λ*)} on simple roots and trivial on
    /// the annihilator of the coroots.
    pub fn steinberg_point(&self) -> Result<TorusPoint> {
        let d = self.datum();
        let targets: Vec<Rational64> = (0..d.num_simple())
            .map(|s| {
                let l = self.simple_labels(s);
                Rational64::from_integer(-(l.lambda + l.lambda_star))
            })
            .collect();
        d.point_with_simple_values(self.ctx(), &vec![Rational64::from_integer(0); targets.len()], &targets)
    }
}

/// g·h in the Whittaker module.
pub fn whittaker_act(g: &TorusRational, h: &HeckeElement) -> TorusRational {
    let alg = h.algebra();
    let wg = alg.datum().weyl();
    let mut out = TorusRational::zero(alg.ctx(), alg.rank());
    for (k, c) in h.terms() {
        let mut val = g.shift(&k.x).scale(c);
        for &s in wg.word(k.w) {
            val = alg.act_simple(&val, s);
        }
        val = alg.act_gamma(&val, k.g);
        out = &out + &val;
    }
    out
}

/// 1·h.
pub fn whittaker_action(h: &HeckeElement) -> TorusRational {
    let alg = h.algebra();
    whittaker_act(&TorusRational::one(alg.ctx(), alg.rank()), h)
}

/// 1·e computed in the localized model.
pub fn whittaker_action_localized(e: &LocalizedElement) -> TorusRational {
    let alg = e.algebra();
    let d = alg.datum();
    let mut out = TorusRational::zero(alg.ctx(), alg.rank());
    for (&(w, g), f) in e.terms() {
        let base = alg.act_gamma(&alg.tw_value(w), g);
        let fm = f.apply_matrix(&d.inverse_matrix(GroupElement { w, g }));
        out = &out + &(&fm * &base);
    }
    out
}

impl HeckeElement {
    pub fn whittaker(&self) -> TorusRational {
        whittaker_action(self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{gl, sl2};
    use super::*;
    use crate::label_calculus::Labels;

    #[test]
    fn normalization_on_group_elements() {
        let h = gl(3);
        let ctx = h.ctx();
        for w in 0..h.datum().weyl().len() {
            let len = h.datum().weyl().length(w) as i64;
            let expected = TorusRational::from(TorusFunction::constant(
                3,
                VLaurent::v_pow(ctx, -len).scale_int(if len % 2 == 0 { 1 } else { -1 }),
            ));
            assert_eq!(h.n_w(w).whittaker(), expected);
        }
    }

    #[test]
    fn steinberg_vanishing_rank_one() {
        for (l, eps) in [(Labels::new(1, 1), 0), (Labels::new(3, 1), 1), (Labels::new(2, 0), 0)] {
            let h = sl2(l, eps);
            let st = h.steinberg_point().unwrap();
            for x in -3..=3 {
                let e = &h.theta(vec![x])
                    * &(&h.n_simple(0).scale(&VLaurent::v_pow(h.ctx(), l.lambda)) + &h.one());
                let val = e.whittaker().specialize(&st).unwrap();
                assert!(val.is_zero(), "labels {l} x {x}: {val}");
            }
        }
    }

    #[test]
    fn agrees_with_localized_route() {
        let h = sl2(Labels::new(3, 1), 1);
        let e = &(&h.theta(vec![2]) * &h.n_simple(0)) * &h.theta(vec![-1]);
        assert_eq!(e.whittaker(), whittaker_action_localized(&e.to_localized()));
    }
}
