//! Reduction to graded data at a unitary point u: the parameters
//! k^u = (λ + α(u)λ*)/2 (in units of log q), the subsystem R_{u>0} where they
//! are positive, equal-parameter rescaling and the exponential map on weights.

use num_rational::Rational64;
use serde_json::{json, Value};

use crate::bernstein_hecke::HeckeAlgebra;
use crate::error::{Error, Result};
use crate::exact_rings::{lattice, Ctx, TorusPoint};
use crate::root_datum::{invert_rational, isotropy_data, BasedRootDatum, IsotropyData};

#[derive(Clone, Debug)]
pub struct GradedParams {
    pub u: TorusPoint,
    pub data: IsotropyData,
}

impl GradedParams {
    /// (root index, k) over R_u, including the roots with k = 0.
    pub fn k_table(&self) -> impl Iterator<Item = (usize, Rational64)> + '_ {
        self.data.roots_u.iter().copied().zip(self.data.k_values.iter().copied())
    }

    pub fn roots_pos(&self) -> &[usize] {
        &self.data.roots_pos
    }

    pub fn factorization_holds(&self) -> bool {
        self.data.factorization_holds()
    }

    pub fn to_json(&self, datum: &BasedRootDatum) -> Value {
        json!({
            "u": self.u.to_pairs(),
            "isotropy_roots": self.data.roots_u.iter().map(|&i| datum.root(i).to_vec()).collect::<Vec<_>>(),
            "k": self.k_table().map(|(i, k)| json!({"root": datum.root(i), "k": k.to_string()})).collect::<Vec<_>>(),
            "positive_roots": self.data.roots_pos.iter().map(|&i| datum.root(i).to_vec()).collect::<Vec<_>>(),
            "stabilizer_order": self.data.stabilizer.len(),
            "weyl_pos_order": self.data.weyl_pos_order,
            "gamma_pos_order": self.data.gamma_pos.len(),
            "factorization_holds": self.factorization_holds(),
        })
    }
}

pub fn k_parameters(alg: &HeckeAlgebra, u: &TorusPoint) -> Result<GradedParams> {
    let d = alg.datum();
    let labels: Vec<(i64, i64)> = (0..d.roots().len())
        .map(|i| {
            let l = alg.labels().get(i);
            (l.lambda, l.lambda_star)
        })
        .collect();
    let data = isotropy_data(d, &labels, u)?;
    Ok(GradedParams { u: u.clone(), data })
}

/// A root of R_{u>0} rescaled to carry parameter 1·log q.
#[derive(Clone, Debug, PartialEq)]
pub struct RescaledRoot {
    pub root: usize,
    pub scale: Rational64,
    pub root_vec: Vec<Rational64>,
    pub coroot_vec: Vec<Rational64>,
}

fn rat(v: &[i64]) -> Vec<Rational64> {
    v.iter().map(|&x| Rational64::from_integer(x)).collect()
}

fn dot(a: &[Rational64], b: &[Rational64]) -> Rational64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// root ↦ k·root, coroot ↦ coroot/k. Fails when some k is not positive or the
/// rescaled system is not crystallographic.
pub fn equal_parameter_form(gp: &GradedParams, datum: &BasedRootDatum) -> Result<Vec<RescaledRoot>> {
    let mut out = Vec::new();
    for (i, k) in gp.k_table() {
        if !gp.data.roots_pos.contains(&i) {
            continue;
        }
        if k <= Rational64::from_integer(0) {
            return Err(Error::Precondition(format!("root {:?} has k = {k}", datum.root(i))));
        }
        out.push(RescaledRoot {
            root: i,
            scale: k,
            root_vec: rat(datum.root(i)).iter().map(|x| x * k).collect(),
            coroot_vec: rat(datum.coroot(i)).iter().map(|x| x / k).collect(),
        });
    }
    for a in &out {
        for b in &out {
            let c = dot(&a.root_vec, &b.coroot_vec);
            if !c.is_integer() {
                return Err(Error::Precondition(format!(
                    "rescaled pairing ⟨{:?}, {:?}⟩ = {c} is not integral",
                    datum.root(a.root),
                    datum.coroot(b.root)
                )));
            }
        }
        // the reflection x ↦ x − ⟨x, a^♯⟩a is unchanged
        if dot(&a.root_vec, &a.coroot_vec) != Rational64::from_integer(2) {
            return Err(Error::Precondition("rescaled root does not pair to 2 with its coroot".into()));
        }
    }
    Ok(out)
}

/// Simple roots of R_{u>0} for the positive system induced from R⁺.
pub fn simple_subsystem(gp: &GradedParams, datum: &BasedRootDatum) -> Vec<usize> {
    let pos: Vec<usize> = gp.data.roots_pos.iter().copied().filter(|&i| datum.is_positive(i)).collect();
    pos.iter()
        .copied()
        .filter(|&b| {
            let r = datum.reflection(b);
            pos.iter().filter(|&&a| datum.root_index(&r.apply(datum.root(a))).is_some_and(|j| !datum.is_positive(j))).count() == 1
        })
        .collect()
}

/// σ in the span of the simple coroots of R_{u>0} with ⟨h, σ⟩ = −2k_h on its
/// simple roots, in units of log v.
pub fn graded_steinberg_weight(gp: &GradedParams, datum: &BasedRootDatum) -> Result<Vec<Rational64>> {
    let simple = simple_subsystem(gp, datum);
    if simple.is_empty() {
        return Ok(vec![Rational64::from_integer(0); datum.rank()]);
    }
    let cartan: Vec<Vec<Rational64>> = simple
        .iter()
        .map(|&s| simple.iter().map(|&t| Rational64::from_integer(lattice::dot(datum.root(s), datum.coroot(t)))).collect())
        .collect();
    let inv = invert_rational(cartan).ok_or_else(|| Error::InvalidDatum("degenerate Cartan matrix".into()))?;
    let k_of = |s: usize| gp.data.k_of(s).expect("simple roots lie in R_u");
    let targets: Vec<Rational64> = simple.iter().map(|&s| Rational64::from_integer(-2) * k_of(s)).collect();
    let coeffs: Vec<Rational64> =
        (0..simple.len()).map(|t| (0..simple.len()).map(|s| inv[t][s] * targets[s]).sum()).collect();
    Ok((0..datum.rank())
        .map(|j| coeffs.iter().zip(&simple).map(|(c, &t)| c * Rational64::from_integer(datum.coroot(t)[j])).sum())
        .collect())
}

/// Weights u·v^σ: t(e_j) = u(e_j)·v^{σ_j}.
pub fn exp_weights(u: &TorusPoint, sigma: &[Vec<Rational64>]) -> Result<Vec<TorusPoint>> {
    let ctx: Ctx = u.ctx();
    sigma
        .iter()
        .map(|s| {
            if s.len() != u.rank() {
                return Err(Error::InvalidPoint("σ has the wrong length".into()));
            }
            let vexp = s
                .iter()
                .zip(u.v_exponents())
                .map(|(c, &base)| {
                    let k = c * Rational64::from_integer(ctx.denom as i64);
                    if k.is_integer() {
                        Ok(base + k.to_integer())
                    } else {
                        Err(Error::InvalidPoint(format!("exponent {c} is not a multiple of 1/{}", ctx.denom)))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            TorusPoint::new(ctx, u.zeta_exponents().to_vec(), vexp)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernstein_hecke::tests::{algebra, sl2};
    use crate::label_calculus::{LabelFunction, Labels};
    use crate::root_datum::tests::a1_sl2;
    use std::sync::Arc;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn c2(short: Labels, long: Labels) -> HeckeAlgebra {
        let roots = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]];
        let mut all = roots.clone();
        all.extend(roots.iter().map(|v| lattice::neg(v)));
        let coroots = all.iter().map(|v| if v[0] == 0 || v[1] == 0 { lattice::scale(v, 2) } else { v.clone() }).collect();
        let d = BasedRootDatum::new(2, all, coroots, vec![3, 1], vec![]).unwrap();
        let labels = LabelFunction::from_fn(&d, |i| Some(if d.coroot(i).iter().any(|c| c.abs() == 2) { short } else { long })).unwrap();
        let ctx = Ctx::default();
        HeckeAlgebra::new(Arc::new(d), labels, TorusPoint::identity(ctx, 2), vec![0, 0]).unwrap()
    }

    #[test]
    fn rank_one_k_values() {
        let ctx = Ctx::default();
        let one = TorusPoint::identity(ctx, 1);
        let minus = TorusPoint::new(ctx, vec![6], vec![0]).unwrap();
        let gp = k_parameters(&sl2(Labels::new(1, 1), 0), &one).unwrap();
        assert_eq!(gp.k_table().collect::<Vec<_>>(), vec![(0, r(1)), (1, r(1))]);
        let gp = k_parameters(&sl2(Labels::new(1, 1), 0), &minus).unwrap();
        assert!(gp.k_table().all(|(_, k)| k == r(0)));
        assert!(gp.roots_pos().is_empty());
        assert!(gp.factorization_holds());
        let gp = k_parameters(&sl2(Labels::new(3, 1), 0), &minus).unwrap();
        assert!(gp.k_table().all(|(_, k)| k == r(1)));
    }

    #[test]
    fn non_unitary_rejected() {
        let t = TorusPoint::new(Ctx::default(), vec![0], vec![2]).unwrap();
        assert!(k_parameters(&sl2(Labels::new(1, 1), 0), &t).is_err());
    }

    #[test]
    fn c2_mixed_scaling() {
        let h = c2(Labels::new(3, 1), Labels::new(1, 1));
        let gp = k_parameters(&h, &TorusPoint::identity(h.ctx(), 2)).unwrap();
        let form = equal_parameter_form(&gp, h.datum()).unwrap();
        let mut scales: Vec<_> = form.iter().map(|x| x.scale).collect();
        scales.sort();
        scales.dedup();
        assert_eq!(scales, vec![r(1), r(2)]);
        assert!(gp.factorization_holds());
    }

    #[test]
    fn steinberg_weight_exponentiates_to_steinberg_point() {
        for l in [Labels::new(1, 1), Labels::new(3, 1), Labels::new(2, 0)] {
            let h = algebra(a1_sl2(), l, 0);
            let u = TorusPoint::identity(h.ctx(), 1);
            let gp = k_parameters(&h, &u).unwrap();
            let sigma = graded_steinberg_weight(&gp, h.datum()).unwrap();
            let t = exp_weights(&u, &[sigma]).unwrap();
            assert_eq!(t[0], h.steinberg_point().unwrap(), "{l}");
        }
    }

    #[test]
    fn exp_of_rank_one_weight() {
        let u = TorusPoint::new(Ctx::default(), vec![6], vec![0]).unwrap();
        let t = exp_weights(&u, &[vec![r(-2)]]).unwrap();
        assert_eq!(t[0].value(&[1]), crate::exact_rings::VLaurent::zeta_v(u.ctx(), 6, -4));
        assert_eq!(exp_weights(&u, &[vec![r(0)]]).unwrap()[0], u);
    }
}
