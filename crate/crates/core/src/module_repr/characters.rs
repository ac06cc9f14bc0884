//! One-dimensional modules.

use num_rational::Rational64;

use super::{lift, FiniteModule};
use crate::bernstein_hecke::HeckeAlgebra;
use crate::error::{Error, Result};
use crate::exact_rings::{Mat, TorusPoint, VLaurent};

/// A one-dimensional module: θ_x ↦ t(x), N_s ↦ n_values[s], J_γ ↦ gamma_values[γ].
#[derive(Clone, Debug)]
pub struct Character {
    pub name: String,
    pub point: TorusPoint,
    pub n_values: Vec<VLaurent>,
    pub gamma_values: Vec<VLaurent>,
}

impl Character {
    pub fn module(&self, alg: &HeckeAlgebra) -> Result<FiniteModule> {
        character_module(alg, &self.point, &self.n_values, &self.gamma_values)
    }

    /// Whether N_s acts by −v^{−λ(s)} for every s and J_γ by det(γ).
    pub fn is_det_type(&self, alg: &HeckeAlgebra) -> bool {
        let ctx = alg.ctx();
        let gamma = alg.datum().gamma();
        self.n_values
            .iter()
            .enumerate()
            .all(|(s, c)| *c == -VLaurent::v_pow(ctx, -alg.simple_labels(s).lambda))
            && self.gamma_values.iter().enumerate().all(|(g, c)| *c == VLaurent::from_int(ctx, gamma.det(g)))
    }
}

pub fn character_module(
    alg: &HeckeAlgebra,
    point: &TorusPoint,
    n_values: &[VLaurent],
    gamma_values: &[VLaurent],
) -> Result<FiniteModule> {
    if point.rank() != alg.rank() {
        return Err(Error::InvalidPoint(format!("{point} has the wrong rank")));
    }
    let ctx = alg.ctx();
    let one = |c: VLaurent| Mat::scalar(ctx, 1, &lift(&c));
    let theta = (0..alg.rank())
        .map(|i| {
            let mut e = vec![0; alg.rank()];
            e[i] = 1;
            one(point.value(&e))
        })
        .collect();
    let n = n_values.iter().cloned().map(one).collect();
    let g = gamma_values.iter().cloned().map(one).collect();
    FiniteModule::new(alg, theta, n, g)
}

fn simple_point(alg: &HeckeAlgebra, turns: Rational64, vexp: impl Fn(i64, i64) -> i64) -> Result<TorusPoint> {
    let d = alg.datum();
    let k = d.num_simple();
    let v: Vec<Rational64> = (0..k)
        .map(|s| {
            let l = alg.simple_labels(s);
            Rational64::from_integer(vexp(l.lambda, l.lambda_star))
        })
        .collect();
    d.point_with_simple_values(alg.ctx(), &vec![turns; k], &v)
}

/// The point with t(h) = −v^{−(λ−λ*)} for the unique simple root h.
pub fn st_minus_point(alg: &HeckeAlgebra) -> Result<TorusPoint> {
    let d = alg.datum();
    if d.num_simple() != 1 {
        return Err(Error::Precondition("St− needs exactly one simple root".into()));
    }
    let l = alg.simple_labels(0);
    if l.lambda == l.lambda_star {
        return Err(Error::Precondition("St− needs λ ≠ λ*".into()));
    }
    simple_point(alg, Rational64::new(1, 2), |a, b| -(a - b))
}

/// triv, St, det (when Γ carries a non-trivial determinant) and, in
/// semisimple rank one with λ ≠ λ*, St−.
pub fn one_dim_characters(alg: &HeckeAlgebra) -> Result<Vec<Character>> {
    let d = alg.datum();
    let ctx = alg.ctx();
    let gamma = d.gamma();
    let k = d.num_simple();
    let n_plus: Vec<VLaurent> = (0..k).map(|s| VLaurent::v_pow(ctx, alg.simple_labels(s).lambda)).collect();
    let n_minus: Vec<VLaurent> = (0..k).map(|s| -VLaurent::v_pow(ctx, -alg.simple_labels(s).lambda)).collect();
    let trivial_g = vec![VLaurent::one(ctx); gamma.len()];
    let det_g: Vec<VLaurent> = (0..gamma.len()).map(|g| VLaurent::from_int(ctx, gamma.det(g))).collect();
    let zero = Rational64::from_integer(0);
    let t_triv = simple_point(alg, zero, |a, b| a + b)?;
    let t_st = simple_point(alg, zero, |a, b| -(a + b))?;
    let mut out = vec![
        Character { name: "triv".into(), point: t_triv, n_values: n_plus, gamma_values: trivial_g.clone() },
        Character { name: "St".into(), point: t_st.clone(), n_values: n_minus.clone(), gamma_values: trivial_g },
    ];
    if det_g.iter().any(|c| !c.is_one()) {
        out.push(Character { name: "det".into(), point: t_st, n_values: n_minus.clone(), gamma_values: det_g.clone() });
    }
    if k == 1 && alg.simple_labels(0).lambda != alg.simple_labels(0).lambda_star {
        out.push(Character { name: "St-".into(), point: st_minus_point(alg)?, n_values: n_minus, gamma_values: det_g });
    }
    for c in &out {
        c.module(alg)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernstein_hecke::tests::{algebra, gl, sl2};
    use crate::label_calculus::Labels;
    use crate::root_datum::tests::a1xa1_swap;

    #[test]
    fn rank_one_characters() {
        for (l, eps) in [(Labels::new(1, 1), 0), (Labels::new(3, 1), 1), (Labels::new(2, 0), 0), (Labels::new(3, 1), 0)] {
            let h = sl2(l, eps);
            let chars = one_dim_characters(&h).unwrap();
            let names: Vec<_> = chars.iter().map(|c| c.name.as_str()).collect();
            let expect_minus = l.lambda != l.lambda_star;
            assert_eq!(names.contains(&"St-"), expect_minus, "{l}");
            for c in &chars {
                let m = c.module(&h).unwrap();
                assert_eq!(m.det_multiplicity(), usize::from(c.is_det_type(&h)), "{} {l}", c.name);
            }
        }
    }

    #[test]
    fn gl3_characters() {
        let chars = one_dim_characters(&gl(3)).unwrap();
        assert_eq!(chars.len(), 2);
        assert!(chars[1].module(&gl(3)).unwrap().weights_in_tempered_cone().unwrap());
        assert!(!chars[0].module(&gl(3)).unwrap().weights_in_tempered_cone().unwrap());
    }

    #[test]
    fn det_twist_with_diagram_automorphism() {
        let h = algebra(a1xa1_swap(), Labels::new(1, 1), 0);
        let chars = one_dim_characters(&h).unwrap();
        let det = chars.iter().find(|c| c.name == "det").unwrap();
        assert_eq!(det.module(&h).unwrap().det_multiplicity(), 1);
        let st = chars.iter().find(|c| c.name == "St").unwrap();
        assert_eq!(st.module(&h).unwrap().det_multiplicity(), 0);
    }
}
