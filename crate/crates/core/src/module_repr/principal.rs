//! Principal-series modules ℋ ⊗_𝒪 F_t.

use super::{lift, FiniteModule};
use crate::bernstein_hecke::{comparison_iso, HeckeAlgebra, HeckeElement};
use crate::error::{Error, Result};
use crate::exact_rings::{Mat, TorusPoint};

/// Basis b_{w,γ} = N_w J_γ ⊗ 1_t, indexed by w·|Γ| + γ.
///
/// A product g·N_w J_γ is brought into the form Σ c N_u J_δ θ_x through the
/// anti-involution ψ: ψ(g N_w J_γ) = J_{γ⁻¹} N_{w⁻¹} ψ(g) is expanded in the usual
/// order and each term θ_x N_u J_δ is read back as N_{δ⁻¹u⁻¹δ} J_{δ⁻¹} θ_x.
pub fn principal_series_module(alg: &HeckeAlgebra, t: &TorusPoint) -> Result<FiniteModule> {
    if t.rank() != alg.rank() || t.ctx() != alg.ctx() {
        return Err(Error::InvalidPoint(format!("{t} does not match the algebra")));
    }
    let d = alg.datum();
    let (wg, gamma) = (d.weyl(), d.gamma());
    let ng = gamma.len();
    let dim = wg.len() * ng;
    let ctx = alg.ctx();
    let column_action = |g: &HeckeElement| -> Result<Mat> {
        let psi_g = comparison_iso(g, alg)?;
        let mut m = Mat::zeros(ctx, dim, dim);
        for w in 0..wg.len() {
            for k in 0..ng {
                let left = &alg.j(gamma.inverse(k)) * &alg.n_w(wg.inverse(w));
                let p = &left * &psi_g;
                for (key, c) in p.terms() {
                    let dinv = gamma.inverse(key.g);
                    let u = d.conj(dinv, wg.inverse(key.w));
                    let (row, col) = (u * ng + dinv, w * ng + k);
                    let val = m.get(row, col) + &lift(&(c * &t.value(&key.x)));
                    m.set(row, col, val);
                }
            }
        }
        Ok(m)
    };
    let theta = (0..alg.rank())
        .map(|i| {
            let mut e = vec![0; alg.rank()];
            e[i] = 1;
            column_action(&alg.theta(e))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = (0..d.num_simple()).map(|s| column_action(&alg.n_simple(s))).collect::<Result<Vec<_>>>()?;
    let gm = (0..ng).map(|k| column_action(&alg.j(k))).collect::<Result<Vec<_>>>()?;
    FiniteModule::new(alg, theta, n, gm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernstein_hecke::tests::{algebra, sl2};
    use crate::exact_rings::Ctx;
    use crate::label_calculus::Labels;
    use crate::root_datum::tests::a1xa1_swap;

    #[test]
    fn sl2_generic_point() {
        let h = sl2(Labels::new(1, 1), 0);
        let t = TorusPoint::new(Ctx::default(), vec![1], vec![3]).unwrap();
        let m = principal_series_module(&h, &t).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.det_multiplicity(), 1);
        let w = m.weights().unwrap();
        let pts: Vec<_> = w.iter().map(|(p, _)| p.clone()).collect();
        assert!(pts.contains(&t) && pts.contains(&t.inv()));
    }

    #[test]
    fn swap_group_order() {
        let h = algebra(a1xa1_swap(), Labels::new(1, 1), 0);
        let m = principal_series_module(&h, &TorusPoint::identity(Ctx::default(), 2)).unwrap();
        assert_eq!(m.dim(), 8);
        assert_eq!(m.det_multiplicity(), 1);
    }

    #[test]
    fn finite_part_is_regular() {
        // N_w acts on b_{1} by b_w.
        let h = sl2(Labels::new(3, 1), 1);
        let t = TorusPoint::new(Ctx::default(), vec![0], vec![1]).unwrap();
        let m = principal_series_module(&h, &t).unwrap();
        let n = &m.n_matrices()[0];
        assert!(n.get(0, 0).is_zero());
        assert!(n.get(1, 0).is_one());
    }
}
