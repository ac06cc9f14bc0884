//! Finite-dimensional modules: principal series, one-dimensional characters,
//! weights and central characters, det-multiplicity and decompositions.

mod characters;
mod decompose;
mod modp;
mod principal;
mod rank1;
mod weights;

use std::fmt;

pub use characters::{character_module, one_dim_characters, st_minus_point, Character};
pub use decompose::{Constituent, Decomposition};
pub use principal::principal_series_module;
pub use rank1::{rank1_classify, Rank1Row, Rank1Table};
pub use weights::{charpoly, value_group_roots};

use crate::bernstein_hecke::{HeckeAlgebra, HeckeElement};
use crate::error::{Error, Result};
use crate::exact_rings::{Ctx, Mat, TorusPoint, VLaurent, VRational};

/// Generator matrices for θ_{e_i}, N_s and J_γ (every γ ∈ Γ, identity first).
#[derive(Clone)]
pub struct FiniteModule {
    alg: HeckeAlgebra,
    dim: usize,
    theta: Vec<Mat>,
    theta_inv: Vec<Mat>,
    n: Vec<Mat>,
    gamma: Vec<Mat>,
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteModule").field("dim", &self.dim).finish()
    }
}

pub(crate) fn lift(c: &VLaurent) -> VRational {
    VRational::from(c.clone())
}

impl FiniteModule {
    /// Validates every defining relation of the algebra.
    pub fn new(alg: &HeckeAlgebra, theta: Vec<Mat>, n: Vec<Mat>, gamma: Vec<Mat>) -> Result<Self> {
        let m = Self::unchecked(alg, theta, n, gamma)?;
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn unchecked(alg: &HeckeAlgebra, theta: Vec<Mat>, n: Vec<Mat>, gamma: Vec<Mat>) -> Result<Self> {
        let d = alg.datum();
        if theta.len() != alg.rank() || n.len() != d.num_simple() || gamma.len() != d.gamma().len() {
            return Err(Error::Config("wrong number of generator matrices".into()));
        }
        let dim = theta.first().map(|m| m.rows()).unwrap_or(0);
        if theta.iter().chain(&n).chain(&gamma).any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Config("generator matrices have inconsistent sizes".into()));
        }
        let theta_inv = theta
            .iter()
            .map(|m| m.inverse().map_err(|_| Error::Relation("θ matrix is not invertible".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteModule { alg: alg.clone(), dim, theta, theta_inv, n, gamma })
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ctx(&self) -> Ctx {
        self.alg.ctx()
    }

    pub fn theta_matrices(&self) -> &[Mat] {
        &self.theta
    }

    pub fn n_matrices(&self) -> &[Mat] {
        &self.n
    }

    pub fn gamma_matrices(&self) -> &[Mat] {
        &self.gamma
    }

    /// All generator matrices: θ_{e_i}, N_s, J_γ.
    pub fn generators(&self) -> impl Iterator<Item = &Mat> {
        self.theta.iter().chain(&self.n).chain(&self.gamma)
    }

    fn identity(&self) -> Mat {
        Mat::identity(self.ctx(), self.dim)
    }

    pub fn theta_x(&self, x: &[i64]) -> Mat {
        let mut m = self.identity();
        for (i, &c) in x.iter().enumerate() {
            let g = if c >= 0 { &self.theta[i] } else { &self.theta_inv[i] };
            for _ in 0..c.unsigned_abs() {
                m = m.mul(g);
            }
        }
        m
    }

    pub fn n_w(&self, w: usize) -> Mat {
        let mut m = self.identity();
        for &s in self.alg.datum().weyl().word(w) {
            m = m.mul(&self.n[s]);
        }
        m
    }

    /// Matrix of an algebra element.
    pub fn act(&self, h: &HeckeElement) -> Result<Mat> {
        self.alg.ensure_same(h.algebra())?;
        let mut out = Mat::zeros(self.ctx(), self.dim, self.dim);
        for (k, c) in h.terms() {
            let m = self.theta_x(&k.x).mul(&self.n_w(k.w)).mul(&self.gamma[k.g]);
            out = out.add(&m.scale(&lift(c)));
        }
        Ok(out)
    }

    fn validate(&self) -> Result<()> {
        let alg = &self.alg;
        let d = alg.datum();
        let ctx = self.ctx();
        let fail = |what: String| Err(Error::Relation(what));
        for i in 0..self.theta.len() {
            for j in i + 1..self.theta.len() {
                if self.theta[i].mul(&self.theta[j]) != self.theta[j].mul(&self.theta[i]) {
                    return fail(format!("θ_{i} and θ_{j} do not commute"));
                }
            }
        }
        for s in 0..d.num_simple() {
            let l = alg.simple_labels(s);
            let a = self.n[s].sub(&self.identity().scale(&lift(&VLaurent::v_pow(ctx, l.lambda))));
            let b = self.n[s].add(&self.identity().scale(&lift(&VLaurent::v_pow(ctx, -l.lambda))));
            if !a.mul(&b).is_zero() {
                return fail(format!("quadratic relation fails for N_{s}"));
            }
            let refl = d.reflection(d.simple_root(s));
            for i in 0..alg.rank() {
                for sign in [1, -1] {
                    let mut x = vec![0; alg.rank()];
                    x[i] = sign;
                    let sx = refl.apply(&x);
                    let lhs = self.n[s].mul(&self.theta_x(&x)).sub(&self.theta_x(&sx).mul(&self.n[s]));
                    let mut rhs = Mat::zeros(ctx, self.dim, self.dim);
                    for (z, c) in alg.cross_terms(s, &x) {
                        rhs = rhs.add(&self.theta_x(&z).scale(&lift(&c)));
                    }
                    if lhs != rhs {
                        return fail(format!("cross relation fails for N_{s} and θ{x:?}"));
                    }
                }
            }
        }
        let wg = d.weyl();
        for s in 0..d.num_simple() {
            for t in s + 1..d.num_simple() {
                let st = wg.mul(wg.simple_index(s), wg.simple_index(t));
                let mut m = 1;
                let mut p = st;
                while p != 0 {
                    p = wg.mul(p, st);
                    m += 1;
                }
                let word = |a: usize, b: usize| {
                    (0..m).fold(self.identity(), |acc, k| acc.mul(&self.n[if k % 2 == 0 { a } else { b }]))
                };
                if word(s, t) != word(t, s) {
                    return fail(format!("braid relation fails for N_{s}, N_{t}"));
                }
            }
        }
        let gamma = d.gamma();
        if self.gamma[0] != self.identity() {
            return fail("J_1 is not the identity".into());
        }
        for g in 0..gamma.len() {
            for h in 0..gamma.len() {
                if self.gamma[g].mul(&self.gamma[h]) != self.gamma[gamma.mul(g, h)] {
                    return fail(format!("J_{g} J_{h} ≠ J_{}", gamma.mul(g, h)));
                }
            }
            for i in 0..alg.rank() {
                let mut x = vec![0; alg.rank()];
                x[i] = 1;
                let lhs = self.gamma[g].mul(&self.theta[i]);
                let rhs = self.theta_x(&gamma.matrix(g).apply(&x)).mul(&self.gamma[g]);
                if lhs != rhs {
                    return fail(format!("J_{g} θ_{i} J_{g}⁻¹ ≠ θ_(γe_{i})"));
                }
            }
            for s in 0..d.num_simple() {
                let t = d.gamma_perm(g)[s];
                if self.gamma[g].mul(&self.n[s]) != self.n[t].mul(&self.gamma[g]) {
                    return fail(format!("J_{g} N_{s} J_{g}⁻¹ ≠ N_{t}"));
                }
            }
        }
        Ok(())
    }

    /// dim{m : N_s m = −v^{−λ(s)} m ∀s, J_γ m = det(γ) m ∀γ}.
    pub fn det_multiplicity(&self) -> usize {
        let ctx = self.ctx();
        let d = self.alg.datum();
        let mut blocks = Vec::new();
        for s in 0..d.num_simple() {
            let c = lift(&VLaurent::v_pow(ctx, -self.alg.simple_labels(s).lambda));
            blocks.push(self.n[s].add(&self.identity().scale(&c)));
        }
        for g in 1..d.gamma().len() {
            let c = VRational::from_int(ctx, d.gamma().det(g));
            blocks.push(self.gamma[g].sub(&self.identity().scale(&c)));
        }
        if blocks.is_empty() {
            return self.dim;
        }
        self.dim - Mat::vstack(ctx, &blocks, self.dim).rank()
    }

    /// The module with θ_x acting by z(x)θ_x, over the algebra twisted by z.
    pub fn twist(&self, z: &TorusPoint) -> Result<FiniteModule> {
        let alg = self.alg.twisted(z)?;
        let theta = (0..self.theta.len())
            .map(|i| {
                let mut e = vec![0; self.theta.len()];
                e[i] = 1;
                self.theta[i].scale(&lift(&z.value(&e)))
            })
            .collect();
        FiniteModule::new(&alg, theta, self.n.clone(), self.gamma.clone())
    }

    /// Direct sum of two modules over the same algebra.
    pub fn direct_sum(&self, other: &FiniteModule) -> Result<FiniteModule> {
        self.alg.ensure_same(&other.alg)?;
        let ctx = self.ctx();
        let (a, b) = (self.dim, other.dim);
        let block = |x: &Mat, y: &Mat| {
            let mut m = Mat::zeros(ctx, a + b, a + b);
            for i in 0..a {
                for j in 0..a {
                    m.set(i, j, x.get(i, j).clone());
                }
            }
            for i in 0..b {
                for j in 0..b {
                    m.set(a + i, a + j, y.get(i, j).clone());
                }
            }
            m
        };
        let zip = |x: &[Mat], y: &[Mat]| x.iter().zip(y).map(|(p, q)| block(p, q)).collect::<Vec<_>>();
        FiniteModule::new(&self.alg, zip(&self.theta, &other.theta), zip(&self.n, &other.n), zip(&self.gamma, &other.gamma))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernstein_hecke::tests::sl2;
    use crate::label_calculus::Labels;

    #[test]
    fn broken_relations_are_rejected() {
        let h = sl2(Labels::new(1, 1), 0);
        let ctx = h.ctx();
        let one = Mat::identity(ctx, 1);
        let r = FiniteModule::new(&h, vec![one.clone()], vec![one.clone()], vec![one]);
        assert!(matches!(r, Err(Error::Relation(_))));
    }
}
