//! 𝒪-weights and central characters of finite modules.
//!
//! Eigenvalues are located in the value group {ζ^a v^{k/D}}: the lower Newton
//! polygon of the characteristic polynomial in v^{1/D} fixes k, then every a
//! is tried.

use num_rational::Rational64;

use super::{lift, FiniteModule};
use crate::error::{Error, Result};
use crate::exact_rings::{Ctx, Mat, TorusPoint, VLaurent, VRational};

/// Characteristic polynomial det(X − A), coefficients from X⁰ upwards
/// (Faddeev–LeVerrier).
pub fn charpoly(a: &Mat) -> Vec<VRational> {
    let n = a.rows();
    let ctx = a.ctx();
    let mut coeffs = vec![VRational::zero(ctx); n + 1];
    coeffs[n] = VRational::one(ctx);
    let mut m = Mat::zeros(ctx, n, n);
    for k in 1..=n {
        m = a.mul(&m).add(&Mat::scalar(ctx, n, &coeffs[n + 1 - k]));
        let am = a.mul(&m);
        let mut tr = VRational::zero(ctx);
        for i in 0..n {
            tr = &tr + am.get(i, i);
        }
        let inv_k = VRational::new(VLaurent::one(ctx), VLaurent::from_int(ctx, k as i64)).expect("k > 0");
        coeffs[n - k] = -&(&tr * &inv_k);
    }
    coeffs
}

fn order(c: &VRational) -> i64 {
    c.num().min_exp().unwrap_or(0) - c.den().min_exp().unwrap_or(0)
}

fn eval(p: &[VRational], r: &VRational) -> VRational {
    let mut acc = VRational::zero(r.ctx());
    for c in p.iter().rev() {
        acc = &(&acc * r) + c;
    }
    acc
}

/// p / (X − r), assuming r is a root.
fn deflate(p: &[VRational], r: &VRational) -> Vec<VRational> {
    let n = p.len() - 1;
    let mut q = vec![VRational::zero(r.ctx()); n];
    let mut carry = VRational::zero(r.ctx());
    for i in (0..n).rev() {
        carry = &p[i + 1] + &(&carry * r);
        q[i] = carry.clone();
    }
    q
}

/// Roots ζ^a v^{k/D} of p with multiplicities, as (a, k, m).
pub fn value_group_roots(ctx: Ctx, p: &[VRational]) -> Vec<(i64, i64, usize)> {
    let mut p: Vec<VRational> = p.to_vec();
    let mut out = Vec::new();
    // roots at zero are not units and never occur for invertible matrices
    let pts: Vec<(i64, i64)> =
        p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j as i64, order(c))).collect();
    let mut slopes: Vec<i64> = Vec::new();
    // lower convex hull
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &q in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            if (b.1 - a.1) * (q.0 - a.0) >= (q.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    for w in hull.windows(2) {
        let (dy, dx) = (w[1].1 - w[0].1, w[1].0 - w[0].0);
        if dy % dx == 0 {
            slopes.push(-dy / dx);
        }
    }
    slopes.sort();
    slopes.dedup();
    for k in slopes {
        for a in 0..ctx.order as i64 {
            let r = VRational::from(VLaurent::zeta_v(ctx, a, k));
            let mut m = 0;
            while p.len() > 1 && eval(&p, &r).is_zero() {
                p = deflate(&p, &r);
                m += 1;
            }
            if m > 0 {
                out.push((a, k, m));
            }
        }
    }
    out
}

impl FiniteModule {
    /// Joint generalized eigenvalues of the θ_{e_i} with multiplicities.
    pub fn weights(&self) -> Result<Vec<(TorusPoint, usize)>> {
        let ctx = self.ctx();
        let n = self.dim;
        let r = self.theta.len();
        let mut per_coord: Vec<Vec<(i64, i64)>> = Vec::with_capacity(r);
        for (i, m) in self.theta.iter().enumerate() {
            let roots = value_group_roots(ctx, &charpoly(m));
            if roots.iter().map(|x| x.2).sum::<usize>() != n {
                return Err(Error::Unsupported(format!("eigenvalues of θ_{i} leave the value group ζ^a v^(k/D)")));
            }
            per_coord.push(roots.into_iter().map(|(a, k, _)| (a, k)).collect());
        }
        // refine the generalized eigenspace decomposition coordinate by coordinate
        let mut spaces: Vec<(Vec<(i64, i64)>, Mat)> = vec![(Vec::new(), Mat::identity(ctx, n))];
        for (i, cands) in per_coord.iter().enumerate() {
            let mut next = Vec::new();
            for (vals, basis) in &spaces {
                for &(a, k) in cands {
                    let shifted = self.theta[i].sub(&Mat::scalar(ctx, n, &lift(&VLaurent::zeta_v(ctx, a, k))));
                    let mut p = Mat::identity(ctx, n);
                    for _ in 0..n {
                        p = p.mul(&shifted);
                    }
                    // kernel of p restricted to the column span of `basis`
                    let restricted = p.mul(basis);
                    let kernel = restricted.nullspace();
                    if kernel.is_empty() {
                        continue;
                    }
                    let coeffs = Mat::from_rows(ctx, kernel)?.transpose();
                    let sub = basis.mul(&coeffs);
                    let mut v = vals.clone();
                    v.push((a, k));
                    next.push((v, sub));
                }
            }
            spaces = next;
        }
        let mut out = Vec::new();
        for (vals, basis) in spaces {
            let zeta = vals.iter().map(|x| x.0).collect();
            let vexp = vals.iter().map(|x| x.1).collect();
            out.push((TorusPoint::new(ctx, zeta, vexp)?, basis.cols()));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// The W ⋊ Γ-orbit containing every weight.
    pub fn central_character(&self) -> Result<Vec<TorusPoint>> {
        let d = self.alg.datum();
        let weights = self.weights()?;
        let mut blocks: Vec<Vec<TorusPoint>> = Vec::new();
        for (w, _) in &weights {
            if !blocks.iter().any(|b| b.contains(w)) {
                blocks.push(d.point_orbit(w));
            }
        }
        match blocks.len() {
            1 => Ok(blocks.pop().expect("one block")),
            0 => Err(Error::Precondition("zero module has no central character".into())),
            _ => Err(Error::MultipleCentralCharacters(
                blocks.iter().map(|b| format!("{{{}}}", b[0])).collect::<Vec<_>>().join(", "),
            )),
        }
    }

    pub fn all_weights_unitary(&self) -> Result<bool> {
        Ok(self.weights()?.iter().all(|(w, _)| w.is_unitary()))
    }

    /// Casselman-type test: every weight has real part −Σ c_s α^♯_s with c_s ≥ 0.
    pub fn weights_in_tempered_cone(&self) -> Result<bool> {
        let d = self.alg.datum();
        let denom = Rational64::from_integer(self.ctx().denom as i64);
        for (w, _) in self.weights()? {
            let b: Vec<Rational64> = w.v_exponents().iter().map(|&k| Rational64::from_integer(k) / denom).collect();
            let pairings: Vec<Rational64> = (0..d.num_simple())
                .map(|s| {
                    let h = d.root(d.simple_root(s));
                    h.iter().zip(&b).map(|(&x, y)| Rational64::from_integer(x) * y).sum()
                })
                .collect();
            if d.coroot_point(&pairings) != b {
                return Ok(false);
            }
            if d.coroot_coefficients(&pairings).iter().any(|c| *c > Rational64::from_integer(0)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_diagonal() {
        let ctx = Ctx::default();
        let mut m = Mat::zeros(ctx, 2, 2);
        m.set(0, 0, VRational::from(VLaurent::v_pow(ctx, 2)));
        m.set(1, 1, VRational::from(VLaurent::zeta_v(ctx, 6, -4)));
        let p = charpoly(&m);
        let roots = value_group_roots(ctx, &p);
        assert_eq!(roots, vec![(6, -4, 1), (0, 4, 1)]);
    }

    #[test]
    fn repeated_root() {
        let ctx = Ctx::default();
        let mut m = Mat::scalar(ctx, 3, &VRational::from(VLaurent::v_pow(ctx, -1)));
        m.set(0, 1, VRational::one(ctx));
        assert_eq!(value_group_roots(ctx, &charpoly(&m)), vec![(0, -2, 3)]);
    }
}
