//! Based root data with a group Γ of diagram automorphisms.
//!
//! Roots h_α live in X = Z^r, coroots α^♯ in Y = Z^r with the standard
//! pairing. The reflection s_α acts on X by x ↦ x − ⟨x, α^♯⟩ h_α and a group
//! element g acts on torus points by (g·t)(x) = t(g⁻¹x).

mod isotropy;
mod weyl;

use std::collections::HashMap;

use num_rational::Rational64;

pub use isotropy::{isotropy_data, IsotropyData};
pub use weyl::{generate_weyl, GammaGroup, WeylElement, WeylGroup, MAX_GROUP_ORDER};

use crate::error::{Error, Result};
use crate::exact_rings::lattice::{self, IMat};
use crate::exact_rings::{Ctx, TorusPoint};

/// An element of W ⋊ Γ as (index in W, index in Γ), meaning w·γ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub w: usize,
    pub g: usize,
}

#[derive(Clone, Debug)]
pub struct BasedRootDatum {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    simple: Vec<usize>,
    reflections: Vec<IMat>,
    positive: Vec<bool>,
    /// Coordinates of each root in the simple-root basis.
    simple_coords: Vec<Vec<i64>>,
    weyl: WeylGroup,
    gamma: GammaGroup,
    /// Γ permutation of simple indices (positions in `simple`).
    gamma_perm: Vec<Vec<usize>>,
    /// conj[g][w] = γ w γ⁻¹.
    conj: Vec<Vec<usize>>,
}

impl BasedRootDatum {
    /// Validates the axioms and generates W and Γ.
    pub fn new(
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        simple: Vec<usize>,
        gamma_generators: Vec<IMat>,
    ) -> Result<Self> {
        if roots.len() != coroots.len() {
            return Err(Error::InvalidDatum("roots and coroots differ in number".into()));
        }
        if roots.iter().chain(&coroots).any(|v| v.len() != rank) {
            return Err(Error::InvalidDatum(format!("vector length differs from rank {rank}")));
        }
        for (i, (h, a)) in roots.iter().zip(&coroots).enumerate() {
            if lattice::dot(h, a) != 2 {
                return Err(Error::InvalidDatum(format!("⟨root_{i}, coroot_{i}⟩ = {} ≠ 2", lattice::dot(h, a))));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for h in &roots {
            if !seen.insert(h.clone()) {
                return Err(Error::InvalidDatum(format!("root {h:?} listed twice")));
            }
        }
        if simple.iter().any(|&i| i >= roots.len()) {
            return Err(Error::InvalidDatum("simple index out of range".into()));
        }
        let reflections: Vec<IMat> = roots.iter().zip(&coroots).map(|(h, a)| reflection_matrix(h, a)).collect();
        let index: HashMap<&Vec<i64>, usize> = roots.iter().enumerate().map(|(i, h)| (h, i)).collect();
        for (i, s) in reflections.iter().enumerate() {
            for (j, h) in roots.iter().enumerate() {
                let img = s.apply(h);
                let Some(&k) = index.get(&img) else {
                    return Err(Error::InvalidDatum(format!("s_{i} maps root {h:?} outside the root set")));
                };
                let cimg = reflect_coroot(&coroots[j], &roots[i], &coroots[i]);
                if cimg != coroots[k] {
                    return Err(Error::InvalidDatum(format!("s_{i} does not permute coroots compatibly")));
                }
            }
        }
        let simple_coords = simple_coordinates(&roots, &coroots, &simple)?;
        let positive: Vec<bool> = simple_coords.iter().map(|c| c.iter().all(|&x| x >= 0)).collect();
        for (i, c) in simple_coords.iter().enumerate() {
            if !(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0)) {
                return Err(Error::InvalidDatum(format!("root {:?} is neither positive nor negative", roots[i])));
            }
        }
        let simple_refl: Vec<IMat> = simple.iter().map(|&i| reflections[i].clone()).collect();
        let weyl = WeylGroup::generate(rank, &simple_refl)?;
        let gamma = GammaGroup::generate(rank, &gamma_generators)?;
        // Γ permutes simple roots and simple coroots compatibly.
        let mut gamma_perm = Vec::with_capacity(gamma.len());
        for (gi, m) in gamma.matrices().iter().enumerate() {
            let minv_t = gamma.inverse_matrix(gi).transpose();
            let mut perm = Vec::with_capacity(simple.len());
            for &i in &simple {
                let img = m.apply(&roots[i]);
                let Some(pos) = simple.iter().position(|&j| roots[j] == img) else {
                    return Err(Error::InvalidDatum(format!("Γ element {m:?} does not preserve the simple roots")));
                };
                if minv_t.apply(&coroots[i]) != coroots[simple[pos]] {
                    return Err(Error::InvalidDatum(format!("Γ element {m:?} does not preserve the simple coroots")));
                }
                perm.push(pos);
            }
            gamma_perm.push(perm);
        }
        for (gi, m) in gamma.matrices().iter().enumerate() {
            if gi != 0 && weyl.index_of(m).is_some() {
                return Err(Error::InvalidDatum(format!("Γ element {m:?} lies in W")));
            }
        }
        let conj = gamma
            .matrices()
            .iter()
            .enumerate()
            .map(|(gi, m)| {
                let minv = gamma.inverse_matrix(gi);
                (0..weyl.len())
                    .map(|w| {
                        let c = m.mul(weyl.matrix(w)).mul(minv);
                        weyl.index_of(&c).ok_or_else(|| Error::InvalidDatum("Γ does not normalize W".into()))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BasedRootDatum {
            rank,
            roots,
            coroots,
            simple,
            reflections,
            positive,
            simple_coords,
            weyl,
            gamma,
            gamma_perm,
            conj,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    /// Root indices of the simple roots.
    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn num_simple(&self) -> usize {
        self.simple.len()
    }

    /// Root index of the s-th simple reflection.
    pub fn simple_root(&self, s: usize) -> usize {
        self.simple[s]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| self.positive[i]).collect()
    }

    pub fn simple_coords(&self, i: usize) -> &[i64] {
        &self.simple_coords[i]
    }

    pub fn reflection(&self, i: usize) -> &IMat {
        &self.reflections[i]
    }

    pub fn root_index(&self, h: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == h)
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn gamma(&self) -> &GammaGroup {
        &self.gamma
    }

    /// Γ element g sends simple reflection s to simple reflection `gamma_perm(g)[s]`.
    pub fn gamma_perm(&self, g: usize) -> &[usize] {
        &self.gamma_perm[g]
    }

    /// γ w γ⁻¹.
    pub fn conj(&self, g: usize, w: usize) -> usize {
        self.conj[g][w]
    }

    /// ⟨x, α^♯⟩ for root index i.
    pub fn pairing(&self, x: &[i64], i: usize) -> i64 {
        lattice::dot(x, &self.coroots[i])
    }

    /// Whether the coroot lies in 2Y.
    pub fn is_coroot_two_divisible(&self, i: usize) -> bool {
        self.coroots[i].iter().all(|c| c % 2 == 0)
    }

    /// Order of W ⋊ Γ.
    pub fn group_order(&self) -> usize {
        self.weyl.len() * self.gamma.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.weyl.len()).flat_map(move |w| (0..self.gamma.len()).map(move |g| GroupElement { w, g }))
    }

    /// Matrix of w·γ.
    pub fn matrix(&self, e: GroupElement) -> IMat {
        self.weyl.matrix(e.w).mul(self.gamma.matrix(e.g))
    }

    /// Matrix of (w·γ)⁻¹ = γ⁻¹ w⁻¹.
    pub fn inverse_matrix(&self, e: GroupElement) -> IMat {
        self.gamma.inverse_matrix(e.g).mul(self.weyl.inverse_matrix(e.w))
    }

    /// (wγ)(w'γ') = w·(γw'γ⁻¹)·γγ'.
    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let w2 = self.conj(a.g, b.w);
        GroupElement { w: self.weyl.mul(a.w, w2), g: self.gamma.mul(a.g, b.g) }
    }

    pub fn inverse(&self, a: GroupElement) -> GroupElement {
        let ginv = self.gamma.inverse(a.g);
        GroupElement { w: self.conj(ginv, self.weyl.inverse(a.w)), g: ginv }
    }

    /// det of the action on X ⊗ R.
    pub fn det_character(&self, e: GroupElement) -> i64 {
        self.weyl.det(e.w) * self.gamma.det(e.g)
    }

    /// (g·t)(x) = t(g⁻¹x).
    pub fn act_on_point(&self, e: GroupElement, t: &TorusPoint) -> TorusPoint {
        t.act_by_inverse(&self.inverse_matrix(e))
    }

    /// Orbit of t under W ⋊ Γ, sorted and deduplicated.
    pub fn point_orbit(&self, t: &TorusPoint) -> Vec<TorusPoint> {
        let mut pts: Vec<TorusPoint> = self.elements().map(|e| self.act_on_point(e, t)).collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// Index of the root g(h_i).
    pub fn act_on_root(&self, e: GroupElement, i: usize) -> usize {
        let img = self.matrix(e).apply(&self.roots[i]);
        self.root_index(&img).expect("group permutes roots")
    }

    /// W ⋊ Γ orbits on roots, listed by smallest member; `orbit_of[i]` indexes the list.
    pub fn root_orbits(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let n = self.roots.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = self.elements().map(|e| self.act_on_root(e, i)).collect();
            members.sort();
            members.dedup();
            for &j in &members {
                orbit_of[j] = orbits.len();
            }
            orbits.push(members);
        }
        (orbits, orbit_of)
    }

    /// Coefficients c_t with ⟨h_s, Σ_t c_t α^♯_t⟩ = pairings[s] for each simple s.
    pub fn coroot_coefficients(&self, pairings: &[Rational64]) -> Vec<Rational64> {
        let k = self.num_simple();
        let c: Vec<Vec<Rational64>> = (0..k)
            .map(|s| (0..k).map(|t| Rational64::from_integer(self.pairing(self.root(self.simple[s]), self.simple[t]))).collect())
            .collect();
        let inv = invert_rational(c).expect("simple roots are independent");
        (0..k).map(|t| (0..k).map(|s| inv[t][s] * pairings[s]).sum()).collect()
    }

    /// σ ∈ span_Q(simple coroots) with ⟨h_s, σ⟩ = pairings[s] for each simple s.
    pub fn coroot_point(&self, pairings: &[Rational64]) -> Vec<Rational64> {
        let coeffs = self.coroot_coefficients(pairings);
        (0..self.rank)
            .map(|j| coeffs.iter().enumerate().map(|(t, c)| c * Rational64::from_integer(self.coroots[self.simple[t]][j])).sum())
            .collect()
    }

    /// The point t with t(h_s) = exp(2πi·turns[s])·v^{vexp[s]} on simple roots and
    /// trivial on the annihilator of the simple coroots.
    pub fn point_with_simple_values(&self, ctx: Ctx, turns: &[Rational64], vexp: &[Rational64]) -> Result<TorusPoint> {
        let scale = |sigma: Vec<Rational64>, unit: i64, what: &str| {
            sigma
                .iter()
                .map(|c| {
                    let k = c * Rational64::from_integer(unit);
                    k.is_integer()
                        .then(|| k.to_integer())
                        .ok_or_else(|| Error::InvalidPoint(format!("{what} exponent {c} is not a multiple of 1/{unit}")))
                })
                .collect::<Result<Vec<i64>>>()
        };
        let zeta = scale(self.coroot_point(turns), ctx.order as i64, "ζ")?;
        let v = scale(self.coroot_point(vexp), ctx.denom as i64, "v")?;
        TorusPoint::new(ctx, zeta, v)
    }

    /// Whether t is fixed by every reflection.
    pub fn is_reflection_fixed(&self, t: &TorusPoint) -> bool {
        (0..self.roots.len()).all(|i| t.act_by_inverse(&self.reflections[i]) == *t)
    }

    pub fn is_group_fixed(&self, t: &TorusPoint) -> bool {
        self.elements().all(|e| self.act_on_point(e, t) == *t)
    }
}

/// x ↦ x − ⟨x, a⟩h as a matrix.
pub fn reflection_matrix(h: &[i64], a: &[i64]) -> IMat {
    let r = h.len();
    let rows: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| (i == j) as i64 - h[i] * a[j]).collect()).collect();
    IMat::from_rows(&rows).expect("square")
}

/// y ↦ y − ⟨h, y⟩a, the dual reflection on Y.
fn reflect_coroot(y: &[i64], h: &[i64], a: &[i64]) -> Vec<i64> {
    let c = lattice::dot(h, y);
    lattice::sub(y, &lattice::scale(a, c))
}

/// Solves root = Σ c_i simple_i via the Cartan matrix and checks integrality.
fn simple_coordinates(roots: &[Vec<i64>], coroots: &[Vec<i64>], simple: &[usize]) -> Result<Vec<Vec<i64>>> {
    let k = simple.len();
    // C[i][j] = ⟨simple_i, simple coroot_j⟩
    let c: Vec<Vec<Rational64>> = (0..k)
        .map(|i| (0..k).map(|j| Rational64::from_integer(lattice::dot(&roots[simple[i]], &coroots[simple[j]]))).collect())
        .collect();
    let inv = invert_rational(c).ok_or_else(|| Error::InvalidDatum("simple roots are linearly dependent".into()))?;
    let mut out = Vec::with_capacity(roots.len());
    for h in roots {
        // b_j = ⟨h, simple coroot_j⟩ = Σ_i c_i C[i][j]  ⇒  c = b C⁻¹
        let b: Vec<Rational64> = simple.iter().map(|&j| Rational64::from_integer(lattice::dot(h, &coroots[j]))).collect();
        let coeffs: Vec<Rational64> = (0..k).map(|j| (0..k).map(|i| b[i] * inv[i][j]).sum()).collect();
        if coeffs.iter().any(|x| !x.is_integer()) {
            return Err(Error::InvalidDatum(format!("root {h:?} is not an integral combination of simple roots")));
        }
        let ints: Vec<i64> = coeffs.iter().map(|x| x.to_integer()).collect();
        let mut recon = vec![0i64; h.len()];
        for (i, &ci) in ints.iter().enumerate() {
            recon = lattice::add(&recon, &lattice::scale(&roots[simple[i]], ci));
        }
        if recon != *h {
            return Err(Error::InvalidDatum(format!("root {h:?} is not in the span of the simple roots")));
        }
        out.push(ints);
    }
    Ok(out)
}

/// Inverse of a square rational matrix, if it is invertible.
pub(crate) fn invert_rational(mut c: Vec<Vec<Rational64>>) -> Option<Vec<Vec<Rational64>>> {
    let k = c.len();
    let zero = Rational64::from_integer(0);
    let mut inv: Vec<Vec<Rational64>> =
        (0..k).map(|i| (0..k).map(|j| Rational64::from_integer((i == j) as i64)).collect()).collect();
    for col in 0..k {
        let p = (col..k).find(|&r| c[r][col] != zero)?;
        c.swap(col, p);
        inv.swap(col, p);
        let piv = c[col][col];
        for j in 0..k {
            c[col][j] /= piv;
            inv[col][j] /= piv;
        }
        for r in 0..k {
            if r != col && c[r][col] != zero {
                let f = c[r][col];
                for j in 0..k {
                    let (a, b) = (c[col][j], inv[col][j]);
                    c[r][j] -= f * a;
                    inv[r][j] -= f * b;
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn a1_sl2() -> BasedRootDatum {
        BasedRootDatum::new(1, vec![vec![1], vec![-1]], vec![vec![2], vec![-2]], vec![0], vec![]).unwrap()
    }

    pub(crate) fn gl3() -> BasedRootDatum {
        let mut roots = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let mut v = vec![0; 3];
                    v[i] = 1;
                    v[j] = -1;
                    roots.push(v);
                }
            }
        }
        let simple = vec![
            roots.iter().position(|r| *r == vec![1, -1, 0]).unwrap(),
            roots.iter().position(|r| *r == vec![0, 1, -1]).unwrap(),
        ];
        BasedRootDatum::new(3, roots.clone(), roots, simple, vec![]).unwrap()
    }

    pub(crate) fn a1xa1_swap() -> BasedRootDatum {
        let roots = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]];
        let coroots = roots.iter().map(|r| lattice::scale(r, 2)).collect();
        let swap = IMat::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        BasedRootDatum::new(2, roots, coroots, vec![0, 2], vec![swap]).unwrap()
    }

    pub(crate) fn g2() -> BasedRootDatum {
        // X = root lattice in the basis (a short, b long); (a,a) = 2, (b,b) = 6, (a,b) = -3.
        let pos: Vec<Vec<i64>> = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1], vec![3, 2]];
        let form = |x: &[i64], y: &[i64]| 2 * x[0] * y[0] - 3 * (x[0] * y[1] + x[1] * y[0]) + 6 * x[1] * y[1];
        let coroot_of = |v: &Vec<i64>| -> Vec<i64> {
            let nb = form(v, v);
            [[1, 0], [0, 1]].iter().map(|s| 2 * form(s, v) / nb).collect()
        };
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|v| lattice::neg(v)));
        let coroots = roots.iter().map(coroot_of).collect();
        BasedRootDatum::new(2, roots, coroots, vec![0, 1], vec![]).unwrap()
    }

    #[test]
    fn weyl_group_orders() {
        assert_eq!(a1_sl2().weyl().len(), 2);
        assert_eq!(gl3().weyl().len(), 6);
        let d = a1xa1_swap();
        assert_eq!(d.group_order(), 8);
        assert_eq!(g2().weyl().len(), 12);
    }

    #[test]
    fn det_character_values() {
        let d = gl3();
        assert_eq!(d.det_character(GroupElement { w: 0, g: 0 }), 1);
        for s in 0..2 {
            let w = d.weyl().simple_index(s);
            assert_eq!(d.det_character(GroupElement { w, g: 0 }), -1);
        }
        let sw = a1xa1_swap();
        assert_eq!(sw.det_character(GroupElement { w: 0, g: 1 }), -1);
    }

    #[test]
    fn det_is_sign_of_length() {
        for d in [gl3(), a1xa1_swap(), g2()] {
            for w in 0..d.weyl().len() {
                let sign = if d.weyl().length(w) % 2 == 0 { 1 } else { -1 };
                assert_eq!(d.weyl().det(w), sign);
            }
        }
    }

    #[test]
    fn two_divisibility() {
        assert!(a1_sl2().is_coroot_two_divisible(0));
        let d = gl3();
        assert!((0..6).all(|i| !d.is_coroot_two_divisible(i)));
    }

    #[test]
    fn rejects_bad_pairing() {
        let e = BasedRootDatum::new(1, vec![vec![1], vec![-1]], vec![vec![1], vec![-1]], vec![0], vec![]);
        assert!(matches!(e, Err(Error::InvalidDatum(_))));
    }
}
