//! Extended affine Hecke algebras in the Bernstein presentation.
//!
//! Elements are finite sums Σ c·θ_x N_w J_γ with c ∈ F, stored in the
//! canonical order (x, w, γ). The defining relations are
//!
//! * (N_s − v^λ)(N_s + v^{−λ}) = 0 and the braid relations,
//! * N_s θ_x − θ_{s(x)} N_s = K_s·(θ_x − θ_{s(x)}), where
//!   K_s = (v^λ − v^{−λ})/(1 − θ_{−h}) if the coroot is not two-divisible and
//!   K_s = ((v^λ − v^{−λ}) + (v^{λ*} − v^{−λ*})θ_{−h})/(1 − θ_{−2h}) if it is,
//! * J_γ θ_x N_w J_γ⁻¹ = θ_{γx} N_{γwγ⁻¹} and J_γ J_δ = J_{γδ}.

mod comparison;
mod localized;
mod relations;
mod whittaker;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use serde_json::json;

pub use comparison::{comparison_iso, twist_by_character};
pub use localized::{from_localized, to_localized, LocalizedElement};
pub use relations::{verify_presentation, PresentationCheck, PresentationReport};
pub use whittaker::{whittaker_act, whittaker_action, whittaker_action_localized};

use crate::error::{Error, Result};
use crate::exact_rings::{lattice, Ctx, TorusFunction, TorusPoint, VLaurent};
use crate::label_calculus::{LabelFunction, Labels};
use crate::root_datum::{BasedRootDatum, GroupElement};

/// Per-simple-reflection data used by the rewriting rules.
#[derive(Clone, Debug)]
pub(crate) struct SimpleData {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
    pub two_div: bool,
    pub labels: Labels,
    pub eps: i64,
    /// v^λ − v^{−λ}
    pub a: VLaurent,
    /// v^{λ*} − v^{−λ*}
    pub b: VLaurent,
}

struct Inner {
    ctx: Ctx,
    datum: Arc<BasedRootDatum>,
    labels: LabelFunction,
    basepoint: TorusPoint,
    epsilon: Vec<u8>,
    simple: Vec<SimpleData>,
    /// finite[v][u] = N_v N_u as (w, coefficient) pairs.
    finite: OnceLock<Vec<Vec<Vec<(usize, VLaurent)>>>>,
    /// Localized images of N_w.
    localized_nw: OnceLock<Vec<LocalizedElement>>,
}

/// A handle to ℋ = ℋ° ⋊ Γ; cheap to clone.
#[derive(Clone)]
pub struct HeckeAlgebra {
    inner: Arc<Inner>,
}

impl fmt::Debug for HeckeAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HeckeAlgebra")
            .field("rank", &self.rank())
            .field("labels", &self.inner.labels.orbit_labels())
            .field("epsilon", &self.inner.epsilon)
            .field("basepoint", &self.inner.basepoint)
            .finish()
    }
}

impl HeckeAlgebra {
    /// `epsilon[s]` for each simple reflection; it must vanish off two-divisible
    /// coroots and be constant on W ⋊ Γ orbits.
    pub fn new(
        datum: Arc<BasedRootDatum>,
        labels: LabelFunction,
        basepoint: TorusPoint,
        epsilon: Vec<u8>,
    ) -> Result<Self> {
        let ctx = basepoint.ctx();
        if basepoint.rank() != datum.rank() {
            return Err(Error::Config("basepoint rank differs from lattice rank".into()));
        }
        if !datum.is_reflection_fixed(&basepoint) {
            return Err(Error::InvalidPoint(format!("basepoint {basepoint} is not fixed by the reflections")));
        }
        if epsilon.len() != datum.num_simple() {
            return Err(Error::Config(format!("expected {} epsilon values", datum.num_simple())));
        }
        let (_, orbit_of) = datum.root_orbits();
        for s in 0..datum.num_simple() {
            let i = datum.simple_root(s);
            if epsilon[s] > 1 {
                return Err(Error::Config("epsilon values must be 0 or 1".into()));
            }
            if epsilon[s] == 1 && !datum.is_coroot_two_divisible(i) {
                return Err(Error::Config(format!("epsilon set on root {:?} whose coroot is not two-divisible", datum.root(i))));
            }
            for t in 0..datum.num_simple() {
                if orbit_of[datum.simple_root(t)] == orbit_of[i] && epsilon[t] != epsilon[s] {
                    return Err(Error::Config("epsilon is not constant on W ⋊ Γ orbits".into()));
                }
            }
        }
        let simple = (0..datum.num_simple())
            .map(|s| {
                let i = datum.simple_root(s);
                let l = labels.get(i);
                SimpleData {
                    root: datum.root(i).to_vec(),
                    coroot: datum.coroot(i).to_vec(),
                    two_div: datum.is_coroot_two_divisible(i),
                    labels: l,
                    eps: epsilon[s] as i64,
                    a: VLaurent::v_diff(ctx, l.lambda),
                    b: VLaurent::v_diff(ctx, l.lambda_star),
                }
            })
            .collect();
        Ok(HeckeAlgebra {
            inner: Arc::new(Inner {
                ctx,
                datum,
                labels,
                basepoint,
                epsilon,
                simple,
                finite: OnceLock::new(),
                localized_nw: OnceLock::new(),
            }),
        })
    }

    pub fn ctx(&self) -> Ctx {
        self.inner.ctx
    }

    pub fn rank(&self) -> usize {
        self.inner.datum.rank()
    }

    pub fn datum(&self) -> &BasedRootDatum {
        &self.inner.datum
    }

    pub fn datum_arc(&self) -> Arc<BasedRootDatum> {
        self.inner.datum.clone()
    }

    pub fn labels(&self) -> &LabelFunction {
        &self.inner.labels
    }

    pub fn basepoint(&self) -> &TorusPoint {
        &self.inner.basepoint
    }

    pub fn epsilon(&self) -> &[u8] {
        &self.inner.epsilon
    }

    pub(crate) fn simple_data(&self, s: usize) -> &SimpleData {
        &self.inner.simple[s]
    }

    /// Labels of the s-th simple reflection.
    pub fn simple_labels(&self, s: usize) -> Labels {
        self.inner.simple[s].labels
    }

    /// The same algebra with another basepoint.
    pub(crate) fn with_basepoint(&self, basepoint: TorusPoint) -> Self {
        HeckeAlgebra {
            inner: Arc::new(Inner {
                ctx: self.inner.ctx,
                datum: self.inner.datum.clone(),
                labels: self.inner.labels.clone(),
                basepoint,
                epsilon: self.inner.epsilon.clone(),
                simple: self.inner.simple.clone(),
                finite: OnceLock::new(),
                localized_nw: OnceLock::new(),
            }),
        }
    }

    /// Same datum, labels, ε and basepoint.
    pub fn same_as(&self, other: &HeckeAlgebra) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        let (a, b) = (&self.inner, &other.inner);
        a.ctx == b.ctx
            && a.datum.roots() == b.datum.roots()
            && a.datum.coroots() == b.datum.coroots()
            && a.datum.simple() == b.datum.simple()
            && a.datum.gamma().matrices() == b.datum.gamma().matrices()
            && a.labels == b.labels
            && a.epsilon == b.epsilon
            && a.basepoint == b.basepoint
    }

    pub(crate) fn ensure_same(&self, other: &HeckeAlgebra) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::MixedAlgebras)
        }
    }

    pub fn zero(&self) -> HeckeElement {
        HeckeElement { alg: self.clone(), terms: BTreeMap::new() }
    }

    pub fn basis(&self, x: Vec<i64>, w: usize, g: usize) -> HeckeElement {
        let mut e = self.zero();
        e.add_term(BasisKey { x, w, g }, VLaurent::one(self.ctx()));
        e
    }

    pub fn one(&self) -> HeckeElement {
        self.basis(vec![0; self.rank()], 0, 0)
    }

    pub fn scalar(&self, c: VLaurent) -> HeckeElement {
        let mut e = self.zero();
        e.add_term(BasisKey { x: vec![0; self.rank()], w: 0, g: 0 }, c);
        e
    }

    pub fn theta(&self, x: Vec<i64>) -> HeckeElement {
        self.basis(x, 0, 0)
    }

    /// N_s for the s-th simple reflection.
    pub fn n_simple(&self, s: usize) -> HeckeElement {
        self.basis(vec![0; self.rank()], self.datum().weyl().simple_index(s), 0)
    }

    pub fn n_w(&self, w: usize) -> HeckeElement {
        self.basis(vec![0; self.rank()], w, 0)
    }

    pub fn j(&self, g: usize) -> HeckeElement {
        self.basis(vec![0; self.rank()], 0, g)
    }

    /// N_w J_γ for a group element.
    pub fn group_basis(&self, e: GroupElement) -> HeckeElement {
        self.basis(vec![0; self.rank()], e.w, e.g)
    }

    /// Σ c·θ_x for a Laurent polynomial on the torus.
    pub fn from_torus(&self, f: &TorusFunction) -> HeckeElement {
        let mut e = self.zero();
        for (x, c) in f.terms() {
            e.add_term(BasisKey { x: x.clone(), w: 0, g: 0 }, c.clone());
        }
        e
    }

    /// N_s N_w in the basis of the finite Hecke algebra.
    fn simple_times(&self, s: usize, w: usize) -> Vec<(usize, VLaurent)> {
        let wg = self.datum().weyl();
        let sw = wg.left_mul(s, w);
        if wg.length(sw) > wg.length(w) {
            vec![(sw, VLaurent::one(self.ctx()))]
        } else {
            vec![(sw, VLaurent::one(self.ctx())), (w, self.inner.simple[s].a.clone())]
        }
    }

    fn finite_table(&self) -> &Vec<Vec<Vec<(usize, VLaurent)>>> {
        self.inner.finite.get_or_init(|| {
            let wg = self.datum().weyl();
            let n = wg.len();
            let mut table: Vec<Vec<Vec<(usize, VLaurent)>>> = Vec::with_capacity(n);
            table.push((0..n).map(|u| vec![(u, VLaurent::one(self.ctx()))]).collect());
            for v in 1..n {
                // v = s·v' with ℓ(v') < ℓ(v); BFS order puts v' first.
                let s = wg.word(v)[0];
                let vp = wg.left_mul(s, v);
                let row = (0..n)
                    .map(|u| {
                        let mut acc: BTreeMap<usize, VLaurent> = BTreeMap::new();
                        for (w, c) in &table[vp][u] {
                            for (w2, d) in self.simple_times(s, *w) {
                                accumulate(&mut acc, w2, c * &d);
                            }
                        }
                        acc.into_iter().collect()
                    })
                    .collect();
                table.push(row);
            }
            table
        })
    }

    /// N_v N_u.
    pub(crate) fn finite_product(&self, v: usize, u: usize) -> &[(usize, VLaurent)] {
        &self.finite_table()[v][u]
    }

    /// Terms of K_s·(θ_z − θ_{s(z)}) as a Laurent polynomial.
    pub(crate) fn cross_terms(&self, s: usize, z: &[i64]) -> Vec<(Vec<i64>, VLaurent)> {
        let sd = &self.inner.simple[s];
        let n = lattice::dot(z, &sd.coroot);
        if n == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        if sd.two_div {
            let m = n / 2;
            let step = lattice::scale(&sd.root, 2);
            let geo = geometric(z, &step, m);
            let neg_h = lattice::neg(&sd.root);
            for (y, sign) in geo {
                out.push((y.clone(), sd.a.scale_int(sign)));
                out.push((lattice::add(&y, &neg_h), sd.b.scale_int(sign)));
            }
        } else {
            for (y, sign) in geometric(z, &sd.root, n) {
                out.push((y, sd.a.scale_int(sign)));
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out
    }

    /// N_w θ_y = Σ θ_z N_v, by pushing θ_y left through a reduced word of w.
    fn n_times_theta(&self, w: usize, y: &[i64]) -> BTreeMap<(Vec<i64>, usize), VLaurent> {
        let wg = self.datum().weyl();
        let mut state: BTreeMap<(Vec<i64>, usize), VLaurent> = BTreeMap::new();
        state.insert((y.to_vec(), 0), VLaurent::one(self.ctx()));
        for &s in wg.word(w).iter().rev() {
            let refl = self.datum().reflection(self.datum().simple_root(s));
            let mut next: BTreeMap<(Vec<i64>, usize), VLaurent> = BTreeMap::new();
            for ((z, v), c) in state {
                let sz = refl.apply(&z);
                for (v2, d) in self.simple_times(s, v) {
                    accumulate(&mut next, (sz.clone(), v2), &c * &d);
                }
                for (z2, k) in self.cross_terms(s, &z) {
                    accumulate(&mut next, (z2, v), &c * &k);
                }
            }
            state = next;
        }
        state
    }

    /// (θ_x N_w J_γ)(θ_y N_u J_δ) accumulated into `out` with coefficient c.
    fn mul_basis(&self, a: &BasisKey, b: &BasisKey, c: &VLaurent, out: &mut BTreeMap<BasisKey, VLaurent>) {
        let d = self.datum();
        let y = d.gamma().matrix(a.g).apply(&b.x);
        let u = d.conj(a.g, b.w);
        let g = d.gamma().mul(a.g, b.g);
        for ((z, v), e) in self.n_times_theta(a.w, &y) {
            let x = lattice::add(&a.x, &z);
            let ce = c * &e;
            for (w2, f) in self.finite_product(v, u) {
                accumulate(out, BasisKey { x: x.clone(), w: *w2, g }, &ce * f);
            }
        }
    }
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, VLaurent>, k: K, c: VLaurent) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get() + &c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// (θ_z − θ_{z − n·step})/(1 − θ_{−step}) as signed monomials.
fn geometric(z: &[i64], step: &[i64], n: i64) -> Vec<(Vec<i64>, i64)> {
    if n > 0 {
        (0..n).map(|j| (lattice::sub(z, &lattice::scale(step, j)), 1)).collect()
    } else {
        (1..=-n).map(|j| (lattice::add(z, &lattice::scale(step, j)), -1)).collect()
    }
}

/// Index of a basis element θ_x N_w J_γ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisKey {
    pub x: Vec<i64>,
    pub w: usize,
    pub g: usize,
}

#[derive(Clone)]
pub struct HeckeElement {
    alg: HeckeAlgebra,
    terms: BTreeMap<BasisKey, VLaurent>,
}

impl HeckeElement {
    pub fn algebra(&self) -> &HeckeAlgebra {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<BasisKey, VLaurent> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &BasisKey) -> VLaurent {
        self.terms.get(k).cloned().unwrap_or_else(|| VLaurent::zero(self.alg.ctx()))
    }

    pub fn add_term(&mut self, k: BasisKey, c: VLaurent) {
        accumulate(&mut self.terms, k, c);
    }

    pub fn scale(&self, c: &VLaurent) -> Self {
        let mut out = self.alg.zero();
        for (k, a) in &self.terms {
            out.add_term(k.clone(), a * c);
        }
        out
    }

    /// Checked product.
    pub fn multiply(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.alg.ensure_same(&other.alg)?;
        let mut out = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                self.alg.mul_basis(a, b, &(ca * cb), &mut out);
            }
        }
        Ok(HeckeElement { alg: self.alg.clone(), terms: out })
    }

    pub fn checked_add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.alg.ensure_same(&other.alg)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    /// Coefficients grouped by (w, γ) as Laurent polynomials in θ.
    pub fn by_group_element(&self) -> BTreeMap<(usize, usize), TorusFunction> {
        let (ctx, r) = (self.alg.ctx(), self.alg.rank());
        let mut out: BTreeMap<(usize, usize), TorusFunction> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry((k.w, k.g)).or_insert_with(|| TorusFunction::zero(ctx, r)).add_term(k.x.clone(), c.clone());
        }
        out
    }

    /// JSON list of [lattice vector, reduced word, γ index, coefficient].
    pub fn to_json(&self) -> serde_json::Value {
        let wg = self.alg.datum().weyl();
        serde_json::Value::Array(
            self.terms.iter().map(|(k, c)| json!([k.x, wg.word(k.w), k.g, c.to_string()])).collect(),
        )
    }
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_as(&other.alg) && self.terms == other.terms
    }
}

impl Eq for HeckeElement {}

impl<'a> Add<&'a HeckeElement> for &'a HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &'a HeckeElement) -> HeckeElement {
        self.checked_add(rhs).expect("elements of the same algebra")
    }
}

impl<'a> Sub<&'a HeckeElement> for &'a HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: &'a HeckeElement) -> HeckeElement {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a HeckeElement> for &'a HeckeElement {
    type Output = HeckeElement;
    fn mul(self, rhs: &'a HeckeElement) -> HeckeElement {
        self.multiply(rhs).expect("elements of the same algebra")
    }
}

impl Neg for &HeckeElement {
    type Output = HeckeElement;
    fn neg(self) -> HeckeElement {
        HeckeElement { alg: self.alg.clone(), terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let wg = self.alg.datum().weyl();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut s = format!("({c})");
                if k.x.iter().any(|&a| a != 0) {
                    s.push_str(&format!("*θ{:?}", k.x));
                }
                if k.w != 0 {
                    s.push_str(&format!("*N{:?}", wg.word(k.w)));
                }
                if k.g != 0 {
                    s.push_str(&format!("*J{}", k.g));
                }
                s
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::label_calculus::Labels;
    use crate::root_datum::BasedRootDatum;

    pub(crate) fn algebra(datum: BasedRootDatum, l: Labels, eps: u8) -> HeckeAlgebra {
        let labels = LabelFunction::uniform(&datum, l).unwrap();
        let n = datum.num_simple();
        let bp = TorusPoint::identity(Ctx::default(), datum.rank());
        let eps = (0..n).map(|s| if datum.is_coroot_two_divisible(datum.simple_root(s)) { eps } else { 0 }).collect();
        HeckeAlgebra::new(Arc::new(datum), labels, bp, eps).unwrap()
    }

    pub(crate) fn sl2(l: Labels, eps: u8) -> HeckeAlgebra {
        let d = BasedRootDatum::new(1, vec![vec![1], vec![-1]], vec![vec![2], vec![-2]], vec![0], vec![]).unwrap();
        algebra(d, l, eps)
    }

    pub(crate) fn gl(n: usize) -> HeckeAlgebra {
        let mut roots = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v[j] = -1;
                    roots.push(v);
                }
            }
        }
        let simple = (0..n - 1)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v[i + 1] = -1;
                roots.iter().position(|r| *r == v).unwrap()
            })
            .collect();
        let d = BasedRootDatum::new(n, roots.clone(), roots, simple, vec![]).unwrap();
        algebra(d, Labels::new(1, 1), 0)
    }

    #[test]
    fn quadratic_relation() {
        let h = sl2(Labels::new(1, 1), 0);
        let n = h.n_simple(0);
        let lhs = &n * &n;
        let rhs = &h.one() + &h.n_simple(0).scale(&VLaurent::v_diff(h.ctx(), 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn commuting_case() {
        let h = gl(2);
        let x = vec![1, 1];
        let lhs = &h.n_simple(0) * &h.theta(x.clone());
        let rhs = &h.theta(x) * &h.n_simple(0);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sl2_cross_relation() {
        let h = sl2(Labels::new(1, 1), 0);
        let ctx = h.ctx();
        let lhs = &(&h.n_simple(0) * &h.theta(vec![1])) - &(&h.theta(vec![-1]) * &h.n_simple(0));
        // (v − v⁻¹)(θ_α + 1)
        let c = VLaurent::v_diff(ctx, 1);
        let rhs = &h.theta(vec![1]).scale(&c) + &h.one().scale(&c);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn associativity_on_gl3() {
        let h = gl(3);
        let a = &h.theta(vec![1, 0, -1]) * &h.n_simple(0);
        let b = &h.n_simple(1) * &h.theta(vec![0, 2, 0]);
        let c = &h.n_simple(0) * &h.n_simple(1);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn mixed_algebras_are_rejected() {
        let a = sl2(Labels::new(1, 1), 0);
        let b = sl2(Labels::new(1, 0), 0);
        assert!(matches!(a.one().multiply(&b.one()), Err(Error::MixedAlgebras)));
    }
}
