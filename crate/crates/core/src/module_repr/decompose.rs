//! Composition series by invariant-subspace search.
//!
//! Candidate submodules are cyclic spans of eigenvectors of single generators
//! and of joint θ-eigenvectors, searched in the module and in its dual. A
//! constituent is certified irreducible when its generators span the full
//! matrix algebra, checked first modulo a prime and then exactly.

use super::{lift, modp, weights, FiniteModule};
use crate::error::Result;
use crate::exact_rings::{Ctx, Mat, VLaurent, VRational};

/// Row echelon basis with unit pivots; insertion order is reduction order.
struct Echelon {
    rows: Vec<(usize, Vec<VRational>)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn reduce(&self, mut v: Vec<VRational>) -> Vec<VRational> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        v
    }

    /// Adds v if it is independent of the current rows.
    fn insert(&mut self, v: Vec<VRational>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("non-zero pivot");
        let v = v.iter().map(|x| x * &inv).collect();
        self.rows.push((p, v));
        true
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    fn vectors(&self) -> Vec<Vec<VRational>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

/// The smallest subspace containing `seed` and stable under `gens`.
fn invariant_span(gens: &[Mat], seed: &[Vec<VRational>]) -> Vec<Vec<VRational>> {
    let mut ech = Echelon::new();
    let mut queue: Vec<Vec<VRational>> = Vec::new();
    for v in seed {
        if ech.insert(v.clone()) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for g in gens {
            let w = g.apply(&v);
            if ech.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    ech.vectors()
}

fn block(m: &Mat, r: std::ops::Range<usize>, c: std::ops::Range<usize>) -> Mat {
    let mut out = Mat::zeros(m.ctx(), r.len(), c.len());
    for (i, ri) in r.clone().enumerate() {
        for (j, cj) in c.clone().enumerate() {
            out.set(i, j, m.get(ri, cj).clone());
        }
    }
    out
}

fn unit(ctx: Ctx, n: usize, j: usize) -> Vec<VRational> {
    (0..n).map(|i| if i == j { VRational::one(ctx) } else { VRational::zero(ctx) }).collect()
}

/// A composition factor.
#[derive(Clone, Debug)]
pub struct Constituent {
    pub module: FiniteModule,
    /// Generators span the full matrix algebra (absolutely irreducible).
    pub certified: bool,
}

/// Composition factors listed from the bottom of the series upwards.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub constituents: Vec<Constituent>,
    /// Every constituent is certified.
    pub complete: bool,
}

impl Decomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.constituents.iter().map(|c| c.module.dim()).collect()
    }
}

impl FiniteModule {
    fn generator_list(&self) -> Vec<Mat> {
        self.generators().cloned().collect()
    }

    /// Submodule spanned by `basis` (assumed invariant) and the quotient by it.
    pub fn split(&self, basis: &[Vec<VRational>]) -> Result<(FiniteModule, FiniteModule)> {
        let ctx = self.ctx();
        let n = self.dim;
        let mut ech = Echelon::new();
        let mut cols: Vec<Vec<VRational>> = Vec::new();
        for v in basis {
            if ech.insert(v.clone()) {
                cols.push(v.clone());
            }
        }
        let k = cols.len();
        for j in 0..n {
            let e = unit(ctx, n, j);
            if ech.insert(e.clone()) {
                cols.push(e);
            }
        }
        let p = Mat::from_rows(ctx, cols)?.transpose();
        let q = p.inverse()?;
        let conj = |ms: &[Mat], r: std::ops::Range<usize>| -> Vec<Mat> {
            ms.iter().map(|m| block(&q.mul(m).mul(&p), r.clone(), r.clone())).collect()
        };
        let sub = FiniteModule::unchecked(&self.alg, conj(&self.theta, 0..k), conj(&self.n, 0..k), conj(&self.gamma, 0..k))?;
        let quo = FiniteModule::unchecked(&self.alg, conj(&self.theta, k..n), conj(&self.n, k..n), conj(&self.gamma, k..n))?;
        Ok((sub, quo))
    }

    /// Whether the generators span End(V).
    pub fn is_absolutely_irreducible(&self) -> bool {
        let n = self.dim;
        if n <= 1 {
            return n == 1;
        }
        let gens = self.generator_list();
        if modp::certifies_full_span(&gens) {
            return true;
        }
        let flat = |m: &Mat| -> Vec<VRational> { (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| m.get(i, j).clone()).collect() };
        let mut ech = Echelon::new();
        let id = Mat::identity(self.ctx(), n);
        ech.insert(flat(&id));
        let mut queue = vec![id];
        while let Some(a) = queue.pop() {
            for g in &gens {
                let b = g.mul(&a);
                if ech.insert(flat(&b)) {
                    if ech.len() == n * n {
                        return true;
                    }
                    queue.push(b);
                }
            }
        }
        false
    }

    /// Eigenvectors of single generators and joint θ-weight vectors.
    fn candidate_vectors(gens: &[Mat], theta: &[Mat]) -> Vec<Vec<VRational>> {
        let mut out = Vec::new();
        let Some(first) = gens.first() else {
            return out;
        };
        let (ctx, n) = (first.ctx(), first.rows());
        let eig = |m: &Mat| -> Vec<(i64, i64)> {
            weights::value_group_roots(ctx, &weights::charpoly(m)).into_iter().map(|(a, k, _)| (a, k)).collect()
        };
        for g in gens {
            for (a, k) in eig(g) {
                let c = lift(&VLaurent::zeta_v(ctx, a, k));
                out.extend(g.sub(&Mat::scalar(ctx, n, &c)).nullspace());
            }
        }
        // joint eigenvectors of the θ's
        let mut joint: Vec<Vec<Mat>> = vec![Vec::new()];
        for m in theta {
            let roots = eig(m);
            let mut next = Vec::new();
            for blocks in &joint {
                for &(a, k) in &roots {
                    let mut b = blocks.clone();
                    b.push(m.sub(&Mat::scalar(ctx, n, &lift(&VLaurent::zeta_v(ctx, a, k)))));
                    if Mat::vstack(ctx, &b, n).rank() < n {
                        next.push(b);
                    }
                }
            }
            joint = next;
        }
        for b in joint {
            if !b.is_empty() {
                out.extend(Mat::vstack(ctx, &b, n).nullspace());
            }
        }
        out
    }

    /// A proper non-zero submodule, if the search finds one.
    pub fn find_submodule(&self) -> Option<Vec<Vec<VRational>>> {
        let n = self.dim;
        if n <= 1 {
            return None;
        }
        let gens = self.generator_list();
        for v in Self::candidate_vectors(&gens, &self.theta) {
            let span = invariant_span(&gens, &[v]);
            if span.len() < n {
                return Some(span);
            }
        }
        // dual module: an invariant U of the transposes gives the submodule U^⊥
        let tgens: Vec<Mat> = gens.iter().map(|m| m.transpose()).collect();
        let ttheta: Vec<Mat> = self.theta.iter().map(|m| m.transpose()).collect();
        for v in Self::candidate_vectors(&tgens, &ttheta) {
            let span = invariant_span(&tgens, &[v]);
            if span.len() < n {
                let perp = Mat::from_rows(self.ctx(), span).ok()?.nullspace();
                return Some(perp);
            }
        }
        None
    }

    /// Composition factors, bottom first.
    pub fn decompose(&self) -> Result<Decomposition> {
        let mut constituents = Vec::new();
        self.decompose_into(&mut constituents)?;
        let complete = constituents.iter().all(|c: &Constituent| c.certified);
        Ok(Decomposition { constituents, complete })
    }

    fn decompose_into(&self, out: &mut Vec<Constituent>) -> Result<()> {
        if self.dim == 0 {
            return Ok(());
        }
        if self.dim == 1 || modp::certifies_full_span(&self.generator_list()) {
            out.push(Constituent { module: self.clone(), certified: true });
            return Ok(());
        }
        match self.find_submodule() {
            Some(basis) => {
                let (sub, quo) = self.split(&basis)?;
                sub.decompose_into(out)?;
                quo.decompose_into(out)
            }
            None => {
                out.push(Constituent { module: self.clone(), certified: self.is_absolutely_irreducible() });
                Ok(())
            }
        }
    }

    /// Whether two of the candidate cyclic submodules are complementary.
    pub fn splits_as_direct_sum(&self) -> Result<bool> {
        let gens = self.generator_list();
        let mut spans: Vec<Vec<Vec<VRational>>> = Vec::new();
        for v in Self::candidate_vectors(&gens, &self.theta) {
            let span = invariant_span(&gens, &[v]);
            if span.len() < self.dim && !spans.contains(&span) {
                spans.push(span);
            }
        }
        for (i, a) in spans.iter().enumerate() {
            for b in &spans[i + 1..] {
                if a.len() + b.len() != self.dim {
                    continue;
                }
                let all: Vec<_> = a.iter().chain(b).cloned().collect();
                if Mat::from_rows(self.ctx(), all)?.rank() == self.dim {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::super::principal_series_module;
    use crate::bernstein_hecke::tests::sl2;
    use crate::exact_rings::TorusPoint;
    use crate::label_calculus::Labels;

    #[test]
    fn generic_principal_series_is_irreducible() {
        let h = sl2(Labels::new(1, 1), 0);
        let t = TorusPoint::new(h.ctx(), vec![1], vec![3]).unwrap();
        let m = principal_series_module(&h, &t).unwrap();
        assert!(m.is_absolutely_irreducible());
        let d = m.decompose().unwrap();
        assert_eq!(d.dims(), vec![2]);
        assert!(d.complete);
    }

    #[test]
    fn steinberg_point_reduces() {
        let h = sl2(Labels::new(1, 1), 0);
        let m = principal_series_module(&h, &h.steinberg_point().unwrap()).unwrap();
        let d = m.decompose().unwrap();
        assert_eq!(d.dims(), vec![1, 1]);
        assert!(d.complete);
        let dets: Vec<_> = d.constituents.iter().map(|c| c.module.det_multiplicity()).collect();
        assert_eq!(dets.iter().sum::<usize>(), 1);
        assert!(!m.splits_as_direct_sum().unwrap());
    }
}
