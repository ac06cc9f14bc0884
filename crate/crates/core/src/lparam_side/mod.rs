//! Principal-series L-parameters in matrix dual groups.
//!
//! A parameter is stored as (s_I, f_F, y, enhancement) with s_I the tame
//! inertia image, f_F the Frobenius image commuting with the SL₂ part and y
//! nilpotent. The infinitesimal point is t̃ = f_F·v^{−h} with h the
//! Jacobson–Morozov coweight of y, so that Ad(t̃)y = q⁻¹y.

mod matching;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use matching::{match_bijection, MatchBlock, MatchRow, MatchStatus, MatchTable, ModuleSummary};

use crate::error::{Error, Result};
use crate::exact_rings::{Ctx, Mat, TorusPoint, VRational};
use crate::root_datum::BasedRootDatum;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Gl,
    Sl,
    ProductGl(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixDualGroup {
    kind: GroupKind,
    n: usize,
    block: Vec<usize>,
}

impl MatrixDualGroup {
    pub fn new(kind: GroupKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("matrix size must be positive".into()));
        }
        let block = match &kind {
            GroupKind::ProductGl(sizes) => {
                if sizes.iter().sum::<usize>() != n || sizes.contains(&0) {
                    return Err(Error::Config(format!("block sizes {sizes:?} do not sum to {n}")));
                }
                sizes.iter().enumerate().flat_map(|(b, &k)| std::iter::repeat(b).take(k)).collect()
            }
            _ => vec![0; n],
        };
        Ok(MatrixDualGroup { kind, n, block })
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_gl_kind(&self) -> bool {
        !matches!(self.kind, GroupKind::Sl)
    }

    /// Positions (i, j), i ≠ j, of the root spaces E_ij.
    pub fn root_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.block[i] == self.block[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn center_dim(&self) -> usize {
        match &self.kind {
            GroupKind::Gl => 1,
            GroupKind::Sl => 0,
            GroupKind::ProductGl(sizes) => sizes.len(),
        }
    }

    pub fn is_central(&self, z: &TorusPoint) -> bool {
        z.rank() == self.n && (0..self.n).all(|i| (0..self.n).all(|j| self.block[i] != self.block[j] || same(z, i, j)))
    }

    /// Roots e_i − e_j of the Levi Z(s_I).
    pub fn roots_for_inertia(&self, s: &TorusPoint) -> Vec<Vec<i64>> {
        self.root_positions()
            .into_iter()
            .filter(|&(i, j)| same(s, i, j))
            .map(|(i, j)| {
                let mut v = vec![0; self.n];
                v[i] = 1;
                v[j] = -1;
                v
            })
            .collect()
    }

    /// Whether the root system of `datum` is that of Z(s_I) on X = Z^n.
    pub fn matches_datum(&self, datum: &BasedRootDatum, s: &TorusPoint) -> bool {
        let mut a: Vec<Vec<i64>> = datum.roots().to_vec();
        let mut b = self.roots_for_inertia(s);
        a.sort();
        b.sort();
        datum.rank() == self.n && a == b
    }
}

fn same(t: &TorusPoint, i: usize, j: usize) -> bool {
    t.zeta_exponents()[i] == t.zeta_exponents()[j] && t.v_exponents()[i] == t.v_exponents()[j]
}

/// (ζ-exponent, v-exponent) of t_i / t_j.
fn ratio(t: &TorusPoint, i: usize, j: usize) -> (i64, i64) {
    let mut x = vec![0; t.rank()];
    x[i] += 1;
    x[j] -= 1;
    t.value_exponents(&x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Enhancement {
    Trivial,
    Labeled(String),
}

impl fmt::Display for Enhancement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Enhancement::Trivial => f.write_str("trivial"),
            Enhancement::Labeled(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PSParameter {
    pub name: String,
    pub group: MatrixDualGroup,
    pub s_inertia: TorusPoint,
    pub frobenius: TorusPoint,
    pub y: Mat,
    pub enhancement: Enhancement,
}

impl PSParameter {
    /// Checks that s_I has finite order, y is supported on root spaces along
    /// chains, and s_I, f_F both centralize y.
    pub fn new(
        name: impl Into<String>,
        group: &MatrixDualGroup,
        s_inertia: TorusPoint,
        frobenius: TorusPoint,
        y: Mat,
        enhancement: Enhancement,
    ) -> Result<Self> {
        let n = group.n;
        if s_inertia.rank() != n || frobenius.rank() != n || y.rows() != n || y.cols() != n {
            return Err(Error::Config("parameter sizes do not match the dual group".into()));
        }
        if !s_inertia.is_unitary() {
            return Err(Error::InvalidPoint(format!("inertia image {s_inertia} has a non-trivial v-part")));
        }
        let roots = group.root_positions();
        for i in 0..n {
            for j in 0..n {
                if y.get(i, j).is_zero() {
                    continue;
                }
                if !roots.contains(&(i, j)) {
                    return Err(Error::Config(format!("y has an entry at ({i}, {j}) outside the root spaces")));
                }
                if !same(&s_inertia, i, j) || !same(&frobenius, i, j) {
                    return Err(Error::Config(format!("Ad(s_I) or Ad(f_F) moves the entry y[{i}][{j}]")));
                }
            }
        }
        let p = PSParameter { name: name.into(), group: group.clone(), s_inertia, frobenius, y, enhancement };
        p.jm_coweight()?;
        Ok(p)
    }

    pub fn ctx(&self) -> Ctx {
        self.frobenius.ctx()
    }

    /// Diagonal h with [h, y] = 2y, read off the chains of y.
    pub fn jm_coweight(&self) -> Result<Vec<i64>> {
        let n = self.group.n;
        let mut next = vec![None; n];
        let mut has_prev = vec![false; n];
        for i in 0..n {
            for j in 0..n {
                if !self.y.get(i, j).is_zero() {
                    if next[i].is_some() || has_prev[j] {
                        return Err(Error::Unsupported("y is not a sum of root vectors along chains".into()));
                    }
                    next[i] = Some(j);
                    has_prev[j] = true;
                }
            }
        }
        let mut h = vec![0; n];
        let mut seen = vec![false; n];
        for start in (0..n).filter(|&i| !has_prev[i]) {
            let mut chain = vec![start];
            while let Some(j) = next[*chain.last().expect("non-empty")] {
                chain.push(j);
            }
            let k = chain.len() as i64;
            for (pos, &i) in chain.iter().enumerate() {
                h[i] = k - 1 - 2 * pos as i64;
                seen[i] = true;
            }
        }
        if seen.contains(&false) {
            return Err(Error::Unsupported("y is not nilpotent".into()));
        }
        Ok(h)
    }

    /// t̃ = f_F·v^{−h}.
    pub fn infinitesimal_point(&self) -> Result<TorusPoint> {
        let h = self.jm_coweight()?;
        let d = self.ctx().denom as i64;
        let vexp = self.frobenius.v_exponents().iter().zip(&h).map(|(&e, &hi)| e - hi * d).collect();
        TorusPoint::new(self.ctx(), self.frobenius.zeta_exponents().to_vec(), vexp)
    }

    /// Root positions (i, j) spanning {Y ∈ Lie Z(s_I) : Ad(t̃)Y = q⁻¹Y}.
    pub fn q_eigenspace(&self) -> Result<Vec<(usize, usize)>> {
        let t = self.infinitesimal_point()?;
        let q_inv = (0, -2 * self.ctx().denom as i64);
        Ok(self
            .group
            .root_positions()
            .into_iter()
            .filter(|&(i, j)| same(&self.s_inertia, i, j) && ratio(&t, i, j) == q_inv)
            .collect())
    }

    /// Basis of Lie Z(s_I, t̃) as matrix positions (diagonal included).
    fn centralizer_positions(&self, t: &TorusPoint) -> Vec<(usize, usize)> {
        let n = self.group.n;
        let mut out: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        out.extend(self.group.root_positions().into_iter().filter(|&(i, j)| same(&self.s_inertia, i, j) && same(t, i, j)));
        out
    }

    /// Dimension of the orbit of y under Z(s_I, t̃): rank of Z ↦ [Z, y].
    pub fn orbit_dim(&self) -> Result<usize> {
        let t = self.infinitesimal_point()?;
        let eig = self.q_eigenspace()?;
        let n = self.group.n;
        for i in 0..n {
            for j in 0..n {
                if !self.y.get(i, j).is_zero() && !eig.contains(&(i, j)) {
                    return Err(Error::Precondition(format!("y[{i}][{j}] lies outside the q⁻¹-eigenspace")));
                }
            }
        }
        let ctx = self.ctx();
        let rows: Vec<Vec<VRational>> = self
            .centralizer_positions(&t)
            .into_iter()
            .map(|(a, b)| {
                let mut z = Mat::zeros(ctx, n, n);
                z.set(a, b, VRational::one(ctx));
                let br = z.mul(&self.y).sub(&self.y.mul(&z));
                eig.iter().map(|&(i, j)| br.get(i, j).clone()).collect()
            })
            .collect();
        if rows.is_empty() || eig.is_empty() {
            return Ok(0);
        }
        Ok(Mat::from_rows(ctx, rows)?.rank())
    }

    pub fn is_dense_orbit(&self) -> Result<bool> {
        Ok(self.orbit_dim()? == self.q_eigenspace()?.len())
    }

    pub fn predicates(&self) -> Result<Predicates> {
        let bounded = self.frobenius.is_unitary();
        if !self.group.is_gl_kind() {
            return Ok(Predicates { bounded, discrete: None });
        }
        let t = self.infinitesimal_point()?;
        let n = self.group.n;
        let ctx = self.ctx();
        let unknowns: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                (i == j || self.group.block[i] == self.group.block[j])
                    && same(&self.s_inertia, i, j)
                    && same(&self.frobenius, i, j)
                    && same(&t, i, j)
            })
            .collect();
        // [y, Z] = 0 as a linear system in the unknown entries
        let mut eqs: Vec<Vec<VRational>> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let row: Vec<VRational> = unknowns
                    .iter()
                    .map(|&(i, j)| {
                        let mut z = Mat::zeros(ctx, n, n);
                        z.set(i, j, VRational::one(ctx));
                        self.y.mul(&z).sub(&z.mul(&self.y)).get(a, b).clone()
                    })
                    .collect();
                if row.iter().any(|c| !c.is_zero()) {
                    eqs.push(row);
                }
            }
        }
        let rank = if eqs.is_empty() { 0 } else { Mat::from_rows(ctx, eqs)?.rank() };
        let centralizer = unknowns.len() - rank;
        let classes = {
            let mut reps: Vec<(usize, i64, i64)> = (0..n)
                .map(|i| (self.group.block[i], self.s_inertia.zeta_exponents()[i], self.s_inertia.v_exponents()[i]))
                .collect();
            reps.sort();
            reps.dedup();
            reps.len()
        };
        let rank_ok = classes == self.group.center_dim();
        Ok(Predicates { bounded, discrete: Some(centralizer == self.group.center_dim() && rank_ok) })
    }

    /// f_F ↦ z·f_F for central z.
    pub fn twist(&self, z: &TorusPoint) -> Result<PSParameter> {
        if !self.group.is_central(z) {
            return Err(Error::InvalidPoint(format!("{z} is not central")));
        }
        let mut p = self.clone();
        p.frobenius = z.mul(&self.frobenius);
        Ok(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Predicates {
    pub bounded: bool,
    /// None when discreteness is unsupported for the group kind.
    pub discrete: Option<bool>,
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exact_rings::VLaurent;

    pub(crate) fn point(v: &[i64]) -> TorusPoint {
        TorusPoint::new(Ctx::default(), vec![0; v.len()], v.to_vec()).unwrap()
    }

    pub(crate) fn nilp(n: usize, entries: &[(usize, usize)]) -> Mat {
        let ctx = Ctx::default();
        let mut m = Mat::zeros(ctx, n, n);
        for &(i, j) in entries {
            m.set(i, j, VRational::from(VLaurent::one(ctx)));
        }
        m
    }

    pub(crate) fn param(n: usize, f: &[i64], y: &[(usize, usize)]) -> PSParameter {
        let g = MatrixDualGroup::new(GroupKind::Gl, n).unwrap();
        PSParameter::new("p", &g, point(&vec![0; n]), point(f), nilp(n, y), Enhancement::Trivial).unwrap()
    }

    #[test]
    fn infinitesimal_points() {
        assert_eq!(param(2, &[3, 1], &[]).infinitesimal_point().unwrap(), point(&[3, 1]));
        assert_eq!(param(2, &[0, 0], &[(0, 1)]).infinitesimal_point().unwrap(), point(&[-2, 2]));
        assert_eq!(param(3, &[0, 0, 0], &[(0, 1)]).infinitesimal_point().unwrap(), point(&[-2, 2, 0]));
    }

    #[test]
    fn eigenspaces_and_density() {
        let st = param(2, &[0, 0], &[(0, 1)]);
        assert_eq!(st.q_eigenspace().unwrap(), vec![(0, 1)]);
        assert!(st.is_dense_orbit().unwrap());
        let zero = param(2, &[-2, 2], &[]);
        assert_eq!(zero.q_eigenspace().unwrap(), vec![(0, 1)]);
        assert!(!zero.is_dense_orbit().unwrap());
        assert!(param(2, &[0, 0], &[]).q_eigenspace().unwrap().is_empty());
        let reg = param(3, &[0, 0, 0], &[(0, 1), (1, 2)]);
        assert_eq!(reg.q_eigenspace().unwrap(), vec![(0, 1), (1, 2)]);
        assert!(reg.is_dense_orbit().unwrap());
    }

    #[test]
    fn partial_y_in_principal_eigenspace() {
        // t̃ = (v^-2, 1, v^2) reached by y = E12 with f_F = (v^-1, v^-1, v^2)
        let p = param(3, &[-2, -2, 4], &[(0, 1)]);
        assert_eq!(p.infinitesimal_point().unwrap(), point(&[-4, 0, 4]));
        assert_eq!(p.q_eigenspace().unwrap(), vec![(0, 1), (1, 2)]);
        assert!(!p.is_dense_orbit().unwrap());
    }

    #[test]
    fn predicate_examples() {
        let st = param(2, &[0, 0], &[(0, 1)]).predicates().unwrap();
        assert_eq!(st, Predicates { bounded: true, discrete: Some(true) });
        let ur = TorusPoint::new(Ctx::default(), vec![1, 0], vec![0, 0]).unwrap();
        let g = MatrixDualGroup::new(GroupKind::Gl, 2).unwrap();
        let p = PSParameter::new("ur", &g, point(&[0, 0]), ur, nilp(2, &[]), Enhancement::Trivial).unwrap();
        assert_eq!(p.predicates().unwrap(), Predicates { bounded: true, discrete: Some(false) });
        assert!(!param(2, &[1, 0], &[]).predicates().unwrap().bounded);
    }

    #[test]
    fn central_twist() {
        let st = param(2, &[0, 0], &[(0, 1)]);
        let z = TorusPoint::new(Ctx::default(), vec![6, 6], vec![0, 0]).unwrap();
        let tw = st.twist(&z).unwrap();
        assert_eq!(tw.infinitesimal_point().unwrap(), z.mul(&st.infinitesimal_point().unwrap()));
        assert_eq!(tw.q_eigenspace().unwrap(), st.q_eigenspace().unwrap());
        let bad = TorusPoint::new(Ctx::default(), vec![6, 0], vec![0, 0]).unwrap();
        assert!(st.twist(&bad).is_err());
    }

    #[test]
    fn y_must_commute_with_frobenius() {
        let g = MatrixDualGroup::new(GroupKind::Gl, 2).unwrap();
        let r = PSParameter::new("bad", &g, point(&[0, 0]), point(&[2, 0]), nilp(2, &[(0, 1)]), Enhancement::Trivial);
        assert!(r.is_err());
    }
}
