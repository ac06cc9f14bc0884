//! Points of the torus and Laurent polynomials on it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use super::cyclo::CycloScalar;
use super::laurent::{fmt_exponent, Ctx, VLaurent};
use super::lattice::{self, IMat};
use crate::error::{Error, Result};

/// A character t of X = Z^r with values ζ_N^a · v^{k/D}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    ctx: Ctx,
    zeta: Vec<i64>,
    vexp: Vec<i64>,
}

impl TorusPoint {
    /// `zeta[j]` is taken mod N; `vexp[j]` is in units of 1/D.
    pub fn new(ctx: Ctx, zeta: Vec<i64>, vexp: Vec<i64>) -> Result<Self> {
        if zeta.len() != vexp.len() {
            return Err(Error::Config("torus point coordinates have mismatched lengths".into()));
        }
        let n = ctx.order as i64;
        Ok(TorusPoint { ctx, zeta: zeta.into_iter().map(|a| a.rem_euclid(n)).collect(), vexp })
    }

    /// From per-coordinate (fraction of a turn, v-exponent) pairs.
    pub fn from_fractions(ctx: Ctx, coords: &[(BigRational, BigRational)]) -> Result<Self> {
        let mut zeta = Vec::with_capacity(coords.len());
        let mut vexp = Vec::with_capacity(coords.len());
        for (a, b) in coords {
            zeta.push(ctx.zeta_units(a)?);
            vexp.push(ctx.v_units(b)?);
        }
        Self::new(ctx, zeta, vexp)
    }

    pub fn identity(ctx: Ctx, rank: usize) -> Self {
        TorusPoint { ctx, zeta: vec![0; rank], vexp: vec![0; rank] }
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn rank(&self) -> usize {
        self.zeta.len()
    }

    pub fn zeta_exponents(&self) -> &[i64] {
        &self.zeta
    }

    pub fn v_exponents(&self) -> &[i64] {
        &self.vexp
    }

    /// t(x) as (a mod N, k) meaning ζ^a v^{k/D}.
    pub fn value_exponents(&self, x: &[i64]) -> (i64, i64) {
        let a = lattice::dot(&self.zeta, x).rem_euclid(self.ctx.order as i64);
        (a, lattice::dot(&self.vexp, x))
    }

    pub fn value(&self, x: &[i64]) -> VLaurent {
        let (a, k) = self.value_exponents(x);
        VLaurent::zeta_v(self.ctx, a, k)
    }

    pub fn is_identity(&self) -> bool {
        self.zeta.iter().all(|&a| a == 0) && self.vexp.iter().all(|&k| k == 0)
    }

    /// Zero v-part.
    pub fn is_unitary(&self) -> bool {
        self.vexp.iter().all(|&k| k == 0)
    }

    pub fn unitary_part(&self) -> Self {
        TorusPoint { ctx: self.ctx, zeta: self.zeta.clone(), vexp: vec![0; self.rank()] }
    }

    pub fn real_part(&self) -> Self {
        TorusPoint { ctx: self.ctx, zeta: vec![0; self.rank()], vexp: self.vexp.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "coefficient settings differ");
        let n = self.ctx.order as i64;
        TorusPoint {
            ctx: self.ctx,
            zeta: self.zeta.iter().zip(&other.zeta).map(|(a, b)| (a + b).rem_euclid(n)).collect(),
            vexp: lattice::add(&self.vexp, &other.vexp),
        }
    }

    pub fn inv(&self) -> Self {
        let n = self.ctx.order as i64;
        TorusPoint {
            ctx: self.ctx,
            zeta: self.zeta.iter().map(|a| (-a).rem_euclid(n)).collect(),
            vexp: lattice::neg(&self.vexp),
        }
    }

    /// (g·t)(x) = t(g^{-1}x), given g^{-1}.
    pub fn act_by_inverse(&self, ginv: &IMat) -> Self {
        let n = self.ctx.order as i64;
        TorusPoint {
            ctx: self.ctx,
            zeta: ginv.apply_row(&self.zeta).into_iter().map(|a| a.rem_euclid(n)).collect(),
            vexp: ginv.apply_row(&self.vexp),
        }
    }

    /// Per-coordinate (a/N, k/D) strings.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.zeta
            .iter()
            .zip(&self.vexp)
            .map(|(a, k)| (fmt_exponent(*a, self.ctx.order), fmt_exponent(*k, self.ctx.denom)))
            .collect()
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self
            .zeta
            .iter()
            .zip(&self.vexp)
            .map(|(a, k)| format!("ζ^{a}*v^({})", fmt_exponent(*k, self.ctx.denom)))
            .collect();
        write!(f, "[{}]", coords.join(", "))
    }
}

impl fmt::Debug for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Σ c_x θ_x in the group algebra of Z^r over Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusFunction {
    ctx: Ctx,
    rank: usize,
    terms: BTreeMap<Vec<i64>, VLaurent>,
}

impl TorusFunction {
    pub fn zero(ctx: Ctx, rank: usize) -> Self {
        TorusFunction { ctx, rank, terms: BTreeMap::new() }
    }

    pub fn one(ctx: Ctx, rank: usize) -> Self {
        Self::theta(ctx, vec![0; rank])
    }

    pub fn theta(ctx: Ctx, x: Vec<i64>) -> Self {
        Self::term(x, VLaurent::one(ctx))
    }

    /// c·θ_x.
    pub fn term(x: Vec<i64>, c: VLaurent) -> Self {
        let ctx = c.ctx();
        let rank = x.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(x, c);
        }
        TorusFunction { ctx, rank, terms }
    }

    pub fn constant(rank: usize, c: VLaurent) -> Self {
        Self::term(vec![0; rank], c)
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, VLaurent> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(x, c)| x.iter().all(|&a| a == 0) && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at θ_0 if no other terms occur.
    pub fn as_constant(&self) -> Option<VLaurent> {
        match self.terms.len() {
            0 => Some(VLaurent::zero(self.ctx)),
            1 => {
                let (x, c) = self.terms.iter().next()?;
                x.iter().all(|&a| a == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coeff(&self, x: &[i64]) -> VLaurent {
        self.terms.get(x).cloned().unwrap_or_else(|| VLaurent::zero(self.ctx))
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&Vec<i64>, &VLaurent)> {
        self.terms.iter().next_back()
    }

    /// Lexicographically smallest term.
    pub fn trailing(&self) -> Option<(&Vec<i64>, &VLaurent)> {
        self.terms.iter().next()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.ctx, other.ctx, "coefficient settings differ");
        assert_eq!(self.rank, other.rank, "lattice ranks differ");
    }

    pub fn add_term(&mut self, x: Vec<i64>, c: VLaurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(x) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &VLaurent) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx, self.rank);
        }
        TorusFunction {
            ctx: self.ctx,
            rank: self.rank,
            terms: self.terms.iter().map(|(x, a)| (x.clone(), a * c)).collect(),
        }
    }

    /// Multiplication by θ_y.
    pub fn shift(&self, y: &[i64]) -> Self {
        TorusFunction {
            ctx: self.ctx,
            rank: self.rank,
            terms: self.terms.iter().map(|(x, a)| (lattice::add(x, y), a.clone())).collect(),
        }
    }

    /// θ_x ↦ θ_{Ax}.
    pub fn apply_matrix(&self, a: &IMat) -> Self {
        if a.is_identity() {
            return self.clone();
        }
        TorusFunction {
            ctx: self.ctx,
            rank: self.rank,
            terms: self.terms.iter().map(|(x, c)| (a.apply(x), c.clone())).collect(),
        }
    }

    /// Substitutes θ_x ↦ t(x).
    pub fn evaluate(&self, t: &TorusPoint) -> VLaurent {
        let mut out = VLaurent::zero(self.ctx);
        for (x, c) in &self.terms {
            let (a, k) = t.value_exponents(x);
            out = &out + &c.mul_zeta_v(a, k);
        }
        out
    }

    /// Exact quotient, if it exists in the Laurent group algebra.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.check(d);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if d.terms.len() == 1 {
            let (y, c) = d.terms.iter().next()?;
            let mut terms = BTreeMap::new();
            for (x, a) in &self.terms {
                terms.insert(lattice::sub(x, y), a.div_exact(c)?);
            }
            return Some(TorusFunction { ctx: self.ctx, rank: self.rank, terms });
        }
        // Newton-polytope box bounds for the quotient exponents.
        let r = self.rank;
        let bounds = |f: &Self| -> (Vec<i64>, Vec<i64>) {
            let mut lo = vec![i64::MAX; r];
            let mut hi = vec![i64::MIN; r];
            for x in f.terms.keys() {
                for j in 0..r {
                    lo[j] = lo[j].min(x[j]);
                    hi[j] = hi[j].max(x[j]);
                }
            }
            (lo, hi)
        };
        let (flo, fhi) = bounds(self);
        let (dlo, dhi) = bounds(d);
        let qlo = lattice::sub(&flo, &dlo);
        let qhi = lattice::sub(&fhi, &dhi);
        let (dlead_x, dlead_c) = d.leading().map(|(x, c)| (x.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut q = Self::zero(self.ctx, r);
        while let Some((rx, rc)) = rem.leading().map(|(x, c)| (x.clone(), c.clone())) {
            let e = lattice::sub(&rx, &dlead_x);
            if (0..r).any(|j| e[j] < qlo[j] || e[j] > qhi[j]) {
                return None;
            }
            let c = rc.div_exact(&dlead_c)?;
            for (x, a) in &d.terms {
                rem.add_term(lattice::add(x, &e), -(a * &c));
            }
            q.add_term(e, c);
        }
        Some(q)
    }
}

impl<'a> Add<&'a TorusFunction> for &'a TorusFunction {
    type Output = TorusFunction;
    fn add(self, rhs: &TorusFunction) -> TorusFunction {
        self.check(rhs);
        let mut out = self.clone();
        for (x, c) in &rhs.terms {
            out.add_term(x.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a TorusFunction> for &'a TorusFunction {
    type Output = TorusFunction;
    fn sub(self, rhs: &TorusFunction) -> TorusFunction {
        self.check(rhs);
        let mut out = self.clone();
        for (x, c) in &rhs.terms {
            out.add_term(x.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a TorusFunction> for &'a TorusFunction {
    type Output = TorusFunction;
    fn mul(self, rhs: &TorusFunction) -> TorusFunction {
        self.check(rhs);
        let mut out = TorusFunction::zero(self.ctx, self.rank);
        for (x, a) in &self.terms {
            for (y, b) in &rhs.terms {
                out.add_term(lattice::add(x, y), a * b);
            }
        }
        out
    }
}

impl Neg for &TorusFunction {
    type Output = TorusFunction;
    fn neg(self) -> TorusFunction {
        TorusFunction {
            ctx: self.ctx,
            rank: self.rank,
            terms: self.terms.iter().map(|(x, c)| (x.clone(), -c)).collect(),
        }
    }
}

impl Add for TorusFunction {
    type Output = TorusFunction;
    fn add(self, rhs: TorusFunction) -> TorusFunction {
        &self + &rhs
    }
}

impl Sub for TorusFunction {
    type Output = TorusFunction;
    fn sub(self, rhs: TorusFunction) -> TorusFunction {
        &self - &rhs
    }
}

impl Mul for TorusFunction {
    type Output = TorusFunction;
    fn mul(self, rhs: TorusFunction) -> TorusFunction {
        &self * &rhs
    }
}

fn fmt_vec(x: &[i64]) -> String {
    let parts: Vec<String> = x.iter().map(|a| a.to_string()).collect();
    parts.join(",")
}

impl fmt::Display for TorusFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(x, c)| {
                if x.iter().all(|&a| a == 0) {
                    format!("({c})")
                } else {
                    format!("({c})*θ[{}]", fmt_vec(x))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TorusFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Helper for rational constants in tests and oracles.
pub fn rational_constant(ctx: Ctx, rank: usize, c: BigRational) -> TorusFunction {
    if c.is_zero() {
        return TorusFunction::zero(ctx, rank);
    }
    TorusFunction::constant(rank, VLaurent::constant(ctx, CycloScalar::from_rational(ctx.order, c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_inverse() {
        let c = Ctx::default();
        let a = TorusFunction::theta(c, vec![2, -1]);
        let b = TorusFunction::theta(c, vec![-2, 1]);
        assert!((&a * &b).is_one());
    }

    #[test]
    fn evaluation_and_action() {
        let c = Ctx::default();
        let t = TorusPoint::new(c, vec![6], vec![-4]).unwrap();
        assert_eq!(TorusFunction::theta(c, vec![1]).evaluate(&t), VLaurent::zeta_v(c, 6, -4));
        let s = IMat::from_rows(&[vec![-1]]).unwrap();
        let st = t.act_by_inverse(&s);
        assert_eq!(st.value(&[1]), t.value(&[-1]));
    }

    #[test]
    fn exact_division_multivariate() {
        let c = Ctx::default();
        let one = TorusFunction::one(c, 2);
        let a = &TorusFunction::theta(c, vec![1, 0]) - &one;
        let b = &TorusFunction::theta(c, vec![0, 1]) + &TorusFunction::theta(c, vec![1, -1]);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
    }
}
