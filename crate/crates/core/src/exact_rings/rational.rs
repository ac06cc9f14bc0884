//! Rational functions on the torus with a factored denominator.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::cyclo::CycloScalar;
use super::field::VRational;
use super::laurent::{Ctx, VLaurent};
use super::lattice::{self, IMat};
use super::torus::{TorusFunction, TorusPoint};
use crate::error::{Error, Result};

/// num / Π factors^mult.
///
/// Every factor has lexicographically smallest exponent 0 and a monic leading
/// coefficient; binomials θ_{m·x} − ρ are split into linear factors whenever the
/// m-th roots of ρ lie in the coefficient field. Common factors are cancelled
/// by exact division, and equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct TorusRational {
    num: TorusFunction,
    den: BTreeMap<TorusFunction, u32>,
}

/// Writes g = unit·Π factors with unit = c·θ_y. Returns (unit⁻¹, factors).
fn factorize(g: &TorusFunction) -> (TorusFunction, Vec<TorusFunction>) {
    assert!(!g.is_zero(), "zero denominator");
    let (m, _) = g.trailing().map(|(x, c)| (x.clone(), c.clone())).unwrap();
    let g1 = g.shift(&lattice::neg(&m));
    let (_, lead) = g1.leading().map(|(x, c)| (x.clone(), c.clone())).unwrap();
    let (_, unit) = lead.normalize_unit();
    let unit_inv = unit.inv_unit().expect("monomial unit");
    let g2 = g1.scale(&unit_inv);
    let multiplier = TorusFunction::term(lattice::neg(&m), unit_inv);
    if g2.is_one() {
        return (multiplier, Vec::new());
    }
    if g2.len() == 2 {
        if let Some(factors) = split_binomial(&g2) {
            return (multiplier, factors);
        }
    }
    (multiplier, vec![g2])
}

/// Splits θ_e − ρ (e = m·x0, x0 primitive) into Π (θ_{x0} − σ) when all roots are available.
fn split_binomial(g: &TorusFunction) -> Option<Vec<TorusFunction>> {
    let ctx = g.ctx();
    let (e, a) = g.leading().map(|(x, c)| (x.clone(), c.clone()))?;
    if !a.is_one() {
        return None;
    }
    let b = g.coeff(&vec![0; g.rank()]);
    let (k, beta) = b.as_monomial().map(|(k, c)| (k, c.clone()))?;
    let m = lattice::content(&e);
    if m <= 1 || k % m != 0 {
        return None;
    }
    let x0: Vec<i64> = e.iter().map(|c| c / m).collect();
    let rho = -&beta;
    let (r, _) = rho.as_scaled_root_of_unity()?;
    let s = rational_root(&r.abs_value(), m as u32)?;
    let mut roots: Vec<CycloScalar> = Vec::new();
    for sign in [1i64, -1] {
        for j in 0..ctx.order as i64 {
            let sigma = CycloScalar::zeta_pow(ctx.order, j).scale(&(&s * num_rational::BigRational::from_integer(sign.into())));
            if sigma.pow(m).ok()? == rho && !roots.contains(&sigma) {
                roots.push(sigma);
            }
        }
    }
    if roots.len() as i64 != m {
        return None;
    }
    roots.sort();
    Some(
        roots
            .into_iter()
            .map(|sigma| {
                let mut f = TorusFunction::theta(ctx, x0.clone());
                f.add_term(vec![0; g.rank()], VLaurent::monomial(ctx, -sigma, k / m));
                f
            })
            .collect(),
    )
}

trait AbsValue {
    fn abs_value(&self) -> Self;
}

impl AbsValue for num_rational::BigRational {
    fn abs_value(&self) -> Self {
        num_traits::Signed::abs(self)
    }
}

/// Positive rational m-th root of a positive rational, if exact.
fn rational_root(r: &num_rational::BigRational, m: u32) -> Option<num_rational::BigRational> {
    let n = r.numer().nth_root(m);
    let d = r.denom().nth_root(m);
    if n.pow(m) == *r.numer() && d.pow(m) == *r.denom() {
        Some(num_rational::BigRational::new(n, d))
    } else {
        None
    }
}

impl TorusRational {
    pub fn zero(ctx: Ctx, rank: usize) -> Self {
        TorusFunction::zero(ctx, rank).into()
    }

    pub fn one(ctx: Ctx, rank: usize) -> Self {
        TorusFunction::one(ctx, rank).into()
    }

    /// num / den.
    pub fn new(num: TorusFunction, den: &TorusFunction) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mult, factors) = factorize(den);
        let mut r = TorusRational { num: &num * &mult, den: BTreeMap::new() };
        for f in factors {
            *r.den.entry(f).or_insert(0) += 1;
        }
        r.reduce();
        Ok(r)
    }

    /// A field scalar as a constant rational function.
    pub fn from_scalar(rank: usize, c: &VRational) -> Self {
        Self::new(TorusFunction::constant(rank, c.num().clone()), &TorusFunction::constant(rank, c.den().clone()))
            .expect("nonzero denominator")
    }

    pub fn ctx(&self) -> Ctx {
        self.num.ctx()
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn numerator(&self) -> &TorusFunction {
        &self.num
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&TorusFunction, u32)> {
        self.den.iter().map(|(f, m)| (f, *m))
    }

    pub fn denominator(&self) -> TorusFunction {
        let mut d = TorusFunction::one(self.ctx(), self.rank());
        for (f, m) in &self.den {
            for _ in 0..*m {
                d = &d * f;
            }
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial if the denominator cancelled completely.
    pub fn as_polynomial(&self) -> Option<&TorusFunction> {
        self.den.is_empty().then_some(&self.num)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let keys: Vec<TorusFunction> = self.den.keys().cloned().collect();
        for f in keys {
            let mut mult = self.den[&f];
            while mult > 0 {
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        mult -= 1;
                    }
                    None => break,
                }
            }
            if mult == 0 {
                self.den.remove(&f);
            } else {
                self.den.insert(f, mult);
            }
        }
    }

    /// Numerators brought over the least common multiple of both denominators.
    fn common(&self, other: &Self) -> (TorusFunction, TorusFunction, BTreeMap<TorusFunction, u32>) {
        let mut lcm = self.den.clone();
        for (f, m) in &other.den {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        let lift = |r: &Self| {
            let mut n = r.num.clone();
            for (f, m) in &lcm {
                let have = r.den.get(f).copied().unwrap_or(0);
                for _ in have..*m {
                    n = &n * f;
                }
            }
            n
        };
        (lift(self), lift(other), lcm)
    }

    /// θ_x ↦ θ_{Ax}.
    pub fn apply_matrix(&self, a: &IMat) -> Self {
        if a.is_identity() {
            return self.clone();
        }
        let mut num = self.num.apply_matrix(a);
        let mut den = BTreeMap::new();
        for (f, m) in &self.den {
            let (mult, factors) = factorize(&f.apply_matrix(a));
            for _ in 0..*m {
                num = &num * &mult;
                for g in &factors {
                    *den.entry(g.clone()).or_insert(0) += 1;
                }
            }
        }
        let mut r = TorusRational { num, den };
        r.reduce();
        r
    }

    pub fn scale(&self, c: &VLaurent) -> Self {
        let mut r = TorusRational { num: self.num.scale(c), den: self.den.clone() };
        if r.num.is_zero() {
            r.den.clear();
        }
        r
    }

    /// Multiplication by θ_y.
    pub fn shift(&self, y: &[i64]) -> Self {
        TorusRational { num: self.num.shift(y), den: self.den.clone() }
    }

    /// Substitutes θ_x ↦ t(x).
    pub fn specialize(&self, t: &TorusPoint) -> Result<VRational> {
        let mut den = VLaurent::one(self.ctx());
        for (f, m) in &self.den {
            let val = f.evaluate(t);
            if val.is_zero() {
                return Err(Error::Pole { factor: f.to_string() });
            }
            for _ in 0..*m {
                den = &den * &val;
            }
        }
        VRational::new(self.num.evaluate(t), den)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let r = Self::new(self.denominator(), &self.num)?;
        Ok(r)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }
}

impl From<TorusFunction> for TorusRational {
    fn from(num: TorusFunction) -> Self {
        TorusRational { num, den: BTreeMap::new() }
    }
}

impl PartialEq for TorusRational {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let (a, b, _) = self.common(other);
        a == b
    }
}

impl Eq for TorusRational {}

impl<'a> Add<&'a TorusRational> for &'a TorusRational {
    type Output = TorusRational;
    fn add(self, rhs: &TorusRational) -> TorusRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let mut r = TorusRational { num: &self.num + &rhs.num, den: self.den.clone() };
            r.reduce();
            return r;
        }
        let (a, b, den) = self.common(rhs);
        let mut r = TorusRational { num: &a + &b, den };
        r.reduce();
        r
    }
}

impl<'a> Sub<&'a TorusRational> for &'a TorusRational {
    type Output = TorusRational;
    fn sub(self, rhs: &TorusRational) -> TorusRational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a TorusRational> for &'a TorusRational {
    type Output = TorusRational;
    fn mul(self, rhs: &TorusRational) -> TorusRational {
        let num = &self.num * &rhs.num;
        if num.is_zero() {
            return TorusRational { num, den: BTreeMap::new() };
        }
        let mut den = self.den.clone();
        for (f, m) in &rhs.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        let mut r = TorusRational { num, den };
        if !r.den.is_empty() {
            r.reduce();
        }
        r
    }
}

impl Neg for &TorusRational {
    type Output = TorusRational;
    fn neg(self) -> TorusRational {
        TorusRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for TorusRational {
    type Output = TorusRational;
    fn add(self, rhs: TorusRational) -> TorusRational {
        &self + &rhs
    }
}

impl Sub for TorusRational {
    type Output = TorusRational;
    fn sub(self, rhs: TorusRational) -> TorusRational {
        &self - &rhs
    }
}

impl Mul for TorusRational {
    type Output = TorusRational;
    fn mul(self, rhs: TorusRational) -> TorusRational {
        &self * &rhs
    }
}

impl fmt::Display for TorusRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(g, m)| if *m == 1 { format!("[{g}]") } else { format!("[{g}]^{m}") })
            .collect();
        write!(f, "[{}] / {}", self.num, den.join("*"))
    }
}

impl fmt::Debug for TorusRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(c: Ctx, x: &[i64]) -> TorusFunction {
        TorusFunction::theta(c, x.to_vec())
    }

    #[test]
    fn binomial_splits_into_linear_factors() {
        let c = Ctx::default();
        let one = TorusFunction::one(c, 1);
        let d = &theta(c, &[2]) - &one;
        let r = TorusRational::new(one.clone(), &d).unwrap();
        assert_eq!(r.denominator_factors().count(), 2);
        // (θ − 1)/(θ² − 1) = 1/(θ + 1)
        let s = TorusRational::new(&theta(c, &[1]) - &one, &d).unwrap();
        assert_eq!(s.denominator_factors().count(), 1);
        assert_eq!(s, TorusRational::new(one.clone(), &(&theta(c, &[1]) + &one)).unwrap());
    }

    #[test]
    fn pole_is_reported() {
        let c = Ctx::default();
        let one = TorusFunction::one(c, 1);
        let r = TorusRational::new(one, &(&theta(c, &[1]) - &TorusFunction::one(c, 1))).unwrap();
        let t = TorusPoint::identity(c, 1);
        assert!(matches!(r.specialize(&t), Err(Error::Pole { .. })));
    }

    #[test]
    fn removable_singularity_specializes() {
        // (θ_α q − 1)/(1 − θ_{−2α}) at t(α) = q^{-1}, q = v^2: the numerator vanishes, the denominator does not.
        let c = Ctx::default();
        let one = TorusFunction::one(c, 1);
        let num = &theta(c, &[1]).scale(&VLaurent::v_pow(c, 2)) - &one;
        let den = &one - &theta(c, &[-2]);
        let r = TorusRational::new(num, &den).unwrap();
        let t = TorusPoint::new(c, vec![0], vec![-4]).unwrap();
        assert!(r.specialize(&t).unwrap().is_zero());
        // at t(α) = −1 the value is finite after cancelling θ_α + 1 is not a factor of the numerator
        let t2 = TorusPoint::new(c, vec![6], vec![0]).unwrap();
        assert!(r.specialize(&t2).is_err());
    }
}
