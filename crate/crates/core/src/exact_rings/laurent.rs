//! Laurent polynomials in w = v^{1/D} with cyclotomic coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::BigRational;

use super::cyclo::{fmt_rational, CycloScalar};
use crate::error::{Error, Result};

/// Coefficient settings: cyclotomic order N and v-exponent denominator D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ctx {
    pub order: u32,
    pub denom: u32,
}

impl Ctx {
    pub fn new(order: u32, denom: u32) -> Result<Self> {
        CycloScalar::check_order(order)?;
        if denom == 0 {
            return Err(Error::Config("v-exponent denominator must be positive".into()));
        }
        Ok(Ctx { order, denom })
    }

    pub fn ensure_same(&self, other: &Ctx) -> Result<()> {
        if self != other {
            return Err(Error::Config(format!(
                "coefficient settings differ: (N={}, D={}) vs (N={}, D={})",
                self.order, self.denom, other.order, other.denom
            )));
        }
        Ok(())
    }

    /// Converts an exponent p/q of v into units of 1/D.
    pub fn v_units(&self, r: &BigRational) -> Result<i64> {
        let scaled = r * BigRational::from_integer(self.denom.into());
        if !scaled.is_integer() {
            return Err(Error::InvalidPoint(format!(
                "v-exponent {} is not a multiple of 1/{}",
                fmt_rational(r),
                self.denom
            )));
        }
        i64::try_from(scaled.to_integer()).map_err(|_| Error::InvalidPoint("v-exponent overflow".into()))
    }

    /// Converts a root-of-unity exponent a/b (fraction of a full turn) into a power of ζ_N.
    pub fn zeta_units(&self, r: &BigRational) -> Result<i64> {
        let scaled = r * BigRational::from_integer(self.order.into());
        if !scaled.is_integer() {
            return Err(Error::InvalidPoint(format!(
                "root of unity e^(2πi·{}) does not lie in Q(ζ_{})",
                fmt_rational(r),
                self.order
            )));
        }
        let v = i64::try_from(scaled.to_integer()).map_err(|_| Error::InvalidPoint("ζ-exponent overflow".into()))?;
        Ok(v.rem_euclid(self.order as i64))
    }
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { order: 12, denom: 2 }
    }
}

/// Formats an exponent k/D in lowest terms.
pub fn fmt_exponent(k: i64, denom: u32) -> String {
    let g = k.gcd(&(denom as i64));
    let (p, q) = (k / g, denom as i64 / g);
    if q == 1 {
        format!("{p}")
    } else {
        format!("{p}/{q}")
    }
}

/// A Laurent polynomial Σ c_k v^{k/D}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VLaurent {
    ctx: Ctx,
    terms: BTreeMap<i64, CycloScalar>,
}

impl VLaurent {
    pub fn zero(ctx: Ctx) -> Self {
        VLaurent { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: Ctx) -> Self {
        Self::constant(ctx, CycloScalar::one(ctx.order))
    }

    pub fn from_int(ctx: Ctx, c: i64) -> Self {
        Self::constant(ctx, CycloScalar::from_int(ctx.order, c))
    }

    pub fn constant(ctx: Ctx, c: CycloScalar) -> Self {
        Self::monomial(ctx, c, 0)
    }

    /// c·v^{k/D}.
    pub fn monomial(ctx: Ctx, c: CycloScalar, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        VLaurent { ctx, terms }
    }

    /// v^e for an integer e.
    pub fn v_pow(ctx: Ctx, e: i64) -> Self {
        Self::monomial(ctx, CycloScalar::one(ctx.order), e * ctx.denom as i64)
    }

    /// ζ^a v^{k/D}.
    pub fn zeta_v(ctx: Ctx, a: i64, k: i64) -> Self {
        Self::monomial(ctx, CycloScalar::zeta_pow(ctx.order, a), k)
    }

    /// v^λ − v^{−λ}.
    pub fn v_diff(ctx: Ctx, lambda: i64) -> Self {
        &Self::v_pow(ctx, lambda) - &Self::v_pow(ctx, -lambda)
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<i64, CycloScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Coefficient of v^0 if the element is constant.
    pub fn as_constant(&self) -> Option<CycloScalar> {
        match self.terms.len() {
            0 => Some(CycloScalar::zero(self.ctx.order)),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading(&self) -> Option<(i64, &CycloScalar)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    /// `(k, c)` if the element is the single term c·v^{k/D}.
    pub fn as_monomial(&self) -> Option<(i64, &CycloScalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    /// Units of the Laurent ring are the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn inv_unit(&self) -> Option<Self> {
        let (k, c) = self.as_monomial()?;
        Some(Self::monomial(self.ctx, c.inv().ok()?, -k))
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.ctx, other.ctx, "coefficient settings differ");
    }

    pub fn scale(&self, c: &CycloScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx);
        }
        VLaurent { ctx: self.ctx, terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&CycloScalar::from_int(self.ctx.order, c))
    }

    /// Multiplication by w^s = v^{s/D}.
    pub fn shift(&self, s: i64) -> Self {
        VLaurent { ctx: self.ctx, terms: self.terms.iter().map(|(k, a)| (k + s, a.clone())).collect() }
    }

    /// Multiplication by ζ^a v^{k/D}, the value of a torus point.
    pub fn mul_zeta_v(&self, a: i64, k: i64) -> Self {
        VLaurent {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.mul_zeta_pow(a))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, k: i64, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
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

    /// In-place `self += c·other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Self) {
        self.check(other);
        for (k1, a) in &other.terms {
            for (k2, b) in &c.terms {
                self.add_term(k1 + k2, a * b);
            }
        }
    }

    /// Exact quotient in the Laurent ring, if it exists.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.check(d);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.ctx));
        }
        if let Some((k, c)) = d.as_monomial() {
            let ci = c.inv().ok()?;
            return Some(VLaurent {
                ctx: self.ctx,
                terms: self.terms.iter().map(|(e, a)| (e - k, a * &ci)).collect(),
            });
        }
        let (dmax, dlead) = d.leading().map(|(k, c)| (k, c.clone()))?;
        let dmin = d.min_exp()?;
        let lo = self.min_exp()? - dmin;
        let hi = self.max_exp()? - dmax;
        if hi < lo {
            return None;
        }
        let lead_inv = dlead.inv().ok()?;
        let mut rem = self.clone();
        let mut q = Self::zero(self.ctx);
        while let Some((rk, rc)) = rem.leading().map(|(k, c)| (k, c.clone())) {
            let e = rk - dmax;
            if e < lo || e > hi {
                return None;
            }
            let c = &rc * &lead_inv;
            for (k, a) in &d.terms {
                rem.add_term(k + e, -(a * &c));
            }
            q.add_term(e, c);
        }
        Some(q)
    }

    /// Monic normalization: shifts so the lowest exponent is 0 and scales so the leading coefficient is 1.
    /// Returns the normalized element and the unit u with self = u·normalized.
    pub fn normalize_unit(&self) -> (Self, Self) {
        if self.is_zero() {
            return (self.clone(), Self::one(self.ctx));
        }
        let lo = self.min_exp().unwrap();
        let (_, lead) = self.leading().unwrap();
        let lead_inv = lead.inv().expect("nonzero leading coefficient");
        let unit = Self::monomial(self.ctx, lead.clone(), lo);
        let normalized = VLaurent {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(k, a)| (k - lo, a * &lead_inv)).collect(),
        };
        (normalized, unit)
    }

    /// Polynomial remainder of a by b, both with nonnegative exponents.
    fn poly_rem(a: &Self, b: &Self) -> Self {
        let (bmax, blead) = b.leading().map(|(k, c)| (k, c.clone())).expect("nonzero divisor");
        let lead_inv = blead.inv().expect("nonzero leading coefficient");
        let mut r = a.clone();
        while let Some((rk, rc)) = r.leading().map(|(k, c)| (k, c.clone())) {
            if rk < bmax {
                break;
            }
            let c = &rc * &lead_inv;
            let e = rk - bmax;
            for (k, x) in &b.terms {
                r.add_term(k + e, -(x * &c));
            }
        }
        r
    }

    /// Greatest common divisor, normalized monic with lowest exponent 0.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        a.check(b);
        if a.is_zero() {
            return b.normalize_unit().0;
        }
        if b.is_zero() {
            return a.normalize_unit().0;
        }
        let mut x = a.normalize_unit().0;
        let mut y = b.normalize_unit().0;
        if x.is_one() || y.is_one() {
            return Self::one(a.ctx);
        }
        while !y.is_zero() {
            let r = Self::poly_rem(&x, &y);
            x = y;
            y = if r.is_zero() { r } else { r.normalize_unit().0 };
        }
        x
    }
}

impl<'a> Add<&'a VLaurent> for &'a VLaurent {
    type Output = VLaurent;
    fn add(self, rhs: &VLaurent) -> VLaurent {
        self.check(rhs);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a VLaurent> for &'a VLaurent {
    type Output = VLaurent;
    fn sub(self, rhs: &VLaurent) -> VLaurent {
        self.check(rhs);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl<'a> Mul<&'a VLaurent> for &'a VLaurent {
    type Output = VLaurent;
    fn mul(self, rhs: &VLaurent) -> VLaurent {
        self.check(rhs);
        let mut out = VLaurent::zero(self.ctx);
        for (k1, a) in &self.terms {
            for (k2, b) in &rhs.terms {
                out.add_term(k1 + k2, a * b);
            }
        }
        out
    }
}

impl Neg for &VLaurent {
    type Output = VLaurent;
    fn neg(self) -> VLaurent {
        VLaurent { ctx: self.ctx, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for VLaurent {
    type Output = VLaurent;
    fn neg(self) -> VLaurent {
        -&self
    }
}

impl Add for VLaurent {
    type Output = VLaurent;
    fn add(self, rhs: VLaurent) -> VLaurent {
        &self + &rhs
    }
}

impl Sub for VLaurent {
    type Output = VLaurent;
    fn sub(self, rhs: VLaurent) -> VLaurent {
        &self - &rhs
    }
}

impl Mul for VLaurent {
    type Output = VLaurent;
    fn mul(self, rhs: VLaurent) -> VLaurent {
        &self * &rhs
    }
}

impl fmt::Display for VLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            let mut coef = c.to_string();
            let negative = coef.starts_with('-');
            if negative {
                coef.remove(0);
            }
            let sep = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let body = match (*k, coef.as_str()) {
                (0, _) => coef.clone(),
                (_, "1") => format!("v^({})", fmt_exponent(*k, self.ctx.denom)),
                _ => format!("{coef}*v^({})", fmt_exponent(*k, self.ctx.denom)),
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        Ctx::default()
    }

    #[test]
    fn exact_division_and_gcd() {
        let c = ctx();
        let v = VLaurent::v_pow(c, 1);
        let num = VLaurent::v_diff(c, 1);
        let den = &VLaurent::one(c) - &VLaurent::v_pow(c, -2);
        assert_eq!(num.div_exact(&den), Some(v));
        let g = VLaurent::gcd(&num, &den);
        assert_eq!(g, &VLaurent::v_pow(c, 2) - &VLaurent::one(c));
        let x = &VLaurent::v_pow(c, 1) + &VLaurent::one(c);
        assert_eq!(x.div_exact(&num), None);
    }

    #[test]
    fn display_uses_reduced_exponents() {
        let c = ctx();
        let x = &VLaurent::monomial(c, CycloScalar::from_int(12, 3), 1) - &VLaurent::v_pow(c, -1);
        assert_eq!(x.to_string(), "3*v^(1/2) - v^(-1)");
        assert_eq!(VLaurent::zeta_v(c, 3, 0).to_string(), "ζ^3");
    }
}
