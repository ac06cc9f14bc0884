//! The coefficient field F = Q(ζ_N)(v^{1/D}).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::cyclo::CycloScalar;
use super::laurent::{Ctx, VLaurent};
use crate::error::{Error, Result};

/// A quotient of Laurent polynomials in lowest terms.
///
/// The denominator is monic with lowest exponent 0, so equality of the stored
/// parts decides equality in F.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VRational {
    num: VLaurent,
    den: VLaurent,
}

impl VRational {
    pub fn zero(ctx: Ctx) -> Self {
        VRational { num: VLaurent::zero(ctx), den: VLaurent::one(ctx) }
    }

    pub fn one(ctx: Ctx) -> Self {
        VRational { num: VLaurent::one(ctx), den: VLaurent::one(ctx) }
    }

    pub fn from_int(ctx: Ctx, c: i64) -> Self {
        VLaurent::from_int(ctx, c).into()
    }

    pub fn new(num: VLaurent, den: VLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: VLaurent, den: VLaurent) -> Self {
        let ctx = num.ctx();
        if num.is_zero() {
            return Self::zero(ctx);
        }
        let (den_n, unit) = den.normalize_unit();
        let unit_inv = unit.inv_unit().expect("monomial unit");
        let num = &num * &unit_inv;
        if den_n.is_one() {
            return VRational { num, den: den_n };
        }
        let g = VLaurent::gcd(&num, &den_n);
        if g.is_one() {
            return VRational { num, den: den_n };
        }
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den_n.div_exact(&g).expect("gcd divides denominator");
        let (den, unit) = den.normalize_unit();
        let num = &num * &unit.inv_unit().expect("monomial unit");
        VRational { num, den }
    }

    pub fn ctx(&self) -> Ctx {
        self.num.ctx()
    }

    pub fn num(&self) -> &VLaurent {
        &self.num
    }

    pub fn den(&self) -> &VLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial if the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&VLaurent> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: &CycloScalar) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }
}

impl From<VLaurent> for VRational {
    fn from(num: VLaurent) -> Self {
        let ctx = num.ctx();
        VRational { num, den: VLaurent::one(ctx) }
    }
}

impl<'a> Add<&'a VRational> for &'a VRational {
    type Output = VRational;
    fn add(self, rhs: &VRational) -> VRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return VRational::normalized(&self.num + &rhs.num, self.den.clone());
        }
        VRational::normalized(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a VRational> for &'a VRational {
    type Output = VRational;
    fn sub(self, rhs: &VRational) -> VRational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a VRational> for &'a VRational {
    type Output = VRational;
    fn mul(self, rhs: &VRational) -> VRational {
        if self.is_zero() || rhs.is_zero() {
            return VRational::zero(self.ctx());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return VRational { num: &self.num * &rhs.num, den: self.den.clone() };
        }
        VRational::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &VRational {
    type Output = VRational;
    fn neg(self) -> VRational {
        VRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for VRational {
    type Output = VRational;
    fn neg(self) -> VRational {
        -&self
    }
}

impl Add for VRational {
    type Output = VRational;
    fn add(self, rhs: VRational) -> VRational {
        &self + &rhs
    }
}

impl Sub for VRational {
    type Output = VRational;
    fn sub(self, rhs: VRational) -> VRational {
        &self - &rhs
    }
}

impl Mul for VRational {
    type Output = VRational;
    fn mul(self, rhs: VRational) -> VRational {
        &self * &rhs
    }
}

impl fmt::Display for VRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for VRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_reduces_to_v() {
        let c = Ctx::default();
        let a = VRational::from(VLaurent::v_diff(c, 1));
        let b = VRational::from(&VLaurent::one(c) - &VLaurent::v_pow(c, -2));
        let q = a.div(&b).unwrap();
        assert_eq!(q, VRational::from(VLaurent::v_pow(c, 1)));
        // cross-multiplication oracle
        assert_eq!(&q * &b, a);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let c = Ctx::default();
        assert_eq!(VRational::one(c).div(&VRational::zero(c)), Err(Error::DivisionByZero));
    }
}
