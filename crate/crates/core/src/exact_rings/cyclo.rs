//! Elements of the cyclotomic field Q(ζ_N) in the power basis modulo Φ_N.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest supported cyclotomic order.
pub const MAX_ORDER: u32 = 360;

struct CycloTable {
    /// Φ_N, low degree first, monic.
    phi: Vec<i64>,
    /// Reductions of x^k modulo Φ_N, for k < max(N, 2 deg).
    powers: Vec<Vec<i64>>,
}

impl CycloTable {
    fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

static TABLES: [OnceLock<CycloTable>; MAX_ORDER as usize + 1] =
    [const { OnceLock::new() }; MAX_ORDER as usize + 1];

/// Φ_n with integer coefficients, low degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1 && n <= MAX_ORDER, "cyclotomic order {n} out of range");
    table(n).phi.clone()
}

fn table(n: u32) -> &'static CycloTable {
    TABLES[n as usize].get_or_init(|| build_table(n))
}

fn build_table(n: u32) -> CycloTable {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<i128> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div: Vec<i128> = table(d).phi.iter().map(|&c| c as i128).collect();
            num = exact_div_monic(&num, &div);
        }
    }
    let phi: Vec<i64> = num.iter().map(|&c| i64::try_from(c).expect("Φ_N coefficient")).collect();
    let deg = phi.len() - 1;
    let count = (n as usize).max(2 * deg).max(1);
    let mut powers = Vec::with_capacity(count);
    let mut cur = vec![0i64; deg.max(1)];
    if deg == 0 {
        unreachable!("Φ_N has positive degree");
    }
    cur[0] = 1;
    for _ in 0..count {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[deg - 1];
        for j in (1..deg).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..deg {
                cur[j] -= top * phi[j];
            }
        }
    }
    CycloTable { phi, powers }
}

fn exact_div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for j in 0..=dn {
                rem[i + j] -= c * den[j];
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    table(n).degree()
}

/// An element of Q(ζ_N).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloScalar {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycloScalar {
    pub fn check_order(n: u32) -> Result<()> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::Config(format!("cyclotomic order {n} outside 1..={MAX_ORDER}")));
        }
        Ok(())
    }

    pub fn zero(order: u32) -> Self {
        let deg = table(order).degree();
        CycloScalar { order, coeffs: vec![BigRational::zero(); deg] }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_int(order: u32, c: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn from_rational(order: u32, c: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = c;
        z
    }

    /// ζ_N^a for any integer a.
    pub fn zeta_pow(order: u32, a: i64) -> Self {
        let t = table(order);
        let k = a.rem_euclid(order as i64) as usize;
        CycloScalar {
            order,
            coeffs: t.powers[k].iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order, other.order, "cyclotomic orders differ");
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CycloScalar { order: self.order, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplication by ζ^a.
    pub fn mul_zeta_pow(&self, a: i64) -> Self {
        let k = a.rem_euclid(self.order as i64);
        if k == 0 {
            return self.clone();
        }
        self * &CycloScalar::zeta_pow(self.order, k)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order, r.recip()));
        }
        // Extended Euclid: find s with s·a ≡ 1 mod Φ_N.
        let t = table(self.order);
        let phi: Vec<BigRational> =
            t.phi.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        let a = trim(self.coeffs.clone());
        let (g, s) = poly_ext_gcd(&a, &phi);
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let mut coeffs: Vec<BigRational> = s.into_iter().map(|c| c * &ginv).collect();
        coeffs.resize(t.degree(), BigRational::zero());
        Ok(CycloScalar { order: self.order, coeffs })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.order);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Returns `(c, a)` with self = c·ζ^a and c rational, a minimal in 0..N, c > 0 when possible.
    pub fn as_scaled_root_of_unity(&self) -> Option<(BigRational, u32)> {
        if self.is_zero() {
            return None;
        }
        let mut fallback = None;
        for a in 0..self.order {
            let q = self.mul_zeta_pow(-(a as i64));
            if let Some(r) = q.as_rational() {
                if r.is_positive() {
                    return Some((r.clone(), a));
                }
                if fallback.is_none() {
                    fallback = Some((r.clone(), a));
                }
            }
        }
        fallback
    }

    /// Returns `a` with self = ζ^a, if any.
    pub fn root_of_unity_exponent(&self) -> Option<u32> {
        match self.as_scaled_root_of_unity() {
            Some((c, a)) if c.is_one() => Some(a),
            _ => None,
        }
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let lead_inv = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] * &lead_inv;
        if !c.is_zero() {
            for j in 0..=db {
                let t = &c * &b[j];
                r[i + j] -= t;
            }
        }
        q[i] = c;
    }
    r.truncate(db.max(1));
    (trim(q), trim(r))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn is_zero_poly(a: &[BigRational]) -> bool {
    a.iter().all(|c| c.is_zero())
}

/// Returns (g, s) with s·a ≡ g mod m and g = gcd(a, m).
fn poly_ext_gcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !is_zero_poly(&r1) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl<'a> Add<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        self.check(rhs);
        CycloScalar {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        self.check(rhs);
        CycloScalar {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        self.check(rhs);
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        let t = table(self.order);
        let deg = t.degree();
        let mut conv = vec![BigRational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<BigRational> = conv[..deg].to_vec();
        for (k, c) in conv.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for (j, &p) in t.powers[k].iter().enumerate() {
                if p != 0 {
                    coeffs[j] += c * BigRational::from_integer(BigInt::from(p));
                }
            }
        }
        CycloScalar { order: self.order, coeffs }
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl Add for CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: CycloScalar) -> CycloScalar {
        &self + &rhs
    }
}

impl Sub for CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: CycloScalar) -> CycloScalar {
        &self - &rhs
    }
}

impl Mul for CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: CycloScalar) -> CycloScalar {
        &self * &rhs
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", fmt_rational(r));
        }
        if let Some((c, a)) = self.as_scaled_root_of_unity() {
            return match (a, c.is_one(), (-&c).is_one()) {
                (0, _, _) => write!(f, "{}", fmt_rational(&c)),
                (_, true, _) => write!(f, "ζ^{a}"),
                (_, _, true) => write!(f, "-ζ^{a}"),
                _ => write!(f, "{}*ζ^{a}", fmt_rational(&c)),
            };
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(if k == 0 { fmt_rational(c) } else { format!("{}*ζ^{k}", fmt_rational(c)) });
        }
        write!(f, "({})", parts.join(" + "))
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(360), 96);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycloScalar::zeta_pow(4, 1);
        assert_eq!(&i * &i, CycloScalar::from_int(4, -1));
    }

    #[test]
    fn zeta_order() {
        for n in [1u32, 2, 3, 5, 6, 12, 30] {
            let z = CycloScalar::zeta_pow(n, 1);
            assert!(z.pow(n as i64).unwrap().is_one());
            for k in 1..n {
                assert!(!z.pow(k as i64).unwrap().is_one());
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = &CycloScalar::zeta_pow(12, 1) + &CycloScalar::from_rational(12, q(2, 3));
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(CycloScalar::zero(12).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_roots_of_unity() {
        assert_eq!(CycloScalar::zeta_pow(12, 6).to_string(), "-1");
        assert_eq!(CycloScalar::zeta_pow(12, 5).to_string(), "ζ^5");
        assert_eq!(CycloScalar::zeta_pow(12, 11).root_of_unity_exponent(), Some(11));
    }
}
