//! Reduction of module matrices to F_p for a fast irreducibility certificate.
//!
//! ζ ↦ ω (a primitive N-th root of unity mod p, p ≡ 1 mod N) and v^{1/D} ↦ c
//! define a ring homomorphism on every entry whose denominator survives. If
//! the images of words in the generators span all n×n matrices over F_p, some
//! n²-minor of the original words is non-zero, so the generators span End(V)
//! over F as well. A failed check proves nothing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::exact_rings::{Ctx, CycloScalar, Mat, VLaurent, VRational};

#[derive(Clone, Copy, Debug)]
struct Field {
    p: u64,
    omega: u64,
    v: u64,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    (a % p != 0).then(|| pow_mod(a, p - 2, p))
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The largest prime p ≡ 1 mod N below 2^31, with a primitive N-th root.
    fn new(ctx: Ctx, v: u64) -> Field {
        let n = ctx.order as u64;
        let mut p = ((1u64 << 31) - 1) / n * n + 1;
        while !is_prime(p) {
            p -= n;
        }
        let qs = prime_factors(n);
        let omega = (2..p)
            .map(|a| pow_mod(a, (p - 1) / n, p))
            .find(|&w| qs.iter().all(|q| pow_mod(w, n / q, p) != 1))
            .expect("F_p^× is cyclic");
        Field { p, omega, v: v % p }
    }

    fn rational(&self, num: &BigInt, den: &BigInt) -> Option<u64> {
        let p = BigInt::from(self.p);
        let n = num.mod_floor(&p).to_u64()?;
        let d = den.mod_floor(&p).to_u64()?;
        Some(n * inv_mod(d, self.p)? % self.p)
    }

    fn scalar(&self, c: &CycloScalar) -> Option<u64> {
        let mut acc = 0;
        let mut w = 1;
        for q in c.coeffs() {
            if !q.is_zero() {
                acc = (acc + self.rational(q.numer(), q.denom())? * w) % self.p;
            }
            w = w * self.omega % self.p;
        }
        Some(acc)
    }

    fn laurent(&self, l: &VLaurent) -> Option<u64> {
        let vinv = inv_mod(self.v, self.p)?;
        let mut acc = 0;
        for (&k, c) in l.terms() {
            let base = if k >= 0 { pow_mod(self.v, k as u64, self.p) } else { pow_mod(vinv, k.unsigned_abs(), self.p) };
            acc = (acc + self.scalar(c)? * base) % self.p;
        }
        Some(acc)
    }

    fn element(&self, x: &VRational) -> Option<u64> {
        let d = self.laurent(x.den())?;
        Some(self.laurent(x.num())? * inv_mod(d, self.p)? % self.p)
    }

    fn matrix(&self, m: &Mat) -> Option<Vec<Vec<u64>>> {
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| self.element(m.get(i, j))).collect()).collect()
    }
}

struct EchelonP {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonP {
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + (p - c) * r) % p;
                }
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[piv], p).expect("non-zero pivot");
        v.iter_mut().for_each(|x| *x = *x * inv % p);
        self.rows.push((piv, v));
        true
    }
}

fn mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0; m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let c = a[i][k];
            if c != 0 {
                for j in 0..m {
                    out[i][j] = (out[i][j] + c * bk[j]) % p;
                }
            }
        }
    }
    out
}

fn spans_with(f: Field, gens: &[Mat], n: usize) -> bool {
    let Some(gs) = gens.iter().map(|g| f.matrix(g)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let flat = |m: &[Vec<u64>]| m.iter().flatten().copied().collect::<Vec<u64>>();
    let id: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    let mut ech = EchelonP { p: f.p, rows: Vec::new() };
    ech.insert(flat(&id));
    let mut queue = vec![id];
    while let Some(a) = queue.pop() {
        for g in &gs {
            let b = mul(g, &a, f.p);
            if ech.insert(flat(&b)) {
                if ech.rows.len() == n * n {
                    return true;
                }
                queue.push(b);
            }
        }
    }
    false
}

/// True only if the generators certainly span End(V) over F.
pub(crate) fn certifies_full_span(gens: &[Mat]) -> bool {
    let Some(first) = gens.first() else {
        return false;
    };
    let n = first.rows();
    if n == 0 {
        return false;
    }
    let ctx = first.ctx();
    [1_234_567u64, 7_654_321].into_iter().any(|v| spans_with(Field::new(ctx, v), gens, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_has_primitive_root() {
        let f = Field::new(Ctx::default(), 3);
        assert_eq!((f.p - 1) % 12, 0);
        assert_eq!(pow_mod(f.omega, 12, f.p), 1);
        assert_ne!(pow_mod(f.omega, 6, f.p), 1);
        assert_ne!(pow_mod(f.omega, 4, f.p), 1);
    }

    #[test]
    fn scalar_map_is_multiplicative() {
        let ctx = Ctx::default();
        let f = Field::new(ctx, 5);
        let a = VLaurent::zeta_v(ctx, 5, 3);
        let b = VLaurent::zeta_v(ctx, 9, -1);
        let ab = &a * &b;
        assert_eq!(f.laurent(&ab), Some(f.laurent(&a).unwrap() * f.laurent(&b).unwrap() % f.p));
    }
}
