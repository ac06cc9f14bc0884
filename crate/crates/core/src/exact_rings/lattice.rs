//! Integer vectors and square integer matrices acting on Z^r.

use std::fmt;

use crate::error::{Error, Result};

/// Square integer matrix, row-major, acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IMat {
    n: usize,
    data: Vec<i64>,
}

impl IMat {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IMat { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Config(format!("matrix is not square ({n} rows)")));
        }
        Ok(IMat { n, data: rows.iter().flatten().copied().collect() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        IMat { n, data }
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.data[i * self.n + j] * x[j]).sum()).collect()
    }

    /// x ↦ xᵀ·M, the dual action on row vectors.
    pub fn apply_row(&self, y: &[i64]) -> Vec<i64> {
        (0..self.n).map(|j| (0..self.n).map(|i| y[i] * self.data[i * self.n + j]).sum()).collect()
    }

    pub fn transpose(&self) -> IMat {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        IMat { n, data }
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> i64 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
                    return 0;
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        (sign * a[n * n - 1]) as i64
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Result<IMat> {
        let n = self.n;
        let d = self.det();
        if d.abs() != 1 {
            return Err(Error::InvalidDatum(format!("matrix with determinant {d} is not invertible over Z")));
        }
        // Gauss-Jordan over rationals with integer result.
        let mut a: Vec<Vec<num_rational::Rational64>> = (0..n)
            .map(|i| {
                let mut row: Vec<num_rational::Rational64> =
                    (0..n).map(|j| num_rational::Rational64::from_integer(self.get(i, j))).collect();
                row.extend((0..n).map(|j| num_rational::Rational64::from_integer((i == j) as i64)));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| a[r][c] != 0.into()).expect("invertible");
            a.swap(c, p);
            let piv = a[c][c];
            for x in a[c].iter_mut() {
                *x /= piv;
            }
            for r in 0..n {
                if r != c && a[r][c] != 0.into() {
                    let f = a[r][c];
                    let pivot_row = a[c].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        let data = a.iter().flat_map(|row| row[n..].iter().map(|x| x.to_integer())).collect();
        Ok(IMat { n, data })
    }
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

pub fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn add(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale(x: &[i64], c: i64) -> Vec<i64> {
    x.iter().map(|a| a * c).collect()
}

pub fn neg(x: &[i64]) -> Vec<i64> {
    x.iter().map(|a| -a).collect()
}

/// Greatest common divisor of the entries (0 for the zero vector).
pub fn content(x: &[i64]) -> i64 {
    x.iter().fold(0i64, |g, &a| num_integer::gcd(g, a))
}

/// Whether the first nonzero entry is positive.
pub fn is_lex_positive(x: &[i64]) -> bool {
    x.iter().find(|&&a| a != 0).is_some_and(|&a| a > 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_inverse() {
        let m = IMat::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.det(), -1);
        assert_eq!(m.inverse().unwrap(), m);
        let u = IMat::from_rows(&[vec![1, 2, 0], vec![0, 1, 0], vec![3, 6, 1]]).unwrap();
        assert_eq!(u.det(), 1);
        assert!(u.mul(&u.inverse().unwrap()).is_identity());
        let s = IMat::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert!(s.inverse().is_err());
    }
}
