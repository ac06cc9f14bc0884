//! Dense matrices over the coefficient field.

use std::fmt;

use super::field::VRational;
use super::laurent::Ctx;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    ctx: Ctx,
    rows: usize,
    cols: usize,
    data: Vec<VRational>,
}

impl Mat {
    pub fn zeros(ctx: Ctx, rows: usize, cols: usize) -> Self {
        Mat { ctx, rows, cols, data: vec![VRational::zero(ctx); rows * cols] }
    }

    pub fn identity(ctx: Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, VRational::one(ctx));
        }
        m
    }

    pub fn scalar(ctx: Ctx, n: usize, c: &VRational) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(ctx: Ctx, rows: Vec<Vec<VRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Config("ragged matrix".into()));
        }
        Ok(Mat { ctx, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &VRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: VRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut out = Mat::zeros(self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let s = out.get(i, j) + &(a * b);
                    out.set(i, j, s);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shapes");
        Mat {
            ctx: self.ctx,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shapes");
        Mat {
            ctx: self.ctx,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &VRational) -> Mat {
        Mat { ctx: self.ctx, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn apply(&self, x: &[VRational]) -> Vec<VRational> {
        (0..self.rows)
            .map(|i| {
                let mut s = VRational::zero(self.ctx);
                for (j, xj) in x.iter().enumerate() {
                    if !xj.is_zero() && !self.get(i, j).is_zero() {
                        s = &s + &(self.get(i, j) * xj);
                    }
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Stacks matrices with equal column counts.
    pub fn vstack(ctx: Ctx, blocks: &[Mat], cols: usize) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "matrix shapes");
            data.extend(b.data.iter().cloned());
        }
        Mat { ctx, rows, cols, data }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {x : Mx = 0}.
    pub fn nullspace(&self) -> Vec<Vec<VRational>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![VRational::zero(self.ctx); self.cols];
                x[f] = VRational::one(self.ctx);
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = -m.get(i, f);
                }
                x
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::Precondition("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Mat::zeros(self.ctx, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, VRational::one(self.ctx));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let mut out = Mat::zeros(self.ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(out)
    }
}

/// Column space basis of a list of vectors, as row-reduced vectors.
pub fn span_rank(ctx: Ctx, vectors: &[Vec<VRational>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<VRational>> = vectors.to_vec();
    Mat::from_rows(ctx, rows).map(|m| m.rank()).unwrap_or(0).min(dim)
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
