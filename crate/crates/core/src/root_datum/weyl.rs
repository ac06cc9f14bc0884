//! Weyl groups by breadth-first closure, and finite groups of lattice automorphisms.

use std::collections::{HashMap, VecDeque};

use super::BasedRootDatum;
use crate::error::{Error, Result};
use crate::exact_rings::IMat;

/// Closure bound; larger groups are treated as infinite.
pub const MAX_GROUP_ORDER: usize = 1_000_000;

/// W(R) with reduced words over the simple reflections.
///
/// Elements are stored in BFS order, so lengths are nondecreasing; this order
/// refines the Bruhat order. Each reduced word is the lexicographically
/// smallest one among words of minimal length.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    matrices: Vec<IMat>,
    inverse: Vec<usize>,
    words: Vec<Vec<usize>>,
    index: HashMap<IMat, usize>,
    /// left[s][w] = s·w
    left: Vec<Vec<usize>>,
    /// right[s][w] = w·s
    right: Vec<Vec<usize>>,
    dets: Vec<i64>,
}

impl WeylGroup {
    pub fn generate(rank: usize, simple: &[IMat]) -> Result<Self> {
        let id = IMat::identity(rank);
        let mut matrices = vec![id.clone()];
        let mut lengths = vec![0usize];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        let mut left: Vec<Vec<usize>> = vec![Vec::new(); simple.len()];
        while let Some(w) = queue.pop_front() {
            for (s, m) in simple.iter().enumerate() {
                let prod = m.mul(&matrices[w]);
                let k = match index.get(&prod) {
                    Some(&k) => k,
                    None => {
                        if matrices.len() >= MAX_GROUP_ORDER {
                            return Err(Error::InfiniteGroup(MAX_GROUP_ORDER));
                        }
                        let k = matrices.len();
                        index.insert(prod.clone(), k);
                        matrices.push(prod);
                        lengths.push(lengths[w] + 1);
                        queue.push_back(k);
                        k
                    }
                };
                if left[s].len() <= w {
                    left[s].resize(w + 1, usize::MAX);
                }
                left[s][w] = k;
            }
        }
        let n = matrices.len();
        // lexicographically smallest reduced words, level by level
        let mut words: Vec<Vec<usize>> = vec![Vec::new(); n];
        for w in 1..n {
            let mut best: Option<Vec<usize>> = None;
            for s in 0..simple.len() {
                let u = left[s][w];
                if lengths[u] + 1 == lengths[w] {
                    let mut cand = vec![s];
                    cand.extend(&words[u]);
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
            words[w] = best.expect("left descent exists");
        }
        let right = simple
            .iter()
            .map(|m| matrices.iter().map(|w| index[&w.mul(m)]).collect())
            .collect();
        let inverse = matrices.iter().map(|m| index[&m.inverse().expect("invertible")]).collect();
        let dets = matrices.iter().map(|m| m.det()).collect();
        Ok(WeylGroup { matrices, inverse, words, index, left, right, dets })
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrix(&self, w: usize) -> &IMat {
        &self.matrices[w]
    }

    pub fn inverse_matrix(&self, w: usize) -> &IMat {
        &self.matrices[self.inverse[w]]
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.words[w].len()
    }

    pub fn det(&self, w: usize) -> i64 {
        self.dets[w]
    }

    pub fn index_of(&self, m: &IMat) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of the simple reflection s.
    pub fn simple_index(&self, s: usize) -> usize {
        self.left[s][0]
    }

    pub fn left_mul(&self, s: usize, w: usize) -> usize {
        self.left[s][w]
    }

    pub fn right_mul(&self, w: usize, s: usize) -> usize {
        self.right[s][w]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let mut r = b;
        for &s in self.words[a].iter().rev() {
            r = self.left[s][r];
        }
        r
    }

    /// Index of the longest element.
    pub fn longest(&self) -> usize {
        self.len() - 1
    }
}

/// A finite group of unimodular matrices, identity first.
#[derive(Clone, Debug)]
pub struct GammaGroup {
    matrices: Vec<IMat>,
    inverse: Vec<usize>,
    table: Vec<Vec<usize>>,
    dets: Vec<i64>,
}

impl GammaGroup {
    pub fn generate(rank: usize, gens: &[IMat]) -> Result<Self> {
        for g in gens {
            if g.dim() != rank {
                return Err(Error::InvalidDatum(format!("Γ generator {g:?} has wrong size")));
            }
            if g.det().abs() != 1 {
                return Err(Error::InvalidDatum(format!("Γ generator {g:?} is not unimodular")));
            }
        }
        let id = IMat::identity(rank);
        let mut matrices = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for g in gens {
                let p = g.mul(&matrices[a]);
                if !index.contains_key(&p) {
                    if matrices.len() >= MAX_GROUP_ORDER {
                        return Err(Error::InfiniteGroup(MAX_GROUP_ORDER));
                    }
                    index.insert(p.clone(), matrices.len());
                    queue.push_back(matrices.len());
                    matrices.push(p);
                }
            }
        }
        let table: Vec<Vec<usize>> =
            matrices.iter().map(|a| matrices.iter().map(|b| index[&a.mul(b)]).collect()).collect();
        let inverse = (0..matrices.len()).map(|a| table[a].iter().position(|&c| c == 0).expect("group")).collect();
        let dets = matrices.iter().map(|m| m.det()).collect();
        Ok(GammaGroup { matrices, inverse, table, dets })
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[IMat] {
        &self.matrices
    }

    pub fn matrix(&self, g: usize) -> &IMat {
        &self.matrices[g]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn inverse_matrix(&self, g: usize) -> &IMat {
        &self.matrices[self.inverse[g]]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn det(&self, g: usize) -> i64 {
        self.dets[g]
    }
}

/// An element of W ⋊ Γ with its matrix and reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: IMat,
    /// Simple-reflection positions (indices into the datum's simple list).
    pub reduced_word: Vec<usize>,
    pub gamma_part: usize,
}

/// All elements of W ⋊ Γ, ordered by (length, word, γ).
pub fn generate_weyl(datum: &BasedRootDatum) -> Vec<WeylElement> {
    let mut out: Vec<WeylElement> = datum
        .elements()
        .map(|e| WeylElement {
            matrix: datum.matrix(e),
            reduced_word: datum.weyl().word(e.w).to_vec(),
            gamma_part: e.g,
        })
        .collect();
    out.sort_by(|a, b| {
        (a.reduced_word.len(), &a.reduced_word, a.gamma_part).cmp(&(b.reduced_word.len(), &b.reduced_word, b.gamma_part))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::super::tests::{a1xa1_swap, g2, gl3};
    use super::*;

    #[test]
    fn words_reproduce_matrices() {
        for d in [gl3(), a1xa1_swap(), g2()] {
            for e in generate_weyl(&d) {
                let mut m = IMat::identity(d.rank());
                for &s in &e.reduced_word {
                    m = m.mul(d.reflection(d.simple_root(s)));
                }
                assert_eq!(m.mul(d.gamma().matrix(e.gamma_part)), e.matrix);
            }
        }
    }

    #[test]
    fn reduced_words_are_lex_minimal() {
        let d = gl3();
        let w0 = d.weyl().longest();
        assert_eq!(d.weyl().word(w0), &[0, 1, 0]);
    }

    #[test]
    fn multiplication_matches_matrices() {
        let d = g2();
        let wg = d.weyl();
        for a in 0..wg.len() {
            for b in 0..wg.len() {
                assert_eq!(wg.matrix(wg.mul(a, b)), &wg.matrix(a).mul(wg.matrix(b)));
            }
        }
    }
}
