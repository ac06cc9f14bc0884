//! Isotropy of unitary points and the positive-parameter subsystem.

use std::collections::{HashSet, VecDeque};

use num_rational::Rational64;

use super::{BasedRootDatum, GroupElement};
use crate::error::{Error, Result};
use crate::exact_rings::lattice;
use crate::exact_rings::{IMat, TorusPoint};

#[derive(Clone, Debug)]
pub struct IsotropyData {
    /// R_u: roots whose reflection fixes u.
    pub roots_u: Vec<usize>,
    /// k^u_α in units of log q, aligned with `roots_u`.
    pub k_values: Vec<Rational64>,
    /// W_u: stabilizer of u in W ⋊ Γ.
    pub stabilizer: Vec<GroupElement>,
    /// R_{u>0}: roots of R_u with k > 0.
    pub roots_pos: Vec<usize>,
    /// |W(R_{u>0})|.
    pub weyl_pos_order: usize,
    /// Γ_{u>0}: elements of W_u preserving R_{u>0} ∩ R⁺.
    pub gamma_pos: Vec<GroupElement>,
}

impl IsotropyData {
    /// |W_u| = |W(R_{u>0})|·|Γ_{u>0}|.
    pub fn factorization_holds(&self) -> bool {
        self.stabilizer.len() == self.weyl_pos_order * self.gamma_pos.len()
    }

    pub fn k_of(&self, root: usize) -> Option<Rational64> {
        self.roots_u.iter().position(|&r| r == root).map(|p| self.k_values[p])
    }
}

/// Value u(h) as an exponent of ζ_N.
fn zeta_value(u: &TorusPoint, h: &[i64]) -> i64 {
    u.value_exponents(h).0
}

/// Computes R_u, W_u, R_{u>0} and Γ_{u>0}; `labels[i]` = (λ, λ*) of root i.
pub fn isotropy_data(datum: &BasedRootDatum, labels: &[(i64, i64)], u: &TorusPoint) -> Result<IsotropyData> {
    if !u.is_unitary() {
        return Err(Error::InvalidPoint(format!("{u} is not unitary")));
    }
    if u.rank() != datum.rank() {
        return Err(Error::Config("point rank differs from datum rank".into()));
    }
    let n = u.ctx().order as i64;
    let mut roots_u = Vec::new();
    let mut k_values = Vec::new();
    for i in 0..datum.roots().len() {
        let a = zeta_value(u, datum.root(i));
        let c = lattice::content(datum.coroot(i));
        if (a * c).rem_euclid(n) != 0 {
            continue;
        }
        let (l, ls) = labels[i];
        let sign = if a == 0 {
            1
        } else if 2 * a == n {
            -1
        } else {
            return Err(Error::Precondition(format!("u(h) = ζ^{a} is not ±1 on isotropy root {i}")));
        };
        roots_u.push(i);
        k_values.push(Rational64::new(l + sign * ls, 2));
    }
    let stabilizer: Vec<GroupElement> = datum.elements().filter(|&e| datum.act_on_point(e, u) == *u).collect();
    let roots_pos: Vec<usize> =
        roots_u.iter().zip(&k_values).filter(|(_, k)| **k > Rational64::from_integer(0)).map(|(&i, _)| i).collect();
    let weyl_pos_order = reflection_group_order(datum, &roots_pos);
    let pos_plus: HashSet<usize> = roots_pos.iter().copied().filter(|&i| datum.is_positive(i)).collect();
    let gamma_pos = stabilizer
        .iter()
        .copied()
        .filter(|&e| pos_plus.iter().all(|&i| pos_plus.contains(&datum.act_on_root(e, i))))
        .collect();
    Ok(IsotropyData { roots_u, k_values, stabilizer, roots_pos, weyl_pos_order, gamma_pos })
}

/// Order of the group generated by the reflections in `roots`.
pub(crate) fn reflection_group_order(datum: &BasedRootDatum, roots: &[usize]) -> usize {
    let gens: Vec<&IMat> = roots.iter().map(|&i| datum.reflection(i)).collect();
    closure_order(datum.rank(), &gens)
}

pub(crate) fn closure_order(rank: usize, gens: &[&IMat]) -> usize {
    let id = IMat::identity(rank);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let p = g.mul(&m);
            if seen.insert(p.clone()) {
                queue.push_back(p);
            }
        }
    }
    seen.len()
}
