//! Pairing parameters with constituents of principal-series modules.
//!
//! Parameters are grouped by the W ⋊ Γ-orbit of t̃. Within a group the
//! constituents of the principal series at t̃ are split by genericity
//! (det-multiplicity one) and parameters by the dense-orbit condition with
//! trivial enhancement. A class with one entry on each side is paired; larger
//! classes are reported as ambiguous.

use std::collections::BTreeMap;

use super::{Enhancement, MatrixDualGroup, PSParameter};
use crate::bernstein_hecke::HeckeAlgebra;
use crate::error::{Error, Result};
use crate::exact_rings::TorusPoint;
use crate::module_repr::{principal_series_module, FiniteModule};

pub struct MatchBlock {
    pub alg: HeckeAlgebra,
    pub group: MatrixDualGroup,
    pub parameters: Vec<PSParameter>,
    /// Central character for the twist-compatibility check.
    pub twist: Option<TorusPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSummary {
    pub dim: usize,
    pub det_multiplicity: usize,
    pub weights: Vec<(TorusPoint, usize)>,
    /// Casselman-type cone condition on the real parts of the weights.
    pub tempered: bool,
    pub unitary_weights: bool,
    pub certified: bool,
}

impl ModuleSummary {
    fn of(m: &FiniteModule, certified: bool) -> Result<Self> {
        let weights = m.weights()?;
        Ok(ModuleSummary {
            dim: m.dim(),
            det_multiplicity: m.det_multiplicity(),
            unitary_weights: weights.iter().all(|(w, _)| w.is_unitary()),
            weights,
            tempered: m.weights_in_tempered_cone()?,
            certified,
        })
    }

    pub fn is_generic(&self) -> bool {
        self.det_multiplicity >= 1
    }

    pub fn weights_string(&self) -> String {
        self.weights.iter().map(|(w, m)| if *m == 1 { format!("{w}") } else { format!("{w}^{m}") }).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchStatus {
    Paired,
    /// Several candidates on one side of a (central character, genericity) class.
    Ambiguous,
    Unmatched(String),
}

#[derive(Clone, Debug)]
pub struct MatchRow {
    pub parameter: String,
    pub t_tilde: TorusPoint,
    pub dense: bool,
    pub bounded: bool,
    pub enhancement: Enhancement,
    pub module: Option<ModuleSummary>,
    pub status: MatchStatus,
    pub central_ok: bool,
    pub generic_ok: bool,
    pub bounded_ok: bool,
}

impl MatchRow {
    pub fn ok(&self) -> bool {
        match self.status {
            MatchStatus::Paired => self.central_ok && self.generic_ok && self.bounded_ok,
            MatchStatus::Ambiguous => true,
            MatchStatus::Unmatched(_) => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatchTable {
    pub rows: Vec<MatchRow>,
    /// Constituents no listed parameter claims.
    pub unclaimed: Vec<ModuleSummary>,
    pub twist_ok: Option<bool>,
}

impl MatchTable {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(MatchRow::ok) && self.twist_ok != Some(false)
    }

    pub fn row(&self, name: &str) -> Option<&MatchRow> {
        self.rows.iter().find(|r| r.parameter == name)
    }
}

struct Candidate {
    summary: ModuleSummary,
    central: Vec<TorusPoint>,
}

fn match_core(alg: &HeckeAlgebra, params: &[PSParameter]) -> Result<(Vec<MatchRow>, Vec<ModuleSummary>)> {
    let d = alg.datum();
    let mut groups: BTreeMap<TorusPoint, Vec<(usize, TorusPoint)>> = BTreeMap::new();
    for (k, p) in params.iter().enumerate() {
        if !p.group.matches_datum(d, &p.s_inertia) {
            return Err(Error::Precondition(format!("parameter {} does not match the root datum of the block", p.name)));
        }
        let t = p.infinitesimal_point()?;
        let key = d.point_orbit(&t).into_iter().min().expect("orbit contains t");
        groups.entry(key).or_default().push((k, t));
    }
    let mut rows: Vec<Option<MatchRow>> = vec![None; params.len()];
    let mut unclaimed = Vec::new();
    for members in groups.values() {
        let rep = &members[0].1;
        let m = principal_series_module(alg, rep)?;
        let dec = m.decompose()?;
        let mut cands: Vec<Candidate> = Vec::new();
        for c in &dec.constituents {
            let summary = ModuleSummary::of(&c.module, c.certified)?;
            if cands.iter().any(|x| x.summary == summary) {
                continue;
            }
            cands.push(Candidate { summary, central: c.module.central_character()? });
        }
        for generic in [true, false] {
            let ps: Vec<&(usize, TorusPoint)> = members
                .iter()
                .filter(|(k, _)| {
                    let p = &params[*k];
                    let dense = p.is_dense_orbit().unwrap_or(false);
                    (dense && p.enhancement == Enhancement::Trivial) == generic
                })
                .collect();
            let ms: Vec<&Candidate> = cands.iter().filter(|c| c.summary.is_generic() == generic).collect();
            for (k, t) in &ps {
                let p = &params[*k];
                let dense = p.is_dense_orbit()?;
                let bounded = p.predicates()?.bounded;
                let mut row = MatchRow {
                    parameter: p.name.clone(),
                    t_tilde: t.clone(),
                    dense,
                    bounded,
                    enhancement: p.enhancement.clone(),
                    module: None,
                    status: MatchStatus::Ambiguous,
                    central_ok: false,
                    generic_ok: false,
                    bounded_ok: false,
                };
                if ms.is_empty() {
                    row.status = MatchStatus::Unmatched(format!(
                        "no {} constituent at central character {rep}",
                        if generic { "generic" } else { "non-generic" }
                    ));
                } else if ps.len() == 1 && ms.len() == 1 && ms[0].summary.certified {
                    let c = ms[0];
                    row.status = MatchStatus::Paired;
                    row.central_ok = c.central.contains(t);
                    row.generic_ok = c.summary.det_multiplicity <= 1
                        && (c.summary.det_multiplicity == 1) == (dense && p.enhancement == Enhancement::Trivial);
                    row.bounded_ok = bounded == c.summary.tempered;
                    row.module = Some(c.summary.clone());
                }
                rows[*k] = Some(row);
            }
            if ps.is_empty() {
                unclaimed.extend(ms.iter().map(|c| c.summary.clone()));
            }
        }
    }
    Ok((rows.into_iter().map(|r| r.expect("every parameter is placed")).collect(), unclaimed))
}

fn twisted_summary(s: &ModuleSummary, z: &TorusPoint) -> Vec<(TorusPoint, usize)> {
    let mut w: Vec<(TorusPoint, usize)> = s.weights.iter().map(|(t, m)| (z.mul(t), *m)).collect();
    w.sort();
    w
}

pub fn match_bijection(block: &MatchBlock) -> Result<MatchTable> {
    let (rows, unclaimed) = match_core(&block.alg, &block.parameters)?;
    let twist_ok = match &block.twist {
        None => None,
        Some(z) => {
            if !block.group.is_central(z) {
                return Err(Error::InvalidPoint(format!("twist {z} is not central")));
            }
            let alg = block.alg.twisted(z)?;
            let params = block.parameters.iter().map(|p| p.twist(z)).collect::<Result<Vec<_>>>()?;
            let (trows, _) = match_core(&alg, &params)?;
            Some(rows.iter().zip(&trows).all(|(a, b)| {
                a.status == b.status
                    && b.t_tilde == z.mul(&a.t_tilde)
                    && match (&a.module, &b.module) {
                        (Some(x), Some(y)) => {
                            y.weights == twisted_summary(x, z)
                                && x.det_multiplicity == y.det_multiplicity
                                && x.tempered == y.tempered
                        }
                        (None, None) => true,
                        _ => false,
                    }
            }))
        }
    };
    Ok(MatchTable { rows, unclaimed, twist_ok })
}

#[cfg(test)]
mod tests {
    use super::super::tests::param;
    use super::*;
    use crate::bernstein_hecke::tests::gl;
    use crate::exact_rings::Ctx;

    fn gl2_block() -> MatchBlock {
        let mut st = param(2, &[0, 0], &[(0, 1)]);
        st.name = "steinberg".into();
        let mut zero = param(2, &[-2, 2], &[]);
        zero.name = "zero".into();
        let ur = TorusPoint::new(Ctx::default(), vec![1, 0], vec![0, 0]).unwrap();
        let mut reg = param(2, &[0, 0], &[]);
        reg.name = "regular".into();
        reg.frobenius = ur;
        let z = TorusPoint::new(Ctx::default(), vec![6, 6], vec![0, 0]).unwrap();
        MatchBlock { alg: gl(2), group: st.group.clone(), parameters: vec![st, zero, reg], twist: Some(z) }
    }

    #[test]
    fn gl2_steinberg_block() {
        let t = match_bijection(&gl2_block()).unwrap();
        assert!(t.all_ok(), "{t:#?}");
        let st = t.row("steinberg").unwrap();
        assert_eq!(st.status, MatchStatus::Paired);
        assert_eq!(st.module.as_ref().unwrap().det_multiplicity, 1);
        let zero = t.row("zero").unwrap();
        assert_eq!(zero.status, MatchStatus::Paired);
        assert_eq!(zero.module.as_ref().unwrap().det_multiplicity, 0);
        assert!(!zero.bounded);
        let reg = t.row("regular").unwrap();
        assert!(reg.dense && reg.bounded);
        assert_eq!(reg.module.as_ref().unwrap().dim, 2);
        assert_eq!(t.twist_ok, Some(true));
    }
}
