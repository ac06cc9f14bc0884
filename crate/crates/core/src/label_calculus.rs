//! Label functions (λ, λ*) on both sides of the correspondence.
//!
//! The p-adic side reads labels off the splitting-field data of each root
//! orbit; the Galois side goes through the rescaling integer m_α. The two
//! computations agree on consistent data, which `check_label_match` tests.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_datum::BasedRootDatum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Nonexceptional,
    ExceptionalUnramifiedTrivialChi,
    ExceptionalUnramifiedNontrivialChi,
    ExceptionalRamified,
}

impl CaseTag {
    pub const ALL: [CaseTag; 4] = [
        CaseTag::Nonexceptional,
        CaseTag::ExceptionalUnramifiedTrivialChi,
        CaseTag::ExceptionalUnramifiedNontrivialChi,
        CaseTag::ExceptionalRamified,
    ];

    pub fn is_exceptional(self) -> bool {
        self != CaseTag::Nonexceptional
    }

    /// The unitary-group labels before scaling by the residue degree.
    fn base_labels(self) -> Option<Labels> {
        match self {
            CaseTag::Nonexceptional => None,
            CaseTag::ExceptionalUnramifiedTrivialChi => Some(Labels::new(3, 1)),
            CaseTag::ExceptionalUnramifiedNontrivialChi => Some(Labels::new(1, 1)),
            CaseTag::ExceptionalRamified => Some(Labels::new(1, 0)),
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::Nonexceptional => "nonexceptional",
            CaseTag::ExceptionalUnramifiedTrivialChi => "exceptional_unramified_trivial_chi",
            CaseTag::ExceptionalUnramifiedNontrivialChi => "exceptional_unramified_nontrivial_chi",
            CaseTag::ExceptionalRamified => "exceptional_ramified",
        };
        f.write_str(s)
    }
}

/// Arithmetic data attached to one W ⋊ Γ orbit of roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArithmeticRootData {
    /// f(F_α/F).
    pub f: u32,
    pub case: CaseTag,
    /// f(E_α/F), exceptional cases only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    /// α∨(ϖ_{F_α}⁻¹) = h² on the p-adic side.
    #[serde(default)]
    pub halved: bool,
    /// m_α α∨ ∈ 2X on the Galois side; defaults to `halved`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halved_galois: Option<bool>,
    /// Number of Frobenius-permuted components.
    #[serde(default = "one")]
    pub k: u32,
    #[serde(default = "yes")]
    pub member: bool,
}

fn one() -> u32 {
    1
}

fn yes() -> bool {
    true
}

impl ArithmeticRootData {
    pub fn nonexceptional(f: u32, halved: bool) -> Self {
        ArithmeticRootData { f, case: CaseTag::Nonexceptional, e: None, halved, halved_galois: None, k: 1, member: true }
    }

    pub fn exceptional(case: CaseTag, e: u32) -> Self {
        let f = if case == CaseTag::ExceptionalRamified { e } else { 2 * e };
        ArithmeticRootData { f, case, e: Some(e), halved: false, halved_galois: None, k: e, member: true }
    }

    pub fn halved_galois(&self) -> bool {
        self.halved_galois.unwrap_or(self.halved)
    }

    pub fn validate(&self) -> Result<()> {
        if self.f == 0 || self.k == 0 {
            return Err(Error::Config("residue degrees and component counts must be positive".into()));
        }
        match (self.case.is_exceptional(), self.e) {
            (true, None) => Err(Error::Config(format!("{} requires residue_degree_e", self.case))),
            (true, Some(0)) => Err(Error::Config("residue_degree_e must be positive".into())),
            _ => Ok(()),
        }
    }

    /// Whether the data describe an actual group: m_α = f(F_α/F), and for
    /// exceptional orbits k = f(E_α/F).
    pub fn is_consistent(&self) -> bool {
        if self.validate().is_err() {
            return false;
        }
        let Ok(m) = m_alpha(self) else { return false };
        let exc_ok = !self.case.is_exceptional() || Some(self.k) == self.e;
        m.m == self.f && exc_ok
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Labels {
    pub lambda: i64,
    pub lambda_star: i64,
}

impl Labels {
    pub fn new(lambda: i64, lambda_star: i64) -> Self {
        Labels { lambda, lambda_star }
    }

    fn scaled(self, c: i64) -> Self {
        Labels::new(self.lambda * c, self.lambda_star * c)
    }

    pub fn is_equal_parameter(&self) -> bool {
        self.lambda == self.lambda_star
    }
}

impl fmt::Display for Labels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lambda, self.lambda_star)
    }
}

/// p-adic labels on h_α∨; `None` for roots outside the reflection subsystem.
pub fn labels_padic(data: &ArithmeticRootData) -> Result<Option<Labels>> {
    data.validate()?;
    if !data.member {
        return Ok(None);
    }
    let f = data.f as i64;
    Ok(Some(match data.case.base_labels() {
        None if data.halved => Labels::new(f, 0),
        None => Labels::new(f, f),
        Some(base) => base.scaled(data.e.expect("validated") as i64),
    }))
}

/// The rescaling integers of the Galois-side roots m̃_α α∨.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MAlpha {
    pub m_prime: u32,
    pub m: u32,
    /// m_α, or m_α/2 when the Galois-side root is halved.
    pub m_tilde: Rational64,
}

pub fn m_alpha(data: &ArithmeticRootData) -> Result<MAlpha> {
    data.validate()?;
    let m_prime = match data.case {
        CaseTag::Nonexceptional => {
            if data.f % data.k != 0 {
                return Err(Error::Config(format!("component count {} does not divide f = {}", data.k, data.f)));
            }
            data.f / data.k
        }
        CaseTag::ExceptionalRamified => 1,
        CaseTag::ExceptionalUnramifiedTrivialChi | CaseTag::ExceptionalUnramifiedNontrivialChi => 2,
    };
    let m = data.k * m_prime;
    let m_tilde =
        if data.halved_galois() { Rational64::new(m as i64, 2) } else { Rational64::from_integer(m as i64) };
    Ok(MAlpha { m_prime, m, m_tilde })
}

/// Galois labels on m̃_α α∨.
pub fn labels_galois(data: &ArithmeticRootData) -> Result<Option<Labels>> {
    data.validate()?;
    if !data.member {
        return Ok(None);
    }
    let ma = m_alpha(data)?;
    let m = ma.m as i64;
    Ok(Some(match data.case.base_labels() {
        None if data.halved_galois() => Labels::new(m, 0),
        None => Labels::new(m, m),
        Some(base) => base.scaled((ma.m / ma.m_prime) as i64),
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMatch {
    pub padic: Option<Labels>,
    pub galois: Option<Labels>,
    pub m: MAlpha,
    pub matches: bool,
}

pub fn check_label_match(data: &ArithmeticRootData) -> Result<LabelMatch> {
    let padic = labels_padic(data)?;
    let galois = labels_galois(data)?;
    let m = m_alpha(data)?;
    Ok(LabelMatch { padic, galois, m, matches: padic == galois })
}

/// Labels on every root of a datum, constant on W ⋊ Γ orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelFunction {
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    values: Vec<Labels>,
}

impl LabelFunction {
    /// `per_root(i)` supplies the labels of root i; they must be constant on orbits
    /// and satisfy λ ≥ λ* ≥ 0 with λ* = λ off two-divisible coroots.
    pub fn from_fn(datum: &BasedRootDatum, per_root: impl Fn(usize) -> Option<Labels>) -> Result<Self> {
        let (orbits, orbit_of) = datum.root_orbits();
        let mut values = Vec::with_capacity(orbits.len());
        for orbit in &orbits {
            let l = per_root(orbit[0])
                .ok_or_else(|| Error::LabelMismatch(format!("no labels for root orbit {:?}", orbit)))?;
            for &i in orbit {
                if per_root(i).is_some_and(|m| m != l) {
                    return Err(Error::LabelMismatch(format!("labels are not constant on orbit {:?}", orbit)));
                }
            }
            if l.lambda < l.lambda_star || l.lambda_star < 0 || l.lambda <= 0 {
                return Err(Error::LabelMismatch(format!("labels {l} violate λ ≥ λ* ≥ 0, λ > 0")));
            }
            if l.lambda != l.lambda_star && !datum.is_coroot_two_divisible(orbit[0]) {
                return Err(Error::LabelMismatch(format!(
                    "λ* ≠ λ on root {:?} whose coroot is not two-divisible",
                    datum.root(orbit[0])
                )));
            }
            values.push(l);
        }
        Ok(LabelFunction { orbits, orbit_of, values })
    }

    /// The same labels on every root.
    pub fn uniform(datum: &BasedRootDatum, l: Labels) -> Result<Self> {
        Self::from_fn(datum, |_| Some(l))
    }

    /// Labels from per-orbit arithmetic data, keyed by any root of the orbit.
    pub fn from_arithmetic(
        datum: &BasedRootDatum,
        data: &[(usize, ArithmeticRootData)],
        side: Side,
    ) -> Result<Self> {
        let (orbits, orbit_of) = datum.root_orbits();
        let mut per_orbit: Vec<Option<Labels>> = vec![None; orbits.len()];
        for (root, d) in data {
            let o = *orbit_of
                .get(*root)
                .ok_or_else(|| Error::Config(format!("arithmetic data for unknown root {root}")))?;
            let l = match side {
                Side::Padic => labels_padic(d)?,
                Side::Galois => labels_galois(d)?,
            }
            .ok_or_else(|| Error::Config(format!("root orbit of {root} is not in the reflection subsystem")))?;
            if per_orbit[o].is_some_and(|p| p != l) {
                return Err(Error::LabelMismatch(format!("conflicting labels on orbit of root {root}")));
            }
            per_orbit[o] = Some(l);
        }
        Self::from_fn(datum, |i| per_orbit[orbit_of[i]])
    }

    pub fn get(&self, root: usize) -> Labels {
        self.values[self.orbit_of[root]]
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_labels(&self) -> &[Labels] {
        &self.values
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Padic,
    Galois,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Padic => "padic",
            Side::Galois => "galois",
        })
    }
}

/// Every data point with f, e, k ∈ values, both halving flags and all tags.
pub fn case_space(values: &[u32]) -> Vec<ArithmeticRootData> {
    let mut out = Vec::new();
    for &case in &CaseTag::ALL {
        for &f in values {
            for &k in values {
                for halved in [false, true] {
                    if case.is_exceptional() {
                        for &e in values {
                            out.push(ArithmeticRootData {
                                f,
                                case,
                                e: Some(e),
                                halved,
                                halved_galois: None,
                                k,
                                member: true,
                            });
                        }
                    } else {
                        out.push(ArithmeticRootData {
                            f,
                            case,
                            e: None,
                            halved,
                            halved_galois: None,
                            k,
                            member: true,
                        });
                    }
                }
            }
        }
    }
    out
}
