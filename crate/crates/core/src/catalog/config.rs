//! JSON catalog format and its validation.

use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::Task;
use crate::bernstein_hecke::HeckeAlgebra;
use crate::error::{Error, Result};
use crate::exact_rings::{Ctx, IMat, Mat, TorusPoint, VRational};
use crate::label_calculus::{ArithmeticRootData, LabelFunction, Side};
use crate::lparam_side::{Enhancement, GroupKind, MatrixDualGroup, PSParameter};
use crate::root_datum::BasedRootDatum;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogConfig {
    #[serde(default)]
    pub coefficients: Coefficients,
    pub cases: Vec<CaseConfig>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coefficients {
    pub zeta_order: u32,
    pub v_denominator: u32,
}

impl Default for Coefficients {
    fn default() -> Self {
        Coefficients { zeta_order: 12, v_denominator: 2 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumConfig {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    /// Indices into `roots`.
    pub simple: Vec<usize>,
    /// Generators of Γ as integer matrices acting on the lattice.
    #[serde(default)]
    pub gamma: Vec<Vec<Vec<i64>>>,
}

/// Arithmetic data for the orbit of `root`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitData {
    pub root: usize,
    pub data: ArithmeticRootData,
}

/// Extra arithmetic data points for the label table, with optional expected labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelVariant {
    pub name: String,
    pub data: ArithmeticRootData,
    #[serde(default)]
    pub expected: Option<[i64; 2]>,
}

/// A torus point as per-coordinate (fraction of a turn, v-exponent) strings.
pub type PointConfig = Vec<[String; 2]>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterConfig {
    pub name: String,
    /// Defaults to the identity.
    #[serde(default)]
    pub inertia: Option<PointConfig>,
    pub frobenius: PointConfig,
    /// Positions (i, j) of unit entries of the nilpotent y.
    #[serde(default)]
    pub y: Vec<[usize; 2]>,
    #[serde(default = "trivial")]
    pub enhancement: Enhancement,
}

fn trivial() -> Enhancement {
    Enhancement::Trivial
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualGroupConfig {
    pub kind: GroupKind,
    pub n: usize,
    pub parameters: Vec<ParameterConfig>,
    #[serde(default)]
    pub twist: Option<PointConfig>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseConfig {
    pub name: String,
    pub datum: DatumConfig,
    pub arithmetic: Vec<OrbitData>,
    #[serde(default)]
    pub label_variants: Vec<LabelVariant>,
    /// One value per simple root; defaults to zeros.
    #[serde(default)]
    pub epsilon: Option<Vec<u8>>,
    /// Defaults to the identity.
    #[serde(default)]
    pub basepoint: Option<PointConfig>,
    #[serde(default)]
    pub dual_group: Option<DualGroupConfig>,
    /// Defaults to every task.
    #[serde(default)]
    pub tasks: Option<Vec<String>>,
}

/// A validated case: the p-adic algebra plus everything the tasks need.
#[derive(Clone, Debug)]
pub struct Case {
    pub name: String,
    pub alg: HeckeAlgebra,
    pub arithmetic: Vec<(usize, ArithmeticRootData)>,
    pub variants: Vec<LabelVariant>,
    pub dual: Option<DualBlock>,
    pub tasks: Vec<Task>,
}

#[derive(Clone, Debug)]
pub struct DualBlock {
    pub group: MatrixDualGroup,
    pub parameters: Vec<PSParameter>,
    pub twist: Option<TorusPoint>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub ctx: Ctx,
    pub cases: Vec<Case>,
}

fn cfg(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

pub fn parse_point(ctx: Ctx, p: &PointConfig) -> Result<TorusPoint> {
    let parse = |s: &str| BigRational::from_str(s.trim()).map_err(|e| cfg(format!("bad fraction {s:?}: {e}")));
    let coords = p.iter().map(|[a, b]| Ok((parse(a)?, parse(b)?))).collect::<Result<Vec<_>>>()?;
    TorusPoint::from_fractions(ctx, &coords)
}

fn build_datum(d: &DatumConfig) -> Result<BasedRootDatum> {
    let gamma = d
        .gamma
        .iter()
        .map(|m| {
            if m.len() != d.rank || m.iter().any(|r| r.len() != d.rank) {
                return Err(cfg("Γ matrix has the wrong shape"));
            }
            IMat::from_rows(m)
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(&s) = d.simple.iter().find(|&&s| s >= d.roots.len()) {
        return Err(cfg(format!("simple root index {s} out of range")));
    }
    BasedRootDatum::new(d.rank, d.roots.clone(), d.coroots.clone(), d.simple.clone(), gamma)
}

/// Labels on one side, from the orbit data.
pub fn side_labels(datum: &BasedRootDatum, arithmetic: &[(usize, ArithmeticRootData)], side: Side) -> Result<LabelFunction> {
    LabelFunction::from_arithmetic(datum, arithmetic, side)
}

fn build_case(ctx: Ctx, c: &CaseConfig) -> Result<Case> {
    let datum = Arc::new(build_datum(&c.datum)?);
    let mut arithmetic = Vec::with_capacity(c.arithmetic.len());
    for o in &c.arithmetic {
        o.data.validate()?;
        if o.root >= datum.roots().len() {
            return Err(cfg(format!("arithmetic data for root index {} out of range", o.root)));
        }
        arithmetic.push((o.root, o.data.clone()));
    }
    for v in &c.label_variants {
        v.data.validate()?;
    }
    let labels = side_labels(&datum, &arithmetic, Side::Padic)?;
    let basepoint = match &c.basepoint {
        Some(p) => parse_point(ctx, p)?,
        None => TorusPoint::identity(ctx, datum.rank()),
    };
    let epsilon = c.epsilon.clone().unwrap_or_else(|| vec![0; datum.num_simple()]);
    let alg = HeckeAlgebra::new(datum.clone(), labels, basepoint, epsilon)?;
    let dual = c.dual_group.as_ref().map(|g| build_dual(ctx, &datum, g)).transpose()?;
    let tasks = match &c.tasks {
        None => Task::ALL.to_vec(),
        Some(names) => names.iter().map(|n| n.parse()).collect::<Result<Vec<_>>>()?,
    };
    Ok(Case { name: c.name.clone(), alg, arithmetic, variants: c.label_variants.clone(), dual, tasks })
}

fn build_dual(ctx: Ctx, datum: &BasedRootDatum, g: &DualGroupConfig) -> Result<DualBlock> {
    let group = MatrixDualGroup::new(g.kind.clone(), g.n)?;
    let mut parameters = Vec::with_capacity(g.parameters.len());
    for p in &g.parameters {
        let s = match &p.inertia {
            Some(pt) => parse_point(ctx, pt)?,
            None => TorusPoint::identity(ctx, g.n),
        };
        let f = parse_point(ctx, &p.frobenius)?;
        let mut y = Mat::zeros(ctx, g.n, g.n);
        for &[i, j] in &p.y {
            if i >= g.n || j >= g.n {
                return Err(cfg(format!("parameter {}: y entry ({i}, {j}) out of range", p.name)));
            }
            y.set(i, j, VRational::one(ctx));
        }
        let param = PSParameter::new(p.name.clone(), &group, s, f, y, p.enhancement.clone())?;
        if !group.matches_datum(datum, &param.s_inertia) {
            return Err(cfg(format!("parameter {}: dual group does not match the root datum", p.name)));
        }
        parameters.push(param);
    }
    let twist = g.twist.as_ref().map(|t| parse_point(ctx, t)).transpose()?;
    if let Some(z) = &twist {
        if !group.is_central(z) {
            return Err(cfg(format!("twist {z} is not central")));
        }
    }
    Ok(DualBlock { group, parameters, twist })
}

impl Catalog {
    pub fn from_config(c: &CatalogConfig) -> Result<Catalog> {
        let ctx = Ctx::new(c.coefficients.zeta_order, c.coefficients.v_denominator)?;
        let mut cases: Vec<Case> = Vec::with_capacity(c.cases.len());
        for case in &c.cases {
            if cases.iter().any(|x| x.name == case.name) {
                return Err(cfg(format!("duplicate case name {}", case.name)));
            }
            if case.name.is_empty() || !case.name.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '-') {
                return Err(cfg(format!("case name {:?} must be alphanumeric, '_' or '-'", case.name)));
            }
            let built = build_case(ctx, case).map_err(|e| cfg(format!("case {}: {e}", case.name)))?;
            cases.push(built);
        }
        Ok(Catalog { ctx, cases })
    }

    pub fn from_json(s: &str) -> Result<Catalog> {
        let c: CatalogConfig = serde_json::from_str(s).map_err(|e| cfg(format!("malformed catalog: {e}")))?;
        Self::from_config(&c)
    }

    pub fn default_config() -> CatalogConfig {
        serde_json::from_str(DEFAULT_CATALOG).expect("bundled catalog parses")
    }

    pub fn default_catalog() -> Catalog {
        Self::from_config(&Self::default_config()).expect("bundled catalog validates")
    }

    pub fn case(&self, name: &str) -> Option<&Case> {
        self.cases.iter().find(|c| c.name == name)
    }
}

pub const DEFAULT_CATALOG: &str = include_str!("default.json");
