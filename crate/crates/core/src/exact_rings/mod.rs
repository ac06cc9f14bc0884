//! Exact coefficient arithmetic.
//!
//! F = Q(ζ_N)(v^{1/D}) is built from [`CycloScalar`] coefficients and
//! [`VLaurent`] polynomials; the torus side uses [`TorusFunction`] and
//! [`TorusRational`] over F.

pub mod cyclo;
pub mod field;
pub mod laurent;
pub mod lattice;
pub mod matrix;
pub mod rational;
pub mod torus;

pub use cyclo::CycloScalar;
pub use field::VRational;
pub use laurent::{Ctx, VLaurent};
pub use lattice::IMat;
pub use matrix::Mat;
pub use rational::TorusRational;
pub use torus::{TorusFunction, TorusPoint};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field operation on F.
pub fn field_arith(a: &VRational, b: &VRational, op: ArithOp) -> Result<VRational> {
    a.ctx().ensure_same(&b.ctx())?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.div(b)?,
    })
}

/// Checked field operation on C(T).
pub fn torus_arith(a: &TorusRational, b: &TorusRational, op: ArithOp) -> Result<TorusRational> {
    a.ctx().ensure_same(&b.ctx())?;
    if a.rank() != b.rank() {
        return Err(Error::Config(format!("lattice ranks differ: {} vs {}", a.rank(), b.rank())));
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.div(b)?,
    })
}

/// θ_x ↦ t(x) on C(T), reporting poles.
pub fn specialize(f: &TorusRational, t: &TorusPoint) -> Result<VRational> {
    f.ctx().ensure_same(&t.ctx())?;
    if f.rank() != t.rank() {
        return Err(Error::Config("torus point rank differs from lattice rank".into()));
    }
    f.specialize(t)
}
