//! Reducibility of principal series in semisimple rank one.

use num_rational::Rational64;

use super::{principal_series_module, st_minus_point};
use crate::bernstein_hecke::HeckeAlgebra;
use crate::error::{Error, Result};
use crate::exact_rings::TorusPoint;

/// One reducibility point and the composition factors found there.
#[derive(Clone, Debug)]
pub struct Rank1Row {
    pub case: &'static str,
    pub point: TorusPoint,
    pub dims: Vec<usize>,
    pub det_multiplicities: Vec<usize>,
    pub tempered: Vec<bool>,
    pub direct_sum: bool,
    pub expected: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Rank1Table {
    pub rows: Vec<Rank1Row>,
}

impl Rank1Table {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }
}

fn row(alg: &HeckeAlgebra, case: &'static str, point: TorusPoint, expected: &str, check: impl Fn(&Rank1Row) -> bool) -> Result<Rank1Row> {
    let m = principal_series_module(alg, &point)?;
    let d = m.decompose()?;
    let mut r = Rank1Row {
        case,
        point,
        dims: d.dims(),
        det_multiplicities: d.constituents.iter().map(|c| c.module.det_multiplicity()).collect(),
        tempered: d.constituents.iter().map(|c| c.module.weights_in_tempered_cone()).collect::<Result<_>>()?,
        direct_sum: m.splits_as_direct_sum()?,
        expected: expected.to_string(),
        ok: false,
    };
    r.ok = d.complete && check(&r);
    Ok(r)
}

/// Exactly one constituent carries the det-type vector and it is tempered.
fn one_generic_tempered(r: &Rank1Row) -> bool {
    r.dims == [1, 1]
        && r.det_multiplicities.iter().sum::<usize>() == 1
        && r.det_multiplicities.iter().zip(&r.tempered).all(|(&m, &t)| m == 0 || t)
}

/// Rows for the Steinberg point, the St− point (λ ≠ λ*) and, for a
/// two-divisible coroot with λ = λ*, the point t(h) = −1.
pub fn rank1_classify(alg: &HeckeAlgebra) -> Result<Rank1Table> {
    let d = alg.datum();
    if d.num_simple() != 1 {
        return Err(Error::Precondition(format!("{} simple roots; rank-one classification needs one", d.num_simple())));
    }
    if d.gamma().len() != 1 {
        return Err(Error::Unsupported("rank-one classification with non-trivial Γ".into()));
    }
    let l = alg.simple_labels(0);
    let mut rows = vec![row(alg, "steinberg", alg.steinberg_point()?, "St (det 1) + triv (det 0), non-split", |r| {
        one_generic_tempered(r) && !r.direct_sum
    })?];
    if l.lambda != l.lambda_star {
        rows.push(row(alg, "st-minus", st_minus_point(alg)?, "St- (det 1) + 1-dim (det 0), non-split", |r| {
            r.dims == [1, 1] && r.det_multiplicities.iter().sum::<usize>() == 1 && !r.direct_sum
        })?);
    } else if d.is_coroot_two_divisible(d.simple_root(0)) {
        let half = [Rational64::new(1, 2)];
        let t = d.point_with_simple_values(alg.ctx(), &half, &[Rational64::from_integer(0)])?;
        rows.push(row(alg, "minus-one", t, "two 1-dim summands, exactly one with det 1", |r| {
            r.dims == [1, 1] && r.det_multiplicities.iter().sum::<usize>() == 1 && r.direct_sum
        })?);
    }
    Ok(Rank1Table { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernstein_hecke::tests::{gl, sl2};
    use crate::label_calculus::Labels;

    #[test]
    fn sl2_equal_labels() {
        let t = rank1_classify(&sl2(Labels::new(1, 1), 0)).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert!(t.all_ok(), "{t:?}");
    }

    #[test]
    fn sl2_unequal_labels() {
        for eps in [0, 1] {
            let t = rank1_classify(&sl2(Labels::new(3, 1), eps)).unwrap();
            assert_eq!(t.rows[1].case, "st-minus");
            assert!(t.all_ok(), "{t:?}");
        }
    }

    #[test]
    fn higher_rank_rejected() {
        assert!(matches!(rank1_classify(&gl(3)), Err(Error::Precondition(_))));
    }
}
