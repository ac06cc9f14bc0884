//! Checks of the defining relations, the localized oracle and the Whittaker
//! normalization for one algebra.

use super::localized::to_localized;
use super::whittaker::{whittaker_act, whittaker_action, whittaker_action_localized};
use super::{HeckeAlgebra, HeckeElement, LocalizedElement};
use crate::exact_rings::{lattice, TorusFunction, TorusRational, VLaurent};
use crate::root_datum::GroupElement;

#[derive(Clone, Debug)]
pub struct PresentationCheck {
    pub relation: String,
    pub detail: String,
    pub cases: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, Default)]
pub struct PresentationReport {
    pub checks: Vec<PresentationCheck>,
}

impl PresentationReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PresentationCheck> {
        self.checks.iter().filter(|c| !c.ok)
    }

    fn push(&mut self, relation: &str, detail: String, cases: usize, ok: bool) {
        self.checks.push(PresentationCheck { relation: relation.into(), detail, cases, ok });
    }
}

/// Small lattice vectors exercising every sign of ⟨x, α^♯⟩.
fn test_vectors(alg: &HeckeAlgebra) -> Vec<Vec<i64>> {
    let r = alg.rank();
    let mut out = Vec::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        out.push(e.clone());
        out.push(lattice::neg(&e));
        out.push(lattice::scale(&e, 3));
    }
    for s in 0..alg.datum().num_simple() {
        out.push(alg.simple_data(s).root.clone());
    }
    if r > 1 {
        out.push((0..r as i64).map(|j| j - 1).collect());
    }
    out.sort();
    out.dedup();
    out
}

/// Generators θ_{±e_i}, N_s and J_γ (γ ≠ 1) with their localized images.
fn generators(alg: &HeckeAlgebra) -> Vec<(String, HeckeElement, LocalizedElement)> {
    let r = alg.rank();
    let mut out = Vec::new();
    for i in 0..r {
        for sign in [1, -1] {
            let mut x = vec![0; r];
            x[i] = sign;
            out.push((format!("θ{x:?}"), alg.theta(x.clone()), alg.localized_theta(x)));
        }
    }
    for s in 0..alg.datum().num_simple() {
        out.push((format!("N{s}"), alg.n_simple(s), alg.localized_simple(s)));
    }
    for g in 1..alg.datum().gamma().len() {
        out.push((format!("J{g}"), alg.j(g), alg.localized_j(g)));
    }
    out
}

fn check_quadratic(alg: &HeckeAlgebra, rep: &mut PresentationReport) {
    let n = alg.datum().num_simple();
    let ok = (0..n).all(|s| {
        let ns = alg.n_simple(s);
        let rhs = &alg.one() + &ns.scale(&alg.simple_data(s).a);
        &ns * &ns == rhs
    });
    rep.push("quadratic", "(N_s − v^λ)(N_s + v^{−λ}) = 0".into(), n, ok);
}

fn check_braid(alg: &HeckeAlgebra, rep: &mut PresentationReport) {
    let d = alg.datum();
    let wg = d.weyl();
    let n = d.num_simple();
    let mut cases = 0;
    let mut ok = true;
    for s in 0..n {
        for t in s + 1..n {
            let st = wg.mul(wg.simple_index(s), wg.simple_index(t));
            let mut m = 1;
            let mut p = st;
            while p != 0 {
                p = wg.mul(p, st);
                m += 1;
            }
            let word = |a: usize, b: usize| {
                let mut e = alg.one();
                for k in 0..m {
                    e = &e * &alg.n_simple(if k % 2 == 0 { a } else { b });
                }
                e
            };
            cases += 1;
            ok &= word(s, t) == word(t, s);
        }
    }
    rep.push("braid", "N_s N_t ⋯ = N_t N_s ⋯ (m_st factors)".into(), cases, ok);
}

/// The cross relation against K_s computed as a rational function.
fn check_cross(alg: &HeckeAlgebra, rep: &mut PresentationReport) {
    let (ctx, r) = (alg.ctx(), alg.rank());
    let d = alg.datum();
    let one = TorusFunction::one(ctx, r);
    let mut cases = 0;
    let mut ok = true;
    for s in 0..d.num_simple() {
        let sd = alg.simple_data(s);
        let refl = d.reflection(d.simple_root(s));
        let neg_h = TorusFunction::theta(ctx, lattice::neg(&sd.root));
        let kernel = if sd.two_div {
            let num = &TorusFunction::constant(r, sd.a.clone()) + &neg_h.scale(&sd.b);
            let den = &one - &TorusFunction::theta(ctx, lattice::scale(&sd.root, -2));
            TorusRational::new(num, &den)
        } else {
            TorusRational::new(TorusFunction::constant(r, sd.a.clone()), &(&one - &neg_h))
        }
        .expect("nonzero denominator");
        for x in test_vectors(alg) {
            let sx = refl.apply(&x);
            let diff = &TorusFunction::theta(ctx, x.clone()) - &TorusFunction::theta(ctx, sx.clone());
            let rhs = &kernel * &TorusRational::from(diff);
            let lhs = &(&alg.n_simple(s) * &alg.theta(x)) - &(&alg.theta(sx) * &alg.n_simple(s));
            cases += 1;
            ok &= rhs.as_polynomial().is_some_and(|p| alg.from_torus(p) == lhs);
        }
    }
    rep.push("cross", "N_s θ_x − θ_{s(x)} N_s = K_s(θ_x − θ_{s(x)})".into(), cases, ok);
}

fn check_gamma(alg: &HeckeAlgebra, rep: &mut PresentationReport) {
    let d = alg.datum();
    let gamma = d.gamma();
    let mut cases = 0;
    let mut ok = true;
    for g in 0..gamma.len() {
        for h in 0..gamma.len() {
            cases += 1;
            ok &= &alg.j(g) * &alg.j(h) == alg.j(gamma.mul(g, h));
        }
        let ginv = alg.j(gamma.inverse(g));
        for x in test_vectors(alg) {
            for w in 0..d.weyl().len() {
                let lhs = &(&(&alg.j(g) * &alg.theta(x.clone())) * &alg.n_w(w)) * &ginv;
                let rhs = &alg.theta(gamma.matrix(g).apply(&x)) * &alg.n_w(d.conj(g, w));
                cases += 1;
                ok &= lhs == rhs;
            }
        }
    }
    rep.push("gamma", "J_γ θ_x N_w J_γ⁻¹ = θ_{γx} N_{γwγ⁻¹}".into(), cases, ok);
}

/// Every word of at most `max_len` generators, multiplied in both models.
fn check_oracle(alg: &HeckeAlgebra, max_len: usize, rep: &mut PresentationReport) {
    let gens = generators(alg);
    let mut cases = 0;
    let mut bad: Option<String> = None;
    let mut frontier: Vec<(String, HeckeElement, LocalizedElement)> =
        vec![(String::new(), alg.one(), LocalizedElement::one(alg))];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * gens.len());
        for (name, b, l) in &frontier {
            for (gname, gb, gl) in &gens {
                let b2 = b * gb;
                let l2 = l.multiply(gl).expect("same algebra");
                cases += 1;
                if bad.is_none() && to_localized(&b2) != l2 {
                    bad = Some(format!("{name}{gname}"));
                }
                next.push((format!("{name}{gname}"), b2, l2));
            }
        }
        frontier = next;
    }
    let detail = match &bad {
        None => format!("words of length ≤ {max_len} over {} generators", gens.len()),
        Some(w) => format!("first mismatch at {w}"),
    };
    rep.push("localized-oracle", detail, cases, bad.is_none());
}

fn check_center(alg: &HeckeAlgebra, rep: &mut PresentationReport) {
    let d = alg.datum();
    let r = alg.rank();
    let gens = generators(alg);
    let mut cases = 0;
    let mut ok = true;
    for i in 0..r {
        let mut x = vec![0; r];
        x[i] = 1;
        let mut z = alg.zero();
        for e in d.elements() {
            z = &z + &alg.theta(d.matrix(e).apply(&x));
        }
        for (_, g, _) in &gens {
            cases += 1;
            ok &= &z * g == g * &z;
        }
    }
    rep.push("center", "Σ_{w∈W⋊Γ} θ_{w(x)} commutes with the generators".into(), cases, ok);
}

/// det(N_w J_γ) = Π(−v^{−λ_s}) over a reduced word times det(γ).
pub(crate) fn det_value(alg: &HeckeAlgebra, e: GroupElement) -> VLaurent {
    let d = alg.datum();
    let mut c = VLaurent::from_int(alg.ctx(), d.gamma().det(e.g));
    for &s in d.weyl().word(e.w) {
        c = (&c * &VLaurent::v_pow(alg.ctx(), -alg.simple_labels(s).lambda)).scale_int(-1);
    }
    c
}

fn check_whittaker(alg: &HeckeAlgebra, rep: &mut PresentationReport) {
    let d = alg.datum();
    let r = alg.rank();
    let mut cases = 0;
    let mut ok = true;
    for e in d.elements() {
        let expected = TorusRational::from(TorusFunction::constant(r, det_value(alg, e)));
        cases += 1;
        ok &= whittaker_action(&alg.group_basis(e)) == expected;
    }
    rep.push("whittaker-normalization", "1·N_w J_γ = det(N_w J_γ)·1".into(), cases, ok);

    let gens = generators(alg);
    let mut words: Vec<HeckeElement> = gens.iter().map(|g| g.1.clone()).collect();
    for (_, a, _) in &gens {
        for (_, b, _) in &gens {
            words.push(a * b);
        }
    }
    let (mut cases, mut ok_local, mut ok_law) = (0, true, true);
    for h1 in &words {
        let w1 = whittaker_action(h1);
        ok_local &= w1 == whittaker_action_localized(&to_localized(h1));
        for (_, g, _) in &gens {
            cases += 1;
            ok_law &= whittaker_action(&(h1 * g)) == whittaker_act(&w1, g);
        }
    }
    rep.push("whittaker-localized", "1·h agrees with the localized recursion".into(), words.len(), ok_local);
    rep.push("whittaker-module-law", "1·(h₁h₂) = (1·h₁)·h₂".into(), cases, ok_law);

    let detail;
    let mut ok = true;
    let mut cases = 0;
    match alg.steinberg_point() {
        Ok(st) => {
            for s in 0..d.num_simple() {
                let l = alg.simple_labels(s);
                let h = &alg.n_simple(s).scale(&VLaurent::v_pow(alg.ctx(), l.lambda)) + &alg.one();
                for x in test_vectors(alg) {
                    cases += 1;
                    ok &= whittaker_action(&(&alg.theta(x) * &h)).specialize(&st).is_ok_and(|v| v.is_zero());
                }
            }
            detail = format!("ev at {st} of θ_x·(v^λ N_s + 1) vanishes");
        }
        Err(e) => {
            ok = false;
            detail = format!("no Steinberg point: {e}");
        }
    }
    rep.push("steinberg-vanishing", detail, cases, ok);
}

/// Runs every relation check; `max_len` bounds the oracle words.
pub fn verify_presentation(alg: &HeckeAlgebra, max_len: usize) -> PresentationReport {
    let mut rep = PresentationReport::default();
    check_quadratic(alg, &mut rep);
    check_braid(alg, &mut rep);
    check_cross(alg, &mut rep);
    check_gamma(alg, &mut rep);
    check_center(alg, &mut rep);
    check_whittaker(alg, &mut rep);
    check_oracle(alg, max_len, &mut rep);
    rep
}

#[cfg(test)]
mod tests {
    use super::super::tests::{gl, sl2};
    use super::*;
    use crate::label_calculus::Labels;

    #[test]
    fn sl2_two_labels_passes() {
        let rep = verify_presentation(&sl2(Labels::new(3, 1), 1), 3);
        assert!(rep.all_ok(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn gl3_passes() {
        let rep = verify_presentation(&gl(3), 2);
        assert!(rep.all_ok(), "{:?}", rep.failures().collect::<Vec<_>>());
    }
}
