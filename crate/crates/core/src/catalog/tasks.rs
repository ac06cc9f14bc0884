//! Task runners. Each turns one case into a table and a verdict; errors from
//! the engine become failing verdicts, never panics.

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{side_labels, Case, Task, TaskReport};
use crate::bernstein_hecke::{comparison_iso, verify_presentation, HeckeAlgebra, HeckeElement};
use crate::exact_rings::{Ctx, TorusPoint, VLaurent};
use crate::graded_reduction::{equal_parameter_form, exp_weights, graded_steinberg_weight, k_parameters};
use crate::label_calculus::{check_label_match, Labels, Side};
use crate::lparam_side::{match_bijection, MatchBlock, MatchStatus};
use crate::module_repr::{principal_series_module, rank1_classify, st_minus_point};
use crate::root_datum::BasedRootDatum;

/// Length bound for the localized-oracle words.
pub const ORACLE_WORD_LENGTH: usize = 4;
pub const PSI_PAIRS: usize = 50;
pub const GENERIC_POINTS: usize = 30;
pub const GRADED_SAMPLES: usize = 10;

/// FNV-1a of `case/task`, so every table has its own reproducible stream.
pub fn seed_for(case: &str, task: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in case.bytes().chain(std::iter::once(b'/')).chain(task.bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

pub fn rng_for(case: &str, task: Task) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed_for(case, task.name()))
}

/// A sum of one to three terms ±v^k θ_x N_w J_γ with small x and k.
pub fn random_element(alg: &HeckeAlgebra, rng: &mut impl Rng) -> HeckeElement {
    let d = alg.datum();
    let mut out = alg.zero();
    for _ in 0..rng.random_range(1..=3) {
        let x: Vec<i64> = (0..alg.rank()).map(|_| rng.random_range(-2..=2)).collect();
        let w = rng.random_range(0..d.weyl().len());
        let g = rng.random_range(0..d.gamma().len());
        let sign = if rng.random_bool(0.5) { 1 } else { -1 };
        let c = VLaurent::v_pow(alg.ctx(), rng.random_range(-1..=1)).scale_int(sign);
        out = &out + &alg.basis(x, w, g).scale(&c);
    }
    out
}

/// ζ^a v^{k/D} per coordinate with |k| ≤ 3D.
pub fn random_point(ctx: Ctx, rank: usize, rng: &mut impl Rng) -> TorusPoint {
    let n = ctx.order as i64;
    let b = 3 * ctx.denom as i64;
    let zeta = (0..rank).map(|_| rng.random_range(0..n)).collect();
    let vexp = (0..rank).map(|_| rng.random_range(-b..=b)).collect();
    TorusPoint::new(ctx, zeta, vexp).expect("lengths agree")
}

pub fn random_unitary_point(ctx: Ctx, rank: usize, rng: &mut impl Rng) -> TorusPoint {
    let n = ctx.order as i64;
    TorusPoint::new(ctx, (0..rank).map(|_| rng.random_range(0..n)).collect(), vec![0; rank]).expect("lengths agree")
}

pub fn run_task(case: &Case, task: Task) -> TaskReport {
    match task {
        Task::VerifyPresentation => verify(case),
        Task::Labels => labels(case),
        Task::CompareSides => compare_sides(case),
        Task::GenericTest => generic_test(case),
        Task::Rank1Classify => rank1(case),
        Task::Graded => graded(case),
        Task::Lparam => lparam(case),
        Task::Match => matching(case),
    }
}

fn yn(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn list<T: std::fmt::Display>(xs: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(","))
}

fn vec_str(v: &[i64]) -> String {
    list(v)
}

fn orbit_name(d: &BasedRootDatum, orbit: &[usize]) -> String {
    format!("orbit{{{}}}", orbit.iter().map(|&i| vec_str(d.root(i))).collect::<Vec<_>>().join(" "))
}

fn verify(case: &Case) -> TaskReport {
    let mut rep = TaskReport::new(&case.name, Task::VerifyPresentation, &["relation", "cases", "ok", "detail"]);
    let pr = verify_presentation(&case.alg, ORACLE_WORD_LENGTH);
    for c in &pr.checks {
        rep.push(vec![c.relation.clone(), c.cases.to_string(), yn(c.ok), c.detail.clone()]);
    }
    if let Some(f) = pr.failures().next() {
        rep.fail(format!("relation {} fails", f.relation));
    }
    rep
}

fn labels(case: &Case) -> TaskReport {
    let mut rep = TaskReport::new(
        &case.name,
        Task::Labels,
        &["kind", "name", "case", "f", "e", "k", "m_alpha", "padic", "galois", "expected", "ok"],
    );
    let d = case.alg.datum();
    let fmt_l = |l: Option<Labels>| l.map_or("-".to_string(), |l| l.to_string());
    let mut rows: Vec<(String, String, crate::label_calculus::ArithmeticRootData, Option<Labels>)> = Vec::new();
    for (root, data) in &case.arithmetic {
        let orbit = case.alg.labels().orbits().iter().find(|o| o.contains(root)).cloned().unwrap_or_default();
        rows.push(("orbit".into(), orbit_name(d, &orbit), data.clone(), None));
    }
    for v in &case.variants {
        rows.push(("variant".into(), v.name.clone(), v.data.clone(), v.expected.map(|[a, b]| Labels::new(a, b))));
    }
    for (kind, name, data, expected) in rows {
        match check_label_match(&data) {
            Ok(m) => {
                let ok = m.matches && expected.is_none_or(|e| m.padic == Some(e));
                rep.push(vec![
                    kind,
                    name.clone(),
                    data.case.to_string(),
                    data.f.to_string(),
                    data.e.map_or("-".into(), |e| e.to_string()),
                    data.k.to_string(),
                    m.m.m.to_string(),
                    fmt_l(m.padic),
                    fmt_l(m.galois),
                    fmt_l(expected),
                    yn(ok),
                ]);
                if !ok {
                    rep.fail(format!("labels differ on {name}"));
                }
            }
            Err(e) => {
                rep.push(vec![kind, name.clone(), data.case.to_string(), "-".into(), "-".into(), "-".into(), "-".into(), "-".into(), "-".into(), fmt_l(expected), format!("error: {e}")]);
                rep.fail(format!("{name}: {e}"));
            }
        }
    }
    rep
}

fn compare_sides(case: &Case) -> TaskReport {
    let mut rep = TaskReport::new(&case.name, Task::CompareSides, &["check", "subject", "padic", "galois", "ok"]);
    let alg = &case.alg;
    let d = alg.datum();
    let galois = match side_labels(d, &case.arithmetic, Side::Galois) {
        Ok(g) => g,
        Err(e) => {
            rep.push(vec!["labels".into(), "all orbits".into(), "-".into(), "-".into(), format!("error: {e}")]);
            rep.fail(format!("Galois labels: {e}"));
            return rep;
        }
    };
    let padic = alg.labels();
    let mut same = true;
    for (o, orbit) in padic.orbits().iter().enumerate() {
        let (p, g) = (padic.orbit_labels()[o], galois.get(orbit[0]));
        let ok = p == g;
        same &= ok;
        rep.push(vec!["labels".into(), orbit_name(d, orbit), p.to_string(), g.to_string(), yn(ok)]);
        if !ok {
            rep.fail(format!("labels differ on {}", orbit_name(d, orbit)));
        }
    }
    if !same {
        return rep;
    }
    let target = match HeckeAlgebra::new(alg.datum_arc(), galois, alg.basepoint().clone(), alg.epsilon().to_vec()) {
        Ok(t) => t,
        Err(e) => {
            rep.fail(format!("Galois-side algebra: {e}"));
            return rep;
        }
    };
    let mut rng = rng_for(&case.name, Task::CompareSides);
    let (mut anti, mut inverse) = (0, 0);
    let mut first_bad = None;
    for k in 0..PSI_PAIRS {
        let a = random_element(alg, &mut rng);
        let b = random_element(alg, &mut rng);
        let res = (|| {
            let lhs = comparison_iso(&(&a * &b), &target)?;
            let rhs = &comparison_iso(&b, &target)? * &comparison_iso(&a, &target)?;
            let back = comparison_iso(&comparison_iso(&a, &target)?, alg)?;
            Ok::<_, crate::Error>((lhs == rhs, back == a))
        })();
        match res {
            Ok((x, y)) => {
                anti += x as usize;
                inverse += y as usize;
                if !(x && y) && first_bad.is_none() {
                    first_bad = Some(format!("pair {k}: a = {a}, b = {b}"));
                }
            }
            Err(e) => {
                first_bad.get_or_insert(format!("pair {k}: {e}"));
            }
        }
    }
    rep.push(vec!["psi(ab)=psi(b)psi(a)".into(), format!("{PSI_PAIRS} pairs"), format!("{anti} hold"), "-".into(), yn(anti == PSI_PAIRS)]);
    rep.push(vec!["psi(psi(a))=a".into(), format!("{PSI_PAIRS} elements"), format!("{inverse} hold"), "-".into(), yn(inverse == PSI_PAIRS)]);
    if let Some(bad) = first_bad {
        rep.fail(bad);
    }
    rep
}

/// Points where reducibility is expected: Steinberg, the identity and, in
/// rank one, the St− and −1 points.
pub fn special_points(alg: &HeckeAlgebra) -> Vec<(String, TorusPoint)> {
    let d = alg.datum();
    let mut out = vec![("identity".to_string(), TorusPoint::identity(alg.ctx(), alg.rank()))];
    if let Ok(st) = alg.steinberg_point() {
        out.push(("steinberg".into(), st));
    }
    if d.num_simple() == 1 {
        let l = alg.simple_labels(0);
        if l.lambda != l.lambda_star {
            if let Ok(t) = st_minus_point(alg) {
                out.push(("st-minus".into(), t));
            }
        } else if d.is_coroot_two_divisible(d.simple_root(0)) {
            if let Ok(t) = d.point_with_simple_values(alg.ctx(), &[Rational64::new(1, 2)], &[Rational64::from_integer(0)]) {
                out.push(("minus-one".into(), t));
            }
        }
    }
    out
}

fn generic_test(case: &Case) -> TaskReport {
    let mut rep = TaskReport::new(
        &case.name,
        Task::GenericTest,
        &["point_kind", "point", "dim", "det_multiplicity", "constituent_dims", "constituent_dets", "certified", "ok"],
    );
    let alg = &case.alg;
    let mut rng = rng_for(&case.name, Task::GenericTest);
    for _ in 0..GENERIC_POINTS {
        let t = random_point(alg.ctx(), alg.rank(), &mut rng);
        match principal_series_module(alg, &t) {
            Ok(m) => {
                let det = m.det_multiplicity();
                let ok = det == 1;
                rep.push(vec!["random".into(), t.to_string(), m.dim().to_string(), det.to_string(), "-".into(), "-".into(), "-".into(), yn(ok)]);
                if !ok {
                    rep.fail(format!("det multiplicity {det} at {t}"));
                }
            }
            Err(e) => rep.fail(format!("principal series at {t}: {e}")),
        }
    }
    for (kind, t) in special_points(alg) {
        let res = principal_series_module(alg, &t).and_then(|m| Ok((m.det_multiplicity(), m.dim(), m.decompose()?)));
        match res {
            Ok((det, dim, dec)) => {
                let dets: Vec<usize> = dec.constituents.iter().map(|c| c.module.det_multiplicity()).collect();
                let certified_ok = dec.constituents.iter().zip(&dets).all(|(c, &m)| !c.certified || m <= 1);
                let sum_ok = !dec.complete || dets.iter().sum::<usize>() == 1;
                let ok = det == 1 && certified_ok && sum_ok;
                rep.push(vec![
                    kind,
                    t.to_string(),
                    dim.to_string(),
                    det.to_string(),
                    list(dec.dims()),
                    list(&dets),
                    list(dec.constituents.iter().map(|c| yn(c.certified))),
                    yn(ok),
                ]);
                if !ok {
                    rep.fail(format!("multiplicity-one fails at {t}"));
                }
            }
            Err(e) => rep.fail(format!("decomposition at {t}: {e}")),
        }
    }
    rep
}

fn rank1(case: &Case) -> TaskReport {
    let rep = TaskReport::new(
        &case.name,
        Task::Rank1Classify,
        &["case", "point", "dims", "det_multiplicities", "tempered", "direct_sum", "expected", "ok"],
    );
    let d = case.alg.datum();
    if d.num_simple() != 1 || d.gamma().len() != 1 {
        return rep.skip("needs one simple root and trivial Γ");
    }
    let mut rep = rep;
    match rank1_classify(&case.alg) {
        Ok(t) => {
            for r in &t.rows {
                rep.push(vec![
                    r.case.to_string(),
                    r.point.to_string(),
                    list(&r.dims),
                    list(&r.det_multiplicities),
                    list(r.tempered.iter().map(|&b| yn(b))),
                    yn(r.direct_sum),
                    r.expected.clone(),
                    yn(r.ok),
                ]);
                if !r.ok {
                    rep.fail(format!("{} row disagrees with the classification", r.case));
                }
            }
        }
        Err(e) => rep.fail(e.to_string()),
    }
    rep
}

/// Unitary points for the graded reduction: the identity, points that are −1
/// on single simple coroot halves, then random points.
pub fn graded_samples(case: &Case) -> Vec<TorusPoint> {
    let alg = &case.alg;
    let d = alg.datum();
    let ctx = alg.ctx();
    let mut out = vec![TorusPoint::identity(ctx, alg.rank())];
    let zero = vec![Rational64::from_integer(0); d.num_simple()];
    for s in 0..d.num_simple() {
        let mut turns = zero.clone();
        turns[s] = Rational64::new(1, 2);
        if let Ok(t) = d.point_with_simple_values(ctx, &turns, &zero) {
            out.push(t);
        }
    }
    let mut rng = rng_for(&case.name, Task::Graded);
    let mut guard = 0;
    while out.len() < GRADED_SAMPLES && guard < 1000 {
        guard += 1;
        let t = random_unitary_point(ctx, alg.rank(), &mut rng);
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out.truncate(GRADED_SAMPLES);
    out
}

fn k_multiset(alg: &HeckeAlgebra, u: &TorusPoint) -> crate::Result<Vec<Rational64>> {
    let gp = k_parameters(alg, u)?;
    let mut ks: Vec<Rational64> = gp.k_table().map(|(_, k)| k).collect();
    ks.sort();
    Ok(ks)
}

fn graded(case: &Case) -> TaskReport {
    let mut rep = TaskReport::new(
        &case.name,
        Task::Graded,
        &[
            "u",
            "k_table",
            "positive_roots",
            "stabilizer",
            "weyl_pos",
            "gamma_pos",
            "factorization",
            "equal_parameter_form",
            "w_invariant",
            "steinberg_exp",
            "ok",
        ],
    );
    let alg = &case.alg;
    let d = alg.datum();
    for u in graded_samples(case) {
        let gp = match k_parameters(alg, &u) {
            Ok(g) => g,
            Err(e) => {
                rep.fail(format!("k parameters at {u}: {e}"));
                continue;
            }
        };
        let ktab = gp.k_table().map(|(i, k)| format!("{}:{k}", vec_str(d.root(i)))).collect::<Vec<_>>().join(" ");
        let pos = gp.roots_pos().iter().map(|&i| vec_str(d.root(i))).collect::<Vec<_>>().join(" ");
        let form = equal_parameter_form(&gp, d);
        let form_ok = form.as_ref().is_ok_and(|f| f.len() == gp.roots_pos().len());
        let base = k_multiset(alg, &u);
        let w_ok = d.elements().all(|e| {
            let wu = d.act_on_point(e, &u);
            matches!((&base, k_multiset(alg, &wu)), (Ok(a), Ok(b)) if *a == b)
        });
        let st = if u.is_identity() {
            let res = graded_steinberg_weight(&gp, d)
                .and_then(|s| exp_weights(&u, &[s]))
                .and_then(|t| Ok(t[0] == alg.steinberg_point()?));
            Some(res.unwrap_or(false))
        } else {
            None
        };
        let ok = gp.factorization_holds() && form_ok && w_ok && st != Some(false);
        rep.push(vec![
            u.to_string(),
            ktab,
            pos,
            gp.data.stabilizer.len().to_string(),
            gp.data.weyl_pos_order.to_string(),
            gp.data.gamma_pos.len().to_string(),
            yn(gp.factorization_holds()),
            match &form {
                Ok(f) => format!("scales {}", list(f.iter().map(|r| r.scale))),
                Err(e) => format!("error: {e}"),
            },
            yn(w_ok),
            st.map_or("-".into(), yn),
            yn(ok),
        ]);
        if !ok {
            rep.fail(format!("graded checks fail at {u}"));
        }
    }
    rep
}

fn lparam(case: &Case) -> TaskReport {
    let rep = TaskReport::new(
        &case.name,
        Task::Lparam,
        &["parameter", "t_tilde", "jm_coweight", "eigenspace_dim", "orbit_dim", "dense", "bounded", "discrete", "twist_ok", "ok"],
    );
    let Some(block) = &case.dual else {
        return rep.skip("no dual-group block");
    };
    let mut rep = rep;
    for p in &block.parameters {
        let res = (|| {
            let t = p.infinitesimal_point()?;
            let h = p.jm_coweight()?;
            let eig = p.q_eigenspace()?.len();
            let orbit = p.orbit_dim()?;
            let dense = p.is_dense_orbit()?;
            let pred = p.predicates()?;
            let twist_ok = match &block.twist {
                None => None,
                Some(z) => {
                    let q = p.twist(z)?;
                    let tp = q.predicates()?;
                    Some(
                        q.infinitesimal_point()? == z.mul(&t)
                            && q.q_eigenspace()?.len() == eig
                            && q.is_dense_orbit()? == dense
                            && tp == pred,
                    )
                }
            };
            Ok::<_, crate::Error>((t, h, eig, orbit, dense, pred, twist_ok))
        })();
        match res {
            Ok((t, h, eig, orbit, dense, pred, twist_ok)) => {
                let ok = orbit <= eig && twist_ok != Some(false);
                rep.push(vec![
                    p.name.clone(),
                    t.to_string(),
                    vec_str(&h),
                    eig.to_string(),
                    orbit.to_string(),
                    yn(dense),
                    yn(pred.bounded),
                    pred.discrete.map_or("-".into(), yn),
                    twist_ok.map_or("-".into(), yn),
                    yn(ok),
                ]);
                if !ok {
                    rep.fail(format!("parameter {} fails", p.name));
                }
            }
            Err(e) => rep.fail(format!("parameter {}: {e}", p.name)),
        }
    }
    rep
}

fn matching(case: &Case) -> TaskReport {
    let rep = TaskReport::new(
        &case.name,
        Task::Match,
        &[
            "parameter",
            "t_tilde",
            "dense",
            "enhancement",
            "bounded",
            "status",
            "module_dim",
            "det_multiplicity",
            "tempered",
            "unitary_weights",
            "weights",
            "ok",
        ],
    );
    let Some(block) = &case.dual else {
        return rep.skip("no dual-group block");
    };
    let mut rep = rep;
    let mb = MatchBlock {
        alg: case.alg.clone(),
        group: block.group.clone(),
        parameters: block.parameters.clone(),
        twist: block.twist.clone(),
    };
    let table = match match_bijection(&mb) {
        Ok(t) => t,
        Err(e) => {
            rep.fail(e.to_string());
            return rep;
        }
    };
    for r in &table.rows {
        let status = match &r.status {
            MatchStatus::Paired => "paired".to_string(),
            MatchStatus::Ambiguous => "ambiguous".to_string(),
            MatchStatus::Unmatched(why) => format!("unmatched: {why}"),
        };
        let m = r.module.as_ref();
        rep.push(vec![
            r.parameter.clone(),
            r.t_tilde.to_string(),
            yn(r.dense),
            r.enhancement.to_string(),
            yn(r.bounded),
            status,
            m.map_or("-".into(), |m| m.dim.to_string()),
            m.map_or("-".into(), |m| m.det_multiplicity.to_string()),
            m.map_or("-".into(), |m| yn(m.tempered)),
            m.map_or("-".into(), |m| yn(m.unitary_weights)),
            m.map_or("-".into(), |m| m.weights_string()),
            yn(r.ok()),
        ]);
        if !r.ok() {
            rep.fail(format!("parameter {} is not matched consistently", r.parameter));
        }
    }
    for u in &table.unclaimed {
        rep.push(vec![
            "(unclaimed)".into(),
            "-".into(),
            "-".into(),
            "-".into(),
            "-".into(),
            "unclaimed".into(),
            u.dim.to_string(),
            u.det_multiplicity.to_string(),
            yn(u.tempered),
            yn(u.unitary_weights),
            u.weights_string(),
            "yes".into(),
        ]);
    }
    if let Some(ok) = table.twist_ok {
        rep.push(vec!["(twist)".into(), block.twist.as_ref().map_or("-".into(), |z| z.to_string()), "-".into(), "-".into(), "-".into(), "twist".into(), "-".into(), "-".into(), "-".into(), "-".into(), "-".into(), yn(ok)]);
        if !ok {
            rep.fail("table does not commute with the central twist");
        }
    }
    rep
}
