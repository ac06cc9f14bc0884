//! The eight acceptance criteria over the bundled catalog. Prints one
//! PASS/FAIL line per criterion and exits non-zero if any fails.

use std::time::{Duration, Instant};

use hecke_core::bernstein_hecke::{comparison_iso, verify_presentation, whittaker_action, HeckeAlgebra};
use hecke_core::catalog::{side_labels, tasks, Catalog, Task};
use hecke_core::graded_reduction::{equal_parameter_form, k_parameters};
use hecke_core::label_calculus::{case_space, check_label_match, labels_padic, ArithmeticRootData, CaseTag, Labels, Side};
use hecke_core::lparam_side::{match_bijection, MatchBlock, MatchStatus};
use hecke_core::module_repr::{one_dim_characters, principal_series_module, rank1_classify};
use hecke_core::{TorusFunction, TorusPoint, TorusRational, VLaurent};
use num_rational::Rational64;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// Conjunction of named checks; the detail lists the first failure.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    count: usize,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, summary: &str) -> Outcome {
        match self.failures.first() {
            None => outcome(true, format!("{summary}; {} checks", self.count)),
            Some(f) => outcome(false, format!("{} of {} checks fail; first: {f}", self.failures.len(), self.count)),
        }
    }
}

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn presentation(cat: &Catalog) -> Outcome {
    let mut c = Checks::default();
    let mut slowest = Duration::ZERO;
    for case in &cat.cases {
        let start = Instant::now();
        let rep = verify_presentation(&case.alg, 4);
        let took = start.elapsed();
        slowest = slowest.max(took);
        for name in ["quadratic", "braid", "cross", "gamma", "localized-oracle"] {
            let found = rep.checks.iter().filter(|k| k.relation == name).collect::<Vec<_>>();
            c.check(!found.is_empty() && found.iter().all(|k| k.ok), || format!("{}: {name}", case.name));
        }
        c.check(took < Duration::from_secs(120), || format!("{}: took {took:?}", case.name));
    }
    c.finish(&format!("{} cases, slowest {slowest:.1?}", cat.cases.len()))
}

fn label_match() -> Outcome {
    let start = Instant::now();
    let mut c = Checks::default();
    // the comparison concerns data that occur for an actual group
    let full = case_space(&[1, 2, 3]);
    let space: Vec<ArithmeticRootData> = full.iter().filter(|d| d.is_consistent()).cloned().collect();
    for d in &space {
        let m = check_label_match(d);
        c.check(m.as_ref().is_ok_and(|m| m.matches), || format!("{d:?}"));
    }
    let bullets = [
        (CaseTag::ExceptionalUnramifiedTrivialChi, Labels::new(3, 1)),
        (CaseTag::ExceptionalUnramifiedNontrivialChi, Labels::new(1, 1)),
        (CaseTag::ExceptionalRamified, Labels::new(1, 0)),
    ];
    for (tag, want) in bullets {
        let d = ArithmeticRootData::exceptional(tag, 1);
        c.check(labels_padic(&d) == Ok(Some(want)), || format!("{tag}: expected {want}"));
        c.check(check_label_match(&d).is_ok_and(|m| m.matches), || format!("{tag}: sides differ"));
    }
    let took = start.elapsed();
    c.check(took < Duration::from_secs(1), || format!("took {took:?}"));
    c.finish(&format!("{} consistent of {} data points in {took:.1?}", space.len(), full.len()))
}

fn comparison(cat: &Catalog) -> Outcome {
    let mut c = Checks::default();
    let mut slowest = Duration::ZERO;
    for case in &cat.cases {
        let start = Instant::now();
        let alg = &case.alg;
        let galois = side_labels(alg.datum(), &case.arithmetic, Side::Galois).expect("Galois labels");
        let target =
            HeckeAlgebra::new(alg.datum_arc(), galois, alg.basepoint().clone(), alg.epsilon().to_vec()).expect("target");
        let mut rng = tasks::rng_for(&case.name, Task::CompareSides);
        for k in 0..50 {
            let a = tasks::random_element(alg, &mut rng);
            let b = tasks::random_element(alg, &mut rng);
            let lhs = comparison_iso(&(&a * &b), &target).expect("ψ(ab)");
            let rhs = &comparison_iso(&b, &target).expect("ψ(b)") * &comparison_iso(&a, &target).expect("ψ(a)");
            c.check(lhs == rhs, || format!("{} pair {k}", case.name));
        }
        let took = start.elapsed();
        slowest = slowest.max(took);
        c.check(took < Duration::from_secs(60), || format!("{}: took {took:?}", case.name));
    }
    c.finish(&format!("50 pairs per case, slowest {slowest:.1?}"))
}

fn multiplicity_one(cat: &Catalog) -> Outcome {
    let mut c = Checks::default();
    for case in &cat.cases {
        let alg = &case.alg;
        let mut rng = tasks::rng_for(&case.name, Task::GenericTest);
        for _ in 0..30 {
            let t = tasks::random_point(alg.ctx(), alg.rank(), &mut rng);
            let m = principal_series_module(alg, &t).expect("principal series");
            c.check(m.det_multiplicity() == 1, || format!("{} at {t}", case.name));
        }
        for (kind, t) in tasks::special_points(alg) {
            let dec = principal_series_module(alg, &t).and_then(|m| m.decompose()).expect("decomposition");
            for con in dec.constituents.iter().filter(|k| k.certified) {
                c.check(con.module.det_multiplicity() <= 1, || format!("{} {kind}: constituent with det > 1", case.name));
            }
        }
    }
    c.finish("30 random points per case plus special points")
}

fn rank_one(cat: &Catalog) -> Outcome {
    let mut c = Checks::default();
    // (a) equal labels: St generic, triv not
    let sl2 = &cat.case("a1_sl2").expect("a1_sl2").alg;
    let chars = one_dim_characters(sl2).expect("characters");
    for ch in &chars {
        let det = ch.module(sl2).expect("module").det_multiplicity();
        let want = usize::from(ch.name == "St");
        c.check(det == want, || format!("(a) {} has det multiplicity {det}", ch.name));
    }
    let t = rank1_classify(sl2).expect("sl2 table");
    c.check(t.rows.iter().any(|r| r.case == "steinberg" && r.ok), || "(a) Steinberg row".into());
    // (b) labels (3,1): St− exists and is generic
    let u3 = &cat.case("bc1_u3").expect("bc1_u3").alg;
    c.check(u3.simple_labels(0) == Labels::new(3, 1), || "(b) labels are not (3,1)".into());
    let st_minus = one_dim_characters(u3).expect("characters").into_iter().find(|ch| ch.name == "St-");
    c.check(
        st_minus.as_ref().is_some_and(|ch| ch.module(u3).expect("module").det_multiplicity() == 1),
        || "(b) St− missing or not generic".into(),
    );
    let t = rank1_classify(u3).expect("u3 table");
    c.check(t.rows.iter().any(|r| r.case == "st-minus" && r.ok), || "(b) St− row".into());
    // (c) two-divisible coroot, λ = λ*: t− = −1 splits with exactly one generic summand
    let minus = TorusPoint::new(sl2.ctx(), vec![6], vec![0]).expect("point");
    let m = principal_series_module(sl2, &minus).expect("module");
    c.check(m.splits_as_direct_sum().unwrap_or(false), || "(c) no direct sum at −1".into());
    let dec = m.decompose().expect("decomposition");
    let dets: Vec<usize> = dec.constituents.iter().map(|k| k.module.det_multiplicity()).collect();
    c.check(dec.dims() == [1, 1] && dets.iter().filter(|&&d| d == 1).count() == 1, || format!("(c) dets {dets:?}"));
    c.finish("cases (a), (b), (c)")
}

/// det(N_w J_γ) = det(γ)·∏ over a reduced word of −v^{−λ_s}.
fn det_value(alg: &HeckeAlgebra, w: usize, g: usize) -> VLaurent {
    let d = alg.datum();
    let mut out = VLaurent::from_int(alg.ctx(), d.gamma().det(g));
    for &s in d.weyl().word(w) {
        out = &out * &-VLaurent::v_pow(alg.ctx(), -alg.simple_labels(s).lambda);
    }
    out
}

fn whittaker(cat: &Catalog) -> Outcome {
    let mut c = Checks::default();
    let mut rank1 = 0;
    for case in &cat.cases {
        let alg = &case.alg;
        let d = alg.datum();
        for w in 0..d.weyl().len() {
            for g in 0..d.gamma().len() {
                let got = whittaker_action(&(&alg.n_w(w) * &alg.j(g)));
                let want = TorusRational::from(TorusFunction::constant(alg.rank(), det_value(alg, w, g)));
                c.check(got == want, || format!("{} w={w} γ={g}", case.name));
            }
        }
        if d.num_simple() == 1 {
            rank1 += 1;
            let st = alg.steinberg_point().expect("Steinberg point");
            let l = alg.simple_labels(0);
            let h = &alg.n_simple(0).scale(&VLaurent::v_pow(alg.ctx(), l.lambda)) + &alg.one();
            for x in -2..=2 {
                let mut e = vec![0; alg.rank()];
                e[0] = x;
                let val = whittaker_action(&(&alg.theta(e) * &h)).specialize(&st);
                c.check(val.as_ref().is_ok_and(|v| v.is_zero()), || format!("{} x={x}: {val:?}", case.name));
            }
        }
    }
    c.finish(&format!("{} cases, {rank1} of rank one", cat.cases.len()))
}

/// Hand-computed k^u on the roots of R_u, as (root, k).
fn hand_k_tables() -> Vec<(&'static str, Vec<i64>, Vec<(Vec<i64>, Rational64)>)> {
    let half = Rational64::new(1, 2);
    vec![
        ("a1_sl2", vec![0], vec![(vec![1], r(1)), (vec![-1], r(1))]),
        ("a1_sl2", vec![6], vec![(vec![1], r(0)), (vec![-1], r(0))]),
        ("a1_pgl2", vec![0], vec![(vec![1], half), (vec![-1], half)]),
        ("a1_pgl2", vec![6], vec![(vec![1], half), (vec![-1], half)]),
        ("bc1_u3", vec![0], vec![(vec![1], r(2)), (vec![-1], r(2))]),
        ("bc1_u3", vec![6], vec![(vec![1], r(1)), (vec![-1], r(1))]),
        ("a2", vec![0, 0], vec![(vec![1, 0], r(2)), (vec![0, 1], r(2)), (vec![1, 1], r(2))]),
        ("c2", vec![0, 0], vec![(vec![1, 0], r(2)), (vec![0, 1], r(2)), (vec![1, 1], r(1)), (vec![1, -1], r(1))]),
        ("c2", vec![6, 6], vec![(vec![1, 0], r(1)), (vec![0, 1], r(1)), (vec![1, 1], r(1)), (vec![1, -1], r(1))]),
        ("gl2", vec![0, 0], vec![(vec![1, -1], r(1))]),
    ]
}

fn graded(cat: &Catalog) -> Outcome {
    let mut c = Checks::default();
    for (name, zeta, table) in hand_k_tables() {
        let alg = &cat.case(name).expect("case").alg;
        let d = alg.datum();
        let u = TorusPoint::new(alg.ctx(), zeta.clone(), vec![0; zeta.len()]).expect("point");
        let gp = k_parameters(alg, &u).expect("k parameters");
        for (root, want) in &table {
            let i = d.root_index(root).expect("root");
            c.check(gp.data.k_of(i) == Some(*want), || format!("{name} u={u} root {root:?}: {:?}", gp.data.k_of(i)));
            let in_pos = gp.roots_pos().contains(&i);
            c.check(in_pos == (*want > r(0)), || format!("{name} u={u}: k = 0 exclusion on {root:?}"));
        }
    }
    for case in &cat.cases {
        let samples = tasks::graded_samples(case);
        c.check(samples.len() == 10, || format!("{}: {} samples", case.name, samples.len()));
        for u in samples {
            let gp = k_parameters(&case.alg, &u).expect("k parameters");
            let st = gp.data.stabilizer.len();
            c.check(st == gp.data.weyl_pos_order * gp.data.gamma_pos.len(), || format!("{} u={u}: |W_u| = {st}", case.name));
            match equal_parameter_form(&gp, case.alg.datum()) {
                Ok(form) => {
                    c.check(form.len() == gp.roots_pos().len(), || format!("{} u={u}: incomplete form", case.name));
                    for rr in &form {
                        let k = gp.data.k_of(rr.root).expect("k");
                        c.check(k / rr.scale == r(1), || format!("{} u={u}: parameter {} after rescaling", case.name, k / rr.scale));
                    }
                }
                Err(e) => c.check(false, || format!("{} u={u}: {e}", case.name)),
            }
        }
    }
    c.finish("hand tables plus 10 samples per case")
}

fn end_to_end(cat: &Catalog) -> Outcome {
    let start = Instant::now();
    let mut c = Checks::default();
    let case = cat.case("gl2").expect("gl2");
    let dual = case.dual.as_ref().expect("dual block");
    let block = MatchBlock {
        alg: case.alg.clone(),
        group: dual.group.clone(),
        parameters: dual.parameters.clone(),
        twist: dual.twist.clone(),
    };
    let table = match_bijection(&block).expect("match table");
    let st = table.row("steinberg").expect("steinberg row");
    c.check(st.dense, || "Steinberg y is not dense".into());
    c.check(st.status == MatchStatus::Paired, || format!("Steinberg status {:?}", st.status));
    c.check(st.module.as_ref().is_some_and(|m| m.det_multiplicity == 1), || "Steinberg module lacks det".into());
    let zero = table.row("zero").expect("zero row");
    c.check(zero.status == MatchStatus::Paired, || format!("y = 0 status {:?}", zero.status));
    c.check(zero.module.as_ref().is_some_and(|m| m.det_multiplicity == 0), || "y = 0 module is generic".into());
    let mut literal = 0;
    for row in &table.rows {
        c.check(row.ok(), || format!("{} row", row.parameter));
        if row.status == MatchStatus::Paired {
            let m = row.module.as_ref().expect("paired module");
            c.check(row.central_ok, || format!("{}: central character", row.parameter));
            let orbit = case.alg.datum().point_orbit(&row.t_tilde);
            c.check(m.weights.iter().all(|(w, _)| orbit.contains(w)), || format!("{}: weights off the orbit of t̃", row.parameter));
            c.check(row.bounded == m.tempered, || format!("{}: bounded vs tempered", row.parameter));
            literal += usize::from(row.bounded != m.unitary_weights);
        }
    }
    let z = dual.twist.as_ref().expect("twist");
    c.check(z.value(&[1, 0]) == VLaurent::zeta_v(z.ctx(), 6, 0), || "twist is not of order 2".into());
    c.check(table.twist_ok == Some(true), || "table does not commute with the twist".into());
    let took = start.elapsed();
    c.check(took < Duration::from_secs(60), || format!("took {took:?}"));
    c.finish(&format!(
        "{} rows; bounded ⇔ tempered cone; literal unitary-weight test differs on {literal} row(s)",
        table.rows.len()
    ))
}

fn main() {
    let cat = Catalog::default_catalog();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 presentation verification", Box::new(|| presentation(&cat))),
        ("2 label match", Box::new(label_match)),
        ("3 comparison isomorphism", Box::new(|| comparison(&cat))),
        ("4 multiplicity one", Box::new(|| multiplicity_one(&cat))),
        ("5 rank-one classification", Box::new(|| rank_one(&cat))),
        ("6 Whittaker normalization", Box::new(|| whittaker(&cat))),
        ("7 graded reduction", Box::new(|| graded(&cat))),
        ("8 end-to-end GL2 block", Box::new(|| end_to_end(&cat))),
    ];
    let mut all = true;
    for (name, run) in criteria {
        let o = run();
        all &= o.ok;
        println!("{} criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    if !all {
        std::process::exit(1);
    }
}
