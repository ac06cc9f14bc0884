//! Invariants over the bundled catalog, driven by proptest.

use hecke_core::bernstein_hecke::{comparison_iso, twist_by_character, HeckeAlgebra};
use hecke_core::catalog::{parse_point, side_labels, tasks, Case, Catalog};
use hecke_core::graded_reduction::k_parameters;
use hecke_core::label_calculus::{case_space, labels_galois, labels_padic, Side};
use hecke_core::module_repr::principal_series_module;
use hecke_core::TorusPoint;
use num_rational::Rational64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(Catalog::default_catalog)
}

fn case(name: &str) -> &'static Case {
    catalog().case(name).expect("bundled case")
}

fn galois_side(case: &Case) -> HeckeAlgebra {
    let alg = &case.alg;
    let labels = side_labels(alg.datum(), &case.arithmetic, Side::Galois).expect("Galois labels");
    HeckeAlgebra::new(alg.datum_arc(), labels, alg.basepoint().clone(), alg.epsilon().to_vec()).expect("algebra")
}

fn sorted_k(alg: &HeckeAlgebra, u: &TorusPoint) -> Vec<Rational64> {
    let mut ks: Vec<Rational64> = k_parameters(alg, u).expect("k parameters").k_table().map(|(_, k)| k).collect();
    ks.sort();
    ks
}

const SMALL: &[&str] = &["a1_sl2", "a1_pgl2", "bc1_u3", "gl2", "a1xa1_swap"];

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn k_values_are_w_invariant(idx in 0usize..8, zeta in prop::collection::vec(0i64..12, 3)) {
        let case = &catalog().cases[idx];
        let alg = &case.alg;
        let u = TorusPoint::new(alg.ctx(), zeta[..alg.rank()].to_vec(), vec![0; alg.rank()]).unwrap();
        let base = sorted_k(alg, &u);
        for e in alg.datum().elements() {
            let moved = alg.datum().act_on_point(e, &u);
            prop_assert_eq!(&sorted_k(alg, &moved), &base);
        }
    }

    #[test]
    fn psi_is_an_anti_isomorphism(name in prop::sample::select(vec!["a1xa1_swap", "c2", "bc1_u3", "gl2"]), seed: u64) {
        let case = case(name);
        let target = galois_side(case);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = tasks::random_element(&case.alg, &mut rng);
        let b = tasks::random_element(&case.alg, &mut rng);
        let lhs = comparison_iso(&(&a * &b), &target).unwrap();
        let rhs = &comparison_iso(&b, &target).unwrap() * &comparison_iso(&a, &target).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(comparison_iso(&comparison_iso(&a, &target).unwrap(), &case.alg).unwrap(), a);
    }

    #[test]
    fn central_twist_is_multiplicative(name in prop::sample::select(vec!["gl2", "gl3"]), a in 0i64..12, seed: u64) {
        let alg = &case(name).alg;
        let z = TorusPoint::new(alg.ctx(), vec![a; alg.rank()], vec![0; alg.rank()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = tasks::random_element(alg, &mut rng);
        let y = tasks::random_element(alg, &mut rng);
        let lhs = twist_by_character(&z, &(&x * &y)).unwrap();
        let rhs = &twist_by_character(&z, &x).unwrap() * &twist_by_character(&z, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn principal_series_has_one_det_vector(
        name in prop::sample::select(SMALL.to_vec()),
        zeta in prop::collection::vec(0i64..12, 2),
        vexp in prop::collection::vec(-8i64..=8, 2),
    ) {
        let alg = &case(name).alg;
        let r = alg.rank();
        let t = TorusPoint::new(alg.ctx(), zeta[..r].to_vec(), vexp[..r].to_vec()).unwrap();
        prop_assert_eq!(principal_series_module(alg, &t).unwrap().det_multiplicity(), 1);
    }

    /// Near reducibility points: constituents exhaust the module and carry the det vector once.
    #[test]
    fn constituents_share_one_det_vector(
        name in prop::sample::select(vec!["a1_sl2", "bc1_u3", "gl2"]),
        sign in 0i64..2,
        vexp in -4i64..=4,
    ) {
        let alg = &case(name).alg;
        let mut zeta = vec![6 * sign];
        let mut v = vec![vexp];
        zeta.resize(alg.rank(), 0);
        v.resize(alg.rank(), 0);
        let t = TorusPoint::new(alg.ctx(), zeta, v).unwrap();
        let m = principal_series_module(alg, &t).unwrap();
        let dec = m.decompose().unwrap();
        prop_assert_eq!(dec.dims().iter().sum::<usize>(), m.dim());
        if dec.complete {
            let dets: usize = dec.constituents.iter().map(|c| c.module.det_multiplicity()).sum();
            prop_assert_eq!(dets, 1);
        }
    }

    #[test]
    fn twisted_module_shifts_weights(a in 0i64..12, vexp in prop::collection::vec(-4i64..=4, 2)) {
        let alg = &case("gl2").alg;
        let z = TorusPoint::new(alg.ctx(), vec![a, a], vec![0, 0]).unwrap();
        let t = TorusPoint::new(alg.ctx(), vec![0, 1], vexp).unwrap();
        let m = principal_series_module(alg, &t).unwrap();
        let mut shifted: Vec<_> = m.weights().unwrap().into_iter().map(|(w, k)| (z.mul(&w), k)).collect();
        shifted.sort();
        prop_assert_eq!(m.twist(&z).unwrap().weights().unwrap(), shifted);
    }

    #[test]
    fn points_round_trip_through_strings(zeta in prop::collection::vec(0i64..12, 1..4), vexp in prop::collection::vec(-9i64..9, 4)) {
        let ctx = catalog().ctx;
        let t = TorusPoint::new(ctx, zeta.clone(), vexp[..zeta.len()].to_vec()).unwrap();
        let cfg: Vec<[String; 2]> = t.to_pairs().into_iter().map(|(a, b)| [a, b]).collect();
        prop_assert_eq!(parse_point(ctx, &cfg).unwrap(), t);
    }

    #[test]
    fn parameter_twist_preserves_predicates(idx in 0usize..5, a in 0i64..12) {
        let dual = case("gl3").dual.as_ref().unwrap();
        let p = &dual.parameters[idx];
        let z = TorusPoint::new(p.ctx(), vec![a; 3], vec![0; 3]).unwrap();
        let q = p.twist(&z).unwrap();
        prop_assert_eq!(q.infinitesimal_point().unwrap(), z.mul(&p.infinitesimal_point().unwrap()));
        prop_assert_eq!(q.predicates().unwrap(), p.predicates().unwrap());
        prop_assert_eq!(q.is_dense_orbit().unwrap(), p.is_dense_orbit().unwrap());
    }
}

#[test]
fn labels_are_ordered_on_consistent_data() {
    for d in case_space(&[1, 2, 3]).into_iter().filter(|d| d.is_consistent()) {
        for l in [labels_padic(&d).unwrap(), labels_galois(&d).unwrap()].into_iter().flatten() {
            assert!(l.lambda >= l.lambda_star && l.lambda_star >= 0, "{d:?}: {l}");
        }
    }
}
