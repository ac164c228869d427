use std::sync::Arc;

use proptest::prelude::*;

use steiner_core::catalog;
use steiner_core::census::census;
use steiner_core::format::{parse_factor_system, parse_system, write_factor_system, write_system};
use steiner_core::iso::{all_automorphisms, are_isomorphic, loop_isomorphism, IsoConfig};
use steiner_core::loops::{element_of_point, is_normal, quotient, Subloop};
use steiner_core::operator::{build_extension, operator_from_extension, schreier_operator};
use steiner_core::schreier::{
    apply_aut, are_equivalent, build_schreier, coboundary, further_veblen, pair_element, Cochain,
    FactorSystem, LinearMap,
};
use steiner_core::veblen::{is_projective, veblen_points, veblen_points_by_pasch};
use steiner_core::{SteinerLoop, TripleSystem};

fn small_systems() -> Vec<TripleSystem> {
    vec![
        catalog::fano_labeled(),
        catalog::sts9_labeled(),
        catalog::sts13_a(),
        catalog::sts13_b(),
        catalog::sts15_2(),
        catalog::pg(3),
    ]
}

fn system_and_perm() -> impl Strategy<Value = (TripleSystem, Vec<usize>)> {
    (0..small_systems().len()).prop_flat_map(|i| {
        let s = small_systems().swap_remove(i);
        let perm = Just((0..s.v()).collect::<Vec<_>>()).prop_shuffle();
        (Just(s), perm)
    })
}

fn fano_factor(t: u32) -> impl Strategy<Value = FactorSystem> {
    prop::collection::vec(0u32..1 << t, 7)
        .prop_map(move |vals| FactorSystem::new(Arc::new(catalog::fano_labeled()), t, vals).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabelling_preserves_structure((s, perm) in system_and_perm()) {
        let r = s.relabel(&perm).unwrap();
        let map = are_isomorphic(&s, &r).unwrap().expect("relabelled copy is isomorphic");
        prop_assert_eq!(s.relabel(&map).unwrap(), r.clone());
        prop_assert_eq!(veblen_points(&s).len(), veblen_points(&r).len());
        let (cs, cr) = (census(&s), census(&r));
        prop_assert_eq!(cs.pasch_total, cr.pasch_total);
        prop_assert_eq!(cs.fano_total, cr.fano_total);
        for (x, &y) in perm.iter().enumerate() {
            prop_assert_eq!(cs.pasch_through[x], cr.pasch_through[y]);
        }
    }

    #[test]
    fn system_text_round_trip((s, perm) in system_and_perm()) {
        let r = s.relabel(&perm).unwrap();
        prop_assert_eq!(parse_system(&write_system(&r)).unwrap(), r);
    }

    #[test]
    fn veblen_definitions_agree(f in fano_factor(2)) {
        let s = build_schreier(&f).to_system();
        prop_assert_eq!(veblen_points(&s), veblen_points_by_pasch(&s));
    }

    #[test]
    fn kernel_is_normal_with_quotient_q(f in fano_factor(2)) {
        let l = build_schreier(&f);
        let n = Subloop::new(&l, 0..4).unwrap();
        prop_assert!(is_normal(&l, &n).unwrap());
        let quo = quotient(&l, &n).unwrap();
        let ql = SteinerLoop::from_system(f.quotient());
        prop_assert!(loop_isomorphism(&quo.table, &ql, &IsoConfig::default()).unwrap().is_some());
    }

    #[test]
    fn coboundary_shift_is_equivalent(f in fano_factor(1), phi in prop::collection::vec(0u32..2, 7)) {
        let q = f.quotient().clone();
        let g = f.add(&coboundary(&q, &Cochain { t: 1, values: phi })).unwrap();
        let found = are_equivalent(&f, &g).unwrap().expect("coboundary shift");
        prop_assert_eq!(f.add(&coboundary(&q, &found)).unwrap(), g);
    }

    #[test]
    fn aut_action_preserves_isomorphism_type(f in fano_factor(2), a in 0usize..6, b in 0usize..168) {
        let alpha = LinearMap::all(2).swap_remove(a);
        let beta = all_automorphisms(f.quotient(), 168).unwrap().swap_remove(b);
        let g = apply_aut(&f, &alpha, &beta).unwrap();
        let (s, r) = (build_schreier(&f).to_system(), build_schreier(&g).to_system());
        prop_assert!(are_isomorphic(&s, &r).unwrap().is_some());
    }

    #[test]
    fn further_veblen_gives_center(f in fano_factor(2)) {
        let t = f.t();
        let mut expected: Vec<usize> = std::iter::once(0)
            .chain(further_veblen(&f))
            .flat_map(|p| (0..1u32 << t).map(move |x| pair_element(t, p, x)))
            .filter(|&e| e != 0)
            .map(|e| e - 1)
            .collect();
        expected.sort_unstable();
        prop_assert_eq!(veblen_points(&build_schreier(&f).to_system()), expected);
    }

    #[test]
    fn threshold_on_random_builds(f in fano_factor(2)) {
        let s = build_schreier(&f).to_system();
        let vb = veblen_points(&s).len();
        prop_assert_eq!(8 * vb + 7 > s.v(), is_projective(&s));
    }

    #[test]
    fn factor_text_round_trip(f in fano_factor(3)) {
        prop_assert_eq!(parse_factor_system(&write_factor_system(&f), f.quotient().clone()).unwrap(), f);
    }

    #[test]
    fn operator_decomposition_round_trip(f in fano_factor(1), seed in prop::collection::vec(1usize..16, 0..2)) {
        let l = build_schreier(&f);
        let mut members = vec![0];
        members.extend(seed.iter().map(|&p| element_of_point(p - 1)));
        let n = steiner_core::loops::generated_subloop(&l, &members);
        if is_normal(&l, &n).unwrap() && n.order() < l.order() {
            let (op, embed) = operator_from_extension(&l, &n, None).unwrap();
            let built = build_extension(&op).unwrap();
            prop_assert!(built.is_isomorphism(&l, &embed));
        }
        let op = schreier_operator(&f);
        prop_assert_eq!(build_extension(&op).unwrap(), l);
    }
}
