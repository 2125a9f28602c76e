use proptest::prelude::*;

use k3fs::mordell_weil::torsion_search;
use k3fs::realizability::{
    anti_isometry_exists, d_lattice_quotient, d_lattice_quotient_bruteforce, dual_basis_orders, picard_candidate,
    realize, reduced_binary_forms, root_span_check, BinaryEvenForm, Provenance, RealizeError,
};
use k3fs::{AbelianGroup, Configuration};

#[test]
fn glued_types_create_no_new_roots() {
    for (m, g) in [
        (6, AbelianGroup::cyclic(2)),
        (10, AbelianGroup::cyclic(2)),
        (11, AbelianGroup::from_cyclic_orders(&[2, 2])),
    ] {
        let s = picard_candidate(m, &g).unwrap();
        let check = root_span_check(m, &s.subgroup).unwrap();
        assert_eq!(check.outside, 0, "type {m}");
        assert_eq!(check.roots_in_extension, check.roots_in_b, "type {m}");
        assert!(check.roots_in_b > 0);
    }
}

#[test]
fn realized_groups_and_provenance() {
    for m in 1..=13 {
        let r = realize(m).unwrap();
        let c = Configuration::case_a_type(m).unwrap();
        let max = torsion_search(&c).unwrap().maximal_group;
        assert_eq!(r.maximal_torsion, max);
        match &r.final_mw {
            Some(g) => {
                assert!(g.embeds_in(&max), "type {m}");
                assert_ne!(r.provenance, Provenance::Excluded);
                let w = r.witness.as_ref().expect("realized types carry a witness");
                assert_eq!(w.s_abs_det, w.t.det());
                assert_eq!(w.q_t.group(), w.q_s.group());
            }
            None => {
                assert!(m == 12 || m == 13, "type {m}");
                assert_eq!(r.provenance, Provenance::Excluded);
                assert_eq!(r.excluded_groups, r.candidate_groups);
            }
        }
    }
}

#[test]
fn errors_are_typed() {
    assert!(matches!(realize(0), Err(RealizeError::Config(_))));
    assert!(matches!(
        picard_candidate(7, &AbelianGroup::cyclic(2)),
        Err(RealizeError::NoSubgroup { .. })
    ));
    assert!(d_lattice_quotient(&[4, 2]).is_err());
}

#[test]
fn anti_isometry_is_symmetric() {
    for det in 1..=32 {
        let forms = reduced_binary_forms(det);
        for a in &forms {
            let qa = a.discriminant_form();
            assert!(anti_isometry_exists(&qa, &qa.negated()).is_some(), "{a}");
            for b in &forms {
                let qb = b.discriminant_form();
                assert_eq!(
                    anti_isometry_exists(&qa, &qb).is_some(),
                    anti_isometry_exists(&qb, &qa).is_some(),
                    "{a} vs {b}"
                );
            }
        }
    }
}

#[test]
fn distinct_reduced_forms_with_equal_groups() {
    // diag[2,8] and diag[4,4] share det 16 but not the group
    let (a, b) = (BinaryEvenForm::diag(2, 8), BinaryEvenForm::diag(4, 4));
    assert_ne!(a.discriminant_form().group(), b.discriminant_form().group());
    assert_eq!(dual_basis_orders(&a), (2, 8));
}

fn even_form() -> impl Strategy<Value = BinaryEvenForm> {
    (1i64..=12, -20i64..=20, 1i64..=40)
        .prop_filter_map("positive definite", |(a, b, c)| BinaryEvenForm::new(2 * a, b, 2 * c).ok())
        .prop_filter("det at most 64", |f| f.det() <= 64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn every_form_has_one_reduced_representative(f in even_form()) {
        let list = reduced_binary_forms(f.det());
        // the forms in the list with an isometric discriminant form include f's class
        let q = f.discriminant_form();
        prop_assert!(list.iter().any(|g| g.discriminant_form().find_isometry(&q, 1).is_some()));
        for g in &list {
            prop_assert!(g.is_reduced());
            prop_assert_eq!(g.det(), f.det());
        }
    }

    #[test]
    fn d_quotient_routes_agree(parts in prop::collection::vec(3usize..=8, 1..=4)) {
        let snf = d_lattice_quotient(&parts).unwrap();
        prop_assert_eq!(&snf, &d_lattice_quotient_bruteforce(&parts).unwrap());
        prop_assert_eq!(snf.order(), 1u64 << (parts.len() - 1));
    }
}
