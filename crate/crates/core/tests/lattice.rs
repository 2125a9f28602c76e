use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use k3fs::arith::{mod2, rat, Int, Rat};
use k3fs::lattice::{hyperbolic_u, matrix, root_lattice_abs_det, DCoordinateLattice};
use k3fs::{AbelianGroup, DiscriminantForm, DynkinLabel, GramLattice};

fn label() -> impl Strategy<Value = DynkinLabel> {
    prop_oneof![
        (1u32..=10).prop_map(DynkinLabel::a),
        (3u32..=10).prop_map(DynkinLabel::d),
        (6u32..=8).prop_map(DynkinLabel::e),
    ]
}

fn sum(labels: &[DynkinLabel]) -> GramLattice {
    GramLattice::direct_sum(&labels.iter().map(DynkinLabel::gram).collect::<Vec<_>>())
}

/// Multiset of `q` over the nonzero elements, as strings.
fn q_profile(q: &DiscriminantForm) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for x in q.elements().iter().filter(|x| x.iter().any(|&a| a != 0)) {
        *out.entry(q.q_value(x).to_string()).or_insert(0) += 1;
    }
    out
}

fn profile(values: &[Rat]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for v in values {
        *out.entry(mod2(v).to_string()).or_insert(0) += 1;
    }
    out
}

#[test]
fn d_discriminant_groups() {
    for n in 3..=10u32 {
        let q = DynkinLabel::d(n).gram().discriminant_form().unwrap();
        let expected = if n % 2 == 1 { AbelianGroup::cyclic(4) } else { AbelianGroup::from_cyclic_orders(&[2, 2]) };
        assert_eq!(q.group(), expected, "D{n}");
        // vector class -1, two spinor classes -n/4
        let spinor = rat(-(n as i64), 4);
        assert_eq!(q_profile(&q), profile(&[rat(-1, 1), spinor.clone(), spinor]), "D{n}");
    }
}

#[test]
fn coordinate_model_matches_dynkin_gram() {
    for n in 3..=10usize {
        let coord = DCoordinateLattice::new(n).unwrap().gram();
        assert_eq!(coord.determinant(), Int::from(4), "D{n}");
        let q = coord.discriminant_form().unwrap();
        let r = DynkinLabel::d(n as u32).gram().discriminant_form().unwrap();
        // the coordinate model is positive definite
        assert!(q.find_isometry(&r, -1).is_some(), "D{n}");
    }
}

#[test]
fn exceptional_and_a_forms() {
    let gen = |l: DynkinLabel| {
        let q = l.gram().discriminant_form().unwrap();
        (q.group(), q_profile(&q))
    };
    assert_eq!(gen(DynkinLabel::e(6)), (AbelianGroup::cyclic(3), profile(&[rat(-4, 3), rat(-4, 3)])));
    assert_eq!(gen(DynkinLabel::e(7)), (AbelianGroup::cyclic(2), profile(&[rat(-3, 2)])));
    assert_eq!(gen(DynkinLabel::e(8)).0, AbelianGroup::trivial());
    for n in 1..=8i64 {
        let (g, p) = gen(DynkinLabel::a(n as u32));
        assert_eq!(g, AbelianGroup::cyclic(n as u64 + 1));
        // q(k g) = -k^2 n / (n + 1) on the cyclic group
        let values: Vec<Rat> = (1..=n).map(|k| rat(-k * k * n, n + 1)).collect();
        assert_eq!(p, profile(&values), "A{n}");
    }
}

#[test]
fn hyperbolic_plane_is_unimodular() {
    let u = hyperbolic_u();
    assert_eq!(u.determinant(), Int::from(-1));
    assert_eq!(u.signature(), (1, 1));
    assert!(u.discriminant_form().unwrap().is_trivial());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinant_is_multiplicative(a in prop::collection::vec(label(), 1..=3), b in prop::collection::vec(label(), 1..=3)) {
        let (la, lb) = (sum(&a), sum(&b));
        let both = GramLattice::direct_sum([&la, &lb]);
        prop_assert_eq!(both.determinant(), la.determinant() * lb.determinant());
        let closed: u64 = a.iter().chain(&b).map(|&l| root_lattice_abs_det(l)).product();
        prop_assert_eq!(both.abs_determinant(), Int::from(closed));
    }

    #[test]
    fn group_order_is_abs_determinant(ls in prop::collection::vec(label(), 1..=4)) {
        let l = sum(&ls);
        let q = l.discriminant_form().unwrap();
        prop_assert_eq!(Int::from(q.order()), l.abs_determinant());
        prop_assert_eq!(q.elements().len() as u64, q.order());
        prop_assert!(l.is_even());
        prop_assert_eq!(l.signature(), (0, l.rank()));
    }

    #[test]
    fn form_values_are_consistent(ls in prop::collection::vec(label(), 1..=3)) {
        let q = sum(&ls).discriminant_form().unwrap();
        let els = q.elements();
        for x in els.iter().take(12) {
            for y in els.iter().take(12) {
                // q(x + y) = q(x) + q(y) + 2 b(x, y) mod 2
                let lhs = q.q_value(&q.add(x, y));
                let rhs = mod2(&(q.q_value(x) + q.q_value(y) + rat(2, 1) * q.b_value(x, y)));
                prop_assert_eq!(lhs, rhs);
            }
            prop_assert_eq!(q.q_value(&q.scale(-1, x)), q.q_value(x));
        }
    }

    #[test]
    fn smith_diagonal_multiplies_to_det(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 4)) {
        let m = matrix::to_int_matrix(&rows);
        let det = matrix::determinant(&m);
        prop_assume!(!det.is_zero());
        let snf = matrix::smith(&m);
        let prod: Int = snf.diagonal.iter().map(|d| d.abs()).product();
        prop_assert_eq!(prod, det.abs());
        for w in snf.diagonal.windows(2) {
            if !w[1].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
            }
        }
    }
}
