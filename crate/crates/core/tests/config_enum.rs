use std::collections::BTreeSet;

use k3fs::config::{enumerate_case, enumerate_extremal, EXTREMAL_RANK, K3_EULER};
use k3fs::{Case, Configuration, FiberType};

fn key(fibers: Vec<FiberType>) -> String {
    Configuration::new(fibers).unwrap().to_string()
}

/// Ordered `k`-tuples of positive integers summing to `total`,
/// non-increasing so each multiset appears once.
fn partitions(total: u32, k: usize, max: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (1..=max.min(total)).rev() {
        for mut rest in partitions(total - first, k - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn semistable(ns: &[u32]) -> Vec<FiberType> {
    ns.iter().map(|&n| FiberType::I(n)).collect()
}

const STARS: [(FiberType, u32); 3] = [(FiberType::IIStar, 8), (FiberType::IIIStar, 9), (FiberType::IVStar, 10)];

/// The four-fiber families: two non-semi-stable fibers plus `I_{n3}, I_{n4}`.
fn case_b_families() -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for n1 in 1..=12 {
        for n2 in 1..=n1 {
            for p in partitions(12u32.saturating_sub(n1 + n2), 2, 24) {
                let mut f = vec![FiberType::IStar(n1), FiberType::IStar(n2)];
                f.extend(semistable(&p));
                out.insert(key(f));
            }
        }
    }
    for (star, total) in STARS {
        for n1 in 1..total {
            for p in partitions(total - n1, 2, 24) {
                let mut f = vec![FiberType::IStar(n1), star];
                f.extend(semistable(&p));
                out.insert(key(f));
            }
        }
    }
    let pairs = [
        (FiberType::IIStar, FiberType::IIStar, 4),
        (FiberType::IIStar, FiberType::IIIStar, 5),
        (FiberType::IIStar, FiberType::IVStar, 6),
        (FiberType::IIIStar, FiberType::IIIStar, 6),
        (FiberType::IIIStar, FiberType::IVStar, 7),
        (FiberType::IVStar, FiberType::IVStar, 8),
    ];
    for (a, b, total) in pairs {
        for p in partitions(total, 2, 24) {
            let mut f = vec![a, b];
            f.extend(semistable(&p));
            out.insert(key(f));
        }
    }
    out
}

fn case_c_families() -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for n1 in 1..=14 {
        for p in partitions(18 - n1, 4, 24) {
            let mut f = vec![FiberType::IStar(n1)];
            f.extend(semistable(&p));
            out.insert(key(f));
        }
    }
    for (star, total) in [(FiberType::IIStar, 14), (FiberType::IIIStar, 15), (FiberType::IVStar, 16)] {
        for p in partitions(total, 4, 24) {
            let mut f = vec![star];
            f.extend(semistable(&p));
            out.insert(key(f));
        }
    }
    out
}

fn names(cs: &[Configuration]) -> BTreeSet<String> {
    cs.iter().map(ToString::to_string).collect()
}

#[test]
fn case_b_matches_family_description() {
    let got = enumerate_case(Case::B);
    assert_eq!(names(&got).len(), got.len(), "duplicates");
    assert_eq!(names(&got), case_b_families());
}

#[test]
fn case_c_matches_family_description() {
    let got = enumerate_case(Case::C);
    assert_eq!(names(&got).len(), got.len(), "duplicates");
    assert_eq!(names(&got), case_c_families());
}

/// Partitions of `n` into exactly `k` positive parts, by the recurrence
/// `p(n, k) = p(n - 1, k - 1) + p(n - k, k)`.
fn partition_count(n: i64, k: i64) -> u64 {
    if n == 0 && k == 0 {
        return 1;
    }
    if n <= 0 || k <= 0 {
        return 0;
    }
    partition_count(n - 1, k - 1) + partition_count(n - k, k)
}

#[test]
fn ii_star_family_count() {
    let with_ii_star = enumerate_case(Case::C)
        .into_iter()
        .filter(|c| c.fibers().contains(&FiberType::IIStar))
        .count();
    assert_eq!(with_ii_star as u64, partition_count(14, 4));
    assert_eq!(partition_count(14, 4), 23);
}

#[test]
fn enumeration_invariants() {
    for case in [Case::A, Case::B, Case::C] {
        let list = enumerate_case(case);
        assert!(!list.is_empty());
        for w in list.windows(2) {
            assert!(w[0].canonical_cmp(&w[1]).is_lt(), "not strictly sorted: {} {}", w[0], w[1]);
        }
        for c in &list {
            assert_eq!(c.len(), case.fiber_count());
            assert_eq!(c.euler_sum(), K3_EULER);
            assert_eq!(c.rank_sum(), EXTREMAL_RANK);
            let excess: u32 = c.fibers().iter().map(|f| f.euler_number() - f.lattice_rank()).sum();
            assert_eq!(excess, 6, "{c}");
            assert!(c.fibers().iter().any(|f| !matches!(f, FiberType::I(_))), "{c} is semi-stable");
            assert!(c.is_extremal());
            // canonical order survives a round trip through text and JSON
            assert_eq!(&c.to_string().parse::<Configuration>().unwrap(), c);
            let json = serde_json::to_string(c).unwrap();
            assert_eq!(&serde_json::from_str::<Configuration>(&json).unwrap(), c);
        }
    }
}

#[test]
fn fiber_count_is_three_to_five() {
    for m in [1, 2, 7, 8] {
        assert!(enumerate_extremal(m).is_empty(), "m = {m}");
    }
    // six fibers force e - r = 1 everywhere, i.e. semi-stable
    let six = enumerate_extremal(6);
    assert!(!six.is_empty());
    assert!(six.iter().all(|c| c.fibers().iter().all(|f| matches!(f, FiberType::I(_)))));
}

#[test]
fn case_a_types_are_enumerated() {
    let list = names(&enumerate_case(Case::A));
    for m in 1..=13 {
        let c = Configuration::case_a_type(m).unwrap();
        assert!(list.contains(&c.to_string()), "type {m}");
        assert_eq!(c.type_index(), Some(m));
    }
    assert!(Configuration::case_a_type(14).is_err());
    assert_eq!(Configuration::case_a_label(12).unwrap(), "(I2*, I3*, I1*)");
}

#[test]
fn deg_j_identity_preconditions() {
    let deg_zero: Configuration = "II*,II*,IV".parse().unwrap();
    assert!(deg_zero.check_theorem_0_2().is_err());
    let not_k3: Configuration = "II*,I1".parse().unwrap();
    assert!(not_k3.check_theorem_0_2().is_err());
    assert!("I0,II*".parse::<Configuration>().is_err());
    assert!("".parse::<Configuration>().is_err());
    assert!("II*,X".parse::<Configuration>().is_err());
}
