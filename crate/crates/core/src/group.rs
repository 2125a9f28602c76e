//! Finite abelian groups in invariant-factor form.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A finite abelian group `Z/d_1 + ... + Z/d_k` with `1 < d_1 | d_2 | ... | d_k`.
/// The trivial group has no factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

fn prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[n])
    }

    /// Normalises an arbitrary direct sum of cyclic groups.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &d in orders {
            assert!(d >= 1, "cyclic order must be positive");
            for (p, e) in prime_powers(d) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        Self::from_partitions(by_prime)
    }

    fn from_partitions(mut by_prime: BTreeMap<u64, Vec<u32>>) -> Self {
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (p, exps) in by_prime.iter_mut() {
            exps.sort_unstable();
            // largest exponents go to the last (largest) invariant factors
            for (slot, &e) in factors.iter_mut().rev().zip(exps.iter().rev()) {
                *slot *= p.pow(e);
            }
        }
        Self { factors }
    }

    /// Recovers the isomorphism type from the multiset of element orders.
    /// For each prime `p`, `#{x : p^k x = 0} = p^(sum_i min(l_i, k))`
    /// determines the partition `l` of the `p`-primary part.
    pub fn from_element_orders(orders: &[u64]) -> Self {
        let n = orders.len() as u64;
        let mut by_prime = BTreeMap::new();
        for (p, e) in prime_powers(n) {
            let mut s_prev = 0u32;
            let mut counts_ge = Vec::new();
            for k in 1..=e {
                let pk = p.pow(k);
                let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                let s_k = count.ilog(p);
                counts_ge.push(s_k - s_prev);
                s_prev = s_k;
            }
            // counts_ge[k-1] = #{i : l_i >= k}
            let mut parts = Vec::new();
            for k in 0..counts_ge.len() {
                let next = counts_ge.get(k + 1).copied().unwrap_or(0);
                for _ in 0..counts_ge[k] - next {
                    parts.push(k as u32 + 1);
                }
            }
            by_prime.insert(p, parts);
        }
        Self::from_partitions(by_prime)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// Whether this group is isomorphic to a subgroup of `other`.
    /// Subgroups of a finite abelian group are characterised prime by
    /// prime: the partition must fit inside the other's partition.
    pub fn embeds_in(&self, other: &AbelianGroup) -> bool {
        let parts = |g: &AbelianGroup| {
            let mut m: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
            for &d in &g.factors {
                for (p, e) in prime_powers(d) {
                    m.entry(p).or_default().push(e);
                }
            }
            for v in m.values_mut() {
                v.sort_unstable_by(|a, b| b.cmp(a));
            }
            m
        };
        let mine = parts(self);
        let theirs = parts(other);
        mine.iter().all(|(p, es)| {
            let Some(os) = theirs.get(p) else { return false };
            es.len() <= os.len() && es.iter().zip(os).all(|(a, b)| a <= b)
        })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}Z")).collect();
        write!(f, "{}", parts.join("+"))
    }
}
