//! Fiber configurations of extremal elliptic K3 surfaces without
//! semi-stable-only fibrations, and the invariants used to enumerate them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kodaira::{FiberParseError, FiberType};

/// Total Euler number of a K3 surface.
pub const K3_EULER: u32 = 24;
/// Fiber-lattice rank of an extremal K3 fibration (`rho - 2`).
pub const EXTREMAL_RANK: u32 = 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error(transparent)]
    Fiber(#[from] FiberParseError),
    #[error("empty configuration string")]
    Empty,
    #[error("I0 is not a singular fiber")]
    SmoothFiber,
    #[error("Euler numbers sum to {0}, expected 24")]
    NotK3(u32),
    #[error("deg J vanishes, the identity is only stated for deg J != 0")]
    DegJZero,
    #[error("no Case A configuration has type index {0}")]
    UnknownType(usize),
}

/// A multiset of singular fibers, kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<FiberType>", into = "Vec<FiberType>")]
pub struct Configuration {
    fibers: Vec<FiberType>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QInvariants {
    pub q1: i64,
    pub q2: i64,
    pub q3: i64,
    pub q4: i64,
    pub q5: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    A,
    B,
    C,
}

impl Case {
    /// Number of singular fibers in this case.
    pub fn fiber_count(self) -> usize {
        match self {
            Case::A => 3,
            Case::B => 4,
            Case::C => 5,
        }
    }
}

impl FromStr for Case {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(Case::A),
            "B" => Ok(Case::B),
            "C" => Ok(Case::C),
            _ => Err(format!("unknown case `{s}`")),
        }
    }
}

/// The thirteen Case A types, indexed 1..=13.
const CASE_A_TYPES: [&str; 13] = [
    "II*,I1*,I1*",
    "II*,II*,IV",
    "II*,IV*,I0*",
    "III*,III*,I0*",
    "III*,IV*,I1*",
    "III*,I2*,I1*",
    "IV*,IV*,IV*",
    "IV*,IV*,I2*",
    "IV*,I3*,I1*",
    "I4*,I1*,I1*",
    "I2*,I2*,I2*",
    "I2*,I3*,I1*",
    "IV*,I2*,I2*",
];

impl Configuration {
    pub fn new(mut fibers: Vec<FiberType>) -> Result<Self, ConfigError> {
        if fibers.contains(&FiberType::I(0)) {
            return Err(ConfigError::SmoothFiber);
        }
        fibers.sort_by(|a, b| a.canonical_cmp(b));
        Ok(Self { fibers })
    }

    /// Case A type with index `m` in 1..=13.
    pub fn case_a_type(m: usize) -> Result<Self, ConfigError> {
        let s = CASE_A_TYPES.get(m.wrapping_sub(1)).ok_or(ConfigError::UnknownType(m))?;
        s.parse()
    }

    /// Fiber symbols of Case A type `m` in the order they are usually
    /// listed, e.g. `(IV*, I3*, I1*)`.
    pub fn case_a_label(m: usize) -> Result<String, ConfigError> {
        let s = CASE_A_TYPES.get(m.wrapping_sub(1)).ok_or(ConfigError::UnknownType(m))?;
        Ok(format!("({})", s.replace(',', ", ")))
    }

    /// Index in 1..=13 if this is one of the Case A types.
    pub fn type_index(&self) -> Option<usize> {
        (1..=CASE_A_TYPES.len()).find(|&m| Self::case_a_type(m).as_ref() == Ok(self))
    }

    pub fn fibers(&self) -> &[FiberType] {
        &self.fibers
    }

    /// Number of singular fibers `m`.
    pub fn len(&self) -> usize {
        self.fibers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fibers.is_empty()
    }

    pub fn euler_sum(&self) -> u32 {
        self.fibers.iter().map(FiberType::euler_number).sum()
    }

    pub fn rank_sum(&self) -> u32 {
        self.fibers.iter().map(FiberType::lattice_rank).sum()
    }

    pub fn deg_j(&self) -> u32 {
        self.fibers.iter().map(FiberType::j_degree).sum()
    }

    pub fn is_k3(&self) -> bool {
        self.euler_sum() == K3_EULER
    }

    pub fn is_extremal(&self) -> bool {
        self.is_k3() && self.rank_sum() == EXTREMAL_RANK
    }

    /// Fibers carrying a nonzero root lattice, in canonical order.
    pub fn reducible_fibers(&self) -> Vec<FiberType> {
        self.fibers.iter().copied().filter(FiberType::is_reducible).collect()
    }

    pub fn q_invariants(&self) -> QInvariants {
        let mut q = QInvariants { q1: 0, q2: 0, q3: 0, q4: -12, q5: 0 };
        for f in &self.fibers {
            q.q1 += i64::from(f.euler_number());
            q.q2 += i64::from(f.lattice_rank());
            q.q3 += i64::from(f.euler_number() - f.lattice_rank());
            q.q4 += match f {
                FiberType::I(n) | FiberType::IStar(n) if *n >= 1 => 6,
                FiberType::II | FiberType::IVStar => 4,
                FiberType::III | FiberType::IIIStar => 3,
                FiberType::IV | FiberType::IIStar => 2,
                _ => 0,
            };
            if matches!(f, FiberType::IStar(0) | FiberType::IV | FiberType::III | FiberType::II) {
                q.q5 += 1;
            }
        }
        q
    }

    /// Checks `deg J = Q4` and `Q4 - deg J = 6(20 - rho - Q5)` with
    /// `rho = Q2 + 2`. Requires a K3 configuration with `deg J != 0`.
    pub fn check_theorem_0_2(&self) -> Result<bool, ConfigError> {
        if !self.is_k3() {
            return Err(ConfigError::NotK3(self.euler_sum()));
        }
        let deg_j = i64::from(self.deg_j());
        if deg_j == 0 {
            return Err(ConfigError::DegJZero);
        }
        let q = self.q_invariants();
        let rho = q.q2 + 2;
        Ok(deg_j == q.q4 && q.q4 - deg_j == 6 * (20 - rho - q.q5))
    }

    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.fibers.iter().zip(&other.fibers) {
            match a.canonical_cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.len().cmp(&other.len())
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fibers.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl FromStr for Configuration {
    type Err = ConfigError;

    /// Comma-separated fiber symbols, optionally parenthesised.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim();
        let inner = inner.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(inner);
        if inner.trim().is_empty() {
            return Err(ConfigError::Empty);
        }
        let fibers = inner.split(',').map(|t| t.trim().parse()).collect::<Result<Vec<FiberType>, _>>()?;
        Self::new(fibers)
    }
}

impl TryFrom<Vec<FiberType>> for Configuration {
    type Error = ConfigError;

    fn try_from(v: Vec<FiberType>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<Configuration> for Vec<FiberType> {
    fn from(c: Configuration) -> Self {
        c.fibers
    }
}

/// Every singular fiber with Euler number at most 24.
fn candidate_fibers() -> Vec<FiberType> {
    let mut v: Vec<FiberType> = (1..=K3_EULER).map(FiberType::I).collect();
    v.extend((0..=K3_EULER - 6).map(FiberType::IStar));
    v.extend([
        FiberType::II,
        FiberType::III,
        FiberType::IV,
        FiberType::IIStar,
        FiberType::IIIStar,
        FiberType::IVStar,
    ]);
    v
}

/// All extremal K3 configurations with `m` singular fibers: `sum e = 24`,
/// `sum r = 18`, and `Q5 = 0` whenever `deg J != 0`.
pub fn enumerate_extremal(m: usize) -> Vec<Configuration> {
    let cands = candidate_fibers();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(m);
    search(&cands, 0, m, K3_EULER, EXTREMAL_RANK, &mut stack, &mut out);
    let mut configs: Vec<Configuration> = out
        .into_iter()
        .filter_map(|fs| Configuration::new(fs).ok())
        .filter(|c| c.deg_j() == 0 || c.q_invariants().q5 == 0)
        .collect();
    configs.sort_by(|a, b| a.canonical_cmp(b));
    configs.dedup();
    configs
}

fn search(
    cands: &[FiberType],
    start: usize,
    left: usize,
    euler: u32,
    rank: u32,
    stack: &mut Vec<FiberType>,
    out: &mut Vec<Vec<FiberType>>,
) {
    if left == 0 {
        if euler == 0 && rank == 0 {
            out.push(stack.clone());
        }
        return;
    }
    for (i, f) in cands.iter().enumerate().skip(start) {
        let (e, r) = (f.euler_number(), f.lattice_rank());
        if e > euler || r > rank {
            continue;
        }
        stack.push(*f);
        search(cands, i, left - 1, euler - e, rank - r, stack, out);
        stack.pop();
    }
}

pub fn enumerate_case(case: Case) -> Vec<Configuration> {
    enumerate_extremal(case.fiber_count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn q_invariants_examples() {
        let q = cfg("II*,I1*,I1*").q_invariants();
        assert_eq!((q.q1, q.q2), (24, 18));
        assert_eq!(q.q1 - q.q2, q.q3);
        let empty = Configuration::new(Vec::new()).unwrap().q_invariants();
        assert_eq!(empty, QInvariants { q1: 0, q2: 0, q3: 0, q4: -12, q5: 0 });
        assert_eq!(cfg("II*,II*,IV").q_invariants().q5, 1);
    }

    #[test]
    fn deg_j_examples() {
        assert_eq!(cfg("II*,II*,IV").deg_j(), 0);
        assert_eq!(cfg("II*,I1*,I1*").deg_j(), 2);
        assert_eq!(cfg("I4*,I1*,I1*").deg_j(), 6);
    }

    #[test]
    fn deg_j_identity_examples() {
        assert_eq!(cfg("I2*,I2*,I2*").check_theorem_0_2(), Ok(true));
        assert_eq!(cfg("IV*,I3*,I1*").check_theorem_0_2(), Ok(true));
        assert_eq!(cfg("II*,II*,I2,I1,I1").check_theorem_0_2(), Ok(false));
        assert_eq!(cfg("II*,II*,IV").check_theorem_0_2(), Err(ConfigError::DegJZero));
        assert_eq!(cfg("II*,I1*").check_theorem_0_2(), Err(ConfigError::NotK3(17)));
    }

    #[test]
    fn parsing_and_display() {
        let c = cfg("(I1*, II*, I1*)");
        assert_eq!(c.to_string(), "(II*, I1*, I1*)");
        assert_eq!(c.type_index(), Some(1));
        assert!("".parse::<Configuration>().is_err());
        assert!("II*,,IV".parse::<Configuration>().is_err());
        assert_eq!("I0,II*".parse::<Configuration>(), Err(ConfigError::SmoothFiber));
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"["II*","I1*","I1*"]"#);
        assert_eq!(serde_json::from_str::<Configuration>(&json).unwrap(), c);
    }

    #[test]
    fn case_a_types_are_extremal() {
        for m in 1..=13 {
            let c = Configuration::case_a_type(m).unwrap();
            assert!(c.is_extremal(), "{c}");
            assert_eq!(c.type_index(), Some(m));
        }
        assert!(Configuration::case_a_type(0).is_err());
        assert!(Configuration::case_a_type(14).is_err());
        assert_eq!(Configuration::case_a_label(9).unwrap(), "(IV*, I3*, I1*)");
        assert_eq!(Configuration::case_a_type(9).unwrap().to_string(), "(I3*, IV*, I1*)");
    }

    #[test]
    fn case_a_enumeration() {
        let a = enumerate_case(Case::A);
        assert_eq!(a.len(), 13);
        let mut idx: Vec<usize> = a.iter().map(|c| c.type_index().unwrap()).collect();
        idx.sort_unstable();
        assert_eq!(idx, (1..=13).collect::<Vec<_>>());
        assert_eq!(a.iter().filter(|c| c.deg_j() == 0).count(), 4);
    }

    #[test]
    fn case_b_contains_family_member() {
        assert!(enumerate_case(Case::B).contains(&cfg("II*,II*,I3,I1")));
    }
}
