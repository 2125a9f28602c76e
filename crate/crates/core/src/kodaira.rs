//! Kodaira's catalogue of singular fibers.
//!
//! Each reducible fiber contributes the root lattice spanned by its
//! components away from the identity component `Theta_0`. Components are
//! numbered `Theta_1, ..., Theta_r` as follows (Bourbaki simple roots in
//! brackets):
//!
//! * `I_b`, `III`, `IV` (`A_{b-1}`, `A_1`, `A_2`): `Theta_k = [a_k]` along the cycle.
//! * `I_b*` (`D_{b+4}`, `n = b + 4`): `Theta_1 = [a_1]` is the near simple
//!   component, `Theta_2 = [a_n]` and `Theta_3 = [a_{n-1}]` are the far
//!   ones, then `Theta_k = [a_{n+2-k}]` walking from the branch node back
//!   towards `Theta_1`.
//! * `IV*` (`E_6`): `Theta_1 = [a_1]`, `Theta_2 = [a_6]` are the simple
//!   components, then `[a_2], [a_3], [a_4], [a_5]`.
//! * `III*` (`E_7`): `Theta_1 = [a_7]` (simple), then
//!   `[a_2], [a_4], [a_3], [a_1], [a_5], [a_6]`.
//! * `II*` (`E_8`): Bourbaki order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{DynkinLabel, GramLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown fiber symbol `{0}`")]
pub struct FiberParseError(pub String);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FiberType {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
}

impl FiberType {
    pub fn euler_number(&self) -> u32 {
        match *self {
            FiberType::I(n) => n,
            FiberType::IStar(n) => n + 6,
            FiberType::II => 2,
            FiberType::III => 3,
            FiberType::IV => 4,
            FiberType::IVStar => 8,
            FiberType::IIIStar => 9,
            FiberType::IIStar => 10,
        }
    }

    pub fn lattice_rank(&self) -> u32 {
        match *self {
            FiberType::I(0) => 0,
            FiberType::I(n) => n - 1,
            FiberType::IStar(n) => n + 4,
            FiberType::II => 0,
            FiberType::III => 1,
            FiberType::IV => 2,
            FiberType::IVStar => 6,
            FiberType::IIIStar => 7,
            FiberType::IIStar => 8,
        }
    }

    pub fn root_label(&self) -> Option<DynkinLabel> {
        match *self {
            FiberType::I(n) if n >= 2 => Some(DynkinLabel::a(n - 1)),
            FiberType::I(_) | FiberType::II => None,
            FiberType::IStar(b) => Some(DynkinLabel::d(b + 4)),
            FiberType::III => Some(DynkinLabel::a(1)),
            FiberType::IV => Some(DynkinLabel::a(2)),
            FiberType::IVStar => Some(DynkinLabel::e(6)),
            FiberType::IIIStar => Some(DynkinLabel::e(7)),
            FiberType::IIStar => Some(DynkinLabel::e(8)),
        }
    }

    pub fn is_reducible(&self) -> bool {
        self.lattice_rank() > 0
    }

    /// `I_n` with `n >= 1`.
    pub fn is_semistable_singular(&self) -> bool {
        matches!(self, FiberType::I(n) if *n >= 1)
    }

    /// Contribution of this fiber to `deg J`: `n` for `I_n` and `I_n*`.
    pub fn j_degree(&self) -> u32 {
        match *self {
            FiberType::I(n) | FiberType::IStar(n) => n,
            _ => 0,
        }
    }

    /// Bourbaki index (0-based) of each fiber component `Theta_1..Theta_r`.
    pub fn component_roots(&self) -> Vec<usize> {
        let Some(label) = self.root_label() else { return Vec::new() };
        let n = label.rank();
        match self {
            FiberType::IStar(_) => (1..=n)
                .map(|k| match k {
                    1 => 0,
                    2 => n - 1,
                    3 => n - 2,
                    _ => n + 1 - k,
                })
                .collect(),
            FiberType::IVStar => vec![0, 5, 1, 2, 3, 4],
            FiberType::IIIStar => vec![6, 1, 3, 2, 0, 4, 5],
            _ => (0..n).collect(),
        }
    }

    /// Gram matrix of `Theta_1..Theta_r` in fiber numbering.
    pub fn component_gram(&self) -> GramLattice {
        let Some(label) = self.root_label() else { return GramLattice::zero() };
        let base = label.gram();
        let perm = self.component_roots();
        let gram = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| base.gram()[i][j]).collect())
            .collect();
        GramLattice::new(gram).expect("permuted root lattice is non-degenerate")
    }

    pub fn component_group(&self) -> ComponentGroup {
        ComponentGroup::of(*self)
    }

    /// Canonical fiber order: descending lattice rank, then descending
    /// Euler number, then symbol.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        other
            .lattice_rank()
            .cmp(&self.lattice_rank())
            .then(other.euler_number().cmp(&self.euler_number()))
            .then_with(|| self.to_string().cmp(&other.to_string()))
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::I(n) => write!(f, "I{n}"),
            FiberType::IStar(n) => write!(f, "I{n}*"),
            FiberType::II => write!(f, "II"),
            FiberType::III => write!(f, "III"),
            FiberType::IV => write!(f, "IV"),
            FiberType::IIStar => write!(f, "II*"),
            FiberType::IIIStar => write!(f, "III*"),
            FiberType::IVStar => write!(f, "IV*"),
        }
    }
}

impl FromStr for FiberType {
    type Err = FiberParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FiberParseError(s.to_string());
        let (base, star) = match s.strip_suffix('*') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let fixed = match base {
            "II" => Some(if star { FiberType::IIStar } else { FiberType::II }),
            "III" => Some(if star { FiberType::IIIStar } else { FiberType::III }),
            "IV" => Some(if star { FiberType::IVStar } else { FiberType::IV }),
            _ => None,
        };
        if let Some(f) = fixed {
            return Ok(f);
        }
        let digits = base.strip_prefix('I').ok_or_else(bad)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: u32 = digits.parse().map_err(|_| bad())?;
        Ok(if star { FiberType::IStar(n) } else { FiberType::I(n) })
    }
}

impl TryFrom<String> for FiberType {
    type Error = FiberParseError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<FiberType> for String {
    fn from(f: FiberType) -> Self {
        f.to_string()
    }
}

/// Simple components of a fiber modulo the identity component, as a group.
///
/// Elements are named by the fiber component they select: `0` is
/// `Theta_0`, `k >= 1` is `Theta_k`. `residues` gives each element's
/// coordinates in `Z/factors[0] + Z/factors[1] + ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentGroup {
    factors: Vec<u64>,
    table: Vec<(usize, Vec<u64>)>,
}

impl ComponentGroup {
    fn of(f: FiberType) -> Self {
        let (factors, table): (Vec<u64>, Vec<(usize, Vec<u64>)>) = match f {
            FiberType::I(n) if n >= 2 => (vec![n as u64], (0..n as usize).map(|a| (a, vec![a as u64])).collect()),
            FiberType::III | FiberType::IIIStar => (vec![2], vec![(0, vec![0]), (1, vec![1])]),
            FiberType::IV | FiberType::IVStar => (vec![3], vec![(0, vec![0]), (1, vec![1]), (2, vec![2])]),
            // far component Theta_2 generates; twice it is the near one
            FiberType::IStar(b) if b % 2 == 1 => {
                (vec![4], vec![(0, vec![0]), (1, vec![2]), (2, vec![1]), (3, vec![3])])
            }
            FiberType::IStar(_) => (
                vec![2, 2],
                vec![(0, vec![0, 0]), (1, vec![1, 1]), (2, vec![1, 0]), (3, vec![0, 1])],
            ),
            _ => (Vec::new(), vec![(0, Vec::new())]),
        };
        Self { factors, table }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// Component indices of all elements, identity first.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.table.iter().map(|(c, _)| *c)
    }

    pub fn contains(&self, component: usize) -> bool {
        self.table.iter().any(|(c, _)| *c == component)
    }

    pub fn residues(&self, component: usize) -> Option<&[u64]> {
        self.table.iter().find(|(c, _)| *c == component).map(|(_, r)| r.as_slice())
    }

    fn component_of(&self, residues: &[u64]) -> usize {
        self.table
            .iter()
            .find(|(_, r)| r == residues)
            .map(|(c, _)| *c)
            .expect("component table covers the group")
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (rx, ry) = (self.residues(x).expect("element"), self.residues(y).expect("element"));
        let sum: Vec<u64> = rx.iter().zip(ry).zip(&self.factors).map(|((a, b), d)| (a + b) % d).collect();
        self.component_of(&sum)
    }

    pub fn order_of(&self, x: usize) -> u64 {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }
}
