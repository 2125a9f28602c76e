//! Integer lattices given by Gram matrices.
//!
//! Root lattices are stored negative definite with the Bourbaki numbering
//! of simple roots; fiber-component numbering lives in [`crate::kodaira`].
//! All arithmetic is exact.

#![allow(clippy::needless_range_loop)]

mod dcoord;
mod discriminant;
pub mod matrix;

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{common_denominator, exact_sqrt, is_even_integer, Int, Rat};

pub use dcoord::DCoordinateLattice;
pub use discriminant::{DiscriminantForm, FormElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("gram matrix is degenerate")]
    Degenerate,
    #[error("lattice is odd; its discriminant form is not Q/2Z-valued")]
    Odd,
    #[error("glue vector {index} has length {found}, expected {expected}")]
    GlueDimension { index: usize, expected: usize, found: usize },
    #[error("glue vector {index} does not pair integrally with the lattice and the other glue vectors")]
    GlueNotIntegral { index: usize },
    #[error("glue vector {index} has odd or non-integral norm")]
    GlueNotEven { index: usize },
    #[error("|det L| / |det M| = {ratio} is not a perfect square: not a finite-index sublattice of an even overlattice with that determinant")]
    NotSquareIndex { ratio: String },
    #[error("invalid Dynkin label `{0}`")]
    BadLabel(String),
    #[error("{0}")]
    Form(String),
}

/// A non-degenerate integral symmetric bilinear form, given by its Gram
/// matrix in some fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct GramLattice {
    gram: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for GramLattice {
    type Error = LatticeError;

    fn try_from(gram: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        GramLattice::new(gram)
    }
}

impl From<GramLattice> for Vec<Vec<i64>> {
    fn from(l: GramLattice) -> Self {
        l.gram
    }
}

impl GramLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        let l = Self { gram };
        if l.determinant().is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(l)
    }

    /// The rank-0 lattice.
    pub fn zero() -> Self {
        Self { gram: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn determinant(&self) -> Int {
        matrix::determinant(&matrix::to_int_matrix(&self.gram))
    }

    pub fn abs_determinant(&self) -> Int {
        self.determinant().abs()
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    /// `(positive, negative)` index of inertia.
    pub fn signature(&self) -> (usize, usize) {
        let (p, n, _) = matrix::inertia(&matrix::to_rat_matrix(&self.gram));
        (p, n)
    }

    pub fn pairing(&self, x: &[Rat], y: &[Rat]) -> Rat {
        matrix::bilinear(&self.gram, x, y)
    }

    pub fn norm(&self, x: &[Rat]) -> Rat {
        self.pairing(x, x)
    }

    pub fn inverse(&self) -> matrix::RatMatrix {
        matrix::inverse(&matrix::to_rat_matrix(&self.gram)).expect("non-degenerate by construction")
    }

    /// Scales every entry; `negated()` turns a root lattice into its
    /// positive-definite counterpart.
    pub fn negated(&self) -> Self {
        Self {
            gram: self.gram.iter().map(|r| r.iter().map(|v| -v).collect()).collect(),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum<'a>(lattices: impl IntoIterator<Item = &'a GramLattice>) -> GramLattice {
        let parts: Vec<&GramLattice> = lattices.into_iter().collect();
        let n: usize = parts.iter().map(|l| l.rank()).sum();
        let mut gram = vec![vec![0i64; n]; n];
        let mut off = 0;
        for l in parts {
            for (i, row) in l.gram.iter().enumerate() {
                gram[off + i][off..off + row.len()].copy_from_slice(row);
            }
            off += l.rank();
        }
        GramLattice { gram }
    }

    /// Whether the rational coordinate vector lies in the dual lattice,
    /// i.e. pairs integrally with every basis vector.
    pub fn is_dual_vector(&self, x: &[Rat]) -> bool {
        self.gram.iter().all(|row| {
            row.iter()
                .zip(x)
                .map(|(&g, xi)| Rat::from_integer(Int::from(g)) * xi)
                .sum::<Rat>()
                .is_integer()
        })
    }

    /// The lattice generated by `self` and the given glue vectors (rational
    /// coordinates in the basis of `self`), with a Gram matrix in a
    /// Hermite-reduced basis of the result.
    pub fn overlattice_extend(&self, glue: &[Vec<Rat>]) -> Result<GramLattice, LatticeError> {
        let n = self.rank();
        for (index, g) in glue.iter().enumerate() {
            if g.len() != n {
                return Err(LatticeError::GlueDimension { index, expected: n, found: g.len() });
            }
            if !self.is_dual_vector(g) {
                return Err(LatticeError::GlueNotIntegral { index });
            }
            if !is_even_integer(&self.norm(g)) {
                return Err(LatticeError::GlueNotEven { index });
            }
        }
        for (index, g) in glue.iter().enumerate() {
            if glue.iter().any(|h| !self.pairing(g, h).is_integer()) {
                return Err(LatticeError::GlueNotIntegral { index });
            }
        }
        if glue.is_empty() {
            return Ok(self.clone());
        }
        let basis = self.overlattice_basis(glue);
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = self.pairing(&basis[i], &basis[j]);
                        debug_assert!(v.is_integer());
                        v.to_integer().to_i64().expect("gram entry fits in i64")
                    })
                    .collect()
            })
            .collect();
        GramLattice::new(gram)
    }

    /// A basis (rational coordinates in the basis of `self`) of the lattice
    /// generated by `self` and `glue`.
    pub fn overlattice_basis(&self, glue: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        let n = self.rank();
        let den = common_denominator(glue.iter().flatten());
        let mut rows: matrix::IntMatrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { den.clone() } else { Int::zero() }).collect())
            .collect();
        for g in glue {
            rows.push(g.iter().map(|v| (v * Rat::from_integer(den.clone())).to_integer()).collect());
        }
        let basis = matrix::row_basis(&rows);
        basis
            .into_iter()
            .map(|r| r.into_iter().map(|v| Rat::new(v, den.clone())).collect())
            .collect()
    }

    /// Index `n` of this lattice in an overlattice of determinant `m_det`,
    /// from `|det L| = n^2 |det M|`.
    pub fn index_of_sublattice(&self, m_det: &Int) -> Result<Int, LatticeError> {
        let l = self.abs_determinant();
        let m = m_det.abs();
        let bad = || LatticeError::NotSquareIndex { ratio: format!("{l}/{m}") };
        if m.is_zero() || !(&l % &m).is_zero() {
            return Err(bad());
        }
        exact_sqrt(&(&l / &m)).ok_or_else(bad)
    }

    pub fn discriminant_form(&self) -> Result<DiscriminantForm, LatticeError> {
        DiscriminantForm::of_lattice(self)
    }

    /// All vectors of norm `-2` in a negative-definite lattice, in the
    /// lattice basis.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        matrix::short_vectors(self.negated().gram(), 2)
            .into_iter()
            .filter(|v| {
                let x: Vec<Rat> = v.iter().map(|&c| Rat::from_integer(Int::from(c))).collect();
                self.norm(&x) == Rat::from_integer(Int::from(-2))
            })
            .collect()
    }
}

/// The hyperbolic plane with basis `O, F`: `O^2 = -2, F^2 = 0, O.F = 1`.
pub fn hyperbolic_u() -> GramLattice {
    GramLattice { gram: vec![vec![-2, 1], vec![1, 0]] }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinFamily {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct DynkinLabel {
    family: DynkinFamily,
    index: u32,
}

impl DynkinLabel {
    pub fn new(family: DynkinFamily, index: u32) -> Result<Self, LatticeError> {
        let ok = match family {
            DynkinFamily::A => index >= 1,
            DynkinFamily::D => index >= 3,
            DynkinFamily::E => (6..=8).contains(&index),
        };
        if ok {
            Ok(Self { family, index })
        } else {
            Err(LatticeError::BadLabel(format!("{family:?}{index}")))
        }
    }

    pub fn a(n: u32) -> Self {
        Self::new(DynkinFamily::A, n).expect("valid A label")
    }

    pub fn d(n: u32) -> Self {
        Self::new(DynkinFamily::D, n).expect("valid D label")
    }

    pub fn e(n: u32) -> Self {
        Self::new(DynkinFamily::E, n).expect("valid E label")
    }

    pub fn family(&self) -> DynkinFamily {
        self.family
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn rank(&self) -> usize {
        self.index as usize
    }

    /// Edges of the Dynkin diagram, Bourbaki numbering, 0-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        match self.family {
            DynkinFamily::A => (1..n).map(|i| (i - 1, i)).collect(),
            DynkinFamily::D => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            DynkinFamily::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((3..n).map(|i| (i - 1, i)));
                e
            }
        }
    }

    /// Negative-definite Gram matrix: `-2` on the diagonal, `+1` per edge.
    pub fn gram(&self) -> GramLattice {
        let n = self.rank();
        let mut gram = vec![vec![0i64; n]; n];
        for (i, row) in gram.iter_mut().enumerate() {
            row[i] = -2;
        }
        for (i, j) in self.edges() {
            gram[i][j] = 1;
            gram[j][i] = 1;
        }
        GramLattice { gram }
    }
}

pub fn gram_of(label: DynkinLabel) -> GramLattice {
    label.gram()
}

impl fmt::Display for DynkinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.index)
    }
}

impl FromStr for DynkinLabel {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::BadLabel(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => DynkinFamily::A,
            Some('D') => DynkinFamily::D,
            Some('E') => DynkinFamily::E,
            _ => return Err(bad()),
        };
        let index: u32 = chars.as_str().parse().map_err(|_| bad())?;
        Self::new(family, index).map_err(|_| bad())
    }
}

impl TryFrom<String> for DynkinLabel {
    type Error = LatticeError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<DynkinLabel> for String {
    fn from(l: DynkinLabel) -> Self {
        l.to_string()
    }
}

/// `|det|` of the root lattice, from its closed form.
pub fn root_lattice_abs_det(label: DynkinLabel) -> u64 {
    match (label.family, label.index) {
        (DynkinFamily::A, n) => n as u64 + 1,
        (DynkinFamily::D, _) => 4,
        (DynkinFamily::E, 6) => 3,
        (DynkinFamily::E, 7) => 2,
        _ => 1,
    }
}
