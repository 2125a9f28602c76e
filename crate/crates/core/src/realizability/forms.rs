//! Positive-definite even binary forms, the candidate transcendental
//! lattices of an extremal K3 surface.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Rat;
use crate::lattice::{DiscriminantForm, FormElement, GramLattice, LatticeError};

/// `[[b11, b12], [b12, b22]]`, even and positive definite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct BinaryEvenForm {
    b11: i64,
    b12: i64,
    b22: i64,
}

impl BinaryEvenForm {
    pub fn new(b11: i64, b12: i64, b22: i64) -> Result<Self, LatticeError> {
        if b11 % 2 != 0 || b22 % 2 != 0 {
            return Err(LatticeError::Odd);
        }
        if b11 <= 0 || b11 * b22 - b12 * b12 <= 0 {
            return Err(LatticeError::Form(format!("[{b11},{b12},{b22}] is not positive definite")));
        }
        Ok(Self { b11, b12, b22 })
    }

    pub fn diag(a: i64, b: i64) -> Self {
        Self::new(a, 0, b).expect("even positive diagonal")
    }

    pub fn entries(&self) -> (i64, i64, i64) {
        (self.b11, self.b12, self.b22)
    }

    pub fn det(&self) -> i64 {
        self.b11 * self.b22 - self.b12 * self.b12
    }

    /// `-b11 < 2 b12 <= b11 <= b22`, with `b12 >= 0` when `b11 = b22`.
    pub fn is_reduced(&self) -> bool {
        -self.b11 < 2 * self.b12
            && 2 * self.b12 <= self.b11
            && self.b11 <= self.b22
            && (self.b11 != self.b22 || self.b12 >= 0)
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        [[self.b11, self.b12], [self.b12, self.b22]]
    }

    pub fn lattice(&self) -> GramLattice {
        GramLattice::new(vec![vec![self.b11, self.b12], vec![self.b12, self.b22]]).expect("positive definite")
    }

    pub fn discriminant_form(&self) -> DiscriminantForm {
        self.lattice().discriminant_form().expect("even lattice")
    }

    /// Classes of the dual basis `(g1, g2) = (e1, e2) T^-1` in `form`,
    /// which must be [`Self::discriminant_form`].
    pub fn dual_basis(&self, form: &DiscriminantForm) -> Vec<FormElement> {
        let l = self.lattice();
        let inv = l.inverse();
        (0..2)
            .map(|j| {
                let col: Vec<Rat> = inv.iter().map(|row| row[j].clone()).collect();
                form.coordinates_of(&l, &col).expect("dual basis vector")
            })
            .collect()
    }
}

impl fmt::Display for BinaryEvenForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b12 == 0 {
            write!(f, "diag[{},{}]", self.b11, self.b22)
        } else {
            write!(f, "[[{},{}],[{},{}]]", self.b11, self.b12, self.b12, self.b22)
        }
    }
}

impl TryFrom<[[i64; 2]; 2]> for BinaryEvenForm {
    type Error = LatticeError;

    fn try_from(m: [[i64; 2]; 2]) -> Result<Self, Self::Error> {
        if m[0][1] != m[1][0] {
            return Err(LatticeError::NotSymmetric(0, 1));
        }
        Self::new(m[0][0], m[0][1], m[1][1])
    }
}

impl From<BinaryEvenForm> for [[i64; 2]; 2] {
    fn from(f: BinaryEvenForm) -> Self {
        f.matrix()
    }
}

/// All reduced forms of determinant `det`, ordered by `(b11, b12, b22)`.
/// Reduction forces `3 b11^2 <= 4 det`.
pub fn reduced_binary_forms(det: i64) -> Vec<BinaryEvenForm> {
    let mut out = Vec::new();
    if det < 1 {
        return out;
    }
    let mut b11 = 2;
    while 3 * b11 * b11 <= 4 * det {
        for b12 in (-b11 / 2)..=(b11 / 2) {
            let num = det + b12 * b12;
            if num % b11 != 0 {
                continue;
            }
            if let Ok(f) = BinaryEvenForm::new(b11, b12, num / b11) {
                if f.is_reduced() {
                    out.push(f);
                }
            }
        }
        b11 += 2;
    }
    out
}

/// Images of the generators of `q_t` under some isomorphism
/// `phi: G_T -> G_S` with `q_S(phi(x)) = -q_T(x)`.
pub fn anti_isometry_exists(q_t: &DiscriminantForm, q_s: &DiscriminantForm) -> Option<Vec<FormElement>> {
    q_t.find_isometry(q_s, -1)
}

/// The matrix whose column `j` holds the coordinates of `phi(g_j)`, where
/// `g_j` is the dual basis of `t` and `phi` is given on the generators of
/// `q_t`.
pub fn witness_matrix(t: &BinaryEvenForm, q_t: &DiscriminantForm, q_s: &DiscriminantForm, images: &[FormElement]) -> Vec<Vec<u64>> {
    let cols: Vec<FormElement> = t
        .dual_basis(q_t)
        .iter()
        .map(|g| {
            let mut y = q_s.identity();
            for (a, img) in g.iter().zip(images) {
                y = q_s.add(&y, &q_s.scale(*a as i64, img));
            }
            y
        })
        .collect();
    (0..q_s.orders().len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// Orders of `g1`, `g2` in `T^v / T`.
pub fn dual_basis_orders(t: &BinaryEvenForm) -> (u64, u64) {
    let form = t.discriminant_form();
    let g = t.dual_basis(&form);
    (form.order_of(&g[0]), form.order_of(&g[1]))
}
