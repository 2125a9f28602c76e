//! The coordinate model `D_n = { x in Z^n : x_1 + ... + x_n even }`.

use super::matrix;
use super::{GramLattice, LatticeError};
use crate::arith::{Int, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DCoordinateLattice {
    n: usize,
}

impl DCoordinateLattice {
    pub fn new(n: usize) -> Result<Self, LatticeError> {
        if n < 3 {
            return Err(LatticeError::BadLabel(format!("D{n}")));
        }
        Ok(Self { n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.n && x.iter().sum::<i64>() % 2 == 0
    }

    /// Simple roots in Bourbaki order: `e_i - e_{i+1}` for `i < n`, then
    /// `e_{n-1} + e_n`.
    pub fn basis(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut out = Vec::with_capacity(n);
        for i in 0..n - 1 {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            out.push(v);
        }
        let mut v = vec![0; n];
        v[n - 2] = 1;
        v[n - 1] = 1;
        out.push(v);
        out
    }

    /// Coefficients of `x` in [`Self::basis`], if `x` is in the lattice.
    pub fn coordinates(&self, x: &[i64]) -> Option<Vec<i64>> {
        if !self.contains(x) {
            return None;
        }
        let b = self.basis();
        // solve sum_i c_i b_i = x, i.e. B^T c = x
        let bt: matrix::RatMatrix = (0..self.n)
            .map(|r| (0..self.n).map(|c| Rat::from_integer(Int::from(b[c][r]))).collect())
            .collect();
        let inv = matrix::inverse(&bt)?;
        let xr: Vec<Rat> = x.iter().map(|&v| Rat::from_integer(Int::from(v))).collect();
        matrix::mat_vec(&inv, &xr)
            .into_iter()
            .map(|c| c.is_integer().then(|| i64::try_from(c.to_integer()).ok()).flatten())
            .collect()
    }

    /// Positive-definite Gram matrix of [`Self::basis`] under the standard
    /// dot product.
    pub fn gram(&self) -> GramLattice {
        let b = self.basis();
        let gram = b
            .iter()
            .map(|x| b.iter().map(|y| x.iter().zip(y).map(|(a, c)| a * c).sum()).collect())
            .collect();
        GramLattice::new(gram).expect("D_n is non-degenerate")
    }
}
