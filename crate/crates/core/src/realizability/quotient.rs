//! Quotients `D_m / (D_{n_1} + ... + D_{n_k})` for the block embedding
//! in the coordinate model, `m = n_1 + ... + n_k`.

use num_traits::ToPrimitive;

use crate::group::AbelianGroup;
use crate::lattice::matrix;
use crate::lattice::{DCoordinateLattice, LatticeError};

fn validate(parts: &[usize]) -> Result<usize, LatticeError> {
    if parts.is_empty() {
        return Err(LatticeError::BadLabel("empty block list".into()));
    }
    if let Some(&n) = parts.iter().find(|&&n| n < 3) {
        return Err(LatticeError::BadLabel(format!("D{n}")));
    }
    Ok(parts.iter().sum())
}

/// Simple roots of every block, written in coordinates of `Z^m`.
fn block_generators(parts: &[usize], m: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for &n in parts {
        for b in DCoordinateLattice::new(n).expect("validated").basis() {
            let mut v = vec![0; m];
            v[offset..offset + n].copy_from_slice(&b);
            out.push(v);
        }
        offset += n;
    }
    out
}

/// The quotient group from the Smith normal form of the block generators
/// written in the simple-root basis of `D_m`.
pub fn d_lattice_quotient(parts: &[usize]) -> Result<AbelianGroup, LatticeError> {
    let m = validate(parts)?;
    let dm = DCoordinateLattice::new(m)?;
    let rows: Vec<Vec<i64>> = block_generators(parts, m)
        .iter()
        .map(|v| dm.coordinates(v).expect("block roots lie in D_m"))
        .collect();
    let snf = matrix::smith(&matrix::to_int_matrix(&rows));
    let orders: Vec<u64> = snf
        .diagonal
        .iter()
        .map(|d| d.magnitude().to_u64().expect("factor fits in u64"))
        .collect();
    Ok(AbelianGroup::from_cyclic_orders(&orders))
}

/// Brute-force coset enumeration in `Z^m`: grows representatives of
/// `D_m / sub` by adding simple roots of `D_m`, where `x` lies in `sub`
/// iff every block of coordinates has even sum.
pub fn d_lattice_quotient_bruteforce(parts: &[usize]) -> Result<AbelianGroup, LatticeError> {
    let m = validate(parts)?;
    let in_sub = |x: &[i64]| {
        let mut offset = 0;
        parts.iter().all(|&n| {
            let s: i64 = x[offset..offset + n].iter().sum();
            offset += n;
            s % 2 == 0
        })
    };
    let same_coset = |x: &[i64], y: &[i64]| {
        let d: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        in_sub(&d)
    };
    let gens = DCoordinateLattice::new(m)?.basis();
    let mut reps: Vec<Vec<i64>> = vec![vec![0; m]];
    let mut i = 0;
    while i < reps.len() {
        for g in &gens {
            let x: Vec<i64> = reps[i].iter().zip(g).map(|(a, b)| a + b).collect();
            if !reps.iter().any(|r| same_coset(r, &x)) {
                reps.push(x);
            }
        }
        i += 1;
    }
    let orders: Vec<u64> = reps
        .iter()
        .map(|r| {
            let mut k = 1;
            let mut acc = r.clone();
            while !in_sub(&acc) {
                acc.iter_mut().zip(r).for_each(|(a, b)| *a += b);
                k += 1;
            }
            k
        })
        .collect();
    Ok(AbelianGroup::from_element_orders(&orders))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_quotients() {
        let v4 = AbelianGroup::from_cyclic_orders(&[2, 2]);
        assert_eq!(d_lattice_quotient(&[5, 5, 8]).unwrap(), v4);
        assert_eq!(d_lattice_quotient(&[6, 6, 6]).unwrap(), v4);
        assert_eq!(d_lattice_quotient(&[7]).unwrap(), AbelianGroup::trivial());
        assert_eq!(d_lattice_quotient(&[6, 5]).unwrap(), AbelianGroup::cyclic(2));
        assert!(d_lattice_quotient(&[2, 5]).is_err());
        assert!(d_lattice_quotient(&[]).is_err());
    }

    #[test]
    fn bruteforce_agrees() {
        for parts in [vec![5, 5, 8], vec![3, 4], vec![3, 3, 3, 3], vec![8]] {
            assert_eq!(d_lattice_quotient(&parts).unwrap(), d_lattice_quotient_bruteforce(&parts).unwrap());
        }
    }
}
