//! Dense exact matrix kernels: Bareiss determinant, rational inverse,
//! Smith and Hermite normal forms, Sylvester signature and
//! Fincke-Pohst short-vector enumeration.

#![allow(clippy::needless_range_loop)]

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Rat};

pub type IntMatrix = Vec<Vec<Int>>;
pub type RatMatrix = Vec<Vec<Rat>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

pub fn to_int_matrix(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect()
}

pub fn to_rat_matrix(m: &[Vec<i64>]) -> RatMatrix {
    m.iter()
        .map(|r| r.iter().map(|&v| Rat::from_integer(Int::from(v))).collect())
        .collect()
}

/// Fraction-free Gaussian elimination. The empty matrix has determinant 1.
pub fn determinant(m: &IntMatrix) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut a = m.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Gauss-Jordan inverse over the rationals; `None` for singular input.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m.clone();
    let mut inv: RatMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let da = &f * &a[col][j];
                a[r][j] -= da;
                let di = &f * &inv[col][j];
                inv[r][j] -= di;
            }
        }
    }
    Some(inv)
}

pub fn mat_vec(m: &RatMatrix, v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// `x^T g y` for an integer Gram matrix and rational vectors.
pub fn bilinear(g: &[Vec<i64>], x: &[Rat], y: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if g[i][j] != 0 && !yj.is_zero() {
                acc += xi * yj * Rat::from_integer(Int::from(g[i][j]));
            }
        }
    }
    acc
}

/// Smith normal form `left * a * right = diag(diagonal)` for an `m x n`
/// integer matrix. Only the left transform and its inverse are kept; the
/// discriminant-group code needs both and never the right one.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<Int>,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
}

pub fn smith(a: &IntMatrix) -> SmithForm {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut a = a.clone();
    let mut u = identity(m);
    let mut uinv = identity(m);

    // row_i += k * row_j, mirrored on the transforms
    fn add_row(a: &mut IntMatrix, u: &mut IntMatrix, uinv: &mut IntMatrix, i: usize, j: usize, k: &Int) {
        for c in 0..a[0].len() {
            let d = k * &a[j][c];
            a[i][c] += d;
        }
        for c in 0..u.len() {
            let d = k * &u[j][c];
            u[i][c] += d;
        }
        for r in 0..uinv.len() {
            let d = k * &uinv[r][i];
            uinv[r][j] -= d;
        }
    }
    fn swap_rows(a: &mut IntMatrix, u: &mut IntMatrix, uinv: &mut IntMatrix, i: usize, j: usize) {
        a.swap(i, j);
        u.swap(i, j);
        for row in uinv.iter_mut() {
            row.swap(i, j);
        }
    }

    let r = m.min(n);
    for t in 0..r {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            if pi != t {
                swap_rows(&mut a, &mut u, &mut uinv, t, pi);
            }
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
            }
            if a[t][t].is_negative() {
                for c in 0..n {
                    a[t][c] = -a[t][c].clone();
                }
                for c in 0..m {
                    u[t][c] = -u[t][c].clone();
                }
                for row in uinv.iter_mut() {
                    row[t] = -row[t].clone();
                }
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                add_row(&mut a, &mut u, &mut uinv, i, t, &-q);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut() {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &p).is_zero()));
            match offending {
                Some(i) => add_row(&mut a, &mut u, &mut uinv, t, i, &Int::one()),
                None => break,
            }
        }
    }
    let diagonal = (0..r).map(|t| a[t][t].clone()).collect();
    SmithForm {
        diagonal,
        left: u,
        left_inv: uinv,
    }
}

/// Row-style Hermite reduction; returns a basis (nonzero rows) of the row
/// lattice of `rows`.
pub fn row_basis(rows: &IntMatrix) -> IntMatrix {
    let mut rows = rows.clone();
    let n = rows.first().map_or(0, |r| r.len());
    let mut p = 0;
    for col in 0..n {
        if p == rows.len() {
            break;
        }
        loop {
            let pivot = (p..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&x, &y| rows[x][col].abs().cmp(&rows[y][col].abs()));
            let Some(pi) = pivot else { break };
            rows.swap(p, pi);
            let mut done = true;
            for i in p + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[p][col]);
                for c in 0..n {
                    let d = &q * &rows[p][c];
                    rows[i][c] -= d;
                }
                done &= rows[i][col].is_zero();
            }
            if done {
                if rows[p][col].is_negative() {
                    for c in 0..n {
                        rows[p][c] = -rows[p][c].clone();
                    }
                }
                for i in 0..p {
                    let q = rows[i][col].div_floor(&rows[p][col]);
                    if !q.is_zero() {
                        for c in 0..n {
                            let d = &q * &rows[p][c];
                            rows[i][c] -= d;
                        }
                    }
                }
                p += 1;
                break;
            }
        }
    }
    rows.truncate(p);
    rows
}

/// `(positive, negative, zero)` counts of a symmetric rational matrix,
/// by congruence diagonalisation.
pub fn inertia(m: &RatMatrix) -> (usize, usize, usize) {
    let n = m.len();
    let mut a = m.clone();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // replace e_k by e_k + e_j; the new diagonal entry is 2 a_kj + a_jj != 0
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                zero += 1;
                k += 1;
                continue;
            }
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for c in k..n {
                let d = &f * &a[k][c];
                a[i][c] -= d;
            }
            for r in k..n {
                let d = &f * &a[r][k];
                a[r][i] -= d;
            }
        }
        k += 1;
    }
    (pos, neg, zero)
}

/// All nonzero integer vectors `x` with `x^T g x <= bound` for a positive
/// definite integer Gram matrix `g` (both `x` and `-x` are returned).
pub fn short_vectors(g: &[Vec<i64>], bound: i64) -> Vec<Vec<i64>> {
    let n = g.len();
    // Cohen 2.7.5 style quadratic completion: Q(x) = sum q_ii (x_i + sum_{j>i} q_ij x_j)^2
    let mut q = to_rat_matrix(g);
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let d = &q[k][i] * &q[i][l];
                q[k][l] -= d;
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let bound = Rat::from_integer(Int::from(bound));
    if n > 0 {
        descend(&q, n - 1, &bound, &mut x, &mut out);
    }
    out.retain(|v: &Vec<i64>| v.iter().any(|&c| c != 0));
    out
}

fn descend(q: &RatMatrix, i: usize, remaining: &Rat, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let n = x.len();
    let center: Rat = -(i + 1..n)
        .map(|j| &q[i][j] * Rat::from_integer(Int::from(x[j])))
        .sum::<Rat>();
    let cost = |v: i64| {
        let d = Rat::from_integer(Int::from(v)) - &center;
        &q[i][i] * &d * &d
    };
    let start = center.round().to_integer();
    let start: i64 = i64::try_from(start).expect("short vector coordinate out of range");
    if cost(start) > *remaining {
        return;
    }
    let visit = |v: i64, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>| {
        let c = cost(v);
        if c > *remaining {
            return false;
        }
        x[i] = v;
        if i == 0 {
            out.push(x.clone());
        } else {
            descend(q, i - 1, &(remaining - c), x, out);
        }
        true
    };
    visit(start, x, out);
    let mut v = start + 1;
    while visit(v, x, out) {
        v += 1;
    }
    let mut v = start - 1;
    while visit(v, x, out) {
        v -= 1;
    }
    x[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(m: &[&[i64]]) -> IntMatrix {
        m.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect()
    }

    fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let k = b.len();
        a.iter()
            .map(|row| {
                (0..b[0].len())
                    .map(|j| (0..k).map(|t| &row[t] * &b[t][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn bareiss_matches_cofactor_values() {
        assert_eq!(determinant(&im(&[&[-2, 1], &[1, 0]])), Int::from(-1));
        assert_eq!(determinant(&im(&[&[0, 1], &[1, 0]])), Int::from(-1));
        assert_eq!(determinant(&im(&[&[1, 2], &[2, 4]])), Int::zero());
        assert_eq!(determinant(&Vec::new()), Int::one());
        assert_eq!(determinant(&im(&[&[2, 0, 1], &[0, 3, 0], &[1, 0, 5]])), Int::from(27));
    }

    #[test]
    fn smith_transform_is_consistent() {
        let a = im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a);
        let diag: Vec<i64> = s.diagonal.iter().map(|d| i64::try_from(d.clone()).unwrap()).collect();
        assert_eq!(diag, vec![2, 6, 12]);
        assert_eq!(mul(&s.left, &s.left_inv), identity(3));
    }

    #[test]
    fn row_basis_spans_same_lattice() {
        let rows = im(&[&[2, 0], &[0, 2], &[1, 1]]);
        let b = row_basis(&rows);
        assert_eq!(b.len(), 2);
        assert_eq!(determinant(&b).abs(), Int::from(2));
    }

    #[test]
    fn inertia_of_hyperbolic_plane() {
        let u = to_rat_matrix(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(inertia(&u), (1, 1, 0));
        let u2 = to_rat_matrix(&[vec![-2, 1], vec![1, 0]]);
        assert_eq!(inertia(&u2), (1, 1, 0));
    }

    #[test]
    fn short_vectors_of_a2() {
        let a2 = vec![vec![2, -1], vec![-1, 2]];
        assert_eq!(short_vectors(&a2, 2).len(), 6);
        let z2 = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(short_vectors(&z2, 2).len(), 8);
    }
}
