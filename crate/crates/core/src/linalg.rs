//! Small exact linear algebra over the rationals and the integers.
//!
//! Matrices are row-major `Vec<Vec<_>>`; all sizes here are tiny (rank ≤ 8),
//! so plain Gaussian elimination is used throughout.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::valfield::{int, Rational};

pub type QMat = Vec<Vec<Rational>>;

/// Reduced row echelon form together with the pivot columns.
pub fn rref(mut m: QMat, ncols: usize) -> (QMat, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..ncols {
                    let delta = &f * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(m: &[Vec<Rational>], ncols: usize) -> usize {
    rref(m.to_vec(), ncols).1.len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &[Vec<Rational>], ncols: usize) -> QMat {
    let (r, pivots) = rref(m.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[i][f].clone();
            }
            v
        })
        .collect()
}

/// A solution of `m x = rhs` with all free variables set to zero.
pub fn solve(m: &[Vec<Rational>], rhs: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let aug: QMat = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[i][ncols].clone();
    }
    Some(x)
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_q(m: &[Vec<i64>]) -> QMat {
    m.iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    (0..ncols)
        .map(|c| m.iter().map(|r| r[c].clone()).collect())
        .collect()
}

/// Scales a rational vector to the primitive integer vector pointing the
/// same way. Returns `None` for the zero vector.
pub fn primitive_integer(v: &[Rational]) -> Option<Vec<i64>> {
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let l = v
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    Some(
        ints.iter()
            .map(|x| (x / &g).to_i64().expect("lattice entry overflows i64"))
            .collect(),
    )
}

/// Integer column-style Hermite reduction: returns `(h, u, r)` with
/// `a · u = h`, `u` unimodular, and the first `r` columns of `h` carrying the
/// pivots. The last `n - r` columns of `u` form a lattice basis of the
/// integer kernel of `a`.
pub fn column_hermite(a: &[Vec<i64>], n: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>, usize) {
    let mut h: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let col_op =
        |m: &mut Vec<Vec<i128>>, j: usize, k: usize, a: i128, b: i128, c: i128, d: i128| {
            // (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
            for row in m.iter_mut() {
                let (x, y) = (row[j], row[k]);
                row[j] = a * x + b * y;
                row[k] = c * x + d * y;
            }
        };
    let mut piv = 0;
    for i in 0..h.len() {
        if piv == n {
            break;
        }
        for k in piv + 1..n {
            if h[i][k] == 0 {
                continue;
            }
            let (x, y) = (h[i][piv], h[i][k]);
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            // new piv col = s*x_col + t*y_col (entry g), new k col = -(y/g) x_col + (x/g) y_col (entry 0)
            let (a1, b1, c1, d1) = (s, t, -(y / g), x / g);
            col_op(&mut h, piv, k, a1, b1, c1, d1);
            col_op(&mut u, piv, k, a1, b1, c1, d1);
        }
        if h[i][piv] != 0 {
            if h[i][piv] < 0 {
                col_op(&mut h, piv, piv, -1, 0, -1, 0);
                col_op(&mut u, piv, piv, -1, 0, -1, 0);
            }
            piv += 1;
        }
    }
    let back = |m: Vec<Vec<i128>>| -> Vec<Vec<i64>> {
        m.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| i64::try_from(x).expect("hermite overflow"))
                    .collect()
            })
            .collect()
    };
    (back(h), back(u), piv)
}

/// Lattice basis of `{x ∈ Z^n : a x = 0}`.
pub fn integer_kernel(a: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if a.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
    }
    let (_, u, r) = column_hermite(a, n);
    (r..n)
        .map(|c| u.iter().map(|row| row[c]).collect())
        .collect()
}

/// Canonical row Hermite normal form of the lattice spanned by `rows`:
/// echelon, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are dropped.
pub fn row_hnf(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    // Row HNF of R is the transpose of the column reduction of R^T.
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut out_row = 0;
    for col in 0..n {
        if out_row == m.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (out_row..m.len()).filter(|&r| m[r][col] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&r| m[r][col].abs()).unwrap();
            m.swap(out_row, best);
            let mut done = true;
            for r in out_row + 1..m.len() {
                if m[r][col] != 0 {
                    let q = Integer::div_floor(&m[r][col], &m[out_row][col]);
                    for c in 0..n {
                        let d = q * m[out_row][c];
                        m[r][c] -= d;
                    }
                    if m[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[out_row][col] == 0 {
            continue;
        }
        if m[out_row][col] < 0 {
            for c in 0..n {
                m[out_row][c] = -m[out_row][c];
            }
        }
        let p = m[out_row][col];
        for r in 0..out_row {
            let q = Integer::div_floor(&m[r][col], &p);
            if q != 0 {
                for c in 0..n {
                    let d = q * m[out_row][c];
                    m[r][c] -= d;
                }
            }
        }
        out_row += 1;
    }
    m.truncate(out_row);
    m.into_iter()
        .map(|r| r.into_iter().map(|x| x as i64).collect())
        .collect()
}

/// Determinant of a square rational matrix.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        d *= &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let delta = &f * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    d
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn abs_max(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

#[allow(dead_code)]
pub(crate) fn is_nonneg(q: &Rational) -> bool {
    !q.is_negative()
}
