//! Invariance of hypersurface tropicalizations under extension of the valued
//! field, initial forms along split surjections of tori, and certified
//! generic projections of polyhedral complexes.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{self, column_hermite, to_q};
use crate::polyhedra::{GRatPolyComplex, Polyhedron};
use crate::tropvar::{trivial_trop, trop_hypersurface};
use crate::valfield::{Rational, ValMode};

/// A split surjection `N -> N'` given by a full-row-rank integer matrix,
/// together with an integer right inverse certifying the splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSurjection {
    matrix: Vec<Vec<i64>>,
    source: usize,
    right_inverse: Vec<Vec<i64>>,
}

impl LatticeSurjection {
    /// Fails unless the matrix is a split surjection onto `Z^rows`.
    pub fn new(matrix: Vec<Vec<i64>>, source: usize) -> Result<LatticeSurjection> {
        let m = matrix.len();
        if matrix.iter().any(|r| r.len() != source) {
            return domain("matrix rows must all have the source rank");
        }
        let (h, u, r) = column_hermite(&matrix, source);
        if r != m || (0..m).any(|i| h[i][i] != 1) {
            return domain("matrix is not a split surjection of lattices");
        }
        // A U = [L | 0] with L unitriangular, so U[:, ..m] L^{-1} splits A.
        let lower: Vec<Vec<Rational>> = h
            .iter()
            .map(|row| {
                row[..m]
                    .iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        let mut right_inverse = vec![vec![0i64; m]; source];
        for j in 0..m {
            let mut e = vec![Rational::from_integer(0.into()); m];
            e[j] = Rational::from_integer(1.into());
            let y = linalg::solve(&lower, &e, m).expect("unitriangular system");
            for (i, row) in u.iter().enumerate() {
                let v: Rational = row[..m]
                    .iter()
                    .zip(&y)
                    .map(|(a, b)| Rational::from_integer((*a).into()) * b)
                    .sum();
                right_inverse[i][j] = i64::try_from(v.to_integer())
                    .map_err(|_| Error::Domain("splitting overflows".into()))?;
            }
        }
        Ok(LatticeSurjection {
            matrix,
            source,
            right_inverse,
        })
    }

    pub fn identity(n: usize) -> LatticeSurjection {
        let m = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        LatticeSurjection::new(m, n).expect("identity splits")
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn right_inverse(&self) -> &[Vec<i64>] {
        &self.right_inverse
    }

    pub fn source_rank(&self) -> usize {
        self.source
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.len()
    }

    /// The map on `N_R`.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&to_q(&self.matrix), v)
    }

    /// Transpose, acting on characters `M' -> M`.
    pub fn dual(&self) -> Vec<Vec<i64>> {
        linalg::transpose(&self.matrix, self.source)
    }

    /// `φ^* f` for a Laurent polynomial on the target torus.
    pub fn pullback(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        if f.rank() != self.target_rank() {
            return domain(format!(
                "polynomial has rank {}, expected {}",
                f.rank(),
                self.target_rank()
            ));
        }
        Ok(f.map_exponents(&self.dual(), self.source))
    }

    pub fn image(&self, c: &GRatPolyComplex) -> GRatPolyComplex {
        c.map_linear(&to_q(&self.matrix))
    }
}

impl fmt::Display for LatticeSurjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// For a constant-coefficient `f`, compares the tropicalization over the
/// trivially valued field with the one over Puiseux series.
pub fn base_change_check(f: &LaurentPoly) -> Result<bool> {
    let trivial = trivial_trop(f)?;
    let puiseux = trop_hypersurface(&f.with_mode(ValMode::Puiseux)?)?;
    Ok(trivial.complex.support_eq(&puiseux.complex))
}

/// `init_v(φ^* f) = φ^* init_{φ(v)}(f)`.
pub fn pushforward_initial_check(
    phi: &LatticeSurjection,
    f: &LaurentPoly,
    v: &[Rational],
) -> Result<bool> {
    if v.len() != phi.source_rank() {
        return domain(format!(
            "weight has rank {}, expected {}",
            v.len(),
            phi.source_rank()
        ));
    }
    let lhs = phi.pullback(f)?.initial_form(v)?;
    let rhs = f
        .initial_form(&phi.apply(v))?
        .map_exponents(&phi.dual(), phi.source_rank());
    Ok(lhs == rhs)
}

fn check_pure(c: &GRatPolyComplex) -> Result<usize> {
    let Some(d) = c.dim() else {
        return domain("empty complex");
    };
    if !c.is_pure() {
        return domain("complex is not pure");
    }
    Ok(d)
}

/// Exact check of the two genericity conditions: every maximal cell keeps
/// its dimension, and images of distinct maximal cells meet in dimension
/// below it.
pub fn certify_projection(c: &GRatPolyComplex, phi: &LatticeSurjection) -> Result<bool> {
    let d = check_pure(c)?;
    if phi.target_rank() != d + 1 || phi.source_rank() != c.rank() {
        return domain("projection has the wrong shape");
    }
    let a = to_q(phi.matrix());
    let images: Vec<Polyhedron> = c
        .maximal_cells()
        .into_iter()
        .map(|p| p.map_linear(&a))
        .collect();
    if images.iter().any(|p| p.dim() != d) {
        return Ok(false);
    }
    for (i, p) in images.iter().enumerate() {
        for q in &images[i + 1..] {
            if let Some(x) = p.intersection(q) {
                if x.dim() >= d {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

const MAX_BOUND: i64 = 50;
const TRIES_PER_BOUND: usize = 32;

/// Deterministic seeded search for a certified projection to rank `d + 1`,
/// with entry bounds escalating up to 50.
pub fn generic_projection(c: &GRatPolyComplex, seed: u64) -> Result<LatticeSurjection> {
    let d = check_pure(c)?;
    let n = c.rank();
    let m = d + 1;
    if m > n {
        return domain(format!(
            "cannot project a {d}-dimensional complex in rank {n} to rank {m}"
        ));
    }
    // coordinate projection first
    let coord: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let phi = LatticeSurjection::new(coord, n)?;
    if certify_projection(c, &phi)? {
        return Ok(phi);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for bound in 1..=MAX_BOUND {
        for _ in 0..TRIES_PER_BOUND {
            let a: Vec<Vec<i64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
                .collect();
            let Ok(phi) = LatticeSurjection::new(a, n) else {
                continue;
            };
            if certify_projection(c, &phi)? {
                return Ok(phi);
            }
        }
    }
    Err(Error::NotFound(format!(
        "no certified projection with entries up to {MAX_BOUND}"
    )))
}

/// `φ(trop(X)) ⊆ trop(V(g))` for a hypersurface `V(g)` of the target torus.
pub fn image_contained(
    phi: &LatticeSurjection,
    c: &GRatPolyComplex,
    g: &LaurentPoly,
) -> Result<bool> {
    let target = trop_hypersurface(g)?;
    Ok(phi.image(c).support_subset_of(&target.complex))
}
