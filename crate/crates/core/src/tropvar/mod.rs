//! Tropical hypersurfaces in the torus.

mod lift;

pub use lift::{
    lift_point, lift_point_with, newton_puiseux_root, rational_roots, sample_curve_point,
    LiftedPoint, UniPoly,
};

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::laurent::LaurentPoly;
use crate::polyhedra::{dual_generators, GRatPolyComplex, Halfspace, LatticeVec, Polyhedron};
use crate::valfield::{int, Rational, ValMode};

/// The corner locus of `Ψ_f` as a polyhedral complex.
#[derive(Clone, Debug)]
pub struct TropHypersurface {
    pub complex: GRatPolyComplex,
    pub source: LaurentPoly,
    /// Non-fatal remarks, such as a monomial factor that was kept.
    pub diagnostics: Vec<String>,
}

impl TropHypersurface {
    pub fn contains_point(&self, w: &[Rational]) -> bool {
        self.complex.contains_point(w)
    }
}

/// All intersections of the given sets (plus the full set).
pub(crate) fn intersection_closure(
    full: &BTreeSet<usize>,
    sets: Vec<BTreeSet<usize>>,
) -> Vec<BTreeSet<usize>> {
    let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    out.insert(full.clone());
    let mut frontier: Vec<BTreeSet<usize>> = Vec::new();
    for s in &sets {
        if out.insert(s.clone()) {
            frontier.push(s.clone());
        }
    }
    while let Some(s) = frontier.pop() {
        for f in &sets {
            let i: BTreeSet<usize> = s.intersection(f).copied().collect();
            if out.insert(i.clone()) {
                frontier.push(i);
            }
        }
    }
    out.into_iter().collect()
}

/// Corner locus of `f` computed from the lower hull of the lifted
/// exponents `(u_i, ν(a_i))` and cone duality.
pub fn trop_hypersurface(f: &LaurentPoly) -> Result<TropHypersurface> {
    if f.is_zero() {
        return domain("tropicalization of the zero polynomial");
    }
    let n = f.rank();
    let mut diagnostics = Vec::new();
    if let Some(m) = f.monomial_factor() {
        diagnostics.push(format!("monomial factor x^{m} kept"));
    }
    if f.num_terms() < 2 {
        return Ok(TropHypersurface {
            complex: GRatPolyComplex::empty(n),
            source: f.clone(),
            diagnostics,
        });
    }
    let pts: Vec<(LatticeVec, Rational)> = f
        .terms()
        .map(|(u, c)| {
            (
                u.clone(),
                c.valuation()
                    .as_finite()
                    .cloned()
                    .expect("nonzero coefficient"),
            )
        })
        .collect();
    // homogenized lifted points (u, ν, 1) and the upward direction (0, 1, 0)
    let mut gens: Vec<Vec<Rational>> = pts
        .iter()
        .map(|(u, v)| {
            let mut g = u.to_rational();
            g.push(v.clone());
            g.push(Rational::one());
            g
        })
        .collect();
    let mut up = vec![Rational::zero(); n + 2];
    up[n] = Rational::one();
    gens.push(up);
    let dual = dual_generators(n + 2, &gens);
    let pairing =
        |r: &[i64], g: &[Rational]| -> Rational { r.iter().zip(g).map(|(a, b)| b * int(*a)).sum() };
    let tight_sets: Vec<BTreeSet<usize>> = dual
        .rays
        .iter()
        .map(|r| {
            (0..gens.len())
                .filter(|&i| pairing(r, &gens[i]).is_zero())
                .collect()
        })
        .collect();
    let full: BTreeSet<usize> = (0..gens.len()).collect();
    let upward = gens.len() - 1;
    let mut cells = Vec::new();
    for s in intersection_closure(&full, tight_sets.clone()) {
        if s.contains(&upward) || s.len() < 2 {
            continue;
        }
        let rays: Vec<&Vec<i64>> = dual
            .rays
            .iter()
            .zip(&tight_sets)
            .filter(|(_, t)| s.is_subset(t))
            .map(|(r, _)| r)
            .collect();
        let mut vertices = Vec::new();
        let mut dirs = Vec::new();
        for r in &rays {
            let b = r[n];
            if b > 0 {
                vertices.push(r[..n].iter().map(|&a| int(a) / int(b)).collect::<Vec<_>>());
            } else {
                dirs.push(LatticeVec(r[..n].to_vec()));
            }
        }
        for l in &dual.lineality {
            let v = LatticeVec(l[..n].to_vec());
            if !v.is_zero() {
                dirs.push(-&v);
                dirs.push(v);
            }
        }
        if vertices.is_empty() {
            continue;
        }
        cells.push(Polyhedron::new(n, vertices, dirs));
    }
    Ok(TropHypersurface {
        complex: GRatPolyComplex::new(n, cells),
        source: f.clone(),
        diagnostics,
    })
}

/// The same corner locus assembled from pairs of tying terms. Slower and
/// not a complex in general (cells may overlap), kept as a cross-check.
pub fn corner_locus_by_pairs(f: &LaurentPoly) -> GRatPolyComplex {
    let n = f.rank();
    let pts: Vec<(LatticeVec, Rational)> = f
        .terms()
        .map(|(u, c)| (u.clone(), c.valuation().as_finite().cloned().unwrap()))
        .collect();
    let mut cells = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let eq = Halfspace {
                a: (&pts[i].0 - &pts[j].0).0,
                b: &pts[i].1 - &pts[j].1,
            };
            let ineqs: Vec<Halfspace> = (0..pts.len())
                .filter(|&k| k != i && k != j)
                .map(|k| Halfspace {
                    a: (&pts[k].0 - &pts[i].0).0,
                    b: &pts[k].1 - &pts[i].1,
                })
                .collect();
            if let Some(p) = Polyhedron::from_hrep(n, &ineqs, &[eq]) {
                cells.push(p);
            }
        }
    }
    GRatPolyComplex::new(n, cells)
}

/// Membership via the initial form: `init_v(f)` is not a monomial.
pub fn contains(f: &LaurentPoly, v: &[Rational]) -> bool {
    f.num_terms() >= 2 && v.len() == f.rank() && f.min_terms(v).len() >= 2
}

/// Tropicalization with respect to the trivial valuation.
pub fn trivial_trop(f: &LaurentPoly) -> Result<TropHypersurface> {
    if !f.has_constant_coefficients() {
        return domain("trivial tropicalization needs constant coefficients");
    }
    trop_hypersurface(&f.with_mode(ValMode::Trivial)?)
}

/// For a hypersurface the degeneration `X_v` is nonempty exactly when the
/// initial form is not a monomial.
pub fn degeneration_nonempty(f: &LaurentPoly, v: &[Rational]) -> bool {
    contains(f, v)
}

/// All points of `step·Z^n` in the box with the given per-axis bounds.
pub fn grid_points(step: &Rational, bounds: &[(Rational, Rational)]) -> Result<Vec<Vec<Rational>>> {
    if *step <= Rational::zero() || bounds.iter().any(|(lo, hi)| lo > hi) {
        return domain("grid needs a positive step and a nonempty box");
    }
    let mut pts: Vec<Vec<Rational>> = vec![Vec::new()];
    for (lo, hi) in bounds {
        let first = (lo / step).ceil().to_integer();
        let last = (hi / step).floor().to_integer();
        let axis: Vec<Rational> = num_iter_range(first, last)
            .map(|k| Rational::from_integer(k) * step)
            .collect();
        pts = pts
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    Ok(pts)
}

fn num_iter_range(
    a: num_bigint::BigInt,
    b: num_bigint::BigInt,
) -> impl Iterator<Item = num_bigint::BigInt> {
    let mut k = a;
    std::iter::from_fn(move || {
        if k > b {
            return None;
        }
        let out = k.clone();
        k += 1;
        Some(out)
    })
}

/// Grid comparison of a computed complex with the corner-locus definition.
#[derive(Clone, Debug, Default)]
pub struct GridReport {
    pub points: usize,
    pub members: usize,
    /// Points where the complex and the direct minimum count disagree.
    pub discrepancies: Vec<Vec<Rational>>,
}

/// Checks `w ∈ trop(f)` against "the minimum of `ν(a_u) + ⟨u, w⟩` is attained
/// at least twice" at every grid point, evaluating the minimum directly.
pub fn grid_check(
    f: &LaurentPoly,
    c: &GRatPolyComplex,
    step: &Rational,
    bounds: &[(Rational, Rational)],
) -> Result<GridReport> {
    if bounds.len() != f.rank() {
        return domain(format!(
            "box has {} axes, polynomial has rank {}",
            bounds.len(),
            f.rank()
        ));
    }
    let mut r = GridReport::default();
    let vals: Vec<(Vec<Rational>, Rational)> = f
        .terms()
        .map(|(u, a)| {
            let v = a
                .valuation()
                .as_finite()
                .cloned()
                .unwrap_or_else(Rational::zero);
            (u.to_rational(), v)
        })
        .collect();
    for w in grid_points(step, bounds)? {
        r.points += 1;
        let ws: Vec<Rational> = vals
            .iter()
            .map(|(u, v)| v + crate::linalg::dot(u, &w))
            .collect();
        let twice = ws
            .iter()
            .min()
            .is_some_and(|m| ws.iter().filter(|x| *x == m).count() >= 2);
        let inside = c.contains_point(&w);
        if inside {
            r.members += 1;
        }
        if inside != twice {
            r.discrepancies.push(w);
        }
    }
    Ok(r)
}

/// Intersection of hypersurface tropicalizations for a list of polynomials
/// the caller asserts to be a tropical basis.
pub fn trop_assumed_basis(basis: &[LaurentPoly]) -> Result<GRatPolyComplex> {
    let Some(first) = basis.first() else {
        return domain("empty basis");
    };
    let n = first.rank();
    let mut cells: Vec<Polyhedron> = trop_hypersurface(first)?.complex.cells().to_vec();
    for f in &basis[1..] {
        let other = trop_hypersurface(f)?;
        let mut next = Vec::new();
        for c in &cells {
            for d in other.complex.cells() {
                if let Some(p) = c.intersection(d) {
                    next.push(p);
                }
            }
        }
        cells = next;
    }
    Ok(GRatPolyComplex::new(n, cells))
}
