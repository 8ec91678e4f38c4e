//! Sampling checks that `π(X^an)` is exactly the extended tropicalization.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::closure::extended_trop;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::polyhedra::{Fan, LatticeVec, Polyhedron};
use crate::tropvar::{lift_point, rational_roots, trivial_trop, trop_hypersurface};
use crate::valfield::{int, rat, PuiseuxScalar, Rational, ValMode};

use super::diagram::{pi, Embedding};
use super::{Ambient, Presentation, SeminormPoint};

/// Outcome of an image check; failures are listed, never dropped.
#[derive(Clone, Debug, Default)]
pub struct ImageReport {
    /// Seminorm points sampled and how many landed in the support.
    pub sampled: usize,
    pub in_support: usize,
    /// Support points sampled and how many were hit.
    pub targets: usize,
    pub hit: usize,
    pub failures: Vec<String>,
}

impl ImageReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.in_support == self.sampled && self.hit == self.targets
    }
}

/// A random scalar with one or two terms.
pub(crate) fn random_scalar(rng: &mut impl Rng, mode: ValMode) -> PuiseuxScalar {
    let mut coeff = || {
        let mut n = rng.gen_range(-5i64..=5);
        if n == 0 {
            n = 1;
        }
        rat(n, rng.gen_range(1i64..=3))
    };
    let (c1, c2) = (coeff(), coeff());
    if mode == ValMode::Trivial {
        return PuiseuxScalar::trivial(c1);
    }
    let e1 = rat(rng.gen_range(-4i64..=4), 2);
    let mut s = PuiseuxScalar::monomial(c1, e1.clone());
    if rng.gen_bool(0.5) {
        s = &s + &PuiseuxScalar::monomial(c2, e1 + rat(rng.gen_range(1i64..=3), 2));
    }
    s
}

/// A random G-rational point of a cell.
pub(crate) fn random_cell_point(rng: &mut impl Rng, cell: &Polyhedron) -> Vec<Rational> {
    let n = cell.rank();
    let weights: Vec<Rational> = cell
        .vertices()
        .iter()
        .map(|_| int(rng.gen_range(1i64..=4)))
        .collect();
    let total: Rational = weights.iter().sum();
    let mut p = vec![int(0); n];
    for (w, v) in weights.iter().zip(cell.vertices()) {
        for (x, y) in p.iter_mut().zip(v) {
            *x += w * y / &total;
        }
    }
    for r in cell.rays() {
        let mu = rat(rng.gen_range(0i64..=8), 2);
        for (x, y) in p.iter_mut().zip(r.entries()) {
            *x += &mu * int(*y);
        }
    }
    p
}

/// Checks both inclusions for a plane curve `V(f)` under the identity
/// embedding into `A^2`: sampled seminorm points map into the extended
/// tropicalization, and sampled points of the tropicalization are hit by
/// lifted K-points (or, for the trivial valuation, every ray is hit by a
/// Gauss point).
pub fn image_check(
    p: &Arc<Presentation>,
    samples: usize,
    seed: u64,
    prec: &Rational,
) -> Result<ImageReport> {
    let mut report = ImageReport::default();
    if p.ambient() != Ambient::Affine || p.rank() != 2 || p.relations().len() != 1 {
        return Err(Error::Presentation(
            "image check needs a plane curve V(f)".into(),
        ));
    }
    let f = &p.relations()[0];
    let torus_trop = trop_hypersurface(f)?;
    if torus_trop.complex.is_empty() {
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fan = Arc::new(Fan::affine_space(2));
    let st = extended_trop(f, fan)?;
    let id = Embedding::affine("coordinates", p.coordinates(0))?;
    let k = p.param_rank();
    // (a) seminorm points into the support
    for i in 0..samples {
        let x = if i % 2 == 0 {
            let s: Vec<PuiseuxScalar> = (0..k).map(|_| random_scalar(&mut rng, p.mode())).collect();
            SeminormPoint::from_parameter(p.clone(), &s)
        } else {
            let v: Vec<Rational> = (0..k).map(|_| rat(rng.gen_range(-8i64..=8), 2)).collect();
            SeminormPoint::monomial(p.clone(), v)
        };
        let x = match x {
            Ok(x) => x,
            Err(Error::Presentation(_)) | Err(Error::UnsupportedInverse(_)) => continue,
            Err(e) => return Err(e),
        };
        report.sampled += 1;
        let img = pi(&id, &x)?;
        if st.contains(&img) {
            report.in_support += 1;
        } else {
            report
                .failures
                .push(format!("{x} maps to {img}, outside the tropicalization"));
        }
    }
    // (b) the support is hit
    if p.mode() == ValMode::Trivial {
        trivial_rays_hit(p, f, &id, &mut report)?;
    } else {
        let cells: Vec<&Polyhedron> = torus_trop.complex.cells().iter().collect();
        for _ in 0..samples {
            let cell = cells[rng.gen_range(0..cells.len())];
            let v = random_cell_point(&mut rng, cell);
            report.targets += 1;
            match lift_point(f, &v, prec) {
                Ok(y) => {
                    if y.trop_finite() == v {
                        report.hit += 1;
                    } else {
                        report
                            .failures
                            .push(format!("lift at {v:?} has the wrong valuations"));
                    }
                }
                Err(e) => report
                    .failures
                    .push(format!("lifting failed at {v:?}: {e}")),
            }
        }
    }
    Ok(report)
}

fn trivial_rays_hit(
    p: &Arc<Presentation>,
    f: &LaurentPoly,
    id: &Embedding,
    report: &mut ImageReport,
) -> Result<()> {
    let t = trivial_trop(f)?;
    let mut rays: Vec<LatticeVec> = t
        .complex
        .cells()
        .iter()
        .flat_map(|c| c.rays().to_vec())
        .collect();
    rays.sort();
    rays.dedup();
    if p.param_rank() != 1 {
        return Err(Error::Presentation(
            "ray search needs a curve parametrization".into(),
        ));
    }
    // centres: zeros of the coordinate functions in the parameter
    let mut centres = vec![int(0)];
    for q in p.param() {
        let lo = q.terms().map(|(u, _)| u.entries()[0]).min().unwrap_or(0);
        let hi = q.terms().map(|(u, _)| u.entries()[0]).max().unwrap_or(0);
        let mut coeffs = vec![int(0); (hi - lo + 1) as usize];
        for (u, c) in q.terms() {
            coeffs[(u.entries()[0] - lo) as usize] = c.coefficient(&int(0));
        }
        for c in rational_roots(&coeffs) {
            if !centres.contains(&c) {
                centres.push(c);
            }
        }
    }
    for r in rays {
        report.targets += 1;
        let mut found = false;
        'search: for c in &centres {
            for v in [1i64, -1, 2, -2] {
                let x = SeminormPoint::gauss(
                    p.clone(),
                    vec![PuiseuxScalar::constant(c.clone())],
                    vec![int(v)],
                )?;
                let img = pi(id, &x)?;
                if !img.is_torus_point() {
                    continue;
                }
                let w = img.coords();
                // a positive multiple of the ray
                let lambda = r
                    .entries()
                    .iter()
                    .zip(w)
                    .find(|(a, _)| **a != 0)
                    .map(|(a, b)| b / int(*a));
                if let Some(l) = lambda {
                    if l > int(0) && r.entries().iter().zip(w).all(|(a, b)| &l * int(*a) == *b) {
                        found = true;
                        break 'search;
                    }
                }
            }
        }
        if found {
            report.hit += 1;
        } else {
            report
                .failures
                .push(format!("no Gauss point hits the ray {r}"));
        }
    }
    Ok(())
}
