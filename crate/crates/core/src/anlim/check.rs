//! Sampled checks of the inverse-limit mechanics on a finite diagram.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::valfield::{rat, PuiseuxScalar, Rational};

use super::diagram::{
    pi, reconstruct, search_set, separate, translates_for, CoherentTuple, EmbeddingDiagram,
};
use super::image::random_scalar;
use super::{seminorm_value, Presentation, SeminormPoint};

/// Alternating K-points `param(s)` and Gauss points around random centres
/// (around the origin when the parametrization has poles). Parameters where
/// the parametrization is undefined are skipped.
pub fn sample_points(p: &Arc<Presentation>, n: usize, seed: u64) -> Vec<SeminormPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = p.param_rank();
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0;
    while out.len() < n && attempts < 20 * n + 20 {
        attempts += 1;
        let x = if out.len() % 2 == 0 {
            let s: Vec<PuiseuxScalar> = (0..k).map(|_| random_scalar(&mut rng, p.mode())).collect();
            SeminormPoint::from_parameter(p.clone(), &s)
        } else {
            let c: Vec<PuiseuxScalar> = (0..k).map(|_| random_scalar(&mut rng, p.mode())).collect();
            let v: Vec<Rational> = (0..k).map(|_| rat(rng.gen_range(-6i64..=6), 2)).collect();
            // Laurent parametrizations only admit discs around the origin
            SeminormPoint::gauss(p.clone(), c, v.clone())
                .or_else(|_| SeminormPoint::monomial(p.clone(), v))
        };
        if let Ok(x) = x {
            out.push(x);
        }
    }
    out
}

#[derive(Clone, Debug, Default)]
pub struct LimitReport {
    pub points: usize,
    pub coherent: usize,
    pub pairs: usize,
    pub separated: usize,
    pub values: usize,
    pub reconstructed: usize,
    pub failures: Vec<String>,
}

impl LimitReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.coherent == self.points
            && self.separated == self.pairs
            && self.reconstructed == self.values
    }
}

/// Coherence of every sampled point, separation of every distinct pair by
/// a search set of the given degree, and exact reconstruction of the first
/// generator of every node from the coherent tuple.
pub fn limit_check(
    d: &EmbeddingDiagram,
    points: &[SeminormPoint],
    degree: usize,
) -> Result<LimitReport> {
    let mut r = LimitReport {
        points: points.len(),
        ..Default::default()
    };
    let p = d.presentation();
    for x in points {
        let t = CoherentTuple::from_point(d, x)?;
        if t.is_coherent(d) {
            r.coherent += 1;
        } else {
            r.failures.push(format!("incoherent at {x}"));
        }
        for node in d.nodes() {
            let f = node.first_generator();
            let direct = match seminorm_value(x, f) {
                Ok(v) => v,
                Err(_) => continue,
            };
            match reconstruct(d, &t, f) {
                Ok(v) => {
                    r.values += 1;
                    if v == direct {
                        r.reconstructed += 1;
                    } else {
                        r.failures
                            .push(format!("{f} at {x}: reconstructed {v}, expected {direct}"));
                    }
                }
                Err(Error::DiagramTooSmall(_)) => {}
                Err(e) => {
                    r.values += 1;
                    r.failures.push(format!("{f} at {x}: {e}"));
                }
            }
        }
    }
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            if a.same_seminorm(b) {
                continue;
            }
            r.pairs += 1;
            let search = search_set(p, degree, &translates_for(&[a, b]));
            match separate(a, b, &search) {
                Ok(e) => {
                    let ok = match (pi(&e, a), pi(&e, b)) {
                        (Ok(u), Ok(v)) => !u.glue_equal(&v),
                        (Err(_), Err(_)) => false,
                        _ => true,
                    };
                    if ok {
                        r.separated += 1;
                    } else {
                        r.failures
                            .push(format!("{} does not separate {a} and {b}", e.name));
                    }
                }
                Err(e) => r.failures.push(format!("{a} and {b}: {e}")),
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anlim::Ambient;
    use crate::text::parse_poly;

    #[test]
    fn line_main_diagram() {
        let p = Arc::new(
            Presentation::new(
                Ambient::Affine,
                vec![parse_poly("x + y + 1", Some(2)).unwrap()],
                vec![
                    parse_poly("x", Some(1)).unwrap(),
                    parse_poly("-1 - x", Some(1)).unwrap(),
                ],
            )
            .unwrap(),
        );
        let f = parse_poly("x^2 + y", Some(2)).unwrap();
        let g = parse_poly("x*y", Some(2)).unwrap();
        let d = EmbeddingDiagram::main_proof(p.clone(), &f, &g).unwrap();
        let pts = sample_points(&p, 12, 5);
        assert_eq!(pts.len(), 12);
        let r = limit_check(&d, &pts, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.pairs > 0 && r.values >= 12 * 5);
    }
}
