//! The tropical moment map of a polarized projective toric variety.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyhedra::{Fan, LatticeVec};
use crate::valfield::{rational_to_f64, ExtRational, Rational};

use super::point::ExtendedPoint;

/// A fan with one character `u_σ` per maximal cone, certified ample:
/// `⟨u_σ' − u_σ, r⟩ ≥ 0` for every ray `r` of `σ` and every `σ'`.
#[derive(Clone, Debug)]
pub struct PolarizedFanData {
    fan: Arc<Fan>,
    chars: Vec<LatticeVec>,
}

impl PolarizedFanData {
    /// `chars` is aligned with `fan.maximal_cones()`.
    pub fn new(fan: Arc<Fan>, chars: Vec<LatticeVec>) -> Result<PolarizedFanData> {
        let maximal = fan.maximal_cones();
        if chars.len() != maximal.len() {
            return Err(Error::Domain(format!(
                "{} characters for {} maximal cones",
                chars.len(),
                maximal.len()
            )));
        }
        for (s, us) in maximal.iter().zip(&chars) {
            if us.rank() != fan.rank() {
                return Err(Error::Domain(format!("character {us} has the wrong rank")));
            }
            for ut in &chars {
                let d = ut - us;
                if let Some(&r) = s.iter().find(|&&r| d.dot(&fan.rays()[r]) < 0) {
                    return Err(Error::Domain(format!(
                        "not ample: {ut} - {us} is negative on ray {}",
                        fan.rays()[r]
                    )));
                }
            }
        }
        Ok(PolarizedFanData { fan, chars })
    }

    /// `P^n` with the standard simplex.
    pub fn projective_space(n: usize) -> PolarizedFanData {
        let fan = Arc::new(Fan::projective_space(n));
        // the chart omitting ray i has vertex e_i, the one omitting the last ray the origin
        let chars = fan
            .maximal_cones()
            .iter()
            .map(|c| {
                let skip = (0..=n).find(|i| !c.contains(i)).unwrap();
                if skip == n {
                    LatticeVec::zero(n)
                } else {
                    LatticeVec::unit(n, skip)
                }
            })
            .collect();
        PolarizedFanData::new(fan, chars).expect("simplex is ample")
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn chars(&self) -> &[LatticeVec] {
        &self.chars
    }

    /// Vertices `u_σ` for maximal cones `σ ⊇ τ`; they span the face of the
    /// polytope dual to `τ`.
    pub fn face_vertices(&self, tau: &[usize]) -> Vec<LatticeVec> {
        self.fan
            .maximal_cones()
            .iter()
            .zip(&self.chars)
            .filter(|(c, _)| tau.iter().all(|i| c.contains(i)))
            .map(|(_, u)| u.clone())
            .collect()
    }
}

/// `Σ_σ e^{−φ_p(u_σ − u_σ0)} u_σ / Σ_σ e^{−φ_p(u_σ − u_σ0)}` with `σ0` a
/// maximal cone containing the stratum of `p`.
pub fn moment_map(p: &ExtendedPoint, pol: &PolarizedFanData) -> Result<Vec<f64>> {
    if **p.fan() != *pol.fan {
        return Err(Error::Domain(
            "point and polarization live on different fans".into(),
        ));
    }
    let maximal = pol.fan.maximal_cones();
    let Some(i0) = maximal
        .iter()
        .position(|c| p.stratum().iter().all(|i| c.contains(i)))
    else {
        return Err(Error::Domain(format!(
            "stratum {:?} is in no chart",
            p.stratum()
        )));
    };
    let u0 = &pol.chars[i0];
    let exps: Vec<ExtRational> = pol
        .chars
        .iter()
        .map(|u| p.value_on(&(u - u0)))
        .collect::<Result<_>>()?;
    // shift so the smallest exponent is zero
    let lo: Rational = exps
        .iter()
        .filter_map(|e| e.as_finite().cloned())
        .min()
        .unwrap_or_else(Rational::zero);
    let weights: Vec<f64> = exps
        .iter()
        .map(|e| match e {
            ExtRational::Finite(x) => (-rational_to_f64(&(x - &lo))).exp(),
            ExtRational::Infinity => 0.0,
        })
        .collect();
    let total: f64 = weights.iter().sum();
    let n = pol.fan.rank();
    Ok((0..n)
        .map(|k| {
            weights
                .iter()
                .zip(&pol.chars)
                .map(|(w, u)| w * u[k] as f64)
                .sum::<f64>()
                / total
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valfield::int;

    fn p1() -> PolarizedFanData {
        PolarizedFanData::projective_space(1)
    }

    #[test]
    fn projective_line() {
        let pol = p1();
        let fan = pol.fan().clone();
        let o = ExtendedPoint::torus(fan.clone(), &[0], vec![int(0)]).unwrap();
        assert!((moment_map(&o, &pol).unwrap()[0] - 0.5).abs() < 1e-9);
        let end = ExtendedPoint::new(fan.clone(), &[0], &[0], vec![]).unwrap();
        assert!(moment_map(&end, &pol).unwrap()[0].abs() < 1e-9);
        let other = ExtendedPoint::new(fan.clone(), &[1], &[1], vec![]).unwrap();
        assert!((moment_map(&other, &pol).unwrap()[0] - 1.0).abs() < 1e-9);
        let v = ExtendedPoint::torus(fan, &[1], vec![int(2)]).unwrap();
        let m = moment_map(&v, &pol).unwrap()[0];
        let e = (-2f64).exp();
        assert!((m - e / (1.0 + e)).abs() < 1e-9);
    }

    #[test]
    fn large_values_are_stable() {
        let pol = p1();
        let v = ExtendedPoint::torus(pol.fan().clone(), &[0], vec![int(-100000)]).unwrap();
        let m = moment_map(&v, &pol).unwrap()[0];
        assert!((m - 1.0).abs() < 1e-9);
    }

    #[test]
    fn plane_simplex() {
        let pol = PolarizedFanData::projective_space(2);
        let o = ExtendedPoint::torus(pol.fan().clone(), &[0, 1], vec![int(0), int(0)]).unwrap();
        let m = moment_map(&o, &pol).unwrap();
        assert!((m[0] - 1.0 / 3.0).abs() < 1e-9 && (m[1] - 1.0 / 3.0).abs() < 1e-9);
        // ray e1 stratum: x = 0, image on the edge from (0,0) to (0,1)
        let b = ExtendedPoint::new(pol.fan().clone(), &[0, 1], &[0], vec![int(1)]).unwrap();
        let m = moment_map(&b, &pol).unwrap();
        assert!(m[0].abs() < 1e-9);
        assert!(m[1] > 0.0 && m[1] < 1.0);
    }

    #[test]
    fn non_ample_rejected() {
        let fan = Arc::new(Fan::projective_space(1));
        assert!(
            PolarizedFanData::new(fan, vec![LatticeVec(vec![1]), LatticeVec(vec![0])]).is_err()
        );
    }
}
