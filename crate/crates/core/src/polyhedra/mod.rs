//! Lattices, cones, fans, dual monoids and polyhedral complexes.

pub mod complex;
pub mod cone;
pub mod hilbert;
pub mod lattice;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

pub use complex::{GRatPolyComplex, Halfspace, Polyhedron};
pub use cone::{dual_generators, Cone, ConeGenerators, DualCone};
pub use hilbert::DualMonoid;
pub use lattice::LatticeVec;

use crate::error::{Error, Result};
use crate::linalg;
use crate::valfield::{int, Rational};

/// Matrix of the projection `N(τ) → N(σ)` in the canonical quotient bases.
pub fn quotient_projection(tau: &Cone, sigma: &Cone) -> Result<Vec<Vec<Rational>>> {
    if !tau.is_face_of(sigma) {
        return Err(Error::Domain(
            "first cone is not a face of the second".into(),
        ));
    }
    let lt = tau.perp_basis();
    let ls = sigma.perp_basis();
    let n = tau.rank();
    // columns of the ℓ^τ basis
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|r| lt.iter().map(|l| int(l[r])).collect())
        .collect();
    ls.iter()
        .map(|l| {
            linalg::solve(&cols, &l.to_rational(), lt.len())
                .ok_or_else(|| Error::Domain("quotient basis not contained in face basis".into()))
        })
        .collect()
}

/// A fan given by rays and maximal cones (ray index sets); all faces are
/// derived.
#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVec>,
    maximal: Vec<Vec<usize>>,
    cones: Vec<Vec<usize>>,
    monoids: Arc<Mutex<BTreeMap<Vec<usize>, Arc<DualMonoid>>>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.cones == other.cones
    }
}

impl Fan {
    pub fn new(rank: usize, rays: Vec<LatticeVec>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        for r in &rays {
            if r.rank() != rank || r.is_zero() || r.content() != 1 {
                return Err(Error::InvalidFan(format!(
                    "ray {r} must be a primitive vector of rank {rank}"
                )));
            }
        }
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        all.insert(Vec::new());
        let mut listed: Vec<Vec<usize>> = Vec::new();
        for c in cones {
            let mut c = c;
            c.sort();
            c.dedup();
            if c.iter().any(|&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!(
                    "cone {c:?} refers to a missing ray"
                )));
            }
            let cone = Cone::new(rank, c.iter().map(|&i| rays[i].clone()).collect())
                .map_err(|e| Error::InvalidFan(format!("cone {c:?}: {e}")))?;
            for f in cone.faces() {
                all.insert(
                    f.iter()
                        .map(|&k| c[k])
                        .collect::<BTreeSet<_>>()
                        .into_iter()
                        .collect(),
                );
            }
            listed.push(c);
        }
        for (i, r) in rays.iter().enumerate() {
            if !all.contains(&vec![i]) {
                return Err(Error::InvalidFan(format!("ray {r} is not in any cone")));
            }
        }
        let cones: Vec<Vec<usize>> = {
            let mut v: Vec<Vec<usize>> = all.into_iter().collect();
            v.sort_by_key(|c| (c.len(), c.clone()));
            v
        };
        let maximal: Vec<Vec<usize>> = cones
            .iter()
            .filter(|c| {
                !cones
                    .iter()
                    .any(|d| d.len() > c.len() && c.iter().all(|i| d.contains(i)))
            })
            .cloned()
            .collect();
        let fan = Fan {
            rank,
            rays,
            maximal,
            cones,
            monoids: Arc::default(),
        };
        fan.check_intersections()?;
        Ok(fan)
    }

    fn check_intersections(&self) -> Result<()> {
        let zero = vec![Rational::from_integer(0.into()); self.rank];
        for (i, a) in self.maximal.iter().enumerate() {
            for b in &self.maximal[i + 1..] {
                let common: Vec<usize> = a.iter().filter(|x| b.contains(x)).copied().collect();
                let pa = Polyhedron::new(
                    self.rank,
                    vec![zero.clone()],
                    a.iter().map(|&k| self.rays[k].clone()).collect(),
                );
                let pb = Polyhedron::new(
                    self.rank,
                    vec![zero.clone()],
                    b.iter().map(|&k| self.rays[k].clone()).collect(),
                );
                let pc = Polyhedron::new(
                    self.rank,
                    vec![zero.clone()],
                    common.iter().map(|&k| self.rays[k].clone()).collect(),
                );
                let inter = pa.intersection(&pb).expect("cones share the origin");
                if !pc.contains_polyhedron(&inter) {
                    return Err(Error::InvalidFan(format!(
                        "cones {a:?} and {b:?} do not meet in a common face"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The fan of `A^n`: the positive orthant and its faces.
    pub fn affine_space(n: usize) -> Fan {
        let rays = (0..n).map(|i| LatticeVec::unit(n, i)).collect();
        Fan::new(n, rays, vec![(0..n).collect()]).expect("orthant fan")
    }

    /// The fan of `P^n` with rays `e_1, …, e_n, -(e_1 + ⋯ + e_n)`. The
    /// maximal cone omitting ray `i` is the chart where the `i`-th
    /// homogeneous coordinate (ray `n` standing for `x_0`) does not vanish.
    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<LatticeVec> = (0..n).map(|i| LatticeVec::unit(n, i)).collect();
        rays.push(LatticeVec(vec![-1; n]));
        let cones = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        Fan::new(n, rays, cones).expect("projective fan")
    }

    /// The fan consisting of the zero cone only (the torus).
    pub fn torus(n: usize) -> Fan {
        Fan::new(n, Vec::new(), Vec::new()).expect("torus fan")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    /// All cones as sorted ray-index sets, ordered by dimension.
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    pub fn has_cone(&self, idx: &[usize]) -> bool {
        let mut s = idx.to_vec();
        s.sort();
        self.cones.contains(&s)
    }

    pub fn cone(&self, idx: &[usize]) -> Cone {
        let mut s = idx.to_vec();
        s.sort();
        Cone::from_rays_unchecked(self.rank, s.iter().map(|&i| self.rays[i].clone()).collect())
    }

    /// The dual monoid of a cone of the fan (computed once, then shared).
    pub fn monoid(&self, idx: &[usize]) -> Result<Arc<DualMonoid>> {
        let mut key = idx.to_vec();
        key.sort();
        if !self.cones.contains(&key) {
            return Err(Error::Domain(format!("{key:?} is not a cone of the fan")));
        }
        if let Some(m) = self.monoids.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let m = Arc::new(self.cone(&key).dual_monoid()?);
        self.monoids.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    /// Cones containing the given cone as a face.
    pub fn star(&self, idx: &[usize]) -> Vec<Vec<usize>> {
        self.cones
            .iter()
            .filter(|c| idx.iter().all(|i| c.contains(i)))
            .cloned()
            .collect()
    }

    /// The fan of the orbit closure `V(τ)`: cones containing `τ`, projected
    /// to `N(τ)` in its canonical coordinates. Also returns, for each ray of
    /// the new fan, the index of the ray of `self` it comes from.
    pub fn star_fan(&self, tau: &[usize]) -> Result<(Fan, Vec<usize>)> {
        let mut tau = tau.to_vec();
        tau.sort();
        if !self.cones.contains(&tau) {
            return Err(Error::Domain(format!("{tau:?} is not a cone of the fan")));
        }
        let perp = self.cone(&tau).perp_basis();
        let star = self.star(&tau);
        let mut extra: Vec<usize> = star
            .iter()
            .flatten()
            .copied()
            .filter(|i| !tau.contains(i))
            .collect();
        extra.sort();
        extra.dedup();
        let rays = extra
            .iter()
            .map(|&i| LatticeVec(perp.iter().map(|l| l.dot(&self.rays[i])).collect()).primitive())
            .collect();
        let cones = star
            .iter()
            .map(|c| self.relabel_star(&tau, &extra, c))
            .collect();
        Ok((Fan::new(perp.len(), rays, cones)?, extra))
    }

    /// Index set in the star fan of a cone containing `tau`.
    pub(crate) fn relabel_star(&self, tau: &[usize], extra: &[usize], c: &[usize]) -> Vec<usize> {
        c.iter()
            .filter(|i| !tau.contains(i))
            .map(|i| {
                extra
                    .iter()
                    .position(|e| e == i)
                    .expect("cone lies in the star")
            })
            .collect()
    }

    /// The cone whose relative interior contains `v`, if any.
    pub fn cone_containing(&self, v: &[Rational]) -> Option<Vec<usize>> {
        self.cones
            .iter()
            .find(|c| self.cone(c).contains_relint(v))
            .cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVec {
        LatticeVec(v.to_vec())
    }

    #[test]
    fn quotient_projection_examples() {
        let z = Cone::zero(2);
        assert_eq!(
            quotient_projection(&z, &z).unwrap(),
            vec![vec![int(1), int(0)], vec![int(0), int(1)]]
        );
        let ray = Cone::new(2, vec![lv(&[1, 0])]).unwrap();
        assert_eq!(
            quotient_projection(&z, &ray).unwrap(),
            vec![vec![int(0), int(1)]]
        );
        let orth = Cone::new(2, vec![lv(&[1, 0]), lv(&[0, 1])]).unwrap();
        let m = quotient_projection(&ray, &orth).unwrap();
        assert!(m.is_empty());
        assert!(quotient_projection(&orth, &ray).is_err());
    }

    #[test]
    fn standard_fans() {
        let p2 = Fan::projective_space(2);
        assert_eq!(p2.cones().len(), 7);
        assert_eq!(p2.maximal_cones().len(), 3);
        let a2 = Fan::affine_space(2);
        assert_eq!(a2.cones().len(), 4);
        assert_eq!(Fan::torus(3).cones(), &[Vec::<usize>::new()]);
    }

    #[test]
    fn overlapping_cones_rejected() {
        let r = Fan::new(
            2,
            vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1])],
            vec![vec![0, 1], vec![0, 2]],
        );
        assert!(r.is_err());
    }
}
