//! Rational polyhedral cones and cone duality.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, QMat};
use crate::polyhedra::lattice::LatticeVec;
use crate::valfield::Rational;

/// Generators of a (not necessarily pointed) cone: extreme rays of the
/// pointed part plus a basis of the lineality space, all primitive integer
/// vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGenerators {
    pub rays: Vec<Vec<i64>>,
    pub lineality: Vec<Vec<i64>>,
}

impl ConeGenerators {
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.lineality.iter().all(|l| dot_iq(l, x).is_zero())
            && self.rays.iter().all(|u| !dot_iq(u, x).is_negative())
    }
}

pub(crate) fn dot_iq(a: &[i64], x: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (ai, xi) in a.iter().zip(x) {
        if *ai != 0 {
            acc += xi * crate::valfield::int(*ai);
        }
    }
    acc
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Generators of the dual cone `{u : ⟨u, g⟩ ≥ 0 for all g}` of the cone
/// generated by `gens` in `Q^n`.
///
/// The lineality space of the dual is `span(gens)^⊥`; the pointed part is
/// found inside `span(gens)`, where every extreme ray is cut out by
/// `dim - 1` independent tight generators.
pub fn dual_generators(n: usize, gens: &[Vec<Rational>]) -> ConeGenerators {
    let mut uniq: Vec<Vec<i64>> = Vec::new();
    for g in gens {
        if let Some(p) = linalg::primitive_integer(g) {
            if !uniq.contains(&p) {
                uniq.push(p);
            }
        }
    }
    let gq: QMat = linalg::to_q(&uniq);
    let lineality: Vec<Vec<i64>> = if uniq.is_empty() {
        (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect()
    } else {
        linalg::nullspace(&gq, n)
            .iter()
            .filter_map(|v| linalg::primitive_integer(v))
            .collect()
    };
    let (w, _) = linalg::rref(gq.clone(), n);
    let d = w.len();
    let mut rays: Vec<Vec<i64>> = Vec::new();
    if d == 0 {
        return ConeGenerators { rays, lineality };
    }
    // pairing of each generator with each basis vector of W
    let pair: Vec<Vec<Rational>> = gq
        .iter()
        .map(|g| w.iter().map(|wk| linalg::dot(wk, g)).collect())
        .collect();
    let mut try_direction = |y: &[Rational]| {
        let u: Vec<Rational> = (0..n)
            .map(|c| w.iter().zip(y).map(|(wk, yk)| &wk[c] * yk).sum())
            .collect();
        let signs: Vec<Rational> = gq.iter().map(|g| linalg::dot(&u, g)).collect();
        let cand = if signs.iter().all(|s| !s.is_negative()) {
            Some(u)
        } else if signs.iter().all(|s| !s.is_positive()) {
            Some(u.iter().map(|x| -x.clone()).collect())
        } else {
            None
        };
        if let Some(c) = cand.and_then(|c| linalg::primitive_integer(&c)) {
            if !rays.contains(&c) {
                rays.push(c);
            }
        }
    };
    if d == 1 {
        try_direction(&[Rational::from_integer(1.into())]);
    } else {
        for subset in combinations(uniq.len(), d - 1) {
            let m: QMat = subset.iter().map(|&i| pair[i].clone()).collect();
            let ns = linalg::nullspace(&m, d);
            if ns.len() == 1 {
                try_direction(&ns[0]);
            }
        }
    }
    rays.sort();
    ConeGenerators { rays, lineality }
}

/// A strongly convex rational cone in `N_R`, stored by its primitive
/// extreme rays (in the order supplied).
#[derive(Clone, Debug)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVec>,
    dual: ConeGenerators,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.rays.iter().collect::<BTreeSet<_>>()
                == other.rays.iter().collect::<BTreeSet<_>>()
    }
}

impl Eq for Cone {}

impl Cone {
    /// Builds a cone from its extreme rays. Rays are made primitive; a ray
    /// that is not extreme, or a cone containing a line, is rejected.
    pub fn new(rank: usize, rays: Vec<LatticeVec>) -> Result<Cone> {
        let mut prim: Vec<LatticeVec> = Vec::new();
        for r in rays {
            if r.rank() != rank {
                return Err(Error::Domain(format!(
                    "ray {r} has wrong rank (expected {rank})"
                )));
            }
            if r.is_zero() {
                return Err(Error::Domain("zero vector is not a ray".into()));
            }
            let p = r.primitive();
            if prim.contains(&p) {
                return Err(Error::Domain(format!("duplicate ray {p}")));
            }
            prim.push(p);
        }
        let cone = Cone::from_rays_unchecked(rank, prim);
        if !cone.is_strongly_convex() {
            return Err(Error::Domain("cone contains a line".into()));
        }
        for i in 0..cone.rays.len() {
            let others: Vec<Vec<Rational>> = cone
                .rays
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, r)| r.to_rational())
                .collect();
            if dual_generators(rank, &others).contains(&cone.rays[i].to_rational()) {
                return Err(Error::Domain(format!(
                    "ray {} is not extreme",
                    cone.rays[i]
                )));
            }
        }
        Ok(cone)
    }

    /// The cone generated by arbitrary vectors, keeping only extreme rays.
    pub fn generated_by(rank: usize, gens: &[Vec<Rational>]) -> Result<Cone> {
        let dual = dual_generators(rank, gens);
        let mut dual_gens: Vec<Vec<Rational>> = dual.rays.iter().map(|r| int_vec(r)).collect();
        for l in &dual.lineality {
            dual_gens.push(int_vec(l));
            dual_gens.push(l.iter().map(|&x| crate::valfield::int(-x)).collect());
        }
        let primal = dual_generators(rank, &dual_gens);
        if !primal.lineality.is_empty() {
            return Err(Error::Domain("cone contains a line".into()));
        }
        Ok(Cone::from_rays_unchecked(
            rank,
            primal.rays.into_iter().map(LatticeVec).collect(),
        ))
    }

    pub(crate) fn from_rays_unchecked(rank: usize, rays: Vec<LatticeVec>) -> Cone {
        let gens: Vec<Vec<Rational>> = rays.iter().map(|r| r.to_rational()).collect();
        let dual = dual_generators(rank, &gens);
        Cone { rank, rays, dual }
    }

    pub fn zero(rank: usize) -> Cone {
        Cone::from_rays_unchecked(rank, Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        let m: QMat = self.rays.iter().map(|r| r.to_rational()).collect();
        linalg::rank(&m, self.rank)
    }

    fn is_strongly_convex(&self) -> bool {
        self.dual.rays.len() + self.dual.lineality.len() >= self.rank
            && linalg::rank(
                &self
                    .dual
                    .rays
                    .iter()
                    .chain(&self.dual.lineality)
                    .map(|r| int_vec(r))
                    .collect::<Vec<_>>(),
                self.rank,
            ) == self.rank
    }

    /// True when the rays extend to a basis of the lattice `span(σ) ∩ N`.
    pub fn is_smooth(&self) -> bool {
        if self.rays.len() != self.dim() {
            return false;
        }
        if self.rays.is_empty() {
            return true;
        }
        let m: Vec<Vec<i64>> = self.rays.iter().map(|r| r.0.clone()).collect();
        let (h, _, r) = linalg::column_hermite(&m, self.rank);
        (0..r).all(|i| h[i][i].abs() == 1)
    }

    /// `σ^∨ = {u ∈ M_R : ⟨u, r⟩ ≥ 0}`.
    pub fn dual(&self) -> DualCone {
        DualCone {
            rank: self.rank,
            rays: self.dual.rays.iter().cloned().map(LatticeVec).collect(),
            lineality: self.perp_basis(),
            primal: self.clone(),
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.dual.contains(v)
    }

    pub fn contains_relint(&self, v: &[Rational]) -> bool {
        self.dual.lineality.iter().all(|l| dot_iq(l, v).is_zero())
            && self.dual.rays.iter().all(|u| dot_iq(u, v).is_positive())
    }

    /// All faces, as sorted index sets into `rays()`, from `{0}` to `σ`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let k = self.dual.rays.len();
        for mask in 0u64..(1u64 << k) {
            let mut u = vec![0i64; self.rank];
            for (j, r) in self.dual.rays.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    for c in 0..self.rank {
                        u[c] += r[c];
                    }
                }
            }
            let u = LatticeVec(u);
            let tight: Vec<usize> = (0..self.rays.len())
                .filter(|&i| self.rays[i].dot(&u) == 0)
                .collect();
            seen.insert(tight);
        }
        let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
        out.sort_by_key(|f| (f.len(), f.clone()));
        out
    }

    pub fn face(&self, idx: &[usize]) -> Cone {
        Cone::from_rays_unchecked(
            self.rank,
            idx.iter().map(|&i| self.rays[i].clone()).collect(),
        )
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.rank != other.rank {
            return false;
        }
        let Some(idx) = self
            .rays
            .iter()
            .map(|r| other.rays.iter().position(|s| s == r))
            .collect::<Option<Vec<usize>>>()
        else {
            return false;
        };
        let mut idx = idx;
        idx.sort();
        other.faces().contains(&idx)
    }

    /// Canonical lattice basis of `σ^⊥ ∩ M` (row Hermite normal form).
    /// Pairing with these vectors gives the fixed coordinates on `N(σ)`.
    pub fn perp_basis(&self) -> Vec<LatticeVec> {
        let m: Vec<Vec<i64>> = self.rays.iter().map(|r| r.0.clone()).collect();
        let k = linalg::integer_kernel(&m, self.rank);
        linalg::row_hnf(&k, self.rank)
            .into_iter()
            .map(LatticeVec)
            .collect()
    }

    /// Canonical lattice basis of `span(σ) ∩ N`.
    pub fn span_basis(&self) -> Vec<LatticeVec> {
        let perp: Vec<Vec<i64>> = self.perp_basis().into_iter().map(|l| l.0).collect();
        let k = linalg::integer_kernel(&perp, self.rank);
        linalg::row_hnf(&k, self.rank)
            .into_iter()
            .map(LatticeVec)
            .collect()
    }

    /// Coordinates of a point of `N_R` in the quotient `N(σ)`.
    pub fn quotient_coords(&self, v: &[Rational]) -> Vec<Rational> {
        self.perp_basis().iter().map(|l| l.dot_q(v)).collect()
    }
}

fn int_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| crate::valfield::int(x)).collect()
}

/// The dual cone `σ^∨ ⊂ M_R`, stored as the extreme rays of its pointed
/// part together with a lattice basis of its lineality space `σ^⊥`.
#[derive(Clone, Debug)]
pub struct DualCone {
    rank: usize,
    rays: Vec<LatticeVec>,
    lineality: Vec<LatticeVec>,
    primal: Cone,
}

impl DualCone {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[LatticeVec] {
        &self.lineality
    }

    pub fn primal(&self) -> &Cone {
        &self.primal
    }

    /// The dual of the zero cone: all of `M_R`.
    pub fn is_full_space(&self) -> bool {
        self.rays.is_empty() && self.lineality.len() == self.rank
    }

    pub fn contains(&self, u: &LatticeVec) -> bool {
        self.primal.rays.iter().all(|r| r.dot(u) >= 0)
    }

    /// Dualizing again returns the original cone.
    pub fn dual(&self) -> Cone {
        let mut gens: Vec<Vec<Rational>> = self.rays.iter().map(|r| r.to_rational()).collect();
        for l in &self.lineality {
            gens.push(l.to_rational());
            gens.push((-l).to_rational());
        }
        let g = dual_generators(self.rank, &gens);
        Cone::from_rays_unchecked(self.rank, g.rays.into_iter().map(LatticeVec).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVec {
        LatticeVec(v.to_vec())
    }

    fn cone(rank: usize, rays: &[&[i64]]) -> Cone {
        Cone::new(rank, rays.iter().map(|r| lv(r)).collect()).unwrap()
    }

    #[test]
    fn dual_examples() {
        let orth = cone(2, &[&[1, 0], &[0, 1]]);
        let d = orth.dual();
        assert_eq!(d.rays(), &[lv(&[0, 1]), lv(&[1, 0])]);
        assert!(d.lineality().is_empty());

        let d0 = Cone::zero(2).dual();
        assert!(d0.is_full_space());

        let ray = cone(2, &[&[1, 0]]).dual();
        assert_eq!(ray.rays(), &[lv(&[1, 0])]);
        assert_eq!(ray.lineality(), &[lv(&[0, 1])]);
    }

    #[test]
    fn double_dual_is_identity() {
        let cases: Vec<Cone> = vec![
            cone(2, &[&[1, 0], &[0, 1]]),
            cone(2, &[&[1, 0], &[1, 2]]),
            cone(2, &[&[1, 0]]),
            Cone::zero(3),
            cone(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
            cone(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]),
            cone(3, &[&[1, 2, 3], &[-1, 0, 1]]),
        ];
        for c in cases {
            assert_eq!(c.dual().dual(), c, "double dual of {:?}", c.rays());
        }
    }

    #[test]
    fn face_examples() {
        assert_eq!(cone(2, &[&[1, 0], &[0, 1]]).faces().len(), 4);
        assert_eq!(cone(2, &[&[1, 0]]).faces(), vec![vec![], vec![0]]);
        let c = cone(2, &[&[1, 0], &[1, 2]]);
        assert_eq!(c.faces(), vec![vec![], vec![0], vec![1], vec![0, 1]]);
        let sq = cone(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        // apex, 4 rays, 4 two-dimensional faces, the cone
        assert_eq!(sq.faces().len(), 10);
    }

    #[test]
    fn rejects_bad_cones() {
        assert!(Cone::new(2, vec![lv(&[1, 0]), lv(&[-1, 0])]).is_err());
        assert!(Cone::new(2, vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1])]).is_err());
        assert!(Cone::new(2, vec![lv(&[0, 0])]).is_err());
    }

    #[test]
    fn smoothness() {
        assert!(cone(2, &[&[1, 0], &[0, 1]]).is_smooth());
        assert!(!cone(2, &[&[1, 0], &[1, 2]]).is_smooth());
        assert!(cone(3, &[&[1, 1, 0]]).is_smooth());
        assert!(cone(2, &[&[0, 1], &[-1, -1]]).is_smooth());
    }
}
