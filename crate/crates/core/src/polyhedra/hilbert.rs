//! Hilbert bases of the monoids `S_σ = σ^∨ ∩ M`.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg;
use crate::polyhedra::cone::{dual_generators, Cone, DualCone};
use crate::polyhedra::lattice::LatticeVec;
use crate::valfield::{int, Rational};

/// Largest ambient rank handled for cones that are not smooth.
pub const HILBERT_RANK_LIMIT: usize = 3;

/// The saturated monoid `σ^∨ ∩ M` with its minimal generating set.
///
/// The basis lists the pointed-part generators first (descending
/// lexicographic order), then `ℓ, -ℓ` for each vector `ℓ` of the canonical
/// lattice basis of `σ^⊥ ∩ M`.
#[derive(Clone, Debug)]
pub struct DualMonoid {
    cone: Cone,
    basis: Vec<LatticeVec>,
    n_pointed: usize,
    lineality: Vec<LatticeVec>,
    // lattice basis of span(σ) ∩ N
    span: Vec<LatticeVec>,
    // pointed generators and ray coordinates, both in span coordinates
    pointed_q: Vec<Vec<i64>>,
    rays_q: Vec<Vec<i64>>,
}

impl DualCone {
    pub fn hilbert_basis(&self) -> Result<DualMonoid> {
        DualMonoid::new(self.primal())
    }
}

impl Cone {
    pub fn dual_monoid(&self) -> Result<DualMonoid> {
        DualMonoid::new(self)
    }
}

fn coords_in(basis: &[LatticeVec], v: &LatticeVec) -> Vec<i64> {
    // basis vectors as columns; the solution is integral by construction
    let n = v.rank();
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|r| basis.iter().map(|b| int(b[r])).collect())
        .collect();
    let x =
        linalg::solve(&cols, &v.to_rational(), basis.len()).expect("vector outside lattice span");
    x.iter()
        .map(|q| {
            assert!(q.is_integer(), "non-integral lattice coordinates");
            i64::try_from(q.to_integer()).expect("coordinate overflow")
        })
        .collect()
}

fn in_pointed(rays_q: &[Vec<i64>], q: &[i64]) -> bool {
    rays_q
        .iter()
        .all(|c| c.iter().zip(q).map(|(a, b)| a * b).sum::<i64>() >= 0)
}

/// Extreme rays of `{q ∈ Q^d : ⟨q, c⟩ ≥ 0}` for the given ray coordinates.
fn pointed_rays(d: usize, rays_q: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let gens: Vec<Vec<Rational>> = rays_q
        .iter()
        .map(|c| c.iter().map(|&x| int(x)).collect())
        .collect();
    let g = dual_generators(d, &gens);
    debug_assert!(g.lineality.is_empty());
    g.rays
}

/// Simplicial subdivision of a pointed full-dimensional cone in rank ≤ 3.
fn triangulate(d: usize, rays: &[Vec<i64>]) -> Vec<Vec<Vec<i64>>> {
    if rays.len() == d {
        return vec![rays.to_vec()];
    }
    match d {
        2 => {
            // two extreme rays always suffice in the plane
            vec![rays.to_vec()]
        }
        3 => {
            let r0 = &rays[0];
            let mut out = Vec::new();
            for i in 1..rays.len() {
                for j in i + 1..rays.len() {
                    let (a, b) = (&rays[i], &rays[j]);
                    let normal = [
                        a[1] * b[2] - a[2] * b[1],
                        a[2] * b[0] - a[0] * b[2],
                        a[0] * b[1] - a[1] * b[0],
                    ];
                    let side =
                        |r: &Vec<i64>| normal[0] * r[0] + normal[1] * r[1] + normal[2] * r[2];
                    let signs: Vec<i64> = rays.iter().map(|r| side(r).signum()).collect();
                    let is_facet = signs.iter().all(|&s| s >= 0) || signs.iter().all(|&s| s <= 0);
                    if is_facet && side(r0) != 0 {
                        out.push(vec![r0.clone(), a.clone(), b.clone()]);
                    }
                }
            }
            out
        }
        _ => vec![rays.to_vec()],
    }
}

/// Nonzero lattice points of the half-open parallelepiped spanned by `gens`.
fn parallelepiped_points(d: usize, gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let lo: Vec<i64> = (0..d)
        .map(|c| gens.iter().map(|g| g[c].min(0)).sum())
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|c| gens.iter().map(|g| g[c].max(0)).sum())
        .collect();
    let cols: Vec<Vec<Rational>> = (0..d)
        .map(|r| gens.iter().map(|g| int(g[r])).collect())
        .collect();
    let mut out = Vec::new();
    let mut p = lo.clone();
    loop {
        if p.iter().any(|&x| x != 0) {
            let pq: Vec<Rational> = p.iter().map(|&x| int(x)).collect();
            if let Some(lam) = linalg::solve(&cols, &pq, gens.len()) {
                let back = linalg::mat_vec(&cols, &lam);
                if back == pq && lam.iter().all(|l| !l.is_negative() && *l < int(1)) {
                    out.push(p.clone());
                }
            }
        }
        let mut k = 0;
        loop {
            if k == d {
                return out;
            }
            if p[k] < hi[k] {
                p[k] += 1;
                break;
            }
            p[k] = lo[k];
            k += 1;
        }
    }
}

impl DualMonoid {
    pub fn new(cone: &Cone) -> Result<DualMonoid> {
        let n = cone.rank();
        let lineality = cone.perp_basis();
        let span = cone.span_basis();
        let d = span.len();
        let rays_q: Vec<Vec<i64>> = cone.rays().iter().map(|r| coords_in(&span, r)).collect();
        let section = section_of(&span, n);
        let pointed_q = if d == 0 {
            Vec::new()
        } else {
            let ext = pointed_rays(d, &rays_q);
            let smooth = ext.len() == d && {
                let m: Vec<Vec<Rational>> = ext
                    .iter()
                    .map(|r| r.iter().map(|&x| int(x)).collect())
                    .collect();
                linalg::det(&m).abs() == int(1)
            };
            if smooth {
                ext
            } else if n > HILBERT_RANK_LIMIT {
                return Err(Error::UnsupportedRank {
                    rank: n,
                    limit: HILBERT_RANK_LIMIT,
                });
            } else {
                let mut cands: Vec<Vec<i64>> = ext.clone();
                for simplex in triangulate(d, &ext) {
                    for p in parallelepiped_points(d, &simplex) {
                        if !cands.contains(&p) {
                            cands.push(p);
                        }
                    }
                }
                let irreducible: Vec<Vec<i64>> = cands
                    .iter()
                    .filter(|x| {
                        !cands.iter().any(|g| {
                            g != *x && {
                                let diff: Vec<i64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
                                diff.iter().any(|&v| v != 0) && in_pointed(&rays_q, &diff)
                            }
                        })
                    })
                    .cloned()
                    .collect();
                irreducible
            }
        };
        let lift = |q: &Vec<i64>| -> LatticeVec {
            let mut u = vec![0i64; n];
            for (qj, s) in q.iter().zip(&section) {
                for c in 0..n {
                    u[c] += qj * s[c];
                }
            }
            LatticeVec(u)
        };
        let mut pairs: Vec<(LatticeVec, Vec<i64>)> =
            pointed_q.iter().map(|q| (lift(q), q.clone())).collect();
        pairs.sort_by(|a, b| b.0.cmp(&a.0));
        let mut basis: Vec<LatticeVec> = pairs.iter().map(|p| p.0.clone()).collect();
        let pointed_q: Vec<Vec<i64>> = pairs.into_iter().map(|p| p.1).collect();
        let n_pointed = basis.len();
        for l in &lineality {
            basis.push(l.clone());
            basis.push(-l);
        }
        Ok(DualMonoid {
            cone: cone.clone(),
            basis,
            n_pointed,
            lineality,
            span,
            pointed_q,
            rays_q,
        })
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn basis(&self) -> &[LatticeVec] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.cone.rank()
    }

    /// Number of basis elements outside `σ^⊥` (listed first).
    pub fn pointed_len(&self) -> usize {
        self.n_pointed
    }

    pub fn lineality(&self) -> &[LatticeVec] {
        &self.lineality
    }

    pub fn contains(&self, u: &LatticeVec) -> bool {
        self.cone.rays().iter().all(|r| r.dot(u) >= 0)
    }

    /// Writes `u ∈ S_σ` as a nonnegative integer combination of the basis.
    pub fn decompose(&self, u: &LatticeVec) -> Option<Vec<u64>> {
        if u.rank() != self.rank() || !self.contains(u) {
            return None;
        }
        let mut coeffs = vec![0u64; self.basis.len()];
        let mut q: Vec<i64> = self.span.iter().map(|b| b.dot(u)).collect();
        // greedy descent; the grading by the sum of ray pairings strictly drops
        while q.iter().any(|&x| x != 0) {
            let k = self.pointed_q.iter().position(|h| {
                let rest: Vec<i64> = q.iter().zip(h).map(|(a, b)| a - b).collect();
                in_pointed(&self.rays_q, &rest)
            })?;
            coeffs[k] += 1;
            for (a, b) in q.iter_mut().zip(&self.pointed_q[k]) {
                *a -= b;
            }
        }
        let mut rest = u.clone();
        for (k, c) in coeffs.iter().enumerate().take(self.n_pointed) {
            if *c > 0 {
                rest = &rest - &self.basis[k].scale(*c as i64);
            }
        }
        if !self.lineality.is_empty() {
            let lc = coords_in(&self.lineality, &rest);
            for (j, c) in lc.into_iter().enumerate() {
                let idx = self.n_pointed + 2 * j + usize::from(c < 0);
                coeffs[idx] += c.unsigned_abs();
            }
        } else if !rest.is_zero() {
            return None;
        }
        Some(coeffs)
    }

    /// Evaluates `Σ c_i basis_i`.
    pub fn combine(&self, coeffs: &[u64]) -> LatticeVec {
        let mut acc = LatticeVec::zero(self.rank());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c > 0 {
                acc = &acc + &b.scale(*c as i64);
            }
        }
        acc
    }

    /// Lattice basis of `span(σ) ∩ N` used internally for the pointed part.
    pub fn span_basis(&self) -> &[LatticeVec] {
        &self.span
    }
}

/// Vectors `s_j ∈ M` with `⟨s_j, b_k⟩ = δ_jk` for a saturated basis `b`.
pub(crate) fn section_of(span: &[LatticeVec], n: usize) -> Vec<LatticeVec> {
    let d = span.len();
    if d == 0 {
        return Vec::new();
    }
    let b: Vec<Vec<i64>> = span.iter().map(|v| v.0.clone()).collect();
    let (h, u, _) = linalg::column_hermite(&b, n);
    // b · u = [H | 0]; s_j = u[:, :d] · H^{-1} e_j
    let hq: Vec<Vec<Rational>> = (0..d)
        .map(|i| (0..d).map(|j| int(h[i][j])).collect())
        .collect();
    (0..d)
        .map(|j| {
            let e: Vec<Rational> = (0..d).map(|i| int(i64::from(i == j))).collect();
            let y = linalg::solve(&hq, &e, d).expect("span basis must be independent");
            let s: Vec<i64> = (0..n)
                .map(|r| {
                    let v: Rational = (0..d).map(|c| &y[c] * int(u[r][c])).sum();
                    assert!(v.is_integer(), "span basis not saturated");
                    i64::try_from(v.to_integer()).unwrap()
                })
                .collect();
            LatticeVec(s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn lv(v: &[i64]) -> LatticeVec {
        LatticeVec(v.to_vec())
    }

    fn basis_set(rays: &[&[i64]], rank: usize) -> BTreeSet<LatticeVec> {
        let c = Cone::new(rank, rays.iter().map(|r| lv(r)).collect()).unwrap();
        c.dual()
            .hilbert_basis()
            .unwrap()
            .basis()
            .iter()
            .cloned()
            .collect()
    }

    #[test]
    fn orthant_is_free() {
        let b = basis_set(&[&[1, 0], &[0, 1]], 2);
        assert_eq!(b, [lv(&[1, 0]), lv(&[0, 1])].into_iter().collect());
    }

    #[test]
    fn parallelepiped_example() {
        // σ^∨ spanned by (0,1), (2,-1): σ has rays (1,0), (1,2)
        let b = basis_set(&[&[1, 0], &[1, 2]], 2);
        assert_eq!(
            b,
            [lv(&[0, 1]), lv(&[1, 0]), lv(&[2, -1])]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn halfplane_monoid() {
        let b = basis_set(&[&[1, 0]], 2);
        assert_eq!(
            b,
            [lv(&[1, 0]), lv(&[0, 1]), lv(&[0, -1])]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn three_dimensional_non_simplicial() {
        // dual is the cone over the square [-1,1]^2: all 9 height-one points
        let b = basis_set(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]], 3);
        assert_eq!(b.len(), 9, "{b:?}");
        assert!(b.contains(&lv(&[0, 0, 1])));
    }

    #[test]
    fn rank_limit_for_singular_cones() {
        let c = Cone::new(4, vec![lv(&[1, 0, 0, 0]), lv(&[1, 2, 0, 0])]).unwrap();
        assert!(matches!(
            c.dual_monoid(),
            Err(Error::UnsupportedRank { .. })
        ));
        let s = Cone::new(4, vec![lv(&[1, 0, 0, 0]), lv(&[0, 1, 0, 0])]).unwrap();
        assert_eq!(s.dual_monoid().unwrap().basis().len(), 6);
    }

    #[test]
    fn decomposition_round_trip() {
        let c = Cone::new(2, vec![lv(&[1, 0]), lv(&[1, 2])]).unwrap();
        let m = c.dual_monoid().unwrap();
        for a in -6..=6 {
            for b in -6..=6 {
                let u = lv(&[a, b]);
                match m.decompose(&u) {
                    Some(cf) => assert_eq!(m.combine(&cf), u),
                    None => assert!(!m.contains(&u)),
                }
            }
        }
    }

    #[test]
    fn zero_cone_monoid_is_group() {
        let m = Cone::zero(2).dual_monoid().unwrap();
        assert_eq!(m.pointed_len(), 0);
        assert_eq!(m.basis().len(), 4);
        let cf = m.decompose(&lv(&[-3, 2])).unwrap();
        assert_eq!(m.combine(&cf), lv(&[-3, 2]));
    }
}
