//! Rational polyhedra and polyhedral complexes in `N_R`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::polyhedra::cone::{dot_iq, dual_generators};
use crate::polyhedra::lattice::{fmt_point, LatticeVec};
use crate::valfield::{int, Rational};

/// A half-space `⟨a, x⟩ + b ≥ 0` (or a hyperplane when used as an equation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub a: Vec<i64>,
    pub b: Rational,
}

impl Halfspace {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot_iq(&self.a, x) + &self.b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub ineqs: Vec<Halfspace>,
    pub eqs: Vec<Halfspace>,
}

/// A polyhedron `conv(vertices) + cone(rays)` with rational vertices and
/// integer ray directions. Lines are stored as a pair of opposite rays.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    rank: usize,
    vertices: Vec<Vec<Rational>>,
    rays: Vec<LatticeVec>,
    hrep: HRep,
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.contains_polyhedron(other)
            && other.contains_polyhedron(self)
    }
}

impl Polyhedron {
    /// Builds a nonempty polyhedron from generators.
    pub fn new(rank: usize, vertices: Vec<Vec<Rational>>, rays: Vec<LatticeVec>) -> Polyhedron {
        assert!(!vertices.is_empty(), "a polyhedron needs a vertex");
        let mut gens: Vec<Vec<Rational>> = vertices
            .iter()
            .map(|v| {
                let mut g = v.clone();
                g.push(Rational::one());
                g
            })
            .collect();
        for r in &rays {
            let mut g = r.to_rational();
            g.push(Rational::zero());
            gens.push(g);
        }
        let dual = dual_generators(rank + 1, &gens);
        let split = |v: &Vec<i64>| Halfspace {
            a: v[..rank].to_vec(),
            b: int(v[rank]),
        };
        let hrep = HRep {
            ineqs: dual.rays.iter().map(split).collect(),
            eqs: dual.lineality.iter().map(split).collect(),
        };
        let mut p = Polyhedron {
            rank,
            vertices,
            rays,
            hrep,
        };
        p.minimize();
        p
    }

    pub fn point(p: Vec<Rational>) -> Polyhedron {
        let rank = p.len();
        Polyhedron::new(rank, vec![p], Vec::new())
    }

    /// Converts an H-representation back to generators; `None` if empty.
    pub fn from_hrep(rank: usize, ineqs: &[Halfspace], eqs: &[Halfspace]) -> Option<Polyhedron> {
        let lift = |h: &Halfspace| -> Vec<Rational> {
            let mut g: Vec<Rational> = h.a.iter().map(|&x| int(x)).collect();
            g.push(h.b.clone());
            g
        };
        let mut gens: Vec<Vec<Rational>> = ineqs.iter().map(lift).collect();
        for e in eqs {
            let g = lift(e);
            gens.push(g.iter().map(|x| -x.clone()).collect());
            gens.push(g);
        }
        let mut s = vec![Rational::zero(); rank + 1];
        s[rank] = Rational::one();
        gens.push(s);
        let cone = dual_generators(rank + 1, &gens);
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in &cone.rays {
            if r[rank] > 0 {
                let h = int(r[rank]);
                vertices.push(r[..rank].iter().map(|&x| int(x) / &h).collect::<Vec<_>>());
            } else {
                rays.push(LatticeVec(r[..rank].to_vec()));
            }
        }
        for l in &cone.lineality {
            debug_assert_eq!(l[rank], 0);
            let v = LatticeVec(l[..rank].to_vec());
            rays.push(-&v);
            rays.push(v);
        }
        if vertices.is_empty() {
            return None;
        }
        Some(Polyhedron::new(rank, vertices, rays))
    }

    fn minimize(&mut self) {
        // drop vertices and rays that are not needed
        let mut verts: Vec<Vec<Rational>> = Vec::new();
        for v in &self.vertices {
            if !verts.contains(v) {
                verts.push(v.clone());
            }
        }
        let mut rays: Vec<LatticeVec> = Vec::new();
        for r in &self.rays {
            let p = r.primitive();
            if !p.is_zero() && !rays.contains(&p) {
                rays.push(p);
            }
        }
        let mut i = 0;
        while i < rays.len() {
            let others: Vec<LatticeVec> = rays
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, r)| r.clone())
                .collect();
            let has_opposite = others.contains(&-&rays[i]);
            if !has_opposite
                && Polyhedron::generated(self.rank, &verts, &others).contains_ray(&rays[i])
            {
                rays.remove(i);
            } else {
                i += 1;
            }
        }
        let mut i = 0;
        while i < verts.len() && verts.len() > 1 {
            let others: Vec<Vec<Rational>> = verts
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v.clone())
                .collect();
            if Polyhedron::generated(self.rank, &others, &rays).contains_point(&verts[i]) {
                verts.remove(i);
            } else {
                i += 1;
            }
        }
        verts.sort();
        rays.sort();
        self.vertices = verts;
        self.rays = rays;
    }

    fn generated(rank: usize, vertices: &[Vec<Rational>], rays: &[LatticeVec]) -> Polyhedron {
        let mut gens: Vec<Vec<Rational>> = vertices
            .iter()
            .map(|v| {
                let mut g = v.clone();
                g.push(Rational::one());
                g
            })
            .collect();
        for r in rays {
            let mut g = r.to_rational();
            g.push(Rational::zero());
            gens.push(g);
        }
        let dual = dual_generators(rank + 1, &gens);
        let split = |v: &Vec<i64>| Halfspace {
            a: v[..rank].to_vec(),
            b: int(v[rank]),
        };
        Polyhedron {
            rank,
            vertices: vertices.to_vec(),
            rays: rays.to_vec(),
            hrep: HRep {
                ineqs: dual.rays.iter().map(split).collect(),
                eqs: dual.lineality.iter().map(split).collect(),
            },
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    pub fn dim(&self) -> usize {
        let v0 = &self.vertices[0];
        let mut m: Vec<Vec<Rational>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        m.extend(self.rays.iter().map(|r| r.to_rational()));
        linalg::rank(&m, self.rank)
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.hrep.eqs.iter().all(|h| h.eval(x).is_zero())
            && self.hrep.ineqs.iter().all(|h| !h.eval(x).is_negative())
    }

    pub fn contains_ray(&self, r: &LatticeVec) -> bool {
        let q = r.to_rational();
        self.hrep.eqs.iter().all(|h| dot_iq(&h.a, &q).is_zero())
            && self
                .hrep
                .ineqs
                .iter()
                .all(|h| !dot_iq(&h.a, &q).is_negative())
    }

    pub fn contains_polyhedron(&self, other: &Polyhedron) -> bool {
        other.vertices.iter().all(|v| self.contains_point(v))
            && other.rays.iter().all(|r| self.contains_ray(r))
    }

    pub fn intersection(&self, other: &Polyhedron) -> Option<Polyhedron> {
        let mut ineqs = self.hrep.ineqs.clone();
        ineqs.extend(other.hrep.ineqs.iter().cloned());
        let mut eqs = self.hrep.eqs.clone();
        eqs.extend(other.hrep.eqs.iter().cloned());
        Polyhedron::from_hrep(self.rank, &ineqs, &eqs)
    }

    /// The recession cone, as ray generators.
    pub fn recession(&self) -> &[LatticeVec] {
        &self.rays
    }

    /// Image under a rational linear map given by its rows.
    pub fn map_linear(&self, rows: &[Vec<Rational>]) -> Polyhedron {
        let target = rows.len();
        let vertices: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|v| linalg::mat_vec(rows, v))
            .collect();
        let rays: Vec<LatticeVec> = self
            .rays
            .iter()
            .filter_map(|r| linalg::primitive_integer(&linalg::mat_vec(rows, &r.to_rational())))
            .map(LatticeVec)
            .collect();
        Polyhedron::new(target, vertices, rays)
    }

    /// A point in the relative interior.
    pub fn interior_point(&self) -> Vec<Rational> {
        let k = int(self.vertices.len() as i64);
        let mut p: Vec<Rational> = vec![Rational::zero(); self.rank];
        for v in &self.vertices {
            for (pi, vi) in p.iter_mut().zip(v) {
                *pi += vi;
            }
        }
        for pi in p.iter_mut() {
            *pi /= &k;
        }
        for r in &self.rays {
            for (pi, ri) in p.iter_mut().zip(&r.0) {
                *pi += int(*ri);
            }
        }
        p
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("cell")?;
        for v in &self.vertices {
            write!(f, " {}", fmt_point(v))?;
        }
        f.write_str(" |")?;
        for r in &self.rays {
            write!(f, " {r}")?;
        }
        Ok(())
    }
}

/// A finite collection of G-rational polyhedra. Equality compares supports.
#[derive(Clone, Debug)]
pub struct GRatPolyComplex {
    rank: usize,
    cells: Vec<Polyhedron>,
}

impl PartialEq for GRatPolyComplex {
    fn eq(&self, other: &Self) -> bool {
        self.support_eq(other)
    }
}

impl GRatPolyComplex {
    pub fn new(rank: usize, cells: Vec<Polyhedron>) -> GRatPolyComplex {
        let mut out: Vec<Polyhedron> = Vec::new();
        for c in cells {
            assert_eq!(c.rank(), rank, "cell rank mismatch");
            if !out
                .iter()
                .any(|d| d.vertices == c.vertices && d.rays == c.rays)
            {
                out.push(c);
            }
        }
        GRatPolyComplex { rank, cells: out }
    }

    pub fn empty(rank: usize) -> GRatPolyComplex {
        GRatPolyComplex {
            rank,
            cells: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cells(&self) -> &[Polyhedron] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Largest cell dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim()).max()
    }

    /// Cells not contained in any other cell.
    pub fn maximal_cells(&self) -> Vec<&Polyhedron> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(i, c)| {
                !self.cells.iter().enumerate().any(|(j, d)| {
                    *i != j && d.contains_polyhedron(c) && (!c.contains_polyhedron(d) || j < *i)
                })
            })
            .map(|(_, c)| c)
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        let dims: Vec<usize> = self.maximal_cells().iter().map(|c| c.dim()).collect();
        dims.windows(2).all(|w| w[0] == w[1])
    }

    /// Pairs `(i, j)` with cell `i` contained in cell `j`, `i ≠ j`.
    pub fn face_relation(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, c) in self.cells.iter().enumerate() {
            for (j, d) in self.cells.iter().enumerate() {
                if i != j && d.contains_polyhedron(c) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.cells.iter().any(|c| c.contains_point(x))
    }

    /// Support containment tested cell by cell. Sufficient when every cell
    /// of `self` lies inside a single cell of `other`, which holds for the
    /// complexes compared in this crate; otherwise falls back to sampling
    /// the vertices and interior points of the cells of `self`.
    pub fn support_subset_of(&self, other: &GRatPolyComplex) -> bool {
        self.cells.iter().all(|c| {
            other.cells.iter().any(|d| d.contains_polyhedron(c))
                || (c.vertices().iter().all(|v| other.contains_point(v))
                    && other.contains_point(&c.interior_point())
                    && other.covers(c))
        })
    }

    fn covers(&self, c: &Polyhedron) -> bool {
        let pieces: Vec<Polyhedron> = self
            .cells
            .iter()
            .filter_map(|d| d.intersection(c))
            .collect();
        match c.dim() {
            0 => !pieces.is_empty(),
            1 => covers_segment(c, &pieces),
            _ => {
                // higher-dimensional cells: probe a fixed point set
                let full: Vec<&Polyhedron> = pieces.iter().filter(|p| p.dim() == c.dim()).collect();
                !full.is_empty()
                    && probe_points(c)
                        .iter()
                        .all(|p| full.iter().any(|q| q.contains_point(p)))
            }
        }
    }

    pub fn support_eq(&self, other: &GRatPolyComplex) -> bool {
        self.rank == other.rank && self.support_subset_of(other) && other.support_subset_of(self)
    }

    /// Recession fan: the cones generated by the rays of each cell.
    pub fn recession_fan(&self) -> GRatPolyComplex {
        let zero = vec![Rational::zero(); self.rank];
        GRatPolyComplex::new(
            self.rank,
            self.cells
                .iter()
                .map(|c| Polyhedron::new(self.rank, vec![zero.clone()], c.rays().to_vec()))
                .collect(),
        )
    }

    pub fn map_linear(&self, rows: &[Vec<Rational>]) -> GRatPolyComplex {
        GRatPolyComplex::new(
            rows.len(),
            self.cells.iter().map(|c| c.map_linear(rows)).collect(),
        )
    }
}

/// Exact covering test for a one-dimensional cell by closed pieces of it.
fn covers_segment(c: &Polyhedron, pieces: &[Polyhedron]) -> bool {
    let v0 = &c.vertices()[0];
    let dir: Vec<Rational> = if c.vertices().len() > 1 {
        c.vertices()[1].iter().zip(v0).map(|(a, b)| a - b).collect()
    } else {
        c.rays()[0].to_rational()
    };
    let param = |x: &[Rational]| -> Rational {
        let d: Vec<Rational> = x.iter().zip(v0).map(|(a, b)| a - b).collect();
        linalg::dot(&dir, &d) / linalg::dot(&dir, &dir)
    };
    // (lower, upper) with None meaning unbounded
    let range = |p: &Polyhedron| -> (Option<Rational>, Option<Rational>) {
        let ts: Vec<Rational> = p.vertices().iter().map(|v| param(v)).collect();
        let mut lo = ts.iter().min().cloned();
        let mut hi = ts.iter().max().cloned();
        for r in p.rays() {
            let s = linalg::dot(&dir, &r.to_rational());
            if s.is_positive() {
                hi = None;
            } else if s.is_negative() {
                lo = None;
            }
        }
        (lo, hi)
    };
    let (target_lo, target_hi) = range(c);
    let mut iv: Vec<(Option<Rational>, Option<Rational>)> = pieces.iter().map(range).collect();
    iv.sort_by(|a, b| match (&a.0, &b.0) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, _) => std::cmp::Ordering::Less,
        (_, None) => std::cmp::Ordering::Greater,
        (Some(x), Some(y)) => x.cmp(y),
    });
    // sweep from the lower end of c
    let mut reach: Option<Option<Rational>> = None;
    for (lo, hi) in iv {
        let starts_ok = match (&reach, &lo, &target_lo) {
            (None, None, _) => true,
            (None, Some(l), Some(t)) => l <= t,
            (None, Some(_), None) => false,
            (Some(None), _, _) => return true,
            (Some(Some(_)), None, _) => true,
            (Some(Some(r)), Some(l), _) => l <= r,
        };
        if !starts_ok {
            return false;
        }
        reach = Some(match (reach.take(), hi) {
            (_, None) => None,
            (None, Some(h)) => Some(h),
            (Some(None), _) => None,
            (Some(Some(r)), Some(h)) => Some(if h > r { h } else { r }),
        });
    }
    match (reach, target_hi) {
        (Some(None), _) => true,
        (Some(Some(r)), Some(t)) => r >= t,
        _ => false,
    }
}

/// A deterministic set of points spread over a polyhedron.
fn probe_points(c: &Polyhedron) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = c.vertices().to_vec();
    let center = c.interior_point();
    out.push(center.clone());
    for v in c.vertices() {
        out.push(
            v.iter()
                .zip(&center)
                .map(|(a, b)| (a + b) / int(2))
                .collect(),
        );
    }
    for r in c.rays() {
        for k in [1, 3, 10] {
            out.push(
                center
                    .iter()
                    .zip(&r.0)
                    .map(|(a, b)| a + int(*b * k))
                    .collect(),
            );
        }
    }
    out
}

impl fmt::Display for GRatPolyComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "complex {}", self.rank)?;
        for c in &self.cells {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valfield::rat;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn segment_hrep() {
        let s = Polyhedron::new(2, vec![q(&[0, 0]), q(&[2, 2])], vec![]);
        assert!(s.contains_point(&q(&[1, 1])));
        assert!(!s.contains_point(&q(&[1, 0])));
        assert!(!s.contains_point(&q(&[3, 3])));
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn redundant_generators_dropped() {
        let p = Polyhedron::new(
            2,
            vec![q(&[0, 0]), q(&[1, 0])],
            vec![LatticeVec(vec![1, 0])],
        );
        assert_eq!(p.vertices(), &[q(&[0, 0])]);
        assert_eq!(p.rays().len(), 1);
    }

    #[test]
    fn hrep_round_trip() {
        let p = Polyhedron::new(
            2,
            vec![q(&[1, 1])],
            vec![LatticeVec(vec![1, 0]), LatticeVec(vec![0, 1])],
        );
        let back = Polyhedron::from_hrep(2, &p.hrep().ineqs, &p.hrep().eqs).unwrap();
        assert_eq!(p, back);
        let line = Polyhedron::new(
            2,
            vec![q(&[0, 0])],
            vec![LatticeVec(vec![1, 1]), LatticeVec(vec![-1, -1])],
        );
        let back = Polyhedron::from_hrep(2, &line.hrep().ineqs, &line.hrep().eqs).unwrap();
        assert_eq!(line, back);
        assert!(line.contains_point(&[rat(-7, 2), rat(-7, 2)]));
    }

    #[test]
    fn intersections() {
        let a = Polyhedron::new(2, vec![q(&[0, 0])], vec![LatticeVec(vec![1, 0])]);
        let b = Polyhedron::new(2, vec![q(&[3, 0])], vec![LatticeVec(vec![-1, 0])]);
        let i = a.intersection(&b).unwrap();
        assert_eq!(i, Polyhedron::new(2, vec![q(&[0, 0]), q(&[3, 0])], vec![]));
        let c = Polyhedron::new(2, vec![q(&[0, 1])], vec![LatticeVec(vec![1, 0])]);
        assert!(a.intersection(&c).is_none());
    }

    #[test]
    fn support_equality_across_subdivisions() {
        let whole =
            GRatPolyComplex::new(1, vec![Polyhedron::new(1, vec![q(&[0]), q(&[4])], vec![])]);
        let split = GRatPolyComplex::new(
            1,
            vec![
                Polyhedron::new(1, vec![q(&[0]), q(&[1])], vec![]),
                Polyhedron::new(1, vec![q(&[1]), q(&[4])], vec![]),
            ],
        );
        assert!(whole.support_eq(&split));
        let short =
            GRatPolyComplex::new(1, vec![Polyhedron::new(1, vec![q(&[0]), q(&[3])], vec![])]);
        assert!(!whole.support_eq(&short));
    }
}
