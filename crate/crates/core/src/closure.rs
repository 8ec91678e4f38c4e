//! Extended tropicalization of the closure of a hypersurface in a toric
//! variety, one stratum `N(σ)` at a time.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg;
use crate::polyhedra::hilbert::section_of;
use crate::polyhedra::{Cone, Fan, GRatPolyComplex, LatticeVec, Polyhedron};
use crate::torictrop::ExtendedPoint;
use crate::tropvar::{self, trop_hypersurface};
use crate::valfield::{int, Rational};

/// Multiplies `f` by the smallest monomial moving every exponent into
/// `S_σ`. Only smooth cones have a unique such monomial (up to units).
pub fn chart_clear(f: &LaurentPoly, sigma: &Cone) -> Result<LaurentPoly> {
    if !sigma.is_smooth() {
        return Err(Error::Domain(
            "clearing denominators needs a smooth chart".into(),
        ));
    }
    if f.is_zero() {
        return Ok(f.clone());
    }
    let dual = section_of(sigma.rays(), sigma.rank());
    let mut u0 = LatticeVec::zero(sigma.rank());
    for (r, s) in sigma.rays().iter().zip(&dual) {
        let lo = f.exponents().iter().map(|u| u.dot(r)).min().unwrap();
        u0 = &u0 + &s.scale(-lo);
    }
    Ok(f.shift(&u0))
}

/// Terms of `g` with exponent in `τ^⊥`, written in the canonical basis of
/// `τ^⊥ ∩ M`; `None` when nothing survives.
pub fn orbit_restriction(g: &LaurentPoly, tau: &Cone) -> Result<Option<LaurentPoly>> {
    let perp = tau.perp_basis();
    let n = tau.rank();
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|r| perp.iter().map(|l| int(l[r])).collect())
        .collect();
    let mut terms = Vec::new();
    for (u, c) in g.terms() {
        let mut in_perp = true;
        for r in tau.rays() {
            match r.dot(u) {
                0 => {}
                x if x > 0 => in_perp = false,
                _ => {
                    return Err(Error::Domain(format!(
                        "exponent {u} is not regular along the orbit"
                    )))
                }
            }
        }
        if in_perp {
            let a = linalg::solve(&cols, &u.to_rational(), perp.len())
                .expect("u lies in the perp lattice");
            let a: Vec<i64> = a
                .iter()
                .map(|x| i64::try_from(x.to_integer()).expect("small exponent"))
                .collect();
            terms.push((LatticeVec(a), c.clone()));
        }
    }
    if terms.is_empty() {
        return Ok(None);
    }
    Ok(Some(
        LaurentPoly::from_terms(perp.len(), terms).with_mode(g.mode())?,
    ))
}

/// One stratum of the extended tropicalization.
#[derive(Clone, Debug)]
pub enum Stratum {
    Empty,
    /// The restriction vanishes: the closure contains the whole orbit.
    Full,
    Cells(GRatPolyComplex),
}

impl Stratum {
    fn from_restriction(r: Option<LaurentPoly>) -> Result<Stratum> {
        Ok(match r {
            None => Stratum::Full,
            Some(p) if p.num_terms() < 2 => Stratum::Empty,
            Some(p) => Stratum::Cells(trop_hypersurface(&p)?.complex),
        })
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Stratum::Empty)
    }

    /// The stratum as a complex in `N(σ)` of dimension `dim`.
    pub fn complex(&self, dim: usize) -> GRatPolyComplex {
        match self {
            Stratum::Empty => GRatPolyComplex::empty(dim),
            Stratum::Full => {
                let mut dirs = Vec::new();
                for i in 0..dim {
                    dirs.push(LatticeVec::unit(dim, i));
                    dirs.push(-&LatticeVec::unit(dim, i));
                }
                GRatPolyComplex::new(
                    dim,
                    vec![Polyhedron::new(dim, vec![vec![int(0); dim]], dirs)],
                )
            }
            Stratum::Cells(c) => c.clone(),
        }
    }
}

/// `Trop(X̄)` as a stratum complex for every cone of the fan.
#[derive(Clone, Debug)]
pub struct StratifiedTrop {
    fan: Arc<Fan>,
    strata: BTreeMap<Vec<usize>, Stratum>,
}

impl StratifiedTrop {
    /// Assembles strata read back from text; every cone needs exactly one.
    pub fn from_strata(
        fan: Arc<Fan>,
        strata: BTreeMap<Vec<usize>, Stratum>,
    ) -> Result<StratifiedTrop> {
        if strata.len() != fan.cones().len() || fan.cones().iter().any(|c| !strata.contains_key(c))
        {
            return domain("strata must be listed once for every cone of the fan");
        }
        for (c, s) in &strata {
            if let Stratum::Cells(x) = s {
                if x.rank() != fan.rank() - c.len() {
                    return domain(format!("stratum {c:?} has cells of the wrong rank"));
                }
            }
        }
        Ok(StratifiedTrop { fan, strata })
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn stratum(&self, cone: &[usize]) -> Option<&Stratum> {
        let mut k = cone.to_vec();
        k.sort();
        self.strata.get(&k)
    }

    /// Strata in the fan's cone order.
    pub fn strata(&self) -> impl Iterator<Item = (&Vec<usize>, &Stratum)> {
        self.fan.cones().iter().map(move |c| (c, &self.strata[c]))
    }

    /// The stratum complex of a cone in canonical `N(σ)` coordinates.
    pub fn complex(&self, cone: &[usize]) -> Option<GRatPolyComplex> {
        let dim = self.fan.rank() - cone.len();
        self.stratum(cone).map(|s| s.complex(dim))
    }

    pub fn contains(&self, p: &ExtendedPoint) -> bool {
        **p.fan() == *self.fan
            && self
                .complex(p.stratum())
                .is_some_and(|c| c.contains_point(p.coords()))
    }
}

impl fmt::Display for StratifiedTrop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, s) in self.strata() {
            let idx: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            match s {
                Stratum::Empty => writeln!(f, "stratum [{}] empty", idx.join(","))?,
                Stratum::Full => writeln!(f, "stratum [{}] full", idx.join(","))?,
                Stratum::Cells(c) => {
                    writeln!(f, "stratum [{}] cells {}", idx.join(","), c.cells().len())?;
                    for cell in c.cells() {
                        writeln!(f, "{cell}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Strata from one polynomial per maximal cone, each with exponents
/// already regular on its chart (`None` for the zero polynomial).
fn from_chart_polys(
    fan: Arc<Fan>,
    polys: &BTreeMap<Vec<usize>, Option<LaurentPoly>>,
) -> Result<StratifiedTrop> {
    let mut strata = BTreeMap::new();
    for tau in fan.cones() {
        let chart = fan
            .maximal_cones()
            .iter()
            .find(|m| tau.iter().all(|i| m.contains(i)))
            .expect("every cone lies in a maximal cone");
        let s = match &polys[chart] {
            None => Stratum::Full,
            Some(g) => Stratum::from_restriction(orbit_restriction(g, &fan.cone(tau))?)?,
        };
        strata.insert(tau.clone(), s);
    }
    Ok(StratifiedTrop { fan, strata })
}

/// Restriction polynomials for every stratum, without the oracle check.
pub fn extended_trop_unchecked(f: &LaurentPoly, fan: Arc<Fan>) -> Result<StratifiedTrop> {
    if f.is_zero() {
        return Err(Error::Domain("closure of the zero polynomial".into()));
    }
    if f.rank() != fan.rank() {
        return Err(Error::Domain(format!(
            "polynomial of rank {} on a fan of rank {}",
            f.rank(),
            fan.rank()
        )));
    }
    let mut polys = BTreeMap::new();
    for m in fan.maximal_cones() {
        polys.insert(m.clone(), Some(chart_clear(f, &fan.cone(m))?));
    }
    let mut st = from_chart_polys(fan, &polys)?;
    st.strata
        .insert(Vec::new(), Stratum::from_restriction(Some(f.clone()))?);
    Ok(st)
}

/// `Trop(X̄)` stratum by stratum, with every boundary stratum checked
/// against the closure oracle.
pub fn extended_trop(f: &LaurentPoly, fan: Arc<Fan>) -> Result<StratifiedTrop> {
    let st = extended_trop_unchecked(f, fan.clone())?;
    for (tau, s) in st.strata() {
        if tau.is_empty() {
            continue;
        }
        let d = fan.rank() - tau.len();
        let mut expect_in: Vec<Vec<Rational>> = Vec::new();
        let mut expect_out: Vec<Vec<Rational>> = Vec::new();
        let mut probes: Vec<Vec<Rational>> = vec![vec![int(0); d]];
        for i in 0..d {
            for sgn in [1, -1] {
                let mut e = vec![int(0); d];
                e[i] = int(sgn);
                probes.push(e);
            }
        }
        match s {
            Stratum::Empty => expect_out = probes,
            Stratum::Full => expect_in = probes,
            Stratum::Cells(t) => {
                for cell in t.cells() {
                    expect_in.extend(cell.vertices().iter().cloned());
                    expect_in.push(cell.interior_point());
                }
                for p in probes {
                    if t.contains_point(&p) {
                        expect_in.push(p);
                    } else {
                        expect_out.push(p);
                    }
                }
            }
        }
        for (w, want) in expect_in
            .iter()
            .map(|w| (w, true))
            .chain(expect_out.iter().map(|w| (w, false)))
        {
            if closure_oracle(f, &fan, tau, w)? != want {
                return Err(Error::StrataMismatch(format!(
                    "stratum {tau:?} at {}: restriction says {want}, sampled points disagree",
                    crate::polyhedra::lattice::fmt_point(w)
                )));
            }
        }
    }
    Ok(st)
}

/// Whether `w ∈ N(τ)` is a limit of torus points of `trop(f)` along a
/// direction `r` in the relative interior of `τ`. Far out along `r` only the
/// terms minimizing `⟨u, r⟩` matter, and shifting within `span(τ)` leaves
/// their common part fixed, so `w` is a limit exactly when those terms,
/// restricted to the slice `w̃ + span(τ)`, still have a tropical zero.
pub fn closure_oracle(f: &LaurentPoly, fan: &Fan, tau: &[usize], w: &[Rational]) -> Result<bool> {
    let cone = fan.cone(tau);
    let perp = cone.perp_basis();
    let n = fan.rank();
    if w.len() != perp.len() {
        return Err(Error::Domain(format!(
            "expected {} coordinates",
            perp.len()
        )));
    }
    let rows: Vec<Vec<Rational>> = perp.iter().map(|l| l.to_rational()).collect();
    let lift = linalg::solve(&rows, w, n).expect("perp basis is independent");
    if tau.is_empty() {
        return Ok(tropvar::contains(f, &lift));
    }
    let rays: Vec<&LatticeVec> = tau.iter().map(|&i| &fan.rays()[i]).collect();
    let k = tau.len();
    for code in 0..3usize.pow(k as u32) {
        let mut r = LatticeVec::zero(n);
        let mut c = code;
        for ray in &rays {
            let weight = (c % 3) as i64 + 1;
            c /= 3;
            r = &r + &ray.scale(weight);
        }
        let lo = f.terms().map(|(u, _)| u.dot(&r)).min().unwrap_or(0);
        // slice exponents and valuations of the dominating terms
        let mut classes: BTreeMap<Vec<i64>, Vec<Rational>> = BTreeMap::new();
        for (u, a) in f.terms().filter(|(u, _)| u.dot(&r) == lo) {
            let e = rays.iter().map(|ray| u.dot(ray)).collect();
            let v = a.valuation().as_finite().cloned().unwrap() + u.dot_q(&lift);
            classes.entry(e).or_default().push(v);
        }
        let tie = |vs: &Vec<Rational>| {
            let m = vs.iter().min().unwrap();
            vs.iter().filter(|x| *x == m).count() >= 2
        };
        if classes.len() >= 2 || classes.values().any(tie) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Checks `Trop(X̄) ∩ Trop(V(σ0)) = Trop(X̄ ∩ V(σ0))`: the strata over cones
/// containing `σ0` against the strata of the restricted polynomial on the
/// star fan. The restriction is taken chart by chart and is not cleared
/// again on the orbit closure.
pub fn invariant_intersection_check(
    f: &LaurentPoly,
    fan: Arc<Fan>,
    sigma0: &[usize],
) -> Result<bool> {
    let mut s0 = sigma0.to_vec();
    s0.sort();
    let lhs = extended_trop(f, fan.clone())?;
    let (star, extra) = fan.star_fan(&s0)?;
    let star = Arc::new(star);
    let c0 = fan.cone(&s0);
    let mut polys = BTreeMap::new();
    for m in fan
        .maximal_cones()
        .iter()
        .filter(|m| s0.iter().all(|i| m.contains(i)))
    {
        let g = chart_clear(f, &fan.cone(m))?;
        polys.insert(
            fan.relabel_star(&s0, &extra, m),
            orbit_restriction(&g, &c0)?,
        );
    }
    let rhs = from_chart_polys(star.clone(), &polys)?;
    let l0 = c0.perp_basis();
    let n = fan.rank();
    for tau in fan.star(&s0) {
        let tau2 = fan.relabel_star(&s0, &extra, &tau);
        // express the star fan's quotient basis in the fan's quotient basis
        let lt = fan.cone(&tau).perp_basis();
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|r| lt.iter().map(|l| int(l[r])).collect())
            .collect();
        let mut t = Vec::new();
        for l in star.cone(&tau2).perp_basis() {
            let mut lifted = vec![int(0); n];
            for (a, b) in l.entries().iter().zip(&l0) {
                for (x, y) in lifted.iter_mut().zip(b.entries()) {
                    *x += int(a * y);
                }
            }
            t.push(linalg::solve(&cols, &lifted, lt.len()).expect("same lattice"));
        }
        let left = lhs.complex(&tau).expect("cone of the fan").map_linear(&t);
        let right = rhs.complex(&tau2).expect("cone of the star fan");
        let same_kind =
            lhs.stratum(&tau).unwrap().is_empty() == rhs.stratum(&tau2).unwrap().is_empty();
        if !same_kind || !left.support_eq(&right) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn clearing_denominators() {
        let a2 = Fan::affine_space(2);
        let orth = a2.cone(&[0, 1]);
        assert_eq!(
            chart_clear(&poly("x + y + 1"), &orth).unwrap(),
            poly("x + y + 1")
        );
        assert_eq!(
            chart_clear(&poly("x*y^-1 + 1"), &orth).unwrap(),
            poly("x + y")
        );
        let a1 = Fan::affine_space(1);
        assert_eq!(
            chart_clear(&poly("x^-1 + x"), &a1.cone(&[0])).unwrap(),
            poly("1 + x^2")
        );
        assert_eq!(
            chart_clear(&poly("x^2 + x*y"), &orth).unwrap(),
            poly("x + y")
        );
    }

    #[test]
    fn restrictions_to_orbits() {
        let a2 = Fan::affine_space(2);
        let g = poly("x + y + 1");
        let r = orbit_restriction(&g, &a2.cone(&[0])).unwrap().unwrap();
        assert_eq!(r, "x + 1".parse().unwrap());
        let r = orbit_restriction(&poly("x + y"), &a2.cone(&[0]))
            .unwrap()
            .unwrap();
        assert!(r.is_monomial());
        let r = orbit_restriction(&g, &a2.cone(&[0, 1])).unwrap().unwrap();
        assert!(r.is_constant());
        assert!(orbit_restriction(&poly("x + y"), &a2.cone(&[0, 1]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn line_in_the_plane() {
        let a2 = Arc::new(Fan::affine_space(2));
        let st = extended_trop(&poly("x + y + 1"), a2.clone()).unwrap();
        assert_eq!(st.complex(&[]).unwrap().maximal_cells().len(), 3);
        let pt = GRatPolyComplex::new(1, vec![Polyhedron::point(q(&[0]))]);
        assert!(st.complex(&[0]).unwrap().support_eq(&pt));
        assert!(st.complex(&[1]).unwrap().support_eq(&pt));
        assert!(st.stratum(&[0, 1]).unwrap().is_empty());
        let b = ExtendedPoint::new(a2, &[0, 1], &[0], q(&[0])).unwrap();
        assert!(st.contains(&b));
    }

    #[test]
    fn line_in_projective_plane() {
        let p2 = Arc::new(Fan::projective_space(2));
        let st = extended_trop(&poly("x + y + 1"), p2.clone()).unwrap();
        for ray in 0..3 {
            let c = st.complex(&[ray]).unwrap();
            assert_eq!(c.cells().len(), 1, "ray {ray}");
            assert_eq!(c.dim(), Some(0));
        }
        for m in p2.maximal_cones() {
            assert!(st.stratum(m).unwrap().is_empty());
        }
    }

    #[test]
    fn diagonal_through_the_origin() {
        let a2 = Arc::new(Fan::affine_space(2));
        let st = extended_trop(&poly("x + y"), a2).unwrap();
        assert!(st.stratum(&[0]).unwrap().is_empty());
        assert!(st.stratum(&[1]).unwrap().is_empty());
        assert!(matches!(st.stratum(&[0, 1]).unwrap(), Stratum::Full));
        assert_eq!(st.complex(&[0, 1]).unwrap().cells().len(), 1);
    }

    #[test]
    fn oracle_examples() {
        let a2 = Fan::affine_space(2);
        let f = poly("x + y + 1");
        assert!(closure_oracle(&f, &a2, &[0], &q(&[0])).unwrap());
        assert!(!closure_oracle(&f, &a2, &[0], &q(&[1])).unwrap());
        assert!(!closure_oracle(&f, &a2, &[0, 1], &[]).unwrap());
        assert!(closure_oracle(&poly("x + y^2"), &a2, &[0, 1], &[]).unwrap());
    }

    #[test]
    fn invariant_intersections() {
        let a2 = Arc::new(Fan::affine_space(2));
        assert!(invariant_intersection_check(&poly("x + y + 1"), a2.clone(), &[0]).unwrap());
        assert!(invariant_intersection_check(&poly("x + y + 1"), a2.clone(), &[0, 1]).unwrap());
        assert!(invariant_intersection_check(&poly("x*y - t"), a2.clone(), &[0]).unwrap());
        assert!(invariant_intersection_check(&poly("x + y"), a2, &[1]).unwrap());
        let p2 = Arc::new(Fan::projective_space(2));
        assert!(invariant_intersection_check(&poly("x + y + t"), p2, &[2]).unwrap());
    }

    #[test]
    fn singular_charts_rejected() {
        let f = Arc::new(
            Fan::new(
                2,
                vec![LatticeVec(vec![1, 0]), LatticeVec(vec![1, 2])],
                vec![vec![0, 1]],
            )
            .unwrap(),
        );
        assert!(extended_trop(&poly("x + y + 1"), f).is_err());
    }
}
