//! Points of the extended tropicalization `Trop(Y) = ⊔ N(σ)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::polyhedra::{quotient_projection, DualMonoid, Fan, LatticeVec};
use crate::valfield::{fmt_rational, int, ExtRational, PuiseuxScalar, Rational};

/// A monoid homomorphism `S_chart → R̄`, stored as its values on the
/// Hilbert basis of the chart, together with the derived stratum cone and
/// canonical coordinates on `N(stratum)`.
#[derive(Clone, Debug)]
pub struct ExtendedPoint {
    fan: Arc<Fan>,
    chart: Vec<usize>,
    monoid: Arc<DualMonoid>,
    values: Vec<ExtRational>,
    stratum: Vec<usize>,
    coords: Vec<Rational>,
}

fn sorted(idx: &[usize]) -> Vec<usize> {
    let mut v = idx.to_vec();
    v.sort();
    v.dedup();
    v
}

impl ExtendedPoint {
    /// A point given by its stratum and coordinates on `N(stratum)`,
    /// expressed in the chart `chart ⊇ stratum`.
    pub fn new(
        fan: Arc<Fan>,
        chart: &[usize],
        stratum: &[usize],
        coords: Vec<Rational>,
    ) -> Result<ExtendedPoint> {
        let chart = sorted(chart);
        let stratum = sorted(stratum);
        if !fan.has_cone(&chart) {
            return Err(Error::ChartMismatch(format!(
                "{chart:?} is not a cone of the fan"
            )));
        }
        if !stratum.iter().all(|i| chart.contains(i)) || !fan.has_cone(&stratum) {
            return Err(Error::ChartMismatch(format!(
                "stratum {stratum:?} is not a face of chart {chart:?}"
            )));
        }
        let perp = fan.cone(&stratum).perp_basis();
        if coords.len() != perp.len() {
            return Err(Error::MalformedPoint(format!(
                "stratum {stratum:?} has {} coordinates, got {}",
                perp.len(),
                coords.len()
            )));
        }
        let monoid = fan.monoid(&chart)?;
        let mut p = ExtendedPoint {
            fan,
            chart,
            monoid,
            values: Vec::new(),
            stratum,
            coords,
        };
        p.values = p
            .monoid
            .basis()
            .iter()
            .map(|u| p.value_on(u))
            .collect::<Result<_>>()?;
        Ok(p)
    }

    /// A point of the dense torus `N_R`.
    pub fn torus(fan: Arc<Fan>, chart: &[usize], v: Vec<Rational>) -> Result<ExtendedPoint> {
        ExtendedPoint::new(fan, chart, &[], v)
    }

    /// Builds a point from values on the chart's Hilbert basis, inferring
    /// the stratum and checking that the values define a homomorphism.
    pub fn from_values(
        fan: Arc<Fan>,
        chart: &[usize],
        values: Vec<ExtRational>,
    ) -> Result<ExtendedPoint> {
        let chart = sorted(chart);
        let monoid = fan.monoid(&chart)?;
        let basis = monoid.basis();
        if values.len() != basis.len() {
            return Err(Error::MalformedPoint(format!(
                "expected {} values, got {}",
                basis.len(),
                values.len()
            )));
        }
        let finite: Vec<usize> = (0..basis.len())
            .filter(|&i| values[i].is_finite())
            .collect();
        // the stratum: rays of the chart orthogonal to every finite element
        let stratum: Vec<usize> = chart
            .iter()
            .copied()
            .filter(|&r| finite.iter().all(|&i| basis[i].dot(&fan.rays()[r]) == 0))
            .collect();
        let cone = fan.cone(&stratum);
        if !fan.has_cone(&stratum) {
            return Err(Error::MalformedPoint(
                "finite values do not cut out a face".into(),
            ));
        }
        for (i, u) in basis.iter().enumerate() {
            let in_perp = cone.rays().iter().all(|r| r.dot(u) == 0);
            if in_perp != values[i].is_finite() {
                return Err(Error::MalformedPoint(format!(
                    "value of {u} must be {} on stratum {stratum:?}",
                    if in_perp { "finite" } else { "inf" }
                )));
            }
        }
        // solve ⟨u_i, v⟩ = value_i over the finite elements
        let n = fan.rank();
        let rows: Vec<Vec<Rational>> = finite.iter().map(|&i| basis[i].to_rational()).collect();
        let rhs: Vec<Rational> = finite
            .iter()
            .map(|&i| values[i].as_finite().unwrap().clone())
            .collect();
        let Some(v) = linalg::solve(&rows, &rhs, n) else {
            return Err(Error::MalformedPoint(
                "values violate a monoid relation".into(),
            ));
        };
        let coords: Vec<Rational> = cone.perp_basis().iter().map(|l| l.dot_q(&v)).collect();
        Ok(ExtendedPoint {
            fan,
            chart,
            monoid,
            values,
            stratum,
            coords,
        })
    }

    /// Tropicalizes a point of the affine chart `U_chart` given by the values
    /// `y_u = χ^u(y)` of the chart's Hilbert-basis characters.
    pub fn trop_point(
        fan: Arc<Fan>,
        chart: &[usize],
        y: &[PuiseuxScalar],
    ) -> Result<ExtendedPoint> {
        ExtendedPoint::from_values(fan, chart, y.iter().map(|c| c.valuation()).collect())
    }

    /// Tropicalizes a point given by a function computing the valuation of
    /// any character regular on the chart.
    pub fn from_characters(
        fan: Arc<Fan>,
        chart: &[usize],
        val: impl Fn(&LatticeVec) -> ExtRational,
    ) -> Result<ExtendedPoint> {
        let chart = sorted(chart);
        let monoid = fan.monoid(&chart)?;
        let values = monoid.basis().iter().map(val).collect();
        ExtendedPoint::from_values(fan, &chart, values)
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn chart(&self) -> &[usize] {
        &self.chart
    }

    pub fn monoid(&self) -> &DualMonoid {
        &self.monoid
    }

    pub fn values(&self) -> &[ExtRational] {
        &self.values
    }

    pub fn stratum(&self) -> &[usize] {
        &self.stratum
    }

    /// Coordinates on `N(stratum)` in its canonical basis.
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// `dim N(σ)` of the stratum.
    pub fn stratum_index(&self) -> usize {
        self.coords.len()
    }

    pub fn is_torus_point(&self) -> bool {
        self.stratum.is_empty()
    }

    /// `φ_p(u)` for any `u ∈ τ^∨` (τ the stratum): finite exactly on `τ^⊥`.
    pub fn value_on(&self, u: &LatticeVec) -> Result<ExtRational> {
        let cone = self.fan.cone(&self.stratum);
        let mut in_perp = true;
        for r in cone.rays() {
            match r.dot(u) {
                0 => {}
                x if x > 0 => in_perp = false,
                _ => {
                    return Err(Error::Domain(format!(
                        "character {u} is not regular near stratum {:?}",
                        self.stratum
                    )));
                }
            }
        }
        if !in_perp {
            return Ok(ExtRational::Infinity);
        }
        let perp = cone.perp_basis();
        let n = self.fan.rank();
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|r| perp.iter().map(|l| int(l[r])).collect())
            .collect();
        let a =
            linalg::solve(&cols, &u.to_rational(), perp.len()).expect("u lies in the perp lattice");
        Ok(ExtRational::Finite(
            a.iter().zip(&self.coords).map(|(x, c)| x * c).sum(),
        ))
    }

    /// `φ_p(u)` for `u` in the chart monoid.
    pub fn value_of(&self, u: &LatticeVec) -> Result<ExtRational> {
        if !self.monoid.contains(u) {
            return Err(Error::Domain(format!(
                "exponent {u} is not in the chart monoid"
            )));
        }
        self.value_on(u)
    }

    /// The same point expressed in another chart containing its stratum.
    pub fn in_chart(&self, chart: &[usize]) -> Result<ExtendedPoint> {
        ExtendedPoint::new(self.fan.clone(), chart, &self.stratum, self.coords.clone())
    }

    /// Equality as monoid homomorphisms after restriction to the common
    /// face of the two charts.
    pub fn glue_equal(&self, other: &ExtendedPoint) -> bool {
        if *self.fan != *other.fan {
            return false;
        }
        let common: Vec<usize> = self
            .chart
            .iter()
            .copied()
            .filter(|i| other.chart.contains(i))
            .collect();
        let inside = |p: &ExtendedPoint| p.stratum.iter().all(|i| common.contains(i));
        if !inside(self) || !inside(other) {
            return false;
        }
        let Ok(m) = self.fan.monoid(&common) else {
            return false;
        };
        m.basis()
            .iter()
            .all(|u| match (self.value_on(u), other.value_on(u)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            })
    }

    /// Truncated-cylinder membership: `p` lies over the open box `U` of
    /// `N(σ)` and every chart generator of `S_σ` outside `σ^⊥` exceeds `n`.
    pub fn in_cylinder(
        &self,
        sigma: &[usize],
        lo: &[Rational],
        hi: &[Rational],
        n: &Rational,
    ) -> Result<bool> {
        let sigma = sorted(sigma);
        if !self.fan.has_cone(&sigma) || !self.stratum.iter().all(|i| sigma.contains(i)) {
            return Err(Error::Domain(format!(
                "stratum {:?} is not a face of {sigma:?}",
                self.stratum
            )));
        }
        let tau_cone = self.fan.cone(&self.stratum);
        let sigma_cone = self.fan.cone(&sigma);
        let proj = quotient_projection(&tau_cone, &sigma_cone)?;
        let image = linalg::mat_vec(&proj, &self.coords);
        if image.len() != lo.len() || image.len() != hi.len() {
            return Err(Error::Domain(format!(
                "box has rank {}, quotient has rank {}",
                lo.len(),
                image.len()
            )));
        }
        let in_box = image
            .iter()
            .zip(lo.iter().zip(hi))
            .all(|(x, (a, b))| a < x && x < b);
        if !in_box {
            return Ok(false);
        }
        let m = self.fan.monoid(&sigma)?;
        let bound = ExtRational::Finite(n.clone());
        for u in &m.basis()[..m.pointed_len()] {
            if self.value_on(u)? <= bound {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Writes the point as values on the chart basis.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

impl PartialEq for ExtendedPoint {
    fn eq(&self, other: &Self) -> bool {
        self.glue_equal(other)
    }
}

impl fmt::Display for ExtendedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(fmt_rational).collect();
        write!(
            f,
            "stratum {:?} coords ({}) values {}",
            self.stratum,
            c.join(", "),
            self.describe()
        )
    }
}

/// The coordinates of a torus point in `N(0) = N_R`.
pub fn torus_coords(p: &ExtendedPoint) -> Option<&[Rational]> {
    if p.is_torus_point() {
        Some(p.coords())
    } else {
        None
    }
}
