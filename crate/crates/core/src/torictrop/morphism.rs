//! Extended monoid maps `S̄_σ' → S̄_σ` and the induced maps of extended
//! tropicalizations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::polyhedra::{Fan, LatticeVec};
use crate::valfield::{int, ExtRational, Rational};

use super::point::ExtendedPoint;

/// Pullback on characters for an equivariant map from the chart
/// `source_chart` of `source` into the chart `target_chart` of `target`.
/// `table[i]` is the image of the `i`-th Hilbert basis element of the
/// target chart, `None` meaning the absorbing element `∞`.
#[derive(Clone, Debug)]
pub struct ExtendedMonoidMap {
    source: Arc<Fan>,
    source_chart: Vec<usize>,
    target: Arc<Fan>,
    target_chart: Vec<usize>,
    table: Vec<Option<LatticeVec>>,
}

fn sorted(idx: &[usize]) -> Vec<usize> {
    let mut v = idx.to_vec();
    v.sort();
    v.dedup();
    v
}

impl ExtendedMonoidMap {
    /// Validates a pullback table: its finite part must be the face pattern
    /// of some face of the target chart, land in the source monoid and be
    /// the restriction of a linear map.
    pub fn from_table(
        source: Arc<Fan>,
        source_chart: &[usize],
        target: Arc<Fan>,
        target_chart: &[usize],
        table: Vec<Option<LatticeVec>>,
    ) -> Result<ExtendedMonoidMap> {
        let source_chart = sorted(source_chart);
        let target_chart = sorted(target_chart);
        let sm = source.monoid(&source_chart)?;
        let tm = target.monoid(&target_chart)?;
        let basis = tm.basis();
        if table.len() != basis.len() {
            return Err(Error::ChartMismatch(format!(
                "table has {} entries, chart basis {}",
                table.len(),
                basis.len()
            )));
        }
        let finite: Vec<usize> = (0..basis.len()).filter(|&i| table[i].is_some()).collect();
        let face: Vec<usize> = target_chart
            .iter()
            .copied()
            .filter(|&r| finite.iter().all(|&i| basis[i].dot(&target.rays()[r]) == 0))
            .collect();
        for (i, u) in basis.iter().enumerate() {
            let in_perp = face.iter().all(|&r| u.dot(&target.rays()[r]) == 0);
            if in_perp != table[i].is_some() {
                return Err(Error::ChartMismatch(format!(
                    "pullback of {u} does not follow a face pattern"
                )));
            }
        }
        for img in table.iter().flatten() {
            if img.rank() != source.rank() || !sm.contains(img) {
                return Err(Error::ChartMismatch(format!(
                    "pullback {img} is not regular on the source chart"
                )));
            }
        }
        // linearity: one matrix B with B·u = image for every finite basis element
        let rows: Vec<Vec<Rational>> = finite.iter().map(|&i| basis[i].to_rational()).collect();
        for k in 0..source.rank() {
            let rhs: Vec<Rational> = finite
                .iter()
                .map(|&i| int(table[i].as_ref().unwrap()[k]))
                .collect();
            if linalg::solve(&rows, &rhs, target.rank()).is_none() {
                return Err(Error::ChartMismatch(
                    "pullback table is not additive".into(),
                ));
            }
        }
        Ok(ExtendedMonoidMap {
            source,
            source_chart,
            target,
            target_chart,
            table,
        })
    }

    /// The map induced by a lattice map `A: N → N'` (rows of `a` indexed by
    /// the target) carrying the source chart into the target chart.
    pub fn from_lattice_map(
        source: Arc<Fan>,
        source_chart: &[usize],
        target: Arc<Fan>,
        target_chart: &[usize],
        a: &[Vec<i64>],
    ) -> Result<ExtendedMonoidMap> {
        let source_chart = sorted(source_chart);
        let target_chart = sorted(target_chart);
        if a.len() != target.rank() || a.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::ChartMismatch(format!(
                "matrix shape does not match ranks {} -> {}",
                source.rank(),
                target.rank()
            )));
        }
        let tcone = target.cone(&target_chart);
        for &r in &source_chart {
            let img: Vec<Rational> = a
                .iter()
                .map(|row| int(LatticeVec(row.clone()).dot(&source.rays()[r])))
                .collect();
            if !tcone.contains(&img) {
                return Err(Error::ChartMismatch(format!(
                    "ray {} is not mapped into the target chart",
                    source.rays()[r]
                )));
            }
        }
        let tm = target.monoid(&target_chart)?;
        let table = tm
            .basis()
            .iter()
            .map(|u| {
                Some(LatticeVec(
                    (0..source.rank())
                        .map(|j| (0..target.rank()).map(|i| a[i][j] * u[i]).sum())
                        .collect(),
                ))
            })
            .collect();
        ExtendedMonoidMap::from_table(source, &source_chart, target, &target_chart, table)
    }

    pub fn identity(fan: Arc<Fan>, chart: &[usize]) -> Result<ExtendedMonoidMap> {
        let n = fan.rank();
        let id: Vec<Vec<i64>> = (0..n).map(|i| LatticeVec::unit(n, i).0).collect();
        ExtendedMonoidMap::from_lattice_map(fan.clone(), chart, fan, chart, &id)
    }

    /// The inclusion of the orbit closure `V(τ)` into the chart `chart ⊇ τ`.
    /// The source is the star fan of `τ` in `N(τ)`, in canonical quotient
    /// coordinates.
    pub fn orbit_closure_inclusion(
        fan: Arc<Fan>,
        tau: &[usize],
        chart: &[usize],
    ) -> Result<ExtendedMonoidMap> {
        let tau = sorted(tau);
        let chart = sorted(chart);
        if !fan.has_cone(&tau) || !fan.has_cone(&chart) || !tau.iter().all(|i| chart.contains(i)) {
            return Err(Error::ChartMismatch(format!(
                "{tau:?} is not a face of the chart {chart:?}"
            )));
        }
        let perp = fan.cone(&tau).perp_basis();
        let (star, extra) = fan.star_fan(&tau)?;
        let source = Arc::new(star);
        let source_chart = fan.relabel_star(&tau, &extra, &chart);
        let tm = fan.monoid(&chart)?;
        let n = fan.rank();
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|r| perp.iter().map(|l| int(l[r])).collect())
            .collect();
        let tcone = fan.cone(&tau);
        let table = tm
            .basis()
            .iter()
            .map(|u| {
                if tcone.rays().iter().all(|r| r.dot(u) == 0) {
                    let a = linalg::solve(&cols, &u.to_rational(), perp.len())
                        .expect("u lies in the perp lattice");
                    Some(LatticeVec(
                        a.iter()
                            .map(|x| x.to_integer().try_into().expect("small"))
                            .collect(),
                    ))
                } else {
                    None
                }
            })
            .collect();
        ExtendedMonoidMap::from_table(source, &source_chart, fan, &chart, table)
    }

    pub fn source(&self) -> &Arc<Fan> {
        &self.source
    }

    pub fn source_chart(&self) -> &[usize] {
        &self.source_chart
    }

    pub fn target(&self) -> &Arc<Fan> {
        &self.target
    }

    pub fn target_chart(&self) -> &[usize] {
        &self.target_chart
    }

    pub fn table(&self) -> &[Option<LatticeVec>] {
        &self.table
    }

    /// Pullback of an arbitrary element of the target chart monoid.
    pub fn apply(&self, u: &LatticeVec) -> Result<Option<LatticeVec>> {
        let tm = self.target.monoid(&self.target_chart)?;
        let Some(c) = tm.decompose(u) else {
            return Err(Error::Domain(format!(
                "{u} is not in the target chart monoid"
            )));
        };
        let mut acc = LatticeVec::zero(self.source.rank());
        for (k, img) in c.iter().zip(&self.table) {
            if *k == 0 {
                continue;
            }
            match img {
                None => return Ok(None),
                Some(v) => acc = &acc + &v.scale(*k as i64),
            }
        }
        Ok(Some(acc))
    }

    /// `self ∘ first`, i.e. first apply `first`, then `self`.
    pub fn compose(&self, first: &ExtendedMonoidMap) -> Result<ExtendedMonoidMap> {
        if *first.target != *self.source || first.target_chart != self.source_chart {
            return Err(Error::ChartMismatch("maps are not composable".into()));
        }
        let mut table = Vec::with_capacity(self.table.len());
        for img in &self.table {
            table.push(match img {
                None => None,
                Some(u) => first.apply(u)?,
            });
        }
        ExtendedMonoidMap::from_table(
            first.source.clone(),
            &first.source_chart,
            self.target.clone(),
            &self.target_chart,
            table,
        )
    }
}

/// `Trop(φ)`: composes the homomorphism of `p` with the pullback.
pub fn trop_morphism(phi: &ExtendedMonoidMap, p: &ExtendedPoint) -> Result<ExtendedPoint> {
    if **p.fan() != *phi.source {
        return Err(Error::ChartMismatch(
            "point lives on a different fan".into(),
        ));
    }
    if !p.stratum().iter().all(|i| phi.source_chart.contains(i)) {
        return Err(Error::ChartMismatch(format!(
            "stratum {:?} is not in the source chart {:?}",
            p.stratum(),
            phi.source_chart
        )));
    }
    let mut values = Vec::with_capacity(phi.table.len());
    for img in &phi.table {
        values.push(match img {
            None => ExtRational::Infinity,
            Some(u) => p.value_on(u)?,
        });
    }
    ExtendedPoint::from_values(phi.target.clone(), &phi.target_chart, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valfield::int;

    fn fin(x: i64) -> ExtRational {
        ExtRational::Finite(int(x))
    }

    #[test]
    fn identity_fixes_points() {
        let a2 = Arc::new(Fan::affine_space(2));
        let id = ExtendedMonoidMap::identity(a2.clone(), &[0, 1]).unwrap();
        let p =
            ExtendedPoint::from_values(a2, &[0, 1], vec![ExtRational::Infinity, fin(1)]).unwrap();
        assert!(trop_morphism(&id, &p).unwrap().glue_equal(&p));
    }

    #[test]
    fn shear_map() {
        // (x, y) -> (x, xy) on points, i.e. v -> (a, a + b)
        let a2 = Arc::new(Fan::affine_space(2));
        let phi = ExtendedMonoidMap::from_lattice_map(
            a2.clone(),
            &[0, 1],
            a2.clone(),
            &[0, 1],
            &[vec![1, 0], vec![1, 1]],
        )
        .unwrap();
        let p = ExtendedPoint::torus(a2.clone(), &[0, 1], vec![int(2), int(5)]).unwrap();
        let q = trop_morphism(&phi, &p).unwrap();
        assert_eq!(q.values(), &[fin(2), fin(7)]);
        let p =
            ExtendedPoint::from_values(a2, &[0, 1], vec![ExtRational::Infinity, fin(1)]).unwrap();
        let q = trop_morphism(&phi, &p).unwrap();
        assert_eq!(q.values(), &[ExtRational::Infinity, ExtRational::Infinity]);
        assert_eq!(q.stratum_index(), 0);
    }

    #[test]
    fn orbit_closure_of_axis() {
        let a2 = Arc::new(Fan::affine_space(2));
        let inc = ExtendedMonoidMap::orbit_closure_inclusion(a2.clone(), &[0], &[0, 1]).unwrap();
        assert_eq!(inc.source().rank(), 1);
        let b =
            ExtendedPoint::torus(inc.source().clone(), inc.source_chart(), vec![int(4)]).unwrap();
        let img = trop_morphism(&inc, &b).unwrap();
        assert_eq!(img.values(), &[ExtRational::Infinity, fin(4)]);
    }

    #[test]
    fn bad_maps_rejected() {
        let a2 = Arc::new(Fan::affine_space(2));
        let r = ExtendedMonoidMap::from_lattice_map(
            a2.clone(),
            &[0, 1],
            a2.clone(),
            &[0, 1],
            &[vec![-1, 0], vec![0, 1]],
        );
        assert!(matches!(r, Err(Error::ChartMismatch(_))));
        let bad = ExtendedMonoidMap::from_table(
            a2.clone(),
            &[0, 1],
            a2.clone(),
            &[0, 1],
            vec![None, Some(LatticeVec(vec![0, 1]))],
        );
        assert!(bad.is_ok());
        let bad = ExtendedMonoidMap::from_table(
            a2.clone(),
            &[0, 1],
            a2,
            &[0, 1],
            vec![Some(LatticeVec(vec![-1, 0])), None],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn composition_is_functorial() {
        let a2 = Arc::new(Fan::affine_space(2));
        let f = ExtendedMonoidMap::from_lattice_map(
            a2.clone(),
            &[0, 1],
            a2.clone(),
            &[0, 1],
            &[vec![1, 0], vec![1, 1]],
        )
        .unwrap();
        let g = ExtendedMonoidMap::from_lattice_map(
            a2.clone(),
            &[0, 1],
            a2.clone(),
            &[0, 1],
            &[vec![2, 1], vec![0, 1]],
        )
        .unwrap();
        let gf = g.compose(&f).unwrap();
        for vals in [
            vec![fin(1), fin(2)],
            vec![ExtRational::Infinity, fin(3)],
            vec![fin(0), ExtRational::Infinity],
        ] {
            let p = ExtendedPoint::from_values(a2.clone(), &[0, 1], vals).unwrap();
            let lhs = trop_morphism(&gf, &p).unwrap();
            let rhs = trop_morphism(&g, &trop_morphism(&f, &p).unwrap()).unwrap();
            assert!(lhs.glue_equal(&rhs));
        }
    }
}
