//! The tropicalized Cox quotient `Trop(Y') → Trop(Y)`.

use std::sync::Arc;

use crate::error::Result;
use crate::linalg;
use crate::polyhedra::{Fan, LatticeVec};
use crate::valfield::{int, Rational};

use super::morphism::ExtendedMonoidMap;
use super::point::ExtendedPoint;

/// The fan `Δ'` on `Z^{Δ(1)} ⊕ Z^k` with cones `R_{≥0}^{σ(1)}`, and the
/// projection sending `e_ρ` to the ray generator `v_ρ`. When the rays do not
/// span, `k` extra coordinates map onto complementary unit vectors so the
/// projection stays surjective.
#[derive(Clone, Debug)]
pub struct CoxData {
    pub fan: Arc<Fan>,
    pub cover: Arc<Fan>,
    /// `rank(N) × rank(Δ')`, columns are images of basis vectors.
    pub projection: Vec<Vec<i64>>,
}

pub fn cox_data(fan: Arc<Fan>) -> Result<CoxData> {
    let n = fan.rank();
    let mut cols: Vec<LatticeVec> = fan.rays().to_vec();
    let mut span: Vec<Vec<Rational>> = cols.iter().map(|c| c.to_rational()).collect();
    let mut r = linalg::rank(&span, n);
    for i in 0..n {
        if r == n {
            break;
        }
        let e = LatticeVec::unit(n, i);
        span.push(e.to_rational());
        let r2 = linalg::rank(&span, n);
        if r2 > r {
            cols.push(e);
            r = r2;
        } else {
            span.pop();
        }
    }
    let m = cols.len();
    let rays: Vec<LatticeVec> = (0..fan.rays().len())
        .map(|i| LatticeVec::unit(m, i))
        .collect();
    let cover = Arc::new(Fan::new(m, rays, fan.maximal_cones().to_vec())?);
    let projection = (0..n)
        .map(|i| cols.iter().map(|c| c[i]).collect())
        .collect();
    Ok(CoxData {
        fan,
        cover,
        projection,
    })
}

impl CoxData {
    /// `Trop(φ)` restricted to the chart of `Δ'` lying over `chart`.
    pub fn morphism(&self, chart: &[usize]) -> Result<ExtendedMonoidMap> {
        ExtendedMonoidMap::from_lattice_map(
            self.cover.clone(),
            chart,
            self.fan.clone(),
            chart,
            &self.projection,
        )
    }
}

/// A point of `Trop(Y')` over `p`: coordinates indexed by the stratum's rays
/// are `∞`, the rest solve the projection onto `N(σ)` exactly (free
/// variables set to zero).
pub fn cox_preimage(data: &CoxData, p: &ExtendedPoint) -> Result<ExtendedPoint> {
    let tau = p.stratum();
    let perp = data.fan.cone(tau).perp_basis();
    let m = data.cover.rank();
    let free: Vec<usize> = (0..m).filter(|j| !tau.contains(j)).collect();
    let col = |j: usize| LatticeVec(data.projection.iter().map(|row| row[j]).collect());
    let rows: Vec<Vec<Rational>> = perp
        .iter()
        .map(|l| free.iter().map(|&j| int(l.dot(&col(j)))).collect())
        .collect();
    let w = linalg::solve(&rows, p.coords(), free.len()).expect("rays span the quotient");
    let mut v = vec![int(0); m];
    for (k, &j) in free.iter().enumerate() {
        v[j] = w[k].clone();
    }
    let cover_perp = data.cover.cone(tau).perp_basis();
    let coords = cover_perp.iter().map(|l| l.dot_q(&v)).collect();
    ExtendedPoint::new(data.cover.clone(), p.chart(), tau, coords)
}

/// The full preimage vector in `R̄^{Δ'(1)}`, `None` standing for `∞`.
pub fn cox_coordinates(data: &CoxData, p: &ExtendedPoint) -> Result<Vec<Option<Rational>>> {
    let q = cox_preimage(data, p)?;
    let m = data.cover.rank();
    Ok((0..m)
        .map(|j| {
            let e = LatticeVec::unit(m, j);
            q.value_on(&e).ok().and_then(|x| x.as_finite().cloned())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torictrop::trop_morphism;

    #[test]
    fn projective_plane_data() {
        let d = cox_data(Arc::new(Fan::projective_space(2))).unwrap();
        assert_eq!(d.projection, vec![vec![1, 0, -1], vec![0, 1, -1]]);
        assert_eq!(d.cover.rank(), 3);
        assert_eq!(d.cover.maximal_cones().len(), 3);
        let d = cox_data(Arc::new(Fan::projective_space(1))).unwrap();
        assert_eq!(d.projection, vec![vec![1, -1]]);
        let d = cox_data(Arc::new(Fan::affine_space(1))).unwrap();
        assert_eq!(d.projection, vec![vec![1]]);
    }

    #[test]
    fn non_spanning_rays_are_split() {
        let f = Arc::new(Fan::new(2, vec![LatticeVec(vec![1, 0])], vec![vec![0]]).unwrap());
        let d = cox_data(f).unwrap();
        assert_eq!(d.projection, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn preimages() {
        let d = cox_data(Arc::new(Fan::projective_space(2))).unwrap();
        let p = ExtendedPoint::torus(d.fan.clone(), &[0, 1], vec![int(2), int(3)]).unwrap();
        let c = cox_coordinates(&d, &p).unwrap();
        assert_eq!(c, vec![Some(int(2)), Some(int(3)), Some(int(0))]);
        let o = ExtendedPoint::torus(d.fan.clone(), &[0, 1], vec![int(0), int(0)]).unwrap();
        assert_eq!(cox_coordinates(&d, &o).unwrap(), vec![Some(int(0)); 3]);
        let b = ExtendedPoint::new(d.fan.clone(), &[0, 1], &[0], vec![int(5)]).unwrap();
        let c = cox_coordinates(&d, &b).unwrap();
        assert_eq!(c[0], None);
        for p in [p, o, b] {
            let q = cox_preimage(&d, &p).unwrap();
            let back = trop_morphism(&d.morphism(p.chart()).unwrap(), &q).unwrap();
            assert!(back.glue_equal(&p));
        }
    }
}
