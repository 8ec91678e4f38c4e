//! Points of extended tropicalizations of toric varieties and the maps
//! induced by toric morphisms.

use std::sync::Arc;

use troplim::polyhedra::Fan;
use troplim::torictrop::{trop_morphism, ExtendedMonoidMap, ExtendedPoint};
use troplim::valfield::{int, PuiseuxScalar};

fn main() -> troplim::Result<()> {
    let a2 = Arc::new(Fan::affine_space(2));
    let p2 = Arc::new(Fan::projective_space(2));
    // (t, 0) in A^2 lies on the boundary stratum of the second ray
    let p = ExtendedPoint::trop_point(
        a2.clone(),
        &[0, 1],
        &[PuiseuxScalar::t(), PuiseuxScalar::zero()],
    )?;
    println!("{}", p.describe());
    // A^2 is the chart of P^2 omitting the last ray
    let inc = ExtendedMonoidMap::from_lattice_map(
        a2.clone(),
        &[0, 1],
        p2.clone(),
        &[0, 1],
        &[vec![1, 0], vec![0, 1]],
    )?;
    let q = trop_morphism(&inc, &p)?;
    println!("in P^2: {}", q.describe());
    for chart in p2.maximal_cones() {
        if let Ok(r) = q.in_chart(chart) {
            println!("  chart {chart:?}: {}", r.describe());
        }
    }
    // the diagonal A^1 -> A^2
    let a1 = Arc::new(Fan::affine_space(1));
    let diag =
        ExtendedMonoidMap::from_lattice_map(a1.clone(), &[0], a2, &[0, 1], &[vec![1], vec![1]])?;
    let x = ExtendedPoint::torus(a1, &[0], vec![int(3)])?;
    println!(
        "diagonal image of {}: {}",
        x.describe(),
        trop_morphism(&diag, &x)?.describe()
    );
    Ok(())
}
