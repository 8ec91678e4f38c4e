//! The tropical moment map of P^2 onto the standard triangle.

use troplim::torictrop::{moment_map, ExtendedPoint, PolarizedFanData};
use troplim::valfield::int;

fn main() -> troplim::Result<()> {
    let pol = PolarizedFanData::projective_space(2);
    let fan = pol.fan().clone();
    let chart = fan.maximal_cones()[2].clone();
    let points = [
        ExtendedPoint::torus(fan.clone(), &chart, vec![int(0), int(0)])?,
        ExtendedPoint::torus(fan.clone(), &chart, vec![int(5), int(-2)])?,
        ExtendedPoint::new(fan.clone(), &chart, &chart[..1], vec![int(1)])?,
        ExtendedPoint::new(fan.clone(), &chart, &chart, vec![])?,
    ];
    for p in &points {
        let mu = moment_map(p, &pol)?;
        println!("{} -> ({:.6}, {:.6})", p.describe(), mu[0], mu[1]);
    }
    Ok(())
}
