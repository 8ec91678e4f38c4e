//! Lifting points of the extended tropicalization of P^2 to its Cox cover.

use std::sync::Arc;

use troplim::polyhedra::Fan;
use troplim::torictrop::{cox_coordinates, cox_data, cox_preimage, trop_morphism, ExtendedPoint};
use troplim::valfield::int;

fn main() -> troplim::Result<()> {
    let fan = Arc::new(Fan::projective_space(2));
    let data = cox_data(fan.clone())?;
    println!("projection {:?}", data.projection);
    let chart = fan.maximal_cones()[0].clone();
    for p in [
        ExtendedPoint::torus(fan.clone(), &chart, vec![int(2), int(-1)])?,
        ExtendedPoint::new(fan.clone(), &chart, &chart[1..], vec![int(3)])?,
    ] {
        let coords: Vec<String> = cox_coordinates(&data, &p)?
            .iter()
            .map(|c| c.as_ref().map_or("inf".into(), |q| q.to_string()))
            .collect();
        let back = trop_morphism(&data.morphism(p.chart())?, &cox_preimage(&data, &p)?)?;
        println!(
            "{} <- ({}) round trip ok: {}",
            p.describe(),
            coords.join(", "),
            back.glue_equal(&p)
        );
    }
    Ok(())
}
