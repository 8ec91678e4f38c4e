//! The extended tropicalization of a curve closure, stratum by stratum.

use std::sync::Arc;

use troplim::closure::{extended_trop, invariant_intersection_check};
use troplim::polyhedra::Fan;
use troplim::text::parse_poly;

fn main() -> troplim::Result<()> {
    let p2 = Arc::new(Fan::projective_space(2));
    for s in ["x + y + 1", "x*y - t"] {
        let f = parse_poly(s, Some(2))?;
        let st = extended_trop(&f, p2.clone())?;
        println!("closure of V({f}) in P^2:\n{st}");
        for sigma in p2.cones() {
            println!(
                "  orbit closure {sigma:?}: {}",
                invariant_intersection_check(&f, p2.clone(), sigma)?
            );
        }
    }
    Ok(())
}
