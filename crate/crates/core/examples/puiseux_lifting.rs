//! Lifting points of a tropical curve to Puiseux-series points of the curve.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use troplim::text::parse_poly;
use troplim::tropvar::{lift_point, sample_curve_point};
use troplim::valfield::{int, rat};

fn main() -> troplim::Result<()> {
    let f = parse_poly("x + y + t", Some(2))?;
    let prec = int(5);
    for v in [[int(1), int(1)], [int(1), int(4)], [rat(-3, 2), rat(-3, 2)]] {
        let p = lift_point(&f, &v, &prec)?;
        println!(
            "({}, {}) lifts to ({}, {})",
            v[0], v[1], p.coords[0], p.coords[1]
        );
    }
    let g = parse_poly("x*y - t", Some(2))?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..3 {
        let p = sample_curve_point(&g, &mut rng, &prec)?;
        println!(
            "sampled ({}, {}) with valuations ({}, {})",
            p.coords[0],
            p.coords[1],
            p.trop()[0],
            p.trop()[1]
        );
    }
    Ok(())
}
