//! Base change from a trivially valued field and pushforward of initial forms.

use troplim::basechange::{base_change_check, pushforward_initial_check, LatticeSurjection};
use troplim::text::parse_poly;
use troplim::valfield::{int, ValMode};

fn main() -> troplim::Result<()> {
    for s in ["x + y + 1", "x^2*y + x*y^2 + 3", "x^3 - y^2"] {
        let f = parse_poly(s, Some(2))?.with_mode(ValMode::Trivial)?;
        println!(
            "{f}: trivial and Puiseux tropicalizations agree: {}",
            base_change_check(&f)?
        );
    }
    let phi = LatticeSurjection::new(vec![vec![1, 0, 1], vec![0, 1, 1]], 3)?;
    let f = parse_poly("x + y + t", Some(2))?;
    let v = [int(1), int(0), int(1)];
    println!("pullback along {phi}: {}", phi.pullback(&f)?);
    println!(
        "initial forms commute at (1, 0, 1): {}",
        pushforward_initial_check(&phi, &f, &v)?
    );
    Ok(())
}
