//! Initial forms and the membership test `w ∈ trop(f)`.

use troplim::text::parse_poly;
use troplim::tropvar::contains;
use troplim::valfield::{int, rat};

fn main() -> troplim::Result<()> {
    let f = parse_poly("x + y + t", Some(2))?;
    for w in [
        [int(1), int(1)],
        [int(0), int(1)],
        [int(3), int(1)],
        [rat(1, 2), rat(1, 2)],
    ] {
        let init = f.initial_form(&w)?;
        println!(
            "w = ({}, {}): in_w f = {init}, Ψ = {}, in trop: {}",
            w[0],
            w[1],
            f.psi(&w)?,
            contains(&f, &w)
        );
    }
    Ok(())
}
