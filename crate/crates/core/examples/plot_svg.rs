//! Renders the extended tropicalization of a line in P^2 as SVG.

use std::sync::Arc;

use troplim::closure::extended_trop;
use troplim::polyhedra::Fan;
use troplim::svg::{render_svg, Window};
use troplim::text::parse_poly;
use troplim::valfield::int;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_poly("x + y + t", Some(2))?;
    let st = extended_trop(&f, Arc::new(Fan::projective_space(2)))?;
    let svg = render_svg(&st, &Window::new(int(-4), int(4), int(-4), int(4))?)?;
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(&path, svg)?,
        None => print!("{svg}"),
    }
    Ok(())
}
