//! The tropical line and a grid comparison with the corner-locus definition.

use troplim::text::parse_poly;
use troplim::tropvar::{grid_check, trop_hypersurface};
use troplim::valfield::{int, rat};

fn main() -> troplim::Result<()> {
    for s in ["x + y + 1", "x + y + t", "t*x^2 + x*y + y^2 + 1"] {
        let f = parse_poly(s, Some(2))?;
        let t = trop_hypersurface(&f)?;
        println!("trop({f}):\n{}", t.complex);
        let r = grid_check(
            &f,
            &t.complex,
            &rat(1, 4),
            &[(int(-5), int(5)), (int(-5), int(5))],
        )?;
        println!(
            "{} grid points, {} on the curve, {} discrepancies\n",
            r.points,
            r.members,
            r.discrepancies.len()
        );
    }
    Ok(())
}
