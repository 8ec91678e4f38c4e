//! Tropicalization over a trivially valued field: a fan.

use std::sync::Arc;

use troplim::anlim::{image_check, Ambient, Presentation};
use troplim::text::parse_poly;
use troplim::tropvar::trivial_trop;
use troplim::valfield::{int, ValMode};

fn main() -> troplim::Result<()> {
    let f = parse_poly("x^2 + x*y + y^3 + 1", Some(2))?.with_mode(ValMode::Trivial)?;
    println!("trivial trop({f}):\n{}", trivial_trop(&f)?.complex);
    let p = Presentation::new(
        Ambient::Affine,
        vec![parse_poly("x + y + 1", Some(2))?],
        vec![parse_poly("x", Some(1))?, parse_poly("-1 - x", Some(1))?],
    )?;
    let p = Arc::new(p.with_mode(ValMode::Trivial)?);
    let r = image_check(&p, 30, 2, &int(4))?;
    println!(
        "{} seminorm points in the support, {}/{} rays hit",
        r.in_support, r.hit, r.targets
    );
    Ok(())
}
