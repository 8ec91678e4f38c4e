//! A certified generic projection of a tropical line in R^3 to the plane.

use troplim::basechange::{
    certify_projection, generic_projection, image_contained, LatticeSurjection,
};
use troplim::text::parse_poly;
use troplim::tropvar::trop_assumed_basis;

fn main() -> troplim::Result<()> {
    let basis = ["x + 2*y + 3*z", "y + 2*z - 1", "x - z + 2", "2*x + y + 3"]
        .iter()
        .map(|s| parse_poly(s, Some(3)))
        .collect::<troplim::Result<Vec<_>>>()?;
    let c = trop_assumed_basis(&basis)?;
    println!("trop of the line:\n{c}");
    let phi = generic_projection(&c, 1)?;
    println!(
        "projection {phi}, certified: {}",
        certify_projection(&c, &phi)?
    );
    println!("image:\n{}", phi.image(&c));
    let g = parse_poly("4*x^2 + 4*x*y + y^2 + 3*x + 6*y", Some(2))?;
    let a = LatticeSurjection::new(vec![vec![1, 0, 1], vec![0, 1, 1]], 3)?;
    println!(
        "image under {a} inside trop(V({g})): {}",
        image_contained(&a, &c, &g)?
    );
    Ok(())
}
