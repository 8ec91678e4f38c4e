//! A line in P^2 through its three standard charts.

use std::sync::Arc;

use troplim::anlim::{limit_check, sample_points, Ambient, EmbeddingDiagram, Presentation};
use troplim::text::parse_poly;

fn main() -> troplim::Result<()> {
    let p = Arc::new(Presentation::new(
        Ambient::Projective,
        vec![parse_poly("x1 + x2 + x3", Some(3))?],
        vec![
            parse_poly("1", Some(1))?,
            parse_poly("x", Some(1))?,
            parse_poly("-1 - x", Some(1))?,
        ],
    )?);
    let d = EmbeddingDiagram::projective_charts(p.clone())?;
    for node in d.nodes() {
        let gens: Vec<String> = node.gens().iter().map(|g| g.to_string()).collect();
        println!("{}: {}", node.name, gens.join(", "));
    }
    let r = limit_check(&d, &sample_points(&p, 20, 7), 2)?;
    println!("passed {}: {} pairs separated", r.passed(), r.separated);
    Ok(())
}
