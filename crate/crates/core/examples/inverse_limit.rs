//! Seminorm points of a curve seen through a finite diagram of embeddings.

use std::sync::Arc;

use troplim::anlim::{
    limit_check, pi, sample_points, Ambient, CoherentTuple, EmbeddingDiagram, Presentation,
};
use troplim::text::parse_poly;

fn main() -> troplim::Result<()> {
    let p = Arc::new(Presentation::new(
        Ambient::Affine,
        vec![parse_poly("x*y - t", Some(2))?],
        vec![parse_poly("x", Some(1))?, parse_poly("t*x^-1", Some(1))?],
    )?);
    let d = EmbeddingDiagram::main_proof(
        p.clone(),
        &parse_poly("x^2 + y", Some(2))?,
        &parse_poly("x*y", Some(2))?,
    )?;
    println!("{} nodes, {} edges", d.nodes().len(), d.edges().len());
    let pts = sample_points(&p, 6, 3);
    for x in &pts[..2] {
        let t = CoherentTuple::from_point(&d, x)?;
        println!("{x}: coherent {}", t.is_coherent(&d));
        for node in d.nodes() {
            println!("  {}: {}", node.name, pi(node, x)?.describe());
        }
    }
    let r = limit_check(&d, &pts, 2)?;
    println!(
        "separated {}/{} pairs, reconstructed {}/{} values",
        r.separated, r.pairs, r.reconstructed, r.values
    );
    Ok(())
}
