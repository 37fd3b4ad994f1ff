//! Per-vertex permanence of two triangles joined by a bridge.

use commhide::generate::bridged_triangles;
use commhide::permanence::{graph_permanence, permanence_csv, vertex_permanence};

pub fn run() -> commhide::Result<(Vec<f64>, f64, String)> {
    let (g, cs) = bridged_triangles();
    let per_vertex = g
        .nodes()
        .map(|v| vertex_permanence(&g, &cs, v).map(|p| p.permanence))
        .collect::<commhide::Result<Vec<_>>>()?;
    Ok((per_vertex, graph_permanence(&g, &cs)?, permanence_csv(&g, &cs)?))
}

fn main() -> commhide::Result<()> {
    let (_, mean, csv) = run()?;
    print!("{csv}");
    println!("mean permanence {mean:.4}");
    Ok(())
}
