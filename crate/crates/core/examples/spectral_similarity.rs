//! Laplacian spectral distance of the deceived and recovered graphs
//! from the original. Lower is closer.

use commhide::deception::neural;
use commhide::generate::planted_partition;
use commhide::metrics::{spectral_distance, SpectralDistance, DEFAULT_ENERGY};
use commhide::recovery::r_neural;
use commhide::Detector;

pub fn run(energy: f64) -> commhide::Result<(SpectralDistance, SpectralDistance)> {
    let (g, _) = planted_partition(&[15, 15, 12], 0.5, 0.04, 11);
    let cs = Detector::Louvain.detect(&g, 1)?;
    let g1 = neural(&g, &cs, 0, 5)?.graph;
    let g2 = r_neural(&g1, &cs, 0, 5)?.graph;
    Ok((spectral_distance(&g, &g1, energy)?, spectral_distance(&g, &g2, energy)?))
}

fn main() -> commhide::Result<()> {
    let energy = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_ENERGY);
    let (deceived, recovered) = run(energy)?;
    println!("d(G, G')  = {:.5}  (k = {})", deceived.value, deceived.k);
    println!("d(G, G'') = {:.5}  (k = {})", recovered.value, recovered.k);
    Ok(())
}
