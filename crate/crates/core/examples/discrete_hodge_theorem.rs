//! Betti numbers of a triangulated torus two ways: the dimension of the kernel
//! of each combinatorial Laplacian, and ranks of the boundary matrices.

use hodgekit::complex::SimplicialComplex;

fn main() -> hodgekit::Result<()> {
    // seven-vertex torus
    let triangles: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    let k = SimplicialComplex::from_simplices(&triangles)?;
    println!("simplices: {} vertices, {} edges, {} triangles", k.count(0), k.count(1), k.count(2));
    println!("euler characteristic {}", k.euler_characteristic());
    println!("{:>3} {:>9} {:>5} {:>9} {:>11}", "k", "harmonic", "rank", "spectral", "gap factor");
    for d in 0..=2 {
        let spectral = k.betti_via_harmonic_float(d)?;
        println!("{d:>3} {:>9} {:>5} {:>9} {:>11.3e}",
            k.betti_via_harmonic(d)?, k.betti_via_rank(d)?, spectral.betti, spectral.gap_factor());
    }
    Ok(())
}
