//! Splits a random 1-cochain on a triangulated torus into exact, coexact and
//! harmonic parts, then recovers the harmonic representative of a closed one.

use hodgekit::complex::{harmonic_representative, hodge_decompose, periods, SimplicialComplex};
use hodgekit::random;

fn main() -> hodgekit::Result<()> {
    let triangles: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    let k = SimplicialComplex::from_simplices(&triangles)?;
    let mut rng = random::rng(2024);
    let c = random::cochain(&mut rng, &k, 1);

    let h = hodge_decompose(&k, &c)?;
    println!("input norm {:.6}", c.norm());
    for (name, part) in [("exact", &h.exact), ("coexact", &h.coexact), ("harmonic", &h.harmonic)] {
        println!("  {name:<9} {:.6}", part.norm());
    }
    println!("orthogonality residual {:.2e}", h.orthogonality_residual());
    println!("reconstruction error   {:.2e}", h.reconstruct().sub(&c).norm());

    let cycles = k.homology_basis(1)?;
    let closed = h.harmonic.add(&random::cochain(&mut rng, &k, 0).coboundary(&k));
    let eta = harmonic_representative(&k, &closed)?;
    println!("\nperiods of a closed cochain   {:?}", periods(&closed, &cycles));
    println!("periods of its harmonic part  {:?}", periods(&eta, &cycles));
    Ok(())
}
