//! Differential forms with polynomial coefficients: d, the codifferential,
//! the Hodge Laplacian and a check for harmonic forms.

use hodgekit::forms::{beltrami_laplace, is_harmonic_hodge, PolyForm};
use hodgekit::metric::Metric;
use hodgekit::poly::Polynomial;

fn main() -> hodgekit::Result<()> {
    let g = Metric::euclidean(3);
    let alpha = PolyForm::parse("x1*x2*dx1 + x3^2*dx2 - x1*x2*x3*dx3", &g)?;
    println!("alpha        = {alpha}");
    println!("d alpha      = {}", alpha.d());
    println!("dd alpha     = {}", alpha.d().d());
    println!("delta alpha  = {}", alpha.codifferential());
    println!("*alpha       = {}", alpha.star());
    println!("Laplacian    = {}", alpha.hodge_laplacian());

    let plane = Metric::euclidean(2);
    let f = Polynomial::parse("x1^3 - 3*x1*x2^2", 2, 1)?;
    println!("\nf = {}, beltrami laplacian = {}", f.to_labeled(1), beltrami_laplace(&f, &plane).to_labeled(1));
    for text in ["x2*dx1 + x1*dx2", "x1*dx1 + x2*dx2", "x1*dx2"] {
        let p = PolyForm::parse(text, &plane)?;
        let check = is_harmonic_hodge(&p);
        println!("{text:<18} closed: {:<5} coclosed: {:<5} harmonic: {}",
            check.closed_residual.is_zero(), check.coclosed_residual.is_zero(), check.is_harmonic());
    }
    Ok(())
}
