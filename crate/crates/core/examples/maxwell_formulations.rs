//! Maxwell's equations checked four ways on a field config: vector calculus,
//! matrix divergences, metric-free exterior forms, and forms with a metric.

use hodgekit::maxwell::{classical_correspondence, evaluate, FieldConfig, Formulation};

const WIRE: &str = "\
# magnetic field around a uniform current along x3
[B]
1 = -1/2*x2
2 = 1/2*x1
[J]
3 = 1
";

fn main() -> hodgekit::Result<()> {
    let good = FieldConfig::parse(WIRE)?;
    let mut bad = good.clone();
    bad.rho = hodgekit::poly::Polynomial::parse("x0", 4, 0)?;
    for (name, cfg) in [("wire", &good), ("wire with growing charge", &bad)] {
        println!("{name}:");
        for f in Formulation::ALL {
            let report = evaluate(cfg, f);
            let worst = report.residuals.iter().map(|r| r.residual.norm()).fold(0.0, f64::max);
            println!("  {:<10} equations hold: {:<5} continuity: {:<5} largest residual {worst}",
                f.name(), report.equations_hold(), report.continuity_holds());
        }
        println!("  formulations agree component by component: {}", classical_correspondence(cfg).all_agree());
    }
    Ok(())
}
