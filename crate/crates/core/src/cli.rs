//! The `hodgekit` command line.
//!
//! Exit codes: `0` when every verdict passes, `1` when one fails, `2` for a
//! usage error, `3` for an unreadable or malformed input.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::builder::TypedValueParser;
use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::{json, Value};

use crate::algebra::{Blade, Multivector, Scalar};
use crate::complex::{self, Cochain, SimplicialComplex};
use crate::error::Error;
use crate::maxwell::{self, FieldConfig, Formulation, FormulationReport};
use crate::metric::{self, Metric};
use crate::random;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hodgekit", version, about = "Exterior algebra, Hodge duality, Maxwell's equations and discrete Hodge theory")]
pub struct Cli {
    /// Emit the structured JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized identity checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Orientation of the frame, +1 or -1.
    #[arg(long, global = true, default_value_t = 1, allow_hyphen_values = true,
          value_parser = clap::builder::PossibleValuesParser::new(["1", "+1", "-1"]).map(|s| if s == "-1" { -1i8 } else { 1 }))]
    pub orientation: i8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Complement tables and Grassmann's identities.
    Algebra {
        /// Dimension, 1 to 8.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        dim: u8,
        #[arg(long, value_enum, default_value_t = AlgebraCheck::All)]
        check: AlgebraCheck,
        /// Random pairs for the product-complement law.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Hodge star table for a signature such as "+---".
    Star {
        #[arg(long, allow_hyphen_values = true)]
        sig: String,
    },
    /// Residuals of Maxwell's equations for a field configuration.
    Maxwell {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the units toggle of the configuration.
        #[arg(long, value_enum)]
        units: Option<Units>,
        #[arg(long, value_enum, default_value_t = FormulationArg::All)]
        formulation: FormulationArg,
    },
    /// Betti numbers from harmonic cochains and from ranks.
    Betti { mesh: PathBuf },
    /// Hodge decomposition of a cochain.
    Decompose { mesh: PathBuf, cochain: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraCheck {
    All,
    Complement,
    DoubleComplement,
    Product,
    Interior,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Gaussian,
    Hl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormulationArg {
    All,
    Classical,
    Minkowski,
    Premetric,
    Metric,
}

/// A rendered report.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub lines: Vec<String>,
    pub verdicts: Vec<(String, bool)>,
    pub data: Value,
}

impl Report {
    fn new(command: String) -> Self {
        Self { command, lines: Vec::new(), verdicts: Vec::new(), data: json!({}) }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn verdict(&mut self, name: impl Into<String>, pass: bool) {
        self.verdicts.push((name.into(), pass));
    }

    pub fn passes(&self) -> bool {
        self.verdicts.iter().all(|(_, p)| *p)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("$ hodgekit {}\n", self.command);
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str("verdicts:\n");
        for (name, pass) in &self.verdicts {
            out.push_str(&format!("  {}  {name}\n", if *pass { "PASS" } else { "FAIL" }));
        }
        out.push_str(&format!("overall: {}\n", if self.passes() { "PASS" } else { "FAIL" }));
        out
    }

    pub fn to_json(&self) -> String {
        let verdicts: Vec<Value> = self.verdicts.iter().map(|(n, p)| json!({ "name": n, "pass": p })).collect();
        let v = json!({
            "command": self.command,
            "results": self.data,
            "verdicts": verdicts,
            "pass": self.passes(),
        });
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    }
}

/// What a run printed and its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs the command line given as full `argv` (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: rendered, code: EXIT_USAGE }
            } else {
                Outcome { stdout: rendered, stderr: String::new(), code: EXIT_PASS }
            };
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    match execute(&cli, echo) {
        Ok(report) => Outcome {
            stdout: if cli.json { report.to_json() } else { report.to_text() },
            stderr: String::new(),
            code: if report.passes() { EXIT_PASS } else { EXIT_FAIL },
        },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_INPUT },
    }
}

pub fn execute(cli: &Cli, echo: String) -> Result<Report, Error> {
    let mut report = Report::new(echo);
    match &cli.command {
        Command::Algebra { dim, check, samples } => cmd_algebra(&mut report, *dim as usize, *check, *samples, cli.seed),
        Command::Star { sig } => cmd_star(&mut report, sig, cli.orientation)?,
        Command::Maxwell { config, units, formulation } => cmd_maxwell(&mut report, config, *units, *formulation)?,
        Command::Betti { mesh } => cmd_betti(&mut report, &SimplicialComplex::load(mesh)?)?,
        Command::Decompose { mesh, cochain } => {
            let k = SimplicialComplex::load(mesh)?;
            let c = Cochain::load(cochain, &k)?;
            cmd_decompose(&mut report, &k, &c)?
        }
    }
    Ok(report)
}

/// `e1`, `[e1 e2]`, `1`.
fn bracket(b: Blade) -> String {
    match b.grade() {
        0 => "1".into(),
        1 => b.label("e", 1),
        _ => format!("[{}]", b.indices().iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join(" ")),
    }
}

fn signed_bracket(sign: i32, b: Blade) -> String {
    format!("{}{}", if sign < 0 { "-" } else { "" }, bracket(b))
}

fn cmd_algebra(report: &mut Report, n: usize, check: AlgebraCheck, samples: usize, seed: u64) {
    let want = |c: AlgebraCheck| check == AlgebraCheck::All || check == c;
    let blades = Blade::all(n);
    let mut data = serde_json::Map::new();
    data.insert("dim".into(), json!(n));

    if want(AlgebraCheck::Complement) {
        report.line(format!("complement table (n = {n}):"));
        let mut rows = Vec::new();
        let mut ok = true;
        for &b in &blades {
            let (s, c) = (b.complement_sign(), b.dual());
            report.line(format!("  |{} = {}", bracket(b), signed_bracket(s, c)));
            let e = Multivector::from_blade(b, Scalar::from_integer(1.into()));
            ok &= e.wedge(&e.complement()).map(|w| w == Multivector::pseudoscalar(n)).unwrap_or(false);
            rows.push(json!({ "blade": bracket(b), "complement": signed_bracket(s, c) }));
        }
        data.insert("complement".into(), Value::Array(rows));
        report.verdict("[E |E] = [e1 ... en] for every blade", ok);
    }

    if want(AlgebraCheck::DoubleComplement) {
        report.line(format!("double complement ||E = sign * E (n = {n}):"));
        report.line(format!("  {:<24} {:>3} {:>5} {:>9}  ok", "blade", "k", "sign", "(-1)^k(n-k)"));
        let mut rows = Vec::new();
        let mut ok = true;
        for &b in &blades {
            let k = b.grade();
            let e = Multivector::from_blade(b, Scalar::from_integer(1.into()));
            let cc = e.complement().complement();
            let observed = if cc == e { 1 } else if cc == -&e { -1 } else { 0 };
            let expected = if (k * (n - k)).is_multiple_of(2) { 1 } else { -1 };
            let row_ok = observed == expected;
            ok &= row_ok;
            report.line(format!("  {:<24} {:>3} {:>5} {:>9}  {}", bracket(b), k, observed, expected, if row_ok { "yes" } else { "no" }));
            rows.push(json!({ "blade": bracket(b), "grade": k, "sign": observed, "expected": expected, "ok": row_ok }));
        }
        data.insert("double_complement".into(), Value::Array(rows));
        report.verdict("||E = (-1)^(k(n-k)) E", ok);
    }

    if want(AlgebraCheck::Product) {
        let mut rng = random::rng(seed);
        let mut failures = 0;
        let mut tried = 0;
        for _ in 0..samples {
            let k = rng.gen_range(0..=n);
            let l = rng.gen_range(0..=n - k);
            let a = random::homogeneous(&mut rng, n, k, 2);
            let b = random::homogeneous(&mut rng, n, l, 2);
            let lhs = a.wedge(&b).expect("same dim").complement();
            let rhs = a.complement().regressive(&b.complement()).expect("same dim");
            tried += 1;
            if lhs.reduce_unit() != rhs.reduce_unit() {
                failures += 1;
            }
        }
        report.line(format!("product law |[A B] = [|A |B]: {tried} random pairs, {failures} failures (seed {seed})"));
        data.insert("product".into(), json!({ "pairs": tried, "failures": failures, "seed": seed }));
        report.verdict("|[A B] = [|A |B]", failures == 0);
    }

    if want(AlgebraCheck::Interior) {
        let mut ok = true;
        for i in 1..=n {
            for j in 1..=n {
                let ei = Multivector::unit(i, n).expect("in range");
                let ej = Multivector::unit(j, n).expect("in range");
                let v = ei.interior(&ej).expect("same dim").reduce_unit();
                let expected = if i == j { Multivector::one(n) } else { Multivector::zero(n) };
                ok &= v == expected;
            }
        }
        for &a in &blades {
            let e = Multivector::from_blade(a, Scalar::from_integer(1.into()));
            let v = e.interior(&e).expect("same dim").reduce_unit();
            ok &= v == Multivector::one(n);
        }
        report.line(format!("interior product [e_i |e_j] = delta_ij and [E |E] = 1 checked on all {} blades", blades.len()));
        report.verdict("[e_i |e_j] = delta_ij", ok);
    }
    report.data = Value::Object(data);
}

fn cmd_star(report: &mut Report, sig: &str, orientation: i8) -> Result<(), Error> {
    let g = Metric::from_signature(sig)?.with_orientation(orientation)?;
    let n = g.dim();
    let base = g.label_base();
    let label = |b: Blade| if b.grade() == 0 { "1".to_string() } else { b.label("dx", base) };
    report.line(format!("signature {sig}, orientation {orientation:+}, sign(det g) = {:+}", g.det_sign()));
    report.line(format!("  {:<28} {:<30} {:>4} {:>9}", "form", "*form", "**", "expected"));
    let mut rows = Vec::new();
    let mut law = true;
    let mut inverse = true;
    let mut agrees_with_complement = true;
    for b in Blade::all(n) {
        let e = Multivector::from_blade(b, Scalar::from_integer(1.into()));
        let star = metric::hodge_star(&e, &g)?;
        let double = metric::hodge_star(&star, &g)?;
        let observed = if double == e { 1 } else if double == -&e { -1 } else { 0 };
        let expected = metric::double_star_sign(crate::algebra::Grade::new(b.grade(), n)?, &g);
        law &= observed == expected;
        inverse &= metric::hodge_star_inverse(&star, &g)? == e;
        agrees_with_complement &= star == e.complement();
        let star_text = star.to_labeled("dx", base);
        report.line(format!("  {:<28} {:<30} {:>4} {:>9}", label(b), star_text, observed, expected));
        rows.push(json!({ "form": label(b), "star": star_text, "double_star": observed, "expected": expected }));
    }
    report.data = json!({ "signature": sig, "orientation": orientation, "det_sign": g.det_sign(), "rows": rows });
    report.verdict("** = sign(det g) (-1)^(k(n-k))", law);
    report.verdict("star inverse undoes star", inverse);
    if g.is_riemannian() && g.signature().iter().all(|s| *s > 0) && orientation > 0 {
        report.verdict("star equals the complement", agrees_with_complement);
    }
    Ok(())
}

fn norm_text(r: &maxwell::Residual) -> String {
    if r.is_zero() {
        "0".into()
    } else {
        format!("{:.6e}", r.norm())
    }
}

fn formulation_json(fr: &FormulationReport) -> Value {
    let residuals: Vec<Value> = fr
        .residuals
        .iter()
        .map(|r| json!({ "name": r.name, "exact_zero": r.residual.is_zero(), "norm": r.residual.norm(), "value": r.residual.to_string() }))
        .collect();
    json!({
        "formulation": fr.formulation.name(),
        "residuals": residuals,
        "continuity": { "exact_zero": fr.continuity.is_zero(), "value": fr.continuity.to_string() },
        "pass": fr.passes(),
    })
}

fn cmd_maxwell(report: &mut Report, path: &PathBuf, units: Option<Units>, which: FormulationArg) -> Result<(), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| crate::error::ParseError::new(format!("{}: {e}", path.display())))?;
    let mut cfg = FieldConfig::parse(&text)?;
    if let Some(u) = units {
        cfg.constants.gaussian_4pi = u == Units::Gaussian;
    }
    let formulations: Vec<Formulation> = match which {
        FormulationArg::All => Formulation::ALL.to_vec(),
        FormulationArg::Classical => vec![Formulation::Classical],
        FormulationArg::Minkowski => vec![Formulation::Minkowski],
        FormulationArg::Premetric => vec![Formulation::Premetric],
        FormulationArg::Metric => vec![Formulation::Metric],
    };
    let units_name = if cfg.constants.gaussian_4pi { "gaussian (sources times 4 pi)" } else { "heaviside-lorentz" };
    report.line(format!("units: {units_name}"));
    report.line(format!(
        "constants: c = {}, mu0 = {}, eps0 = {}",
        cfg.constants.c, cfg.constants.mu0, cfg.constants.eps0
    ));
    report.line(format!("rho = {}", cfg.rho));
    report.line(format!("J = ({}, {}, {})", cfg.j[0], cfg.j[1], cfg.j[2]));
    let mut results = Vec::new();
    let mut continuity_ok = true;
    let mut passes = Vec::new();
    for f in formulations {
        let fr = maxwell::evaluate(&cfg, f);
        report.line(format!("[{}]", f.name()));
        for r in &fr.residuals {
            report.line(format!("  {:<28} {}", r.name, norm_text(&r.residual)));
        }
        report.line(format!("  {:<28} {}", "continuity (dS)", norm_text(&fr.continuity)));
        continuity_ok &= fr.continuity_holds();
        passes.push(fr.passes());
        report.verdict(format!("{} equations", f.name()), fr.equations_hold());
        results.push(formulation_json(&fr));
    }
    if !continuity_ok {
        report.line("continuity violated: dS != 0, so no excitation can satisfy the source equation");
    }
    report.verdict("continuity dS = 0", continuity_ok);
    if passes.len() > 1 {
        report.verdict("formulations give identical verdicts", passes.iter().all(|p| *p == passes[0]));
    }
    report.data = json!({
        "rho": cfg.rho.to_string(),
        "units": if cfg.constants.gaussian_4pi { "gaussian" } else { "hl" },
        "c": cfg.constants.c.to_string(),
        "formulations": results,
    });
    Ok(())
}

fn cmd_betti(report: &mut Report, k: &SimplicialComplex) -> Result<(), Error> {
    let Some(dim) = k.dim() else {
        report.line("empty complex");
        return Ok(());
    };
    let counts: Vec<usize> = (0..=dim).map(|d| k.count(d)).collect();
    report.line(format!("simplices per degree: {counts:?}"));
    report.line("harmonic dim vs rank oracle:");
    report.line(format!("  {:>2} {:>9} {:>7} {:>7} {:>9} {:>11}", "k", "harmonic", "oracle", "equal", "spectral", "gap factor"));
    let mut rows = Vec::new();
    let mut equal_all = true;
    let mut spectral_all = true;
    let mut betti = Vec::new();
    for d in 0..=dim {
        let h = k.betti_via_harmonic(d)?;
        let r = k.betti_via_rank(d)?;
        let s = k.betti_via_harmonic_float(d)?;
        let equal = h == r;
        equal_all &= equal;
        spectral_all &= s.betti == h && s.gap_ok();
        let gap = if s.gap_factor().is_finite() { format!("{:.3e}", s.gap_factor()) } else { "inf".into() };
        report.line(format!("  {:>2} {:>9} {:>7} {:>7} {:>9} {:>11}", d, h, r, if equal { "yes" } else { "no" }, s.betti, gap));
        betti.push(h);
        rows.push(json!({
            "k": d, "harmonic": h, "oracle": r, "equal": equal,
            "spectral": s.betti, "gap_factor": if s.gap_factor().is_finite() { json!(s.gap_factor()) } else { Value::Null },
        }));
    }
    let euler_betti: i64 = betti.iter().enumerate().map(|(d, b)| if d % 2 == 0 { *b as i64 } else { -(*b as i64) }).sum();
    report.line(format!("betti = {betti:?}, euler characteristic = {}", k.euler_characteristic()));
    report.verdict("harmonic dimension equals rank oracle", equal_all);
    report.verdict("spectral count agrees with gap factor >= 1e4", spectral_all);
    report.verdict("euler-poincare", euler_betti == k.euler_characteristic());
    report.data = json!({ "counts": counts, "betti": betti, "rows": rows, "euler": k.euler_characteristic() });
    Ok(())
}

fn cmd_decompose(report: &mut Report, k: &SimplicialComplex, c: &Cochain) -> Result<(), Error> {
    let h = complex::hodge_decompose(k, c)?;
    let scale = c.norm().max(1.0);
    let ortho = h.orthogonality_residual();
    let recon = h.reconstruct().sub(c).norm();
    report.line(format!("degree {} cochain, norm {:.6e}", c.degree(), c.norm()));
    report.line(format!("  {:<10} {:>14}", "part", "norm"));
    for (name, part) in [("exact", &h.exact), ("coexact", &h.coexact), ("harmonic", &h.harmonic)] {
        report.line(format!("  {:<10} {:>14.6e}", name, part.norm()));
    }
    report.line(format!("orthogonality residual {ortho:.3e}, reconstruction error {recon:.3e}"));
    let basis = k.homology_basis(c.degree())?;
    let before = complex::periods(c, &basis);
    let after = complex::periods(&h.harmonic, &basis);
    let closed = c.coboundary(k).norm() <= complex::CLOSED_TOLERANCE * scale;
    report.line(format!("periods over a homology basis: input {:?}, harmonic {:?}", rounded(&before), rounded(&after)));
    report.verdict("parts pairwise orthogonal within 1e-10", ortho <= 1e-10 * scale * scale);
    report.verdict("parts reconstruct the input within 1e-10", recon <= 1e-10 * scale);
    if closed {
        let kept = before.iter().zip(&after).all(|(a, b)| (a - b).abs() <= 1e-8 * scale);
        report.verdict("harmonic part keeps the periods", kept);
    }
    report.data = json!({
        "degree": c.degree(),
        "norms": { "input": c.norm(), "exact": h.exact.norm(), "coexact": h.coexact.norm(), "harmonic": h.harmonic.norm() },
        "orthogonality": ortho,
        "reconstruction": recon,
        "closed": closed,
        "periods": { "input": before, "harmonic": after },
        "parts": { "exact": h.exact.values(), "coexact": h.coexact.values(), "harmonic": h.harmonic.values() },
    });
    Ok(())
}

fn rounded(v: &[f64]) -> Vec<String> {
    v.iter().map(|x| format!("{:.6}", if x.abs() < 5e-7 { 0.0 } else { *x })).collect()
}
