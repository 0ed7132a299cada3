use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use facering::analysis::{AnalysisError, Status, Verdict};
use facering::face_ring::{find_characteristic_function, CharacteristicFunction, LambdaDocument};
use facering::homology::{buchsbaum_from_duals, dual_face_homology, manifold_from_duals, poset_betti};
use facering::input::{load_poset, LoadedPoset};
use facering::poset::h_vector;
use facering::{full_report, AnalysisReport, GroundRing, ReportOptions};
use serde_json::json;

#[derive(Parser)]
#[command(name = "facering", version, about = "Exact face-ring analysis of simplicial posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the poset axioms of an input file.
    Validate(Common),
    /// f-vector, h-vector and reduced Betti numbers.
    Invariants(Common),
    /// Homology of |S|, the Buchsbaum test and the manifold test.
    Homology(Common),
    /// Run the analysis and report only the selected verdicts.
    Check(AnalyzeArgs),
    /// Search for a characteristic function.
    Charfun(Common),
    /// Full report: quotient dimensions, socle, pairing and all verdicts.
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
struct Common {
    /// Input document (`complex.facets` or `poset.cells`).
    input: PathBuf,
    /// Ground ring: Q or Z.
    #[arg(long, default_value = "Q")]
    ring: GroundRing,
    /// Seed for the characteristic-function search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    common: Common,
    /// Characteristic function file (vertex label → list of rationals).
    #[arg(long)]
    lambda: Option<PathBuf>,
    /// Comma-separated verdict names to report and to decide the exit status.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Failure classes with stable exit codes.
enum Failure {
    /// Unreadable or invalid input: exit 2.
    Input(anyhow::Error),
    /// Anything else that stops a computation: exit 1.
    Runtime(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Runtime(e.into())
    }
}

fn input_error(e: impl Display) -> Failure {
    Failure::Input(anyhow::anyhow!("{e}"))
}

const VERDICT_NAMES: [&str; 10] = [
    "poset",
    "pure",
    "buchsbaum",
    "manifold",
    "orientable",
    "schenzel",
    "nonnegativity",
    "nsDimensions",
    "dehnSommerville",
    "poincareDuality",
];

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate(c) => validate(&c),
        Command::Invariants(c) => invariants(&c),
        Command::Homology(c) => homology(&c),
        Command::Charfun(c) => charfun(&c),
        Command::Check(a) => analyze(&a, true),
        Command::Analyze(a) => analyze(&a, false),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Input)
}

fn load(path: &Path) -> Result<LoadedPoset, Failure> {
    load_poset(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn tuple<T: Display>(v: &[T]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json value"));
}

fn validate(c: &Common) -> Result<ExitCode, Failure> {
    let text = read(&c.input)?;
    match load_poset(&text) {
        Ok(loaded) => {
            let s = &loaded.poset;
            if c.format == Format::Json {
                print_json(&json!({
                    "valid": true,
                    "n": s.n(),
                    "m": s.vertex_count(),
                    "fVector": s.f_vector().0,
                    "simplicialComplex": s.is_simplicial_complex(),
                }));
            } else {
                println!("valid: n = {}, m = {}", s.n(), s.vertex_count());
                println!("f = {}", tuple(&s.f_vector().0));
                if !s.is_simplicial_complex() {
                    println!("not a simplicial complex (some vertex sets repeat)");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            if c.format == Format::Json {
                print_json(&json!({ "valid": false, "error": e.to_string() }));
            } else {
                println!("invalid: {e}");
            }
            Ok(ExitCode::from(2))
        }
    }
}

fn invariants(c: &Common) -> Result<ExitCode, Failure> {
    let s = load(&c.input)?.poset;
    let f = s.f_vector();
    let h = h_vector(&f, s.n());
    let betti = poset_betti(&s.barycentric_subdivision(), s.n(), c.ring);
    let torsion: Vec<Vec<String>> =
        betti.torsion.iter().map(|t| t.iter().map(ToString::to_string).collect()).collect();
    if c.format == Format::Json {
        let mut doc = json!({ "ring": c.ring, "n": s.n(), "fVector": f.0, "hVector": h, "betti": betti.betti });
        if c.ring == GroundRing::Integer {
            doc["torsion"] = json!(torsion);
        }
        print_json(&doc);
    } else {
        println!("f = {}", tuple(&f.0));
        println!("h = {}", tuple(&h));
        println!("reduced betti over {} = {}", c.ring, tuple(&betti.betti));
        if betti.has_torsion() {
            for (d, t) in torsion.iter().enumerate().filter(|(_, t)| !t.is_empty()) {
                println!("torsion in degree {d}: {}", t.iter().map(|x| format!("Z/{x}")).collect::<Vec<_>>().join(" + "));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn homology(c: &Common) -> Result<ExitCode, Failure> {
    let s = load(&c.input)?.poset;
    let sd = s.barycentric_subdivision();
    let betti = poset_betti(&sd, s.n(), c.ring);
    let duals = dual_face_homology(&s, &sd, c.ring);
    let buchsbaum = buchsbaum_from_duals(&s, &duals);
    let manifold = manifold_from_duals(&s, &betti, &duals);
    let torsion: Vec<Vec<String>> =
        betti.torsion.iter().map(|t| t.iter().map(ToString::to_string).collect()).collect();
    if c.format == Format::Json {
        print_json(&json!({
            "ring": c.ring,
            "betti": betti.betti,
            "torsion": torsion,
            "buchsbaum": buchsbaum,
            "manifold": manifold,
        }));
        return Ok(ExitCode::SUCCESS);
    }
    println!("reduced betti over {} = {}", c.ring, tuple(&betti.betti));
    for (d, t) in torsion.iter().enumerate().filter(|(_, t)| !t.is_empty()) {
        println!("torsion in degree {d}: {}", t.iter().map(|x| format!("Z/{x}")).collect::<Vec<_>>().join(" + "));
    }
    println!("buchsbaum: {}", buchsbaum.buchsbaum);
    for defect in &buchsbaum.defects {
        let groups: Vec<String> = defect
            .groups
            .iter()
            .map(|(deg, rank, tor)| {
                let mut g = format!("H_{deg} rank {rank}");
                if !tor.is_empty() {
                    g.push_str(&format!(" torsion {}", tor.join(",")));
                }
                g
            })
            .collect();
        println!("  dual face of {}: {}", defect.face, groups.join("; "));
    }
    println!("connected: {}", manifold.connected);
    println!("closed homology manifold (dual-cell criterion): {}", manifold.closed_homology_manifold);
    match manifold.orientable {
        Some(o) => println!("orientable: {o}"),
        None => println!("orientable: not decided"),
    }
    Ok(ExitCode::SUCCESS)
}

fn charfun(c: &Common) -> Result<ExitCode, Failure> {
    let s = load(&c.input)?.poset;
    let lambda = find_characteristic_function(&s, c.ring, c.seed)?;
    let doc = lambda.to_document(&s);
    if c.format == Format::Json {
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("characteristic function over {} (seed {}):", c.ring, c.seed);
        for (label, row) in &doc.0 {
            println!("  {label}: {}", serde_json::to_string(row)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_lambda(path: &Path, s: &facering::SimplicialPoset, ring: GroundRing) -> Result<CharacteristicFunction, Failure> {
    let doc: LambdaDocument = serde_json::from_str(&read(path)?)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    CharacteristicFunction::from_document(&doc, s, ring).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn analyze(a: &AnalyzeArgs, only_checks: bool) -> Result<ExitCode, Failure> {
    let c = &a.common;
    for name in &a.checks {
        if !VERDICT_NAMES.contains(&name.as_str()) {
            return Err(input_error(format!("unknown check `{name}` (expected one of {})", VERDICT_NAMES.join(", "))));
        }
    }
    let loaded = load(&c.input)?;
    let s = Arc::new(loaded.poset);
    let lambda = a.lambda.as_deref().map(|p| load_lambda(p, &s, c.ring)).transpose()?;
    let user_lambda = lambda.is_some();
    let options = ReportOptions { ring: c.ring, seed: c.seed, lambda, timings: a.timings };
    let report = full_report(s, &options).map_err(|e| match e {
        AnalysisError::NotLsop(_) if user_lambda => input_error(e),
        other => Failure::Runtime(other.into()),
    })?;

    let selected: Vec<(&str, &Verdict)> = report
        .verdicts
        .all()
        .into_iter()
        .filter(|(name, _)| a.checks.is_empty() || a.checks.iter().any(|c| c == name))
        .collect();
    let theorem_names: Vec<&str> = report.verdicts.theorem_checks().iter().map(|(n, _)| *n).collect();
    // Classification verdicts only decide the exit status when requested explicitly.
    let failed = selected
        .iter()
        .any(|(name, v)| v.status == Status::Fail && (!a.checks.is_empty() || theorem_names.contains(name)));

    match (c.format, only_checks) {
        (Format::Json, true) => {
            let map: serde_json::Map<String, serde_json::Value> =
                selected.iter().map(|(n, v)| (n.to_string(), json!(v))).collect();
            print_json(&serde_json::Value::Object(map));
        }
        (Format::Json, false) => println!("{}", report.to_json()),
        (Format::Text, true) => print_verdicts(&selected),
        (Format::Text, false) => print_report(&report, loaded.name.as_deref(), &c.input, &selected),
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn print_verdicts(verdicts: &[(&str, &Verdict)]) {
    for (name, v) in verdicts {
        let status = match v.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        };
        println!("  {name:<16} {status:<8} {}", v.detail);
    }
}

fn row(label: &str, cells: &[String]) -> String {
    let mut line = format!("{label:<22}");
    for c in cells {
        line.push_str(&format!("{c:>5}"));
    }
    line.trim_end().to_string()
}

fn print_report(r: &AnalysisReport, name: Option<&str>, path: &Path, verdicts: &[(&str, &Verdict)]) {
    match name {
        Some(name) => println!("input: {} ({name})", path.display()),
        None => println!("input: {}", path.display()),
    }
    let source = match r.lambda_source {
        facering::analysis::LambdaSource::User => "given",
        facering::analysis::LambdaSource::Search => "searched",
        facering::analysis::LambdaSource::SearchRationalFallback => "searched, rational fallback",
    };
    println!("ground ring {}, seed {}, characteristic function {source}", r.ring, r.seed);
    println!("n = {}, m = {}", r.n, r.vertex_count);
    println!("f   = {}", tuple(&r.f_vector));
    println!("h   = {}", tuple(&r.h_vector));
    println!("b~  = {}", tuple(&r.betti));
    println!("h'  = {}", tuple(&r.h_prime));
    println!("h'' = {}", tuple(&r.h_double_prime));
    println!();

    let n = r.n;
    let degrees: Vec<String> = (0..=n + 1).map(|k| (2 * k).to_string()).collect();
    println!("{}", row("degree", &degrees));
    let dims: Vec<String> = r.quotient_dims.iter().map(ToString::to_string).collect();
    println!("{}", row("dim k[S]/Theta", &dims));
    let mut socle = vec![String::new()];
    socle.extend(r.socle_dims.iter().map(ToString::to_string));
    println!("{}", row("interior socle", &socle));
    let ns: Vec<String> = r.ns_quotient_dims.iter().map(ToString::to_string).collect();
    println!("{}", row("dim A", &ns));
    let ranks: Vec<String> =
        r.pairing.pairings.iter().map(|p| p.rank.map_or("-".into(), |x| x.to_string())).collect();
    println!("{}", row("pairing rank", &ranks));
    if let Some(int) = &r.pairing.integral {
        let dets: Vec<String> = int.determinants.iter().map(|d| d.clone().unwrap_or("-".into())).collect();
        println!("{}", row("pairing determinant", &dets));
    }
    println!();
    println!("verdicts:");
    print_verdicts(verdicts);
    for note in &r.notes {
        println!("note: {note}");
    }
    if let Some(t) = &r.timings {
        println!("timings:");
        for (stage, secs) in t {
            println!("  {stage:<18} {secs:.3}s");
        }
    }
}
