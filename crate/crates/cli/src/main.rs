use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dirspec::counterexample::{
    self, construct_variant, float_crosscheck, matches_construction, Variant, VerificationReport,
};
use dirspec::harness::{self, CheckReport, RandomConfig};
use dirspec::io::{self, certificate_document};
use dirspec::polygon::{
    choose_rotation_with_parameter, instantiate_polygon, odd_form_note, polygon_spectrum_closed_form,
    polygon_spectrum_enumerated, working_order, ClosedFormCase, PolygonConfig,
};
use dirspec::rational::format_rational;
use dirspec::spectrum::{spectrum, stab_spectrum};
use dirspec::{geometry, CounterexampleError, CycloElement, GeometryError, ParseError};

const EXIT_FAIL: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

const DEFAULT_PRECISION_BITS: u32 = 128;

#[derive(Parser, Debug)]
#[command(name = "dirspec", version, about = "Direction-cover spectra, point-line duality and vertical stab counts")]
struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Number of random trials for checks (default depends on the check).
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Direction-cover spectrum of a points file.
    Spectrum { file: PathBuf },
    /// Vertical stab counts of a lines file.
    Stab { file: PathBuf },
    /// Apply the point-line duality record by record.
    Dualize {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DualMode::PointsToLines)]
        mode: DualMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectrum of a regular polygon, enumerated and in closed form.
    Polygon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        center: bool,
    },
    /// Build and certify a family of n lines avoiding stab counts n-1 and n-2.
    Counterexample {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
        variant: VariantArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a bundle written by `counterexample`.
    Verify { file: PathBuf },
    /// Run a seeded property check.
    Check {
        #[arg(value_enum)]
        which: CheckKind,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DualMode {
    PointsToLines,
    LinesToPoints,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VariantArg {
    Plain,
    Center,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CheckKind {
    Duality,
    Pinchasi,
    Affine,
    Oracle,
    Transport,
}

/// An error together with the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::new(EXIT_PARSE, format!("parse error: {e}"))
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        let code = if e.is_degenerate() { EXIT_DEGENERATE } else { EXIT_PARSE };
        Failure::new(code, format!("degenerate input: {e}"))
    }
}

impl From<CounterexampleError> for Failure {
    fn from(e: CounterexampleError) -> Self {
        match e {
            CounterexampleError::Parse(p) => p.into(),
            CounterexampleError::Malformed(_) => Failure::new(EXIT_PARSE, e.to_string()),
            other => Failure::new(EXIT_DEGENERATE, other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn precision_bits() -> u32 {
    std::env::var("DS_PRECISION_BITS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_PRECISION_BITS)
}

fn join(counts: &BTreeSet<usize>) -> String {
    counts
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("dirspec: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Spectrum { file } => cmd_spectrum(cli, file),
        Command::Stab { file } => cmd_stab(cli, file),
        Command::Dualize { file, mode, out } => cmd_dualize(file, *mode, out.as_deref()),
        Command::Polygon { n, center } => cmd_polygon(cli, *n, *center),
        Command::Counterexample { n, variant, out } => cmd_counterexample(cli, *n, *variant, out.as_deref()),
        Command::Verify { file } => cmd_verify(cli, file),
        Command::Check { which } => cmd_check(cli, *which),
    }
}

fn cmd_spectrum(cli: &Cli, file: &Path) -> Result<u8, Failure> {
    let points = io::parse_points(&read(file)?)?;
    let report = spectrum(&points)?;
    if cli.json {
        let witnesses: Vec<Value> = report
            .witnesses
            .iter()
            .map(|(k, w)| {
                let d = &w.partition.direction;
                json!({
                    "count": k,
                    "generic": w.generic,
                    "direction": [format_rational(d.dx()), format_rational(d.dy())],
                    "groups": w.partition.groups,
                })
            })
            .collect();
        let doc = json!({
            "points": points.len(),
            "counts": report.counts,
            "vertical_count": report.vertical_count,
            "witnesses": witnesses,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        println!("points: {}", points.len());
        println!("counts: {}", join(&report.counts));
        println!("vertical: {}", report.vertical_count);
        for (k, w) in &report.witnesses {
            let d = &w.partition.direction;
            let groups: Vec<String> = w
                .partition
                .groups
                .iter()
                .map(|g| format!("{{{}}}", g.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            println!(
                "witness {k}: {}direction ({}, {}) lines {}",
                if w.generic { "generic " } else { "" },
                format_rational(d.dx()),
                format_rational(d.dy()),
                groups.join(" ")
            );
        }
    }
    Ok(0)
}

fn cmd_stab(cli: &Cli, file: &Path) -> Result<u8, Failure> {
    let lines = io::parse_lines(&read(file)?)?;
    let counts = stab_spectrum(&lines)?;
    if cli.json {
        println!("{}", json!({ "lines": lines.len(), "counts": counts }));
    } else {
        println!("lines: {}", lines.len());
        println!("counts: {}", join(&counts));
    }
    Ok(0)
}

fn cmd_dualize(file: &Path, mode: DualMode, out: Option<&Path>) -> Result<u8, Failure> {
    let text = read(file)?;
    let output = match mode {
        DualMode::PointsToLines => io::format_lines(&geometry::dual_points(&io::parse_points(&text)?)),
        DualMode::LinesToPoints => io::format_points(&geometry::dual_lines(&io::parse_lines(&text)?)),
    };
    write_or_print(out, &output)?;
    Ok(0)
}

fn approx_json(e: &CycloElement, bits: u32) -> String {
    e.approx_decimal(bits).0
}

fn cmd_polygon(cli: &Cli, n: usize, center: bool) -> Result<u8, Failure> {
    let cfg = PolygonConfig::new(n, center).map_err(|e| Failure::new(EXIT_DEGENERATE, e.to_string()))?;
    let enumerated = polygon_spectrum_enumerated(&cfg);
    let closed = polygon_spectrum_closed_form(&cfg).ok();
    let note = match ClosedFormCase::of(&cfg) {
        Some(ClosedFormCase::Odd { k }) => Some(odd_form_note(k)),
        _ => None,
    };
    let (t, rot) = choose_rotation_with_parameter(&cfg);
    let points = instantiate_polygon(&cfg, &rot);
    let bits = precision_bits();
    let mismatch = closed.as_ref().is_some_and(|c| *c != enumerated);

    if cli.json {
        let coords: Vec<Value> = points
            .iter()
            .map(|p| {
                json!({
                    "x": p.x.to_string(),
                    "y": p.y.to_string(),
                    "x_approx": approx_json(&p.x, bits),
                    "y_approx": approx_json(&p.y, bits),
                })
            })
            .collect();
        let doc = json!({
            "n": n,
            "with_center": center,
            "enumerated": enumerated,
            "closed_form": closed,
            "note": note,
            "rotation": {"c": format_rational(rot.c()), "s": format_rational(rot.s()), "parameter": format_rational(&t)},
            "field_order": working_order(n),
            "points": coords,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        println!("config: {cfg}");
        println!("enumerated: {}", join(&enumerated));
        match &closed {
            Some(c) => println!("closed form: {}", join(c)),
            None => println!("closed form: none (odd polygon with center)"),
        }
        if let Some(note) = &note {
            println!("{note}");
        }
        println!("rotation: {rot} from t = {}", format_rational(&t));
        println!("field: Q(z_{}), z = exp(2 pi i / {})", working_order(n), working_order(n));
        for (i, p) in points.iter().enumerate() {
            let label = if i == n { "center".to_string() } else { format!("q{i}") };
            println!("{label}: x = {}  y = {}", p.x, p.y);
            println!("{label}: x ~ {}  y ~ {}", approx_json(&p.x, bits), approx_json(&p.y, bits));
        }
    }
    if mismatch {
        eprintln!("dirspec: internal error: enumerated spectrum differs from closed form");
        return Ok(EXIT_INTERNAL);
    }
    Ok(0)
}

fn report_text(r: &VerificationReport<CycloElement>) -> Vec<String> {
    let mut out = vec![
        format!("lines: {}", r.line_count),
        format!(
            "pairwise non-parallel: {}{}",
            r.pairwise_nonparallel,
            r.parallel_witness.map(|(i, j)| format!(" (lines {i} and {j})")).unwrap_or_default()
        ),
        format!("non-concurrent: {}", r.nonconcurrent),
        format!("stab counts: {}", join(&r.stab_counts)),
        format!("forbidden: {}", join(&r.forbidden)),
        format!("forbidden hit: {}", join(&r.forbidden_hit)),
    ];
    if let Some([x, y, w]) = &r.concurrency_witness {
        out.push(format!("common point: ({x} : {y} : {w})"));
    }
    out.push(format!("verdict: {}", if r.passed() { "pass" } else { "fail" }));
    out
}

fn cmd_counterexample(cli: &Cli, n: usize, variant: VariantArg, out: Option<&Path>) -> Result<u8, Failure> {
    let variant = match variant {
        VariantArg::Plain => Variant::Plain,
        VariantArg::Center => Variant::Center,
    };
    let bundle = construct_variant(n, variant)?;
    let doc = io::bundle_to_json(&bundle);
    let code = if bundle.certificate.passed() { 0 } else { EXIT_FAIL };
    match out {
        Some(path) => {
            write_or_print(Some(path), &doc)?;
            if !cli.json {
                println!("config: {}", bundle.config);
                println!("rotation: {}", bundle.rotation);
                for line in report_text(&bundle.certificate) {
                    println!("{line}");
                }
                println!("written: {}", path.display());
            }
        }
        None => println!("{doc}"),
    }
    Ok(code)
}

fn cmd_verify(cli: &Cli, file: &Path) -> Result<u8, Failure> {
    let bundle = io::bundle_from_json(&read(file)?)?;
    let report = counterexample::verify(&bundle)?;
    let construction_ok = matches_construction(&bundle);
    let stored_ok = report == bundle.certificate;
    let float = float_crosscheck(&bundle, 1e-6);
    let passed = report.passed() && construction_ok;
    if cli.json {
        let doc = json!({
            "certificate": certificate_document(&report),
            "matches_construction": construction_ok,
            "stored_certificate_agrees": stored_ok,
            "float_crosscheck": {"counts": float.counts, "inconclusive": float.inconclusive},
            "verdict": if passed { "pass" } else { "fail" },
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        for line in report_text(&report) {
            println!("{line}");
        }
        println!("matches construction: {construction_ok}");
        println!("stored certificate agrees: {stored_ok}");
        println!(
            "float cross-check: {} (inconclusive {})",
            join(&float.counts),
            float.inconclusive
        );
    }
    Ok(if passed { 0 } else { EXIT_FAIL })
}

fn cmd_check(cli: &Cli, which: CheckKind) -> Result<u8, Failure> {
    let cfg = |default: usize, min: usize, max: usize| {
        RandomConfig::new(cli.seed, cli.trials.unwrap_or(default), min, max)
    };
    let report: CheckReport = match which {
        CheckKind::Duality => {
            let c = cfg(10_000, 2, 2);
            harness::duality_check(&c, c.count / 10)
        }
        CheckKind::Pinchasi => harness::pinchasi_check(&cfg(1_000, 3, 12)),
        CheckKind::Affine => harness::affine_check(&cfg(100, 3, 8)),
        CheckKind::Oracle => harness::oracle_check(&cfg(200, 1, 8)),
        CheckKind::Transport => harness::transport_check(&cfg(100, 3, 8)),
    };
    if cli.json {
        println!(
            "{}",
            json!({
                "check": report.name,
                "pass": report.pass,
                "fail": report.fail,
                "skip": report.skip,
                "details": report.details,
            })
        );
    } else {
        println!("{report}");
    }
    Ok(if report.ok() { 0 } else { EXIT_FAIL })
}
