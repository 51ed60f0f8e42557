//! Command-line surface for the square-zero supercharge classifier:
//! classification of supercharge files, verification of the orbit table,
//! ideal emission, orbit sampling, and pencil closure scans.
//!
//! Exit codes are a stable contract: 0 success, 1 verification failure,
//! 2 parse error, 3 domain error.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spinor_orbits::classify::{
    classify_with, closure_scan, emit_ideal_with, sample_orbit, IntersectionPattern,
    InvariantReport, OrbitLabel,
};
use spinor_orbits::scalar::Scalar;
use spinor_orbits::spinor::Orientation;
use spinor_orbits::stabilizer::{
    group_annotation, reference_grid_span, stabilizer_subalgebra, vector_condition_span,
};
use spinor_orbits::superalgebra::Supercharge;

#[derive(Parser)]
#[command(name = "spinor-orbits", version, about = "Square-zero supercharge classifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum OrientationArg {
    #[default]
    Calibrated,
    Flipped,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Orientation {
        match o {
            OrientationArg::Calibrated => Orientation::Calibrated,
            OrientationArg::Flipped => Orientation::Flipped,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a supercharge JSON file and print its invariant report
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check every orbit-table row against its shipped fixture
    VerifyTable {
        /// Sign convention for the odd bracket (the table is invariant)
        #[arg(long, value_enum, default_value_t)]
        orientation: OrientationArg,
        /// Directory of fixture files overriding the embedded ones
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Write the ten quadratic generators of the square-zero ideal
    EmitIdeal {
        out: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        orientation: OrientationArg,
    },
    /// Emit seeded random members of one orbit, one JSON object per line
    Sample {
        label: String,
        #[arg(long)]
        count: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Classify the pencil base + t·direction at each requested t
    ClosureScan {
        pencil: PathBuf,
        /// Comma-separated scalar values, e.g. 0,1,2 or 1+i,1/2
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<String>,
    },
}

enum CliError {
    Verification(String),
    Parse(String),
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Verification(m) | CliError::Parse(m) | CliError::Domain(m) => m,
        }
    }
}

fn read_supercharge(path: &Path) -> Result<Supercharge, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("invalid supercharge in {}: {e}", path.display())))
}

fn render_report_text(report: &InvariantReport, q: &Supercharge) -> String {
    let opt_bool = |b: Option<bool>| b.map_or("-".to_string(), |v| v.to_string());
    let mut out = String::new();
    let _ = writeln!(out, "label: {}", report.label);
    let _ = writeln!(out, "rank: {}", report.rank);
    let _ = writeln!(out, "square_zero: {}", report.square_zero);
    let _ = writeln!(
        out,
        "pattern: {}",
        report.pattern.map_or("-".to_string(), |p| p.to_string())
    );
    let _ = writeln!(out, "psi_pure: {}", opt_bool(report.psi_pure));
    let _ = writeln!(out, "w_isotropic: {}", opt_bool(report.w_isotropic));
    let _ = writeln!(out, "translations_dim: {}", report.translations_dim);
    let _ = writeln!(out, "projective_orbit_dim: {}", report.projective_orbit_dim);
    let _ = writeln!(out, "stabilizer_dim: {}", report.stabilizer_dim);
    let _ = writeln!(out, "stabilizer_shape: {}", group_annotation(report.label));
    let _ = writeln!(out, "supercharge: {q}");
    out
}

fn cmd_classify(file: &Path, format: Format) -> Result<(), CliError> {
    let q = read_supercharge(file)?;
    let report = classify_with(&q, Orientation::default())
        .map_err(|e| CliError::Domain(e.to_string()))?;
    match format {
        Format::Json => println!("{}", serde_json::to_string(&report).unwrap()),
        Format::Text => print!("{}", render_report_text(&report, &q)),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify-table
// ---------------------------------------------------------------------------

struct TableRow {
    label: OrbitLabel,
    fixture: &'static str,
    embedded: &'static str,
    rank: usize,
    pattern: Option<IntersectionPattern>,
    psi_pure: Option<bool>,
    w_isotropic: Option<bool>,
    translations_dim: usize,
    projective_orbit_dim: usize,
}

fn table_rows() -> Vec<TableRow> {
    vec![
        TableRow {
            label: OrbitLabel::R1PureIso,
            fixture: "r1_pure_iso.json",
            embedded: include_str!("../fixtures/r1_pure_iso.json"),
            rank: 1,
            pattern: None,
            psi_pure: Some(true),
            w_isotropic: Some(true),
            translations_dim: 5,
            projective_orbit_dim: 10,
        },
        TableRow {
            label: OrbitLabel::R1PureNonIso,
            fixture: "r1_pure_non_iso.json",
            embedded: include_str!("../fixtures/r1_pure_non_iso.json"),
            rank: 1,
            pattern: None,
            psi_pure: Some(true),
            w_isotropic: Some(false),
            translations_dim: 5,
            projective_orbit_dim: 11,
        },
        TableRow {
            label: OrbitLabel::R1Impure,
            fixture: "r1_impure.json",
            embedded: include_str!("../fixtures/r1_impure.json"),
            rank: 1,
            pattern: None,
            psi_pure: Some(false),
            w_isotropic: Some(true),
            translations_dim: 9,
            projective_orbit_dim: 15,
        },
        TableRow {
            label: OrbitLabel::R2Line,
            fixture: "r2_line.json",
            embedded: include_str!("../fixtures/r2_line.json"),
            rank: 2,
            pattern: Some(IntersectionPattern::Line),
            psi_pure: None,
            w_isotropic: None,
            translations_dim: 7,
            projective_orbit_dim: 18,
        },
        TableRow {
            label: OrbitLabel::R2TwoPoints,
            fixture: "r2_two_points.json",
            embedded: include_str!("../fixtures/r2_two_points.json"),
            rank: 2,
            pattern: Some(IntersectionPattern::TwoPoints),
            psi_pure: None,
            w_isotropic: None,
            translations_dim: 9,
            projective_orbit_dim: 22,
        },
        TableRow {
            label: OrbitLabel::R2Tangent,
            fixture: "r2_tangent.json",
            embedded: include_str!("../fixtures/r2_tangent.json"),
            rank: 2,
            pattern: Some(IntersectionPattern::OnePoint),
            psi_pure: None,
            w_isotropic: None,
            translations_dim: 9,
            projective_orbit_dim: 21,
        },
    ]
}

fn check_row(
    row: &TableRow,
    orientation: Orientation,
    fixtures: Option<&Path>,
) -> Result<(), String> {
    let text = match fixtures {
        Some(dir) => std::fs::read_to_string(dir.join(row.fixture))
            .map_err(|e| format!("cannot read fixture: {e}"))?,
        None => row.embedded.to_string(),
    };
    let q: Supercharge =
        serde_json::from_str(&text).map_err(|e| format!("fixture does not parse: {e}"))?;
    if serde_json::to_string(&q).unwrap() != text.trim_end() {
        return Err("fixture is not in canonical serialized form".to_string());
    }

    let report = classify_with(&q, orientation).map_err(|e| e.to_string())?;
    let check = |name: &str, ok: bool| -> Result<(), String> {
        if ok {
            Ok(())
        } else {
            Err(format!("{name} mismatch"))
        }
    };
    check("label", report.label == row.label)?;
    check("rank", report.rank == row.rank)?;
    check("square_zero", report.square_zero)?;
    check("pattern", report.pattern == row.pattern)?;
    check("psi_pure", report.psi_pure == row.psi_pure)?;
    check("w_isotropic", report.w_isotropic == row.w_isotropic)?;
    check("translations_dim", report.translations_dim == row.translations_dim)?;
    check(
        "projective_orbit_dim",
        report.projective_orbit_dim == row.projective_orbit_dim,
    )?;
    check(
        "stabilizer_dim",
        report.stabilizer_dim + report.projective_orbit_dim == 47,
    )?;

    if let Some(reference) = reference_grid_span(row.label) {
        let computed = vector_condition_span(&q);
        let same = computed.dim() == reference.dim()
            && reference.basis().iter().all(|r| computed.contains(r))
            && computed.basis().iter().all(|r| reference.contains(r));
        check("condition grid", same)?;
    }
    Ok(())
}

fn cmd_verify_table(orientation: Orientation, fixtures: Option<&Path>) -> Result<(), CliError> {
    let rows = table_rows();
    let mut failed = Vec::new();
    for row in &rows {
        match check_row(row, orientation, fixtures) {
            Ok(()) => {
                let s = stabilizer_subalgebra(&spinor_orbits::classify::representative(row.label))
                    .unwrap();
                println!(
                    "row {}: ok (rank {}, orbit dim {}, stabilizer dim {}, {})",
                    row.label,
                    row.rank,
                    row.projective_orbit_dim,
                    s.dim,
                    group_annotation(row.label),
                );
            }
            Err(why) => {
                println!("row {}: FAILED ({why})", row.label);
                failed.push(row.label);
            }
        }
    }
    if failed.is_empty() {
        println!("{}/{} rows verified", rows.len(), rows.len());
        Ok(())
    } else {
        let names: Vec<&str> = failed.iter().map(|l| l.name()).collect();
        Err(CliError::Verification(format!(
            "{} of {} rows failed: {}",
            failed.len(),
            rows.len(),
            names.join(", ")
        )))
    }
}

fn cmd_emit_ideal(out: &Path, orientation: Orientation) -> Result<(), CliError> {
    let polys = emit_ideal_with(orientation);
    let mut text = String::new();
    for p in &polys {
        let _ = writeln!(text, "{p}");
    }
    std::fs::write(out, text)
        .map_err(|e| CliError::Verification(format!("cannot write {}: {e}", out.display())))?;
    println!("wrote {} polynomials to {}", polys.len(), out.display());
    Ok(())
}

fn cmd_sample(label: &str, count: u32, seed: u64, format: Format) -> Result<(), CliError> {
    let label = OrbitLabel::parse(label)
        .ok_or_else(|| CliError::Parse(format!("unknown orbit label {label:?}")))?;
    if label == OrbitLabel::Zero {
        return Err(CliError::Domain("the zero orbit has a single point".to_string()));
    }
    for k in 0..u64::from(count) {
        let q = sample_orbit(label, seed.wrapping_add(k));
        let report = classify_with(&q, Orientation::default())
            .map_err(|e| CliError::Verification(format!("sample failed to classify: {e}")))?;
        if report.label != label {
            return Err(CliError::Verification(format!(
                "sample classified as {} instead of {label}",
                report.label
            )));
        }
        match format {
            Format::Json => {
                let line = SampleLine { seed: seed.wrapping_add(k), supercharge: &q, report: &report };
                println!("{}", serde_json::to_string(&line).unwrap());
            }
            Format::Text => println!("{label}  {q}"),
        }
    }
    Ok(())
}

#[derive(serde::Serialize)]
struct SampleLine<'a> {
    seed: u64,
    supercharge: &'a Supercharge,
    report: &'a InvariantReport,
}

#[derive(serde::Deserialize)]
struct Pencil {
    base: Supercharge,
    direction: Supercharge,
}

fn cmd_closure_scan(pencil: &Path, t_values: &[String]) -> Result<(), CliError> {
    let text = std::fs::read_to_string(pencil)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", pencil.display())))?;
    let pencil: Pencil = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("invalid pencil file: {e}")))?;

    let mut points = Vec::new();
    let mut seen = BTreeSet::new();
    for raw in t_values {
        let t: Scalar = raw
            .trim()
            .parse()
            .map_err(|e| CliError::Parse(format!("bad scalar {raw:?}: {e}")))?;
        if seen.insert(t.to_string()) {
            points.push(t);
        }
    }

    for (t, outcome) in closure_scan(&pencil.base, &pencil.direction, &points) {
        let line = match outcome {
            Ok(label) => serde_json::json!({"t": t.to_string(), "label": label}),
            Err(e) => serde_json::json!({"t": t.to_string(), "error": e.to_string()}),
        };
        println!("{line}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classify { file, format } => cmd_classify(&file, format),
        Command::VerifyTable { orientation, fixtures } => {
            cmd_verify_table(orientation.into(), fixtures.as_deref())
        }
        Command::EmitIdeal { out, orientation } => cmd_emit_ideal(&out, orientation.into()),
        Command::Sample { label, count, seed, format } => {
            cmd_sample(&label, count, seed, format)
        }
        Command::ClosureScan { pencil, t } => cmd_closure_scan(&pencil, &t),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
