//! Command-line front end.
//!
//! Exit codes: 0 success, 1 obstruction found under `--fail-on-obstruction`,
//! 2 input or usage error, 3 internal failure.

mod input;
mod render;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::exact::{factor_monic, ExactError, FactoredPolynomial};
use crate::families::{
    build_rank3, cyclic_group_ring, enumerate_rank3, fibonacci, ising, s3_group_ring,
    EnumerateOptions, EnumerationRow, EnumerationSummary, FamilyError, Rank3Params,
};
use crate::obstruction::{
    obstruction_report, CyclotomicityComponent, DNumberComponent, ObstructionReport,
};
use crate::ring::{
    characters_numeric, codegree_spectrum, codegrees_via_characters, fp_dimension, validate,
    BasedRing, RingError, SpectrumOptions, DEFAULT_TOLERANCE,
};
use crate::verlinde::{round_trip, validate_smatrix, SMatrixReport, VerlindeError};

pub use input::{load_ring, load_smatrix, parse_ring, ring_from_json, RingFile};
pub use render::{format_complex, format_sig9, Node, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OBSTRUCTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("writing output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) | CliError::Io(_) => EXIT_INTERNAL,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::Malformed(_)
            | RingError::NoDual { .. }
            | RingError::AmbiguousDual { .. }
            | RingError::IndexOutOfRange { .. }
            | RingError::Invalid(_)
            | RingError::Exact(ExactError::DegreeExceeded { .. }) => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::ConstraintViolated { .. }
            | FamilyError::ParameterTooLarge(_)
            | FamilyError::NotAGroup(_)
            | FamilyError::EmptySweep
            | FamilyError::ThreadPool(_) => CliError::Input(e.to_string()),
            FamilyError::ValidationFailed(_) => CliError::Internal(e.to_string()),
            FamilyError::Ring(r) => r.into(),
        }
    }
}

impl From<VerlindeError> for CliError {
    fn from(e: VerlindeError) -> Self {
        match e {
            VerlindeError::Ring(r) => r.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Exact categorification obstructions for based rings.
#[derive(Debug, Parser)]
#[command(name = "codegree", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for enumeration [default: hardware parallelism].
    #[arg(long, env = "CODEGREE_THREADS", global = true,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    /// Tolerance for numeric channels [default: 1e-9, or the S-matrix file's value].
    #[arg(long, global = true, value_parser = parse_tolerance)]
    pub tolerance: Option<f64>,
    /// Exit with status 1 when an obstruction is found.
    #[arg(long, global = true)]
    pub fail_on_obstruction: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the based-ring axioms.
    Validate(RingSource),
    /// Alpha characteristic polynomial, its factorization and formal codegrees.
    Codegrees(RingSource),
    /// d-number and cyclotomicity verdicts.
    Obstruct(RingSource),
    /// Print a built-in ring in the ring-definition file format.
    Family(RingSource),
    /// Sweep K(k,l,m,n) over l <= k < max-k.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        max_k: u64,
    },
    /// Check an S-matrix file and its Verlinde fusion ring.
    Verlinde {
        /// S-matrix file.
        path: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct RingSource {
    /// Ring-definition file.
    pub path: Option<PathBuf>,
    /// Rank-3 ring K(k,l,m,n) given as k,l,m,n.
    #[arg(long, alias = "rank3", value_parser = parse_params)]
    pub family: Option<Rank3Params>,
    /// Group ring of the cyclic group of order n.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
    pub cyclic: Option<u64>,
    /// Group ring of the symmetric group on three letters.
    #[arg(long)]
    pub s3: bool,
    /// Fibonacci ring X^2 = 1 + X.
    #[arg(long)]
    pub fibonacci: bool,
    /// Ising ring.
    #[arg(long)]
    pub ising: bool,
}

fn parse_params(s: &str) -> Result<Rank3Params, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [k, l, m, n] = parts.as_slice() else {
        return Err("expected four comma-separated integers k,l,m,n".into());
    };
    let num = |x: &str| x.parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    Rank3Params::new(num(k)?, num(l)?, num(m)?, num(n)?).map_err(|e| e.to_string())
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 && t < 1.0 => Ok(t),
        Ok(t) => Err(format!("tolerance must lie in (0, 1), got {t}")),
        Err(e) => Err(e.to_string()),
    }
}

impl RingSource {
    /// The ring and a display id. File rings are validated unless `raw`.
    fn resolve(&self, raw: bool) -> Result<(BasedRing, String), CliError> {
        if let Some(path) = &self.path {
            let ring = if raw {
                parse_ring(path)?
            } else {
                load_ring(path)?
            };
            return Ok((ring, path.display().to_string()));
        }
        if let Some(p) = self.family {
            return Ok((build_rank3(p)?, p.to_string()));
        }
        if let Some(n) = self.cyclic {
            return Ok((cyclic_group_ring(n as usize), format!("Z/{n}")));
        }
        if self.s3 {
            return Ok((s3_group_ring(), "S3".into()));
        }
        if self.fibonacci {
            return Ok((fibonacci(), "Fibonacci".into()));
        }
        if self.ising {
            return Ok((ising(), "Ising".into()));
        }
        unreachable!("clap requires exactly one ring source")
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{rendered}");
            return EXIT_OK;
        }
    };
    let result = execute(&cli, out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => code,
        (Ok(_), Err(e)) => {
            let _ = writeln!(err, "codegree: writing output: {e}");
            EXIT_INTERNAL
        }
        (Err(e), _) => {
            let _ = writeln!(err, "codegree: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Validate(src) => cmd_validate(cli, src, out),
        Command::Codegrees(src) => cmd_codegrees(cli, src, out),
        Command::Obstruct(src) => cmd_obstruct(cli, src, out),
        Command::Family(src) => cmd_family(src, out),
        Command::Enumerate { max_k } => cmd_enumerate(cli, *max_k, out),
        Command::Verlinde { path } => cmd_verlinde(cli, path, out),
    }
}

fn emit(cli: &Cli, node: &Node, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.format {
        Format::Text => render::write_text(out, node)?,
        Format::Json => render::write_json(out, node)?,
        Format::Csv => render::write_csv(out, node)?,
    }
    Ok(())
}

fn header(command: &str, id: &str, ring: &BasedRing) -> Node {
    Node::object()
        .with("schema_version", SCHEMA_VERSION)
        .with("command", command)
        .with("ring", id)
        .with("rank", ring.rank())
        .with(
            "labels",
            Node::list(ring.labels().iter().map(String::as_str)),
        )
}

fn tolerance(cli: &Cli) -> f64 {
    cli.tolerance.unwrap_or(DEFAULT_TOLERANCE)
}

fn cmd_validate(cli: &Cli, src: &RingSource, out: &mut dyn Write) -> Result<i32, CliError> {
    let (ring, id) = src.resolve(true)?;
    let report = validate(&ring);
    let checks = report.checks.iter().map(|c| {
        Node::object()
            .with("axiom", c.axiom.name())
            .with("passed", c.passed)
            .with("failure_count", c.failure_count)
            .with(
                "witnesses",
                Node::List(
                    c.witnesses
                        .iter()
                        .map(|w| Node::list(w.iter().copied()))
                        .collect(),
                ),
            )
    });
    let node = header("validate", &id, &ring)
        .with("unit", Node::list(ring.unit_set().iter().copied()))
        .with("dual", Node::list(ring.dual().iter().copied()))
        .with("passed", report.passed())
        .with("checks", Node::List(checks.collect()));
    emit(cli, &node, out)?;
    input::check_valid(&ring, &report, &id)?;
    Ok(EXIT_OK)
}

fn factors_node(factored: &FactoredPolynomial) -> Node {
    Node::List(
        factored
            .factors
            .iter()
            .map(|(f, m)| {
                Node::object()
                    .with("factor", Node::poly(f))
                    .with("degree", f.deg())
                    .with("multiplicity", *m)
            })
            .collect(),
    )
}

fn cmd_codegrees(cli: &Cli, src: &RingSource, out: &mut dyn Write) -> Result<i32, CliError> {
    let (ring, id) = src.resolve(false)?;
    let tol = tolerance(cli);
    let options = SpectrumOptions {
        tolerance: tol,
        ..SpectrumOptions::default()
    };
    let spectrum = codegree_spectrum(&ring, &options)?;
    let mut node = header("codegrees", &id, &ring)
        .with("alpha_charpoly", Node::poly(&spectrum.alpha_charpoly))
        .with("irreducible", spectrum.factors.is_irreducible())
        .with("alpha_factors", factors_node(&spectrum.factors))
        .with("commutative", spectrum.commutative)
        .with("scaled", spectrum.scaled)
        .with(
            "alpha_roots_approx",
            Node::list(spectrum.roots.iter().copied()),
        );
    if spectrum.commutative {
        let table = characters_numeric(&ring, tol)?;
        let codegrees = codegrees_via_characters(&ring, &table)?;
        node = node
            .with("codegrees_approx", Node::list(codegrees))
            .with("fp_dimension_approx", fp_dimension(&ring, tol)?);
    }
    emit(cli, &node, out)?;
    Ok(EXIT_OK)
}

fn d_number_node(d: &DNumberComponent) -> Node {
    match d {
        DNumberComponent::Pass => Node::object().with("result", "pass"),
        DNumberComponent::Fail { factor, witness } => Node::object()
            .with("result", "fail")
            .with("factor", Node::poly(factor))
            .with("witness", *witness),
    }
}

fn cyclotomicity_node(c: &CyclotomicityComponent, ring: &BasedRing) -> Node {
    match c {
        CyclotomicityComponent::Pass => Node::object().with("result", "pass"),
        CyclotomicityComponent::Fail {
            basis_index,
            factor,
            discriminant,
        } => Node::object()
            .with("result", "fail")
            .with("basis_index", *basis_index)
            .with("basis_label", ring.labels()[*basis_index].as_str())
            .with("factor", Node::poly(factor))
            .with(
                "discriminant",
                discriminant
                    .as_ref()
                    .map_or(Node::Null, |d| Node::Exact(d.to_string())),
            ),
        CyclotomicityComponent::Unknown { reasons } => Node::object()
            .with("result", "unknown")
            .with("reasons", Node::list(reasons.iter().map(String::as_str))),
    }
}

fn obstruction_node(
    report: &ObstructionReport,
    ring: &BasedRing,
    id: &str,
) -> Result<Node, CliError> {
    let factored = factor_monic(&report.alpha_charpoly).map_err(RingError::from)?;
    Ok(header("obstruct", id, ring)
        .with("alpha_charpoly", Node::poly(&report.alpha_charpoly))
        .with("irreducible", factored.is_irreducible())
        .with("alpha_factors", factors_node(&factored))
        .with("d_number", d_number_node(&report.d_number))
        .with(
            "cyclotomicity",
            cyclotomicity_node(&report.cyclotomicity, ring),
        )
        .with("verdict", report.verdict.name())
        .with("description", report.verdict.description()))
}

/// The document printed by `obstruct --format json`, without the trailing
/// newline.
pub fn obstruction_json(ring: &BasedRing, id: &str) -> Result<String, CliError> {
    let report = obstruction_report(ring, id)?;
    let node = obstruction_node(&report, ring, id)?;
    serde_json::to_string_pretty(&node).map_err(|e| CliError::Internal(e.to_string()))
}

fn cmd_obstruct(cli: &Cli, src: &RingSource, out: &mut dyn Write) -> Result<i32, CliError> {
    let (ring, id) = src.resolve(false)?;
    let report = obstruction_report(&ring, id.clone())?;
    emit(cli, &obstruction_node(&report, &ring, &id)?, out)?;
    if cli.fail_on_obstruction && report.verdict.is_obstructed() {
        return Ok(EXIT_OBSTRUCTED);
    }
    Ok(EXIT_OK)
}

fn cmd_family(src: &RingSource, out: &mut dyn Write) -> Result<i32, CliError> {
    let (ring, _) = src.resolve(false)?;
    serde_json::to_writer_pretty(&mut *out, &RingFile::from_ring(&ring))
        .map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(EXIT_OK)
}

const ROW_COLUMNS: [&str; 11] = [
    "k",
    "l",
    "m",
    "n",
    "verdict",
    "d_number",
    "d_number_witness",
    "cyclotomicity",
    "cyclotomicity_basis",
    "alpha_charpoly",
    "error",
];

fn row_fields(row: &EnumerationRow) -> [String; 11] {
    let (k, l, m, n) = row.params.as_tuple();
    let mut f: [String; 11] = Default::default();
    f[0] = k.to_string();
    f[1] = l.to_string();
    f[2] = m.to_string();
    f[3] = n.to_string();
    match &row.result {
        Ok(r) => {
            f[4] = r.verdict.name().into();
            match &r.d_number {
                DNumberComponent::Pass => f[5] = "pass".into(),
                DNumberComponent::Fail { witness, .. } => {
                    f[5] = "fail".into();
                    f[6] = witness.to_string();
                }
            }
            match &r.cyclotomicity {
                CyclotomicityComponent::Pass => f[7] = "pass".into(),
                CyclotomicityComponent::Fail { basis_index, .. } => {
                    f[7] = "fail".into();
                    f[8] = basis_index.to_string();
                }
                CyclotomicityComponent::Unknown { .. } => f[7] = "unknown".into(),
            }
            f[9] = r.alpha_charpoly.to_string();
        }
        Err(e) => {
            f[4] = "Error".into();
            f[10] = e.clone();
        }
    }
    f
}

fn summary_line(max_k: u64, s: &EnumerationSummary) -> String {
    let listed: Vec<String> = s
        .cyclotomic_only
        .iter()
        .map(|p| format!("{},{},{},{}", p.k, p.l, p.m, p.n))
        .collect();
    format!(
        "# summary: schema_version={SCHEMA_VERSION} max_k={max_k} rings={} errored={} \
         obstructed_d_number={} obstructed_cyclotomic_only={} not_obstructed={} \
         indeterminate={} cyclotomic_only={}",
        s.rings,
        s.errored,
        s.obstructed_d_number,
        s.cyclotomic_only.len(),
        s.not_obstructed,
        s.indeterminate,
        if listed.is_empty() {
            "none".to_owned()
        } else {
            listed.join(";")
        }
    )
}

fn summary_node(max_k: u64, s: &EnumerationSummary) -> Node {
    let listed = s
        .cyclotomic_only
        .iter()
        .map(|p| Node::list([p.k, p.l, p.m, p.n]));
    Node::object()
        .with("schema_version", SCHEMA_VERSION)
        .with("command", "enumerate")
        .with("max_k", max_k)
        .with(
            "summary",
            Node::object()
                .with("rings", s.rings)
                .with("errored", s.errored)
                .with("obstructed_d_number", s.obstructed_d_number)
                .with("obstructed_cyclotomic_only", s.cyclotomic_only.len())
                .with("not_obstructed", s.not_obstructed)
                .with("indeterminate", s.indeterminate)
                .with("cyclotomic_only", Node::List(listed.collect())),
        )
}

fn cmd_enumerate(cli: &Cli, max_k: u64, out: &mut dyn Write) -> Result<i32, CliError> {
    let options = EnumerateOptions {
        threads: cli.threads.map(|t| t as usize),
    };
    let mut write_error: Option<CliError> = None;
    let summary = match cli.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(ROW_COLUMNS)?;
            let summary = enumerate_rank3(max_k, &options, |row| {
                if write_error.is_none() {
                    write_error = w.write_record(row_fields(row)).err().map(CliError::from);
                }
            })?;
            w.flush()?;
            summary
        }
        Format::Text => enumerate_rank3(max_k, &options, |row| {
            if write_error.is_none() {
                let line = match &row.result {
                    Ok(r) => writeln!(out, "{} {}", row.params, r.verdict),
                    Err(e) => writeln!(out, "{} Error {e}", row.params),
                };
                write_error = line.err().map(CliError::from);
            }
        })?,
        Format::Json => enumerate_rank3(max_k, &options, |row| {
            if write_error.is_none() {
                let fields = row_fields(row);
                let mut node = Node::object();
                for (i, (key, value)) in ROW_COLUMNS.iter().zip(fields).enumerate() {
                    node = match value {
                        v if v.is_empty() => node.with(key, Node::Null),
                        v if i < 4 || (i == 6 || i == 8) => {
                            node.with(key, v.parse::<u64>().expect("numeric column"))
                        }
                        v if i == 9 => node.with(key, Node::Exact(v)),
                        v => node.with(key, v),
                    };
                }
                write_error = serde_json::to_writer(&mut *out, &node)
                    .map_err(io::Error::from)
                    .and_then(|()| writeln!(out))
                    .err()
                    .map(CliError::from);
            }
        })?,
    };
    if let Some(e) = write_error {
        return Err(e);
    }
    match cli.format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &summary_node(max_k, &summary))
                .map_err(io::Error::from)?;
            writeln!(out)?;
        }
        _ => writeln!(out, "{}", summary_line(max_k, &summary))?,
    }
    if summary.errored > 0 {
        return Err(CliError::Internal(format!(
            "{} ring(s) could not be processed",
            summary.errored
        )));
    }
    let obstructed = summary.obstructed_d_number + summary.cyclotomic_only.len();
    if cli.fail_on_obstruction && obstructed > 0 {
        return Ok(EXIT_OBSTRUCTED);
    }
    Ok(EXIT_OK)
}

/// `b_i b_j = sum_k N[i][j][k] b_k` for every `i <= j` (all pairs when
/// noncommutative), as exact text.
fn fusion_rules(ring: &BasedRing) -> Vec<String> {
    let r = ring.rank();
    let labels = ring.labels();
    let commutative = ring.is_commutative();
    let mut rules = Vec::new();
    for i in 0..r {
        for j in if commutative { i..r } else { 0..r } {
            let terms: Vec<String> = (0..r)
                .filter_map(|k| match ring.n(i, j, k) {
                    0 => None,
                    1 => Some(labels[k].clone()),
                    c => Some(format!("{c} {}", labels[k])),
                })
                .collect();
            let rhs = if terms.is_empty() {
                "0".to_owned()
            } else {
                terms.join(" + ")
            };
            rules.push(format!("{} {} = {rhs}", labels[i], labels[j]));
        }
    }
    rules
}

fn smatrix_report_node(report: &SMatrixReport) -> Node {
    Node::object()
        .with("passed", report.passed())
        .with("symmetric", report.symmetric())
        .with("orthogonal", report.orthogonal())
        .with("unit_row_nonzero", report.unit_row_nonzero())
        .with("non_unitary", report.non_unitary)
        .with(
            "max_symmetry_deviation_approx",
            report.max_symmetry_deviation,
        )
        .with(
            "max_orthogonality_deviation_approx",
            report.max_orthogonality_deviation,
        )
        .with("min_unit_row_modulus_approx", report.min_unit_row_modulus)
}

fn cmd_verlinde(cli: &Cli, path: &std::path::Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let s = load_smatrix(path, cli.tolerance)?;
    let report = validate_smatrix(&s);
    let base = Node::object()
        .with("schema_version", SCHEMA_VERSION)
        .with("command", "verlinde")
        .with("source", path.display().to_string())
        .with("rank", s.rank())
        .with("tolerance_approx", s.tolerance())
        .with("validation", smatrix_report_node(&report));
    if !report.passed() {
        emit(cli, &base, out)?;
        return Err(CliError::Input(format!(
            "{}: invalid S-matrix: {}",
            path.display(),
            report.summary()
        )));
    }
    let rt = round_trip(&s)?;
    let alpha = rt.ring.alpha_matrix().char_poly();
    let node = base
        .with("fusion_rules", Node::list(fusion_rules(&rt.ring)))
        .with("alpha_charpoly", Node::poly(&alpha))
        .with(
            "alpha_roots_approx",
            Node::list(rt.alpha_roots.iter().copied()),
        )
        .with("codegrees_approx", Node::list(rt.codegrees.iter().copied()))
        .with("dims_approx", Node::list(rt.dims.iter().copied()))
        .with(
            "global_dimension_deviation_approx",
            rt.global_dimension_deviation,
        )
        .with("multiplicativity_defect_approx", rt.multiplicativity_defect)
        .with("d_number", d_number_node(&rt.d_number));
    emit(cli, &node, out)?;
    Ok(EXIT_OK)
}
