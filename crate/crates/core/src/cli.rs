//! Command-line front end. [`run`] does all the work so that tests can
//! drive it in-process; the `zksym` binary only forwards `std::env::args`.
//!
//! Exit codes: 0 success, 1 invalid input or parameters, 2 numerical or
//! validation failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{self, Branch, LedgerSolution, SolveError};
use crate::geometry::{Geometry, GeometryError, Table};
use crate::lie::{GradedLieAlgebra, LieError};
use crate::metric::{MetricError, MetricParams, DEFAULT_TOL};
use crate::so5;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "ZKSYM_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "zksym",
    version,
    about = "Geometry of Z2^k-symmetric metrics on SO(5)/SO(2)xSO(2)xSO(1)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Absolute tolerance for all comparisons
    #[arg(long, env = TOL_ENV, default_value_t = DEFAULT_TOL, allow_negative_numbers = true)]
    pub tol: f64,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// JSON or TOML file with keys t, u, v, w; flags override its values
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub u: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub v: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub w: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build so(5), report its grading and validate it
    Inspect {
        /// Load an algebra document instead of the built-in so(5)
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Bracket, U and connection tables in the orthonormal frame
    Tables {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Ricci tensor in the orthonormal frame
    Ricci {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Infinitesimal isometries in m
    Isometries {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Naturally-reductive test
    CheckNr {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: Output,
    },
    /// First Ledger condition residuals
    Ledger {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Metric families satisfying the first Ledger condition at one S
    Solve {
        #[arg(long)]
        branch: Branch,
        #[arg(long = "S", allow_negative_numbers = true)]
        s: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Solve over a grid of interior points of an S interval
    Sweep {
        #[arg(long)]
        branch: Branch,
        /// Defaults to the lower end of the branch interval
        #[arg(long = "S-min", allow_negative_numbers = true)]
        s_min: Option<f64>,
        /// Defaults to the upper end of the branch interval
        #[arg(long = "S-max", allow_negative_numbers = true)]
        s_max: Option<f64>,
        #[arg(long = "S-steps", default_value_t = 50)]
        s_steps: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    fn numerical(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_NUMERICAL,
            message: message.into(),
        }
    }
}

impl From<MetricError> for CliError {
    fn from(e: MetricError) -> Self {
        let code = if e.is_numerical() {
            EXIT_NUMERICAL
        } else {
            EXIT_INVALID
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        let code = if e.is_numerical() {
            EXIT_NUMERICAL
        } else {
            EXIT_INVALID
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        let code = if e.is_numerical() {
            EXIT_NUMERICAL
        } else {
            EXIT_INVALID
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        // A closed stdout (e.g. piped into `head`) is not an error.
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Self {
                code: EXIT_OK,
                message: String::new(),
            };
        }
        Self::invalid(e.to_string())
    }
}

/// Parameter file contents; every key optional so flags can fill the rest.
#[derive(Debug, Default, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFile {
    pub t: Option<f64>,
    pub u: Option<f64>,
    pub v: Option<f64>,
    pub w: Option<f64>,
}

impl ParamFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
        let is_toml = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("toml"));
        let parsed = if is_toml {
            toml::from_str(&text).map_err(|e| e.to_string())
        } else {
            serde_json::from_str(&text)
                .or_else(|je| toml::from_str(&text).map_err(|_| je.to_string()))
        };
        parsed.map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
    }
}

impl ParamArgs {
    pub fn resolve(&self) -> Result<MetricParams, CliError> {
        let file = match &self.params {
            Some(path) => ParamFile::load(path)?,
            None => ParamFile::default(),
        };
        let pick = |flag: Option<f64>, from_file: Option<f64>, name: &str| {
            flag.or(from_file).ok_or_else(|| {
                CliError::invalid(format!(
                    "missing parameter {name} (use --{name} or --params)"
                ))
            })
        };
        let t = pick(self.t, file.t, "t")?;
        let u = pick(self.u, file.u, "u")?;
        let v = pick(self.v, file.v, "v")?;
        let w = pick(self.w, file.w, "w")?;
        Ok(MetricParams::new(t, u, v, w)?)
    }
}

fn check_tol(tol: f64) -> Result<f64, CliError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(CliError::invalid(format!(
            "tolerance must be a positive number, got {tol}"
        )))
    }
}

/// Six significant digits in positional notation.
pub fn fmt6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..=9).contains(&mag) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn frame_names() -> Vec<String> {
    crate::metric::FRAME_NAMES
        .iter()
        .map(|s| s.to_string())
        .collect()
}

fn combination(coeffs: &[f64], names: &[String], cutoff: f64) -> String {
    let mut s = String::new();
    for (c, n) in coeffs.iter().zip(names) {
        if c.abs() <= cutoff {
            continue;
        }
        if s.is_empty() {
            let _ = write!(s, "{} {n}", fmt6(*c));
        } else if *c < 0.0 {
            let _ = write!(s, " - {} {n}", fmt6(-c));
        } else {
            let _ = write!(s, " + {} {n}", fmt6(*c));
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn table_text(title: &str, table: &Table, names: &[String], cutoff: f64) -> String {
    let n = table.dim();
    let mut cells = vec![vec![String::new(); n + 1]; n + 1];
    cells[0][0] = title.to_string();
    for i in 0..n {
        cells[0][i + 1] = names[i].clone();
        cells[i + 1][0] = names[i].clone();
        for j in i..n {
            cells[i + 1][j + 1] = combination(table.entry(i, j), names, cutoff);
        }
    }
    let widths: Vec<usize> = (0..=n)
        .map(|c| {
            cells
                .iter()
                .map(|r| r[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", line.join(" | ").trim_end());
    }
    out
}

fn table_json(table: &Table, names: &[String], cutoff: f64, symmetric_part: bool) -> Value {
    let entries: Vec<Value> = table
        .upper_entries(cutoff)
        .into_iter()
        .filter(|(i, j, _)| symmetric_part || i != j)
        .map(|(i, j, c)| json!({"x": names[i], "y": names[j], "coefficients": c}))
        .collect();
    Value::Array(entries)
}

fn params_json(p: &MetricParams) -> Value {
    serde_json::to_value(p).expect("params serialize")
}

fn emit_json<W: Write>(out: &mut W, value: &Value) -> Result<(), CliError> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("json value serializes")
    )?;
    Ok(())
}

fn cmd_inspect<W: Write>(algebra: Option<&Path>, o: &Output, out: &mut W) -> Result<(), CliError> {
    let tol = if algebra.is_some() {
        check_tol(o.tol)?
    } else {
        0.0
    };
    let (source, alg) = match algebra {
        None => ("so(5)".to_string(), so5::build_so5()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
            let alg = GradedLieAlgebra::from_json(&text).map_err(|e: LieError| {
                CliError::numerical(format!("{}: corrupted algebra: {e}", path.display()))
            })?;
            (path.display().to_string(), alg)
        }
    };
    let report = alg.validate(tol);
    let blocks: Vec<(String, Vec<String>)> = alg
        .labels()
        .into_iter()
        .map(|l| {
            let names = alg
                .component_indices(l)
                .into_iter()
                .map(|i| alg.names()[i].clone())
                .collect();
            (l.to_string(), names)
        })
        .collect();
    match o.format {
        Format::Json => {
            let doc = alg.to_document();
            emit_json(
                out,
                &json!({
                    "source": source,
                    "dim": doc.dim,
                    "names": doc.names,
                    "grading": doc.grading,
                    "structure": doc.structure,
                    "blocks": blocks.iter().map(|(l, n)| json!({"label": l, "dim": n.len(), "basis": n})).collect::<Vec<_>>(),
                    "h_dim": alg.isotropy_indices().len(),
                    "m_dim": alg.complement_indices().len(),
                    "validation": {
                        "valid": report.is_valid(),
                        "tolerance": tol,
                        "antisymmetry": report.antisymmetry,
                        "jacobi": report.jacobi,
                        "grading": report.grading,
                        "max_antisymmetry_residual": report.max_antisymmetry_residual,
                        "max_jacobi_residual": report.max_jacobi_residual,
                    }
                }),
            )?;
        }
        Format::Text => {
            writeln!(out, "algebra: {source}")?;
            writeln!(out, "dim {}", alg.dim())?;
            let sizes: Vec<String> = blocks.iter().map(|(_, n)| n.len().to_string()).collect();
            writeln!(out, "blocks ({})", sizes.join(","))?;
            for (label, names) in &blocks {
                writeln!(out, "  g_{label}: {}", names.join(" "))?;
            }
            if report.is_valid() {
                writeln!(out, "valid")?;
            } else {
                writeln!(
                    out,
                    "invalid: {} antisymmetry, {} jacobi, {} grading violations",
                    report.antisymmetry.len(),
                    report.jacobi.len(),
                    report.grading.len()
                )?;
            }
        }
    }
    if report.is_valid() {
        Ok(())
    } else {
        Err(CliError::numerical("algebra failed validation"))
    }
}

fn cmd_tables<W: Write>(p: &MetricParams, o: &Output, out: &mut W) -> Result<(), CliError> {
    let geo = Geometry::so5(p)?;
    let names = frame_names();
    match o.format {
        Format::Json => emit_json(
            out,
            &json!({
                "frame": names,
                "params": params_json(p),
                "tolerance": o.tol,
                "bracket": table_json(geo.bracket_table(), &names, o.tol, false),
                "u_map": table_json(geo.u_table(), &names, o.tol, true),
                "nabla": table_json(geo.nabla_table(), &names, o.tol, true),
            }),
        ),
        Format::Text => {
            writeln!(
                out,
                "{}",
                table_text("[ , ]_m", geo.bracket_table(), &names, o.tol)
            )?;
            write!(out, "{}", table_text("U", geo.u_table(), &names, o.tol))?;
            Ok(())
        }
    }
}

fn cmd_ricci<W: Write>(p: &MetricParams, o: &Output, out: &mut W) -> Result<(), CliError> {
    let geo = Geometry::so5(p)?;
    let rho = geo.ricci();
    let closed = crate::closed_form::ricci(p)?;
    let computed = [
        rho[(0, 0)],
        rho[(0, 3)],
        rho[(2, 2)],
        rho[(4, 4)],
        rho[(6, 6)],
    ];
    let expected = closed.families();
    let rel: f64 = computed
        .iter()
        .zip(expected.iter())
        .map(|(c, e)| (c - e).abs() / e.abs().max(1.0))
        .fold(0.0, f64::max);
    let names = frame_names();
    match o.format {
        Format::Json => {
            let matrix: Vec<Vec<f64>> = (0..8)
                .map(|i| (0..8).map(|j| rho[(i, j)]).collect())
                .collect();
            emit_json(
                out,
                &json!({
                    "frame": names,
                    "params": params_json(p),
                    "tolerance": o.tol,
                    "matrix": matrix,
                    "entries": {"rho11": computed[0], "rho14": computed[1], "rho23": rho[(1, 2)], "rho33": computed[2], "rho55": computed[3], "rho77": computed[4]},
                    "closed_form": closed,
                    "max_relative_deviation": rel,
                    "rho14_sign_matches_closed_form": computed[1].signum() == expected[1].signum() || expected[1].abs() <= o.tol,
                }),
            )
        }
        Format::Text => {
            let w = 12;
            write!(out, "{:<5}", "")?;
            for n in &names {
                write!(out, " {n:>w$}")?;
            }
            writeln!(out)?;
            for (i, n) in names.iter().enumerate() {
                write!(out, "{n:<5}")?;
                for j in 0..8 {
                    let x = rho[(i, j)];
                    let x = if x.abs() <= o.tol { 0.0 } else { x };
                    write!(out, " {:>w$}", fmt6(x))?;
                }
                writeln!(out)?;
            }
            writeln!(out, "closed-form max relative deviation: {rel:.3e}")?;
            Ok(())
        }
    }
}

fn cmd_isometries<W: Write>(p: &MetricParams, o: &Output, out: &mut W) -> Result<(), CliError> {
    let sp = analysis::infinitesimal_isometries(p, o.tol)?;
    let names = frame_names();
    match o.format {
        Format::Json => emit_json(
            out,
            &json!({
                "frame": names,
                "params": params_json(p),
                "tolerance": o.tol,
                "dim": sp.dim,
                "basis": sp.basis,
                "singular_values": sp.singular_values,
            }),
        ),
        Format::Text => {
            writeln!(out, "dim {}", sp.dim)?;
            for b in &sp.basis {
                writeln!(out, "  {}", combination(b, &names, o.tol))?;
            }
            Ok(())
        }
    }
}

fn cmd_check_nr<W: Write>(p: &MetricParams, o: &Output, out: &mut W) -> Result<(), CliError> {
    let nr = analysis::is_naturally_reductive(p, o.tol)?;
    let closed = analysis::closed_form_naturally_reductive(p, o.tol);
    let names = frame_names();
    let geo_witness = nr
        .witness
        .map(|[i, j, k]| (names[i].clone(), names[j].clone(), names[k].clone()));
    match o.format {
        Format::Json => emit_json(
            out,
            &json!({
                "params": params_json(p),
                "tolerance": o.tol,
                "naturally_reductive": nr.naturally_reductive,
                "closed_form": closed,
                "max_u": nr.max_u,
                "witness": geo_witness.map(|(x, y, z)| json!({"x": x, "y": y, "component": z, "value": nr.max_u})),
            }),
        ),
        Format::Text => {
            writeln!(out, "{}", nr.naturally_reductive)?;
            if let Some((x, y, z)) = geo_witness {
                writeln!(out, "witness: <U({x}, {y}), {z}> = {}", fmt6(nr.max_u))?;
            }
            Ok(())
        }
    }
}

/// The four pairs of frame triples whose equality is the nontrivial content
/// of the first Ledger condition.
pub const NONTRIVIAL_LEDGER_PAIRS: [([usize; 3], [usize; 3]); 4] = [
    ([0, 4, 6], [1, 4, 7]),
    ([0, 5, 7], [1, 5, 6]),
    ([2, 4, 7], [3, 4, 6]),
    ([2, 5, 6], [3, 5, 7]),
];

fn cmd_ledger<W: Write>(p: &MetricParams, o: &Output, out: &mut W) -> Result<(), CliError> {
    let geo = Geometry::so5(p)?;
    let max = geo.max_ledger();
    let star = analysis::eval_star_system(p)?;
    let names = frame_names();
    let holds = max.value <= o.tol;
    let triple_name =
        |t: [usize; 3]| format!("({}, {}, {})", names[t[0]], names[t[1]], names[t[2]]);
    match o.format {
        Format::Json => {
            let pairs: Vec<Value> = NONTRIVIAL_LEDGER_PAIRS
                .iter()
                .map(|&(a, b)| {
                    json!({
                        "left": triple_name(a), "left_value": geo.ledger_basis(a[0], a[1], a[2]),
                        "right": triple_name(b), "right_value": geo.ledger_basis(b[0], b[1], b[2]),
                    })
                })
                .collect();
            emit_json(
                out,
                &json!({
                    "params": params_json(p),
                    "tolerance": o.tol,
                    "max_abs_ledger": max.value,
                    "triple": triple_name(max.triple),
                    "star": star,
                    "nontrivial": pairs,
                    "first_ledger_condition": holds,
                }),
            )
        }
        Format::Text => {
            writeln!(
                out,
                "max |L| = {:.3e} at {}",
                max.value,
                triple_name(max.triple)
            )?;
            let s: Vec<String> = star.iter().map(|x| format!("{x:.3e}")).collect();
            writeln!(out, "reduced system residuals: {}", s.join(" "))?;
            writeln!(
                out,
                "first Ledger condition: {}",
                if holds { "holds" } else { "fails" }
            )?;
            Ok(())
        }
    }
}

fn solve_at(branch: Branch, s: f64, tol: f64) -> Result<Vec<LedgerSolution>, SolveError> {
    match branch {
        Branch::UZero => Ok(analysis::solve_ledger_u0(s, tol)?.to_vec()),
        Branch::UNonzero => analysis::solve_ledger_unonzero(s, tol),
    }
}

fn write_records<W: Write>(
    records: &[LedgerSolution],
    tol: f64,
    format: Format,
    header: &mut bool,
    out: &mut W,
    err: &mut dyn Write,
) -> Result<bool, CliError> {
    let mut all_pass = true;
    for sol in records {
        let report = analysis::verify_solution(sol, tol)?;
        if !report.pass {
            all_pass = false;
            writeln!(
                err,
                "verification failed at S = {}: ledger {:.3e}, family {:.3e}, naturally reductive {}",
                sol.s, report.ledger, report.family, report.naturally_reductive
            )?;
        }
        match format {
            Format::Json => writeln!(
                out,
                "{}",
                serde_json::to_string(sol).expect("record serializes")
            )?,
            Format::Text => {
                if !*header {
                    writeln!(
                        out,
                        "{:<6} {:>10} {:>12} {:>12} {:>12} {:>12} {:>10} {:>10} {:>5}",
                        "branch", "S", "V", "W", "Usq", "u", "max|L|", "max|*|", "NR"
                    )?;
                    *header = true;
                }
                writeln!(
                    out,
                    "{:<6} {:>10} {:>12} {:>12} {:>12} {:>12} {:>10.2e} {:>10.2e} {:>5}",
                    sol.branch.to_string(),
                    fmt6(sol.s),
                    fmt6(sol.v_ratio),
                    fmt6(sol.w_ratio),
                    fmt6(sol.usq),
                    fmt6(sol.params.u()),
                    sol.residuals.ledger,
                    sol.residuals.star,
                    sol.naturally_reductive
                )?;
            }
        }
    }
    Ok(all_pass)
}

/// Interior grid `lo + (hi − lo)(i + 1)/(steps + 1)`, `i = 0..steps`.
pub fn interior_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| lo + (hi - lo) * (i + 1) as f64 / (steps + 1) as f64)
        .collect()
}

fn cmd_solve<W: Write>(
    branch: Branch,
    s: f64,
    o: &Output,
    out: &mut W,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let records = solve_at(branch, s, o.tol)?;
    let mut header = false;
    if write_records(&records, o.tol, o.format, &mut header, out, err)? {
        Ok(())
    } else {
        Err(CliError::numerical(
            "one or more solutions failed verification",
        ))
    }
}

fn cmd_sweep<W: Write>(
    branch: Branch,
    s_min: Option<f64>,
    s_max: Option<f64>,
    steps: usize,
    o: &Output,
    out: &mut W,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let (lo, hi) = branch.interval();
    let (a, b) = (s_min.unwrap_or(lo), s_max.unwrap_or(hi));
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(CliError::invalid(format!("empty S range [{a}, {b}]")));
    }
    if a < lo || b > hi {
        return Err(CliError::invalid(format!(
            "S range [{a}, {b}] leaves the admissible interval ({lo}, {hi}) for branch {branch}"
        )));
    }
    if steps == 0 {
        return Err(CliError::invalid("--S-steps must be at least 1"));
    }
    let grid = interior_grid(a, b, steps);
    let results: Vec<Result<Vec<LedgerSolution>, SolveError>> = grid
        .par_iter()
        .map(|&s| solve_at(branch, s, o.tol))
        .collect();
    let mut header = false;
    let mut all_pass = true;
    for r in results {
        all_pass &= write_records(&r?, o.tol, o.format, &mut header, out, err)?;
    }
    if all_pass {
        Ok(())
    } else {
        Err(CliError::numerical(
            "one or more solutions failed verification",
        ))
    }
}

fn dispatch<W: Write>(cli: Cli, out: &mut W, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Inspect { algebra, out: o } => cmd_inspect(algebra.as_deref(), &o, out),
        Command::Tables { params, out: o } => cmd_tables(&params.resolve()?, &with_tol(o)?, out),
        Command::Ricci { params, out: o } => cmd_ricci(&params.resolve()?, &with_tol(o)?, out),
        Command::Isometries { params, out: o } => {
            cmd_isometries(&params.resolve()?, &with_tol(o)?, out)
        }
        Command::CheckNr { params, out: o } => cmd_check_nr(&params.resolve()?, &with_tol(o)?, out),
        Command::Ledger { params, out: o } => cmd_ledger(&params.resolve()?, &with_tol(o)?, out),
        Command::Solve { branch, s, out: o } => cmd_solve(branch, s, &with_tol(o)?, out, err),
        Command::Sweep {
            branch,
            s_min,
            s_max,
            s_steps,
            out: o,
        } => cmd_sweep(branch, s_min, s_max, s_steps, &with_tol(o)?, out, err),
    }
}

fn with_tol(o: Output) -> Result<Output, CliError> {
    check_tol(o.tol)?;
    Ok(o)
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            if e.code != EXIT_OK {
                let _ = writeln!(err, "error: {}", e.message);
            }
            e.code
        }
    }
}
