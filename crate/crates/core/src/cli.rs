//! Command-line front end.
//!
//! Every command evaluates a grid of parameters, one row per grid point,
//! and writes a table as CSV (header row, numbers with 17 significant
//! digits) or JSON. Rows are computed data-parallel and written in grid
//! order, so output is byte-identical across runs and thread counts.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value as Json};

use crate::error::{Error, Result};
use crate::exec::{init_thread_pool, map_slice, Execution};
use crate::explicit_formula::{assemble_bound_numeric, GwConfig};
use crate::extremal::{
    eval_f, fourier_transform_quadrature, majorant_coeffs, majorant_mass, minorant_mass,
    nodes_for_tolerance, verify_extremal, weighted_node_sum, ApproxParams, Approximant, GridSpec,
    MajorantCoeffs, MinorantCoeffs, NodeTail, Side,
};
use crate::interp::{
    b_sigma, c_sigma, empirical_ratio, evaluate_bound, l_ratio, leading_bound,
    optimal_parameters_at, realpart_coeff, zeta_envelope_coefficient, BoundKind, DEFAULT_RANGE_C,
};
use crate::special::{lambda0, ZetaConfig};
use crate::zero_sums::{gw_lhs, load_zeros, representation_residual, ZeroOrdinates};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "ZETA_TOOLKIT_THREADS";

/// Largest number of points a single range may expand to.
const MAX_RANGE_POINTS: usize = 1_000_000;

/// Relative violation accepted by `verify`.
const VERIFY_TOLERANCE: f64 = 1e-12;

#[derive(Parser, Clone, Debug)]
#[command(
    name = "zeta-toolkit",
    version,
    about = "Extremal approximations of f_a and bounds for the log-derivative of zeta"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Csv)]
    pub format: Format,

    /// Run on one thread without the data-parallel pool.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// λ0 and, for each (a, Δ), the coefficients and masses of both approximants.
    Constants(PairArgs),
    /// Coefficients A, B, C, D, E as functions of λ.
    Coeffs(CoeffsArgs),
    /// Grid check of L ≤ f_a ≤ U.
    Verify(VerifyArgs),
    /// Closed-form masses against quadrature and weighted node sums.
    Mass(MassArgs),
    /// Main terms, coefficients and error shapes of the bounds on ζ'/ζ.
    Bounds(BoundsArgs),
    /// Explicit-formula evaluation of the bounds on Re(ζ'/ζ)'.
    Gw(GwArgs),
    /// Representation of Re(ζ'/ζ)' as a sum over tabulated zeros.
    Compare(CompareArgs),
    /// Derivative-bound quantities for φ(t) = −log|ζ(σ+it)|.
    Envelope(EnvelopeArgs),
}

#[derive(Args, Clone, Debug)]
pub struct PairArgs {
    /// Offset a = σ − ½ (value, list or lo:hi:step).
    #[arg(long, default_value = "0.25")]
    pub a: Grid,
    /// Bandwidth Δ (value, list or lo:hi:step).
    #[arg(long, default_value = "1")]
    pub delta: Grid,
}

#[derive(Args, Clone, Debug)]
pub struct CoeffsArgs {
    /// λ = πaΔ (value, list or lo:hi:step).
    #[arg(long, default_value = "0.1:3:0.1")]
    pub lambda: Grid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Minorant,
    Majorant,
    Both,
}

impl KindArg {
    fn sides(self) -> Vec<Side> {
        match self {
            KindArg::Minorant => vec![Side::Minorant],
            KindArg::Majorant => vec![Side::Majorant],
            KindArg::Both => vec![Side::Minorant, Side::Majorant],
        }
    }
}

#[derive(Args, Clone, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Both)]
    pub kind: KindArg,
    #[command(flatten)]
    pub pair: PairArgs,
    /// Half width W of the grid [−W, W]; defaults to 20/a.
    #[arg(long)]
    pub window: Option<f64>,
    #[arg(long, default_value_t = 100_001)]
    pub points: usize,
}

#[derive(Args, Clone, Debug)]
pub struct MassArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Both)]
    pub kind: KindArg,
    #[command(flatten)]
    pub pair: PairArgs,
    /// Absolute tolerance of the quadrature and of the node-sum tail.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Args, Clone, Debug)]
pub struct HeightArgs {
    /// σ (value, list or lo:hi:step).
    #[arg(long)]
    pub sigma: Grid,
    /// t (value, list or lo:hi:step).
    #[arg(long)]
    pub t: Grid,
}

#[derive(Args, Clone, Debug)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub grid: HeightArgs,
    /// Range constant c.
    #[arg(long, default_value_t = DEFAULT_RANGE_C)]
    pub c: f64,
    /// Add |ζ'/ζ(σ+it)| and its ratio to the main term of the modulus bound.
    #[arg(long)]
    pub compare_empirical: bool,
}

#[derive(Args, Clone, Debug)]
pub struct GwArgs {
    #[command(flatten)]
    pub grid: HeightArgs,
    #[arg(long, value_enum, default_value_t = KindArg::Both)]
    pub kind: KindArg,
    /// Absolute tolerance of the archimedean quadrature.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Largest n in the prime sum.
    #[arg(long, default_value_t = 10_000_000)]
    pub prime_budget: u64,
    /// Zero table; adds the sum over zeros and uses it for the correction.
    #[arg(long)]
    pub zeros: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub grid: HeightArgs,
    /// Zero table, one ordinate per line.
    #[arg(long)]
    pub zeros: PathBuf,
}

#[derive(Args, Clone, Debug)]
pub struct EnvelopeArgs {
    #[command(flatten)]
    pub grid: HeightArgs,
}

/// A non-empty list of reals given as `v`, `v1,v2,...` or `lo:hi:step`.
/// The endpoint of a stepped range is included when it lies within 1e-9
/// steps of a grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl Grid {
    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |x: &str| {
            let v: f64 = x
                .trim()
                .parse()
                .map_err(|_| format!("'{x}' is not a number"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("'{x}' is not finite"))
            }
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [list] => {
                let v = list
                    .split(',')
                    .map(num)
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(Grid(v))
            }
            [lo, hi, step] => {
                let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
                if !(step > 0.0) {
                    return Err(format!("step {step} must be positive"));
                }
                if hi < lo {
                    return Err(format!("range {lo}:{hi} is empty"));
                }
                let n = ((hi - lo) / step + 1e-9).floor() + 1.0;
                if n > MAX_RANGE_POINTS as f64 {
                    return Err(format!("range has {n} points, limit is {MAX_RANGE_POINTS}"));
                }
                Ok(Grid(
                    (0..n as usize).map(|i| lo + step * i as f64).collect(),
                ))
            }
            _ => Err(format!("'{s}' is neither a list nor lo:hi:step")),
        }
    }
}

/// One output cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Missing, Into::into)
    }
}

fn sci(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => sci(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    /// JSON value; numbers that are not finite or whose magnitude is
    /// outside 1e±300 become strings.
    fn json(&self) -> Json {
        match self {
            Cell::Num(v) => {
                let tame = *v == 0.0 || (v.is_finite() && v.abs().log10().abs() <= 300.0);
                if tame {
                    json!(v)
                } else {
                    Json::String(sci(*v))
                }
            }
            Cell::Int(v) => json!(v),
            Cell::Bool(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Missing => Json::Null,
        }
    }
}

/// Named columns and rows of cells in output order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

type Row = Vec<(String, Cell)>;

impl Table {
    fn from_rows(command: &'static str, rows: Vec<Row>) -> Table {
        let columns = rows
            .first()
            .map(|r| r.iter().map(|(k, _)| k.clone()).collect())
            .unwrap_or_default();
        Table {
            command,
            columns,
            rows: rows
                .into_iter()
                .map(|r| r.into_iter().map(|(_, v)| v).collect())
                .collect(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn write_csv<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(Cell::csv).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    /// `{"command": ..., "columns": [...], "rows": [{column: value}]}`.
    pub fn to_json(&self) -> Json {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Json> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(r.iter().map(Cell::json))
                    .collect();
                Json::Object(m)
            })
            .collect();
        json!({ "command": self.command, "columns": self.columns, "rows": rows })
    }
}

macro_rules! row {
    ($($k:expr => $v:expr),* $(,)?) => {
        vec![$(($k.to_string(), Cell::from($v))),*]
    };
}

fn pairs(p: &PairArgs) -> Vec<(f64, f64)> {
    let mut v = Vec::new();
    for &a in p.a.values() {
        for &d in p.delta.values() {
            v.push((a, d));
        }
    }
    v
}

fn heights(g: &HeightArgs) -> Vec<(f64, f64)> {
    let mut v = Vec::new();
    for &s in g.sigma.values() {
        for &t in g.t.values() {
            v.push((s, t));
        }
    }
    v
}

fn load(path: &std::path::Path) -> Result<ZeroOrdinates> {
    load_zeros(path).map_err(|e| match e {
        Error::Io(io) => Error::Io(std::io::Error::new(
            io.kind(),
            format!("{}: {io}", path.display()),
        )),
        other => other,
    })
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {v} must be positive")))
    }
}

fn collect<T, F>(exec: Execution, items: &[T], f: F) -> Result<Vec<Row>>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<Row>> + Sync + Send,
{
    let parts = map_slice(exec, items, f);
    let mut rows = Vec::new();
    for p in parts {
        rows.extend(p?);
    }
    Ok(rows)
}

fn coefficient_cells(lambda: f64) -> Result<Row> {
    let m = MinorantCoeffs::new(lambda)?;
    let u = MajorantCoeffs::new(lambda, lambda0())?;
    Ok(row![
        "A" => m.A, "B" => m.B, "C" => u.C, "D" => u.D, "E" => u.E,
        "branch" => u.branch.name(),
    ])
}

fn constants(exec: Execution, args: &PairArgs) -> Result<Table> {
    let rows = collect(exec, &pairs(args), |&(a, d)| {
        let p = ApproxParams::new(a, d)?;
        let mut r = row!["lambda0" => lambda0(), "a" => a, "delta" => d, "lambda" => p.lambda];
        r.extend(coefficient_cells(p.lambda)?);
        r.extend(row![
            "minorant_mass" => minorant_mass(&p),
            "majorant_mass" => majorant_mass(&p),
        ]);
        Ok(vec![r])
    })?;
    Ok(Table::from_rows("constants", rows))
}

fn coeffs(exec: Execution, args: &CoeffsArgs) -> Result<Table> {
    let rows = collect(exec, args.lambda.values(), |&l| {
        let mut r = row!["lambda" => l];
        r.extend(coefficient_cells(l)?);
        Ok(vec![r])
    })?;
    Ok(Table::from_rows("coeffs", rows))
}

fn approximants(args: &PairArgs, kind: KindArg) -> Result<Vec<Approximant>> {
    let mut v = Vec::new();
    for (a, d) in pairs(args) {
        let p = ApproxParams::new(a, d)?;
        for side in kind.sides() {
            v.push(Approximant::new(p, side)?);
        }
    }
    Ok(v)
}

fn head(h: &Approximant) -> Result<Row> {
    let p = h.params();
    let branch = match h.side() {
        Side::Majorant => Some(majorant_coeffs(&p)?.branch.name()),
        Side::Minorant => None,
    };
    Ok(row![
        "kind" => h.side().name(), "a" => p.a, "delta" => p.delta, "lambda" => p.lambda,
        "branch" => branch,
    ])
}

fn verify(exec: Execution, args: &VerifyArgs) -> Result<Table> {
    if let Some(w) = args.window {
        check_positive("window", w)?;
    }
    if args.points == 0 {
        return Err(Error::Domain("points must be positive".into()));
    }
    let hs = approximants(&args.pair, args.kind)?;
    // Rows run one after another; each grid is already data-parallel.
    let rows = collect(Execution::Sequential, &hs, |h| {
        let half_width = args.window.unwrap_or(20.0 / h.params().a);
        let rep = verify_extremal(
            exec,
            h,
            GridSpec {
                half_width,
                points: args.points,
            },
        );
        let mut r = head(h)?;
        r.extend(row![
            "half_width" => half_width,
            "points" => rep.points,
            "max_violation" => rep.max_violation,
            "argmax" => rep.argmax,
            "raw_difference" => rep.raw_difference,
            "pass" => rep.max_violation <= VERIFY_TOLERANCE,
        ]);
        Ok(vec![r])
    })?;
    Ok(Table::from_rows("verify", rows))
}

fn mass(exec: Execution, args: &MassArgs) -> Result<Table> {
    check_positive("tol", args.tol)?;
    let hs = approximants(&args.pair, args.kind)?;
    let rows = collect(Execution::Sequential, &hs, |h| {
        let p = h.params();
        let closed = h.mass();
        let quad = fourier_transform_quadrature(exec, h, 0.0, args.tol)?;
        let ns = nodes_for_tolerance(h, args.tol)?;
        let a = p.a;
        let node = weighted_node_sum(exec, &|x| eval_f(a, x), &ns, NodeTail::Interpolates { a })?;
        let mut r = head(h)?;
        r.extend(row![
            "closed_form" => closed,
            "quadrature" => quad.value,
            "quadrature_error" => quad.error,
            "node_sum" => node.value,
            "node_sum_error" => node.error,
            "nodes" => ns.len(),
            "relative_difference" => (quad.value - closed).abs() / closed.abs(),
        ]);
        Ok(vec![r])
    })?;
    Ok(Table::from_rows("mass", rows))
}

fn bounds(exec: Execution, args: &BoundsArgs) -> Result<Table> {
    check_positive("c", args.c)?;
    let zc = ZetaConfig::default();
    let rows = collect(exec, &heights(&args.grid), |&(sigma, t)| {
        if !(t > 1.0) {
            return Err(Error::Range(format!("t = {t} must exceed 1")));
        }
        let log_t = t.ln();
        let mut r = row![
            "sigma" => sigma, "t" => t, "log_t" => log_t,
            "B_sigma" => b_sigma(sigma)?, "C_sigma" => c_sigma(sigma)?,
            "realpart_coeff" => realpart_coeff(sigma)?,
        ];
        for kind in BoundKind::ALL {
            let b = evaluate_bound(kind, sigma, log_t, args.c)?;
            let n = kind.name();
            r.extend(row![
                format!("{n}_main") => b.main_value,
                format!("{n}_log_main") => b.log_main_value,
                format!("{n}_error_shape") => b.error_shape_value,
                format!("{n}_range_ok") => b.range_ok,
            ]);
        }
        if args.compare_empirical {
            let e = empirical_ratio(sigma, t, args.c, &zc)?;
            r.extend(row![
                "log_deriv_abs" => e.log_deriv_abs,
                "imag_abs" => e.imag_abs,
                "ratio" => e.ratio,
            ]);
        }
        Ok(vec![r])
    })?;
    Ok(Table::from_rows("bounds", rows))
}

fn gw(exec: Execution, args: &GwArgs) -> Result<Table> {
    check_positive("tol", args.tol)?;
    let cfg = GwConfig {
        tol: args.tol,
        prime_budget: args.prime_budget,
    };
    let zeros = args.zeros.as_deref().map(load).transpose()?;
    let mut jobs = Vec::new();
    for (s, t) in heights(&args.grid) {
        for side in args.kind.sides() {
            jobs.push((s, t, side));
        }
    }
    let rows = collect(Execution::Sequential, &jobs, |&(sigma, t, side)| {
        let b = assemble_bound_numeric(exec, sigma, t, side, &cfg, zeros.as_ref())?;
        let mut r = row![
            "sigma" => sigma, "t" => t, "kind" => side.name(),
            "a" => b.params.a, "delta" => b.params.delta, "lambda" => b.params.lambda,
            "branch" => b.branch.map(|x| x.name()),
            "archimedean" => b.gw.archimedean, "pole" => b.gw.pole, "log_pi" => b.gw.log_pi,
            "prime_sum" => b.gw.prime_sum, "prime_terms" => b.gw.prime_terms,
            "total" => b.gw.total, "certificate" => b.gw.certificate, "bound" => b.bound,
            "correction" => b.correction, "correction_radius" => b.correction_radius,
            "range_ok" => b.range_ok,
        ];
        if let Some(z) = &zeros {
            let h = Approximant::new(b.params, side)?;
            let lhs = gw_lhs(exec, &h, t, z)?;
            let diff = lhs.value - b.gw.total;
            r.extend(row![
                "zero_sum" => lhs.value,
                "zero_tail" => lhs.tail_bound,
                "difference" => diff,
                "within" => diff.abs() <= lhs.tail_bound + b.gw.certificate,
            ]);
        }
        Ok(vec![r])
    })?;
    Ok(Table::from_rows("gw", rows))
}

fn compare(exec: Execution, args: &CompareArgs) -> Result<Table> {
    let zeros = load(&args.zeros)?;
    let zc = ZetaConfig::default();
    let rows = collect(exec, &heights(&args.grid), |&(sigma, t)| {
        let c = representation_residual(sigma, t, &zeros, &zc)?;
        Ok(vec![row![
            "sigma" => sigma, "t" => t, "direct" => c.direct, "zero_sum" => c.zero_sum,
            "gamma_term" => c.gamma_term, "pole_term" => c.pole_term,
            "residual" => c.residual, "tail_bound" => c.tail_bound,
            "zeta_tail" => c.zeta_tail,
            "within" => c.residual.abs() <= c.tail_bound,
        ]])
    })?;
    Ok(Table::from_rows("compare", rows))
}

fn envelope(exec: Execution, args: &EnvelopeArgs) -> Result<Table> {
    use crate::interp::{ell, log_modulus_coeff};
    use crate::interp::{second_derivative_lower_coeff, second_derivative_upper_coeff};
    let rows = collect(exec, &heights(&args.grid), |&(sigma, t)| {
        if !(t > 1.0) {
            return Err(Error::Range(format!("t = {t} must exceed 1")));
        }
        let log_t = t.ln();
        let m = log_modulus_coeff(sigma)?;
        let a0 = m * ell(1.0, sigma, log_t)?;
        let a2 = second_derivative_upper_coeff(sigma)? * ell(-1.0, sigma, log_t)?;
        let b2 = second_derivative_lower_coeff(sigma)? * ell(-1.0, sigma, log_t)?;
        let (nu, amp) = optimal_parameters_at(a0, a0, a2, b2);
        Ok(vec![row![
            "sigma" => sigma, "t" => t, "log_t" => log_t,
            "alpha0" => a0, "beta0" => a0, "alpha2" => a2, "beta2" => b2,
            "nu" => nu, "A" => amp,
            "leading_bound" => leading_bound(a0, a0, a2, b2),
            "L" => l_ratio(a0, a0, a2, b2),
            "coefficient" => zeta_envelope_coefficient(sigma, log_t)?,
            "C_sigma_coefficient" => c_sigma(sigma)? / (sigma * (1.0 - sigma)),
        ]])
    })?;
    Ok(Table::from_rows("envelope", rows))
}

/// The table for `cfg` without writing it.
pub fn table(cfg: &RunConfig) -> Result<Table> {
    let exec = if cfg.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match &cfg.command {
        Command::Constants(a) => constants(exec, a),
        Command::Coeffs(a) => coeffs(exec, a),
        Command::Verify(a) => verify(exec, a),
        Command::Mass(a) => mass(exec, a),
        Command::Bounds(a) => bounds(exec, a),
        Command::Gw(a) => gw(exec, a),
        Command::Compare(a) => compare(exec, a),
        Command::Envelope(a) => envelope(exec, a),
    }
}

/// 2 for I/O failures, 1 for everything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => 2,
        _ => 1,
    }
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| {
                Error::Domain(format!("{THREADS_ENV} = '{v}' is not a positive integer"))
            }),
        Err(_) => Ok(None),
    }
}

fn write_table(cfg: &RunConfig, t: &Table, out: &mut dyn Write) -> std::io::Result<()> {
    match cfg.format {
        Format::Csv => t.write_csv(out)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &t.to_json())?;
            writeln!(out)?;
        }
    }
    out.flush()
}

/// Run `cfg`, writing the table to `out`. Errors go to `out` as
/// `{"error": {"kind", "message", "exit_code"}}` in JSON mode and to stderr
/// otherwise. Returns the exit code.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> i32 {
    let result = threads_from_env().and_then(|n| {
        init_thread_pool(n);
        table(cfg)
    });
    let err = match result {
        Ok(t) => match write_table(cfg, &t, out) {
            Ok(()) => return 0,
            Err(e) => Error::Io(e),
        },
        Err(e) => e,
    };
    let code = exit_code(&err);
    match cfg.format {
        Format::Json => {
            let obj = json!({
                "error": { "kind": err.kind(), "message": err.to_string(), "exit_code": code }
            });
            let _ = writeln!(out, "{obj}");
        }
        Format::Csv => eprintln!("error: {err}"),
    }
    code
}
