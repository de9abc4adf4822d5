//! Command-line front end.
//!
//! Each subcommand groups related operations behind `--op`; every operation
//! of [`crate::structure`], [`crate::dbar`] and [`crate::nlaplace`] is bound
//! to exactly one subcommand. Reports go to `--out` or standard output as CSV
//! (`x,y,re,im,abs`) or JSON.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 expression parse error,
//! 3 numerical or I/O failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::dbar::{self, DbarCandidate, PompeiuSolution};
use crate::error::Error;
use crate::expr::{parse as parse_expr, wirtinger_symbolic, Expr, Wrt};
use crate::field::{ComplexField, ComplexPoint, GridDomain, ImagPart, RealPart, Shape};
use crate::nlaplace::{self, Combine, Convention, MultiPoint, MultiStructure, NcrPair, NdStructure, SeparableField};
use crate::report::{Params, PointReport, ResidualReport};
use crate::structure::{self, CbvCoefficients, HoloMode, StructuralFunction};
use crate::wirtinger::{d_wirtinger, StepPolicy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable holding the default grid size.
pub const GRID_ENV: &str = "VEKUA_GRID";

#[derive(Debug, Parser)]
#[command(name = "vekua", version, about = "Structural complex analysis on grid domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural holomorphy of w under K, and the first-order structural operators.
    CheckHolo(CheckHolo),
    /// Carleman-Bers-Vekua residuals and coefficient extraction.
    ResidualCbv(ResidualCbv),
    /// Solve ∂h/∂z̄ = φ by Cauchy-Pompeiu quadrature, or reconstruct w.
    SolveDbar(SolveDbar),
    /// Sample the explicit solution Φ·exp(−K) (construct_solution).
    Construct(Construct),
    /// Nonlinear structural Laplace operator, one or two variables.
    Laplace(Laplace),
    /// Nonlinear Cauchy-Riemann system and its Laplace right-hand sides.
    Ncr(Ncr),
    /// Symbolic and numeric Wirtinger derivatives of an expression.
    Diff(Diff),
    /// Built-in worked examples.
    Examples(Examples),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Domain: "rect:x0,x1,y0,y1" or "disk:cx,cy,r".
    #[arg(long, allow_hyphen_values = true, default_value = "disk:0,0,1")]
    pub domain: String,
    /// Cells per axis.
    #[arg(long, env = GRID_ENV, default_value_t = 64)]
    pub grid: usize,
    /// First-derivative step, scaled by max(1, |z|).
    #[arg(long, default_value_t = 1e-5)]
    pub h1: f64,
    /// Second-derivative step, scaled by max(1, |z|).
    #[arg(long, default_value_t = 1e-3)]
    pub h2: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; several reports get the operator name inserted before the extension.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StructureArgs {
    /// Structural function K(z), general form.
    #[arg(long = "K", allow_hyphen_values = true, conflicts_with = "kappa")]
    pub k: Option<String>,
    /// κ(z) for the kappa form K = 1 + κ.
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
}

/// Selected operation of `check-holo`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HoloOp {
    /// holo_residual: residual field of structural holomorphy
    Holo,
    /// real_cr_residual: the two real first-order residuals (needs --kappa)
    RealCr,
    /// d_structural: (Dw/∂z, Dw/∂z̄) at --at
    DStructural,
    /// exterior_differential: dz and dz̄ coefficients of dw + w dK at --at
    OneForm,
    /// dx_dy_operators: (D_x w, D_y w) at --at (needs --kappa)
    DxDy,
    /// k_transform: w·K at --at
    KTransform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// w_z̄ + w K_z̄
    Structural,
    /// K w_z̄ + w K_z̄
    Full,
}

#[derive(Debug, Args)]
pub struct CheckHolo {
    /// w(z).
    #[arg(long, allow_hyphen_values = true)]
    pub w: String,
    #[command(flatten)]
    pub structure: StructureArgs,
    #[arg(long, value_enum, default_value_t = HoloOp::Holo)]
    pub op: HoloOp,
    #[arg(long, value_enum, default_value_t = ModeArg::Structural)]
    pub mode: ModeArg,
    /// Point "x,y" for pointwise operations.
    #[arg(long, allow_hyphen_values = true, default_value = "0,0", value_parser = parse_point)]
    pub at: ComplexPoint,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CbvOp {
    /// cbv_residual: residual field C w_z̄ + A w + B w̄
    Residual,
    /// coefficients_from_structure and cbv_from_real: (a, b, c, d) and (A, B, C) at --at (needs --kappa)
    Coefficients,
}

#[derive(Debug, Args)]
pub struct ResidualCbv {
    /// w(z) (residual only).
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    /// Coefficient A(z) of w.
    #[arg(long = "A", allow_hyphen_values = true, default_value = "0")]
    pub a: String,
    /// Coefficient B(z) of w̄.
    #[arg(long = "B", allow_hyphen_values = true, default_value = "0")]
    pub b: String,
    /// Coefficient C(z) of w_z̄.
    #[arg(long = "C", allow_hyphen_values = true, default_value = "1")]
    pub c: String,
    /// Take A, B, C from the kappa form K = 1 + κ instead.
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    #[arg(long, value_enum, default_value_t = CbvOp::Residual)]
    pub op: CbvOp,
    /// Point "x,y".
    #[arg(long, allow_hyphen_values = true, default_value = "0,0", value_parser = parse_point)]
    pub at: ComplexPoint,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DbarOp {
    /// pompeiu_solve and verify_dbar: h at --at targets plus the interior residual of the PompeiuSolution
    Solve,
    /// cauchy_pompeiu_reconstruct: boundary and area parts of w at --at (disk domain)
    Reconstruct,
}

#[derive(Debug, Args)]
pub struct SolveDbar {
    /// Right-hand side φ(z).
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub phi: String,
    /// Function to reconstruct (reconstruct only).
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    #[arg(long, value_enum, default_value_t = DbarOp::Solve)]
    pub op: DbarOp,
    /// Target "x,y"; must be a cell centre unless --snap is given. Repeatable.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    pub at: Vec<ComplexPoint>,
    /// Move each target to the nearest valid cell centre.
    #[arg(long)]
    pub snap: bool,
    /// Interior inset for the residual, as a fraction of the domain size (verify_dbar_with_inset).
    #[arg(long, default_value_t = dbar::DEFAULT_INSET)]
    pub inset: f64,
    #[arg(long, default_value_t = dbar::DEFAULT_BOUNDARY_NODES)]
    pub boundary_nodes: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Construct {
    /// Entire factor Φ(z).
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub phi: String,
    #[command(flatten)]
    pub structure: StructureArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LaplaceOp {
    /// nl_laplace_residual: field of Δ_K w over interior cells
    Residual,
    /// nonlinear_laplace: Δ_K w at --at
    Point,
    /// psi and eta: ψ = K_zz̄ + K_z K_z̄ at --at, with η = ¼ΔK + K_z K_z̄ for comparison
    Psi,
    /// d_structural_nd: one-coordinate structural derivative (--i, --wrt)
    NdDerivative,
    /// nonlinear_laplace_nd: (i, j) component of the operator (--i, --j)
    NdLaplace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WrtArg {
    Z,
    Zbar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CombineArg {
    Sum,
    Product,
}

#[derive(Debug, Args)]
pub struct Laplace {
    /// w(z) for one-variable operations.
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    #[command(flatten)]
    pub structure: StructureArgs,
    #[arg(long, value_enum, default_value_t = LaplaceOp::Residual)]
    pub op: LaplaceOp,
    /// Point "x,y".
    #[arg(long, allow_hyphen_values = true, default_value = "0,0", value_parser = parse_point)]
    pub at: ComplexPoint,
    /// Factor of w in z¹ (w = w1(z¹)·w2(z²)).
    #[arg(long, allow_hyphen_values = true)]
    pub w1: Option<String>,
    /// Factor of w in z²; enables two variables.
    #[arg(long, allow_hyphen_values = true)]
    pub w2: Option<String>,
    /// Part of K in z¹.
    #[arg(long = "K1", allow_hyphen_values = true)]
    pub k1: Option<String>,
    /// Part of K in z².
    #[arg(long = "K2", allow_hyphen_values = true)]
    pub k2: Option<String>,
    /// How K1 and K2 combine.
    #[arg(long, value_enum, default_value_t = CombineArg::Product)]
    pub k_combine: CombineArg,
    /// Coordinate z¹ as "x,y".
    #[arg(long, allow_hyphen_values = true, default_value = "0,0", value_parser = parse_point)]
    pub at1: ComplexPoint,
    /// Coordinate z² as "x,y".
    #[arg(long, allow_hyphen_values = true, default_value = "0,0", value_parser = parse_point)]
    pub at2: ComplexPoint,
    /// Coordinate index, starting at 1.
    #[arg(long, default_value_t = 1)]
    pub i: usize,
    /// Second coordinate index, starting at 1.
    #[arg(long, default_value_t = 1)]
    pub j: usize,
    #[arg(long, value_enum, default_value_t = WrtArg::Zbar)]
    pub wrt: WrtArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NcrOp {
    /// ncr_residual: u_y + v_x − f and u_x − v_y − g over the grid
    Residual,
    /// fg_from_structure: (f, g) at --u, --v with coefficients at --at (needs --kappa)
    Fg,
    /// fg_cr_check and convention_holds: first-order identities between f and g over --probe
    Convention,
    /// laplace_rhs_check: Δu − ½∂_u(f²+g²) and Δv − ½∂_v(f²+g²)
    LaplaceRhs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    /// f_u = g_v, f_v = −g_u
    Cr,
    /// f_v = g_u, f_u = −g_v
    Swapped,
}

#[derive(Debug, Args)]
pub struct Ncr {
    /// w = u + iv supplying the real fields.
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    /// f(u, v) as the real part of an expression in z = u + iv.
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    /// g(u, v) as the real part of an expression in z = u + iv.
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// Derive f, g from the kappa form, coefficients frozen at --at.
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    #[arg(long, value_enum, default_value_t = NcrOp::Residual)]
    pub op: NcrOp,
    #[arg(long, value_enum, default_value_t = ConventionArg::Cr)]
    pub convention: ConventionArg,
    /// Box in (u, v)-space: "rect:u0,u1,v0,v1".
    #[arg(long, allow_hyphen_values = true, default_value = "rect:-2,2,-2,2")]
    pub probe: String,
    /// Point "x,y".
    #[arg(long, allow_hyphen_values = true, default_value = "0,0", value_parser = parse_point)]
    pub at: ComplexPoint,
    #[arg(long = "u-value", default_value_t = 0.0, allow_negative_numbers = true)]
    pub u_value: f64,
    #[arg(long = "v-value", default_value_t = 0.0, allow_negative_numbers = true)]
    pub v_value: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Diff {
    /// Expression in z.
    #[arg(long, allow_hyphen_values = true)]
    pub expr: String,
    /// Point "x,y".
    #[arg(long, allow_hyphen_values = true, default_value = "0,0", value_parser = parse_point)]
    pub at: ComplexPoint,
    #[arg(long, default_value_t = 1e-5)]
    pub h1: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Examples {
    #[command(subcommand)]
    pub action: ExamplesAction,
}

#[derive(Debug, Subcommand)]
pub enum ExamplesAction {
    /// List the built-in examples.
    List,
    /// Run example N and emit its structural-holomorphy report.
    Run {
        n: u8,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A built-in example: K, the entire factor Φ and the disk radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuiltinExample {
    pub n: u8,
    pub k: &'static str,
    pub phi: &'static str,
    pub radius: f64,
    pub grid: usize,
}

pub const EXAMPLES: [BuiltinExample; 3] = [
    BuiltinExample {
        n: 1,
        k: "exp(z*conj(z))",
        phi: "1",
        radius: 0.75,
        grid: 64,
    },
    BuiltinExample {
        n: 2,
        k: "conj(z)",
        phi: "1",
        radius: 1.0,
        grid: 64,
    },
    BuiltinExample {
        n: 3,
        k: "exp(z*conj(z)) + conj(z)",
        phi: "z",
        radius: 1.0,
        grid: 64,
    },
];

/// Where one report went.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub operator: String,
    /// File path, or `None` for standard output.
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub artifacts: Vec<Artifact>,
}

/// A failure with its exit code and rendered diagnostic.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) => EXIT_PARSE,
            Error::NumericalFailure { .. } | Error::Io(_) => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Parses an expression, rendering a caret diagnostic on failure.
fn expr(src: &str, what: &str) -> CliResult<Expr> {
    parse_expr(src).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("cannot parse {what}:\n{}", e.render(src)),
    })
}

fn parse_point(s: &str) -> std::result::Result<ComplexPoint, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [x, y] => {
            let x: f64 = x.parse().map_err(|_| format!("bad x coordinate in {s:?}"))?;
            let y: f64 = y.parse().map_err(|_| format!("bad y coordinate in {s:?}"))?;
            if x.is_finite() && y.is_finite() {
                Ok(ComplexPoint::new(x, y))
            } else {
                Err(format!("non-finite point {s:?}"))
            }
        }
        _ => Err(format!("expected \"x,y\", got {s:?}")),
    }
}

/// Parses `rect:x0,x1,y0,y1` or `disk:cx,cy,r`.
pub fn parse_shape(spec: &str) -> crate::Result<Shape> {
    let bad = || Error::InvalidDomain(format!("domain {spec:?}: expected rect:x0,x1,y0,y1 or disk:cx,cy,r"));
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    let nums = rest
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| bad())?;
    match (kind.trim(), nums.as_slice()) {
        ("rect", &[x_min, x_max, y_min, y_max]) => Ok(Shape::Rect {
            x_min,
            x_max,
            y_min,
            y_max,
        }),
        ("disk", &[cx, cy, radius]) => Ok(Shape::Disk {
            center: ComplexPoint::new(cx, cy),
            radius,
        }),
        _ => Err(bad()),
    }
}

pub fn parse_domain(spec: &str, n: usize) -> crate::Result<GridDomain> {
    crate::field::make_grid(crate::field::GridSpec {
        shape: parse_shape(spec)?,
        nx: n,
        ny: n,
    })
}

impl Common {
    fn grid(&self) -> CliResult<GridDomain> {
        Ok(parse_domain(&self.domain, self.grid)?)
    }

    fn policy(&self) -> CliResult<StepPolicy> {
        Ok(StepPolicy::new(self.h1, self.h2)?)
    }
}

impl StructureArgs {
    fn load(&self) -> CliResult<StructuralFunction> {
        Ok(match (&self.k, &self.kappa) {
            (_, Some(k)) => StructuralFunction::kappa_expr(expr(k, "--kappa")?),
            (Some(k), None) => StructuralFunction::from_expr(expr(k, "--K")?),
            (None, None) => StructuralFunction::constant(Complex64::new(1.0, 0.0)),
        })
    }
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    v.as_deref().ok_or_else(|| usage(format!("{flag} is required for this operation")))
}

enum Output {
    Field(ResidualReport),
    Point(PointReport),
}

impl Output {
    fn operator(&self) -> &str {
        match self {
            Output::Field(r) => &r.operator,
            Output::Point(r) => &r.operator,
        }
    }

    fn render(&self, format: Format) -> CliResult<Vec<u8>> {
        let mut buf = Vec::new();
        match (self, format) {
            (Output::Field(r), _) if !(r.norms.l2.is_finite() && r.norms.linf.is_finite()) => {
                return Err(Failure {
                    code: EXIT_NUMERICAL,
                    message: format!("report {} has non-finite norms", r.operator),
                })
            }
            (Output::Point(r), _) if !r.is_finite() => {
                return Err(Failure {
                    code: EXIT_NUMERICAL,
                    message: format!("report {} has non-finite values", r.operator),
                })
            }
            (Output::Field(r), Format::Json) => buf.extend(r.to_json()?.into_bytes()),
            (Output::Field(r), Format::Csv) => r.write_csv(&mut buf)?,
            (Output::Point(r), Format::Json) => buf.extend(r.to_json()?.into_bytes()),
            (Output::Point(r), Format::Csv) => r.write_csv(&mut buf)?,
        }
        Ok(buf)
    }
}

fn artifact_path(base: &Path, operator: &str, several: bool) -> PathBuf {
    if !several {
        return base.to_path_buf();
    }
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}.{operator}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{operator}"),
    };
    base.with_file_name(name)
}

fn emit(outputs: &[Output], format: Format, out: Option<&Path>, stdout: &mut dyn Write) -> CliResult<Vec<Artifact>> {
    let rendered = outputs
        .iter()
        .map(|o| o.render(format))
        .collect::<CliResult<Vec<_>>>()?;
    let several = outputs.len() > 1;
    let mut artifacts = Vec::new();
    for (o, bytes) in outputs.iter().zip(rendered) {
        let path = match out {
            Some(base) => {
                let p = artifact_path(base, o.operator(), several);
                fs::write(&p, &bytes).map_err(Error::from)?;
                Some(p)
            }
            None => {
                stdout.write_all(&bytes).map_err(Error::from)?;
                None
            }
        };
        artifacts.push(Artifact {
            operator: o.operator().to_owned(),
            path,
        });
    }
    Ok(artifacts)
}

/// Runs the CLI on `argv` (including the program name) with process stdio.
pub fn run<I, T>(argv: I) -> RunOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI with explicit output and diagnostic streams.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> RunOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let info = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let text = e.render().to_string();
            let code = if info {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            } else {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            };
            return RunOutcome {
                exit_code: code,
                artifacts: Vec::new(),
            };
        }
    };
    match dispatch(&cli.command, stdout) {
        Ok(artifacts) => RunOutcome {
            exit_code: EXIT_OK,
            artifacts,
        },
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            RunOutcome {
                exit_code: f.code,
                artifacts: Vec::new(),
            }
        }
    }
}

fn dispatch(cmd: &Command, stdout: &mut dyn Write) -> CliResult<Vec<Artifact>> {
    match cmd {
        Command::CheckHolo(c) => {
            let outs = check_holo(c)?;
            emit(&outs, c.common.format, c.common.out.as_deref(), stdout)
        }
        Command::ResidualCbv(c) => {
            let outs = residual_cbv(c)?;
            emit(&outs, c.common.format, c.common.out.as_deref(), stdout)
        }
        Command::SolveDbar(c) => {
            let outs = solve_dbar(c)?;
            emit(&outs, c.common.format, c.common.out.as_deref(), stdout)
        }
        Command::Construct(c) => {
            let outs = construct(c)?;
            emit(&outs, c.common.format, c.common.out.as_deref(), stdout)
        }
        Command::Laplace(c) => {
            let outs = laplace(c)?;
            emit(&outs, c.common.format, c.common.out.as_deref(), stdout)
        }
        Command::Ncr(c) => {
            let outs = ncr(c)?;
            emit(&outs, c.common.format, c.common.out.as_deref(), stdout)
        }
        Command::Diff(c) => {
            let outs = diff(c)?;
            emit(&outs, c.format, c.out.as_deref(), stdout)
        }
        Command::Examples(e) => match &e.action {
            ExamplesAction::List => {
                for ex in EXAMPLES {
                    writeln!(
                        stdout,
                        "{}: K = {}, Φ = {}, disk radius {}, grid {}",
                        ex.n, ex.k, ex.phi, ex.radius, ex.grid
                    )
                    .map_err(Error::from)?;
                }
                Ok(Vec::new())
            }
            ExamplesAction::Run { n, format, out } => {
                let report = run_example(*n)?;
                emit(&[Output::Field(report)], *format, out.as_deref(), stdout)
            }
        },
    }
}

/// The structural-holomorphy report of built-in example `n`.
pub fn example_report(n: u8) -> crate::Result<ResidualReport> {
    run_example(n).map_err(|f| Error::InvalidParameter(f.message))
}

fn run_example(n: u8) -> CliResult<ResidualReport> {
    let ex = EXAMPLES
        .iter()
        .find(|e| e.n == n)
        .ok_or_else(|| usage(format!("no example {n}; available: 1, 2, 3")))?;
    let s = StructuralFunction::from_expr(expr(ex.k, "example K")?);
    let w = structure::construct_solution(expr(ex.phi, "example Φ")?, &s);
    let grid = GridDomain::disk(ComplexPoint::new(0.0, 0.0), ex.radius, ex.grid, ex.grid)?;
    let mut r = structure::holo_residual(&w, &s, &grid, &StepPolicy::default(), HoloMode::Structural)?;
    r.params.set("example", n as usize);
    r.params.set("phi", ex.phi);
    Ok(r)
}

fn point_params(w: &str, s: &StructuralFunction, policy: &StepPolicy) -> Params {
    let mut p = Params::new().with("w", w);
    p.extend(&s.params(policy));
    p
}

fn check_holo(c: &CheckHolo) -> CliResult<Vec<Output>> {
    let w = expr(&c.w, "--w")?;
    let s = c.structure.load()?;
    let policy = c.common.policy()?;
    let params = || point_params(&c.w, &s, &policy);
    Ok(match c.op {
        HoloOp::Holo => {
            let mode = match c.mode {
                ModeArg::Structural => HoloMode::Structural,
                ModeArg::Full => HoloMode::Full,
            };
            vec![Output::Field(structure::holo_residual(&w, &s, &c.common.grid()?, &policy, mode)?)]
        }
        HoloOp::RealCr => {
            let kappa = expr(required(&c.structure.kappa, "--kappa")?, "--kappa")?;
            let (r1, r2) = structure::real_cr_residual(
                &RealPart(&w),
                &ImagPart(&w),
                &RealPart(&kappa),
                &ImagPart(&kappa),
                &c.common.grid()?,
                &policy,
            )?;
            vec![Output::Field(r1), Output::Field(r2)]
        }
        HoloOp::DStructural => {
            let d = structure::d_structural(&w, &s, c.at, &policy)?;
            vec![Output::Point(
                PointReport::new("d-structural", c.at, params())
                    .with("Dw_dz", d.d_z)
                    .with("Dw_dzbar", d.d_zbar),
            )]
        }
        HoloOp::OneForm => {
            let f = structure::exterior_differential(&w, &s, c.at, &policy)?;
            vec![Output::Point(
                PointReport::new("exterior-differential", c.at, params())
                    .with("dz", f.c_z)
                    .with("dzbar", f.c_zbar),
            )]
        }
        HoloOp::DxDy => {
            let (dx, dy) = structure::dx_dy_operators(&w, &s, c.at, &policy)?;
            vec![Output::Point(
                PointReport::new("dx-dy", c.at, params()).with("Dx_w", dx).with("Dy_w", dy),
            )]
        }
        HoloOp::KTransform => {
            let w0 = w.eval(c.at.z())?;
            let k0 = s.k(c.at.z())?;
            let t = structure::k_transform(w0, k0);
            vec![Output::Point(
                PointReport::new("k-transform", c.at, params())
                    .with("w", w0)
                    .with("K", k0)
                    .with("w_tilde", t.w_tilde),
            )]
        }
    })
}

fn residual_cbv(c: &ResidualCbv) -> CliResult<Vec<Output>> {
    let policy = c.common.policy()?;
    match c.op {
        CbvOp::Residual => {
            let w = expr(required(&c.w, "--w")?, "--w")?;
            let coeffs = match &c.kappa {
                Some(k) => CbvCoefficients::from_structure(&StructuralFunction::kappa_expr(expr(k, "--kappa")?), &policy)?,
                None => CbvCoefficients::new(expr(&c.a, "--A")?, expr(&c.b, "--B")?, expr(&c.c, "--C")?),
            };
            let mut r = structure::cbv_residual(&w, &coeffs, &c.common.grid()?, &policy)?;
            if let Some(k) = &c.kappa {
                r.params.set("kappa", k.as_str());
            }
            Ok(vec![Output::Field(r)])
        }
        CbvOp::Coefficients => {
            let s = StructuralFunction::kappa_expr(expr(required(&c.kappa, "--kappa")?, "--kappa")?);
            let rc = structure::coefficients_from_structure(&s, c.at, &policy)?;
            let cbv = structure::cbv_from_real(&rc);
            let re = |x: f64| Complex64::new(x, 0.0);
            let mut params = s.params(&policy);
            if let Some(e) = s.k_zbar_expr() {
                params.set("dkappa_dzbar", e.to_string());
            }
            Ok(vec![Output::Point(
                PointReport::new("cbv-coefficients", c.at, params)
                    .with("a", re(rc.a))
                    .with("b", re(rc.b))
                    .with("c", re(rc.c))
                    .with("d", re(rc.d))
                    .with("A", cbv.a)
                    .with("B", cbv.b)
                    .with("C", cbv.c),
            )])
        }
    }
}

fn solve_dbar(c: &SolveDbar) -> CliResult<Vec<Output>> {
    let grid = c.common.grid()?;
    let policy = c.common.policy()?;
    let targets = c
        .at
        .iter()
        .map(|&p| if c.snap { snap(&grid, p) } else { Ok(p) })
        .collect::<CliResult<Vec<_>>>()?;
    match c.op {
        DbarOp::Solve => {
            let phi = expr(&c.phi, "--phi")?;
            let mut outs = Vec::new();
            if !targets.is_empty() {
                let params = Params::new().with("phi", c.phi.as_str());
                let mut pr = PointReport::new("pompeiu", targets[0], params);
                for (k, &t) in targets.iter().enumerate() {
                    let h = dbar::pompeiu_solve(&phi, &grid, t)?;
                    pr = pr.with(&format!("h[{k}]"), h);
                    pr.params.set(&format!("target[{k}]"), format!("{},{}", t.x, t.y));
                }
                outs.push(Output::Point(pr));
            }
            let sol = PompeiuSolution::new(&phi, &grid)?;
            let r = dbar::verify_dbar_with_inset(DbarCandidate::Solution(&sol), &phi, &grid, &policy, c.inset)?;
            outs.push(Output::Field(r));
            Ok(outs)
        }
        DbarOp::Reconstruct => {
            let src = required(&c.w, "--w")?;
            let w = expr(src, "--w")?;
            if targets.is_empty() {
                return Err(usage("reconstruct needs at least one --at target"));
            }
            let params = Params::new()
                .with("w", src)
                .with("boundary_nodes", c.boundary_nodes)
                .with("h1", policy.h1);
            let mut pr = PointReport::new("cauchy-pompeiu", targets[0], params);
            for (k, &t) in targets.iter().enumerate() {
                let r = dbar::cauchy_pompeiu_reconstruct(&w, &grid, t, &policy, c.boundary_nodes)?;
                pr = pr
                    .with(&format!("w[{k}]"), r.value())
                    .with(&format!("boundary[{k}]"), r.boundary)
                    .with(&format!("area[{k}]"), r.area)
                    .with(&format!("exact[{k}]"), w.eval(t.z())?);
                pr.params.set(&format!("target[{k}]"), format!("{},{}", t.x, t.y));
            }
            Ok(vec![Output::Point(pr)])
        }
    }
}

fn snap(grid: &GridDomain, p: ComplexPoint) -> CliResult<ComplexPoint> {
    grid.centers()
        .map(|(_, c)| c)
        .min_by(|a, b| {
            let da = (a.z() - p.z()).norm();
            let db = (b.z() - p.z()).norm();
            da.total_cmp(&db)
        })
        .ok_or_else(|| usage("grid has no valid cells"))
}

fn construct(c: &Construct) -> CliResult<Vec<Output>> {
    let s = c.structure.load()?;
    let w = structure::construct_solution(expr(&c.phi, "--phi")?, &s);
    let grid = c.common.grid()?;
    let field = crate::field::sample_field(&w, &grid)?;
    let mut params = Params::new().with("phi", c.phi.as_str()).with("K", s.label());
    if let Some(e) = w.expr() {
        params.set("w", e.to_string());
    }
    Ok(vec![Output::Field(ResidualReport::from_field("construct", field, params)?)])
}

fn laplace(c: &Laplace) -> CliResult<Vec<Output>> {
    let policy = c.common.policy()?;
    match c.op {
        LaplaceOp::Residual | LaplaceOp::Point | LaplaceOp::Psi => {
            let s = c.structure.load()?;
            if c.op == LaplaceOp::Psi {
                let psi = nlaplace::psi(&s, c.at, &policy)?;
                let eta = nlaplace::eta(&s, c.at, &policy)?;
                return Ok(vec![Output::Point(
                    PointReport::new("psi", c.at, s.params(&policy)).with("psi", psi).with("eta", eta),
                )]);
            }
            let src = required(&c.w, "--w")?;
            let w = expr(src, "--w")?;
            if c.op == LaplaceOp::Residual {
                return Ok(vec![Output::Field(nlaplace::nl_laplace_residual(&w, &s, &c.common.grid()?, &policy)?)]);
            }
            let v = nlaplace::nonlinear_laplace(&w, &s, c.at, &policy)?;
            Ok(vec![Output::Point(
                PointReport::new("nonlinear-laplace", c.at, point_params(src, &s, &policy)).with("value", v),
            )])
        }
        LaplaceOp::NdDerivative | LaplaceOp::NdLaplace => laplace_nd(c, &policy),
    }
}

fn laplace_nd(c: &Laplace, policy: &StepPolicy) -> CliResult<Vec<Output>> {
    let w1_src = c.w1.as_deref().or(c.w.as_deref()).ok_or_else(|| usage("--w1 (or --w) is required"))?;
    let w1: Arc<dyn ComplexField> = Arc::new(expr(w1_src, "--w1")?);
    let i = c.i.checked_sub(1).ok_or_else(|| usage("--i starts at 1"))?;
    let j = c.j.checked_sub(1).ok_or_else(|| usage("--j starts at 1"))?;
    let mut params = Params::new().with("w1", w1_src).with("i", c.i).with("j", c.j);
    let (w, s, at): (SeparableField, Box<dyn NdStructure>, MultiPoint) = match &c.w2 {
        None => {
            let s = match (&c.k1, &c.structure.k, &c.structure.kappa) {
                (Some(k), _, _) => StructuralFunction::from_expr(expr(k, "--K1")?),
                _ => c.structure.load()?,
            };
            params.extend(&s.params(policy));
            (
                SeparableField::new(vec![w1], Combine::Product),
                Box::new(s),
                MultiPoint::new(vec![c.at1.z()])?,
            )
        }
        Some(w2_src) => {
            let w2: Arc<dyn ComplexField> = Arc::new(expr(w2_src, "--w2")?);
            let k1: Arc<dyn ComplexField> = Arc::new(expr(required(&c.k1, "--K1")?, "--K1")?);
            let k2: Arc<dyn ComplexField> = Arc::new(expr(required(&c.k2, "--K2")?, "--K2")?);
            let combine = match c.k_combine {
                CombineArg::Sum => Combine::Sum,
                CombineArg::Product => Combine::Product,
            };
            let k = SeparableField::new(vec![k1, k2], combine);
            params.set("w2", w2_src.as_str());
            params.set("K", k.describe());
            params.set("derivative_source", "numeric");
            params.set("h1", policy.h1);
            params.set("h2", policy.h2);
            (
                SeparableField::new(vec![w1, w2], Combine::Product),
                Box::new(MultiStructure(Arc::new(k))),
                MultiPoint::new(vec![c.at1.z(), c.at2.z()])?,
            )
        }
    };
    let (name, value) = match c.op {
        LaplaceOp::NdDerivative => {
            let wrt = match c.wrt {
                WrtArg::Z => Wrt::Z,
                WrtArg::Zbar => Wrt::ZBar,
            };
            params.set("wrt", if wrt == Wrt::Z { "z" } else { "zbar" });
            ("d-structural-nd", nlaplace::d_structural_nd(&w, s.as_ref(), &at, i, wrt, policy)?)
        }
        _ => ("nonlinear-laplace-nd", nlaplace::nonlinear_laplace_nd(&w, s.as_ref(), &at, i, j, policy)?),
    };
    let anchor = ComplexPoint::from(at.coords()[0]);
    if let Some(z2) = at.coords().get(1) {
        params.set("at2", format!("{},{}", z2.re, z2.im));
    }
    Ok(vec![Output::Point(PointReport::new(name, anchor, params).with("value", value))])
}

/// f(u, v) = Re e(u + iv).
fn real_of(e: Expr) -> impl Fn(f64, f64) -> f64 + Send + Sync + 'static {
    move |u, v| e.eval(Complex64::new(u, v)).map_or(f64::NAN, |z| z.re)
}

fn ncr_pair(c: &Ncr, policy: &StepPolicy) -> CliResult<NcrPair> {
    match (&c.kappa, &c.f, &c.g) {
        (Some(k), _, _) => Ok(NcrPair::from_structure(
            &StructuralFunction::kappa_expr(expr(k, "--kappa")?),
            c.at,
            policy,
        )?),
        (None, Some(f), Some(g)) => Ok(NcrPair::labelled(
            real_of(expr(f, "--f")?),
            real_of(expr(g, "--g")?),
            &format!("re({f})"),
            &format!("re({g})"),
        )),
        _ => Err(usage("give --f and --g, or --kappa")),
    }
}

fn ncr(c: &Ncr) -> CliResult<Vec<Output>> {
    let policy = c.common.policy()?;
    match c.op {
        NcrOp::Fg => {
            let s = StructuralFunction::kappa_expr(expr(required(&c.kappa, "--kappa")?, "--kappa")?);
            let (f, g) = nlaplace::fg_from_structure(&s, c.u_value, c.v_value, c.at, &policy)?;
            let params = s.params(&policy).with("u", c.u_value).with("v", c.v_value);
            Ok(vec![Output::Point(
                PointReport::new("fg", c.at, params)
                    .with("f", Complex64::new(f, 0.0))
                    .with("g", Complex64::new(g, 0.0)),
            )])
        }
        NcrOp::Convention => {
            let pair = ncr_pair(c, &policy)?;
            let probe = parse_domain(&c.probe, c.common.grid)?;
            let conv = match c.convention {
                ConventionArg::Cr => Convention::Cr,
                ConventionArg::Swapped => Convention::Swapped,
            };
            let (mut r1, mut r2) = nlaplace::fg_cr_check(&pair, &probe, &policy, conv)?;
            let holds = nlaplace::convention_holds(&(r1.clone(), r2.clone()));
            r1.params.set("holds", holds);
            r2.params.set("holds", holds);
            Ok(vec![Output::Field(r1), Output::Field(r2)])
        }
        NcrOp::Residual | NcrOp::LaplaceRhs => {
            let w = expr(required(&c.w, "--w")?, "--w")?;
            let pair = ncr_pair(c, &policy)?;
            let grid = c.common.grid()?;
            let (r1, r2) = if c.op == NcrOp::Residual {
                nlaplace::ncr_residual(&RealPart(&w), &ImagPart(&w), &pair, &grid, &policy)?
            } else {
                nlaplace::laplace_rhs_check(&RealPart(&w), &ImagPart(&w), &pair, &grid, &policy)?
            };
            Ok(vec![Output::Field(r1), Output::Field(r2)])
        }
    }
}

fn diff(c: &Diff) -> CliResult<Vec<Output>> {
    let e = expr(&c.expr, "--expr")?;
    let dz = wirtinger_symbolic(&e, Wrt::Z);
    let dzb = wirtinger_symbolic(&e, Wrt::ZBar);
    let policy = StepPolicy::new(c.h1, StepPolicy::default().h2)?;
    let num = d_wirtinger(&e, c.at, &policy)?;
    let params = Params::new()
        .with("expr", e.to_string())
        .with("d_z", dz.to_string())
        .with("d_zbar", dzb.to_string())
        .with("h1", c.h1);
    let report = PointReport::new("diff", c.at, params)
        .with("d_z", dz.eval(c.at.z())?)
        .with("d_zbar", dzb.eval(c.at.z())?)
        .with("d_z_numeric", num.d_z)
        .with("d_zbar_numeric", num.d_zbar);
    Ok(vec![Output::Point(report)])
}

/// Long help text of each subcommand, for documentation and audits.
pub fn subcommand_help() -> Vec<(String, String)> {
    let mut cmd = Cli::command();
    cmd.build();
    cmd.get_subcommands_mut()
        .filter(|s| s.get_name() != "help")
        .map(|s| (s.get_name().to_owned(), s.render_long_help().to_string()))
        .collect()
}
