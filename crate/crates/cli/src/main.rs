//! Batch command line over the clspace library: every subcommand reads JSON
//! (a file path or an inline literal), writes a single JSON report to
//! stdout, and exits 0 on pass/success verdicts, 1 on mathematical-failure
//! verdicts, 2 on usage or input errors.
//!
//! Vertices are 0-based everywhere. Reports never carry timestamps, so a
//! rerun with the same inputs is byte-identical.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use clspace::analysis::{
    classify_index_one, complex_extreme_membership, frechet_probe, lee_condition_check,
    numerical_radius_lower, perturbation_step, strongly_attaining_points,
    upper_monotonicity_membership, verify_attainment, IndexVerdict,
};
use clspace::exec::Execution;
use clspace::graph::GraphJson;
use clspace::numerics::MaximizeOptions;
use clspace::poly::{build_peak_poly, HomPoly, PolyVec};
use clspace::report::{json_to_rat, json_to_vector, vector_to_json, ParseMode, ReportNum};
use clspace::scalar::Vector;
use clspace::space::reisner_check;
use clspace::survey::{enumerate_reisner, survey_to_json};
use clspace::{Error, Field, Graph, Space};

#[derive(Parser)]
#[command(name = "clspace", version, about = "CL-spaces from perfect graphs: exact norms, extreme points, norm-attaining polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

#[derive(Args)]
struct RunOpts {
    /// RNG seed for every sampled estimate
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Multi-start restarts per maximization
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    /// Value tolerance for attainment verdicts
    #[arg(long, default_value_t = 1e-6)]
    tol_value: f64,
    /// Orbit-distance tolerance for attainment verdicts
    #[arg(long, default_value_t = 5e-2)]
    tol_point: f64,
    /// How vector inputs are parsed
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Scalar field override for the space (default: the JSON's "field",
    /// else per-command default)
    #[arg(long, value_enum)]
    field: Option<FieldArg>,
}

impl RunOpts {
    fn maximize(&self) -> Result<MaximizeOptions, Error> {
        if self.restarts == 0 {
            return Err(Error::InvalidInput("--restarts must be at least 1".into()));
        }
        let bad = |t: f64| t.is_nan() || t <= 0.0;
        if bad(self.tol_value) || bad(self.tol_point) {
            return Err(Error::InvalidInput("tolerances must be positive".into()));
        }
        Ok(MaximizeOptions {
            seed: self.seed,
            restarts: self.restarts,
            ..Default::default()
        })
    }

    fn parse_mode(&self) -> ParseMode {
        match self.mode {
            Mode::Exact => ParseMode::Exact,
            Mode::Float => ParseMode::Float,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Cliques, stable sets, clique/chromatic numbers, perfectness
    GraphInfo { graph: String },
    /// Test whether a graph is the graph of a CL-space
    CheckCl { graph: String },
    /// Norm and dual norm of a vector in the space of a graph
    Norm {
        space: String,
        #[arg(long)]
        vector: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Extreme points of the ball and of the dual ball
    Extremes {
        space: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Build the peak polynomial for m nonnegative extreme points
    BuildQ {
        space: String,
        /// JSON array of the m extreme points, e.g. [[1,0,1],[0,1,0]]
        #[arg(long)]
        ys: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Build the peak polynomial and verify its attainment numerically
    VerifyAttainment {
        space: String,
        #[arg(long)]
        ys: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Certified strongly norm-attaining points of degree m
    AttainingPoints {
        space: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Cap on the number of returned points
        #[arg(long, default_value_t = 1000)]
        cap: usize,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Complex extreme point test (real field: upper monotonicity test)
    ComplexExtreme {
        space: String,
        #[arg(long)]
        vector: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Classify whether every polynomial numerical index equals one
    ClassifyIndex {
        space: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Pairing-condition violations over the certified attaining points
    LeeCheck {
        space: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        cap: usize,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Lower bound on the numerical radius of a vector-valued polynomial
    NumericalRadius {
        space: String,
        /// Polynomial vector JSON: {"components": [poly, …]}
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// One peak-sharpening perturbation step on ℓ1
    Perturb {
        /// Target polynomial (JSON)
        #[arg(long)]
        f: String,
        /// Current approximation; defaults to the zero polynomial
        #[arg(long)]
        h: Option<String>,
        /// Basis index of the exposed point
        #[arg(long)]
        w: usize,
        /// Perturbation size, e.g. "1/10"
        #[arg(long)]
        eps: String,
        /// Degree (defaults to the degree of f)
        #[arg(long)]
        k: Option<usize>,
        /// Sharpness parameter: the excluded tube has radius 1/n_ball
        #[arg(long, default_value_t = 4)]
        n_ball: u32,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Sampled smoothness table for the polynomial-space norm (heuristic)
    FrechetProbe {
        space: String,
        #[arg(long)]
        poly: String,
        /// Comma-separated deltas, e.g. "0.1,0.01,0.001"
        #[arg(long, default_value = "0.1,0.01,0.001")]
        ladder: String,
        #[arg(long, default_value_t = 20)]
        directions: usize,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Every graph on n vertices that passes the CL-space test
    EnumerateReisner {
        #[arg(long)]
        n: usize,
    },
}

fn load_json(arg: &str) -> Result<Json, Error> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Error::Json(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Json(format!("invalid JSON in {arg}: {e}")))
}

fn load_graph(arg: &str) -> Result<Graph, Error> {
    let value = load_json(arg)?;
    let parsed: GraphJson = serde_json::from_value(value.clone())
        .map_err(|e| Error::Json(format!("graph JSON needs \"n\" and \"edges\": {e}")))?;
    Graph::from_json(&parsed)
}

/// Space JSON is graph JSON plus an optional `"field": "real"|"complex"`.
/// Priority: --field flag, then the JSON, then the command default.
fn load_space(arg: &str, flag: Option<FieldArg>, default: Field) -> Result<Space, Error> {
    let value = load_json(arg)?;
    let field = match flag {
        Some(FieldArg::Real) => Field::Real,
        Some(FieldArg::Complex) => Field::Complex,
        None => match value.get("field").and_then(Json::as_str) {
            Some("real") => Field::Real,
            Some("complex") => Field::Complex,
            Some(other) => {
                return Err(Error::Json(format!(
                    "field must be \"real\" or \"complex\", got {other:?}"
                )))
            }
            None => default,
        },
    };
    let parsed: GraphJson = serde_json::from_value(value)
        .map_err(|e| Error::Json(format!("space JSON needs \"n\" and \"edges\": {e}")))?;
    Space::from_graph(Graph::from_json(&parsed)?, field)
}

fn load_vectors(arg: &str, mode: ParseMode) -> Result<Vec<Vector>, Error> {
    let value = load_json(arg)?;
    let rows = value
        .as_array()
        .ok_or_else(|| Error::Json("expected a JSON array of vectors".into()))?;
    rows.iter().map(|r| json_to_vector(r, mode)).collect()
}

fn run(command: Command) -> Result<(Json, u8), Error> {
    match command {
        Command::GraphInfo { graph } => {
            let g = load_graph(&graph)?;
            let perfect = if g.n() <= clspace::graph::PERFECTNESS_LIMIT {
                Some(g.is_perfect()?)
            } else {
                None
            };
            let report = json!({
                "n": g.n(),
                "edges": g.edges(),
                "maximal_cliques": g.maximal_cliques(),
                "maximal_stable_sets": g.maximal_stable_sets(),
                "clique_number": g.clique_number(),
                "chromatic_number": g.chromatic_number(),
                "perfect": perfect.as_ref().map(|p| p.perfect),
                "perfect_witness": perfect.as_ref().and_then(|p| p.witness),
            });
            Ok((report, 0))
        }
        Command::CheckCl { graph } => {
            let g = load_graph(&graph)?;
            let report = reisner_check(&g)?;
            let code = if report.passes() { 0 } else { 1 };
            let out = json!({
                "passes": report.passes(),
                "report": report,
            });
            Ok((out, code))
        }
        Command::Norm {
            space,
            vector,
            opts,
        } => {
            let s = load_space(&space, opts.field, Field::Real)?;
            let v = json_to_vector(&load_json(&vector)?, opts.parse_mode())?;
            let norm = s.norm(&v)?;
            let dual = s.dual_norm(&v)?;
            let out = json!({
                "vector": vector_to_json(&v),
                "norm": ReportNum::from(&norm),
                "dual_norm": ReportNum::from(&dual),
            });
            Ok((out, 0))
        }
        Command::Extremes { space, opts } => {
            let s = load_space(&space, opts.field, Field::Real)?;
            let primal = s.extreme_points();
            let dual = s.dual_extreme_points();
            let out = json!({
                "field": s.field(),
                "extreme_points": primal,
                "dual_extreme_points": dual,
            });
            Ok((out, 0))
        }
        Command::BuildQ { space, ys, opts } => {
            let s = load_space(&space, opts.field, Field::Real)?;
            let ys = load_vectors(&ys, ParseMode::Exact)?;
            let (q, pred) = build_peak_poly(&s, &ys)?;
            let out = json!({
                "polynomial": q.to_json(),
                "prediction": pred.to_json(),
            });
            Ok((out, 0))
        }
        Command::VerifyAttainment { space, ys, opts } => {
            let max_opts = opts.maximize()?;
            let s = load_space(&space, opts.field, Field::Real)?;
            let ys = load_vectors(&ys, ParseMode::Exact)?;
            let (q, pred) = build_peak_poly(&s, &ys)?;
            let report = verify_attainment(
                &s,
                &q,
                &pred,
                opts.tol_value,
                opts.tol_point,
                &max_opts,
                "peak-poly",
            )?;
            let code = if report.pass { 0 } else { 1 };
            Ok((report.to_json(), code))
        }
        Command::AttainingPoints {
            space,
            m,
            cap,
            opts,
        } => {
            let s = load_space(&space, opts.field, Field::Real)?;
            let points = strongly_attaining_points(&s, m, cap)?;
            Ok((points.to_json(), 0))
        }
        Command::ComplexExtreme {
            space,
            vector,
            opts,
        } => {
            let s = load_space(&space, opts.field, Field::Complex)?;
            let v = json_to_vector(&load_json(&vector)?, ParseMode::Exact)?;
            let report = match s.field() {
                Field::Complex => complex_extreme_membership(&s, &v)?,
                Field::Real => upper_monotonicity_membership(&s, &v)?,
            };
            let code = if report.member { 0 } else { 1 };
            Ok((report.to_json(), code))
        }
        Command::ClassifyIndex { space, k, opts } => {
            let s = load_space(&space, opts.field, Field::Complex)?;
            let c = classify_index_one(&s, k)?;
            let code = match c.verdict {
                IndexVerdict::IndexOneEllInfty => 0,
                IndexVerdict::NotIndexOne => 1,
            };
            Ok((c.to_json(), code))
        }
        Command::LeeCheck {
            space,
            k,
            cap,
            opts,
        } => {
            let s = load_space(&space, opts.field, Field::Complex)?;
            let points = strongly_attaining_points(&s, k.max(2), cap)?;
            let violations = lee_condition_check(&s, &points.points, k)?;
            let code = if violations.is_empty() { 0 } else { 1 };
            let out = json!({
                "k": k,
                "points_checked": points.points.len(),
                "points_truncated": points.truncated,
                "violations": violations.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            });
            Ok((out, code))
        }
        Command::NumericalRadius { space, poly, opts } => {
            let max_opts = opts.maximize()?;
            let s = load_space(&space, opts.field, Field::Complex)?;
            let p = PolyVec::from_json(&load_json(&poly)?)?;
            let report = numerical_radius_lower(&s, &p, &max_opts)?;
            Ok((report.to_json(), 0))
        }
        Command::Perturb {
            f,
            h,
            w,
            eps,
            k,
            n_ball,
            opts,
        } => {
            let max_opts = opts.maximize()?;
            let f = HomPoly::from_json(&load_json(&f)?)?;
            let h = match h {
                Some(arg) => HomPoly::from_json(&load_json(&arg)?)?,
                None => HomPoly::zero(f.n(), f.degree()),
            };
            let eps = json_to_rat(&Json::String(eps))?;
            let k = k.unwrap_or_else(|| f.degree());
            let (g, report) = perturbation_step(&f, &h, w, &eps, k, n_ball, &max_opts)?;
            let code = if report.sharp { 0 } else { 1 };
            let out = json!({
                "g": g.to_json(),
                "report": report.to_json(),
            });
            Ok((out, code))
        }
        Command::FrechetProbe {
            space,
            poly,
            ladder,
            directions,
            opts,
        } => {
            let max_opts = opts.maximize()?;
            let s = load_space(&space, opts.field, Field::Real)?;
            let p = HomPoly::from_json(&load_json(&poly)?)?;
            let deltas: Vec<f64> = ladder
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::InvalidInput(format!("bad ladder entry {t:?}: {e}")))
                })
                .collect::<Result<_, _>>()?;
            let report = frechet_probe(&s, &p, &deltas, directions, &max_opts)?;
            Ok((report.to_json(), 0))
        }
        Command::EnumerateReisner { n } => {
            let entries = enumerate_reisner(n, Execution::default())?;
            Ok((survey_to_json(n, &entries), 0))
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Json(_) => "json",
        Error::NotClSpace(_) => "not-cl-space",
        Error::VertexCount(_) | Error::VertexOutOfRange { .. } | Error::SelfLoop(_) => "graph",
        Error::DimensionMismatch { .. } | Error::DegreeMismatch(..) => "shape",
        Error::DegreeTooSmall { .. } => "degree",
        Error::PerfectnessLimit { .. } => "size-limit",
        Error::RequiresComplexMode | Error::RequiresRealMode => "field",
        Error::IrrationalModulus(_) => "irrational-modulus",
        Error::NormNotOne(_) => "norm-not-one",
        Error::InfeasibleSlice(_) => "infeasible-slice",
        Error::DirectionUndefined => "direction-undefined",
        Error::EmptyVertexSet | Error::InvalidInput(_) => "invalid-input",
        Error::Internal(_) => "internal",
    }
}

/// Prints the report; a closed pipe (e.g. `| head`) is not an error.
fn emit(report: &Json) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(report).expect("reports serialize");
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((report, code)) => {
            emit(&report);
            ExitCode::from(code)
        }
        Err(e) => {
            let body = json!({
                "error": {
                    "kind": error_kind(&e),
                    "message": e.to_string(),
                    "detail": match &e {
                        Error::NotClSpace(report) => serde_json::to_value(report).ok(),
                        _ => None,
                    },
                }
            });
            emit(&body);
            ExitCode::from(2)
        }
    }
}
