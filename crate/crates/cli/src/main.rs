//! Command-line front end for the certification engine: catalog inspection,
//! proximal points, threshold brackets, single-query certificates, scenario
//! sweeps, and the descent / resolvent desk checks.
//!
//! Exit codes: 0 when every requested check passed, 1 when a certificate or
//! check failed, 2 on usage or configuration errors, 3 on numerical failures
//! (divergence, inconclusive probes, tolerance not reached).

// Same convention as the core crate: `!(x > 0.0)` fails closed on NaN input.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use proxcert_core::engine;
use proxcert_core::graph;
use proxcert_core::grid::BoxRegion;
use proxcert_core::prox;
use proxcert_core::scenario::{run_scenario, ScenarioConfig};
use proxcert_core::space::NormedSpace;
use proxcert_core::threshold;
use proxcert_core::{catalog, Error, Result};

#[derive(Parser)]
#[command(name = "proxcert", version, about = "Certified approximation of subdifferential graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect the built-in function catalog
    Catalog {
        #[command(subcommand)]
        what: CatalogCmd,
    },
    /// Proximal point and envelope value at a given weight
    Prox {
        /// Catalog entry, e.g. `abs` or `neg_quad_c:3`
        function: String,
        /// Base point (comma-separated coordinates for n > 1)
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        x: Vec<f64>,
        /// Regularization weight
        #[arg(long)]
        lambda: f64,
        /// Norm exponent
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Certified optimality gap to reach
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Bracket the prox-boundedness threshold by probing weights
    Threshold {
        function: String,
        /// Bracket width to stop at
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
    },
    /// Certify one query pair against the entourage bounds
    Certify {
        function: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        x: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        xstar: Vec<f64>,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Closure allowance added to both radii; default 1e-6 + 2/density
        #[arg(long)]
        slack: Option<f64>,
        /// Graph sample density (points per unit length)
        #[arg(long, default_value_t = 100.0)]
        density: f64,
    },
    /// Run a scenario sweep from a JSON config and emit a CSV report
    Sweep {
        /// Scenario configuration file
        #[arg(long)]
        config: PathBuf,
        /// CSV destination (stdout when omitted); the run summary lands next
        /// to it as `<out>.summary.json`
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Variational descent from an approximate minimizer, verified on a grid
    Ekeland {
        function: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        xbar: Vec<f64>,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Grid density (points per unit length)
        #[arg(long, default_value_t = 100.0)]
        density: f64,
    },
    /// Solve the resolvent inclusion x* ∈ x + ∂f(x) (Euclidean norm)
    Minty {
        function: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        xstar: Vec<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// One line per entry: name, dimension, convexity, threshold
    List,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    std::process::exit(code);
}

/// 3 for numerical failures the caller may retry with different parameters,
/// 2 for everything that is wrong with the request itself.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Unbounded { .. } | Error::Inconclusive(_) | Error::TolNotReached { .. } => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Catalog { what: CatalogCmd::List } => catalog_list(),
        Cmd::Prox { function, x, lambda, p, tol } => cmd_prox(&function, &x, lambda, p, tol),
        Cmd::Threshold { function, tol, p } => cmd_threshold(&function, tol, p),
        Cmd::Certify { function, x, xstar, eps, lambda, p, tol, slack, density } => {
            cmd_certify(&function, &x, &xstar, eps, lambda, p, tol, slack, density)
        }
        Cmd::Sweep { config, out } => cmd_sweep(&config, out.as_deref()),
        Cmd::Ekeland { function, xbar, eps, lambda, p, density } => {
            cmd_ekeland(&function, &xbar, eps, lambda, p, density)
        }
        Cmd::Minty { function, xstar, tol } => cmd_minty(&function, &xstar, tol),
    }
}

fn fmt_vec(v: &[f64]) -> String {
    if v.len() == 1 {
        format!("{}", v[0])
    } else {
        let parts: Vec<String> = v.iter().map(|c| format!("{c}")).collect();
        format!("[{}]", parts.join(", "))
    }
}

fn yn(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn fmt_region(r: &BoxRegion) -> String {
    let axes: Vec<String> = r
        .lo
        .iter()
        .zip(&r.hi)
        .map(|(l, h)| format!("[{l}, {h}]"))
        .collect();
    axes.join(" x ")
}

fn check_dim(f_dim: usize, v: &[f64]) -> Result<()> {
    if v.len() != f_dim {
        return Err(Error::DimensionMismatch { expected: f_dim, got: v.len() });
    }
    Ok(())
}

fn catalog_list() -> Result<bool> {
    for name in catalog::names() {
        let f = catalog::get(name)?;
        let th = match f.known_threshold {
            Some(t) => format!("{t}"),
            None => "probe".into(),
        };
        println!(
            "{:<14} dim {}  {:<10} threshold {}",
            name,
            f.dim,
            if f.convex { "convex" } else { "nonconvex" },
            th
        );
    }
    println!();
    println!("parametric entries take a `:value` suffix, e.g. `neg_quad_c:3`");
    Ok(true)
}

fn cmd_prox(function: &str, x: &[f64], lambda: f64, p: f64, tol: f64) -> Result<bool> {
    let f = catalog::get(function)?;
    let space = NormedSpace::new(f.dim, p)?;
    check_dim(f.dim, x)?;
    let r = prox::moreau_envelope(&f, &space, x, lambda, tol)?;
    println!("prox point : {}", fmt_vec(&r.point));
    println!("offset     : {} (norm {})", fmt_vec(&r.offset), space.norm(&r.offset)?);
    println!("envelope   : {}", r.value);
    println!("gap        : {:.3e}", r.gap);
    println!("evals      : {}", r.evals);
    Ok(true)
}

fn cmd_threshold(function: &str, tol: f64, p: f64) -> Result<bool> {
    let f = catalog::get(function)?;
    let space = NormedSpace::new(f.dim, p)?;
    if let Some(t) = f.known_threshold {
        println!("closed form: {t}");
    }
    let est = threshold::estimate_threshold(&f, &space, tol)?;
    println!("bracket    : [{}, {}] (width {})", est.lower, est.upper, est.width());
    println!("point est  : {}", est.point_estimate());
    println!("probes     : {}", est.probes.len());
    if !est.prox_bounded {
        return Err(Error::Inconclusive(
            "every probed weight diverged; no bounded regularization found".into(),
        ));
    }
    if !est.upper.is_finite() {
        return Err(Error::Inconclusive("the bracket never closed from above".into()));
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn cmd_certify(
    function: &str,
    x: &[f64],
    xstar: &[f64],
    eps: f64,
    lambda: f64,
    p: f64,
    tol: f64,
    slack: Option<f64>,
    density: f64,
) -> Result<bool> {
    let f = catalog::get(function)?;
    let space = NormedSpace::new(f.dim, p)?;
    check_dim(f.dim, x)?;
    check_dim(f.dim, xstar)?;
    if !(density > 0.0) || !density.is_finite() {
        return Err(Error::Config("density must be finite and > 0".into()));
    }

    // guard before paying for a sample, and pin the estimate so the engine
    // does not probe again
    let th = engine::threshold_estimate_for(&f, &space)?;
    if !(lambda > th) {
        return Err(Error::LambdaBelowThreshold { lambda, threshold: th });
    }
    let f = f.with_threshold(th);

    let qbox = BoxRegion::new(x.to_vec(), x.to_vec())?;
    let margin = 2.0 * (eps / lambda).sqrt() + 2.0;
    let region = f.sample_box.hull(&qbox).pad(margin);
    let sample = graph::sample_graph(&f, &space, &region, density)?;
    let slack = slack.unwrap_or_else(|| graph::default_slack(density));

    println!("function   : {} (p = {p})", f.name);
    println!("query      : x = {}, x* = {}", fmt_vec(x), fmt_vec(xstar));
    println!("cell       : eps = {eps}, lambda = {lambda} (threshold {th})");
    println!("sample     : {} pairs over {} at density {density}", sample.len(), fmt_region(&region));

    let (nu, wi) = graph::violation_witness(&sample, x, xstar)?;
    if nu >= -eps {
        println!("pre-test   : nu = {nu} >= -eps  (eps-related against the sample)");
    } else {
        let w = &sample.pairs[wi];
        println!("pre-test   : nu = {nu} < -eps = {}  (NOT eps-related)", -eps);
        println!("  witness  : pair x = {}, x* = {} certifies the violation", fmt_vec(&w.x), fmt_vec(&w.xstar));
    }

    let rec = engine::br_approximate(&f, &space, x, xstar, eps, lambda, tol, slack)?;
    let ent = graph::entourage_check(&sample, &space, x, xstar, eps, lambda, slack)?;
    println!(
        "constructed: x = {}, x* = {} ({})",
        fmt_vec(&rec.constructed.x),
        fmt_vec(&rec.constructed.xstar),
        rec.constructed.provenance.as_str()
    );
    println!("distances  : dx = {} (bound {} + slack {slack})", rec.dx, rec.bound_x);
    println!("             dx* = {} (bound {})", rec.dxstar, rec.bound_xstar);
    println!("iterate bnd: {}", rec.iterate_bound);
    println!("solver gap : {:.3e}", rec.solver_gap);
    println!("sampled witness within radii: {}", if ent.pass { "yes" } else { "no" });
    println!("pass       : {}", rec.pass);
    Ok(rec.pass)
}

fn cmd_sweep(config: &std::path::Path, out: Option<&std::path::Path>) -> Result<bool> {
    let raw = fs::read_to_string(config)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", config.display())))?;
    let cfg = ScenarioConfig::from_json(&raw)?;
    let report = run_scenario(&cfg)?;
    let ts = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let csv = report.csv_with_comments(&format!("{ts} (unix)"));
    let summary = serde_json::to_string_pretty(&report.summary)
        .map_err(|e| Error::Config(format!("summary serialization: {e}")))?;
    match out {
        Some(path) => {
            fs::write(path, &csv)?;
            let side = path.with_extension("summary.json");
            fs::write(&side, &summary)?;
            eprintln!("wrote {} rows to {}", report.summary.rows, path.display());
            eprintln!("summary: {}", side.display());
        }
        None => {
            print!("{csv}");
            eprintln!("{summary}");
        }
    }
    eprintln!(
        "pass rate {} over {} qualifying rows; digest {}",
        report.summary.pass_rate, report.summary.qualifying_rows, report.summary.digest
    );
    Ok(report.summary.pass_rate == 1.0)
}

fn cmd_ekeland(function: &str, xbar: &[f64], eps: f64, lambda: f64, p: f64, density: f64) -> Result<bool> {
    let f = catalog::get(function)?;
    let space = NormedSpace::new(f.dim, p)?;
    check_dim(f.dim, xbar)?;
    let region = f.sample_box.hull(&BoxRegion::new(xbar.to_vec(), xbar.to_vec())?);
    let grid = graph::testpoint_grid(&f, &region, density);
    let xlam = engine::ekeland_point(&f, &space, xbar, eps, lambda, &grid)?;
    let chk = engine::ekeland_verify(&f, &space, xbar, &xlam, eps, lambda, &grid)?;
    println!("grid       : {} points over {}", grid.len(), fmt_region(&region));
    println!("x_bar      : {} (f = {})", fmt_vec(xbar), f.value(xbar));
    println!("x_lambda   : {} (f = {})", fmt_vec(&xlam), f.value(&xlam));
    println!("step within lambda : {}", yn(chk.within_lambda));
    println!("descended          : {}", yn(chk.descended));
    println!("dominates grid     : {} (margin {:+.3e})", yn(chk.dominates), chk.margin);
    Ok(chk.all())
}

fn cmd_minty(function: &str, xstar: &[f64], tol: f64) -> Result<bool> {
    let f = catalog::get(function)?;
    let space = NormedSpace::euclidean(f.dim);
    check_dim(f.dim, xstar)?;
    let pair = engine::minty_surjectivity_check(&f, &space, xstar, tol)?;
    println!("x          : {}", fmt_vec(&pair.x));
    println!("x* - x     : {}", fmt_vec(&pair.xstar));
    println!("residual   : {:.3e}", pair.residual);
    Ok(true)
}
