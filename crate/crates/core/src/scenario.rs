//! Reproducible sweep harness: JSON config in, CSV rows + JSON summary out.
//!
//! A scenario fixes a function, a norm exponent, grids of `ε` and `λ`, and a
//! seeded query generator. Queries are drawn by perturbing sampled graph
//! points — uniform box sampling almost never lands near the enlarged graph
//! for small `ε` — and every drawn query is swept through all `(ε, λ)`
//! cells. The monotone-violation pre-test value rides along in each row;
//! summary statistics (notably the pass rate) are computed over the rows
//! whose query passed that pre-test, because only those are the theorem's
//! business.
//!
//! Output is byte-identical across runs, thread counts, and the `parallel`
//! feature: cells are keyed and sorted, floats are written with the shortest
//! round-trip formatting, and the digest skips `#` comment lines so a
//! timestamp header never perturbs it.

use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::catalog::{self, piecewise::PiecewiseConfig, FunctionSpec};
use crate::engine::{self, CertificateRecord};
use crate::error::Error;
use crate::graph::{self, csv_cell, GraphSample};
use crate::grid::BoxRegion;
use crate::space::NormedSpace;
use crate::threshold;
use crate::Result;

/// Function under test: a catalog name (`"abs"`, `"neg_quad_c:3"`, …) or an
/// inline piecewise-quadratic definition.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum FunctionChoice {
    Name(String),
    Piecewise(PiecewiseConfig),
}

/// Either the literal string `"auto"` or an explicit list of weights.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum LambdaGrid {
    Word(String),
    List(Vec<f64>),
}

impl Default for LambdaGrid {
    fn default() -> Self {
        LambdaGrid::Word("auto".into())
    }
}

fn default_p() -> f64 {
    2.0
}
fn default_density() -> f64 {
    100.0
}
fn default_tol() -> f64 {
    1e-9
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub function: FunctionChoice,
    #[serde(default = "default_p")]
    pub p: f64,
    pub eps_grid: Vec<f64>,
    #[serde(default)]
    pub lambda_grid: LambdaGrid,
    pub query_count: usize,
    /// Region the graph sample covers (default: the entry's sample box). The
    /// harness pads it so far-out graph pairs can veto over-tilted queries.
    #[serde(default)]
    pub query_box: Option<BoxRegion>,
    #[serde(default = "default_density")]
    pub sample_density: f64,
    /// Closure allowance; default `1e-6 + 2·(sample resolution)`.
    #[serde(default)]
    pub slack: Option<f64>,
    pub seed: u64,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

impl ScenarioConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: ScenarioConfig =
            serde_json::from_str(s).map_err(|e| Error::Config(format!("scenario config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.eps_grid.is_empty() {
            return Err(Error::Config("eps_grid must be nonempty".into()));
        }
        for &e in &self.eps_grid {
            if !(e >= 0.0) || !e.is_finite() {
                return Err(Error::Config(format!("eps_grid entry {e} must be finite and >= 0")));
            }
        }
        if let LambdaGrid::Word(w) = &self.lambda_grid {
            if w != "auto" {
                return Err(Error::Config(format!(
                    "lambda_grid must be \"auto\" or a list of weights, got \"{w}\""
                )));
            }
        }
        if let LambdaGrid::List(v) = &self.lambda_grid {
            if v.is_empty() {
                return Err(Error::Config("lambda_grid list must be nonempty".into()));
            }
            for &l in v {
                if !(l > 0.0) || !l.is_finite() {
                    return Err(Error::Config(format!("lambda_grid entry {l} must be finite and > 0")));
                }
            }
        }
        if self.query_count == 0 {
            return Err(Error::Config("query_count must be >= 1".into()));
        }
        if !(self.sample_density > 0.0) || !self.sample_density.is_finite() {
            return Err(Error::Config("sample_density must be finite and > 0".into()));
        }
        if let Some(s) = self.slack {
            if !(s >= 0.0) || !s.is_finite() {
                return Err(Error::Config("slack must be finite and >= 0".into()));
            }
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::Config("tol must be finite and > 0".into()));
        }
        Ok(())
    }

    fn resolve_function(&self) -> Result<FunctionSpec> {
        match &self.function {
            FunctionChoice::Name(n) => catalog::get(n),
            FunctionChoice::Piecewise(cfg) => cfg.clone().into_spec(),
        }
    }
}

/// One `(query, ε, λ)` cell of a sweep.
#[derive(Debug, Clone)]
pub struct ScenarioRow {
    pub eps: f64,
    pub lambda: f64,
    /// Monotone-violation measure of the query against the graph sample.
    pub nu: f64,
    /// Whether `nu ≥ −ε` (the pre-test this row's query faced).
    pub qualifying: bool,
    pub record: CertificateRecord,
    /// Whether the sample itself offered a witness within the radii.
    pub sampled_witness: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub scenario: String,
    pub function: String,
    pub p: f64,
    pub seed: u64,
    /// SHA-256 of the CSV body (comment lines excluded).
    pub digest: String,
    pub rows: usize,
    /// Fraction of qualifying rows whose certificate passed; 1.0 when no
    /// row qualifies (vacuous).
    pub pass_rate: f64,
    pub qualifying_rows: usize,
    /// Queries accepted / candidates drawn per the rejection sampler.
    pub qualifying_queries: usize,
    pub candidates_drawn: usize,
    /// Max over qualifying rows of `dx / (bound_x + slack)`.
    pub max_primal_excess: f64,
    /// Max over qualifying rows of `dx* / (bound_x* + slack)`.
    pub max_dual_excess: f64,
    /// Fraction of qualifying rows where the finite sample already contained
    /// a witness within the radii.
    pub sampled_witness_rate: f64,
    pub threshold_lower: f64,
    pub threshold_upper: f64,
    pub slack: f64,
    pub tool_version: String,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub summary: RunSummary,
    pub rows: Vec<ScenarioRow>,
}

pub const CSV_HEADER: &str = "scenario,function,p,eps,lambda,qx,qxstar,nu,cx,cxstar,dx,dxstar,bound_x,bound_xstar,iterate_bound,solver_gap,pass";

impl RunReport {
    /// CSV body: header plus one line per row, no comments. This is what the
    /// digest covers.
    pub fn csv_body(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let rec = &r.record;
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                self.summary.scenario,
                self.summary.function,
                self.summary.p,
                r.eps,
                r.lambda,
                csv_cell(&rec.query_x),
                csv_cell(&rec.query_xstar),
                r.nu,
                csv_cell(&rec.constructed.x),
                csv_cell(&rec.constructed.xstar),
                rec.dx,
                rec.dxstar,
                rec.bound_x,
                rec.bound_xstar,
                rec.iterate_bound,
                rec.solver_gap,
                rec.pass,
            ));
        }
        out
    }

    /// Full CSV with `#` comment lines (excluded from the digest).
    pub fn csv_with_comments(&self, timestamp: &str) -> String {
        format!(
            "# generated: {timestamp}\n# tool: proxcert {}\n{}",
            self.summary.tool_version,
            self.csv_body()
        )
    }
}

fn sha256_hex(s: &str) -> String {
    let mut h = Sha256::new();
    h.update(s.as_bytes());
    let d = h.finalize();
    let mut out = String::with_capacity(64);
    for b in d {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Next uniform draw in `[-r, r]`.
fn uniform_sym(rng: &mut ChaCha8Rng, r: f64) -> f64 {
    // 53-bit mantissa path; bit-stable across platforms
    let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    r * (2.0 * u - 1.0)
}

struct QueryDraw {
    x: Vec<f64>,
    xstar: Vec<f64>,
    nu: f64,
    qualifying: bool,
}

/// Perturb sampled graph points into query candidates, preferring those that
/// pass the ε-relatedness pre-test (`nu ≥ −ε`, no slack: the certification
/// slack is the construction's allowance, not the query's); fill with
/// non-qualifying ones only after the candidate budget is spent.
///
/// Sources are restricted to pairs whose vetoes survived discretization: the
/// primal coordinate must lie in the base region (the padding exists to hold
/// the far pairs that reject over-tilted candidates, and perturbing from the
/// pad edge would leave nothing out there to do the rejecting), and the dual
/// coordinate must sit at least `dual_margin` below the truncation cap of
/// unbounded dual sets (a query slid past the deepest sampled normal-cone
/// element would face no deeper pair to veto it, even though the true graph
/// continues to −∞). Streams are split per purpose and position is strided
/// per candidate so adding queries never reshuffles earlier ones.
#[allow(clippy::too_many_arguments)]
fn draw_queries(
    sample: &GraphSample,
    base: &BoxRegion,
    dual_margin: f64,
    eps: f64,
    lambda_mid: f64,
    cfg: &ScenarioConfig,
    eps_index: usize,
    candidates_drawn: &mut usize,
) -> Result<Vec<QueryDraw>> {
    let r_x = (eps / lambda_mid).sqrt();
    let r_s = (lambda_mid * eps).sqrt();
    let dual_cap = sample.dual_bound - dual_margin;
    let sources: Vec<usize> = (0..sample.pairs.len())
        .filter(|&i| {
            let p = &sample.pairs[i];
            base.contains(&p.x) && p.xstar.iter().all(|c| c.abs() <= dual_cap)
        })
        .collect();
    if sources.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut select = ChaCha8Rng::seed_from_u64(cfg.seed);
    select.set_stream(2 * eps_index as u64);
    let mut perturb = ChaCha8Rng::seed_from_u64(cfg.seed);
    perturb.set_stream(2 * eps_index as u64 + 1);

    let budget = 20 * cfg.query_count;
    let mut accepted: Vec<QueryDraw> = Vec::with_capacity(cfg.query_count);
    let mut spare: Vec<QueryDraw> = Vec::new();
    for k in 0..budget {
        if accepted.len() >= cfg.query_count {
            break;
        }
        select.set_word_pos(64 * k as u128);
        perturb.set_word_pos(64 * k as u128);
        let idx = sources[(select.next_u64() % sources.len() as u64) as usize];
        let p = &sample.pairs[idx];
        let x: Vec<f64> = p.x.iter().map(|v| v + uniform_sym(&mut perturb, r_x)).collect();
        let xstar: Vec<f64> = p
            .xstar
            .iter()
            .map(|v| v + uniform_sym(&mut perturb, r_s))
            .collect();
        *candidates_drawn += 1;
        let nu = graph::violation_measure(sample, &x, &xstar)?;
        let qualifying = nu >= -eps;
        let draw = QueryDraw { x, xstar, nu, qualifying };
        if qualifying {
            accepted.push(draw);
        } else if spare.len() < cfg.query_count {
            spare.push(draw);
        }
    }
    let mut spare_iter = spare.into_iter();
    while accepted.len() < cfg.query_count {
        match spare_iter.next() {
            Some(d) => accepted.push(d),
            None => break, // degenerate budget; report what exists
        }
    }
    if accepted.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(accepted)
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<RunReport> {
    let t0 = Instant::now();
    cfg.validate()?;
    let f0 = cfg.resolve_function()?;
    let space = NormedSpace::new(f0.dim, cfg.p)?;

    let (th_lo, th_hi) = match f0.known_threshold {
        Some(t) => (t, t),
        None => {
            let est = threshold::estimate_threshold(&f0, &space, 0.01)?;
            if !est.prox_bounded {
                return Err(Error::Inconclusive(
                    "no bounded regularization found; function appears not prox-bounded".into(),
                ));
            }
            (est.lower, est.upper)
        }
    };
    // pin the estimate so per-cell certification reuses it
    let f = f0.with_threshold(th_hi);

    let lambda_grid: Vec<f64> = match &cfg.lambda_grid {
        LambdaGrid::Word(_) => {
            let g = engine::default_lambda_grid(th_hi);
            if g.is_empty() {
                return Err(Error::Config(format!(
                    "auto lambda grid is empty above the threshold estimate {th_hi}"
                )));
            }
            g
        }
        LambdaGrid::List(v) => {
            for &l in v {
                if l <= th_hi {
                    return Err(Error::LambdaBelowThreshold {
                        lambda: l,
                        threshold: th_hi,
                    });
                }
            }
            v.clone()
        }
    };
    let lambda_mid = {
        let mut s = lambda_grid.clone();
        s.sort_by(|a, b| a.partial_cmp(b).expect("finite weights"));
        s[s.len() / 2]
    };

    let eps_max = cfg.eps_grid.iter().cloned().fold(0.0f64, f64::max);
    let lambda_min = lambda_grid.iter().cloned().fold(f64::INFINITY, f64::min);
    let lambda_max = lambda_grid.iter().cloned().fold(0.0f64, f64::max);
    // pad the sampled region beyond the query reach: distant graph pairs are
    // exactly the ones that veto over-tilted queries in the pre-test
    let margin = 2.0 * (eps_max / lambda_min).sqrt() + 2.0;
    // same idea on the dual axis, for the truncated normal-cone sweeps
    let dual_margin = 2.0 * (eps_max * lambda_max).sqrt() + 2.0;
    let base = cfg.query_box.clone().unwrap_or_else(|| f.sample_box.clone());
    let sample_region = base.pad(margin);
    let sample = graph::sample_graph(&f, &space, &sample_region, cfg.sample_density)?;
    let slack = cfg
        .slack
        .unwrap_or_else(|| graph::default_slack(cfg.sample_density));

    let mut candidates_drawn = 0usize;
    let mut queries: Vec<(usize, QueryDraw)> = Vec::new(); // (eps index, draw)
    for (ei, &eps) in cfg.eps_grid.iter().enumerate() {
        for d in draw_queries(&sample, &base, dual_margin, eps, lambda_mid, cfg, ei, &mut candidates_drawn)? {
            queries.push((ei, d));
        }
    }

    // one cell per (query, λ); key fixes the output order independently of
    // scheduling
    struct Cell<'a> {
        ei: usize,
        qi: usize,
        li: usize,
        eps: f64,
        lambda: f64,
        q: &'a QueryDraw,
    }
    let mut cells: Vec<Cell> = Vec::with_capacity(queries.len() * lambda_grid.len());
    let mut qi = 0usize;
    let mut last_ei = usize::MAX;
    for (ei, d) in &queries {
        if *ei != last_ei {
            last_ei = *ei;
            qi = 0;
        }
        for (li, &lam) in lambda_grid.iter().enumerate() {
            cells.push(Cell {
                ei: *ei,
                qi,
                li,
                eps: cfg.eps_grid[*ei],
                lambda: lam,
                q: d,
            });
        }
        qi += 1;
    }

    let run_cell = |c: &Cell| -> Result<(usize, usize, usize, ScenarioRow)> {
        let rec = engine::br_approximate(&f, &space, &c.q.x, &c.q.xstar, c.eps, c.lambda, cfg.tol, slack)?;
        let ent = graph::entourage_check(&sample, &space, &c.q.x, &c.q.xstar, c.eps, c.lambda, slack)?;
        Ok((
            c.ei,
            c.qi,
            c.li,
            ScenarioRow {
                eps: c.eps,
                lambda: c.lambda,
                nu: c.q.nu,
                qualifying: c.q.qualifying,
                record: rec,
                sampled_witness: ent.pass,
            },
        ))
    };

    #[cfg(feature = "parallel")]
    let mut keyed: Vec<(usize, usize, usize, ScenarioRow)> =
        cells.par_iter().map(run_cell).collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let mut keyed: Vec<(usize, usize, usize, ScenarioRow)> =
        cells.iter().map(run_cell).collect::<Result<_>>()?;
    keyed.sort_by_key(|(ei, qi, li, _)| (*ei, *qi, *li));
    let rows: Vec<ScenarioRow> = keyed.into_iter().map(|(_, _, _, r)| r).collect();

    let qualifying_rows = rows.iter().filter(|r| r.qualifying).count();
    let passes = rows.iter().filter(|r| r.qualifying && r.record.pass).count();
    let pass_rate = if qualifying_rows == 0 {
        1.0
    } else {
        passes as f64 / qualifying_rows as f64
    };
    let mut max_primal_excess = 0.0f64;
    let mut max_dual_excess = 0.0f64;
    let mut witness_hits = 0usize;
    for r in rows.iter().filter(|r| r.qualifying) {
        max_primal_excess = max_primal_excess.max(r.record.dx / (r.record.bound_x + slack));
        max_dual_excess = max_dual_excess.max(r.record.dxstar / (r.record.bound_xstar + slack));
        if r.sampled_witness {
            witness_hits += 1;
        }
    }
    let sampled_witness_rate = if qualifying_rows == 0 {
        1.0
    } else {
        witness_hits as f64 / qualifying_rows as f64
    };
    let qualifying_queries = queries.iter().filter(|(_, d)| d.qualifying).count();

    let scenario = format!("{}:p{}:s{}", f.name, cfg.p, cfg.seed);
    let mut report = RunReport {
        summary: RunSummary {
            scenario,
            function: f.name.clone(),
            p: cfg.p,
            seed: cfg.seed,
            digest: String::new(),
            rows: rows.len(),
            pass_rate,
            qualifying_rows,
            qualifying_queries,
            candidates_drawn,
            max_primal_excess,
            max_dual_excess,
            sampled_witness_rate,
            threshold_lower: th_lo,
            threshold_upper: th_hi,
            slack,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_s: 0.0,
        },
        rows,
    };
    report.summary.digest = sha256_hex(&report.csv_body());
    report.summary.wall_time_s = t0.elapsed().as_secs_f64();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_json(function: &str) -> String {
        format!(
            r#"{{"function": "{function}", "eps_grid": [0.0, 0.1], "query_count": 5, "seed": 11}}"#
        )
    }

    #[test]
    fn config_defaults_and_rejections() {
        let cfg = ScenarioConfig::from_json(&base_json("abs")).unwrap();
        assert_eq!(cfg.p, 2.0);
        assert_eq!(cfg.sample_density, 100.0);
        assert_eq!(cfg.tol, 1e-9);
        assert!(matches!(cfg.lambda_grid, LambdaGrid::Word(ref w) if w == "auto"));
        assert!(cfg.slack.is_none());
        assert!(cfg.query_box.is_none());

        // typos fail fast
        let bad = r#"{"function": "abs", "eps_grid": [0.1], "query_count": 5, "seed": 1, "lamda": [1]}"#;
        assert!(matches!(ScenarioConfig::from_json(bad), Err(Error::Config(_))));
        // only "auto" is a legal word
        let word = r#"{"function": "abs", "eps_grid": [0.1], "lambda_grid": "fast", "query_count": 5, "seed": 1}"#;
        assert!(matches!(ScenarioConfig::from_json(word), Err(Error::Config(_))));
        let neg = r#"{"function": "abs", "eps_grid": [-0.1], "query_count": 5, "seed": 1}"#;
        assert!(matches!(ScenarioConfig::from_json(neg), Err(Error::Config(_))));
    }

    #[test]
    fn inline_piecewise_function() {
        let json = r#"{
            "function": {"name": "vee", "pieces": [
                {"lo": -4.0, "hi": 0.0, "coeffs": [0.0, -1.0, 0.0]},
                {"lo": 0.0, "hi": 4.0, "coeffs": [0.0, 1.0, 0.0]}
            ], "convex": true},
            "eps_grid": [0.01], "lambda_grid": [1.0],
            "query_count": 4, "sample_density": 50, "seed": 3
        }"#;
        let cfg = ScenarioConfig::from_json(json).unwrap();
        let report = run_scenario(&cfg).unwrap();
        assert_eq!(report.summary.function, "vee");
        assert_eq!(report.rows.len(), 4);
        assert!(report.summary.pass_rate == 1.0, "{:?}", report.summary);
    }

    #[test]
    fn lambda_list_below_threshold_is_refused() {
        let json = r#"{"function": "neg_quad_c:2", "eps_grid": [0.1], "lambda_grid": [1.0],
                       "query_count": 5, "seed": 1}"#;
        let cfg = ScenarioConfig::from_json(json).unwrap();
        match run_scenario(&cfg) {
            Err(Error::LambdaBelowThreshold { lambda, threshold }) => {
                assert_eq!(lambda, 1.0);
                assert_eq!(threshold, 2.0);
            }
            other => panic!("expected threshold refusal, got {other:?}"),
        }
    }

    #[test]
    fn acceptance_style_abs_sweep_passes() {
        let json = r#"{"function": "abs", "eps_grid": [0.0, 0.01, 0.1], "lambda_grid": [0.5, 1.0, 2.0],
                       "query_count": 100, "sample_density": 100, "seed": 7}"#;
        let cfg = ScenarioConfig::from_json(json).unwrap();
        let report = run_scenario(&cfg).unwrap();
        assert_eq!(report.rows.len(), 900);
        assert!(report.summary.qualifying_rows > 0);
        assert_eq!(report.summary.pass_rate, 1.0, "{:?}", report.summary);
        assert!(report.summary.max_primal_excess <= 1.0);
        assert!(report.summary.max_dual_excess <= 1.0);
    }

    #[test]
    fn eps_zero_rows_collapse_onto_the_graph() {
        let json = r#"{"function": "quad", "eps_grid": [0.0], "lambda_grid": [1.0],
                       "query_count": 20, "sample_density": 50, "seed": 5}"#;
        let cfg = ScenarioConfig::from_json(json).unwrap();
        let report = run_scenario(&cfg).unwrap();
        let slack = report.summary.slack;
        for r in &report.rows {
            assert!(r.qualifying, "exact graph points are 0-related");
            assert!(r.record.dx <= slack, "dx = {}", r.record.dx);
            assert!(r.record.pass);
        }
    }

    #[test]
    fn csv_shape_and_determinism() {
        let json = r#"{"function": "abs", "eps_grid": [0.0, 0.1], "lambda_grid": [1.0],
                       "query_count": 10, "sample_density": 50, "seed": 7}"#;
        let cfg = ScenarioConfig::from_json(json).unwrap();
        let a = run_scenario(&cfg).unwrap();
        let b = run_scenario(&cfg).unwrap();
        assert_eq!(a.csv_body(), b.csv_body());
        assert_eq!(a.summary.digest, b.summary.digest);

        let body = a.csv_body();
        let mut lines = body.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let first = lines.next().unwrap();
        assert_eq!(first.split(',').count(), 17);
        assert!(first.starts_with("abs:p2:s7,abs,2,"));
        // timestamps live in comments and never reach the digest
        let full = a.csv_with_comments("2001-01-01T00:00:00Z");
        assert!(full.starts_with("# generated: 2001-01-01T00:00:00Z\n# tool: proxcert "));
        assert!(full.ends_with(&body));
    }

    #[test]
    fn nonconvex_cells_are_vacuous_but_reported() {
        // nothing is ε-related to a concave parabola's graph at this scale,
        // so the pre-test rejects everything and the pass rate is vacuous
        let json = r#"{"function": "neg_quad_c:2", "eps_grid": [0.1], "lambda_grid": [2.5],
                       "query_count": 10, "sample_density": 50, "seed": 9}"#;
        let cfg = ScenarioConfig::from_json(json).unwrap();
        let report = run_scenario(&cfg).unwrap();
        assert_eq!(report.rows.len(), 10);
        assert_eq!(report.summary.qualifying_rows, 0);
        assert_eq!(report.summary.pass_rate, 1.0);
        for r in &report.rows {
            assert!(r.nu < -0.1 - report.summary.slack);
        }
    }
}
