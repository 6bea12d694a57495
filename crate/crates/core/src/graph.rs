//! Finite samples of subdifferential graphs and the tests that run against
//! them: the monotone-violation functional, membership in the enlarged graph
//! within the radius pair `(√(ε/λ), √(λε))`, and the classical
//! ε-subdifferential inequality.
//!
//! A [`GraphSample`] is a finite subset of the true graph, so every infimum
//! computed here over-estimates the true one: passing a sampled test is
//! necessary for membership, failing it is a certificate of non-membership.

use std::collections::BTreeSet;
use std::io::Write;

use crate::catalog::{FunctionSpec, SubdiffDescription};
use crate::engine;
use crate::error::Error;
use crate::grid::{axis_coords, BoxRegion};
use crate::Result;
use crate::space::{dot, NormedSpace};

/// How a sampled pair was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Read off a closed-form subdifferential.
    Analytic,
    /// Manufactured by the certification engine (stationarity of a
    /// regularized subproblem).
    Constructed,
    /// Supplied by the caller.
    Declared,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Analytic => "analytic",
            Provenance::Constructed => "constructed",
            Provenance::Declared => "declared",
        }
    }
}

/// One element `(x, x*)` of a sampled graph.
#[derive(Debug, Clone)]
pub struct SubgradPair {
    pub x: Vec<f64>,
    pub xstar: Vec<f64>,
    pub provenance: Provenance,
    /// Producer-reported defect; exactly `0` for analytic pairs.
    pub residual: f64,
}

/// Finite stand-in for the graph of `∂f` over a box.
#[derive(Debug, Clone)]
pub struct GraphSample {
    pub f_name: String,
    pub pairs: Vec<SubgradPair>,
    pub region: BoxRegion,
    /// Points per unit length, on the primal and the dual axes alike.
    pub density: f64,
    /// Truncation radius applied when discretizing unbounded dual sets
    /// (normal cones); every stored dual coordinate is bounded by it.
    pub dual_bound: f64,
}

impl GraphSample {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Primal grid spacing the sample was built at.
    pub fn resolution(&self) -> f64 {
        1.0 / self.density
    }

    /// Export as CSV (`x,xstar,provenance,residual`); vector entries are
    /// `;`-joined inside a quoted field.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "x,xstar,provenance,residual")?;
        for p in &self.pairs {
            writeln!(
                w,
                "{},{},{},{}",
                csv_cell(&p.x),
                csv_cell(&p.xstar),
                p.provenance.as_str(),
                p.residual
            )?;
        }
        Ok(())
    }
}

/// Format a vector as a CSV cell; multi-component vectors get quoted.
pub(crate) fn csv_cell(v: &[f64]) -> String {
    if v.len() == 1 {
        format!("{}", v[0])
    } else {
        let joined: Vec<String> = v.iter().map(|c| format!("{c}")).collect();
        format!("\"{}\"", joined.join(";"))
    }
}

/// Additive slack absorbing the closure step of the entourage theorem and
/// the grid resolution of a sample built at `density`.
pub fn default_slack(density: f64) -> f64 {
    1e-6 + 2.0 / density
}

/// Primal grid over `region` at `density` points per unit length, with the
/// entry's kinks injected exactly.
pub(crate) fn primal_grid(f: &FunctionSpec, region: &BoxRegion, density: f64) -> Vec<Vec<f64>> {
    let axes: Vec<Vec<f64>> = (0..region.dim())
        .map(|i| {
            let w = region.hi[i] - region.lo[i];
            let count = ((w * density).ceil() as usize + 1).clamp(2, 400_000);
            let inject: Vec<f64> = f
                .kinks
                .iter()
                .map(|k| k[i])
                .chain(f.domain.iter().flat_map(|d| [d.lo[i], d.hi[i]]))
                .collect();
            axis_coords(region.lo[i], region.hi[i], count, &inject)
        })
        .collect();
    let mut out: Vec<Vec<f64>> = vec![Vec::new()];
    for axis in &axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for prefixix in &out {
            for &v in axis {
                let mut p = prefixix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn quantize_key(v: &[f64]) -> Vec<i64> {
    v.iter()
        .map(|&c| {
            let q = (c * 1e9).round();
            if q.abs() < i64::MAX as f64 {
                q as i64
            } else {
                i64::MAX
            }
        })
        .collect()
}

/// Sample the graph of `∂f` over `region`.
///
/// Entries with a closed-form subdifferential are swept on a primal grid and
/// their dual sets discretized at the same density; entries without one get
/// pairs manufactured by the certification engine, one per grid anchor, with
/// the solver defect recorded per pair.
pub fn sample_graph(
    f: &FunctionSpec,
    space: &NormedSpace,
    region: &BoxRegion,
    density: f64,
) -> Result<GraphSample> {
    if region.dim() != f.dim || space.dim() != f.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: region.dim(),
        });
    }
    if !(density > 0.0) || !density.is_finite() {
        return Err(Error::Config("sample density must be positive".into()));
    }
    let step = 1.0 / density;
    let corner = (0..region.dim())
        .map(|i| region.lo[i].abs().max(region.hi[i].abs()))
        .fold(0.0f64, f64::max);
    let mut dual_bound = 10.0 * (1.0 + corner);

    let grid = primal_grid(f, region, density);
    let mut pairs: Vec<SubgradPair> = Vec::new();
    let mut seen: BTreeSet<(Vec<i64>, Vec<i64>)> = BTreeSet::new();
    let mut push = |pairs: &mut Vec<SubgradPair>, p: SubgradPair| {
        let key = (quantize_key(&p.x), quantize_key(&p.xstar));
        if seen.insert(key) {
            pairs.push(p);
        }
    };

    if f.has_analytic_subdiff() {
        for x in &grid {
            let desc = match f.subdiff_at(x) {
                Some(d) => d,
                None => continue,
            };
            if desc.is_empty() {
                continue;
            }
            match &desc {
                SubdiffDescription::Singleton(s) => {
                    // gradients are kept even past the truncation radius;
                    // the cap is only for unbounded set-valued parts
                    for c in s {
                        dual_bound = dual_bound.max(c.abs());
                    }
                    push(
                        &mut pairs,
                        SubgradPair {
                            x: x.clone(),
                            xstar: s.clone(),
                            provenance: Provenance::Analytic,
                            residual: 0.0,
                        },
                    );
                }
                _ => {
                    for s in desc.sample(step, dual_bound) {
                        push(
                            &mut pairs,
                            SubgradPair {
                                x: x.clone(),
                                xstar: s,
                                provenance: Provenance::Analytic,
                                residual: 0.0,
                            },
                        );
                    }
                }
            }
        }
    } else {
        // constructive route: one regularized subproblem per anchor; shallow
        // wells collapse onto the nearest kink and sweep out the vertical
        // part of the graph, deep anchors keep their own point
        let lambda = 64.0;
        let zero = vec![0.0; f.dim];
        for anchor in &grid {
            let (pair, _gap) = engine::constructed_pair(f, space, anchor, &zero, lambda, 1e-10)?;
            for c in &pair.xstar {
                dual_bound = dual_bound.max(c.abs());
            }
            push(&mut pairs, pair);
        }
    }

    if pairs.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(GraphSample {
        f_name: f.name.clone(),
        pairs,
        region: region.clone(),
        density,
        dual_bound,
    })
}

/// Worst monotonicity defect of `(x, x*)` against the sample:
/// `min over pairs (y, y*) of ⟨y* − x*, y − x⟩`.
///
/// `≥ −ε − slack` is the sampled membership test for the ε-enlarged graph.
pub fn violation_measure(sample: &GraphSample, x: &[f64], xstar: &[f64]) -> Result<f64> {
    violation_witness(sample, x, xstar).map(|(v, _)| v)
}

/// Same as [`violation_measure`], also returning the index of an attaining
/// pair (the non-membership certificate when the value is below `−ε`).
pub fn violation_witness(sample: &GraphSample, x: &[f64], xstar: &[f64]) -> Result<(f64, usize)> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let dim = sample.region.dim();
    if x.len() != dim || xstar.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: x.len(),
        });
    }
    let mut best = f64::INFINITY;
    let mut arg = 0usize;
    for (i, p) in sample.pairs.iter().enumerate() {
        let mut acc = 0.0;
        for k in 0..dim {
            acc += (p.xstar[k] - xstar[k]) * (p.x[k] - x[k]);
        }
        if acc < best {
            best = acc;
            arg = i;
        }
    }
    Ok((best, arg))
}

/// Result of [`entourage_check`].
#[derive(Debug, Clone)]
pub struct EntourageCheck {
    pub pass: bool,
    /// Sampled pair minimizing the larger of the two normalized distances.
    pub witness: SubgradPair,
    pub dx: f64,
    pub dxstar: f64,
    pub bound_x: f64,
    pub bound_xstar: f64,
}

/// Look for a sampled pair within `√(ε/λ)` of `x` (primal norm) and `√(λε)`
/// of `x*` (dual norm), both inflated by `slack`.
pub fn entourage_check(
    sample: &GraphSample,
    space: &NormedSpace,
    x: &[f64],
    xstar: &[f64],
    eps: f64,
    lambda: f64,
    slack: f64,
) -> Result<EntourageCheck> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    if !(lambda > 0.0) || !(eps >= 0.0) || !(slack >= 0.0) {
        return Err(Error::Precondition(
            "entourage radii need lambda > 0, eps >= 0, slack >= 0".into(),
        ));
    }
    space.check(x)?;
    space.check(xstar)?;
    let bound_x = (eps / lambda).sqrt();
    let bound_xstar = (lambda * eps).sqrt();
    let mut best_score = (f64::INFINITY, f64::INFINITY);
    let mut best: Option<(usize, f64, f64)> = None;
    let mut dx_buf = vec![0.0; x.len()];
    for (i, p) in sample.pairs.iter().enumerate() {
        for k in 0..x.len() {
            dx_buf[k] = p.x[k] - x[k];
        }
        let dx = space.norm_raw(&dx_buf);
        for k in 0..x.len() {
            dx_buf[k] = p.xstar[k] - xstar[k];
        }
        let dxstar = space.dual_norm_raw(&dx_buf);
        let nx = dx / (bound_x + slack);
        let ns = dxstar / (bound_xstar + slack);
        // max of the normalized distances decides; the sum breaks ties among
        // pairs dominated by the same coordinate
        let score = (nx.max(ns), nx + ns);
        if score < best_score {
            best_score = score;
            best = Some((i, dx, dxstar));
        }
    }
    let (i, dx, dxstar) = best.expect("nonempty sample");
    Ok(EntourageCheck {
        pass: best_score.0 <= 1.0,
        witness: sample.pairs[i].clone(),
        dx,
        dxstar,
        bound_x,
        bound_xstar,
    })
}

/// Classical ε-subdifferential inequality against a finite set of test
/// points: `⟨x*, y − x⟩ + f(x) ≤ f(y) + ε + slack` for all `y` with finite
/// `f(y)`. Convex entries only.
pub fn eps_subdiff_test(
    f: &FunctionSpec,
    x: &[f64],
    xstar: &[f64],
    eps: f64,
    testpoints: &[Vec<f64>],
    slack: f64,
) -> Result<bool> {
    if !f.convex {
        return Err(Error::NonConvex(f.name.clone()));
    }
    if testpoints.is_empty() {
        return Err(Error::EmptySample);
    }
    let fx = f.try_value(x)?;
    if !fx.is_finite() {
        return Err(Error::InfiniteValue);
    }
    let mut worst = f64::NEG_INFINITY;
    let mut diff = vec![0.0; x.len()];
    for y in testpoints {
        let fy = f.value(y);
        if !fy.is_finite() {
            continue; // the inequality holds trivially outside the domain
        }
        for k in 0..x.len() {
            diff[k] = y[k] - x[k];
        }
        let gap = dot(xstar, &diff) + fx - fy;
        if gap > worst {
            worst = gap;
        }
    }
    Ok(worst <= eps + slack)
}

/// Test-point grid over `region` at `density`, kinks injected (shared by the
/// ε-subdifferential test and the command-line harness).
pub fn testpoint_grid(f: &FunctionSpec, region: &BoxRegion, density: f64) -> Vec<Vec<f64>> {
    primal_grid(f, region, density)
}
