//! Boundedness probing and threshold bracketing.
//!
//! For a function `f` and weight `λ ≥ 0`, a *probe* scans expanding boxes for
//! the infimum of `f + λ·j` and classifies the weight as bounded, unbounded,
//! or (honestly) inconclusive. On top of single probes,
//! [`estimate_threshold`] brackets the critical weight — the infimum of all
//! `λ` with `f + λ·j` bounded below — by a coarse power-of-two sweep followed
//! by bisection.
//!
//! Probes are numerical evidence, not proofs, except where a shortcut makes
//! them exact: a bounded effective domain forces boundedness at every weight,
//! and a quadratic minorant `f ≥ a − κ/2‖·‖²` forces it for every `λ > κ`.

use crate::catalog::FunctionSpec;
use crate::grid::{BoxRegion, Grid};
use crate::space::NormedSpace;
use crate::{Error, Result};

/// Outcome of a single boundedness probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The scan settled (or a structural shortcut applies).
    Bounded,
    /// The scan kept descending at a rate incompatible with a finite infimum.
    Unbounded,
    /// Neither, within the probed radius.
    Inconclusive,
}

/// One probed weight.
#[derive(Debug, Clone)]
pub struct Probe {
    pub lambda: f64,
    pub verdict: Verdict,
    /// Largest radius scanned.
    pub radius: f64,
    /// Best value seen (meaningful for `Bounded`; a snapshot otherwise).
    pub inf_estimate: f64,
}

/// Bracket for the critical weight.
#[derive(Debug, Clone)]
pub struct ThresholdEstimate {
    /// Largest weight observed unbounded (0 when none was).
    pub lower: f64,
    /// Smallest weight observed bounded (`+inf` when none was).
    pub upper: f64,
    /// False when every probed weight diverged.
    pub prox_bounded: bool,
    pub probes: Vec<Probe>,
}

impl ThresholdEstimate {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Midpoint when the bracket is finite, otherwise the finite end.
    pub fn point_estimate(&self) -> f64 {
        if self.upper.is_finite() {
            0.5 * (self.lower + self.upper)
        } else {
            self.lower
        }
    }
}

const RADIUS_CAP: f64 = 65_536.0;

/// Scan `f + λ·j` over expanding boxes and classify the weight.
pub fn boundedness_probe(f: &FunctionSpec, space: &NormedSpace, lambda: f64) -> Result<Probe> {
    if f.dim != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: space.dim(),
        });
    }
    if lambda < 0.0 || !lambda.is_finite() {
        return Err(Error::Precondition(format!(
            "probe weight must be nonnegative, got {lambda}"
        )));
    }

    // bounded effective domain: one grid pass over the domain is the answer
    if let Some(d) = &f.domain {
        let m = scan_min(f, space, lambda, d);
        return Ok(Probe {
            lambda,
            verdict: Verdict::Bounded,
            radius: (0..f.dim).map(|i| d.lo[i].abs().max(d.hi[i].abs())).fold(0.0, f64::max),
            inf_estimate: m,
        });
    }

    let provably_bounded = f.has_minorant() && lambda > f.minorant_curvature;

    let mut r = (0..f.dim)
        .map(|i| f.effective_box.lo[i].abs().max(f.effective_box.hi[i].abs()))
        .fold(8.0f64, f64::max);
    let mut prev = f64::INFINITY;
    let mut prev_delta: Option<f64> = None;
    let mut best = f64::INFINITY;
    let mut drops = 0u32;
    let mut stable = 0u32;
    while r <= RADIUS_CAP {
        let m = scan_min(f, space, lambda, &BoxRegion::centered_cube(f.dim, r));
        best = best.min(m);
        if m.is_finite() && prev.is_finite() {
            let delta = prev - m;
            // genuine divergence accelerates under radius doubling (×4 for
            // quadratic, ×2 for linear); a bounded objective with a long
            // descent decelerates before it flattens, so require sustained
            // acceleration rather than raw drop size
            let accelerating = prev_delta.is_none_or(|pd| delta >= 1.9 * pd);
            if delta >= 1.0 && accelerating {
                drops += 1;
                stable = 0;
            } else if delta.abs() <= 1e-9 * (1.0 + m.abs()) {
                stable += 1;
                drops = 0;
            } else {
                drops = 0;
                stable = 0;
            }
            prev_delta = Some(delta);
            if drops >= 6 {
                return Ok(Probe {
                    lambda,
                    verdict: Verdict::Unbounded,
                    radius: r,
                    inf_estimate: best,
                });
            }
            if stable >= 2 {
                return Ok(Probe {
                    lambda,
                    verdict: Verdict::Bounded,
                    radius: r,
                    inf_estimate: best,
                });
            }
        }
        prev = m;
        r *= 2.0;
    }
    Ok(Probe {
        lambda,
        verdict: if provably_bounded {
            Verdict::Bounded
        } else {
            Verdict::Inconclusive
        },
        radius: r / 2.0,
        inf_estimate: best,
    })
}

/// Probe after recentring: boundedness of `f(x + ·) + λ·j`.
pub fn shifted_boundedness(
    f: &FunctionSpec,
    space: &NormedSpace,
    x: &[f64],
    lambda: f64,
) -> Result<Probe> {
    space.check(x)?;
    boundedness_probe(&f.shift(x), space, lambda)
}

/// Probe at weight zero: is `f` itself bounded below?
pub fn lower_boundedness_probe(f: &FunctionSpec, space: &NormedSpace) -> Result<Probe> {
    boundedness_probe(f, space, 0.0)
}

/// Bracket the critical weight: power-of-two sweep, then bisection until the
/// bracket is narrower than `tol` (or a probe comes back inconclusive).
pub fn estimate_threshold(
    f: &FunctionSpec,
    space: &NormedSpace,
    tol: f64,
) -> Result<ThresholdEstimate> {
    let mut probes = Vec::new();
    let mut lower: Option<f64> = None; // largest unbounded
    let mut upper: Option<f64> = None; // smallest bounded

    for k in -10i32..=10 {
        let lambda = (2.0f64).powi(k);
        let p = boundedness_probe(f, space, lambda)?;
        let v = p.verdict;
        probes.push(p);
        match v {
            Verdict::Bounded => {
                upper = Some(lambda);
                break;
            }
            Verdict::Unbounded => lower = Some(lambda),
            Verdict::Inconclusive => {
                return Ok(ThresholdEstimate {
                    lower: lower.unwrap_or(0.0),
                    upper: f64::INFINITY,
                    prox_bounded: false,
                    probes,
                })
            }
        }
    }

    let Some(mut hi) = upper else {
        // nothing bounded up to 2^10
        return Ok(ThresholdEstimate {
            lower: lower.unwrap_or(0.0),
            upper: f64::INFINITY,
            prox_bounded: false,
            probes,
        });
    };
    let mut lo = lower.unwrap_or(0.0);

    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // f64 resolution
        }
        let p = boundedness_probe(f, space, mid)?;
        let v = p.verdict;
        probes.push(p);
        match v {
            Verdict::Bounded => hi = mid,
            Verdict::Unbounded => lo = mid,
            Verdict::Inconclusive => break, // keep the honest wider bracket
        }
    }

    Ok(ThresholdEstimate {
        lower: lo,
        upper: hi,
        prox_bounded: true,
        probes,
    })
}

fn scan_min(f: &FunctionSpec, space: &NormedSpace, lambda: f64, region: &BoxRegion) -> f64 {
    let points = match f.dim {
        1 => 513,
        2 => 65,
        _ => 17,
    };
    let grid = Grid::uniform(region, points, &f.kinks);
    let val = f.oracle();
    let (_, m) = crate::grid::min_on_grid(&grid, |y| {
        let fv = val(y);
        if fv == f64::INFINITY {
            f64::INFINITY
        } else {
            fv + lambda * space.j_raw(y)
        }
    });
    m
}
