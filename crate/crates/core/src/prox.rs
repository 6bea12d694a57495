//! Certified minimization of regularized localizations.
//!
//! The central subproblem everywhere in this crate is
//!
//! ```text
//! minimize over y:   g(y) = f(x + y) − ⟨x*, y⟩ + λ·j(y)
//! ```
//!
//! with `j(y) = ½‖y‖²`. [`regularized_argmin`] returns a minimizer together
//! with a certified optimality gap and — this is the part the rest of the
//! crate leans on — a proof obligation discharged for *global* minimality:
//!
//! * when the effective domain of `f` is a known bounded box, the search box
//!   covers it and nothing outside can compete;
//! * otherwise, when `λ` exceeds the curvature `κ` of the quadratic minorant
//!   `f ≥ a − κ/2‖·‖²`, a radius is computed outside which `g` provably
//!   exceeds an already-seen value;
//! * otherwise the problem may genuinely have no minimizer: an expanding
//!   coarse scan either detects divergence ([`crate::Error::Unbounded`]) or
//!   gives up honestly ([`crate::Error::Inconclusive`]).
//!
//! Inside the certified box a uniform grid pass (with every kink of `f`
//! injected exactly, so branch-and-bound endpoint bounds are sound across
//! pieces) is refined by golden-section/parabolic polish and finished by
//! branch-and-bound until `value − lower_bound ≤ tol`.

use crate::catalog::FunctionSpec;
use crate::grid::{
    axis_coords, certified_min_1d, certified_min_nd, default_axis_points, BoxRegion, Grid,
};
use crate::space::{dot, NormedSpace};
use crate::{Error, Result};

/// Default certified-gap tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Evaluation budget for one certified search.
const MAX_EVALS: usize = 4_000_000;
/// Expansion probing never looks past this radius.
const RADIUS_CAP: f64 = 65_536.0;
/// Supported dimension bound (stack buffers in the hot path).
const MAX_DIM: usize = 8;

#[derive(Debug, Clone)]
pub struct ProxResult {
    /// Minimizing offset `ŷ`.
    pub offset: Vec<f64>,
    /// `x + ŷ` in the original coordinates.
    pub point: Vec<f64>,
    /// `g(ŷ)`.
    pub value: f64,
    /// Certified bound: `inf g ≥ value − gap`.
    pub gap: f64,
    /// Half-width of the box over which minimality was certified (the
    /// argument above extends it to all of space).
    pub radius: f64,
    pub evals: usize,
}

/// Minimize `f(x + ·) − ⟨x*, ·⟩ + λ·j` with a certified gap.
///
/// Errors: [`Error::Unbounded`] when the objective provably diverges,
/// [`Error::Inconclusive`] when neither divergence nor a certified radius
/// could be established, [`Error::TolNotReached`] when the evaluation budget
/// runs out first.
pub fn regularized_argmin(
    f: &FunctionSpec,
    space: &NormedSpace,
    x: &[f64],
    xstar: &[f64],
    lambda: f64,
    tol: f64,
) -> Result<ProxResult> {
    space.check(x)?;
    space.check(xstar)?;
    if f.dim != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: space.dim(),
        });
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Precondition(format!(
            "regularization weight must be positive and finite, got {lambda}"
        )));
    }
    assert!(f.dim <= MAX_DIM, "supports dim <= {MAX_DIM}");

    let dim = f.dim;
    let val = f.oracle();
    let xv = x.to_vec();
    let xs = xstar.to_vec();
    let sp = *space;
    let g = move |y: &[f64]| -> f64 {
        let mut z = [0.0f64; MAX_DIM];
        for i in 0..y.len() {
            z[i] = xv[i] + y[i];
        }
        let fv = val(&z[..y.len()]);
        if fv == f64::INFINITY {
            return f64::INFINITY;
        }
        fv - dot(&xs, y) + lambda * sp.j_raw(y)
    };

    // kinks of y ↦ f(x+y), plus the origin (must be an exact grid point: the
    // graph samplers reconstruct pairs through it)
    let mut inject: Vec<Vec<f64>> = f
        .kinks
        .iter()
        .map(|k| k.iter().zip(x).map(|(a, b)| a - b).collect())
        .collect();
    inject.push(vec![0.0; dim]);

    let region = certified_region(f, space, x, xstar, lambda, &g, &inject)?;

    // pairing-valid modulus of the smooth parts of g on a cell (y-coordinates):
    // f's own modulus on the shifted cell, plus sup‖λJ(y) − x*‖ with interval
    // cancellation where the duality map is componentwise monotone
    let xv2 = x.to_vec();
    let xs2 = xstar.to_vec();
    let fspec = f.clone();
    let lip_cell = move |cell: &BoxRegion| -> f64 {
        let shifted = BoxRegion {
            lo: cell.lo.iter().zip(&xv2).map(|(a, b)| a + b).collect(),
            hi: cell.hi.iter().zip(&xv2).map(|(a, b)| a + b).collect(),
        };
        let n = cell.dim();
        let exact_j = n == 1 || sp.p() == 2.0;
        // differentiable f and quadratic-exactly-known regularizer: interval
        // arithmetic on ∂g/∂y_i = ∂f/∂z_i + λ·y_i − x*_i over the whole cell —
        // the cancellation near stationary points is what makes the bound
        // vanish there and the branch-and-bound close tight gaps
        if exact_j {
            if let Some((glo, ghi)) = fspec.grad_range_on(&shifted) {
                let mut s = 0.0;
                for i in 0..n {
                    let a = glo[i] + lambda * cell.lo[i] - xs2[i];
                    let b = ghi[i] + lambda * cell.hi[i] - xs2[i];
                    let m = a.abs().max(b.abs());
                    s += m * m;
                }
                return s.sqrt();
            }
        }
        let reg = if n == 1 {
            // one dimension: j(y) = y²/2 for every p, so J(y) = y
            let a = lambda * cell.lo[0] - xs2[0];
            let b = lambda * cell.hi[0] - xs2[0];
            a.abs().max(b.abs())
        } else if sp.p() == 2.0 {
            let mut s = 0.0;
            for ((&lo, &hi), &t) in cell.lo.iter().zip(&cell.hi).zip(&xs2) {
                let a = lambda * lo - t;
                let b = lambda * hi - t;
                let m = a.abs().max(b.abs());
                s += m * m;
            }
            s.sqrt()
        } else {
            // general exponent: no cancellation, but still sound
            let corner: Vec<f64> = cell
                .lo
                .iter()
                .zip(&cell.hi)
                .map(|(a, b)| a.abs().max(b.abs()))
                .collect();
            lambda * n as f64 * sp.norm_raw(&corner)
                + xs2.iter().map(|v| v * v).sum::<f64>().sqrt()
        };
        fspec.lip_on(&shifted) + reg
    };

    let radius = (0..dim)
        .map(|i| region.lo[i].abs().max(region.hi[i].abs()))
        .fold(0.0f64, f64::max);

    if dim == 1 {
        let flat: Vec<f64> = inject.iter().map(|v| v[0]).collect();
        let coords = axis_coords(
            region.lo[0],
            region.hi[0],
            default_axis_points(1),
            &flat,
        );
        let g1 = |t: f64| g(&[t]);
        let lip1 = |a: f64, b: f64| {
            lip_cell(&BoxRegion {
                lo: vec![a],
                hi: vec![b],
            })
        };
        let c = certified_min_1d(&g1, &coords, &lip1, tol, MAX_EVALS)?;
        let mut y = vec![c.x];
        let (value, gap) = snap_to_injected(&g, &mut y, c.value, c.gap, &inject);
        let point = vec![x[0] + y[0]];
        Ok(ProxResult {
            offset: y,
            point,
            value,
            gap,
            radius,
            evals: c.evals,
        })
    } else {
        let c = certified_min_nd(
            &g,
            &region,
            default_axis_points(dim),
            &inject,
            &lip_cell,
            tol,
            MAX_EVALS,
        )?;
        let mut y = c.x;
        let (value, gap) = snap_to_injected(&g, &mut y, c.value, c.gap, &inject);
        let point: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        Ok(ProxResult {
            offset: y,
            point,
            value,
            gap,
            radius,
            evals: c.evals,
        })
    }
}

/// Replace the minimizer by an injected coordinate when refinement noise is
/// all that separates them: samplers reconstruct pairs through kinks and the
/// origin and need those bitwise exact. The certified bound is re-priced by
/// whatever the swap costs (at most the fp-noise acceptance margin).
fn snap_to_injected(
    g: &dyn Fn(&[f64]) -> f64,
    y: &mut Vec<f64>,
    value: f64,
    gap: f64,
    inject: &[Vec<f64>],
) -> (f64, f64) {
    let mut best: Option<(f64, f64, &Vec<f64>)> = None;
    for t in inject {
        let d2: f64 = t.iter().zip(y.iter()).map(|(a, b)| (a - b) * (a - b)).sum();
        let d = d2.sqrt();
        if d == 0.0 {
            return (value, gap); // already exact
        }
        let scale: f64 = 1.0 + t.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if d <= 1e-7 * scale {
            let v = g(t);
            if v <= value + 1e-12 * (1.0 + value.abs()) {
                let better = match best {
                    None => true,
                    Some((bv, bd, _)) => v < bv || (v == bv && d < bd),
                };
                if better {
                    best = Some((v, d, t));
                }
            }
        }
    }
    match best {
        Some((v, _, t)) => {
            *y = t.clone();
            (v, gap + (v - value).max(0.0))
        }
        None => (value, gap),
    }
}

/// Envelope value and proximal point: `min_z f(z) + λ·j(x − z)`.
///
/// The returned [`ProxResult::value`] is the envelope value and
/// [`ProxResult::point`] the attaining `z` (substitute `y = z − x`; `j` is
/// even, so this is [`regularized_argmin`] with a zero tilt).
pub fn moreau_envelope(
    f: &FunctionSpec,
    space: &NormedSpace,
    x: &[f64],
    lambda: f64,
    tol: f64,
) -> Result<ProxResult> {
    let zero = vec![0.0; f.dim];
    regularized_argmin(f, space, x, &zero, lambda, tol)
}

/// Establish a box outside which no minimizer can live.
fn certified_region<G>(
    f: &FunctionSpec,
    space: &NormedSpace,
    x: &[f64],
    xstar: &[f64],
    lambda: f64,
    g: &G,
    inject: &[Vec<f64>],
) -> Result<BoxRegion>
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    let dim = f.dim;

    // bounded effective domain: the search box is the domain itself
    if let Some(d) = &f.domain {
        let region = BoxRegion {
            lo: d.lo.iter().zip(x).map(|(a, b)| a - b).collect(),
            hi: d.hi.iter().zip(x).map(|(a, b)| a - b).collect(),
        };
        if region.is_empty() {
            return Err(Error::Precondition("effective domain is empty".into()));
        }
        return Ok(region);
    }

    let kappa = f.minorant_curvature;
    if f.has_minorant() && lambda > kappa {
        // anchor value from a coarse scan of the shifted effective box
        let scan = BoxRegion {
            lo: f.effective_box.lo.iter().zip(x).map(|(a, b)| a - b).collect(),
            hi: f.effective_box.hi.iter().zip(x).map(|(a, b)| a - b).collect(),
        };
        let g0 = coarse_min(g, &scan, inject, dim);
        if !g0.is_finite() {
            return Err(Error::Precondition(
                "no finite objective value found in the search box".into(),
            ));
        }
        let nx = space.norm_raw(x);
        let a = f.minorant_offset - 0.5 * kappa * nx * nx;
        let b = kappa * nx + space.dual_norm_raw(xstar);
        // outside ‖y‖ > r: g(y) ≥ a + (λ−κ)/2‖y‖² − b‖y‖ > g0 ≥ inf g
        let disc = (b * b + 2.0 * (lambda - kappa) * (g0 - a)).max(0.0);
        let r = (b + disc.sqrt()) / (lambda - kappa) * 1.000_001 + 1e-9;
        if r > RADIUS_CAP {
            return Err(Error::Inconclusive(format!(
                "certified radius {r:.3e} exceeds the search cap"
            )));
        }
        return Ok(BoxRegion::centered_cube(dim, r));
    }

    // weight inside the curvature margin: probe expanding boxes
    let mut r = 4.0f64.max(2.0 * space.norm_raw(x) + 2.0);
    let mut prev = f64::INFINITY;
    let mut prev_delta: Option<f64> = None;
    let mut drops = 0u32;
    let mut stable = 0u32;
    while r <= RADIUS_CAP {
        let m = coarse_min(g, &BoxRegion::centered_cube(dim, r), inject, dim);
        if m.is_finite() {
            if prev.is_finite() {
                let delta = prev - m;
                // sustained *accelerating* descent signals divergence; see the
                // boundedness probes for the rationale
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
                    return Err(Error::Unbounded { lambda });
                }
                if stable >= 2 {
                    // the scan settled, but nothing proves minimality beyond
                    // the probed box
                    return Err(Error::Inconclusive(format!(
                        "weight {lambda} is within the curvature margin; scan \
                         settled at radius {r} without a global certificate"
                    )));
                }
            }
            prev = m;
        }
        r *= 2.0;
    }
    if prev.is_finite() {
        Err(Error::Unbounded { lambda })
    } else {
        Err(Error::Precondition(
            "no finite objective value found while probing".into(),
        ))
    }
}

fn coarse_min<G>(g: &G, region: &BoxRegion, inject: &[Vec<f64>], dim: usize) -> f64
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    let points = match dim {
        1 => 513,
        2 => 65,
        _ => 17,
    };
    let grid = Grid::uniform(region, points, inject);
    let (_, v) = crate::grid::min_on_grid(&grid, |y| g(y));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get;

    fn e1() -> NormedSpace {
        NormedSpace::euclidean(1)
    }

    #[test]
    fn kink_capture_with_tilt() {
        // |x+y| − y + y²/2 from x = −0.04: the kink of f is the minimizer and
        // must be hit exactly through kink injection
        let f = get("abs").unwrap();
        let r = regularized_argmin(&f, &e1(), &[-0.04], &[1.0], 1.0, 1e-9).unwrap();
        assert_eq!(r.offset[0], 0.04);
        assert_eq!(r.point[0], 0.0);
        assert!((r.value - (-0.0392)).abs() < 1e-12, "value = {}", r.value);
        assert!(r.gap <= 1e-9);
    }

    #[test]
    fn concave_entry_above_its_curvature() {
        // −x² − y + 3y²/2 has its minimum at y = 1 with value −1/2
        let f = get("neg_quad_c:2").unwrap();
        let r = regularized_argmin(&f, &e1(), &[0.0], &[1.0], 3.0, 1e-9).unwrap();
        assert!((r.offset[0] - 1.0).abs() < 1e-6, "offset = {}", r.offset[0]);
        assert!((r.value - (-0.5)).abs() < 1e-10);
        assert!(r.gap <= 1e-9);
        // the certified radius argument must have covered the minimizer
        assert!(r.radius >= 1.0);
    }

    #[test]
    fn concave_entry_below_curvature_diverges() {
        let f = get("neg_quad_c:2").unwrap();
        match regularized_argmin(&f, &e1(), &[0.0], &[0.0], 1.0, 1e-9) {
            Err(Error::Unbounded { lambda }) => assert_eq!(lambda, 1.0),
            other => panic!("expected divergence, got {other:?}"),
        }
        // exactly at the curvature with zero tilt the scan settles but cannot
        // certify a global minimizer
        match regularized_argmin(&f, &e1(), &[0.0], &[0.0], 2.0, 1e-9) {
            Err(Error::Inconclusive(_)) => {}
            other => panic!("expected inconclusive, got {other:?}"),
        }
    }

    #[test]
    fn bounded_domain_route() {
        let f = get("indicator_box").unwrap();
        let r = regularized_argmin(&f, &e1(), &[0.0], &[0.0], 1.0, 1e-9).unwrap();
        assert_eq!(r.offset[0], 0.0);
        assert_eq!(r.value, 0.0);
        assert!(r.gap <= 1e-9);
        // domain boundary attained exactly even at a weight below the
        // (conservative) curvature of a piecewise entry
        let r = moreau_envelope(&f, &e1(), &[2.0], 1.0, 1e-9).unwrap();
        assert_eq!(r.point[0], 2.0 + r.offset[0]);
        assert_eq!(r.offset[0], -1.0);
        assert!((r.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn envelope_worked_examples() {
        let abs = get("abs").unwrap();
        let r = moreau_envelope(&abs, &e1(), &[2.0], 1.0, 1e-9).unwrap();
        assert!((r.value - 1.5).abs() < 1e-10);
        assert!((r.point[0] - 1.0).abs() < 1e-5);

        let r = moreau_envelope(&abs, &e1(), &[0.0], 1.0, 1e-9).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.point[0], 0.0);

        let quad = get("quad").unwrap();
        let r = moreau_envelope(&quad, &e1(), &[1.0], 1.0, 1e-9).unwrap();
        assert!((r.value - 0.25).abs() < 1e-10);
        assert!((r.point[0] - 0.5).abs() < 1e-5);
    }

    #[test]
    fn two_dimensional_tilted() {
        let f = get("quad2d").unwrap();
        let sp = NormedSpace::euclidean(2);
        let r = regularized_argmin(&f, &sp, &[1.0, -1.0], &[0.5, 0.0], 1.0, 1e-9).unwrap();
        assert!((r.offset[0] + 0.25).abs() < 1e-4, "y0 = {}", r.offset[0]);
        assert!((r.offset[1] - 0.5).abs() < 1e-4, "y1 = {}", r.offset[1]);
        assert!((r.value - 0.6875).abs() < 1e-9);
        assert!(r.gap <= 1e-9);
    }

    #[test]
    fn one_dim_regularizer_is_exponent_free() {
        // j(y) = y²/2 in one dimension for every exponent
        let f = get("quad").unwrap();
        let a = regularized_argmin(&f, &NormedSpace::new(1, 1.5).unwrap(), &[1.0], &[0.0], 1.0, 1e-9)
            .unwrap();
        let b = regularized_argmin(&f, &e1(), &[1.0], &[0.0], 1.0, 1e-9).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.offset, b.offset);
    }

    #[test]
    fn argument_validation() {
        let f = get("quad2d").unwrap();
        let sp = NormedSpace::euclidean(2);
        assert!(matches!(
            regularized_argmin(&f, &sp, &[0.0], &[0.0, 0.0], 1.0, 1e-9),
            Err(Error::DimensionMismatch { .. })
        ));
        let f1 = get("abs").unwrap();
        assert!(matches!(
            regularized_argmin(&f1, &sp, &[0.0, 0.0], &[0.0, 0.0], 1.0, 1e-9),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(regularized_argmin(&f1, &e1(), &[0.0], &[0.0], -1.0, 1e-9).is_err());
    }

    #[test]
    fn piecewise_domain_certificate() {
        use crate::catalog::piecewise::{Piece, PiecewiseConfig};
        let cfg = PiecewiseConfig {
            name: "vee".into(),
            pieces: vec![
                Piece {
                    lo: -1.0,
                    hi: 0.0,
                    coeffs: [0.0, -1.0, 0.0],
                },
                Piece {
                    lo: 0.0,
                    hi: 1.0,
                    coeffs: [0.0, 1.0, 0.0],
                },
            ],
            convex: true,
        };
        let f = cfg.into_spec().unwrap();
        // the derived curvature bound is conservative (κ ≥ 1), but the bounded
        // domain still yields a certified search at a small weight; the tilt
        // pushes the minimizer to the domain boundary, hit exactly
        let r = regularized_argmin(&f, &e1(), &[0.0], &[1.5], 0.05, 1e-9).unwrap();
        assert_eq!(r.offset[0], 1.0);
        assert!((r.value - (-0.475)).abs() < 1e-12);
        assert!(r.gap <= 1e-9);
    }
}
