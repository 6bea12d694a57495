//! User-defined piecewise-quadratic functions on the line.
//!
//! A function is a finite list of closed pieces `[lo, hi]` carrying
//! coefficients `[a, b, c]` for `a + b·x + c·x²`. The value at a point is the
//! minimum over the pieces containing it (`+inf` outside every piece), which
//! keeps the function lower semicontinuous regardless of how adjacent pieces
//! meet. Kinks, a quadratic minorant, and per-box Lipschitz moduli are derived
//! from the coefficients; entries flagged convex additionally get an analytic
//! subdifferential after a slope-monotonicity check.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog::{FunctionSpec, LipFn, SubdiffDescription, SubdiffFn, ValueFn};
use crate::grid::BoxRegion;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    /// `coeffs[0] + coeffs[1]·x + coeffs[2]·x²` on `[lo, hi]`.
    pub coeffs: [f64; 3],
}

impl Piece {
    fn eval(&self, x: f64) -> f64 {
        self.coeffs[0] + self.coeffs[1] * x + self.coeffs[2] * x * x
    }

    fn slope(&self, x: f64) -> f64 {
        self.coeffs[1] + 2.0 * self.coeffs[2] * x
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PiecewiseConfig {
    pub name: String,
    pub pieces: Vec<Piece>,
    /// Set when the glued function is convex; enables the analytic
    /// subdifferential (validated, not trusted).
    #[serde(default)]
    pub convex: bool,
}

impl PiecewiseConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(format!("piecewise config: {e}")))
    }

    fn validate(&self) -> Result<Vec<Piece>> {
        if self.pieces.is_empty() {
            return Err(Error::Config("piecewise: at least one piece required".into()));
        }
        for p in &self.pieces {
            let ok = p.lo.is_finite()
                && p.hi.is_finite()
                && p.lo <= p.hi
                && p.coeffs.iter().all(|c| c.is_finite());
            if !ok {
                return Err(Error::Config(format!(
                    "piecewise: bad piece [{}, {}] {:?}",
                    p.lo, p.hi, p.coeffs
                )));
            }
        }
        let mut pieces = self.pieces.clone();
        pieces.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
        for w in pieces.windows(2) {
            if w[1].lo < w[0].hi {
                return Err(Error::Config(format!(
                    "piecewise: pieces [{}, {}] and [{}, {}] overlap",
                    w[0].lo, w[0].hi, w[1].lo, w[1].hi
                )));
            }
        }
        if self.convex {
            self.check_convex(&pieces)?;
        }
        Ok(pieces)
    }

    /// Convexity of the glued function: connected domain, convex pieces,
    /// continuity and nondecreasing one-sided slopes at the junctions.
    fn check_convex(&self, pieces: &[Piece]) -> Result<()> {
        for p in pieces {
            if p.coeffs[2] < 0.0 {
                return Err(Error::Config(format!(
                    "piecewise: convex flag set but piece on [{}, {}] is concave",
                    p.lo, p.hi
                )));
            }
        }
        for w in pieces.windows(2) {
            if w[1].lo > w[0].hi {
                return Err(Error::Config(
                    "piecewise: convex flag set but domain has a gap".into(),
                ));
            }
            let x = w[0].hi;
            if (w[0].eval(x) - w[1].eval(x)).abs() > 1e-9 {
                return Err(Error::Config(format!(
                    "piecewise: convex flag set but values jump at {x}"
                )));
            }
            if w[0].slope(x) > w[1].slope(x) + 1e-12 {
                return Err(Error::Config(format!(
                    "piecewise: convex flag set but slope decreases at {x}"
                )));
            }
        }
        Ok(())
    }

    /// Build a catalog entry from the config.
    pub fn into_spec(&self) -> Result<FunctionSpec> {
        let pieces = self.validate()?;

        let ev = pieces.clone();
        let value: ValueFn = Arc::new(move |x: &[f64]| {
            let t = x[0];
            let mut best = f64::INFINITY;
            for p in &ev {
                if p.lo <= t && t <= p.hi {
                    best = best.min(p.eval(t));
                }
            }
            best
        });

        let subdiff: Option<SubdiffFn> = if self.convex {
            let ps = pieces.clone();
            let dom_lo = ps[0].lo;
            let dom_hi = ps[ps.len() - 1].hi;
            Some(Arc::new(move |x: &[f64]| {
                let t = x[0];
                if t < dom_lo || t > dom_hi {
                    return SubdiffDescription::Empty;
                }
                let left = ps
                    .iter()
                    .filter(|p| p.lo <= t && t <= p.hi && p.lo < t)
                    .map(|p| p.slope(t))
                    .fold(f64::NEG_INFINITY, f64::max);
                let right = ps
                    .iter()
                    .filter(|p| p.lo <= t && t <= p.hi && t < p.hi)
                    .map(|p| p.slope(t))
                    .fold(f64::INFINITY, f64::min);
                // degenerate single-point pieces: both folds empty
                let lo = if t == dom_lo { f64::NEG_INFINITY } else { left };
                let hi = if t == dom_hi { f64::INFINITY } else { right };
                if lo == hi {
                    SubdiffDescription::Singleton(vec![lo])
                } else if lo.is_finite() && hi.is_finite() {
                    SubdiffDescription::IntervalBox {
                        lo: vec![lo],
                        hi: vec![hi],
                    }
                } else {
                    SubdiffDescription::HalflineProduct {
                        lo: vec![lo],
                        hi: vec![hi],
                    }
                }
            }))
        } else {
            None
        };

        let lp = pieces.clone();
        let lip: LipFn = Arc::new(move |b: &BoxRegion| {
            let (blo, bhi) = (b.lo[0], b.hi[0]);
            let mut m = 0.0f64;
            for p in &lp {
                let lo = p.lo.max(blo);
                let hi = p.hi.min(bhi);
                if lo <= hi {
                    m = m.max(p.slope(lo).abs()).max(p.slope(hi).abs());
                }
            }
            m
        });

        let mut kinks: Vec<Vec<f64>> = Vec::new();
        for p in &pieces {
            kinks.push(vec![p.lo]);
            kinks.push(vec![p.hi]);
        }
        kinks.sort_by(|a, b| a[0].total_cmp(&b[0]));
        kinks.dedup();

        let dom_lo = pieces[0].lo;
        let dom_hi = pieces.iter().map(|p| p.hi).fold(f64::NEG_INFINITY, f64::max);
        let offset = pieces
            .iter()
            .map(|p| p.coeffs[0] - 0.5 * p.coeffs[1] * p.coeffs[1])
            .fold(f64::INFINITY, f64::min);
        let curvature = pieces
            .iter()
            .map(|p| 1.0 + 2.0 * (-p.coeffs[2]).max(0.0))
            .fold(1.0f64, f64::max);

        Ok(FunctionSpec {
            name: self.name.clone(),
            dim: 1,
            convex: self.convex,
            // bounded effective domain and finite piece values: bounded below,
            // so the regularized problems are coercive for every positive weight
            known_threshold: Some(0.0),
            effective_box: BoxRegion::interval(dom_lo - 1.0, dom_hi + 1.0),
            sample_box: BoxRegion::interval(dom_lo - 0.25, dom_hi + 0.25),
            kinks,
            domain: Some(BoxRegion::interval(dom_lo, dom_hi)),
            minorant_offset: offset,
            minorant_curvature: curvature,
            value,
            subdiff,
            lip,
            grad_range: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::NormedSpace;

    fn hinge() -> PiecewiseConfig {
        PiecewiseConfig {
            name: "hinge".into(),
            pieces: vec![
                Piece {
                    lo: -2.0,
                    hi: 0.0,
                    coeffs: [0.0, -1.0, 0.0],
                },
                Piece {
                    lo: 0.0,
                    hi: 2.0,
                    coeffs: [0.0, 1.0, 0.0],
                },
            ],
            convex: true,
        }
    }

    #[test]
    fn hinge_matches_abs_on_domain() {
        let f = hinge().into_spec().unwrap();
        for t in [-2.0, -1.3, 0.0, 0.7, 2.0] {
            assert_eq!(f.value(&[t]), t.abs());
        }
        assert_eq!(f.value(&[2.5]), f64::INFINITY);
        assert_eq!(f.kinks, vec![vec![-2.0], vec![0.0], vec![2.0]]);
        assert_eq!(f.known_threshold, Some(0.0));
    }

    #[test]
    fn hinge_subdiff() {
        let f = hinge().into_spec().unwrap();
        assert_eq!(
            f.subdiff_at(&[0.0]).unwrap(),
            SubdiffDescription::interval(-1.0, 1.0)
        );
        assert_eq!(
            f.subdiff_at(&[1.0]).unwrap(),
            SubdiffDescription::Singleton(vec![1.0])
        );
        match f.subdiff_at(&[2.0]).unwrap() {
            SubdiffDescription::HalflineProduct { lo, hi } => {
                assert_eq!(lo[0], 1.0);
                assert_eq!(hi[0], f64::INFINITY);
            }
            other => panic!("unexpected: {other:?}"),
        }
        assert!(f.subdiff_at(&[3.0]).unwrap().is_empty());
        // certified against the subgradient inequality on a grid
        let space = NormedSpace::euclidean(1);
        let pts: Vec<Vec<f64>> =
            crate::grid::axis_coords(-2.0, 2.0, 401, &[]).into_iter().map(|t| vec![t]).collect();
        let d = f.subdiff_at(&[0.0]).unwrap();
        assert!(d.contains(&space, &[0.4], 0.0));
        for s in d.sample(0.25, 2.0) {
            let r = crate::catalog::subgradient_residual(&f, &[0.0], &s, &pts).unwrap();
            assert!(r <= 1e-9);
        }
    }

    #[test]
    fn nonconvex_gets_no_subdiff_and_valid_minorant() {
        let cfg = PiecewiseConfig {
            name: "cap".into(),
            pieces: vec![Piece {
                lo: -3.0,
                hi: 3.0,
                coeffs: [1.0, 0.5, -1.0],
            }],
            convex: false,
        };
        let f = cfg.into_spec().unwrap();
        assert!(f.subdiff_at(&[0.0]).is_none());
        for t in crate::grid::axis_coords(-3.0, 3.0, 301, &[]) {
            let m = f.minorant_offset - 0.5 * f.minorant_curvature * t * t;
            assert!(f.value(&[t]) >= m - 1e-12);
        }
        assert!(f.lip_on(&BoxRegion::interval(-3.0, 3.0)) >= 6.0);
    }

    #[test]
    fn rejects_bad_configs() {
        let mut c = hinge();
        c.pieces[1].lo = -0.5; // overlap
        assert!(c.into_spec().is_err());

        let mut c = hinge();
        c.pieces[1].coeffs = [0.0, -2.0, 0.0]; // slope drops at 0
        assert!(c.into_spec().is_err());
        c.convex = false;
        assert!(c.into_spec().is_ok());

        let c = PiecewiseConfig {
            name: "gap".into(),
            pieces: vec![
                Piece {
                    lo: 0.0,
                    hi: 1.0,
                    coeffs: [0.0, 0.0, 0.0],
                },
                Piece {
                    lo: 2.0,
                    hi: 3.0,
                    coeffs: [0.0, 0.0, 0.0],
                },
            ],
            convex: true,
        };
        assert!(c.into_spec().is_err());

        assert!(PiecewiseConfig::from_json("{\"name\":\"x\"}").is_err());
        let ok = PiecewiseConfig::from_json(
            "{\"name\":\"v\",\"convex\":true,\"pieces\":[{\"lo\":-1,\"hi\":0,\"coeffs\":[0,-1,0]},{\"lo\":0,\"hi\":1,\"coeffs\":[0,1,0]}]}",
        )
        .unwrap();
        assert_eq!(ok.into_spec().unwrap().value(&[-0.5]), 0.5);
    }

    #[test]
    fn value_jump_uses_lower_branch() {
        // touching pieces with different values at the junction: min wins
        let cfg = PiecewiseConfig {
            name: "step".into(),
            pieces: vec![
                Piece {
                    lo: -1.0,
                    hi: 0.0,
                    coeffs: [0.0, 0.0, 0.0],
                },
                Piece {
                    lo: 0.0,
                    hi: 1.0,
                    coeffs: [1.0, 0.0, 0.0],
                },
            ],
            convex: false,
        };
        let f = cfg.into_spec().unwrap();
        assert_eq!(f.value(&[0.0]), 0.0);
        assert_eq!(f.value(&[0.5]), 1.0);
    }
}
