//! Benchmark function catalog.
//!
//! Each entry packages an extended-real value oracle (`+inf` marks points
//! outside the effective domain) together with everything the certified
//! searches and graph samplers need:
//!
//! * `effective_box` — a search box that contains the minimizers of the
//!   regularized subproblems the harness poses (searches may still certify a
//!   larger radius from the quadratic minorant when a shifted/tilted call
//!   requires it);
//! * `sample_box` — the default domain for graph sampling and query sweeps;
//! * `kinks` — every nonsmooth point, domain boundary, and discontinuity;
//!   grid passes inject these exactly, which is what makes the
//!   branch-and-bound lower bounds sound;
//! * a quadratic minorant `f ≥ a − κ/2·‖x‖²`, so `f + λ·j` is provably
//!   coercive for `λ > κ`;
//! * a per-box Lipschitz modulus for the smooth pieces (the `‖·‖₁` bound on
//!   the gradient, valid against every p-norm since `‖d‖_∞ ≤ ‖d‖_p`);
//! * optionally an analytic subdifferential description. Nonconvex entries
//!   carry one only where it is classically derivable; elsewhere graph points
//!   are produced constructively by the certification engine.
//!
//! | name            | definition                          | convex | threshold |
//! |-----------------|-------------------------------------|--------|-----------|
//! | `abs`           | `|x|`                               | yes    | 0         |
//! | `quad`          | `x²/2`                              | yes    | 0         |
//! | `indicator_box` | `0` on `[0,1]`, `+inf` outside      | yes    | 0         |
//! | `neg_quad_c:c`  | `−(c/2)x²` (default `c = 2`)        | no     | `c`       |
//! | `l0`            | `0` at `x = 0`, else `1`            | no     | 0         |
//! | `w_shape`       | `min(|x−1|, |x+1|)`                 | no     | 0         |
//! | `quad2d`        | `‖x‖₂²/2` on R²                     | yes    | 0         |
//! | `zero`          | `0`                                 | yes    | 0         |

use std::fmt;
use std::sync::Arc;

use crate::grid::BoxRegion;
use crate::space::{dot, NormedSpace};
use crate::{Error, Result};

pub mod piecewise;

/// Extended-real value oracle.
pub type ValueFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
/// Analytic subdifferential oracle.
pub type SubdiffFn = Arc<dyn Fn(&[f64]) -> SubdiffDescription + Send + Sync>;
/// Per-box Lipschitz modulus of the smooth pieces.
pub type LipFn = Arc<dyn Fn(&BoxRegion) -> f64 + Send + Sync>;
/// Componentwise gradient range over a box: `(inf ∂f/∂x_i, sup ∂f/∂x_i)`.
pub type GradRangeFn = Arc<dyn Fn(&BoxRegion) -> (Vec<f64>, Vec<f64>) + Send + Sync>;

/// Description of a subdifferential set at one point.
///
/// All sets are axis-aligned box products; `IntervalBox` bounds are finite,
/// `HalflineProduct` bounds may be `±inf`.
#[derive(Debug, Clone, PartialEq)]
pub enum SubdiffDescription {
    /// No subgradient exists at the point.
    Empty,
    /// Exactly one subgradient (smooth points).
    Singleton(Vec<f64>),
    /// Finite box `Π [lo_i, hi_i]`.
    IntervalBox { lo: Vec<f64>, hi: Vec<f64> },
    /// Box product with at least one infinite bound (normal cones etc.).
    HalflineProduct { lo: Vec<f64>, hi: Vec<f64> },
}

impl SubdiffDescription {
    /// Interval with finite bounds, 1-D convenience.
    pub fn interval(lo: f64, hi: f64) -> Self {
        SubdiffDescription::IntervalBox {
            lo: vec![lo],
            hi: vec![hi],
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SubdiffDescription::Empty)
    }

    /// Lower/upper bound vectors (singletons degenerate, halflines infinite).
    pub fn bounds(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        match self {
            SubdiffDescription::Empty => None,
            SubdiffDescription::Singleton(v) => Some((v.clone(), v.clone())),
            SubdiffDescription::IntervalBox { lo, hi }
            | SubdiffDescription::HalflineProduct { lo, hi } => Some((lo.clone(), hi.clone())),
        }
    }

    /// Componentwise projection of `s` onto the set.
    pub fn project(&self, s: &[f64]) -> Option<Vec<f64>> {
        let (lo, hi) = self.bounds()?;
        Some(
            s.iter()
                .zip(lo.iter().zip(&hi))
                .map(|(v, (a, b))| v.clamp(*a, *b))
                .collect(),
        )
    }

    /// Dual-norm distance from `s` to the set (`+inf` when empty).
    pub fn distance(&self, space: &NormedSpace, s: &[f64]) -> f64 {
        match self.project(s) {
            None => f64::INFINITY,
            Some(p) => {
                let d: Vec<f64> = s.iter().zip(&p).map(|(a, b)| a - b).collect();
                space.dual_norm_raw(&d)
            }
        }
    }

    /// Membership up to `tol` in the dual norm.
    pub fn contains(&self, space: &NormedSpace, s: &[f64], tol: f64) -> bool {
        self.distance(space, s) <= tol
    }

    /// Translate the set by `offset` (used by the tilt combinator).
    pub fn translate(&self, offset: &[f64]) -> Self {
        let shift = |v: &[f64]| -> Vec<f64> {
            v.iter()
                .zip(offset)
                .map(|(a, b)| if a.is_finite() { a + b } else { *a })
                .collect()
        };
        match self {
            SubdiffDescription::Empty => SubdiffDescription::Empty,
            SubdiffDescription::Singleton(v) => SubdiffDescription::Singleton(shift(v)),
            SubdiffDescription::IntervalBox { lo, hi } => SubdiffDescription::IntervalBox {
                lo: shift(lo),
                hi: shift(hi),
            },
            SubdiffDescription::HalflineProduct { lo, hi } => SubdiffDescription::HalflineProduct {
                lo: shift(lo),
                hi: shift(hi),
            },
        }
    }

    /// Minkowski sum of two box products.
    pub fn add(&self, other: &Self) -> Self {
        let (alo, ahi) = match self.bounds() {
            None => return SubdiffDescription::Empty,
            Some(b) => b,
        };
        let (blo, bhi) = match other.bounds() {
            None => return SubdiffDescription::Empty,
            Some(b) => b,
        };
        let lo: Vec<f64> = alo.iter().zip(&blo).map(|(a, b)| a + b).collect();
        let hi: Vec<f64> = ahi.iter().zip(&bhi).map(|(a, b)| a + b).collect();
        if lo == hi {
            SubdiffDescription::Singleton(lo)
        } else if lo.iter().chain(&hi).all(|v| v.is_finite()) {
            SubdiffDescription::IntervalBox { lo, hi }
        } else {
            SubdiffDescription::HalflineProduct { lo, hi }
        }
    }

    /// Discretize the set: per-axis grids with spacing `step`, truncated to
    /// `[−cap, cap]`, always including finite interval endpoints exactly.
    pub fn sample(&self, step: f64, cap: f64) -> Vec<Vec<f64>> {
        let (lo, hi) = match self.bounds() {
            None => return Vec::new(),
            Some(b) => b,
        };
        let axes: Vec<Vec<f64>> = lo
            .iter()
            .zip(&hi)
            .map(|(&a, &b)| {
                let (ca, cb) = (a.max(-cap), b.min(cap));
                if ca > cb {
                    return Vec::new();
                }
                if ca == cb {
                    return vec![ca];
                }
                let count = (((cb - ca) / step).ceil() as usize + 1).max(2);
                let mut inject = Vec::new();
                if a.is_finite() {
                    inject.push(a.max(-cap));
                }
                if b.is_finite() {
                    inject.push(b.min(cap));
                }
                crate::grid::axis_coords(ca, cb, count.min(1_000_000), &inject)
            })
            .collect();
        if axes.iter().any(|a| a.is_empty()) {
            return Vec::new();
        }
        // cartesian product (set-valued axes are low-dimensional in practice)
        let mut out: Vec<Vec<f64>> = vec![Vec::new()];
        for axis in &axes {
            let mut next = Vec::with_capacity(out.len() * axis.len());
            for prefix in &out {
                for &v in axis {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
            if out.len() > 4_000_000 {
                break;
            }
        }
        out
    }
}

/// A catalog entry: value oracle plus certification metadata.
#[derive(Clone)]
pub struct FunctionSpec {
    pub name: String,
    pub dim: usize,
    pub convex: bool,
    /// Prox-boundedness threshold when known in closed form.
    pub known_threshold: Option<f64>,
    /// Box bounding the minimizers of the regularized subproblems the harness poses.
    pub effective_box: BoxRegion,
    /// Default domain for graph sampling and query generation.
    pub sample_box: BoxRegion,
    /// Nonsmooth points / domain boundaries / discontinuities, injected into grids.
    pub kinks: Vec<Vec<f64>>,
    /// Exact effective domain when it is a known bounded box; lets searches
    /// certify global minimality without a coercivity argument.
    pub domain: Option<BoxRegion>,
    /// `f(x) ≥ minorant_offset − minorant_curvature/2 · ‖x‖²`.
    pub minorant_offset: f64,
    pub minorant_curvature: f64,
    value: ValueFn,
    subdiff: Option<SubdiffFn>,
    lip: LipFn,
    /// Differentiable entries only: exact componentwise gradient bounds,
    /// which let searches exploit cancellation against other smooth terms.
    grad_range: Option<GradRangeFn>,
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionSpec")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("convex", &self.convex)
            .field("known_threshold", &self.known_threshold)
            .finish_non_exhaustive()
    }
}

impl FunctionSpec {
    /// Extended-real value; `+inf` encodes "outside the domain".
    pub fn value(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        (self.value)(x)
    }

    /// Checked variant of [`FunctionSpec::value`].
    pub fn try_value(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok((self.value)(x))
    }

    /// Shared handle to the raw oracle for hot loops.
    pub fn oracle(&self) -> ValueFn {
        self.value.clone()
    }

    /// Analytic subdifferential at `x`, when the entry carries one.
    pub fn subdiff_at(&self, x: &[f64]) -> Option<SubdiffDescription> {
        self.subdiff.as_ref().map(|s| s(x))
    }

    pub fn has_analytic_subdiff(&self) -> bool {
        self.subdiff.is_some()
    }

    /// Lipschitz modulus of the smooth pieces of `f` on `region`.
    pub fn lip_on(&self, region: &BoxRegion) -> f64 {
        (self.lip)(region)
    }

    /// Componentwise gradient bounds on `region` (differentiable entries).
    pub fn grad_range_on(&self, region: &BoxRegion) -> Option<(Vec<f64>, Vec<f64>)> {
        self.grad_range.as_ref().map(|g| g(region))
    }

    /// Clone with a pinned threshold (used once an estimate is available).
    pub fn with_threshold(&self, th: f64) -> Self {
        let mut c = self.clone();
        c.known_threshold = Some(th);
        c
    }

    /// `f(x0 + ·)`.
    pub fn shift(&self, x0: &[f64]) -> Self {
        assert_eq!(x0.len(), self.dim);
        assert!(x0.len() <= 8, "shift supports dim <= 8");
        let x0v = x0.to_vec();
        let base = self.value.clone();
        let x0c = x0v.clone();
        let value: ValueFn = Arc::new(move |y: &[f64]| {
            let mut z = [0.0f64; 8];
            for i in 0..x0c.len() {
                z[i] = x0c[i] + y[i];
            }
            base(&z[..x0c.len()])
        });
        let subdiff = self.subdiff.clone().map(|sd| {
            let x0c = x0v.clone();
            let f: SubdiffFn = Arc::new(move |y: &[f64]| {
                let z: Vec<f64> = x0c.iter().zip(y).map(|(a, b)| a + b).collect();
                sd(&z)
            });
            f
        });
        let base_lip = self.lip.clone();
        let x0c = x0v.clone();
        let lip: LipFn = Arc::new(move |b: &BoxRegion| {
            let shifted = BoxRegion {
                lo: b.lo.iter().zip(&x0c).map(|(v, s)| v + s).collect(),
                hi: b.hi.iter().zip(&x0c).map(|(v, s)| v + s).collect(),
            };
            base_lip(&shifted)
        });
        let grad_range = self.grad_range.clone().map(|gr| {
            let x0c = x0v.clone();
            let f: GradRangeFn = Arc::new(move |b: &BoxRegion| {
                gr(&BoxRegion {
                    lo: b.lo.iter().zip(&x0c).map(|(v, s)| v + s).collect(),
                    hi: b.hi.iter().zip(&x0c).map(|(v, s)| v + s).collect(),
                })
            });
            f
        });
        let norm0_sq: f64 = x0v.iter().map(|v| v * v).sum();
        FunctionSpec {
            name: format!("{}(shifted)", self.name),
            dim: self.dim,
            convex: self.convex,
            known_threshold: self.known_threshold,
            effective_box: self.effective_box.pad(x0v.iter().fold(0.0f64, |m, v| m.max(v.abs()))),
            sample_box: self.sample_box.clone(),
            kinks: self
                .kinks
                .iter()
                .map(|k| k.iter().zip(&x0v).map(|(a, b)| a - b).collect())
                .collect(),
            domain: self.domain.as_ref().map(|d| BoxRegion {
                lo: d.lo.iter().zip(&x0v).map(|(a, b)| a - b).collect(),
                hi: d.hi.iter().zip(&x0v).map(|(a, b)| a - b).collect(),
            }),
            // f(x0+y) ≥ a − κ/2‖x0+y‖² ≥ (a − κ‖x0‖²) − κ‖y‖²
            minorant_offset: self.minorant_offset - self.minorant_curvature * norm0_sq,
            minorant_curvature: 2.0 * self.minorant_curvature,
            value,
            subdiff,
            lip,
            grad_range,
        }
    }

    /// `f − ⟨x*, ·⟩`.
    pub fn tilt(&self, xstar: &[f64]) -> Self {
        assert_eq!(xstar.len(), self.dim);
        let xs = xstar.to_vec();
        let base = self.value.clone();
        let xsc = xs.clone();
        let value: ValueFn = Arc::new(move |y: &[f64]| base(y) - dot(&xsc, y));
        let subdiff = self.subdiff.clone().map(|sd| {
            let neg: Vec<f64> = xs.iter().map(|v| -v).collect();
            let f: SubdiffFn = Arc::new(move |y: &[f64]| sd(y).translate(&neg));
            f
        });
        let base_lip = self.lip.clone();
        let l1: f64 = xs.iter().map(|v| v.abs()).sum();
        let lip: LipFn = Arc::new(move |b: &BoxRegion| base_lip(b) + l1);
        let grad_range = self.grad_range.clone().map(|gr| {
            let xsc = xs.clone();
            let f: GradRangeFn = Arc::new(move |b: &BoxRegion| {
                let (lo, hi) = gr(b);
                (
                    lo.iter().zip(&xsc).map(|(a, s)| a - s).collect(),
                    hi.iter().zip(&xsc).map(|(a, s)| a - s).collect(),
                )
            });
            f
        });
        // −⟨x*,y⟩ ≥ −‖x*‖₁‖y‖_∞ ≥ −(‖x*‖₁²/2 + ‖y‖²/2)
        FunctionSpec {
            name: format!("{}(tilted)", self.name),
            dim: self.dim,
            convex: self.convex,
            known_threshold: self.known_threshold,
            effective_box: self.effective_box.clone(),
            sample_box: self.sample_box.clone(),
            kinks: self.kinks.clone(),
            domain: self.domain.clone(),
            minorant_offset: self.minorant_offset - 0.5 * l1 * l1,
            minorant_curvature: self.minorant_curvature + 1.0,
            value,
            subdiff,
            lip,
            grad_range,
        }
    }

    /// `f + g` (same dimension).
    pub fn sum(&self, g: &FunctionSpec) -> Self {
        assert_eq!(self.dim, g.dim);
        let a = self.value.clone();
        let b = g.value.clone();
        let value: ValueFn = Arc::new(move |y: &[f64]| a(y) + b(y));
        let subdiff = match (self.subdiff.clone(), g.subdiff.clone()) {
            (Some(sa), Some(sb)) => {
                let f: SubdiffFn = Arc::new(move |y: &[f64]| sa(y).add(&sb(y)));
                Some(f)
            }
            _ => None,
        };
        let (la, lb) = (self.lip.clone(), g.lip.clone());
        let lip: LipFn = Arc::new(move |bx: &BoxRegion| la(bx) + lb(bx));
        let grad_range = match (self.grad_range.clone(), g.grad_range.clone()) {
            (Some(ga), Some(gb)) => {
                let f: GradRangeFn = Arc::new(move |bx: &BoxRegion| {
                    let (alo, ahi) = ga(bx);
                    let (blo, bhi) = gb(bx);
                    (
                        alo.iter().zip(&blo).map(|(u, v)| u + v).collect(),
                        ahi.iter().zip(&bhi).map(|(u, v)| u + v).collect(),
                    )
                });
                Some(f)
            }
            _ => None,
        };
        let mut kinks = self.kinks.clone();
        kinks.extend(g.kinks.iter().cloned());
        let domain = match (&self.domain, &g.domain) {
            (None, None) => None,
            (Some(d), None) | (None, Some(d)) => Some(d.clone()),
            (Some(a), Some(b)) => Some(a.intersect(b)),
        };
        FunctionSpec {
            name: format!("{}+{}", self.name, g.name),
            dim: self.dim,
            convex: self.convex && g.convex,
            known_threshold: None,
            effective_box: self.effective_box.hull(&g.effective_box),
            sample_box: self.sample_box.clone(),
            kinks,
            domain,
            minorant_offset: self.minorant_offset + g.minorant_offset,
            minorant_curvature: self.minorant_curvature + g.minorant_curvature,
            value,
            subdiff,
            lip,
            grad_range,
        }
    }

    /// Assemble an entry from parts (for tests and ad-hoc probes).
    #[allow(clippy::too_many_arguments)]
    pub fn custom(
        name: impl Into<String>,
        dim: usize,
        convex: bool,
        known_threshold: Option<f64>,
        effective_box: BoxRegion,
        kinks: Vec<Vec<f64>>,
        minorant: Option<(f64, f64)>,
        value: ValueFn,
        subdiff: Option<SubdiffFn>,
        lip: LipFn,
    ) -> Self {
        let sample_box = effective_box.expand(0.25);
        let (minorant_offset, minorant_curvature) =
            minorant.unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
        FunctionSpec {
            name: name.into(),
            dim,
            convex,
            known_threshold,
            effective_box,
            sample_box,
            kinks,
            domain: None,
            minorant_offset,
            minorant_curvature,
            value,
            subdiff,
            lip,
            grad_range: None,
        }
    }

    /// True when the quadratic minorant is usable (finite parameters).
    pub fn has_minorant(&self) -> bool {
        self.minorant_offset.is_finite() && self.minorant_curvature.is_finite()
    }
}

fn entry_abs() -> FunctionSpec {
    FunctionSpec {
        name: "abs".into(),
        dim: 1,
        convex: true,
        known_threshold: Some(0.0),
        effective_box: BoxRegion::interval(-8.0, 8.0),
        sample_box: BoxRegion::interval(-2.0, 2.0),
        kinks: vec![vec![0.0]],
        domain: None,
        minorant_offset: 0.0,
        minorant_curvature: 0.0,
        value: Arc::new(|x: &[f64]| x[0].abs()),
        subdiff: Some(Arc::new(|x: &[f64]| {
            if x[0] == 0.0 {
                SubdiffDescription::interval(-1.0, 1.0)
            } else {
                SubdiffDescription::Singleton(vec![x[0].signum()])
            }
        })),
        lip: Arc::new(|_| 1.0),
        // a.e. derivative range; sound as a cell modulus because the value is
        // continuous and searches keep the kink on cell boundaries
        grad_range: Some(Arc::new(|b: &BoxRegion| {
            let lo = if b.lo[0] >= 0.0 { 1.0 } else { -1.0 };
            let hi = if b.hi[0] <= 0.0 { -1.0 } else { 1.0 };
            (vec![lo], vec![hi])
        })),
    }
}

fn entry_quad() -> FunctionSpec {
    FunctionSpec {
        name: "quad".into(),
        dim: 1,
        convex: true,
        known_threshold: Some(0.0),
        effective_box: BoxRegion::interval(-8.0, 8.0),
        sample_box: BoxRegion::interval(-2.0, 2.0),
        kinks: vec![],
        domain: None,
        minorant_offset: 0.0,
        minorant_curvature: 0.0,
        value: Arc::new(|x: &[f64]| 0.5 * x[0] * x[0]),
        subdiff: Some(Arc::new(|x: &[f64]| SubdiffDescription::Singleton(vec![x[0]]))),
        lip: Arc::new(|b: &BoxRegion| b.lo[0].abs().max(b.hi[0].abs())),
        grad_range: Some(Arc::new(|b: &BoxRegion| (b.lo.clone(), b.hi.clone()))),
    }
}

fn entry_indicator_box() -> FunctionSpec {
    FunctionSpec {
        name: "indicator_box".into(),
        dim: 1,
        convex: true,
        known_threshold: Some(0.0),
        effective_box: BoxRegion::interval(-1.0, 2.0),
        sample_box: BoxRegion::interval(-0.5, 1.5),
        kinks: vec![vec![0.0], vec![1.0]],
        domain: Some(BoxRegion::interval(0.0, 1.0)),
        minorant_offset: 0.0,
        minorant_curvature: 0.0,
        value: Arc::new(|x: &[f64]| {
            if (0.0..=1.0).contains(&x[0]) {
                0.0
            } else {
                f64::INFINITY
            }
        }),
        subdiff: Some(Arc::new(|x: &[f64]| {
            let t = x[0];
            if !(0.0..=1.0).contains(&t) {
                SubdiffDescription::Empty
            } else if t == 0.0 {
                SubdiffDescription::HalflineProduct {
                    lo: vec![f64::NEG_INFINITY],
                    hi: vec![0.0],
                }
            } else if t == 1.0 {
                SubdiffDescription::HalflineProduct {
                    lo: vec![0.0],
                    hi: vec![f64::INFINITY],
                }
            } else {
                SubdiffDescription::Singleton(vec![0.0])
            }
        })),
        lip: Arc::new(|_| 0.0),
        grad_range: None,
    }
}

fn entry_neg_quad(c: f64) -> FunctionSpec {
    FunctionSpec {
        name: format!("neg_quad_c:{c}"),
        dim: 1,
        convex: false,
        known_threshold: Some(c),
        effective_box: BoxRegion::interval(-8.0, 8.0),
        sample_box: BoxRegion::interval(-2.0, 2.0),
        kinks: vec![],
        domain: None,
        minorant_offset: 0.0,
        minorant_curvature: c,
        value: Arc::new(move |x: &[f64]| -0.5 * c * x[0] * x[0]),
        subdiff: Some(Arc::new(move |x: &[f64]| {
            SubdiffDescription::Singleton(vec![-c * x[0]])
        })),
        lip: Arc::new(move |b: &BoxRegion| c * b.lo[0].abs().max(b.hi[0].abs())),
        grad_range: Some(Arc::new(move |b: &BoxRegion| {
            (vec![-c * b.hi[0]], vec![-c * b.lo[0]])
        })),
    }
}

fn entry_l0() -> FunctionSpec {
    FunctionSpec {
        name: "l0".into(),
        dim: 1,
        convex: false,
        known_threshold: Some(0.0),
        effective_box: BoxRegion::interval(-8.0, 8.0),
        sample_box: BoxRegion::interval(-2.0, 2.0),
        kinks: vec![vec![0.0]],
        domain: None,
        minorant_offset: 0.0,
        minorant_curvature: 0.0,
        value: Arc::new(|x: &[f64]| if x[0] == 0.0 { 0.0 } else { 1.0 }),
        // no classical closed form is adopted here; graph points come from the
        // constructive rule in the certification engine
        subdiff: None,
        lip: Arc::new(|_| 0.0),
        grad_range: None,
    }
}

fn entry_w_shape() -> FunctionSpec {
    FunctionSpec {
        name: "w_shape".into(),
        dim: 1,
        convex: false,
        known_threshold: Some(0.0),
        effective_box: BoxRegion::interval(-8.0, 8.0),
        sample_box: BoxRegion::interval(-3.0, 3.0),
        kinks: vec![vec![-1.0], vec![0.0], vec![1.0]],
        domain: None,
        minorant_offset: 0.0,
        minorant_curvature: 0.0,
        value: Arc::new(|x: &[f64]| (x[0] - 1.0).abs().min((x[0] + 1.0).abs())),
        subdiff: Some(Arc::new(|x: &[f64]| {
            let t = x[0];
            if t == -1.0 || t == 1.0 {
                SubdiffDescription::interval(-1.0, 1.0)
            } else if t == 0.0 {
                // downward kink: no (proximal-type) subgradient exists
                SubdiffDescription::Empty
            } else if t < -1.0 || (0.0 < t && t < 1.0) {
                SubdiffDescription::Singleton(vec![-1.0])
            } else {
                SubdiffDescription::Singleton(vec![1.0])
            }
        })),
        lip: Arc::new(|_| 1.0),
        grad_range: Some(Arc::new(|b: &BoxRegion| {
            let (a, z) = (b.lo[0], b.hi[0]);
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for (plo, phi, s) in [
                (f64::NEG_INFINITY, -1.0, -1.0),
                (-1.0, 0.0, 1.0),
                (0.0, 1.0, -1.0),
                (1.0, f64::INFINITY, 1.0),
            ] {
                if z >= plo && a <= phi {
                    lo = lo.min(s);
                    hi = hi.max(s);
                }
            }
            (vec![lo], vec![hi])
        })),
    }
}

fn entry_quad2d() -> FunctionSpec {
    FunctionSpec {
        name: "quad2d".into(),
        dim: 2,
        convex: true,
        known_threshold: Some(0.0),
        effective_box: BoxRegion::centered_cube(2, 8.0),
        sample_box: BoxRegion::centered_cube(2, 2.0),
        kinks: vec![],
        domain: None,
        minorant_offset: 0.0,
        minorant_curvature: 0.0,
        value: Arc::new(|x: &[f64]| 0.5 * (x[0] * x[0] + x[1] * x[1])),
        subdiff: Some(Arc::new(|x: &[f64]| SubdiffDescription::Singleton(x.to_vec()))),
        lip: Arc::new(|b: &BoxRegion| {
            (0..2)
                .map(|i| b.lo[i].abs().max(b.hi[i].abs()))
                .sum::<f64>()
        }),
        grad_range: Some(Arc::new(|b: &BoxRegion| (b.lo.clone(), b.hi.clone()))),
    }
}

fn entry_zero() -> FunctionSpec {
    FunctionSpec {
        name: "zero".into(),
        dim: 1,
        convex: true,
        known_threshold: Some(0.0),
        effective_box: BoxRegion::interval(-8.0, 8.0),
        sample_box: BoxRegion::interval(-2.0, 2.0),
        kinks: vec![],
        domain: None,
        minorant_offset: 0.0,
        minorant_curvature: 0.0,
        value: Arc::new(|_: &[f64]| 0.0),
        subdiff: Some(Arc::new(|_: &[f64]| SubdiffDescription::Singleton(vec![0.0]))),
        lip: Arc::new(|_| 0.0),
        grad_range: Some(Arc::new(|b: &BoxRegion| {
            (vec![0.0; b.dim()], vec![0.0; b.dim()])
        })),
    }
}

/// Names of the built-in entries.
pub fn names() -> &'static [&'static str] {
    &[
        "abs",
        "quad",
        "indicator_box",
        "neg_quad_c",
        "l0",
        "w_shape",
        "quad2d",
        "zero",
    ]
}

/// Look up a catalog entry. `neg_quad_c` accepts a parameter suffix
/// (`neg_quad_c:3`); without one it defaults to `c = 2`.
pub fn get(name: &str) -> Result<FunctionSpec> {
    let (base, param) = match name.split_once(':') {
        Some((b, p)) => (b, Some(p)),
        None => (name, None),
    };
    let parse_c = |p: Option<&str>| -> Result<f64> {
        match p {
            None => Ok(2.0),
            Some(s) => {
                let c: f64 = s
                    .parse()
                    .map_err(|_| Error::Config(format!("bad parameter `{s}` for neg_quad_c")))?;
                if !(c > 0.0) || !c.is_finite() {
                    return Err(Error::Config("neg_quad_c parameter must be positive".into()));
                }
                Ok(c)
            }
        }
    };
    match base {
        "abs" => Ok(entry_abs()),
        "quad" => Ok(entry_quad()),
        "indicator_box" => Ok(entry_indicator_box()),
        "neg_quad_c" => Ok(entry_neg_quad(parse_c(param)?)),
        "l0" => Ok(entry_l0()),
        "w_shape" => Ok(entry_w_shape()),
        "quad2d" => Ok(entry_quad2d()),
        "zero" => Ok(entry_zero()),
        _ => Err(Error::UnknownFunction(name.into())),
    }
}

/// Worst violation of the subgradient inequality over a test grid:
/// `max_y ⟨x*, y−x⟩ + f(x) − f(y)` over test points with finite `f(y)`.
/// Nonpositive (up to tolerance) certifies `x* ∈ ∂f(x)` against that grid.
pub fn subgradient_residual(
    f: &FunctionSpec,
    x: &[f64],
    xstar: &[f64],
    testpoints: &[Vec<f64>],
) -> Result<f64> {
    if !f.convex {
        return Err(Error::NonConvex(f.name.clone()));
    }
    let fx = f.try_value(x)?;
    if !fx.is_finite() {
        return Err(Error::InfiniteValue);
    }
    let mut seen = false;
    let mut worst = f64::NEG_INFINITY;
    for y in testpoints {
        let fy = f.try_value(y)?;
        if !fy.is_finite() {
            continue;
        }
        seen = true;
        let d: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
        worst = worst.max(dot(xstar, &d) + fx - fy);
    }
    if !seen {
        return Err(Error::EmptySample);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::axis_coords;
    use proptest::prelude::*;

    fn grid_1d(lo: f64, hi: f64, n: usize) -> Vec<Vec<f64>> {
        axis_coords(lo, hi, n, &[]).into_iter().map(|t| vec![t]).collect()
    }

    #[test]
    fn lookup_and_values() {
        let abs = get("abs").unwrap();
        assert_eq!(abs.value(&[-3.5]), 3.5);
        let ind = get("indicator_box").unwrap();
        assert_eq!(ind.value(&[0.5]), 0.0);
        assert_eq!(ind.value(&[1.5]), f64::INFINITY);
        assert_eq!(ind.value(&[0.0]), 0.0);
        assert_eq!(ind.value(&[1.0]), 0.0);
        let l0 = get("l0").unwrap();
        assert_eq!(l0.value(&[0.0]), 0.0);
        assert_eq!(l0.value(&[1e-300]), 1.0);
        let w = get("w_shape").unwrap();
        assert_eq!(w.value(&[1.0]), 0.0);
        assert_eq!(w.value(&[-1.0]), 0.0);
        assert_eq!(w.value(&[0.0]), 1.0);
        let nq = get("neg_quad_c:3").unwrap();
        assert_eq!(nq.value(&[2.0]), -6.0);
        assert_eq!(nq.known_threshold, Some(3.0));
        let nq_default = get("neg_quad_c").unwrap();
        assert_eq!(nq_default.known_threshold, Some(2.0));
        assert!(matches!(get("nope"), Err(Error::UnknownFunction(_))));
        assert!(get("neg_quad_c:-1").is_err());
    }

    #[test]
    fn analytic_subdiffs() {
        let abs = get("abs").unwrap();
        assert_eq!(
            abs.subdiff_at(&[0.0]).unwrap(),
            SubdiffDescription::interval(-1.0, 1.0)
        );
        assert_eq!(
            abs.subdiff_at(&[0.2]).unwrap(),
            SubdiffDescription::Singleton(vec![1.0])
        );
        let ind = get("indicator_box").unwrap();
        assert!(ind.subdiff_at(&[-0.1]).unwrap().is_empty());
        match ind.subdiff_at(&[0.0]).unwrap() {
            SubdiffDescription::HalflineProduct { lo, hi } => {
                assert_eq!(lo[0], f64::NEG_INFINITY);
                assert_eq!(hi[0], 0.0);
            }
            other => panic!("unexpected: {other:?}"),
        }
        let w = get("w_shape").unwrap();
        assert!(w.subdiff_at(&[0.0]).unwrap().is_empty());
        assert_eq!(
            w.subdiff_at(&[0.5]).unwrap(),
            SubdiffDescription::Singleton(vec![-1.0])
        );
        assert_eq!(
            w.subdiff_at(&[-2.0]).unwrap(),
            SubdiffDescription::Singleton(vec![-1.0])
        );
        assert_eq!(
            w.subdiff_at(&[1.0]).unwrap(),
            SubdiffDescription::interval(-1.0, 1.0)
        );
        let l0 = get("l0").unwrap();
        assert!(l0.subdiff_at(&[0.0]).is_none());
    }

    #[test]
    fn subdiff_description_geometry() {
        let space = NormedSpace::euclidean(1);
        let d = SubdiffDescription::interval(-1.0, 1.0);
        assert_eq!(d.distance(&space, &[0.5]), 0.0);
        assert_eq!(d.distance(&space, &[1.5]), 0.5);
        assert!(d.contains(&space, &[1.0], 0.0));
        assert!(!d.contains(&space, &[1.2], 0.1));
        assert_eq!(SubdiffDescription::Empty.distance(&space, &[0.0]), f64::INFINITY);

        let h = SubdiffDescription::HalflineProduct {
            lo: vec![0.0],
            hi: vec![f64::INFINITY],
        };
        assert_eq!(h.distance(&space, &[-2.0]), 2.0);
        assert_eq!(h.distance(&space, &[7.0]), 0.0);

        let s = h.sample(0.5, 3.0);
        assert!(s.iter().any(|v| v[0] == 0.0));
        assert!(s.iter().all(|v| (0.0..=3.0).contains(&v[0])));

        let t = d.translate(&[-0.25]);
        assert_eq!(t, SubdiffDescription::interval(-1.25, 0.75));
        let sum = d.add(&SubdiffDescription::Singleton(vec![2.0]));
        assert_eq!(sum, SubdiffDescription::interval(1.0, 3.0));
    }

    #[test]
    fn residual_certifies_analytic_pairs() {
        // every analytic pair of each convex entry passes the subgradient
        // inequality against a 401-point grid
        for name in ["abs", "quad", "indicator_box"] {
            let f = get(name).unwrap();
            let pts = grid_1d(-4.0, 4.0, 401);
            for x in axis_coords(f.sample_box.lo[0], f.sample_box.hi[0], 41, &[0.0, 1.0]) {
                let Some(d) = f.subdiff_at(&[x]) else { continue };
                if d.is_empty() || !f.value(&[x]).is_finite() {
                    continue;
                }
                for s in d.sample(0.25, 3.0) {
                    let r = subgradient_residual(&f, &[x], &s, &pts).unwrap();
                    assert!(
                        r <= 1e-9,
                        "{name}: pair ({x}, {s:?}) violates subgradient inequality by {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn residual_worked_examples() {
        let abs = get("abs").unwrap();
        let pts = grid_1d(-2.0, 2.0, 401);
        // interior subgradient at the kink
        let r = subgradient_residual(&abs, &[0.0], &[0.3], &pts).unwrap();
        assert!(r <= 0.0 + 1e-12, "r = {r}");
        // not a subgradient: slope too steep
        let r = subgradient_residual(&abs, &[0.0], &[1.5], &pts).unwrap();
        assert!((r - 1.0).abs() <= 1e-9, "max over [-2,2] of 1.5y - |y| is 1 at y=2, got {r}");
        // smooth point of quad
        let quad = get("quad").unwrap();
        let r = subgradient_residual(&quad, &[1.0], &[1.0], &pts).unwrap();
        assert!(r.abs() <= 1e-9);
        // errors
        let ind = get("indicator_box").unwrap();
        assert!(matches!(
            subgradient_residual(&ind, &[2.0], &[0.0], &pts),
            Err(Error::InfiniteValue)
        ));
        let l0 = get("l0").unwrap();
        assert!(matches!(
            subgradient_residual(&l0, &[0.0], &[0.0], &pts),
            Err(Error::NonConvex(_))
        ));
    }

    #[test]
    fn lsc_spot_checks() {
        // value at a discontinuity equals the lower limit from the good side
        let l0 = get("l0").unwrap();
        assert!(l0.value(&[0.0]) <= l0.value(&[1e-12]));
        let ind = get("indicator_box").unwrap();
        assert!(ind.value(&[1.0]) < ind.value(&[1.0 + 1e-12]));
    }

    #[test]
    fn minorants_hold_on_wide_grid() {
        for name in ["abs", "quad", "indicator_box", "neg_quad_c:2.5", "l0", "w_shape", "zero"] {
            let f = get(name).unwrap();
            for t in axis_coords(-50.0, 50.0, 2001, &[0.0]) {
                let v = f.value(&[t]);
                let m = f.minorant_offset - 0.5 * f.minorant_curvature * t * t;
                assert!(v >= m - 1e-9, "{name} at {t}: value {v} below minorant {m}");
            }
        }
    }

    proptest! {
        #[test]
        fn convex_entries_satisfy_midpoint_inequality(
            name in prop::sample::select(vec!["abs", "quad", "indicator_box", "quad2d", "zero"]),
            a in -3.0f64..3.0,
            b in -3.0f64..3.0,
        ) {
            let f = get(name).unwrap();
            let (x, y): (Vec<f64>, Vec<f64>) = if f.dim == 1 {
                (vec![a], vec![b])
            } else {
                (vec![a, b], vec![b, a])
            };
            let mid: Vec<f64> = x.iter().zip(&y).map(|(u, v)| 0.5 * (u + v)).collect();
            let lhs = f.value(&mid);
            let rhs = 0.5 * f.value(&x) + 0.5 * f.value(&y);
            // extended-real midpoint convexity; inf + finite handled by IEEE
            prop_assert!(lhs <= rhs + 1e-12 || rhs.is_infinite());
        }

        #[test]
        fn shift_and_tilt_agree_with_definitions(
            t in -2.0f64..2.0,
            s in -2.0f64..2.0,
            y in -3.0f64..3.0,
        ) {
            let f = get("quad").unwrap();
            let sh = f.shift(&[t]);
            prop_assert!((sh.value(&[y]) - f.value(&[t + y])).abs() <= 1e-12);
            let ti = f.tilt(&[s]);
            prop_assert!((ti.value(&[y]) - (f.value(&[y]) - s * y)).abs() <= 1e-12);
            // minorant remains valid after the combinators
            let m = ti.minorant_offset - 0.5 * ti.minorant_curvature * y * y;
            prop_assert!(ti.value(&[y]) >= m - 1e-9);
            let m2 = sh.minorant_offset - 0.5 * sh.minorant_curvature * y * y;
            prop_assert!(sh.value(&[y]) >= m2 - 1e-9);
        }
    }
}
