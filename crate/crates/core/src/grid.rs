//! Deterministic, certifiable grid minimization.
//!
//! Everything downstream (proximal steps, boundedness probes, variational
//! iterations) reduces to minimizing a scalar objective over a box. The
//! pipeline here is:
//!
//! 1. a uniform grid pass (with caller-injected coordinates so kinks, domain
//!    boundaries and the origin are sampled *exactly*), ties broken toward the
//!    smallest lexicographic point;
//! 2. local refinement: golden-section plus a guarded parabolic polish that
//!    only ever accepts strict improvements, so exact grid minimizers survive
//!    bit-for-bit;
//! 3. optional Lipschitz branch-and-bound that converts a per-cell modulus
//!    into a certified upper bound on `value − inf`.
//!
//! The branch-and-bound lower bound `min(finite endpoint values) − L·width`
//! is sound provided every discontinuity of the objective restricted to the
//! box is one of the injected coordinates; the function catalog guarantees
//! that for its entries via their kink lists.
//!
//! With the `parallel` feature the grid pass fans out over a rayon pool; the
//! reduction key `(value, flat index)` is a total order, so the result is
//! identical to the sequential pass regardless of thread count.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{Error, Result};

/// Axis-aligned box `Π [lo_i, hi_i]`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BoxRegion {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoxRegion {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::Config("box bounds must have equal, nonzero length".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| !(a <= b) || !a.is_finite() || !b.is_finite()) {
            return Err(Error::Config("box bounds must be finite with lo <= hi".into()));
        }
        Ok(Self { lo, hi })
    }

    /// 1-D helper.
    pub fn interval(lo: f64, hi: f64) -> Self {
        Self::new(vec![lo], vec![hi]).expect("interval bounds")
    }

    /// Centered cube `[-r, r]^n`.
    pub fn centered_cube(n: usize, r: f64) -> Self {
        Self::new(vec![-r; n], vec![r; n]).expect("cube bounds")
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn width(&self, axis: usize) -> f64 {
        self.hi[axis] - self.lo[axis]
    }

    pub fn max_width(&self) -> f64 {
        (0..self.dim()).map(|i| self.width(i)).fold(0.0, f64::max)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(v, (a, b))| *v >= *a && *v <= *b)
    }

    pub fn center(&self) -> Vec<f64> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| 0.5 * (a + b)).collect()
    }

    /// Scale widths about the center by `factor`.
    pub fn expand(&self, factor: f64) -> Self {
        let c = self.center();
        let lo = c
            .iter()
            .zip(&self.lo)
            .map(|(c, a)| c - factor * (c - a))
            .collect();
        let hi = c
            .iter()
            .zip(&self.hi)
            .map(|(c, b)| c + factor * (b - c))
            .collect();
        Self { lo, hi }
    }

    /// Grow by `margin` on every side.
    pub fn pad(&self, margin: f64) -> Self {
        Self {
            lo: self.lo.iter().map(|a| a - margin).collect(),
            hi: self.hi.iter().map(|b| b + margin).collect(),
        }
    }

    /// Smallest box containing both.
    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: self
                .lo
                .iter()
                .zip(&other.lo)
                .map(|(a, b)| a.min(*b))
                .collect(),
            hi: self
                .hi
                .iter()
                .zip(&other.hi)
                .map(|(a, b)| a.max(*b))
                .collect(),
        }
    }

    /// Componentwise intersection; may come out inverted (`lo > hi`) when the
    /// boxes are disjoint — check with [`BoxRegion::is_empty`].
    pub fn intersect(&self, other: &Self) -> Self {
        Self {
            lo: self
                .lo
                .iter()
                .zip(&other.lo)
                .map(|(a, b)| a.max(*b))
                .collect(),
            hi: self
                .hi
                .iter()
                .zip(&other.hi)
                .map(|(a, b)| a.min(*b))
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(a, b)| a > b)
    }
}

/// Default number of grid points per axis for brute-force passes.
pub fn default_axis_points(dim: usize) -> usize {
    match dim {
        1 => 2001,
        2 => 201,
        _ => 61,
    }
}

/// Sorted coordinates for one axis: uniform subdivision plus injected values.
///
/// Injected values inside the interval are kept exactly (deduplicated at
/// 1e-12 relative spacing); endpoints are always present.
pub fn axis_coords(lo: f64, hi: f64, count: usize, inject: &[f64]) -> Vec<f64> {
    debug_assert!(count >= 2 && hi >= lo);
    let scale = 1.0 + lo.abs().max(hi.abs());
    let inj: Vec<f64> = inject.iter().copied().filter(|v| *v >= lo && *v <= hi).collect();
    let mut coords = Vec::with_capacity(count + inj.len());
    let step = (hi - lo) / (count as f64 - 1.0);
    for k in 0..count {
        let t = if k + 1 == count { hi } else { lo + step * k as f64 };
        // injected values win over nearby regular points so that kinks and
        // other must-hit coordinates stay bitwise exact
        if inj.iter().all(|v| (t - v).abs() > 1e-12 * scale) {
            coords.push(t);
        }
    }
    coords.extend_from_slice(&inj);
    coords.sort_by(f64::total_cmp);
    coords.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * scale);
    coords
}

/// Tensor-product grid given per-axis coordinate lists.
#[derive(Debug, Clone)]
pub struct Grid {
    axes: Vec<Vec<f64>>,
    /// row-major strides, axis 0 slowest
    strides: Vec<usize>,
}

impl Grid {
    pub fn new(axes: Vec<Vec<f64>>) -> Self {
        debug_assert!(axes.iter().all(|a| !a.is_empty()));
        let mut strides = vec![1usize; axes.len()];
        for i in (0..axes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * axes[i + 1].len();
        }
        Self { axes, strides }
    }

    /// Uniform grid over `region` with `points` per axis and injected
    /// coordinates (full points; each coordinate lands on its own axis).
    pub fn uniform(region: &BoxRegion, points: usize, inject: &[Vec<f64>]) -> Self {
        let axes = (0..region.dim())
            .map(|i| {
                let extra: Vec<f64> = inject.iter().map(|p| p[i]).collect();
                axis_coords(region.lo[i], region.hi[i], points, &extra)
            })
            .collect();
        Self::new(axes)
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axis(&self, i: usize) -> &[f64] {
        &self.axes[i]
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Decode a flat index (row-major, axis 0 slowest) into `buf`.
    pub fn point_into(&self, flat: usize, buf: &mut Vec<f64>) {
        buf.clear();
        let mut rem = flat;
        for (axis, &stride) in self.axes.iter().zip(&self.strides) {
            let idx = rem / stride;
            rem %= stride;
            buf.push(axis[idx]);
        }
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        let mut buf = Vec::with_capacity(self.dim());
        self.point_into(flat, &mut buf);
        buf
    }

    /// Largest spacing between adjacent coordinates over all axes.
    pub fn max_step(&self) -> f64 {
        self.axes
            .iter()
            .flat_map(|a| a.windows(2).map(|w| w[1] - w[0]))
            .fold(0.0, f64::max)
    }
}

#[inline]
fn better(v: f64, i: usize, best_v: f64, best_i: usize) -> bool {
    match v.total_cmp(&best_v) {
        Ordering::Less => true,
        Ordering::Equal => i < best_i,
        Ordering::Greater => false,
    }
}

/// Sequential grid minimum; ties toward the smallest flat index, i.e. the
/// lexicographically smallest point.
pub fn min_on_grid_seq<F>(grid: &Grid, g: F) -> (usize, f64)
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let mut buf = Vec::with_capacity(grid.dim());
    let mut best = (usize::MAX, f64::INFINITY);
    for flat in 0..grid.len() {
        grid.point_into(flat, &mut buf);
        let v = g(&buf);
        if best.0 == usize::MAX || better(v, flat, best.1, best.0) {
            best = (flat, v);
        }
    }
    best
}

/// Parallel grid minimum; identical result to [`min_on_grid_seq`] because the
/// reduction key `(value, index)` is a total order.
#[cfg(feature = "parallel")]
pub fn min_on_grid_par<F>(grid: &Grid, g: F) -> (usize, f64)
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    use rayon::prelude::*;
    (0..grid.len())
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(grid.dim()),
            |buf, flat| {
                grid.point_into(flat, buf);
                (flat, g(buf))
            },
        )
        .reduce(
            || (usize::MAX, f64::INFINITY),
            |a, b| {
                if a.0 == usize::MAX {
                    b
                } else if b.0 == usize::MAX {
                    a
                } else if better(b.1, b.0, a.1, a.0) {
                    b
                } else {
                    a
                }
            },
        )
}

/// Grid minimum using the parallel pass when compiled in, sequential otherwise.
pub fn min_on_grid<F>(grid: &Grid, g: F) -> (usize, f64)
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if grid.len() >= 4096 {
            return min_on_grid_par(grid, g);
        }
    }
    min_on_grid_seq(grid, g)
}

const GOLDEN_INV: f64 = 0.618_033_988_749_894_9;

/// Golden-section search on [a, b]; returns the best evaluated point.
/// Handles `+inf` plateaus by keeping whichever sample is finite.
pub fn golden_min<F>(g: &F, a: f64, b: f64, tol_x: f64, max_iter: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (a, b);
    let mut x1 = b - GOLDEN_INV * (b - a);
    let mut x2 = a + GOLDEN_INV * (b - a);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    for _ in 0..max_iter {
        if (b - a) <= tol_x {
            break;
        }
        if f1.total_cmp(&f2) != Ordering::Greater {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - GOLDEN_INV * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLDEN_INV * (b - a);
            f2 = g(x2);
        }
        let (xc, fc) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
        if fc < best.1 {
            best = (xc, fc);
        }
    }
    best
}

/// One-dimensional refinement around `center`: golden section on
/// `[center−h, center+h]` followed by a guarded parabolic polish. Accepts a
/// candidate only on *strict* improvement, so an exact minimizer passed in as
/// `center` is returned unchanged.
pub fn refine_1d<F>(g: &F, center: f64, h: f64, tol_x: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let v0 = g(center);
    let mut best = (center, v0);
    let (xg, vg) = golden_min(g, center - h, center + h, tol_x, 200);
    if vg < best.1 {
        best = (xg, vg);
    }
    // parabolic polish: exact for locally quadratic pieces
    let mut hh = h.max(tol_x);
    for _ in 0..3 {
        let (x0, f0) = best;
        let (fm, fp) = (g(x0 - hh), g(x0 + hh));
        let denom = fm - 2.0 * f0 + fp;
        if denom.is_finite() && denom > 0.0 {
            let shift = 0.5 * hh * (fm - fp) / denom;
            if shift.is_finite() && shift.abs() <= hh {
                let xv = x0 + shift;
                let fv = g(xv);
                if fv < best.1 {
                    best = (xv, fv);
                }
            }
        }
        hh *= 1e-3;
        if hh < 1e-14 * (1.0 + best.0.abs()) {
            break;
        }
    }
    best
}

/// Coordinate-descent refinement for n ≥ 1: cycles axes with [`refine_1d`]
/// until a sweep yields no strict improvement.
pub fn refine_coords<F>(g: &F, start: &[f64], h: &[f64], tol_x: f64, sweeps: usize) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    const MAX_DIM: usize = 8;
    assert!(start.len() <= MAX_DIM, "coordinate refinement supports dim <= 8");
    let mut x = start.to_vec();
    let mut v = g(&x);
    for _ in 0..sweeps {
        let before = v;
        for i in 0..x.len() {
            let mut y = [0.0f64; MAX_DIM];
            y[..x.len()].copy_from_slice(&x);
            let n = x.len();
            let g1 = move |t: f64| {
                let mut z = y;
                z[i] = t;
                g(&z[..n])
            };
            let (t, vt) = refine_1d(&g1, x[i], h[i], tol_x);
            if vt < v {
                x[i] = t;
                v = vt;
            }
        }
        if !(v < before - 1e-18 * (1.0 + before.abs())) {
            break;
        }
    }
    (x, v)
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    lo: f64,
    hi: f64,
    vlo: f64,
    vhi: f64,
    lb: f64,
    seq: usize,
}

impl Cell {
    fn key(&self) -> (f64, usize) {
        (self.lb, self.seq)
    }
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.key().0.total_cmp(&other.key().0) == Ordering::Equal && self.seq == other.seq
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    // reversed: BinaryHeap pops the cell with the SMALLEST lower bound
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .lb
            .total_cmp(&self.lb)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

fn cell_lb(lo: f64, hi: f64, vlo: f64, vhi: f64, lip: &dyn Fn(f64, f64) -> f64) -> f64 {
    let v = vlo.min(vhi);
    if !v.is_finite() {
        return f64::INFINITY;
    }
    v - lip(lo, hi) * (hi - lo)
}

/// Outcome of a certified 1-D minimization.
#[derive(Debug, Clone)]
pub struct Certified {
    pub x: f64,
    pub value: f64,
    /// Proved upper bound on `value − inf` over the searched interval.
    pub gap: f64,
    pub evals: usize,
}

/// Certified global minimization on an interval partitioned by `coords`
/// (sorted, discontinuities included). `lip(a, b)` must bound the Lipschitz
/// modulus of `g` on the pieces inside `[a, b]`.
///
/// Branch-and-bound on `min(endpoints) − L·width` until
/// `value − lower_bound ≤ tol`; errors with the achieved gap if the
/// evaluation budget is exhausted first.
pub fn certified_min_1d<F, L>(
    g: &F,
    coords: &[f64],
    lip: &L,
    tol: f64,
    max_evals: usize,
) -> Result<Certified>
where
    F: Fn(f64) -> f64,
    L: Fn(f64, f64) -> f64,
{
    debug_assert!(coords.len() >= 2);
    let mut evals = 0usize;
    let values: Vec<f64> = coords
        .iter()
        .map(|&t| {
            evals += 1;
            g(t)
        })
        .collect();

    // grid best with lexicographic (leftmost) tie-break
    let mut bi = 0usize;
    for i in 1..values.len() {
        if better(values[i], i, values[bi], bi) {
            bi = i;
        }
    }
    if !values[bi].is_finite() {
        return Err(Error::Precondition(
            "objective is +inf at every grid point of the search interval".into(),
        ));
    }
    let step = coords
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0f64, f64::max);
    let (mut best_x, mut best_v) = (coords[bi], values[bi]);
    {
        let h = step.max(1e-9);
        let (rx, rv) = refine_1d(g, best_x, h, 1e-12 * (1.0 + best_x.abs()));
        evals += 260;
        if rv < best_v {
            best_x = rx;
            best_v = rv;
        }
    }

    let mut heap: BinaryHeap<Cell> = BinaryHeap::with_capacity(coords.len());
    let mut seq = 0usize;
    for w in 0..coords.len() - 1 {
        let (lo, hi) = (coords[w], coords[w + 1]);
        let lb = cell_lb(lo, hi, values[w], values[w + 1], &|a, b| lip(a, b));
        if lb < best_v - 0.0 {
            heap.push(Cell {
                lo,
                hi,
                vlo: values[w],
                vhi: values[w + 1],
                lb,
                seq,
            });
            seq += 1;
        }
    }

    loop {
        let top = match heap.peek() {
            Some(c) => *c,
            None => {
                return Ok(Certified {
                    x: best_x,
                    value: best_v,
                    gap: 0.0,
                    evals,
                })
            }
        };
        let gap = (best_v - top.lb).max(0.0);
        if gap <= tol {
            return Ok(Certified {
                x: best_x,
                value: best_v,
                gap,
                evals,
            });
        }
        if evals >= max_evals {
            return Err(Error::TolNotReached { tol, gap });
        }
        heap.pop();
        let w = top.hi - top.lo;
        if w <= 1e-13 * (1.0 + top.lo.abs().max(top.hi.abs())) {
            // cannot subdivide further in f64; its lb is already as tight as
            // the modulus allows, so the budget check above is the only exit
            continue;
        }
        let mid = 0.5 * (top.lo + top.hi);
        let vm = g(mid);
        evals += 1;
        if vm < best_v {
            // refine_1d keeps the center sample, so rv <= vm < best_v
            let (rx, rv) = refine_1d(g, mid, 0.5 * w, 1e-13 * (1.0 + mid.abs()));
            evals += 260;
            best_x = rx;
            best_v = rv;
        }
        for (lo, hi, vlo, vhi) in [(top.lo, mid, top.vlo, vm), (mid, top.hi, vm, top.vhi)] {
            let lb = cell_lb(lo, hi, vlo, vhi, &|a, b| lip(a, b));
            if lb < best_v {
                heap.push(Cell {
                    lo,
                    hi,
                    vlo,
                    vhi,
                    lb,
                    seq,
                });
                seq += 1;
            }
        }
    }
}

#[derive(Debug, Clone)]
struct BoxCell {
    lo: Vec<f64>,
    hi: Vec<f64>,
    lb: f64,
    seq: usize,
}

impl PartialEq for BoxCell {
    fn eq(&self, other: &Self) -> bool {
        self.seq == other.seq
    }
}
impl Eq for BoxCell {}
impl PartialOrd for BoxCell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for BoxCell {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .lb
            .total_cmp(&self.lb)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Certified minimization over a box for n ≥ 2 (center-sampled cells; the
/// objective must be finite on the box). `lip` bounds the modulus on a
/// sub-box; the cell bound is `g(center) − lip(cell)·‖half-widths‖₂`.
pub fn certified_min_nd<F, L>(
    g: &F,
    region: &BoxRegion,
    points: usize,
    inject: &[Vec<f64>],
    lip: &L,
    tol: f64,
    max_evals: usize,
) -> Result<Certified1N>
where
    F: Fn(&[f64]) -> f64 + Sync,
    L: Fn(&BoxRegion) -> f64,
{
    let grid = Grid::uniform(region, points, inject);
    let (bi, bv) = min_on_grid(&grid, |y| g(y));
    if !bv.is_finite() {
        return Err(Error::Precondition(
            "objective is +inf at every grid point of the search box".into(),
        ));
    }
    let mut evals = grid.len();
    let start = grid.point(bi);
    let steps: Vec<f64> = (0..grid.dim())
        .map(|i| {
            grid.axis(i)
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(1e-9f64, f64::max)
        })
        .collect();
    let (mut best_x, mut best_v) = refine_coords(g, &start, &steps, 1e-12, 6);
    evals += 1600;
    if bv < best_v {
        best_x = start.clone();
        best_v = bv;
    }

    let mut heap: BinaryHeap<BoxCell> = BinaryHeap::new();
    let mut seq = 0usize;
    // seed cells: one per grid point, half-width = local spacing / 2
    let mut buf = Vec::with_capacity(grid.dim());
    for flat in 0..grid.len() {
        grid.point_into(flat, &mut buf);
        let mut lo = Vec::with_capacity(grid.dim());
        let mut hi = Vec::with_capacity(grid.dim());
        for (i, &c) in buf.iter().enumerate() {
            let h = 0.5 * steps[i];
            lo.push((c - h).max(region.lo[i]));
            hi.push((c + h).min(region.hi[i]));
        }
        let vc = g(&buf);
        let cellbox = BoxRegion {
            lo: lo.clone(),
            hi: hi.clone(),
        };
        let r = half_diag(&cellbox);
        let lb = vc - lip(&cellbox) * r;
        if lb < best_v {
            heap.push(BoxCell { lo, hi, lb, seq });
            seq += 1;
        }
    }
    evals += grid.len();

    // best_x/best_v are updated with raw centers during descent; position is
    // polished once on the way out (strict improvement only, so exact grid
    // minimizers survive untouched)
    let mut polished = false;
    let final_gap;
    loop {
        let top_lb = match heap.peek() {
            Some(c) => c.lb,
            None => {
                final_gap = 0.0;
                break;
            }
        };
        let gap = (best_v - top_lb).max(0.0);
        if gap <= tol {
            final_gap = gap;
            break;
        }
        if evals >= max_evals {
            if !polished {
                // last resort: the polish may close the remaining gap
                let (rx, rv) = refine_coords(g, &best_x, &steps, 1e-13, 3);
                evals += 800;
                polished = true;
                if rv < best_v {
                    best_x = rx;
                    best_v = rv;
                }
                continue;
            }
            return Err(Error::TolNotReached { tol, gap });
        }
        let top = heap.pop().unwrap();
        // split the widest axis
        let axis = (0..top.lo.len())
            .max_by(|&a, &b| (top.hi[a] - top.lo[a]).total_cmp(&(top.hi[b] - top.lo[b])))
            .unwrap();
        let w = top.hi[axis] - top.lo[axis];
        if w <= 1e-13 * (1.0 + top.lo[axis].abs().max(top.hi[axis].abs())) {
            continue;
        }
        let mid = 0.5 * (top.lo[axis] + top.hi[axis]);
        for half in 0..2 {
            let mut lo = top.lo.clone();
            let mut hi = top.hi.clone();
            if half == 0 {
                hi[axis] = mid;
            } else {
                lo[axis] = mid;
            }
            let cellbox = BoxRegion {
                lo: lo.clone(),
                hi: hi.clone(),
            };
            let c = cellbox.center();
            let vc = g(&c);
            evals += 1;
            if vc < best_v {
                best_x = c;
                best_v = vc;
            }
            let r = half_diag(&cellbox);
            let lb = vc - lip(&cellbox) * r;
            if lb < best_v {
                heap.push(BoxCell { lo, hi, lb, seq });
                seq += 1;
            }
        }
    }
    if !polished {
        let (rx, rv) = refine_coords(g, &best_x, &steps, 1e-13, 3);
        evals += 800;
        if rv < best_v {
            best_x = rx;
            best_v = rv;
        }
    }
    Ok(Certified1N {
        x: best_x,
        value: best_v,
        gap: final_gap,
        evals,
    })
}

fn half_diag(b: &BoxRegion) -> f64 {
    (0..b.dim())
        .map(|i| 0.25 * b.width(i) * b.width(i))
        .sum::<f64>()
        .sqrt()
}

/// Certified result carrying a full point (n ≥ 1).
#[derive(Debug, Clone)]
pub struct Certified1N {
    pub x: Vec<f64>,
    pub value: f64,
    pub gap: f64,
    pub evals: usize,
}
