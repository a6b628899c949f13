//! Geometry of the triangle of GHZ-symmetric states.
//!
//! Class regions, from the inside out:
//!
//! * separable: `|x| ≤ 1/8 - y/(2√3)` (coincides with the PPT set),
//! * at most biseparable: `2|x| + √3 y ≤ 3/4`,
//! * at most W: the convex region under the curve `(x_B(v), y_B(v))`,
//!   `v ∈ [-1, 1]`, and above the two lower triangle edges,
//! * everything else in the triangle is GHZ class.
//!
//! Points on a border belong to the lower class.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::symmetry::{SymCoords, APEX_Y, BOTTOM_Y, SQRT_3, TRIANGLE_TOL};
use crate::{Error, Result};

/// Band around a class border inside which points get the lower class.
pub const CLASS_TOL: f64 = 1e-10;

const W_GRID_STEPS: usize = 1000;
const CROSSING_GRID_STEPS: usize = 1000;
const ROOT_TOL: f64 = 1e-12;
/// Distance from the line below which a grid node counts as an exact root.
const ROOT_HIT_TOL: f64 = 1e-14;

/// Exclusive SLOCC class; `Ord` follows the inclusion hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SloccClass {
    Separable,
    Biseparable,
    WClass,
    GhzClass,
}

impl SloccClass {
    pub const ALL: [SloccClass; 4] = [
        SloccClass::Separable,
        SloccClass::Biseparable,
        SloccClass::WClass,
        SloccClass::GhzClass,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SloccClass::Separable => "Separable",
            SloccClass::Biseparable => "Biseparable",
            SloccClass::WClass => "WClass",
            SloccClass::GhzClass => "GhzClass",
        }
    }

    /// Next lower class, if any.
    pub fn below(self) -> Option<SloccClass> {
        match self {
            SloccClass::Separable => None,
            SloccClass::Biseparable => Some(SloccClass::Separable),
            SloccClass::WClass => Some(SloccClass::Biseparable),
            SloccClass::GhzClass => Some(SloccClass::WClass),
        }
    }
}

impl fmt::Display for SloccClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SloccClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SloccClass::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown SLOCC class {s:?}"))
    }
}

/// The locus `alpha·x + beta·y + gamma = 0`.
///
/// [`Line::new`] normalizes to a unit normal with `gamma ≥ 0`, so that
/// [`Line::eval`] is the signed distance, positive on the origin's side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Line {
    /// Panics if `alpha = beta = 0`.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        let norm = alpha.hypot(beta);
        assert!(norm > 0.0, "line needs a non-zero normal");
        let s = if gamma < 0.0 { -1.0 / norm } else { 1.0 / norm };
        Line {
            alpha: alpha * s,
            beta: beta * s,
            gamma: gamma * s,
        }
    }

    pub fn eval(&self, p: SymCoords) -> f64 {
        self.alpha * p.x + self.beta * p.y + self.gamma
    }

    /// Line through two distinct points.
    pub fn through(p: SymCoords, q: SymCoords) -> Self {
        let (dx, dy) = (q.x - p.x, q.y - p.y);
        Line::new(dy, -dx, dx * p.y - dy * p.x)
    }

    /// `true` if both lines describe the same locus within `tol`.
    pub fn approx_eq(&self, other: &Line, tol: f64) -> bool {
        let same = (self.alpha - other.alpha).abs() <= tol
            && (self.beta - other.beta).abs() <= tol
            && (self.gamma - other.gamma).abs() <= tol;
        let flipped = (self.alpha + other.alpha).abs() <= tol
            && (self.beta + other.beta).abs() <= tol
            && (self.gamma + other.gamma).abs() <= tol;
        same || flipped
    }
}

/// Parameter `v ∈ [-1, 1]` of the GHZ/W boundary curve.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BoundaryParam(f64);

impl BoundaryParam {
    pub fn new(v: f64) -> Result<Self> {
        if v.is_finite() && v.abs() <= 1.0 {
            Ok(BoundaryParam(v))
        } else {
            Err(Error::InvalidBoundaryParam(v))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn in_triangle(c: SymCoords) -> bool {
    c.in_triangle()
}

/// `(x_B(v), y_B(v))`
pub fn boundary_point(v: BoundaryParam) -> SymCoords {
    let v = v.0;
    let v2 = v * v;
    let denom = 4.0 - v2;
    SymCoords::new(
        v * v2 * (v2 + 8.0) / (8.0 * denom),
        SQRT_3 / 4.0 * (4.0 - v2 - v2 * v2) / denom,
    )
}

/// `(x_B'(v), y_B'(v))`
pub fn boundary_derivative(v: BoundaryParam) -> (f64, f64) {
    let v = v.0;
    let v2 = v * v;
    let d2 = (4.0 - v2) * (4.0 - v2);
    (
        3.0 * v2 * (8.0 - v2) * (v2 + 4.0) / (8.0 * d2),
        -SQRT_3 / 2.0 * v * v2 * (8.0 - v2) / d2,
    )
}

/// Tangent to the boundary curve at `v`, origin side positive.
///
/// Both derivatives share the factor `v²(8 - v²)/(4 - v²)²`, which vanishes
/// at the apex; dividing it out leaves the direction
/// `(3(v² + 4)/8, -(√3/2)v)`, regular on all of `[-1, 1]`, whose limit at
/// `v = 0` is the horizontal top edge.
pub fn boundary_tangent(v: BoundaryParam) -> Line {
    let b = boundary_point(v);
    let v = v.0;
    let dx = 3.0 * (v * v + 4.0) / 8.0;
    let dy = -SQRT_3 / 2.0 * v;
    Line::new(dy, -dx, b.y * dx - b.x * dy)
}

/// Unnormalized tangent functional in closed form,
/// `g(v) = (v⁴ + 3v² + 12)/4 - 4vx - √3(v² + 4)y`, with the norm of its
/// gradient in `(x, y)`.
fn tangent_functional(v: f64, c: SymCoords) -> (f64, f64) {
    let v2 = v * v;
    let g = (v2 * v2 + 3.0 * v2 + 12.0) / 4.0 - 4.0 * v * c.x - SQRT_3 * (v2 + 4.0) * c.y;
    let n = (16.0 * v2 + 3.0 * (v2 + 4.0) * (v2 + 4.0)).sqrt();
    (g, n)
}

/// Minimum over `v ∈ [-1, 1]` of the signed distance from `c` to the
/// tangent at `v`. Non-negative exactly on the at-most-W side of the curve.
pub fn at_most_w_margin(c: SymCoords) -> f64 {
    // g(-v; x) = g(v; -x), and for x ≥ 0 the minimum sits at v ≥ 0
    let p = SymCoords::new(c.x.abs(), c.y);
    let dist = |v: f64| {
        let (g, n) = tangent_functional(v, p);
        g / n
    };

    let h = 1.0 / W_GRID_STEPS as f64;
    let (mut best_v, mut best_g) = (0.0, f64::INFINITY);
    for i in 0..=W_GRID_STEPS {
        let v = i as f64 * h;
        let (g, _) = tangent_functional(v, p);
        if g < best_g {
            best_g = g;
            best_v = v;
        }
    }

    // Newton on g'(v) = v³ + (3/2 - 2√3 y)v - 4x
    let k = 1.5 - 2.0 * SQRT_3 * p.y;
    let mut v = best_v;
    for _ in 0..50 {
        let d1 = v * v * v + k * v - 4.0 * p.x;
        let d2 = 3.0 * v * v + k;
        if d2 <= 0.0 {
            break;
        }
        let next = (v - d1 / d2).clamp(best_v - h, best_v + h).clamp(0.0, 1.0);
        if (next - v).abs() < 1e-15 {
            v = next;
            break;
        }
        v = next;
    }

    [dist(v), dist(best_v), dist(0.0), dist(1.0)]
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

/// SLOCC class of the GHZ-symmetric state at `c`.
pub fn classify(c: SymCoords) -> Result<SloccClass> {
    if !c.in_triangle() {
        return Err(Error::OutsideTriangle { x: c.x, y: c.y });
    }
    let ax = c.x.abs();
    if ax <= 0.125 - c.y / (2.0 * SQRT_3) + CLASS_TOL {
        Ok(SloccClass::Separable)
    } else if -2.0 * ax - SQRT_3 * c.y + 0.75 >= -CLASS_TOL {
        Ok(SloccClass::Biseparable)
    } else if at_most_w_margin(c) >= -CLASS_TOL {
        Ok(SloccClass::WClass)
    } else {
        Ok(SloccClass::GhzClass)
    }
}

/// Positive partial transpose: both eigenvalues `1/8 - y/(2√3) ± x` of the
/// only block that can go negative are non-negative.
pub fn is_ppt(c: SymCoords) -> bool {
    0.125 - c.y / (2.0 * SQRT_3) - c.x.abs() >= -TRIANGLE_TOL
}

/// `ρ(x, y)` has full rank iff `c` is in the open triangle.
pub fn is_full_rank(c: SymCoords) -> bool {
    c.y < APEX_Y - TRIANGLE_TOL
        && c.y > BOTTOM_Y + TRIANGLE_TOL
        && c.x.abs() < SQRT_3 * c.y / 2.0 + 0.125 - TRIANGLE_TOL
}

/// Parameter `v0 ∈ [0, 1]` where the segment `p0 → p1` crosses the GHZ/W
/// boundary curve.
///
/// Sign changes of the signed side function are bracketed on a grid and
/// bisected; a single Newton step polishes the root if it stays inside the
/// bracket and improves the residual.
pub fn line_curve_intersection(p0: SymCoords, p1: SymCoords) -> Result<BoundaryParam> {
    let (dx, dy) = (p1.x - p0.x, p1.y - p0.y);
    let len = dx.hypot(dy);
    if len == 0.0 {
        return Err(Error::DegenerateLine);
    }
    // signed distance of the curve point from the line through p0, p1
    let side = |v: f64| {
        let b = boundary_point(BoundaryParam(v));
        ((b.x - p0.x) * dy - (b.y - p0.y) * dx) / len
    };
    let on_segment = |v: f64| {
        let b = boundary_point(BoundaryParam(v));
        let t = ((b.x - p0.x) * dx + (b.y - p0.y) * dy) / (len * len);
        (-1e-10..=1.0 + 1e-10).contains(&t)
    };

    let h = 1.0 / CROSSING_GRID_STEPS as f64;
    let grid: Vec<(f64, f64)> = (0..=CROSSING_GRID_STEPS)
        .map(|i| {
            let v = i as f64 * h;
            (v, side(v))
        })
        .collect();

    let mut roots: Vec<f64> = Vec::new();
    let push_root = |v: f64, roots: &mut Vec<f64>| {
        if on_segment(v) && roots.last().is_none_or(|&r| v - r > 2.0 * h) {
            roots.push(v);
        }
    };
    for (i, &(v, f)) in grid.iter().enumerate() {
        if f.abs() <= ROOT_HIT_TOL {
            push_root(v, &mut roots);
            continue;
        }
        if let Some(&(v_next, f_next)) = grid.get(i + 1) {
            if f_next.abs() > ROOT_HIT_TOL && f.signum() != f_next.signum() {
                push_root(bisect(&side, v, v_next, f), &mut roots);
            }
        }
    }

    match roots.len() {
        0 => Err(Error::NoCrossing),
        1 => Ok(BoundaryParam(roots[0].clamp(0.0, 1.0))),
        n => Err(Error::AmbiguousCrossing(n)),
    }
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let (a, b) = (lo, hi);
    let lo_sign = f_lo.signum();
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    // Newton polish with a central-difference slope
    let fm = f(mid);
    let eps = 1e-7;
    let slope = (f(mid + eps) - f(mid - eps)) / (2.0 * eps);
    if slope != 0.0 {
        let polished = mid - fm / slope;
        if (a..=b).contains(&polished) && f(polished).abs() < fm.abs() {
            return polished;
        }
    }
    mid
}

/// Minimum of the line functional over the region `{classify ≤ bound}`.
///
/// A non-negative result means the line does not enter the interior of the
/// region; zero (within tolerance) means it touches the region's border.
pub fn support_min(line: &Line, bound: SloccClass) -> f64 {
    let vertices_min = |pts: &[SymCoords]| {
        pts.iter()
            .map(|&p| line.eval(p))
            .fold(f64::INFINITY, f64::min)
    };
    match bound {
        SloccClass::Separable => vertices_min(&[
            SymCoords::BOTTOM,
            SymCoords::new(0.125, 0.0),
            SymCoords::new(0.0, APEX_Y),
            SymCoords::new(-0.125, 0.0),
        ]),
        SloccClass::Biseparable => {
            let y = 1.0 / (4.0 * SQRT_3);
            vertices_min(&[
                SymCoords::BOTTOM,
                SymCoords::new(0.25, y),
                SymCoords::new(0.0, APEX_Y),
                SymCoords::new(-0.25, y),
            ])
        }
        SloccClass::WClass => line.eval(SymCoords::BOTTOM).min(curve_min(line)),
        SloccClass::GhzClass => {
            vertices_min(&[SymCoords::BOTTOM, SymCoords::GHZ_PLUS, SymCoords::GHZ_MINUS])
        }
    }
}

fn curve_min(line: &Line) -> f64 {
    let f = |v: f64| line.eval(boundary_point(BoundaryParam(v.clamp(-1.0, 1.0))));
    let steps = 2 * W_GRID_STEPS;
    let h = 2.0 / steps as f64;
    let (mut best_v, mut best) = (-1.0, f(-1.0));
    for i in 1..=steps {
        let v = -1.0 + i as f64 * h;
        let val = f(v);
        if val < best {
            best = val;
            best_v = v;
        }
    }
    // golden-section refinement in the neighbouring cells
    let (mut a, mut b) = ((best_v - h).max(-1.0), (best_v + h).min(1.0));
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    for _ in 0..80 {
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    best.min(f(0.5 * (a + b)))
}

/// Uniform sample from the triangle.
pub fn uniform_point(rng: &mut impl Rng) -> SymCoords {
    let (mut u, mut w): (f64, f64) = (rng.random(), rng.random());
    if u + w > 1.0 {
        u = 1.0 - u;
        w = 1.0 - w;
    }
    let (a, b, c) = (SymCoords::BOTTOM, SymCoords::GHZ_PLUS, SymCoords::GHZ_MINUS);
    SymCoords::new(
        a.x + u * (b.x - a.x) + w * (c.x - a.x),
        a.y + u * (b.y - a.y) + w * (c.y - a.y),
    )
}

/// Uniform sample from `{classify ≤ bound}` by rejection.
pub fn uniform_point_at_most(rng: &mut impl Rng, bound: SloccClass) -> SymCoords {
    loop {
        let p = uniform_point(rng);
        if classify(p).map(|k| k <= bound).unwrap_or(false) {
            return p;
        }
    }
}
