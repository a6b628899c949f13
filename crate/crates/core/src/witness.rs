//! GHZ-symmetric entanglement witnesses `W = a·𝟙 + b·π_GHZ+ + c·π_GHZ−`.
//!
//! On the state `ρ(x, y)` the expectation value is affine,
//!
//! ```text
//! tr(W ρ(x, y)) = (b - c)x + (√3/2)(b + c)y + a + (b + c)/8,
//! ```
//!
//! so each witness corresponds to a line in the triangle and vice versa. A
//! witness is optimal on the symmetric states iff its zero line supports the
//! region of uninteresting states.

use crate::geometry::{self, classify, support_min, BoundaryParam, Line, SloccClass};
use crate::linalg::{expectation, ComplexMatrix8, DensityMatrix, PureState8};
use crate::symmetry::{SymCoords, SQRT_3, TRIANGLE_TOL};
use crate::{Error, Result};

/// Tolerance of the tangency and no-crossing checks.
pub const OPTIMALITY_TOL: f64 = 1e-9;
/// Allowed dip of a witness below zero on its uninteresting region.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Coefficients `(a, b, c)` of a GHZ-symmetric witness, with
/// `a + (b + c)/8 > 0` (positive on the maximally mixed state).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    a: f64,
    b: f64,
    c: f64,
}

impl Witness {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let at_origin = a + (b + c) / 8.0;
        if at_origin.is_nan() || at_origin <= 0.0 {
            return Err(Error::SignConvention(at_origin));
        }
        Ok(Witness { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn coefficients(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// `tr(W ρ(x, y))`
    pub fn expectation_sym(&self, p: SymCoords) -> f64 {
        (self.b - self.c) * p.x
            + SQRT_3 / 2.0 * (self.b + self.c) * p.y
            + self.a
            + (self.b + self.c) / 8.0
    }

    pub fn to_matrix(&self) -> ComplexMatrix8 {
        ComplexMatrix8::identity().scale(self.a)
            + PureState8::ghz_plus().projector().scale(self.b)
            + PureState8::ghz_minus().projector().scale(self.c)
    }

    /// Normalized locus where the expectation vanishes.
    pub fn zero_line(&self) -> Result<Line> {
        let alpha = self.b - self.c;
        let beta = SQRT_3 / 2.0 * (self.b + self.c);
        if alpha == 0.0 && beta == 0.0 {
            return Err(Error::DegenerateWitness);
        }
        Ok(Line::new(alpha, beta, self.a + (self.b + self.c) / 8.0))
    }

    /// Exchanges `b` and `c`: the witness for the mirror image `x ↦ -x`.
    pub fn mirror(&self) -> Witness {
        Witness {
            a: self.a,
            b: self.c,
            c: self.b,
        }
    }

    /// `tr(W ρ) < 0`
    pub fn detects(&self, rho: &DensityMatrix) -> bool {
        expectation(&self.to_matrix(), rho).expect("witness matrix is Hermitian") < 0.0
    }

    /// Positive `k` with `self ≈ k·other`, if the coefficient ratios agree
    /// within `tol` and zero coefficients match zeros.
    pub fn proportionality(&self, other: &Witness, tol: f64) -> Option<f64> {
        let (u, w) = (self.coefficients(), other.coefficients());
        let scale = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let wscale = w.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let ratios: Vec<f64> = u
            .iter()
            .zip(&w)
            .filter(|(_, b)| b.abs() > tol * wscale)
            .map(|(a, b)| a / b)
            .collect();
        let zeros_match = u
            .iter()
            .zip(&w)
            .filter(|(_, b)| b.abs() <= tol * wscale)
            .all(|(a, _)| a.abs() <= tol * scale);
        let (lo, hi) = ratios
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &r| {
                (l.min(r), h.max(r))
            });
        (zeros_match && !ratios.is_empty() && lo > 0.0 && (hi - lo) <= tol * hi.abs())
            .then_some(0.5 * (lo + hi))
    }
}

/// The GHZ-symmetric witness vanishing on `line`, validated not to enter the
/// region `{classify ≤ bound}`; normalized to the unit-normal gauge.
pub fn witness_from_line(line: &Line, bound: SloccClass) -> Result<Witness> {
    let line = Line::new(line.alpha, line.beta, line.gamma);
    let min_distance = support_min(&line, bound);
    if line.gamma <= 0.0 || min_distance < -POSITIVITY_TOL {
        return Err(Error::LineCrossesUninteresting {
            min_distance: min_distance.min(line.gamma),
        });
    }
    // alpha = b - c, beta = (√3/2)(b + c), gamma = a + (b + c)/8
    let sum = 2.0 * line.beta / SQRT_3;
    let b = 0.5 * (sum + line.alpha);
    let c = 0.5 * (sum - line.alpha);
    Witness::new(line.gamma - sum / 8.0, b, c)
}

/// `𝟙 - 4π_GHZ+ + 2π_GHZ−`, optimal for detecting any entanglement.
pub fn bisep_sep_witness() -> Witness {
    Witness {
        a: 1.0,
        b: -4.0,
        c: 2.0,
    }
}

/// `𝟙/2 - π_GHZ+`, optimal for genuine tripartite entanglement.
pub fn genuine_witness() -> Witness {
    Witness {
        a: 0.5,
        b: -1.0,
        c: 0.0,
    }
}

/// GHZ-class witness tangent to the GHZ/W boundary at `v0`:
/// `(3/4)𝟙 - 3/(v0² - 2v0 + 4)·π_GHZ+ - 3/(v0² + 2v0 + 4)·π_GHZ−`.
pub fn ghz_tangent_witness(v0: BoundaryParam) -> Witness {
    let v = v0.value();
    let v2 = v * v;
    Witness {
        a: 0.75,
        b: -3.0 / (v2 - 2.0 * v + 4.0),
        c: -3.0 / (v2 + 2.0 * v + 4.0),
    }
}

/// `(3/4)𝟙 - π_GHZ+`, built from the W-class state of maximal GHZ overlap.
pub fn projection_witness() -> Witness {
    Witness {
        a: 0.75,
        b: -1.0,
        c: 0.0,
    }
}

/// Segment `state(p) = (1 - p)·noise + p·target` in the triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingLine {
    noise: SymCoords,
    target: SymCoords,
}

impl MixingLine {
    pub fn new(noise: SymCoords, target: SymCoords) -> Result<Self> {
        for p in [noise, target] {
            if !p.in_triangle() {
                return Err(Error::OutsideTriangle { x: p.x, y: p.y });
            }
        }
        if noise == target {
            return Err(Error::DegenerateLine);
        }
        Ok(MixingLine { noise, target })
    }

    /// GHZ state mixed with white noise.
    pub fn pseudo_pure() -> Self {
        MixingLine {
            noise: SymCoords::ORIGIN,
            target: SymCoords::GHZ_PLUS,
        }
    }

    pub fn noise(&self) -> SymCoords {
        self.noise
    }

    pub fn target(&self) -> SymCoords {
        self.target
    }

    pub fn point(&self, p: f64) -> SymCoords {
        self.noise.lerp(self.target, p)
    }

    fn mirror(&self) -> Self {
        MixingLine {
            noise: self.noise.mirror(),
            target: self.target.mirror(),
        }
    }
}

/// Mixing parameter at which `w` changes sign along `line`, from the affine
/// solve `(1 - p)·E(noise) + p·E(target) = 0`. `None` if `w` is constant
/// along the line.
pub fn detection_threshold(w: &Witness, line: &MixingLine) -> Option<f64> {
    let e0 = w.expectation_sym(line.noise);
    let e1 = w.expectation_sym(line.target);
    (e0 != e1).then(|| e0 / (e0 - e1))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalWitness {
    pub witness: Witness,
    /// States with `p > threshold` are detected.
    pub threshold: f64,
    /// Boundary parameter of the tangent point, for GHZ-class targets.
    pub tangent_param: Option<BoundaryParam>,
}

/// Witness for `target_class` (and above) that is optimal on `line`.
pub fn optimal_witness_for_noise(
    line: &MixingLine,
    target_class: SloccClass,
) -> Result<OptimalWitness> {
    let target_actual = classify(line.target)?;
    if target_actual < target_class {
        return Err(Error::TargetNotInClass {
            requested: target_class,
            actual: target_actual,
        });
    }
    let noise_actual = classify(line.noise)?;
    if noise_actual >= target_class {
        return Err(Error::NoiseNotLower {
            requested: target_class,
            actual: noise_actual,
        });
    }

    let negative_side = line.target.x < 0.0;
    let oriented = |w: Witness| if negative_side { w.mirror() } else { w };
    let (witness, tangent_param) = match target_class {
        SloccClass::Biseparable => (oriented(bisep_sep_witness()), None),
        SloccClass::WClass => (oriented(genuine_witness()), None),
        SloccClass::GhzClass => {
            let l = if negative_side { line.mirror() } else { *line };
            let v0 = geometry::line_curve_intersection(l.noise, l.target)?;
            (oriented(ghz_tangent_witness(v0)), Some(v0))
        }
        SloccClass::Separable => unreachable!("noise class check rejects Separable targets"),
    };
    let threshold =
        detection_threshold(&witness, line).expect("witness changes sign along the line");
    Ok(OptimalWitness {
        witness,
        threshold,
        tangent_param,
    })
}

/// Zero line of `w` supports the region `{classify ≤ bound}`: it touches the
/// region's border and does not enter its interior.
pub fn is_optimal_for_symmetric(w: &Witness, bound: SloccClass) -> bool {
    match w.zero_line() {
        Ok(line) => support_min(&line, bound).abs() <= OPTIMALITY_TOL,
        Err(_) => false,
    }
}

/// Largest `p` with `classify(line.point(p)) ≤ bound`; the set of such `p`
/// is an interval starting at 0 because the region is convex.
pub fn exit_parameter(line: &MixingLine, bound: SloccClass) -> Result<f64> {
    let at_most = |p: f64| classify(line.point(p)).map(|k| k <= bound);
    let noise_class = classify(line.noise)?;
    if noise_class > bound {
        return Err(Error::NoiseNotLower {
            requested: bound,
            actual: noise_class,
        });
    }
    if at_most(1.0)? {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if at_most(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Optimal on `line`: valid for `bound`, and no state on the line beyond the
/// exit from `{classify ≤ bound}` has positive expectation.
pub fn is_optimal_on_line(w: &Witness, line: &MixingLine, bound: SloccClass) -> Result<bool> {
    let zero = w.zero_line()?;
    if support_min(&zero, bound) < -OPTIMALITY_TOL {
        return Ok(false);
    }
    let p_exit = exit_parameter(line, bound)?;
    if p_exit >= 1.0 {
        // no interesting state on the line
        return Ok(true);
    }
    Ok(w.expectation_sym(line.point(p_exit)).abs() <= OPTIMALITY_TOL)
}

/// A full-rank point on the zero line of `w` inside the triangle, if any:
/// the midpoint of the chord the zero line cuts from the triangle.
pub fn full_rank_zero_point(w: &Witness) -> Option<SymCoords> {
    let line = w.zero_line().ok()?;
    let corners = [SymCoords::BOTTOM, SymCoords::GHZ_PLUS, SymCoords::GHZ_MINUS];
    let mut hits: Vec<SymCoords> = Vec::new();
    for i in 0..3 {
        let (p, q) = (corners[i], corners[(i + 1) % 3]);
        let (fp, fq) = (line.eval(p), line.eval(q));
        if fp == fq {
            continue;
        }
        let t = fp / (fp - fq);
        if (-TRIANGLE_TOL..=1.0 + TRIANGLE_TOL).contains(&t) {
            hits.push(p.lerp(q, t.clamp(0.0, 1.0)));
        }
    }
    let (mut best, mut len) = (None, 0.0);
    for i in 0..hits.len() {
        for j in i + 1..hits.len() {
            let d = hits[i].distance(hits[j]);
            if d > len {
                len = d;
                best = Some(hits[i].lerp(hits[j], 0.5));
            }
        }
    }
    best.filter(|&p| geometry::is_full_rank(p))
}
