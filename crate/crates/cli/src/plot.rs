//! SVG diagram of the triangle of GHZ-symmetric states with its four class
//! regions, plus a rasterized check that the drawn regions tile the triangle.

use ghzsym::geometry::{boundary_point, classify, BoundaryParam, Line, SloccClass};
use ghzsym::symmetry::{SymCoords, APEX_Y, BOTTOM_Y, SQRT_3};
use ghzsym::Witness;
use serde::Serialize;
use std::fmt::Write;

pub const WIDTH: f64 = 1000.0;
pub const HEIGHT: f64 = 900.0;
/// Viewport pixels per unit of `x` and `y`.
pub const SCALE: f64 = 880.0;
/// Curve samples per half of the GHZ/W boundary.
pub const CURVE_SAMPLES: usize = 1024;

pub const MAGENTA: &str = "#ff00ff";

pub fn fill(class: SloccClass) -> &'static str {
    match class {
        SloccClass::Separable => "#b3b3b3",
        SloccClass::Biseparable => "#f5d94a",
        SloccClass::WClass => "#72c05b",
        SloccClass::GhzClass => "#4f81c7",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub class: SloccClass,
    pub polygon: Vec<SymCoords>,
}

/// Curve points from `v = from` to `v = to`, both inclusive.
fn curve(from: f64, to: f64) -> impl Iterator<Item = SymCoords> {
    (0..=CURVE_SAMPLES).map(move |i| {
        let t = i as f64 / CURVE_SAMPLES as f64;
        let v = (from + (to - from) * t).clamp(-1.0, 1.0);
        boundary_point(BoundaryParam::new(v).expect("clamped"))
    })
}

/// Disjoint polygons, one class each, whose union is the triangle.
pub fn regions() -> Vec<Region> {
    let apex = SymCoords::new(0.0, APEX_Y);
    let sep_corner = SymCoords::new(0.125, 0.0);
    let bisep_corner = SymCoords::new(0.25, 1.0 / (4.0 * SQRT_3));
    let mut out = vec![Region {
        class: SloccClass::Separable,
        polygon: vec![SymCoords::BOTTOM, sep_corner, apex, sep_corner.mirror()],
    }];
    for side in [1.0, -1.0] {
        let m = |p: SymCoords| SymCoords::new(side * p.x, p.y);
        out.push(Region {
            class: SloccClass::Biseparable,
            polygon: vec![m(sep_corner), m(bisep_corner), apex],
        });
        let mut w = vec![m(bisep_corner)];
        w.extend(curve(side, 0.0));
        out.push(Region {
            class: SloccClass::WClass,
            polygon: w,
        });
        let mut ghz: Vec<SymCoords> = curve(0.0, side).collect();
        ghz.push(m(SymCoords::GHZ_PLUS));
        out.push(Region {
            class: SloccClass::GhzClass,
            polygon: ghz,
        });
    }
    out
}

pub fn to_viewport(p: SymCoords) -> (f64, f64) {
    let mid = 0.5 * (APEX_Y + BOTTOM_Y);
    (
        0.5 * WIDTH + SCALE * p.x,
        0.5 * HEIGHT - SCALE * (p.y - mid),
    )
}

fn points_attr(poly: &[SymCoords]) -> String {
    poly.iter()
        .map(|&p| {
            let (u, v) = to_viewport(p);
            format!("{u:.3},{v:.3}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Part of `line` inside the triangle, if it meets the triangle in a segment.
pub fn chord(line: &Line) -> Option<(SymCoords, SymCoords)> {
    let corners = [SymCoords::BOTTOM, SymCoords::GHZ_PLUS, SymCoords::GHZ_MINUS];
    let mut hits = Vec::new();
    for i in 0..3 {
        let (p, q) = (corners[i], corners[(i + 1) % 3]);
        let (fp, fq) = (line.eval(p), line.eval(q));
        if fp == fq || fp.signum() == fq.signum() && fp != 0.0 && fq != 0.0 {
            continue;
        }
        hits.push(p.lerp(q, fp / (fp - fq)));
    }
    let mut best = None;
    let mut len = 1e-12;
    for i in 0..hits.len() {
        for j in i + 1..hits.len() {
            let d = hits[i].distance(hits[j]);
            if d > len {
                len = d;
                best = Some((hits[i], hits[j]));
            }
        }
    }
    best
}

#[derive(Debug, Clone, Default)]
pub struct Overlays {
    pub states: Vec<SymCoords>,
    pub witnesses: Vec<Witness>,
    pub pseudo_pure: bool,
}

fn segment(svg: &mut String, p: SymCoords, q: SymCoords, attrs: &str) {
    let ((x1, y1), (x2, y2)) = (to_viewport(p), to_viewport(q));
    writeln!(
        svg,
        r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" {attrs}/>"#
    )
    .unwrap();
}

fn label(svg: &mut String, p: SymCoords, dx: f64, dy: f64, anchor: &str, text: &str) {
    let (u, v) = to_viewport(p);
    writeln!(
        svg,
        r#"<text x="{:.3}" y="{:.3}" text-anchor="{anchor}" font-family="sans-serif" font-size="22">{text}</text>"#,
        u + dx,
        v + dy
    )
    .unwrap();
}

pub fn render_svg(overlays: &Overlays) -> String {
    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    )
    .unwrap();

    svg.push_str("<g id=\"regions\" stroke=\"none\">\n");
    for r in regions() {
        writeln!(
            svg,
            r#"<polygon class="{}" fill="{}" points="{}"/>"#,
            r.class,
            fill(r.class),
            points_attr(&r.polygon)
        )
        .unwrap();
    }
    svg.push_str("</g>\n");
    writeln!(
        svg,
        r#"<polygon id="triangle" fill="none" stroke="black" stroke-width="2" points="{}"/>"#,
        points_attr(&[SymCoords::BOTTOM, SymCoords::GHZ_PLUS, SymCoords::GHZ_MINUS])
    )
    .unwrap();

    svg.push_str("<g id=\"overlays\">\n");
    if overlays.pseudo_pure {
        segment(
            &mut svg,
            SymCoords::ORIGIN,
            SymCoords::GHZ_PLUS,
            &format!(r#"class="pseudo-pure" stroke="{MAGENTA}" stroke-width="3""#),
        );
    }
    for w in &overlays.witnesses {
        if let Some((p, q)) = w.zero_line().ok().as_ref().and_then(chord) {
            segment(
                &mut svg,
                p,
                q,
                r#"class="witness" stroke="black" stroke-width="2" stroke-dasharray="8,5""#,
            );
        }
    }
    for &p in &overlays.states {
        let (u, v) = to_viewport(p);
        writeln!(
            svg,
            r#"<circle class="state" cx="{u:.3}" cy="{v:.3}" r="6" fill="black"/>"#
        )
        .unwrap();
    }
    svg.push_str("</g>\n");

    label(&mut svg, SymCoords::GHZ_MINUS, -8.0, 0.0, "end", "GHZ−");
    label(&mut svg, SymCoords::GHZ_PLUS, 8.0, 0.0, "start", "GHZ+");
    svg.push_str("</svg>\n");
    svg
}

fn contains(poly: &[SymCoords], p: SymCoords) -> bool {
    let mut inside = false;
    let mut j = poly.len() - 1;
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[j]);
        if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
            inside = !inside;
        }
        j = i;
    }
    inside
}

fn shoelace(poly: &[SymCoords]) -> f64 {
    let n = poly.len();
    0.5 * (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum::<f64>()
        .abs()
}

#[derive(Debug, Clone, Serialize)]
pub struct AreaRow {
    pub class: String,
    pub polygon_area: f64,
    pub raster_area: f64,
    pub classify_area: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    pub grid: usize,
    pub points: usize,
    pub uncovered: usize,
    pub overlapping: usize,
    /// Points whose polygon class differs from `classify`.
    pub disagreements: usize,
    pub areas: Vec<AreaRow>,
    pub max_relative_area_error: f64,
    pub passed: bool,
}

/// Maximum relative area error accepted by [`coverage_check`].
pub const AREA_TOL: f64 = 0.005;

/// Rasterizes the region polygons on a `grid × grid` lattice of cell centers
/// over the triangle's bounding box. Every lattice point inside the triangle
/// must lie in exactly one polygon, and per-class areas must agree with the
/// polygon areas and with `classify` on the same lattice.
pub fn coverage_check(grid: usize) -> CoverageReport {
    let regions = regions();
    let (x0, x1, y0, y1) = (-0.5, 0.5, BOTTOM_Y, APEX_Y);
    let cell = (x1 - x0) / grid as f64 * (y1 - y0) / grid as f64;
    let mut raster = [0usize; 4];
    let mut classified = [0usize; 4];
    let (mut points, mut uncovered, mut overlapping, mut disagreements) = (0, 0, 0, 0);
    for i in 0..grid {
        for j in 0..grid {
            let p = SymCoords::new(
                x0 + (x1 - x0) * (i as f64 + 0.5) / grid as f64,
                y0 + (y1 - y0) * (j as f64 + 0.5) / grid as f64,
            );
            if !p.in_triangle() {
                continue;
            }
            points += 1;
            let hits: Vec<&Region> = regions.iter().filter(|r| contains(&r.polygon, p)).collect();
            match hits.len() {
                0 => uncovered += 1,
                1 => raster[hits[0].class as usize] += 1,
                _ => overlapping += 1,
            }
            let k = classify(p).expect("lattice point inside triangle");
            classified[k as usize] += 1;
            if hits.len() == 1 && hits[0].class != k {
                disagreements += 1;
            }
        }
    }
    let mut max_err = 0.0f64;
    let areas = SloccClass::ALL
        .iter()
        .map(|&k| {
            let polygon_area: f64 = regions
                .iter()
                .filter(|r| r.class == k)
                .map(|r| shoelace(&r.polygon))
                .sum();
            let raster_area = raster[k as usize] as f64 * cell;
            let classify_area = classified[k as usize] as f64 * cell;
            max_err = max_err
                .max((raster_area - polygon_area).abs() / polygon_area)
                .max((raster_area - classify_area).abs() / classify_area);
            AreaRow {
                class: k.to_string(),
                polygon_area,
                raster_area,
                classify_area,
            }
        })
        .collect();
    CoverageReport {
        grid,
        points,
        uncovered,
        overlapping,
        disagreements,
        areas,
        max_relative_area_error: max_err,
        passed: uncovered == 0 && overlapping == 0 && max_err <= AREA_TOL,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_areas_sum_to_triangle() {
        let total: f64 = regions().iter().map(|r| shoelace(&r.polygon)).sum();
        let triangle = shoelace(&[SymCoords::BOTTOM, SymCoords::GHZ_PLUS, SymCoords::GHZ_MINUS]);
        assert!((total - triangle).abs() < 1e-12, "{total} vs {triangle}");
    }

    #[test]
    fn viewport_has_y_up() {
        let (_, top) = to_viewport(SymCoords::GHZ_PLUS);
        let (_, bottom) = to_viewport(SymCoords::BOTTOM);
        assert!(top < bottom);
        for p in [SymCoords::GHZ_PLUS, SymCoords::GHZ_MINUS, SymCoords::BOTTOM] {
            let (u, v) = to_viewport(p);
            assert!((0.0..=WIDTH).contains(&u) && (0.0..=HEIGHT).contains(&v));
        }
    }

    #[test]
    fn chord_of_projection_witness_ends_on_right_edge() {
        let line = ghzsym::witness::projection_witness().zero_line().unwrap();
        let (p, q) = chord(&line).unwrap();
        let corner = SymCoords::new(0.375, 1.0 / (2.0 * SQRT_3));
        assert!(p.distance(corner) < 1e-12 || q.distance(corner) < 1e-12);
    }
}
