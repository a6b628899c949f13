//! JSON reports printed by the subcommands. Floats are written in shortest
//! round-trip form, which preserves every bit of the value.

use ghzsym::geometry::{self, Line, SloccClass};
use ghzsym::{SymCoords, Witness};
use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Coords {
    pub x: f64,
    pub y: f64,
}

impl From<SymCoords> for Coords {
    fn from(p: SymCoords) -> Self {
        Coords { x: p.x, y: p.y }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Coefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl From<&Witness> for Coefficients {
    fn from(w: &Witness) -> Self {
        Coefficients {
            a: w.a(),
            b: w.b(),
            c: w.c(),
        }
    }
}

/// `alpha·x + beta·y + gamma = 0`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LineCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl From<Line> for LineCoefficients {
    fn from(l: Line) -> Self {
        LineCoefficients {
            alpha: l.alpha,
            beta: l.beta,
            gamma: l.gamma,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StateReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub x: f64,
    pub y: f64,
    pub class: String,
    pub ppt: bool,
    pub full_rank: bool,
}

impl StateReport {
    pub fn new(p: SymCoords, class: SloccClass, label: Option<String>) -> Self {
        StateReport {
            label,
            x: p.x,
            y: p.y,
            class: class.to_string(),
            ppt: geometry::is_ppt(p),
            full_rank: geometry::is_full_rank(p),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessOptimalReport {
    pub class: String,
    pub noise: Coords,
    pub target: Coords,
    pub witness: Coefficients,
    pub threshold: f64,
    pub zero_line: LineCoefficients,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangent_param: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessEvalReport {
    pub witness: Coefficients,
    pub state: Coords,
    pub expectation: f64,
    pub detected: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport<'a> {
    pub error: &'a str,
    pub message: &'a str,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}
