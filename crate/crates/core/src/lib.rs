//! Entanglement classification and optimal linear witnesses for
//! GHZ-symmetric three-qubit states.
//!
//! GHZ-symmetric states form a two-parameter family `ρ(x, y)` filling a plane
//! triangle. Every SLOCC class region inside that triangle is known in closed
//! form, and because the GHZ twirl never raises the entanglement class, any
//! witness that is optimal on the triangle is a valid witness for arbitrary
//! three-qubit states.
//!
//! * [`linalg`]: 8×8 complex matrices, density-matrix validation, spectra,
//!   partial transpose.
//! * [`symmetry`]: the GHZ symmetry group, twirl coordinates and the
//!   Monte-Carlo/exact group average.
//! * [`geometry`]: triangle, class regions, GHZ/W boundary curve and tangents.
//! * [`witness`]: GHZ-symmetric witnesses, explicit optimal constructions and
//!   detection thresholds along mixing lines.

pub mod geometry;
pub mod linalg;
pub mod symmetry;
pub mod witness;

use thiserror::Error;

pub use geometry::{BoundaryParam, Line, SloccClass};
pub use linalg::{ComplexMatrix8, DensityMatrix, LinalgError, PureState8};
pub use symmetry::{SymCoords, SymmetryElement};
pub use witness::{MixingLine, OptimalWitness, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("point ({x}, {y}) lies outside the triangle of GHZ-symmetric states")]
    OutsideTriangle { x: f64, y: f64 },
    #[error("boundary parameter v = {0} is outside [-1, 1]")]
    InvalidBoundaryParam(f64),
    #[error("segment does not cross the GHZ/W boundary curve")]
    NoCrossing,
    #[error("segment crosses the GHZ/W boundary curve {0} times")]
    AmbiguousCrossing(usize),
    #[error("line enters the uninteresting region (minimum signed distance {min_distance:e})")]
    LineCrossesUninteresting { min_distance: f64 },
    #[error("witness has b = c = 0; its zero set is empty or the whole plane")]
    DegenerateWitness,
    #[error("witness violates the sign convention a + (b + c)/8 > 0 (value {0:e})")]
    SignConvention(f64),
    #[error("target state of class {actual} is not in the requested class {requested} or above")]
    TargetNotInClass {
        requested: SloccClass,
        actual: SloccClass,
    },
    #[error("noise state of class {actual} is not strictly below {requested}")]
    NoiseNotLower {
        requested: SloccClass,
        actual: SloccClass,
    },
    #[error("mixing line endpoints coincide")]
    DegenerateLine,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
