//! Plumbing for the `ghzsym` command-line tool: matrix file I/O, JSON
//! reports, exit-code mapping and the SVG triangle diagram.

pub mod matrix_file;
pub mod plot;
pub mod report;

use std::fmt;

/// Process exit code for input and validation failures.
pub const EXIT_INPUT: u8 = 1;
/// Process exit code for well-formed requests the geometry cannot satisfy.
pub const EXIT_DOMAIN: u8 = 2;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Malformed or invalid input; exit code 1.
    Input { kind: String, message: String },
    /// Valid input with no answer (no crossing, wrong class); exit code 2.
    Domain { kind: String, message: String },
}

impl CliError {
    pub fn input(kind: &str, message: impl Into<String>) -> Self {
        CliError::Input {
            kind: kind.to_string(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input { .. } => EXIT_INPUT,
            CliError::Domain { .. } => EXIT_DOMAIN,
        }
    }

    pub fn kind(&self) -> &str {
        match self {
            CliError::Input { kind, .. } | CliError::Domain { kind, .. } => kind,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input { message, .. } | CliError::Domain { message, .. } => message,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

/// Variant name from the derived `Debug` output, e.g. `NotPositiveSemidefinite`.
fn variant_name(debug: &str) -> String {
    debug
        .split(|c: char| !c.is_alphanumeric() && c != '_')
        .next()
        .unwrap_or(debug)
        .to_string()
}

impl From<ghzsym::LinalgError> for CliError {
    fn from(e: ghzsym::LinalgError) -> Self {
        CliError::input(&variant_name(&format!("{e:?}")), e.to_string())
    }
}

impl From<ghzsym::Error> for CliError {
    fn from(e: ghzsym::Error) -> Self {
        use ghzsym::Error::*;
        match e {
            Linalg(inner) => inner.into(),
            OutsideTriangle { .. }
            | InvalidBoundaryParam(_)
            | SignConvention(_)
            | DegenerateLine => CliError::input(&variant_name(&format!("{e:?}")), e.to_string()),
            NoCrossing
            | AmbiguousCrossing(_)
            | LineCrossesUninteresting { .. }
            | DegenerateWitness
            | TargetNotInClass { .. }
            | NoiseNotLower { .. } => CliError::Domain {
                kind: variant_name(&format!("{e:?}")),
                message: e.to_string(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_kinds_follow_variant_names() {
        let e: CliError = ghzsym::LinalgError::NotPositiveSemidefinite {
            min_eigenvalue: -0.5,
        }
        .into();
        assert_eq!(e.kind(), "NotPositiveSemidefinite");
        assert_eq!(e.exit_code(), EXIT_INPUT);
        let e: CliError = ghzsym::Error::NoCrossing.into();
        assert_eq!((e.kind(), e.exit_code()), ("NoCrossing", EXIT_DOMAIN));
        let e: CliError = ghzsym::Error::OutsideTriangle { x: 1.0, y: 0.0 }.into();
        assert_eq!((e.kind(), e.exit_code()), ("OutsideTriangle", EXIT_INPUT));
    }
}
