use clap::{Parser, Subcommand, ValueEnum};
use ghzsym::geometry::{self, boundary_point, BoundaryParam, SloccClass};
use ghzsym::symmetry::{twirl_coordinates, SymCoords};
use ghzsym::witness::{self, MixingLine, Witness};
use ghzsym_cli::matrix_file::MatrixFile;
use ghzsym_cli::plot::{self, Overlays};
use ghzsym_cli::report::*;
use ghzsym_cli::{CliError, EXIT_INPUT};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Classification and optimal entanglement witnesses for GHZ-symmetric
/// three-qubit states.
#[derive(Parser)]
#[command(name = "ghzsym", version, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Twirl a density matrix and report its symmetric coordinates and class.
    Twirl {
        /// Matrix file (JSON with an 8x8 "matrix" of [re, im] pairs).
        #[arg(long)]
        input: PathBuf,
    },
    /// Classify the symmetric state at (x, y).
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
    },
    /// Optimal witness for detecting a target class along a noise line.
    WitnessOptimal {
        #[arg(long, value_enum, default_value = "ghz")]
        class: TargetClass,
        /// Noise state as a matrix file (twirled to coordinates).
        #[arg(long, conflicts_with_all = ["noise_x", "noise_y"])]
        noise: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        noise_x: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        noise_y: f64,
        /// Target state as a matrix file (twirled to coordinates).
        #[arg(long, conflicts_with_all = ["target_x", "target_y"])]
        target: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true, default_value_t = SymCoords::GHZ_PLUS.x)]
        target_x: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = SymCoords::GHZ_PLUS.y)]
        target_y: f64,
    },
    /// Expectation value of W = a·1 + b·GHZ+ + c·GHZ- on a state.
    WitnessEval {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        /// State as a matrix file; otherwise --x and --y.
        #[arg(long, conflicts_with_all = ["x", "y"])]
        state: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true, requires = "y")]
        x: Option<f64>,
        #[arg(long, allow_negative_numbers = true, requires = "x")]
        y: Option<f64>,
    },
    /// Sample the GHZ/W boundary curve at evenly spaced parameters in [-1, 1].
    Boundary {
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Write the SVG class diagram of the triangle.
    Plot {
        #[arg(long)]
        out: PathBuf,
        /// State marker at "x,y"; repeatable.
        #[arg(long = "state", value_name = "X,Y", allow_hyphen_values = true)]
        states: Vec<String>,
        /// State marker from a matrix file; repeatable.
        #[arg(long = "state-file")]
        state_files: Vec<PathBuf>,
        /// Witness zero line for "a,b,c"; repeatable.
        #[arg(long = "witness", value_name = "A,B,C", allow_hyphen_values = true)]
        witnesses: Vec<String>,
        /// Draw the GHZ + white noise line.
        #[arg(long)]
        pseudo_pure: bool,
        /// Rasterize the regions and print the coverage report.
        #[arg(long)]
        self_check: bool,
        #[arg(long, default_value_t = 400)]
        check_grid: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetClass {
    /// Any entanglement.
    Entanglement,
    /// Genuine tripartite entanglement.
    Genuine,
    /// GHZ-class entanglement.
    Ghz,
}

impl TargetClass {
    fn slocc(self) -> SloccClass {
        match self {
            TargetClass::Entanglement => SloccClass::Biseparable,
            TargetClass::Genuine => SloccClass::WClass,
            TargetClass::Ghz => SloccClass::GhzClass,
        }
    }

    fn name(self) -> &'static str {
        match self {
            TargetClass::Entanglement => "entanglement",
            TargetClass::Genuine => "genuine",
            TargetClass::Ghz => "ghz",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
}

/// Tolerance below which an expectation value counts as zero when deciding
/// detection from decimal inputs.
const DETECTION_TOL: f64 = 1e-10;

/// Decimal inputs this close to the triangle are moved onto it, so that
/// rounded corner values such as `-0.1443376` are accepted.
const INPUT_SNAP_TOL: f64 = 1e-6;

fn nearest_on_segment(p: SymCoords, a: SymCoords, b: SymCoords) -> SymCoords {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy);
    a.lerp(b, t.clamp(0.0, 1.0))
}

fn coords(x: f64, y: f64) -> Result<SymCoords, CliError> {
    let p = SymCoords::new(x, y);
    if p.in_triangle() {
        return Ok(p);
    }
    let corners = [SymCoords::BOTTOM, SymCoords::GHZ_PLUS, SymCoords::GHZ_MINUS];
    (0..3)
        .map(|i| nearest_on_segment(p, corners[i], corners[(i + 1) % 3]))
        .min_by(|a, b| a.distance(p).total_cmp(&b.distance(p)))
        .filter(|q| q.distance(p) <= INPUT_SNAP_TOL && q.in_triangle())
        .ok_or_else(|| ghzsym::Error::OutsideTriangle { x, y }.into())
}

fn twirled_file(path: &Path) -> Result<SymCoords, CliError> {
    Ok(twirl_coordinates(&MatrixFile::read(path)?.to_density()?))
}

fn parse_list<const N: usize>(s: &str, what: &str) -> Result<[f64; N], CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::input("InvalidArgument", format!("{what} {s:?}: {e}")))?;
    parts.try_into().map_err(|_| {
        CliError::input(
            "InvalidArgument",
            format!("{what} {s:?}: expected {N} comma-separated numbers"),
        )
    })
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Twirl { input } => {
            let file = MatrixFile::read(&input)?;
            let p = twirl_coordinates(&file.to_density()?);
            Ok(to_json(&StateReport::new(
                p,
                geometry::classify(p)?,
                file.label,
            )))
        }
        Command::Classify { x, y } => {
            let p = coords(x, y)?;
            Ok(to_json(&StateReport::new(p, geometry::classify(p)?, None)))
        }
        Command::WitnessOptimal {
            class,
            noise,
            noise_x,
            noise_y,
            target,
            target_x,
            target_y,
        } => {
            let noise = match noise {
                Some(path) => twirled_file(&path)?,
                None => coords(noise_x, noise_y)?,
            };
            let target = match target {
                Some(path) => twirled_file(&path)?,
                None => coords(target_x, target_y)?,
            };
            let line = MixingLine::new(noise, target)?;
            let opt = witness::optimal_witness_for_noise(&line, class.slocc())?;
            Ok(to_json(&WitnessOptimalReport {
                class: class.name().to_string(),
                noise: noise.into(),
                target: target.into(),
                witness: (&opt.witness).into(),
                threshold: opt.threshold,
                zero_line: opt.witness.zero_line()?.into(),
                tangent_param: opt.tangent_param.map(BoundaryParam::value),
            }))
        }
        Command::WitnessEval {
            a,
            b,
            c,
            state,
            x,
            y,
        } => {
            let w = Witness::new(a, b, c)?;
            let (p, expectation) = match (state, x, y) {
                (Some(path), _, _) => {
                    let rho = MatrixFile::read(&path)?.to_density()?;
                    (
                        twirl_coordinates(&rho),
                        ghzsym::linalg::expectation(&w.to_matrix(), &rho)?,
                    )
                }
                (None, Some(x), Some(y)) => {
                    let p = coords(x, y)?;
                    (p, w.expectation_sym(p))
                }
                _ => {
                    return Err(CliError::input(
                        "MissingState",
                        "pass --state FILE or --x and --y",
                    ))
                }
            };
            Ok(to_json(&WitnessEvalReport {
                witness: (&w).into(),
                state: p.into(),
                expectation,
                detected: expectation < -DETECTION_TOL,
            }))
        }
        Command::Boundary {
            samples,
            format: Format::Csv,
        } => {
            if samples < 2 {
                return Err(CliError::input(
                    "InvalidArgument",
                    "--samples must be at least 2",
                ));
            }
            let mut out = String::from("v,x,y\n");
            let last = (samples - 1) as f64;
            for i in 0..samples {
                // exact endpoints and exact zero for odd counts
                let v = ((2 * i) as f64 - last) / last;
                let b = boundary_point(BoundaryParam::new(v)?);
                // adding 0.0 turns -0.0 into 0.0
                out.push_str(&format!(
                    "{:.12},{:.12},{:.12}\n",
                    v + 0.0,
                    b.x + 0.0,
                    b.y + 0.0
                ));
            }
            Ok(out.trim_end().to_string())
        }
        Command::Plot {
            out,
            states,
            state_files,
            witnesses,
            pseudo_pure,
            self_check,
            check_grid,
        } => {
            let mut overlays = Overlays {
                pseudo_pure,
                ..Overlays::default()
            };
            for s in &states {
                let [x, y] = parse_list::<2>(s, "--state")?;
                overlays.states.push(coords(x, y)?);
            }
            for path in &state_files {
                overlays.states.push(twirled_file(path)?);
            }
            for s in &witnesses {
                let [a, b, c] = parse_list::<3>(s, "--witness")?;
                overlays.witnesses.push(Witness::new(a, b, c)?);
            }
            std::fs::write(&out, plot::render_svg(&overlays))
                .map_err(|e| CliError::input("Io", format!("{}: {e}", out.display())))?;
            if !self_check {
                return Ok(String::new());
            }
            let report = plot::coverage_check(check_grid.max(2));
            let text = to_json(&report);
            if report.passed {
                Ok(text)
            } else {
                Err(CliError::Domain {
                    kind: "CoverageCheckFailed".into(),
                    message: text,
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(text) => {
            if !text.is_empty() {
                let mut stdout = std::io::stdout().lock();
                let _ = writeln!(stdout, "{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!(
                "{}",
                to_json(&ErrorReport {
                    error: e.kind(),
                    message: e.message(),
                })
            );
            ExitCode::from(e.exit_code())
        }
    }
}
