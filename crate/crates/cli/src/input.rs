//! Parsing of windows and metric-space inputs.

use std::path::Path;

use rips_morse::metric::parse_point_set;
use rips_morse::{FiniteMetricSpace, LatticePoint, Window};

use crate::error::CliError;

/// Parses `"x0,y0:x1,y1"` into the box with those opposite corners.
pub fn parse_window(s: &str) -> Result<Window, CliError> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("window {s:?} is not of the form \"x0,y0:x1,y1\"")))?;
    let corner = |c: &str| -> Result<LatticePoint, CliError> {
        c.split(',')
            .map(|v| v.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map(LatticePoint)
            .map_err(|e| CliError::Usage(format!("window corner {c:?}: {e}")))
    };
    Window::new(corner(lo)?, corner(hi)?).map_err(|e| CliError::Usage(format!("window {s:?}: {e}")))
}

/// Where a finite metric space comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceSource {
    /// A CSV distance matrix on disk.
    Matrix(String),
    /// A JSON array of lattice points, inline or as a file path.
    Points(String),
    Path(usize),
    Cycle(usize),
}

impl SpaceSource {
    pub fn load(&self) -> Result<FiniteMetricSpace, CliError> {
        match self {
            SpaceSource::Matrix(path) => {
                let file = std::fs::File::open(path).map_err(|source| CliError::Io {
                    context: format!("reading {path}"),
                    source,
                })?;
                FiniteMetricSpace::from_csv_reader(file).map_err(CliError::input)
            }
            SpaceSource::Points(arg) => {
                let json = if Path::new(arg).is_file() {
                    std::fs::read_to_string(arg).map_err(|source| CliError::Io {
                        context: format!("reading {arg}"),
                        source,
                    })?
                } else {
                    arg.clone()
                };
                let mut points = parse_point_set(&json).map_err(CliError::input)?;
                points.sort();
                points.dedup();
                FiniteMetricSpace::from_lattice_points(&points).map_err(CliError::input)
            }
            SpaceSource::Path(m) | SpaceSource::Cycle(m) if *m == 0 => {
                Err(CliError::Usage("a space needs at least one point".into()))
            }
            SpaceSource::Path(m) => Ok(FiniteMetricSpace::path(*m)),
            SpaceSource::Cycle(m) => Ok(FiniteMetricSpace::cycle(*m)),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SpaceSource::Matrix(p) => format!("matrix:{p}"),
            SpaceSource::Points(p) => format!("points:{p}"),
            SpaceSource::Path(m) => format!("path:{m}"),
            SpaceSource::Cycle(m) => format!("cycle:{m}"),
        }
    }
}
