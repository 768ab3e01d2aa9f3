use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use persland::analysis::Scalar;
use persland::rational::{format_significant, to_decimal_string, Exact};
use persland::{Landscape, PersistenceDiagram, Rational};

pub enum CliError {
    /// Malformed input or bad arguments.
    Invalid(String),
    /// The input is well formed but the operation's preconditions fail.
    Precondition(String),
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(msg) | CliError::Precondition(msg) => f.write_str(msg),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl From<persland::Error> for CliError {
    fn from(e: persland::Error) -> Self {
        use persland::Error as E;
        match e {
            E::NotADiagramLandscape(_) | E::PreconditionViolated(_) | E::NotGeneric(_) | E::IsolatedVertex(_) => {
                CliError::Precondition(e.to_string())
            }
            other => CliError::Invalid(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn with_path(path: &Path) -> impl FnOnce(persland::Error) -> CliError + '_ {
    move |e| match CliError::from(e) {
        CliError::Invalid(msg) => CliError::Invalid(format!("{}: {msg}", path.display())),
        other => other,
    }
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn create_dir(path: &Path) -> CliResult<()> {
    fs::create_dir_all(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn read_diagram(path: &Path) -> CliResult<PersistenceDiagram> {
    PersistenceDiagram::parse(&read_text(path)?).map_err(with_path(path))
}

pub fn read_landscape(path: &Path) -> CliResult<Landscape> {
    Landscape::parse(&read_text(path)?).map_err(with_path(path))
}

/// Diagram paths listed one per line; relative paths are resolved against
/// the manifest's directory.
pub fn read_manifest(path: &Path) -> CliResult<Vec<PathBuf>> {
    let base = path.parent().unwrap_or(Path::new(""));
    let paths: Vec<PathBuf> = read_text(path)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| base.join(l))
        .collect();
    if paths.is_empty() {
        return Err(CliError::Invalid(format!("{}: manifest lists no diagrams", path.display())));
    }
    Ok(paths)
}

/// How numbers are printed: exact `p/q` unless `--decimal` was given.
#[derive(Clone, Copy)]
pub struct NumberFormat {
    pub decimal: Option<usize>,
}

impl NumberFormat {
    pub fn rational(&self, r: &Rational) -> String {
        match self.decimal {
            Some(digits) => to_decimal_string(r, digits),
            None => Exact(r).to_string(),
        }
    }

    pub fn scalar(&self, s: &Scalar) -> String {
        match s {
            Scalar::Exact(r) => self.rational(r),
            Scalar::Real(x) => format_significant(*x, self.decimal.unwrap_or(15)),
        }
    }

    pub fn csv(&self, rows: &[Vec<Rational>]) -> String {
        let mut out = String::new();
        for row in rows {
            let cells: Vec<String> = row.iter().map(|r| self.rational(r)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}
