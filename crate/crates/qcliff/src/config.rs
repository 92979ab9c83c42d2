//! Run configuration: command-line flags over a JSON config file over defaults.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::{CliError, Result};
use crate::io::read_text;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "qcliff", version, about = "Spinor classification in Cl(1,3) and its deformation by B = g + A")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Covariants, Lounesto class and Fierz residuals of each input spinor.
    Classify,
    /// B-covariants, B-class and class correspondence of each input spinor.
    Bclassify,
    /// Runs verification suites (`all` runs every suite).
    Verify {
        #[arg(required = true)]
        suites: Vec<String>,
    },
    /// Counts of (B-class, classical class) pairs over seeded samples.
    DualityTable,
}

#[derive(Clone, Debug, Default, Args)]
pub struct Flags {
    /// Spinor JSON file(s).
    #[arg(long, global = true)]
    pub input: Vec<PathBuf>,
    /// JSON 4×4 antisymmetric matrix A.
    #[arg(long, global = true)]
    pub a_matrix: Option<PathBuf>,
    /// JSON 4×4 matrix B; its symmetric part must be diag(1, -1, -1, -1).
    #[arg(long, global = true)]
    pub b_matrix: Option<PathBuf>,
    /// Draw A at random with this magnitude.
    #[arg(long, global = true, value_name = "MAG")]
    pub a_random: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub backend: Option<Backend>,
    #[arg(long, global = true)]
    pub samples: Option<u64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// JSON file with defaults for any of the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Keys of a config file; names match the long flags with `_` for `-`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(default)]
    input: Vec<PathBuf>,
    a_matrix: Option<PathBuf>,
    b_matrix: Option<PathBuf>,
    a_random: Option<f64>,
    seed: Option<u64>,
    tol: Option<f64>,
    backend: Option<Backend>,
    samples: Option<u64>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ASource {
    Zero,
    AFile(PathBuf),
    BFile(PathBuf),
    Random { magnitude: f64 },
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    pub a_source: ASource,
    pub tol: f64,
    pub backend: Backend,
    pub samples: Option<u64>,
    /// Always set: defaults to 0 so every random run is reproducible.
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

pub const DEFAULT_TOL: f64 = 1e-9;

/// Paths in a config file are relative to the file.
fn rebase(base: &Path, p: PathBuf) -> PathBuf {
    if p.is_absolute() {
        p
    } else {
        base.join(p)
    }
}

impl RunConfig {
    pub fn resolve(cli: Cli) -> Result<Self> {
        let Cli { command, flags } = cli;
        let file = match &flags.config {
            Some(path) => {
                let mut f: FileConfig =
                    serde_json::from_str(&read_text(path)?).map_err(|e| CliError::json(path.display().to_string(), e))?;
                let base = path.parent().unwrap_or(Path::new("."));
                f.input = f.input.into_iter().map(|p| rebase(base, p)).collect();
                f.a_matrix = f.a_matrix.map(|p| rebase(base, p));
                f.b_matrix = f.b_matrix.map(|p| rebase(base, p));
                f.out = f.out.map(|p| rebase(base, p));
                f
            }
            None => FileConfig::default(),
        };
        // Flags override the file as a group for the A source, so a flag never
        // combines with a conflicting file setting.
        let flag_a = flags.a_matrix.is_some() || flags.b_matrix.is_some() || flags.a_random.is_some();
        let (a_matrix, b_matrix, a_random) = if flag_a {
            (flags.a_matrix, flags.b_matrix, flags.a_random)
        } else {
            (file.a_matrix, file.b_matrix, file.a_random)
        };
        let a_source = match (a_matrix, b_matrix, a_random) {
            (None, None, None) => ASource::Zero,
            (Some(p), None, None) => ASource::AFile(p),
            (None, Some(p), None) => ASource::BFile(p),
            (None, None, Some(m)) => ASource::Random { magnitude: m },
            _ => return Err(CliError::Config("use only one of --a-matrix, --b-matrix, --a-random".into())),
        };
        let cfg = RunConfig {
            command,
            inputs: if flags.input.is_empty() { file.input } else { flags.input },
            a_source,
            tol: flags.tol.or(file.tol).unwrap_or(DEFAULT_TOL),
            backend: flags.backend.or(file.backend).unwrap_or(Backend::Float),
            samples: flags.samples.or(file.samples),
            seed: flags.seed.or(file.seed).unwrap_or(0),
            out: flags.out.or(file.out),
            format: flags.format.or(file.format),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(CliError::Config(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.samples == Some(0) {
            return Err(CliError::Config("sample count must be positive".into()));
        }
        if let ASource::Random { magnitude } = self.a_source {
            if !(magnitude.is_finite() && magnitude >= 0.0) {
                return Err(CliError::Config(format!("A magnitude must be finite and non-negative, got {magnitude}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig> {
        RunConfig::resolve(Cli::try_parse_from(args).unwrap())
    }

    #[test]
    fn defaults_and_flags() {
        let c = parse(&["qcliff", "classify"]).unwrap();
        assert_eq!(c.tol, DEFAULT_TOL);
        assert_eq!(c.seed, 0);
        assert_eq!(c.a_source, ASource::Zero);
        let c = parse(&["qcliff", "duality-table", "--a-random", "0.5", "--seed", "9", "--tol", "1e-8"]).unwrap();
        assert_eq!(c.a_source, ASource::Random { magnitude: 0.5 });
        assert_eq!((c.seed, c.tol), (9, 1e-8));
    }

    #[test]
    fn invalid_settings() {
        assert!(parse(&["qcliff", "classify", "--tol", "0"]).is_err());
        assert!(parse(&["qcliff", "classify", "--samples", "0"]).is_err());
        assert!(parse(&["qcliff", "classify", "--a-random", "1", "--a-matrix", "x.json"]).is_err());
    }

    #[test]
    fn file_then_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        std::fs::write(&path, r#"{"tol": 1e-6, "seed": 3, "a_random": 2.0, "input": ["s.json"]}"#).unwrap();
        let p = path.to_str().unwrap();
        let c = parse(&["qcliff", "classify", "--config", p]).unwrap();
        assert_eq!((c.tol, c.seed), (1e-6, 3));
        assert_eq!(c.inputs, vec![dir.path().join("s.json")]);
        let c = parse(&["qcliff", "classify", "--config", p, "--seed", "4", "--a-matrix", "a.json"]).unwrap();
        assert_eq!(c.seed, 4);
        assert_eq!(c.a_source, ASource::AFile("a.json".into()));
        std::fs::write(&path, r#"{"tolerance": 1}"#).unwrap();
        assert!(parse(&["qcliff", "classify", "--config", p]).is_err());
    }
}
