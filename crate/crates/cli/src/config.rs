use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Deserialize;

use jgeom::{Error, Result, Tolerances};

pub const DEFAULT_CONFIG: &str = "jgconfig.json";
pub const DEFAULT_SAMPLES: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub sample_count: usize,
    pub output_format: OutputFormat,
}

/// Contents of `jgconfig.json`; every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    tolerances: Option<Tolerances>,
    samples: Option<usize>,
    format: Option<OutputFormat>,
}

#[derive(Debug, Default)]
pub struct Overrides {
    pub config: Option<PathBuf>,
    pub tol_cluster: Option<f64>,
    pub tol_invert: Option<f64>,
    pub format: Option<OutputFormat>,
    pub samples: Option<usize>,
}

impl RunConfig {
    /// Defaults, then the config file, then command-line flags.
    pub fn resolve(o: &Overrides) -> Result<RunConfig> {
        let file = match &o.config {
            Some(path) => load(path)?,
            None if Path::new(DEFAULT_CONFIG).exists() => load(Path::new(DEFAULT_CONFIG))?,
            None => ConfigFile::default(),
        };
        let mut tolerances = file.tolerances.unwrap_or_default();
        if let Some(v) = o.tol_cluster {
            tolerances.tol_cluster = v;
        }
        if let Some(v) = o.tol_invert {
            tolerances.tol_invert = v;
        }
        tolerances.validate()?;
        let sample_count = o.samples.or(file.samples).unwrap_or(DEFAULT_SAMPLES);
        if sample_count < 2 {
            return Err(Error::ParseError(format!("sample count must be at least 2, got {sample_count}")));
        }
        let output_format = o.format.or(file.format).unwrap_or(OutputFormat::Json);
        Ok(RunConfig { tolerances, sample_count, output_format })
    }
}

fn load(path: &Path) -> Result<ConfigFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))
}
