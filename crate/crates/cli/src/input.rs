use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use corrprop::{ContingencyTable, DirichletHyper};
use serde::de::DeserializeOwned;

use crate::CliError;

pub const THREADS_VAR: &str = "CORRPROP_THREADS";

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub n00: Option<u64>,
    #[arg(long)]
    pub n01: Option<u64>,
    #[arg(long)]
    pub n10: Option<u64>,
    #[arg(long)]
    pub n11: Option<u64>,
    /// JSON file holding {"n00": .., "n01": .., "n10": .., "n11": ..}
    #[arg(long, value_name = "FILE", conflicts_with_all = ["n00", "n01", "n10", "n11"])]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HyperArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub a00: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub a01: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub a10: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub a11: f64,
    /// JSON file with any of a00, a01, a10, a11 (missing entries default to 1)
    #[arg(long, value_name = "FILE", conflicts_with_all = ["a00", "a01", "a10", "a11"])]
    pub hyper: Option<PathBuf>,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        if e.is_data() {
            CliError::Invalid(format!("{}: {e}", path.display()))
        } else {
            CliError::Usage(format!("{} is not valid JSON: {e}", path.display()))
        }
    })
}

impl TableArgs {
    pub fn load(&self) -> Result<ContingencyTable, CliError> {
        if let Some(path) = &self.table {
            return read_json(path);
        }
        match (self.n00, self.n01, self.n10, self.n11) {
            (Some(n00), Some(n01), Some(n10), Some(n11)) => Ok(ContingencyTable::new(n00, n01, n10, n11)?),
            _ => Err(CliError::Usage("give all of --n00 --n01 --n10 --n11, or --table FILE".into())),
        }
    }
}

impl HyperArgs {
    pub fn load(&self) -> Result<DirichletHyper, CliError> {
        match &self.hyper {
            Some(path) => read_json(path),
            None => Ok(DirichletHyper::new(self.a00, self.a01, self.a10, self.a11)?),
        }
    }
}

/// Sizes the global worker pool from the environment; unset means automatic.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = match raw.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => return Err(CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got {raw:?}"))),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} worker threads: {e}")))
}
