//! Evaluate a configuration into CSV rows.

use std::io::{self, Write};

use thiserror::Error;

use super::config::{ConfigError, Instrument, RunConfig};
use crate::cva::{zcb_report, BcvaReport, ForwardValuation, Method};
use crate::error::Error;

pub const CSV_HEADER: &str = "sweep_value,risk_free_value,ucva_a,udva_a,bilateral_cva,bilateral_dva,full_price,simplified_price,difference,difference_stderr,method,n_paths,seed";

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Numerical(Error),
    #[error("io: {0}")]
    Io(#[from] io::Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        if e.is_numerical_failure() {
            RunError::Numerical(e)
        } else {
            RunError::Config(ConfigError(e.to_string()))
        }
    }
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Numerical(_) => 3,
            RunError::Io(_) => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub sweep_value: Option<f64>,
    pub report: BcvaReport<f64>,
    pub method: &'static str,
    pub n_paths: Option<u64>,
    pub seed: Option<u64>,
}

/// Value the configuration at one sweep point (`None` for the base point).
pub fn evaluate(cfg: &RunConfig, sweep_value: Option<f64>) -> Result<Row, RunError> {
    let model = cfg.model_at(sweep_value)?;
    let credit = cfg.credit()?;
    let method = cfg.method()?;
    let (report, method_name, n_paths, seed) = match cfg.instrument()? {
        Instrument::Forward { forward, market } => {
            let valuation = ForwardValuation::new(forward, credit, model, market);
            let report = valuation.report(method)?;
            match method {
                Method::SemiAnalytic => (report, "semi_analytic", None, None),
                Method::MonteCarlo { config, .. } => {
                    (report, "mc", Some(config.n_paths), Some(config.seed))
                }
            }
        }
        Instrument::Zcb { bond, curve } => {
            let z = zcb_report(&bond, &credit, &model, &curve)?;
            (z.report, "analytic", None, None)
        }
    };
    Ok(Row {
        sweep_value,
        report,
        method: method_name,
        n_paths,
        seed,
    })
}

pub fn run_rows(cfg: &RunConfig) -> Result<Vec<Row>, RunError> {
    if cfg.sweep.label().is_none() {
        return Ok(vec![evaluate(cfg, None)?]);
    }
    cfg.sweep
        .grid()
        .iter()
        .map(|&x| evaluate(cfg, Some(x)))
        .collect()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Write the fixed header and one line per row. Floats use Rust's shortest
/// round-trip representation, so identical results give identical bytes.
pub fn write_csv<W: Write>(rows: &[Row], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        let r = &row.report;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            opt(row.sweep_value),
            r.risk_free_value,
            r.ucva_a,
            r.udva_a,
            r.bilateral_cva,
            r.bilateral_dva,
            r.full_price,
            r.simplified_price,
            r.difference,
            r.std_errors.difference,
            row.method,
            opt(row.n_paths),
            opt(row.seed),
        )?;
    }
    Ok(())
}
