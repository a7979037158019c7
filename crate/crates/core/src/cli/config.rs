//! JSON run configuration.
//!
//! ```json
//! {
//!   "instrument": { "type": "forward", "s0": 1.0, "sigma": 0.4, "strike": 1.0, "maturity": 5.0 },
//!   "credit": { "lgd_a": 1.0, "lgd_b": 1.0 },
//!   "default_model": { "lambda_a": 0.1, "lambda_b": 0.05, "kendall_tau": 0.5 },
//!   "rate": 0.0,
//!   "method": { "type": "mc", "n_paths": 1000000, "seed": 42 },
//!   "sweep": { "type": "tau", "grid": [0.0, 0.5, 0.9] }
//! }
//! ```
//!
//! `credit`, `rate`, `method` and `sweep` are optional and default to zero
//! recoveries, a zero rate, the semi-analytic method and no sweep.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cva::{CreditParams, EquityForward, ExposureEstimator, Method, ZeroCouponBond};
use crate::default_model::GumbelBivariateExponential;
use crate::market::{DiscountCurve, GbmEquity, Market};
use crate::mc::{McConfig, DEFAULT_CHUNK_SIZE};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

fn field_error(field: &str, msg: impl std::fmt::Display) -> ConfigError {
    ConfigError(format!("{field}: {msg}"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstrumentConfig {
    Forward {
        s0: f64,
        sigma: f64,
        strike: f64,
        maturity: f64,
    },
    Zcb {
        maturity: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreditConfig {
    pub lgd_a: f64,
    pub lgd_b: f64,
}

impl Default for CreditConfig {
    fn default() -> Self {
        CreditConfig {
            lgd_a: 1.0,
            lgd_b: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefaultModelConfig {
    pub lambda_a: f64,
    pub lambda_b: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kendall_tau: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorConfig {
    #[default]
    Conditioned,
    PathLevel,
}

fn default_chunk_size() -> u64 {
    DEFAULT_CHUNK_SIZE
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MethodConfig {
    #[default]
    SemiAnalytic,
    Mc {
        n_paths: u64,
        seed: u64,
        #[serde(default = "default_chunk_size")]
        chunk_size: u64,
        #[serde(default)]
        antithetic: bool,
        #[serde(default)]
        estimator: EstimatorConfig,
    },
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SweepConfig {
    #[default]
    None,
    Tau {
        grid: Vec<f64>,
    },
    LambdaA {
        grid: Vec<f64>,
    },
}

impl SweepConfig {
    pub fn label(&self) -> Option<&'static str> {
        match self {
            SweepConfig::None => None,
            SweepConfig::Tau { .. } => Some("kendall_tau"),
            SweepConfig::LambdaA { .. } => Some("lambda_a"),
        }
    }

    pub fn grid(&self) -> &[f64] {
        match self {
            SweepConfig::None => &[],
            SweepConfig::Tau { grid } | SweepConfig::LambdaA { grid } => grid,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub instrument: InstrumentConfig,
    #[serde(default)]
    pub credit: CreditConfig,
    pub default_model: DefaultModelConfig,
    #[serde(default)]
    pub rate: f64,
    #[serde(default)]
    pub method: MethodConfig,
    #[serde(default)]
    pub sweep: SweepConfig,
}

/// The instrument with its market, ready to value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Instrument {
    Forward {
        forward: EquityForward<f64>,
        market: Market<f64>,
    },
    Zcb {
        bond: ZeroCouponBond<f64>,
        curve: DiscountCurve<f64>,
    },
}

impl RunConfig {
    /// Parse a JSON document. Syntax and schema errors carry serde's line
    /// and column.
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| ConfigError(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.instrument()?;
        self.credit()?;
        self.model()?;
        self.method()?;
        let grid = self.sweep.grid();
        if let Some(label) = self.sweep.label() {
            if grid.is_empty() {
                return Err(field_error("sweep.grid", "must not be empty"));
            }
            if grid.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(field_error("sweep.grid", "must be strictly increasing"));
            }
            for &x in grid {
                self.model_at(Some(x))
                    .map_err(|e| ConfigError(format!("sweep.grid: {label}={x}: {}", e.0)))?;
            }
        }
        Ok(())
    }

    pub fn instrument(&self) -> Result<Instrument, ConfigError> {
        let curve = DiscountCurve::new(self.rate).map_err(|e| field_error("rate", e))?;
        match self.instrument {
            InstrumentConfig::Forward {
                s0,
                sigma,
                strike,
                maturity,
            } => {
                let equity = GbmEquity::new(s0, sigma).map_err(|e| field_error("instrument", e))?;
                let forward =
                    EquityForward::new(strike, maturity).map_err(|e| field_error("instrument", e))?;
                Ok(Instrument::Forward {
                    forward,
                    market: Market::new(curve, equity),
                })
            }
            InstrumentConfig::Zcb { maturity } => Ok(Instrument::Zcb {
                bond: ZeroCouponBond::new(maturity).map_err(|e| field_error("instrument", e))?,
                curve,
            }),
        }
    }

    pub fn credit(&self) -> Result<CreditParams<f64>, ConfigError> {
        CreditParams::new(self.credit.lgd_a, self.credit.lgd_b).map_err(|e| field_error("credit", e))
    }

    pub fn model(&self) -> Result<GumbelBivariateExponential<f64>, ConfigError> {
        self.model_at(None)
    }

    /// Default model at one sweep point (`None` for the base configuration).
    pub fn model_at(&self, sweep_value: Option<f64>) -> Result<GumbelBivariateExponential<f64>, ConfigError> {
        let dm = &self.default_model;
        let mut lambda_a = dm.lambda_a;
        let mut dependence = match (dm.theta, dm.kendall_tau) {
            (Some(theta), None) => Dependence::Theta(theta),
            (None, Some(tau)) => Dependence::Tau(tau),
            _ => {
                return Err(field_error(
                    "default_model",
                    "exactly one of `theta` or `kendall_tau` must be given",
                ))
            }
        };
        match (&self.sweep, sweep_value) {
            (SweepConfig::Tau { .. }, Some(x)) => dependence = Dependence::Tau(x),
            (SweepConfig::LambdaA { .. }, Some(x)) => lambda_a = x,
            _ => {}
        }
        let model = match dependence {
            Dependence::Theta(theta) => GumbelBivariateExponential::new(lambda_a, dm.lambda_b, theta),
            Dependence::Tau(tau) => GumbelBivariateExponential::with_kendall_tau(lambda_a, dm.lambda_b, tau),
        };
        model.map_err(|e| field_error("default_model", e))
    }

    pub fn method(&self) -> Result<Method, ConfigError> {
        match self.method {
            MethodConfig::SemiAnalytic => Ok(Method::SemiAnalytic),
            MethodConfig::Mc {
                n_paths,
                seed,
                chunk_size,
                antithetic,
                estimator,
            } => {
                let config = McConfig::new(n_paths, seed)
                    .with_chunk_size(chunk_size)
                    .with_antithetic(antithetic);
                config.validate().map_err(|e| field_error("method", e))?;
                let estimator = match estimator {
                    EstimatorConfig::Conditioned => ExposureEstimator::Conditioned,
                    EstimatorConfig::PathLevel => ExposureEstimator::PathLevel,
                };
                Ok(Method::MonteCarlo { config, estimator })
            }
        }
    }
}

enum Dependence {
    Theta(f64),
    Tau(f64),
}
