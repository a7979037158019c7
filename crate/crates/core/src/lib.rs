//! Bilateral counterparty valuation adjustments with first-to-default
//! closeout, compared against the simplified "UDVA minus UCVA" formula, under
//! a Gumbel bivariate exponential law for the two default times.
//!
//! Pricing code is generic over [`Scalar`] (`f32` or `f64`); the aliases below
//! fix it to `f64`, which is what the command line tool uses.

pub mod cli;
pub mod cva;
pub mod default_model;
pub mod error;
pub mod market;
pub mod mc;
pub mod quadrature;
pub mod scalar;
pub mod stats;

pub use cva::{
    zcb_report, BcvaReport, CreditParams, Direction, EquityForward, ExposureEstimator,
    ForwardValuation, Method, ReportErrors, ZcbReport, ZeroCouponBond,
};
pub use default_model::{GumbelBivariateExponential, JointSurvival, Order, Party};
pub use error::{Error, Result};
pub use market::{DiscountCurve, GbmEquity, Market};
pub use mc::{estimate, estimate_many, McConfig, McEstimate, PathRng, RandomSource};
pub use scalar::Scalar;

pub type Gumbel = GumbelBivariateExponential<f64>;
pub type Curve = DiscountCurve<f64>;
pub type Equity = GbmEquity<f64>;
pub type MarketF64 = Market<f64>;
pub type Credit = CreditParams<f64>;
pub type Forward = EquityForward<f64>;
pub type Bond = ZeroCouponBond<f64>;
pub type Valuation = ForwardValuation<f64>;
pub type Report = BcvaReport<f64>;
pub type Estimate = McEstimate<f64>;
