//! Unilateral, first-to-default bilateral and simplified bilateral valuation
//! adjustments for an equity forward and a zero-coupon bond.
//!
//! Conventions: recoveries enter through loss-given-default, the default-free
//! value of the forward at `t` is `V0(t) = S_t - P(t,T) K` (negated for a short
//! position), maturity comparisons are `τ <= T` and first-to-default
//! comparisons between the two parties are strict. Ties have probability zero
//! under the default model.
//!
//! The simplified bilateral price `V0 + UDVA - UCVA` is the same number
//! whether closeout is risk free or by substitution, so one operation serves
//! both conventions.

use crate::default_model::{GumbelBivariateExponential, Order, Party};
use crate::error::{invalid, Result};
use crate::market::{DiscountCurve, Market};
use crate::mc::{estimate_many, McConfig, McEstimate, PathRng, RandomSource};
use crate::quadrature::{integrate, Tolerance};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CreditParams<T> {
    lgd_a: T,
    lgd_b: T,
}

impl<T: Scalar> CreditParams<T> {
    pub fn new(lgd_a: T, lgd_b: T) -> Result<Self> {
        for (name, l) in [("lgd_a", lgd_a), ("lgd_b", lgd_b)] {
            if !(l >= T::zero() && l <= T::one()) {
                return invalid(format!("{name} must lie in [0, 1], got {l}"));
            }
        }
        Ok(CreditParams { lgd_a, lgd_b })
    }

    /// Zero recoveries for both parties.
    pub fn full_loss() -> Self {
        CreditParams {
            lgd_a: T::one(),
            lgd_b: T::one(),
        }
    }

    pub fn lgd(&self, party: Party) -> T {
        match party {
            Party::A => self.lgd_a,
            Party::B => self.lgd_b,
        }
    }

    pub fn swapped(&self) -> Self {
        CreditParams {
            lgd_a: self.lgd_b,
            lgd_b: self.lgd_a,
        }
    }
}

impl<T: Scalar> Default for CreditParams<T> {
    fn default() -> Self {
        Self::full_loss()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Receives `S_T - K`.
    Long,
    /// Receives `K - S_T`.
    Short,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquityForward<T> {
    strike: T,
    maturity: T,
    direction: Direction,
}

impl<T: Scalar> EquityForward<T> {
    /// Long forward as seen by party A.
    pub fn new(strike: T, maturity: T) -> Result<Self> {
        if !(strike >= T::zero() && strike.is_finite()) {
            return invalid(format!("strike must be non-negative, got {strike}"));
        }
        if !(maturity > T::zero() && maturity.is_finite()) {
            return invalid(format!("maturity must be positive, got {maturity}"));
        }
        Ok(EquityForward {
            strike,
            maturity,
            direction: Direction::Long,
        })
    }

    pub fn with_direction(mut self, direction: Direction) -> Self {
        self.direction = direction;
        self
    }

    /// The counterparty's side of the same contract.
    pub fn opposite(&self) -> Self {
        let direction = match self.direction {
            Direction::Long => Direction::Short,
            Direction::Short => Direction::Long,
        };
        self.with_direction(direction)
    }

    pub fn strike(&self) -> T {
        self.strike
    }

    pub fn maturity(&self) -> T {
        self.maturity
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }
}

/// Unit-notional zero-coupon bond held by A, issued by B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroCouponBond<T> {
    maturity: T,
}

impl<T: Scalar> ZeroCouponBond<T> {
    pub fn new(maturity: T) -> Result<Self> {
        if !(maturity > T::zero() && maturity.is_finite()) {
            return invalid(format!("maturity must be positive, got {maturity}"));
        }
        Ok(ZeroCouponBond { maturity })
    }

    pub fn maturity(&self) -> T {
        self.maturity
    }
}

/// How the exposure at a default time enters a Monte Carlo path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExposureEstimator {
    /// Replace the simulated exposure by its closed-form expectation given the
    /// default time. Valid because the equity is independent of the defaults.
    #[default]
    Conditioned,
    /// Simulate the equity at the default times and use the realised exposure.
    PathLevel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// One-dimensional quadrature against closed-form option values.
    SemiAnalytic,
    MonteCarlo {
        config: McConfig,
        estimator: ExposureEstimator,
    },
}

impl Method {
    pub fn mc(config: McConfig) -> Self {
        Method::MonteCarlo {
            config,
            estimator: ExposureEstimator::Conditioned,
        }
    }
}

/// Standard errors of the Monte Carlo fields of a [`BcvaReport`]. All zero for
/// analytic and semi-analytic reports.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReportErrors<T> {
    pub ucva_a: T,
    pub udva_a: T,
    pub bilateral_cva: T,
    pub bilateral_dva: T,
    pub full_price: T,
    pub simplified_price: T,
    pub difference: T,
}

/// Every adjustment figure of one valuation, seen from party A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcvaReport<T> {
    pub risk_free_value: T,
    pub ucva_a: T,
    /// Equals the unilateral CVA computed by B.
    pub udva_a: T,
    pub bilateral_cva: T,
    pub bilateral_dva: T,
    /// First-to-default price with risk-free closeout.
    pub full_price: T,
    pub simplified_price: T,
    /// `full_price - simplified_price`.
    pub difference: T,
    pub std_errors: ReportErrors<T>,
}

// Per-path sample layout.
const UCVA: usize = 0;
const UDVA: usize = 1;
const BCVA: usize = 2;
const BDVA: usize = 3;
const FULL_ADJ: usize = 4;
const SIMPLIFIED_ADJ: usize = 5;
const DIFFERENCE: usize = 6;
const N_OUT: usize = 7;

/// An equity forward between A and B with everything needed to value it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForwardValuation<T> {
    pub forward: EquityForward<T>,
    pub credit: CreditParams<T>,
    pub model: GumbelBivariateExponential<T>,
    pub market: Market<T>,
}

impl<T: Scalar> ForwardValuation<T> {
    pub fn new(
        forward: EquityForward<T>,
        credit: CreditParams<T>,
        model: GumbelBivariateExponential<T>,
        market: Market<T>,
    ) -> Self {
        ForwardValuation {
            forward,
            credit,
            model,
            market,
        }
    }

    /// The same deal valued by B: opposite position, parties swapped.
    pub fn mirrored(&self) -> Self {
        ForwardValuation {
            forward: self.forward.opposite(),
            credit: self.credit.swapped(),
            model: self.model.swapped(),
            market: self.market,
        }
    }

    fn sign(&self) -> T {
        match self.forward.direction {
            Direction::Long => T::one(),
            Direction::Short => -T::one(),
        }
    }

    fn curve(&self) -> &DiscountCurve<T> {
        &self.market.curve
    }

    /// `V0(0) = ±(S0 - P(0,T) K)`, never simulated.
    pub fn risk_free_value(&self) -> T {
        let p = self.curve().df_unchecked(T::zero(), self.forward.maturity);
        self.sign() * (self.market.equity.s0() - p * self.forward.strike)
    }

    // Forward strike seen at t: P(t,T) K.
    fn strike_at(&self, t: T) -> T {
        self.curve().df_unchecked(t, self.forward.maturity) * self.forward.strike
    }

    /// `E[(V0(t))^+]`, undiscounted.
    pub fn positive_exposure(&self, t: T) -> T {
        let k = self.strike_at(t);
        match self.forward.direction {
            Direction::Long => self.market.call_unchecked(t, k),
            Direction::Short => self.market.put_unchecked(t, k),
        }
    }

    /// `E[(-V0(t))^+]`, undiscounted.
    pub fn negative_exposure(&self, t: T) -> T {
        let k = self.strike_at(t);
        match self.forward.direction {
            Direction::Long => self.market.put_unchecked(t, k),
            Direction::Short => self.market.call_unchecked(t, k),
        }
    }

    fn exposure(&self, t: T, sign: ExposureSign) -> T {
        match sign {
            ExposureSign::Positive => self.positive_exposure(t),
            ExposureSign::Negative => self.negative_exposure(t),
        }
    }

    fn marginal_density(&self, party: Party, t: T) -> T {
        let l = self.model.lambda(party);
        l * (-l * t).exp()
    }

    // lgd · ∫_0^T density(t) D(0,t) exposure(t) dt
    fn integrate_adjustment<F>(&self, lgd: T, density: F, sign: ExposureSign) -> Result<T>
    where
        F: Fn(T) -> Result<T>,
    {
        let r = integrate(
            |t| match density(t) {
                Ok(d) => d * self.curve().df_unchecked(T::zero(), t) * self.exposure(t, sign),
                Err(_) => T::nan(),
            },
            T::zero(),
            self.forward.maturity,
            Tolerance::for_scalar::<T>(),
        )?;
        Ok(lgd * r.value)
    }

    // Unilateral adjustment against `defaulter`'s default: CVA when B
    // defaults (positive exposure), DVA when A defaults (negative exposure).
    fn unilateral_semi_analytic(&self, defaulter: Party) -> Result<T> {
        let sign = ExposureSign::lost_on_default_of(defaulter);
        self.integrate_adjustment(
            self.credit.lgd(defaulter),
            |t| Ok(self.marginal_density(defaulter, t)),
            sign,
        )
    }

    fn bilateral_semi_analytic(&self, defaulter: Party) -> Result<T> {
        let sign = ExposureSign::lost_on_default_of(defaulter);
        self.integrate_adjustment(
            self.credit.lgd(defaulter),
            |t| self.model.first_to_default_density(t, defaulter),
            sign,
        )
    }

    // Adjustment from `defaulter` defaulting second, before maturity: A1 for
    // B, A2 for A. Density of {τ_other < t, τ_defaulter ∈ dt} is
    // f_defaulter(t) + ∂G/∂x_defaulter(t,t).
    fn second_to_default_semi_analytic(&self, defaulter: Party) -> Result<T> {
        let sign = ExposureSign::lost_on_default_of(defaulter);
        self.integrate_adjustment(
            self.credit.lgd(defaulter),
            |t| {
                Ok(self.marginal_density(defaulter, t)
                    - self.model.first_to_default_density(t, defaulter)?)
            },
            sign,
        )
    }

    fn simulate(&self, config: &McConfig, estimator: ExposureEstimator) -> Result<[McEstimate<T>; N_OUT]> {
        let maturity = self.forward.maturity;
        let lgd_a = self.credit.lgd(Party::A);
        let lgd_b = self.credit.lgd(Party::B);
        let zero = T::zero();
        let df = |t: T| self.curve().df_unchecked(zero, t);

        estimate_many(config, |rng: &mut PathRng| {
            let (ta, tb) = self.model.sample_pair(rng);
            let (pos_b, neg_a) = match estimator {
                ExposureEstimator::Conditioned => (
                    if tb <= maturity { self.positive_exposure(tb) } else { zero },
                    if ta <= maturity { self.negative_exposure(ta) } else { zero },
                ),
                ExposureEstimator::PathLevel => self.realised_exposures(rng, ta, tb),
            };
            let ucva = if tb <= maturity { lgd_b * df(tb) * pos_b } else { zero };
            let udva = if ta <= maturity { lgd_a * df(ta) * neg_a } else { zero };
            let bcva = if tb < ta { ucva } else { zero };
            let bdva = if ta < tb { udva } else { zero };
            let mut out = [zero; N_OUT];
            out[UCVA] = ucva;
            out[UDVA] = udva;
            out[BCVA] = bcva;
            out[BDVA] = bdva;
            out[FULL_ADJ] = bdva - bcva;
            out[SIMPLIFIED_ADJ] = udva - ucva;
            out[DIFFERENCE] = (ucva - bcva) - (udva - bdva);
            out
        })
    }

    // (V0(τB))^+ and (-V0(τA))^+ along one simulated equity path. Always
    // consumes two normals so the stream layout does not depend on the times.
    fn realised_exposures(&self, rng: &mut PathRng, ta: T, tb: T) -> (T, T) {
        let z1 = T::lit(rng.standard_normal());
        let z2 = T::lit(rng.standard_normal());
        let (t1, t2) = if ta <= tb { (ta, tb) } else { (tb, ta) };
        let maturity = self.forward.maturity;
        if t1 > maturity {
            return (T::zero(), T::zero());
        }
        let s1 = self.market.gbm_terminal(t1, z1);
        let s2 = if t2 <= maturity {
            self.market.gbm_step(s1, t2 - t1, z2)
        } else {
            T::zero()
        };
        let (sa, sb) = if ta <= tb { (s1, s2) } else { (s2, s1) };
        let value = |t: T, s: T| self.sign() * (s - self.strike_at(t));
        let pos_b = if tb <= maturity { value(tb, sb).max(T::zero()) } else { T::zero() };
        let neg_a = if ta <= maturity { (-value(ta, sa)).max(T::zero()) } else { T::zero() };
        (pos_b, neg_a)
    }

    /// Unilateral CVA of A: loss from B's default on positive exposure.
    /// Depends on B's marginal law only.
    pub fn ucva(&self, method: Method) -> Result<McEstimate<T>> {
        match method {
            Method::SemiAnalytic => Ok(McEstimate::exact(self.unilateral_semi_analytic(Party::B)?)),
            Method::MonteCarlo { config, estimator } => Ok(self.simulate(&config, estimator)?[UCVA]),
        }
    }

    /// Unilateral DVA of A: gain from A's own default on negative exposure.
    pub fn udva(&self, method: Method) -> Result<McEstimate<T>> {
        match method {
            Method::SemiAnalytic => Ok(McEstimate::exact(self.unilateral_semi_analytic(Party::A)?)),
            Method::MonteCarlo { config, estimator } => Ok(self.simulate(&config, estimator)?[UDVA]),
        }
    }

    /// `V0 + UDVA - UCVA`: no first-to-default check, so θ never enters.
    pub fn simplified_price(&self, method: Method) -> Result<McEstimate<T>> {
        match method {
            Method::SemiAnalytic => {
                let udva = self.unilateral_semi_analytic(Party::A)?;
                let ucva = self.unilateral_semi_analytic(Party::B)?;
                Ok(McEstimate::exact(self.risk_free_value() + udva - ucva))
            }
            Method::MonteCarlo { config, estimator } => {
                let e = self.simulate(&config, estimator)?[SIMPLIFIED_ADJ];
                Ok(McEstimate {
                    mean: self.risk_free_value() + e.mean,
                    ..e
                })
            }
        }
    }

    /// `D = A1 - A2`, the full bilateral price minus the simplified price,
    /// estimated directly from second-to-default events.
    pub fn difference(&self, method: Method) -> Result<McEstimate<T>> {
        match method {
            Method::SemiAnalytic => {
                let a1 = self.second_to_default_semi_analytic(Party::B)?;
                let a2 = self.second_to_default_semi_analytic(Party::A)?;
                Ok(McEstimate::exact(a1 - a2))
            }
            Method::MonteCarlo { config, estimator } => Ok(self.simulate(&config, estimator)?[DIFFERENCE]),
        }
    }

    /// Full first-to-default valuation with risk-free closeout, alongside the
    /// unilateral figures and the simplified price.
    pub fn report(&self, method: Method) -> Result<BcvaReport<T>> {
        let v0 = self.risk_free_value();
        match method {
            Method::SemiAnalytic => {
                let ucva = self.unilateral_semi_analytic(Party::B)?;
                let udva = self.unilateral_semi_analytic(Party::A)?;
                let bcva = self.bilateral_semi_analytic(Party::B)?;
                let bdva = self.bilateral_semi_analytic(Party::A)?;
                let difference = self.difference(Method::SemiAnalytic)?.mean;
                Ok(BcvaReport {
                    risk_free_value: v0,
                    ucva_a: ucva,
                    udva_a: udva,
                    bilateral_cva: bcva,
                    bilateral_dva: bdva,
                    full_price: v0 + bdva - bcva,
                    simplified_price: v0 + udva - ucva,
                    difference,
                    std_errors: ReportErrors::default(),
                })
            }
            Method::MonteCarlo { config, estimator } => {
                let e = self.simulate(&config, estimator)?;
                Ok(BcvaReport {
                    risk_free_value: v0,
                    ucva_a: e[UCVA].mean,
                    udva_a: e[UDVA].mean,
                    bilateral_cva: e[BCVA].mean,
                    bilateral_dva: e[BDVA].mean,
                    full_price: v0 + e[FULL_ADJ].mean,
                    simplified_price: v0 + e[SIMPLIFIED_ADJ].mean,
                    difference: e[DIFFERENCE].mean,
                    std_errors: ReportErrors {
                        ucva_a: e[UCVA].std_error,
                        udva_a: e[UDVA].std_error,
                        bilateral_cva: e[BCVA].std_error,
                        bilateral_dva: e[BDVA].std_error,
                        full_price: e[FULL_ADJ].std_error,
                        simplified_price: e[SIMPLIFIED_ADJ].std_error,
                        difference: e[DIFFERENCE].std_error,
                    },
                })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ExposureSign {
    Positive,
    Negative,
}

impl ExposureSign {
    // A loses the positive part when B defaults; A's own default gains the
    // negative part.
    fn lost_on_default_of(party: Party) -> Self {
        match party {
            Party::B => ExposureSign::Positive,
            Party::A => ExposureSign::Negative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZcbReport<T> {
    pub report: BcvaReport<T>,
    /// Full bilateral price under substitution closeout; coincides with the
    /// simplified price because the bond's exposure is one-directional.
    pub substitution_closeout_price: T,
}

/// Analytic report for a bond held by A: only B's default matters for the
/// exposure, so every DVA term vanishes.
pub fn zcb_report<T: Scalar>(
    bond: &ZeroCouponBond<T>,
    credit: &CreditParams<T>,
    model: &GumbelBivariateExponential<T>,
    curve: &DiscountCurve<T>,
) -> Result<ZcbReport<T>> {
    let maturity = bond.maturity;
    let p = curve.discount_factor(T::zero(), maturity)?;
    let lgd_b = credit.lgd(Party::B);
    let q_b = model.prob_default_before(maturity, Party::B)?;
    let q_b_first = model.prob_order_before(maturity, Order::BFirst)?;
    let q_b_second = model.prob_both_before(maturity, Order::AFirst)?;

    let ucva = lgd_b * p * q_b;
    let bcva = lgd_b * p * q_b_first;
    let report = BcvaReport {
        risk_free_value: p,
        ucva_a: ucva,
        udva_a: T::zero(),
        bilateral_cva: bcva,
        bilateral_dva: T::zero(),
        full_price: p - bcva,
        simplified_price: p - ucva,
        difference: lgd_b * p * q_b_second,
        std_errors: ReportErrors::default(),
    };
    Ok(ZcbReport {
        report,
        substitution_closeout_price: p * (T::one() - lgd_b * q_b),
    })
}
