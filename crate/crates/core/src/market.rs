//! Deterministic discounting and lognormal equity.

use crate::error::{invalid, Result};
use crate::scalar::{normal_cdf, Scalar};

/// Flat continuously-compounded short rate. With deterministic rates the
/// stochastic discount factor and the bond price coincide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscountCurve<T> {
    short_rate: T,
}

impl<T: Scalar> DiscountCurve<T> {
    pub fn new(short_rate: T) -> Result<Self> {
        if !short_rate.is_finite() {
            return invalid(format!("short rate must be finite, got {short_rate}"));
        }
        Ok(DiscountCurve { short_rate })
    }

    pub fn zero() -> Self {
        DiscountCurve {
            short_rate: T::zero(),
        }
    }

    pub fn short_rate(&self) -> T {
        self.short_rate
    }

    /// `exp(-r (to - from))` for `0 <= from <= to`.
    pub fn discount_factor(&self, from: T, to: T) -> Result<T> {
        if !(from >= T::zero() && to >= from) {
            return invalid(format!(
                "discount factor needs 0 <= t <= T, got t={from}, T={to}"
            ));
        }
        Ok(self.df_unchecked(from, to))
    }

    #[inline]
    pub(crate) fn df_unchecked(&self, from: T, to: T) -> T {
        (-self.short_rate * (to - from)).exp()
    }
}

impl<T: Scalar> Default for DiscountCurve<T> {
    fn default() -> Self {
        Self::zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GbmEquity<T> {
    s0: T,
    sigma: T,
}

impl<T: Scalar> GbmEquity<T> {
    pub fn new(s0: T, sigma: T) -> Result<Self> {
        if !(s0 > T::zero() && s0.is_finite()) {
            return invalid(format!("s0 must be positive, got {s0}"));
        }
        if !(sigma > T::zero() && sigma.is_finite()) {
            return invalid(format!("sigma must be positive, got {sigma}"));
        }
        Ok(GbmEquity { s0, sigma })
    }

    pub fn s0(&self) -> T {
        self.s0
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }
}

/// Curve plus equity: everything needed to value the default-free forward
/// and its option-like exposures at a future date.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Market<T> {
    pub curve: DiscountCurve<T>,
    pub equity: GbmEquity<T>,
}

impl<T: Scalar> Market<T> {
    pub fn new(curve: DiscountCurve<T>, equity: GbmEquity<T>) -> Self {
        Market { curve, equity }
    }

    pub fn discount_factor(&self, from: T, to: T) -> Result<T> {
        self.curve.discount_factor(from, to)
    }

    /// Risk-neutral `S_t` given a standard normal draw `z`.
    pub fn gbm_terminal(&self, t: T, z: T) -> T {
        let sigma = self.equity.sigma;
        let drift = (self.curve.short_rate - T::lit(0.5) * sigma * sigma) * t;
        self.equity.s0 * (drift + sigma * t.sqrt() * z).exp()
    }

    /// Advance a price `s` by `dt` with a standard normal draw `z`.
    pub(crate) fn gbm_step(&self, s: T, dt: T, z: T) -> T {
        let sigma = self.equity.sigma;
        let drift = (self.curve.short_rate - T::lit(0.5) * sigma * sigma) * dt;
        s * (drift + sigma * dt.sqrt() * z).exp()
    }

    /// `E[S_t]` under the risk-neutral measure.
    pub fn forward_price(&self, t: T) -> T {
        self.equity.s0 * (self.curve.short_rate * t).exp()
    }

    /// Undiscounted `E[(S_t - K)^+]`.
    pub fn black_call(&self, t: T, strike: T) -> Result<T> {
        check_option_args(t, strike)?;
        Ok(self.call_unchecked(t, strike))
    }

    /// Undiscounted `E[(K - S_t)^+]`.
    pub fn black_put(&self, t: T, strike: T) -> Result<T> {
        check_option_args(t, strike)?;
        Ok(self.put_unchecked(t, strike))
    }

    pub(crate) fn call_unchecked(&self, t: T, strike: T) -> T {
        let fwd = self.forward_price(t);
        if t == T::zero() {
            return (self.equity.s0 - strike).max(T::zero());
        }
        if strike == T::zero() {
            return fwd;
        }
        let (d1, d2) = self.d1_d2(fwd, t, strike);
        fwd * normal_cdf(d1) - strike * normal_cdf(d2)
    }

    pub(crate) fn put_unchecked(&self, t: T, strike: T) -> T {
        if t == T::zero() {
            return (strike - self.equity.s0).max(T::zero());
        }
        if strike == T::zero() {
            return T::zero();
        }
        let fwd = self.forward_price(t);
        let (d1, d2) = self.d1_d2(fwd, t, strike);
        strike * normal_cdf(-d2) - fwd * normal_cdf(-d1)
    }

    fn d1_d2(&self, fwd: T, t: T, strike: T) -> (T, T) {
        let vol = self.equity.sigma * t.sqrt();
        let d1 = ((fwd / strike).ln() + T::lit(0.5) * vol * vol) / vol;
        (d1, d1 - vol)
    }

    /// Default-free value at `t` of a long forward struck at `strike` maturing
    /// at `maturity`, given the spot `s_t`.
    pub fn forward_npv(&self, t: T, s_t: T, strike: T, maturity: T) -> Result<T> {
        let p = self.curve.discount_factor(t, maturity)?;
        Ok(s_t - p * strike)
    }
}

fn check_option_args<T: Scalar>(t: T, strike: T) -> Result<()> {
    if !(t >= T::zero() && t.is_finite()) {
        return invalid(format!("option time must be non-negative, got {t}"));
    }
    if !(strike >= T::zero() && strike.is_finite()) {
        return invalid(format!("strike must be non-negative, got {strike}"));
    }
    Ok(())
}
