//! Joint law of the two default times.
//!
//! The law is the bivariate exponential with joint survival function
//!
//! ```text
//! G(x1, x2) = Q(τA > x1, τB > x2) = exp(-((λA x1)^θ + (λB x2)^θ)^(1/θ)),   θ >= 1.
//! ```
//!
//! Marginals are exponential with rates λA and λB, θ controls dependence only
//! (Kendall's tau is `1 - 1/θ`), and there is no singular component, so the
//! two parties never default at the same instant.

use crate::error::{invalid, Result};
use crate::mc::RandomSource;
use crate::quadrature::{integrate, Tolerance};
use crate::scalar::Scalar;

/// θ above this value is treated as the comonotone limit.
pub const THETA_CAP: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Party {
    A,
    B,
}

impl Party {
    pub fn other(self) -> Party {
        match self {
            Party::A => Party::B,
            Party::B => Party::A,
        }
    }
}

/// Which party defaults first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    AFirst,
    BFirst,
}

impl Order {
    pub fn first(self) -> Party {
        match self {
            Order::AFirst => Party::A,
            Order::BFirst => Party::B,
        }
    }

    pub fn second(self) -> Party {
        self.first().other()
    }

    pub fn reversed(self) -> Order {
        match self {
            Order::AFirst => Order::BFirst,
            Order::BFirst => Order::AFirst,
        }
    }
}

/// A bivariate survival function with first partial derivatives.
pub trait JointSurvival<T> {
    fn joint_survival(&self, x1: T, x2: T) -> Result<T>;
    fn survival_partial_x1(&self, x1: T, x2: T) -> Result<T>;
    fn survival_partial_x2(&self, x1: T, x2: T) -> Result<T>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GumbelBivariateExponential<T> {
    lambda_a: T,
    lambda_b: T,
    theta: T,
}

impl<T: Scalar> GumbelBivariateExponential<T> {
    pub fn new(lambda_a: T, lambda_b: T, theta: T) -> Result<Self> {
        for (name, l) in [("lambda_a", lambda_a), ("lambda_b", lambda_b)] {
            if !(l > T::zero() && l.is_finite()) {
                return invalid(format!("{name} must be positive and finite, got {l}"));
            }
        }
        if !(theta >= T::one()) {
            return invalid(format!("theta must be >= 1, got {theta}"));
        }
        Ok(GumbelBivariateExponential {
            lambda_a,
            lambda_b,
            theta,
        })
    }

    pub fn with_kendall_tau(lambda_a: T, lambda_b: T, tau: T) -> Result<Self> {
        Self::new(lambda_a, lambda_b, Self::from_kendall_tau(tau)?)
    }

    /// θ = 1/(1 - τ). Only non-negative dependence below the comonotone
    /// limit is representable.
    pub fn from_kendall_tau(tau: T) -> Result<T> {
        if !(tau >= T::zero()) {
            return invalid(format!("Kendall's tau must be >= 0, got {tau}"));
        }
        if !(tau < T::one()) {
            return invalid(format!("Kendall's tau must be < 1, got {tau}"));
        }
        Ok(T::one() / (T::one() - tau))
    }

    pub fn kendall_tau(&self) -> T {
        T::one() - T::one() / self.theta
    }

    pub fn lambda(&self, party: Party) -> T {
        match party {
            Party::A => self.lambda_a,
            Party::B => self.lambda_b,
        }
    }

    pub fn lambda_a(&self) -> T {
        self.lambda_a
    }

    pub fn lambda_b(&self) -> T {
        self.lambda_b
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn is_comonotone(&self) -> bool {
        self.theta > T::lit(THETA_CAP)
    }

    /// Same dependence with the parties' roles exchanged.
    pub fn swapped(&self) -> Self {
        GumbelBivariateExponential {
            lambda_a: self.lambda_b,
            lambda_b: self.lambda_a,
            theta: self.theta,
        }
    }

    /// `(a1^θ + a2^θ)^(1/θ)` for non-negative `a1, a2`, scaled by the larger
    /// argument so that large θ neither overflows nor underflows.
    fn radial(&self, a1: T, a2: T) -> T {
        if self.theta == T::one() {
            return a1 + a2;
        }
        let (hi, lo) = if a1 >= a2 { (a1, a2) } else { (a2, a1) };
        if hi == T::zero() || self.is_comonotone() {
            return hi;
        }
        let tail = if lo == T::zero() {
            T::zero()
        } else {
            (self.theta * (lo / hi).ln()).exp()
        };
        hi * (tail.ln_1p() / self.theta).exp()
    }

    // ∂G/∂x at (x_own, x_other) with respect to the coordinate of the party
    // whose intensity is `l_own`.
    fn partial(&self, l_own: T, l_other: T, x_own: T, x_other: T) -> Result<T> {
        if !(x_own >= T::zero() && x_other >= T::zero()) {
            return invalid(format!(
                "survival arguments must be non-negative, got ({x_own}, {x_other})"
            ));
        }
        let a_own = l_own * x_own;
        let a_other = l_other * x_other;
        let s = self.radial(a_own, a_other);
        let g = (-s).exp();
        let factor = if s == T::zero() || self.theta == T::one() {
            // At the origin G(0, y) = exp(-λ y) fixes the limit along the axis.
            T::one()
        } else if a_own == T::zero() {
            T::zero()
        } else if self.is_comonotone() {
            if a_own > a_other {
                T::one()
            } else if a_own < a_other {
                T::zero()
            } else {
                T::lit(0.5)
            }
        } else {
            ((self.theta - T::one()) * (a_own / s).ln()).exp()
        };
        Ok(-g * l_own * factor)
    }

    /// Rate of the exponential first-to-default time `min(τA, τB)`.
    pub fn first_to_default_rate(&self) -> T {
        self.radial(self.lambda_a, self.lambda_b)
    }

    /// `-∂G/∂x_first(t, t)`: density of the first default happening at `t`
    /// and being the given party's.
    pub fn first_to_default_density(&self, t: T, first: Party) -> Result<T> {
        if !(t >= T::zero()) {
            return invalid(format!("time must be non-negative, got {t}"));
        }
        let (own, other) = (self.lambda(first), self.lambda(first.other()));
        if t == T::zero() {
            // The weight is scale free, so evaluate it at unit time.
            let at_one = self.partial(own, other, T::one(), T::one())?;
            let g_one = (-self.radial(own, other)).exp();
            return Ok(-at_one / g_one);
        }
        Ok(-self.partial(own, other, t, t)?)
    }

    /// `Q(τ_party <= horizon)`.
    pub fn prob_default_before(&self, horizon: T, party: Party) -> Result<T> {
        check_horizon(horizon)?;
        Ok(-(-self.lambda(party) * horizon).exp_m1())
    }

    /// `Q(τ_first < τ_second, τ_first <= horizon)`, by adaptive quadrature of
    /// the diagonal density.
    pub fn prob_order_before(&self, horizon: T, order: Order) -> Result<T> {
        check_horizon(horizon)?;
        let first = order.first();
        let r = integrate(
            |t| {
                self.first_to_default_density(t, first)
                    .unwrap_or_else(|_| T::nan())
            },
            T::zero(),
            horizon,
            Tolerance::for_scalar::<T>(),
        )?;
        Ok(r.value)
    }

    /// `Q(τ_first < τ_second <= horizon)`: both default in the given order
    /// before the horizon.
    pub fn prob_both_before(&self, horizon: T, order: Order) -> Result<T> {
        let second = order.second();
        Ok(self.prob_default_before(horizon, second)?
            - self.prob_order_before(horizon, order.reversed())?)
    }

    /// Draw `(τA, τB)`.
    ///
    /// The survival copula is Gumbel–Hougaard, i.e. Archimedean with
    /// generator `exp(-t^(1/θ))`. With a positive stable frailty `V` of index
    /// `α = 1/θ` (Laplace transform `exp(-s^α)`) and independent unit
    /// exponentials `E1, E2`, the times `τi = (Ei / V)^α / λi` have joint
    /// survival `G`. `V` comes from Kanter's representation, evaluated in log
    /// space.
    pub fn sample_pair<R: RandomSource + ?Sized>(&self, rng: &mut R) -> (T, T) {
        if self.theta == T::one() {
            let e1 = T::lit(rng.exp1());
            let e2 = T::lit(rng.exp1());
            return (e1 / self.lambda_a, e2 / self.lambda_b);
        }
        if self.is_comonotone() {
            let e = T::lit(rng.exp1());
            return (e / self.lambda_a, e / self.lambda_b);
        }
        let alpha = T::one() / self.theta;
        let alpha_log_v = self.alpha_log_stable(rng, alpha);
        let e1 = T::lit(rng.exp1());
        let e2 = T::lit(rng.exp1());
        let ta = (alpha * e1.ln() - alpha_log_v).exp() / self.lambda_a;
        let tb = (alpha * e2.ln() - alpha_log_v).exp() / self.lambda_b;
        (ta, tb)
    }

    // α·ln V for V positive stable with E[exp(-sV)] = exp(-s^α), 0 < α < 1:
    // V = sin(αU) / sin(U)^(1/α) · (sin((1-α)U) / E)^((1-α)/α), U ~ U(0,π).
    fn alpha_log_stable<R: RandomSource + ?Sized>(&self, rng: &mut R, alpha: T) -> T {
        let u = T::PI() * T::lit(rng.uniform());
        let e = T::lit(rng.exp1());
        let one_minus = T::one() - alpha;
        alpha * (alpha * u).sin().ln() - u.sin().ln()
            + one_minus * ((one_minus * u).sin().ln() - e.ln())
    }
}

impl<T: Scalar> JointSurvival<T> for GumbelBivariateExponential<T> {
    fn joint_survival(&self, x1: T, x2: T) -> Result<T> {
        if !(x1 >= T::zero() && x2 >= T::zero()) {
            return invalid(format!(
                "survival arguments must be non-negative, got ({x1}, {x2})"
            ));
        }
        Ok((-self.radial(self.lambda_a * x1, self.lambda_b * x2)).exp())
    }

    fn survival_partial_x1(&self, x1: T, x2: T) -> Result<T> {
        self.partial(self.lambda_a, self.lambda_b, x1, x2)
    }

    fn survival_partial_x2(&self, x1: T, x2: T) -> Result<T> {
        self.partial(self.lambda_b, self.lambda_a, x2, x1)
    }
}

fn check_horizon<T: Scalar>(horizon: T) -> Result<()> {
    if !(horizon >= T::zero() && horizon.is_finite()) {
        return invalid(format!("horizon must be non-negative and finite, got {horizon}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::{estimate_many, McConfig, PathRng};
    use crate::quadrature::integrate;
    use crate::stats::kendall_tau;
    use proptest::prelude::*;

    fn model(la: f64, lb: f64, theta: f64) -> GumbelBivariateExponential<f64> {
        GumbelBivariateExponential::new(la, lb, theta).unwrap()
    }

    // Closed form oracle for Q(τ_first < τ_second, τ_first <= T): on the
    // diagonal the partial is a constant multiple of G(t,t) = exp(-c t).
    fn order_prob_closed_form(la: f64, lb: f64, theta: f64, horizon: f64, order: Order) -> f64 {
        let c = (la.powf(theta) + lb.powf(theta)).powf(1.0 / theta);
        let own = match order {
            Order::AFirst => la,
            Order::BFirst => lb,
        };
        let weight = own.powf(theta) / (la.powf(theta) + lb.powf(theta));
        weight * (1.0 - (-c * horizon).exp())
    }

    #[test]
    fn joint_survival_examples() {
        let m = model(0.1, 0.05, 1.0);
        let g = m.joint_survival(5.0, 5.0).unwrap();
        assert!((g - (-0.75_f64).exp()).abs() < 1e-15);
        assert!((g - 0.472_367).abs() < 1e-6);

        let m = model(0.1, 0.1, 2.0);
        let g = m.joint_survival(5.0, 5.0).unwrap();
        assert!((g - (-0.5 * 2.0_f64.sqrt()).exp()).abs() < 1e-15);
        assert!((g - 0.493_069).abs() < 1e-6);

        for theta in [1.0, 2.0, 10.0, 1e7] {
            assert_eq!(model(0.3, 0.7, theta).joint_survival(0.0, 0.0).unwrap(), 1.0);
        }
        assert!(m.joint_survival(-1.0, 0.0).is_err());
    }

    #[test]
    fn marginals_are_exponential() {
        for theta in [1.0, 1.5, 2.0, 10.0, 1e3, 1e5] {
            let m = model(0.1, 0.05, theta);
            for i in 0..50 {
                let x = i as f64 * 0.7;
                let ga = m.joint_survival(x, 0.0).unwrap();
                let gb = m.joint_survival(0.0, x).unwrap();
                assert!((ga - (-0.1 * x).exp()).abs() < 1e-14);
                assert!((gb - (-0.05 * x).exp()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn independence_is_product() {
        let m = model(0.2, 0.03, 1.0);
        for (x, y) in [(0.5, 3.0), (10.0, 1.0), (7.0, 7.0)] {
            let lhs = m.joint_survival(x, y).unwrap();
            let rhs = (-0.2 * x).exp() * (-0.03 * y).exp();
            assert!((lhs - rhs).abs() <= 1e-15 * rhs);
        }
    }

    #[test]
    fn partial_independence_example() {
        let m = model(0.1, 0.05, 1.0);
        let d = m.survival_partial_x2(5.0, 5.0).unwrap();
        assert!((d + 0.05 * (-0.75_f64).exp()).abs() < 1e-15);
        assert!((d + 0.023_618).abs() < 1e-6);
    }

    #[test]
    fn partial_axis_limits() {
        let m = model(0.1, 0.05, 1.0);
        assert!((m.survival_partial_x2(3.0, 0.0).unwrap() + 0.05 * (-0.3_f64).exp()).abs() < 1e-15);
        let m = model(0.1, 0.05, 2.0);
        assert_eq!(m.survival_partial_x2(3.0, 0.0).unwrap(), 0.0);
        assert_eq!(m.survival_partial_x2(0.0, 0.0).unwrap(), -0.05);
        assert!(m.survival_partial_x2(-1.0, 1.0).is_err());
    }

    #[test]
    fn partial_matches_finite_differences() {
        let h = 1e-6;
        for theta in [1.0, 1.3, 2.0, 10.0, 50.0] {
            let m = model(0.1, 0.05, theta);
            for &(x1, x2) in &[(1.0, 2.0), (5.0, 5.0), (3.0, 0.5), (0.2, 8.0)] {
                let fd2 = (m.joint_survival(x1, x2 + h).unwrap()
                    - m.joint_survival(x1, x2 - h).unwrap())
                    / (2.0 * h);
                let an2 = m.survival_partial_x2(x1, x2).unwrap();
                // Absolute floor covers the O(eps/h) rounding of the difference quotient.
                assert!((fd2 - an2).abs() <= 1e-6 * an2.abs() + 1e-9, "θ={theta} ({x1},{x2})");
                let fd1 = (m.joint_survival(x1 + h, x2).unwrap()
                    - m.joint_survival(x1 - h, x2).unwrap())
                    / (2.0 * h);
                let an1 = m.survival_partial_x1(x1, x2).unwrap();
                assert!((fd1 - an1).abs() <= 1e-6 * an1.abs() + 1e-9, "θ={theta} ({x1},{x2})");
            }
        }
    }

    #[test]
    fn marginal_density_integrates_to_one() {
        for theta in [1.0, 2.0, 10.0] {
            let m = model(0.1, 0.05, theta);
            // Tail beyond 800 years is below e^-40.
            let r = integrate(
                |t| -m.survival_partial_x2(0.0, t).unwrap(),
                0.0,
                800.0,
                Tolerance::default(),
            )
            .unwrap();
            assert!((r.value - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn kendall_tau_conversions() {
        assert_eq!(model(0.1, 0.05, 1.0).kendall_tau(), 0.0);
        assert!((model(0.1, 0.05, 10.0).kendall_tau() - 0.9).abs() < 1e-15);
        assert_eq!(GumbelBivariateExponential::from_kendall_tau(0.5).unwrap(), 2.0);
        for tau in [0.0, 0.25, 0.5, 0.75, 0.875] {
            let m = GumbelBivariateExponential::with_kendall_tau(0.1, 0.05, tau).unwrap();
            assert_eq!(m.kendall_tau(), tau);
        }
        assert!(GumbelBivariateExponential::<f64>::from_kendall_tau(1.0).is_err());
        assert!(GumbelBivariateExponential::<f64>::from_kendall_tau(-0.1).is_err());
        assert!(GumbelBivariateExponential::new(0.1, 0.05, 0.9).is_err());
        assert!(GumbelBivariateExponential::new(0.0, 0.05, 2.0).is_err());
    }

    #[test]
    fn order_probability_independence_example() {
        let m = model(0.1, 0.05, 1.0);
        let both = m.prob_both_before(5.0, Order::AFirst).unwrap();
        let expected = (1.0 - (-0.25_f64).exp()) - (0.05 / 0.15) * (1.0 - (-0.75_f64).exp());
        assert!((both - expected).abs() < 1e-10);
        assert!((both - 0.045_321).abs() < 1e-6);
    }

    #[test]
    fn order_probability_matches_closed_form() {
        for theta in [1.0, 1.5, 2.0, 4.0, 10.0, 100.0] {
            for horizon in [0.5, 1.0, 5.0, 30.0] {
                let m = model(0.1, 0.05, theta);
                for order in [Order::AFirst, Order::BFirst] {
                    let q = m.prob_order_before(horizon, order).unwrap();
                    let oracle = order_prob_closed_form(0.1, 0.05, theta, horizon, order);
                    assert!((q - oracle).abs() < 1e-10, "θ={theta} T={horizon} {order:?}");
                }
            }
        }
    }

    #[test]
    fn comonotone_limit() {
        let m = model(0.1, 0.05, 1e4);
        let q = m.prob_order_before(5.0, Order::BFirst).unwrap();
        assert!(q < 1e-12, "{q}");
        let capped = model(0.1, 0.05, 1e9);
        assert!(capped.is_comonotone());
        assert_eq!(capped.prob_order_before(5.0, Order::BFirst).unwrap(), 0.0);
        let qa = capped.prob_order_before(5.0, Order::AFirst).unwrap();
        assert!((qa - (1.0 - (-0.5_f64).exp())).abs() < 1e-10);
        let g = capped.joint_survival(2.0, 3.0).unwrap();
        assert_eq!(g, (-0.2_f64).exp());
    }

    #[test]
    fn partition_of_second_party_default() {
        for theta in [1.0, 2.0, 10.0] {
            let m = model(0.1, 0.05, theta);
            let a = m.prob_both_before(5.0, Order::AFirst).unwrap();
            let b = m.prob_order_before(5.0, Order::BFirst).unwrap();
            let total = 1.0 - (-0.05 * 5.0_f64).exp();
            assert!((a + b - total).abs() < 1e-14);
        }
    }

    #[test]
    fn exchange_symmetry_is_exact() {
        for theta in [1.0, 2.0, 10.0] {
            let m = model(0.1, 0.05, theta);
            let s = m.swapped();
            assert_eq!(
                m.prob_order_before(5.0, Order::BFirst).unwrap(),
                s.prob_order_before(5.0, Order::AFirst).unwrap()
            );
            assert_eq!(
                m.prob_order_before(5.0, Order::AFirst).unwrap(),
                s.prob_order_before(5.0, Order::BFirst).unwrap()
            );
        }
    }

    #[test]
    fn density_at_origin_is_continuous() {
        let m = model(0.1, 0.05, 3.0);
        let d0 = m.first_to_default_density(0.0, Party::B).unwrap();
        let d = m.first_to_default_density(1e-9, Party::B).unwrap();
        assert!((d0 - d).abs() < 1e-11);
    }

    #[test]
    fn independent_sampler_has_zero_correlation() {
        let m = model(0.1, 0.05, 1.0);
        let cfg = McConfig::new(1_000_000, 21);
        // Sample moments for the correlation estimate.
        let [ea, eb, eab, eaa, ebb] = estimate_many(&cfg, |r: &mut PathRng| {
            let (a, b) = m.sample_pair(r);
            [a, b, a * b, a * a, b * b]
        })
        .unwrap();
        let cov = eab.mean - ea.mean * eb.mean;
        let corr = cov / ((eaa.mean - ea.mean.powi(2)) * (ebb.mean - eb.mean.powi(2))).sqrt();
        // Under independence the correlation estimator has std error 1/√n.
        assert!(corr.abs() < 3.0 / 1000.0, "corr {corr}");
    }

    #[test]
    fn sampler_marginal_means() {
        for theta in [1.0, 2.0, 10.0] {
            let m = model(0.1, 0.05, theta);
            let cfg = McConfig::new(1_000_000, 5);
            let [a, b] = estimate_many(&cfg, |r: &mut PathRng| {
                let (a, b) = m.sample_pair(r);
                [a, b]
            })
            .unwrap();
            assert!((a.mean - 10.0).abs() < 3.0 * a.std_error, "θ={theta} {a:?}");
            assert!((b.mean - 20.0).abs() < 3.0 * b.std_error, "θ={theta} {b:?}");
        }
    }

    #[test]
    fn stable_frailty_laplace_transform() {
        // E[exp(-s V)] = exp(-s^α).
        let m = model(1.0, 1.0, 2.5);
        let alpha = 1.0 / 2.5;
        let cfg = McConfig::new(400_000, 13);
        for s in [0.5, 1.0, 2.0] {
            let e = crate::mc::estimate(&cfg, |r: &mut PathRng| {
                let log_v = m.alpha_log_stable(r, alpha) / alpha;
                (-s * log_v.exp()).exp()
            })
            .unwrap();
            let exact = (-(s as f64).powf(alpha)).exp();
            assert!((e.mean - exact).abs() < 3.0 * e.std_error, "s={s}: {e:?} vs {exact}");
        }
    }

    #[test]
    fn sampler_kendall_tau() {
        for theta in [2.0, 10.0] {
            let m = model(0.1, 0.05, theta);
            let mut rng = PathRng::new(3, 0);
            let (xs, ys): (Vec<f64>, Vec<f64>) = (0..100_000).map(|_| m.sample_pair(&mut rng)).unzip();
            let tau = kendall_tau(&xs, &ys);
            assert!((tau - (1.0 - 1.0 / theta)).abs() < 0.01, "θ={theta}: {tau}");
        }
    }

    #[test]
    fn sampler_matches_order_probability() {
        for theta in [1.0, 2.0, 10.0] {
            let m = model(0.1, 0.05, theta);
            for horizon in [1.0, 5.0] {
                let cfg = McConfig::new(1_000_000, 77);
                let e = crate::mc::estimate(&cfg, |r: &mut PathRng| {
                    let (a, b) = m.sample_pair(r);
                    if b < a && b <= horizon { 1.0 } else { 0.0 }
                })
                .unwrap();
                let q = m.prob_order_before(horizon, Order::BFirst).unwrap();
                let binomial_se = (q * (1.0 - q) / 1e6).sqrt();
                assert!((e.mean - q).abs() < 3.0 * binomial_se, "θ={theta} T={horizon}");
            }
        }
    }

    #[test]
    fn sampler_has_no_ties() {
        let m = model(0.1, 0.05, 10.0);
        let mut rng = PathRng::new(9, 0);
        let ties = (0..1_000_000)
            .filter(|_| {
                let (a, b) = m.sample_pair(&mut rng);
                a == b
            })
            .count();
        assert!((ties as f64) / 1e6 < 1e-6);
    }

    #[test]
    fn large_theta_sampling_is_finite() {
        let m = model(0.1, 0.05, 5e5);
        let mut rng = PathRng::new(1, 0);
        for _ in 0..10_000 {
            let (a, b) = m.sample_pair(&mut rng);
            assert!(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0);
        }
    }

    #[test]
    fn f32_model() {
        let m = GumbelBivariateExponential::new(0.1f32, 0.05, 2.0).unwrap();
        let q = m.prob_order_before(5.0, Order::BFirst).unwrap();
        let oracle = order_prob_closed_form(0.1, 0.05, 2.0, 5.0, Order::BFirst);
        assert!((q as f64 - oracle).abs() < 1e-5);
    }

    proptest! {
        #[test]
        fn survival_is_monotone(theta in 1.0..20.0f64, x in 0.0..20.0f64, y in 0.0..20.0f64, d in 0.0..5.0f64) {
            let m = model(0.1, 0.05, theta);
            let g = m.joint_survival(x, y).unwrap();
            prop_assert!(g > 0.0 && g <= 1.0);
            prop_assert!(m.joint_survival(x + d, y).unwrap() <= g);
            prop_assert!(m.joint_survival(x, y + d).unwrap() <= g);
        }
    }
}
