use super::dd::{Dd, PI};
use super::AnalyticError;
use crate::exactnum::{binomial, Rat};

/// Stopping rule for composite Simpson with panel doubling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    abs_tol: f64,
    max_panel_doublings: u32,
}

impl QuadratureConfig {
    pub const MAX_DOUBLINGS: u32 = 24;

    pub fn new(abs_tol: f64, max_panel_doublings: u32) -> Result<Self, AnalyticError> {
        if abs_tol.is_nan() || abs_tol <= 0.0 || max_panel_doublings > Self::MAX_DOUBLINGS {
            return Err(AnalyticError::InvalidConfig {
                abs_tol,
                max_panel_doublings,
            });
        }
        Ok(QuadratureConfig {
            abs_tol,
            max_panel_doublings,
        })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_panel_doublings(&self) -> u32 {
        self.max_panel_doublings
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            max_panel_doublings: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stop {
    Absolute,
    Relative,
}

/// Running composite Simpson state for `(1/pi) * integral_0^pi f`.
struct Simpson<F: Fn(Dd) -> Dd> {
    f: F,
    intervals: u64,
    ends: Dd,
    evens: Dd,
    odds: Dd,
}

impl<F: Fn(Dd) -> Dd> Simpson<F> {
    fn new(f: F) -> Self {
        let ends = f(Dd::ZERO) + f(PI);
        let odds = f(PI.div_f64(2.0));
        Simpson {
            f,
            intervals: 2,
            ends,
            evens: Dd::ZERO,
            odds,
        }
    }

    fn estimate(&self) -> Dd {
        (self.ends + self.odds.mul_f64(4.0) + self.evens.mul_f64(2.0))
            .div_f64(3.0 * self.intervals as f64)
    }

    fn double(&mut self) {
        self.intervals *= 2;
        self.evens = self.evens + self.odds;
        let mut odds = Dd::ZERO;
        let n = self.intervals as f64;
        for j in (1..self.intervals).step_by(2) {
            // j / n is a dyadic fraction, exact in f64
            odds = odds + (self.f)(PI.mul_f64(j as f64 / n));
        }
        self.odds = odds;
    }
}

/// `(1/pi) * integral_0^pi f(theta) dtheta`. Converged once two consecutive
/// doublings each move the estimate by less than the tolerance.
fn mean_over_half_period(
    f: impl Fn(Dd) -> Dd,
    cfg: &QuadratureConfig,
    stop: Stop,
) -> Result<f64, AnalyticError> {
    let mut rule = Simpson::new(f);
    let mut prev = rule.estimate();
    let mut quiet = 0;
    for _ in 0..cfg.max_panel_doublings {
        rule.double();
        let next = rule.estimate();
        let diff = (next - prev).abs().to_f64();
        let bound = match stop {
            Stop::Absolute => cfg.abs_tol,
            Stop::Relative => cfg.abs_tol * next.abs().to_f64(),
        };
        quiet = if diff < bound { quiet + 1 } else { 0 };
        prev = next;
        if quiet == 2 {
            return Ok(next.to_f64());
        }
    }
    Err(AnalyticError::NonConvergence {
        doublings: cfg.max_panel_doublings,
    })
}

fn t_integrand(n: u64, a: f64) -> impl Fn(Dd) -> Dd {
    let c = Dd::from_f64(1.0) + Dd::from_f64(a);
    let d = Dd::from_f64(a).sqrt().mul_f64(2.0);
    move |theta: Dd| (c + d * theta.cos()).powi(n as u32)
}

/// `T_n(a) = (1/pi) * integral_0^pi (1 + a + 2 sqrt(a) cos theta)^n dtheta`.
///
/// This is the constant Fourier coefficient of `|1 + sqrt(a) e^{i theta}|^{2n}`,
/// i.e. `sum_k C(n,k)^2 a^k`, not `S_n(a)`.
pub fn t_integral(n: u64, a: f64, cfg: &QuadratureConfig) -> Result<f64, AnalyticError> {
    if a.is_nan() || a < 0.0 {
        return Err(AnalyticError::NegativeParameter(a));
    }
    mean_over_half_period(t_integrand(n, a), cfg, Stop::Absolute)
}

/// Successive Simpson estimates of `T_n(a)` with 2, 4, 8, ... intervals.
pub fn t_integral_estimates(n: u64, a: f64, doublings: u32) -> Vec<f64> {
    let mut rule = Simpson::new(t_integrand(n, a));
    let mut out = vec![rule.estimate().to_f64()];
    for _ in 0..doublings {
        rule.double();
        out.push(rule.estimate().to_f64());
    }
    out
}

/// Exact `sum_k C(n,k)^2 a^k`.
pub fn binomial_square_sum(n: u64, a: &Rat) -> Rat {
    let mut power = Rat::one();
    let mut total = Rat::zero();
    for k in 0..=n {
        let c = binomial(n, k as i64);
        total = total + Rat::from_int(&c * &c) * &power;
        power = power * a;
    }
    total
}

pub const CENTRAL_BINOM_QUADRATURE_MAX_K: u64 = 30;

/// `C(2k,k)` as `(1/pi) * integral_0^pi (2 cos theta)^{2k} dtheta`, stopped on a
/// relative tolerance.
pub fn central_binom_quadrature(k: u64, cfg: &QuadratureConfig) -> Result<f64, AnalyticError> {
    if k > CENTRAL_BINOM_QUADRATURE_MAX_K {
        return Err(AnalyticError::IndexTooLarge {
            k,
            max: CENTRAL_BINOM_QUADRATURE_MAX_K,
        });
    }
    let f = move |theta: Dd| theta.cos().mul_f64(2.0).powi(2 * k as u32);
    mean_over_half_period(f, cfg, Stop::Relative)
}

/// Legendre polynomial by Bonnet's recurrence.
pub fn legendre_pn(n: u64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = x;
    for m in 1..n {
        let m = m as f64;
        let next = ((2.0 * m + 1.0) * x * cur - m * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::new(1e-12, 20).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::new(0.0, 10).is_err());
        assert!(QuadratureConfig::new(f64::NAN, 10).is_err());
        assert!(QuadratureConfig::new(1e-9, 25).is_err());
        assert!(QuadratureConfig::new(1e-9, 24).is_ok());
    }

    #[test]
    fn t_integral_examples() {
        assert_eq!(t_integral(0, 3.7, &cfg()).unwrap(), 1.0);
        assert!((t_integral(1, 4.0, &cfg()).unwrap() - 5.0).abs() < 1e-12);
        assert!((t_integral(2, 1.0, &cfg()).unwrap() - 6.0).abs() < 1e-12);
        assert!(matches!(
            t_integral(2, -1.0, &cfg()),
            Err(AnalyticError::NegativeParameter(_))
        ));
    }

    #[test]
    fn binomial_square_sum_examples() {
        assert_eq!(binomial_square_sum(1, &Rat::from(4)), Rat::from(5));
        assert_eq!(binomial_square_sum(2, &Rat::one()), Rat::from(6));
        assert_eq!(binomial_square_sum(3, &Rat::from(2)), Rat::from(63));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_pn(0, 0.7), 1.0);
        assert_eq!(legendre_pn(1, 0.3), 0.3);
        assert_eq!(legendre_pn(2, 3.0), 13.0);
        // P_n(1) = 1
        assert!((legendre_pn(25, 1.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn central_binomial_examples() {
        let c = QuadratureConfig::new(1e-12, 20).unwrap();
        assert_eq!(central_binom_quadrature(0, &c).unwrap(), 1.0);
        assert!((central_binom_quadrature(1, &c).unwrap() - 2.0).abs() < 1e-12);
        assert!((central_binom_quadrature(3, &c).unwrap() - 20.0).abs() < 1e-11);
        assert!(central_binom_quadrature(31, &c).is_err());
    }

    #[test]
    fn non_convergence_is_reported() {
        let tight = QuadratureConfig::new(1e-12, 1).unwrap();
        assert!(matches!(
            t_integral(40, 4.0, &tight),
            Err(AnalyticError::NonConvergence { doublings: 1 })
        ));
    }

    #[test]
    fn doubling_reduces_error_and_becomes_exact() {
        let n = 12;
        let a = 0.25;
        let exact = binomial_square_sum(n, &Rat::from_frac(1, 4)).to_f64();
        let errs: Vec<f64> = t_integral_estimates(n, a, 8)
            .into_iter()
            .map(|e| (e - exact).abs())
            .collect();
        // estimate i uses 2^(i+1) intervals; coarse grids alias, so the
        // decrease is only guaranteed once the grid resolves degree n
        let resolved = errs
            .iter()
            .enumerate()
            .skip_while(|(i, _)| (2u64 << i) < n / 2);
        let tail: Vec<f64> = resolved.map(|(_, e)| *e).collect();
        for w in tail.windows(2) {
            assert!(w[1] <= w[0], "{errs:?}");
        }
        for (i, e) in errs.iter().enumerate() {
            if (2u64 << i) > n {
                assert_eq!(*e, 0.0, "{errs:?}");
            }
        }
    }
}
