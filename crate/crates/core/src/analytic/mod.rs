//! Floating-point companions to the exact evaluators: the cosine-integral
//! representation and its Legendre form, leading-order asymptotic models,
//! and the saddle-point equation of the Cauchy coefficient integral.
//!
//! Everything here is `f64`; tolerances are always passed in by the caller.

mod asymptotic;
mod dd;
mod quadrature;
mod saddle;

use thiserror::Error;

pub use asymptotic::{asym_log_value, log_s_exact, AsymptoticKind, AsymptoticModel};
pub use quadrature::{
    binomial_square_sum, central_binom_quadrature, legendre_pn, t_integral, t_integral_estimates,
    QuadratureConfig, CENTRAL_BINOM_QUADRATURE_MAX_K,
};
pub use saddle::{phi, phi_prime, saddle_solve};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error(
        "invalid quadrature config: abs_tol={abs_tol}, max_panel_doublings={max_panel_doublings}"
    )]
    InvalidConfig {
        abs_tol: f64,
        max_panel_doublings: u32,
    },
    #[error("quadrature did not converge after {doublings} panel doublings")]
    NonConvergence { doublings: u32 },
    #[error("parameter a = {0} must be nonnegative")]
    NegativeParameter(f64),
    #[error("parameter a = {0} must be positive")]
    NonPositiveParameter(f64),
    #[error("k = {k} exceeds {max}")]
    IndexTooLarge { k: u64, max: u64 },
    #[error("n must be at least 1")]
    ZeroIndex,
    #[error("x = {x} is outside (0, min(1/4, 1/(4a))) for a = {a}")]
    Domain { x: f64, a: f64 },
    #[error("no sign change of phi' for a = {0}")]
    NoSignChange(f64),
    #[error("cannot take the log of nonpositive value {0}")]
    NonPositiveValue(String),
}
