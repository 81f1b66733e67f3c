//! Exact evaluation of the weighted Catalan convolution
//! `S_n(a) = sum_k C(2k,k) C(2(n-k),n-k) a^k` by several independent routes,
//! with floating-point companions (quadrature, asymptotics, saddle point),
//! a random-walk Monte Carlo estimator and an audit engine that checks
//! published formulas against the direct sum.

pub mod analytic;
pub mod audit;
pub mod cli;
pub mod evaluate;
pub mod exactnum;
pub mod series;
pub mod walks;

pub use exactnum::{Int, Rat};
