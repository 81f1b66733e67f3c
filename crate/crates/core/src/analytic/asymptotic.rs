use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::AnalyticError;
use crate::evaluate::s_recurrence;
use crate::exactnum::{ln_rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AsymptoticKind {
    /// `(1+sqrt a)^{2n} / (sqrt(pi n) a^{1/4})`, dominant singularity at
    /// `1/(1+sqrt a)^2`.
    Printed,
    /// Transfer theorem at the true dominant singularity `min(1/4, 1/(4a))`.
    SingularityCorrected,
}

/// Leading-order model of `S_n(a)` for `a > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticModel {
    pub kind: AsymptoticKind,
    pub a: f64,
    pub growth_base: f64,
    pub rho: f64,
}

impl AsymptoticModel {
    pub fn new(kind: AsymptoticKind, a: f64) -> Result<Self, AnalyticError> {
        if a.is_nan() || a <= 0.0 {
            return Err(AnalyticError::NonPositiveParameter(a));
        }
        let rho = match kind {
            AsymptoticKind::Printed => 1.0 / (1.0 + a.sqrt()).powi(2),
            AsymptoticKind::SingularityCorrected if a <= 1.0 => 0.25,
            AsymptoticKind::SingularityCorrected => 1.0 / (4.0 * a),
        };
        Ok(AsymptoticModel {
            kind,
            a,
            growth_base: 1.0 / rho,
            rho,
        })
    }
}

/// Natural log of the model's prediction for `S_n(a)`.
pub fn asym_log_value(model: &AsymptoticModel, n: u64) -> Result<f64, AnalyticError> {
    if n == 0 {
        return Err(AnalyticError::ZeroIndex);
    }
    let a = model.a;
    if a.is_nan() || a <= 0.0 {
        return Err(AnalyticError::NonPositiveParameter(a));
    }
    let nf = n as f64;
    Ok(match model.kind {
        AsymptoticKind::Printed => {
            2.0 * nf * (1.0 + a.sqrt()).ln() - 0.5 * (PI * nf).ln() - 0.25 * a.ln()
        }
        // F(x) = 1/(1-4x) exactly, so the value is 4^n with no correction
        AsymptoticKind::SingularityCorrected if a == 1.0 => nf * 4f64.ln(),
        AsymptoticKind::SingularityCorrected if a < 1.0 => {
            nf * 4f64.ln() - 0.5 * (PI * nf * (1.0 - a)).ln()
        }
        AsymptoticKind::SingularityCorrected => {
            nf * (4.0 * a).ln() - 0.5 * (PI * nf).ln() + 0.5 * (a / (a - 1.0)).ln()
        }
    })
}

/// `ln S_n(a)` from the exact recurrence value.
pub fn log_s_exact(n: u64, a: &Rat) -> Result<f64, AnalyticError> {
    let value = s_recurrence(n, a);
    ln_rat(&value).ok_or_else(|| AnalyticError::NonPositiveValue(value.to_string()))
}
