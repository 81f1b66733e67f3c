use super::AnalyticError;

fn check_domain(x: f64, a: f64) -> Result<(), AnalyticError> {
    if a.is_nan() || a <= 0.0 {
        return Err(AnalyticError::NonPositiveParameter(a));
    }
    let right = (0.25f64).min(1.0 / (4.0 * a));
    if !(x > 0.0 && x < right) {
        return Err(AnalyticError::Domain { x, a });
    }
    Ok(())
}

/// `Phi(x) = -ln x - ln(1-4x)/2 - ln(1-4ax)/2` on `0 < x < min(1/4, 1/(4a))`.
pub fn phi(x: f64, a: f64) -> Result<f64, AnalyticError> {
    check_domain(x, a)?;
    Ok(-x.ln() - 0.5 * (1.0 - 4.0 * x).ln() - 0.5 * (1.0 - 4.0 * a * x).ln())
}

pub fn phi_prime(x: f64, a: f64) -> Result<f64, AnalyticError> {
    check_domain(x, a)?;
    Ok(phi_prime_raw(x, a))
}

fn phi_prime_raw(x: f64, a: f64) -> f64 {
    -1.0 / x + 2.0 / (1.0 - 4.0 * x) + 2.0 * a / (1.0 - 4.0 * a * x)
}

/// Root of `Phi'` by bisection until the bracket is narrower than `tol`.
/// `Phi'` is increasing on its domain, from `-inf` to `+inf`, so the root is
/// unique.
pub fn saddle_solve(a: f64, tol: f64) -> Result<f64, AnalyticError> {
    if a.is_nan() || a <= 0.0 {
        return Err(AnalyticError::NonPositiveParameter(a));
    }
    let mut lo = 0.0f64;
    let mut hi = (0.25f64).min(1.0 / (4.0 * a));
    // endpoints are the singular points; only interior midpoints get evaluated
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if phi_prime_raw(mid, a) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    let value = phi_prime_raw(mid, a);
    if !value.is_finite() {
        return Err(AnalyticError::NoSignChange(a));
    }
    Ok(mid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_prime_vanishes_at_one_eighth() {
        assert!(phi_prime(0.125, 1.0).unwrap().abs() < 1e-12);
        assert!(phi_prime(0.24, 1.0).unwrap() > 50.0);
    }

    #[test]
    fn phi_blows_up_near_zero() {
        let near = phi(1e-6, 2.0).unwrap();
        let further = phi(1e-3, 2.0).unwrap();
        assert!(near > further && near > 13.0);
    }

    #[test]
    fn domain_errors() {
        assert!(phi(0.0, 1.0).is_err());
        assert!(phi(0.25, 1.0).is_err());
        assert!(phi_prime(0.1, 4.0).is_err()); // 1/(4a) = 1/16
        assert!(phi(0.1, 0.0).is_err());
        assert!(saddle_solve(-1.0, 1e-12).is_err());
    }

    #[test]
    fn root_and_residual() {
        let root = saddle_solve(1.0, 1e-12).unwrap();
        assert!((root - 0.125).abs() < 1e-10);
        for a in [0.25, 1.0, 4.0, 0.01, 100.0] {
            let root = saddle_solve(a, 1e-14).unwrap();
            assert!(
                phi_prime(root, a).unwrap().abs() < 1e-9 * (1.0 + a),
                "a={a}"
            );
        }
    }
}
