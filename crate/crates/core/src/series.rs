//! Truncated formal power series with exact rational coefficients.
//!
//! A series of order `N` stores the coefficients of `x^0 .. x^(N-1)`; every
//! binary operation truncates to the smaller operand order.

use thiserror::Error;

use crate::exactnum::{central_binomials, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("coefficient index {index} out of range for series of order {order}")]
    OutOfRange { index: usize, order: usize },
    #[error("inverse square root needs constant term 1, found {0}")]
    ConstantTerm(Rat),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rat>,
}

/// How [`ps_inv_sqrt_with`] computes `p^(-1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvSqrtMethod {
    /// Coefficient recurrence from `p s' = -(1/2) p' s`.
    Recurrence,
    /// Newton iteration `s <- s (3 - p s^2) / 2`, doubling the correct prefix.
    Newton,
}

impl PowerSeries {
    /// Series of the given order from a coefficient list, zero-padded or
    /// truncated as needed.
    pub fn from_coeffs(mut coeffs: Vec<Rat>, order: usize) -> Self {
        coeffs.resize(order, Rat::zero());
        PowerSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rat::from(c)).collect(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::from_ints(&[1], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Same series with its order lowered to `order` (no-op if already lower).
    pub fn truncate(&self, order: usize) -> Self {
        PowerSeries {
            coeffs: self.coeffs[..order.min(self.order())].to_vec(),
        }
    }

    fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..order)
                .map(|i| &self.coeffs[i] - &other.coeffs[i])
                .collect(),
        }
    }

    fn scale(&self, c: &Rat) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }
}

/// `sum_k C(2k,k) x^k = (1-4x)^(-1/2)`, truncated at `x^order`.
pub fn ps_central_binomial(order: usize) -> PowerSeries {
    if order == 0 {
        return PowerSeries { coeffs: Vec::new() };
    }
    PowerSeries {
        coeffs: central_binomials(order - 1)
            .into_iter()
            .map(Rat::from_int)
            .collect(),
    }
}

/// Substitution `x -> a x`.
pub fn ps_scale_arg(s: &PowerSeries, a: &Rat) -> PowerSeries {
    let mut power = Rat::one();
    let coeffs = s
        .coeffs
        .iter()
        .map(|c| {
            let out = c * &power;
            power = &power * a;
            out
        })
        .collect();
    PowerSeries { coeffs }
}

/// Cauchy product truncated to `min(order(p), order(q))`.
pub fn ps_mul(p: &PowerSeries, q: &PowerSeries) -> PowerSeries {
    let order = p.order().min(q.order());
    let mut coeffs = vec![Rat::zero(); order];
    for (i, pi) in p.coeffs.iter().take(order).enumerate() {
        if pi.is_zero() {
            continue;
        }
        for (j, qj) in q.coeffs.iter().take(order - i).enumerate() {
            if !qj.is_zero() {
                coeffs[i + j] = &coeffs[i + j] + pi * qj;
            }
        }
    }
    PowerSeries { coeffs }
}

/// `p^(-1/2)` to the order of `p`, via the coefficient recurrence.
pub fn ps_inv_sqrt(p: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    ps_inv_sqrt_with(p, InvSqrtMethod::Recurrence)
}

pub fn ps_inv_sqrt_with(
    p: &PowerSeries,
    method: InvSqrtMethod,
) -> Result<PowerSeries, SeriesError> {
    if let Some(c0) = p.coeffs.first() {
        if *c0 != Rat::one() {
            return Err(SeriesError::ConstantTerm(c0.clone()));
        }
    }
    Ok(match method {
        InvSqrtMethod::Recurrence => inv_sqrt_recurrence(p),
        InvSqrtMethod::Newton => inv_sqrt_newton(p),
    })
}

// m s_m = sum_{j=1}^{m} (-(j/2) - (m-j)) p_j s_{m-j}
fn inv_sqrt_recurrence(p: &PowerSeries) -> PowerSeries {
    let order = p.order();
    let mut s: Vec<Rat> = Vec::with_capacity(order);
    // Highest nonzero index of p bounds the inner sum; the callers here pass
    // sparse polynomials.
    let support: Vec<usize> = (1..order).filter(|&j| !p.coeffs[j].is_zero()).collect();
    for m in 0..order {
        if m == 0 {
            s.push(Rat::one());
            continue;
        }
        let mut acc = Rat::zero();
        for &j in support.iter().take_while(|&&j| j <= m) {
            let weight = Rat::from_frac(-(j as i64), 2) - Rat::from((m - j) as i64);
            acc = acc + weight * &p.coeffs[j] * &s[m - j];
        }
        s.push(acc / Rat::from(m as i64));
    }
    PowerSeries { coeffs: s }
}

fn inv_sqrt_newton(p: &PowerSeries) -> PowerSeries {
    let order = p.order();
    if order == 0 {
        return p.clone();
    }
    let half = Rat::from_frac(1, 2);
    let three = PowerSeries::from_ints(&[3], order);
    let mut s = PowerSeries::one(1);
    let mut prec = 1;
    while prec < order {
        prec = (2 * prec).min(order);
        let s_ext = PowerSeries::from_coeffs(s.coeffs.clone(), prec);
        let p_trunc = p.truncate(prec);
        let correction = three
            .truncate(prec)
            .sub(&ps_mul(&p_trunc, &ps_mul(&s_ext, &s_ext)));
        s = ps_mul(&s_ext, &correction).scale(&half);
    }
    s
}

pub fn ps_coeff(p: &PowerSeries, n: usize) -> Result<Rat, SeriesError> {
    p.coeffs.get(n).cloned().ok_or(SeriesError::OutOfRange {
        index: n,
        order: p.order(),
    })
}

/// The generating-function quadratic `1 - 4(1+a)x + 16a x^2` as a series of
/// the given order.
pub fn gf_quadratic(a: &Rat, order: usize) -> PowerSeries {
    let linear = Rat::from(-4) * (Rat::one() + a);
    let quad = Rat::from(16) * a;
    PowerSeries::from_coeffs(vec![Rat::one(), linear, quad], order)
}

/// `G(x) G(ax)` with `G(x) = (1-4x)^(-1/2)`, the product form of the
/// generating function of `S_n(a)`.
pub fn green_product(a: &Rat, order: usize) -> PowerSeries {
    let g = ps_central_binomial(order);
    ps_mul(&g, &ps_scale_arg(&g, a))
}
