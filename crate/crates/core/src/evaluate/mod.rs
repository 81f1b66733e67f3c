//! Exact evaluators for the weighted convolution
//!
//! ```text
//! S_n(a) = sum_{k=0}^{n} C(2k,k) C(2(n-k),n-k) a^k
//! ```
//!
//! [`s_direct`] is the literal sum and serves as the reference every other
//! route is checked against. The remaining evaluators reach the same
//! polynomial through the Catalan form, the holonomic recurrence, a
//! terminating `2F1`, the re-expanded generating function, the Narayana
//! refinement and power-series inversion.

mod dyck;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{binomial, catalan, central_binomials, int_pow, narayana, Int, Rat};
use crate::series::{gf_quadratic, ps_coeff, ps_inv_sqrt};

pub use dyck::{dyck_enumerate, peak_histogram, DyckPath, DYCK_MAX_SEMILENGTH};

/// Largest `n` accepted by [`evaluate`] for the cubic Narayana triple sum.
pub const NARAYANA_MAX_N: u64 = 400;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("parameter a must be nonzero")]
    ZeroParameter,
    #[error("2F1 lower parameter c = {0} is a pole for this degree")]
    PoleInC(Rat),
    #[error("n = {n} exceeds the bound {max} for method {method}")]
    BoundExceeded { method: Method, n: u64, max: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Direct,
    WeightedCatalan,
    Recurrence,
    #[serde(rename = "hyper")]
    Hypergeometric,
    #[serde(rename = "identity")]
    IdentityProofForm,
    Narayana,
    Series,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Direct,
        Method::WeightedCatalan,
        Method::Recurrence,
        Method::Hypergeometric,
        Method::IdentityProofForm,
        Method::Narayana,
        Method::Series,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::WeightedCatalan => "weighted-catalan",
            Method::Recurrence => "recurrence",
            Method::Hypergeometric => "hyper",
            Method::IdentityProofForm => "identity",
            Method::Narayana => "narayana",
            Method::Series => "series",
        }
    }

    pub fn evaluator(self) -> fn(u64, &Rat) -> Rat {
        match self {
            Method::Direct => s_direct,
            Method::WeightedCatalan => s_weighted_catalan,
            Method::Recurrence => s_recurrence,
            Method::Hypergeometric => s_hypergeometric,
            Method::IdentityProofForm => s_identity_proof_form,
            Method::Narayana => s_narayana,
            Method::Series => s_series,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalRequest {
    pub n: u64,
    pub a: Rat,
    pub method: Method,
}

#[derive(Debug, Clone)]
pub struct EvalResult {
    pub value: Rat,
    pub method: Method,
    pub n: u64,
    pub a: Rat,
    pub elapsed: Duration,
}

/// Runs one evaluator and records how long it took.
pub fn evaluate(req: &EvalRequest) -> Result<EvalResult, EvalError> {
    if req.method == Method::Narayana && req.n > NARAYANA_MAX_N {
        return Err(EvalError::BoundExceeded {
            method: req.method,
            n: req.n,
            max: NARAYANA_MAX_N,
        });
    }
    let start = Instant::now();
    let value = req.method.evaluator()(req.n, &req.a);
    Ok(EvalResult {
        value,
        method: req.method,
        n: req.n,
        a: req.a.clone(),
        elapsed: start.elapsed(),
    })
}

// Powers of p and q for a = p/q, so sums stay in integers until the final
// division by q^n.
fn split(a: &Rat) -> (Int, Int) {
    (a.numer().clone(), a.denom().clone())
}

/// The literal convolution sum.
pub fn s_direct(n: u64, a: &Rat) -> Rat {
    let (p, q) = split(a);
    let cb = central_binomials(n as usize);
    let n = n as usize;
    // q^(n-k) for k = n..0 built upward, p^k built alongside.
    let mut q_pows = Vec::with_capacity(n + 1);
    let mut qp = Int::one();
    for _ in 0..=n {
        q_pows.push(qp.clone());
        qp *= &q;
    }
    let mut total = Int::zero();
    let mut p_pow = Int::one();
    for k in 0..=n {
        if !p_pow.is_zero() || k == 0 {
            total += &cb[k] * &cb[n - k] * &p_pow * &q_pows[n - k];
        }
        p_pow *= &p;
    }
    Rat::new(total, int_pow(&q, n as u64))
}

/// `sum (k+1)(n-k+1) C_k C_{n-k} a^k`.
pub fn s_weighted_catalan(n: u64, a: &Rat) -> Rat {
    let mut power = Rat::one();
    let mut total = Rat::zero();
    for k in 0..=n {
        let weight = Int::from((k + 1) * (n - k + 1)) * catalan(k) * catalan(n - k);
        total = total + Rat::from_int(weight) * &power;
        power = power * a;
    }
    total
}

/// Three-term recurrence
/// `(m+1) S_{m+1} = 2(2m+1)(1+a) S_m - 16 m a S_{m-1}`, `S_0 = 1`,
/// `S_1 = 2(1+a)`.
///
/// Runs on `T_m = q^m S_m` (with `a = p/q`), which stays integral, so each
/// step is an exact integer division by `m+1`.
pub fn s_recurrence(n: u64, a: &Rat) -> Rat {
    let (p, q) = split(a);
    let sum = &p + &q;
    let pq16 = Int::from(16) * &p * &q;
    let mut prev = Int::one();
    if n == 0 {
        return Rat::one();
    }
    let mut cur = Int::from(2) * &sum;
    for m in 1..n {
        let next = (Int::from(2 * (2 * m + 1)) * &sum * &cur - &pq16 * m * &prev) / (m + 1);
        prev = cur;
        cur = next;
    }
    Rat::new(cur, int_pow(&q, n))
}

/// Terminating `2F1(-n, b; c; z) = sum_k (-n)_k (b)_k / ((c)_k k!) z^k`.
pub fn hyp2f1_terminating(n: u64, b: &Rat, c: &Rat, z: &Rat) -> Result<Rat, EvalError> {
    if c.is_integer() && !c.is_positive() {
        let neg = -c;
        if neg < Rat::from(n as i64) {
            return Err(EvalError::PoleInC(c.clone()));
        }
    }
    let mut term = Rat::one();
    let mut total = Rat::one();
    for k in 0..n {
        let k_rat = Rat::from(k as i64);
        let ratio = (Rat::from(k as i64 - n as i64) * (b + &k_rat))
            / ((c + &k_rat) * Rat::from(k as i64 + 1));
        term = term * ratio * z;
        if term.is_zero() {
            break;
        }
        total = total + &term;
    }
    Ok(total)
}

/// `4^n 2F1(-n, 1/2; 1; 1-a)`.
pub fn s_hypergeometric(n: u64, a: &Rat) -> Rat {
    let z = Rat::one() - a;
    let f = hyp2f1_terminating(n, &Rat::from_frac(1, 2), &Rat::one(), &z)
        .expect("c = 1 is never a pole");
    Rat::from_int(int_pow(&Int::from(4), n)) * f
}

/// `sum_{m=0}^{n/2} C(2(n-m), n-m) C(n-m, m) (a+1)^(n-2m) (-4a)^m`.
pub fn s_identity_proof_form(n: u64, a: &Rat) -> Rat {
    let a1 = Rat::one() + a;
    let m4a = Rat::from(-4) * a;
    (0..=n / 2)
        .map(|m| {
            let weight = binomial(2 * (n - m), (n - m) as i64) * binomial(n - m, m as i64);
            Rat::from_int(weight) * a1.pow((n - 2 * m) as i32) * m4a.pow(m as i32)
        })
        .sum()
}

/// Sum of Narayana numbers over all peak counts of one path. The empty path
/// (semilength 0) contributes a single factor of 1.
fn narayana_row(k: u64) -> Vec<Int> {
    if k == 0 {
        vec![Int::one()]
    } else {
        (1..=k as i64).map(|i| narayana(k, i)).collect()
    }
}

/// Triple sum `sum_k sum_i sum_j (k+1)(n-k+1) N(k,i) N(n-k,j) a^k`, with an
/// empty path counted once (`N(0,0) = 1`) at `k = 0` and `k = n`.
pub fn s_narayana(n: u64, a: &Rat) -> Rat {
    let rows: Vec<Vec<Int>> = (0..=n).map(narayana_row).collect();
    let mut power = Rat::one();
    let mut total = Rat::zero();
    for k in 0..=n {
        let mut inner = Int::zero();
        for ni in &rows[k as usize] {
            for nj in &rows[(n - k) as usize] {
                inner += ni * nj;
            }
        }
        inner *= (k + 1) * (n - k + 1);
        total = total + Rat::from_int(inner) * &power;
        power = power * a;
    }
    total
}

/// Coefficient of `x^n` in `(1 - 4(1+a)x + 16a x^2)^(-1/2)`.
pub fn s_series(n: u64, a: &Rat) -> Rat {
    let order = n as usize + 1;
    let s = ps_inv_sqrt(&gf_quadratic(a, order)).expect("constant term is 1");
    ps_coeff(&s, n as usize).expect("index n < order n+1")
}

/// `(S_n(a), a^n S_n(1/a))`; equal because reversing `k -> n-k` maps one
/// sum onto the other.
pub fn reciprocity_check(n: u64, a: &Rat) -> Result<(Rat, Rat), EvalError> {
    if a.is_zero() {
        return Err(EvalError::ZeroParameter);
    }
    let lhs = s_direct(n, a);
    let rhs = a.pow(n as i32) * s_direct(n, &a.recip());
    Ok((lhs, rhs))
}
