//! Exact integers, rationals and the elementary combinatorial quantities
//! (binomials, Catalan and Narayana numbers, half-integer Pochhammer symbols).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type Int = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}: expected [sign]digits[/digits]")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: Int, denom: Int) -> Self {
        assert!(!denom.is_zero(), "Rat with zero denominator");
        Rat(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(value: impl Into<Int>) -> Self {
        Rat(BigRational::from_integer(value.into()))
    }

    pub fn from_frac(numer: i64, denom: i64) -> Self {
        Rat::new(Int::from(numer), Int::from(denom))
    }

    pub fn numer(&self) -> &Int {
        self.0.numer()
    }

    pub fn denom(&self) -> &Int {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// Panics on zero.
    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    pub fn pow(&self, exp: i32) -> Rat {
        Rat(num_traits::Pow::pow(&self.0, exp))
    }

    /// Nearest `f64`; saturates to ±inf for values outside the float range.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rat {
    fn from(value: BigRational) -> Self {
        Rat(value)
    }
}

impl From<Int> for Rat {
    fn from(value: Int) -> Self {
        Rat::from_int(value)
    }
}

impl From<i64> for Rat {
    fn from(value: i64) -> Self {
        Rat::from_int(value)
    }
}

/// Prints `p` for integers and `p/q` otherwise.
impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rat({self})")
    }
}

/// Accepts `[+-]digits` or `[+-]digits/digits` with a nonzero denominator.
/// Decimal points, exponents and whitespace are rejected.
impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseRatError::Empty);
        }
        let malformed = || ParseRatError::Malformed(s.to_string());
        let (negative, body) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let (num_txt, den_txt) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !digits(num_txt) || !den_txt.is_none_or(digits) {
            return Err(malformed());
        }
        let mut numer: Int = num_txt.parse().map_err(|_| malformed())?;
        if negative {
            numer = -numer;
        }
        let denom: Int = match den_txt {
            Some(d) => d.parse().map_err(|_| malformed())?,
            None => Int::one(),
        };
        if denom.is_zero() {
            return Err(ParseRatError::ZeroDenominator(s.to_string()));
        }
        Ok(Rat::new(numer, denom))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

/// Total order on the rationals used to rank audit cells: by distance from
/// the self-reciprocal point `a = 1`, then by value.
pub fn cmp_from_unity(x: &Rat, y: &Rat) -> Ordering {
    let one = Rat::one();
    (x - &one)
        .abs()
        .cmp(&(y - &one).abs())
        .then_with(|| x.cmp(y))
}

/// Binomial coefficient C(n, k), zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> Int {
    if k < 0 || k as u64 > n {
        return Int::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Int::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// C(2k, k) for k = 0..=n, built by the running ratio 2(2k+1)/(k+1).
pub fn central_binomials(n: usize) -> Vec<Int> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = Int::one();
    out.push(c.clone());
    for k in 0..n as u64 {
        c *= 2 * (2 * k + 1);
        c /= k + 1;
        out.push(c.clone());
    }
    out
}

pub fn central_binomial(k: u64) -> Int {
    binomial(2 * k, k as i64)
}

pub fn catalan(n: u64) -> Int {
    central_binomial(n) / (n + 1)
}

/// Number of Dyck paths of semilength `k` with exactly `i` peaks,
/// `C(k,i) C(k,i-1) / k`. Zero for `i` outside `1..=k`.
///
/// Panics if `k == 0`.
pub fn narayana(k: u64, i: i64) -> Int {
    assert!(k >= 1, "narayana requires k >= 1");
    if i < 1 || i as u64 > k {
        return Int::zero();
    }
    binomial(k, i) * binomial(k, i - 1) / k
}

/// Rising factorial (1/2)_n = (1/2)(3/2)...((2n-1)/2).
pub fn pochhammer_half(n: u64) -> Rat {
    let mut odd = Int::one();
    for j in 0..n {
        odd *= 2 * j + 1;
    }
    Rat::new(odd, Int::one() << n)
}

/// Rising factorial (x)_n for rational x.
pub fn pochhammer(x: &Rat, n: u64) -> Rat {
    let mut acc = Rat::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc = acc * &term;
        term = term + Rat::one();
    }
    acc
}

pub fn factorial(n: u64) -> Int {
    (1..=n).fold(Int::one(), |acc, i| acc * i)
}

/// Natural log of |x| without converting the full value to `f64`.
pub fn ln_abs_int(x: &Int) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let mag = x.magnitude();
    let bits = mag.bits();
    if bits <= 1000 {
        return mag.to_f64().expect("finite for <= 1000 bits").ln();
    }
    let shift = bits - 64;
    let top = (mag >> shift).to_f64().expect("64-bit head");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational. `None` when `x <= 0`.
pub fn ln_rat(x: &Rat) -> Option<f64> {
    if x.numer().sign() != Sign::Plus {
        return None;
    }
    Some(ln_abs_int(x.numer()) - ln_abs_int(x.denom()))
}

/// Integer power `base^exp`.
pub fn int_pow(base: &Int, exp: u64) -> Int {
    num_traits::pow::pow(base.clone(), exp as usize)
}

pub fn gcd(a: &Int, b: &Int) -> Int {
    a.gcd(b)
}
