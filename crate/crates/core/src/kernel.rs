//! Exact integer primitives shared by every other module: factorials,
//! double factorials, binomial coefficients and reduced rationals.
//!
//! Double factorials are indexed by `m`: [`odd_double_factorial`]`(m)` is
//! `(2m-1)!!` and [`even_double_factorial`]`(m)` is `(2m)!!`, so the empty
//! products `(-1)!! = 0!! = 1` sit at `m = 0`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision non-negative count.
pub type BigCount = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("argument must be non-negative, got {0}")]
    NegativeArgument(i64),
    #[error("ratio denominator must be non-zero")]
    ZeroDenominator,
}

/// `(2m-1)!! = 1 * 3 * ... * (2m-1)`, with `(-1)!! = 1` at `m = 0`.
pub fn odd_double_factorial(m: i64) -> Result<BigCount, KernelError> {
    if m < 0 {
        return Err(KernelError::NegativeArgument(m));
    }
    Ok((1..=m as u64).fold(BigUint::one(), |acc, i| acc * (2 * i - 1)))
}

/// `(2m)!! = 2 * 4 * ... * 2m = 2^m m!`, with `0!! = 1`.
pub fn even_double_factorial(m: i64) -> Result<BigCount, KernelError> {
    if m < 0 {
        return Err(KernelError::NegativeArgument(m));
    }
    Ok((1..=m as u64).fold(BigUint::one(), |acc, i| acc * (2 * i)))
}

pub fn factorial(n: u64) -> BigCount {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigCount {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 1..=k {
        // Each partial product is itself a binomial coefficient, so the
        // division is exact.
        acc = acc * (n - k + i) / i;
    }
    acc
}

/// Factorial and odd-double-factorial tables grown on demand.
///
/// Owned by a single computation; workers that need one each build their
/// own.
#[derive(Debug, Clone)]
pub struct FactorialMemo {
    fact: Vec<BigUint>,
    odd: Vec<BigUint>,
}

impl Default for FactorialMemo {
    fn default() -> Self {
        Self::new()
    }
}

impl FactorialMemo {
    pub fn new() -> Self {
        Self {
            fact: vec![BigUint::one()],
            odd: vec![BigUint::one()],
        }
    }

    fn grow(&mut self, n: usize) {
        while self.fact.len() <= n {
            let i = self.fact.len();
            let next = &self.fact[i - 1] * i;
            self.fact.push(next);
        }
        while self.odd.len() <= n {
            let m = self.odd.len();
            let next = &self.odd[m - 1] * (2 * m - 1);
            self.odd.push(next);
        }
    }

    pub fn factorial(&mut self, n: usize) -> &BigUint {
        self.grow(n);
        &self.fact[n]
    }

    /// `(2m-1)!!`.
    pub fn odd_double_factorial(&mut self, m: usize) -> &BigUint {
        self.grow(m);
        &self.odd[m]
    }

    pub fn binomial(&mut self, n: usize, k: usize) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        self.grow(n);
        &self.fact[n] / (&self.fact[k] * &self.fact[n - k])
    }
}

/// A rational number kept in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, KernelError> {
        let den = den.into();
        if den.is_zero() {
            return Err(KernelError::ZeroDenominator);
        }
        Ok(Self(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(value.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// `|self - 1|`.
    pub fn distance_from_one(&self) -> ExactRatio {
        Self((&self.0 - BigRational::one()).abs())
    }

    pub fn checked_div(&self, other: &ExactRatio) -> Result<ExactRatio, KernelError> {
        if other.0.is_zero() {
            return Err(KernelError::ZeroDenominator);
        }
        Ok(Self(&self.0 / &other.0))
    }

    /// Nearest `f64`; for display and coarse diagnostics only.
    pub fn to_f64(&self) -> f64 {
        // Scale numerator and denominator down together so huge ratios
        // close to 1 do not overflow to inf/inf.
        let num = self.0.numer();
        let den = self.0.denom();
        let shift = num.bits().max(den.bits()).saturating_sub(1000);
        let n = (num >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (den >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    }

    /// Decimal expansion truncated toward zero after `digits` places.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let num = self.0.numer();
        let den = self.0.denom();
        let scaled = (num.abs() * BigInt::from(10u32).pow(digits as u32)) / den;
        let mut s = scaled.to_string();
        if s.len() <= digits {
            s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
        }
        let (int_part, frac_part) = s.split_at(s.len() - digits);
        let sign = if num.is_negative() { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }
}

impl PartialOrd for ExactRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}
