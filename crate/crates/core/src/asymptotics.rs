//! Numerical checks of the growth laws over exact sequence prefixes.
//!
//! For `d >= 3` the normalised ratios `u_n 2^{dn} / ((2n)!)^{d-1}` and
//! `w_n 2^{dn} / ((2n)!)^{d-1}` tend to 1 and are computed exactly. For
//! `d = 2`, `w_n / ((n!)^2 sqrt(e / (pi n)))` tends to 1 with a `1 + O(1/n)`
//! error; that one needs `e` and `pi`, so it is evaluated in fixed-point
//! decimal arithmetic.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::kernel::{binomial, ExactRatio, FactorialMemo};
use crate::sequence::{SequenceKind, SequenceTable};

/// Guard digits carried beyond the requested precision.
const GUARD_DIGITS: u32 = 20;

/// Smallest accepted precision for [`w2_ratio`].
pub const MIN_PRECISION: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticsError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("table {kind}(d={dimension}) has no entry for n={n}")]
    MissingEntry {
        kind: SequenceKind,
        dimension: u32,
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioKind {
    URatio,
    WRatio,
    W2Ratio,
}

/// A fixed-point decimal `mantissa / 10^digits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighPrecision {
    mantissa: BigInt,
    digits: u32,
}

impl HighPrecision {
    pub fn new(mantissa: BigInt, digits: u32) -> Self {
        Self { mantissa, digits }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// `|self - 1|` at the same precision.
    pub fn distance_from_one(&self) -> HighPrecision {
        let one = BigInt::from(10u32).pow(self.digits);
        Self::new((&self.mantissa - one).abs(), self.digits)
    }

    pub fn to_f64(&self) -> f64 {
        ExactRatio::new(self.mantissa.clone(), BigInt::from(10u32).pow(self.digits))
            .expect("power of ten is non-zero")
            .to_f64()
    }

    pub fn as_ratio(&self) -> ExactRatio {
        ExactRatio::new(self.mantissa.clone(), BigInt::from(10u32).pow(self.digits))
            .expect("power of ten is non-zero")
    }
}

impl PartialOrd for HighPrecision {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HighPrecision {
    fn cmp(&self, other: &Self) -> Ordering {
        let ten = BigInt::from(10u32);
        let lhs = &self.mantissa * ten.pow(other.digits);
        let rhs = &other.mantissa * ten.pow(self.digits);
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for HighPrecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.digits as usize;
        let mut s = self.mantissa.abs().to_string();
        if s.len() <= digits {
            s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
        }
        let (int_part, frac_part) = s.split_at(s.len() - digits);
        if self.mantissa.sign() == Sign::Minus {
            f.write_str("-")?;
        }
        if digits == 0 {
            write!(f, "{int_part}")
        } else {
            write!(f, "{int_part}.{frac_part}")
        }
    }
}

/// `scale / x` summed as `atan(1/x)` in fixed point.
fn atan_inverse(x: u32, scale: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = scale / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// `pi * scale`, via `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi_fixed(scale: &BigInt) -> BigInt {
    atan_inverse(5, scale) * 16 - atan_inverse(239, scale) * 4
}

/// `e * scale`, via `sum 1/k!`.
pub fn e_fixed(scale: &BigInt) -> BigInt {
    let mut term = scale.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    while !term.is_zero() {
        sum += &term;
        term /= k;
        k += 1;
    }
    sum
}

fn entry(table: &SequenceTable, kind: SequenceKind, d: u32, n: usize) -> Result<&BigUint, AsymptoticsError> {
    if table.kind() != kind || table.dimension() != d {
        return Err(AsymptoticsError::InvalidArgument(format!(
            "expected a {kind}(d={d}) table, got {}(d={})",
            table.kind(),
            table.dimension()
        )));
    }
    table.get(n).ok_or(AsymptoticsError::MissingEntry {
        kind,
        dimension: d,
        n,
    })
}

fn normalised(value: &BigUint, d: u32, n: usize) -> ExactRatio {
    let mut memo = FactorialMemo::new();
    let numer = value << (d as usize * n);
    let denom = memo.factorial(2 * n).pow(d - 1);
    ExactRatio::new(BigInt::from(numer), BigInt::from(denom)).expect("factorials are positive")
}

fn require_high_dimension(d: u32) -> Result<(), AsymptoticsError> {
    if d < 3 {
        return Err(AsymptoticsError::InvalidArgument(format!(
            "growth ratios are for d >= 3, got d={d}"
        )));
    }
    Ok(())
}

/// `u_n(d) 2^{dn} / ((2n)!)^{d-1}`.
pub fn u_ratio(d: u32, n: usize, table: &SequenceTable) -> Result<ExactRatio, AsymptoticsError> {
    require_high_dimension(d)?;
    Ok(normalised(entry(table, SequenceKind::U, d, n)?, d, n))
}

/// `w_n(d) 2^{dn} / ((2n)!)^{d-1}`.
pub fn w_ratio(d: u32, n: usize, table: &SequenceTable) -> Result<ExactRatio, AsymptoticsError> {
    require_high_dimension(d)?;
    Ok(normalised(entry(table, SequenceKind::W, d, n)?, d, n))
}

/// `w_n(2) / ((n!)^2 sqrt(e / (pi n)))` to `precision` decimal digits
/// (truncated).
pub fn w2_ratio(n: usize, table: &SequenceTable, precision: u32) -> Result<HighPrecision, AsymptoticsError> {
    if precision < MIN_PRECISION {
        return Err(AsymptoticsError::InvalidArgument(format!(
            "precision must be at least {MIN_PRECISION} digits, got {precision}"
        )));
    }
    if n == 0 {
        return Err(AsymptoticsError::InvalidArgument("w2_ratio needs n >= 1".into()));
    }
    let w = BigInt::from(entry(table, SequenceKind::W, 2, n)?.clone());
    let working = precision + GUARD_DIGITS;
    let scale = BigInt::from(10u32).pow(working);
    let pi = pi_fixed(&scale);
    let e = e_fixed(&scale);
    let fact = BigInt::from(FactorialMemo::new().factorial(n).clone());
    // (ratio * scale)^2 = w^2 pi n scale^2 / (e (n!)^4)
    let numer = &w * &w * BigInt::from(n) * &pi * &scale * &scale;
    let denom = e * fact.pow(4);
    let scaled = (numer / denom).sqrt();
    let mantissa = scaled / BigInt::from(10u32).pow(GUARD_DIGITS);
    Ok(HighPrecision::new(mantissa, precision))
}

/// `w_n - u_n <= 2^{-n} ((2n-1)!!)^{d-1} (n!)^{d-1}` for every `2 <= n <= n_max`.
pub fn x_bound_check(d: u32, n_max: usize, u: &SequenceTable, w: &SequenceTable) -> bool {
    first_x_bound_violation(d, n_max, u, w).is_none()
}

/// The first `n` at which the inductive bound fails or an entry is missing.
pub fn first_x_bound_violation(d: u32, n_max: usize, u: &SequenceTable, w: &SequenceTable) -> Option<usize> {
    let mut memo = FactorialMemo::new();
    (2..=n_max).find(|&n| {
        let (Ok(un), Ok(wn)) = (entry(u, SequenceKind::U, d, n), entry(w, SequenceKind::W, d, n)) else {
            return true;
        };
        if wn < un {
            return true;
        }
        let excess = wn - un;
        let bound = (memo.odd_double_factorial(n).clone() * memo.factorial(n)).pow(d - 1);
        (excess << n) > bound
    })
}

/// `sqrt(2(n+1)) <= 2^n n! / (2n-1)!! <= 2 sqrt(n)`, compared after squaring.
pub fn double_factorial_estimates_hold(n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let mut memo = FactorialMemo::new();
    let odd = memo.odd_double_factorial(n).clone();
    let c = memo.factorial(n) << n;
    let odd_sq = &odd * &odd;
    let c_sq = &c * &c;
    BigUint::from(2 * (n + 1)) * &odd_sq <= c_sq && c_sq <= BigUint::from(4 * n) * odd_sq
}

/// `((2n-1)!! / ((2k-1)!! (2n-2k-1)!!))^2 >= C(n,k)^2 (k+1)(n-k+1) / n`,
/// with both sides multiplied through by `n ((2k-1)!! (2n-2k-1)!!)^2`.
///
/// Holds for `1 <= k <= n-1`; at `k = 0` or `k = n` it reduces to
/// `n >= n + 1` and fails.
pub fn odd_ratio_inequality_holds(n: usize, k: usize) -> bool {
    if k > n || n == 0 {
        return false;
    }
    let mut memo = FactorialMemo::new();
    let top = memo.odd_double_factorial(n).clone();
    let bottom = memo.odd_double_factorial(k).clone() * memo.odd_double_factorial(n - k);
    let binom = binomial(n as u64, k as i64);
    let lhs = BigUint::from(n) * &top * &top;
    let rhs = &binom * &binom * BigUint::from((k + 1) * (n - k + 1)) * &bottom * &bottom;
    lhs >= rhs
}

/// `(n, ratio)` for every `n` in the table at or above `from`.
pub fn ratio_series(
    kind: RatioKind,
    table: &SequenceTable,
    from: usize,
) -> Result<Vec<(usize, ExactRatio)>, AsymptoticsError> {
    let d = table.dimension();
    table
        .iter()
        .filter(|&(n, _)| n >= from.max(1))
        .map(|(n, _)| {
            let r = match kind {
                RatioKind::URatio => u_ratio(d, n, table)?,
                RatioKind::WRatio => w_ratio(d, n, table)?,
                RatioKind::W2Ratio => {
                    return Err(AsymptoticsError::InvalidArgument(
                        "use w2_ratio for the two-dimensional ratio".into(),
                    ))
                }
            };
            Ok((n, r))
        })
        .collect()
}

/// Largest `n * |1 - r_n|` over the series: the measured `O(1/n)` constant.
pub fn measured_constant(series: &[(usize, ExactRatio)]) -> Option<ExactRatio> {
    series
        .iter()
        .map(|(n, r)| {
            let dist = r.distance_from_one();
            ExactRatio::new(dist.numer() * BigInt::from(*n), dist.denom().clone())
                .expect("positive denominator")
        })
        .max()
}

/// `true` when every ratio is `<= 1`.
pub fn bounded_by_one(series: &[(usize, ExactRatio)]) -> bool {
    let one = ExactRatio::from_integer(BigInt::one());
    series.iter().all(|(_, r)| *r <= one)
}
