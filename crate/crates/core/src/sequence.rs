//! Exact sequences of 2-magic counts.
//!
//! * `V`: tuples `(t_2, ..., t_d)` of fixed-point-free involutions on
//!   `{1..2n}` that together with the standard involution act transitively.
//! * `U`: indecomposable `d`-dimensional 2-magic matrices of size `n`.
//! * `W`: all `d`-dimensional 2-magic matrices of size `n`.
//! * `W01`: the zero-one ones among them.
//!
//! `V` comes from the orbit-of-1 recurrence, `U` from `V` by the labelling
//! double count (or directly from the rational form of the same recurrence),
//! and `W`/`W01` from `U` through the exponential-principle convolution.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{BigCount, FactorialMemo};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    V,
    U,
    W,
    W01,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 4] = [Self::V, Self::U, Self::W, Self::W01];

    /// Smallest index carried by a table of this kind.
    pub fn first_index(self) -> usize {
        match self {
            Self::V | Self::U => 1,
            Self::W | Self::W01 => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::V => "v",
            Self::U => "u",
            Self::W => "w",
            Self::W01 => "w01",
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SequenceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "v" => Ok(Self::V),
            "u" => Ok(Self::U),
            "w" => Ok(Self::W),
            "w01" => Ok(Self::W01),
            other => Err(format!("unknown sequence kind `{other}` (expected v, u, w or w01)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(u32),
    #[error("n_max must be at least {min} for kind {kind}, got {n_max}")]
    InvalidRange {
        kind: SequenceKind,
        n_max: usize,
        min: usize,
    },
    #[error("consistency failure at {kind}(d={dimension}, n={n}): {detail}")]
    Consistency {
        kind: SequenceKind,
        dimension: u32,
        n: usize,
        detail: String,
    },
}

/// A prefix of one sequence for one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    kind: SequenceKind,
    dimension: u32,
    values: Vec<BigCount>,
}

impl SequenceTable {
    /// Build a table from values starting at `kind.first_index()`.
    pub fn from_values(kind: SequenceKind, dimension: u32, values: Vec<BigCount>) -> Self {
        Self {
            kind,
            dimension,
            values,
        }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn first_index(&self) -> usize {
        self.kind.first_index()
    }

    /// Largest index present, or `None` for an empty table.
    pub fn n_max(&self) -> Option<usize> {
        (!self.values.is_empty()).then(|| self.first_index() + self.values.len() - 1)
    }

    pub fn get(&self, n: usize) -> Option<&BigCount> {
        n.checked_sub(self.first_index())
            .and_then(|i| self.values.get(i))
    }

    pub fn values(&self) -> &[BigCount] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigCount)> {
        let first = self.first_index();
        self.values.iter().enumerate().map(move |(i, v)| (first + i, v))
    }

    /// Restrict to indices `<= n_max`.
    pub fn truncated(&self, n_max: usize) -> Self {
        let keep = (n_max + 1).saturating_sub(self.first_index()).min(self.values.len());
        Self::from_values(self.kind, self.dimension, self.values[..keep].to_vec())
    }
}

fn check_dimension(d: u32) -> Result<(), SequenceError> {
    if d < 2 {
        Err(SequenceError::InvalidDimension(d))
    } else {
        Ok(())
    }
}

fn check_range(kind: SequenceKind, n_max: usize) -> Result<(), SequenceError> {
    let min = kind.first_index();
    if n_max < min {
        Err(SequenceError::InvalidRange { kind, n_max, min })
    } else {
        Ok(())
    }
}

/// `v_1 = 1`, and for `n > 1`
/// `v_n = ((2n-1)!!)^{d-1} - sum_{k<n} C(n-1,k-1) ((2n-2k-1)!!)^{d-1} v_k`.
pub fn compute_v(d: u32, n_max: usize) -> Result<SequenceTable, SequenceError> {
    check_dimension(d)?;
    check_range(SequenceKind::V, n_max)?;
    let mut memo = FactorialMemo::new();
    let e = d - 1;
    let mut v: Vec<BigUint> = vec![BigUint::one()];
    for n in 2..=n_max {
        let mut rest = BigInt::from(memo.odd_double_factorial(n).pow(e));
        for k in 1..n {
            let term = memo.binomial(n - 1, k - 1)
                * memo.odd_double_factorial(n - k).pow(e)
                * &v[k - 1];
            rest -= BigInt::from(term);
        }
        let value = rest.to_biguint().ok_or_else(|| SequenceError::Consistency {
            kind: SequenceKind::V,
            dimension: d,
            n,
            detail: format!("recurrence produced negative value {rest}"),
        })?;
        v.push(value);
    }
    Ok(SequenceTable::from_values(SequenceKind::V, d, v))
}

/// `u_1 = 1`, and `u_n = (n!)^{d-1} v_n / 2^n` for `n > 1`.
pub fn compute_u(d: u32, n_max: usize) -> Result<SequenceTable, SequenceError> {
    let v = compute_v(d, n_max)?;
    u_from_v(&v)
}

/// Convert a `V` table into the matching `U` table.
pub fn u_from_v(v: &SequenceTable) -> Result<SequenceTable, SequenceError> {
    let d = v.dimension();
    let mut memo = FactorialMemo::new();
    let mut u = Vec::with_capacity(v.values().len());
    for (n, vn) in v.iter() {
        if n == 1 {
            u.push(BigUint::one());
            continue;
        }
        let numer = memo.factorial(n).pow(d - 1) * vn;
        let pow2 = BigUint::one() << n;
        let (q, r) = numer.div_rem(&pow2);
        if !r.is_zero() {
            return Err(SequenceError::Consistency {
                kind: SequenceKind::U,
                dimension: d,
                n,
                detail: format!("(n!)^(d-1) v_n = {numer} is not divisible by 2^{n}"),
            });
        }
        u.push(q);
    }
    Ok(SequenceTable::from_values(SequenceKind::U, d, u))
}

/// `u_n` straight from the recurrence
/// `((2n-3)!!)^{d-1} + sum_{k=2}^{n} C(n-1,k-1) ((2n-2k-1)!!/k!)^{d-1} 2^k u_k = ((2n-1)!!)^{d-1}`,
/// solved for the `k = n` term in exact rationals.
pub fn compute_u_direct(d: u32, n_max: usize) -> Result<SequenceTable, SequenceError> {
    check_dimension(d)?;
    check_range(SequenceKind::U, n_max)?;
    let mut memo = FactorialMemo::new();
    let e = d - 1;
    let mut u: Vec<BigUint> = vec![BigUint::one()];
    for n in 2..=n_max {
        let target = BigInt::from(memo.odd_double_factorial(n).pow(e));
        let mut rest = BigRational::from_integer(
            target - BigInt::from(memo.odd_double_factorial(n - 1).pow(e)),
        );
        for k in 2..n {
            let coeff = BigRational::new(
                BigInt::from(memo.odd_double_factorial(n - k).clone()),
                BigInt::from(memo.factorial(k).clone()),
            )
            .pow(e as i32);
            let binom = BigInt::from(memo.binomial(n - 1, k - 1));
            let scale = BigInt::from(BigUint::one() << k) * binom * BigInt::from(u[k - 1].clone());
            rest -= coeff * BigRational::from_integer(scale);
        }
        // k = n term: C(n-1,n-1) ((-1)!!/n!)^{d-1} 2^n u_n.
        let lead = BigRational::new(
            BigInt::from(BigUint::one() << n),
            BigInt::from(memo.factorial(n).pow(e)),
        );
        let un = rest / lead;
        let consistency = |detail: String| SequenceError::Consistency {
            kind: SequenceKind::U,
            dimension: d,
            n,
            detail,
        };
        if !un.is_integer() {
            return Err(consistency(format!("non-integral value {un}")));
        }
        if un.is_negative() {
            return Err(consistency(format!("negative value {un}")));
        }
        u.push(un.to_integer().to_biguint().expect("checked non-negative"));
    }
    Ok(SequenceTable::from_values(SequenceKind::U, d, u))
}

/// `w_0 = 1`, `w_n = u_n + (1/n) sum_{k=1}^{n-1} k C(n,k)^d u_k w_{n-k}`.
pub fn compute_w(d: u32, n_max: usize) -> Result<SequenceTable, SequenceError> {
    check_dimension(d)?;
    let u = compute_u(d, n_max.max(1))?;
    exponential_convolution(SequenceKind::W, &u, n_max, false)
}

/// Same convolution with the size-1 indecomposable (the single entry 2)
/// removed, which leaves exactly the zero-one matrices.
pub fn compute_zero_one(d: u32, n_max: usize) -> Result<SequenceTable, SequenceError> {
    check_dimension(d)?;
    let u = compute_u(d, n_max.max(1))?;
    exponential_convolution(SequenceKind::W01, &u, n_max, true)
}

/// Assemble all structures from the indecomposable table `u`.
///
/// The sum `sum_{k<n} k C(n,k)^d u_k w_{n-k}` is accumulated in integers and
/// divided by `n` once; that division must be exact.
pub fn exponential_convolution(
    kind: SequenceKind,
    u: &SequenceTable,
    n_max: usize,
    drop_size_one: bool,
) -> Result<SequenceTable, SequenceError> {
    let d = u.dimension();
    let mut memo = FactorialMemo::new();
    let u_at = |k: usize| -> BigUint {
        if drop_size_one && k == 1 {
            BigUint::zero()
        } else {
            u.get(k).cloned().expect("u table covers 1..=n_max")
        }
    };
    let mut w: Vec<BigUint> = vec![BigUint::one()];
    for n in 1..=n_max {
        let mut acc = BigUint::zero();
        for k in 1..n {
            let uk = u_at(k);
            if uk.is_zero() {
                continue;
            }
            acc += memo.binomial(n, k).pow(d) * k * uk * &w[n - k];
        }
        let (q, r) = acc.div_rem(&BigUint::from(n));
        if !r.is_zero() {
            return Err(SequenceError::Consistency {
                kind,
                dimension: d,
                n,
                detail: format!("convolution sum {acc} is not divisible by n"),
            });
        }
        w.push(u_at(n) + q);
    }
    Ok(SequenceTable::from_values(kind, d, w))
}

/// Fetch a table of the requested kind.
pub fn compute(kind: SequenceKind, d: u32, n_max: usize) -> Result<SequenceTable, SequenceError> {
    match kind {
        SequenceKind::V => compute_v(d, n_max),
        SequenceKind::U => compute_u(d, n_max),
        SequenceKind::W => compute_w(d, n_max),
        SequenceKind::W01 => compute_zero_one(d, n_max),
    }
}

/// Indecomposable 2-dimensional count: `1` at `n = 1`, else `n!(n-1)!/2`.
pub fn closed_u2(n: usize) -> BigCount {
    assert!(n >= 1, "closed_u2 is defined for n >= 1");
    if n == 1 {
        return BigUint::one();
    }
    let mut memo = FactorialMemo::new();
    memo.factorial(n).clone() * memo.factorial(n - 1) / 2u32
}

/// `w_n(2) = (n!)^2 sum_{k=0}^{n} C(2k,k) / (2^{n+k} (n-k)!)`.
///
/// The `2^{n+k}` denominator is the one that matches the coefficients of
/// `(1-z)^{-1/2} e^{z/2}` (central binomials over `4^k` times `1/(2^j j!)`).
pub fn closed_w2(n: usize) -> Result<BigCount, SequenceError> {
    let mut memo = FactorialMemo::new();
    let mut sum = BigRational::zero();
    for k in 0..=n {
        let numer = BigInt::from(memo.binomial(2 * k, k));
        let denom = BigInt::from(BigUint::one() << (n + k)) * BigInt::from(memo.factorial(n - k).clone());
        sum += BigRational::new(numer, denom);
    }
    let total = sum * BigRational::from_integer(BigInt::from(memo.factorial(n).pow(2)));
    if !total.is_integer() {
        return Err(SequenceError::Consistency {
            kind: SequenceKind::W,
            dimension: 2,
            n,
            detail: format!("closed form evaluated to non-integer {total}"),
        });
    }
    Ok(total.to_integer().to_biguint().expect("sum of positive terms"))
}

/// `v_n(2) = (2n-2)!!`.
pub fn closed_v2(n: usize) -> BigCount {
    assert!(n >= 1, "closed_v2 is defined for n >= 1");
    (1..n).fold(BigUint::one(), |acc, i| acc * (2 * i))
}

/// `sum_{k=1}^{n} C(n-1,k-1) (2n-2k-1)!! (2k-2)!! == (2n-1)!!`.
pub fn check_double_factorial_identity(n: usize) -> bool {
    if n < 1 {
        return false;
    }
    let mut memo = FactorialMemo::new();
    let lhs = (1..=n).fold(BigUint::zero(), |acc, k| {
        acc + memo.binomial(n - 1, k - 1) * memo.odd_double_factorial(n - k) * closed_v2(k)
    });
    lhs == *memo.odd_double_factorial(n)
}
