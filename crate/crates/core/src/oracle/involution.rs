//! Fixed-point-free involutions on `{0, ..., 2n-1}` and their enumeration.
//!
//! Elements are 0-based internally; [`fmt::Display`] prints the usual
//! 1-based cycle notation, e.g. `(1,2)(3,4)`.

use std::fmt;

use super::dsu::DisjointSet;
use super::OracleError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Involution {
    partner: Vec<usize>,
}

impl Involution {
    /// Validate a partner array: `partner[partner[i]] == i != partner[i]`.
    pub fn new(partner: Vec<usize>) -> Result<Self, OracleError> {
        let m = partner.len();
        if m == 0 || m % 2 != 0 {
            return Err(OracleError::InvalidArgument(format!(
                "involution ground set must have positive even size, got {m}"
            )));
        }
        for (i, &p) in partner.iter().enumerate() {
            if p >= m || p == i || partner[p] != i {
                return Err(OracleError::InvalidArgument(format!(
                    "partner array is not a fixed-point-free involution at element {}",
                    i + 1
                )));
            }
        }
        Ok(Self { partner })
    }

    /// Build from 1-based transpositions, e.g. `[(1,3), (2,4)]`.
    pub fn from_cycles(cycles: &[(usize, usize)]) -> Result<Self, OracleError> {
        let m = 2 * cycles.len();
        let mut partner = vec![usize::MAX; m];
        for &(a, b) in cycles {
            if a == 0 || b == 0 || a > m || b > m {
                return Err(OracleError::InvalidArgument(format!(
                    "cycle ({a},{b}) out of range 1..={m}"
                )));
            }
            if partner[a - 1] != usize::MAX || partner[b - 1] != usize::MAX {
                return Err(OracleError::InvalidArgument(format!(
                    "cycle ({a},{b}) reuses an element"
                )));
            }
            partner[a - 1] = b - 1;
            partner[b - 1] = a - 1;
        }
        Self::new(partner)
    }

    /// `(1,2)(3,4)...(2n-1,2n)`.
    pub fn standard(n: usize) -> Self {
        assert!(n >= 1, "standard involution needs n >= 1");
        let partner = (0..2 * n).map(|i| i ^ 1).collect();
        Self { partner }
    }

    pub fn is_standard(&self) -> bool {
        self.partner.iter().enumerate().all(|(i, &p)| p == i ^ 1)
    }

    /// Size of the ground set, `2n`.
    pub fn size(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// 0-based 2-cycles `(a, b)` with `a < b`, ordered by `a`.
    pub fn cycles(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(i, &p)| i < p)
            .map(|(i, &p)| (i, p))
            .collect()
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.cycles() {
            write!(f, "({},{})", a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// Lazily yields every fixed-point-free involution on `{1..m}` exactly once.
///
/// Order: the smallest unmatched element is paired with each remaining
/// element in increasing order, recursively. The state is a mixed-radix
/// counter whose `i`-th digit picks among the `m - 2i - 1` candidates.
#[derive(Debug, Clone)]
pub struct FpfInvolutions {
    digits: Vec<usize>,
    done: bool,
}

impl FpfInvolutions {
    fn radix(&self, i: usize) -> usize {
        2 * (self.digits.len() - i) - 1
    }

    fn decode(&self) -> Involution {
        let m = 2 * self.digits.len();
        let mut remaining: Vec<usize> = (0..m).collect();
        let mut partner = vec![0; m];
        for &digit in &self.digits {
            let a = remaining.remove(0);
            let b = remaining.remove(digit);
            partner[a] = b;
            partner[b] = a;
        }
        Involution { partner }
    }
}

impl Iterator for FpfInvolutions {
    type Item = Involution;

    fn next(&mut self) -> Option<Involution> {
        if self.done {
            return None;
        }
        let current = self.decode();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.radix(i) {
                break;
            }
            self.digits[i] = 0;
        }
        Some(current)
    }
}

/// All fixed-point-free involutions on `{1..m}`; `m` must be even and at least 2.
pub fn enumerate_fpf_involutions(m: usize) -> Result<FpfInvolutions, OracleError> {
    if m < 2 || m % 2 != 0 {
        return Err(OracleError::InvalidArgument(format!(
            "ground set size must be even and >= 2, got {m}"
        )));
    }
    Ok(FpfInvolutions {
        digits: vec![0; m / 2],
        done: false,
    })
}

/// Whether `<t_1, ..., t_d>` acts transitively on the common ground set.
///
/// Involutions are products of disjoint transpositions, so the orbits of the
/// generated group are the connected components of the graph whose edges
/// are all those transpositions.
pub fn is_transitive(involutions: &[Involution]) -> Result<bool, OracleError> {
    let first = involutions
        .first()
        .ok_or_else(|| OracleError::InvalidArgument("empty involution list".into()))?;
    let m = first.size();
    if let Some(bad) = involutions.iter().find(|t| t.size() != m) {
        return Err(OracleError::InvalidArgument(format!(
            "involutions act on different ground sets ({m} vs {})",
            bad.size()
        )));
    }
    Ok(transitive_unchecked(involutions))
}

pub(crate) fn transitive_unchecked<'a, I>(involutions: I) -> bool
where
    I: IntoIterator<Item = &'a Involution>,
    I::IntoIter: Clone,
{
    let iter = involutions.into_iter();
    let Some(m) = iter.clone().next().map(Involution::size) else {
        return false;
    };
    let mut dsu = DisjointSet::new(m);
    for t in iter {
        for (a, b) in t.cycles() {
            dsu.union(a, b);
            if dsu.components() == 1 {
                return true;
            }
        }
    }
    dsu.components() == 1
}
