//! Correspondence between indecomposable zero-one 2-magic tensors and
//! transitive tuples of fixed-point-free involutions.
//!
//! A *labelling* numbers the `2n` ones of a zero-one 2-magic tensor so that
//! the two ones with first coordinate `j` get labels `2j, 2j+1` (0-based).
//! Pairing labels that share their `i`-th coordinate then gives `t_i`, and
//! `t_1` is the standard involution. In the other direction, numbering the
//! cycles of `t_2..t_d` by `0..n` places element `k` at the cell whose
//! `i`-th coordinate is the number of the `t_i`-cycle holding `k`.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::decompose::is_indecomposable;
use super::involution::{enumerate_fpf_involutions, transitive_unchecked, Involution};
use super::tensor::{for_each_two_magic, MagicTensor};
use super::OracleError;
use crate::kernel::{factorial, odd_double_factorial, BigCount};

/// `numbering[k]` is the 0-based number of the cycle containing element `k`.
pub type CycleNumbering = Vec<usize>;

/// Cycles numbered in order of their smallest element.
pub fn canonical_numbering(t: &Involution) -> CycleNumbering {
    let mut numbering = vec![0; t.size()];
    for (index, (a, b)) in t.cycles().into_iter().enumerate() {
        numbering[a] = index;
        numbering[b] = index;
    }
    numbering
}

fn check_numbering(t: &Involution, numbering: &[usize]) -> Result<(), OracleError> {
    let n = t.size() / 2;
    if numbering.len() != t.size() {
        return Err(OracleError::InvalidArgument(format!(
            "numbering has {} entries for {} elements",
            numbering.len(),
            t.size()
        )));
    }
    let mut used = vec![false; n];
    for (a, b) in t.cycles() {
        let label = numbering[a];
        if label >= n || numbering[b] != label || std::mem::replace(&mut used[label], true) {
            return Err(OracleError::InvalidArgument(format!(
                "numbering is not a bijection from the cycles of {t} onto 1..={n}"
            )));
        }
    }
    Ok(())
}

/// Cell of each element `0..2n` under the given cycle numberings.
pub fn tuple_to_labeled_cells(
    involutions: &[Involution],
    numberings: &[CycleNumbering],
) -> Result<Vec<Vec<usize>>, OracleError> {
    let first = involutions
        .first()
        .ok_or_else(|| OracleError::InvalidArgument("empty involution tuple".into()))?;
    if !first.is_standard() {
        return Err(OracleError::InvalidArgument(format!(
            "first involution {first} is not the standard one"
        )));
    }
    if numberings.len() + 1 != involutions.len() {
        return Err(OracleError::InvalidArgument(format!(
            "{} numberings supplied for {} non-standard involutions",
            numberings.len(),
            involutions.len() - 1
        )));
    }
    for (t, numbering) in involutions[1..].iter().zip(numberings) {
        if t.size() != first.size() {
            return Err(OracleError::InvalidArgument(
                "involutions act on different ground sets".into(),
            ));
        }
        check_numbering(t, numbering)?;
    }
    Ok((0..first.size())
        .map(|k| {
            std::iter::once(k / 2)
                .chain(numberings.iter().map(|numbering| numbering[k]))
                .collect()
        })
        .collect())
}

/// The 2-magic tensor built from a tuple `(t_1 = standard, t_2, ..., t_d)`.
pub fn tuple_to_tensor(
    involutions: &[Involution],
    numberings: &[CycleNumbering],
) -> Result<MagicTensor, OracleError> {
    let cells = tuple_to_labeled_cells(involutions, numberings)?;
    let n = involutions[0].size() / 2;
    MagicTensor::new(involutions.len(), n, cells.into_iter().map(|c| (c, 1)))
}

/// Recover `t_1, ..., t_d` from labelled cells: `t_i` pairs the two labels
/// sharing each `i`-th coordinate value.
pub fn labeled_cells_to_tuple(cells: &[Vec<usize>]) -> Result<Vec<Involution>, OracleError> {
    let m = cells.len();
    let d = cells.first().map(Vec::len).unwrap_or(0);
    if m == 0 || m % 2 != 0 || d == 0 {
        return Err(OracleError::InvalidArgument("need an even, non-zero number of labelled cells".into()));
    }
    let n = m / 2;
    (0..d)
        .map(|axis| {
            let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
            for (label, cell) in cells.iter().enumerate() {
                let c = *cell.get(axis).filter(|&&c| c < n).ok_or_else(|| {
                    OracleError::InvalidArgument(format!("bad cell {cell:?}"))
                })?;
                holders[c].push(label);
            }
            let mut partner = vec![0; m];
            for (value, pair) in holders.iter().enumerate() {
                let &[a, b] = pair.as_slice() else {
                    return Err(OracleError::InvalidArgument(format!(
                        "hyperplane {} = {} holds {} ones, expected 2",
                        axis + 1,
                        value + 1,
                        pair.len()
                    )));
                };
                partner[a] = b;
                partner[b] = a;
            }
            Involution::new(partner)
        })
        .collect()
}

/// All `2^n` labellings of a zero-one 2-magic tensor, each turned into the
/// involution tuple it determines.
pub fn labeling_tuples(t: &MagicTensor) -> Result<Vec<Vec<Involution>>, OracleError> {
    if !t.is_two_magic() || !t.is_zero_one() {
        return Err(OracleError::InvalidArgument(format!(
            "labellings need a zero-one 2-magic tensor, got {t}"
        )));
    }
    let n = t.size();
    if n >= usize::BITS as usize - 1 {
        return Err(OracleError::InvalidArgument(format!("size {n} too large to label")));
    }
    let slices: Vec<[Vec<usize>; 2]> = (0..n)
        .map(|j| {
            let mut it = t.slice(j).map(|(c, _)| c.clone());
            [it.next().expect("two ones"), it.next().expect("two ones")]
        })
        .collect();
    (0..1usize << n)
        .map(|mask| {
            let cells: Vec<Vec<usize>> = slices
                .iter()
                .enumerate()
                .flat_map(|(j, [a, b])| {
                    if mask >> j & 1 == 0 {
                        [a.clone(), b.clone()]
                    } else {
                        [b.clone(), a.clone()]
                    }
                })
                .collect();
            labeled_cells_to_tuple(&cells)
        })
        .collect()
}

/// Number of labellings of an indecomposable zero-one 2-magic tensor that
/// yield a transitive tuple with standard first involution (always `2^n`).
pub fn tensor_labelings(t: &MagicTensor) -> Result<u64, OracleError> {
    if t.size() < 2 {
        return Err(OracleError::InvalidArgument(
            "labellings are only defined for size n >= 2".into(),
        ));
    }
    if !t.is_zero_one() || !t.is_two_magic() {
        return Err(OracleError::InvalidArgument(format!(
            "expected a zero-one 2-magic tensor, got {t}"
        )));
    }
    if !is_indecomposable(t)? {
        return Err(OracleError::Decomposable(t.to_string()));
    }
    let valid = labeling_tuples(t)?
        .iter()
        .filter(|tuple| tuple[0].is_standard() && transitive_unchecked(tuple.iter()))
        .count();
    Ok(valid as u64)
}

/// `((2n-1)!!)^{d-1}`, the size of the tuple search space.
pub fn tuple_space(d: u32, n: usize) -> BigCount {
    odd_double_factorial(n as i64)
        .expect("n is non-negative")
        .pow(d - 1)
}

/// Count `(t_2, ..., t_d)` such that `<t_1, ..., t_d>` is transitive, by
/// exhausting all fixed-point-free tuples. Work is split over the choice of
/// `t_2`; the total does not depend on the split.
pub fn count_v_oracle(d: u32, n: usize, budget: u64) -> Result<BigCount, OracleError> {
    if d < 2 || n < 1 {
        return Err(OracleError::InvalidArgument(format!(
            "count_v_oracle needs d >= 2 and n >= 1, got d={d}, n={n}"
        )));
    }
    let space = tuple_space(d, n);
    if space > BigUint::from(budget) {
        return Err(OracleError::BudgetExceeded {
            what: format!("v oracle d={d} n={n}"),
            required: space.to_string(),
            budget,
        });
    }
    let all: Vec<Involution> = enumerate_fpf_involutions(2 * n)?.collect();
    let standard = Involution::standard(n);
    let rest = (d - 2) as usize;
    let count: u64 = all
        .par_iter()
        .map(|second| {
            let mut digits = vec![0usize; rest];
            let mut tuple: Vec<&Involution> = Vec::with_capacity(d as usize);
            let mut hits = 0u64;
            loop {
                tuple.clear();
                tuple.push(&standard);
                tuple.push(second);
                tuple.extend(digits.iter().map(|&i| &all[i]));
                if transitive_unchecked(tuple.iter().copied()) {
                    hits += 1;
                }
                let mut i = rest;
                loop {
                    if i == 0 {
                        return hits;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < all.len() {
                        break;
                    }
                    digits[i] = 0;
                }
            }
        })
        .sum();
    Ok(BigUint::from(count))
}

/// Both sides of the labelling double count, enumerated independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCount {
    pub dimension: u32,
    pub size: usize,
    /// Indecomposable zero-one tensors found by direct enumeration.
    pub indecomposable_tensors: u64,
    /// Sum of [`tensor_labelings`] over those tensors.
    pub labelled_pairs: u64,
    /// Transitive tuples found by [`count_v_oracle`].
    pub transitive_tuples: BigCount,
    /// `indecomposable_tensors * 2^n`.
    pub tensor_side: BigCount,
    /// `transitive_tuples * (n!)^{d-1}`.
    pub tuple_side: BigCount,
}

impl DoubleCount {
    pub fn holds(&self) -> bool {
        self.tensor_side == self.tuple_side
            && BigUint::from(self.labelled_pairs) == self.tensor_side
    }
}

pub fn lemma_double_count(d: u32, n: usize, budget: u64) -> Result<DoubleCount, OracleError> {
    if n < 2 {
        return Err(OracleError::InvalidArgument(
            "the double count needs n >= 2".into(),
        ));
    }
    let mut indecomposable = 0u64;
    let mut labelled = 0u64;
    let mut failure = None;
    for_each_two_magic(d as usize, n, true, budget, |t| {
        if failure.is_some() {
            return;
        }
        match is_indecomposable(t) {
            Ok(true) => {
                indecomposable += 1;
                match tensor_labelings(t) {
                    Ok(count) => labelled += count,
                    Err(e) => failure = Some(e),
                }
            }
            Ok(false) => {}
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let transitive = count_v_oracle(d, n, budget)?;
    let tensor_side = BigUint::from(indecomposable) << n;
    let tuple_side = &transitive * factorial(n as u64).pow(d - 1);
    Ok(DoubleCount {
        dimension: d,
        size: n,
        indecomposable_tensors: indecomposable,
        labelled_pairs: labelled,
        transitive_tuples: transitive,
        tensor_side,
        tuple_side,
    })
}
