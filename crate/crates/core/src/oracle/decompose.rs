//! Block decompositions and splitting into 1-magic (permutation) tensors.

use super::dsu::DisjointSet;
use super::tensor::MagicTensor;
use super::OracleError;

/// Per axis, a bipartition `(first, second)` of `0..n`.
///
/// A valid witness has every part non-empty and all `first` parts of the
/// same size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSplit {
    pub parts: Vec<(Vec<usize>, Vec<usize>)>,
}

impl BlockSplit {
    /// Check shape: covering, disjoint, non-empty, equal first-part sizes.
    pub fn is_well_formed(&self, size: usize) -> bool {
        let Some(first_len) = self.parts.first().map(|(a, _)| a.len()) else {
            return false;
        };
        self.parts.iter().all(|(a, b)| {
            let mut seen = vec![false; size];
            let covers = a.iter().chain(b).all(|&x| {
                x < size && !std::mem::replace(&mut seen[x], true)
            });
            covers
                && seen.iter().all(|&s| s)
                && !a.is_empty()
                && !b.is_empty()
                && a.len() == first_len
        })
    }

    /// Whether every support cell of `t` lies in `first x ... x first` or
    /// in `second x ... x second`.
    pub fn confines(&self, t: &MagicTensor) -> bool {
        if self.parts.len() != t.dimension() || !self.is_well_formed(t.size()) {
            return false;
        }
        t.cells().keys().all(|coord| {
            let in_first = |axis: usize| self.parts[axis].0.contains(&coord[axis]);
            let all_first = (0..coord.len()).all(in_first);
            let all_second = (0..coord.len()).all(|axis| !in_first(axis));
            all_first || all_second
        })
    }
}

fn require_magic(t: &MagicTensor) -> Result<u64, OracleError> {
    match t.magic_sum() {
        Some(s) if s >= 1 => Ok(s),
        _ => Err(OracleError::NotMagic(t.to_string())),
    }
}

/// A decomposition witness if `t` is decomposable, `None` otherwise.
///
/// Connects the `d * n` hyperplanes through each support cell. In a magic
/// tensor with positive sum every hyperplane holds a cell, and a component
/// carrying total weight `W` meets exactly `W / s` hyperplanes on every axis,
/// so any component against the rest is a witness with equal part sizes.
pub fn is_decomposable(t: &MagicTensor) -> Result<Option<BlockSplit>, OracleError> {
    require_magic(t)?;
    let (d, n) = (t.dimension(), t.size());
    let slot = |axis: usize, value: usize| axis * n + value;
    let mut dsu = DisjointSet::new(d * n);
    for coord in t.cells().keys() {
        for axis in 1..d {
            dsu.union(slot(0, coord[0]), slot(axis, coord[axis]));
        }
    }
    if dsu.components() == 1 {
        return Ok(None);
    }
    let root = dsu.find(slot(0, 0));
    let parts = (0..d)
        .map(|axis| {
            (0..n).partition::<Vec<usize>, _>(|&value| dsu.find(slot(axis, value)) == root)
        })
        .collect();
    Ok(Some(BlockSplit { parts }))
}

pub fn is_indecomposable(t: &MagicTensor) -> Result<bool, OracleError> {
    Ok(is_decomposable(t)?.is_none())
}

/// Split a 2-magic `t` as `p1 + p2` with both parts 1-magic, if possible.
///
/// Each first-coordinate slice holds either one cell of entry 2 (which both
/// parts must take) or two cells of entry 1 (one for each part). Choices are
/// made slice by slice, rejecting as soon as `p1` hits a hyperplane twice.
pub fn unit_magic_split(t: &MagicTensor) -> Result<Option<(MagicTensor, MagicTensor)>, OracleError> {
    if !t.is_two_magic() {
        return Err(OracleError::NotMagic(t.to_string()));
    }
    let (d, n) = (t.dimension(), t.size());
    let slices: Vec<Vec<&Vec<usize>>> = (0..n)
        .map(|j| {
            t.slice(j)
                .flat_map(|(c, &v)| std::iter::repeat_n(c, v as usize))
                .collect()
        })
        .collect();
    let mut hits = vec![vec![false; n]; d];
    let mut picked: Vec<usize> = Vec::with_capacity(n);

    fn search(
        j: usize,
        slices: &[Vec<&Vec<usize>>],
        hits: &mut [Vec<bool>],
        picked: &mut Vec<usize>,
    ) -> bool {
        if j == slices.len() {
            return true;
        }
        let options: &[&Vec<usize>] = &slices[j];
        let distinct = if options[0] == options[1] { 1 } else { 2 };
        for (choice, coord) in options.iter().enumerate().take(distinct) {
            if coord.iter().enumerate().any(|(axis, &c)| hits[axis][c]) {
                continue;
            }
            for (axis, &c) in coord.iter().enumerate() {
                hits[axis][c] = true;
            }
            picked.push(choice);
            if search(j + 1, slices, hits, picked) {
                return true;
            }
            picked.pop();
            for (axis, &c) in coord.iter().enumerate() {
                hits[axis][c] = false;
            }
        }
        false
    }

    if !search(0, &slices, &mut hits, &mut picked) {
        return Ok(None);
    }
    let first = picked.iter().enumerate().map(|(j, &c)| (slices[j][c].clone(), 1));
    let second = picked.iter().enumerate().map(|(j, &c)| (slices[j][1 - c].clone(), 1));
    Ok(Some((
        MagicTensor::new(d, n, first)?,
        MagicTensor::new(d, n, second)?,
    )))
}

/// Whether a 2-magic tensor is the sum of two 1-magic tensors.
pub fn is_sum_of_unit_magic(t: &MagicTensor) -> Result<bool, OracleError> {
    Ok(unit_magic_split(t)?.is_some())
}
