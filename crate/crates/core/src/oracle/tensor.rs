//! Sparse `d`-dimensional arrays over the non-negative integers and a
//! backtracking enumerator for the 2-magic ones.

use std::collections::BTreeMap;
use std::fmt;

use super::OracleError;

/// A size-`n`, `d`-dimensional array stored as its non-zero cells.
///
/// Coordinates are 0-based; `Display` prints them 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MagicTensor {
    dimension: usize,
    size: usize,
    cells: BTreeMap<Vec<usize>, u32>,
}

impl MagicTensor {
    /// Collect cells; repeated coordinates add up and zero entries are dropped.
    pub fn new<I>(dimension: usize, size: usize, cells: I) -> Result<Self, OracleError>
    where
        I: IntoIterator<Item = (Vec<usize>, u32)>,
    {
        if dimension == 0 || size == 0 {
            return Err(OracleError::InvalidArgument(format!(
                "tensor needs d >= 1 and n >= 1, got d={dimension}, n={size}"
            )));
        }
        let mut map = BTreeMap::new();
        for (coord, value) in cells {
            if coord.len() != dimension || coord.iter().any(|&c| c >= size) {
                return Err(OracleError::InvalidArgument(format!(
                    "cell {coord:?} is not a coordinate of a {dimension}-dimensional size-{size} tensor"
                )));
            }
            if value > 0 {
                *map.entry(coord).or_insert(0) += value;
            }
        }
        Ok(Self {
            dimension,
            size,
            cells: map,
        })
    }

    /// Zero-one tensor from 1-based positions of its ones.
    pub fn from_ones_one_based(
        dimension: usize,
        size: usize,
        ones: &[&[usize]],
    ) -> Result<Self, OracleError> {
        let mut cells = Vec::with_capacity(ones.len());
        for pos in ones {
            if pos.contains(&0) {
                return Err(OracleError::InvalidArgument(format!(
                    "1-based position {pos:?} contains 0"
                )));
            }
            cells.push((pos.iter().map(|c| c - 1).collect(), 1));
        }
        Self::new(dimension, size, cells)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn cells(&self) -> &BTreeMap<Vec<usize>, u32> {
        &self.cells
    }

    pub fn get(&self, coord: &[usize]) -> u32 {
        self.cells.get(coord).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.cells.values().map(|&v| u64::from(v)).sum()
    }

    pub fn is_zero_one(&self) -> bool {
        self.cells.values().all(|&v| v == 1)
    }

    /// `sums[axis][value]`: total of the cells whose `axis` coordinate is `value`.
    pub fn hyperplane_sums(&self) -> Vec<Vec<u64>> {
        let mut sums = vec![vec![0u64; self.size]; self.dimension];
        for (coord, &v) in &self.cells {
            for (axis, &c) in coord.iter().enumerate() {
                sums[axis][c] += u64::from(v);
            }
        }
        sums
    }

    /// The common hyperplane sum, if all `d * n` of them agree.
    pub fn magic_sum(&self) -> Option<u64> {
        let sums = self.hyperplane_sums();
        let s = sums[0][0];
        sums.iter().flatten().all(|&x| x == s).then_some(s)
    }

    pub fn is_s_magic(&self, s: u64) -> bool {
        self.magic_sum() == Some(s)
    }

    pub fn is_two_magic(&self) -> bool {
        self.is_s_magic(2)
    }

    /// Cells whose first coordinate is `value`, in coordinate order.
    pub fn slice(&self, value: usize) -> impl Iterator<Item = (&Vec<usize>, &u32)> {
        self.cells.iter().filter(move |(c, _)| c[0] == value)
    }

    /// Entrywise sum of two tensors of the same shape.
    pub fn plus(&self, other: &MagicTensor) -> Result<MagicTensor, OracleError> {
        if self.dimension != other.dimension || self.size != other.size {
            return Err(OracleError::InvalidArgument("tensor shapes differ".into()));
        }
        let cells = self
            .cells
            .iter()
            .chain(other.cells.iter())
            .map(|(c, &v)| (c.clone(), v));
        MagicTensor::new(self.dimension, self.size, cells)
    }

    /// Relabel the values along `axis` by `perm` (a permutation of `0..n`).
    pub fn permute_axis(&self, axis: usize, perm: &[usize]) -> MagicTensor {
        let cells = self.cells.iter().map(|(c, &v)| {
            let mut c = c.clone();
            c[axis] = perm[c[axis]];
            (c, v)
        });
        MagicTensor::new(self.dimension, self.size, cells).expect("permutation keeps cells in range")
    }
}

impl fmt::Display for MagicTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (coord, v) in &self.cells {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let labels: Vec<String> = coord.iter().map(|c| (c + 1).to_string()).collect();
            write!(f, "({})", labels.join(","))?;
            if *v != 1 {
                write!(f, "={v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumerationStats {
    pub tensors: u64,
    pub nodes: u64,
}

struct Search<'a, F> {
    dimension: usize,
    size: usize,
    max_entry: u32,
    budget: u64,
    nodes: u64,
    tensors: u64,
    residual: Vec<Vec<u32>>,
    coord: Vec<usize>,
    chosen: Vec<(Vec<usize>, u32)>,
    total_cells: usize,
    visit: &'a mut F,
}

impl<F: FnMut(&MagicTensor)> Search<'_, F> {
    fn decode(&mut self, mut index: usize) {
        for axis in (0..self.dimension).rev() {
            self.coord[axis] = index % self.size;
            index /= self.size;
        }
    }

    fn run(&mut self, index: usize) -> Result<(), OracleError> {
        if index == self.total_cells {
            let tensor = MagicTensor::new(self.dimension, self.size, self.chosen.iter().cloned())
                .expect("search only produces in-range cells");
            self.tensors += 1;
            (self.visit)(&tensor);
            return Ok(());
        }
        self.decode(index);
        let coord = self.coord.clone();
        let cap = coord
            .iter()
            .enumerate()
            .map(|(axis, &c)| self.residual[axis][c])
            .min()
            .unwrap_or(0)
            .min(self.max_entry);
        let last = self.size - 1;
        for value in (0..=cap).rev() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OracleError::BudgetExceeded {
                    what: format!("2-magic enumeration d={} n={}", self.dimension, self.size),
                    required: format!("> {}", self.budget),
                    budget: self.budget,
                });
            }
            for (axis, &c) in coord.iter().enumerate() {
                self.residual[axis][c] -= value;
            }
            // A cell is the lexicographically last one of the hyperplane
            // (axis, coord[axis]) exactly when every other coordinate is n-1;
            // that hyperplane must be full once it is passed.
            let closes_ok = (0..self.dimension).all(|axis| {
                let is_last = coord
                    .iter()
                    .enumerate()
                    .all(|(other, &c)| other == axis || c == last);
                !is_last || self.residual[axis][coord[axis]] == 0
            });
            if closes_ok {
                if value > 0 {
                    self.chosen.push((coord.clone(), value));
                }
                let result = self.run(index + 1);
                if value > 0 {
                    self.chosen.pop();
                }
                result?;
            }
            for (axis, &c) in coord.iter().enumerate() {
                self.residual[axis][c] += value;
            }
        }
        Ok(())
    }
}

/// Visit every `d`-dimensional size-`n` 2-magic tensor exactly once.
///
/// Cells are assigned in lexicographic coordinate order; an entry is capped by
/// the smallest residual sum of the hyperplanes through its cell, and each
/// hyperplane is required to be exhausted at its last cell. Zero-one mode caps
/// entries at 1. Every tried assignment counts as one node against `budget`.
pub fn for_each_two_magic<F>(
    dimension: usize,
    size: usize,
    zero_one_only: bool,
    budget: u64,
    mut visit: F,
) -> Result<EnumerationStats, OracleError>
where
    F: FnMut(&MagicTensor),
{
    if dimension == 0 || size == 0 {
        return Err(OracleError::InvalidArgument(format!(
            "enumeration needs d >= 1 and n >= 1, got d={dimension}, n={size}"
        )));
    }
    let total_cells = u32::try_from(dimension)
        .ok()
        .and_then(|d| size.checked_pow(d))
        .ok_or_else(|| OracleError::BudgetExceeded {
            what: format!("2-magic enumeration d={dimension} n={size}"),
            required: "n^d cells overflow".into(),
            budget,
        })?;
    let mut search = Search {
        dimension,
        size,
        max_entry: if zero_one_only { 1 } else { 2 },
        budget,
        nodes: 0,
        tensors: 0,
        residual: vec![vec![2; size]; dimension],
        coord: vec![0; dimension],
        chosen: Vec::new(),
        total_cells,
        visit: &mut visit,
    };
    search.run(0)?;
    Ok(EnumerationStats {
        tensors: search.tensors,
        nodes: search.nodes,
    })
}

/// Collect the tensors visited by [`for_each_two_magic`].
pub fn enumerate_two_magic(
    dimension: usize,
    size: usize,
    zero_one_only: bool,
    budget: u64,
) -> Result<Vec<MagicTensor>, OracleError> {
    let mut out = Vec::new();
    for_each_two_magic(dimension, size, zero_one_only, budget, |t| out.push(t.clone()))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_BUDGET;
    use std::collections::BTreeSet;

    /// Independent brute force: every assignment of {0,1,2} to all cells.
    fn brute_force_count(d: usize, n: usize, zero_one: bool) -> usize {
        let cells = n.pow(d as u32);
        let base = if zero_one { 2u64 } else { 3 };
        let mut count = 0;
        for code in 0..base.pow(cells as u32) {
            let mut c = code;
            let mut entries = Vec::new();
            for idx in 0..cells {
                let v = (c % base) as u32;
                c /= base;
                let mut coord = vec![0; d];
                let mut x = idx;
                for axis in (0..d).rev() {
                    coord[axis] = x % n;
                    x /= n;
                }
                entries.push((coord, v));
            }
            if MagicTensor::new(d, n, entries).unwrap().is_two_magic() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn counts_match_brute_force() {
        for (d, n) in [(1, 1), (1, 3), (2, 1), (2, 2), (2, 3), (3, 2)] {
            for zero_one in [false, true] {
                let found = enumerate_two_magic(d, n, zero_one, DEFAULT_BUDGET).unwrap();
                assert_eq!(found.len(), brute_force_count(d, n, zero_one), "d={d} n={n}");
                let distinct: BTreeSet<_> = found.iter().collect();
                assert_eq!(distinct.len(), found.len());
                assert!(found.iter().all(MagicTensor::is_two_magic));
                assert!(!zero_one || found.iter().all(MagicTensor::is_zero_one));
            }
        }
    }

    #[test]
    fn table_values_small() {
        assert_eq!(enumerate_two_magic(2, 2, false, DEFAULT_BUDGET).unwrap().len(), 3);
        assert_eq!(enumerate_two_magic(3, 2, false, DEFAULT_BUDGET).unwrap().len(), 12);
        let stats = for_each_two_magic(2, 4, true, DEFAULT_BUDGET, |_| {}).unwrap();
        assert_eq!(stats.tensors, 90);
    }

    #[test]
    fn budget_is_enforced() {
        let err = for_each_two_magic(2, 4, false, 100, |_| {}).unwrap_err();
        assert!(matches!(err, OracleError::BudgetExceeded { budget: 100, .. }));
        assert!(enumerate_two_magic(0, 2, false, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn hyperplane_bookkeeping() {
        let t = MagicTensor::from_ones_one_based(
            3,
            3,
            &[&[1, 1, 1], &[1, 2, 3], &[2, 1, 2], &[2, 2, 1], &[3, 3, 2], &[3, 3, 3]],
        )
        .unwrap();
        assert_eq!(t.magic_sum(), Some(2));
        assert!(t.is_zero_one());
        assert_eq!(t.total(), 6);
        assert_eq!(t.to_string(), "(1,1,1) (1,2,3) (2,1,2) (2,2,1) (3,3,2) (3,3,3)");
        let doubled = t.plus(&t).unwrap();
        assert_eq!(doubled.magic_sum(), Some(4));
        assert_eq!(doubled.get(&[0, 0, 0]), 2);
        let lopsided = MagicTensor::new(2, 2, [(vec![0, 0], 2)]).unwrap();
        assert_eq!(lopsided.magic_sum(), None);
        assert!(MagicTensor::new(2, 2, [(vec![0, 2], 1)]).is_err());
        assert!(MagicTensor::from_ones_one_based(2, 2, &[&[0, 1]]).is_err());
    }
}
