//! Brute-force ground truth at desk scale: involution tuples, 2-magic
//! tensors, decompositions and the labelling bijection between them.

mod bijection;
mod decompose;
mod dsu;
mod involution;
mod tensor;

use thiserror::Error;

pub use bijection::{
    canonical_numbering, count_v_oracle, labeled_cells_to_tuple, labeling_tuples,
    lemma_double_count, tensor_labelings, tuple_space, tuple_to_labeled_cells, tuple_to_tensor,
    CycleNumbering, DoubleCount,
};
pub use decompose::{
    is_decomposable, is_indecomposable, is_sum_of_unit_magic, unit_magic_split, BlockSplit,
};
pub use dsu::DisjointSet;
pub use involution::{enumerate_fpf_involutions, is_transitive, FpfInvolutions, Involution};
pub use tensor::{enumerate_two_magic, for_each_two_magic, EnumerationStats, MagicTensor};

/// Default work limit: tuples for the involution oracle, search nodes for
/// tensor enumeration.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("tensor is not magic with a positive hyperplane sum: {0}")]
    NotMagic(String),
    #[error("tensor is decomposable: {0}")]
    Decomposable(String),
    #[error("{what}: work {required} exceeds budget {budget}")]
    BudgetExceeded {
        what: String,
        required: String,
        budget: u64,
    },
}
