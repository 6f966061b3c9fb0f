//! Exact enumeration of `d`-dimensional 2-magic matrices: arrays over the
//! non-negative integers in which every hyperplane (all cells with one
//! coordinate fixed) sums to 2.
//!
//! * [`kernel`]: big-integer factorials, double factorials and ratios.
//! * [`sequence`]: the counting recurrences and closed forms.
//! * [`oracle`]: brute-force enumeration used as independent ground truth.
//! * [`asymptotics`]: exact and high-precision growth-rate diagnostics.
//! * [`cli`]: the command-line layer (cache, output formats, reports).

pub mod asymptotics;
pub mod cli;
pub mod kernel;
pub mod oracle;
pub mod sequence;

pub use kernel::{BigCount, ExactRatio};
pub use sequence::{SequenceKind, SequenceTable};
