//! Macdonald symmetric functions and the difference operators diagonalized
//! by them.

pub mod basis;
pub mod difference;

pub use basis::{check_block, macdonald_block, macdonald_norm, macdonald_p, macdonald_q, skew, DegreeBlock, SkewKind};
pub use difference::{
    apply_difference_operator, build_operator, eigencheck_difference, expected_eigenvalue, operator_d, operator_e,
    operator_g, operator_h, operator_h_mu, operator_theorem_a, partial_fraction_sum, DifferenceOperator, EigenReport,
    Family, OperatorSpec,
};
