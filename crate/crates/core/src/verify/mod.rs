//! Exactness checks for concrete polynomial sequences in three dimensions.

mod enriched;
mod sequence;

pub use crate::abstractcx::euler_characteristic;
pub use enriched::{verify_enriched_complex, EnrichedReport};
pub use sequence::{
    degree0_kernel_basis, dims_csv, dims_rows, operator_matrix, slot_bases,
    verify_polynomial_complex, DimsRow, SequenceName, SequenceReport,
};
