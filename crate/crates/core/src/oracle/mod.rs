//! Exact rank oracle: sample tensors from a model over a prime field and
//! compute flattening ranks by elimination.

mod field;
mod sample;
mod tensor;

pub use field::FieldPrime;
pub use sample::{
    check_membership, estimate_generic_rank, sample_tns_tensor, MAX_INTERMEDIATE_ENTRIES,
};
pub use tensor::{flattening_rank, kron, DenseTensor, MAX_ENTRIES};
