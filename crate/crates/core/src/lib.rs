//! Combinatorial invariants of tree tensor network state models.
//!
//! For a tree `T`, an edge function `f` and a leaf subset `A`, the generic
//! flattening rank of a tensor in `TNS(T, f)` along `A` is governed by the
//! minimal monochromatic cuts of `T` with respect to `A`. This crate computes
//! those cuts ([`cuts`]), the rank predictions and model comparisons built on
//! them ([`model`]), the tensor-train versus hierarchical-Tucker exponent
//! analysis ([`hackbusch`]), and an exact rank oracle over a prime field that
//! samples tensors from a model and measures their flattening ranks
//! ([`oracle`]).

pub mod cuts;
pub mod error;
pub mod hackbusch;
pub mod json;
pub mod model;
pub mod oracle;
pub mod tree;

pub use cuts::{
    brute_force_min_mono, max_colour_cut, min_mono_cut, min_product_cut, verify_colour_cut,
    verify_mono_cut, Cut, CutResult, ProductCut,
};
pub use error::{Error, ErrorKind, Result};
pub use hackbusch::{
    hackbusch_verdict, landmark, min_exponent_over_permutations, tt_exponent, PermutationMode,
    PermutationScan, TtExponent, Verdict,
};
pub use model::{
    compare_models, construct_hard_subset, optimalize, predict_rank, ComparisonReport,
    EdgeFunction, EdgeRequirement, RankPrediction, TnsModel,
};
pub use oracle::{
    check_membership, estimate_generic_rank, flattening_rank, kron, sample_tns_tensor, DenseTensor,
    FieldPrime,
};
pub use tree::{build_almost_perfect_binary, build_train_track, parse_tree, EdgeId, LeafSet, Tree};
