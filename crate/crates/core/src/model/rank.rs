use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::TnsModel;
use crate::cuts::{min_product_cut, Cut};
use crate::error::Result;
use crate::tree::LeafSet;

/// Predicted flattening rank of a generic tensor in a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankPrediction {
    #[serde(serialize_with = "crate::json::big")]
    pub value: BigUint,
    /// `true` when `value` is the generic rank, `false` when it is only an upper bound.
    pub exact: bool,
    pub witness: Cut,
}

/// Minimum over monochromatic cuts `M` for `a` of `prod_{e in M} f(e)`.
///
/// This bounds the `a`-flattening rank of every tensor in the model. It is the
/// generic rank (`exact`) when `f` is a constant `r` no larger than any leaf
/// dimension, where it equals `r^minmono`, and trivially when `a` is empty or
/// all leaves.
pub fn predict_rank(model: &TnsModel, a: &LeafSet) -> Result<RankPrediction> {
    let tree = model.tree();
    tree.check_leaf_set(a)?;
    let cut = min_product_cut(tree, a, model.f())?;
    let trivial = a.is_empty() || a.len() == tree.n();
    let constant_fits = model
        .f()
        .constant_value()
        .is_some_and(|r| model.dims().iter().all(|&d| r <= d));
    Ok(RankPrediction {
        value: cut.product,
        exact: trivial || constant_fits,
        witness: cut.witness,
    })
}

/// Lowers `f` to the fixed point of
/// `f(e) <- min(f(e), best cut product for the split of e, dims on either side)`.
///
/// Every lowering is implied by the min-product rank bound or by the size of the
/// flattening matrix, so the model describes the same tensors. The result is
/// pointwise `<=` the input, at least 1, and a fixed point of this function.
pub fn optimalize(model: &TnsModel) -> Result<TnsModel> {
    let tree = model.tree();
    let mut f = model.f().clone();
    let side_dim =
        |side: &LeafSet| -> BigUint { side.iter().map(|l| BigUint::from(model.dim(l))).product() };
    loop {
        let mut changed = false;
        for edge in tree.edges() {
            let current = f.get(edge).expect("function covers the tree");
            let left = tree.leaves_left_of(edge)?;
            let right = left.complement(tree.n());
            let candidates = [
                min_product_cut(tree, &left, &f)?.product,
                side_dim(&left),
                side_dim(&right),
            ];
            let lowest = candidates
                .iter()
                .filter_map(|c| c.to_u64())
                .min()
                .unwrap_or(current)
                .min(current);
            if lowest < current {
                f.set(edge, lowest);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    model.with_function(f)
}
