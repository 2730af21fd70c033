use num_bigint::BigUint;
use serde::Serialize;

use super::TnsModel;
use crate::cuts::{min_product_cut, Cut};
use crate::error::{Error, Result};
use crate::tree::EdgeId;

/// The bound one edge of the second model must meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeRequirement {
    pub edge: EdgeId,
    /// `g(edge)` in the second model.
    pub bound: u64,
    /// Best cut product in the first model for the split of `edge`.
    #[serde(serialize_with = "crate::json::big")]
    pub required: BigUint,
    pub pass: bool,
    /// Cut in the first model's tree attaining `required`.
    pub cut: Cut,
}

/// Edge-by-edge check of a necessary condition for `TNS(T1, f) ⊆ TNS(T2, g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    /// All edges pass. This is necessary for inclusion, not sufficient.
    pub necessary_condition_holds: bool,
    /// First failing edge; its presence proves `TNS(T1, f) ⊄ TNS(T2, g)`.
    pub witness: Option<EdgeId>,
    pub edges: Vec<EdgeRequirement>,
    pub note: &'static str,
}

const NOTE_PASS: &str =
    "necessary condition for inclusion holds; inclusion itself is not established";
const NOTE_FAIL: &str =
    "necessary condition fails at the witness edge; the first model is not contained in the second";

/// For every edge `ε` of `second`'s tree, requires `g(ε)` to be at least the
/// cheapest monochromatic cut product of `first` for the leaf split of `ε`.
///
/// Any tensor of the first model has that split's flattening rank bounded by
/// the cut product, and generically reaching it, so a smaller `g(ε)` rules out
/// inclusion. The cut is taken in the first tree, where `f` lives.
pub fn compare_models(first: &TnsModel, second: &TnsModel) -> Result<ComparisonReport> {
    if first.tree().n() != second.tree().n() {
        return Err(Error::ModelMismatch(format!(
            "{} leaves vs {} leaves",
            first.tree().n(),
            second.tree().n()
        )));
    }
    if first.dims() != second.dims() {
        return Err(Error::ModelMismatch("leaf dimensions differ".into()));
    }
    let edges = second
        .tree()
        .edges()
        .map(|edge| {
            let side = second.tree().leaves_left_of(edge)?;
            let bound = second.f().get(edge).expect("function covers the tree");
            let best = min_product_cut(first.tree(), &side, first.f())?;
            Ok(EdgeRequirement {
                edge: edge.clone(),
                bound,
                pass: BigUint::from(bound) >= best.product,
                required: best.product,
                cut: best.witness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = edges.iter().find(|r| !r.pass).map(|r| r.edge.clone());
    Ok(ComparisonReport {
        necessary_condition_holds: witness.is_none(),
        note: if witness.is_none() {
            NOTE_PASS
        } else {
            NOTE_FAIL
        },
        witness,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{optimalize, EdgeFunction};
    use crate::tree::{parse_tree, LeafSet, Tree};

    fn abt6_vs_tt6(g: u64) -> ComparisonReport {
        let m1 = TnsModel::constant(Tree::almost_perfect_binary(6).unwrap(), 2).unwrap();
        let tt = Tree::train_track(6).unwrap();
        let f = EdgeFunction::constant(&tt, g).unwrap();
        let m2 = TnsModel::new(tt, f, vec![2; 6]).unwrap();
        compare_models(&m1, &m2).unwrap()
    }

    #[test]
    fn tt_with_bond_four_passes() {
        let r = abt6_vs_tt6(4);
        assert!(r.necessary_condition_holds);
        assert!(r.witness.is_none());
        let max = r.edges.iter().map(|e| e.required.clone()).max().unwrap();
        assert_eq!(max, BigUint::from(4u32));
        let tt = Tree::train_track(6).unwrap();
        let key = tt.edge_for_side(&LeafSet::prefix(3)).unwrap();
        let at = r.edges.iter().find(|e| e.edge == key).unwrap();
        assert_eq!(at.required, BigUint::from(4u32));
    }

    #[test]
    fn tt_with_bond_three_fails() {
        let r = abt6_vs_tt6(3);
        assert!(!r.necessary_condition_holds);
        let tt = Tree::train_track(6).unwrap();
        assert_eq!(r.witness, tt.edge_for_side(&LeafSet::prefix(3)));
    }

    #[test]
    fn model_against_itself_passes() {
        let t = parse_tree("(((1,2),3),((4,5),6))").unwrap();
        let f = EdgeFunction::from_pairs(&t, t.edges().map(|e| (e.clone(), 1 + e.len() as u64)))
            .unwrap();
        let m = optimalize(&TnsModel::new(t, f, vec![3; 6]).unwrap()).unwrap();
        assert!(compare_models(&m, &m).unwrap().necessary_condition_holds);
    }

    #[test]
    fn mismatched_models_are_rejected() {
        let a = TnsModel::constant(Tree::train_track(5).unwrap(), 2).unwrap();
        let b = TnsModel::constant(Tree::train_track(6).unwrap(), 2).unwrap();
        assert!(matches!(
            compare_models(&a, &b),
            Err(Error::ModelMismatch(_))
        ));
        let c = TnsModel::constant(Tree::train_track(5).unwrap(), 3).unwrap();
        assert!(matches!(
            compare_models(&a, &c),
            Err(Error::ModelMismatch(_))
        ));
    }
}
