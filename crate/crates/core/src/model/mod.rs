//! Tensor network state models in the edge definition.
//!
//! A [`TnsModel`] is a tree, a bond bound `f(e) >= 1` for every edge and a
//! physical dimension for every leaf. A tensor belongs to the model when each
//! edge flattening has rank at most `f(e)`.

mod compare;
mod hard;
mod rank;

pub use compare::{compare_models, ComparisonReport, EdgeRequirement};
pub use hard::construct_hard_subset;
pub use rank::{optimalize, predict_rank, RankPrediction};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::tree::{EdgeId, LeafSet, Tree};

/// A natural-valued function on the edges of a tree, every value at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct EdgeFunction(BTreeMap<EdgeId, u64>);

impl EdgeFunction {
    /// `f(e) = r` on every edge.
    pub fn constant(tree: &Tree, r: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidFunction("values must be at least 1".into()));
        }
        Ok(EdgeFunction(tree.edges().map(|e| (e.clone(), r)).collect()))
    }

    /// Builds a function from `(edge, value)` pairs, which must cover exactly the edges of `tree`.
    pub fn from_pairs(tree: &Tree, pairs: impl IntoIterator<Item = (EdgeId, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, v) in pairs {
            if !tree.contains_edge(&e) {
                return Err(Error::UnknownEdge(e.to_string()));
            }
            if map.insert(e.clone(), v).is_some() {
                return Err(Error::InvalidFunction(format!("edge {e} given twice")));
            }
        }
        let f = EdgeFunction(map);
        f.values_for(tree)?;
        Ok(f)
    }

    pub fn get(&self, edge: &EdgeId) -> Option<u64> {
        self.0.get(edge).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeId, u64)> + '_ {
        self.0.iter().map(|(e, &v)| (e, v))
    }

    /// The common value if `f` is constant.
    pub fn constant_value(&self) -> Option<u64> {
        let mut values = self.0.values();
        let first = *values.next()?;
        values.all(|&v| v == first).then_some(first)
    }

    /// Values indexed like the tree's internal edge list.
    pub(crate) fn values_for(&self, tree: &Tree) -> Result<Vec<u64>> {
        tree.edges()
            .map(|e| match self.0.get(e) {
                None => Err(Error::InvalidFunction(format!(
                    "missing value for edge {e}"
                ))),
                Some(0) => Err(Error::InvalidFunction(format!("f({e}) = 0"))),
                Some(&v) => Ok(v),
            })
            .collect()
    }

    pub(crate) fn set(&mut self, edge: &EdgeId, value: u64) {
        if let Some(v) = self.0.get_mut(edge) {
            *v = value;
        }
    }
}

/// A tree, an edge function and the leaf dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TnsModel {
    tree: Tree,
    f: EdgeFunction,
    dims: Vec<u64>,
}

impl TnsModel {
    /// `dims[l - 1]` is the dimension of leaf `l`.
    pub fn new(tree: Tree, f: EdgeFunction, dims: Vec<u64>) -> Result<Self> {
        if dims.len() != tree.n() {
            return Err(Error::InvalidModel(format!(
                "{} leaf dimensions for {} leaves",
                dims.len(),
                tree.n()
            )));
        }
        if let Some(l) = dims.iter().position(|&d| d == 0) {
            return Err(Error::InvalidModel(format!(
                "leaf {} has dimension 0",
                l + 1
            )));
        }
        f.values_for(&tree)?;
        if f.0.len() != tree.edge_count() {
            return Err(Error::InvalidFunction(
                "function has edges outside the tree".into(),
            ));
        }
        Ok(TnsModel { tree, f, dims })
    }

    /// `f = r` on every edge and dimension `r` at every leaf.
    pub fn constant(tree: Tree, r: u64) -> Result<Self> {
        let f = EdgeFunction::constant(&tree, r)?;
        let dims = vec![r; tree.n()];
        TnsModel::new(tree, f, dims)
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn f(&self) -> &EdgeFunction {
        &self.f
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn dim(&self, label: usize) -> u64 {
        self.dims[label - 1]
    }

    pub fn with_function(&self, f: EdgeFunction) -> Result<Self> {
        TnsModel::new(self.tree.clone(), f, self.dims.clone())
    }

    /// Reads the JSON model format:
    /// `{ "tree": "((1,2),(3,4))", "f": 2 | { "1-2": 3, ... }, "dims": { "1": 2, ... } }`.
    ///
    /// Edge keys may name either side of the split. `dims` may be omitted when
    /// `f` is a scalar, in which case every leaf gets that value.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text)?;
        let tree: Tree = file.tree.parse()?;
        let f = match &file.f {
            Value::Number(num) => {
                let r = num
                    .as_u64()
                    .ok_or_else(|| Error::InvalidFunction(format!("bad constant {num}")))?;
                EdgeFunction::constant(&tree, r)?
            }
            Value::Object(map) => {
                let pairs = map
                    .iter()
                    .map(|(k, v)| {
                        let side: LeafSet = k.replace('-', ",").parse()?;
                        let edge = tree
                            .edge_for_side(&side)
                            .ok_or_else(|| Error::UnknownEdge(k.clone()))?;
                        let v = v
                            .as_u64()
                            .ok_or_else(|| Error::InvalidFunction(format!("bad value for {k}")))?;
                        Ok((edge, v))
                    })
                    .collect::<Result<Vec<_>>>()?;
                EdgeFunction::from_pairs(&tree, pairs)?
            }
            other => {
                return Err(Error::InvalidFunction(format!(
                    "\"f\" must be a number or an object, got {other}"
                )))
            }
        };
        let dims = match file.dims {
            Some(map) => {
                let mut dims = vec![0; tree.n()];
                for (k, d) in map {
                    let l: usize = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidModel(format!("bad leaf key {k:?}")))?;
                    if l == 0 || l > tree.n() {
                        return Err(Error::UnknownLabel(l));
                    }
                    dims[l - 1] = d;
                }
                if let Some(l) = dims.iter().position(|&d| d == 0) {
                    return Err(Error::InvalidModel(format!(
                        "no dimension for leaf {}",
                        l + 1
                    )));
                }
                dims
            }
            None => match f.constant_value() {
                Some(r) if file.f.is_number() => vec![r; tree.n()],
                _ => {
                    return Err(Error::InvalidModel(
                        "\"dims\" is required unless \"f\" is a constant".into(),
                    ))
                }
            },
        };
        TnsModel::new(tree, f, dims)
    }

    /// Writes the JSON model format; a constant `f` is written as a scalar.
    pub fn to_json(&self) -> String {
        let f = match self.f.constant_value() {
            Some(r) => Value::from(r),
            None => serde_json::to_value(&self.f).expect("edge function serializes"),
        };
        let out = ModelOut {
            tree: self.tree.to_string(),
            f,
            dims: (1..=self.tree.n()).map(|l| (l, self.dim(l))).collect(),
        };
        serde_json::to_string_pretty(&out).expect("model serializes")
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    tree: String,
    f: Value,
    #[serde(default)]
    dims: Option<BTreeMap<String, u64>>,
}

#[derive(Serialize)]
struct ModelOut {
    tree: String,
    f: Value,
    dims: BTreeMap<usize, u64>,
}
