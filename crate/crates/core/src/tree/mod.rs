//! Unrooted leaf-labelled binary trees.
//!
//! A [`Tree`] has `n >= 2` leaves labelled exactly `1..=n`; every internal vertex
//! has degree 3. Edges are named by an [`EdgeId`]: the sorted labels of the
//! smaller side of the leaf bipartition the edge induces. Edge ids survive
//! re-parsing and are what every other module uses to address edges.
//!
//! Trees are immutable values. Builders and [`Tree::relabel`] produce fresh trees.

mod build;
mod parse;

pub use build::{all_shapes, all_trees, random_tree, shape_key};

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Canonical name of a tree edge: the sorted labels of one side of its split.
///
/// Of the two sides, the key is the one that is smaller by `(size, labels)`.
/// Ordering follows the same rule, so the leaf edge of label 1 is always first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeId(Vec<usize>);

impl EdgeId {
    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The side with the smaller `(size, labels)` among `side` and its complement in `1..=n`.
    fn canonical(side: Vec<usize>, n: usize) -> EdgeId {
        let other = complement_sorted(&side, n);
        if key_order(&side, &other) == Ordering::Greater {
            EdgeId(other)
        } else {
            EdgeId(side)
        }
    }
}

fn key_order(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn complement_sorted(side: &[usize], n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n.saturating_sub(side.len()));
    let mut it = side.iter().peekable();
    for l in 1..=n {
        if it.peek() == Some(&&l) {
            it.next();
        } else {
            out.push(l);
        }
    }
    out
}

impl Ord for EdgeId {
    fn cmp(&self, other: &Self) -> Ordering {
        key_order(&self.0, &other.0)
    }
}

impl PartialOrd for EdgeId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for EdgeId {
    type Err = Error;

    /// Parses a dash-joined, strictly increasing label list such as `"1-2"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidEdgeKey(s.to_string());
        let labels = s
            .trim()
            .split('-')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if labels.is_empty() || labels[0] == 0 || labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad());
        }
        Ok(EdgeId(labels))
    }
}

impl Serialize for EdgeId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EdgeId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A set of leaf labels, typically one colour class of a flattening.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LeafSet(BTreeSet<usize>);

impl LeafSet {
    pub fn new() -> Self {
        LeafSet(BTreeSet::new())
    }

    /// The prefix `{1, ..., j}`.
    pub fn prefix(j: usize) -> Self {
        (1..=j).collect()
    }

    pub fn insert(&mut self, label: usize) -> bool {
        self.0.insert(label)
    }

    pub fn contains(&self, label: usize) -> bool {
        self.0.contains(&label)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Complement within `1..=n`.
    pub fn complement(&self, n: usize) -> LeafSet {
        (1..=n).filter(|l| !self.0.contains(l)).collect()
    }

    pub fn union(&self, other: &LeafSet) -> LeafSet {
        self.0.union(&other.0).copied().collect()
    }

    /// Colour vector indexed by label (index 0 unused); fails on labels outside `1..=n`.
    pub(crate) fn colouring(&self, n: usize) -> Result<Vec<bool>> {
        let mut colour = vec![false; n + 1];
        for l in self.iter() {
            if l == 0 || l > n {
                return Err(Error::UnknownLabel(l));
            }
            colour[l] = true;
        }
        Ok(colour)
    }
}

impl FromIterator<usize> for LeafSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        LeafSet(iter.into_iter().collect())
    }
}

impl fmt::Display for LeafSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for LeafSet {
    type Err = Error;

    /// Comma-separated labels; the empty string is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad leaf label {t:?}")))
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
struct Edge {
    id: EdgeId,
    /// Endpoints; the first lies on the key side.
    ends: (usize, usize),
}

/// Unrooted binary tree with leaves labelled `1..=n`.
#[derive(Clone, Debug)]
pub struct Tree {
    n: usize,
    /// `(neighbour, edge index)` pairs.
    adj: Vec<Vec<(usize, usize)>>,
    vertex_label: Vec<Option<usize>>,
    /// Indexed by `label - 1`.
    leaf_vertex: Vec<usize>,
    /// Sorted by edge id.
    edges: Vec<Edge>,
}

/// A tree hung from the vertex of leaf 1. Children are ordered by the
/// smallest leaf label below them, which makes every traversal canonical.
#[derive(Debug)]
pub(crate) struct Rooted {
    pub root: usize,
    /// Pre-order.
    pub order: Vec<usize>,
    /// `(parent, edge index)`.
    pub parent: Vec<Option<(usize, usize)>>,
    /// `(child, edge index)`.
    pub children: Vec<Vec<(usize, usize)>>,
}

fn hang(adj: &[Vec<(usize, usize)>], vertex_label: &[Option<usize>], root: usize) -> Rooted {
    let nv = adj.len();
    let mut parent = vec![None; nv];
    let mut bfs = vec![root];
    let mut seen = vec![false; nv];
    seen[root] = true;
    let mut i = 0;
    while i < bfs.len() {
        let v = bfs[i];
        i += 1;
        for &(w, e) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, e));
                bfs.push(w);
            }
        }
    }
    let mut min_label: Vec<usize> = vertex_label
        .iter()
        .map(|l| l.unwrap_or(usize::MAX))
        .collect();
    for &v in bfs.iter().rev() {
        if let Some((p, _)) = parent[v] {
            min_label[p] = min_label[p].min(min_label[v]);
        }
    }
    let mut children = vec![Vec::new(); nv];
    for &v in &bfs {
        if let Some((p, e)) = parent[v] {
            children[p].push((v, e));
        }
    }
    for ch in &mut children {
        ch.sort_by_key(|&(c, _)| min_label[c]);
    }
    let mut order = Vec::with_capacity(nv);
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        order.push(v);
        for &(c, _) in children[v].iter().rev() {
            stack.push(c);
        }
    }
    Rooted {
        root,
        order,
        parent,
        children,
    }
}

impl Tree {
    /// Validates a vertex/edge description and computes canonical edge ids.
    pub(crate) fn from_parts(
        vertex_label: Vec<Option<usize>>,
        edge_list: Vec<(usize, usize)>,
    ) -> Result<Tree> {
        let nv = vertex_label.len();
        let labels: Vec<usize> = vertex_label.iter().flatten().copied().collect();
        let n = labels.len();
        if n < 2 {
            return Err(Error::TooFewLeaves(n));
        }
        let mut leaf_vertex = vec![usize::MAX; n];
        for (v, l) in vertex_label.iter().enumerate() {
            if let Some(l) = *l {
                if l == 0 || l > n {
                    return Err(Error::InvalidLabels(format!(
                        "labels must be exactly 1..={n}, found {l}"
                    )));
                }
                if leaf_vertex[l - 1] != usize::MAX {
                    return Err(Error::InvalidLabels(format!("label {l} is repeated")));
                }
                leaf_vertex[l - 1] = v;
            }
        }
        if edge_list.len() + 1 != nv {
            return Err(Error::InvalidArgument(format!(
                "{} vertices need {} edges, got {}",
                nv,
                nv - 1,
                edge_list.len()
            )));
        }
        let mut adj = vec![Vec::new(); nv];
        for (e, &(a, b)) in edge_list.iter().enumerate() {
            if a >= nv || b >= nv || a == b {
                return Err(Error::InvalidArgument(format!("bad edge ({a}, {b})")));
            }
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        for (v, nbrs) in adj.iter().enumerate() {
            let want = if vertex_label[v].is_some() { 1 } else { 3 };
            if nbrs.len() != want {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} has degree {}, expected {want}",
                    nbrs.len()
                )));
            }
        }

        let rooted = hang(&adj, &vertex_label, leaf_vertex[0]);
        if rooted.order.len() != nv {
            return Err(Error::InvalidArgument("graph is not connected".into()));
        }
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); nv];
        let mut ids: Vec<Option<Edge>> = vec![None; edge_list.len()];
        for &v in rooted.order.iter().rev() {
            let mut set: Vec<usize> = vertex_label[v].into_iter().collect();
            for &(c, _) in &rooted.children[v] {
                set.extend(std::mem::take(&mut below[c]));
            }
            set.sort_unstable();
            if let Some((p, e)) = rooted.parent[v] {
                let id = EdgeId::canonical(set.clone(), n);
                let ends = if id.0 == set { (v, p) } else { (p, v) };
                ids[e] = Some(Edge { id, ends });
            }
            below[v] = set;
        }
        let mut edges: Vec<(usize, Edge)> = ids
            .into_iter()
            .enumerate()
            .map(|(i, e)| (i, e.expect("every edge has a child endpoint")))
            .collect();
        edges.sort_by(|a, b| a.1.id.cmp(&b.1.id));
        let mut remap = vec![0; edges.len()];
        for (new, (old, _)) in edges.iter().enumerate() {
            remap[*old] = new;
        }
        for nbrs in &mut adj {
            for (_, e) in nbrs.iter_mut() {
                *e = remap[*e];
            }
        }
        Ok(Tree {
            n,
            adj,
            vertex_label,
            leaf_vertex,
            edges: edges.into_iter().map(|(_, e)| e).collect(),
        })
    }

    /// Number of leaves.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Edge ids in canonical order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &EdgeId> + '_ {
        self.edges.iter().map(|e| &e.id)
    }

    pub fn contains_edge(&self, id: &EdgeId) -> bool {
        self.edge_index(id).is_some()
    }

    /// The id of the edge splitting off `side`, whichever side of the split it is.
    pub fn edge_for_side(&self, side: &LeafSet) -> Option<EdgeId> {
        if side.is_empty() || side.len() >= self.n || side.iter().any(|l| l == 0 || l > self.n) {
            return None;
        }
        let id = EdgeId::canonical(side.iter().collect(), self.n);
        self.contains_edge(&id).then_some(id)
    }

    /// Leaves on the key side of `edge`; the complement is the other side.
    pub fn leaves_left_of(&self, edge: &EdgeId) -> Result<LeafSet> {
        self.edge_index(edge)
            .map(|_| edge.labels().iter().copied().collect())
            .ok_or_else(|| Error::UnknownEdge(edge.to_string()))
    }

    /// Validates that every label of `set` is a leaf of this tree.
    pub fn check_leaf_set(&self, set: &LeafSet) -> Result<()> {
        match set.iter().find(|&l| l == 0 || l > self.n) {
            Some(l) => Err(Error::UnknownLabel(l)),
            None => Ok(()),
        }
    }

    /// Same shape; the leaf labelled `i` is relabelled `perm[i - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Tree> {
        check_permutation(perm, self.n)?;
        let labels = self
            .vertex_label
            .iter()
            .map(|l| l.map(|l| perm[l - 1]))
            .collect();
        Tree::from_parts(labels, self.edge_list())
    }

    /// Subdivides edge `edge` and hangs a new leaf `n + 1` from the midpoint.
    pub(crate) fn insert_leaf(&self, edge: usize) -> Tree {
        let (a, b) = self.edges[edge].ends;
        let mut labels = self.vertex_label.clone();
        let mid = labels.len();
        labels.push(None);
        labels.push(Some(self.n + 1));
        let mut list: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != edge)
            .map(|(_, e)| e.ends)
            .collect();
        list.extend([(a, mid), (mid, b), (mid, mid + 1)]);
        Tree::from_parts(labels, list).expect("subdividing an edge keeps a valid tree")
    }

    fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| e.ends).collect()
    }

    pub(crate) fn edge_index(&self, id: &EdgeId) -> Option<usize> {
        self.edges.binary_search_by(|e| e.id.cmp(id)).ok()
    }

    pub(crate) fn edge_id(&self, index: usize) -> &EdgeId {
        &self.edges[index].id
    }

    pub(crate) fn edge_ends(&self, index: usize) -> (usize, usize) {
        self.edges[index].ends
    }

    pub(crate) fn adj(&self) -> &[Vec<(usize, usize)>] {
        &self.adj
    }

    pub(crate) fn vertex_label(&self, v: usize) -> Option<usize> {
        self.vertex_label[v]
    }

    pub(crate) fn leaf_vertex(&self, label: usize) -> usize {
        self.leaf_vertex[label - 1]
    }

    pub(crate) fn rooted(&self) -> Rooted {
        hang(&self.adj, &self.vertex_label, self.leaf_vertex[0])
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(n));
    }
    let mut seen = vec![false; n + 1];
    for &p in perm {
        if p == 0 || p > n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation(n));
        }
    }
    Ok(())
}

/// Two trees are equal when they have the same leaf count and the same splits.
impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges().eq(other.edges())
    }
}

impl Eq for Tree {}

pub fn parse_tree(text: &str) -> Result<Tree> {
    text.parse()
}

pub fn build_train_track(n: usize) -> Result<Tree> {
    Tree::train_track(n)
}

pub fn build_almost_perfect_binary(n: usize) -> Result<Tree> {
    Tree::almost_perfect_binary(n)
}
