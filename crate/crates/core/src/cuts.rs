//! Monochromatic and colour cuts of a two-coloured tree.
//!
//! A *monochromatic cut* for a leaf set `A` is a set of edges whose removal
//! leaves every component with its leaves all in `A` or all outside `A`
//! (leafless components are unconstrained). A *colour cut* is a set of edges
//! whose removal leaves every component with at least one leaf of each colour.
//!
//! Both optima are computed by dynamic programming over the tree hung from
//! leaf 1. The DP state at a vertex describes the component that currently
//! contains it: its colour for monochromatic cuts, the set of colours seen
//! so far for colour cuts.

use std::collections::BTreeSet;
use std::ops::Mul;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::EdgeFunction;
use crate::tree::{EdgeId, LeafSet, Tree};

/// A set of tree edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Cut(BTreeSet<EdgeId>);

impl Cut {
    pub fn new() -> Self {
        Cut(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, edge: &EdgeId) -> bool {
        self.0.contains(edge)
    }

    pub fn iter(&self) -> impl Iterator<Item = &EdgeId> + '_ {
        self.0.iter()
    }

    fn from_indices(tree: &Tree, indices: impl IntoIterator<Item = usize>) -> Cut {
        Cut(indices
            .into_iter()
            .map(|e| tree.edge_id(e).clone())
            .collect())
    }
}

impl FromIterator<EdgeId> for Cut {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        Cut(iter.into_iter().collect())
    }
}

/// Optimal cut size together with one cut achieving it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutResult {
    pub size: usize,
    pub witness: Cut,
}

/// Minimum of `prod f(e)` over monochromatic cuts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCut {
    #[serde(serialize_with = "crate::json::big")]
    pub product: BigUint,
    pub witness: Cut,
}

/// Minimum monochromatic cut of `tree` for the colour class `a`.
pub fn min_mono_cut(tree: &Tree, a: &LeafSet) -> Result<CutResult> {
    let colour = a.colouring(tree.n())?;
    let (size, cut) = mono_dp(tree, &colour, |_| 1usize, |x, y| x + y, 0);
    Ok(CutResult {
        size,
        witness: Cut::from_indices(tree, cut),
    })
}

/// Monochromatic cut minimizing the product of `f` over its edges.
pub fn min_product_cut(tree: &Tree, a: &LeafSet, f: &EdgeFunction) -> Result<ProductCut> {
    let colour = a.colouring(tree.n())?;
    let weights = f.values_for(tree)?;
    let (product, cut) = mono_dp(
        tree,
        &colour,
        |e| BigUint::from(weights[e]),
        |x, y| x.mul(y),
        BigUint::one(),
    );
    Ok(ProductCut {
        product,
        witness: Cut::from_indices(tree, cut),
    })
}

/// Shared DP for monochromatic cuts under an ordered monoid of edge weights.
///
/// `cost[v][s]` is the optimal cost inside the subtree of `v` when the
/// component containing `v` has colour `s`. Every weight must be at least the
/// identity so that partial costs only grow. On ties an edge is kept uncut,
/// which pushes cuts towards the leaves.
pub(crate) fn mono_dp<C, W, F>(
    tree: &Tree,
    colour: &[bool],
    weight: W,
    combine: F,
    identity: C,
) -> (C, Vec<usize>)
where
    C: Clone + Ord,
    W: Fn(usize) -> C,
    F: Fn(&C, &C) -> C,
{
    let rooted = tree.rooted();
    let nv = tree.vertex_count();
    let mut cost: Vec<[Option<C>; 2]> = vec![[None, None]; nv];
    // cut_child[c][s]: whether the edge above `c` is cut when the parent has colour `s`
    let mut cut_child = vec![[false; 2]; nv];
    for &v in rooted.order.iter().rev() {
        let mut here: [Option<C>; 2] = match tree.vertex_label(v) {
            Some(l) => {
                let mut c = [None, None];
                c[colour[l] as usize] = Some(identity.clone());
                c
            }
            None => [Some(identity.clone()), Some(identity.clone())],
        };
        for &(c, e) in &rooted.children[v] {
            for s in 0..2 {
                let Some(acc) = here[s].take() else { continue };
                let keep = cost[c][s].clone();
                let cut = cost[c][1 - s].as_ref().map(|x| combine(x, &weight(e)));
                let (best, is_cut) = match (keep, cut) {
                    (Some(k), Some(x)) if x < k => (x, true),
                    (Some(k), _) => (k, false),
                    (None, Some(x)) => (x, true),
                    (None, None) => continue,
                };
                cut_child[c][s] = is_cut;
                here[s] = Some(combine(&acc, &best));
            }
        }
        cost[v] = here;
    }

    let root = rooted.root;
    let root_state = colour[tree.vertex_label(root).expect("root is leaf 1")] as usize;
    let best = cost[root][root_state]
        .clone()
        .expect("the root colour is feasible");
    let mut state = vec![0usize; nv];
    state[root] = root_state;
    let mut cut = Vec::new();
    for &v in &rooted.order {
        for &(c, e) in &rooted.children[v] {
            let s = state[v];
            if cut_child[c][s] {
                cut.push(e);
                state[c] = 1 - s;
            } else {
                state[c] = s;
            }
        }
    }
    (best, cut)
}

const SEEN_A: usize = 1;
const SEEN_B: usize = 2;
const BOTH: usize = SEEN_A | SEEN_B;

/// Maximum colour cut, or `None` when `a` or its complement is empty.
pub fn max_colour_cut(tree: &Tree, a: &LeafSet) -> Result<Option<CutResult>> {
    let colour = a.colouring(tree.n())?;
    if a.is_empty() || a.len() == tree.n() {
        return Ok(None);
    }
    let rooted = tree.rooted();
    let nv = tree.vertex_count();

    // best[v][mask]: most cuts inside the subtree of `v` when the open component
    // containing `v` has seen exactly the colours in `mask`
    let mut best: Vec<[Option<usize>; 4]> = vec![[None; 4]; nv];
    // back[v][k][mask] = (mask before child k, child mask, edge cut)
    type Choice = [Option<(usize, usize, bool)>; 4];
    let mut back: Vec<Vec<Choice>> = vec![Vec::new(); nv];
    for &v in rooted.order.iter().rev() {
        let mut cur = [None; 4];
        match tree.vertex_label(v) {
            Some(l) => cur[if colour[l] { SEEN_A } else { SEEN_B }] = Some(0),
            None => cur[0] = Some(0),
        }
        for &(c, _) in &rooted.children[v] {
            let mut next: [Option<usize>; 4] = [None; 4];
            let mut choice = [None; 4];
            for (m1, x) in cur.iter().enumerate() {
                let Some(x) = *x else { continue };
                for (m2, y) in best[c].iter().enumerate() {
                    let Some(y) = *y else { continue };
                    let mut offer = |mask: usize, value: usize, cut: bool| {
                        if next[mask].is_none_or(|old| value > old) {
                            next[mask] = Some(value);
                            choice[mask] = Some((m1, m2, cut));
                        }
                    };
                    offer(m1 | m2, x + y, false);
                    if m2 == BOTH {
                        offer(m1, x + y + 1, true);
                    }
                }
            }
            back[v].push(choice);
            cur = next;
        }
        best[v] = cur;
    }

    let root = rooted.root;
    let size = best[root][BOTH].expect("both colours present, so the empty cut is valid");
    let mut cut = Vec::new();
    let mut stack = vec![(root, BOTH)];
    while let Some((v, mut mask)) = stack.pop() {
        for (k, &(c, e)) in rooted.children[v].iter().enumerate().rev() {
            let (m1, m2, is_cut) = back[v][k][mask].expect("reachable state has a choice");
            if is_cut {
                cut.push(e);
            }
            stack.push((c, m2));
            mask = m1;
        }
    }
    Ok(Some(CutResult {
        size,
        witness: Cut::from_indices(tree, cut),
    }))
}

/// Colour masks of the components left after removing `cut`.
fn component_masks(tree: &Tree, colour: &[bool], cut: &Cut) -> Result<Vec<usize>> {
    let mut removed = vec![false; tree.edge_count()];
    for id in cut.iter() {
        let e = tree
            .edge_index(id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))?;
        removed[e] = true;
    }
    Ok(masks_without(tree, colour, &removed))
}

fn masks_without(tree: &Tree, colour: &[bool], removed: &[bool]) -> Vec<usize> {
    let adj = tree.adj();
    let mut seen = vec![false; adj.len()];
    let mut masks = Vec::new();
    let mut stack = Vec::new();
    for start in 0..adj.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut mask = 0;
        while let Some(v) = stack.pop() {
            if let Some(l) = tree.vertex_label(v) {
                mask |= if colour[l] { SEEN_A } else { SEEN_B };
            }
            for &(w, e) in &adj[v] {
                if !removed[e] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        masks.push(mask);
    }
    masks
}

/// Whether every component left by `cut` is monochromatic in its leaves.
pub fn verify_mono_cut(tree: &Tree, a: &LeafSet, cut: &Cut) -> Result<bool> {
    let colour = a.colouring(tree.n())?;
    Ok(component_masks(tree, &colour, cut)?
        .iter()
        .all(|&m| m != BOTH))
}

/// Whether every component left by `cut` has leaves of both colours.
pub fn verify_colour_cut(tree: &Tree, a: &LeafSet, cut: &Cut) -> Result<bool> {
    let colour = a.colouring(tree.n())?;
    Ok(component_masks(tree, &colour, cut)?
        .iter()
        .all(|&m| m == BOTH))
}

/// Largest edge count [`brute_force_min_mono`] accepts (13 leaves).
pub const BRUTE_FORCE_MAX_EDGES: usize = 23;

/// Minimum monochromatic cut size by enumerating edge subsets in order of size.
pub fn brute_force_min_mono(tree: &Tree, a: &LeafSet) -> Result<usize> {
    let colour = a.colouring(tree.n())?;
    let m = tree.edge_count();
    if m > BRUTE_FORCE_MAX_EDGES {
        return Err(Error::TreeTooLarge {
            edges: m,
            max: BRUTE_FORCE_MAX_EDGES,
        });
    }
    let mut removed = vec![false; m];
    for k in 0..=m {
        for subset in (0..m).combinations(k) {
            removed.iter_mut().for_each(|r| *r = false);
            for &e in &subset {
                removed[e] = true;
            }
            if masks_without(tree, &colour, &removed)
                .iter()
                .all(|&x| x != BOTH)
            {
                return Ok(k);
            }
        }
    }
    unreachable!("cutting every edge isolates each leaf")
}
