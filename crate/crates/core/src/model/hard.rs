use std::collections::BTreeSet;

use crate::error::Result;
use crate::tree::{LeafSet, Tree};

/// Greedy leaf subset with a large minimal monochromatic cut.
///
/// Repeatedly takes the cherry (two leaves on a common vertex) with the
/// smallest labels, puts its smaller label into the subset and the other
/// outside, and deletes both leaves, pruning the vertex left dangling and
/// suppressing degree-2 vertices. The last two leaves form a final pair.
/// Each pair occupies its own connected, two-coloured region, so the minimal
/// monochromatic cut has at least `floor(n / 2)` edges.
pub fn construct_hard_subset(tree: &Tree) -> Result<LeafSet> {
    let nv = tree.vertex_count();
    let mut adj: Vec<BTreeSet<usize>> = tree
        .adj()
        .iter()
        .map(|nbrs| nbrs.iter().map(|&(w, _)| w).collect())
        .collect();
    let label = |v: usize| tree.vertex_label(v);
    let mut alive = vec![true; nv];
    let mut leaves: BTreeSet<(usize, usize)> =
        (1..=tree.n()).map(|l| (l, tree.leaf_vertex(l))).collect();
    let mut subset = LeafSet::new();

    while leaves.len() >= 2 {
        let pair = if leaves.len() == 2 {
            let mut it = leaves.iter();
            (*it.next().unwrap(), *it.next().unwrap())
        } else {
            smallest_cherry(&adj, &leaves, &label)
        };
        let ((a, va), (_, vb)) = pair;
        subset.insert(a);
        for v in [va, vb] {
            leaves.remove(&(label(v).unwrap(), v));
            remove_vertex(&mut adj, &mut alive, v);
        }
        tidy(&mut adj, &mut alive, &label);
    }
    Ok(subset)
}

type Leaf = (usize, usize);

fn smallest_cherry(
    adj: &[BTreeSet<usize>],
    leaves: &BTreeSet<Leaf>,
    label: &impl Fn(usize) -> Option<usize>,
) -> (Leaf, Leaf) {
    leaves
        .iter()
        .filter_map(|&(l, v)| {
            let hub = *adj[v].iter().next()?;
            let partner = adj[hub]
                .iter()
                .filter(|&&w| w != v)
                .filter_map(|&w| label(w).map(|m| (m, w)))
                .filter(|&(m, _)| m > l)
                .min()?;
            Some(((l, v), partner))
        })
        .min()
        .expect("a binary tree with three or more leaves has a cherry")
}

fn remove_vertex(adj: &mut [BTreeSet<usize>], alive: &mut [bool], v: usize) {
    for w in std::mem::take(&mut adj[v]) {
        adj[w].remove(&v);
    }
    alive[v] = false;
}

/// Prunes unlabelled vertices of degree <= 1 and suppresses unlabelled vertices of degree 2.
fn tidy(adj: &mut [BTreeSet<usize>], alive: &mut [bool], label: &impl Fn(usize) -> Option<usize>) {
    loop {
        let Some(v) = (0..adj.len()).find(|&v| alive[v] && label(v).is_none() && adj[v].len() <= 2)
        else {
            return;
        };
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        remove_vertex(adj, alive, v);
        if let [a, b] = nbrs[..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{brute_force_min_mono, min_mono_cut};
    use crate::tree::parse_tree;

    #[test]
    fn cat4_subset() {
        let t = parse_tree("((1,2),(3,4))").unwrap();
        let a = construct_hard_subset(&t).unwrap();
        assert_eq!(a.to_string(), "1,3");
        assert_eq!(brute_force_min_mono(&t, &a).unwrap(), 2);
    }

    #[test]
    fn two_leaves() {
        let t = parse_tree("(1,2)").unwrap();
        let a = construct_hard_subset(&t).unwrap();
        assert_eq!(a.to_string(), "1");
        assert_eq!(min_mono_cut(&t, &a).unwrap().size, 1);
    }

    #[test]
    fn train_track_six() {
        let t = Tree::train_track(6).unwrap();
        let a = construct_hard_subset(&t).unwrap();
        assert_eq!(a.to_string(), "1,3,5");
        assert!(brute_force_min_mono(&t, &a).unwrap() >= 3);
    }

    #[test]
    fn star_of_three_takes_smallest_pair() {
        let t = parse_tree("((1,2),3)").unwrap();
        assert_eq!(construct_hard_subset(&t).unwrap().to_string(), "1");
    }
}
