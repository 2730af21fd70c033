use std::collections::HashSet;

use rand::Rng;

use super::parse::Expr;
use super::Tree;
use crate::error::{Error, Result};

impl Tree {
    /// Caterpillar with leaves `1` and `n` at the ends of the spine and
    /// `2..n-1` pendant in order. Its splits are the singletons and the prefixes.
    pub fn train_track(n: usize) -> Result<Tree> {
        if n < 2 {
            return Err(Error::TooFewLeaves(n));
        }
        (2..=n)
            .fold(Expr::Leaf(1), |acc, l| Expr::pair(acc, Expr::Leaf(l)))
            .into_tree()
    }

    /// Perfect binary tree of depth `ceil(log2 n)` with the bottom row filled from
    /// the left: the first `n - 2^(d-1)` vertices above it carry two leaves, the
    /// rest are leaves themselves. Leaves are labelled left to right.
    pub fn almost_perfect_binary(n: usize) -> Result<Tree> {
        if n < 2 {
            return Err(Error::TooFewLeaves(n));
        }
        let depth = n.next_power_of_two().trailing_zeros();
        let paired = n - (1 << (depth - 1));
        fn build(level: u32, index: usize, depth: u32, paired: usize, next: &mut usize) -> Expr {
            let mut leaf = || {
                *next += 1;
                Expr::Leaf(*next)
            };
            if level + 1 == depth {
                return if index < paired {
                    let a = leaf();
                    Expr::pair(a, leaf())
                } else {
                    leaf()
                };
            }
            let left = build(level + 1, 2 * index, depth, paired, next);
            Expr::pair(left, build(level + 1, 2 * index + 1, depth, paired, next))
        }
        build(0, 0, depth, paired, &mut 0).into_tree()
    }

    fn cherry() -> Tree {
        Expr::pair(Expr::Leaf(1), Expr::Leaf(2))
            .into_tree()
            .expect("two leaves form a tree")
    }
}

/// Every labelled unrooted binary tree on `n` leaves, `(2n-5)!!` of them for `n >= 3`.
///
/// Built by stepwise addition: leaf `k` is inserted on each edge of every tree on `k - 1` leaves.
pub fn all_trees(n: usize) -> Result<Vec<Tree>> {
    if n < 2 {
        return Err(Error::TooFewLeaves(n));
    }
    let mut trees = vec![Tree::cherry()];
    for _ in 3..=n {
        trees = trees
            .iter()
            .flat_map(|t| (0..t.edge_count()).map(move |e| t.insert_leaf(e)))
            .collect();
    }
    Ok(trees)
}

/// One representative tree per unlabelled shape on `n` leaves.
pub fn all_shapes(n: usize) -> Result<Vec<Tree>> {
    if n < 2 {
        return Err(Error::TooFewLeaves(n));
    }
    let mut shapes = vec![Tree::cherry()];
    for _ in 3..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &shapes {
            for e in 0..t.edge_count() {
                let grown = t.insert_leaf(e);
                if seen.insert(shape_key(&grown)) {
                    next.push(grown);
                }
            }
        }
        shapes = next;
    }
    Ok(shapes)
}

/// Uniformly random labelled tree on `n` leaves (random stepwise addition).
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Tree> {
    if n < 2 {
        return Err(Error::TooFewLeaves(n));
    }
    let mut t = Tree::cherry();
    for _ in 3..=n {
        let e = rng.gen_range(0..t.edge_count());
        t = t.insert_leaf(e);
    }
    Ok(t)
}

/// Label-free canonical string of the tree's shape.
pub fn shape_key(tree: &Tree) -> String {
    let adj = tree.adj();
    let rooted_key = |top: usize, from: usize| -> String {
        // post-order over the side of `top` away from `from`
        let mut order = vec![(top, from)];
        let mut i = 0;
        while i < order.len() {
            let (v, p) = order[i];
            i += 1;
            for &(w, _) in &adj[v] {
                if w != p {
                    order.push((w, v));
                }
            }
        }
        let mut key: Vec<String> = vec![String::new(); adj.len()];
        for &(v, p) in order.iter().rev() {
            let mut parts: Vec<String> = adj[v]
                .iter()
                .filter(|&&(w, _)| w != p)
                .map(|&(w, _)| std::mem::take(&mut key[w]))
                .collect();
            key[v] = if parts.is_empty() {
                "L".to_string()
            } else {
                parts.sort();
                format!("({})", parts.join(","))
            };
        }
        std::mem::take(&mut key[top])
    };
    (0..tree.edge_count())
        .map(|e| {
            let (a, b) = tree.edge_ends(e);
            let mut halves = [rooted_key(a, b), rooted_key(b, a)];
            halves.sort();
            format!("[{},{}]", halves[0], halves[1])
        })
        .min()
        .expect("a tree has at least one edge")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{EdgeId, LeafSet};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn split_set(t: &Tree) -> BTreeSet<EdgeId> {
        t.edges().cloned().collect()
    }

    #[test]
    fn train_track_splits_are_singletons_and_prefixes() {
        for n in 2..=12 {
            let t = Tree::train_track(n).unwrap();
            let mut want = BTreeSet::new();
            for l in 1..=n {
                want.insert(t.edge_for_side(&[l].into_iter().collect()).unwrap());
            }
            for j in 1..n {
                want.insert(t.edge_for_side(&LeafSet::prefix(j)).unwrap());
            }
            assert_eq!(split_set(&t), want, "n={n}");
            assert_eq!(t.edge_count(), want.len());
        }
    }

    #[test]
    fn train_track_small_cases() {
        assert_eq!(Tree::train_track(2).unwrap().edge_count(), 1);
        let t4 = Tree::train_track(4).unwrap();
        assert_eq!(t4, "((1,2),(3,4))".parse().unwrap());
        let t5 = Tree::train_track(5).unwrap();
        let nontrivial: Vec<String> = t5
            .edges()
            .filter(|e| e.len() > 1)
            .map(|e| e.to_string())
            .collect();
        // {1,2}, {1,2,3} = complement {4,5}, {1,2,3,4} = complement {5}
        assert_eq!(nontrivial, ["1-2", "4-5"]);
        assert!(Tree::train_track(1).is_err());
    }

    #[test]
    fn almost_perfect_binary_shapes() {
        let cases = [
            (4, "((1,2),(3,4))"),
            (5, "(((1,2),3),(4,5))"),
            (6, "(((1,2),(3,4)),(5,6))"),
            (7, "(((1,2),(3,4)),((5,6),7))"),
            (8, "(((1,2),(3,4)),((5,6),(7,8)))"),
            (2, "(1,2)"),
            (3, "((1,2),3)"),
        ];
        for (n, text) in cases {
            assert_eq!(
                Tree::almost_perfect_binary(n).unwrap(),
                text.parse().unwrap()
            );
        }
        assert!(Tree::almost_perfect_binary(0).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (2..=7).map(|n| all_trees(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 3, 15, 105, 945]);
        let distinct: HashSet<String> = all_trees(6)
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(distinct.len(), 105);
        // unlabelled unrooted binary trees: 1,1,1,1,2,2,4,6,11 for n = 2..=10
        let shapes: Vec<usize> = (2..=10).map(|n| all_shapes(n).unwrap().len()).collect();
        assert_eq!(shapes, [1, 1, 1, 1, 2, 2, 4, 6, 11]);
    }

    #[test]
    fn shape_key_ignores_labels() {
        let t = Tree::almost_perfect_binary(7).unwrap();
        let r = t.relabel(&[7, 3, 5, 1, 2, 6, 4]).unwrap();
        assert_eq!(shape_key(&t), shape_key(&r));
        assert_ne!(shape_key(&t), shape_key(&Tree::train_track(7).unwrap()));
    }

    #[test]
    fn random_tree_is_deterministic_in_seed() {
        let a = random_tree(12, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let b = random_tree(12, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n(), 12);
    }
}
