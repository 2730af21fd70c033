use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tnsrank::model::EdgeFunction;
use tnsrank::tree::random_tree;
use tnsrank::{
    brute_force_min_mono, check_membership, construct_hard_subset, flattening_rank, max_colour_cut,
    min_mono_cut, min_product_cut, optimalize, parse_tree, predict_rank, sample_tns_tensor,
    verify_colour_cut, verify_mono_cut, FieldPrime, LeafSet, TnsModel, Tree,
};

fn tree_and_subset(max_leaves: usize) -> impl Strategy<Value = (Tree, LeafSet)> {
    (2..=max_leaves, any::<u64>(), any::<u64>()).prop_map(|(n, seed, mask)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_tree(n, &mut rng).unwrap();
        let a = (1..=n).filter(|l| mask >> (l - 1) & 1 == 1).collect();
        (tree, a)
    })
}

fn random_model(rng: &mut ChaCha8Rng, n: usize, max_f: u64, max_dim: u64) -> TnsModel {
    let tree = random_tree(n, rng).unwrap();
    let pairs: Vec<_> = tree
        .edges()
        .map(|e| (e.clone(), rng.gen_range(1..=max_f)))
        .collect();
    let f = EdgeFunction::from_pairs(&tree, pairs).unwrap();
    let dims = (0..n).map(|_| rng.gen_range(2..=max_dim)).collect();
    TnsModel::new(tree, f, dims).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dp_matches_brute_force((tree, a) in tree_and_subset(9)) {
        let dp = min_mono_cut(&tree, &a).unwrap();
        prop_assert_eq!(dp.size, brute_force_min_mono(&tree, &a).unwrap());
        prop_assert_eq!(dp.size, dp.witness.len());
        prop_assert!(verify_mono_cut(&tree, &a, &dp.witness).unwrap());
    }

    #[test]
    fn mono_is_colour_plus_one((tree, a) in tree_and_subset(16)) {
        let mono = min_mono_cut(&tree, &a).unwrap();
        let colour = max_colour_cut(&tree, &a).unwrap();
        let n = tree.n();
        if a.is_empty() || a.len() == n {
            prop_assert_eq!(mono.size, 0);
            prop_assert!(colour.is_none());
        } else {
            let colour = colour.unwrap();
            prop_assert_eq!(mono.size, colour.size + 1);
            prop_assert!(verify_colour_cut(&tree, &a, &colour.witness).unwrap());
        }
    }

    #[test]
    fn colour_swap_symmetry((tree, a) in tree_and_subset(16)) {
        let b = a.complement(tree.n());
        prop_assert_eq!(min_mono_cut(&tree, &a).unwrap().size, min_mono_cut(&tree, &b).unwrap().size);
        prop_assert_eq!(
            max_colour_cut(&tree, &a).unwrap().map(|c| c.size),
            max_colour_cut(&tree, &b).unwrap().map(|c| c.size)
        );
    }

    #[test]
    fn minmono_is_at_most_size_of_smaller_side((tree, a) in tree_and_subset(16)) {
        let smaller = a.len().min(tree.n() - a.len());
        prop_assert!(min_mono_cut(&tree, &a).unwrap().size <= smaller);
    }

    #[test]
    fn constant_product_is_power((tree, a) in tree_and_subset(14), r in 1u64..5) {
        let f = EdgeFunction::constant(&tree, r).unwrap();
        let k = min_mono_cut(&tree, &a).unwrap().size;
        let p = min_product_cut(&tree, &a, &f).unwrap();
        prop_assert_eq!(p.product, BigUint::from(r).pow(k as u32));
        prop_assert!(verify_mono_cut(&tree, &a, &p.witness).unwrap());
    }

    #[test]
    fn product_cut_beats_the_cardinality_witness(seed in any::<u64>(), mask in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=10);
        let m = random_model(&mut rng, n, 6, 3);
        let a: LeafSet = (1..=n).filter(|l| mask >> (l - 1) & 1 == 1).collect();
        let best = min_product_cut(m.tree(), &a, m.f()).unwrap();
        let card = min_mono_cut(m.tree(), &a).unwrap();
        let card_product: BigUint = card.witness.iter().map(|e| BigUint::from(m.f().get(e).unwrap())).product();
        prop_assert!(best.product <= card_product);
        let witness_product: BigUint = best.witness.iter().map(|e| BigUint::from(m.f().get(e).unwrap())).product();
        prop_assert_eq!(witness_product, best.product);
    }

    #[test]
    fn parse_serialize_round_trip((tree, _a) in tree_and_subset(20)) {
        let text = tree.to_string();
        let back = parse_tree(&text).unwrap();
        prop_assert_eq!(&back, &tree);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn edge_sides_partition_the_leaves((tree, _a) in tree_and_subset(20)) {
        let n = tree.n();
        let expected = if n == 2 { 1 } else { 2 * n - 3 };
        prop_assert_eq!(tree.edge_count(), expected);
        for e in tree.edges() {
            let left = tree.leaves_left_of(e).unwrap();
            let right = left.complement(n);
            prop_assert!(!left.is_empty() && !right.is_empty());
            prop_assert_eq!(left.len() + right.len(), n);
            prop_assert_eq!(left.union(&right).len(), n);
            prop_assert_eq!(min_mono_cut(&tree, &left).unwrap().size, 1);
        }
    }

    #[test]
    fn relabelling_preserves_cut_sizes((tree, a) in tree_and_subset(12), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let n = tree.n();
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let relabelled = tree.relabel(&perm).unwrap();
        let moved: LeafSet = a.iter().map(|l| perm[l - 1]).collect();
        prop_assert_eq!(min_mono_cut(&tree, &a).unwrap().size, min_mono_cut(&relabelled, &moved).unwrap().size);
    }

    #[test]
    fn hard_subset_needs_half_the_leaves(seed in any::<u64>(), n in 2usize..40) {
        let tree = random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let a = construct_hard_subset(&tree).unwrap();
        prop_assert!(min_mono_cut(&tree, &a).unwrap().size >= n / 2);
    }

    #[test]
    fn optimalize_is_a_lowering_fixed_point(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=9);
        let m = random_model(&mut rng, n, 20, 4);
        let o = optimalize(&m).unwrap();
        prop_assert_eq!(optimalize(&o).unwrap(), o.clone());
        for (e, v) in o.f().iter() {
            prop_assert!(v >= 1 && v <= m.f().get(e).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prediction_bounds_sampled_rank(seed in any::<u64>(), mask in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=6);
        let m = random_model(&mut rng, n, 4, 3);
        let a: LeafSet = (1..=n).filter(|l| mask >> (l - 1) & 1 == 1).collect();
        let t = sample_tns_tensor(&m, seed, FieldPrime::DEFAULT).unwrap();
        let rank = flattening_rank(&t, &a).unwrap();
        prop_assert!(BigUint::from(rank) <= predict_rank(&m, &a).unwrap().value);
        prop_assert_eq!(rank, flattening_rank(&t, &a.complement(n)).unwrap());
        prop_assert!(check_membership(&t, &m).unwrap());
    }

    #[test]
    fn constant_models_attain_the_prediction((tree, a) in tree_and_subset(6), seed in any::<u64>()) {
        let m = TnsModel::constant(tree, 2).unwrap();
        let predicted = predict_rank(&m, &a).unwrap();
        prop_assert!(predicted.exact);
        let best = (0..3)
            .map(|i| {
                let t = sample_tns_tensor(&m, seed.wrapping_add(i), FieldPrime::DEFAULT).unwrap();
                flattening_rank(&t, &a).unwrap()
            })
            .max()
            .unwrap();
        prop_assert_eq!(BigUint::from(best), predicted.value);
    }
}
