//! Randomized invariants, driven by proptest over Pruefer words.

use proptest::prelude::*;

use treewalk_core::degseq::{compare_majorization, Relation};
use treewalk_core::treekit::{
    build_greedy_tree, canonical_form, edge_shift, prufer_decode, root_views, RootedView, Tree,
};
use treewalk_core::treekit::{
    build_level_greedy_forest, enumerate_trees_with_limit, EnumMode, LeveledDegreeSequence,
};
use treewalk_core::verifier::tree_degree_sequences;
use treewalk_core::walkcount::{
    closed_walks_power, edge_closed_walks, level_census, walk_vector_by_recurrence,
};

/// A random tree on 3..=10 vertices plus a permutation seed.
fn tree_strategy() -> impl Strategy<Value = Tree> {
    (3usize..=10)
        .prop_flat_map(|n| proptest::collection::vec(0..n, n - 2))
        .prop_map(|word| prufer_decode(word.len() + 2, &word).unwrap())
}

fn relabel(t: &Tree, perm: &[usize]) -> Tree {
    let edges: Vec<(usize, usize)> = t.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    Tree::from_edges(t.n(), &edges).unwrap()
}

proptest! {
    #[test]
    fn canonical_form_is_relabeling_invariant(t in tree_strategy(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..t.n()).collect();
        let mut state = seed | 1;
        for i in (1..perm.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(canonical_form(&t), canonical_form(&relabel(&t, &perm)));
    }

    #[test]
    fn majorization_is_reflexive_and_transitive(
        a in proptest::collection::vec(0i64..50, 1..12),
        b in proptest::collection::vec(0i64..50, 1..12),
        c in proptest::collection::vec(0i64..50, 1..12),
    ) {
        prop_assert_eq!(compare_majorization(&a, &a).relation, Relation::Equal);
        let ab = compare_majorization(&a, &b);
        let bc = compare_majorization(&b, &c);
        if ab.weak_or_better() && bc.weak_or_better() {
            prop_assert!(compare_majorization(&a, &c).weak_or_better());
        }
    }

    #[test]
    fn engines_agree_on_random_views(t in tree_strategy(), root in any::<usize>(), k in 0usize..=12) {
        let k = k & !1; // even
        let rv = RootedView::single_rooted(&t, root % t.n()).unwrap();
        prop_assert_eq!(walk_vector_by_recurrence(&t, &rv, k), closed_walks_power(&t, k));
    }

    #[test]
    fn edge_walks_are_reversal_symmetric(t in tree_strategy(), e in any::<usize>(), k in 0usize..=10) {
        let (u, v) = t.edges()[e % t.edges().len()];
        prop_assert_eq!(
            edge_closed_walks(&t, u, v, k).unwrap(),
            edge_closed_walks(&t, v, u, k).unwrap()
        );
    }

    #[test]
    fn census_marginals_match_the_power_engine(t in tree_strategy(), v in any::<usize>(), k in 0usize..=8) {
        let k = k & !1;
        let v = v % t.n();
        for rv in root_views(&t) {
            let census = level_census(&t, &rv, v, k).unwrap();
            prop_assert_eq!(census.total(), closed_walks_power(&t, k).counts[v].clone());
        }
    }

    #[test]
    fn odd_walk_vectors_vanish(t in tree_strategy(), k in 0usize..=6) {
        let counts = closed_walks_power(&t, 2 * k + 1).counts;
        prop_assert!(counts.iter().all(|c| c == &num_bigint::BigUint::ZERO));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Greedy trees have nonincreasing walk vectors along their BFS order
    /// (the U* claim), for every sequence drawn from the n <= 8 pool.
    #[test]
    fn greedy_walk_vectors_are_bfs_sorted(n in 2usize..=8, idx in any::<usize>(), k in 1usize..=5) {
        let seqs = tree_degree_sequences(n);
        let pi = &seqs[idx % seqs.len()];
        let (t, _) = build_greedy_tree(pi);
        let counts = closed_walks_power(&t, 2 * k).counts;
        prop_assert!(counts.windows(2).all(|w| w[0] >= w[1]));
    }

    /// Shifting an edge and shifting it back restores the tree up to
    /// isomorphism.
    #[test]
    fn edge_shift_roundtrips(t in tree_strategy(), root in any::<usize>(), pick in any::<usize>()) {
        let rv = RootedView::single_rooted(&t, root % t.n()).unwrap();
        let mut options = Vec::new();
        for x in 0..t.n() {
            for &x1 in rv.children(x) {
                let branch = rv.subtree(x1);
                for xp in 0..t.n() {
                    if xp != x && rv.level(xp) == rv.level(x) && !branch.contains(&xp) {
                        options.push((x, x1, xp));
                    }
                }
            }
        }
        prop_assume!(!options.is_empty());
        let (x, x1, xp) = options[pick % options.len()];
        let shifted = edge_shift(&t, &rv, x, x1, xp).unwrap();
        let rv2 = RootedView::single_rooted(&shifted, root % t.n()).unwrap();
        let back = edge_shift(&shifted, &rv2, xp, x1, x).unwrap();
        prop_assert_eq!(canonical_form(&back), canonical_form(&t));
    }
}

/// Within every level of a level greedy forest, walk counts are
/// nonincreasing along the greedy BFS order.
#[test]
fn level_greedy_forest_counts_monotone_within_levels() {
    for n in 2..=6usize {
        for pi in tree_degree_sequences(n) {
            for t in enumerate_trees_with_limit(&pi, EnumMode::Unlabeled, 10).unwrap() {
                for rv in root_views(&t) {
                    let lds = LeveledDegreeSequence::from_view(&t, &rv);
                    let (g, grv, ord) = build_level_greedy_forest(&lds).unwrap();
                    for k in [2usize, 4, 6] {
                        let counts = closed_walks_power(&g, k).counts;
                        for level in ord.by_level(&grv) {
                            for w in level.windows(2) {
                                assert!(
                                    counts[w[0]] >= counts[w[1]],
                                    "level order broken at k={k} on {:?}",
                                    g.edges()
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}
