//! Cross-module properties: the permutation route and the diagram route must
//! agree, matchings must be involutions, and the tree-pair algebra must obey
//! the group laws.

use proptest::prelude::*;

use thompson_links::diagram::{CrossingConvention, LinkDiagram};
use thompson_links::perm::{self, tree_matching, vine_matching};
use thompson_links::trees::{Arity, PlanarTree, PositiveWord, TreePair};

/// All ternary trees with exactly `carets` carets.
fn ternary_trees(carets: usize) -> Vec<PlanarTree> {
    if carets == 0 {
        return vec![PlanarTree::Leaf];
    }
    let mut out = Vec::new();
    for left in 0..carets {
        for middle in 0..carets - left {
            let right = carets - 1 - left - middle;
            for a in ternary_trees(left) {
                for b in ternary_trees(middle) {
                    for c in ternary_trees(right) {
                        out.push(PlanarTree::Caret(vec![a.clone(), b.clone(), c]));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn tangled_permutations_of_all_small_trees_are_involutions() {
    // ternary trees with up to 9 leaves have up to 4 carets
    let mut seen = 0usize;
    for carets in 0..=4 {
        for tree in ternary_trees(carets) {
            let k = tree.leaf_count();
            assert_eq!(k, 2 * carets + 1);
            let m = tree_matching(&tree).expect("ternary trees have matchings");
            assert_eq!(m.len(), k + 1);
            for point in 0..=k {
                let q = m.partner(point);
                assert_ne!(q, point, "fixed point in {tree}");
                assert_eq!(m.partner(q), point, "not an involution in {tree}");
            }
            // exactly one pair passes through the root point
            assert_eq!(
                (0..=k).filter(|&p| m.partner(p) == 0).count(),
                1,
                "root pair miscounted in {tree}"
            );
            seen += 1;
        }
    }
    // 1 + 1 + 3 + 12 + 55 ternary trees in total
    assert_eq!(seen, 72);
}

#[test]
fn vine_matching_closed_form_is_exact_up_to_50_carets() {
    for carets in 0..=50 {
        let vine = PlanarTree::vine(Arity::Ternary, carets);
        assert_eq!(vine_matching(carets), tree_matching(&vine).unwrap());
    }
}

fn arb_word() -> impl Strategy<Value = PositiveWord> {
    prop::collection::vec(0u32..=4, 1..=6).prop_map(PositiveWord::new)
}

fn arb_ternary_tree() -> impl Strategy<Value = PlanarTree> {
    Just(PlanarTree::Leaf).prop_recursive(5, 40, 3, |inner| {
        prop::collection::vec(inner, 3).prop_map(PlanarTree::Caret)
    })
}

proptest! {
    /// The two component counts come from unrelated code paths: one walks
    /// path rules on trees, the other traces strands of the built diagram.
    #[test]
    fn orbit_count_agrees_with_diagram_tracing(word in arb_word()) {
        let pair = word.to_pair();
        let orbits = perm::orbit_count(&word);
        let diagram = LinkDiagram::build(&pair).unwrap();
        prop_assert_eq!(orbits, diagram.component_count());
        prop_assert_eq!(diagram.crossing_count(), pair.caret_count());
    }

    #[test]
    fn words_reduce_to_vine_bottom_pairs(word in arb_word()) {
        let pair = word.to_pair();
        prop_assert!(pair.is_reduced());
        prop_assert!(pair.bottom().is_vine());
        prop_assert_eq!(pair.leaf_count() % 2, 1);
    }

    #[test]
    fn thompson_cycles_partition_the_points(word in arb_word()) {
        let p = perm::permutation_of_element(&word);
        let pair = word.to_pair();
        let points = pair.leaf_count() + 1;
        let mut seen = vec![false; points];
        let mut previous_min = None;
        for cycle in p.cycles() {
            prop_assert_eq!(cycle.len() % 2, 0, "odd cycle length");
            prop_assert!(cycle.len() >= 2);
            let min = *cycle.iter().min().unwrap();
            prop_assert_eq!(cycle[0], min, "cycle does not open with its minimum");
            prop_assert!(previous_min.is_none_or(|m| m < min), "cycles out of order");
            previous_min = Some(min);
            for &point in cycle {
                prop_assert!(!seen[point], "point {} repeated", point);
                seen[point] = true;
            }
        }
        prop_assert!(seen.into_iter().all(|s| s), "points left uncovered");
        // each orbit eats at least two points
        prop_assert!(p.orbit_count() <= points / 2);
    }

    /// Components only depend on the 4-valent structure, not on which
    /// strand is drawn on top.
    #[test]
    fn component_count_ignores_the_crossing_convention(word in arb_word()) {
        let pair = word.to_pair();
        let a = LinkDiagram::build_with(&pair, false, CrossingConvention::LeftRightOver).unwrap();
        let b = LinkDiagram::build_with(&pair, false, CrossingConvention::MiddleParentOver).unwrap();
        prop_assert_eq!(a.component_count(), b.component_count());
    }

    /// The diagram trace reproduces the full cycles of the Thompson
    /// permutation, not just their number.
    #[test]
    fn diagram_traces_equal_thompson_cycles(word in arb_word()) {
        let pair = word.to_pair();
        let cycles = perm::permutation_of_element(&word);
        let traces: Vec<Vec<usize>> = LinkDiagram::build(&pair)
            .unwrap()
            .components()
            .into_iter()
            .map(|c| c.axis_points)
            .collect();
        prop_assert_eq!(traces.as_slice(), cycles.cycles());
    }

    #[test]
    fn multiplication_is_associative(i in 0usize..6, j in 0usize..6, k in 0usize..6) {
        let (a, b, c) = (
            TreePair::generator(Arity::Ternary, i),
            TreePair::generator(Arity::Ternary, j),
            TreePair::generator(Arity::Ternary, k),
        );
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn tree_serialization_round_trips(tree in arb_ternary_tree()) {
        let text = tree.to_string();
        let back: PlanarTree = text.parse().unwrap();
        prop_assert_eq!(back, tree);
    }

    #[test]
    fn reduce_is_idempotent_on_products(i in 0usize..5, j in 0usize..5) {
        let p = TreePair::generator(Arity::Ternary, i)
            .multiply(&TreePair::generator(Arity::Ternary, j).inverse())
            .unwrap();
        prop_assert_eq!(p.reduce(), p.reduce().reduce());
        prop_assert!(p.is_reduced());
    }
}
