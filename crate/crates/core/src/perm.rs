//! Tangled permutations of ternary trees and the Thompson permutation of a
//! tree pair.
//!
//! Number the leaves of a ternary tree 1..=k from left to right and give the
//! root the extra point 0. From every leaf there is a unique path through
//! the tree obtained from four local rules: entering a caret from its left
//! child exits down its right child, entering from the right child exits
//! down the left child, entering from the middle child keeps climbing to the
//! parent, and descending into a caret from above continues into the middle
//! child. Each path ends at another leaf or at the root, and the resulting
//! pairing is a fixed-point-free involution on {0, ..., k}: the tangled
//! permutation of the tree.
//!
//! The Thompson permutation of a pair alternates the tangled permutations of
//! the top and the bottom tree. Its cycles are exactly the components of the
//! closed-up link diagram, each cycle listing the axis points of one
//! component in traversal order when the component is oriented upward at its
//! leftmost axis point.

use std::fmt;

use thiserror::Error;

use crate::trees::{self, Arity, PlanarTree, PositiveWord, TreeError, TreePair};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("expected a ternary tree; lift binary diagrams through iota first")]
    BinaryTree,
    #[error("matching sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("not a fixed-point-free involution on an even point set")]
    NotAnInvolution,
    #[error("axis point {point} is not a glued leaf pair; expected 1..={leaves}")]
    AxisPointOutOfRange { point: usize, leaves: usize },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A fixed-point-free involution on the points {0, ..., k} with k odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    partner: Vec<usize>,
}

impl Matching {
    /// Builds a matching from a full partner table.
    pub fn from_partner_table(partner: Vec<usize>) -> Result<Self, PermError> {
        let n = partner.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(PermError::NotAnInvolution);
        }
        for (i, &j) in partner.iter().enumerate() {
            if j >= n || j == i || partner[j] != i {
                return Err(PermError::NotAnInvolution);
            }
        }
        Ok(Matching { partner })
    }

    /// Builds a matching on {0, ..., size-1} from its list of pairs.
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self, PermError> {
        let mut partner = vec![usize::MAX; size];
        for &(a, b) in pairs {
            if a >= size || b >= size || partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(PermError::NotAnInvolution);
            }
            partner[a] = b;
            partner[b] = a;
        }
        Matching::from_partner_table(partner)
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a matching always covers at least the pair through 0
    }

    pub fn partner(&self, point: usize) -> usize {
        self.partner[point]
    }

    /// The pairs as (min, max), ordered by minimum.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&i| i < self.partner[i])
            .map(|i| (i, self.partner[i]))
            .collect()
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.pairs() {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

/// Flat view of a ternary tree for path walking.
struct Walker {
    /// (parent id, child position) per node; the root has no parent.
    parent: Vec<Option<(usize, u8)>>,
    children: Vec<Option<[usize; 3]>>,
    /// 1-based leaf number, 0 for carets.
    leaf_number: Vec<usize>,
    leaves: Vec<usize>,
    edges: usize,
}

impl Walker {
    fn build(tree: &PlanarTree) -> Result<Self, PermError> {
        let mut walker = Walker {
            parent: Vec::new(),
            children: Vec::new(),
            leaf_number: Vec::new(),
            leaves: Vec::new(),
            edges: 0,
        };
        walker.add(tree, None)?;
        Ok(walker)
    }

    fn add(&mut self, tree: &PlanarTree, parent: Option<(usize, u8)>) -> Result<usize, PermError> {
        let id = self.parent.len();
        self.parent.push(parent);
        self.children.push(None);
        self.leaf_number.push(0);
        if parent.is_some() {
            self.edges += 1;
        }
        match tree {
            PlanarTree::Leaf => {
                self.leaves.push(id);
                self.leaf_number[id] = self.leaves.len();
            }
            PlanarTree::Caret(children) => {
                if children.len() != 3 {
                    return Err(PermError::BinaryTree);
                }
                let mut ids = [0usize; 3];
                for (pos, child) in children.iter().enumerate() {
                    ids[pos] = self.add(child, Some((id, pos as u8)))?;
                }
                self.children[id] = Some(ids);
            }
        }
        Ok(id)
    }

    /// Walks the path starting upward from a leaf node; returns the axis
    /// point it ends on (a leaf number, or 0 for the root).
    fn walk_up(&self, start: usize) -> usize {
        let mut current = start;
        let mut steps = 0usize;
        loop {
            self.bound_check(&mut steps);
            match self.parent[current] {
                None => return 0,
                Some((parent, position)) => match position {
                    // left child in, down the right child
                    0 => return self.walk_down(self.children[parent].unwrap()[2], steps),
                    // middle child in, keep climbing
                    1 => current = parent,
                    // right child in, down the left child
                    _ => return self.walk_down(self.children[parent].unwrap()[0], steps),
                },
            }
        }
    }

    /// Entering a subtree from above always continues into middle children
    /// until a leaf is reached.
    fn walk_down(&self, mut current: usize, mut steps: usize) -> usize {
        loop {
            self.bound_check(&mut steps);
            match self.children[current] {
                None => return self.leaf_number[current],
                Some(ids) => current = ids[1],
            }
        }
    }

    fn bound_check(&self, steps: &mut usize) {
        *steps += 1;
        assert!(
            *steps <= 2 * self.edges + 2,
            "path walk exceeded the edge bound; the tree is malformed"
        );
    }
}

/// The tangled permutation of a ternary tree: walks the path from every leaf
/// and matches up the endpoints, with the root contributing point 0.
pub fn tree_matching(tree: &PlanarTree) -> Result<Matching, PermError> {
    if tree.arity() == Some(Arity::Binary) {
        return Err(PermError::BinaryTree);
    }
    let walker = Walker::build(tree)?;
    let points = walker.leaves.len() + 1;
    let mut partner = vec![usize::MAX; points];
    for &leaf in &walker.leaves {
        let from = walker.leaf_number[leaf];
        let to = walker.walk_up(leaf);
        if partner[from] != usize::MAX && partner[from] != to {
            return Err(PermError::NotAnInvolution);
        }
        partner[from] = to;
        partner[to] = from;
    }
    Matching::from_partner_table(partner)
}

/// Closed form for the tangled permutation of the right vine with `carets`
/// carets: (0,2), (2i-1, 2i+2) for 1 <= i < carets, and (2c-1, 2c+1).
/// Agrees with `tree_matching` on the corresponding vine.
pub fn vine_matching(carets: usize) -> Matching {
    if carets == 0 {
        return Matching::from_pairs(2, &[(0, 1)]).unwrap();
    }
    let mut pairs = Vec::with_capacity(carets + 1);
    pairs.push((0, 2));
    for i in 1..carets {
        pairs.push((2 * i - 1, 2 * i + 2));
    }
    pairs.push((2 * carets - 1, 2 * carets + 1));
    Matching::from_pairs(2 * carets + 2, &pairs).expect("vine matching is a valid involution")
}

/// A permutation of {0, ..., k} written as disjoint cycles. Every cycle has
/// even length, opens with its minimum and the cycles are listed by
/// increasing minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThompsonPermutation {
    cycles: Vec<Vec<usize>>,
}

impl ThompsonPermutation {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Number of orbits, which equals the number of link components.
    pub fn orbit_count(&self) -> usize {
        self.cycles.len()
    }

    /// Total number of points.
    pub fn point_count(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    /// The cycle through a given point.
    pub fn cycle_through(&self, point: usize) -> Option<&[usize]> {
        self.cycles
            .iter()
            .find(|c| c.contains(&point))
            .map(Vec::as_slice)
    }
}

impl fmt::Display for ThompsonPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Alternates the two involutions starting from the smallest unused point:
/// the cycle through s is (s, top(s), bottom(top(s)), ...) until the walk
/// returns to s. Starting with the top matching orients every component
/// upward at its smallest axis point.
pub fn thompson_permutation(
    top: &Matching,
    bottom: &Matching,
) -> Result<ThompsonPermutation, PermError> {
    if top.len() != bottom.len() {
        return Err(PermError::SizeMismatch(top.len(), bottom.len()));
    }
    let n = top.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut point = start;
        let mut apply_top = true;
        loop {
            point = if apply_top { top.partner(point) } else { bottom.partner(point) };
            apply_top = !apply_top;
            if point == start {
                break;
            }
            seen[point] = true;
            cycle.push(point);
        }
        debug_assert_eq!(cycle.len() % 2, 0, "alternating cycles have even length");
        cycles.push(cycle);
    }
    Ok(ThompsonPermutation { cycles })
}

/// The Thompson permutation of an arbitrary pair, computed on the trees as
/// given, without reducing first. Binary pairs are lifted through iota.
/// Use [`permutation_of_element`] for the canonical permutation of the
/// group element, which is defined on the reduced representative.
pub fn pair_permutation(pair: &TreePair) -> Result<ThompsonPermutation, PermError> {
    let lifted;
    let pair = if pair.arity() == Some(Arity::Binary) {
        lifted = trees::iota_pair(pair)?;
        &lifted
    } else {
        pair
    };
    let top = tree_matching(pair.top())?;
    let bottom = tree_matching(pair.bottom())?;
    thompson_permutation(&top, &bottom)
}

/// The Thompson permutation of a positive word, computed on its reduced
/// tree diagram.
pub fn permutation_of_element(word: &PositiveWord) -> ThompsonPermutation {
    pair_permutation(&word.to_pair()).expect("positive words produce valid ternary pairs")
}

/// Number of orbits of the Thompson permutation of a positive word, which
/// is the number of connected components of the closed-up link.
pub fn orbit_count(word: &PositiveWord) -> usize {
    permutation_of_element(word).orbit_count()
}

/// Reverses the orientation of the link component through the glued leaf
/// pair at `point` by splicing in a copy of the first generator: its top
/// tree is grafted at leaf `point` of the top tree and its bottom tree at
/// leaf `point` of the bottom tree. The orbit count is unchanged and the
/// marked orbit traverses its points in the reversed cyclic order.
///
/// `point` refers to the leaves of the reduced representative; point 0 is
/// the closure arc, not a glued leaf pair, and is rejected.
pub fn reverse_component(pair: &TreePair, point: usize) -> Result<TreePair, PermError> {
    let reduced = pair.reduce();
    let leaves = reduced.leaf_count();
    if point == 0 || point > leaves {
        return Err(PermError::AxisPointOutOfRange { point, leaves });
    }
    let insert = match reduced.arity() {
        Some(Arity::Binary) => TreePair::generator(Arity::Binary, 0),
        _ => TreePair::generator(Arity::Ternary, 0),
    };
    let top = reduced.top().graft(point, insert.top())?;
    let bottom = reduced.bottom().graft(point, insert.bottom())?;
    Ok(TreePair::new(top, bottom)?)
}
