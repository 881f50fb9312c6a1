//! Planar rooted trees, tree-pair diagrams and the positive-word algebra of
//! the Thompson group F (binary carets) and the Brown-Thompson group F3
//! (ternary carets).
//!
//! A pair `(top, bottom)` of trees with equal leaf counts represents a group
//! element; two pairs represent the same element when they differ by pairs of
//! opposing carets. Multiplication glues `p.bottom` against `q.top` along
//! their minimal common refinement. Positive elements are products of the
//! generators without inverses and always admit a representative whose bottom
//! tree is a right vine.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Caret arity: 2 for F, 3 for F3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arity {
    Binary,
    Ternary,
}

impl Arity {
    pub fn child_count(self) -> usize {
        match self {
            Arity::Binary => 2,
            Arity::Ternary => 3,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("arity mismatch: {0:?} vs {1:?}")]
    ArityMismatch(Arity, Arity),
    #[error("caret has {0} children, expected 2 or 3")]
    BadCaretWidth(usize),
    #[error("mixed caret arities within one tree")]
    MixedArity,
    #[error("leaf index {index} out of range 1..={leaves}")]
    LeafIndexOutOfRange { index: usize, leaves: usize },
    #[error("top tree has {top} leaves, bottom tree has {bottom}")]
    LeafCountMismatch { top: usize, bottom: usize },
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: &'static str },
}

/// A planar rooted tree. Every caret has exactly two or three ordered
/// children and all carets of one tree share the same arity. Leaves are
/// numbered 1..=k in planar left-to-right order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PlanarTree {
    Leaf,
    Caret(Vec<PlanarTree>),
}

use PlanarTree::{Caret, Leaf};

impl PlanarTree {
    /// A single caret whose children are all leaves.
    pub fn bare_caret(arity: Arity) -> Self {
        Caret(vec![Leaf; arity.child_count()])
    }

    /// The right vine with `carets` carets: every caret hangs off the
    /// rightmost child of the one above it. Zero carets give a single leaf.
    /// This is the canonical bottom tree of positive elements.
    pub fn vine(arity: Arity, carets: usize) -> Self {
        let mut tree = Leaf;
        for _ in 0..carets {
            let mut children = vec![Leaf; arity.child_count()];
            *children.last_mut().unwrap() = tree;
            tree = Caret(children);
        }
        tree
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Leaf)
    }

    /// True if every caret lies on the rightmost path.
    pub fn is_vine(&self) -> bool {
        match self {
            Leaf => true,
            Caret(children) => {
                let (last, front) = children.split_last().unwrap();
                front.iter().all(PlanarTree::is_leaf) && last.is_vine()
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Leaf => 1,
            Caret(children) => children.iter().map(PlanarTree::leaf_count).sum(),
        }
    }

    pub fn caret_count(&self) -> usize {
        match self {
            Leaf => 0,
            Caret(children) => 1 + children.iter().map(PlanarTree::caret_count).sum::<usize>(),
        }
    }

    /// Arity of the root caret; `None` for a bare leaf, which is compatible
    /// with both groups.
    pub fn arity(&self) -> Option<Arity> {
        match self {
            Leaf => None,
            Caret(children) => match children.len() {
                2 => Some(Arity::Binary),
                _ => Some(Arity::Ternary),
            },
        }
    }

    /// Checks that all carets have a legal and equal child count, returning
    /// the common arity.
    pub fn uniform_arity(&self) -> Result<Option<Arity>, TreeError> {
        match self {
            Leaf => Ok(None),
            Caret(children) => {
                let own = match children.len() {
                    2 => Arity::Binary,
                    3 => Arity::Ternary,
                    n => return Err(TreeError::BadCaretWidth(n)),
                };
                for child in children {
                    if let Some(a) = child.uniform_arity()? {
                        if a != own {
                            return Err(TreeError::MixedArity);
                        }
                    }
                }
                Ok(Some(own))
            }
        }
    }

    /// Replaces the leaf at 1-based position `leaf_index` by `scion`.
    pub fn graft(&self, leaf_index: usize, scion: &PlanarTree) -> Result<PlanarTree, TreeError> {
        if let (Some(a), Some(b)) = (self.arity(), scion.arity()) {
            if a != b {
                return Err(TreeError::ArityMismatch(a, b));
            }
        }
        let leaves = self.leaf_count();
        if leaf_index == 0 || leaf_index > leaves {
            return Err(TreeError::LeafIndexOutOfRange { index: leaf_index, leaves });
        }
        let mut next = 1usize;
        Ok(self.graft_walk(&mut next, leaf_index, scion))
    }

    fn graft_walk(&self, next: &mut usize, target: usize, scion: &PlanarTree) -> PlanarTree {
        match self {
            Leaf => {
                let here = *next;
                *next += 1;
                if here == target {
                    scion.clone()
                } else {
                    Leaf
                }
            }
            Caret(children) => Caret(
                children
                    .iter()
                    .map(|c| c.graft_walk(next, target, scion))
                    .collect(),
            ),
        }
    }

    /// Replaces leaf i by `extensions[i-1]` for every leaf at once.
    fn graft_all(&self, extensions: &[PlanarTree]) -> PlanarTree {
        debug_assert_eq!(extensions.len(), self.leaf_count());
        let mut next = 0usize;
        self.graft_all_walk(&mut next, extensions)
    }

    fn graft_all_walk(&self, next: &mut usize, extensions: &[PlanarTree]) -> PlanarTree {
        match self {
            Leaf => {
                let tree = extensions[*next].clone();
                *next += 1;
                tree
            }
            Caret(children) => Caret(
                children
                    .iter()
                    .map(|c| c.graft_all_walk(next, extensions))
                    .collect(),
            ),
        }
    }

    /// 1-based starting leaf positions of carets whose children are all
    /// leaves. Only such carets can take part in an opposing pair.
    fn bare_caret_positions(&self, start: usize, out: &mut Vec<usize>) -> usize {
        match self {
            Leaf => start + 1,
            Caret(children) => {
                if children.iter().all(PlanarTree::is_leaf) {
                    out.push(start);
                    start + children.len()
                } else {
                    let mut pos = start;
                    for child in children {
                        pos = child.bare_caret_positions(pos, out);
                    }
                    pos
                }
            }
        }
    }

    /// Collapses the all-leaf caret whose first leaf sits at 1-based
    /// position `target` back into a single leaf.
    fn collapse_bare_caret(&self, next: &mut usize, target: usize) -> PlanarTree {
        match self {
            Leaf => {
                *next += 1;
                Leaf
            }
            Caret(children) => {
                if *next == target && children.iter().all(PlanarTree::is_leaf) {
                    *next += children.len();
                    Leaf
                } else {
                    Caret(
                        children
                            .iter()
                            .map(|c| c.collapse_bare_caret(next, target))
                            .collect(),
                    )
                }
            }
        }
    }
}

/// Minimal common refinement: the smallest tree containing both arguments as
/// rooted prefixes.
fn refine(a: &PlanarTree, b: &PlanarTree) -> Result<PlanarTree, TreeError> {
    match (a, b) {
        (Leaf, t) | (t, Leaf) => Ok(t.clone()),
        (Caret(x), Caret(y)) => {
            if x.len() != y.len() {
                return Err(TreeError::ArityMismatch(
                    a.arity().unwrap(),
                    b.arity().unwrap(),
                ));
            }
            let children = x
                .iter()
                .zip(y)
                .map(|(l, r)| refine(l, r))
                .collect::<Result<_, _>>()?;
            Ok(Caret(children))
        }
    }
}

/// For `prefix` a rooted prefix of `refined`, collects the subtree of
/// `refined` sitting under each leaf of `prefix`, in leaf order.
fn leaf_extensions(prefix: &PlanarTree, refined: &PlanarTree, out: &mut Vec<PlanarTree>) {
    match (prefix, refined) {
        (Leaf, t) => out.push(t.clone()),
        (Caret(x), Caret(y)) => {
            for (p, r) in x.iter().zip(y) {
                leaf_extensions(p, r, out);
            }
        }
        (Caret(_), Leaf) => unreachable!("refinement must contain the prefix"),
    }
}

impl fmt::Display for PlanarTree {
    /// Serializes a tree: `.` for a leaf, `(AB)` or `(ABC)` for a caret with
    /// children in planar order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf => f.write_str("."),
            Caret(children) => {
                f.write_str("(")?;
                for child in children {
                    write!(f, "{child}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for PlanarTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let tree = parse_tree(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(TreeError::Parse { at: pos, msg: "trailing input" });
        }
        tree.uniform_arity()?;
        Ok(tree)
    }
}

fn parse_tree(bytes: &[u8], pos: &mut usize) -> Result<PlanarTree, TreeError> {
    match bytes.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            Ok(Leaf)
        }
        Some(b'(') => {
            *pos += 1;
            let mut children = Vec::new();
            loop {
                match bytes.get(*pos) {
                    Some(b')') => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => children.push(parse_tree(bytes, pos)?),
                    None => return Err(TreeError::Parse { at: *pos, msg: "unclosed caret" }),
                }
            }
            if children.len() != 2 && children.len() != 3 {
                return Err(TreeError::BadCaretWidth(children.len()));
            }
            Ok(Caret(children))
        }
        _ => Err(TreeError::Parse { at: *pos, msg: "expected '.' or '('" }),
    }
}

/// A tree diagram `(top, bottom)` with equal leaf counts, representing an
/// element of F or F3. The pair knows whether it is reduced, meaning no
/// caret of the top tree opposes a caret of the bottom tree on the same
/// consecutive leaf positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreePair {
    top: PlanarTree,
    bottom: PlanarTree,
    reduced: bool,
}

impl TreePair {
    /// Builds a pair, validating leaf counts and arities. The pair is not
    /// reduced automatically.
    pub fn new(top: PlanarTree, bottom: PlanarTree) -> Result<Self, TreeError> {
        let (t, b) = (top.leaf_count(), bottom.leaf_count());
        if t != b {
            return Err(TreeError::LeafCountMismatch { top: t, bottom: b });
        }
        if let (Some(a), Some(c)) = (top.uniform_arity()?, bottom.uniform_arity()?) {
            if a != c {
                return Err(TreeError::ArityMismatch(a, c));
            }
        }
        let reduced = opposing_caret(&top, &bottom).is_none();
        Ok(TreePair { top, bottom, reduced })
    }

    /// The identity element: a pair of bare leaves.
    pub fn identity() -> Self {
        TreePair { top: Leaf, bottom: Leaf, reduced: true }
    }

    /// The i-th monoid generator: `y_i` for binary arity, `x_i` for ternary.
    ///
    /// The top tree is a vine with one extra caret grafted at 0-based leaf
    /// `index`, the bottom tree is the vine with one more caret. The
    /// presentation relations `y_n y_l = y_l y_{n+1}` and
    /// `x_n x_l = x_l x_{n+2}` (for l < n) pin these shapes down.
    pub fn generator(arity: Arity, index: usize) -> Self {
        let vine_carets = match arity {
            Arity::Binary => index + 1,
            Arity::Ternary => index / 2 + 1,
        };
        let top = PlanarTree::vine(arity, vine_carets)
            .graft(index + 1, &PlanarTree::bare_caret(arity))
            .expect("generator graft index is always in range");
        let bottom = PlanarTree::vine(arity, vine_carets + 1);
        TreePair::new(top, bottom).expect("generator pairs are well formed")
    }

    pub fn top(&self) -> &PlanarTree {
        &self.top
    }

    pub fn bottom(&self) -> &PlanarTree {
        &self.bottom
    }

    pub fn leaf_count(&self) -> usize {
        self.top.leaf_count()
    }

    pub fn caret_count(&self) -> usize {
        self.top.caret_count() + self.bottom.caret_count()
    }

    pub fn arity(&self) -> Option<Arity> {
        self.top.arity().or(self.bottom.arity())
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// The inverse element: the same trees swapped.
    pub fn inverse(&self) -> Self {
        TreePair {
            top: self.bottom.clone(),
            bottom: self.top.clone(),
            reduced: self.reduced,
        }
    }

    /// Removes opposing caret pairs, leftmost first, until none remain.
    /// The result is the unique minimal representative of the element.
    pub fn reduce(&self) -> TreePair {
        if self.reduced {
            return self.clone();
        }
        let mut top = self.top.clone();
        let mut bottom = self.bottom.clone();
        while let Some(pos) = opposing_caret(&top, &bottom) {
            let mut next = 1usize;
            top = top.collapse_bare_caret(&mut next, pos);
            let mut next = 1usize;
            bottom = bottom.collapse_bare_caret(&mut next, pos);
        }
        TreePair { top, bottom, reduced: true }
    }

    /// Group multiplication `(T+, T) * (T, T-) = (T+, T-)`: lifts both pairs
    /// to the common refinement of `self.bottom` and `other.top` and returns
    /// the reduced result.
    pub fn multiply(&self, other: &TreePair) -> Result<TreePair, TreeError> {
        Ok(self.multiply_unreduced(other)?.reduce())
    }

    /// Multiplication without the final reduction step, exposed for tests
    /// that need controlled unreduced diagrams.
    pub fn multiply_unreduced(&self, other: &TreePair) -> Result<TreePair, TreeError> {
        if let (Some(a), Some(b)) = (self.arity(), other.arity()) {
            if a != b {
                return Err(TreeError::ArityMismatch(a, b));
            }
        }
        let common = refine(&self.bottom, &other.top)?;

        let mut ext = Vec::with_capacity(self.bottom.leaf_count());
        leaf_extensions(&self.bottom, &common, &mut ext);
        let top = self.top.graft_all(&ext);

        ext.clear();
        leaf_extensions(&other.top, &common, &mut ext);
        let bottom = other.bottom.graft_all(&ext);

        TreePair::new(top, bottom)
    }
}

/// Smallest 1-based leaf position at which an all-leaf caret of `top` faces
/// an all-leaf caret of `bottom`, if any.
fn opposing_caret(top: &PlanarTree, bottom: &PlanarTree) -> Option<usize> {
    let mut top_positions = Vec::new();
    top.bare_caret_positions(1, &mut top_positions);
    let mut bottom_positions = Vec::new();
    bottom.bare_caret_positions(1, &mut bottom_positions);
    // both lists are ascending by construction
    let mut i = 0;
    let mut j = 0;
    while i < top_positions.len() && j < bottom_positions.len() {
        match top_positions[i].cmp(&bottom_positions[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some(top_positions[i]),
        }
    }
    None
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.top, self.bottom)
    }
}

impl FromStr for TreePair {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bar = s.find('|').ok_or(TreeError::Parse { at: s.len(), msg: "missing '|'" })?;
        let top: PlanarTree = s[..bar].parse()?;
        let bottom: PlanarTree = s[bar + 1..].parse()?;
        TreePair::new(top, bottom)
    }
}

/// The monomorphism from F into F3 on trees: a binary caret `(L R)` becomes
/// the ternary caret `(iota(L) . iota(R))` with a fresh middle leaf.
pub fn iota_tree(tree: &PlanarTree) -> Result<PlanarTree, TreeError> {
    match tree {
        Leaf => Ok(Leaf),
        Caret(children) => {
            if children.len() != 2 {
                return Err(TreeError::ArityMismatch(Arity::Binary, Arity::Ternary));
            }
            Ok(Caret(vec![
                iota_tree(&children[0])?,
                Leaf,
                iota_tree(&children[1])?,
            ]))
        }
    }
}

/// The monomorphism applied to both trees of a binary pair. It sends the
/// generator `y_i` to `x_{2i}`.
pub fn iota_pair(pair: &TreePair) -> Result<TreePair, TreeError> {
    let top = iota_tree(&pair.top)?;
    let bottom = iota_tree(&pair.bottom)?;
    TreePair::new(top, bottom)
}

/// A positive element of F3 in normal form `x_0^{a_0} ... x_n^{a_n}`,
/// stored as the exponent tuple. Trailing zeros are allowed so that fixed
/// width grids can be enumerated; the canonical form strips them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PositiveWord {
    exponents: Vec<u32>,
}

impl PositiveWord {
    pub fn new(exponents: Vec<u32>) -> Self {
        PositiveWord { exponents }
    }

    pub fn identity() -> Self {
        PositiveWord::default()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    /// Strips trailing zero exponents.
    pub fn canonical(&self) -> PositiveWord {
        let mut exponents = self.exponents.clone();
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        PositiveWord { exponents }
    }

    /// Largest generator index with a nonzero exponent, `None` for the
    /// identity. Equals the canonical length minus one.
    pub fn width(&self) -> Option<usize> {
        self.exponents.iter().rposition(|&a| a != 0)
    }

    /// Largest exponent; 0 for the identity.
    pub fn height(&self) -> u32 {
        self.exponents.iter().copied().max().unwrap_or(0)
    }

    pub fn letter_count(&self) -> u64 {
        self.exponents.iter().map(|&a| a as u64).sum()
    }

    /// The reduced tree diagram of the word: the left-to-right product of
    /// generator pairs. The bottom tree of the result is always a right
    /// vine and the leaf count is always odd.
    pub fn to_pair(&self) -> TreePair {
        let mut acc = TreePair::identity();
        for (index, &exponent) in self.exponents.iter().enumerate() {
            if exponent == 0 {
                continue;
            }
            let gen = TreePair::generator(Arity::Ternary, index);
            for _ in 0..exponent {
                acc = acc.multiply(&gen).expect("positive words share ternary arity");
            }
        }
        assert!(
            acc.bottom.is_vine() && acc.leaf_count() % 2 == 1,
            "positive word {self} reduced to a non-vine representative {acc}"
        );
        acc
    }
}

impl fmt::Display for PositiveWord {
    /// Comma-separated exponents, e.g. `1,0,2` for x0 * x2^2.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for PositiveWord {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(PositiveWord::identity());
        }
        let exponents = s
            .split(',')
            .map(|token| {
                let token = token.trim();
                token
                    .parse::<u32>()
                    .map_err(|_| WordParseError { token: token.to_owned() })
            })
            .collect::<Result<_, _>>()?;
        Ok(PositiveWord { exponents })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid exponent {token:?}: expected a non-negative integer")]
pub struct WordParseError {
    pub token: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> TreePair {
        TreePair::generator(Arity::Ternary, i)
    }

    fn y(i: usize) -> TreePair {
        TreePair::generator(Arity::Binary, i)
    }

    fn word(exps: &[u32]) -> PositiveWord {
        PositiveWord::new(exps.to_vec())
    }

    #[test]
    fn vine_shapes() {
        assert_eq!(PlanarTree::vine(Arity::Ternary, 0), Leaf);
        assert_eq!(PlanarTree::vine(Arity::Ternary, 2).to_string(), "(..(...))");
        assert_eq!(PlanarTree::vine(Arity::Ternary, 2).leaf_count(), 5);
        assert_eq!(PlanarTree::vine(Arity::Binary, 3).to_string(), "(.(.(..)))");
        assert_eq!(PlanarTree::vine(Arity::Binary, 3).leaf_count(), 4);
    }

    #[test]
    fn leaf_caret_counts_follow_arity() {
        for c in 0..20 {
            assert_eq!(PlanarTree::vine(Arity::Ternary, c).leaf_count(), 2 * c + 1);
            assert_eq!(PlanarTree::vine(Arity::Ternary, c).caret_count(), c);
            assert_eq!(PlanarTree::vine(Arity::Binary, c).leaf_count(), c + 1);
        }
    }

    #[test]
    fn generator_shapes_match_the_standard_diagrams() {
        assert_eq!(x(0).to_string(), "((...)..)|(..(...))");
        assert_eq!(x(1).to_string(), "(.(...).)|(..(...))");
        assert_eq!(x(2).to_string(), "(..((...)..))|(..(..(...)))");
        assert_eq!(y(0).to_string(), "((..).)|(.(..))");
        assert_eq!(y(1).to_string(), "(.((..).))|(.(.(..)))");
        for i in 0..8 {
            let g = x(i);
            assert!(g.is_reduced());
            assert_eq!(g.top().leaf_count(), g.bottom().leaf_count());
        }
    }

    #[test]
    fn graft_replaces_the_indexed_leaf() {
        let caret = PlanarTree::bare_caret(Arity::Ternary);
        // grafting onto a bare leaf gives back the scion
        assert_eq!(Leaf.graft(1, &caret).unwrap(), caret);
        // grafting a caret at the first leaf of a one-caret vine gives the
        // top tree of x0
        let vined = PlanarTree::vine(Arity::Ternary, 1);
        assert_eq!(vined.graft(1, &caret).unwrap(), *x(0).top());
        // extending the rightmost leaf extends the vine
        assert_eq!(
            vined.graft(3, &vined).unwrap(),
            PlanarTree::vine(Arity::Ternary, 2)
        );
    }

    #[test]
    fn graft_rejects_bad_input() {
        let t = PlanarTree::vine(Arity::Ternary, 1);
        assert_eq!(
            t.graft(0, &Leaf),
            Err(TreeError::LeafIndexOutOfRange { index: 0, leaves: 3 })
        );
        assert_eq!(
            t.graft(4, &Leaf),
            Err(TreeError::LeafIndexOutOfRange { index: 4, leaves: 3 })
        );
        let b = PlanarTree::vine(Arity::Binary, 1);
        assert_eq!(
            t.graft(1, &b),
            Err(TreeError::ArityMismatch(Arity::Ternary, Arity::Binary))
        );
    }

    #[test]
    fn reduce_removes_opposing_carets() {
        let caret = PlanarTree::bare_caret(Arity::Ternary);
        let pair = TreePair::new(caret.clone(), caret).unwrap();
        assert!(!pair.is_reduced());
        assert_eq!(pair.reduce(), TreePair::identity());
    }

    #[test]
    fn reduce_keeps_reduced_pairs_and_is_idempotent() {
        let g = x(0);
        assert_eq!(g.reduce(), g);
        let h = x(3).multiply(&x(1)).unwrap();
        assert_eq!(h.reduce().reduce(), h.reduce());
    }

    #[test]
    fn reduce_undoes_a_single_unreduction() {
        let g = x(0);
        let k = g.leaf_count();
        let caret = PlanarTree::bare_caret(Arity::Ternary);
        let top = g.top().graft(k, &caret).unwrap();
        let bottom = g.bottom().graft(k, &caret).unwrap();
        let blown_up = TreePair::new(top, bottom).unwrap();
        assert!(!blown_up.is_reduced());
        assert_eq!(blown_up.reduce(), g);
    }

    #[test]
    fn multiply_unit_and_inverse_laws() {
        let g = x(2);
        assert_eq!(g.multiply(&TreePair::identity()).unwrap(), g);
        assert_eq!(TreePair::identity().multiply(&g).unwrap(), g);
        assert_eq!(g.multiply(&g.inverse()).unwrap(), TreePair::identity());
    }

    #[test]
    fn presentation_relations_hold() {
        // x_n x_l = x_l x_{n+2} and y_n y_l = y_l y_{n+1} for l < n
        for n in 1..=6 {
            for l in 0..n {
                assert_eq!(
                    x(n).multiply(&x(l)).unwrap(),
                    x(l).multiply(&x(n + 2)).unwrap(),
                    "ternary relation failed for n={n}, l={l}"
                );
                assert_eq!(
                    y(n).multiply(&y(l)).unwrap(),
                    y(l).multiply(&y(n + 1)).unwrap(),
                    "binary relation failed for n={n}, l={l}"
                );
            }
        }
    }

    #[test]
    fn multiply_rejects_mixed_arity() {
        assert_eq!(
            x(0).multiply(&y(0)),
            Err(TreeError::ArityMismatch(Arity::Ternary, Arity::Binary))
        );
    }

    #[test]
    fn iota_sends_y_i_to_x_2i() {
        assert_eq!(iota_pair(&TreePair::identity()).unwrap(), TreePair::identity());
        for i in 0..=4 {
            assert_eq!(iota_pair(&y(i)).unwrap(), x(2 * i), "iota(y_{i}) != x_{}", 2 * i);
        }
    }

    #[test]
    fn iota_rejects_ternary_input() {
        assert!(iota_pair(&x(0)).is_err());
        assert!(iota_tree(&PlanarTree::bare_caret(Arity::Ternary)).is_err());
    }

    #[test]
    fn iota_is_a_morphism_on_short_words() {
        // reduce(iota(g * h)) = reduce(iota(g) * iota(h)) over all words of
        // length <= 4 in y0, y1
        for len in 0..=4usize {
            for code in 0..(1u32 << len) {
                let mut prod = TreePair::identity();
                let mut image = TreePair::identity();
                for bit in 0..len {
                    let i = ((code >> bit) & 1) as usize;
                    prod = prod.multiply(&y(i)).unwrap();
                    image = image.multiply(&iota_pair(&y(i)).unwrap()).unwrap();
                }
                assert_eq!(iota_pair(&prod).unwrap().reduce(), image);
            }
        }
    }

    #[test]
    fn word_to_pair_matches_generators() {
        assert_eq!(word(&[]).to_pair(), TreePair::identity());
        assert_eq!(word(&[0, 0]).to_pair(), TreePair::identity());
        let p = word(&[1]).to_pair();
        assert_eq!(p, x(0));
        assert_eq!(p.leaf_count(), 5);
        let q = word(&[0, 0, 1]).to_pair();
        assert_eq!(q, x(2));
        assert_eq!(q.leaf_count(), 7);
    }

    #[test]
    fn word_to_pair_is_reduced_with_vine_bottom() {
        // beyond the assert inside to_pair, check a few by hand
        for exps in [vec![2, 1], vec![0, 3, 1], vec![1, 1, 1, 1], vec![4]] {
            let p = word(&exps).to_pair();
            assert!(p.is_reduced());
            assert!(p.bottom().is_vine());
            assert_eq!(p.leaf_count() % 2, 1);
        }
    }

    #[test]
    fn word_width_height_and_canonical_form() {
        let w = word(&[1, 0, 2, 0]);
        assert_eq!(w.canonical(), word(&[1, 0, 2]));
        assert_eq!(w.width(), Some(2));
        assert_eq!(w.height(), 2);
        assert_eq!(w.letter_count(), 3);
        assert_eq!(word(&[0, 0]).width(), None);
        assert!(word(&[0, 0]).is_identity());
    }

    #[test]
    fn word_parsing_round_trips_and_reports_bad_tokens() {
        let w: PositiveWord = "1,0,2".parse().unwrap();
        assert_eq!(w, word(&[1, 0, 2]));
        assert_eq!(w.to_string(), "1,0,2");
        assert_eq!("".parse::<PositiveWord>().unwrap(), PositiveWord::identity());
        let err = "1,x,2".parse::<PositiveWord>().unwrap_err();
        assert_eq!(err.token, "x");
    }

    #[test]
    fn tree_serialization_round_trips() {
        for s in [".", "(...)", "(..((...)..))", "((..).)", "(.(.(..)))"] {
            let t: PlanarTree = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        let p: TreePair = "((...)..)|(..(...))".parse().unwrap();
        assert_eq!(p, TreePair::generator(Arity::Ternary, 0));
        assert!("(.)".parse::<PlanarTree>().is_err());
        assert!("((..)(...))".parse::<PlanarTree>().is_err());
    }
}
