//! The Jones closure of a tree pair as a combinatorial link diagram.
//!
//! Draw the top tree above the x axis and the bottom tree upside down below
//! it, glue leaf i of the top to leaf i of the bottom at axis point i, and
//! join the two roots by an arc around the left that crosses the axis at
//! point 0. Every caret is then a 4-valent vertex and becomes a crossing:
//! its left and right children form one strand, its middle child and parent
//! edge the other. By default the left-right strand is the over strand; a
//! flag flips the convention globally, which changes exported codes but
//! never the component count.
//!
//! Components are counted by tracing strands through the diagram, touching
//! neither the tree path rules nor the matchings of [`crate::perm`]. The
//! count must agree with the orbit count of the Thompson permutation; the
//! two routes cross-validate each other.

use std::fmt;

use thiserror::Error;

use crate::trees::{self, Arity, PlanarTree, TreeError, TreePair};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("tree pair is not reduced; reduce it or set allow_unreduced")]
    Unreduced,
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Which strand passes over at every crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CrossingConvention {
    /// The strand joining the left and right children passes over the
    /// strand joining the middle child and the parent.
    #[default]
    LeftRightOver,
    /// The flipped reading: middle-parent over left-right.
    MiddleParentOver,
}

/// Output formats for [`LinkDiagram::export`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeFormat {
    Pd,
    Gauss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Half {
    Top,
    Bottom,
}

/// Crossing ports in storage order.
const PARENT: usize = 0;
const LEFT: usize = 1;
const MIDDLE: usize = 2;
const RIGHT: usize = 3;

/// Strand continuation inside a crossing: left <-> right, middle <-> parent.
fn pass_through(port: usize) -> usize {
    match port {
        PARENT => MIDDLE,
        MIDDLE => PARENT,
        LEFT => RIGHT,
        _ => LEFT,
    }
}

/// Counterclockwise port order around a crossing, as drawn in the plane.
fn ccw_ports(half: Half) -> [usize; 4] {
    match half {
        Half::Top => [PARENT, LEFT, MIDDLE, RIGHT],
        Half::Bottom => [PARENT, RIGHT, MIDDLE, LEFT],
    }
}

/// Unit direction of a port, pointing away from the crossing.
fn port_direction(half: Half, port: usize) -> (i32, i32) {
    match (half, port) {
        (Half::Top, PARENT) => (0, 1),
        (Half::Top, LEFT) => (-1, -1),
        (Half::Top, MIDDLE) => (0, -1),
        (Half::Top, RIGHT) => (1, -1),
        (Half::Bottom, PARENT) => (0, -1),
        (Half::Bottom, LEFT) => (-1, 1),
        (Half::Bottom, MIDDLE) => (0, 1),
        (Half::Bottom, RIGHT) => (1, 1),
        _ => unreachable!(),
    }
}

/// A closed-up tree pair: one crossing per caret, axis points 0..=k, and the
/// strand segments joining them. Point 0 carries the closure arc, point i
/// the glued leaf pair i.
#[derive(Debug, Clone)]
pub struct LinkDiagram {
    crossing_half: Vec<Half>,
    axis_points: usize,
    /// Strand segments as an involution on slots; crossing c owns slots
    /// 4c..4c+4, axis point i owns slots base + 2i (top side) and
    /// base + 2i + 1 (bottom side).
    segment: Vec<usize>,
    convention: CrossingConvention,
}

/// One pass of a strand through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Passage {
    pub crossing: usize,
    pub port_in: usize,
    pub port_out: usize,
}

/// One traced component: the axis points in traversal order, starting at the
/// component's smallest axis point oriented upward, and the crossing
/// passages met on the way.
#[derive(Debug, Clone)]
pub struct ComponentTrace {
    pub axis_points: Vec<usize>,
    pub passages: Vec<Passage>,
}

impl LinkDiagram {
    /// Builds the closure of a reduced pair. Binary pairs are lifted to
    /// ternary through iota first. Unreduced pairs are rejected, because
    /// the link of a group element is defined on the reduced representative.
    pub fn build(pair: &TreePair) -> Result<Self, DiagramError> {
        Self::build_with(pair, false, CrossingConvention::default())
    }

    /// As [`LinkDiagram::build`], with control over the reducedness check
    /// and the over-strand convention. `allow_unreduced` exists for tests
    /// that need diagrams of deliberately blown-up pairs.
    pub fn build_with(
        pair: &TreePair,
        allow_unreduced: bool,
        convention: CrossingConvention,
    ) -> Result<Self, DiagramError> {
        let lifted;
        let pair = if pair.arity() == Some(Arity::Binary) {
            lifted = trees::iota_pair(pair)?;
            &lifted
        } else {
            pair
        };
        if !pair.is_reduced() && !allow_unreduced {
            return Err(DiagramError::Unreduced);
        }

        let crossings = pair.caret_count();
        let axis_points = pair.leaf_count() + 1;
        let mut diagram = LinkDiagram {
            crossing_half: Vec::with_capacity(crossings),
            axis_points,
            segment: vec![usize::MAX; 4 * crossings + 2 * axis_points],
            convention,
        };

        let mut next_leaf = 1usize;
        let top_root = diagram.add_tree(pair.top(), Half::Top, &mut next_leaf);
        let mut next_leaf = 1usize;
        let bottom_root = diagram.add_tree(pair.bottom(), Half::Bottom, &mut next_leaf);

        // the closure arc joins the two root edges through axis point 0
        diagram.join(top_root, diagram.axis_slot(0, Half::Top));
        diagram.join(bottom_root, diagram.axis_slot(0, Half::Bottom));

        debug_assert!(
            diagram.segment.iter().all(|&s| s != usize::MAX),
            "dangling strand end"
        );
        Ok(diagram)
    }

    /// Adds one tree of the pair, returning the slot of its root edge.
    fn add_tree(&mut self, tree: &PlanarTree, half: Half, next_leaf: &mut usize) -> usize {
        match tree {
            PlanarTree::Leaf => {
                let slot = self.axis_slot(*next_leaf, half);
                *next_leaf += 1;
                slot
            }
            PlanarTree::Caret(children) => {
                let id = self.crossing_half.len();
                self.crossing_half.push(half);
                for (position, child) in children.iter().enumerate() {
                    let child_slot = self.add_tree(child, half, next_leaf);
                    let port = match position {
                        0 => LEFT,
                        1 => MIDDLE,
                        _ => RIGHT,
                    };
                    self.join(4 * id + port, child_slot);
                }
                4 * id + PARENT
            }
        }
    }

    fn axis_slot(&self, point: usize, half: Half) -> usize {
        let side = match half {
            Half::Top => 0,
            Half::Bottom => 1,
        };
        self.axis_base() + 2 * point + side
    }

    /// First axis slot. Derived from the pre-sized segment table so that it
    /// is stable while crossings are still being added.
    fn axis_base(&self) -> usize {
        self.segment.len() - 2 * self.axis_points
    }

    fn join(&mut self, a: usize, b: usize) {
        debug_assert!(self.segment[a] == usize::MAX && self.segment[b] == usize::MAX);
        self.segment[a] = b;
        self.segment[b] = a;
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_half.len()
    }

    /// Number of axis points, k + 1.
    pub fn axis_point_count(&self) -> usize {
        self.axis_points
    }

    pub fn convention(&self) -> CrossingConvention {
        self.convention
    }

    /// Traces every component of the diagram. Components are discovered in
    /// order of their smallest axis point and traversed upward from it, so
    /// the listed axis sequences realize the orientation convention.
    pub fn components(&self) -> Vec<ComponentTrace> {
        let base = self.axis_base();
        let mut visited = vec![false; self.axis_points];
        let mut traces = Vec::new();
        for start_point in 0..self.axis_points {
            if visited[start_point] {
                continue;
            }
            let start_slot = base + 2 * start_point;
            let mut axis_points = vec![start_point];
            visited[start_point] = true;
            let mut passages = Vec::new();
            let mut slot = start_slot;
            loop {
                let dest = self.segment[slot];
                if dest >= base {
                    // crossed the axis
                    let point = (dest - base) / 2;
                    let cont = dest ^ 1;
                    if cont == start_slot {
                        break;
                    }
                    visited[point] = true;
                    axis_points.push(point);
                    slot = cont;
                } else {
                    let crossing = dest / 4;
                    let port_in = dest % 4;
                    let port_out = pass_through(port_in);
                    passages.push(Passage { crossing, port_in, port_out });
                    slot = 4 * crossing + port_out;
                }
            }
            traces.push(ComponentTrace { axis_points, passages });
        }
        traces
    }

    /// Number of closed curves. Over/under assignments play no part here,
    /// the count only depends on the 4-valent structure.
    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Renders the diagram in the requested format.
    pub fn export(&self, format: CodeFormat) -> String {
        match format {
            CodeFormat::Pd => self.export_pd(),
            CodeFormat::Gauss => self.export_gauss(),
        }
    }

    fn over_ports(&self) -> [usize; 2] {
        match self.convention {
            CrossingConvention::LeftRightOver => [LEFT, RIGHT],
            CrossingConvention::MiddleParentOver => [MIDDLE, PARENT],
        }
    }

    fn is_over_passage(&self, passage: &Passage) -> bool {
        self.over_ports().contains(&passage.port_in)
    }

    /// Arc labels per passage: arcs are the diagram edges between
    /// consecutive crossing passages along each component, numbered from the
    /// component's smallest axis point onward. Returns, for each component,
    /// the (in, out) arc labels of its passages.
    fn arc_labels(&self, traces: &[ComponentTrace]) -> Vec<Vec<(usize, usize)>> {
        let mut labels = Vec::with_capacity(traces.len());
        let mut base = 0usize;
        for trace in traces {
            let count = trace.passages.len();
            let component: Vec<(usize, usize)> = (0..count)
                .map(|t| (base + t + 1, base + (t + 1) % count + 1))
                .collect();
            base += count;
            labels.push(component);
        }
        labels
    }

    fn export_pd(&self) -> String {
        let traces = self.components();
        let labels = self.arc_labels(&traces);

        // collect the arc label sitting at each crossing port
        let mut port_arcs = vec![[0usize; 4]; self.crossing_count()];
        for (trace, arcs) in traces.iter().zip(&labels) {
            for (passage, &(arc_in, arc_out)) in trace.passages.iter().zip(arcs) {
                port_arcs[passage.crossing][passage.port_in] = arc_in;
                port_arcs[passage.crossing][passage.port_out] = arc_out;
            }
        }
        // the incoming under port of each crossing
        let mut under_in = vec![usize::MAX; self.crossing_count()];
        for trace in &traces {
            for passage in &trace.passages {
                if !self.is_over_passage(passage) {
                    under_in[passage.crossing] = passage.port_in;
                }
            }
        }

        let mut out = format!(
            "components={} crossings={}\n",
            traces.len(),
            self.crossing_count()
        );
        for crossing in 0..self.crossing_count() {
            let order = ccw_ports(self.crossing_half[crossing]);
            let at = order
                .iter()
                .position(|&p| p == under_in[crossing])
                .expect("every crossing has an incoming under strand");
            let tuple: Vec<String> = (0..4)
                .map(|i| port_arcs[crossing][order[(at + i) % 4]].to_string())
                .collect();
            out.push_str(&format!("X[{}]\n", tuple.join(",")));
        }
        out
    }

    /// Sign of a crossing from the oriented over and under passages: the
    /// sign of the determinant det(over direction, under direction).
    fn crossing_sign(&self, over: &Passage, under: &Passage, half: Half) -> i32 {
        let dir = |p: &Passage| {
            let i = port_direction(half, p.port_in);
            let o = port_direction(half, p.port_out);
            (o.0 - i.0, o.1 - i.1)
        };
        let o = dir(over);
        let u = dir(under);
        (o.0 * u.1 - o.1 * u.0).signum()
    }

    fn export_gauss(&self) -> String {
        let traces = self.components();

        // number crossings by first visit across the full traversal
        let mut numbers = vec![0usize; self.crossing_count()];
        let mut next = 1usize;
        for trace in &traces {
            for passage in &trace.passages {
                if numbers[passage.crossing] == 0 {
                    numbers[passage.crossing] = next;
                    next += 1;
                }
            }
        }
        // pair up the two passages of each crossing to compute signs
        let mut over_passage = vec![None; self.crossing_count()];
        let mut under_passage = vec![None; self.crossing_count()];
        for trace in &traces {
            for passage in &trace.passages {
                if self.is_over_passage(passage) {
                    over_passage[passage.crossing] = Some(*passage);
                } else {
                    under_passage[passage.crossing] = Some(*passage);
                }
            }
        }

        let mut out = format!(
            "components={} crossings={}\n",
            traces.len(),
            self.crossing_count()
        );
        for trace in &traces {
            let tokens: Vec<String> = trace
                .passages
                .iter()
                .map(|passage| {
                    let c = passage.crossing;
                    let sign = self.crossing_sign(
                        &over_passage[c].expect("both strands traversed"),
                        &under_passage[c].expect("both strands traversed"),
                        self.crossing_half[c],
                    );
                    format!(
                        "{}{}{}",
                        if self.is_over_passage(passage) { "O" } else { "U" },
                        if sign >= 0 { "+" } else { "-" },
                        numbers[c]
                    )
                })
                .collect();
            out.push_str(&tokens.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "link diagram: {} crossings, {} axis points, {} components",
            self.crossing_count(),
            self.axis_point_count(),
            self.component_count()
        )
    }
}
