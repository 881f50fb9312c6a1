//! Jones's closure construction for the Thompson group F and the
//! Brown-Thompson group F3, at the combinatorial level.
//!
//! An element of F (binary) or F3 (ternary) is a pair of planar rooted trees
//! with the same number of leaves. Closing the pair, by gluing leaves to
//! leaves and joining the two roots around the left, produces a link diagram
//! in which every caret becomes a crossing. This crate implements:
//!
//! * the tree-pair algebra: generators, multiplication by common refinement,
//!   reduction of opposing carets, positive normal forms ([`trees`]);
//! * tangled permutations of ternary trees and the Thompson permutation of a
//!   pair, whose orbits are the link components ([`perm`]);
//! * an independent component-count oracle that builds the closure diagram
//!   and traces its strands, with PD and Gauss code export ([`diagram`]);
//! * exhaustive and seeded-random enumeration of the positive monoid of F3
//!   by width and height, class statistics and conjecture checks
//!   ([`enumstats`]).
//!
//! ```
//! use thompson_links::trees::PositiveWord;
//! use thompson_links::{perm, LinkDiagram};
//!
//! // x2 closes up into a two-component link
//! let word: PositiveWord = "0,0,1".parse().unwrap();
//! let cycles = perm::permutation_of_element(&word);
//! assert_eq!(cycles.to_string(), "(0,2)(1,6,3,5,7,4)");
//!
//! // the diagram trace counts the same components independently
//! let diagram = LinkDiagram::build(&word.to_pair()).unwrap();
//! assert_eq!(diagram.component_count(), cycles.orbit_count());
//! ```

pub mod diagram;
pub mod enumstats;
pub mod perm;
pub mod trees;

pub use diagram::{CodeFormat, CrossingConvention, LinkDiagram};
pub use enumstats::{ConjectureReport, SplitMix64, StatsRecord};
pub use perm::{Matching, ThompsonPermutation};
pub use trees::{Arity, PlanarTree, PositiveWord, TreePair};
