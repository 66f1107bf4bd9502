//! Minimum-perimeter simultaneous grid embeddings of an x-monotone and a
//! y-monotone path.
//!
//! The pipeline: [`pathpair::derive`] finds switch vertices and shared
//! edges, [`constraint_graph::build_constraint_graph`] turns them into a
//! bipartite constraint graph over path edges, [`matching`] computes a
//! minimum vertex cover, and [`embedder`] reads 0/1 extents and coordinates
//! off the cover. [`geometry`] validates any embedding with exact integer
//! predicates and [`oracle`] provides brute-force ground truth.
//!
//! ```
//! use wmge::{embedder::solve_min_perimeter, geometry::check_wmge, PathPair};
//!
//! let p = PathPair::new(vec![0, 1, 2], vec![0, 2, 1]).unwrap();
//! let s = solve_min_perimeter(&p).unwrap();
//! assert_eq!(s.metrics.perimeter, 4);
//! assert!(check_wmge(&p, &s.embedding).unwrap().valid);
//! ```

pub mod constraint_graph;
pub mod embedder;
pub mod geometry;
pub mod matching;
pub mod oracle;
pub mod pathpair;
pub mod render;

pub use embedder::{solve_min_perimeter, Solution};
pub use geometry::{GridEmbedding, Point};
pub use pathpair::{derive, PathPair};
