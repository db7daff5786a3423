//! Tutte polynomials of multigraphs and combinatorial maps.
//!
//! A connected multigraph's Tutte polynomial can be computed here in five
//! independent ways (see [`engines`]): by summing over spanning subgraphs,
//! by memoized deletion/contraction, from Tutte's spanning-tree activities
//! under an edge order, from embedding activities in a rooted map, and by a
//! deletion/contraction recursion that walks a rooted map. The map-based
//! routes rest on the motion function of a spanning tree (see [`activity`]).
//!
//! Coefficients are generic over exact signed rings; [`TuttePolynomial`]
//! fixes them to `BigInt`.
//!
//! ```
//! use tutte_core::{engines, Multigraph, TuttePolynomial};
//!
//! let k3 = Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
//! let t: TuttePolynomial = engines::tutte_deletion_contraction(&k3).unwrap();
//! assert_eq!(t.to_string(), "x^2 + x + y");
//! ```

pub mod activity;
pub mod bitset;
pub mod cmap;
pub mod corpus;
pub mod engines;
pub mod graph;
pub mod mapenum;
pub mod poly;
pub mod scalar;
pub mod spanning;

pub use activity::{EdgeOrder, TourOrder};
pub use bitset::EdgeSet;
pub use cmap::{CombinatorialMap, Dart, MapError, RootPolicy};
pub use engines::{EngineError, Method};
pub use graph::{GraphError, Multigraph};
pub use mapenum::MapCensus;
pub use poly::Polynomial;
pub use scalar::Coefficient;
pub use spanning::SpanningTree;

/// Tutte polynomial with arbitrary-precision integer coefficients.
pub type TuttePolynomial = Polynomial<num_bigint::BigInt>;

/// Machine-word coefficients, for inputs known not to overflow.
pub type SmallTuttePolynomial = Polynomial<i64>;
