//! Exact computations in Thompson's group F with generators `x0` and `x1`.
//!
//! Elements are canonical forest diagrams ([`ForestDiagram`]). On top of
//! them the crate provides the word length formula ([`metric`]), Cayley graph
//! exploration and witness verification ([`cayley`]), and the action on the
//! real line by piecewise-linear maps ([`plmap`]), which serves as an
//! independent check on the diagram arithmetic.

pub mod cayley;
pub mod forest;
pub mod metric;
pub mod plmap;
pub mod tree;
pub mod word;

pub use forest::{DiagramError, ForestDiagram, PointedForest, RawDiagram};
pub use plmap::{to_plmap, Dyadic, PLMap};
pub use metric::{length, LengthBreakdown, SpaceLabel, SpaceLabeling};
pub use tree::Tree;
pub use word::{parse_word, GroupWord, Letter, WordError};
