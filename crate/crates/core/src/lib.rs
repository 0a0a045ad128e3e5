//! Embedded spheres in the connected sum of copies of S²×S¹, in normal form
//! with respect to a maximal sphere system.
//!
//! The manifold and its system are a trivalent [`graph::ModelGraph`]. Lifts to
//! the universal cover live on the dual tree ([`cover`]), spheres are labeled
//! subtrees ([`sphere`]), and [`sides`] computes end partitions, crossing,
//! and intersection numbers: the number of crossing deck translates, which
//! equals the minimal number of intersection circles. [`complex`] enumerates
//! sphere classes and builds the sphere complex.

pub mod cli;
pub mod complex;
pub mod cover;
pub mod graph;
pub mod sides;
pub mod sphere;

pub use complex::{build_complex, enumerate, is_simplex, SphereComplex};
pub use cover::{Cover, DeckElement, SphereVertex, TreeVertex, Walk};
pub use graph::{EdgeId, ModelGraph, Style};
pub use sides::{
  algebraic_intersection, crossing, crossing_oracle, intersection_number, side_labels, theorem_check,
  CrossingReport, IntersectionResult,
};
pub use sphere::NormalSphere;
