//! Exact scalar and matrix arithmetic, constructors for the named matrix
//! families and structural predicates.

pub mod families;
pub mod matrix;
pub mod scalar;
pub mod structure;

pub use families::{
    block_bipartite, construct, d_of_trace, direct_sum, segment_point, Family, Vertex3,
};
pub use matrix::{ExactMatrix, MatrixJson, MAX_DIM};
pub use scalar::{rat, rat_int, QuadScalar, Rational};
pub use structure::{imprimitivity_index, irreducible_components, Component, Imprimitivity};
