//! Characteristic polynomials, cospectrality, exact similarity and a
//! numeric symmetric eigensolver for cross-checks.

pub mod charpoly;
pub mod jacobi;
pub mod poly;
pub mod roots;
pub mod similarity;

pub use charpoly::{char_poly, closed_form_spectrum, cospectral, CharPoly};
pub use jacobi::{eigenvalues_symmetric, jacobi_eigen, NumericSpectrum, SymmetricEigen};
pub use poly::RatPoly;
pub use roots::{rational_roots, split_low_degree};
pub use similarity::{are_similar_exact, block_det, minimal_polynomial, similarity_decision, SimilarityDecision, SimilarityMethod};
