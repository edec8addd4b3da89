//! Exact tools for asking whether a doubly stochastic matrix is determined,
//! up to permutation similarity, by its spectrum.
//!
//! Everything that decides an answer runs in exact arithmetic over the
//! rationals or a single real quadratic field; floating point appears only
//! in cross-checks and inside searches whose output is re-verified exactly.

pub mod certify;
pub mod error;
pub mod exactmat;
pub mod graphbridge;
pub mod permsim;
pub mod spectra;
pub mod triangle3;

pub use certify::{
    certify, conjecture_scan, mate_search, positive_realization_check, spectrum_characterization, Certificate, Characterization, Scope, Status,
    Verdict, Witness,
};
pub use error::{Error, Result};
pub use exactmat::*;
pub use graphbridge::{cospectral_mates, enumerate_regular, graph_ds_report, scale_to_ds, srg_params, Graph, SrgParams};
pub use permsim::{are_perm_similar, canonical_form, PermWitness, Separation};
pub use spectra::{char_poly, cospectral, CharPoly, RatPoly};
pub use triangle3::{classify, mate_for, tri_eigenvalues, tri_to_matrix, Segment3, TriPoint};
