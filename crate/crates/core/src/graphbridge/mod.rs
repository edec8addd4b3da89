//! Regular graphs as symmetric doubly stochastic matrices: scaling,
//! isomorph-free enumeration and cospectral mates.

pub mod enumerate;
pub mod graph;
pub mod report;

pub use enumerate::{are_isomorphic, canonical_graph, enumerate_regular};
pub use graph::{scale_to_ds, srg_params, Graph, SrgParams};
pub use report::{cospectral_mates, graph_ds_report, mates_csv, GraphDsReport, MatePair};
