//! Exact extremal graph theory at desk scale: clique counting, Turán-type
//! constructions, closed-form extremal values under a forbidden clique and a
//! bounded matching number, Tutte-Berge certificates, an exhaustive search
//! oracle, and a count-preserving symmetrization engine.

pub mod constructions;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod matching;
pub mod oracle;
pub mod sweeps;
pub mod symmetrize;

pub use constructions::{
    asymptotic_extremal_graph, balanced_partition, complete_multipartite, matching_graph,
    matching_turan_graph, matching_turan_partition, turan_graph, PartitionSpec,
};
pub use error::{CertificateFault, Error, Result, SwitchSide};
pub use formulas::{
    berge_split_bound, binomial, bipartite_slope, clique_matching_extremal, crossover,
    matching_extremal, matching_turan_count, monotonicity_convexity_check, turan_clique_count,
    turan_count_recurrence_check, Crossover, ExtremalSide, ExtremalValue, IdentityReport,
    ShapeReport,
};
pub use graph::{CliqueCount, Graph, VertexSet, MAX_VERTICES};
pub use matching::{
    berge_certificate, max_matching, verify_certificate, BergeCertificate, CertificateComponent,
    Matching, MAX_CERTIFICATE_ORDER,
};
pub use oracle::{
    chromatic_number, color_family, contains_subgraph, extremal_search, extremal_search_stream,
    is_family_free, smallest_color_class, ColorFamily, ExtremalReport, ForbiddenSet, SearchSource,
    MAX_COLORING, MAX_EXHAUSTIVE,
};
pub use sweeps::{
    edge_extremal_sweep, extremal_value_sweep, four_cycle_value_sweep, four_cycle_window_sweep,
    interop_sweep, matching_audit_sweep, recurrence_identity_sweep, remainder_slope_sweep,
    shape_sweep, switching_safety_sweep, unique_turan_sweep, SweepOutcome, N8_SPOT_GRID,
};
pub use symmetrize::{symmetrize, StepKind, SymmetrizeStep, SymmetrizeTrace, Termination};
