//! S_b-metric spaces: a catalog of ternary metrics, sampling-based axiom
//! checks, ball and set-distance queries, certified Picard iteration, and a
//! fixed-point linear solver with a direct-elimination cross-check.

pub mod axioms;
pub mod catalog;
pub mod error;
pub mod fixpoint;
pub mod linsys;
pub mod metric;
pub mod numeric;
pub mod point;
pub mod sampler;
pub mod topology;

pub use axioms::{
    check_axioms, check_not_b_generated, check_quasi_symmetry, check_symmetry, estimate_min_b, AxiomFamily,
    AxiomReport, AxiomSchema, ClauseResult, CoefficientEstimate, Counterexample, MetricRef, Verdict,
};
pub use catalog::{builtin, builtin_binary};
pub use error::{Error, Result};
pub use fixpoint::{
    apriori_tail_bound, builtin_map, certify, check_generalized, estimate_contraction_h, picard, picard_from_starts,
    verify_fixed_point, CertificateKind, ContractionCertificate, ContractionParams, IterationTrace, PicardOptions,
    SelfMap, StoppingMode, Termination,
};
pub use linsys::{
    column_sum_norm, direct_solve, solve_iterative, to_fixed_point_form, LinearSystem, Matrix, SystemForm,
};
pub use metric::{induce_b_from_sb, induce_s_from_metric, induce_sb_from_b, BMetricSpec, SbMetricSpec};
pub use point::{Carrier, Point};
pub use sampler::SamplerConfig;
pub use topology::FinitePointSet;
