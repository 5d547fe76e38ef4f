//! Picard iteration on S_b-metric spaces with contraction certificates.

mod certificate;
mod contraction;
mod map;
mod picard;

pub use certificate::{apriori_tail_bound, certify, CertificateKind, ContractionCertificate, ContractionParams};
pub use contraction::{check_generalized, estimate_contraction_h, ContractionEstimate, GeneralizedCheck};
pub use map::{builtin_map, SelfMap};
pub use picard::{
    picard, picard_from_starts, predicted_iterations, verify_fixed_point, IterationTrace, PicardOptions, StoppingMode,
    Termination,
};
