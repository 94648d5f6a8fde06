//! The reduction chains for mutually reflexive pairs and the certificates
//! they support.

mod certificate;
mod decomposition;
mod trace;

pub use certificate::{
    axis_witness, unit_witness, verify_certificate, CertKind, Certificate, CertificateDoc,
    DocCheck, StatusJson, TraceEntryJson, VerifiedJson,
};
pub use decomposition::{lemma_ind_decomposition, Decomposition, DecompositionChecks};
pub use trace::{
    is_mutually_reflexive, make_reflexive_pair, random_reflexive_inverse, random_reflexive_pair,
    run_reduction, Heights, ReductionTrace, Status, Step,
};
