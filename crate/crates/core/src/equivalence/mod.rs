//! Deformation equivalence: the decision procedure and explicit chains of
//! small moves that witness equivalence.

mod chain;
mod decide;

pub use chain::{
    interpolate, make_chain, max_displacement2, perturb_step, verify_chain, ChainFailure,
    ChainStep, ChainVerification, DeformationChain, MoveKind, PerturbOutcome,
};
pub use decide::{
    equivalent, extended_signature, EmbeddingAspect, EquivalenceReport, Evidence, Verdict,
};
