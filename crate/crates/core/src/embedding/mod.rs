//! Combinatorial invariants of drawings: rotations, polarizations, faces and
//! the canonical embedding signature.

mod faces;
mod rotation;
mod signature;

pub use faces::{
    euler_counts, face_polygon, faces_of, mark_outer_faces, trace_faces, winding_number,
    ComponentFaces, Face, HalfEdge, Traversal,
};
pub use rotation::{
    check_bimodal, extract_polarization, extract_rotation, extract_rotation_system,
    polarization_to_rotation, rotation_to_polarization, Polarization, PolarizationStructure,
    Rotation, RotationSystem,
};
pub use signature::{signature, ComponentSignature, Containment, EmbeddingSignature};
