use serde::{Deserialize, Serialize};

use crate::embedding::{extract_polarization, signature, EmbeddingSignature, Polarization};
use crate::error::{Error, Result};
use crate::geometry::{require_valid, Drawing};
use crate::graph::VertexId;
use crate::npp::{default_stub_scale, npp_extend_auto};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    Incomparable,
}

impl Verdict {
    /// Process exit code used by the command line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Equivalent => 0,
            Verdict::NotEquivalent => 1,
            Verdict::Incomparable => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbeddingAspect {
    /// The extended drawings split into different components.
    Components,
    Rotation,
    OuterFace,
    Containment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// The labeled graphs differ.
    GraphMismatch { detail: String },
    /// Equal signatures of the extended drawings.
    Digests { a: String, b: String },
    /// Smallest vertex whose polarizations differ.
    Polarization {
        vertex: VertexId,
        a: Polarization,
        b: Polarization,
    },
    /// Polarizations agree but the plane embeddings differ.
    Embedding {
        component: VertexId,
        aspect: EmbeddingAspect,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

fn graph_mismatch(a: &Drawing, b: &Drawing) -> Option<String> {
    let (ga, gb) = (a.graph(), b.graph());
    if let Some(v) = ga.vertices().find(|v| !gb.contains_vertex(v)) {
        return Some(format!("vertex `{v}` only in the first drawing"));
    }
    if let Some(v) = gb.vertices().find(|v| !ga.contains_vertex(v)) {
        return Some(format!("vertex `{v}` only in the second drawing"));
    }
    for e in ga.edges() {
        match gb.edge(&e.id) {
            None => return Some(format!("edge `{}` only in the first drawing", e.id)),
            Some(f) if f != e => return Some(format!("edge `{}` has different endpoints", e.id)),
            _ => {}
        }
    }
    gb.edges()
        .find(|e| !ga.contains_edge(&e.id))
        .map(|e| format!("edge `{}` only in the second drawing", e.id))
}

/// Signature of the extended drawing after virtualizing isolated vertices.
pub fn extended_signature(drawing: &Drawing) -> Result<EmbeddingSignature> {
    let (ext, _) = npp_extend_auto(drawing, &default_stub_scale())?;
    signature(&ext.drawing)
}

fn embedding_difference(a: &EmbeddingSignature, b: &EmbeddingSignature) -> Evidence {
    let keys = |s: &EmbeddingSignature| {
        s.components
            .iter()
            .map(|c| c.key.clone())
            .collect::<Vec<_>>()
    };
    if keys(a) != keys(b) {
        let k = keys(a)
            .into_iter()
            .zip(keys(b))
            .find(|(x, y)| x != y)
            .map(|(x, _)| x)
            .unwrap_or_else(|| a.components[0].key.clone());
        return Evidence::Embedding {
            component: k,
            aspect: EmbeddingAspect::Components,
        };
    }
    for (ca, cb) in a.components.iter().zip(&b.components) {
        let aspect = if ca.rotations != cb.rotations {
            EmbeddingAspect::Rotation
        } else if ca.outer_face != cb.outer_face {
            EmbeddingAspect::OuterFace
        } else if ca.parent != cb.parent {
            EmbeddingAspect::Containment
        } else {
            continue;
        };
        return Evidence::Embedding {
            component: ca.key.clone(),
            aspect,
        };
    }
    unreachable!("signatures differ")
}

/// Decides whether two drawings of the same labeled graph are related by a
/// deformation: both are virtualized and extended with stubs, and the
/// verdict is the equality of the resulting signatures.
pub fn equivalent(a: &Drawing, b: &Drawing) -> Result<EquivalenceReport> {
    require_valid(a)?;
    require_valid(b)?;
    if let Some(detail) = graph_mismatch(a, b) {
        return Ok(EquivalenceReport {
            verdict: Verdict::Incomparable,
            evidence: Evidence::GraphMismatch { detail },
        });
    }
    let (sa, sb) = std::thread::scope(|s| {
        let ha = s.spawn(|| extended_signature(a));
        let sb = extended_signature(b);
        (ha.join().expect("signature thread panicked"), sb)
    });
    let (sa, sb) = (sa?, sb?);
    let (pa, pb) = (extract_polarization(a), extract_polarization(b));

    if sa == sb {
        if pa != pb {
            return Err(Error::Internal(
                "equal extended signatures but different polarizations".into(),
            ));
        }
        return Ok(EquivalenceReport {
            verdict: Verdict::Equivalent,
            evidence: Evidence::Digests {
                a: sa.digest(),
                b: sb.digest(),
            },
        });
    }
    let evidence = match pa.0.iter().find(|(v, p)| pb.get(v) != Some(*p)) {
        Some((v, p)) => Evidence::Polarization {
            vertex: v.clone(),
            a: p.clone(),
            b: pb.get(v).unwrap().clone(),
        },
        None => embedding_difference(&sa, &sb),
    };
    Ok(EquivalenceReport {
        verdict: Verdict::NotEquivalent,
        evidence,
    })
}
