use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::{require_valid, Drawing};
use crate::graph::{EdgeId, VertexId};

use super::faces::{face_polygon, faces_of, topmost, winding_number, ComponentFaces, HalfEdge};
use super::rotation::extract_rotation_system;

/// Where a component sits: inside a bounded face of another component, or
/// directly in the unbounded region (`None`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Containment {
    pub component: VertexId,
    pub face: HalfEdge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSignature {
    /// Smallest vertex id of the component.
    pub key: VertexId,
    /// Clockwise rotations, each listed from its smallest edge id.
    pub rotations: BTreeMap<VertexId, Vec<EdgeId>>,
    /// Outer face walk, listed from its smallest half-edge.
    pub outer_face: Vec<HalfEdge>,
    pub parent: Option<Containment>,
}

/// Coordinate-free record of a plane drawing: equal signatures mean the
/// drawings differ by an orientation-preserving isotopy of the plane that
/// keeps every label in place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSignature {
    pub components: Vec<ComponentSignature>,
}

impl EmbeddingSignature {
    /// Compact JSON with sorted keys; the basis of equality and the digest.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let value = serde_json::to_value(self).expect("signature serializes");
        serde_json::to_vec(&value).expect("value serializes")
    }

    /// Lowercase hex SHA-256 of [`canonical_bytes`](Self::canonical_bytes).
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_bytes()))
    }

    pub fn component(&self, key: &VertexId) -> Option<&ComponentSignature> {
        self.components.iter().find(|c| &c.key == key)
    }
}

/// Bounded faces of other components that contain each component, as
/// `(component index, face key)`.
fn containers(drawing: &Drawing, comps: &[ComponentFaces]) -> Vec<Vec<(usize, HalfEdge)>> {
    let polygons: Vec<Vec<(HalfEdge, Vec<_>)>> = comps
        .iter()
        .map(|c| {
            c.bounded()
                .map(|f| (f.key().clone(), face_polygon(f, drawing)))
                .collect()
        })
        .collect();
    comps
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let anchor = drawing.position(topmost(&c.vertices, drawing));
            let mut found = Vec::new();
            for (j, faces) in polygons.iter().enumerate() {
                if j == i {
                    continue;
                }
                if let Some((key, _)) = faces
                    .iter()
                    .find(|(_, poly)| winding_number(poly, anchor) != 0)
                {
                    found.push((j, key.clone()));
                }
            }
            found
        })
        .collect()
}

/// Canonical signature of a valid drawing without isolated vertices.
pub fn signature(drawing: &Drawing) -> Result<EmbeddingSignature> {
    require_valid(drawing)?;
    if let Some(v) = drawing.graph().isolated_vertices().next() {
        return Err(Error::Domain(format!(
            "isolated vertex `{v}`: virtualize isolated vertices before computing a signature"
        )));
    }
    let rotations = extract_rotation_system(drawing)?;
    let comps = faces_of(drawing, &rotations)?;
    let within = containers(drawing, &comps);

    let mut out = Vec::with_capacity(comps.len());
    for (i, comp) in comps.iter().enumerate() {
        // the innermost container is the one nested most deeply itself
        let parent = within[i]
            .iter()
            .max_by_key(|(j, _)| within[*j].len())
            .map(|(j, face)| Containment {
                component: comps[*j].key.clone(),
                face: face.clone(),
            });
        let outer = comp.outer().ok_or_else(|| {
            Error::Internal(format!("component `{}` has no outer face", comp.key))
        })?;
        out.push(ComponentSignature {
            key: comp.key.clone(),
            rotations: comp
                .vertices
                .iter()
                .map(|v| (v.clone(), rotations.get(v).unwrap().canonical().edges))
                .collect(),
            outer_face: outer.walk.clone(),
            parent,
        });
    }
    Ok(EmbeddingSignature { components: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::Traversal;
    use crate::fixtures;
    use crate::geometry::rational::int;
    use crate::geometry::{mirror_x, transform, Transform};

    #[test]
    fn tree_signature() {
        let s = signature(&fixtures::tree()).unwrap();
        assert_eq!(s.components.len(), 1);
        let c = &s.components[0];
        assert_eq!(c.key, VertexId::from("a"));
        assert_eq!(
            c.rotations[&VertexId::from("b")],
            vec![EdgeId::from("e1"), "e3".into(), "e2".into()]
        );
        assert_eq!(c.outer_face[0], HalfEdge::new("e1", Traversal::Forward));
        assert_eq!(c.parent, None);
    }

    #[test]
    fn translation_keeps_bytes() {
        let d = fixtures::tree();
        let t = transform(
            &d,
            &Transform::Translate {
                dx: int(100),
                dy: int(7),
            },
        )
        .unwrap();
        assert_eq!(
            signature(&d).unwrap().canonical_bytes(),
            signature(&t).unwrap().canonical_bytes()
        );
        assert_eq!(signature(&d).unwrap().digest().len(), 64);
    }

    #[test]
    fn mirror_changes_tree_signature() {
        let d = fixtures::tree();
        assert_ne!(signature(&d).unwrap(), signature(&mirror_x(&d)).unwrap());
        let e = fixtures::single_edge();
        assert_eq!(signature(&e).unwrap(), signature(&mirror_x(&e)).unwrap());
    }

    #[test]
    fn disjoint_edge_beside_tree_is_uncontained() {
        let near = Drawing::straight(
            &[
                ("a", 0, 4),
                ("b", 0, 2),
                ("c", -1, 0),
                ("d", 1, 0),
                ("x", 3, 3),
                ("y", 3, 1),
            ],
            &[
                ("e1", "a", "b"),
                ("e2", "b", "c"),
                ("e3", "b", "d"),
                ("f", "x", "y"),
            ],
        )
        .unwrap();
        let far = Drawing::straight(
            &[
                ("a", 0, 4),
                ("b", 0, 2),
                ("c", -1, 0),
                ("d", 1, 0),
                ("x", -50, 30),
                ("y", -60, -10),
            ],
            &[
                ("e1", "a", "b"),
                ("e2", "b", "c"),
                ("e3", "b", "d"),
                ("f", "x", "y"),
            ],
        )
        .unwrap();
        let (sn, sf) = (signature(&near).unwrap(), signature(&far).unwrap());
        assert_eq!(sn, sf);
        assert!(sn.components.iter().all(|c| c.parent.is_none()));
    }

    #[test]
    fn nested_components() {
        // a big diamond containing a small diamond containing an edge
        let d = Drawing::straight(
            &[
                ("a", 0, 12),
                ("b", -6, 6),
                ("c", 6, 6),
                ("d", 0, 0),
                ("p", 0, 10),
                ("q", -3, 6),
                ("r", 3, 6),
                ("s", 0, 2),
                ("x", 0, 7),
                ("y", 0, 5),
            ],
            &[
                ("e1", "a", "b"),
                ("e2", "a", "c"),
                ("e3", "b", "d"),
                ("e4", "c", "d"),
                ("g1", "p", "q"),
                ("g2", "p", "r"),
                ("g3", "q", "s"),
                ("g4", "r", "s"),
                ("h", "x", "y"),
            ],
        )
        .unwrap();
        let s = signature(&d).unwrap();
        let p = s.component(&"p".into()).unwrap().parent.clone().unwrap();
        assert_eq!(p.component, VertexId::from("a"));
        let x = s.component(&"x".into()).unwrap().parent.clone().unwrap();
        assert_eq!(x.component, VertexId::from("p"));
        assert_eq!(s.component(&"a".into()).unwrap().parent, None);
    }

    #[test]
    fn rejects_isolated_and_invalid() {
        let d = Drawing::straight(&[("v", 0, 0)], &[]).unwrap();
        assert!(matches!(signature(&d), Err(Error::Domain(_))));
        assert!(matches!(
            signature(&fixtures::cross()),
            Err(Error::InvalidDrawing(_))
        ));
    }
}
