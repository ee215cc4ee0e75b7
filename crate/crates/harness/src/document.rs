//! Versioned JSON documents.
//!
//! Every document is written by one canonical serializer: object keys sorted,
//! vertices and edges sorted by id, two-space indentation, trailing newline.
//! Coordinates are exact decimal strings (or `p/q` when no finite decimal
//! exists).

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use upward_core::embedding::{EmbeddingSignature, PolarizationStructure};
use upward_core::equivalence::{
    ChainStep, ChainVerification, DeformationChain, EquivalenceReport, MoveKind,
};
use upward_core::geometry::rational::{format_rational, parse_rational};
use upward_core::geometry::{Drawing, Point, Rational, ValidationReport};
use upward_core::graph::{
    DirectedAcyclicGraph, EdgeId, EdgeRecord, ExtensionMapping, VertexId, VirtualizationMapping,
};

use crate::error::{HarnessError, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: VertexId,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    #[serde(default)]
    pub bends: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrawingDocument {
    pub format_version: u32,
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension_mapping: Option<ExtensionMapping>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub virtualization_mapping: Option<VirtualizationMapping>,
}

/// A drawing plus the optional mapping blocks carried alongside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawingFile {
    pub drawing: Drawing,
    pub extension_mapping: Option<ExtensionMapping>,
    pub virtualization_mapping: Option<VirtualizationMapping>,
}

impl From<Drawing> for DrawingFile {
    fn from(drawing: Drawing) -> Self {
        DrawingFile {
            drawing,
            extension_mapping: None,
            virtualization_mapping: None,
        }
    }
}

fn coord(text: &str, what: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| HarnessError::Format(format!("{what}: {e}")))
}

fn point(pair: &[String; 2], what: &str) -> Result<Point> {
    Ok(Point::new(coord(&pair[0], what)?, coord(&pair[1], what)?))
}

fn pair(p: &Point) -> [String; 2] {
    [format_rational(&p.x), format_rational(&p.y)]
}

/// Pretty JSON of `value` with sorted keys.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let v: Value = serde_json::to_value(value).expect("document serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| HarnessError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(HarnessError::Format(format!(
            "unsupported format_version {v}, expected {FORMAT_VERSION}"
        )));
    }
    Ok(())
}

impl DrawingDocument {
    pub fn from_drawing(file: &DrawingFile) -> Self {
        let d = &file.drawing;
        DrawingDocument {
            format_version: FORMAT_VERSION,
            vertices: d
                .positions()
                .iter()
                .map(|(v, p)| VertexEntry {
                    id: v.clone(),
                    x: format_rational(&p.x),
                    y: format_rational(&p.y),
                })
                .collect(),
            edges: d
                .graph()
                .edges()
                .map(|e| EdgeEntry {
                    id: e.id.clone(),
                    tail: e.tail.clone(),
                    head: e.head.clone(),
                    bends: d.bends(&e.id).iter().map(pair).collect(),
                })
                .collect(),
            extension_mapping: file.extension_mapping.clone(),
            virtualization_mapping: file.virtualization_mapping.clone(),
        }
    }

    pub fn to_drawing(&self) -> Result<DrawingFile> {
        check_version(self.format_version)?;
        let graph = DirectedAcyclicGraph::new(
            self.vertices.iter().map(|v| v.id.clone()),
            self.edges
                .iter()
                .map(|e| EdgeRecord::new(e.id.clone(), e.tail.clone(), e.head.clone())),
        )?;
        let mut positions = BTreeMap::new();
        for v in &self.vertices {
            let what = format!("vertex `{}`", v.id);
            positions.insert(
                v.id.clone(),
                Point::new(coord(&v.x, &what)?, coord(&v.y, &what)?),
            );
        }
        let mut bends = BTreeMap::new();
        for e in &self.edges {
            let what = format!("bend of edge `{}`", e.id);
            let pts = e
                .bends
                .iter()
                .map(|b| point(b, &what))
                .collect::<Result<Vec<_>>>()?;
            bends.insert(e.id.clone(), pts);
        }
        Ok(DrawingFile {
            drawing: Drawing::new(graph, positions, bends)?,
            extension_mapping: self.extension_mapping.clone(),
            virtualization_mapping: self.virtualization_mapping.clone(),
        })
    }
}

pub fn parse_drawing(text: &str) -> Result<DrawingFile> {
    from_json::<DrawingDocument>(text)?.to_drawing()
}

/// Never validates: invalid drawings serialize like any other.
pub fn serialize_drawing(file: &DrawingFile) -> String {
    to_canonical(&DrawingDocument::from_drawing(file))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureDocument {
    pub format_version: u32,
    #[serde(flatten)]
    pub signature: EmbeddingSignature,
    pub digest: String,
}

impl SignatureDocument {
    pub fn new(signature: EmbeddingSignature) -> Self {
        SignatureDocument {
            format_version: FORMAT_VERSION,
            digest: signature.digest(),
            signature,
        }
    }

    /// Checks the version and that the digest matches the records.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: SignatureDocument = from_json(text)?;
        check_version(doc.format_version)?;
        if doc.signature.digest() != doc.digest {
            return Err(HarnessError::Format(
                "digest does not match the signature records".into(),
            ));
        }
        Ok(doc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationDocument {
    pub format_version: u32,
    pub polarizations: Vec<upward_core::embedding::Polarization>,
}

impl PolarizationDocument {
    pub fn new(p: &PolarizationStructure) -> Self {
        PolarizationDocument {
            format_version: FORMAT_VERSION,
            polarizations: p.0.values().cloned().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationDocument {
    pub format_version: u32,
    #[serde(flatten)]
    pub report: ValidationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceDocument {
    pub format_version: u32,
    #[serde(flatten)]
    pub report: EquivalenceReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepEntry {
    pub kind: MoveKind,
    pub max_displacement2: String,
    /// Absent when the clearance is unbounded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clearance2: Option<String>,
    pub fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDocument {
    pub format_version: u32,
    pub frames: Vec<DrawingDocument>,
    pub steps: Vec<StepEntry>,
}

impl ChainDocument {
    pub fn from_chain(chain: &DeformationChain) -> Self {
        ChainDocument {
            format_version: FORMAT_VERSION,
            frames: chain
                .frames
                .iter()
                .map(|f| DrawingDocument::from_drawing(&f.clone().into()))
                .collect(),
            steps: chain
                .steps
                .iter()
                .map(|s| StepEntry {
                    kind: s.kind,
                    max_displacement2: format_rational(&s.max_displacement2),
                    clearance2: s.clearance2.as_ref().map(format_rational),
                    fallback: s.fallback,
                })
                .collect(),
        }
    }

    pub fn to_chain(&self) -> Result<DeformationChain> {
        check_version(self.format_version)?;
        let frames = self
            .frames
            .iter()
            .map(|f| f.to_drawing().map(|f| f.drawing))
            .collect::<Result<Vec<_>>>()?;
        let steps = self
            .steps
            .iter()
            .map(|s| {
                Ok(ChainStep {
                    kind: s.kind,
                    max_displacement2: coord(&s.max_displacement2, "step displacement")?,
                    clearance2: s
                        .clearance2
                        .as_deref()
                        .map(|c| coord(c, "step clearance"))
                        .transpose()?,
                    fallback: s.fallback,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DeformationChain { frames, steps })
    }
}

pub fn parse_chain(text: &str) -> Result<DeformationChain> {
    from_json::<ChainDocument>(text)?.to_chain()
}

pub fn serialize_chain(chain: &DeformationChain) -> String {
    to_canonical(&ChainDocument::from_chain(chain))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureEntry {
    pub index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReportDocument {
    pub format_version: u32,
    pub ok: bool,
    pub frames: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureEntry>,
}

impl ChainReportDocument {
    pub fn new(frames: usize, v: &ChainVerification) -> Self {
        ChainReportDocument {
            format_version: FORMAT_VERSION,
            ok: v.ok,
            frames,
            failure: v.failure.as_ref().map(|f| FailureEntry {
                index: f.index,
                reason: f.reason.clone(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use upward_core::fixtures;
    use upward_core::geometry::rational::ratio;

    const TREE: &str = r#"{
  "edges": [
    {
      "bends": [],
      "head": "b",
      "id": "e1",
      "tail": "a"
    },
    {
      "bends": [],
      "head": "c",
      "id": "e2",
      "tail": "b"
    },
    {
      "bends": [],
      "head": "d",
      "id": "e3",
      "tail": "b"
    }
  ],
  "format_version": 1,
  "vertices": [
    {
      "id": "a",
      "x": "0",
      "y": "4"
    },
    {
      "id": "b",
      "x": "0",
      "y": "2"
    },
    {
      "id": "c",
      "x": "-1",
      "y": "0"
    },
    {
      "id": "d",
      "x": "1",
      "y": "0"
    }
  ]
}
"#;

    #[test]
    fn tree_round_trip() {
        let f = parse_drawing(TREE).unwrap();
        assert_eq!(f.drawing, fixtures::tree());
        assert_eq!(serialize_drawing(&f), TREE);
    }

    #[test]
    fn decimal_literal_is_exact() {
        let text = TREE.replace(r#""x": "-1""#, r#""x": "0.1""#);
        let f = parse_drawing(&text).unwrap();
        assert_eq!(f.drawing.position(&"c".into()).x, ratio(1, 10));
        assert_eq!(serialize_drawing(&f), text);
    }

    #[test]
    fn duplicate_edge_id() {
        let text = TREE.replace(r#""id": "e2""#, r#""id": "e1""#);
        match parse_drawing(&text) {
            Err(HarnessError::Core(upward_core::Error::Structural { id, .. })) => {
                assert_eq!(id, "e1")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_drawing("{\n  \"format_version\": 1,\n  oops\n}") {
            Err(HarnessError::Parse { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_drawing(&TREE.replace("\"format_version\": 1", "\"format_version\": 2")),
            Err(HarnessError::Format(_))
        ));
        assert!(matches!(
            parse_drawing(&TREE.replace("\"-1\"", "\"1e3\"")),
            Err(HarnessError::Format(_))
        ));
    }

    #[test]
    fn canonicalizes_order_and_literals() {
        let messy = r#"{"vertices":[{"y":"-0.50","x":"+3","id":"q"},{"id":"p","x":"0","y":"2"}],
            "format_version":1,"edges":[{"id":"e","tail":"p","head":"q"}]}"#;
        let out = serialize_drawing(&parse_drawing(messy).unwrap());
        let vs = &out[out.find("\"vertices\"").unwrap()..];
        assert!(vs.find("\"p\"").unwrap() < vs.find("\"q\"").unwrap());
        assert!(out.contains("\"-0.5\"") && out.contains("\"3\""));
        assert_eq!(serialize_drawing(&parse_drawing(&out).unwrap()), out);
    }

    #[test]
    fn mapping_blocks_round_trip() {
        let (d, _) = fixtures::fig2();
        let (ext, vmap) = upward_core::npp::npp_extend_auto(&d, &ratio(1, 3)).unwrap();
        let f = DrawingFile {
            drawing: ext.drawing,
            extension_mapping: Some(ext.mapping),
            virtualization_mapping: Some(vmap),
        };
        let text = serialize_drawing(&f);
        assert!(
            text.contains("\"extension_mapping\"") && text.contains("\"virtualization_mapping\"")
        );
        assert_eq!(parse_drawing(&text).unwrap(), f);
    }

    #[test]
    fn signature_document_digest() {
        let sig = upward_core::embedding::signature(&fixtures::diamond()).unwrap();
        let text = to_canonical(&SignatureDocument::new(sig.clone()));
        let back = SignatureDocument::parse(&text).unwrap();
        assert_eq!(back.signature, sig);
        let tampered = text.replacen(&sig.digest()[..8], "00000000", 1);
        assert!(SignatureDocument::parse(&tampered).is_err());
    }

    #[test]
    fn chain_round_trip() {
        let c = upward_core::equivalence::make_chain(&fixtures::diamond(), 6, 5).unwrap();
        let text = serialize_chain(&c);
        assert_eq!(parse_chain(&text).unwrap(), c);
    }
}
