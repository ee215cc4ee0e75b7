//! Geometric normal processive extension.
//!
//! Every non-leaf source gets a short vertical input stub from directly
//! above and every non-leaf sink a short vertical output stub straight down.
//! At a non-leaf source all incident edges leave strictly downward, so a
//! stub shorter than the distance to the nearest non-incident feature meets
//! nothing. Isolated vertices are first turned into short vertical virtual
//! edges centred on the vertex.

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use crate::embedding::{
    extract_rotation, rotation_to_polarization, Polarization, PolarizationStructure,
};
use crate::error::{Error, Result};
use crate::geometry::rational::{int, ratio, sqrt_lower_bound};
use crate::geometry::{
    nearest_feature_dist2, require_valid, validate_drawing, Drawing, Point, Rational,
};
use crate::graph::{ExtensionMapping, StubDirection, VertexId, VirtualizationMapping};

/// A drawing of the extended graph together with the stubs that were added.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedDrawing {
    pub drawing: Drawing,
    pub mapping: ExtensionMapping,
    pub stub_scale: Rational,
}

impl ExtendedDrawing {
    /// Drops the stubs again.
    pub fn restrict(&self) -> Result<Drawing> {
        let g = self.drawing.graph().remove_extension(&self.mapping)?;
        self.drawing.restrict_to(&g)
    }
}

pub fn default_stub_scale() -> Rational {
    ratio(1, 2)
}

/// Adds vertical stubs. `stub_scale` must lie strictly between 0 and 1; the
/// stub at `v` has length `stub_scale * r` where `r` is a rational lower
/// bound on the clearance of `v` (distance to the nearest feature not
/// incident to `v`, and half the distance to any other stubbed vertex).
pub fn npp_extend(drawing: &Drawing, stub_scale: &Rational) -> Result<ExtendedDrawing> {
    if !stub_scale.is_positive() || stub_scale >= &Rational::one() {
        return Err(Error::Domain(
            "stub scale must lie strictly between 0 and 1".into(),
        ));
    }
    require_valid(drawing)?;
    let (graph, mapping) = drawing.graph().np_extend()?;

    let stubbed: Vec<&VertexId> = mapping.stubs.keys().collect();
    let mut new_positions = Vec::with_capacity(stubbed.len());
    for (v, entry) in &mapping.stubs {
        let p = drawing.position(v);
        let mut best = nearest_feature_dist2(drawing, p);
        for w in &stubbed {
            if *w != v {
                let half2 = p.dist2(drawing.position(w)) / int(4);
                if best.as_ref().is_none_or(|b| &half2 < b) {
                    best = Some(half2);
                }
            }
        }
        let reach = best.map_or_else(Rational::one, |d2| sqrt_lower_bound(&d2, false));
        let h = stub_scale * reach;
        let leaf = match entry.direction {
            StubDirection::InputStub => Point::new(p.x.clone(), &p.y + &h),
            StubDirection::OutputStub => Point::new(p.x.clone(), &p.y - &h),
        };
        new_positions.push((entry.leaf.clone(), leaf));
    }
    let extended = drawing.extended(graph, new_positions, std::iter::empty())?;
    let report = validate_drawing(&extended);
    if !report.ok {
        return Err(Error::Internal(format!(
            "extended drawing is invalid: {:?}",
            report.violations
        )));
    }
    Ok(ExtendedDrawing {
        drawing: extended,
        mapping,
        stub_scale: stub_scale.clone(),
    })
}

/// Replaces each isolated vertex by a vertical virtual edge centred on it,
/// with half-length strictly below half the distance to the nearest other
/// feature (1/2 when there is none).
pub fn virtualize_drawing(drawing: &Drawing) -> Result<(Drawing, VirtualizationMapping)> {
    require_valid(drawing)?;
    let (graph, mapping) = drawing.graph().virtualize_isolated()?;
    let mut new_positions = Vec::new();
    for (v, ve) in &mapping.virtual_edges {
        let p = drawing.position(v);
        let h = match nearest_feature_dist2(drawing, p) {
            Some(d2) => sqrt_lower_bound(&d2, true) / int(2),
            None => ratio(1, 2),
        };
        new_positions.push((ve.top.clone(), Point::new(p.x.clone(), &p.y + &h)));
        new_positions.push((ve.bottom.clone(), Point::new(p.x.clone(), &p.y - &h)));
    }
    let out = drawing.extended(graph, new_positions, std::iter::empty())?;
    debug_assert!(validate_drawing(&out).ok);
    Ok((out, mapping))
}

/// Inverse of [`virtualize_drawing`]: each virtual edge collapses back to its midpoint.
pub fn devirtualize_drawing(drawing: &Drawing, mapping: &VirtualizationMapping) -> Result<Drawing> {
    let graph = drawing.graph().devirtualize(mapping)?;
    let mut positions: BTreeMap<VertexId, Point> = BTreeMap::new();
    for v in graph.vertices() {
        let p = match mapping.virtual_edges.get(v) {
            Some(ve) => {
                let (t, b) = (drawing.position(&ve.top), drawing.position(&ve.bottom));
                t.lerp(b, &ratio(1, 2))
            }
            None => drawing.position(v).clone(),
        };
        positions.insert(v.clone(), p);
    }
    let bends = graph
        .edges()
        .map(|e| (e.id.clone(), drawing.bends(&e.id).to_vec()))
        .collect();
    Drawing::new(graph, positions, bends)
}

/// Virtualizes isolated vertices, then extends.
pub fn npp_extend_auto(
    drawing: &Drawing,
    stub_scale: &Rational,
) -> Result<(ExtendedDrawing, VirtualizationMapping)> {
    let (virt, vmap) = virtualize_drawing(drawing)?;
    Ok((npp_extend(&virt, stub_scale)?, vmap))
}

/// Polarization structure obtained by converting the rotations of the
/// extended drawing, with stubs removed from the orders. Isolated vertices
/// get empty polarizations.
pub fn polarization_via_npp(drawing: &Drawing) -> Result<PolarizationStructure> {
    let (ext, _) = npp_extend_auto(drawing, &default_stub_scale())?;
    let ext_graph = ext.drawing.graph();
    let mut out = BTreeMap::new();
    for v in drawing.graph().vertices() {
        let pol = if drawing.graph().degree(v) == 0 {
            Polarization::empty(v.clone())
        } else {
            let rot = extract_rotation(&ext.drawing, v)?;
            let mut pol = rotation_to_polarization(&rot, ext_graph)?;
            pol.in_order.retain(|e| !ext.mapping.is_stub_edge(e));
            pol.out_order.retain(|e| !ext.mapping.is_stub_edge(e));
            pol
        };
        out.insert(v.clone(), pol);
    }
    Ok(PolarizationStructure(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{extract_polarization, signature};
    use crate::fixtures;
    use crate::geometry::mirror_x;

    #[test]
    fn diamond_stubs() {
        let d = fixtures::diamond();
        let ext = npp_extend(&d, &ratio(1, 2)).unwrap();
        let g = ext.drawing.graph();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 6));
        // clearance of a: nearest non-incident feature is b at sqrt(5), but the
        // other stubbed vertex d caps it at 4/2 = 2
        assert_eq!(
            ext.drawing.position(&"a__in_leaf".into()),
            &Point::from_ints(0, 5)
        );
        assert_eq!(
            ext.drawing.position(&"d__out_leaf".into()),
            &Point::from_ints(0, -1)
        );
        assert_eq!(ext.restrict().unwrap(), d);

        let third = npp_extend(&d, &ratio(1, 3)).unwrap();
        assert_ne!(third.drawing, ext.drawing);
        assert_eq!(
            signature(&third.drawing).unwrap(),
            signature(&ext.drawing).unwrap()
        );
    }

    #[test]
    fn single_edge_unchanged() {
        let d = fixtures::single_edge();
        let ext = npp_extend(&d, &ratio(1, 2)).unwrap();
        assert_eq!(ext.drawing, d);
        assert!(ext.mapping.is_empty());
    }

    #[test]
    fn bad_scale_and_isolated() {
        let d = fixtures::diamond();
        for s in [int(0), int(1), ratio(-1, 2), ratio(3, 2)] {
            assert!(matches!(npp_extend(&d, &s), Err(Error::Domain(_))));
        }
        let iso = Drawing::straight(&[("v", 0, 0)], &[]).unwrap();
        assert!(matches!(
            npp_extend(&iso, &ratio(1, 2)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn lone_isolated_vertex() {
        let iso = Drawing::straight(&[("v", 0, 0)], &[]).unwrap();
        let (ext, vmap) = npp_extend_auto(&iso, &ratio(1, 2)).unwrap();
        assert!(ext.mapping.is_empty());
        assert_eq!(vmap.virtual_edges.len(), 1);
        assert_eq!(
            ext.drawing.position(&"v__top".into()),
            &Point::new(int(0), ratio(1, 2))
        );
        assert_eq!(
            ext.drawing.position(&"v__bot".into()),
            &Point::new(int(0), ratio(-1, 2))
        );
        let back = devirtualize_drawing(&ext.drawing, &vmap).unwrap();
        assert_eq!(back, iso);
    }

    #[test]
    fn fig2_virtual_edges_stay_in_their_faces() {
        let (d, _) = fixtures::fig2();
        let (virt, vmap) = virtualize_drawing(&d).unwrap();
        assert_eq!(vmap.virtual_edges.len(), 4);
        assert_eq!(virt.graph().vertex_count(), d.graph().vertex_count() + 4);
        assert_eq!(virt.graph().edge_count(), d.graph().edge_count() + 4);
        assert!(validate_drawing(&virt).ok);
        let sig = signature(&virt).unwrap();
        // i2 sits in the face bounded by p -> r -> u <- p
        let i2 = sig.component(&"i2__bot".into()).unwrap();
        assert_eq!(i2.parent.as_ref().unwrap().component, VertexId::from("b1"));
        // i3 and i4 sit between the main diagram and the edge t3 -> b3,
        // i1 above the edge p -> q: all in the unbounded region
        for k in ["i1__bot", "i3__bot", "i4__bot"] {
            assert_eq!(sig.component(&k.into()).unwrap().parent, None, "{k}");
        }
        assert_eq!(devirtualize_drawing(&virt, &vmap).unwrap(), d);
    }

    #[test]
    fn via_npp_matches_geometry() {
        for d in [
            fixtures::tree(),
            fixtures::diamond(),
            fixtures::single_edge(),
            fixtures::fig1(),
        ] {
            assert_eq!(polarization_via_npp(&d).unwrap(), extract_polarization(&d));
            let m = mirror_x(&d);
            assert_eq!(polarization_via_npp(&m).unwrap(), extract_polarization(&m));
        }
        let (fig2, _) = fixtures::fig2();
        assert_eq!(
            polarization_via_npp(&fig2).unwrap(),
            extract_polarization(&fig2)
        );
    }

    #[test]
    fn diamond_extended_rotation_at_source() {
        let ext = npp_extend(&fixtures::diamond(), &ratio(1, 2)).unwrap();
        let r = extract_rotation(&ext.drawing, &"a".into()).unwrap();
        assert_eq!(
            r,
            crate::embedding::Rotation::new("a", ["a__in_stub", "e2", "e1"])
        );
    }

    #[test]
    fn fig1_extension_counts() {
        let d = fixtures::fig1();
        let ext = npp_extend(&d, &ratio(1, 2)).unwrap();
        assert_eq!(ext.drawing.graph().vertex_count(), 9 + 5);
        assert_eq!(ext.drawing.graph().edge_count(), d.graph().edge_count() + 5);
        assert!(ext.drawing.graph().is_processive_graph().unwrap());
    }
}
