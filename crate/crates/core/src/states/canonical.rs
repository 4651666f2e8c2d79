use super::{FaceColoring, Orientation, StatesError};
use crate::graph::{HalfEdge, LabeledGraph, Side};

/// Orients every edge so that its white face lies on the right of the arrow
/// (clockwise around white faces). Every vertex ends up in class C.
pub fn canonical_planar_orientation(
    g: &LabeledGraph,
    fc: &FaceColoring,
) -> Result<Orientation, StatesError> {
    if !g.has_rotation_system() {
        return Err(StatesError::NoRotationSystem);
    }
    let mut tau = Orientation::toward_u(g.edge_count());
    for e in 0..g.edge_count() {
        // The dart u→v has its left face here; white on the left means the
        // arrow must run v→u to put white on the right.
        let left_of_forward = fc.face_left_of(HalfEdge {
            edge: e,
            side: Side::U,
        });
        let head = if fc.is_white(left_of_forward) {
            Side::U
        } else {
            Side::V
        };
        tau.set_head(e, head);
    }
    tau.check_even(g)?;
    Ok(tau)
}

/// All edges from R to L: L vertices are sinks, R vertices sources.
pub fn canonical_bipartite_orientation(g: &LabeledGraph) -> Result<Orientation, StatesError> {
    let b = g.bipartition().ok_or(StatesError::MissingBipartition)?;
    let mut tau = Orientation::toward_u(g.edge_count());
    for (e, edge) in g.edges().iter().enumerate() {
        tau.set_head(e, if b.is_left(edge.v) { Side::V } else { Side::U });
    }
    Ok(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_k44, gen_octahedron, gen_torus};
    use crate::states::{class_profile_orientation, face_two_coloring, VertexClass};

    #[test]
    fn planar_canonical_is_all_class_c() {
        for g in [
            gen_octahedron(),
            gen_torus(4, 4),
            gen_torus(2, 2),
            gen_torus(2, 6),
        ] {
            let fc = face_two_coloring(&g).unwrap();
            let tau = canonical_planar_orientation(&g, &fc).unwrap();
            let profile = class_profile_orientation(&g, &tau).unwrap();
            assert_eq!(profile[VertexClass::C.index()] as usize, g.vertex_count());
            for v in 0..g.vertex_count() {
                assert_eq!(tau.in_degree(&g, v), 2);
            }
        }
    }

    #[test]
    fn bipartite_canonical_sinks_and_sources() {
        for g in [gen_k44(), gen_torus(4, 4)] {
            let tau = canonical_bipartite_orientation(&g).unwrap();
            let b = g.bipartition().unwrap();
            let sinks = (0..g.vertex_count())
                .filter(|&v| tau.in_degree(&g, v) == 4)
                .count();
            let sources = (0..g.vertex_count())
                .filter(|&v| tau.in_degree(&g, v) == 0)
                .count();
            assert_eq!(sinks, sources);
            assert_eq!(sinks + sources, g.vertex_count());
            for v in b.left() {
                assert_eq!(tau.in_degree(&g, v), 4);
            }
        }
        assert_eq!(
            canonical_bipartite_orientation(&gen_octahedron()),
            Err(StatesError::MissingBipartition)
        );
    }
}
