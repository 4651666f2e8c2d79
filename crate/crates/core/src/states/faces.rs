//! Face tracing on a rotation system and proper 2-coloring of the faces.

use std::collections::VecDeque;

use super::StatesError;
use crate::graph::{EdgeId, HalfEdge, LabeledGraph, Side};

/// Faces of an embedded graph with a black/white coloring.
///
/// A dart is a half-edge read as "leave its vertex along this edge"; each dart
/// has exactly one face on its left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceColoring {
    face_of_dart: Vec<usize>,
    white: Vec<bool>,
    reference_face: usize,
}

fn dart_index(h: HalfEdge) -> usize {
    2 * h.edge + usize::from(h.side == Side::V)
}

impl FaceColoring {
    pub fn face_count(&self) -> usize {
        self.white.len()
    }

    /// Face on the left of the dart leaving `h`'s vertex along `h`.
    pub fn face_left_of(&self, h: HalfEdge) -> usize {
        self.face_of_dart[dart_index(h)]
    }

    pub fn is_white(&self, face: usize) -> bool {
        self.white[face]
    }

    pub fn reference_face(&self) -> usize {
        self.reference_face
    }

    pub fn white_count(&self) -> usize {
        self.white.iter().filter(|&&w| w).count()
    }

    /// Edges bounding each face, counted mod 2 (an edge with the same face on
    /// both sides drops out).
    pub fn face_boundaries(&self) -> Vec<Vec<EdgeId>> {
        let mut out = vec![Vec::new(); self.face_count()];
        for (dart, &f) in self.face_of_dart.iter().enumerate() {
            out[f].push(dart / 2);
        }
        for edges in &mut out {
            edges.sort_unstable();
            let mut kept = Vec::with_capacity(edges.len());
            let mut i = 0;
            while i < edges.len() {
                if i + 1 < edges.len() && edges[i] == edges[i + 1] {
                    i += 2;
                } else {
                    kept.push(edges[i]);
                    i += 1;
                }
            }
            *edges = kept;
        }
        out
    }
}

/// Clockwise successor of a label in the counterclockwise rotation.
fn clockwise_next(label: u8) -> u8 {
    (label + 2) % 4 + 1
}

/// Traces faces from the rotation system, then 2-colors the dual graph.
/// The face left of the dart at vertex 0, label 1 is the white reference face.
pub fn face_two_coloring(g: &LabeledGraph) -> Result<FaceColoring, StatesError> {
    if !g.has_rotation_system() {
        return Err(StatesError::NoRotationSystem);
    }
    let darts = 2 * g.edge_count();
    let mut face_of_dart = vec![usize::MAX; darts];
    let mut faces = 0;
    for e in 0..g.edge_count() {
        for side in [Side::U, Side::V] {
            let start = HalfEdge { edge: e, side };
            if face_of_dart[dart_index(start)] != usize::MAX {
                continue;
            }
            let mut d = start;
            while face_of_dart[dart_index(d)] == usize::MAX {
                face_of_dart[dart_index(d)] = faces;
                let arrive = g.twin(d);
                let y = g.vertex_of(arrive);
                d = g.half_edge_at(y, clockwise_next(g.label_of(arrive)));
            }
            faces += 1;
        }
    }

    // Dual adjacency: the two darts of an edge see the two faces it separates.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); faces];
    for e in 0..g.edge_count() {
        let f = face_of_dart[2 * e];
        let h = face_of_dart[2 * e + 1];
        adj[f].push(h);
        if f != h {
            adj[h].push(f);
        }
    }

    let reference_face = if g.vertex_count() == 0 {
        0
    } else {
        face_of_dart[dart_index(g.half_edge_at(0, 1))]
    };
    let mut color: Vec<Option<bool>> = vec![None; faces];
    let mut parent: Vec<Option<usize>> = vec![None; faces];
    let order = std::iter::once(reference_face).chain(0..faces);
    for root in order {
        if faces == 0 || color[root].is_some() {
            continue;
        }
        color[root] = Some(true);
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            for &h in &adj[f] {
                match color[h] {
                    None => {
                        color[h] = Some(!color[f].unwrap());
                        parent[h] = Some(f);
                        queue.push_back(h);
                    }
                    Some(c) if c == color[f].unwrap() => {
                        return Err(StatesError::DualNotBipartite {
                            odd_cycle: odd_cycle(&parent, f, h),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }

    Ok(FaceColoring {
        face_of_dart,
        white: color.into_iter().map(|c| c.unwrap()).collect(),
        reference_face,
    })
}

/// Closes the BFS-tree paths from `f` and `h` into a cycle through edge f–h.
fn odd_cycle(parent: &[Option<usize>], f: usize, h: usize) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while let Some(y) = parent[x] {
            p.push(y);
            x = y;
        }
        p
    };
    let pf = path(f);
    let ph = path(h);
    let meet = pf.iter().copied().find(|x| ph.contains(x)).unwrap_or(f);
    let mut cycle: Vec<usize> = pf.iter().copied().take_while(|&x| x != meet).collect();
    cycle.push(meet);
    let back: Vec<usize> = ph.iter().copied().take_while(|&x| x != meet).collect();
    cycle.extend(back.into_iter().rev());
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_k44, gen_octahedron, gen_torus};

    #[test]
    fn octahedron_faces() {
        let g = gen_octahedron();
        let fc = face_two_coloring(&g).unwrap();
        assert_eq!(fc.face_count(), 8);
        assert_eq!(
            g.vertex_count() as i64 - g.edge_count() as i64 + fc.face_count() as i64,
            2
        );
        assert_eq!(fc.white_count(), 4);
        assert!(fc.is_white(fc.reference_face()));
        let boundaries = fc.face_boundaries();
        assert!(boundaries.iter().all(|b| b.len() == 3));
    }

    #[test]
    fn torus_faces_checkerboard() {
        let g = gen_torus(4, 4);
        let fc = face_two_coloring(&g).unwrap();
        assert_eq!(fc.face_count(), 16);
        assert_eq!(fc.white_count(), 8);
        for e in 0..g.edge_count() {
            let l = fc.face_left_of(HalfEdge {
                edge: e,
                side: Side::U,
            });
            let r = fc.face_left_of(HalfEdge {
                edge: e,
                side: Side::V,
            });
            assert_ne!(fc.is_white(l), fc.is_white(r));
        }
    }

    #[test]
    fn odd_torus_dual_not_bipartite() {
        let err = face_two_coloring(&gen_torus(3, 4)).unwrap_err();
        match err {
            StatesError::DualNotBipartite { odd_cycle } => assert_eq!(odd_cycle.len() % 2, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(err_msg(&gen_torus(3, 4)).contains("dual not bipartite"));
    }

    fn err_msg(g: &LabeledGraph) -> String {
        face_two_coloring(g).unwrap_err().to_string()
    }

    #[test]
    fn requires_rotation_system() {
        assert_eq!(
            face_two_coloring(&gen_k44()),
            Err(StatesError::NoRotationSystem)
        );
    }
}
