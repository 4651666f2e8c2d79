//! Labeled 4-regular multigraphs.
//!
//! Every vertex has exactly four half-edges carrying the labels 1..4. When the
//! graph carries a rotation system, the labels run counterclockwise around each
//! vertex with the geometric reading 1 = left/west, 2 = down/south,
//! 3 = right/east, 4 = up/north. Parallel edges and self-loops are allowed;
//! incidences are tracked per half-edge.

mod format;
mod generators;

pub use format::{parse_graph, serialize_graph};
pub use generators::{gen_k44, gen_octahedron, gen_torus};

use std::collections::VecDeque;

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("edge {edge}: dangling vertex id {vertex}")]
    DanglingVertex { edge: EdgeId, vertex: VertexId },
    #[error("edge {edge}: label {label} out of range 1..4")]
    BadLabel { edge: EdgeId, label: u8 },
    #[error("vertex {vertex}: duplicate label {label}")]
    DuplicateLabel { vertex: VertexId, label: u8 },
    #[error("vertex {vertex}: not 4-regular (degree {degree})")]
    NotFourRegular { vertex: VertexId, degree: usize },
    #[error("bipartition: vertex id {vertex} out of range")]
    BipartitionVertex { vertex: VertexId },
    #[error("bipartition: edge {edge} does not join L to R")]
    BipartitionViolated { edge: EdgeId },
}

/// An undirected edge between two labeled half-edges.
///
/// Stored normalized: `u <= v`, and for self-loops `label_u < label_v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub label_u: u8,
    pub v: VertexId,
    pub label_v: u8,
}

impl Edge {
    pub fn new(u: VertexId, label_u: u8, v: VertexId, label_v: u8) -> Self {
        if (v, label_v) < (u, label_u) {
            Self {
                u: v,
                label_u: label_v,
                v: u,
                label_v: label_u,
            }
        } else {
            Self {
                u,
                label_u,
                v,
                label_v,
            }
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn endpoint(&self, side: Side) -> VertexId {
        match side {
            Side::U => self.u,
            Side::V => self.v,
        }
    }

    pub fn label(&self, side: Side) -> u8 {
        match side {
            Side::U => self.label_u,
            Side::V => self.label_v,
        }
    }
}

/// Which end of an [`Edge`] a half-edge sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    U,
    V,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::U => Side::V,
            Side::V => Side::U,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingKind {
    None,
    RotationSystem,
    Bipartition,
}

impl EmbeddingKind {
    pub fn keyword(self) -> &'static str {
        match self {
            EmbeddingKind::None => "none",
            EmbeddingKind::RotationSystem => "rotation",
            EmbeddingKind::Bipartition => "bipartite",
        }
    }
}

/// A 2-coloring of the vertices into L and R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    in_left: Vec<bool>,
}

impl Bipartition {
    pub fn from_left(vertex_count: usize, left: &[VertexId]) -> Result<Self, GraphError> {
        let mut in_left = vec![false; vertex_count];
        for &v in left {
            if v >= vertex_count {
                return Err(GraphError::BipartitionVertex { vertex: v });
            }
            in_left[v] = true;
        }
        Ok(Self { in_left })
    }

    pub fn is_left(&self, v: VertexId) -> bool {
        self.in_left[v]
    }

    pub fn left(&self) -> Vec<VertexId> {
        (0..self.in_left.len())
            .filter(|&v| self.in_left[v])
            .collect()
    }

    pub fn right(&self) -> Vec<VertexId> {
        (0..self.in_left.len())
            .filter(|&v| !self.in_left[v])
            .collect()
    }

    pub fn sizes(&self) -> (usize, usize) {
        let l = self.in_left.iter().filter(|&&x| x).count();
        (l, self.in_left.len() - l)
    }
}

/// A validated labeled 4-regular multigraph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    embedding: EmbeddingKind,
    bipartition: Option<Bipartition>,
    /// `incidence[v][l - 1]` is the half-edge carrying label `l` at `v`.
    incidence: Vec<[HalfEdge; 4]>,
}

impl LabeledGraph {
    pub fn new(
        vertex_count: usize,
        edges: Vec<Edge>,
        embedding: EmbeddingKind,
        bipartition_left: Option<&[VertexId]>,
    ) -> Result<Self, GraphError> {
        let edges: Vec<Edge> = edges
            .into_iter()
            .map(|e| Edge::new(e.u, e.label_u, e.v, e.label_v))
            .collect();
        let mut slots: Vec<[Option<HalfEdge>; 4]> = vec![[None; 4]; vertex_count];
        let mut degree = vec![0usize; vertex_count];
        for (id, e) in edges.iter().enumerate() {
            for side in [Side::U, Side::V] {
                let (x, label) = (e.endpoint(side), e.label(side));
                if x >= vertex_count {
                    return Err(GraphError::DanglingVertex {
                        edge: id,
                        vertex: x,
                    });
                }
                if !(1..=4).contains(&label) {
                    return Err(GraphError::BadLabel { edge: id, label });
                }
                degree[x] += 1;
                if degree[x] > 4 {
                    return Err(GraphError::NotFourRegular {
                        vertex: x,
                        degree: degree[x],
                    });
                }
                let slot = &mut slots[x][label as usize - 1];
                if slot.is_some() {
                    return Err(GraphError::DuplicateLabel { vertex: x, label });
                }
                *slot = Some(HalfEdge { edge: id, side });
            }
        }
        if let Some(v) = (0..vertex_count).find(|&v| degree[v] != 4) {
            return Err(GraphError::NotFourRegular {
                vertex: v,
                degree: degree[v],
            });
        }
        let incidence = slots
            .into_iter()
            .map(|s| s.map(|h| h.expect("degree 4 with distinct labels fills all slots")))
            .collect();
        let bipartition = match bipartition_left {
            Some(left) => {
                let b = Bipartition::from_left(vertex_count, left)?;
                if let Some(id) = edges.iter().position(|e| b.is_left(e.u) == b.is_left(e.v)) {
                    return Err(GraphError::BipartitionViolated { edge: id });
                }
                Some(b)
            }
            None => None,
        };
        Ok(Self {
            vertex_count,
            edges,
            embedding,
            bipartition,
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn embedding(&self) -> EmbeddingKind {
        self.embedding
    }

    pub fn has_rotation_system(&self) -> bool {
        self.embedding == EmbeddingKind::RotationSystem
    }

    pub fn bipartition(&self) -> Option<&Bipartition> {
        self.bipartition.as_ref()
    }

    /// The four half-edges at `v`, in label order 1..4.
    pub fn half_edges(&self, v: VertexId) -> &[HalfEdge; 4] {
        &self.incidence[v]
    }

    pub fn half_edge_at(&self, v: VertexId, label: u8) -> HalfEdge {
        self.incidence[v][label as usize - 1]
    }

    /// The half-edge on the other end of `h`'s edge.
    pub fn twin(&self, h: HalfEdge) -> HalfEdge {
        HalfEdge {
            edge: h.edge,
            side: h.side.flip(),
        }
    }

    pub fn vertex_of(&self, h: HalfEdge) -> VertexId {
        self.edges[h.edge].endpoint(h.side)
    }

    pub fn label_of(&self, h: HalfEdge) -> u8 {
        self.edges[h.edge].label(h.side)
    }

    /// Connected component index per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        for start in 0..self.vertex_count {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for h in &self.incidence[x] {
                    let y = self.vertex_of(self.twin(*h));
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Dimension `m - n + κ` of the binary cycle space.
    pub fn cycle_space_dim(&self) -> usize {
        let (_, k) = self.components();
        self.edge_count() + k - self.vertex_count
    }

    /// BFS 2-coloring; `None` if some cycle is odd (self-loops included).
    pub fn detect_bipartition(&self) -> Option<Bipartition> {
        let mut color: Vec<Option<bool>> = vec![None; self.vertex_count];
        for start in 0..self.vertex_count {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(true);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let cx = color[x].unwrap();
                for h in &self.incidence[x] {
                    let y = self.vertex_of(self.twin(*h));
                    match color[y] {
                        None => {
                            color[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(Bipartition {
            in_left: color.into_iter().map(|c| c.unwrap()).collect(),
        })
    }

    /// Stored bipartition, or a detected one.
    pub fn bipartition_or_detect(&self) -> Option<Bipartition> {
        self.bipartition
            .clone()
            .or_else(|| self.detect_bipartition())
    }
}
