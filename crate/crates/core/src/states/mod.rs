//! Even orientations, even colorings, and the maps between them.
//!
//! An [`Orientation`] stores one bit per edge: set iff the edge points toward
//! its `v` endpoint (the higher-numbered one, since edges are normalized).
//! A [`Coloring`] stores one bit per edge: set iff the edge is red.

mod canonical;
mod cycles;
mod faces;

pub use canonical::{canonical_bipartite_orientation, canonical_planar_orientation};
pub use cycles::{
    cycle_basis, enumerate_even_orientations, CycleBasis, EvenOrientations, DEFAULT_ENUMERATION_CAP,
};
pub use faces::{face_two_coloring, FaceColoring};

use serde::Serialize;
use thiserror::Error;

use crate::bits::EdgeSet;
use crate::graph::{HalfEdge, LabeledGraph, Side, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatesError {
    #[error("vertex {vertex}: odd in-degree, not an even orientation")]
    OddInDegree { vertex: VertexId },
    #[error("vertex {vertex}: odd number of green edges, not an even coloring")]
    OddGreen { vertex: VertexId },
    #[error("state has {got} edges but the graph has {expected}")]
    MismatchedGraphs { expected: usize, got: usize },
    #[error("graph has no rotation system")]
    NoRotationSystem,
    #[error("dual not bipartite: odd face cycle {odd_cycle:?}")]
    DualNotBipartite { odd_cycle: Vec<usize> },
    #[error("graph has no bipartition")]
    MissingBipartition,
    #[error("cycle-space dimension {dim} exceeds enumeration cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
}

/// Weight class of a vertex: which of `a, b, c, d` it contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VertexClass {
    A,
    B,
    C,
    D,
}

impl VertexClass {
    pub const ALL: [VertexClass; 4] = [
        VertexClass::A,
        VertexClass::B,
        VertexClass::C,
        VertexClass::D,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Classifies a 4-bit mask over labels (bit `l - 1` for label `l`).
    /// Returns `None` for masks of odd weight.
    #[inline]
    pub fn from_mask(mask: u8) -> Option<VertexClass> {
        CLASS_OF_MASK[(mask & 0xF) as usize]
    }
}

/// {1,2},{3,4} → A; {1,4},{2,3} → B; {1,3},{2,4} → C; ∅,{1,2,3,4} → D.
const CLASS_OF_MASK: [Option<VertexClass>; 16] = {
    use VertexClass::*;
    let mut t = [None; 16];
    t[0b0000] = Some(D);
    t[0b1111] = Some(D);
    t[0b0011] = Some(A);
    t[0b1100] = Some(A);
    t[0b1001] = Some(B);
    t[0b0110] = Some(B);
    t[0b0101] = Some(C);
    t[0b1010] = Some(C);
    t
};

/// Builds a label mask from a set of labels in 1..=4.
pub fn label_mask(labels: &[u8]) -> u8 {
    labels.iter().fold(0, |m, &l| m | 1 << (l - 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation(pub EdgeSet);

impl Orientation {
    /// Every edge pointing into its `u` endpoint.
    pub fn toward_u(edge_count: usize) -> Self {
        Self(EdgeSet::new(edge_count))
    }

    pub fn edge_count(&self) -> usize {
        self.0.len()
    }

    /// The side of edge `e` its arrow points into.
    #[inline]
    pub fn head(&self, e: usize) -> Side {
        if self.0.get(e) {
            Side::V
        } else {
            Side::U
        }
    }

    pub fn set_head(&mut self, e: usize, side: Side) {
        self.0.set(e, side == Side::V);
    }

    #[inline]
    pub fn is_incoming(&self, h: HalfEdge) -> bool {
        self.head(h.edge) == h.side
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.xor(&EdgeSet::full(self.0.len())))
    }

    /// Mask of labels whose half-edges point into `v`.
    pub fn in_mask(&self, g: &LabeledGraph, v: VertexId) -> u8 {
        g.half_edges(v).iter().enumerate().fold(0, |m, (i, h)| {
            if self.is_incoming(*h) {
                m | 1 << i
            } else {
                m
            }
        })
    }

    pub fn in_degree(&self, g: &LabeledGraph, v: VertexId) -> u32 {
        self.in_mask(g, v).count_ones()
    }

    pub fn check_even(&self, g: &LabeledGraph) -> Result<(), StatesError> {
        check_len(g, self.edge_count())?;
        match (0..g.vertex_count()).find(|&v| self.in_degree(g, v) % 2 == 1) {
            Some(vertex) => Err(StatesError::OddInDegree { vertex }),
            None => Ok(()),
        }
    }

    pub fn is_even(&self, g: &LabeledGraph) -> bool {
        self.check_even(g).is_ok()
    }

    pub fn to_bit_string(&self) -> String {
        self.0.to_bit_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring(pub EdgeSet);

impl Coloring {
    pub fn all_green(edge_count: usize) -> Self {
        Self(EdgeSet::new(edge_count))
    }

    pub fn edge_count(&self) -> usize {
        self.0.len()
    }

    pub fn is_red(&self, e: usize) -> bool {
        self.0.get(e)
    }

    /// Mask of labels whose edges are red at `v`.
    pub fn red_mask(&self, g: &LabeledGraph, v: VertexId) -> u8 {
        g.half_edges(v).iter().enumerate().fold(
            0,
            |m, (i, h)| if self.is_red(h.edge) { m | 1 << i } else { m },
        )
    }

    pub fn check_even(&self, g: &LabeledGraph) -> Result<(), StatesError> {
        check_len(g, self.edge_count())?;
        match (0..g.vertex_count()).find(|&v| self.red_mask(g, v).count_ones() % 2 == 1) {
            Some(vertex) => Err(StatesError::OddGreen { vertex }),
            None => Ok(()),
        }
    }

    pub fn is_even(&self, g: &LabeledGraph) -> bool {
        self.check_even(g).is_ok()
    }

    pub fn to_bit_string(&self) -> String {
        self.0.to_bit_string()
    }
}

fn check_len(g: &LabeledGraph, got: usize) -> Result<(), StatesError> {
    if got != g.edge_count() {
        return Err(StatesError::MismatchedGraphs {
            expected: g.edge_count(),
            got,
        });
    }
    Ok(())
}

pub fn vertex_class_orientation(
    g: &LabeledGraph,
    tau: &Orientation,
    v: VertexId,
) -> Result<VertexClass, StatesError> {
    check_len(g, tau.edge_count())?;
    VertexClass::from_mask(tau.in_mask(g, v)).ok_or(StatesError::OddInDegree { vertex: v })
}

pub fn vertex_class_coloring(
    g: &LabeledGraph,
    sigma: &Coloring,
    v: VertexId,
) -> Result<VertexClass, StatesError> {
    check_len(g, sigma.edge_count())?;
    VertexClass::from_mask(sigma.red_mask(g, v)).ok_or(StatesError::OddGreen { vertex: v })
}

/// Number of vertices in each class, indexed by [`VertexClass::index`].
pub fn class_profile_orientation(
    g: &LabeledGraph,
    tau: &Orientation,
) -> Result<[u32; 4], StatesError> {
    let mut counts = [0; 4];
    for v in 0..g.vertex_count() {
        counts[vertex_class_orientation(g, tau, v)?.index()] += 1;
    }
    Ok(counts)
}

pub fn class_profile_coloring(g: &LabeledGraph, sigma: &Coloring) -> Result<[u32; 4], StatesError> {
    let mut counts = [0; 4];
    for v in 0..g.vertex_count() {
        counts[vertex_class_coloring(g, sigma, v)?.index()] += 1;
    }
    Ok(counts)
}

/// An edge is green iff both orientations agree on it.
pub fn orientation_to_coloring(
    g: &LabeledGraph,
    tau_prime: &Orientation,
    tau_canonical: &Orientation,
) -> Result<Coloring, StatesError> {
    check_len(g, tau_prime.edge_count())?;
    check_len(g, tau_canonical.edge_count())?;
    tau_canonical.check_even(g)?;
    tau_prime.check_even(g)?;
    Ok(Coloring(tau_prime.0.xor(&tau_canonical.0)))
}

/// Inverse of [`orientation_to_coloring`] for a fixed canonical orientation.
pub fn coloring_to_orientation(
    g: &LabeledGraph,
    sigma: &Coloring,
    tau_canonical: &Orientation,
) -> Result<Orientation, StatesError> {
    check_len(g, sigma.edge_count())?;
    check_len(g, tau_canonical.edge_count())?;
    Ok(Orientation(sigma.0.xor(&tau_canonical.0)))
}

/// An Eulerian orientation built by decomposing the edges into closed trails.
/// Deterministic for a given graph; in-degree 2 at every vertex.
pub fn reference_even_orientation(g: &LabeledGraph) -> Orientation {
    let m = g.edge_count();
    let mut used = vec![false; m];
    let mut tau = Orientation::toward_u(m);
    for start_edge in 0..m {
        if used[start_edge] {
            continue;
        }
        let mut x = g.edge(start_edge).u;
        // Every vertex has even degree, so a trail can only get stuck where it began.
        while let Some(h) = g.half_edges(x).iter().copied().find(|h| !used[h.edge]) {
            used[h.edge] = true;
            let t = g.twin(h);
            tau.set_head(h.edge, t.side);
            x = g.vertex_of(t);
        }
    }
    tau
}
