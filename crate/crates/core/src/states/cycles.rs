//! Binary cycle space and enumeration of even orientations.
//!
//! Even orientations form a coset `τ₀ ⊕ C(G)` of the cycle space, so they are
//! enumerated by walking a fundamental-cycle basis in Gray-code order: each
//! step flips exactly one basis cycle.

use std::collections::{BTreeMap, VecDeque};

use super::{reference_even_orientation, Orientation, StatesError};
use crate::bits::EdgeSet;
use crate::graph::{EdgeId, LabeledGraph, VertexId};

pub const DEFAULT_ENUMERATION_CAP: usize = 30;

/// Fundamental-cycle basis of the binary cycle space from a BFS spanning forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBasis {
    edge_count: usize,
    /// Basis element `i` is the fundamental cycle of `chords[i]`.
    chords: Vec<EdgeId>,
    elements: Vec<Vec<EdgeId>>,
    sets: Vec<EdgeSet>,
    /// Per element: the label mask each touched vertex sees flipped.
    deltas: Vec<Vec<(VertexId, u8)>>,
    components: usize,
}

impl CycleBasis {
    pub fn dim(&self) -> usize {
        self.chords.len()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn element(&self, i: usize) -> &[EdgeId] {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Vec<EdgeId>] {
        &self.elements
    }

    pub fn element_set(&self, i: usize) -> &EdgeSet {
        &self.sets[i]
    }

    pub fn chords(&self) -> &[EdgeId] {
        &self.chords
    }

    /// Label-mask flips at each vertex on basis cycle `i`.
    pub fn vertex_deltas(&self, i: usize) -> &[(VertexId, u8)] {
        &self.deltas[i]
    }

    /// The even subgraph with the given coordinates (bit `i` = element `i`).
    pub fn combine(&self, coords: u64) -> EdgeSet {
        let mut s = EdgeSet::new(self.edge_count);
        for (i, set) in self.sets.iter().enumerate() {
            if coords >> i & 1 == 1 {
                s.xor_with(set);
            }
        }
        s
    }

    /// Coordinates of an even subgraph, or `None` if `s` is not in the span.
    /// Only valid for `dim() <= 64`.
    pub fn coordinates(&self, s: &EdgeSet) -> Option<u64> {
        assert!(self.dim() <= 64);
        let coords =
            self.chords.iter().enumerate().fold(
                0u64,
                |acc, (i, &e)| if s.get(e) { acc | 1 << i } else { acc },
            );
        (self.combine(coords) == *s).then_some(coords)
    }
}

pub fn cycle_basis(g: &LabeledGraph) -> CycleBasis {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = vec![false; m];
    let mut components = 0;
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        components += 1;
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for h in g.half_edges(x) {
                let y = g.vertex_of(g.twin(*h));
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = Some((x, h.edge));
                    tree[h.edge] = true;
                    queue.push_back(y);
                }
            }
        }
    }

    let mut chords = Vec::new();
    let mut elements = Vec::new();
    for e in (0..m).filter(|&e| !tree[e]) {
        let edge = g.edge(e);
        let mut cycle = vec![e];
        let (mut x, mut y) = (edge.u, edge.v);
        while x != y {
            if depth[x] >= depth[y] {
                let (px, pe) = parent[x].expect("non-root has a parent");
                cycle.push(pe);
                x = px;
            } else {
                let (py, pe) = parent[y].expect("non-root has a parent");
                cycle.push(pe);
                y = py;
            }
        }
        cycle.sort_unstable();
        chords.push(e);
        elements.push(cycle);
    }

    let sets: Vec<EdgeSet> = elements
        .iter()
        .map(|c| EdgeSet::from_indices(m, c.iter().copied()))
        .collect();
    let deltas = elements
        .iter()
        .map(|cycle| {
            let mut flips: BTreeMap<VertexId, u8> = BTreeMap::new();
            for &e in cycle {
                let edge = g.edge(e);
                *flips.entry(edge.u).or_default() ^= 1 << (edge.label_u - 1);
                *flips.entry(edge.v).or_default() ^= 1 << (edge.label_v - 1);
            }
            flips.into_iter().filter(|&(_, mask)| mask != 0).collect()
        })
        .collect();

    CycleBasis {
        edge_count: m,
        chords,
        elements,
        sets,
        deltas,
        components,
    }
}

/// Streams all even orientations in Gray-code order over cycle-space
/// coordinates, starting from the reference orientation.
pub fn enumerate_even_orientations(
    g: &LabeledGraph,
    cap: usize,
) -> Result<EvenOrientations, StatesError> {
    let basis = cycle_basis(g);
    if basis.dim() > cap || basis.dim() >= 64 {
        return Err(StatesError::CapExceeded {
            dim: basis.dim(),
            cap,
        });
    }
    Ok(EvenOrientations {
        current: reference_even_orientation(g),
        total: 1u64 << basis.dim(),
        basis,
        step: 0,
    })
}

#[derive(Debug, Clone)]
pub struct EvenOrientations {
    basis: CycleBasis,
    current: Orientation,
    step: u64,
    total: u64,
}

impl EvenOrientations {
    pub fn basis(&self) -> &CycleBasis {
        &self.basis
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for EvenOrientations {
    type Item = Orientation;

    fn next(&mut self) -> Option<Orientation> {
        if self.step >= self.total {
            return None;
        }
        if self.step > 0 {
            let flip = self.step.trailing_zeros() as usize;
            self.current.0.xor_with(self.basis.element_set(flip));
        }
        self.step += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.step) as usize;
        (left, Some(left))
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::graph::{gen_k44, gen_octahedron, gen_torus};

    #[test]
    fn basis_dimensions() {
        assert_eq!(cycle_basis(&gen_octahedron()).dim(), 7);
        assert_eq!(cycle_basis(&gen_k44()).dim(), 9);
        assert_eq!(cycle_basis(&gen_torus(4, 4)).dim(), 17);
        assert_eq!(cycle_basis(&gen_torus(2, 2)).dim(), 5);
    }

    #[test]
    fn basis_elements_are_even_subgraphs() {
        for g in [
            gen_octahedron(),
            gen_k44(),
            gen_torus(2, 2),
            gen_torus(3, 4),
        ] {
            let b = cycle_basis(&g);
            for i in 0..b.dim() {
                let mut deg = vec![0; g.vertex_count()];
                for &e in b.element(i) {
                    deg[g.edge(e).u] += 1;
                    deg[g.edge(e).v] += 1;
                }
                assert!(deg.iter().all(|d| d % 2 == 0));
                assert!(!b.element(i).is_empty());
            }
            // Independence: the chord of element i appears only in element i.
            for (i, &c) in b.chords().iter().enumerate() {
                for j in 0..b.dim() {
                    assert_eq!(b.element_set(j).get(c), i == j);
                }
            }
        }
    }

    #[test]
    fn coordinates_invert_combine() {
        let b = cycle_basis(&gen_k44());
        for coords in [0u64, 1, 5, 0b1_1111_1111, 300] {
            assert_eq!(b.coordinates(&b.combine(coords)), Some(coords));
        }
        assert_eq!(b.coordinates(&EdgeSet::from_indices(16, [0])), None);
    }

    #[test]
    fn enumeration_counts_and_evenness() {
        for (g, expected) in [
            (gen_octahedron(), 128),
            (gen_k44(), 512),
            (gen_torus(2, 2), 32),
        ] {
            let seen: HashSet<_> = enumerate_even_orientations(&g, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .inspect(|o| assert!(o.is_even(&g)))
                .collect();
            assert_eq!(seen.len(), expected);
        }
    }

    #[test]
    fn enumeration_respects_cap() {
        let err = enumerate_even_orientations(&gen_torus(4, 4), 10).unwrap_err();
        assert_eq!(err, StatesError::CapExceeded { dim: 17, cap: 10 });
    }
}
