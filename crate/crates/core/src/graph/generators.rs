use super::{Edge, EmbeddingKind, LabeledGraph};

const WEST: u8 = 1;
const SOUTH: u8 = 2;
const EAST: u8 = 3;
const NORTH: u8 = 4;

/// The `rows x cols` torus grid with wraparound and geometric labels.
///
/// Vertex `(r, c)` has id `r * cols + c`; row `r + 1` lies north of row `r`.
/// A checkerboard bipartition is attached when both sides are even. Odd
/// sides still build; face 2-coloring rejects them later.
pub fn gen_torus(rows: usize, cols: usize) -> LabeledGraph {
    assert!(rows >= 2 && cols >= 2, "torus sides must be at least 2");
    let id = |r: usize, c: usize| (r % rows) * cols + (c % cols);
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            edges.push(Edge::new(id(r, c), EAST, id(r, c + 1), WEST));
            edges.push(Edge::new(id(r, c), NORTH, id(r + 1, c), SOUTH));
        }
    }
    let left: Option<Vec<usize>> = (rows.is_multiple_of(2) && cols.is_multiple_of(2)).then(|| {
        (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .filter(|(r, c)| (r + c) % 2 == 0)
            .map(|(r, c)| id(r, c))
            .collect()
    });
    LabeledGraph::new(
        rows * cols,
        edges,
        EmbeddingKind::RotationSystem,
        left.as_deref(),
    )
    .expect("torus construction is valid")
}

/// The octahedron with a spherical rotation system.
///
/// Vertex 0 is the north pole, 1..=4 the equator in counterclockwise order
/// seen from above, 5 the south pole. At an equator vertex the labels read
/// previous-equator, south pole, next-equator, north pole.
pub fn gen_octahedron() -> LabeledGraph {
    const TOP: usize = 0;
    const BOTTOM: usize = 5;
    let top_label = [3, 4, 1, 2];
    let bottom_label = [1, 4, 3, 2];
    let mut edges = Vec::with_capacity(12);
    for i in 0..4 {
        let e = 1 + i;
        edges.push(Edge::new(TOP, top_label[i], e, NORTH));
        edges.push(Edge::new(BOTTOM, bottom_label[i], e, SOUTH));
        edges.push(Edge::new(e, EAST, 1 + (i + 1) % 4, WEST));
    }
    LabeledGraph::new(6, edges, EmbeddingKind::RotationSystem, None)
        .expect("octahedron construction is valid")
}

/// Complete bipartite K4,4 with L = {0..3}, R = {4..7}.
pub fn gen_k44() -> LabeledGraph {
    let mut edges = Vec::with_capacity(16);
    for i in 0..4 {
        for j in 0..4 {
            edges.push(Edge::new(i, j as u8 + 1, 4 + j, i as u8 + 1));
        }
    }
    LabeledGraph::new(8, edges, EmbeddingKind::Bipartition, Some(&[0, 1, 2, 3]))
        .expect("K4,4 construction is valid")
}
