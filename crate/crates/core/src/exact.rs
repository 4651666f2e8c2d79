//! Exact partition functions by enumeration.
//!
//! The eight-vertex and even-coloring sums are computed through a class
//! census: even orientations (and red sets of even colorings) are walked in
//! Gray-code order over the cycle space, updating only the vertices on the
//! flipped basis cycle. The census is then evaluated in exact rationals.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::bits::EdgeSet;
use crate::graph::LabeledGraph;
use crate::holant::QuarticFunction;
use crate::params::{ParamVec, Rational};
use crate::states::{
    cycle_basis, reference_even_orientation, CycleBasis, Orientation, StatesError, VertexClass,
    DEFAULT_ENUMERATION_CAP,
};

pub const HOLANT_EDGE_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error(transparent)]
    States(#[from] StatesError),
    #[error("{edges} edges exceed the holant enumeration cap of {cap}")]
    HolantCap { edges: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    EightVertex,
    EvenColoring,
}

/// Number of states per class profile `(n_A, n_B, n_C, n_D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    vertex_count: usize,
    counts: BTreeMap<[u32; 4], u64>,
}

impl Census {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn counts(&self) -> &BTreeMap<[u32; 4], u64> {
        &self.counts
    }

    pub fn total(&self) -> u128 {
        self.counts.values().map(|&c| c as u128).sum()
    }

    /// `Σ count · a^{n_A} b^{n_B} c^{n_C} d^{n_D}`, exactly.
    pub fn evaluate(&self, p: &ParamVec) -> Rational {
        let n = self.vertex_count;
        let powers: Vec<Vec<Rational>> =
            p.0.iter()
                .map(|x| {
                    let mut table = Vec::with_capacity(n + 1);
                    let mut cur = Rational::one();
                    for _ in 0..=n {
                        table.push(cur.clone());
                        cur *= x;
                    }
                    table
                })
                .collect();
        let mut total = Rational::zero();
        for (key, &count) in &self.counts {
            let mut term = Rational::from_integer(count.into());
            for (class, &k) in key.iter().enumerate() {
                term *= &powers[class][k as usize];
            }
            total += term;
        }
        total
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n_A,n_B,n_C,n_D,count\n");
        for (k, c) in &self.counts {
            out.push_str(&format!("{},{},{},{},{}\n", k[0], k[1], k[2], k[3], c));
        }
        out
    }
}

/// Per-chunk histogram; dense when the profile space is small.
enum Histogram {
    Dense { stride: usize, cells: Vec<u64> },
    Sparse(HashMap<[u32; 4], u64>),
}

impl Histogram {
    fn new(n: usize) -> Self {
        let stride = n + 1;
        if stride.pow(3) <= 1 << 16 {
            Histogram::Dense {
                stride,
                cells: vec![0; stride.pow(3)],
            }
        } else {
            Histogram::Sparse(HashMap::new())
        }
    }

    #[inline]
    fn add(&mut self, profile: &[u32; 4]) {
        match self {
            Histogram::Dense { stride, cells } => {
                let i = (profile[0] as usize * *stride + profile[1] as usize) * *stride
                    + profile[2] as usize;
                cells[i] += 1;
            }
            Histogram::Sparse(map) => *map.entry(*profile).or_default() += 1,
        }
    }

    fn drain_into(self, n: usize, out: &mut BTreeMap<[u32; 4], u64>) {
        match self {
            Histogram::Dense { stride, cells } => {
                for (i, &c) in cells.iter().enumerate().filter(|(_, &c)| c > 0) {
                    let (na, nb, nc) = (i / (stride * stride), i / stride % stride, i % stride);
                    let key = [na as u32, nb as u32, nc as u32, (n - na - nb - nc) as u32];
                    *out.entry(key).or_default() += c;
                }
            }
            Histogram::Sparse(map) => {
                for (k, c) in map {
                    *out.entry(k).or_default() += c;
                }
            }
        }
    }
}

fn profile_of(masks: &[u8]) -> [u32; 4] {
    let mut p = [0u32; 4];
    for &m in masks {
        p[VertexClass::from_mask(m).expect("even state").index()] += 1;
    }
    p
}

/// Walks `start ⊕ span(basis)` and histograms the class profiles.
fn census_walk(n: usize, basis: &CycleBasis, start_masks: Vec<u8>) -> BTreeMap<[u32; 4], u64> {
    let k = basis.dim();
    let split = k.saturating_sub(12).min(8);
    let low = k - split;
    let chunks: Vec<Histogram> = (0u64..1 << split)
        .into_par_iter()
        .map(|chunk| {
            let mut masks = start_masks.clone();
            for i in 0..split {
                if chunk >> i & 1 == 1 {
                    for &(v, delta) in basis.vertex_deltas(low + i) {
                        masks[v] ^= delta;
                    }
                }
            }
            let mut profile = profile_of(&masks);
            let mut hist = Histogram::new(n);
            hist.add(&profile);
            for step in 1u64..1 << low {
                let flip = step.trailing_zeros() as usize;
                for &(v, delta) in basis.vertex_deltas(flip) {
                    let old = VertexClass::from_mask(masks[v]).expect("even state");
                    masks[v] ^= delta;
                    let new = VertexClass::from_mask(masks[v]).expect("even state");
                    profile[old.index()] -= 1;
                    profile[new.index()] += 1;
                }
                hist.add(&profile);
            }
            hist
        })
        .collect();
    let mut out = BTreeMap::new();
    for h in chunks {
        h.drain_into(n, &mut out);
    }
    out
}

pub fn census_with_cap(g: &LabeledGraph, model: Model, cap: usize) -> Result<Census, ExactError> {
    let basis = cycle_basis(g);
    if basis.dim() > cap || basis.dim() >= 64 {
        return Err(StatesError::CapExceeded {
            dim: basis.dim(),
            cap,
        }
        .into());
    }
    let n = g.vertex_count();
    let start_masks = match model {
        Model::EightVertex => {
            let tau = reference_even_orientation(g);
            (0..n).map(|v| tau.in_mask(g, v)).collect()
        }
        Model::EvenColoring => vec![0u8; n],
    };
    Ok(Census {
        vertex_count: n,
        counts: census_walk(n, &basis, start_masks),
    })
}

pub fn census_8v(g: &LabeledGraph) -> Result<Census, ExactError> {
    census_with_cap(g, Model::EightVertex, DEFAULT_ENUMERATION_CAP)
}

pub fn census_ec(g: &LabeledGraph) -> Result<Census, ExactError> {
    census_with_cap(g, Model::EvenColoring, DEFAULT_ENUMERATION_CAP)
}

pub fn z8v_exact(g: &LabeledGraph, p: &ParamVec) -> Result<Rational, ExactError> {
    Ok(census_8v(g)?.evaluate(p))
}

pub fn zec_exact(g: &LabeledGraph, p: &ParamVec) -> Result<Rational, ExactError> {
    Ok(census_ec(g)?.evaluate(p))
}

/// Orientation whose bits are the low `m` bits of `x`.
fn orientation_from_bits(m: usize, x: u64) -> Orientation {
    Orientation(EdgeSet::from_u64(m, x))
}

/// Sum over all `2^m` orientations, keeping only the even ones.
/// Independent of the cycle-space machinery; meant as a cross-check.
pub fn z8v_naive(g: &LabeledGraph, p: &ParamVec) -> Result<Rational, ExactError> {
    let m = g.edge_count();
    if m > HOLANT_EDGE_CAP {
        return Err(ExactError::HolantCap {
            edges: m,
            cap: HOLANT_EDGE_CAP,
        });
    }
    let mut profiles: BTreeMap<[u32; 4], u64> = BTreeMap::new();
    for x in 0u64..1 << m {
        let tau = orientation_from_bits(m, x);
        let masks: Vec<u8> = (0..g.vertex_count()).map(|v| tau.in_mask(g, v)).collect();
        if masks.iter().all(|mask| mask.count_ones() % 2 == 0) {
            *profiles.entry(profile_of(&masks)).or_default() += 1;
        }
    }
    Ok(Census {
        vertex_count: g.vertex_count(),
        counts: profiles,
    }
    .evaluate(p))
}

/// Counts of even orientations and even colorings by filtering all `2^m`
/// edge subsets.
pub fn count_even_naive(g: &LabeledGraph) -> Result<(u64, u64), ExactError> {
    let m = g.edge_count();
    if m > HOLANT_EDGE_CAP {
        return Err(ExactError::HolantCap {
            edges: m,
            cap: HOLANT_EDGE_CAP,
        });
    }
    let (mut orientations, mut colorings) = (0, 0);
    for x in 0u64..1 << m {
        let set = EdgeSet::from_u64(m, x);
        let tau = Orientation(set.clone());
        if tau.is_even(g) {
            orientations += 1;
        }
        if crate::states::Coloring(set).is_even(g) {
            colorings += 1;
        }
    }
    Ok((orientations, colorings))
}

/// For each vertex, the edge on each label (label order 1..4).
fn incidence(g: &LabeledGraph) -> Vec<[usize; 4]> {
    (0..g.vertex_count())
        .map(|v| std::array::from_fn(|l| g.half_edges(v)[l].edge))
        .collect()
}

const HOLANT_CHUNK_BITS: usize = 8;

/// `Holant(G; f)` with equality on every edge: the sum over all edge
/// assignments of `∏_v f(x at labels 1..4)`.
pub fn holant_exact(g: &LabeledGraph, f: &QuarticFunction) -> Result<Complex64, ExactError> {
    let m = g.edge_count();
    if m > HOLANT_EDGE_CAP {
        return Err(ExactError::HolantCap {
            edges: m,
            cap: HOLANT_EDGE_CAP,
        });
    }
    let inc = incidence(g);
    let split = m.min(HOLANT_CHUNK_BITS);
    let low = m - split;
    // Partial sums are combined in chunk order so the result does not depend
    // on the thread count.
    let partial: Vec<Complex64> = (0u64..1 << split)
        .into_par_iter()
        .map(|hi| {
            let mut acc = Complex64::new(0.0, 0.0);
            for lo in 0u64..1 << low {
                let x = hi << low | lo;
                let mut w = Complex64::new(1.0, 0.0);
                for edges in &inc {
                    let idx = edges
                        .iter()
                        .fold(0usize, |i, &e| i << 1 | (x >> e & 1) as usize);
                    w *= f.0[idx];
                    if w == Complex64::new(0.0, 0.0) {
                        break;
                    }
                }
                acc += w;
            }
            acc
        })
        .collect();
    Ok(partial.into_iter().sum())
}

/// `Holant(G'; g | f)` on the edge-vertex incidence graph: every half-edge
/// carries its own bit, every edge applies the binary function `g` to
/// `(x_u, x_v)` (indexed `x_u·2 + x_v`) and every vertex applies `f`.
pub fn holant_incidence(
    g: &LabeledGraph,
    edge_fn: &[Complex64; 4],
    f: &QuarticFunction,
) -> Result<Complex64, ExactError> {
    let m = g.edge_count();
    let options: Vec<u8> = (0..4u8)
        .filter(|&i| edge_fn[i as usize] != Complex64::new(0.0, 0.0))
        .collect();
    let r = options.len();
    if r == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let bits_per_edge = (r as f64).log2();
    if bits_per_edge * m as f64 > HOLANT_EDGE_CAP as f64 + 1e-9 {
        return Err(ExactError::HolantCap {
            edges: m,
            cap: HOLANT_EDGE_CAP,
        });
    }
    let total = (r as u64).pow(m as u32);
    let inc = incidence(g);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut choice = vec![0usize; m];
    let mut half = vec![[0u8; 2]; m];
    for _ in 0..total {
        let mut w = Complex64::new(1.0, 0.0);
        for e in 0..m {
            let pair = options[choice[e]];
            half[e] = [pair >> 1, pair & 1];
            w *= edge_fn[pair as usize];
        }
        for (v, edges) in inc.iter().enumerate() {
            let mut idx = 0usize;
            for (l, &e) in edges.iter().enumerate() {
                let edge = g.edge(e);
                // A loop uses side U for its lower label and V for the other.
                let side = if edge.u == v && edge.label_u == l as u8 + 1 {
                    0
                } else {
                    1
                };
                idx = idx << 1 | half[e][side] as usize;
            }
            w *= f.0[idx];
        }
        sum += w;
        for c in choice.iter_mut() {
            *c += 1;
            if *c < r {
                break;
            }
            *c = 0;
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_k44, gen_octahedron, gen_torus, EmbeddingKind};
    use crate::holant::{constraint_from_params, holo_transform, Basis2};
    use crate::params::{int, rational};
    use proptest::prelude::*;

    fn small_graphs() -> Vec<LabeledGraph> {
        vec![
            gen_octahedron(),
            gen_k44(),
            gen_torus(2, 2),
            gen_torus(2, 4),
            gen_torus(2, 3),
        ]
    }

    fn two_vertex_loops() -> LabeledGraph {
        // Each vertex carries one loop and two parallel edges to the other.
        let edges = vec![
            crate::graph::Edge::new(0, 1, 0, 3),
            crate::graph::Edge::new(1, 1, 1, 3),
            crate::graph::Edge::new(0, 2, 1, 2),
            crate::graph::Edge::new(0, 4, 1, 4),
        ];
        LabeledGraph::new(2, edges, EmbeddingKind::None, None).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn uniform_values() {
        assert_eq!(
            z8v_exact(&gen_octahedron(), &ParamVec::uniform()).unwrap(),
            int(128)
        );
        assert_eq!(
            zec_exact(&gen_octahedron(), &ParamVec::uniform()).unwrap(),
            int(128)
        );
        assert_eq!(
            z8v_exact(&gen_k44(), &ParamVec::uniform()).unwrap(),
            int(512)
        );
        assert_eq!(
            z8v_exact(&gen_k44(), &ParamVec::from_ints([0, 0, 0, 1])).unwrap(),
            int(2)
        );
    }

    #[test]
    fn census_invariants() {
        for g in small_graphs().into_iter().chain([two_vertex_loops()]) {
            let dim = g.cycle_space_dim() as u32;
            for census in [census_8v(&g).unwrap(), census_ec(&g).unwrap()] {
                assert_eq!(census.total(), 1u128 << dim);
                for (k, &count) in census.counts() {
                    assert!(count > 0);
                    assert_eq!(k.iter().sum::<u32>() as usize, g.vertex_count());
                }
            }
            for k in census_8v(&g).unwrap().counts().keys() {
                assert_eq!(k[3] % 2, 0, "sinks must pair with sources");
            }
        }
    }

    #[test]
    fn census_csv_header() {
        let csv = census_8v(&gen_octahedron()).unwrap().to_csv();
        assert!(csv.starts_with("n_A,n_B,n_C,n_D,count\n"));
    }

    #[test]
    fn cap_is_enforced() {
        let err = census_with_cap(&gen_torus(4, 4), Model::EightVertex, 10).unwrap_err();
        assert_eq!(
            err,
            ExactError::States(StatesError::CapExceeded { dim: 17, cap: 10 })
        );
    }

    #[test]
    fn split_walk_matches_unsplit() {
        // 17 dimensions forces the chunked walk; 2×4 torus (dim 9) does not.
        let g = gen_torus(4, 4);
        let census = census_8v(&g).unwrap();
        assert_eq!(census.total(), 1 << 17);
        let p = ParamVec::from_ints([1, 2, 3, 5]);
        let flipped = census.evaluate(&p.flip_d());
        assert_eq!(census.evaluate(&p), flipped);
    }

    #[test]
    fn naive_counts() {
        for g in small_graphs().into_iter().chain([two_vertex_loops()]) {
            let expected = 1u64 << g.cycle_space_dim();
            assert_eq!(count_even_naive(&g).unwrap(), (expected, expected));
        }
    }

    #[test]
    fn matches_naive_oracle() {
        let ps = [
            ParamVec::from_ints([1, 2, 3, 5]),
            ParamVec::new(rational(1, 3), int(-2), rational(7, 2), int(0)),
        ];
        for g in small_graphs().into_iter().chain([two_vertex_loops()]) {
            for p in &ps {
                assert_eq!(z8v_exact(&g, p).unwrap(), z8v_naive(&g, p).unwrap());
            }
        }
    }

    #[test]
    fn holant_uniform_and_constraint() {
        let g = gen_octahedron();
        assert_eq!(
            holant_exact(&g, &QuarticFunction::constant(c(1.0))).unwrap(),
            c(4096.0)
        );
        let f = constraint_from_params(&ParamVec::uniform());
        assert!((holant_exact(&g, &f).unwrap() - c(128.0)).norm() < 1e-9);
        let loops = two_vertex_loops();
        let f = constraint_from_params(&ParamVec::from_ints([2, 3, 5, 7]));
        let zec = zec_exact(&loops, &ParamVec::from_ints([2, 3, 5, 7])).unwrap();
        let zec: f64 = num_traits::ToPrimitive::to_f64(&zec).unwrap();
        assert!((holant_exact(&loops, &f).unwrap() - c(zec)).norm() < 1e-9);
    }

    #[test]
    fn holant_cap() {
        let err = holant_exact(&gen_torus(4, 4), &QuarticFunction::constant(c(1.0))).unwrap_err();
        assert_eq!(err, ExactError::HolantCap { edges: 32, cap: 24 });
    }

    #[test]
    fn incidence_holant_matches_holographic_image() {
        // (≠₂ | f) is the eight-vertex model; (=₂ | Z^{⊗4} f) must agree.
        let diseq = [c(0.0), c(1.0), c(1.0), c(0.0)];
        let eq = [c(1.0), c(0.0), c(0.0), c(1.0)];
        for g in [gen_octahedron(), gen_torus(2, 2), two_vertex_loops()] {
            let p = ParamVec::from_ints([2, 3, 5, 7]);
            let f = constraint_from_params(&p);
            let direct = holant_incidence(&g, &diseq, &f).unwrap();
            let exact: f64 = num_traits::ToPrimitive::to_f64(&z8v_exact(&g, &p).unwrap()).unwrap();
            assert!((direct - c(exact)).norm() <= 1e-9 * exact);
            let fz = holo_transform(&Basis2::z(), &f).unwrap();
            let via_eq = holant_incidence(&g, &eq, &fz).unwrap();
            let via_plain = holant_exact(&g, &fz).unwrap();
            assert!((via_eq - c(exact)).norm() <= 1e-9 * exact);
            assert!((via_plain - via_eq).norm() <= 1e-9 * exact);
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rational(n, d))
    }

    fn param_vec() -> impl Strategy<Value = ParamVec> {
        [
            small_rational(),
            small_rational(),
            small_rational(),
            small_rational(),
        ]
        .prop_map(ParamVec)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn d_flip_and_all_flip(p in param_vec()) {
            for g in small_graphs() {
                let census = census_8v(&g).unwrap();
                let z = census.evaluate(&p);
                prop_assert_eq!(&z, &census.evaluate(&p.flip_d()));
                if g.vertex_count() % 2 == 0 {
                    prop_assert_eq!(&z, &census.evaluate(&p.negate()));
                }
            }
        }

        #[test]
        fn coloring_lemmas(p in param_vec()) {
            let oct = gen_octahedron();
            prop_assert_eq!(z8v_exact(&oct, &p).unwrap(), zec_exact(&oct, &p.swap_planar()).unwrap());
            let k44 = gen_k44();
            prop_assert_eq!(z8v_exact(&k44, &p).unwrap(), zec_exact(&k44, &p).unwrap());
        }
    }
}
