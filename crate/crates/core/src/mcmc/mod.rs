//! Metropolis chain on even orientations.
//!
//! A move flips every edge of one cycle from a fixed move set (fundamental
//! cycles, optionally also face boundaries). Flipping an even subgraph keeps
//! the orientation even, and the fundamental cycles span the cycle space, so
//! the chain is irreducible on the whole coset of even orientations.

mod diagnostics;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use diagnostics::{exact_chain_diagnostics, ChainDiagnostics, DIAGNOSTIC_DIM_CAP};

use crate::bits::EdgeSet;
use crate::graph::{EdgeId, LabeledGraph, VertexId};
use crate::params::{ParamVec, Rational};
use crate::states::{
    canonical_bipartite_orientation, canonical_planar_orientation, cycle_basis, face_two_coloring,
    reference_even_orientation, CycleBasis, Orientation, StatesError, VertexClass,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McmcError {
    #[error("sampling needs strictly positive parameters, got ({0})")]
    NonPositive(Box<ParamVec>),
    #[error(transparent)]
    States(#[from] StatesError),
    #[error("invalid chain configuration: {0}")]
    Config(String),
    #[error("cycle-space dimension {dim} exceeds the exact-diagnostics cap of {cap}")]
    StateSpaceTooLarge { dim: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Proposal {
    /// One fundamental cycle, uniformly.
    BasisCycle,
    /// Uniform over fundamental cycles and face boundaries (needs a rotation system).
    BasisOrFace,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainConfig {
    pub seed: u64,
    pub laziness: f64,
    pub proposal: Proposal,
    pub burn_in: u64,
    pub thinning: u64,
}

impl ChainConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            laziness: 0.5,
            proposal: Proposal::BasisCycle,
            burn_in: 10_000,
            thinning: 100,
        }
    }

    pub fn validate(&self) -> Result<(), McmcError> {
        if !(self.laziness > 0.0 && self.laziness < 1.0) {
            return Err(McmcError::Config(format!(
                "laziness {} is not in (0, 1)",
                self.laziness
            )));
        }
        if self.thinning == 0 {
            return Err(McmcError::Config("thinning must be at least 1".into()));
        }
        Ok(())
    }
}

/// The flips available to the chain, each as per-vertex label-mask deltas.
#[derive(Debug, Clone)]
pub struct MoveSet {
    edges: Vec<Vec<EdgeId>>,
    sets: Vec<EdgeSet>,
    deltas: Vec<Vec<(VertexId, u8)>>,
}

impl MoveSet {
    pub fn new(
        g: &LabeledGraph,
        basis: &CycleBasis,
        proposal: Proposal,
    ) -> Result<Self, McmcError> {
        let mut edges: Vec<Vec<EdgeId>> = basis.elements().to_vec();
        if proposal == Proposal::BasisOrFace {
            let fc = face_two_coloring(g)?;
            edges.extend(fc.face_boundaries().into_iter().filter(|b| !b.is_empty()));
        }
        let m = g.edge_count();
        let sets = edges
            .iter()
            .map(|e| EdgeSet::from_indices(m, e.iter().copied()))
            .collect();
        let deltas = edges.iter().map(|cycle| vertex_deltas(g, cycle)).collect();
        Ok(Self {
            edges,
            sets,
            deltas,
        })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self, i: usize) -> &[EdgeId] {
        &self.edges[i]
    }

    pub fn edge_set(&self, i: usize) -> &EdgeSet {
        &self.sets[i]
    }

    pub fn deltas(&self, i: usize) -> &[(VertexId, u8)] {
        &self.deltas[i]
    }
}

fn vertex_deltas(g: &LabeledGraph, cycle: &[EdgeId]) -> Vec<(VertexId, u8)> {
    let mut flips = std::collections::BTreeMap::<VertexId, u8>::new();
    for &e in cycle {
        let edge = g.edge(e);
        *flips.entry(edge.u).or_default() ^= 1 << (edge.label_u - 1);
        *flips.entry(edge.v).or_default() ^= 1 << (edge.label_v - 1);
    }
    flips.into_iter().filter(|&(_, m)| m != 0).collect()
}

/// `∏_v weight(class(v))`, exactly.
pub fn gibbs_weight(
    g: &LabeledGraph,
    tau: &Orientation,
    p: &ParamVec,
) -> Result<Rational, McmcError> {
    if !p.is_positive() {
        return Err(McmcError::NonPositive(Box::new(p.clone())));
    }
    let profile = crate::states::class_profile_orientation(g, tau)?;
    Ok(weight_of_profile(&profile, p))
}

pub(crate) fn weight_of_profile(profile: &[u32; 4], p: &ParamVec) -> Rational {
    let mut w = Rational::one();
    for (class, &k) in profile.iter().enumerate() {
        for _ in 0..k {
            w *= &p.0[class];
        }
    }
    w
}

pub fn log_params(p: &ParamVec) -> Result<[f64; 4], McmcError> {
    if !p.is_positive() {
        return Err(McmcError::NonPositive(Box::new(p.clone())));
    }
    Ok(p.to_f64().map(f64::ln))
}

/// Orientation the chain starts from: the bipartite canonical orientation
/// if a bipartition is stored, else the planar one if the faces are
/// 2-colorable, else the reference Eulerian orientation.
pub fn default_start(g: &LabeledGraph) -> Orientation {
    if g.bipartition().is_some() {
        if let Ok(t) = canonical_bipartite_orientation(g) {
            return t;
        }
    }
    if let Ok(fc) = face_two_coloring(g) {
        if let Ok(t) = canonical_planar_orientation(g, &fc) {
            return t;
        }
    }
    reference_even_orientation(g)
}

/// Current orientation with cached in-masks and class counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainState {
    pub orientation: Orientation,
    masks: Vec<u8>,
    counts: [u32; 4],
}

impl ChainState {
    pub fn new(g: &LabeledGraph, orientation: Orientation) -> Result<Self, McmcError> {
        orientation.check_even(g)?;
        let masks: Vec<u8> = (0..g.vertex_count())
            .map(|v| orientation.in_mask(g, v))
            .collect();
        let mut counts = [0u32; 4];
        for &m in &masks {
            counts[VertexClass::from_mask(m).expect("checked even").index()] += 1;
        }
        Ok(Self {
            orientation,
            masks,
            counts,
        })
    }

    pub fn class_counts(&self) -> [u32; 4] {
        self.counts
    }

    pub fn log_weight(&self, log_p: &[f64; 4]) -> f64 {
        (0..4).map(|c| self.counts[c] as f64 * log_p[c]).sum()
    }

    fn consistent_with(&self, g: &LabeledGraph) -> bool {
        ChainState::new(g, self.orientation.clone()).is_ok_and(|s| s == *self)
    }
}

/// A single sequential chain.
#[derive(Debug, Clone)]
pub struct Chain<'g> {
    g: &'g LabeledGraph,
    moves: std::sync::Arc<MoveSet>,
    log_p: [f64; 4],
    laziness: f64,
    rng: ChaCha8Rng,
    state: ChainState,
    steps: u64,
    accepted: u64,
}

impl<'g> Chain<'g> {
    pub fn new(
        g: &'g LabeledGraph,
        moves: std::sync::Arc<MoveSet>,
        log_p: [f64; 4],
        laziness: f64,
        seed: u64,
        start: Orientation,
    ) -> Result<Self, McmcError> {
        Ok(Self {
            g,
            moves,
            log_p,
            laziness,
            rng: ChaCha8Rng::seed_from_u64(seed),
            state: ChainState::new(g, start)?,
            steps: 0,
            accepted: 0,
        })
    }

    pub fn state(&self) -> &ChainState {
        &self.state
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn accepted(&self) -> u64 {
        self.accepted
    }

    pub fn set_log_params(&mut self, log_p: [f64; 4]) {
        self.log_p = log_p;
    }

    /// One lazy Metropolis step. Returns true if the state changed.
    pub fn step(&mut self) -> bool {
        self.steps += 1;
        let changed = self.try_move();
        if cfg!(debug_assertions) && self.steps.is_multiple_of(1 << 16) {
            debug_assert!(self.state.consistent_with(self.g), "chain caches drifted");
        }
        changed
    }

    fn try_move(&mut self) -> bool {
        if self.moves.is_empty() || self.rng.random::<f64>() < self.laziness {
            return false;
        }
        let i = self.rng.random_range(0..self.moves.len());
        let deltas = self.moves.deltas(i);
        let mut delta_log = 0.0;
        for &(v, d) in deltas {
            let old = VertexClass::from_mask(self.state.masks[v]).expect("even");
            let new = VertexClass::from_mask(self.state.masks[v] ^ d).expect("even");
            delta_log += self.log_p[new.index()] - self.log_p[old.index()];
        }
        if delta_log < 0.0 && self.rng.random::<f64>() >= delta_log.exp() {
            return false;
        }
        for &(v, d) in deltas {
            let old = VertexClass::from_mask(self.state.masks[v]).expect("even");
            self.state.masks[v] ^= d;
            let new = VertexClass::from_mask(self.state.masks[v]).expect("even");
            self.state.counts[old.index()] -= 1;
            self.state.counts[new.index()] += 1;
        }
        self.state.orientation.0.xor_with(self.moves.edge_set(i));
        self.accepted += 1;
        true
    }

    pub fn run(&mut self, steps: u64) {
        for _ in 0..steps {
            self.step();
        }
    }
}

/// Burn-in, then one orientation every `thinning` steps. Deterministic for
/// fixed inputs.
pub fn sample(
    g: &LabeledGraph,
    p: &ParamVec,
    cfg: &ChainConfig,
    n_samples: usize,
) -> Result<Vec<Orientation>, McmcError> {
    cfg.validate()?;
    let log_p = log_params(p)?;
    if n_samples == 0 {
        return Ok(Vec::new());
    }
    let moves = std::sync::Arc::new(MoveSet::new(g, &cycle_basis(g), cfg.proposal)?);
    let mut chain = Chain::new(g, moves, log_p, cfg.laziness, cfg.seed, default_start(g))?;
    chain.run(cfg.burn_in);
    let mut out = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        chain.run(cfg.thinning);
        out.push(chain.state().orientation.clone());
    }
    Ok(out)
}

/// Independent chains seeded `seed ⊕ chain_index`, concatenated in chain order.
pub fn sample_chains(
    g: &LabeledGraph,
    p: &ParamVec,
    cfg: &ChainConfig,
    chains: usize,
    per_chain: usize,
) -> Result<Vec<Orientation>, McmcError> {
    let runs: Result<Vec<Vec<Orientation>>, McmcError> = (0..chains)
        .into_par_iter()
        .map(|i| {
            sample(
                g,
                p,
                &ChainConfig {
                    seed: cfg.seed ^ i as u64,
                    ..cfg.clone()
                },
                per_chain,
            )
        })
        .collect();
    Ok(runs?.into_iter().flatten().collect())
}

/// Exact per-class vertex marginals `E[n_c] / n` from a census.
pub fn exact_class_marginals(census: &crate::exact::Census, p: &ParamVec) -> [f64; 4] {
    let z = census.evaluate(p);
    let mut out = [0.0; 4];
    if z.is_zero() {
        return out;
    }
    let n = census.vertex_count() as f64;
    for (c, slot) in out.iter_mut().enumerate() {
        let mut num = Rational::zero();
        for (key, &count) in census.counts() {
            if key[c] > 0 {
                num += weight_of_profile(key, p)
                    * Rational::from_integer((count * key[c] as u64).into());
            }
        }
        *slot = num_traits::ToPrimitive::to_f64(&(num / &z)).unwrap_or(f64::NAN) / n;
    }
    out
}
