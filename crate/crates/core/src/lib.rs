//! The eight-vertex model on labeled 4-regular graphs.
//!
//! This crate covers four things:
//!
//! - exact partition functions by cycle-space enumeration ([`exact`]);
//! - holographic transformations of the local constraint function
//!   ([`holant`]);
//! - the finite groups of parameter maps that preserve the partition function
//!   on planar and bipartite graphs ([`transforms`]);
//! - a Metropolis sampler and annealed estimator ([`mcmc`], [`estimator`]).
//!   The estimator is meant to run after a parameter point has been moved
//!   into the region where the sampler mixes well.

pub mod bits;
pub mod estimator;
pub mod exact;
pub mod graph;
pub mod holant;
pub mod mcmc;
pub mod params;
pub mod states;
pub mod transforms;
pub mod verify;

pub use bits::EdgeSet;
pub use estimator::{anneal_estimate, estimate_z8v, Estimate, EstimatorConfig};
pub use exact::{census_8v, census_ec, holant_exact, z8v_exact, zec_exact, Census};
pub use graph::{GraphError, LabeledGraph};
pub use holant::{Basis2, QuarticFunction};
pub use params::{ParamVec, Rational};
pub use states::{Coloring, Orientation, VertexClass};
pub use transforms::{GraphClass, HalfIntMatrix, Region, TransformPlan};
