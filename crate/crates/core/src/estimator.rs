//! Annealed product-of-ratios estimation of the eight-vertex partition function.
//!
//! `Z(G; 1,1,1,1)` is the number of even orientations, `2^(m−n+κ)`. From
//! there a chain of intermediate parameter points leads to the target and
//! each ratio `Z(p_{t+1}) / Z(p_t) = E_{π_t}[w_{t+1}/w_t]` is estimated by
//! sampling at `p_t`. Independent annealing runs are combined by taking the
//! median.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{z8v_exact, ExactError};
use crate::graph::LabeledGraph;
use crate::mcmc::{default_start, Chain, McmcError, MoveSet, Proposal};
use crate::params::{format_rational, ParamVec, Rational};
use crate::states::{cycle_basis, face_two_coloring};
use crate::transforms::{in_y_and_z, plan_transform, GraphClass, PlanFailure, TransformPlan};

pub const MAX_SUBDIVISIONS: usize = 64;
pub const EXACT_FALLBACK_DIM: usize = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EstimatorError {
    #[error("annealing needs strictly positive parameters, got ({0})")]
    NonPositive(Box<ParamVec>),
    #[error("target ({0}) is outside Y∩Z; plan a transform first")]
    OutsideRegion(Box<ParamVec>),
    #[error("eps and delta must lie in (0, 1), got eps={eps}, delta={delta}")]
    BadTolerance { eps: f64, delta: f64 },
    #[error("graph does not meet the {class} requirement: {reason}")]
    ClassRequirement { class: GraphClass, reason: String },
    #[error(transparent)]
    NoPlan(#[from] Box<PlanFailure>),
    #[error("planned image ({image}) has a zero entry and the cycle space (dimension {dim}) is too large for the exact fallback")]
    ZeroEntry { image: Box<ParamVec>, dim: usize },
    #[error(transparent)]
    Mcmc(#[from] McmcError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Tuning knobs. `None` fields are derived from the graph and tolerances.
#[derive(Debug, Clone, Serialize)]
pub struct EstimatorConfig {
    pub seed: u64,
    pub laziness: f64,
    pub proposal: Proposal,
    pub burn_in: Option<u64>,
    pub stage_burn_in: Option<u64>,
    pub thinning: Option<u64>,
    pub groups: Option<usize>,
    pub samples_per_stage: Option<usize>,
    /// Stages per segment are `⌈stage_factor · n · max_i |ln(end_i/start_i)|⌉`.
    pub stage_factor: f64,
}

impl EstimatorConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            laziness: 0.5,
            proposal: Proposal::BasisCycle,
            burn_in: None,
            stage_burn_in: None,
            thinning: None,
            groups: None,
            samples_per_stage: None,
            stage_factor: 8.0,
        }
    }
}

/// `2^(m−n+κ)`, the number of even orientations.
pub fn anchor_z(g: &LabeledGraph) -> BigInt {
    BigInt::from(1) << g.cycle_space_dim()
}

#[derive(Debug, Clone, Serialize)]
pub struct Stage {
    pub params: [f64; 4],
    pub in_y_and_z: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnnealSchedule {
    /// `p_0 = (1,1,1,1), …, p_q = target`.
    pub stages: Vec<Stage>,
    pub waypoints: Vec<[f64; 4]>,
    pub subdivisions: usize,
}

impl AnnealSchedule {
    pub fn q(&self) -> usize {
        self.stages.len().saturating_sub(1)
    }

    pub fn all_inside(&self) -> bool {
        self.stages.iter().all(|s| s.in_y_and_z)
    }
}

fn f64_in_y_and_z(p: &[f64; 4]) -> bool {
    let exact: Option<Vec<Rational>> = p.iter().map(|&x| Rational::from_float(x)).collect();
    match exact {
        Some(v) => in_y_and_z(&ParamVec(v.try_into().expect("four entries"))),
        None => false,
    }
}

fn segment_stages(n: usize, from: &[f64; 4], to: &[f64; 4], factor: f64) -> Vec<[f64; 4]> {
    let logs: [f64; 4] = std::array::from_fn(|i| (to[i] / from[i]).ln());
    let spread = logs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if spread == 0.0 {
        return Vec::new();
    }
    let q = (factor * n as f64 * spread).ceil().max(1.0) as usize;
    (1..=q)
        .map(|t| {
            if t == q {
                *to
            } else {
                let s = t as f64 / q as f64;
                std::array::from_fn(|i| from[i] * (logs[i] * s).exp())
            }
        })
        .collect()
}

fn normalized(p: &[f64; 4]) -> [f64; 4] {
    let m = p.iter().fold(0.0f64, |a, &x| a.max(x));
    p.map(|x| x / m)
}

/// Componentwise-geometric path from `(1,1,1,1)` through the waypoints.
/// Whenever a stage fails `inside`, the offending segment gets a midpoint
/// waypoint (between the max-normalized endpoints), at most
/// [`MAX_SUBDIVISIONS`] times.
pub fn build_schedule(
    n: usize,
    target: [f64; 4],
    factor: f64,
    inside: impl Fn(&[f64; 4]) -> bool,
) -> AnnealSchedule {
    let mut waypoints = vec![[1.0; 4], target];
    let mut subdivisions = 0;
    loop {
        let mut stages = vec![Stage {
            params: waypoints[0],
            in_y_and_z: inside(&waypoints[0]),
        }];
        let mut first_bad_segment = None;
        for (seg, pair) in waypoints.windows(2).enumerate() {
            for params in segment_stages(n, &pair[0], &pair[1], factor) {
                let ok = inside(&params);
                if !ok && first_bad_segment.is_none() {
                    first_bad_segment = Some(seg);
                }
                stages.push(Stage {
                    params,
                    in_y_and_z: ok,
                });
            }
        }
        match first_bad_segment {
            Some(seg) if subdivisions < MAX_SUBDIVISIONS => {
                let (a, b) = (normalized(&waypoints[seg]), normalized(&waypoints[seg + 1]));
                let mid = std::array::from_fn(|i| (a[i] + b[i]) / 2.0);
                waypoints.insert(seg + 1, mid);
                subdivisions += 1;
            }
            _ => {
                return AnnealSchedule {
                    stages,
                    waypoints,
                    subdivisions,
                }
            }
        }
    }
}

pub fn anneal_schedule(n: usize, target: &ParamVec, factor: f64) -> AnnealSchedule {
    build_schedule(n, target.to_f64(), factor, f64_in_y_and_z)
}

/// Relative-variance bound for one stage: every sample lies in
/// `[m, M]` with `M/m ≤ (max_c r_c / min_c r_c)^n`.
fn stage_variance_bound(n: usize, from: &[f64; 4], to: &[f64; 4]) -> f64 {
    let r: [f64; 4] = std::array::from_fn(|i| to[i] / from[i]);
    let hi = r.iter().fold(f64::MIN, |a, &x| a.max(x));
    let lo = r.iter().fold(f64::MAX, |a, &x| a.min(x));
    let spread = (hi / lo).powi(n as i32);
    (spread - 1.0).powi(2) / 4.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimateMethod {
    Anchor,
    Anneal,
    Exact,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageDiagnostic {
    pub params: [f64; 4],
    pub in_y_and_z: bool,
    /// Mean over groups of the stage ratio estimate.
    pub mean_ratio: f64,
    /// Mean over groups of the sample relative variance.
    pub relative_variance: f64,
    pub variance_bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub ln_value: f64,
    pub method: EstimateMethod,
    /// Exact value as `num/den` when the exact fallback was used.
    pub exact: Option<String>,
    pub target: ParamVec,
    pub eps: f64,
    pub delta: f64,
    pub anchor: String,
    pub groups: usize,
    pub samples_per_stage: usize,
    pub stages: usize,
    pub thinning: u64,
    pub burn_in: u64,
    pub stage_burn_in: u64,
    pub group_values: Vec<f64>,
    pub subdivisions: usize,
    pub stage_diagnostics: Vec<StageDiagnostic>,
    pub warnings: Vec<String>,
}

struct GroupRun {
    ln_product: f64,
    means: Vec<f64>,
    rel_vars: Vec<f64>,
}

#[allow(clippy::too_many_arguments)]
fn run_group(
    g: &LabeledGraph,
    moves: Arc<MoveSet>,
    schedule: &[[f64; 4]],
    samples: usize,
    thinning: u64,
    burn_in: u64,
    stage_burn_in: u64,
    laziness: f64,
    seed: u64,
) -> Result<GroupRun, McmcError> {
    let ln = |p: &[f64; 4]| p.map(f64::ln);
    let mut chain = Chain::new(g, moves, ln(&schedule[0]), laziness, seed, default_start(g))?;
    chain.run(burn_in);
    let mut run = GroupRun {
        ln_product: 0.0,
        means: Vec::new(),
        rel_vars: Vec::new(),
    };
    for (t, pair) in schedule.windows(2).enumerate() {
        let (cur, next) = (ln(&pair[0]), ln(&pair[1]));
        chain.set_log_params(cur);
        if t > 0 {
            chain.run(stage_burn_in);
        }
        let diff: [f64; 4] = std::array::from_fn(|c| next[c] - cur[c]);
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for _ in 0..samples {
            chain.run(thinning);
            let counts = chain.state().class_counts();
            let r = (0..4)
                .map(|c| counts[c] as f64 * diff[c])
                .sum::<f64>()
                .exp();
            sum += r;
            sum_sq += r * r;
        }
        let mean = sum / samples as f64;
        let var = (sum_sq / samples as f64 - mean * mean).max(0.0);
        run.ln_product += mean.ln();
        run.means.push(mean);
        run.rel_vars.push(var / (mean * mean));
    }
    Ok(run)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.total_cmp(b));
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) / 2.0
    }
}

fn check_tolerances(eps: f64, delta: f64) -> Result<(), EstimatorError> {
    if !(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0) {
        return Err(EstimatorError::BadTolerance { eps, delta });
    }
    Ok(())
}

/// Estimates `Z(G; target)` for a strictly positive target in Y∩Z.
pub fn anneal_estimate(
    g: &LabeledGraph,
    target: &ParamVec,
    eps: f64,
    delta: f64,
    cfg: &EstimatorConfig,
) -> Result<Estimate, EstimatorError> {
    check_tolerances(eps, delta)?;
    if !target.is_positive() {
        return Err(EstimatorError::NonPositive(Box::new(target.clone())));
    }
    if !in_y_and_z(target) {
        return Err(EstimatorError::OutsideRegion(Box::new(target.clone())));
    }
    let anchor = anchor_z(g);
    let anchor_f = anchor.to_f64().unwrap_or(f64::INFINITY);
    let ln_anchor = g.cycle_space_dim() as f64 * std::f64::consts::LN_2;
    let n = g.vertex_count();
    let basis = cycle_basis(g);
    let moves = Arc::new(MoveSet::new(g, &basis, cfg.proposal)?);
    let thinning = cfg.thinning.unwrap_or(2 * moves.len().max(1) as u64);
    let burn_in = cfg.burn_in.unwrap_or(50 * moves.len().max(1) as u64);
    let stage_burn_in = cfg.stage_burn_in.unwrap_or(thinning);
    let groups = cfg
        .groups
        .unwrap_or_else(|| 12.max((8.0 * (1.0 / delta).ln()).ceil() as usize));

    let mut estimate = Estimate {
        value: anchor_f,
        ln_value: ln_anchor,
        method: EstimateMethod::Anchor,
        exact: None,
        target: target.clone(),
        eps,
        delta,
        anchor: anchor.to_string(),
        groups,
        samples_per_stage: 0,
        stages: 0,
        thinning,
        burn_in,
        stage_burn_in,
        group_values: Vec::new(),
        subdivisions: 0,
        stage_diagnostics: Vec::new(),
        warnings: Vec::new(),
    };
    if target.is_uniform() {
        return Ok(estimate);
    }

    let schedule = anneal_schedule(n, target, cfg.stage_factor);
    if !schedule.all_inside() {
        estimate.warnings.push(format!(
            "annealing path leaves Y∩Z after {} subdivisions; sampling stays correct but fast mixing is not assured",
            schedule.subdivisions
        ));
    }
    let points: Vec<[f64; 4]> = schedule.stages.iter().map(|s| s.params).collect();
    let bounds: Vec<f64> = points
        .windows(2)
        .map(|w| stage_variance_bound(n, &w[0], &w[1]))
        .collect();
    let total_bound: f64 = bounds.iter().sum();
    let samples = cfg
        .samples_per_stage
        .unwrap_or_else(|| (4.0 * total_bound / (eps * eps)).ceil().max(1.0) as usize);

    let runs: Result<Vec<GroupRun>, McmcError> = (0..groups)
        .into_par_iter()
        .map(|i| {
            run_group(
                g,
                moves.clone(),
                &points,
                samples,
                thinning,
                burn_in,
                stage_burn_in,
                cfg.laziness,
                cfg.seed ^ i as u64,
            )
        })
        .collect();
    let runs = runs?;
    let ln_values: Vec<f64> = runs.iter().map(|r| ln_anchor + r.ln_product).collect();
    let ln_value = median(ln_values.clone());

    estimate.method = EstimateMethod::Anneal;
    estimate.ln_value = ln_value;
    estimate.value = ln_value.exp();
    estimate.samples_per_stage = samples;
    estimate.stages = schedule.q();
    estimate.group_values = ln_values.iter().map(|x| x.exp()).collect();
    estimate.subdivisions = schedule.subdivisions;
    estimate.stage_diagnostics = (0..schedule.q())
        .map(|t| StageDiagnostic {
            params: points[t],
            in_y_and_z: schedule.stages[t].in_y_and_z,
            mean_ratio: runs.iter().map(|r| r.means[t]).sum::<f64>() / groups as f64,
            relative_variance: runs.iter().map(|r| r.rel_vars[t]).sum::<f64>() / groups as f64,
            variance_bound: bounds[t],
        })
        .collect();
    Ok(estimate)
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineResult {
    pub value: f64,
    pub plan: TransformPlan,
    pub estimate: Estimate,
}

/// Checks that `g` satisfies the structural requirement of `class`.
pub fn check_class(g: &LabeledGraph, class: GraphClass) -> Result<(), EstimatorError> {
    match class {
        GraphClass::Planar => {
            face_two_coloring(g)
                .map(|_| ())
                .map_err(|e| EstimatorError::ClassRequirement {
                    class,
                    reason: e.to_string(),
                })
        }
        GraphClass::Bipartite => {
            g.bipartition_or_detect()
                .map(|_| ())
                .ok_or_else(|| EstimatorError::ClassRequirement {
                    class,
                    reason: "graph is not bipartite".into(),
                })
        }
    }
}

/// Moves `p` into Y∩Z with a group element of `class`, then anneals there.
/// The transform preserves the partition function exactly, so no correction
/// is applied.
pub fn estimate_z8v(
    g: &LabeledGraph,
    p: &ParamVec,
    class: GraphClass,
    eps: f64,
    delta: f64,
    cfg: &EstimatorConfig,
) -> Result<PipelineResult, EstimatorError> {
    check_tolerances(eps, delta)?;
    check_class(g, class)?;
    let plan = plan_transform(p, class).map_err(Box::new)?;
    let estimate = if plan.image.has_zero() {
        let dim = g.cycle_space_dim();
        if dim > EXACT_FALLBACK_DIM {
            return Err(EstimatorError::ZeroEntry {
                image: Box::new(plan.image.clone()),
                dim,
            });
        }
        let exact = z8v_exact(g, &plan.image)?;
        let value = exact.to_f64().unwrap_or(f64::NAN);
        Estimate {
            value,
            ln_value: value.ln(),
            method: EstimateMethod::Exact,
            exact: Some(format_rational(&exact)),
            target: plan.image.clone(),
            eps,
            delta,
            anchor: anchor_z(g).to_string(),
            groups: 0,
            samples_per_stage: 0,
            stages: 0,
            thinning: 0,
            burn_in: 0,
            stage_burn_in: 0,
            group_values: Vec::new(),
            subdivisions: 0,
            stage_diagnostics: Vec::new(),
            warnings: vec![format!(
                "planned image ({}) has a zero entry; computed exactly instead of sampling",
                plan.image
            )],
        }
    } else {
        anneal_estimate(g, &plan.image, eps, delta, cfg)?
    };
    Ok(PipelineResult {
        value: estimate.value,
        plan,
        estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_k44, gen_octahedron, gen_torus};

    fn exact_f64(g: &LabeledGraph, p: &ParamVec) -> f64 {
        z8v_exact(g, p).unwrap().to_f64().unwrap()
    }

    #[test]
    fn anchors() {
        assert_eq!(anchor_z(&gen_octahedron()), BigInt::from(128));
        assert_eq!(anchor_z(&gen_k44()), BigInt::from(512));
        assert_eq!(anchor_z(&gen_torus(4, 4)), BigInt::from(1) << 17);
        let t = gen_torus(2, 4);
        assert_eq!(
            Rational::from_integer(anchor_z(&t)),
            z8v_exact(&t, &ParamVec::uniform()).unwrap()
        );
    }

    #[test]
    fn uniform_target_returns_anchor() {
        let r = anneal_estimate(
            &gen_octahedron(),
            &ParamVec::uniform(),
            0.05,
            0.1,
            &EstimatorConfig::new(1),
        )
        .unwrap();
        assert_eq!(r.value, 128.0);
        assert_eq!(r.stages, 0);
        assert_eq!(r.method, EstimateMethod::Anchor);
        let r = estimate_z8v(
            &gen_k44(),
            &ParamVec::uniform(),
            GraphClass::Bipartite,
            0.05,
            0.1,
            &EstimatorConfig::new(1),
        )
        .unwrap();
        assert_eq!(r.plan.label, "I");
        assert_eq!(r.value, 512.0);
    }

    #[test]
    fn schedule_shape() {
        let s = anneal_schedule(6, &ParamVec::from_ints([3, 3, 3, 1]), 8.0);
        assert_eq!(s.q(), 53);
        assert_eq!(s.stages[0].params, [1.0; 4]);
        assert_eq!(s.stages[53].params, [3.0, 3.0, 3.0, 1.0]);
        assert!(s.all_inside());
        assert_eq!(
            anneal_schedule(8, &ParamVec::from_ints([3, 3, 3, 1]), 8.0).q(),
            71
        );
    }

    #[test]
    fn schedule_subdivides_around_excluded_points() {
        // A synthetic region excluding a band of the direct path forces waypoints.
        let inside = |p: &[f64; 4]| !(p[2] > 1.2 && p[2] < 1.6 && p[0] > 1.2);
        let s = build_schedule(4, [2.0, 2.0, 2.0, 1.0], 2.0, inside);
        assert!(s.subdivisions > 0);
        let never = |_: &[f64; 4]| false;
        let s = build_schedule(4, [2.0, 2.0, 2.0, 1.0], 2.0, never);
        assert_eq!(s.subdivisions, MAX_SUBDIVISIONS);
        assert!(!s.all_inside());
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = gen_octahedron();
        let cfg = EstimatorConfig::new(1);
        assert!(matches!(
            anneal_estimate(&g, &ParamVec::from_ints([1, 1, 5, 1]), 0.05, 0.1, &cfg),
            Err(EstimatorError::OutsideRegion(_))
        ));
        assert!(matches!(
            anneal_estimate(&g, &ParamVec::from_ints([1, 1, 0, 1]), 0.05, 0.1, &cfg),
            Err(EstimatorError::NonPositive(_))
        ));
        assert!(matches!(
            anneal_estimate(&g, &ParamVec::uniform(), 0.0, 0.1, &cfg),
            Err(EstimatorError::BadTolerance { .. })
        ));
        assert!(matches!(
            estimate_z8v(
                &g,
                &ParamVec::uniform(),
                GraphClass::Bipartite,
                0.05,
                0.1,
                &cfg
            ),
            Err(EstimatorError::ClassRequirement { .. })
        ));
        assert!(matches!(
            estimate_z8v(
                &gen_torus(3, 4),
                &ParamVec::uniform(),
                GraphClass::Planar,
                0.05,
                0.1,
                &cfg
            ),
            Err(EstimatorError::ClassRequirement { .. })
        ));
        assert!(matches!(
            estimate_z8v(
                &g,
                &ParamVec::from_ints([10, 1, 1, 1]),
                GraphClass::Planar,
                0.05,
                0.1,
                &cfg
            ),
            Err(EstimatorError::NoPlan(_))
        ));
    }

    #[test]
    fn zero_entry_falls_back_to_exact() {
        let g = gen_octahedron();
        let p = ParamVec::from_ints([1, 1, 1, 0]);
        let r = estimate_z8v(
            &g,
            &p,
            GraphClass::Planar,
            0.05,
            0.1,
            &EstimatorConfig::new(1),
        )
        .unwrap();
        assert!(r.plan.image.has_zero());
        assert_eq!(r.estimate.method, EstimateMethod::Exact);
        assert_eq!(r.value, exact_f64(&g, &p));
        assert_eq!(r.estimate.warnings.len(), 1);
    }

    #[test]
    fn seeded_reproducibility() {
        let g = gen_octahedron();
        let p = ParamVec::from_ints([2, 2, 3, 1]);
        let cfg = EstimatorConfig {
            groups: Some(3),
            ..EstimatorConfig::new(11)
        };
        let a = anneal_estimate(&g, &p, 0.1, 0.25, &cfg).unwrap();
        let b = anneal_estimate(&g, &p, 0.1, 0.25, &cfg).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn octahedron_accuracy() {
        let g = gen_octahedron();
        let p = ParamVec::from_ints([2, 2, 3, 1]);
        let exact = exact_f64(&g, &p);
        let mut hits = 0;
        for seed in 0..20 {
            let r = anneal_estimate(&g, &p, 0.05, 0.1, &EstimatorConfig::new(seed)).unwrap();
            assert!(r
                .stage_diagnostics
                .iter()
                .all(|s| s.relative_variance <= s.variance_bound + 1e-9));
            if (r.value / exact - 1.0).abs() <= 0.05 {
                hits += 1;
            }
        }
        assert!(hits >= 18, "{hits}/20");
    }

    #[test]
    fn orbits_meet_interior_once() {
        // Distinct positive images in Y∩Z never occur on this grid, so every
        // plan for a given point leads to the same annealing target.
        for class in [GraphClass::Planar, GraphClass::Bipartite] {
            let table = crate::transforms::group_table(class).unwrap();
            let even = class == GraphClass::Bipartite;
            for v in 0..6i64.pow(4) {
                let p =
                    ParamVec::from_ints(std::array::from_fn(|i| 1 + (v / 6i64.pow(i as u32)) % 6));
                let mut images: Vec<ParamVec> = table
                    .rows
                    .iter()
                    .filter_map(|r| {
                        crate::transforms::sign_normalize(&r.matrix.apply(&p), even).ok()
                    })
                    .map(|(q, _)| q)
                    .filter(|q| in_y_and_z(q) && q.is_positive())
                    .collect();
                images.sort_by_key(|q| q.to_string());
                images.dedup();
                assert!(images.len() <= 1, "{class} {p}: {images:?}");
            }
        }
    }

    #[test]
    fn planar_pipeline_in_torpid_region() {
        let g = gen_octahedron();
        let p = ParamVec::from_ints([1, 1, 5, 1]);
        let r = estimate_z8v(
            &g,
            &p,
            GraphClass::Planar,
            0.05,
            0.1,
            &EstimatorConfig::new(4),
        )
        .unwrap();
        assert_eq!(r.plan.label, "(M_Z^Pl)^2");
        assert_eq!(r.estimate.method, EstimateMethod::Anneal);
        let exact = exact_f64(&g, &p);
        assert!(
            (r.value / exact - 1.0).abs() < 0.05,
            "{} vs {exact}",
            r.value
        );
    }
}
