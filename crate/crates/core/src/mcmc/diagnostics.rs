use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{default_start, weight_of_profile, ChainConfig, ChainState, McmcError, MoveSet};
use crate::graph::LabeledGraph;
use crate::params::{ParamVec, Rational};
use crate::states::{cycle_basis, reference_even_orientation, Orientation};

pub const DIAGNOSTIC_DIM_CAP: usize = 12;

#[derive(Debug, Clone, Serialize)]
pub struct ChainDiagnostics {
    pub states: usize,
    pub moves: usize,
    pub rows_sum_to_one: bool,
    pub detailed_balance: bool,
    pub balance_violations: usize,
    /// `πP = π` with π the normalized Gibbs weights, checked exactly.
    pub stationary: bool,
    pub threshold: f64,
    /// `(steps, TV distance to π)` from the default start.
    pub tv_curve: Vec<(u64, f64)>,
    pub steps_to_threshold: Option<u64>,
}

impl ChainDiagnostics {
    pub fn passed(&self) -> bool {
        self.rows_sum_to_one
            && self.detailed_balance
            && self.stationary
            && self.steps_to_threshold.is_some()
    }

    pub fn tv_csv(&self) -> String {
        let mut out = String::from("steps,tv\n");
        for (s, tv) in &self.tv_curve {
            out.push_str(&format!("{s},{tv:.12e}\n"));
        }
        out
    }
}

/// Builds the exact transition matrix over cycle-space coordinates, checks
/// it against the Gibbs distribution, and tracks the distance to
/// stationarity from the default start until it drops below `threshold`.
pub fn exact_chain_diagnostics(
    g: &LabeledGraph,
    p: &ParamVec,
    cfg: &ChainConfig,
    threshold: f64,
    max_steps: u64,
) -> Result<ChainDiagnostics, McmcError> {
    cfg.validate()?;
    if !p.is_positive() {
        return Err(McmcError::NonPositive(Box::new(p.clone())));
    }
    let basis = cycle_basis(g);
    if basis.dim() > DIAGNOSTIC_DIM_CAP {
        return Err(McmcError::StateSpaceTooLarge {
            dim: basis.dim(),
            cap: DIAGNOSTIC_DIM_CAP,
        });
    }
    let moves = MoveSet::new(g, &basis, cfg.proposal)?;
    let move_coords: Vec<u64> = (0..moves.len())
        .map(|i| {
            basis
                .coordinates(moves.edge_set(i))
                .expect("moves are even subgraphs")
        })
        .collect();

    let reference = reference_even_orientation(g);
    let n_states = 1usize << basis.dim();
    let weights: Vec<Rational> = (0..n_states)
        .map(|x| {
            let tau = Orientation(reference.0.xor(&basis.combine(x as u64)));
            let state = ChainState::new(g, tau).expect("coset elements are even");
            weight_of_profile(&state.class_counts(), p)
        })
        .collect();

    let lazy = Rational::from_float(cfg.laziness)
        .ok_or_else(|| McmcError::Config("laziness is not finite".into()))?;
    let k = Rational::from_integer(moves.len().max(1).into());
    let move_prob = (Rational::one() - &lazy) / k;
    // Row x: off-diagonal entries (y, P(x,y)) and the diagonal.
    let mut rows: Vec<(Vec<(usize, Rational)>, Rational)> = Vec::with_capacity(n_states);
    for x in 0..n_states {
        let mut off: Vec<(usize, Rational)> = Vec::new();
        let mut diag = Rational::one();
        for &c in &move_coords {
            let y = x ^ c as usize;
            let accept = if weights[y] >= weights[x] {
                Rational::one()
            } else {
                &weights[y] / &weights[x]
            };
            let pr = &move_prob * accept;
            diag -= &pr;
            if y == x {
                diag += &pr;
            } else if let Some(slot) = off.iter_mut().find(|(z, _)| *z == y) {
                slot.1 += pr;
            } else {
                off.push((y, pr));
            }
        }
        rows.push((off, diag));
    }

    let rows_sum_to_one = rows.iter().all(|(off, diag)| {
        let s: Rational = off.iter().map(|(_, r)| r).sum::<Rational>() + diag;
        s.is_one() && *diag >= Rational::zero()
    });

    let entry = |x: usize, y: usize| -> Rational {
        rows[x]
            .0
            .iter()
            .find(|(z, _)| *z == y)
            .map(|(_, r)| r.clone())
            .unwrap_or_else(Rational::zero)
    };
    let mut balance_violations = 0;
    for x in 0..n_states {
        for (y, pxy) in &rows[x].0 {
            if &weights[x] * pxy != &weights[*y] * entry(*y, x) {
                balance_violations += 1;
            }
        }
    }

    let mut flow: Vec<Rational> = rows.iter().zip(&weights).map(|((_, d), w)| d * w).collect();
    for (x, (off, _)) in rows.iter().enumerate() {
        for (y, pxy) in off {
            flow[*y] += &weights[x] * pxy;
        }
    }
    let stationary = flow == weights;

    let total: Rational = weights.iter().sum();
    let pi: Vec<f64> = weights
        .iter()
        .map(|w| (w / &total).to_f64().unwrap_or(f64::NAN))
        .collect();
    let rows_f: Vec<(Vec<(usize, f64)>, f64)> = rows
        .iter()
        .map(|(off, d)| {
            (
                off.iter().map(|(y, r)| (*y, r.to_f64().unwrap())).collect(),
                d.to_f64().unwrap(),
            )
        })
        .collect();
    let start = default_start(g);
    let start_x = basis
        .coordinates(&start.0.xor(&reference.0))
        .expect("start is even") as usize;
    let mut dist = vec![0.0; n_states];
    dist[start_x] = 1.0;
    let tv = |d: &[f64]| 0.5 * d.iter().zip(&pi).map(|(a, b)| (a - b).abs()).sum::<f64>();
    let mut tv_curve = vec![(0, tv(&dist))];
    let mut steps_to_threshold = (tv_curve[0].1 < threshold).then_some(0);
    let mut step = 0;
    while steps_to_threshold.is_none() && step < max_steps {
        let mut next = vec![0.0; n_states];
        for (x, (off, d)) in rows_f.iter().enumerate() {
            let mass = dist[x];
            if mass == 0.0 {
                continue;
            }
            next[x] += mass * d;
            for (y, r) in off {
                next[*y] += mass * r;
            }
        }
        dist = next;
        step += 1;
        let t = tv(&dist);
        tv_curve.push((step, t));
        if t < threshold {
            steps_to_threshold = Some(step);
        }
    }

    Ok(ChainDiagnostics {
        states: n_states,
        moves: moves.len(),
        rows_sum_to_one,
        detailed_balance: balance_violations == 0,
        balance_violations,
        stationary,
        threshold,
        tv_curve,
        steps_to_threshold,
    })
}
