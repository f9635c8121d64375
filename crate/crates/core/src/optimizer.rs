//! Stochastic search over the orthogonal group acting on a basis of T_d
//! for rotations that raise the maximal purity a(t_m) toward the rank-1
//! ceiling 1/d^2.

use serde::{Deserialize, Serialize};

use crate::basis::{
    reorthonormalize, rotate_basis, validate_basis, GivensRotation, OrthogonalParam,
    TracelessBasis,
};
use crate::error::{Error, Result};
use crate::rng::CounterRng;
use crate::sic::{make_family, purity};

const DRIFT_TOL: f64 = 1e-9;
const PLATEAU_REJECTS: usize = 200;

/// Snapshot of a hill-climbing run: resumable and deterministic for a
/// fixed seed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchState {
    pub current: TracelessBasis,
    pub objective: f64,
    /// (iteration, objective) recorded at the start and on every accepted
    /// strict improvement.
    pub history: Vec<(u64, f64)>,
    pub seed: u64,
    pub step_scale: f64,
    pub iterations_done: u64,
    pub rng_counter: u64,
    /// Consecutive rejected proposals since the last acceptance.
    pub rejects: usize,
}

/// `a(t_m)` of the family generated by the basis: the search target.
pub fn objective(basis: &TracelessBasis) -> Result<f64> {
    let family = make_family(basis)?;
    Ok(purity(family.t_m(), basis.dim()))
}

fn propose(rng: &mut CounterRng, n: usize, step_scale: f64) -> GivensRotation {
    let i = rng.next_below(n as u64) as usize;
    let mut j = rng.next_below((n - 1) as u64) as usize;
    if j >= i {
        j += 1;
    }
    let angle = step_scale * rng.next_normal();
    GivensRotation { i, j, angle }
}

fn climb_loop(mut state: SearchState, iterations: u64, shrink: Option<f64>) -> Result<SearchState> {
    let n = state.current.len();
    let mut rng = CounterRng::resume(state.seed, 0, state.rng_counter);
    let end = state.iterations_done + iterations;
    while state.iterations_done < end {
        let step = propose(&mut rng, n, state.step_scale);
        let candidate = rotate_basis(
            &state.current,
            &OrthogonalParam {
                rotations: vec![step],
                flip_axis: None,
            },
        )?;
        let candidate = if validate_basis(candidate.elements())?.max_gram_violation > DRIFT_TOL {
            reorthonormalize(&candidate)?
        } else {
            candidate
        };
        let value = objective(&candidate)?;
        state.iterations_done += 1;
        if value >= state.objective {
            if value > state.objective {
                state.history.push((state.iterations_done, value));
            }
            state.current = candidate;
            state.objective = value;
            state.rejects = 0;
        } else {
            state.rejects += 1;
            if let Some(shrink) = shrink {
                if state.rejects >= PLATEAU_REJECTS {
                    state.step_scale *= shrink;
                    state.rejects = 0;
                }
            }
        }
    }
    state.rng_counter = rng.counter();
    Ok(state)
}

/// Seeded stochastic hill-climbing: random Givens proposals with
/// non-strict acceptance. Derivative-free because the objective is
/// non-smooth where extreme eigenvalues are degenerate.
pub fn hill_climb(
    start: &TracelessBasis,
    iterations: u64,
    seed: u64,
    step_scale: f64,
) -> Result<SearchState> {
    if iterations < 1 {
        return Err(Error::InvalidArgument("iterations must be at least 1".into()));
    }
    if !(step_scale > 0.0) {
        return Err(Error::InvalidArgument("step_scale must be positive".into()));
    }
    let objective0 = objective(start)?;
    let state = SearchState {
        current: start.clone(),
        objective: objective0,
        history: vec![(0, objective0)],
        seed,
        step_scale,
        iterations_done: 0,
        rng_counter: 0,
        rejects: 0,
    };
    climb_loop(state, iterations, None)
}

/// Continues a climb for `iterations` more proposals, multiplying
/// `step_scale` by `shrink` whenever 200 consecutive proposals are
/// rejected.
pub fn anneal_schedule(state: SearchState, iterations: u64, shrink: f64) -> Result<SearchState> {
    if !(0.0 < shrink && shrink < 1.0) {
        return Err(Error::InvalidArgument("shrink must be in (0, 1)".into()));
    }
    climb_loop(state, iterations, Some(shrink))
}

/// JSON report of a finished search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchReport {
    pub dim: usize,
    pub seed: u64,
    pub iterations: u64,
    pub best_objective: f64,
    pub ceiling: f64,
    pub history: Vec<(u64, f64)>,
    pub best_basis: TracelessBasis,
}

impl SearchReport {
    pub fn from_state(state: &SearchState) -> Self {
        let d = state.current.dim();
        Self {
            dim: d,
            seed: state.seed,
            iterations: state.iterations_done,
            best_objective: state.objective,
            ceiling: 1.0 / (d * d) as f64,
            history: state.history.clone(),
            best_basis: state.current.clone(),
        }
    }
}
