//! One cop guarding an isometric path.
//!
//! The shadow of a vertex `s` on the path `I = (a = I[0], ..., I[L] = b)` is
//! `I[min(dist(s, a), L)]`. The cop first walks to `a`, then moves along `I`
//! toward the robber's shadow until it stands on it ("settled"). Adjacent
//! vertices have `dist(., a)` differing by at most one, so a settled cop can
//! follow the shadow one edge per turn, and a robber stepping onto `I` lands
//! on its own shadow and is caught by the cop's reply.

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::game::{Outcome, Positions, Side, Trace, TraceEntry};
use crate::graph::{Graph, GraphError, Vertex};
use crate::rng::{self, GameRng};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GuardError {
    #[error("path {0:?} is not isometric")]
    NotIsometric(Vec<Vertex>),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("need at least two vertices to play")]
    TooSmall,
}

/// Where the guarding cop is in its routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GuardPhase {
    /// Walking to `a`.
    Approach { cop: Vertex },
    /// On the path at index `index`.
    OnPath { index: usize, settled: bool },
}

/// Precomputed data for one isometric path.
#[derive(Debug, Clone)]
pub struct GuardPlan {
    path: Vec<Vertex>,
    index_on_path: Vec<Option<usize>>,
    dist_a: Vec<Option<usize>>,
}

impl GuardPlan {
    pub fn new(g: &Graph, path: Vec<Vertex>) -> Result<Self, GuardError> {
        if !g.check_isometric_path(&path)? {
            return Err(GuardError::NotIsometric(path));
        }
        let dist_a = g.distances_from(path[0])?;
        let mut index_on_path = vec![None; g.n()];
        for (i, &v) in path.iter().enumerate() {
            index_on_path[v] = Some(i);
        }
        Ok(GuardPlan {
            path,
            index_on_path,
            dist_a,
        })
    }

    pub fn path(&self) -> &[Vertex] {
        &self.path
    }

    /// Edge length `L` of the path.
    pub fn length(&self) -> usize {
        self.path.len() - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index_on_path[v].is_some()
    }

    pub fn dist_to_a(&self, v: Vertex) -> Option<usize> {
        self.dist_a[v]
    }

    pub fn shadow_index(&self, s: Vertex) -> usize {
        self.dist_a[s].map_or(self.length(), |d| d.min(self.length()))
    }

    pub fn shadow(&self, s: Vertex) -> Vertex {
        self.path[self.shadow_index(s)]
    }

    pub fn start(&self, cop: Vertex) -> GuardPhase {
        if cop == self.path[0] {
            GuardPhase::OnPath {
                index: 0,
                settled: false,
            }
        } else {
            GuardPhase::Approach { cop }
        }
    }

    pub fn cop_position(&self, phase: GuardPhase) -> Vertex {
        match phase {
            GuardPhase::Approach { cop } => cop,
            GuardPhase::OnPath { index, .. } => self.path[index],
        }
    }

    /// One cop turn against a robber standing on `robber`.
    pub fn next(&self, g: &Graph, phase: GuardPhase, robber: Vertex) -> GuardPhase {
        let target = self.shadow_index(robber);
        match phase {
            GuardPhase::Approach { cop } => {
                let d = self.dist_a[cop].unwrap_or(0);
                let step = g
                    .neighbors(cop)
                    .iter()
                    .copied()
                    .find(|&w| self.dist_a[w].is_some_and(|dw| dw + 1 == d))
                    .unwrap_or(cop);
                if step == self.path[0] {
                    GuardPhase::OnPath {
                        index: 0,
                        settled: target == 0,
                    }
                } else {
                    GuardPhase::Approach { cop: step }
                }
            }
            GuardPhase::OnPath { index, settled } => {
                let index = match index.cmp(&target) {
                    std::cmp::Ordering::Less => index + 1,
                    std::cmp::Ordering::Greater => index - 1,
                    std::cmp::Ordering::Equal => index,
                };
                GuardPhase::OnPath {
                    index,
                    settled: settled || index == target,
                }
            }
        }
    }
}

/// A path, the guarding cop's position and whether it has settled on the
/// robber's shadow.
#[derive(Debug, Clone)]
pub struct GuardState {
    plan: GuardPlan,
    phase: GuardPhase,
}

impl GuardState {
    pub fn new(g: &Graph, path: Vec<Vertex>, cop_start: Vertex) -> Result<Self, GuardError> {
        if cop_start >= g.n() {
            return Err(GraphError::VertexOutOfRange {
                vertex: cop_start,
                n: g.n(),
            }
            .into());
        }
        let plan = GuardPlan::new(g, path)?;
        let phase = plan.start(cop_start);
        Ok(GuardState { plan, phase })
    }

    pub fn plan(&self) -> &GuardPlan {
        &self.plan
    }

    pub fn cop_pos(&self) -> Vertex {
        self.plan.cop_position(self.phase)
    }

    pub fn settled(&self) -> bool {
        matches!(self.phase, GuardPhase::OnPath { settled: true, .. })
    }

    pub fn shadow(&self, s: Vertex) -> Vertex {
        self.plan.shadow(s)
    }

    /// Move the cop one step and return its new position.
    pub fn guard_step(&mut self, g: &Graph, robber: Vertex) -> Vertex {
        self.phase = self.plan.next(g, self.phase, robber);
        self.cop_pos()
    }
}

/// Robber behaviour used when testing a guard.
pub trait GuardRobber {
    fn name(&self) -> &'static str;
    fn step(&mut self, g: &Graph, guard: &GuardState, robber: Vertex, rng: &mut GameRng) -> Vertex;
}

fn closed_moves(g: &Graph, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
    std::iter::once(v).chain(g.neighbors(v).iter().copied())
}

/// Uniform random move among staying and the neighbors.
#[derive(Debug, Clone, Copy, Default)]
pub struct RandomWalk;

impl GuardRobber for RandomWalk {
    fn name(&self) -> &'static str {
        "random"
    }

    fn step(
        &mut self,
        g: &Graph,
        _guard: &GuardState,
        robber: Vertex,
        rng: &mut GameRng,
    ) -> Vertex {
        let choice = rng.gen_range(0..=g.degree(robber));
        closed_moves(g, robber).nth(choice).unwrap_or(robber)
    }
}

/// Move that maximizes the distance to the cop; ties broken at random.
#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyAway;

impl GuardRobber for GreedyAway {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn step(&mut self, g: &Graph, guard: &GuardState, robber: Vertex, rng: &mut GameRng) -> Vertex {
        let dist = g
            .distances_from(guard.cop_pos())
            .expect("cop position is a vertex");
        let key = |v: Vertex| dist[v].unwrap_or(usize::MAX);
        let best = closed_moves(g, robber).map(key).max().unwrap_or(0);
        let options: Vec<Vertex> = closed_moves(g, robber)
            .filter(|&v| key(v) == best)
            .collect();
        *options.choose(rng).unwrap_or(&robber)
    }
}

/// Searches all robber move sequences over a fixed number of plies (robber
/// and cop alternating) and plays the first move of the best one. Reaching
/// the path unpunished scores highest, being caught lowest.
#[derive(Debug, Clone, Copy)]
pub struct Adversarial {
    pub plies: usize,
}

impl Default for Adversarial {
    fn default() -> Self {
        Adversarial { plies: 4 }
    }
}

impl Adversarial {
    fn score(
        &self,
        g: &Graph,
        plan: &GuardPlan,
        phase: GuardPhase,
        robber: Vertex,
        plies: usize,
    ) -> i64 {
        let cop = plan.cop_position(phase);
        if cop == robber {
            return -1_000;
        }
        if plies < 2 {
            let dist = plan.dist_to_a(robber).unwrap_or(0) as i64;
            return if plan.contains(robber) { 100 } else { -dist };
        }
        closed_moves(g, robber)
            .map(|r| {
                if r == cop {
                    return -1_000;
                }
                let was_settled = matches!(phase, GuardPhase::OnPath { settled: true, .. });
                let next = plan.next(g, phase, r);
                if plan.cop_position(next) == r {
                    -1_000
                } else if was_settled && plan.contains(r) {
                    10_000
                } else {
                    self.score(g, plan, next, r, plies - 2)
                }
            })
            .max()
            .unwrap_or(i64::MIN)
    }
}

impl GuardRobber for Adversarial {
    fn name(&self) -> &'static str {
        "adversarial"
    }

    fn step(&mut self, g: &Graph, guard: &GuardState, robber: Vertex, rng: &mut GameRng) -> Vertex {
        let plan = guard.plan();
        let cop = guard.cop_pos();
        let scored: Vec<(Vertex, i64)> = closed_moves(g, robber)
            .map(|r| {
                if r == cop {
                    return (r, -1_000);
                }
                let next = plan.next(g, guard.phase, r);
                let s = if plan.cop_position(next) == r {
                    -1_000
                } else if guard.settled() && plan.contains(r) {
                    10_000
                } else {
                    self.score(g, plan, next, r, self.plies.saturating_sub(2))
                };
                (r, s)
            })
            .collect();
        let best = scored.iter().map(|&(_, s)| s).max().unwrap_or(0);
        let options: Vec<Vertex> = scored
            .iter()
            .filter(|&&(_, s)| s == best)
            .map(|&(r, _)| r)
            .collect();
        *options.choose(rng).unwrap_or(&robber)
    }
}

#[derive(Debug, Clone)]
pub struct GuardConfig {
    pub trials: usize,
    pub seed: u64,
    /// Rounds per trial.
    pub max_rounds: usize,
    pub record_traces: bool,
}

impl Default for GuardConfig {
    fn default() -> Self {
        GuardConfig {
            trials: 1_000,
            seed: 0,
            max_rounds: 100,
            record_traces: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GuardVerdict {
    pub isometric: bool,
    /// Largest number of cop moves needed to settle in any trial.
    pub settle_steps: usize,
    pub trials: usize,
    /// Rounds in which a settled guard let the robber stand on the path.
    pub violations: usize,
    /// Trials that settled later than `dist(start, a) + L` cop moves.
    pub settle_bound_violations: usize,
    pub captures: usize,
    pub policy: String,
    #[serde(skip)]
    pub traces: Vec<Trace>,
}

impl GuardVerdict {
    pub fn passed(&self) -> bool {
        self.isometric && self.violations == 0 && self.settle_bound_violations == 0
    }
}

struct TrialResult {
    settle_steps: Option<usize>,
    settle_bound_ok: bool,
    violations: usize,
    captured: bool,
    trace: Option<Trace>,
}

fn run_trial(
    g: &Graph,
    plan: &GuardPlan,
    policy: &mut dyn GuardRobber,
    cfg: &GuardConfig,
    rng: &mut GameRng,
) -> TrialResult {
    let n = g.n();
    let cop_start = rng.gen_range(0..n);
    let robber_start = loop {
        let r = rng.gen_range(0..n);
        if r != cop_start {
            break r;
        }
    };
    let bound = plan.dist_to_a(cop_start).unwrap_or(usize::MAX) + plan.length();
    let mut guard = GuardState {
        plan: plan.clone(),
        phase: plan.start(cop_start),
    };
    let mut robber = robber_start;
    let mut entries = Vec::new();
    let mut record = |step, mover, cop, robber| {
        if cfg.record_traces {
            entries.push(TraceEntry {
                step,
                mover,
                positions: Positions {
                    cops: vec![cop],
                    robber,
                },
            });
        }
    };
    record(0, Side::Cops, cop_start, None);
    record(0, Side::Robber, cop_start, Some(robber));
    let mut result = TrialResult {
        settle_steps: None,
        settle_bound_ok: true,
        violations: 0,
        captured: false,
        trace: None,
    };
    let mut outcome = Outcome::Survived {
        rounds: cfg.max_rounds,
    };
    for round in 1..=cfg.max_rounds {
        let was_settled = guard.settled();
        let cop = guard.guard_step(g, robber);
        record(round, Side::Cops, cop, Some(robber));
        if guard.settled() && result.settle_steps.is_none() {
            result.settle_steps = Some(round);
            result.settle_bound_ok = round <= bound;
        }
        if was_settled && plan.contains(robber) && cop != robber {
            result.violations += 1;
        }
        if cop == robber {
            result.captured = true;
            outcome = Outcome::Captured { round };
            break;
        }
        robber = policy.step(g, &guard, robber, rng);
        record(round, Side::Robber, cop, Some(robber));
        if robber == cop {
            result.captured = true;
            outcome = Outcome::Captured { round };
            break;
        }
    }
    if result.settle_steps.is_none() && !result.captured && cfg.max_rounds >= bound {
        result.settle_bound_ok = false;
    }
    if cfg.record_traces {
        result.trace = Some(Trace { entries, outcome });
    }
    result
}

/// Run `cfg.trials` seeded games of the shadow strategy against `policy`.
///
/// Trial `i` uses stream `i` of the generator seeded with `cfg.seed`; cop and
/// robber start on distinct uniform vertices.
pub fn verify_guard(
    g: &Graph,
    path: &[Vertex],
    policy: &mut dyn GuardRobber,
    cfg: &GuardConfig,
) -> Result<GuardVerdict, GuardError> {
    if g.n() < 2 {
        return Err(GuardError::TooSmall);
    }
    let plan = GuardPlan::new(g, path.to_vec())?;
    let mut verdict = GuardVerdict {
        isometric: true,
        settle_steps: 0,
        trials: cfg.trials,
        violations: 0,
        settle_bound_violations: 0,
        captures: 0,
        policy: policy.name().to_string(),
        traces: Vec::new(),
    };
    for trial in 0..cfg.trials {
        let mut rng = rng::split(cfg.seed, trial as u64);
        let r = run_trial(g, &plan, policy, cfg, &mut rng);
        verdict.settle_steps = verdict.settle_steps.max(r.settle_steps.unwrap_or(0));
        verdict.violations += r.violations;
        verdict.settle_bound_violations += usize::from(!r.settle_bound_ok);
        verdict.captures += usize::from(r.captured);
        verdict.traces.extend(r.trace);
    }
    Ok(verdict)
}

/// Outcome of [`exhaustive_guard_check`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    pub states_explored: usize,
    /// Robber entries onto the path not answered by capture.
    pub violations: usize,
    /// Cop starts from which some robber keeps the guard unsettled for more
    /// than `dist(start, a) + L` moves.
    pub settle_bound_violations: usize,
    /// Settled configurations with the cop off the robber's shadow.
    pub shadow_violations: usize,
}

impl ExhaustiveReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.settle_bound_violations == 0 && self.shadow_violations == 0
    }
}

/// Explores every robber trajectory of at most `horizon` moves (all of them
/// when `None`) from every pair of distinct cop and robber starts.
///
/// The cop is deterministic, so trajectories are covered by a search over
/// configurations `(guard phase, robber, elapsed)`; `elapsed` is only tracked
/// while the guard is unsettled, after that the configuration space is closed
/// under robber moves.
pub fn exhaustive_guard_check(
    g: &Graph,
    path: &[Vertex],
    horizon: Option<usize>,
) -> Result<ExhaustiveReport, GuardError> {
    let plan = GuardPlan::new(g, path.to_vec())?;
    let mut report = ExhaustiveReport::default();
    let n = g.n();
    for cop_start in 0..n {
        let Some(d) = plan.dist_to_a(cop_start) else {
            // The cop can never reach the path from another component.
            continue;
        };
        let bound = d + plan.length();
        // (phase, robber, elapsed cop moves or usize::MAX once settled, robber moves)
        let mut seen: HashSet<(GuardPhase, Vertex, usize)> = HashSet::new();
        let mut queue: VecDeque<(GuardPhase, Vertex, usize, usize)> = VecDeque::new();
        let start = plan.start(cop_start);
        for r in (0..n).filter(|&r| r != cop_start) {
            if seen.insert((start, r, 0)) {
                queue.push_back((start, r, 0, 0));
            }
        }
        let mut bound_broken = false;
        while let Some((phase, robber, elapsed, moves)) = queue.pop_front() {
            report.states_explored += 1;
            let was_settled = matches!(phase, GuardPhase::OnPath { settled: true, .. });
            let next = plan.next(g, phase, robber);
            let cop = plan.cop_position(next);
            let settled = matches!(next, GuardPhase::OnPath { settled: true, .. });
            let elapsed = if was_settled { usize::MAX } else { elapsed + 1 };
            if !settled && elapsed != usize::MAX && elapsed > bound {
                bound_broken = true;
            }
            if settled && cop != plan.shadow(robber) && cop != robber {
                report.shadow_violations += 1;
            }
            if was_settled && plan.contains(robber) && cop != robber {
                report.violations += 1;
            }
            if cop == robber || horizon.is_some_and(|h| moves >= h) {
                continue;
            }
            let key_elapsed = if settled { usize::MAX } else { elapsed };
            for r in closed_moves(g, robber) {
                if r == cop {
                    continue;
                }
                if seen.insert((next, r, key_elapsed)) {
                    queue.push_back((next, r, key_elapsed, moves + 1));
                }
            }
        }
        report.settle_bound_violations += usize::from(bound_broken);
    }
    Ok(report)
}

/// All isometric paths of `g` with at least one edge, in both orientations.
pub fn isometric_paths(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let dists: Vec<Vec<Option<usize>>> = (0..n)
        .map(|v| g.distances_from(v).expect("vertex in range"))
        .collect();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let Some(l) = dists[a][b] else { continue };
            if l == 0 {
                continue;
            }
            // Extend geodesics from a one layer at a time toward b.
            let mut partial = vec![vec![a]];
            for step in 1..=l {
                let mut grown = Vec::new();
                for p in &partial {
                    let last = *p.last().unwrap_or(&a);
                    for &w in g.neighbors(last) {
                        if dists[a][w] == Some(step) && dists[w][b] == Some(l - step) {
                            let mut q = p.clone();
                            q.push(w);
                            grown.push(q);
                        }
                    }
                }
                partial = grown;
            }
            out.extend(partial);
        }
    }
    out
}
