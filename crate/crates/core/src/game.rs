//! Exact cops-and-robber solving by backward induction.
//!
//! Rules: the cops place first, then the robber, then the cops move first.
//! In a cop turn every cop moves along one edge or stays (all cops move
//! together); in a robber turn the robber does the same. The robber is caught
//! as soon as it shares a vertex with a cop after any half-move. Cops may
//! share vertices.
//!
//! Cop positions are stored as sorted tuples (a multiset), so the state space
//! has `C(n + k - 1, k) * n * 2` states. Capture times are computed level by
//! level: level `t + 1` reads only states already fixed at levels `<= t`, and
//! the iteration stops at the first level that adds nothing.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};
use crate::rng::{self, GameRng};

pub const DEFAULT_STATE_LIMIT: u64 = 50_000_000;

const INF: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error("state space of about {estimate} states exceeds the limit of {limit}")]
    StateLimit { estimate: u128, limit: u64 },
    #[error("cop number exceeds the configured maximum of {0} cops")]
    CopLimit(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("at least one cop is required")]
    NoCops,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{requested:?} strategy requested, but that side loses")]
    WrongSide { requested: Side },
    #[error("strategy table has no entry for {0:?}")]
    MissingState(GameState),
    #[error("girth {0} is below 5")]
    GirthTooSmall(usize),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("robber at {robber} has no unguarded neighbor against cops {cops:?}")]
    NoEscape { cops: Vec<Vertex>, robber: Vertex },
    #[error("invalid state: {0}")]
    InvalidState(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Cops,
    Robber,
}

/// One node of the game digraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameState {
    /// Sorted cop positions.
    pub cops: Vec<Vertex>,
    pub robber: Vertex,
    pub to_move: Side,
}

impl GameState {
    pub fn new(mut cops: Vec<Vertex>, robber: Vertex, to_move: Side) -> Self {
        cops.sort_unstable();
        GameState {
            cops,
            robber,
            to_move,
        }
    }

    pub fn is_capture(&self) -> bool {
        self.cops.contains(&self.robber)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveLimits {
    pub state_limit: u64,
    /// Largest cop count `cop_number` will try; `None` means no cap.
    pub max_k: Option<usize>,
}

impl Default for SolveLimits {
    fn default() -> Self {
        SolveLimits {
            state_limit: DEFAULT_STATE_LIMIT,
            max_k: None,
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// `C(n + k - 1, k) * n * 2`, saturating.
pub fn state_space_estimate(n: usize, k: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    binomial((n + k - 1) as u128, k as u128)
        .saturating_mul(n as u128)
        .saturating_mul(2)
}

/// Dense ranking of sorted k-tuples over `0..n`.
///
/// A sorted tuple `c` maps to the strictly increasing `d_i = c_i + i`, whose
/// colexicographic rank is `sum_i C(d_i, i + 1)`.
#[derive(Debug, Clone)]
struct TupleSpace {
    k: usize,
    binom: Vec<Vec<usize>>,
    tuples: Vec<u32>,
}

impl TupleSpace {
    fn new(n: usize, k: usize) -> Self {
        let top = n + k;
        let mut binom = vec![vec![0usize; k + 1]; top + 1];
        for a in 0..=top {
            binom[a][0] = 1;
            for b in 1..=k.min(a) {
                binom[a][b] = binom[a - 1][b - 1] + if b < a { binom[a - 1][b] } else { 0 };
            }
        }
        let count = binom[n + k - 1][k];
        let mut space = TupleSpace {
            k,
            binom,
            tuples: vec![0; count * k],
        };
        let mut cur = vec![0u32; k];
        loop {
            let r = space.rank(&cur);
            space.tuples[r * k..(r + 1) * k].copy_from_slice(&cur);
            // Next nondecreasing tuple in lexicographic order.
            let Some(i) = (0..k).rev().find(|&i| (cur[i] as usize) < n - 1) else {
                break;
            };
            let v = cur[i] + 1;
            cur[i..].iter_mut().for_each(|c| *c = v);
        }
        space
    }

    fn len(&self) -> usize {
        self.tuples.len() / self.k
    }

    fn rank(&self, t: &[u32]) -> usize {
        t.iter()
            .enumerate()
            .map(|(i, &c)| self.binom[c as usize + i][i + 1])
            .sum()
    }

    fn tuple(&self, r: usize) -> &[u32] {
        &self.tuples[r * self.k..(r + 1) * self.k]
    }
}

/// Enumerates joint cop moves as ranked sorted tuples.
struct MoveGen<'a> {
    space: &'a TupleSpace,
    closed: &'a [Vec<u32>],
    idx: Vec<usize>,
    scratch: Vec<u32>,
}

impl<'a> MoveGen<'a> {
    fn new(space: &'a TupleSpace, closed: &'a [Vec<u32>]) -> Self {
        MoveGen {
            space,
            closed,
            idx: vec![0; space.k],
            scratch: vec![0; space.k],
        }
    }

    /// All tuples reachable from tuple `rank` by one joint move. The relation
    /// is symmetric, so these are also its predecessors.
    fn moves(&mut self, rank: usize, out: &mut Vec<usize>) {
        out.clear();
        let from = self.space.tuple(rank);
        let k = from.len();
        self.idx.iter_mut().for_each(|i| *i = 0);
        loop {
            for (i, &c) in from.iter().enumerate() {
                self.scratch[i] = self.closed[c as usize][self.idx[i]];
            }
            self.scratch.sort_unstable();
            out.push(self.space.rank(&self.scratch));
            let mut i = k;
            loop {
                if i == 0 {
                    out.sort_unstable();
                    out.dedup();
                    return;
                }
                i -= 1;
                self.idx[i] += 1;
                if self.idx[i] < self.closed[from[i] as usize].len() {
                    break;
                }
                self.idx[i] = 0;
            }
        }
    }
}

/// Serializable summary of one solve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveSummary {
    pub k: usize,
    pub cop_win: bool,
    /// Game value: capture time from the best cop placement against the
    /// worst robber placement. `None` when the robber wins.
    pub capture_time_max: Option<u32>,
    pub initial_placement: Option<Vec<Vertex>>,
    pub state_count: usize,
}

/// Verdict and capture-time table for `k` cops on one connected graph.
#[derive(Debug, Clone)]
pub struct SolveResult {
    graph: Graph,
    space: TupleSpace,
    closed: Vec<Vec<u32>>,
    times: Vec<u32>,
    value: Option<u32>,
    placement: Option<Vec<Vertex>>,
}

impl SolveResult {
    fn n(&self) -> usize {
        self.graph.n()
    }

    fn cop_index(&self, rank: usize, robber: usize) -> usize {
        (rank * self.n() + robber) * 2
    }

    fn robber_index(&self, rank: usize, robber: usize) -> usize {
        (rank * self.n() + robber) * 2 + 1
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.space.k
    }

    pub fn cop_win(&self) -> bool {
        self.value.is_some()
    }

    pub fn state_count(&self) -> usize {
        self.times.len()
    }

    pub fn capture_time_max(&self) -> Option<u32> {
        self.value
    }

    pub fn winning_initial_placement(&self) -> Option<&[Vertex]> {
        self.placement.as_deref()
    }

    pub fn summary(&self) -> SolveSummary {
        SolveSummary {
            k: self.k(),
            cop_win: self.cop_win(),
            capture_time_max: self.value,
            initial_placement: self.placement.clone(),
            state_count: self.state_count(),
        }
    }

    fn rank_of(&self, cops: &[Vertex]) -> Result<usize, GameError> {
        if cops.len() != self.k() {
            return Err(GameError::InvalidState(format!(
                "expected {} cops, got {}",
                self.k(),
                cops.len()
            )));
        }
        let mut t: Vec<u32> = Vec::with_capacity(cops.len());
        for &c in cops {
            if c >= self.n() {
                return Err(GameError::InvalidState(format!("vertex {c} out of range")));
            }
            t.push(c as u32);
        }
        t.sort_unstable();
        Ok(self.space.rank(&t))
    }

    /// Cop moves still needed under optimal play from `state`; `None` when the
    /// robber escapes forever.
    pub fn capture_time(&self, state: &GameState) -> Result<Option<u32>, GameError> {
        let rank = self.rank_of(&state.cops)?;
        if state.robber >= self.n() {
            return Err(GameError::InvalidState(format!(
                "robber vertex {} out of range",
                state.robber
            )));
        }
        let idx = match state.to_move {
            Side::Cops => self.cop_index(rank, state.robber),
            Side::Robber => self.robber_index(rank, state.robber),
        };
        Ok(Some(self.times[idx]).filter(|&t| t != INF))
    }

    /// Every state with its capture time.
    pub fn iter_states(&self) -> impl Iterator<Item = (GameState, Option<u32>)> + '_ {
        (0..self.space.len()).flat_map(move |rank| {
            let cops: Vec<Vertex> = self.space.tuple(rank).iter().map(|&c| c as usize).collect();
            (0..self.n()).flat_map(move |r| {
                let cops = cops.clone();
                [Side::Cops, Side::Robber].into_iter().map(move |side| {
                    let idx = match side {
                        Side::Cops => self.cop_index(rank, r),
                        Side::Robber => self.robber_index(rank, r),
                    };
                    let t = Some(self.times[idx]).filter(|&t| t != INF);
                    (GameState::new(cops.clone(), r, side), t)
                })
            })
        })
    }

    fn tuple_contains(&self, rank: usize, v: usize) -> bool {
        self.space.tuple(rank).binary_search(&(v as u32)).is_ok()
    }

    /// Joint cop move minimizing the remaining capture time.
    fn best_cop_move(&self, rank: usize, robber: usize) -> Option<(usize, u32)> {
        let mut gen = MoveGen::new(&self.space, &self.closed);
        let mut succ = Vec::new();
        gen.moves(rank, &mut succ);
        succ.into_iter()
            .map(|s| {
                let t = if self.tuple_contains(s, robber) {
                    0
                } else {
                    self.times[self.robber_index(s, robber)]
                };
                (s, t)
            })
            .min_by_key(|&(_, t)| t)
            .filter(|&(_, t)| t != INF)
    }

    /// Robber move maximizing the remaining capture time (infinite first).
    fn best_robber_move(&self, rank: usize, robber: usize) -> (usize, u32) {
        self.closed[robber]
            .iter()
            .map(|&r| {
                let r = r as usize;
                (r, self.times[self.cop_index(rank, r)])
            })
            .fold(
                (robber, 0),
                |best, cand| if cand.1 > best.1 { cand } else { best },
            )
    }

    fn best_robber_placement(&self, rank: usize) -> (usize, u32) {
        (0..self.n())
            .map(|r| (r, self.times[self.cop_index(rank, r)]))
            .fold(
                (0, 0),
                |best, cand| if cand.1 > best.1 { cand } else { best },
            )
    }

    fn tuple_vec(&self, rank: usize) -> Vec<Vertex> {
        self.space.tuple(rank).iter().map(|&c| c as usize).collect()
    }
}

/// Decide whether `k` cops catch the robber on the connected graph `g`.
pub fn solve(g: &Graph, k: usize, limits: &SolveLimits) -> Result<SolveResult, GameError> {
    let n = g.n();
    if n == 0 {
        return Err(GameError::Empty);
    }
    if k == 0 {
        return Err(GameError::NoCops);
    }
    if !g.is_connected() {
        return Err(GameError::Disconnected);
    }
    let estimate = state_space_estimate(n, k);
    if estimate > limits.state_limit as u128 {
        return Err(GameError::StateLimit {
            estimate,
            limit: limits.state_limit,
        });
    }

    let space = TupleSpace::new(n, k);
    let closed: Vec<Vec<u32>> = (0..n)
        .map(|v| {
            g.closed_neighborhood(v)
                .into_iter()
                .map(|x| x as u32)
                .collect()
        })
        .collect();
    let m = space.len();
    let mut times = vec![INF; m * n * 2];
    // Robber-to-move states: number of robber moves not yet known to lose.
    let mut pending: Vec<u32> = (0..m * n).map(|s| closed[s % n].len() as u32).collect();
    let cop_idx = |rank: usize, r: usize| (rank * n + r) * 2;
    let rob_idx = |rank: usize, r: usize| (rank * n + r) * 2 + 1;
    let contains = |rank: usize, v: usize| space.tuple(rank).binary_search(&(v as u32)).is_ok();

    // Level 0: a cop already sits on the robber.
    let mut frontier: Vec<usize> = Vec::new();
    for rank in 0..m {
        let t = space.tuple(rank);
        for (i, &c) in t.iter().enumerate() {
            if i > 0 && t[i - 1] == c {
                continue;
            }
            let r = c as usize;
            times[cop_idx(rank, r)] = 0;
            times[rob_idx(rank, r)] = 0;
            frontier.push(rank * n + r);
            // A robber stepping onto a cop loses immediately.
            for &from in &closed[r] {
                let from = from as usize;
                if !contains(rank, from) {
                    pending[rank * n + from] -= 1;
                }
            }
        }
    }

    let mut gen = MoveGen::new(&space, &closed);
    let mut moves = Vec::new();
    let mut level: u32 = 0;
    while !frontier.is_empty() {
        let next_level = level + 1;
        frontier.sort_unstable();
        let mut new_cops: Vec<usize> = Vec::new();
        let mut last_rank = usize::MAX;
        for &key in &frontier {
            let (rank, r) = (key / n, key % n);
            if rank != last_rank {
                gen.moves(rank, &mut moves);
                last_rank = rank;
            }
            for &pred in &moves {
                if contains(pred, r) {
                    continue;
                }
                let s = cop_idx(pred, r);
                if times[s] == INF {
                    times[s] = next_level;
                    new_cops.push(pred * n + r);
                }
            }
        }
        let mut next: Vec<usize> = Vec::new();
        for &key in &new_cops {
            let (rank, r) = (key / n, key % n);
            for &from in &closed[r] {
                let from = from as usize;
                if contains(rank, from) {
                    continue;
                }
                let s = rob_idx(rank, from);
                if times[s] == INF {
                    let p = &mut pending[rank * n + from];
                    *p -= 1;
                    if *p == 0 {
                        times[s] = next_level;
                        next.push(rank * n + from);
                    }
                }
            }
        }
        frontier = next;
        level = next_level;
    }

    let mut best: Option<(u32, usize)> = None;
    for rank in 0..m {
        let worst = (0..n).map(|r| times[cop_idx(rank, r)]).max().unwrap_or(0);
        if worst == INF {
            continue;
        }
        let better = match best {
            None => true,
            Some((bw, br)) => worst < bw || (worst == bw && space.tuple(rank) < space.tuple(br)),
        };
        if better {
            best = Some((worst, rank));
        }
    }

    let mut result = SolveResult {
        graph: g.clone(),
        space,
        closed,
        times,
        value: None,
        placement: None,
    };
    if let Some((worst, rank)) = best {
        result.value = Some(worst);
        result.placement = Some(result.tuple_vec(rank));
    }
    Ok(result)
}

/// Per-component detail of [`cop_number_report`].
#[derive(Debug, Clone, Serialize)]
pub struct ComponentCopNumber {
    pub vertices: Vec<Vertex>,
    pub cop_number: usize,
    pub solve: SolveSummary,
}

#[derive(Debug, Clone, Serialize)]
pub struct CopNumberReport {
    pub cop_number: usize,
    pub components: Vec<ComponentCopNumber>,
}

/// Cop number of `g`, summed over connected components.
pub fn cop_number(g: &Graph, limits: &SolveLimits) -> Result<usize, GameError> {
    cop_number_report(g, limits).map(|r| r.cop_number)
}

pub fn cop_number_report(g: &Graph, limits: &SolveLimits) -> Result<CopNumberReport, GameError> {
    if g.n() == 0 {
        return Err(GameError::Empty);
    }
    let mut components = Vec::new();
    for (comp, vertices) in g.components() {
        let mut k = 1;
        let solve = loop {
            if limits.max_k.is_some_and(|max| k > max) {
                return Err(GameError::CopLimit(k - 1));
            }
            let res = solve(&comp, k, limits)?;
            if res.cop_win() {
                break res.summary();
            }
            k += 1;
        };
        components.push(ComponentCopNumber {
            vertices,
            cop_number: k,
            solve,
        });
    }
    Ok(CopNumberReport {
        cop_number: components.iter().map(|c| c.cop_number).sum(),
        components,
    })
}

/// Corner-removal test for cop-win graphs: repeatedly delete a vertex whose
/// closed neighborhood lies inside another vertex's closed neighborhood.
pub fn is_copwin_dismantlable(g: &Graph) -> Result<bool, GameError> {
    if g.n() == 0 {
        return Err(GameError::Empty);
    }
    if !g.is_connected() {
        return Err(GameError::Disconnected);
    }
    let n = g.n();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let dominated_by = |alive: &[bool], v: usize, u: usize| {
        (v == u || g.has_edge(v, u))
            && g.neighbors(v)
                .iter()
                .all(|&w| !alive[w] || w == u || g.has_edge(u, w))
    };
    while remaining > 1 {
        let corner = (0..n)
            .filter(|&v| alive[v])
            .find(|&v| (0..n).any(|u| u != v && alive[u] && dominated_by(&alive, v, u)));
        match corner {
            Some(v) => {
                alive[v] = false;
                remaining -= 1;
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// Whether a cop guards `u`: it stands on `u` or next to it.
fn guarded(g: &Graph, cops: &[Vertex], u: Vertex) -> bool {
    cops.iter().any(|&c| c == u || g.has_edge(c, u))
}

/// Neighbors of `robber` that no cop guards.
pub fn unguarded_neighbors(g: &Graph, cops: &[Vertex], robber: Vertex) -> Vec<Vertex> {
    g.neighbors(robber)
        .iter()
        .copied()
        .filter(|&u| !guarded(g, cops, u))
        .collect()
}

fn require_girth5(g: &Graph) -> Result<(), GameError> {
    match g.girth() {
        Some(girth) if girth < 5 => Err(GameError::GirthTooSmall(girth)),
        _ => Ok(()),
    }
}

/// Robber escape on graphs of girth at least 5: a neighbor of `robber` that
/// no cop stands on or next to. With girth >= 5 each cop guards at most one
/// neighbor, so fewer than min-degree cops always leave one open.
pub fn girth5_escape_move(
    g: &Graph,
    cops: &[Vertex],
    robber: Vertex,
) -> Result<Option<Vertex>, GameError> {
    require_girth5(g)?;
    if robber >= g.n() {
        return Err(GraphError::VertexOutOfRange {
            vertex: robber,
            n: g.n(),
        }
        .into());
    }
    Ok(unguarded_neighbors(g, cops, robber).first().copied())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Cops(Vec<Vertex>),
    Robber(Vertex),
}

/// A positional strategy for one side, read off a solved game.
#[derive(Debug, Clone)]
pub struct StrategyTable {
    side: Side,
    k: usize,
    cop_placement: Option<Vec<Vertex>>,
    robber_placement: HashMap<Vec<Vertex>, Vertex>,
    move_of: HashMap<GameState, Move>,
}

impl StrategyTable {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, state: &GameState) -> Option<&Move> {
        self.move_of.get(state)
    }

    pub fn len(&self) -> usize {
        self.move_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.move_of.is_empty()
    }

    pub fn cop_placement(&self) -> Option<&[Vertex]> {
        self.cop_placement.as_deref()
    }

    pub fn robber_placement(&self, cops: &[Vertex]) -> Option<Vertex> {
        let mut key = cops.to_vec();
        key.sort_unstable();
        self.robber_placement.get(&key).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GameState, &Move)> {
        self.move_of.iter()
    }
}

/// Winning strategy for `side`. The cop table covers every cop-to-move state
/// the cops win (each move strictly lowers the capture time); the robber
/// table covers every robber-to-move state the cops cannot win (each move
/// stays outside the cops' winning region).
pub fn extract_strategy(result: &SolveResult, side: Side) -> Result<StrategyTable, GameError> {
    let n = result.n();
    let mut table = StrategyTable {
        side,
        k: result.k(),
        cop_placement: None,
        robber_placement: HashMap::new(),
        move_of: HashMap::new(),
    };
    match side {
        Side::Cops => {
            if !result.cop_win() {
                return Err(GameError::WrongSide { requested: side });
            }
            table.cop_placement = result.placement.clone();
            for rank in 0..result.space.len() {
                for r in 0..n {
                    let t = result.times[result.cop_index(rank, r)];
                    if t == 0 || t == INF {
                        continue;
                    }
                    if let Some((succ, _)) = result.best_cop_move(rank, r) {
                        table.move_of.insert(
                            GameState::new(result.tuple_vec(rank), r, Side::Cops),
                            Move::Cops(result.tuple_vec(succ)),
                        );
                    }
                }
            }
        }
        Side::Robber => {
            if result.cop_win() {
                return Err(GameError::WrongSide { requested: side });
            }
            for rank in 0..result.space.len() {
                let cops = result.tuple_vec(rank);
                if let Some(r) = (0..n).find(|&r| result.times[result.cop_index(rank, r)] == INF) {
                    table.robber_placement.insert(cops.clone(), r);
                }
                for r in 0..n {
                    if result.tuple_contains(rank, r)
                        || result.times[result.robber_index(rank, r)] != INF
                    {
                        continue;
                    }
                    let (to, t) = result.best_robber_move(rank, r);
                    debug_assert_eq!(t, INF);
                    table.move_of.insert(
                        GameState::new(cops.clone(), r, Side::Robber),
                        Move::Robber(to),
                    );
                }
            }
        }
    }
    Ok(table)
}

pub trait CopPolicy {
    fn place(&mut self, g: &Graph, rng: &mut GameRng) -> Result<Vec<Vertex>, GameError>;
    fn step(
        &mut self,
        g: &Graph,
        cops: &[Vertex],
        robber: Vertex,
        rng: &mut GameRng,
    ) -> Result<Vec<Vertex>, GameError>;
}

pub trait RobberPolicy {
    fn place(&mut self, g: &Graph, cops: &[Vertex], rng: &mut GameRng)
        -> Result<Vertex, GameError>;
    fn step(
        &mut self,
        g: &Graph,
        cops: &[Vertex],
        robber: Vertex,
        rng: &mut GameRng,
    ) -> Result<Vertex, GameError>;
}

impl CopPolicy for StrategyTable {
    fn place(&mut self, _g: &Graph, _rng: &mut GameRng) -> Result<Vec<Vertex>, GameError> {
        self.cop_placement.clone().ok_or(GameError::WrongSide {
            requested: Side::Cops,
        })
    }

    fn step(
        &mut self,
        _g: &Graph,
        cops: &[Vertex],
        robber: Vertex,
        _rng: &mut GameRng,
    ) -> Result<Vec<Vertex>, GameError> {
        let state = GameState::new(cops.to_vec(), robber, Side::Cops);
        match self.move_of.get(&state) {
            Some(Move::Cops(next)) => Ok(next.clone()),
            _ => Err(GameError::MissingState(state)),
        }
    }
}

impl RobberPolicy for StrategyTable {
    fn place(
        &mut self,
        _g: &Graph,
        cops: &[Vertex],
        _rng: &mut GameRng,
    ) -> Result<Vertex, GameError> {
        self.robber_placement(cops)
            .ok_or_else(|| GameError::MissingState(GameState::new(cops.to_vec(), 0, Side::Robber)))
    }

    fn step(
        &mut self,
        _g: &Graph,
        cops: &[Vertex],
        robber: Vertex,
        _rng: &mut GameRng,
    ) -> Result<Vertex, GameError> {
        let state = GameState::new(cops.to_vec(), robber, Side::Robber);
        match self.move_of.get(&state) {
            Some(Move::Robber(to)) => Ok(*to),
            _ => Err(GameError::MissingState(state)),
        }
    }
}

fn random_closed_neighbor(g: &Graph, v: Vertex, rng: &mut GameRng) -> Vertex {
    let choice = rng.gen_range(0..=g.degree(v));
    if choice == g.degree(v) {
        v
    } else {
        g.neighbors(v)[choice]
    }
}

/// Cops placed uniformly at random, each moving to a uniform closed neighbor.
#[derive(Debug, Clone)]
pub struct RandomCops {
    pub k: usize,
}

impl CopPolicy for RandomCops {
    fn place(&mut self, g: &Graph, rng: &mut GameRng) -> Result<Vec<Vertex>, GameError> {
        Ok((0..self.k).map(|_| rng.gen_range(0..g.n())).collect())
    }

    fn step(
        &mut self,
        g: &Graph,
        cops: &[Vertex],
        _robber: Vertex,
        rng: &mut GameRng,
    ) -> Result<Vec<Vertex>, GameError> {
        Ok(cops
            .iter()
            .map(|&c| random_closed_neighbor(g, c, rng))
            .collect())
    }
}

/// Cops placed at random that each step along a shortest path to the robber.
#[derive(Debug, Clone)]
pub struct GreedyCops {
    pub k: usize,
}

impl CopPolicy for GreedyCops {
    fn place(&mut self, g: &Graph, rng: &mut GameRng) -> Result<Vec<Vertex>, GameError> {
        Ok((0..self.k).map(|_| rng.gen_range(0..g.n())).collect())
    }

    fn step(
        &mut self,
        g: &Graph,
        cops: &[Vertex],
        robber: Vertex,
        rng: &mut GameRng,
    ) -> Result<Vec<Vertex>, GameError> {
        let dist = g.distances_from(robber)?;
        Ok(cops
            .iter()
            .map(|&c| {
                let closer: Vec<Vertex> = g
                    .neighbors(c)
                    .iter()
                    .copied()
                    .filter(|&w| matches!((dist[w], dist[c]), (Some(a), Some(b)) if a < b))
                    .collect();
                closer.choose(rng).copied().unwrap_or(c)
            })
            .collect())
    }
}

/// Robber placed at a uniform vertex (avoiding cops when possible) that moves
/// to a uniform closed neighbor.
#[derive(Debug, Clone, Default)]
pub struct RandomRobber;

impl RobberPolicy for RandomRobber {
    fn place(
        &mut self,
        g: &Graph,
        cops: &[Vertex],
        rng: &mut GameRng,
    ) -> Result<Vertex, GameError> {
        let free: Vec<Vertex> = (0..g.n()).filter(|v| !cops.contains(v)).collect();
        Ok(free
            .choose(rng)
            .copied()
            .unwrap_or_else(|| rng.gen_range(0..g.n())))
    }

    fn step(
        &mut self,
        g: &Graph,
        _cops: &[Vertex],
        robber: Vertex,
        rng: &mut GameRng,
    ) -> Result<Vertex, GameError> {
        Ok(random_closed_neighbor(g, robber, rng))
    }
}

/// Robber that maximizes the remaining capture time according to a solved
/// game; it evades forever whenever the cops cannot win.
#[derive(Debug, Clone, Copy)]
pub struct OptimalRobber<'a> {
    pub result: &'a SolveResult,
}

impl RobberPolicy for OptimalRobber<'_> {
    fn place(
        &mut self,
        _g: &Graph,
        cops: &[Vertex],
        _rng: &mut GameRng,
    ) -> Result<Vertex, GameError> {
        let rank = self.result.rank_of(cops)?;
        Ok(self.result.best_robber_placement(rank).0)
    }

    fn step(
        &mut self,
        _g: &Graph,
        cops: &[Vertex],
        robber: Vertex,
        _rng: &mut GameRng,
    ) -> Result<Vertex, GameError> {
        let rank = self.result.rank_of(cops)?;
        Ok(self.result.best_robber_move(rank, robber).0)
    }
}

/// Escape rule on graphs of girth at least 5: start on a vertex no cop
/// guards, then always step to a uniformly chosen unguarded neighbor.
#[derive(Debug, Clone, Default)]
pub struct Girth5Escape {
    /// Escape moves made so far.
    pub escapes: usize,
}

impl Girth5Escape {
    pub fn new(g: &Graph) -> Result<Self, GameError> {
        require_girth5(g)?;
        Ok(Girth5Escape { escapes: 0 })
    }
}

impl RobberPolicy for Girth5Escape {
    fn place(
        &mut self,
        g: &Graph,
        cops: &[Vertex],
        rng: &mut GameRng,
    ) -> Result<Vertex, GameError> {
        let safe: Vec<Vertex> = (0..g.n()).filter(|&v| !guarded(g, cops, v)).collect();
        safe.choose(rng)
            .copied()
            .ok_or_else(|| GameError::NoEscape {
                cops: cops.to_vec(),
                robber: g.n(),
            })
    }

    fn step(
        &mut self,
        g: &Graph,
        cops: &[Vertex],
        robber: Vertex,
        rng: &mut GameRng,
    ) -> Result<Vertex, GameError> {
        let options = unguarded_neighbors(g, cops, robber);
        let to = options
            .choose(rng)
            .copied()
            .ok_or_else(|| GameError::NoEscape {
                cops: cops.to_vec(),
                robber,
            })?;
        self.escapes += 1;
        Ok(to)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Positions {
    pub cops: Vec<Vertex>,
    pub robber: Option<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    /// Round number; 0 is the placement round.
    pub step: usize,
    pub mover: Side,
    pub positions: Positions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum Outcome {
    /// Caught during round `round` (0 = placement, otherwise the number of
    /// cop moves made).
    Captured {
        round: usize,
    },
    Survived {
        rounds: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub entries: Vec<TraceEntry>,
    pub outcome: Outcome,
}

/// Whether the cop multiset `to` is reachable from `from` in one joint move.
fn is_joint_move(g: &Graph, from: &[Vertex], to: &[Vertex]) -> bool {
    if from.len() != to.len() {
        return false;
    }
    let k = from.len();
    let ok = |i: usize, j: usize| from[i] == to[j] || g.has_edge(from[i], to[j]);
    // Bipartite matching by augmenting paths.
    let mut owner = vec![usize::MAX; k];
    fn augment(
        i: usize,
        k: usize,
        ok: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        owner: &mut [usize],
    ) -> bool {
        for j in 0..k {
            if ok(i, j) && !seen[j] {
                seen[j] = true;
                if owner[j] == usize::MAX || augment(owner[j], k, ok, seen, owner) {
                    owner[j] = i;
                    return true;
                }
            }
        }
        false
    }
    (0..k).all(|i| augment(i, k, &ok, &mut vec![false; k], &mut owner))
}

/// Play the two policies against each other for at most `max_rounds` rounds.
/// Every move is checked for legality.
pub fn simulate_play(
    g: &Graph,
    cop_policy: &mut dyn CopPolicy,
    robber_policy: &mut dyn RobberPolicy,
    max_rounds: usize,
    seed: u64,
) -> Result<Trace, GameError> {
    let mut rng = rng::seeded(seed);
    let n = g.n();
    let mut cops = cop_policy.place(g, &mut rng)?;
    if cops.is_empty() {
        return Err(GameError::NoCops);
    }
    if let Some(&bad) = cops.iter().find(|&&c| c >= n) {
        return Err(GameError::IllegalMove(format!("cop placed on {bad}")));
    }
    let k = cops.len();
    let mut entries = vec![TraceEntry {
        step: 0,
        mover: Side::Cops,
        positions: Positions {
            cops: cops.clone(),
            robber: None,
        },
    }];
    let mut robber = robber_policy.place(g, &cops, &mut rng)?;
    if robber >= n {
        return Err(GameError::IllegalMove(format!("robber placed on {robber}")));
    }
    let record = |entries: &mut Vec<TraceEntry>, step, mover, cops: &[Vertex], robber| {
        entries.push(TraceEntry {
            step,
            mover,
            positions: Positions {
                cops: cops.to_vec(),
                robber: Some(robber),
            },
        })
    };
    record(&mut entries, 0, Side::Robber, &cops, robber);
    if cops.contains(&robber) {
        return Ok(Trace {
            entries,
            outcome: Outcome::Captured { round: 0 },
        });
    }
    for round in 1..=max_rounds {
        let next = cop_policy.step(g, &cops, robber, &mut rng)?;
        if next.len() != k || !is_joint_move(g, &cops, &next) {
            return Err(GameError::IllegalMove(format!("cops {cops:?} -> {next:?}")));
        }
        cops = next;
        record(&mut entries, round, Side::Cops, &cops, robber);
        if cops.contains(&robber) {
            return Ok(Trace {
                entries,
                outcome: Outcome::Captured { round },
            });
        }
        let to = robber_policy.step(g, &cops, robber, &mut rng)?;
        if to >= n || (to != robber && !g.has_edge(robber, to)) {
            return Err(GameError::IllegalMove(format!("robber {robber} -> {to}")));
        }
        robber = to;
        record(&mut entries, round, Side::Robber, &cops, robber);
        if cops.contains(&robber) {
            return Ok(Trace {
                entries,
                outcome: Outcome::Captured { round },
            });
        }
    }
    Ok(Trace {
        entries,
        outcome: Outcome::Survived { rounds: max_rounds },
    })
}
