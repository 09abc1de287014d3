//! Command implementations behind the `cops` binary, and the random-graph
//! probe sweep.
//!
//! Commands return their output as a string so they can be tested without a
//! process boundary; [`CliError::exit_code`] gives the process exit status.

use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::bounds::{self, BoundsError};
use crate::game::{self, GameError, SolveLimits};
use crate::generators::{self};
use crate::graph::{Graph, GraphError, Vertex};
use crate::guarding::{
    self, Adversarial, GreedyAway, GuardConfig, GuardError, GuardRobber, RandomWalk,
};
use crate::io;
use crate::rng::RNG_ALGORITHM;

pub const TOOL_VERSION: &str = concat!("cops ", env!("CARGO_PKG_VERSION"));

pub const PROBE_COLUMNS: [&str; 11] = [
    "n",
    "seed",
    "e",
    "alpha_num",
    "alpha_den",
    "genus_upper",
    "genus_lower",
    "bkl_lower_ind",
    "bkl_upper_ind",
    "cop_number",
    "error",
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Limit(String),
    #[error("{0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Output(_) => 1,
            CliError::Limit(_) => 2,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::StateLimit { .. } | GameError::CopLimit(_) => CliError::Limit(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GuardError> for CliError {
    fn from(e: GuardError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Where a command gets its graph from.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    Generated(String),
    File(PathBuf),
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph, CliError> {
        match self {
            GraphSource::Generated(spec) => Ok(generators::gen_named(spec)?),
            GraphSource::File(path) => {
                io::read_graph_file(path).map_err(|e| CliError::Input(e.to_string()))
            }
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))
}

/// `copnumber`: cop number with the solve summary of each component.
pub fn cmd_copnumber(source: &GraphSource, limits: &SolveLimits) -> Result<String, CliError> {
    let g = source.load()?;
    let report = game::cop_number_report(&g, limits)?;
    let mut value = json!({
        "cop_number": report.cop_number,
        "n": g.n(),
        "e": g.edge_count(),
        "components": report.components,
    });
    if let [only] = report.components.as_slice() {
        let summary =
            serde_json::to_value(&only.solve).map_err(|e| CliError::Output(e.to_string()))?;
        if let (Some(obj), Some(extra)) = (value.as_object_mut(), summary.as_object()) {
            obj.extend(extra.clone());
        }
    }
    to_json(&value)
}

/// `bounds`: the full bound report.
pub fn cmd_bounds(source: &GraphSource, genus: Option<i64>) -> Result<String, CliError> {
    let g = source.load()?;
    to_json(&bounds::full_report(&g, genus)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyKind {
    Random,
    Greedy,
    Adversarial,
}

impl std::str::FromStr for PolicyKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(PolicyKind::Random),
            "greedy" | "greedy-away" => Ok(PolicyKind::Greedy),
            "adversarial" => Ok(PolicyKind::Adversarial),
            other => Err(CliError::Input(format!("unknown robber policy `{other}`"))),
        }
    }
}

pub fn parse_path(text: &str) -> Result<Vec<Vertex>, CliError> {
    text.split([',', ' '])
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Input(format!("bad path vertex `{s}`")))
        })
        .collect()
}

/// `guard`: run the shadow strategy against a robber policy. With
/// `trace_dir`, one trace file per trial is written there.
pub fn cmd_guard(
    source: &GraphSource,
    path: &[Vertex],
    policy: PolicyKind,
    cfg: &GuardConfig,
    trace_dir: Option<&std::path::Path>,
) -> Result<String, CliError> {
    let g = source.load()?;
    let mut robber: Box<dyn GuardRobber> = match policy {
        PolicyKind::Random => Box::new(RandomWalk),
        PolicyKind::Greedy => Box::new(GreedyAway),
        PolicyKind::Adversarial => Box::new(Adversarial::default()),
    };
    let cfg = GuardConfig {
        record_traces: trace_dir.is_some(),
        ..cfg.clone()
    };
    let verdict = guarding::verify_guard(&g, path, robber.as_mut(), &cfg)?;
    if let Some(dir) = trace_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Output(format!("{}: {e}", dir.display())))?;
        for (i, trace) in verdict.traces.iter().enumerate() {
            let file = dir.join(format!("trial-{i:06}.json"));
            let text = to_json(trace)?;
            std::fs::write(&file, text)
                .map_err(|e| CliError::Output(format!("{}: {e}", file.display())))?;
        }
    }
    to_json(&verdict)
}

/// `gen`: the graph in edge-list format.
pub fn cmd_gen(source: &GraphSource) -> Result<String, CliError> {
    Ok(io::write_graph(&source.load()?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PRule {
    /// `p = 2.5 ln(n) / n`, capped at 1.
    Corollary,
    Explicit(f64),
}

impl PRule {
    pub fn probability(&self, n: usize) -> f64 {
        match *self {
            PRule::Corollary if n >= 2 => (2.5 * (n as f64).ln() / n as f64).min(1.0),
            PRule::Corollary => 0.0,
            PRule::Explicit(p) => p,
        }
    }

    fn describe(&self) -> String {
        match self {
            PRule::Corollary => "corollary p=min(1,2.5*ln(n)/n)".into(),
            PRule::Explicit(p) => format!("explicit p={p}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProbeConfig {
    pub ns: Vec<usize>,
    pub seeds: Vec<u64>,
    pub p_rule: PRule,
    pub state_limit: u64,
    /// Largest cop count tried for the exact column.
    pub max_k: usize,
}

impl ProbeConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.ns.is_empty() {
            return Err(CliError::Input("no n values given".into()));
        }
        if self.ns.windows(2).any(|w| w[0] > w[1]) {
            return Err(CliError::Input("n values must be sorted".into()));
        }
        if self.seeds.is_empty() {
            return Err(CliError::Input("no seeds given".into()));
        }
        if self.state_limit == 0 {
            return Err(CliError::Input("state limit must be positive".into()));
        }
        if self.max_k == 0 {
            return Err(CliError::Input("max k must be positive".into()));
        }
        if let PRule::Explicit(p) = self.p_rule {
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::Input(format!("probability {p} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeRow {
    pub n: usize,
    pub seed: u64,
    pub e: usize,
    pub alpha_num: u64,
    pub alpha_den: u64,
    pub genus_upper: u64,
    pub genus_lower: u64,
    pub bkl_lower_ind: Option<f64>,
    pub bkl_upper_ind: Option<f64>,
    pub cop_number: Option<usize>,
    pub error: Option<String>,
}

fn probe_row(n: usize, seed: u64, cfg: &ProbeConfig) -> ProbeRow {
    let mut row = ProbeRow {
        n,
        seed,
        e: 0,
        alpha_num: 0,
        alpha_den: 1,
        genus_upper: 0,
        genus_lower: 0,
        bkl_lower_ind: None,
        bkl_upper_ind: None,
        cop_number: None,
        error: None,
    };
    let p = cfg.p_rule.probability(n);
    let g = match generators::gnp(n, p, seed) {
        Ok(g) if g.n() > 0 => g,
        Ok(_) => {
            row.error = Some("empty graph".into());
            return row;
        }
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.e = g.edge_count();
    let alpha = num_rational::Ratio::new(row.e as u64, n as u64);
    row.alpha_num = *alpha.numer();
    row.alpha_den = *alpha.denom();
    for (comp, _) in g.components() {
        match bounds::genus_bounds_from_density(comp.n() as u64, comp.edge_count() as u64) {
            Ok(b) => {
                row.genus_lower += b.orientable.lower;
                row.genus_upper += b.orientable.upper;
            }
            Err(e) => row.error = Some(e.to_string()),
        }
    }
    if let Ok(b) = bounds::bkl_indicators(n as u64, p) {
        row.bkl_lower_ind = Some(b.lower);
        row.bkl_upper_ind = Some(b.upper);
    }
    let limits = SolveLimits {
        state_limit: cfg.state_limit,
        max_k: Some(cfg.max_k),
    };
    match game::cop_number(&g, &limits) {
        Ok(c) => row.cop_number = Some(c),
        Err(GameError::StateLimit { estimate, limit }) => {
            row.error = Some(format!(
                "skipped exact solve: ~{estimate} states > limit {limit}"
            ));
        }
        Err(GameError::CopLimit(k)) => {
            row.error = Some(format!("skipped exact solve: cop number > {k}"));
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// One row per `(n, seed)` in config order; rows are computed in parallel.
pub fn run_probe(cfg: &ProbeConfig) -> Result<Vec<ProbeRow>, CliError> {
    cfg.validate()?;
    let jobs: Vec<(usize, u64)> = cfg
        .ns
        .iter()
        .flat_map(|&n| cfg.seeds.iter().map(move |&s| (n, s)))
        .collect();
    Ok(jobs
        .par_iter()
        .map(|&(n, seed)| probe_row(n, seed, cfg))
        .collect())
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

/// CSV text: `#` metadata lines, the fixed header, then one line per row.
pub fn probe_csv(cfg: &ProbeConfig, rows: &[ProbeRow]) -> Result<String, CliError> {
    let mut out = String::new();
    let ns: Vec<String> = cfg.ns.iter().map(ToString::to_string).collect();
    let seeds: Vec<String> = cfg.seeds.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "# tool: {TOOL_VERSION}");
    let _ = writeln!(out, "# rng: {RNG_ALGORITHM}");
    let _ = writeln!(
        out,
        "# config: ns={} seeds={} p_rule={} state_limit={} max_k={}",
        ns.join(","),
        seeds.join(","),
        cfg.p_rule.describe(),
        cfg.state_limit,
        cfg.max_k
    );
    let _ = writeln!(out, "# log: natural logarithm wherever log(n) appears");
    let _ = writeln!(
        out,
        "# genus_*: density bounds summed over components; bkl_*_ind: asymptotic indicators, not bounds"
    );
    let mut writer = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Output(e.to_string());
    writer.write_record(PROBE_COLUMNS).map_err(csv_err)?;
    for r in rows {
        writer
            .write_record([
                r.n.to_string(),
                r.seed.to_string(),
                r.e.to_string(),
                r.alpha_num.to_string(),
                r.alpha_den.to_string(),
                r.genus_upper.to_string(),
                r.genus_lower.to_string(),
                opt(&r.bkl_lower_ind),
                opt(&r.bkl_upper_ind),
                opt(&r.cop_number),
                opt(&r.error),
            ])
            .map_err(csv_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Output(e.to_string()))?;
    out.push_str(&String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))?);
    Ok(out)
}

/// `probe`: the sweep as CSV (or JSON rows).
pub fn cmd_probe(cfg: &ProbeConfig, as_json: bool) -> Result<String, CliError> {
    let rows = run_probe(cfg)?;
    if as_json {
        to_json(&rows)
    } else {
        probe_csv(cfg, &rows)
    }
}
