//! Simple undirected graphs on dense vertex ids `0..n` and the metric
//! queries the rest of the crate is built on.

use std::collections::VecDeque;

use num_rational::Ratio;
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("q = {0} is not prime (only prime orders are supported)")]
    NotPrime(u64),
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
}

/// Immutable simple undirected graph.
///
/// Neighbor lists are kept sorted, so adjacency tests are a binary search and
/// iteration order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

/// Degree, girth and density summary of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMetrics {
    pub n: usize,
    pub edge_count: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// `None` for forests.
    pub girth: Option<usize>,
    /// Exact edge density e/n.
    pub alpha: Ratio<u64>,
    pub connected: bool,
    pub component_ids: Vec<usize>,
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Checked constructor: rejects self-loops, repeated edges and
    /// out-of-range endpoints. Edge orientation is irrelevant.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, edge_count })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// `v` followed by its neighbors, sorted.
    pub fn closed_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.degree(v) + 1);
        out.push(v);
        out.extend_from_slice(&self.adj[v]);
        out.sort_unstable();
        out
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// BFS hop distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: Vertex) -> Result<Vec<Option<usize>>, GraphError> {
        self.check_vertex(source)?;
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Length of a shortest cycle, `None` for forests.
    ///
    /// One BFS per root; the first non-tree edge `(u, w)` seen from root `s`
    /// closes a closed walk of length `d(u) + d(w) + 1`, and the minimum over
    /// all roots is exactly the girth.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                // Nothing shorter can be found beyond this depth.
                if let Some(b) = best {
                    if 2 * dist[u] >= b {
                        break 'bfs;
                    }
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// Per-vertex component labels, numbered in order of smallest vertex.
    pub fn component_ids(&self) -> Vec<usize> {
        let mut ids = vec![usize::MAX; self.n()];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n() {
            if ids[s] != usize::MAX {
                continue;
            }
            ids[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if ids[w] == usize::MAX {
                        ids[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        ids
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.component_ids().iter().all(|&c| c == 0)
    }

    /// Connected components as relabeled graphs, paired with the original
    /// vertex ids (sorted) each new id maps back to.
    pub fn components(&self) -> Vec<(Graph, Vec<Vertex>)> {
        let ids = self.component_ids();
        let count = ids.iter().max().map_or(0, |m| m + 1);
        let mut members = vec![Vec::new(); count];
        for (v, &c) in ids.iter().enumerate() {
            members[c].push(v);
        }
        members
            .into_iter()
            .map(|vs| (self.induced_subgraph(&vs), vs))
            .collect()
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut edge_count = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX {
                    adj[i].push(index[w]);
                    if index[w] > i {
                        edge_count += 1;
                    }
                }
            }
            adj[i].sort_unstable();
        }
        Graph { adj, edge_count }
    }

    pub fn metrics(&self) -> Result<GraphMetrics, GraphError> {
        if self.n() == 0 {
            return Err(GraphError::Empty);
        }
        let degrees = (0..self.n()).map(|v| self.degree(v));
        let component_ids = self.component_ids();
        Ok(GraphMetrics {
            n: self.n(),
            edge_count: self.edge_count,
            min_degree: degrees.clone().min().unwrap_or(0),
            max_degree: degrees.max().unwrap_or(0),
            girth: self.girth(),
            alpha: Ratio::new(self.edge_count as u64, self.n() as u64),
            connected: component_ids.iter().all(|&c| c == 0),
            component_ids,
        })
    }

    /// Whether `path` is isometric: for every pair of its vertices the
    /// offset along the path equals the graph distance.
    ///
    /// Errors when `path` is not a simple path of the graph.
    pub fn check_isometric_path(&self, path: &[Vertex]) -> Result<bool, GraphError> {
        if path.is_empty() {
            return Err(GraphError::NotAPath("empty vertex sequence".into()));
        }
        let mut seen = vec![false; self.n()];
        for &v in path {
            self.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(GraphError::NotAPath(format!("vertex {v} repeats")));
            }
        }
        if let Some(w) = path.windows(2).find(|w| !self.has_edge(w[0], w[1])) {
            return Err(GraphError::NotAPath(format!(
                "{} and {} are not adjacent",
                w[0], w[1]
            )));
        }
        for (i, &u) in path.iter().enumerate() {
            let dist = self.distances_from(u)?;
            for (j, &v) in path.iter().enumerate().skip(i + 1) {
                if dist[v] != Some(j - i) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn cycle_distances() {
        let c6 = generators::cycle(6).unwrap();
        let d: Vec<_> = c6
            .distances_from(0)
            .unwrap()
            .into_iter()
            .flatten()
            .collect();
        assert_eq!(d, vec![0, 1, 2, 3, 2, 1]);
        assert_eq!(Graph::empty(1).distances_from(0).unwrap(), vec![Some(0)]);
        assert!(c6.distances_from(6).is_err());
    }

    #[test]
    fn unreachable_is_none() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(g.distances_from(0).unwrap(), vec![Some(0), Some(1), None]);
    }

    #[test]
    fn girth_of_small_families() {
        assert_eq!(generators::cycle(5).unwrap().girth(), Some(5));
        assert_eq!(generators::path(7).unwrap().girth(), None);
        assert_eq!(generators::complete(4).unwrap().girth(), Some(3));
        assert_eq!(generators::grid(3, 3).unwrap().girth(), Some(4));
    }

    #[test]
    fn metrics_k4_and_empty() {
        let m = generators::complete(4).unwrap().metrics().unwrap();
        assert_eq!((m.min_degree, m.max_degree, m.girth), (3, 3, Some(3)));
        assert_eq!(m.alpha, Ratio::new(6, 4));
        let e = Graph::empty(5).metrics().unwrap();
        assert_eq!((e.min_degree, e.girth, e.connected), (0, None, false));
        assert_eq!(Graph::empty(0).metrics(), Err(GraphError::Empty));
    }

    #[test]
    fn isometric_paths_on_c6() {
        let c6 = generators::cycle(6).unwrap();
        assert!(c6.check_isometric_path(&[0, 1, 2, 3]).unwrap());
        assert!(!c6.check_isometric_path(&[0, 1, 2, 3, 4]).unwrap());
        assert!(c6.check_isometric_path(&[0, 2]).is_err());
        assert!(c6.check_isometric_path(&[0, 1, 0]).is_err());
        assert!(c6.check_isometric_path(&[]).is_err());
        assert!(c6.check_isometric_path(&[4]).unwrap());
    }

    #[test]
    fn components_relabel() {
        let g = Graph::from_edges(5, [(0, 3), (1, 4)]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].1, vec![0, 3]);
        assert_eq!(comps[0].0.edge_count(), 1);
        assert_eq!(comps[2].1, vec![2]);
        assert!(!g.is_connected());
    }
}
