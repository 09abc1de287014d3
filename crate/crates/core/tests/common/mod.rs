//! Test-side oracles, written without reference to the library's solver.
#![allow(dead_code)]

use std::collections::HashSet;

use cops_core::Graph;

/// Adjacency as bitmasks; small graphs only.
fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect()
}

/// Color refinement to a stable partition. Colors stay dense and their
/// order only depends on the isomorphism type of (graph, initial colors).
fn refine(adj: &[u32], colors: &mut Vec<usize>) {
    let n = adj.len();
    loop {
        let classes = colors.iter().max().map_or(0, |&c| c + 1);
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut counts = vec![0; classes];
                for u in 0..n {
                    if adj[v] >> u & 1 == 1 {
                        counts[colors[u]] += 1;
                    }
                }
                (colors[v], counts)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| sorted.binary_search(s).unwrap())
            .collect();
        let done = sorted.len() == classes;
        *colors = next;
        if done {
            return;
        }
    }
}

fn search(adj: &[u32], mut colors: Vec<usize>, best: &mut u64) {
    refine(adj, &mut colors);
    let n = adj.len();
    let classes = colors.iter().max().map_or(0, |&c| c + 1);
    if classes == n {
        let mut at = vec![0; n];
        for v in 0..n {
            at[colors[v]] = v;
        }
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if adj[at[i]] >> at[j] & 1 == 1 {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        *best = (*best).max(code);
        return;
    }
    let mut sizes = vec![0; classes];
    for &c in &colors {
        sizes[c] += 1;
    }
    let target = (0..classes).find(|&c| sizes[c] > 1).unwrap();
    for v in (0..n).filter(|&v| colors[v] == target) {
        let split: Vec<usize> = (0..n)
            .map(|u| 2 * colors[u] + usize::from(colors[u] == target && u != v))
            .collect();
        search(adj, split, best);
    }
}

/// Canonical code: equal iff the graphs are isomorphic (n <= 11).
pub fn canonical_code(g: &Graph) -> u64 {
    assert!(g.n() <= 11);
    let mut best = 0;
    search(&masks(g), vec![0; g.n()], &mut best);
    best
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices. Every connected graph has a vertex whose removal leaves it
/// connected, so extending the classes on `n - 1` vertices reaches all.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=9).contains(&n));
    let mut level = vec![Graph::empty(1)];
    for m in 1..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for subset in 1u32..(1 << m) {
                let mut edges: Vec<(usize, usize)> = g.edges().collect();
                edges.extend((0..m).filter(|&u| subset >> u & 1 == 1).map(|u| (u, m)));
                let h = Graph::from_edges(m + 1, edges).unwrap();
                if seen.insert(canonical_code(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

pub fn catalog(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

/// Exhaustive minimax by value iteration over ordered cop tuples.
pub struct Oracle {
    n: usize,
    k: usize,
    /// Cop to move, indexed by `tuple * n + robber`; `None` = never captured.
    pub cop_times: Vec<Option<u32>>,
    pub robber_times: Vec<Option<u32>>,
}

impl Oracle {
    pub fn new(g: &Graph, k: usize) -> Oracle {
        let n = g.n();
        let tuples: Vec<Vec<usize>> = (0..n.pow(k as u32))
            .map(|mut t| {
                (0..k)
                    .map(|_| {
                        let c = t % n;
                        t /= n;
                        c
                    })
                    .collect()
            })
            .collect();
        let index = |t: &[usize]| t.iter().rev().fold(0, |acc, &c| acc * n + c);
        let closed: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut c = g.neighbors(v).to_vec();
                c.push(v);
                c
            })
            .collect();
        let succ: Vec<Vec<usize>> = tuples
            .iter()
            .map(|t| {
                let mut out = vec![Vec::new()];
                for &c in t {
                    out = out
                        .into_iter()
                        .flat_map(|p: Vec<usize>| {
                            closed[c].iter().map(move |&d| {
                                let mut q = p.clone();
                                q.push(d);
                                q
                            })
                        })
                        .collect();
                }
                out.iter().map(|q| index(q)).collect()
            })
            .collect();
        const INF: u32 = u32::MAX;
        let size = tuples.len() * n;
        let caught = |t: usize, r: usize| tuples[t].contains(&r);
        let mut tc = vec![INF; size];
        let mut tr = vec![INF; size];
        loop {
            let mut changed = false;
            for t in 0..tuples.len() {
                for r in 0..n {
                    let c_new = if caught(t, r) {
                        0
                    } else {
                        let m = succ[t].iter().map(|&s| tr[s * n + r]).min().unwrap();
                        if m == INF {
                            INF
                        } else {
                            m + 1
                        }
                    };
                    let r_new = if caught(t, r) {
                        0
                    } else {
                        closed[r].iter().map(|&s| tc[t * n + s]).max().unwrap()
                    };
                    changed |= c_new != tc[t * n + r] || r_new != tr[t * n + r];
                    tc[t * n + r] = c_new;
                    tr[t * n + r] = r_new;
                }
            }
            if !changed {
                break;
            }
        }
        let wrap = |v: Vec<u32>| v.into_iter().map(|x| (x != INF).then_some(x)).collect();
        Oracle {
            n,
            k,
            cop_times: wrap(tc),
            robber_times: wrap(tr),
        }
    }

    pub fn tuple_index(&self, cops: &[usize]) -> usize {
        cops.iter().rev().fold(0, |acc, &c| acc * self.n + c)
    }

    pub fn cop_time(&self, cops: &[usize], robber: usize) -> Option<u32> {
        self.cop_times[self.tuple_index(cops) * self.n + robber]
    }

    pub fn robber_time(&self, cops: &[usize], robber: usize) -> Option<u32> {
        self.robber_times[self.tuple_index(cops) * self.n + robber]
    }

    /// Best placement value: min over cop tuples of the worst robber start.
    pub fn value(&self) -> Option<u32> {
        (0..self.n.pow(self.k as u32))
            .filter_map(|t| {
                (0..self.n)
                    .map(|r| self.cop_times[t * self.n + r])
                    .collect::<Option<Vec<u32>>>()
                    .map(|v| v.into_iter().max().unwrap())
            })
            .min()
    }
}

/// Orientable genus of K_n.
pub fn complete_genus(n: u64) -> u64 {
    ((n.saturating_sub(3)) * (n.saturating_sub(4))).div_ceil(12)
}

/// Nonorientable genus of K_n for n >= 3, n != 7 (K_7 needs 3).
pub fn complete_nonorientable_genus(n: u64) -> u64 {
    assert!(n >= 3);
    if n == 7 {
        return 3;
    }
    ((n - 3) * (n - 4)).div_ceil(6)
}

/// Minimum degree.
pub fn min_degree(g: &Graph) -> usize {
    (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0)
}
