//! Deterministic graph families used as test witnesses and experiment inputs.

use std::collections::HashSet;
use std::str::FromStr;

use rand::Rng;

use crate::graph::{Graph, GraphError, Vertex};
use crate::rng;

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameter(msg.into())
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("path needs at least one vertex"));
    }
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("cycle needs at least three vertices"));
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("complete graph needs at least one vertex"));
    }
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `rows x cols` grid; vertex `(r, c)` is `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph, GraphError> {
    if rows == 0 || cols == 0 {
        return Err(invalid("grid dimensions must be positive"));
    }
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::from_edges(rows * cols, edges)
}

pub fn hypercube(dim: usize) -> Result<Graph, GraphError> {
    if dim > 16 {
        return Err(invalid("hypercube dimension above 16"));
    }
    let n = 1usize << dim;
    let edges = (0..n).flat_map(|u| {
        (0..dim)
            .map(move |b| (u, u ^ (1 << b)))
            .filter(|&(u, v)| u < v)
    });
    Graph::from_edges(n, edges)
}

/// Kneser graph K(5,2): 2-subsets of {0..4} in lexicographic order, adjacent
/// when disjoint.
pub fn petersen() -> Graph {
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .collect();
    let mut edges = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(10, edges).expect("Kneser construction is simple")
}

/// Incidence graph of the Fano plane.
pub fn heawood() -> Graph {
    projective_incidence(2).expect("2 is prime")
}

/// Generalized Petersen graph GP(10, 2): outer 10-cycle `0..10`, spokes
/// `i - (10 + i)`, inner vertices joined at step 2.
pub fn dodecahedron() -> Graph {
    let mut edges = Vec::with_capacity(30);
    for i in 0..10 {
        edges.push((i, (i + 1) % 10));
        edges.push((i, 10 + i));
        edges.push((10 + i, 10 + (i + 2) % 10));
    }
    Graph::from_edges(20, edges).expect("GP(10,2) is simple")
}

/// Random recursive tree: vertex `v > 0` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("tree needs at least one vertex"));
    }
    let mut rng = rng::seeded(seed);
    Graph::from_edges(n, (1..n).map(|v| (rng.gen_range(0..v), v)))
}

/// Random maximal planar graph on `n >= 3` vertices.
///
/// Starts from a triangle, inserts each new vertex into a uniformly chosen
/// face, then performs `2n` random edge flips (a flip is skipped when the new
/// diagonal already exists). Faces are kept as counter-clockwise triples.
pub fn random_planar_triangulation(n: usize, seed: u64) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("triangulation needs at least three vertices"));
    }
    let mut rng = rng::seeded(seed);
    // Both sides of the initial triangle are faces.
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    let mut edges: HashSet<(Vertex, Vertex)> = [(0, 1), (1, 2), (0, 2)].into_iter().collect();
    let key = |a: Vertex, b: Vertex| (a.min(b), a.max(b));

    for v in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(f);
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
        edges.extend([key(a, v), key(b, v), key(c, v)]);
    }

    for _ in 0..2 * n {
        let f = rng.gen_range(0..faces.len());
        let side = rng.gen_range(0..3);
        let [x, y, z] = faces[f];
        let (a, b, c) = match side {
            0 => (x, y, z),
            1 => (y, z, x),
            _ => (z, x, y),
        };
        // The face across edge a->b traverses it as b->a.
        let Some(g) = faces.iter().position(|t| {
            (t[0] == b && t[1] == a) || (t[1] == b && t[2] == a) || (t[2] == b && t[0] == a)
        }) else {
            continue;
        };
        let t = faces[g];
        let d = t.iter().copied().find(|&w| w != a && w != b).unwrap_or(a);
        if c == d || edges.contains(&key(c, d)) {
            continue;
        }
        edges.remove(&key(a, b));
        edges.insert(key(c, d));
        faces[f] = [c, a, d];
        faces[g] = [d, b, c];
    }

    let mut list: Vec<_> = edges.into_iter().collect();
    list.sort_unstable();
    Graph::from_edges(n, list)
}

fn is_prime(q: u64) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// Incidence (Levi) graph of the projective plane PG(2, q) for prime `q`.
///
/// Points and lines are both the normalized nonzero vectors of GF(q)^3 (first
/// nonzero coordinate equal to 1). Points take ids `0..N`, lines `N..2N` with
/// `N = q^2 + q + 1`; point `x` lies on line `l` when `x . l = 0 (mod q)`.
pub fn projective_incidence(q: u64) -> Result<Graph, GraphError> {
    if !is_prime(q) {
        return Err(GraphError::NotPrime(q));
    }
    let mut vectors = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let first = [a, b, c].into_iter().find(|&x| x != 0);
                if first == Some(1) {
                    vectors.push([a, b, c]);
                }
            }
        }
    }
    let count = vectors.len();
    let mut edges = Vec::new();
    for (p, x) in vectors.iter().enumerate() {
        for (l, y) in vectors.iter().enumerate() {
            if (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) % q == 0 {
                edges.push((p, count + l));
            }
        }
    }
    Graph::from_edges(2 * count, edges)
}

/// Erdős–Rényi G(n, p): each pair `u < v`, in lexicographic order, becomes an
/// edge with probability `p`, using stream 0 of the seeded generator.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidProbability(p));
    }
    let mut rng = rng::seeded(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// A named family with its parameters, parsed from `family[:param...]`.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Grid(usize, usize),
    Hypercube(usize),
    Petersen,
    Heawood,
    Dodecahedron,
    Projective(u64),
    TreeRandom { n: usize, seed: u64 },
    Triangulation { n: usize, seed: u64 },
    Gnp { n: usize, p: f64, seed: u64 },
}

impl Family {
    pub fn generate(&self) -> Result<Graph, GraphError> {
        match *self {
            Family::Path(n) => path(n),
            Family::Cycle(n) => cycle(n),
            Family::Complete(n) => complete(n),
            Family::Grid(r, c) => grid(r, c),
            Family::Hypercube(d) => hypercube(d),
            Family::Petersen => Ok(petersen()),
            Family::Heawood => Ok(heawood()),
            Family::Dodecahedron => Ok(dodecahedron()),
            Family::Projective(q) => projective_incidence(q),
            Family::TreeRandom { n, seed } => random_tree(n, seed),
            Family::Triangulation { n, seed } => random_planar_triangulation(n, seed),
            Family::Gnp { n, p, seed } => gnp(n, p, seed),
        }
    }
}

fn parse_param<T: FromStr>(family: &str, raw: Option<&str>, what: &str) -> Result<T, GraphError> {
    let raw = raw.ok_or_else(|| invalid(format!("{family}: missing {what}")))?;
    raw.parse()
        .map_err(|_| invalid(format!("{family}: bad {what} `{raw}`")))
}

impl FromStr for Family {
    type Err = GraphError;

    /// `path:5`, `cycle:4`, `complete:8`, `grid:3:3` (or `grid:3x3`),
    /// `hypercube:3`, `petersen`, `heawood`, `dodecahedron`, `projective:3`,
    /// `tree-random:n:seed`, `triangulation:n:seed`, `gnp:n:p:seed`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.trim().split([':', 'x']);
        let name = parts.next().unwrap_or_default().to_ascii_lowercase();
        // `x` only separates grid dimensions; re-split everything else on ':'.
        let rest: Vec<&str> = if name == "grid" {
            parts.collect()
        } else {
            s.trim().split(':').skip(1).collect()
        };
        let mut it = rest.iter().copied();
        let family = match name.as_str() {
            "path" => Family::Path(parse_param(&name, it.next(), "n")?),
            "cycle" => Family::Cycle(parse_param(&name, it.next(), "n")?),
            "complete" => Family::Complete(parse_param(&name, it.next(), "n")?),
            "grid" => Family::Grid(
                parse_param(&name, it.next(), "rows")?,
                parse_param(&name, it.next(), "cols")?,
            ),
            "hypercube" => Family::Hypercube(parse_param(&name, it.next(), "dimension")?),
            "petersen" => Family::Petersen,
            "heawood" => Family::Heawood,
            "dodecahedron" => Family::Dodecahedron,
            "projective" => Family::Projective(parse_param(&name, it.next(), "q")?),
            "tree-random" => Family::TreeRandom {
                n: parse_param(&name, it.next(), "n")?,
                seed: parse_param(&name, it.next(), "seed")?,
            },
            "triangulation" => Family::Triangulation {
                n: parse_param(&name, it.next(), "n")?,
                seed: parse_param(&name, it.next(), "seed")?,
            },
            "gnp" => Family::Gnp {
                n: parse_param(&name, it.next(), "n")?,
                p: parse_param(&name, it.next(), "p")?,
                seed: parse_param(&name, it.next(), "seed")?,
            },
            _ => return Err(GraphError::UnknownFamily(name)),
        };
        if let Some(extra) = it.next() {
            return Err(invalid(format!("{name}: unexpected parameter `{extra}`")));
        }
        Ok(family)
    }
}

/// Generate a graph from a `family[:params]` description.
pub fn gen_named(spec: &str) -> Result<Graph, GraphError> {
    spec.parse::<Family>()?.generate()
}
