//! Closed-form cop-number and genus bounds.
//!
//! Density bounds are computed in integers: with `alpha = e / n`, the
//! quantity `(alpha - 3) n` is just `e - 3n`, so no rounding is involved.
//! Random-graph quantities are only asymptotic and are reported as
//! indicators, never used in a certificate.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphMetrics};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("genus must be nonnegative, got {0}")]
    NegativeGenus(i64),
    #[error("need n >= 2, got {0}")]
    TooFewVertices(u64),
    #[error("probability {0} outside (0, 1]")]
    InvalidProbability(f64),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Proven,
    Conjectural,
    AsymptoticIndicator,
}

/// One bound value with its provenance and a citation string.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bound<T> {
    pub value: Option<T>,
    pub provenance: Provenance,
    pub applicable: bool,
    pub source: &'static str,
}

impl<T> Bound<T> {
    fn new(value: Option<T>, provenance: Provenance, source: &'static str) -> Self {
        Bound {
            applicable: value.is_some(),
            value,
            provenance,
            source,
        }
    }
}

fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -(-a).div_euclid(b)
}

/// Lower bound on the cop number of a graph of girth at least 5: its minimum
/// degree. `None` when the girth is below 5.
pub fn girth5_cop_lower(metrics: &GraphMetrics) -> Option<u64> {
    match metrics.girth {
        Some(g) if g < 5 => None,
        _ => Some(metrics.min_degree as u64),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenusInterval {
    pub lower: u64,
    pub upper: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DensityGenusBounds {
    pub orientable: GenusInterval,
    pub nonorientable: GenusInterval,
}

/// Genus bounds of a connected graph with `n` vertices and `e` edges.
///
/// Lower: the least integer strictly above `(alpha - 3) n / 6` (orientable)
/// or `(alpha - 3) n / 3` (nonorientable) when `alpha > 3`, else 0.
/// Upper: `floor((alpha - 1) n) = e - n` when `alpha > 1`, else 0, never
/// below the lower bound.
pub fn genus_bounds_from_density(n: u64, e: u64) -> Result<DensityGenusBounds, BoundsError> {
    if n == 0 {
        return Err(BoundsError::Empty);
    }
    let (n, e) = (n as i128, e as i128);
    let excess = e - 3 * n;
    let strict_above = |den: i128| -> u64 {
        if excess > 0 {
            (floor_div(excess, den) + 1) as u64
        } else {
            0
        }
    };
    let upper = if e > n { (e - n) as u64 } else { 0 };
    let o_lower = strict_above(6);
    let no_lower = strict_above(3);
    Ok(DensityGenusBounds {
        orientable: GenusInterval {
            lower: o_lower,
            upper: upper.max(o_lower),
        },
        nonorientable: GenusInterval {
            lower: no_lower,
            upper: upper.max(no_lower),
        },
    })
}

/// [`genus_bounds_from_density`] on a connected graph.
pub fn density_genus_bounds(g: &Graph) -> Result<DensityGenusBounds, BoundsError> {
    if g.n() == 0 {
        return Err(BoundsError::Empty);
    }
    if !g.is_connected() {
        return Err(BoundsError::Disconnected);
    }
    genus_bounds_from_density(g.n() as u64, g.edge_count() as u64)
}

/// Genus lower bound for graphs of girth at least 5:
/// `max(ceil((3 delta / 10 - 1) n), ceil((3 delta^3 - 10 delta^2) / 10))`,
/// floored at 0. `None` when the girth is below 5.
///
/// The linear term reproduces the published statement. Redoing the face count
/// (`f <= 2e/5`, `e >= delta n / 2`) only gives `g >= (3 delta / 20 - 1/2) n + 1`,
/// half as strong, so on dense girth-5 graphs this value can exceed the
/// true genus.
pub fn genus_lower_girth5(n: u64, delta: u64, girth: Option<usize>) -> Option<u64> {
    if matches!(girth, Some(g) if g < 5) {
        return None;
    }
    let (n, d) = (n as i128, delta as i128);
    let linear = ceil_div((3 * d - 10) * n, 10);
    let cubic = ceil_div(3 * d * d * d - 10 * d * d, 10);
    Some(linear.max(cubic).max(0) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CopUpperBounds {
    /// `2g + 3`, proven.
    pub two_g_plus_3: u64,
    /// `floor(3g/2) + 3`, proven.
    pub schroder: u64,
    /// `g + 3`, conjectural.
    pub conjectured: u64,
}

impl CopUpperBounds {
    /// The smallest bound that is proven.
    pub fn min_proven(&self) -> u64 {
        self.two_g_plus_3.min(self.schroder)
    }

    fn add(self, other: CopUpperBounds) -> CopUpperBounds {
        CopUpperBounds {
            two_g_plus_3: self.two_g_plus_3 + other.two_g_plus_3,
            schroder: self.schroder + other.schroder,
            conjectured: self.conjectured + other.conjectured,
        }
    }
}

pub fn cop_upper_from_genus(genus: i64) -> Result<CopUpperBounds, BoundsError> {
    if genus < 0 {
        return Err(BoundsError::NegativeGenus(genus));
    }
    let g = genus as u64;
    Ok(CopUpperBounds {
        two_g_plus_3: 2 * g + 3,
        schroder: 3 * g / 2 + 3,
        conjectured: g + 3,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BklIndicators {
    /// `(np)^-2 * sqrt(n)`, the lower bound with its `n^{-o(1)}` factor dropped.
    pub lower: f64,
    /// `160000 * sqrt(n) * ln(n)`.
    pub upper: f64,
    /// `2.1 ln(n) / n`.
    pub threshold: f64,
    /// Whether `p` reaches the threshold the asymptotic statement assumes.
    pub hypothesis_satisfied: bool,
}

/// Finite-n evaluation of the random-graph cop-number bounds. Both values are
/// indicators only; logarithms are natural.
pub fn bkl_indicators(n: u64, p: f64) -> Result<BklIndicators, BoundsError> {
    if n < 2 {
        return Err(BoundsError::TooFewVertices(n));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(BoundsError::InvalidProbability(p));
    }
    let nf = n as f64;
    let threshold = 2.1 * nf.ln() / nf;
    Ok(BklIndicators {
        lower: nf.sqrt() / (nf * p).powi(2),
        upper: 160_000.0 * nf.sqrt() * nf.ln(),
        threshold,
        hypothesis_satisfied: p >= threshold,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenusSource {
    /// Supplied by the caller.
    Known,
    /// Density upper bound substituted for the genus.
    ViaUpperBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Certificates {
    /// Girth-5 lower bound (if any) is at most the least proven upper bound.
    pub cop_bounds_consistent: bool,
    /// Every genus lower bound is at most the matching upper bound, and a
    /// known genus (if given) lies in the orientable interval.
    pub genus_bounds_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMetadata {
    pub log_base: &'static str,
    /// Density bounds were summed over components.
    pub per_component: bool,
    pub genus_source: GenusSource,
    /// Edge probability used for the random-graph indicators (`e / C(n,2)`).
    pub edge_probability: Option<f64>,
    pub bkl_hypothesis_satisfied: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub e: u64,
    pub alpha_num: u64,
    pub alpha_den: u64,
    pub delta: u64,
    pub girth: Option<u64>,
    pub c_lower_girth5: Bound<u64>,
    pub genus_lower: Bound<u64>,
    pub genus_upper: Bound<u64>,
    pub nonorientable_lower: Bound<u64>,
    pub nonorientable_upper: Bound<u64>,
    pub genus_lower_girth5: Bound<u64>,
    pub c_upper_2g3: Bound<u64>,
    pub c_upper_schroder: Bound<u64>,
    pub c_upper_conjectured: Bound<u64>,
    pub bkl_lower_indicator: Bound<f64>,
    pub bkl_upper_indicator: Bound<f64>,
    pub certificates: Certificates,
    pub metadata: ReportMetadata,
}

const SRC_GIRTH5_COP: &str = "girth >= 5 implies c(G) >= min degree";
const SRC_DENSITY: &str = "Euler formula density bounds, (alpha-3)n/6 < g <= (alpha-1)n";
const SRC_DENSITY_NO: &str = "Euler formula density bounds, (alpha-3)n/3 < g~ <= (alpha-1)n";
const SRC_GIRTH5_GENUS: &str = "girth >= 5 genus bound, max((3d/10-1)n, (3d^3-10d^2)/10)";
const SRC_2G3: &str = "shortest non-contractible cycle guarding, c <= 2g+3";
const SRC_SCHRODER: &str = "Schroeder, c <= floor(3g/2)+3";
const SRC_CONJ: &str = "Schroeder's conjecture, c <= g+3";
const SRC_BKL: &str = "Bollobas-Kun-Leader random graph bounds (asymptotic, o(1) dropped)";

/// Every bound applicable to `g`. Density genus bounds are summed over
/// components for disconnected graphs; without `known_genus` the cop upper
/// bounds use the density genus upper bound, component by component.
pub fn full_report(g: &Graph, known_genus: Option<i64>) -> Result<BoundReport, BoundsError> {
    let metrics = g.metrics().map_err(|_| BoundsError::Empty)?;
    let known = known_genus.map(cop_upper_from_genus).transpose()?;

    let components = g.components();
    let mut density = DensityGenusBounds {
        orientable: GenusInterval { lower: 0, upper: 0 },
        nonorientable: GenusInterval { lower: 0, upper: 0 },
    };
    let mut via_upper: Option<CopUpperBounds> = None;
    for (comp, _) in &components {
        let b = genus_bounds_from_density(comp.n() as u64, comp.edge_count() as u64)?;
        density.orientable.lower += b.orientable.lower;
        density.orientable.upper += b.orientable.upper;
        density.nonorientable.lower += b.nonorientable.lower;
        density.nonorientable.upper += b.nonorientable.upper;
        let c = cop_upper_from_genus(b.orientable.upper as i64)?;
        via_upper = Some(via_upper.map_or(c, |acc| acc.add(c)));
    }
    let cop_uppers = known.or(via_upper).expect("graph has a component");

    let delta = metrics.min_degree as u64;
    let c_lower = girth5_cop_lower(&metrics);
    let g5_genus = genus_lower_girth5(metrics.n as u64, delta, metrics.girth);

    let (n, e) = (metrics.n as u64, metrics.edge_count as u64);
    let pairs = n * n.saturating_sub(1) / 2;
    let edge_probability = (pairs > 0 && e > 0).then(|| e as f64 / pairs as f64);
    let bkl = edge_probability.and_then(|p| bkl_indicators(n, p).ok());

    let cop_bounds_consistent = c_lower.is_none_or(|lo| lo <= cop_uppers.min_proven());
    let mut genus_bounds_consistent = density.orientable.lower <= density.orientable.upper
        && density.nonorientable.lower <= density.nonorientable.upper
        && g5_genus.is_none_or(|lo| lo <= density.orientable.upper);
    if let Some(kg) = known_genus {
        let kg = kg as u64;
        genus_bounds_consistent &= density.orientable.lower <= kg && kg <= density.orientable.upper;
        genus_bounds_consistent &= g5_genus.is_none_or(|lo| lo <= kg);
    }

    let alpha = metrics.alpha;
    Ok(BoundReport {
        n,
        e,
        alpha_num: *alpha.numer(),
        alpha_den: *alpha.denom(),
        delta,
        girth: metrics.girth.map(|x| x as u64),
        c_lower_girth5: Bound::new(c_lower, Provenance::Proven, SRC_GIRTH5_COP),
        genus_lower: Bound::new(
            Some(density.orientable.lower),
            Provenance::Proven,
            SRC_DENSITY,
        ),
        genus_upper: Bound::new(
            Some(density.orientable.upper),
            Provenance::Proven,
            SRC_DENSITY,
        ),
        nonorientable_lower: Bound::new(
            Some(density.nonorientable.lower),
            Provenance::Proven,
            SRC_DENSITY_NO,
        ),
        nonorientable_upper: Bound::new(
            Some(density.nonorientable.upper),
            Provenance::Proven,
            SRC_DENSITY_NO,
        ),
        genus_lower_girth5: Bound::new(g5_genus, Provenance::Proven, SRC_GIRTH5_GENUS),
        c_upper_2g3: Bound::new(Some(cop_uppers.two_g_plus_3), Provenance::Proven, SRC_2G3),
        c_upper_schroder: Bound::new(Some(cop_uppers.schroder), Provenance::Proven, SRC_SCHRODER),
        c_upper_conjectured: Bound::new(
            Some(cop_uppers.conjectured),
            Provenance::Conjectural,
            SRC_CONJ,
        ),
        bkl_lower_indicator: Bound::new(
            bkl.map(|b| b.lower),
            Provenance::AsymptoticIndicator,
            SRC_BKL,
        ),
        bkl_upper_indicator: Bound::new(
            bkl.map(|b| b.upper),
            Provenance::AsymptoticIndicator,
            SRC_BKL,
        ),
        certificates: Certificates {
            cop_bounds_consistent,
            genus_bounds_consistent,
        },
        metadata: ReportMetadata {
            log_base: "natural",
            per_component: components.len() > 1,
            genus_source: if known_genus.is_some() {
                GenusSource::Known
            } else {
                GenusSource::ViaUpperBound
            },
            edge_probability,
            bkl_hypothesis_satisfied: bkl.map(|b| b.hypothesis_satisfied),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, dodecahedron, gnp, heawood, petersen};

    #[test]
    fn girth5_cop_lower_examples() {
        assert_eq!(girth5_cop_lower(&petersen().metrics().unwrap()), Some(3));
        assert_eq!(girth5_cop_lower(&heawood().metrics().unwrap()), Some(3));
        assert_eq!(
            girth5_cop_lower(&complete(4).unwrap().metrics().unwrap()),
            None
        );
    }

    #[test]
    fn density_examples() {
        let b = genus_bounds_from_density(10, 40).unwrap();
        assert_eq!(
            b.orientable,
            GenusInterval {
                lower: 2,
                upper: 30
            }
        );
        let k8 = genus_bounds_from_density(8, 28).unwrap();
        assert_eq!(
            k8.orientable,
            GenusInterval {
                lower: 1,
                upper: 20
            }
        );
        assert_eq!(
            genus_bounds_from_density(10, 15).unwrap().orientable.lower,
            0
        );
        // Exactly alpha = 3 is not strictly above.
        assert_eq!(
            genus_bounds_from_density(10, 30).unwrap().orientable.lower,
            0
        );
        // (e - 3n)/6 integral: strict inequality bumps by one.
        assert_eq!(
            genus_bounds_from_density(12, 66).unwrap().orientable.lower,
            6
        );
        assert_eq!(
            genus_bounds_from_density(12, 66)
                .unwrap()
                .nonorientable
                .lower,
            11
        );
        assert_eq!(genus_bounds_from_density(0, 0), Err(BoundsError::Empty));
    }

    #[test]
    fn density_requires_connected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(density_genus_bounds(&g), Err(BoundsError::Disconnected));
    }

    #[test]
    fn girth5_genus_examples() {
        assert_eq!(genus_lower_girth5(101, 10, Some(5)), Some(202));
        // Cubic form on its own (n = 1 + delta^2).
        assert_eq!(genus_lower_girth5(0, 10, Some(5)), Some(200));
        assert_eq!(genus_lower_girth5(101, 10, Some(4)), None);
        assert_eq!(genus_lower_girth5(10, 3, Some(5)), Some(0));
        assert_eq!(genus_lower_girth5(5, 1, None), Some(0));
        // ceil of a fractional linear term: (12 - 10) * 19 / 10 = 3.8.
        assert_eq!(genus_lower_girth5(19, 4, Some(5)), Some(4));
    }

    #[test]
    fn cop_uppers() {
        let tuple = |g| {
            let b = cop_upper_from_genus(g).unwrap();
            (b.two_g_plus_3, b.schroder, b.conjectured)
        };
        assert_eq!(tuple(0), (3, 3, 3));
        assert_eq!(tuple(1), (5, 4, 4));
        assert_eq!(tuple(2), (7, 6, 5));
        assert_eq!(
            cop_upper_from_genus(-1),
            Err(BoundsError::NegativeGenus(-1))
        );
    }

    #[test]
    fn bkl_examples() {
        let n = 1_000_000u64;
        let p = 2.1 * (n as f64).ln() / n as f64;
        let b = bkl_indicators(n, p).unwrap();
        assert!((b.lower - 1.188).abs() < 5e-4, "{}", b.lower);
        // 160000 * 1000 * ln(10^6)
        assert!((b.upper / 2.210_481_7e9 - 1.0).abs() < 1e-5, "{}", b.upper);
        assert!(b.hypothesis_satisfied);
        let below = bkl_indicators(n, p / 2.0).unwrap();
        assert!(!below.hypothesis_satisfied);
        assert_eq!(below.upper, b.upper);
        assert_eq!(bkl_indicators(1, 0.5), Err(BoundsError::TooFewVertices(1)));
        assert!(bkl_indicators(10, 0.0).is_err());
        assert!(bkl_indicators(10, 1.5).is_err());
        assert!(bkl_indicators(10, f64::NAN).is_err());
    }

    #[test]
    fn report_petersen_genus_one() {
        let r = full_report(&petersen(), Some(1)).unwrap();
        assert_eq!(r.c_lower_girth5.value, Some(3));
        assert_eq!(r.c_upper_schroder.value, Some(4));
        assert_eq!(r.c_upper_conjectured.provenance, Provenance::Conjectural);
        assert!(r.certificates.cop_bounds_consistent);
        assert!(r.certificates.genus_bounds_consistent);
        assert_eq!((r.alpha_num, r.alpha_den), (3, 2));
        assert_eq!(r.metadata.genus_source, GenusSource::Known);
    }

    #[test]
    fn report_dodecahedron_planar() {
        let r = full_report(&dodecahedron(), Some(0)).unwrap();
        assert_eq!(
            (
                r.c_upper_2g3.value,
                r.c_upper_schroder.value,
                r.c_upper_conjectured.value
            ),
            (Some(3), Some(3), Some(3))
        );
    }

    #[test]
    fn report_gnp_consistent() {
        let g = gnp(200, 0.1, 17).unwrap();
        let r = full_report(&g, None).unwrap();
        assert!(r.certificates.genus_bounds_consistent);
        assert!(r.genus_lower.value <= r.genus_upper.value);
        assert_eq!(
            r.bkl_lower_indicator.provenance,
            Provenance::AsymptoticIndicator
        );
        assert!(r.bkl_lower_indicator.applicable);
        assert_eq!(r.metadata.genus_source, GenusSource::ViaUpperBound);
    }

    #[test]
    fn report_disconnected_sums_components() {
        // Two disjoint K5's: each has genus upper 5, so the sum is 10 and the
        // cop bound is (2*5+3) twice.
        let mut edges = Vec::new();
        for base in [0, 5] {
            for u in 0..5 {
                for v in u + 1..5 {
                    edges.push((base + u, base + v));
                }
            }
        }
        let g = Graph::from_edges(10, edges).unwrap();
        let r = full_report(&g, None).unwrap();
        assert!(r.metadata.per_component);
        assert_eq!(r.genus_upper.value, Some(10));
        assert_eq!(r.c_upper_2g3.value, Some(26));
    }

    #[test]
    fn report_serializes_bounds_as_objects() {
        let v = serde_json::to_value(full_report(&heawood(), None).unwrap()).unwrap();
        assert_eq!(v["c_lower_girth5"]["value"], 3);
        assert_eq!(v["c_lower_girth5"]["provenance"], "proven");
        assert_eq!(
            v["bkl_upper_indicator"]["provenance"],
            "asymptotic-indicator"
        );
        assert_eq!(v["c_upper_conjectured"]["provenance"], "conjectural");
        assert!(v["genus_upper"]["applicable"].as_bool().unwrap());
        assert!(v["genus_upper"]["source"].is_string());
    }
}
