//! Graph distances with Euclidean edge weights, stretch factors and the
//! `(1+√2)·x + y` bound check.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::delaunay::Triangulation;
use crate::geometry::{GeometryError, Metric};

pub const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Relative tolerance for bound comparisons; multiplied by the extent of
/// the point set.
pub const BOUND_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathInGraph {
    pub vertices: Vec<usize>,
    pub length: f64,
}

impl PathInGraph {
    /// Checks adjacency of consecutive vertices and sums the edge lengths.
    pub fn from_vertices(t: &Triangulation, vertices: Vec<usize>) -> Result<Self, GeometryError> {
        let mut length = 0.0;
        for w in vertices.windows(2) {
            if w[0] >= t.len() || w[1] >= t.len() {
                return Err(GeometryError::UnknownPoint(w[0].max(w[1])));
            }
            if !t.has_edge(w[0], w[1]) {
                return Err(GeometryError::CoincidentPoints(w[0], w[1]));
            }
            length += t.edge_length(w[0], w[1]);
        }
        Ok(PathInGraph { vertices, length })
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(&self, other: &PathInGraph) -> PathInGraph {
        debug_assert_eq!(self.last(), other.first());
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        PathInGraph {
            vertices,
            length: self.length + other.length,
        }
    }

    pub fn reversed(&self) -> PathInGraph {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        PathInGraph {
            vertices,
            length: self.length,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ShortestPaths {
    pub source: usize,
    pub dist: Vec<f64>,
    pub pred: Vec<Option<usize>>,
}

impl ShortestPaths {
    pub fn path_to(&self, target: usize) -> Option<PathInGraph> {
        if !self.dist.get(target)?.is_finite() {
            return None;
        }
        let mut v = vec![target];
        let mut cur = target;
        while let Some(p) = self.pred[cur] {
            v.push(p);
            cur = p;
        }
        v.reverse();
        Some(PathInGraph {
            vertices: v,
            length: self.dist[target],
        })
    }
}

#[derive(PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then_with(|| o.1.cmp(&self.1))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Dijkstra from `source` with Euclidean edge lengths.
pub fn shortest_paths_from(t: &Triangulation, source: usize) -> Result<ShortestPaths, GeometryError> {
    let n = t.len();
    if source >= n {
        return Err(GeometryError::UnknownPoint(source));
    }
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    dist[source] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(Item(0.0, source));
    while let Some(Item(d, u)) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &v in t.neighbors(u) {
            let nd = d + t.edge_length(u, v);
            if nd < dist[v] {
                dist[v] = nd;
                pred[v] = Some(u);
                heap.push(Item(nd, v));
            }
        }
    }
    Ok(ShortestPaths { source, dist, pred })
}

/// `(1+√2)·x + y` in input units, where `x` and `y` are the larger and
/// smaller coordinate differences of `a` and `b` in the working frame.
/// For L1 the frame is scaled by √2, which is divided out.
pub fn theorem_bound(t: &Triangulation, a: usize, b: usize) -> f64 {
    let lat = t.frame().lattice();
    let dx = (lat[a].x - lat[b].x).abs();
    let dy = (lat[a].y - lat[b].y).abs();
    let unit = t.frame().unit();
    let x = dx.max(dy) as f64 * unit;
    let y = dx.min(dy) as f64 * unit;
    let scale = match t.metric() {
        Metric::L1 => SQRT2,
        _ => 1.0,
    };
    ((1.0 + SQRT2) * x + y) / scale
}

/// Absolute tolerance for comparisons on `t`: `1e-9` of its extent.
pub fn tolerance(t: &Triangulation) -> f64 {
    BOUND_TOLERANCE * t.points().extent().max(f64::MIN_POSITIVE)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairRecord {
    pub a: usize,
    pub b: usize,
    pub d_t: f64,
    pub d_2: f64,
    pub ratio: f64,
    /// `(1+√2)·x + y - d_T`.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StretchReport {
    /// All unordered pairs in id order; empty for summaries.
    pub pairs: Vec<PairRecord>,
    pub max_ratio: f64,
    pub argmax: (usize, usize),
    pub min_margin: f64,
    pub min_margin_pair: (usize, usize),
    pub tolerance: f64,
}

impl StretchReport {
    pub fn bound_holds(&self) -> bool {
        self.min_margin >= -self.tolerance
    }
}

fn report(t: &Triangulation, keep: bool) -> StretchReport {
    let n = t.len();
    let mut r = StretchReport {
        pairs: Vec::new(),
        max_ratio: 1.0,
        argmax: (0, 1.min(n.saturating_sub(1))),
        min_margin: f64::INFINITY,
        min_margin_pair: (0, 1.min(n.saturating_sub(1))),
        tolerance: tolerance(t),
    };
    for a in 0..n {
        let sp = shortest_paths_from(t, a).expect("source in range");
        for b in a + 1..n {
            let d_t = sp.dist[b];
            let d_2 = t.points().dist(a, b);
            let ratio = d_t / d_2;
            let margin = theorem_bound(t, a, b) - d_t;
            if ratio > r.max_ratio {
                r.max_ratio = ratio;
                r.argmax = (a, b);
            }
            if margin < r.min_margin {
                r.min_margin = margin;
                r.min_margin_pair = (a, b);
            }
            if keep {
                r.pairs.push(PairRecord {
                    a,
                    b,
                    d_t,
                    d_2,
                    ratio,
                    margin,
                });
            }
        }
    }
    r
}

/// All-pairs stretch with per-pair records.
pub fn stretch_factor(t: &Triangulation) -> StretchReport {
    report(t, true)
}

/// Like [`stretch_factor`] without per-pair records.
pub fn stretch_summary(t: &Triangulation) -> StretchReport {
    report(t, false)
}

/// Per-pair margins `(a, b, (1+√2)·x + y - d_T)`.
pub fn verify_theorem_bound(t: &Triangulation) -> Vec<(usize, usize, f64)> {
    stretch_factor(t)
        .pairs
        .into_iter()
        .map(|p| (p.a, p.b, p.margin))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorollaryResult {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

impl CorollaryResult {
    pub fn x_over_y(&self) -> f64 {
        self.x / self.y
    }
}

fn corollary_ratio(theta: f64) -> f64 {
    (1.0 + SQRT2) * theta.cos() + theta.sin()
}

/// Maximizes `((1+√2)x + y) / √(x²+y²)` over `0 < y <= x` on the unit
/// circle: a grid over the angle, then bisection on the derivative sign.
pub fn corollary_maximizer() -> CorollaryResult {
    let top = std::f64::consts::FRAC_PI_4;
    let steps = 10_000;
    let h = top / steps as f64;
    let best = (1..=steps)
        .map(|i| i as f64 * h)
        .max_by(|a, b| corollary_ratio(*a).total_cmp(&corollary_ratio(*b)))
        .unwrap();
    let slope = |th: f64| -(1.0 + SQRT2) * th.sin() + th.cos();
    let (mut lo, mut hi) = ((best - h).max(0.0), (best + h).min(top));
    if slope(hi) > 0.0 {
        lo = hi;
    } else if slope(lo) < 0.0 {
        hi = lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let th = 0.5 * (lo + hi);
    CorollaryResult {
        x: th.cos(),
        y: th.sin(),
        value: corollary_ratio(th),
    }
}
