//! Triangles crossed by a segment and the bookkeeping on their circumsquares.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::frame::Frame;
use crate::delaunay::Triangulation;
use crate::error::{GeometryError, RouteError};
use crate::geometry::lattice::{orient, LSquare, Lp, SideLabel, Sides};
use crate::geometry::{classify_slope_lattice, SlopeClass};

/// The triangles `T_1..T_k` met by the open segment `ab`, in order, with the
/// vertex chains above (`h`) and below (`l`) the segment.
///
/// Coordinates are taken in the canonical frame of `(a, b)`: `a` at the
/// origin, `b = (x, y)` with `0 < y <= x`.
#[derive(Clone, Debug)]
pub struct CrossingSequence {
    pub a: usize,
    pub b: usize,
    pub frame: Frame,
    /// `b` in the frame.
    pub target: Lp,
    pub triangles: Vec<usize>,
    /// `h_0..h_k`; `h_0 = a`, `h_k = b`.
    pub high: Vec<usize>,
    /// `l_0..l_k`; `l_0 = a`, `l_k = l_{k-1}`.
    pub low: Vec<usize>,
    /// Circumsquares `S_1..S_k` in the frame; `squares[i - 1]` is `S_i`.
    pub squares: Vec<LSquare>,
    coords: HashMap<usize, Lp>,
}

impl CrossingSequence {
    pub fn k(&self) -> usize {
        self.triangles.len()
    }

    /// Frame coordinates of a vertex of the sequence.
    pub fn pos(&self, v: usize) -> Lp {
        self.coords[&v]
    }

    /// `S_i` for `1 <= i <= k`.
    pub fn square(&self, i: usize) -> LSquare {
        self.squares[i - 1]
    }

    /// Abscissa of the E side of `S_i`; `x_0 = 0`.
    pub fn frontier(&self, i: usize) -> i128 {
        if i == 0 {
            0
        } else {
            self.square(i).east()
        }
    }

    pub fn sides(&self, i: usize, v: usize) -> Sides {
        self.square(i).sides_of(self.pos(v))
    }

    /// A point on the E side of `S_i`.
    pub fn is_promising(&self, i: usize, v: usize) -> bool {
        i >= 1 && self.sides(i, v).contains(SideLabel::E)
    }

    /// The edge `(l_i, h_i)` has slope in `[-1, 1]`.
    pub fn is_inductive(&self, i: usize) -> bool {
        i >= 1
            && classify_slope_lattice(self.pos(self.high[i]), self.pos(self.low[i]))
                == SlopeClass::Gentle
    }

    /// Endpoint of `(l_i, h_i)` with the larger abscissa.
    pub fn inductive_point(&self, i: usize) -> usize {
        let (h, l) = (self.high[i], self.low[i]);
        if self.pos(h).x > self.pos(l).x {
            h
        } else {
            l
        }
    }

    /// First index whose square is inductive.
    pub fn first_inductive(&self) -> Option<usize> {
        (1..=self.k()).find(|&i| self.is_inductive(i))
    }

    /// Chain of distinct vertices `track[from..=to]`.
    pub fn chain(&self, track: Track, from: usize, to: usize) -> Vec<usize> {
        let seq = match track {
            Track::High => &self.high,
            Track::Low => &self.low,
        };
        let mut out: Vec<usize> = Vec::new();
        for &v in &seq[from..=to] {
            if out.last() != Some(&v) {
                out.push(v);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Track {
    High,
    Low,
}

impl fmt::Display for Track {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Track::High => "high",
            Track::Low => "low",
        })
    }
}

/// Builds the crossing sequence of `ab`. Fails when `ab` is an edge, when the
/// segment meets a vertex, or when it leaves the union of triangles.
pub fn crossing_sequence(t: &Triangulation, a: usize, b: usize) -> Result<CrossingSequence, RouteError> {
    let n = t.len();
    for v in [a, b] {
        if v >= n {
            return Err(GeometryError::UnknownPoint(v).into());
        }
    }
    if a == b {
        return Err(GeometryError::CoincidentPoints(a, b).into());
    }
    if t.has_edge(a, b) {
        return Err(RouteError::DirectEdge(a, b));
    }
    let lat = t.frame().lattice();
    let frame = Frame::canonical(lat[a], lat[b]);
    let p = |v: usize| frame.apply(lat[v]);
    let o = Lp::new(0, 0);
    let pb = p(b);

    for &v in t.neighbors(a) {
        let q = p(v);
        if orient(o, pb, q) == 0 && q.x * pb.x + q.y * pb.y > 0 {
            return Err(if q.dist2(o) < pb.dist2(o) {
                RouteError::VertexOnSegment(a, b, v)
            } else {
                RouteError::Structure(format!("{b} lies on edge ({a}, {v})"))
            });
        }
    }

    let mut first = None;
    for &ti in t.triangles_at(a) {
        let vs = t.triangles()[ti].vertices;
        let others: Vec<usize> = vs.iter().copied().filter(|&v| v != a).collect();
        let (mut u, mut w) = (others[0], others[1]);
        if orient(o, p(u), p(w)) < 0 {
            std::mem::swap(&mut u, &mut w);
        }
        if orient(o, p(u), pb) > 0 && orient(o, pb, p(w)) > 0 {
            first = Some((ti, w, u));
            break;
        }
    }
    let (mut cur, mut h, mut l) = first.ok_or(RouteError::LeavesTriangulation(a, b))?;
    let mut triangles = vec![cur];
    let mut high = vec![a, h];
    let mut low = vec![a, l];
    loop {
        if triangles.len() > t.triangles().len() {
            return Err(RouteError::Structure("crossing walk does not terminate".into()));
        }
        let next = t
            .triangles_on_edge(h, l)
            .iter()
            .copied()
            .find(|&x| x != cur)
            .ok_or(RouteError::LeavesTriangulation(a, b))?;
        let z = t.triangles()[next]
            .vertices
            .into_iter()
            .find(|&v| v != h && v != l)
            .ok_or_else(|| RouteError::Structure(format!("degenerate triangle {next}")))?;
        triangles.push(next);
        cur = next;
        if z == b {
            high.push(b);
            low.push(l);
            break;
        }
        match orient(o, pb, p(z)).signum() {
            1 => h = z,
            -1 => l = z,
            _ => return Err(RouteError::VertexOnSegment(a, b, z)),
        }
        high.push(h);
        low.push(l);
    }

    let mut squares = Vec::with_capacity(triangles.len());
    for &ti in &triangles {
        let sq = t
            .circumsquare_lattice(ti)
            .ok_or_else(|| RouteError::Structure(format!("triangle {ti} has no circumsquare")))?;
        squares.push(frame.apply_square(sq));
    }
    let coords = high
        .iter()
        .chain(low.iter())
        .map(|&v| (v, p(v)))
        .collect();
    Ok(CrossingSequence {
        a,
        b,
        frame,
        target: pb,
        triangles,
        high,
        low,
        squares,
        coords,
    })
}

/// Side labels of one edge `(v_{i-1}, v_i)` of the high or low chain in
/// `S_i`, for `1 < i < k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingEdge {
    pub index: usize,
    pub track: Track,
    pub from: usize,
    pub to: usize,
    /// `(side of from, side of to)` if it is one of the allowed pairs.
    pub label: Option<(SideLabel, SideLabel)>,
}

impl CrossingEdge {
    pub fn label_string(&self) -> String {
        match self.label {
            Some((p, q)) => format!("{p}{q}"),
            None => "none".into(),
        }
    }
}

const HIGH_LABELS: [(SideLabel, SideLabel); 3] = [
    (SideLabel::W, SideLabel::N),
    (SideLabel::W, SideLabel::E),
    (SideLabel::N, SideLabel::E),
];

const LOW_LABELS: [(SideLabel, SideLabel); 3] = [
    (SideLabel::W, SideLabel::S),
    (SideLabel::W, SideLabel::E),
    (SideLabel::S, SideLabel::E),
];

fn label_in(sq: LSquare, from: Lp, to: Lp, allowed: &[(SideLabel, SideLabel)]) -> Option<(SideLabel, SideLabel)> {
    let (f, g) = (sq.sides_of(from), sq.sides_of(to));
    allowed
        .iter()
        .copied()
        .find(|&(p, q)| f.contains(p) && g.contains(q))
}

/// Labels of every chain edge inside the sequence; `label` is `None` where
/// the edge is outside the allowed set.
pub fn crossing_edge_labels(seq: &CrossingSequence) -> Vec<CrossingEdge> {
    let k = seq.k();
    let mut out = Vec::new();
    for i in 2..k {
        let (track, from, to, allowed) = if seq.high[i] != seq.high[i - 1] {
            (Track::High, seq.high[i - 1], seq.high[i], &HIGH_LABELS)
        } else {
            (Track::Low, seq.low[i - 1], seq.low[i], &LOW_LABELS)
        };
        out.push(CrossingEdge {
            index: i,
            track,
            from,
            to,
            label: label_in(seq.square(i), seq.pos(from), seq.pos(to), allowed),
        });
    }
    out
}

/// Like [`crossing_edge_labels`], failing on the first edge with a label
/// outside `{WN, WE, NE}` (high) or `{WS, WE, SE}` (low).
pub fn classify_crossing_edges(seq: &CrossingSequence) -> Result<Vec<CrossingEdge>, RouteError> {
    let out = crossing_edge_labels(seq);
    if let Some(bad) = out.iter().find(|e| e.label.is_none()) {
        return Err(RouteError::Structure(format!(
            "{} edge ({}, {}) in S{} has sides {} and {}",
            bad.track,
            bad.from,
            bad.to,
            bad.index,
            seq.sides(bad.index, bad.from),
            seq.sides(bad.index, bad.to)
        )));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SquareStatus {
    pub index: usize,
    /// `x_i` in frame lattice units.
    pub x: i128,
    pub inductive: bool,
    pub inductive_point: Option<usize>,
    /// Vertices of `(l_i, h_i)` on the E side of `S_i`.
    pub promising: Vec<usize>,
    /// `d(a, h_i) + d(a, l_i) + d_S(h_i, l_i)`.
    pub potential: f64,
    /// `4 x_i`.
    pub capacity: f64,
}

impl SquareStatus {
    pub fn has_potential(&self, tol: f64) -> bool {
        self.potential <= self.capacity + tol
    }
}

/// Status of `S_i` under the distance oracle `dist` (distance from `a`, in
/// frame lattice units).
pub fn potential_status<F>(seq: &CrossingSequence, i: usize, dist: F) -> Result<SquareStatus, RouteError>
where
    F: Fn(usize) -> f64,
{
    if i == 0 || i > seq.k() {
        return Err(RouteError::Structure(format!("square index {i} out of 1..={}", seq.k())));
    }
    let (h, l) = (seq.high[i], seq.low[i]);
    let sq = seq.square(i);
    let ds = sq
        .clockwise_distance(seq.pos(h), seq.pos(l))
        .ok_or_else(|| RouteError::Structure(format!("({h}, {l}) not on S{i}")))?;
    let inductive = seq.is_inductive(i);
    let promising = [h, l]
        .into_iter()
        .filter(|&v| seq.is_promising(i, v))
        .collect();
    Ok(SquareStatus {
        index: i,
        x: seq.frontier(i),
        inductive,
        inductive_point: inductive.then(|| seq.inductive_point(i)),
        promising,
        potential: dist(h) + dist(l) + ds as f64,
        capacity: 4.0 * seq.frontier(i) as f64,
    })
}

/// Start index of the maximal path on `track` ending at index `j`: the last
/// `i <= j` that is `0` or whose vertex is promising in `S_i`.
pub fn maximal_path_start(seq: &CrossingSequence, track: Track, j: usize) -> usize {
    let chain = match track {
        Track::High => &seq.high,
        Track::Low => &seq.low,
    };
    (0..=j)
        .rev()
        .find(|&i| i == 0 || seq.is_promising(i, chain[i]))
        .unwrap_or(0)
}

/// The maximal high path ending at `h_j`: WN edges only.
pub fn maximal_high_path(seq: &CrossingSequence, j: usize) -> Vec<usize> {
    seq.chain(Track::High, maximal_path_start(seq, Track::High, j), j)
}

/// The maximal low path ending at `l_j`: WS edges only.
pub fn maximal_low_path(seq: &CrossingSequence, j: usize) -> Vec<usize> {
    seq.chain(Track::Low, maximal_path_start(seq, Track::Low, j), j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneExtension {
    pub track: Track,
    pub start: usize,
    pub end: usize,
    /// Distinct vertices from the chain vertex at `start` to the one at `end`.
    pub vertices: Vec<usize>,
    /// False when the low chain ran out at `l_k` before reaching good
    /// position; `l_k` is then a vertex of `T_k` and adjacent to `b`.
    pub good: bool,
}

/// Whether a chain vertex at frame position `p` sees `b` within the
/// diagonal cone: `x - x_p >= |y - y_p|`.
pub fn in_good_position(target: Lp, p: Lp) -> bool {
    target.x - p.x >= (target.y - p.y).abs()
}

/// From index `j` on `track`, walks NE edges (high) or SE edges (low) until
/// the chain vertex is in good position with respect to `b` or the sequence
/// ends.
pub fn monotone_extension(seq: &CrossingSequence, j: usize, track: Track) -> Result<MonotoneExtension, RouteError> {
    let chain = match track {
        Track::High => &seq.high,
        Track::Low => &seq.low,
    };
    let (from_side, to_side) = match track {
        Track::High => (SideLabel::N, SideLabel::E),
        Track::Low => (SideLabel::S, SideLabel::E),
    };
    let mut vertices = vec![chain[j]];
    let mut t = j;
    let mut good = in_good_position(seq.target, seq.pos(chain[t]));
    while !good && t < seq.k() {
        t += 1;
        if chain[t] != chain[t - 1] {
            let sq = seq.square(t);
            let ok = sq.sides_of(seq.pos(chain[t - 1])).contains(from_side)
                && sq.sides_of(seq.pos(chain[t])).contains(to_side);
            if !ok {
                return Err(RouteError::Structure(format!(
                    "{track} edge ({}, {}) in S{t} is not {from_side}{to_side}",
                    chain[t - 1],
                    chain[t]
                )));
            }
            vertices.push(chain[t]);
        }
        good = in_good_position(seq.target, seq.pos(chain[t]));
    }
    Ok(MonotoneExtension {
        track,
        start: j,
        end: t,
        vertices,
        good,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::triangulate_linf;
    use crate::geometry::lattice::in_open_rectangle;
    use crate::geometry::PointSet;

    fn tri(v: &[(i64, i64)]) -> Triangulation {
        triangulate_linf(&PointSet::from_integers(v).unwrap()).unwrap()
    }

    #[test]
    fn quadrilateral_crossing() {
        // (0,1) is the Delaunay diagonal, so (2,3) must cross it.
        let t = tri(&[(0, 0), (10, 1), (4, 8), (6, -7)]);
        assert!(!t.has_edge(2, 3));
        let s = crossing_sequence(&t, 2, 3).unwrap();
        assert_eq!(s.k(), 2);
        assert_eq!(s.high[0], 2);
        assert_eq!(*s.high.last().unwrap(), 3);
        let mut mid = [s.high[1], s.low[1]];
        mid.sort();
        assert_eq!(mid, [0, 1]);
        assert_eq!(s.low[2], s.low[1]);
        let t1 = s.square(1);
        assert!(t1.sides_of(s.pos(2)).contains(SideLabel::W));
        assert!(s.square(2).sides_of(s.target).contains(SideLabel::E));
        assert!(crossing_sequence(&t, 0, 1).is_err());
    }

    #[test]
    fn chain_edges_respect_labels() {
        let t = tri(&[
            (0, 0),
            (71, 33),
            (19, 97),
            (113, 52),
            (53, -41),
            (89, 131),
            (-31, 61),
            (140, 7),
            (37, 12),
        ]);
        for a in 0..t.len() {
            for b in 0..t.len() {
                if a == b || t.has_edge(a, b) {
                    continue;
                }
                let lat = t.frame().lattice();
                if lat.iter().any(|&z| in_open_rectangle(lat[a], lat[b], z)) {
                    continue;
                }
                let s = crossing_sequence(&t, a, b).unwrap();
                for (i, w) in s.high.windows(2).enumerate() {
                    if i > 0 && i + 1 < s.k() {
                        assert_eq!(s.low[i + 1] != s.low[i], w[0] == w[1]);
                    }
                }
                classify_crossing_edges(&s).unwrap();
            }
        }
    }

    #[test]
    fn good_position_cone() {
        let b = Lp::new(10, 4);
        assert!(in_good_position(b, Lp::new(3, 9)));
        assert!(!in_good_position(b, Lp::new(3, 12)));
        assert!(in_good_position(b, Lp::new(6, 0)));
        assert!(in_good_position(b, b));
    }
}
