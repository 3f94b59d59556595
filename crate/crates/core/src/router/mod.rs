//! Constructive router for the `(1+√2)·x + y` bound.
//!
//! [`route`] builds an explicit path between two vertices of a triangulation
//! by following the inductive argument for the bound: split at an interior
//! point when the rectangle `R(a, b)` is occupied, otherwise walk the
//! triangles crossed by `ab` while keeping concrete paths to both chains.
//! Every inequality the argument relies on is recorded as an [`AuditLine`]
//! in the returned certificate, and a negative slack aborts the routing.

mod audit;
pub mod crossing;
pub mod frame;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use audit::{audit_lemmas, LemmaAudit};
pub use crossing::{
    classify_crossing_edges, crossing_edge_labels, crossing_sequence, in_good_position,
    maximal_high_path, maximal_low_path, maximal_path_start, monotone_extension, potential_status,
    CrossingEdge, CrossingSequence, MonotoneExtension, SquareStatus, Track,
};
pub use frame::{canonical_frame, CanonicalFrame, Frame};

use crate::delaunay::Triangulation;
use crate::error::{GeometryError, RouteError};
use crate::geometry::lattice::{in_open_rectangle, Lp};
use crate::geometry::{AxisSquare, Coord, Metric, Point, PointSet};
use crate::spanner::{self, PathInGraph, SQRT2};

/// Whether the open rectangle spanned by `a` and `b` holds no point of `set`.
pub fn rectangle_empty(set: &PointSet, a: usize, b: usize) -> Result<bool, GeometryError> {
    set.point(a)?;
    set.point(b)?;
    let lat = set.lattice();
    Ok(!lat.iter().any(|&z| in_open_rectangle(lat[a], lat[b], z)))
}

fn perimeter_position(sq: &AxisSquare, p: &Point) -> Option<Coord> {
    let (e, n) = (sq.east(), sq.north());
    let in_x = sq.west <= p.x && p.x <= e;
    let in_y = sq.south <= p.y && p.y <= n;
    if p.x == sq.west && in_y {
        Some(&p.y - &sq.south)
    } else if p.y == n && in_x {
        Some(&sq.side + &(&p.x - &sq.west))
    } else if p.x == e && in_y {
        Some(&(&sq.side * &Coord::int(2)) + &(&n - &p.y))
    } else if p.y == sq.south && in_x {
        Some(&(&sq.side * &Coord::int(3)) + &(&e - &p.x))
    } else {
        None
    }
}

/// Length of the clockwise walk along the boundary of `sq` from `p` to `q`.
pub fn clockwise_boundary_distance(sq: &AxisSquare, p: &Point, q: &Point) -> Result<Coord, GeometryError> {
    let a = perimeter_position(sq, p).ok_or(GeometryError::NotOnBoundary(p.id))?;
    let b = perimeter_position(sq, q).ok_or(GeometryError::NotOnBoundary(q.id))?;
    let d = &b - &a;
    if d < Coord::zero() {
        Ok(&d + &(&sq.side * &Coord::int(4)))
    } else {
        Ok(d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    DirectEdge,
    /// Split at a point `c` of `R(a, b)` inside the diagonal band.
    Case1RegionB,
    /// Edge from an endpoint to a stopper above the band.
    Case1RegionA,
    /// Edge from an endpoint to a stopper below the band.
    Case1RegionC,
    Case2NoInductive,
    Case2InductiveHigh,
    Case2InductiveLow,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::DirectEdge => "direct-edge",
            StepKind::Case1RegionB => "case1-region-b",
            StepKind::Case1RegionA => "case1-region-a",
            StepKind::Case1RegionC => "case1-region-c",
            StepKind::Case2NoInductive => "case2-no-inductive",
            StepKind::Case2InductiveHigh => "case2-inductive-high",
            StepKind::Case2InductiveLow => "case2-inductive-low",
        })
    }
}

/// Which empty square supplied the stopper in case 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stopper {
    /// Largest empty square with `a` as its SW corner.
    FromA,
    /// Largest empty square with `b` as its NE corner.
    FromB,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub kind: StepKind,
    pub a: usize,
    pub b: usize,
    /// Canonical coordinates of `b` relative to `a`, in input units.
    pub x: f64,
    pub y: f64,
    /// `(1+√2)·x + y`.
    pub bound: f64,
    /// Length of the sub-path produced by this step.
    pub length: f64,
    pub via: Option<usize>,
    pub stopper: Option<Stopper>,
    /// Number of crossed triangles in case 2.
    pub crossing: Option<usize>,
    pub inductive_index: Option<usize>,
    pub maximal_path: Option<Vec<usize>>,
    pub extension: Option<Vec<usize>>,
    /// The extension ended at `l_k` and was closed by the edge `(l_k, b)`.
    pub closing_edge: bool,
    pub children: Vec<TraceStep>,
}

impl TraceStep {
    fn new(kind: StepKind, a: usize, b: usize, x: f64, y: f64) -> Self {
        TraceStep {
            kind,
            a,
            b,
            x,
            y,
            bound: (1.0 + SQRT2) * x + y,
            length: 0.0,
            via: None,
            stopper: None,
            crossing: None,
            inductive_index: None,
            maximal_path: None,
            extension: None,
            closing_edge: false,
            children: Vec::new(),
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn walk<'a>(&'a self, out: &mut Vec<&'a TraceStep>) {
        out.push(self);
        for c in &self.children {
            c.walk(out);
        }
    }
}

/// One inequality `value <= bound`, in input units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditLine {
    pub label: String,
    pub bound: f64,
    pub value: f64,
}

impl AuditLine {
    pub fn slack(&self) -> f64 {
        self.bound - self.value
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RouteCertificate {
    pub a: usize,
    pub b: usize,
    pub metric: Metric,
    pub path: PathInGraph,
    pub x: f64,
    pub y: f64,
    pub bound: f64,
    pub tolerance: f64,
    pub trace: TraceStep,
    pub audit: Vec<AuditLine>,
}

impl RouteCertificate {
    pub fn slack(&self) -> f64 {
        self.bound - self.path.length
    }

    pub fn min_audit_slack(&self) -> f64 {
        self.audit
            .iter()
            .map(AuditLine::slack)
            .fold(f64::INFINITY, f64::min)
    }

    /// Replays the path on `t` and re-checks the bound, every audit line and
    /// the shape of the trace.
    pub fn validate(&self, t: &Triangulation) -> Result<(), RouteError> {
        let tol = self.tolerance;
        let p = &self.path;
        if p.vertices.first() != Some(&self.a) || p.vertices.last() != Some(&self.b) {
            return Err(RouteError::Structure("path endpoints differ from (a, b)".into()));
        }
        let replay = PathInGraph::from_vertices(t, p.vertices.clone())?;
        if (replay.length - p.length).abs() > tol {
            return Err(RouteError::Structure(format!(
                "stored length {} differs from replayed {}",
                p.length, replay.length
            )));
        }
        let expect = spanner::theorem_bound(t, self.a, self.b);
        if (expect - self.bound).abs() > tol {
            return Err(RouteError::Structure(format!(
                "stored bound {} differs from {}",
                self.bound, expect
            )));
        }
        if replay.length > self.bound + tol {
            return Err(RouteError::Slack {
                label: format!("path ({}, {})", self.a, self.b),
                bound: self.bound,
                value: replay.length,
            });
        }
        if let Some(bad) = self.audit.iter().find(|l| l.slack() < -tol) {
            return Err(RouteError::Slack {
                label: bad.label.clone(),
                bound: bad.bound,
                value: bad.value,
            });
        }
        check_trace(&self.trace, tol)?;
        if (self.trace.length - p.length).abs() > tol {
            return Err(RouteError::Structure("trace length differs from path".into()));
        }
        Ok(())
    }
}

fn check_trace(s: &TraceStep, tol: f64) -> Result<(), RouteError> {
    let expected_children = match s.kind {
        StepKind::DirectEdge | StepKind::Case2NoInductive => 0..=0,
        StepKind::Case1RegionB => 2..=2,
        StepKind::Case1RegionA | StepKind::Case1RegionC => 1..=1,
        StepKind::Case2InductiveHigh | StepKind::Case2InductiveLow => 0..=1,
    };
    if !expected_children.contains(&s.children.len()) {
        return Err(RouteError::Structure(format!(
            "{} step ({}, {}) has {} children",
            s.kind,
            s.a,
            s.b,
            s.children.len()
        )));
    }
    if s.length > s.bound + tol {
        return Err(RouteError::Slack {
            label: format!("{} step ({}, {})", s.kind, s.a, s.b),
            bound: s.bound,
            value: s.length,
        });
    }
    let mut sum = 0.0;
    for c in &s.children {
        if c.x >= s.x {
            return Err(RouteError::Structure(format!(
                "child ({}, {}) does not shrink x below {}",
                c.a, c.b, s.x
            )));
        }
        sum += c.length;
        check_trace(c, tol)?;
    }
    if sum > s.length + tol {
        return Err(RouteError::Structure(format!(
            "children of ({}, {}) are longer than the step",
            s.a, s.b
        )));
    }
    Ok(())
}

/// A walk with its length in frame lattice units.
#[derive(Clone, Debug)]
struct Piece {
    path: Vec<usize>,
    len: f64,
}

impl Piece {
    fn single(v: usize) -> Self {
        Piece {
            path: vec![v],
            len: 0.0,
        }
    }

    fn last(&self) -> usize {
        *self.path.last().unwrap()
    }

    fn join(mut self, other: &Piece) -> Piece {
        debug_assert_eq!(self.last(), other.path[0]);
        self.path.extend_from_slice(&other.path[1..]);
        self.len += other.len;
        self
    }
}

/// Most recent reset of a chain path: position in the path and the length
/// at that point.
#[derive(Clone, Copy, Debug)]
struct Anchor {
    pos: usize,
    len: f64,
}

struct Router<'a> {
    t: &'a Triangulation,
    lat: &'a [Lp],
    /// Lattice length to input length.
    factor: f64,
    cap: usize,
    audit: Vec<AuditLine>,
}

const GROWTH: f64 = 1.0 + SQRT2;

impl<'a> Router<'a> {
    fn new(t: &'a Triangulation) -> Self {
        let scale = match t.metric() {
            Metric::L1 => SQRT2,
            _ => 1.0,
        };
        Router {
            t,
            lat: t.frame().lattice(),
            factor: t.frame().unit() / scale,
            cap: t.len() * t.len(),
            audit: Vec::new(),
        }
    }

    fn d(&self, u: usize, v: usize) -> f64 {
        self.lat[u].dist(self.lat[v])
    }

    fn check(&mut self, label: String, bound: f64, value: f64) {
        self.audit.push(AuditLine {
            label,
            bound: bound * self.factor,
            value: value * self.factor,
        });
    }

    fn push(&self, p: &mut Piece, v: usize) -> Result<(), RouteError> {
        let u = p.last();
        if u == v {
            return Ok(());
        }
        if !self.t.has_edge(u, v) {
            return Err(RouteError::Structure(format!("({u}, {v}) is not an edge")));
        }
        p.len += self.d(u, v);
        p.path.push(v);
        Ok(())
    }

    fn step(&self, kind: StepKind, a: usize, b: usize, target: Lp) -> TraceStep {
        TraceStep::new(
            kind,
            a,
            b,
            target.x as f64 * self.factor,
            target.y as f64 * self.factor,
        )
    }

    fn route(&mut self, a: usize, b: usize, depth: usize) -> Result<(Piece, TraceStep), RouteError> {
        if depth > self.cap {
            return Err(RouteError::DepthExceeded(self.cap));
        }
        let fr = Frame::canonical(self.lat[a], self.lat[b]);
        let target = fr.apply(self.lat[b]);
        let bound = GROWTH * target.x as f64 + target.y as f64;
        let (piece, mut step) = if self.t.has_edge(a, b) {
            let mut p = Piece::single(a);
            self.push(&mut p, b)?;
            (p, self.step(StepKind::DirectEdge, a, b, target))
        } else {
            let inside: Vec<(usize, Lp)> = (0..self.lat.len())
                .map(|z| (z, fr.apply(self.lat[z])))
                .filter(|&(_, p)| 0 < p.x && p.x < target.x && 0 < p.y && p.y < target.y)
                .collect();
            if inside.is_empty() {
                self.case2(a, b, depth)?
            } else {
                self.case1(a, b, &fr, target, &inside, depth)?
            }
        };
        self.check(format!("({a},{b}) bound"), bound, piece.len);
        step.length = piece.len * self.factor;
        Ok((piece, step))
    }

    fn case1(
        &mut self,
        a: usize,
        b: usize,
        fr: &Frame,
        target: Lp,
        inside: &[(usize, Lp)],
        depth: usize,
    ) -> Result<(Piece, TraceStep), RouteError> {
        let (xx, yy) = (target.x, target.y);
        let bound = GROWTH * xx as f64 + yy as f64;
        let band = inside
            .iter()
            .filter(|(_, p)| p.y <= p.x && yy - p.y <= xx - p.x)
            .min_by_key(|(z, p)| (p.x.max(p.y) + (xx - p.x).max(yy - p.y), *z));
        if let Some(&(c, _)) = band {
            let (p1, s1) = self.route(a, c, depth + 1)?;
            let (p2, s2) = self.route(c, b, depth + 1)?;
            let piece = p1.join(&p2);
            self.check(format!("({a},{b}) split at {c}"), bound, piece.len);
            let mut step = self.step(StepKind::Case1RegionB, a, b, target);
            step.via = Some(c);
            step.children = vec![s1, s2];
            return Ok((piece, step));
        }

        let in_r = |z: usize| inside.iter().any(|&(w, _)| w == z);
        let stopper = |measure: &dyn Fn(Lp) -> Option<i128>| -> Option<usize> {
            let mut best: Option<(i128, usize)> = None;
            for z in 0..self.lat.len() {
                if let Some(m) = measure(fr.apply(self.lat[z])) {
                    if best.is_none_or(|(bm, _)| m < bm) {
                        best = Some((m, z));
                    }
                }
            }
            let (s, _) = best?;
            (0..self.lat.len())
                .filter(|&z| measure(fr.apply(self.lat[z])) == Some(s))
                .find(|&z| in_r(z))
        };
        let from_a = |p: Lp| (p.x > 0 && p.y > 0).then(|| p.x.max(p.y));
        let from_b = |p: Lp| (p.x < xx && p.y < yy).then(|| (xx - p.x).max(yy - p.y));

        let (c, which) = if let Some(c) = stopper(&from_a) {
            (c, Stopper::FromA)
        } else if let Some(c) = stopper(&from_b) {
            (c, Stopper::FromB)
        } else {
            return Err(RouteError::Structure(format!(
                "R({a}, {b}) is occupied but neither corner square stops inside it"
            )));
        };
        let pc = fr.apply(self.lat[c]);
        let kind = if pc.y > pc.x {
            StepKind::Case1RegionA
        } else {
            StepKind::Case1RegionC
        };
        let (piece, child) = match which {
            Stopper::FromA => {
                let mut p = Piece::single(a);
                self.push(&mut p, c)?;
                self.check(format!("({a},{c}) stopper edge"), (pc.x + pc.y) as f64, p.len);
                let (rest, s) = self.route(c, b, depth + 1)?;
                (p.join(&rest), s)
            }
            Stopper::FromB => {
                let (mut p, s) = self.route(a, c, depth + 1)?;
                let before = p.len;
                self.push(&mut p, b)?;
                self.check(
                    format!("({c},{b}) stopper edge"),
                    ((xx - pc.x) + (yy - pc.y)) as f64,
                    p.len - before,
                );
                (p, s)
            }
        };
        self.check(format!("({a},{b}) via stopper {c}"), bound, piece.len);
        let mut step = self.step(kind, a, b, target);
        step.via = Some(c);
        step.stopper = Some(which);
        step.children = vec![child];
        Ok((piece, step))
    }

    fn reset(&mut self, own: &mut Piece, other: &Piece, v: usize, cap: f64, label: String) -> Result<Anchor, RouteError> {
        let alt = other.len + self.d(other.last(), v);
        if alt < own.len {
            let mut p = other.clone();
            self.push(&mut p, v)?;
            *own = p;
        }
        self.check(label, cap, own.len);
        Ok(Anchor {
            pos: own.path.len() - 1,
            len: own.len,
        })
    }

    fn case2(&mut self, a: usize, b: usize, depth: usize) -> Result<(Piece, TraceStep), RouteError> {
        let seq = crossing_sequence(self.t, a, b)?;
        let k = seq.k();
        let target = seq.target;
        let (xx, yy) = (target.x, target.y);
        let tag = format!("({a},{b})");
        let mut ph = Piece::single(a);
        let mut pl = Piece::single(a);
        let mut anchor_h = Anchor { pos: 0, len: 0.0 };
        let mut anchor_l = anchor_h;
        let mut inductive = None;
        for i in 1..=k {
            let (h, l) = (seq.high[i], seq.low[i]);
            self.push(&mut ph, h)?;
            self.push(&mut pl, l)?;
            let st = potential_status(&seq, i, |v| if v == h { ph.len } else { pl.len })?;
            self.check(format!("{tag} potential S{i}"), st.capacity, st.potential);
            let two_x = 2.0 * st.x as f64;
            if seq.is_promising(i, h) {
                anchor_h = self.reset(&mut ph, &pl, h, two_x, format!("{tag} promising h{i}"))?;
            }
            if seq.is_promising(i, l) {
                anchor_l = self.reset(&mut pl, &ph, l, two_x, format!("{tag} promising l{i}"))?;
            }
            if st.inductive {
                inductive = Some(i);
                break;
            }
        }

        let Some(j) = inductive else {
            if !seq.is_promising(k, b) {
                return Err(RouteError::Structure(format!("{b} is not on the E side of S{k}")));
            }
            self.check(format!("{tag} no inductive square"), 2.0 * xx as f64, ph.len);
            let mut step = self.step(StepKind::Case2NoInductive, a, b, target);
            step.crossing = Some(k);
            return Ok((ph, step));
        };

        let c = seq.inductive_point(j);
        let track = if c == seq.high[j] { Track::High } else { Track::Low };
        let pcx = seq.pos(c);
        // The proof reaches c through the maximal path of the other chain.
        let (own, other, other_anchor, other_track) = match track {
            Track::High => (&ph, &pl, anchor_l, Track::Low),
            Track::Low => (&pl, &ph, anchor_h, Track::High),
        };
        let maximal = other.path[other_anchor.pos..].to_vec();
        let (ms, me) = (seq.pos(maximal[0]), seq.pos(*maximal.last().unwrap()));
        let maximal_len = other.len - other_anchor.len;
        let mut prefix = other.clone();
        self.push(&mut prefix, c)?;
        if own.len <= prefix.len {
            prefix = own.clone();
        }
        self.check(
            format!("{tag} maximal {other_track} path"),
            ((me.x - ms.x) + (me.y - ms.y).abs()) as f64,
            maximal_len,
        );
        let (kind, prefix_cap) = match track {
            Track::High => (
                StepKind::Case2InductiveHigh,
                GROWTH * pcx.x as f64 - (pcx.y - yy) as f64,
            ),
            Track::Low => (
                StepKind::Case2InductiveLow,
                GROWTH * pcx.x as f64 + pcx.y as f64,
            ),
        };
        self.check(format!("{tag} inductive {track} S{j}"), prefix_cap, prefix.len);

        let mut step = self.step(kind, a, b, target);
        step.crossing = Some(k);
        step.inductive_index = Some(j);
        step.via = Some(c);
        step.maximal_path = Some(maximal);

        let piece = if c == b {
            prefix
        } else {
            let ext = monotone_extension(&seq, j, track)?;
            let e = *ext.vertices.last().unwrap();
            let pe = seq.pos(e);
            let mut mono = Piece::single(c);
            for &v in &ext.vertices[1..] {
                self.push(&mut mono, v)?;
            }
            self.check(
                format!("{tag} monotone {track} extension"),
                ((pe.x - pcx.x) + (pe.y - pcx.y).abs()) as f64,
                mono.len,
            );
            let mut piece = prefix.join(&mono);
            if !ext.good {
                // The low chain stalled at l_k, a vertex of T_k: close with
                // the edge to b, at most (x - x_e) + (y - y_e).
                let before = piece.len;
                self.push(&mut piece, b)?;
                self.check(
                    format!("{tag} closing edge ({e},{b})"),
                    ((xx - pe.x) + (yy - pe.y)) as f64,
                    piece.len - before,
                );
                step.closing_edge = true;
            } else if e != b {
                if target.linf(pe) >= xx {
                    return Err(RouteError::Structure(format!(
                        "tail ({e}, {b}) does not shrink the L∞ distance"
                    )));
                }
                let (tail, s) = self.route(e, b, depth + 1)?;
                piece = piece.join(&tail);
                step.children.push(s);
            }
            step.extension = Some(ext.vertices);
            piece
        };
        let total_cap = match track {
            Track::High => GROWTH * xx as f64,
            Track::Low => GROWTH * xx as f64 + yy as f64,
        };
        self.check(format!("{tag} case 2 total"), total_cap, piece.len);
        Ok((piece, step))
    }
}

/// Routes from `a` to `b` and returns the path with its certificate. The
/// certificate is validated before it is returned.
pub fn route(t: &Triangulation, a: usize, b: usize) -> Result<RouteCertificate, RouteError> {
    let n = t.len();
    for v in [a, b] {
        if v >= n {
            return Err(GeometryError::UnknownPoint(v).into());
        }
    }
    if a == b {
        return Err(GeometryError::CoincidentPoints(a, b).into());
    }
    let mut r = Router::new(t);
    let (piece, trace) = r.route(a, b, 0)?;
    let path = PathInGraph::from_vertices(t, piece.path)?;
    let cert = RouteCertificate {
        a,
        b,
        metric: t.metric(),
        x: trace.x,
        y: trace.y,
        bound: spanner::theorem_bound(t, a, b),
        tolerance: spanner::tolerance(t),
        trace,
        audit: r.audit,
        path,
    };
    cert.validate(t)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::{triangulate_l1, triangulate_linf};
    use crate::generator::{generate_chew_family, random_pointset, ChewFamilyParams, Distribution2d};
    use crate::spanner::shortest_paths_from;

    fn tri(v: &[(i64, i64)]) -> Triangulation {
        triangulate_linf(&PointSet::from_integers(v).unwrap()).unwrap()
    }

    fn pt(id: usize, x: Coord, y: Coord) -> Point {
        Point::new(id, x, y)
    }

    #[test]
    fn boundary_distance_on_unit_square() {
        let sq = AxisSquare::new(Coord::zero(), Coord::zero(), Coord::int(1)).unwrap();
        let sw = pt(0, Coord::zero(), Coord::zero());
        let se = pt(1, Coord::int(1), Coord::zero());
        assert_eq!(clockwise_boundary_distance(&sq, &sw, &se).unwrap(), Coord::int(3));
        assert_eq!(clockwise_boundary_distance(&sq, &se, &se).unwrap(), Coord::zero());
        let w = pt(2, Coord::zero(), Coord::ratio(2, 5));
        let e = pt(3, Coord::int(1), Coord::ratio(1, 2));
        assert_eq!(clockwise_boundary_distance(&sq, &w, &e).unwrap(), Coord::ratio(21, 10));
        let inner = pt(4, Coord::ratio(1, 2), Coord::ratio(1, 2));
        assert!(clockwise_boundary_distance(&sq, &inner, &e).is_err());
    }

    #[test]
    fn rectangle_emptiness() {
        let s = PointSet::from_integers(&[(0, 0), (10, 4), (5, 2), (20, 30)]).unwrap();
        assert!(!rectangle_empty(&s, 0, 1).unwrap());
        assert!(rectangle_empty(&s, 0, 2).unwrap());
        assert!(rectangle_empty(&s, 1, 3).unwrap());
    }

    #[test]
    fn edge_is_its_own_route() {
        let t = tri(&[(0, 0), (3, 1), (1, 5)]);
        let c = route(&t, 0, 1).unwrap();
        assert_eq!(c.path.vertices, vec![0, 1]);
        assert_eq!(c.trace.kind, StepKind::DirectEdge);
        assert!(route(&t, 0, 0).is_err());
        assert!(route(&t, 0, 9).is_err());
    }

    #[test]
    fn blocked_hull_pair_splits() {
        let t = tri(&[(0, 0), (100, 10), (10, 9)]);
        let c = route(&t, 0, 1).unwrap();
        assert_eq!(c.path.vertices, vec![0, 2, 1]);
        assert!(matches!(
            c.trace.kind,
            StepKind::Case1RegionA | StepKind::Case1RegionB | StepKind::Case1RegionC
        ));
        assert!(c.slack() >= 0.0);
    }

    #[test]
    fn crossing_pair_uses_case_two() {
        let t = tri(&[(0, 0), (10, 1), (4, 8), (6, -7)]);
        let c = route(&t, 2, 3).unwrap();
        assert!(matches!(
            c.trace.kind,
            StepKind::Case2NoInductive | StepKind::Case2InductiveHigh | StepKind::Case2InductiveLow
        ));
        assert_eq!(c.path.vertices.len(), 3);
    }

    fn route_all(t: &Triangulation) {
        let tol = spanner::tolerance(t);
        for a in 0..t.len() {
            let sp = shortest_paths_from(t, a).unwrap();
            for b in 0..t.len() {
                if a == b {
                    continue;
                }
                let c = route(t, a, b).unwrap_or_else(|e| panic!("({a},{b}): {e}"));
                assert!(c.min_audit_slack() >= -tol);
                assert!(c.path.length + tol >= sp.dist[b]);
                assert!(c.path.length <= c.bound + tol);
            }
        }
    }

    #[test]
    fn random_sets_route_everywhere() {
        for seed in 0..6 {
            for dist in Distribution2d::ALL {
                let s = random_pointset(14, seed, dist).unwrap();
                route_all(&triangulate_linf(&s).unwrap());
            }
        }
    }

    #[test]
    fn l1_routes() {
        let s = random_pointset(12, 3, Distribution2d::UniformBox).unwrap();
        if let Ok(t) = triangulate_l1(&s) {
            route_all(&t);
        }
    }

    #[test]
    fn worst_case_endpoints() {
        let (set, d) = generate_chew_family(ChewFamilyParams::new(8)).unwrap();
        let t = triangulate_linf(&set).unwrap();
        let c = route(&t, d.a, d.b).unwrap();
        let sp = shortest_paths_from(&t, d.a).unwrap();
        assert!(c.path.length + 1e-12 >= sp.dist[d.b]);
        assert!(c.slack() >= -c.tolerance);
        route_all(&t);
    }
}
