use std::collections::{BTreeSet, HashSet};
use std::fmt;

use super::{trace_faces, Triangulation};
use crate::geometry::lattice::{orient, LSquare, Lp};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TriangulationViolation {
    /// The witness square of edge `uv` misses one of its endpoints.
    WitnessNotThrough(usize, usize),
    NonEmptyWitness(usize, usize),
    CircumsquareNotThrough([usize; 3]),
    NonEmptyCircumsquare([usize; 3]),
    /// Two vertices of the triangle share a side of its circumsquare.
    CircumsquareSides([usize; 3]),
    NotCounterclockwise([usize; 3]),
    TriangleEdgeMissing([usize; 3]),
    Planarity((usize, usize), (usize, usize)),
    /// The triangle list disagrees with the bounded faces of the edge graph.
    FaceMismatch(String),
    Euler { v: usize, e: usize, f: usize },
}

impl fmt::Display for TriangulationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TriangulationViolation::*;
        match self {
            WitnessNotThrough(u, v) => write!(f, "witness-not-through({u},{v})"),
            NonEmptyWitness(u, v) => write!(f, "non-empty-witness({u},{v})"),
            CircumsquareNotThrough(t) => write!(f, "circumsquare-not-through{t:?}"),
            NonEmptyCircumsquare(t) => write!(f, "non-empty-circumsquare{t:?}"),
            CircumsquareSides(t) => write!(f, "circumsquare-sides{t:?}"),
            NotCounterclockwise(t) => write!(f, "not-counterclockwise{t:?}"),
            TriangleEdgeMissing(t) => write!(f, "triangle-edge-missing{t:?}"),
            Planarity(a, b) => write!(f, "planarity(({},{}),({},{}))", a.0, a.1, b.0, b.1),
            FaceMismatch(s) => write!(f, "face-mismatch({s})"),
            Euler { v, e, f: faces } => write!(f, "euler(V={v}, E={e}, F={faces})"),
        }
    }
}

fn on_segment(a: Lp, b: Lp, p: Lp) -> bool {
    orient(a, b, p) == 0
        && a.x.min(b.x) <= p.x
        && p.x <= a.x.max(b.x)
        && a.y.min(b.y) <= p.y
        && p.y <= a.y.max(b.y)
}

/// True when the closed segments `ab` and `cd` meet somewhere other than a
/// shared endpoint.
fn segments_conflict(a: Lp, b: Lp, c: Lp, d: Lp, shared: bool) -> bool {
    if shared {
        // Only a collinear overlap is a conflict.
        let (o, p, q) = if a == c {
            (a, b, d)
        } else if a == d {
            (a, b, c)
        } else if b == c {
            (b, a, d)
        } else {
            (b, a, c)
        };
        let (u, v) = (p.sub(o), q.sub(o));
        return orient(o, p, q) == 0 && u.x * v.x + u.y * v.y > 0;
    }
    let d1 = orient(a, b, c).signum();
    let d2 = orient(a, b, d).signum();
    let d3 = orient(c, d, a).signum();
    let d4 = orient(c, d, b).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

fn sides_distinct(sq: &LSquare, pts: [Lp; 3]) -> bool {
    // Each vertex must be assignable to its own side.
    let sets: Vec<Vec<_>> = pts.iter().map(|&p| sq.sides_of(p).to_vec()).collect();
    for a in &sets[0] {
        for b in &sets[1] {
            for c in &sets[2] {
                if a != b && b != c && a != c {
                    return true;
                }
            }
        }
    }
    false
}

/// Re-checks every witness, circumsquare, planarity, face structure and the
/// Euler relation. An empty result means the triangulation is valid.
///
/// The outer face need not be the convex hull: a hull edge can be missing
/// when a nearby point blocks every square through its endpoints.
pub fn validate_triangulation(t: &Triangulation) -> Vec<TriangulationViolation> {
    use TriangulationViolation::*;
    let mut out = Vec::new();
    let frame = t.frame();
    let lat = frame.lattice();

    for e in t.edges() {
        match frame.square_to_lattice(&e.witness) {
            Some(sq) if sq.on_boundary(lat[e.u]) && sq.on_boundary(lat[e.v]) => {
                if lat.iter().any(|&p| sq.contains_open(p)) {
                    out.push(NonEmptyWitness(e.u, e.v));
                }
            }
            _ => out.push(WitnessNotThrough(e.u, e.v)),
        }
    }

    for (i, tri) in t.triangles().iter().enumerate() {
        let v = tri.vertices;
        let p = v.map(|i| lat[i]);
        if orient(p[0], p[1], p[2]) <= 0 {
            out.push(NotCounterclockwise(v));
        }
        for k in 0..3 {
            if !t.has_edge(v[k], v[(k + 1) % 3]) {
                out.push(TriangleEdgeMissing(v));
                break;
            }
        }
        match t.circumsquare_lattice(i) {
            Some(sq) if p.iter().all(|&q| sq.on_boundary(q)) => {
                if lat.iter().any(|&q| sq.contains_open(q)) {
                    out.push(NonEmptyCircumsquare(v));
                }
                if !sides_distinct(&sq, p) {
                    out.push(CircumsquareSides(v));
                }
            }
            _ => out.push(CircumsquareNotThrough(v)),
        }
    }

    // Planarity: sweep edges by their x-range.
    let mut segs: Vec<(i128, i128, usize, usize)> = t
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (lat[e.u], lat[e.v]);
            (a.x.min(b.x), a.x.max(b.x), e.u, e.v)
        })
        .collect();
    segs.sort_unstable();
    let mut planar = true;
    for i in 0..segs.len() {
        let (_, hi, a, b) = segs[i];
        for &(lo2, _, c, d) in &segs[i + 1..] {
            if lo2 > hi {
                break;
            }
            let shared = a == c || a == d || b == c || b == d;
            if segments_conflict(lat[a], lat[b], lat[c], lat[d], shared) {
                out.push(Planarity((a, b), (c, d)));
                planar = false;
            }
        }
    }

    if planar {
        let n = t.len();
        let adjacency: Vec<Vec<usize>> = (0..n).map(|v| t.neighbors(v).to_vec()).collect();
        let faces = trace_faces(lat, &adjacency);
        let mut bounded = BTreeSet::new();
        let mut other = 0;
        for f in &faces {
            if f.len() == 3 && orient(lat[f[0]], lat[f[1]], lat[f[2]]) > 0 {
                let mut s = [f[0], f[1], f[2]];
                s.sort_unstable();
                bounded.insert(s);
            } else {
                other += 1;
            }
        }
        if other != 1 {
            out.push(FaceMismatch(format!("{other} non-triangular faces")));
        }
        let stored: BTreeSet<[usize; 3]> = t
            .triangles()
            .iter()
            .map(|tri| {
                let mut s = tri.vertices;
                s.sort_unstable();
                s
            })
            .collect();
        if stored.len() != t.triangles().len() {
            out.push(FaceMismatch("duplicate triangle".into()));
        }
        let extra: HashSet<_> = stored.difference(&bounded).collect();
        let missing: HashSet<_> = bounded.difference(&stored).collect();
        if !extra.is_empty() || !missing.is_empty() {
            out.push(FaceMismatch(format!(
                "{} stored triangles are not faces, {} faces are not stored",
                extra.len(),
                missing.len()
            )));
        }
        let (v, e, f) = (n, t.edges().len(), faces.len());
        if v + f != e + 2 {
            out.push(Euler { v, e, f });
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::{triangulate_linf, Edge, Triangle};
    use crate::geometry::{AxisSquare, Coord, Metric, PointSet};

    fn set(v: &[(i64, i64)]) -> PointSet {
        PointSet::from_integers(v).unwrap()
    }

    #[test]
    fn wrong_diagonal_is_flagged() {
        // Convex quadrilateral whose Delaunay diagonal is (0,1); use (2,3).
        let pts = set(&[(0, 0), (10, 1), (4, 8), (6, -7)]);
        let good = triangulate_linf(&pts).unwrap();
        assert!(good.has_edge(0, 1) && !good.has_edge(2, 3));
        let mut edges: Vec<Edge> = good
            .edges()
            .iter()
            .filter(|e| (e.u, e.v) != (0, 1))
            .cloned()
            .collect();
        let sq = AxisSquare::new(Coord::int(-9), Coord::int(-7), Coord::int(15)).unwrap();
        edges.push(Edge {
            u: 2,
            v: 3,
            witness: sq.clone(),
        });
        let tris = vec![
            Triangle {
                vertices: [0, 3, 2],
                circumsquare: sq.clone(),
            },
            Triangle {
                vertices: [1, 2, 3],
                circumsquare: sq,
            },
        ];
        let bad = Triangulation::from_parts(pts, Metric::Linf, edges, tris).unwrap();
        let v = validate_triangulation(&bad);
        assert!(v.contains(&TriangulationViolation::NonEmptyWitness(2, 3)), "{v:?}");
        assert!(!v.iter().any(|x| matches!(x, TriangulationViolation::Planarity(..))));
        assert!(!v.iter().any(|x| matches!(x, TriangulationViolation::Euler { .. })));
    }

    #[test]
    fn crossing_edges_are_flagged() {
        let pts = set(&[(0, 0), (10, 1), (4, 8), (6, -7)]);
        let good = triangulate_linf(&pts).unwrap();
        let mut edges = good.edges().to_vec();
        let w = AxisSquare::new(Coord::int(0), Coord::int(0), Coord::int(1)).unwrap();
        let missing = if good.has_edge(0, 1) { (2, 3) } else { (0, 1) };
        edges.push(Edge {
            u: missing.0,
            v: missing.1,
            witness: w,
        });
        let bad =
            Triangulation::from_parts(pts, Metric::Linf, edges, good.triangles().to_vec()).unwrap();
        let v = validate_triangulation(&bad);
        assert!(
            v.iter().any(|x| matches!(x, TriangulationViolation::Planarity(..))),
            "{v:?}"
        );
    }
}
