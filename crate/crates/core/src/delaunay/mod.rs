//! L∞- and L1-Delaunay triangulations built from the empty-square test.

mod validate;

use std::collections::HashMap;

use crate::error::TriangulationError;
use crate::geometry::lattice::{cmp_direction, minimal_empty_square, orient, LSquare, Lp};
use crate::geometry::{AxisSquare, GeometryError, Metric, PointSet};

pub use validate::{validate_triangulation, TriangulationViolation};

/// Undirected edge with `u < v`. The witness is an empty square in the
/// working frame (see [`Triangulation::frame`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub witness: AxisSquare,
}

/// Counterclockwise triangle with its empty circumscribing square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub vertices: [usize; 3],
    pub circumsquare: AxisSquare,
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    metric: Metric,
    points: PointSet,
    frame: PointSet,
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
    adjacency: Vec<Vec<usize>>,
    edge_index: HashMap<(usize, usize), usize>,
    edge_triangles: HashMap<(usize, usize), Vec<usize>>,
    vertex_triangles: Vec<Vec<usize>>,
    tri_squares: Vec<Option<LSquare>>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Image of `set` under `(x, y) -> (x - y, x + y)`, the scaled 45° rotation
/// that turns tipped squares into axis-parallel ones.
pub fn rotate_l1(set: &PointSet) -> Result<PointSet, GeometryError> {
    set.map(|x, y| (x - y, x + y))
}

fn frame_for(points: &PointSet, metric: Metric) -> Result<PointSet, TriangulationError> {
    match metric {
        Metric::Linf => Ok(points.clone()),
        Metric::L1 => Ok(rotate_l1(points)?),
        Metric::L2 => Err(TriangulationError::Invalid(
            "only linf and l1 triangulations are supported".into(),
        )),
    }
}

impl Triangulation {
    /// Assembles a triangulation from explicit parts without checking the
    /// Delaunay property; use [`validate_triangulation`] for that.
    pub fn from_parts(
        points: PointSet,
        metric: Metric,
        edges: Vec<Edge>,
        triangles: Vec<Triangle>,
    ) -> Result<Self, TriangulationError> {
        let frame = frame_for(&points, metric)?;
        let n = points.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_index = HashMap::new();
        let mut edges_norm = Vec::with_capacity(edges.len());
        for e in edges {
            let (u, v) = key(e.u, e.v);
            if v >= n {
                return Err(GeometryError::UnknownPoint(v).into());
            }
            if u == v {
                return Err(GeometryError::CoincidentPoints(u, v).into());
            }
            if edge_index.insert((u, v), edges_norm.len()).is_some() {
                return Err(TriangulationError::Invalid(format!("duplicate edge ({u},{v})")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            edges_norm.push(Edge { u, v, witness: e.witness });
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        let mut edge_triangles: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut vertex_triangles = vec![Vec::new(); n];
        let mut tri_squares = Vec::with_capacity(triangles.len());
        for (t, tri) in triangles.iter().enumerate() {
            for i in 0..3 {
                let (a, b) = (tri.vertices[i], tri.vertices[(i + 1) % 3]);
                if a >= n {
                    return Err(GeometryError::UnknownPoint(a).into());
                }
                edge_triangles.entry(key(a, b)).or_default().push(t);
                vertex_triangles[a].push(t);
            }
            tri_squares.push(frame.square_to_lattice(&tri.circumsquare));
        }
        Ok(Triangulation {
            metric,
            points,
            frame,
            edges: edges_norm,
            triangles,
            adjacency,
            edge_index,
            edge_triangles,
            vertex_triangles,
            tri_squares,
        })
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    /// The input points.
    pub fn points(&self) -> &PointSet {
        &self.points
    }

    /// The points in the frame where the empty regions are axis-parallel
    /// squares: the input itself for L∞, its rotated image for L1.
    pub fn frame(&self) -> &PointSet {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index.contains_key(&key(u, v))
    }

    pub fn edge(&self, u: usize, v: usize) -> Option<&Edge> {
        self.edge_index.get(&key(u, v)).map(|&i| &self.edges[i])
    }

    /// Triangles incident to the edge `uv`.
    pub fn triangles_on_edge(&self, u: usize, v: usize) -> &[usize] {
        self.edge_triangles
            .get(&key(u, v))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn triangles_at(&self, v: usize) -> &[usize] {
        &self.vertex_triangles[v]
    }

    /// Circumsquare of triangle `t` on the frame lattice.
    pub fn circumsquare_lattice(&self, t: usize) -> Option<LSquare> {
        self.tri_squares[t]
    }

    /// Euclidean length of edge `uv` in input coordinates.
    pub fn edge_length(&self, u: usize, v: usize) -> f64 {
        self.points.dist(u, v)
    }

    /// Sorted list of `(u, v)` pairs, `u < v`.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        e.sort_unstable();
        e
    }
}

/// Faces of the plane graph on `lat` with the given neighbor lists.
/// Bounded faces are traced counterclockwise.
pub(crate) fn trace_faces(lat: &[Lp], adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = lat.len();
    let ccw: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut nb = adjacency[v].clone();
            nb.sort_by(|&a, &b| cmp_direction(lat[a].sub(lat[v]), lat[b].sub(lat[v])));
            nb
        })
        .collect();
    let pos: HashMap<(usize, usize), usize> = ccw
        .iter()
        .enumerate()
        .flat_map(|(v, nb)| nb.iter().enumerate().map(move |(i, &w)| ((v, w), i)))
        .collect();
    let mut seen: HashMap<(usize, usize), bool> = HashMap::new();
    let mut faces = Vec::new();
    for u in 0..n {
        for &v in &ccw[u] {
            if seen.contains_key(&(u, v)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (u, v);
            while !seen.contains_key(&(a, b)) {
                seen.insert((a, b), true);
                face.push(a);
                let nb = &ccw[b];
                let i = pos[&(b, a)];
                let c = nb[(i + nb.len() - 1) % nb.len()];
                a = b;
                b = c;
            }
            faces.push(face);
        }
    }
    faces
}

/// Empty circumscribing square of three frame lattice points, if any.
pub(crate) fn circumsquare(lat: &[Lp], tri: [usize; 3]) -> Option<LSquare> {
    let p = tri.map(|i| lat[i]);
    let minx = p.iter().map(|q| q.x).min().unwrap();
    let maxx = p.iter().map(|q| q.x).max().unwrap();
    let miny = p.iter().map(|q| q.y).min().unwrap();
    let maxy = p.iter().map(|q| q.y).max().unwrap();
    let s = (maxx - minx).max(maxy - miny);
    for west in [minx, maxx - s] {
        for south in [miny, maxy - s] {
            let sq = LSquare::new(west, south, s);
            if p.iter().all(|&q| sq.on_boundary(q)) && lat.iter().all(|&q| !sq.contains_open(q)) {
                return Some(sq);
            }
        }
    }
    None
}

/// Pairs whose open bounding rectangle is empty, as `(u, v)` with `u < v`.
/// Every Delaunay edge is among them.
fn empty_rectangle_pairs(lat: &[Lp], by_x: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &u) in by_x.iter().enumerate() {
        let yu = lat[u].y;
        let mut above = i128::MAX;
        let mut below = i128::MIN;
        for &v in &by_x[i + 1..] {
            let yv = lat[v].y;
            if yv > yu {
                if yv < above {
                    out.push(key(u, v));
                    above = yv;
                }
            } else if yv > below {
                out.push(key(u, v));
                below = yv;
            }
            if above == yu + 1 && below == yu - 1 {
                break;
            }
        }
    }
    out
}

pub fn triangulate_linf(set: &PointSet) -> Result<Triangulation, TriangulationError> {
    build(set.clone(), Metric::Linf)
}

pub fn triangulate_l1(set: &PointSet) -> Result<Triangulation, TriangulationError> {
    build(set.clone(), Metric::L1)
}

pub fn triangulate(set: &PointSet, metric: Metric) -> Result<Triangulation, TriangulationError> {
    build(set.clone(), metric)
}

fn build(points: PointSet, metric: Metric) -> Result<Triangulation, TriangulationError> {
    if points.len() < 2 {
        return Err(GeometryError::TooFewPoints {
            needed: 2,
            got: points.len(),
        }
        .into());
    }
    let frame = frame_for(&points, metric)?;
    frame.require_general_position()?;
    let lat = frame.lattice();
    let n = lat.len();
    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by_key(|&i| lat[i].x);
    let mut by_y: Vec<usize> = (0..n).collect();
    by_y.sort_by_key(|&i| lat[i].y);
    let mut rank_x = vec![0; n];
    let mut rank_y = vec![0; n];
    for (r, &i) in by_x.iter().enumerate() {
        rank_x[i] = r;
    }
    for (r, &i) in by_y.iter().enumerate() {
        rank_y[i] = r;
    }

    let mut edges = Vec::new();
    for (u, v) in empty_rectangle_pairs(lat, &by_x) {
        let w = (lat[u].x - lat[v].x).abs();
        let h = (lat[u].y - lat[v].y).abs();
        let (order, rank) = if w >= h { (&by_x, &rank_x) } else { (&by_y, &rank_y) };
        let (r0, r1) = (rank[u].min(rank[v]), rank[u].max(rank[v]));
        if let Some(sq) = minimal_empty_square(lat, u, v, order[r0 + 1..r1].iter().copied()) {
            edges.push(Edge {
                u,
                v,
                witness: frame.square_to_rational(&sq),
            });
        }
    }
    edges.sort_by_key(|e| (e.u, e.v));

    let mut adjacency = vec![Vec::new(); n];
    for e in &edges {
        adjacency[e.u].push(e.v);
        adjacency[e.v].push(e.u);
    }
    let faces = trace_faces(lat, &adjacency);
    let mut triangles = Vec::new();
    let mut outer = 0;
    for f in faces {
        if f.len() == 3 && orient(lat[f[0]], lat[f[1]], lat[f[2]]) > 0 {
            let mut t = [f[0], f[1], f[2]];
            let m = (0..3).min_by_key(|&i| t[i]).unwrap();
            t.rotate_left(m);
            let sq = circumsquare(lat, t).ok_or_else(|| TriangulationError::MissingCircumsquare(t.to_vec()))?;
            triangles.push(Triangle {
                vertices: t,
                circumsquare: frame.square_to_rational(&sq),
            });
        } else {
            outer += 1;
        }
    }
    if outer != 1 {
        return Err(TriangulationError::Invalid(format!(
            "expected one outer face, found {outer} non-triangular faces"
        )));
    }
    triangles.sort_by_key(|t| t.vertices);
    Triangulation::from_parts(points, metric, edges, triangles)
}

/// Slow reference: a pair is an edge iff some square through both points is
/// empty, decided by trying every critical placement directly.
pub fn brute_force_edges(set: &PointSet) -> Vec<(usize, usize)> {
    let lat = set.lattice();
    let mut out = Vec::new();
    for u in 0..lat.len() {
        for v in u + 1..lat.len() {
            if brute_force_pair(lat, u, v) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Candidate squares: the slide of minimal squares sampled at every
/// parameter where a third point touches the boundary (plus midpoints), and
/// the two corner-anchored rays sampled at every side length where a third
/// point touches the boundary (plus one beyond). The point coordinates are
/// doubled so midpoints stay integral.
pub(crate) fn brute_force_pair(lat: &[Lp], u: usize, v: usize) -> bool {
    let d: Vec<Lp> = lat.iter().map(|p| Lp::new(2 * p.x, 2 * p.y)).collect();
    let (pu, pv) = (d[u], d[v]);
    let w = (pu.x - pv.x).abs();
    let h = (pu.y - pv.y).abs();
    let s0 = w.max(h);
    let (minx, maxx) = (pu.x.min(pv.x), pu.x.max(pv.x));
    let (miny, maxy) = (pu.y.min(pv.y), pu.y.max(pv.y));
    let empty = |sq: &LSquare| {
        sq.on_boundary(pu)
            && sq.on_boundary(pv)
            && d.iter().enumerate().all(|(i, &q)| i == u || i == v || !sq.contains_open(q))
    };
    let mut cands: Vec<LSquare> = Vec::new();
    let mut params: Vec<i128> = Vec::new();
    if w >= h {
        let (lo, hi) = (maxy - s0, miny);
        params.extend([lo, hi]);
        for q in &d {
            params.extend([q.y, q.y - s0]);
        }
        params.retain(|&t| lo <= t && t <= hi);
        params.sort_unstable();
        params.dedup();
        let mids: Vec<i128> = params.windows(2).map(|p| (p[0] + p[1]) / 2).collect();
        params.extend(mids);
        cands.extend(params.iter().map(|&t| LSquare::new(minx, t, s0)));
    } else {
        let (lo, hi) = (maxx - s0, minx);
        params.extend([lo, hi]);
        for q in &d {
            params.extend([q.x, q.x - s0]);
        }
        params.retain(|&t| lo <= t && t <= hi);
        params.sort_unstable();
        params.dedup();
        let mids: Vec<i128> = params.windows(2).map(|p| (p[0] + p[1]) / 2).collect();
        params.extend(mids);
        cands.extend(params.iter().map(|&t| LSquare::new(t, miny, s0)));
    }
    // Rays anchored at the off corners (pu.x, pv.y) and (pv.x, pu.y).
    for (cx, cy) in [(pu.x, pv.y), (pv.x, pu.y)] {
        let mut sides = vec![s0 + 1, 4 * s0 + 4];
        for q in &d {
            sides.push((q.x - cx).abs());
            sides.push((q.y - cy).abs());
        }
        sides.retain(|&s| s > s0);
        sides.sort_unstable();
        sides.dedup();
        let extra: Vec<i128> = sides.iter().map(|s| s + 1).collect();
        sides.extend(extra);
        for s in sides {
            let west = if cx == minx { cx } else { cx - s };
            let south = if cy == miny { cy } else { cy - s };
            cands.push(LSquare::new(west, south, s));
        }
    }
    cands.iter().any(empty)
}
