#![allow(dead_code)]

use linf_spanner::delaunay::Triangulation;
use linf_spanner::geometry::PointSet;

fn open_contains(west: i128, south: i128, side: i128, x: i128, y: i128) -> bool {
    west < x && x < west + side && south < y && y < south + side
}

/// Pairs `(u, v)` with an empty axis-parallel square through both, found by
/// sliding the smallest such squares and probing every place where a point
/// enters or leaves.
pub fn square_oracle(set: &PointSet) -> Vec<(usize, usize)> {
    let pts: Vec<(i128, i128)> = set.lattice().iter().map(|p| (p.x, p.y)).collect();
    let mut out = Vec::new();
    for u in 0..pts.len() {
        for v in u + 1..pts.len() {
            let (a, b) = (pts[u], pts[v]);
            let (x0, x1) = (a.0.min(b.0), a.0.max(b.0));
            let (y0, y1) = (a.1.min(b.1), a.1.max(b.1));
            let s = (x1 - x0).max(y1 - y0);
            // (fixed west, fixed south, sliding along y?) and slide range
            let horizontal_fixed = x1 - x0 >= y1 - y0;
            let (lo, hi) = if horizontal_fixed { (y1 - s, y0) } else { (x1 - s, x0) };
            let mut cands = vec![lo, hi];
            for &(x, y) in &pts {
                let z = if horizontal_fixed { y } else { x };
                cands.push(z);
                cands.push(z - s);
            }
            let free = cands.into_iter().filter(|&t| lo <= t && t <= hi).any(|t| {
                let (w, so) = if horizontal_fixed { (x0, t) } else { (t, y0) };
                !pts.iter().any(|&(x, y)| open_contains(w, so, s, x, y))
            });
            if free {
                out.push((u, v));
            }
        }
    }
    out
}

/// All-pairs graph distances by Floyd–Warshall on the edge list.
pub fn floyd_warshall(t: &Triangulation) -> Vec<Vec<f64>> {
    let n = t.len();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for e in t.edges() {
        let w = t.points().dist(e.u, e.v);
        d[e.u][e.v] = w;
        d[e.v][e.u] = w;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let c = d[i][k] + d[k][j];
                if c < d[i][j] {
                    d[i][j] = c;
                }
            }
        }
    }
    d
}
