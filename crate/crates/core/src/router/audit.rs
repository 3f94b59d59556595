//! Re-checks the structural facts behind the router with exact graph
//! distances instead of the router's own path lengths.

use serde::{Deserialize, Serialize};

use super::crossing::{
    crossing_edge_labels, crossing_sequence, maximal_path_start, potential_status, CrossingSequence, Track,
};
use crate::delaunay::Triangulation;
use crate::error::RouteError;
use crate::geometry::lattice::{in_open_rectangle, SideLabel};
use crate::geometry::Metric;
use crate::spanner::{self, SQRT2};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaAudit {
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub first_inductive: Option<usize>,
    /// Number of individual facts checked.
    pub checks: usize,
    pub violations: Vec<String>,
}

impl LemmaAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Log {
    checks: usize,
    violations: Vec<String>,
}

impl Log {
    fn fact(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

/// Audits a pair whose rectangle is empty and which is not an edge. Returns
/// `None` for other pairs. `dist_from_a` holds exact graph distances from `a`
/// in input units.
pub fn audit_lemmas(
    t: &Triangulation,
    a: usize,
    b: usize,
    dist_from_a: &[f64],
) -> Result<Option<LemmaAudit>, RouteError> {
    let lat = t.frame().lattice();
    if a == b || t.has_edge(a, b) || lat.iter().any(|&z| in_open_rectangle(lat[a], lat[b], z)) {
        return Ok(None);
    }
    let seq = crossing_sequence(t, a, b)?;
    let scale = match t.metric() {
        Metric::L1 => SQRT2,
        _ => 1.0,
    };
    let to_lattice = scale / t.frame().unit();
    let tol = spanner::tolerance(t) * to_lattice;
    let d = |v: usize| dist_from_a[v] * to_lattice;
    let mut log = Log {
        checks: 0,
        violations: Vec::new(),
    };
    check_structure(&seq, &mut log);
    let k = seq.k();
    let first = seq.first_inductive();
    let last = first.unwrap_or(k);
    for i in 1..=last {
        let st = potential_status(&seq, i, d)?;
        log.fact(st.has_potential(tol), || {
            format!("S{i} lacks potential: {} > {}", st.potential, st.capacity)
        });
        for &c in &st.promising {
            let cap = 2.0 * st.x as f64;
            log.fact(d(c) <= cap + tol, || {
                format!("promising {c} in S{i}: d_T {} > 2x {cap}", d(c))
            });
        }
    }
    check_maximal_paths(&seq, last, &mut log);
    if let Some(j) = first {
        let c = seq.inductive_point(j);
        let p = seq.pos(c);
        let growth = 1.0 + SQRT2;
        if c == seq.high[j] {
            let lhs = d(c) + (p.y - seq.target.y) as f64;
            let rhs = growth * p.x as f64;
            log.fact(lhs <= rhs + tol, || format!("inductive h{j}={c}: {lhs} > {rhs}"));
        } else {
            let lhs = d(c) - p.y as f64;
            let rhs = growth * p.x as f64;
            log.fact(lhs <= rhs + tol, || format!("inductive l{j}={c}: {lhs} > {rhs}"));
        }
    } else {
        let cap = 2.0 * seq.target.x as f64;
        log.fact(d(b) <= cap + tol, || format!("no inductive square: d_T {} > 2x {cap}", d(b)));
    }
    Ok(Some(LemmaAudit {
        a,
        b,
        k,
        first_inductive: first,
        checks: log.checks,
        violations: log.violations,
    }))
}

fn check_structure(seq: &CrossingSequence, log: &mut Log) {
    let k = seq.k();
    let (xx, yy) = (seq.target.x, seq.target.y);
    log.fact(seq.sides(1, seq.a).contains(SideLabel::W), || {
        format!("a={} not on the W side of S1", seq.a)
    });
    log.fact(seq.sides(k, seq.b).contains(SideLabel::E), || {
        format!("b={} not on the E side of S{k}", seq.b)
    });
    for i in 1..k {
        let p = seq.pos(seq.high[i]);
        log.fact(0 < p.x && p.x < xx && p.y > yy, || format!("h{i}={} not above R", seq.high[i]));
    }
    for i in 1..=k {
        let p = seq.pos(seq.low[i]);
        log.fact(0 < p.x && p.x < xx && p.y < 0, || format!("l{i}={} not below R", seq.low[i]));
    }
    for e in crossing_edge_labels(seq) {
        log.fact(e.label.is_some(), || {
            format!(
                "{} edge ({}, {}) in S{} has sides {} and {}",
                e.track,
                e.from,
                e.to,
                e.index,
                seq.sides(e.index, e.from),
                seq.sides(e.index, e.to)
            )
        });
    }
}

/// Maximal high paths use WN edges and maximal low paths WS edges, so each
/// is no longer than `Δx + |Δy|`.
fn check_maximal_paths(seq: &CrossingSequence, j: usize, log: &mut Log) {
    for track in [Track::High, Track::Low] {
        let (chain, to_side) = match track {
            Track::High => (&seq.high, SideLabel::N),
            Track::Low => (&seq.low, SideLabel::S),
        };
        let end = if track == Track::High && j == seq.k() { j - 1 } else { j };
        let start = maximal_path_start(seq, track, end);
        let mut len = 0.0;
        for t in start + 1..=end {
            if chain[t] == chain[t - 1] {
                continue;
            }
            let sq = seq.square(t);
            let ok = sq.sides_of(seq.pos(chain[t - 1])).contains(SideLabel::W)
                && sq.sides_of(seq.pos(chain[t])).contains(to_side);
            log.fact(ok, || {
                format!("maximal {track} edge ({}, {}) in S{t} is not W{to_side}", chain[t - 1], chain[t])
            });
            len += seq.pos(chain[t - 1]).dist(seq.pos(chain[t]));
        }
        let (p, q) = (seq.pos(chain[start]), seq.pos(chain[end]));
        let cap = ((q.x - p.x) + (q.y - p.y).abs()) as f64;
        log.fact(len <= cap * (1.0 + 1e-12), || {
            format!("maximal {track} path from index {start} to {end}: {len} > {cap}")
        });
    }
}
