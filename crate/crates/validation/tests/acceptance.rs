//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use linf_spanner::delaunay::{brute_force_edges, rotate_l1, triangulate_l1, triangulate_linf, Triangulation};
use linf_spanner::generator::{generate_chew_family, random_pointset, ChewFamilyParams, Distribution2d};
use linf_spanner::router::{audit_lemmas, route};
use linf_spanner::spanner::{corollary_maximizer, shortest_paths_from, stretch_summary, theorem_bound, SQRT2};

/// Absolute slack allowed on every bound comparison (unit-box normalized).
const BOUND_TOL: f64 = 1e-9;
const LIMIT: f64 = 2.613_125_9;

const C1_DELTA: f64 = 0.01;
const C1_WINDOW: (f64, f64) = (2.5843 - 1e-3, 2.6132);
const C1_FINE_M: usize = 1000;
const C1_FINE_MIN: f64 = 2.610;
const C1_PRECISION: u64 = 1_000_000_000;
const C1_TIME: Duration = Duration::from_secs(60);

const C2_SETS: u64 = 1000;
const C2_MAX_N: usize = 40;
const C2_CHEW: [usize; 12] = [4, 5, 6, 7, 8, 9, 10, 11, 12, 20, 50, 141];
const C2_TIME: Duration = Duration::from_secs(600);

const C4_SEEDS: u64 = 200;
const C4_MAX_N: usize = 12;

const C5_SETS: usize = 200;
const C5_TOL: f64 = 1e-9;

const C7_VALUE_TOL: f64 = 1e-9;
const C7_RATIO_TOL: f64 = 1e-6;

const C8_M: [usize; 11] = [4, 5, 6, 7, 8, 9, 10, 11, 12, 20, 141];

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: usize, name: &str, o: &Outcome) {
    let tag = if o.pass { "PASS" } else { "FAIL" };
    println!("criterion {n} ({name}): {tag}  {}", o.detail);
}

fn chew(m: usize) -> (Triangulation, linf_spanner::generator::ChewDescriptor) {
    let (set, d) = generate_chew_family(ChewFamilyParams { m, precision: C1_PRECISION }).unwrap();
    (triangulate_linf(&set).unwrap(), d)
}

fn criterion_1() -> Outcome {
    let m_coarse = (SQRT2 / C1_DELTA).round() as usize;
    let mut parts = Vec::new();
    let mut pass = true;
    for (m, check) in [
        (m_coarse, Box::new(|s: f64| C1_WINDOW.0 <= s && s <= C1_WINDOW.1) as Box<dyn Fn(f64) -> bool>),
        (C1_FINE_M, Box::new(|s: f64| s >= C1_FINE_MIN)),
    ] {
        let start = Instant::now();
        let (t, d) = chew(m);
        let s = stretch_summary(&t);
        let took = start.elapsed();
        let ok = check(s.max_ratio) && took <= C1_TIME;
        pass &= ok;
        parts.push(format!(
            "m={m} delta={:.7} stretch={:.7} closed-form={:.7} argmax={} time={:.1}s [{}]",
            d.delta_f64(),
            s.max_ratio,
            d.expected_stretch(),
            if s.argmax == (d.a.min(d.b), d.a.max(d.b)) { "(a,b)" } else { "other" },
            took.as_secs_f64(),
            if ok { "ok" } else { "miss" }
        ));
    }
    Outcome {
        pass,
        detail: format!(
            "{}; required window [{:.4}, {:.4}] and >= {C1_FINE_MIN} for m={C1_FINE_M}",
            parts.join("; "),
            C1_WINDOW.0,
            C1_WINDOW.1
        ),
    }
}

#[derive(Default)]
struct Campaign {
    sets: usize,
    pairs: usize,
    bound_failures: usize,
    routes: usize,
    route_failures: usize,
    min_rel_slack: f64,
    max_stretch: f64,
    audited: usize,
    facts: usize,
    lemma_failures: usize,
    first_errors: Vec<String>,
    elapsed: Duration,
}

impl Campaign {
    fn note(&mut self, msg: String) {
        if self.first_errors.len() < 5 {
            self.first_errors.push(msg);
        }
    }

    fn run(&mut self, name: &str, t: &Triangulation) {
        self.sets += 1;
        let n = t.len();
        let ext = t.points().extent().max(f64::MIN_POSITIVE);
        let tol = BOUND_TOL * ext;
        for a in 0..n {
            let sp = shortest_paths_from(t, a).unwrap();
            for b in 0..n {
                if a == b {
                    continue;
                }
                if a < b {
                    self.pairs += 1;
                    let ratio = sp.dist[b] / t.points().dist(a, b);
                    self.max_stretch = self.max_stretch.max(ratio);
                    if sp.dist[b] > theorem_bound(t, a, b) + tol {
                        self.bound_failures += 1;
                        self.note(format!("{name} ({a},{b}) d_T above bound"));
                    }
                }
                self.routes += 1;
                match route(t, a, b) {
                    Ok(c) => {
                        let slack = c.slack().min(c.min_audit_slack());
                        if slack < -tol || c.path.length + tol < sp.dist[b] {
                            self.route_failures += 1;
                            self.note(format!("{name} ({a},{b}) slack {slack}"));
                        }
                        self.min_rel_slack = self.min_rel_slack.min(c.slack() / c.bound);
                    }
                    Err(e) => {
                        self.route_failures += 1;
                        self.note(format!("{name} ({a},{b}) {e}"));
                    }
                }
                match audit_lemmas(t, a, b, &sp.dist) {
                    Ok(Some(r)) => {
                        self.audited += 1;
                        self.facts += r.checks;
                        if !r.passed() {
                            self.lemma_failures += r.violations.len();
                            self.note(format!("{name} ({a},{b}) {:?}", r.violations));
                        }
                    }
                    Ok(None) => {}
                    Err(e) => {
                        self.lemma_failures += 1;
                        self.note(format!("{name} ({a},{b}) audit: {e}"));
                    }
                }
            }
        }
    }
}

fn campaign() -> Campaign {
    let start = Instant::now();
    let mut c = Campaign {
        min_rel_slack: f64::INFINITY,
        ..Default::default()
    };
    for seed in 0..C2_SETS {
        let n = 2 + (seed as usize) % (C2_MAX_N - 1);
        let dist = Distribution2d::ALL[(seed as usize) % 3];
        let s = random_pointset(n, seed, dist).unwrap();
        c.run(&format!("seed {seed} {dist} n={n}"), &triangulate_linf(&s).unwrap());
    }
    for m in C2_CHEW {
        let (t, _) = chew(m);
        c.run(&format!("chew m={m}"), &t);
    }
    c.elapsed = start.elapsed();
    c
}

fn criterion_2(c: &Campaign) -> Outcome {
    let pass = c.bound_failures == 0 && c.route_failures == 0 && c.elapsed <= C2_TIME;
    Outcome {
        pass,
        detail: format!(
            "{} sets ({} random, n<=40, plus chew m={:?}), {} pairs, {} bound violations, {} certificates, {} failed, min relative slack {:.4}, time {:.1}s{}",
            c.sets,
            C2_SETS,
            C2_CHEW,
            c.pairs,
            c.bound_failures,
            c.routes,
            c.route_failures,
            c.min_rel_slack,
            c.elapsed.as_secs_f64(),
            errors(c)
        ),
    }
}

fn errors(c: &Campaign) -> String {
    if c.first_errors.is_empty() {
        String::new()
    } else {
        format!(", first errors: {}", c.first_errors.join(" | "))
    }
}

fn criterion_3(c: &Campaign) -> Outcome {
    Outcome {
        pass: c.max_stretch <= LIMIT + BOUND_TOL,
        detail: format!("max stretch {:.9} over the campaign, limit {LIMIT}", c.max_stretch),
    }
}

fn criterion_4() -> Outcome {
    let mut bad = 0;
    let mut edges = 0;
    for seed in 0..C4_SEEDS {
        let n = 3 + (seed as usize) % (C4_MAX_N - 2);
        let s = random_pointset(n, seed, Distribution2d::ALL[(seed as usize) % 3]).unwrap();
        let got = triangulate_linf(&s).unwrap().edge_pairs();
        edges += got.len();
        if got != brute_force_edges(&s) || got != common::square_oracle(&s) {
            bad += 1;
        }
    }
    Outcome {
        pass: bad == 0,
        detail: format!("{C4_SEEDS} sets with n<=12, {edges} edges, {bad} discrepancies"),
    }
}

fn criterion_5() -> Outcome {
    let mut sets = 0;
    let mut skipped = 0;
    let mut mismatched = 0;
    let mut worst = 0.0f64;
    let mut seed = 0u64;
    while sets < C5_SETS {
        let n = 5 + (seed as usize) % 36;
        let s = random_pointset(n, seed, Distribution2d::ALL[(seed as usize) % 3]).unwrap();
        seed += 1;
        let Ok(t1) = triangulate_l1(&s) else {
            skipped += 1;
            continue;
        };
        let ti = triangulate_linf(&rotate_l1(&s).unwrap()).unwrap();
        if t1.edge_pairs() != ti.edge_pairs() {
            mismatched += 1;
        }
        let diff = (stretch_summary(&t1).max_ratio - stretch_summary(&ti).max_ratio).abs();
        worst = worst.max(diff);
        sets += 1;
    }
    Outcome {
        pass: mismatched == 0 && worst <= C5_TOL,
        detail: format!(
            "{sets} sets ({skipped} skipped: rotated image not in general position), {mismatched} edge mismatches, max stretch difference {worst:.2e}"
        ),
    }
}

fn criterion_6(c: &Campaign) -> Outcome {
    Outcome {
        pass: c.lemma_failures == 0 && c.audited > 0,
        detail: format!(
            "{} empty-rectangle pairs audited, {} facts checked, {} violations",
            c.audited, c.facts, c.lemma_failures
        ),
    }
}

fn criterion_7() -> Outcome {
    let r = corollary_maximizer();
    let lim = (4.0 + 2.0 * SQRT2).sqrt();
    let dv = (r.value - lim).abs();
    let dr = (r.x_over_y() - (1.0 + SQRT2)).abs();
    Outcome {
        pass: dv <= C7_VALUE_TOL && dr <= C7_RATIO_TOL,
        detail: format!(
            "max {:.12} (error {dv:.1e}) at x/y = {:.9} (error {dr:.1e})",
            r.value,
            r.x_over_y()
        ),
    }
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    for m in C8_M {
        let (t, d) = chew(m);
        let norm = |v: &mut Vec<[usize; 3]>| {
            for x in v.iter_mut() {
                x.sort_unstable();
            }
            v.sort_unstable();
        };
        let mut got: Vec<[usize; 3]> = t.triangles().iter().map(|x| x.vertices).collect();
        let mut want = d.triangles.clone();
        norm(&mut got);
        norm(&mut want);
        let chains = d
            .q
            .windows(2)
            .chain(d.p.windows(2))
            .all(|w| t.has_edge(w[0], w[1]));
        if got != want || !chains {
            bad.push(m);
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("m in {C8_M:?}, mismatches at {bad:?}"),
    }
}

fn main() {
    let mut all = true;
    let mut run = |n: usize, name: &str, o: Outcome| {
        report(n, name, &o);
        all &= o.pass;
    };
    run(1, "lower-bound reproduction", criterion_1());
    let c = campaign();
    run(2, "theorem bound and certificates", criterion_2(&c));
    run(3, "upper-bound echo", criterion_3(&c));
    run(4, "oracle equivalence", criterion_4());
    run(5, "rotation duality", criterion_5());
    run(6, "structural lemma suite", criterion_6(&c));
    run(7, "corollary maximizer", criterion_7());
    run(8, "worst-case structure", criterion_8());
    if !all {
        std::process::exit(1);
    }
}
