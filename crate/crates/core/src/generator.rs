//! Instance generators: the ladder family whose stretch approaches
//! `√(4+2√2)`, and seeded random point sets in general position.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::GeneratorError;
use crate::geometry::{Coord, PointSet, Violation};

/// `√(4+2√2)`, the limit of the ladder family's stretch.
pub fn chew_limit() -> f64 {
    (4.0 + 2.0 * std::f64::consts::SQRT_2).sqrt()
}

/// Continued-fraction convergents `p/q` of √2 with `q <= max_den`, in
/// increasing order of denominator.
pub fn sqrt2_convergents(max_den: u64) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    let (mut p, mut q) = (BigInt::one(), BigInt::one());
    let bound = BigInt::from(max_den);
    while q <= bound {
        out.push((p.clone(), q.clone()));
        let np = &p + &q * 2;
        let nq = &p + &q;
        p = np;
        q = nq;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChewFamilyParams {
    /// `δ = √2 / m`; the family has `2m - 2` points.
    pub m: usize,
    /// Largest denominator allowed for the rational stand-in of √2.
    pub precision: u64,
}

impl ChewFamilyParams {
    pub fn new(m: usize) -> Self {
        ChewFamilyParams {
            m,
            precision: 1_000_000_000,
        }
    }

    /// The `m` whose `δ = √2/m` is closest to the requested value.
    pub fn for_delta(delta: f64, precision: u64) -> Self {
        let m = (std::f64::consts::SQRT_2 / delta).round().max(4.0) as usize;
        ChewFamilyParams { m, precision }
    }

    /// Number of interior points on each of the two chains.
    pub fn k(&self) -> usize {
        self.m - 3
    }
}

/// Expected structure of a generated ladder.
#[derive(Clone, Debug)]
pub struct ChewDescriptor {
    pub m: usize,
    pub k: usize,
    /// Rational value used for √2.
    pub sqrt2: Coord,
    pub delta: Coord,
    pub a: usize,
    pub b: usize,
    pub c1: usize,
    pub c2: usize,
    /// `p_0 = a, ..., p_{k+1} = c1`.
    pub p: Vec<usize>,
    /// `q_0 = c2, ..., q_{k+1} = b`.
    pub q: Vec<usize>,
    /// `(p_i, p_{i+1}, q_i)` and `(q_i, q_{i+1}, p_{i+1})`, counterclockwise.
    pub triangles: Vec<[usize; 3]>,
}

impl ChewDescriptor {
    pub fn delta_f64(&self) -> f64 {
        self.delta.to_f64()
    }

    /// Stretch of the pair `(a, b)` predicted from the rationalized δ.
    pub fn expected_stretch(&self) -> f64 {
        chew_stretch_closed_form(self.delta_f64()).unwrap_or(f64::NAN)
    }
}

/// `shift` moves `b` right by `e / shift`, where `e` is the horizontal step
/// of the chains.
fn ladder(m: usize, r: &BigRational, shift: u64) -> Vec<(Coord, Coord)> {
    let mi = BigInt::from(m);
    let delta = r / BigRational::from_integer(mi.clone());
    let e = r / BigRational::from_integer(&mi * BigInt::from(m - 2));
    let one = BigRational::one();
    let mut pts = Vec::with_capacity(2 * m - 2);
    for i in 0..=m - 2 {
        let ib = BigRational::from_integer(i.into());
        pts.push((Coord::from_rational(&ib * &e), Coord::from_rational(&ib * &delta)));
    }
    for j in 0..=m - 2 {
        let jb = BigRational::from_integer(j.into());
        let mut x = &one - &delta + &jb * &e;
        if j == m - 2 {
            x += &e / BigRational::from_integer(shift.into());
        }
        let y = -&one + BigRational::from_integer((j + 2).into()) * &delta;
        pts.push((Coord::from_rational(x), Coord::from_rational(y)));
    }
    pts
}

/// Divisors tried for the offset of `b`, in order.
const BOUNDARY_SHIFTS: [u64; 6] = [1024, 1031, 1033, 1039, 1049, 1051];

/// Builds the ladder: `a = (0,0)`, `b = (1, √2-1)`, `c1 = (δ, √2-2δ)`,
/// `c2 = (1-δ, -(1-2δ))`, with `k` evenly spaced points on each of the
/// segments `a c1` and `c2 b`, consecutive ordinates differing by δ.
///
/// Taken literally, `p_i` and `q_{i-2}` are exactly one unit apart
/// vertically, as are `a` and `b` horizontally, so `a, p_i, q_{i-2}, b` lie
/// on one unit square for every `i`. To restore general position `b` is
/// moved right by a small fraction of the chain step (about `1e-3 / m²`).
///
/// √2 is replaced by the finest convergent within `precision` for which the
/// result is in general position.
pub fn generate_chew_family(
    params: ChewFamilyParams,
) -> Result<(PointSet, ChewDescriptor), GeneratorError> {
    let m = params.m;
    if m < 4 {
        return Err(GeneratorError::InvalidParameter(format!(
            "m must be at least 4, got {m}"
        )));
    }
    let convs = sqrt2_convergents(params.precision);
    let mut last_err = None;
    let attempts = convs
        .into_iter()
        .rev()
        .flat_map(|(p, q)| BOUNDARY_SHIFTS.iter().map(move |&s| (BigRational::new(p.clone(), q.clone()), s)));
    for (r, shift) in attempts {
        let pts = PointSet::new(ladder(m, &r, shift))?;
        let v = pts.validate();
        if !v.is_empty() {
            last_err = Some(v);
            continue;
        }
        let k = m - 3;
        let n = 2 * k + 4;
        let labels: Vec<String> = (0..n)
            .map(|i| match i {
                0 => "a".to_string(),
                i if i == k + 1 => "c1".to_string(),
                i if i == k + 2 => "c2".to_string(),
                i if i == n - 1 => "b".to_string(),
                i if i <= k => format!("p{i}"),
                i => format!("q{}", i - (k + 2)),
            })
            .collect();
        let pid: Vec<usize> = (0..=k + 1).collect();
        let qid: Vec<usize> = (k + 2..n).collect();
        let mut triangles = Vec::with_capacity(2 * k + 2);
        for i in 0..=k {
            // q_i lies to the right of the p-chain, so (p_i, q_i, p_{i+1})
            // is counterclockwise.
            triangles.push([pid[i], qid[i], pid[i + 1]]);
            triangles.push([qid[i], qid[i + 1], pid[i + 1]]);
        }
        let delta = Coord::from_rational(&r / BigRational::from_integer(m.into()));
        let desc = ChewDescriptor {
            m,
            k,
            sqrt2: Coord::from_rational(r),
            delta,
            a: 0,
            b: n - 1,
            c1: k + 1,
            c2: k + 2,
            p: pid,
            q: qid,
            triangles,
        };
        return Ok((pts.with_labels(labels), desc));
    }
    let detail = last_err
        .map(|v| v.iter().take(4).map(Violation::to_string).collect::<Vec<_>>().join(", "))
        .unwrap_or_else(|| "no convergent within precision".into());
    Err(GeneratorError::InvalidParameter(format!(
        "no rational approximation of sqrt(2) within precision {} gives general position: {detail}",
        params.precision
    )))
}

/// Stretch of the pair `(a, b)` in the ladder with spacing δ: the path
/// `a, ..., c1, b` of length `|a c1| + |c1 b|` over the distance `√(4-2√2)`,
/// with `|a c1| = √(δ² + (√2-2δ)²)` and `|c1 b| = √((1-δ)² + (1-2δ)²)`.
pub fn chew_stretch_closed_form(delta: f64) -> Result<f64, GeneratorError> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(GeneratorError::InvalidParameter(format!(
            "delta must lie in (0, 1/2), got {delta}"
        )));
    }
    let s2 = std::f64::consts::SQRT_2;
    let path = (delta * delta + (s2 - 2.0 * delta).powi(2)).sqrt()
        + ((1.0 - delta).powi(2) + (1.0 - 2.0 * delta).powi(2)).sqrt();
    Ok(path / (4.0 - 2.0 * s2).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distribution2d {
    UniformBox,
    Clustered,
    NearCosquare,
}

impl Distribution2d {
    pub const ALL: [Distribution2d; 3] = [
        Distribution2d::UniformBox,
        Distribution2d::Clustered,
        Distribution2d::NearCosquare,
    ];
}

impl fmt::Display for Distribution2d {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Distribution2d::UniformBox => "uniform-box",
            Distribution2d::Clustered => "clustered",
            Distribution2d::NearCosquare => "near-cosquare",
        })
    }
}

impl FromStr for Distribution2d {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform-box" | "uniform" => Ok(Distribution2d::UniformBox),
            "clustered" => Ok(Distribution2d::Clustered),
            "near-cosquare" => Ok(Distribution2d::NearCosquare),
            _ => Err(format!(
                "unknown distribution {s:?} (expected uniform-box, clustered or near-cosquare)"
            )),
        }
    }
}

/// Coordinates are multiples of `2^-GRID_BITS` in `[0, 1]`.
pub const GRID_BITS: u32 = 20;
const GRID: i64 = 1 << GRID_BITS;

struct Sampler {
    rng: ChaCha8Rng,
    dist: Distribution2d,
    centers: Vec<(f64, f64)>,
    spread: Normal<f64>,
}

impl Sampler {
    fn uniform(&mut self) -> (i64, i64) {
        (self.rng.random_range(0..=GRID), self.rng.random_range(0..=GRID))
    }

    fn clustered(&mut self) -> (i64, i64) {
        let c = self.centers[self.rng.random_range(0..self.centers.len())];
        let x = c.0 + self.spread.sample(&mut self.rng);
        let y = c.1 + self.spread.sample(&mut self.rng);
        let g = |v: f64| ((v.clamp(0.0, 1.0)) * GRID as f64).round() as i64;
        (g(x), g(y))
    }

    /// A point one grid step off the boundary of a minimal square through
    /// two existing points.
    fn near_cosquare(&mut self, pts: &[(i64, i64)]) -> (i64, i64) {
        if pts.len() < 2 || self.rng.random_bool(0.25) {
            return self.uniform();
        }
        let i = self.rng.random_range(0..pts.len());
        let mut j = self.rng.random_range(0..pts.len() - 1);
        if j >= i {
            j += 1;
        }
        let (u, v) = (pts[i], pts[j]);
        let w = (u.0 - v.0).abs();
        let h = (u.1 - v.1).abs();
        let s = w.max(h).max(2);
        let (west, south) = if w >= h {
            let lo = u.1.max(v.1) - s;
            let hi = u.1.min(v.1);
            (u.0.min(v.0), self.rng.random_range(lo..=hi))
        } else {
            let lo = u.0.max(v.0) - s;
            let hi = u.0.min(v.0);
            (self.rng.random_range(lo..=hi), u.1.min(v.1))
        };
        let t = self.rng.random_range(1..s);
        let off = if self.rng.random_bool(0.5) { 1 } else { -1 };
        let p = match self.rng.random_range(0..4) {
            0 => (west + t, south + s + off),
            1 => (west + s + off, south + t),
            2 => (west + t, south + off),
            _ => (west + off, south + t),
        };
        (p.0.clamp(0, GRID), p.1.clamp(0, GRID))
    }

    fn draw(&mut self, pts: &[(i64, i64)]) -> (i64, i64) {
        match self.dist {
            Distribution2d::UniformBox => self.uniform(),
            Distribution2d::Clustered => self.clustered(),
            Distribution2d::NearCosquare => self.near_cosquare(pts),
        }
    }
}

fn to_set(pts: &[(i64, i64)]) -> PointSet {
    PointSet::new(
        pts.iter()
            .map(|&(x, y)| (Coord::ratio(x, GRID), Coord::ratio(y, GRID)))
            .collect(),
    )
    .expect("grid coordinates fit the lattice")
}

/// `n` points on the `2^-20` grid of the unit square, deterministic in
/// `seed`. Points involved in a general-position violation are redrawn
/// (the larger id of each offending group) until none remain.
pub fn random_pointset(
    n: usize,
    seed: u64,
    dist: Distribution2d,
) -> Result<PointSet, GeneratorError> {
    if n < 2 {
        return Err(GeneratorError::InvalidParameter(format!(
            "need at least 2 points, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clusters = rng.random_range(2..=5);
    let centers = (0..clusters)
        .map(|_| (rng.random_range(0.15..0.85), rng.random_range(0.15..0.85)))
        .collect();
    let mut s = Sampler {
        rng,
        dist,
        centers,
        spread: Normal::new(0.0, 0.06).expect("valid deviation"),
    };
    let mut pts: Vec<(i64, i64)> = Vec::with_capacity(n);
    for _ in 0..n {
        let p = s.draw(&pts);
        pts.push(p);
    }
    for _round in 0..10_000 {
        let set = to_set(&pts);
        let v = set.validate();
        if v.is_empty() {
            return Ok(set);
        }
        let mut redo: Vec<usize> = v
            .iter()
            .map(|x| match x {
                Violation::SharedAbscissa(_, b) | Violation::SharedOrdinate(_, b) => *b,
                Violation::CoSquare(ids) => ids[3],
            })
            .collect();
        redo.sort_unstable();
        redo.dedup();
        for i in redo {
            let others: Vec<(i64, i64)> =
                pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &p)| p).collect();
            pts[i] = s.draw(&others);
        }
    }
    Err(GeneratorError::InvalidParameter(
        "could not reach general position".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn convergents_of_sqrt2() {
        let c = sqrt2_convergents(100);
        let pairs: Vec<(i64, i64)> = c
            .iter()
            .map(|(p, q)| (p.to_i64().unwrap(), q.to_i64().unwrap()))
            .collect();
        assert_eq!(pairs, vec![(1, 1), (3, 2), (7, 5), (17, 12), (41, 29), (99, 70)]);
    }

    #[test]
    fn family_size_and_endpoints() {
        let (set, d) = generate_chew_family(ChewFamilyParams::new(12)).unwrap();
        assert_eq!(set.len(), 22);
        assert_eq!(d.k, 9);
        let pts = set.points();
        let r = d.sqrt2.clone();
        let one = Coord::int(1);
        assert_eq!(pts[d.a].x, Coord::zero());
        // b sits a hair right of x = 1
        assert!(pts[d.b].x > one);
        assert!(pts[d.b].x.to_f64() - 1.0 < d.delta_f64() / (1000.0 * 10.0));
        assert_eq!(pts[d.b].y, &r - &one);
        assert_eq!(pts[d.c1].x, d.delta);
        assert_eq!(pts[d.c1].y, &r - &(&d.delta + &d.delta));
        assert_eq!(pts[d.c2].x, &one - &d.delta);
        assert_eq!(pts[d.c2].y, &(&d.delta + &d.delta) - &one);
        for w in d.p.windows(2) {
            assert_eq!(&pts[w[1]].y - &pts[w[0]].y, d.delta);
        }
        for w in d.q.windows(2) {
            assert_eq!(&pts[w[1]].y - &pts[w[0]].y, d.delta);
        }
        assert_eq!(set.label(d.c2), "c2");
    }

    #[test]
    fn small_m_rejected() {
        assert!(generate_chew_family(ChewFamilyParams::new(3)).is_err());
    }

    #[test]
    fn closed_form_values() {
        // path a -> c1 -> b measured on the literal coordinates
        let d: f64 = 0.01;
        let s2 = std::f64::consts::SQRT_2;
        let (c1, b) = ((d, s2 - 2.0 * d), (1.0, s2 - 1.0));
        let path = c1.0.hypot(c1.1) + (b.0 - c1.0).hypot(b.1 - c1.1);
        let v = chew_stretch_closed_form(d).unwrap();
        assert!((v - path / b.0.hypot(b.1)).abs() < 1e-12, "{v}");
        assert!((v - 2.575_10).abs() < 1e-5, "{v}");
        let mut prev = f64::INFINITY;
        for i in 1..=100 {
            let w = chew_stretch_closed_form(i as f64 * 0.001).unwrap();
            assert!(w < prev);
            prev = w;
        }
        let lim = chew_stretch_closed_form(1e-9).unwrap();
        assert!((lim - chew_limit()).abs() < 1e-8);
        assert!(chew_stretch_closed_form(0.5).is_err());
        assert!(chew_stretch_closed_form(0.0).is_err());
    }

    #[test]
    fn random_sets_are_deterministic_and_valid() {
        for dist in Distribution2d::ALL {
            let a = random_pointset(30, 42, dist).unwrap();
            let b = random_pointset(30, 42, dist).unwrap();
            assert_eq!(a.points(), b.points());
            assert!(a.validate().is_empty());
        }
        assert!(random_pointset(1, 0, Distribution2d::UniformBox).is_err());
    }

    #[test]
    fn distribution_names_round_trip() {
        for d in Distribution2d::ALL {
            assert_eq!(d.to_string().parse::<Distribution2d>().unwrap(), d);
        }
    }
}
