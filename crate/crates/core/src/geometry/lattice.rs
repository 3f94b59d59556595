//! Integer-lattice kernel.
//!
//! Every [`PointSet`](super::PointSet) maps its rational coordinates onto a
//! common integer lattice (shared denominator, translated to the bounding box
//! corner, divided by the common gcd). All combinatorial predicates run here
//! on `i128`, which is exact as long as lattice magnitudes stay below
//! [`LATTICE_LIMIT`]: products of two coordinate differences then fit with room
//! to spare.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest admissible absolute lattice coordinate.
pub const LATTICE_LIMIT: i128 = 1 << 61;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lp {
    pub x: i128,
    pub y: i128,
}

impl Lp {
    pub const fn new(x: i128, y: i128) -> Self {
        Lp { x, y }
    }

    pub fn sub(self, o: Lp) -> Lp {
        Lp::new(self.x - o.x, self.y - o.y)
    }

    pub fn linf(self, o: Lp) -> i128 {
        (self.x - o.x).abs().max((self.y - o.y).abs())
    }

    pub fn l1(self, o: Lp) -> i128 {
        (self.x - o.x).abs() + (self.y - o.y).abs()
    }

    /// Exact squared Euclidean distance.
    pub fn dist2(self, o: Lp) -> i128 {
        let dx = self.x - o.x;
        let dy = self.y - o.y;
        dx * dx + dy * dy
    }

    /// Euclidean distance in lattice units.
    pub fn dist(self, o: Lp) -> f64 {
        (self.dist2(o) as f64).sqrt()
    }
}

/// Twice the signed area of `(a, b, c)`; positive when counterclockwise.
pub fn orient(a: Lp, b: Lp, c: Lp) -> i128 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Angular order of direction vectors, counterclockwise starting from the
/// positive x axis.
pub fn cmp_direction(a: Lp, b: Lp) -> Ordering {
    fn half(v: Lp) -> u8 {
        if v.y > 0 || (v.y == 0 && v.x > 0) {
            0
        } else {
            1
        }
    }
    half(a)
        .cmp(&half(b))
        .then_with(|| 0.cmp(&(a.x * b.y - a.y * b.x)))
}

/// A side of an axis-parallel square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SideLabel {
    N,
    E,
    S,
    W,
}

impl SideLabel {
    pub const ALL: [SideLabel; 4] = [SideLabel::N, SideLabel::E, SideLabel::S, SideLabel::W];

    fn bit(self) -> u8 {
        match self {
            SideLabel::N => 1,
            SideLabel::E => 2,
            SideLabel::S => 4,
            SideLabel::W => 8,
        }
    }
}

impl fmt::Display for SideLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            SideLabel::N => "N",
            SideLabel::E => "E",
            SideLabel::S => "S",
            SideLabel::W => "W",
        };
        f.write_str(c)
    }
}

/// Set of closed sides a boundary point lies on (two for a corner).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sides(u8);

impl Sides {
    pub const EMPTY: Sides = Sides(0);

    pub fn contains(self, s: SideLabel) -> bool {
        self.0 & s.bit() != 0
    }

    pub fn insert(&mut self, s: SideLabel) {
        self.0 |= s.bit();
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = SideLabel> {
        SideLabel::ALL.into_iter().filter(move |s| self.contains(*s))
    }

    pub fn to_vec(self) -> Vec<SideLabel> {
        self.iter().collect()
    }
}

impl fmt::Display for Sides {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

/// Axis-parallel square on the lattice: `[west, west+side] x [south, south+side]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LSquare {
    pub west: i128,
    pub south: i128,
    pub side: i128,
}

impl LSquare {
    pub fn new(west: i128, south: i128, side: i128) -> Self {
        debug_assert!(side > 0);
        LSquare { west, south, side }
    }

    pub fn east(&self) -> i128 {
        self.west + self.side
    }

    pub fn north(&self) -> i128 {
        self.south + self.side
    }

    pub fn contains_closed(&self, p: Lp) -> bool {
        self.west <= p.x && p.x <= self.east() && self.south <= p.y && p.y <= self.north()
    }

    /// Strict interior membership; the boundary never blocks.
    pub fn contains_open(&self, p: Lp) -> bool {
        self.west < p.x && p.x < self.east() && self.south < p.y && p.y < self.north()
    }

    pub fn sides_of(&self, p: Lp) -> Sides {
        let mut s = Sides::EMPTY;
        if !self.contains_closed(p) {
            return s;
        }
        if p.y == self.north() {
            s.insert(SideLabel::N);
        }
        if p.x == self.east() {
            s.insert(SideLabel::E);
        }
        if p.y == self.south {
            s.insert(SideLabel::S);
        }
        if p.x == self.west {
            s.insert(SideLabel::W);
        }
        s
    }

    pub fn on_boundary(&self, p: Lp) -> bool {
        !self.sides_of(p).is_empty()
    }

    /// Position of a boundary point along the perimeter, measured clockwise
    /// from the SW corner (up the W side first).
    pub fn perimeter_position(&self, p: Lp) -> Option<i128> {
        let s = self.sides_of(p);
        if s.contains(SideLabel::W) {
            Some(p.y - self.south)
        } else if s.contains(SideLabel::N) {
            Some(self.side + (p.x - self.west))
        } else if s.contains(SideLabel::E) {
            Some(2 * self.side + (self.north() - p.y))
        } else if s.contains(SideLabel::S) {
            Some(3 * self.side + (self.east() - p.x))
        } else {
            None
        }
    }

    /// Length of the clockwise walk along the boundary from `p` to `q`.
    pub fn clockwise_distance(&self, p: Lp, q: Lp) -> Option<i128> {
        let a = self.perimeter_position(p)?;
        let b = self.perimeter_position(q)?;
        Some((b - a).rem_euclid(4 * self.side))
    }
}

/// True iff the open axis-parallel rectangle spanned by `a` and `b` contains `z`.
pub fn in_open_rectangle(a: Lp, b: Lp, z: Lp) -> bool {
    let (x0, x1) = (a.x.min(b.x), a.x.max(b.x));
    let (y0, y1) = (a.y.min(b.y), a.y.max(b.y));
    x0 < z.x && z.x < x1 && y0 < z.y && z.y < y1
}

/// Squares of side `max(w, h)` having `u` and `v` on their boundary and no
/// point strictly inside. Returns one such square if it exists.
///
/// Every square through `u` and `v` contains one of these minimal squares
/// (the larger ones are anchored at an off corner of the bounding box and
/// nest), so the search can be restricted to the one-parameter slide of
/// minimal squares. Only points strictly between `u` and `v` along the long
/// axis can block a slide square; `strip` must yield at least all of them
/// (extra points are filtered here).
pub fn minimal_empty_square<I>(pts: &[Lp], u: usize, v: usize, strip: I) -> Option<LSquare>
where
    I: IntoIterator<Item = usize>,
{
    let (pu, pv) = (pts[u], pts[v]);
    let w = (pu.x - pv.x).abs();
    let h = (pu.y - pv.y).abs();
    // Long axis becomes the "fixed" axis; the other axis slides.
    let swap = h > w;
    let (long_lo, long_hi, short_min, short_max, side) = if swap {
        (pu.y.min(pv.y), pu.y.max(pv.y), pu.x.min(pv.x), pu.x.max(pv.x), h)
    } else {
        (pu.x.min(pv.x), pu.x.max(pv.x), pu.y.min(pv.y), pu.y.max(pv.y), w)
    };
    if side == 0 {
        return None;
    }
    // Slide squares cover [t, t + side] on the short axis, t in [lo, hi].
    let lo = short_max - side;
    let hi = short_min;
    let mut max0: Option<i128> = None;
    let mut min1: Option<i128> = None;
    for z in strip {
        if z == u || z == v {
            continue;
        }
        let p = pts[z];
        let (zl, zs) = if swap { (p.y, p.x) } else { (p.x, p.y) };
        if !(long_lo < zl && zl < long_hi) {
            continue;
        }
        if lo < zs && zs < short_max {
            max0 = Some(max0.map_or(zs, |m| m.max(zs)));
        } else if short_max <= zs && zs < hi + side {
            min1 = Some(min1.map_or(zs, |m| m.min(zs)));
        }
    }
    let t = match max0 {
        None => lo,
        Some(m0) => {
            if m0 > hi {
                return None;
            }
            if let Some(m1) = min1 {
                if m1 < m0 + side {
                    return None;
                }
            }
            m0
        }
    };
    Some(if swap {
        LSquare::new(t, long_lo, side)
    } else {
        LSquare::new(long_lo, t, side)
    })
}
