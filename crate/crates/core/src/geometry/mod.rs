//! Exact planar primitives: rational coordinates, points, metrics,
//! axis-parallel squares and the empty-square predicate.

mod general_position;
pub mod lattice;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use crate::error::GeometryError;
pub use general_position::{validate_general_position, Violation};
pub use lattice::{LSquare, Lp, SideLabel, Sides};

/// Exact rational coordinate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord(BigRational);

impl Coord {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, GeometryError> {
        let den = den.into();
        if den.is_zero() {
            return Err(GeometryError::ZeroDenominator);
        }
        Ok(Coord(BigRational::new(num.into(), den)))
    }

    /// Convenience constructor for small literals; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Coord::new(num, den).expect("nonzero denominator")
    }

    pub fn int(v: i64) -> Self {
        Coord(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Coord(BigRational::zero())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Coord(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Coord {
        Coord(self.0.abs())
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.0)
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => r.to_f64().unwrap_or(f64::NAN),
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Coord {
    type Err = String;

    /// Accepts `p`, `p/q` or a finite decimal such as `-1.25`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            let d: BigInt = d.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            return Coord::new(n, d).map_err(|e| e.to_string());
        }
        if let Some((ip, fp)) = s.split_once('.') {
            let neg = ip.starts_with('-');
            let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
            let n: BigInt = digits.parse().map_err(|e| format!("{s}: {e}"))?;
            let d = num_traits::pow(BigInt::from(10), fp.len());
            let n = if neg { -n } else { n };
            return Coord::new(n, d).map_err(|e| e.to_string());
        }
        let n: BigInt = s.parse().map_err(|e| format!("{s}: {e}"))?;
        Ok(Coord(BigRational::from_integer(n)))
    }
}

impl Add for &Coord {
    type Output = Coord;
    fn add(self, o: &Coord) -> Coord {
        Coord(&self.0 + &o.0)
    }
}

impl Sub for &Coord {
    type Output = Coord;
    fn sub(self, o: &Coord) -> Coord {
        Coord(&self.0 - &o.0)
    }
}

impl Mul for &Coord {
    type Output = Coord;
    fn mul(self, o: &Coord) -> Coord {
        Coord(&self.0 * &o.0)
    }
}

impl Neg for &Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord(-&self.0)
    }
}

impl From<i64> for Coord {
    fn from(v: i64) -> Self {
        Coord::int(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub id: usize,
    pub x: Coord,
    pub y: Coord,
}

impl Point {
    pub fn new(id: usize, x: Coord, y: Coord) -> Self {
        Point { id, x, y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    L1,
    L2,
    Linf,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::L1 => "l1",
            Metric::L2 => "l2",
            Metric::Linf => "linf",
        })
    }
}

/// Distance between two points. L1 and L∞ are evaluated exactly and then
/// rounded once; L2 takes the square root of the exact squared distance.
pub fn metric(u: &Point, v: &Point, kind: Metric) -> f64 {
    match kind {
        Metric::L2 => {
            let dx = &u.x - &v.x;
            let dy = &u.y - &v.y;
            (&(&dx * &dx) + &(&dy * &dy)).to_f64().sqrt()
        }
        _ => metric_exact(u, v, kind)
            .expect("L1 and Linf are rational")
            .to_f64(),
    }
}

/// Exact L1 or L∞ distance; `None` for L2, which is irrational in general.
pub fn metric_exact(u: &Point, v: &Point, kind: Metric) -> Option<Coord> {
    let dx = (&u.x - &v.x).abs();
    let dy = (&u.y - &v.y).abs();
    match kind {
        Metric::L1 => Some(&dx + &dy),
        Metric::Linf => Some(if dx >= dy { dx } else { dy }),
        Metric::L2 => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlopeClass {
    Gentle,
    Steep,
}

/// Gentle iff the slope of `uv` lies in the closed interval `[-1, 1]`.
pub fn classify_slope(u: &Point, v: &Point) -> SlopeClass {
    if (&u.y - &v.y).abs() <= (&u.x - &v.x).abs() {
        SlopeClass::Gentle
    } else {
        SlopeClass::Steep
    }
}

pub(crate) fn classify_slope_lattice(u: Lp, v: Lp) -> SlopeClass {
    if (u.y - v.y).abs() <= (u.x - v.x).abs() {
        SlopeClass::Gentle
    } else {
        SlopeClass::Steep
    }
}

/// Axis-parallel square `[west, west+side] x [south, south+side]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AxisSquare {
    pub west: Coord,
    pub south: Coord,
    pub side: Coord,
}

impl AxisSquare {
    pub fn new(west: Coord, south: Coord, side: Coord) -> Result<Self, GeometryError> {
        if !side.is_positive() {
            return Err(GeometryError::NonPositiveSide);
        }
        Ok(AxisSquare { west, south, side })
    }

    pub fn east(&self) -> Coord {
        &self.west + &self.side
    }

    pub fn north(&self) -> Coord {
        &self.south + &self.side
    }

    pub fn contains_open(&self, p: &Point) -> bool {
        self.west < p.x && p.x < self.east() && self.south < p.y && p.y < self.north()
    }
}

/// Closed sides of `sq` that contain `p`; corners yield two labels.
pub fn point_side_on(sq: &AxisSquare, p: &Point) -> Sides {
    let (e, n) = (sq.east(), sq.north());
    let mut s = Sides::EMPTY;
    if p.x < sq.west || p.x > e || p.y < sq.south || p.y > n {
        return s;
    }
    if p.y == n {
        s.insert(SideLabel::N);
    }
    if p.x == e {
        s.insert(SideLabel::E);
    }
    if p.y == sq.south {
        s.insert(SideLabel::S);
    }
    if p.x == sq.west {
        s.insert(SideLabel::W);
    }
    s
}

/// Which axis a slide of minimal squares moves along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeAxis {
    /// x-extent fixed, `south` ranges over the interval.
    Vertical,
    /// y-extent fixed, `west` ranges over the interval.
    Horizontal,
}

/// Position of the square relative to its anchoring corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corner {
    NorthWest,
    NorthEast,
    SouthWest,
    SouthEast,
}

/// Squares of side `s` in the family: the square has `fixed` as its lower
/// coordinate on one axis and any lower coordinate in `range` (closed) on the
/// other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub side: Coord,
    pub free_axis: FreeAxis,
    pub fixed: Coord,
    pub range: (Coord, Coord),
}

impl Placement {
    pub fn square_at(&self, t: &Coord) -> AxisSquare {
        match self.free_axis {
            FreeAxis::Vertical => AxisSquare {
                west: self.fixed.clone(),
                south: t.clone(),
                side: self.side.clone(),
            },
            FreeAxis::Horizontal => AxisSquare {
                west: t.clone(),
                south: self.fixed.clone(),
                side: self.side.clone(),
            },
        }
    }
}

/// Every axis-parallel square with two given points on its boundary.
///
/// The minimal side is `max(dx, dy)` and those squares slide along one axis
/// (`slide`). Any larger square has one of the two off corners of the
/// bounding box of `u, v` as a vertex (`corners`), extending toward the box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFamily {
    pub u: usize,
    pub v: usize,
    pub min_side: Coord,
    pub slide: Placement,
    pub corners: [((Coord, Coord), Corner); 2],
}

impl SquareFamily {
    /// Placements with side exactly `s`; empty below the minimal side, the
    /// slide at the minimal side, and two degenerate placements above it.
    pub fn placements(&self, s: &Coord) -> Vec<Placement> {
        if *s < self.min_side {
            return Vec::new();
        }
        if *s == self.min_side {
            return vec![self.slide.clone()];
        }
        self.corners
            .iter()
            .map(|((cx, cy), corner)| {
                let west = match corner {
                    Corner::NorthWest | Corner::SouthWest => cx.clone(),
                    _ => cx - s,
                };
                let south = match corner {
                    Corner::SouthWest | Corner::SouthEast => cy.clone(),
                    _ => cy - s,
                };
                Placement {
                    side: s.clone(),
                    free_axis: FreeAxis::Vertical,
                    fixed: west,
                    range: (south.clone(), south),
                }
            })
            .collect()
    }

    /// Membership test: `sq` has both points on its boundary.
    pub fn contains(&self, sq: &AxisSquare, u: &Point, v: &Point) -> bool {
        !point_side_on(sq, u).is_empty() && !point_side_on(sq, v).is_empty()
    }
}

pub fn square_family_through(u: &Point, v: &Point) -> Result<SquareFamily, GeometryError> {
    if u.x == v.x && u.y == v.y {
        return Err(GeometryError::CoincidentPoints(u.id, v.id));
    }
    let w = (&u.x - &v.x).abs();
    let h = (&u.y - &v.y).abs();
    let (minx, maxx) = if u.x <= v.x { (&u.x, &v.x) } else { (&v.x, &u.x) };
    let (miny, maxy) = if u.y <= v.y { (&u.y, &v.y) } else { (&v.y, &u.y) };
    let slide = if w >= h {
        Placement {
            side: w.clone(),
            free_axis: FreeAxis::Vertical,
            fixed: minx.clone(),
            range: (maxy - &w, miny.clone()),
        }
    } else {
        Placement {
            side: h.clone(),
            free_axis: FreeAxis::Horizontal,
            fixed: miny.clone(),
            range: (maxx - &h, minx.clone()),
        }
    };
    // Off corners (u.x, v.y) and (v.x, u.y); each square extends toward the
    // opposite corner of the bounding box.
    let corner_kind = |cx: &Coord, cy: &Coord| -> Corner {
        let west = cx == minx;
        let south = cy == miny;
        match (west, south) {
            (true, true) => Corner::SouthWest,
            (true, false) => Corner::NorthWest,
            (false, true) => Corner::SouthEast,
            (false, false) => Corner::NorthEast,
        }
    };
    let c1 = (u.x.clone(), v.y.clone());
    let c2 = (v.x.clone(), u.y.clone());
    let k1 = corner_kind(&c1.0, &c1.1);
    let k2 = corner_kind(&c2.0, &c2.1);
    Ok(SquareFamily {
        u: u.id,
        v: v.id,
        min_side: if w >= h { w } else { h },
        slide,
        corners: [(c1, k1), (c2, k2)],
    })
}

/// A finite planar point set with exact coordinates.
///
/// Ids are positions in the list. The set carries an integer lattice image
/// of its coordinates on which all predicates are evaluated.
#[derive(Clone, Debug)]
pub struct PointSet {
    points: Vec<Point>,
    labels: Option<Vec<String>>,
    lattice: Vec<Lp>,
    origin: (BigRational, BigRational),
    unit: BigRational,
    unit_f64: f64,
}

impl PointSet {
    pub fn new(coords: Vec<(Coord, Coord)>) -> Result<Self, GeometryError> {
        let points: Vec<Point> = coords
            .into_iter()
            .enumerate()
            .map(|(id, (x, y))| Point { id, x, y })
            .collect();
        Self::from_points(points)
    }

    pub fn from_integers(coords: &[(i64, i64)]) -> Result<Self, GeometryError> {
        Self::new(
            coords
                .iter()
                .map(|&(x, y)| (Coord::int(x), Coord::int(y)))
                .collect(),
        )
    }

    fn from_points(points: Vec<Point>) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Ok(PointSet {
                points,
                labels: None,
                lattice: Vec::new(),
                origin: (BigRational::zero(), BigRational::zero()),
                unit: BigRational::one(),
                unit_f64: 1.0,
            });
        }
        let min_x = points.iter().map(|p| p.x.0.clone()).min().unwrap();
        let min_y = points.iter().map(|p| p.y.0.clone()).min().unwrap();
        let mut den = BigInt::one();
        for p in &points {
            den = den.lcm(p.x.0.denom());
            den = den.lcm(p.y.0.denom());
        }
        let den_r = BigRational::from_integer(den.clone());
        let scaled: Vec<(BigInt, BigInt)> = points
            .iter()
            .map(|p| {
                let x = (&p.x.0 - &min_x) * &den_r;
                let y = (&p.y.0 - &min_y) * &den_r;
                (x.to_integer(), y.to_integer())
            })
            .collect();
        let mut g = BigInt::zero();
        for (x, y) in &scaled {
            g = g.gcd(x);
            g = g.gcd(y);
        }
        if g.is_zero() {
            g = BigInt::one();
        }
        let limit = BigInt::from(lattice::LATTICE_LIMIT);
        let mut lat = Vec::with_capacity(points.len());
        for (x, y) in scaled {
            let (x, y) = (x / &g, y / &g);
            if x.abs() > limit || y.abs() > limit {
                return Err(GeometryError::CoordinateRange);
            }
            lat.push(Lp::new(x.to_i128().unwrap(), y.to_i128().unwrap()));
        }
        let unit = BigRational::new(g, den);
        let unit_f64 = rational_to_f64(&unit);
        Ok(PointSet {
            points,
            labels: None,
            lattice: lat,
            origin: (min_x, min_y),
            unit,
            unit_f64,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.points.len() {
            self.labels = Some(labels);
        }
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, id: usize) -> String {
        match &self.labels {
            Some(l) => l[id].clone(),
            None => id.to_string(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, id: usize) -> Result<&Point, GeometryError> {
        self.points.get(id).ok_or(GeometryError::UnknownPoint(id))
    }

    pub fn lattice(&self) -> &[Lp] {
        &self.lattice
    }

    /// Real length of one lattice step.
    pub fn unit(&self) -> f64 {
        self.unit_f64
    }

    /// Largest bounding-box extent, in real units.
    pub fn extent(&self) -> f64 {
        let (mut w, mut h) = (0i128, 0i128);
        for p in &self.lattice {
            w = w.max(p.x);
            h = h.max(p.y);
        }
        w.max(h) as f64 * self.unit_f64
    }

    pub fn lattice_to_coord(&self, v: i128, axis_y: bool) -> Coord {
        let o = if axis_y { &self.origin.1 } else { &self.origin.0 };
        Coord(o + BigRational::from_integer(v.into()) * &self.unit)
    }

    pub fn length_to_coord(&self, v: i128) -> Coord {
        Coord(BigRational::from_integer(v.into()) * &self.unit)
    }

    pub fn square_to_rational(&self, sq: &LSquare) -> AxisSquare {
        AxisSquare {
            west: self.lattice_to_coord(sq.west, false),
            south: self.lattice_to_coord(sq.south, true),
            side: self.length_to_coord(sq.side),
        }
    }

    /// Lattice image of a rational square, if it lands on the lattice.
    pub fn square_to_lattice(&self, sq: &AxisSquare) -> Option<LSquare> {
        let conv = |v: &BigRational, o: &BigRational| -> Option<i128> {
            let q = (v - o) / &self.unit;
            if q.is_integer() {
                q.to_integer().to_i128()
            } else {
                None
            }
        };
        let west = conv(&sq.west.0, &self.origin.0)?;
        let south = conv(&sq.south.0, &self.origin.1)?;
        let side = conv(&sq.side.0, &BigRational::zero())?;
        (side > 0).then(|| LSquare::new(west, south, side))
    }

    /// Euclidean distance between two ids in real units.
    pub fn dist(&self, u: usize, v: usize) -> f64 {
        self.lattice[u].dist(self.lattice[v]) * self.unit_f64
    }

    /// Applies an affine map to every point, keeping ids and labels.
    pub fn map<F>(&self, f: F) -> Result<PointSet, GeometryError>
    where
        F: Fn(&Coord, &Coord) -> (Coord, Coord),
    {
        let pts = self
            .points
            .iter()
            .map(|p| {
                let (x, y) = f(&p.x, &p.y);
                Point { id: p.id, x, y }
            })
            .collect();
        let mut out = PointSet::from_points(pts)?;
        out.labels = self.labels.clone();
        Ok(out)
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_general_position(self)
    }

    pub fn require_general_position(&self) -> Result<(), GeometryError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(GeometryError::GeneralPosition(v))
        }
    }
}

/// Returns a square with `u` and `v` on its boundary and no point of the set
/// strictly inside it, or `None` when every such square is blocked.
pub fn empty_square_exists(
    set: &PointSet,
    u: usize,
    v: usize,
) -> Result<Option<AxisSquare>, GeometryError> {
    let pu = set.point(u)?;
    let pv = set.point(v)?;
    if u == v || (pu.x == pv.x && pu.y == pv.y) {
        return Err(GeometryError::CoincidentPoints(u, v));
    }
    let sq = lattice::minimal_empty_square(set.lattice(), u, v, 0..set.len());
    Ok(sq.map(|s| set.square_to_rational(&s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(id: usize, x: i64, y: i64) -> Point {
        Point::new(id, Coord::int(x), Coord::int(y))
    }

    #[test]
    fn metrics_on_small_examples() {
        assert_eq!(metric(&pt(0, 0, 0), &pt(1, 3, 1), Metric::Linf), 3.0);
        assert_eq!(metric(&pt(0, 0, 0), &pt(1, 3, 1), Metric::L1), 4.0);
        assert_eq!(metric(&pt(0, 0, 0), &pt(1, 3, 4), Metric::L2), 5.0);
        assert_eq!(
            metric_exact(&pt(0, 0, 0), &pt(1, -3, 1), Metric::Linf),
            Some(Coord::int(3))
        );
    }

    #[test]
    fn side_membership() {
        let s = AxisSquare::new(Coord::int(0), Coord::int(0), Coord::int(2)).unwrap();
        assert_eq!(point_side_on(&s, &pt(0, 0, 1)).to_vec(), vec![SideLabel::W]);
        assert_eq!(
            point_side_on(&s, &pt(0, 2, 0)).to_vec(),
            vec![SideLabel::E, SideLabel::S]
        );
        assert!(point_side_on(&s, &pt(0, 1, 1)).is_empty());
        assert!(point_side_on(&s, &pt(0, 3, 1)).is_empty());
    }

    #[test]
    fn slope_classes() {
        assert_eq!(classify_slope(&pt(0, 0, 0), &pt(1, 2, 1)), SlopeClass::Gentle);
        assert_eq!(classify_slope(&pt(0, 0, 0), &pt(1, 1, 3)), SlopeClass::Steep);
        assert_eq!(classify_slope(&pt(0, 0, 0), &pt(1, 1, 1)), SlopeClass::Gentle);
        assert_eq!(classify_slope(&pt(0, 0, 0), &pt(1, -1, 1)), SlopeClass::Gentle);
    }

    #[test]
    fn family_through_gentle_pair() {
        let f = square_family_through(&pt(0, 0, 0), &pt(1, 2, 1)).unwrap();
        assert_eq!(f.min_side, Coord::int(2));
        assert_eq!(f.slide.free_axis, FreeAxis::Vertical);
        assert_eq!(f.slide.fixed, Coord::int(0));
        assert_eq!(f.slide.range, (Coord::int(-1), Coord::int(0)));
        // Bigger squares: exactly the two corner-anchored ones.
        let big = f.placements(&Coord::int(5));
        assert_eq!(big.len(), 2);
        for pl in big {
            let sq = pl.square_at(&pl.range.0);
            assert!(f.contains(&sq, &pt(0, 0, 0), &pt(1, 2, 1)));
        }
        assert!(f.placements(&Coord::int(1)).is_empty());
    }

    #[test]
    fn family_through_diagonal_pair_is_unique_at_min_side() {
        let f = square_family_through(&pt(0, 0, 0), &pt(1, 1, 1)).unwrap();
        assert_eq!(f.min_side, Coord::int(1));
        assert_eq!(f.slide.range.0, f.slide.range.1);
    }

    #[test]
    fn family_rejects_coincident_points() {
        assert!(square_family_through(&pt(0, 0, 0), &pt(1, 0, 0)).is_err());
    }

    #[test]
    fn lone_pair_has_minimal_witness() {
        let set = PointSet::from_integers(&[(0, 0), (3, 1)]).unwrap();
        let sq = empty_square_exists(&set, 0, 1).unwrap().unwrap();
        assert_eq!(sq.side, Coord::int(3));
    }

    #[test]
    fn lattice_normalizes_rationals() {
        let set = PointSet::new(vec![
            (Coord::ratio(1, 2), Coord::ratio(3, 4)),
            (Coord::ratio(5, 2), Coord::ratio(-1, 4)),
        ])
        .unwrap();
        // translated to (0, 1) and (2, 0) halves... after gcd: (0,1), (2,0) in units of 1
        assert_eq!(set.lattice(), &[Lp::new(0, 1), Lp::new(2, 0)]);
        assert_eq!(set.unit(), 1.0);
        let sq = LSquare::new(0, 0, 2);
        let r = set.square_to_rational(&sq);
        assert_eq!(r.west, Coord::ratio(1, 2));
        assert_eq!(r.south, Coord::ratio(-1, 4));
        assert_eq!(set.square_to_lattice(&r), Some(sq));
    }

    #[test]
    fn coord_parsing() {
        assert_eq!("3/4".parse::<Coord>().unwrap(), Coord::ratio(3, 4));
        assert_eq!("-1.25".parse::<Coord>().unwrap(), Coord::ratio(-5, 4));
        assert_eq!("7".parse::<Coord>().unwrap(), Coord::int(7));
        assert!("1/0".parse::<Coord>().is_err());
    }
}
