//! File formats for the `linf-spanner` command-line tool.
//!
//! Coordinates travel as exact `[x_num, x_den, y_num, y_den]` quadruples.
//! Integers that fit in an `i64` are written as JSON numbers and larger ones
//! as decimal strings; both forms are accepted on input.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use linf_spanner::delaunay::{Edge, Triangle, Triangulation};
use linf_spanner::geometry::{AxisSquare, Coord, Metric, PointSet};
use linf_spanner::router::RouteCertificate;
use linf_spanner::spanner::{theorem_bound, StretchReport};

pub mod svg;

pub const SCHEMA_VERSION: u32 = 1;

/// Arbitrary-size integer in a JSON document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match Value::deserialize(d)? {
            Value::Number(n) if n.is_i64() || n.is_u64() => {
                n.to_string().parse().map(Int).map_err(D::Error::custom)
            }
            Value::String(s) => s.trim().parse().map(Int).map_err(D::Error::custom),
            other => Err(D::Error::custom(format!("expected an integer, got {other}"))),
        }
    }
}

/// `[num, den]` with `den > 0`.
pub type Rational = [Int; 2];

pub fn rational(c: &Coord) -> Rational {
    [Int(c.numer().clone()), Int(c.denom().clone())]
}

pub fn coord(r: &Rational) -> Result<Coord> {
    if !r[1].0.is_positive() {
        bail!("denominator {} is not positive", r[1].0);
    }
    Ok(Coord::new(r[0].0.clone(), r[1].0.clone())?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSetFile {
    pub points: Vec<[Int; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl PointSetFile {
    pub fn from_set(set: &PointSet) -> Self {
        let points = set
            .points()
            .iter()
            .map(|p| {
                let [xn, xd] = rational(&p.x);
                let [yn, yd] = rational(&p.y);
                [xn, xd, yn, yd]
            })
            .collect();
        PointSetFile {
            points,
            labels: set.labels().map(|l| l.to_vec()),
        }
    }

    /// Parses coordinates; general position is not checked here.
    pub fn to_set(&self) -> Result<PointSet> {
        let mut coords = Vec::with_capacity(self.points.len());
        for (i, [xn, xd, yn, yd]) in self.points.iter().enumerate() {
            let x = coord(&[xn.clone(), xd.clone()]).with_context(|| format!("point {i}"))?;
            let y = coord(&[yn.clone(), yd.clone()]).with_context(|| format!("point {i}"))?;
            coords.push((x, y));
        }
        let mut set = PointSet::new(coords)?;
        if let Some(l) = &self.labels {
            if l.len() != set.len() {
                bail!("{} labels for {} points", l.len(), set.len());
            }
            set = set.with_labels(l.clone());
        }
        Ok(set)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SquareRecord {
    pub west: Rational,
    pub south: Rational,
    pub side: Rational,
}

impl SquareRecord {
    pub fn from_square(s: &AxisSquare) -> Self {
        SquareRecord {
            west: rational(&s.west),
            south: rational(&s.south),
            side: rational(&s.side),
        }
    }

    pub fn to_square(&self) -> Result<AxisSquare> {
        Ok(AxisSquare::new(coord(&self.west)?, coord(&self.south)?, coord(&self.side)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub witness: SquareRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleRecord {
    pub vertices: [usize; 3],
    pub circumsquare: SquareRecord,
}

/// Witness squares are given in the working frame: the input coordinates
/// for `linf`, their image under `(x, y) -> (x - y, x + y)` for `l1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangulationFile {
    pub schema_version: u32,
    pub metric: Metric,
    #[serde(flatten)]
    pub input: PointSetFile,
    pub edges: Vec<EdgeRecord>,
    pub triangles: Vec<TriangleRecord>,
}

impl TriangulationFile {
    pub fn from_triangulation(t: &Triangulation) -> Self {
        TriangulationFile {
            schema_version: SCHEMA_VERSION,
            metric: t.metric(),
            input: PointSetFile::from_set(t.points()),
            edges: t
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    u: e.u,
                    v: e.v,
                    witness: SquareRecord::from_square(&e.witness),
                })
                .collect(),
            triangles: t
                .triangles()
                .iter()
                .map(|x| TriangleRecord {
                    vertices: x.vertices,
                    circumsquare: SquareRecord::from_square(&x.circumsquare),
                })
                .collect(),
        }
    }

    /// Rebuilds the triangulation as stored, without re-checking it.
    pub fn to_triangulation(&self) -> Result<Triangulation> {
        let set = self.input.to_set()?;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    u: e.u,
                    v: e.v,
                    witness: e.witness.to_square()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let triangles = self
            .triangles
            .iter()
            .map(|x| {
                Ok(Triangle {
                    vertices: x.vertices,
                    circumsquare: x.circumsquare.to_square()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Triangulation::from_parts(set, self.metric, edges, triangles)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairEntry {
    pub a: usize,
    pub b: usize,
    pub graph_distance: f64,
    pub euclidean_distance: f64,
    pub ratio: f64,
    /// `(1+√2)·x + y` for the pair.
    pub bound: f64,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StretchReportFile {
    pub schema_version: u32,
    pub kind: String,
    pub metric: Metric,
    pub n: usize,
    pub max_ratio: f64,
    pub argmax: (usize, usize),
    pub min_margin: f64,
    pub min_margin_pair: (usize, usize),
    pub tolerance: f64,
    pub bound_holds: bool,
    pub pairs: Vec<PairEntry>,
}

impl StretchReportFile {
    pub fn new(t: &Triangulation, r: &StretchReport) -> Self {
        StretchReportFile {
            schema_version: SCHEMA_VERSION,
            kind: "stretch-report".into(),
            metric: t.metric(),
            n: t.len(),
            max_ratio: r.max_ratio,
            argmax: r.argmax,
            min_margin: r.min_margin,
            min_margin_pair: r.min_margin_pair,
            tolerance: r.tolerance,
            bound_holds: r.bound_holds(),
            pairs: r
                .pairs
                .iter()
                .map(|p| PairEntry {
                    a: p.a,
                    b: p.b,
                    graph_distance: p.d_t,
                    euclidean_distance: p.d_2,
                    ratio: p.ratio,
                    bound: theorem_bound(t, p.a, p.b),
                    margin: p.margin,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairReportFile {
    pub schema_version: u32,
    pub kind: String,
    pub metric: Metric,
    pub pair: PairEntry,
    pub tolerance: f64,
    pub bound_holds: bool,
}

/// A certificate together with the input it refers to, so it can be
/// replayed on its own.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema_version: u32,
    pub kind: String,
    pub input: PointSetFile,
    pub certificate: RouteCertificate,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(v)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Loads a point set from either a point-set file or a triangulation file.
pub fn read_points(path: &Path) -> Result<PointSet> {
    let f: PointSetFile = read_json(path)?;
    f.to_set()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_round_trip_as_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let v = vec![Int(big.clone()), Int(BigInt::from(-7))];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["123456789012345678901234567890",-7]"#);
        let back: Vec<Int> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn rejects_non_positive_denominators() {
        let f: PointSetFile = serde_json::from_str(r#"{"points": [[1, 0, 1, 1]]}"#).unwrap();
        assert!(f.to_set().is_err());
        let f: PointSetFile = serde_json::from_str(r#"{"points": [[1, -2, 1, 1]]}"#).unwrap();
        assert!(f.to_set().is_err());
    }

    #[test]
    fn floats_round_trip_exactly() {
        for x in [0.1, 2.613_125_929_752_753, 1.0 / 3.0, f64::MIN_POSITIVE] {
            let s = serde_json::to_string(&x).unwrap();
            assert_eq!(serde_json::from_str::<f64>(&s).unwrap(), x);
        }
    }
}
