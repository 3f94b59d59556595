use serde::{Deserialize, Serialize};

use crate::geometry::lattice::{LSquare, Lp};
use crate::geometry::{Coord, GeometryError, Point};

/// Isometry taking `a` to the origin and `b` to `(x, y)` with
/// `0 < y <= x`: a translation, optional reflections of either axis, then an
/// optional exchange of the axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub origin: Lp,
    pub flip_x: bool,
    pub flip_y: bool,
    pub swap: bool,
}

impl Frame {
    pub fn canonical(a: Lp, b: Lp) -> Frame {
        let d = b.sub(a);
        Frame {
            origin: a,
            flip_x: d.x < 0,
            flip_y: d.y < 0,
            swap: d.y.abs() > d.x.abs(),
        }
    }

    pub fn apply(&self, p: Lp) -> Lp {
        let mut x = p.x - self.origin.x;
        let mut y = p.y - self.origin.y;
        if self.flip_x {
            x = -x;
        }
        if self.flip_y {
            y = -y;
        }
        if self.swap {
            std::mem::swap(&mut x, &mut y);
        }
        Lp::new(x, y)
    }

    pub fn invert(&self, p: Lp) -> Lp {
        let (mut x, mut y) = (p.x, p.y);
        if self.swap {
            std::mem::swap(&mut x, &mut y);
        }
        if self.flip_x {
            x = -x;
        }
        if self.flip_y {
            y = -y;
        }
        Lp::new(x + self.origin.x, y + self.origin.y)
    }

    pub fn apply_square(&self, s: LSquare) -> LSquare {
        let p = self.apply(Lp::new(s.west, s.south));
        let q = self.apply(Lp::new(s.east(), s.north()));
        LSquare::new(p.x.min(q.x), p.y.min(q.y), s.side)
    }

    /// True when the map reverses orientation.
    pub fn is_reflection(&self) -> bool {
        self.flip_x ^ self.flip_y ^ self.swap
    }
}

/// Exact version of [`Frame`] on rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalFrame {
    pub origin: (Coord, Coord),
    pub flip_x: bool,
    pub flip_y: bool,
    pub swap: bool,
}

impl CanonicalFrame {
    pub fn apply(&self, x: &Coord, y: &Coord) -> (Coord, Coord) {
        let mut x = x - &self.origin.0;
        let mut y = y - &self.origin.1;
        if self.flip_x {
            x = -&x;
        }
        if self.flip_y {
            y = -&y;
        }
        if self.swap {
            (y, x)
        } else {
            (x, y)
        }
    }

    pub fn invert(&self, x: &Coord, y: &Coord) -> (Coord, Coord) {
        let (mut x, mut y) = if self.swap {
            (y.clone(), x.clone())
        } else {
            (x.clone(), y.clone())
        };
        if self.flip_x {
            x = -&x;
        }
        if self.flip_y {
            y = -&y;
        }
        (&x + &self.origin.0, &y + &self.origin.1)
    }
}

pub fn canonical_frame(a: &Point, b: &Point) -> Result<CanonicalFrame, GeometryError> {
    if a.x == b.x && a.y == b.y {
        return Err(GeometryError::CoincidentPoints(a.id, b.id));
    }
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let zero = Coord::zero();
    Ok(CanonicalFrame {
        origin: (a.x.clone(), a.y.clone()),
        flip_x: dx < zero,
        flip_y: dy < zero,
        swap: dy.abs() > dx.abs(),
    })
}
