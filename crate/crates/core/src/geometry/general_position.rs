use std::fmt;

use super::{Lp, PointSet};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Violation {
    SharedAbscissa(usize, usize),
    SharedOrdinate(usize, usize),
    /// Four point ids, ascending, lying on one square boundary.
    CoSquare([usize; 4]),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SharedAbscissa(a, b) => write!(f, "shared-abscissa({a},{b})"),
            Violation::SharedOrdinate(a, b) => write!(f, "shared-ordinate({a},{b})"),
            Violation::CoSquare([a, b, c, d]) => write!(f, "co-square({a},{b},{c},{d})"),
        }
    }
}

fn shared(lat: &[Lp], key: impl Fn(&Lp) -> i128) -> Vec<(usize, usize)> {
    let mut ids: Vec<usize> = (0..lat.len()).collect();
    ids.sort_by_key(|&i| (key(&lat[i]), i));
    let mut out = Vec::new();
    let mut start = 0;
    while start < ids.len() {
        let mut end = start + 1;
        while end < ids.len() && key(&lat[ids[end]]) == key(&lat[ids[start]]) {
            end += 1;
        }
        for i in start..end {
            for j in i + 1..end {
                out.push((ids[i], ids[j]));
            }
        }
        start = end;
    }
    out
}

/// Lists every general-position violation of `set`.
///
/// With pairwise distinct coordinates, four points on one square boundary
/// sit one per side and none at a corner. The west and south points then
/// satisfy `x_W - y_S = x_E - y_N` with the east and north points, so the
/// search joins (W, S) pairs against (E, N) pairs on that key. Co-square
/// detection is only complete once no coordinate is shared.
pub fn validate_general_position(set: &PointSet) -> Vec<Violation> {
    let lat = set.lattice();
    let mut out: Vec<Violation> = shared(lat, |p| p.x)
        .into_iter()
        .map(|(a, b)| Violation::SharedAbscissa(a.min(b), a.max(b)))
        .collect();
    out.extend(
        shared(lat, |p| p.y)
            .into_iter()
            .map(|(a, b)| Violation::SharedOrdinate(a.min(b), a.max(b))),
    );
    let n = lat.len();
    if n < 4 {
        out.sort();
        return out;
    }
    // (key, west, south): south strictly lower-right of west.
    let mut ws: Vec<(i128, u32, u32)> = Vec::new();
    // (key, east, north): north strictly upper-left of east.
    let mut en: Vec<(i128, u32, u32)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (p, q) = (lat[i], lat[j]);
            if q.x > p.x && q.y < p.y {
                ws.push((p.x - q.y, i as u32, j as u32));
            }
            if q.x < p.x && q.y > p.y {
                en.push((p.x - q.y, i as u32, j as u32));
            }
        }
    }
    ws.sort_unstable();
    en.sort_unstable();
    let mut found = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < ws.len() && j < en.len() {
        match ws[i].0.cmp(&en[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let k = ws[i].0;
                let i_end = i + ws[i..].iter().take_while(|e| e.0 == k).count();
                let j_end = j + en[j..].iter().take_while(|e| e.0 == k).count();
                for a in &ws[i..i_end] {
                    for b in &en[j..j_end] {
                        let (w, s, e, nn) = (
                            lat[a.1 as usize],
                            lat[a.2 as usize],
                            lat[b.1 as usize],
                            lat[b.2 as usize],
                        );
                        let ok = s.y < w.y
                            && w.y < nn.y
                            && s.y < e.y
                            && e.y < nn.y
                            && w.x < s.x
                            && s.x < e.x
                            && w.x < nn.x
                            && nn.x < e.x;
                        if ok {
                            let mut ids = [a.1 as usize, a.2 as usize, b.1 as usize, b.2 as usize];
                            ids.sort_unstable();
                            if ids.windows(2).all(|w| w[0] != w[1]) {
                                found.push(ids);
                            }
                        }
                    }
                }
                i = i_end;
                j = j_end;
            }
        }
    }
    found.sort_unstable();
    found.dedup();
    out.extend(found.into_iter().map(Violation::CoSquare));
    out.sort();
    out
}
