#![allow(dead_code)]

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wmge::geometry::{Point, SegmentRelation};
use wmge::PathPair;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_pair<R: Rng>(rng: &mut R, n: usize) -> PathPair {
    let mut px: Vec<usize> = (0..n).collect();
    let mut py: Vec<usize> = (0..n).collect();
    px.shuffle(rng);
    py.shuffle(rng);
    PathPair::new(px, py).unwrap()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every instance with `P_x` the identity.
pub fn identity_family(n: usize) -> Vec<PathPair> {
    permutations(n)
        .into_iter()
        .map(|py| PathPair::with_identity_x(py).unwrap())
        .collect()
}

type Q = Ratio<i64>;

fn q(v: i64) -> Q {
    Q::from_integer(v)
}

/// Parametric intersection of two closed segments over the rationals:
/// solve `a + s (b - a) = c + u (d - c)` by Cramer's rule, and for
/// collinear pairs intersect the parameter intervals of `c`, `d` along `ab`.
pub fn rational_relation(a: Point, b: Point, c: Point, d: Point) -> SegmentRelation {
    let point_on = |p: Point, c: Point, d: Point| -> bool {
        let (dx, dy) = (d.x - c.x, d.y - c.y);
        let u = if dx != 0 {
            Q::new(p.x - c.x, dx)
        } else {
            Q::new(p.y - c.y, dy)
        };
        let on_line = q(c.x) + u * q(dx) == q(p.x) && q(c.y) + u * q(dy) == q(p.y);
        on_line && u >= q(0) && u <= q(1)
    };
    let rel = |hit: bool| {
        if hit {
            SegmentRelation::Point
        } else {
            SegmentRelation::Disjoint
        }
    };
    match (a == b, c == d) {
        (true, true) => return rel(a == c),
        (true, false) => return rel(point_on(a, c, d)),
        (false, true) => return rel(point_on(c, a, b)),
        _ => {}
    }
    let r = (b.x - a.x, b.y - a.y);
    let s = (d.x - c.x, d.y - c.y);
    let ca = (c.x - a.x, c.y - a.y);
    let cross = |u: (i64, i64), v: (i64, i64)| u.0 * v.1 - u.1 * v.0;
    let denom = cross(r, s);
    if denom != 0 {
        let t = Q::new(cross(ca, s), denom);
        let u = Q::new(cross(ca, r), denom);
        let inside = |x: Q| x >= q(0) && x <= q(1);
        return rel(inside(t) && inside(u));
    }
    if cross(ca, r) != 0 {
        return SegmentRelation::Disjoint;
    }
    let len2 = r.0 * r.0 + r.1 * r.1;
    let param = |p: Point| Q::new((p.x - a.x) * r.0 + (p.y - a.y) * r.1, len2);
    let (tc, td) = (param(c), param(d));
    let lo = tc.min(td).max(q(0));
    let hi = tc.max(td).min(q(1));
    if lo < hi {
        SegmentRelation::Overlap
    } else if lo == hi {
        SegmentRelation::Point
    } else {
        SegmentRelation::Disjoint
    }
}

/// All points of the `side x side` grid.
pub fn grid_points(side: i64) -> Vec<Point> {
    (0..side)
        .flat_map(|x| (0..side).map(move |y| Point::new(x, y)))
        .collect()
}
