//! Exact integer validation of simultaneous embeddings.
//!
//! All predicates work on `i64` coordinates with `i128` intermediates; no
//! floating point enters a verdict. Segments are closed.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pathpair::{PathPair, Side};

#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl From<[i64; 2]> for Point {
    fn from([x, y]: [i64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [i64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// Which pipeline produced an embedding.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    MinPerimeter,
    RankBaseline,
    Oracle,
    #[default]
    Document,
}

/// One grid point per vertex id. Serializes as
/// `{"points": [[x, y], ...], "provenance": ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridEmbedding {
    pub points: Vec<Point>,
    #[serde(default)]
    pub provenance: Provenance,
}

impl GridEmbedding {
    pub fn new(points: Vec<Point>, provenance: Provenance) -> Self {
        GridEmbedding { points, provenance }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(min, max)` corners of the bounding box, `None` when empty.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let first = *self.points.first()?;
        Some(self.points.iter().fold((first, first), |(lo, hi), p| {
            (
                Point::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        }))
    }

    pub fn width(&self) -> i64 {
        self.bounding_box().map_or(0, |(lo, hi)| hi.x - lo.x)
    }

    pub fn height(&self) -> i64 {
        self.bounding_box().map_or(0, |(lo, hi)| hi.y - lo.y)
    }

    pub fn perimeter(&self) -> i64 {
        2 * (self.width() + self.height())
    }

    pub fn translated(&self, dx: i64, dy: i64) -> Self {
        GridEmbedding {
            points: self
                .points
                .iter()
                .map(|p| Point::new(p.x + dx, p.y + dy))
                .collect(),
            provenance: self.provenance,
        }
    }

    /// Mirror across the diagonal, `(x, y) -> (y, x)`.
    pub fn transposed(&self) -> Self {
        GridEmbedding {
            points: self.points.iter().map(|p| Point::new(p.y, p.x)).collect(),
            provenance: self.provenance,
        }
    }
}

/// Sign of the cross product `(b - a) x (c - a)`: positive when `a, b, c`
/// turn counter-clockwise.
pub fn orient(a: Point, b: Point, c: Point) -> i128 {
    let abx = b.x as i128 - a.x as i128;
    let aby = b.y as i128 - a.y as i128;
    let acx = c.x as i128 - a.x as i128;
    let acy = c.y as i128 - a.y as i128;
    abx * acy - aby * acx
}

/// `p` lies on the closed segment `ab`.
pub fn on_segment(a: Point, b: Point, p: Point) -> bool {
    orient(a, b, p) == 0
        && a.x.min(b.x) <= p.x
        && p.x <= a.x.max(b.x)
        && a.y.min(b.y) <= p.y
        && p.y <= a.y.max(b.y)
}

/// `p` lies on segment `ab` but is not one of its endpoints.
pub fn in_interior(a: Point, b: Point, p: Point) -> bool {
    p != a && p != b && on_segment(a, b, p)
}

/// How two closed segments meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SegmentRelation {
    Disjoint,
    /// Exactly one common point.
    Point,
    /// A common piece of positive length.
    Overlap,
}

/// Classifies the intersection of segments `ab` and `cd`. Degenerate
/// segments (`a == b`) are treated as points.
pub fn relate(a: Point, b: Point, c: Point, d: Point) -> SegmentRelation {
    match (a == b, c == d) {
        (true, true) => {
            return if a == c {
                SegmentRelation::Point
            } else {
                SegmentRelation::Disjoint
            }
        }
        (true, false) => {
            return if on_segment(c, d, a) {
                SegmentRelation::Point
            } else {
                SegmentRelation::Disjoint
            }
        }
        (false, true) => {
            return if on_segment(a, b, c) {
                SegmentRelation::Point
            } else {
                SegmentRelation::Disjoint
            }
        }
        (false, false) => {}
    }
    let o1 = orient(a, b, c).signum();
    let o2 = orient(a, b, d).signum();
    if o1 == 0 && o2 == 0 {
        // Collinear: compare the projections on the axis along which `ab`
        // is not constant.
        let key = |p: Point| if a.x != b.x { p.x } else { p.y };
        let (lo1, hi1) = (key(a).min(key(b)), key(a).max(key(b)));
        let (lo2, hi2) = (key(c).min(key(d)), key(c).max(key(d)));
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        return match lo.cmp(&hi) {
            std::cmp::Ordering::Less => SegmentRelation::Overlap,
            std::cmp::Ordering::Equal => SegmentRelation::Point,
            std::cmp::Ordering::Greater => SegmentRelation::Disjoint,
        };
    }
    let o3 = orient(c, d, a).signum();
    let o4 = orient(c, d, b).signum();
    if o1 * o2 <= 0 && o3 * o4 <= 0 {
        SegmentRelation::Point
    } else {
        SegmentRelation::Disjoint
    }
}

/// True when `ab` and `cd` cross at a point interior to both.
pub fn properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    orient(a, b, c).signum() * orient(a, b, d).signum() < 0
        && orient(c, d, a).signum() * orient(c, d, b).signum() < 0
}

/// Which path(s) draw a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SegmentOwner {
    X(usize),
    Y(usize),
    /// Both paths traverse this vertex pair.
    Shared {
        x: usize,
        y: usize,
    },
}

impl SegmentOwner {
    fn on(self, side: Side) -> bool {
        matches!(
            (self, side),
            (SegmentOwner::Shared { .. }, _)
                | (SegmentOwner::X(_), Side::X)
                | (SegmentOwner::Y(_), Side::Y)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    /// Vertex ids, smaller first.
    pub ends: (usize, usize),
    pub owner: SegmentOwner,
}

/// Distinct segments of the drawing; a vertex pair traversed by both paths
/// yields one segment. Order: `P_x` edges by index, then the remaining `P_y`
/// edges by index.
pub fn segments(p: &PathPair) -> Vec<Segment> {
    let mut out = Vec::with_capacity(2 * p.edge_count());
    let mut by_pair: HashMap<(usize, usize), usize> = HashMap::new();
    for e in p.edges(Side::X) {
        let key = ordered(e.endpoints);
        by_pair.insert(key, out.len());
        out.push(Segment {
            ends: key,
            owner: SegmentOwner::X(e.index),
        });
    }
    for e in p.edges(Side::Y) {
        let key = ordered(e.endpoints);
        match by_pair.get(&key) {
            Some(&i) => {
                let SegmentOwner::X(x) = out[i].owner else {
                    unreachable!("path edges are distinct");
                };
                out[i].owner = SegmentOwner::Shared { x, y: e.index };
            }
            None => out.push(Segment {
                ends: key,
                owner: SegmentOwner::Y(e.index),
            }),
        }
    }
    out
}

fn ordered((a, b): (usize, usize)) -> (usize, usize) {
    (a.min(b), a.max(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationKind {
    DuplicatePoint,
    NonMonotoneX,
    NonMonotoneY,
    VertexOnEdgeInterior,
    SegmentOverlap,
    DoubleCrossing,
    EdgeCrossingAtNonVertex,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Vertex ids involved; for segment pairs, the four endpoints.
    pub witness: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    /// Proper crossings between a `P_x`-only and a `P_y`-only segment.
    /// Informational unless forbidden by [`CheckOptions`].
    pub cross_path_crossings: usize,
}

impl ValidationReport {
    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CheckOptions {
    /// Require `P_x` weakly x-monotone and `P_y` weakly y-monotone.
    pub monotone: bool,
    /// Report proper crossings between edges of different paths.
    pub forbid_cross_path_crossings: bool,
}

impl CheckOptions {
    pub const WMGE: CheckOptions = CheckOptions {
        monotone: true,
        forbid_cross_path_crossings: false,
    };
    pub const STRICT_PLANARITY: CheckOptions = CheckOptions {
        monotone: false,
        forbid_cross_path_crossings: false,
    };
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("embedding has {points} points for {n} vertices")]
    VertexCountMismatch { n: usize, points: usize },
}

/// Validates `emb` as a weakly monotone grid embedding of `p`.
pub fn check_wmge(p: &PathPair, emb: &GridEmbedding) -> Result<ValidationReport, GeometryError> {
    check(p, emb, CheckOptions::WMGE)
}

/// Validates `emb` under the given options.
///
/// Checks point distinctness, monotonicity (if enabled), vertices lying
/// inside edges, then every pair of distinct segments: collinear overlaps,
/// adjacent segments folding onto each other, and proper crossings. A
/// proper crossing between two segments of the same path always violates;
/// one between a `P_x` edge and a `P_y` edge is counted and only reported
/// when forbidden.
pub fn check(
    p: &PathPair,
    emb: &GridEmbedding,
    opts: CheckOptions,
) -> Result<ValidationReport, GeometryError> {
    let n = p.n();
    if emb.points.len() != n {
        return Err(GeometryError::VertexCountMismatch {
            n,
            points: emb.points.len(),
        });
    }
    let pts = &emb.points;
    let mut violations = Vec::new();

    let mut by_point: Vec<usize> = (0..n).collect();
    by_point.sort_by_key(|&v| (pts[v], v));
    for group in by_point.chunk_by(|&u, &v| pts[u] == pts[v]) {
        if group.len() > 1 {
            let mut witness = group.to_vec();
            witness.sort_unstable();
            let q = pts[group[0]];
            violations.push(Violation {
                kind: ViolationKind::DuplicatePoint,
                witness,
                detail: format!("vertices share ({}, {})", q.x, q.y),
            });
        }
    }

    if opts.monotone {
        for (side, kind) in [
            (Side::X, ViolationKind::NonMonotoneX),
            (Side::Y, ViolationKind::NonMonotoneY),
        ] {
            let coord = |v: usize| match side {
                Side::X => pts[v].x,
                Side::Y => pts[v].y,
            };
            for e in p.edges(side) {
                let (a, b) = e.endpoints;
                if coord(a) > coord(b) {
                    violations.push(Violation {
                        kind,
                        witness: vec![a, b],
                        detail: format!("edge {} of P_{side} decreases", e.index),
                    });
                }
            }
        }
    }

    let segs = segments(p);
    for s in &segs {
        let (a, b) = s.ends;
        let (pa, pb) = (pts[a], pts[b]);
        if pa == pb {
            continue;
        }
        for (w, &pw) in pts.iter().enumerate() {
            if w != a && w != b && in_interior(pa, pb, pw) {
                violations.push(Violation {
                    kind: ViolationKind::VertexOnEdgeInterior,
                    witness: vec![w, a, b],
                    detail: format!("vertex {w} inside edge {{{a}, {b}}}"),
                });
            }
        }
    }

    let mut cross_path_crossings = 0;
    for (i, s) in segs.iter().enumerate() {
        let (a, b) = s.ends;
        let (pa, pb) = (pts[a], pts[b]);
        if pa == pb {
            continue;
        }
        for t in &segs[i + 1..] {
            let (c, d) = t.ends;
            let (pc, pd) = (pts[c], pts[d]);
            if pc == pd {
                continue;
            }
            let adjacent = a == c || a == d || b == c || b == d;
            match relate(pa, pb, pc, pd) {
                SegmentRelation::Disjoint => {}
                SegmentRelation::Overlap => {
                    let kind = if adjacent {
                        ViolationKind::DoubleCrossing
                    } else {
                        ViolationKind::SegmentOverlap
                    };
                    violations.push(Violation {
                        kind,
                        witness: vec![a, b, c, d],
                        detail: format!("edges {{{a}, {b}}} and {{{c}, {d}}} overlap"),
                    });
                }
                SegmentRelation::Point => {
                    if adjacent || !properly_cross(pa, pb, pc, pd) {
                        // Common endpoint, or an endpoint touching the other
                        // segment, which is reported per vertex above.
                        continue;
                    }
                    let same_path = [Side::X, Side::Y]
                        .into_iter()
                        .any(|side| s.owner.on(side) && t.owner.on(side));
                    if same_path || opts.forbid_cross_path_crossings {
                        violations.push(Violation {
                            kind: ViolationKind::EdgeCrossingAtNonVertex,
                            witness: vec![a, b, c, d],
                            detail: format!("edges {{{a}, {b}}} and {{{c}, {d}}} cross"),
                        });
                    }
                    if !same_path {
                        cross_path_crossings += 1;
                    }
                }
            }
        }
    }

    violations.sort();
    Ok(ValidationReport {
        valid: violations.is_empty(),
        violations,
        cross_path_crossings,
    })
}

/// True iff every edge of either path has squared length exactly 1.
pub fn check_unit_length(p: &PathPair, emb: &GridEmbedding) -> bool {
    emb.points.len() == p.n()
        && segments(p).iter().all(|s| {
            let (a, b) = s.ends;
            squared_length(emb.points[a], emb.points[b]) == 1
        })
}

pub fn squared_length(a: Point, b: Point) -> u128 {
    let dx = (a.x as i128 - b.x as i128).unsigned_abs();
    let dy = (a.y as i128 - b.y as i128).unsigned_abs();
    dx * dx + dy * dy
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub perimeter: i64,
    pub width: i64,
    pub height: i64,
    /// Largest squared edge length, exact.
    pub max_sq_edge: u128,
    /// Sum of Euclidean edge lengths, shared edges once. Floating point.
    pub total_length: f64,
    pub total_length_approximate: bool,
}

pub fn metrics(p: &PathPair, emb: &GridEmbedding) -> Metrics {
    let mut max_sq_edge = 0;
    let mut total_length = 0.0;
    for s in segments(p) {
        let sq = squared_length(emb.points[s.ends.0], emb.points[s.ends.1]);
        max_sq_edge = max_sq_edge.max(sq);
        total_length += (sq as f64).sqrt();
    }
    Metrics {
        perimeter: emb.perimeter(),
        width: emb.width(),
        height: emb.height(),
        max_sq_edge,
        total_length,
        total_length_approximate: true,
    }
}
