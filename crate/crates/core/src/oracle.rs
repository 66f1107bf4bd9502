//! Exhaustive ground truth at desk scale.
//!
//! Nothing here goes through the constraint graph or the matching code:
//! placements are enumerated directly and judged by the geometry checker,
//! extent vectors are filtered by constraints recomputed from the rank
//! arrays, and covers are found by exhaustive search.

use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{
    check, check_unit_length, check_wmge, metrics, squared_length, CheckOptions, GridEmbedding,
    Point, Provenance,
};
use crate::matching::{verify_cover, BipartiteGraph, VertexCover};
use crate::pathpair::PathPair;

/// Tolerance for comparing floating total lengths.
pub const LENGTH_TOLERANCE: f64 = 1e-9;

/// Default bound on the number of candidates an oracle may examine.
pub const DEFAULT_CEILING: u64 = 50_000_000;

/// Largest graph [`min_cover_bruteforce`] accepts.
pub const MAX_COVER_VERTICES: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Objective {
    Perimeter,
    MaxEdge,
    TotalLength,
    UnitFeasible,
    MinCover,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Optimum {
    Int(u128),
    Float(f64),
    Bool(bool),
}

impl Optimum {
    pub fn as_int(self) -> Option<u128> {
        match self {
            Optimum::Int(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_float(self) -> Option<f64> {
        match self {
            Optimum::Float(f) => Some(f),
            Optimum::Int(i) => Some(i as f64),
            _ => None,
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Optimum::Bool(b) => Some(b),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Embedding(GridEmbedding),
    Cover(VertexCover),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub objective: Objective,
    pub optimum: Optimum,
    pub witness: Option<Witness>,
    /// Candidates examined.
    pub search_space: u64,
    /// Number of valid candidates attaining the optimum, where tracked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ties: Option<u64>,
}

impl OracleResult {
    pub fn embedding(&self) -> Option<&GridEmbedding> {
        match &self.witness {
            Some(Witness::Embedding(e)) => Some(e),
            _ => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search space of {candidates} candidates exceeds the ceiling of {ceiling}")]
    CeilingExceeded { candidates: u128, ceiling: u64 },
    #[error("graph has {vertices} vertices; at most {limit} supported")]
    TooLarge { vertices: usize, limit: usize },
    #[error("no valid placement within a grid of side {max_side}")]
    NoPlacement { max_side: u64 },
}

fn guard(candidates: u128, ceiling: u64) -> Result<(), OracleError> {
    if candidates > ceiling as u128 {
        Err(OracleError::CeilingExceeded {
            candidates,
            ceiling,
        })
    } else {
        Ok(())
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// All weakly increasing sequences of length `len` that start at 0 and stay
/// within `0..=max`, in lexicographic order.
fn monotone_sequences(len: usize, max: i64) -> Vec<Vec<i64>> {
    fn rec(len: usize, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().unwrap_or(&0);
        let lo = if cur.is_empty() { 0 } else { last };
        let hi = if cur.is_empty() { 0 } else { max };
        for v in lo..=hi {
            cur.push(v);
            rec(len, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, max, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Minimum perimeter over all weakly monotone placements whose bounding box
/// fits in `max_side x max_side`, anchored so that the first vertex of each
/// path sits on coordinate 0. Valid WMGEs only.
pub fn min_perimeter_by_placement(
    p: &PathPair,
    max_side: u64,
    ceiling: u64,
) -> Result<OracleResult, OracleError> {
    let n = p.n();
    let per_axis = binomial(max_side as u128 + n as u128 - 1, n as u128 - 1);
    guard(per_axis.saturating_mul(per_axis), ceiling)?;

    let seqs = monotone_sequences(n, max_side as i64);
    let mut best: Option<(i64, GridEmbedding)> = None;
    let mut ties = 0u64;
    let mut examined = 0u64;
    let mut points = vec![Point::new(0, 0); n];
    for xs in &seqs {
        for ys in &seqs {
            examined += 1;
            let perimeter = 2 * (xs[n - 1] + ys[n - 1]);
            if best.as_ref().is_some_and(|(b, _)| perimeter > *b) {
                continue;
            }
            for (i, &v) in p.pi_x().iter().enumerate() {
                points[v].x = xs[i];
            }
            for (i, &v) in p.pi_y().iter().enumerate() {
                points[v].y = ys[i];
            }
            let emb = GridEmbedding::new(points.clone(), Provenance::Oracle);
            if !check_wmge(p, &emb).expect("one point per vertex").valid {
                continue;
            }
            match &best {
                Some((b, _)) if perimeter == *b => ties += 1,
                _ => {
                    best = Some((perimeter, emb));
                    ties = 1;
                }
            }
        }
    }
    let (perimeter, emb) = best.ok_or(OracleError::NoPlacement { max_side })?;
    Ok(OracleResult {
        objective: Objective::Perimeter,
        optimum: Optimum::Int(perimeter as u128),
        witness: Some(Witness::Embedding(emb)),
        search_space: examined,
        ties: Some(ties),
    })
}

/// Minimum perimeter over all 0/1 extent vectors that satisfy the switch
/// and shared-edge constraints and reconstruct to a valid WMGE.
pub fn min_perimeter_by_extents(p: &PathPair, ceiling: u64) -> Result<OracleResult, OracleError> {
    let m = p.edge_count();
    let bits = 2 * m as u32;
    guard(1u128.checked_shl(bits).unwrap_or(u128::MAX), ceiling)?;
    let (pi_x, pi_y, pos_x, pos_y) = (p.pi_x(), p.pi_y(), p.pos_x(), p.pos_y());

    // Constraints straight from the definitions, as pairs of bit positions
    // of which at least one must be set. X edges are bits 0..m, Y edges
    // bits m..2m.
    let mut clauses: Vec<(u32, u32)> = Vec::new();
    for i in 1..p.n().saturating_sub(1) {
        let (a, v, b) = (pi_x[i - 1], pi_x[i], pi_x[i + 1]);
        if (pos_y[a] < pos_y[v]) == (pos_y[b] < pos_y[v]) {
            clauses.push((i as u32 - 1, i as u32));
        }
        let (a, v, b) = (pi_y[i - 1], pi_y[i], pi_y[i + 1]);
        if (pos_x[a] < pos_x[v]) == (pos_x[b] < pos_x[v]) {
            clauses.push(((m + i - 1) as u32, (m + i) as u32));
        }
    }
    for i in 0..m {
        let (a, b) = (pi_x[i], pi_x[i + 1]);
        if pos_y[a].abs_diff(pos_y[b]) == 1 {
            clauses.push((i as u32, (m + pos_y[a].min(pos_y[b])) as u32));
        }
    }

    let mut best: Option<(u32, GridEmbedding)> = None;
    let mut ties = 0u64;
    for mask in 0u64..(1u64 << bits) {
        let ones = mask.count_ones();
        if best.as_ref().is_some_and(|(b, _)| ones > *b) {
            continue;
        }
        if !clauses
            .iter()
            .all(|&(i, j)| mask >> i & 1 == 1 || mask >> j & 1 == 1)
        {
            continue;
        }
        let mut points = vec![Point::new(0, 0); p.n()];
        let mut acc = 0i64;
        for (i, &v) in pi_x.iter().enumerate() {
            if i > 0 {
                acc += (mask >> (i - 1) & 1) as i64;
            }
            points[v].x = acc;
        }
        acc = 0;
        for (i, &v) in pi_y.iter().enumerate() {
            if i > 0 {
                acc += (mask >> (m + i - 1) & 1) as i64;
            }
            points[v].y = acc;
        }
        let emb = GridEmbedding::new(points, Provenance::Oracle);
        if !check_wmge(p, &emb).expect("one point per vertex").valid {
            continue;
        }
        match &best {
            Some((b, _)) if ones == *b => ties += 1,
            _ => {
                best = Some((ones, emb));
                ties = 1;
            }
        }
    }
    let (ones, emb) = best.expect("all-ones extents are always feasible");
    Ok(OracleResult {
        objective: Objective::Perimeter,
        optimum: Optimum::Int(2 * ones as u128),
        witness: Some(Witness::Embedding(emb)),
        search_space: 1u64 << bits,
        ties: Some(ties),
    })
}

/// Minimum vertex cover by exhaustive search over covers of size
/// 0, 1, 2, ...; for each size every candidate that could cover the first
/// uncovered edge is tried.
pub fn min_cover_bruteforce(g: &BipartiteGraph) -> Result<OracleResult, OracleError> {
    let total = g.a_count() + g.b_count();
    if total > MAX_COVER_VERTICES {
        return Err(OracleError::TooLarge {
            vertices: total,
            limit: MAX_COVER_VERTICES,
        });
    }
    let offset = g.a_count();
    let edges: Vec<u32> = g
        .edges()
        .map(|(a, b)| (1u32 << a) | (1u32 << (offset + b)))
        .collect();

    fn search(edges: &[u32], chosen: u32, budget: usize, visited: &mut u64) -> Option<u32> {
        *visited += 1;
        let Some(&e) = edges.iter().find(|&&e| e & chosen == 0) else {
            return Some(chosen);
        };
        if budget == 0 {
            return None;
        }
        let low = e & e.wrapping_neg();
        let high = e ^ low;
        search(edges, chosen | low, budget - 1, visited)
            .or_else(|| search(edges, chosen | high, budget - 1, visited))
    }

    let mut visited = 0u64;
    let mut k = 0;
    let mask = loop {
        if let Some(m) = search(&edges, 0, k, &mut visited) {
            break m;
        }
        k += 1;
    };
    let cover = VertexCover {
        in_cover_a: (0..g.a_count()).map(|a| mask >> a & 1 == 1).collect(),
        in_cover_b: (0..g.b_count())
            .map(|b| mask >> (offset + b) & 1 == 1)
            .collect(),
    };
    debug_assert!(verify_cover(g, &cover));
    Ok(OracleResult {
        objective: Objective::MinCover,
        optimum: Optimum::Int(k as u128),
        witness: Some(Witness::Cover(cover)),
        search_space: visited,
        ties: None,
    })
}

/// Visits every injective placement of `n` vertices on the
/// `(max_side + 1)^2` grid in lexicographic order of cell indices.
/// `admissible(points, v)` may reject a partial placement after vertex `v`
/// is placed. Returns the number of complete placements visited.
fn for_each_placement(
    n: usize,
    max_side: u64,
    admissible: &dyn Fn(&[Point], usize) -> bool,
    visit: &mut dyn FnMut(&[Point]) -> ControlFlow<()>,
) -> u64 {
    let side = max_side as i64 + 1;
    let cells: Vec<Point> = (0..side)
        .flat_map(|x| (0..side).map(move |y| Point::new(x, y)))
        .collect();
    let mut used = vec![false; cells.len()];
    let mut points = vec![Point::new(0, 0); n];
    let mut visited = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn rec(
        v: usize,
        cells: &[Point],
        used: &mut [bool],
        points: &mut [Point],
        admissible: &dyn Fn(&[Point], usize) -> bool,
        visit: &mut dyn FnMut(&[Point]) -> ControlFlow<()>,
        visited: &mut u64,
    ) -> ControlFlow<()> {
        if v == points.len() {
            *visited += 1;
            return visit(points);
        }
        for (c, &cell) in cells.iter().enumerate() {
            if used[c] {
                continue;
            }
            points[v] = cell;
            if !admissible(points, v) {
                continue;
            }
            used[c] = true;
            let flow = rec(v + 1, cells, used, points, admissible, visit, visited);
            used[c] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    let _ = rec(
        0,
        &cells,
        &mut used,
        &mut points,
        admissible,
        visit,
        &mut visited,
    );
    visited
}

fn placement_count(n: usize, max_side: u64) -> u128 {
    let cells = (max_side as u128 + 1).pow(2);
    if n as u128 > cells {
        return 0;
    }
    (0..n as u128).fold(1u128, |acc, i| acc.saturating_mul(cells - i))
}

/// Minimum of the maximum squared edge length (`MaxEdge`) or of the total
/// Euclidean length (`TotalLength`) over injective placements on the grid
/// that pass the checker in strict-planarity mode.
pub fn min_objective_bruteforce(
    p: &PathPair,
    objective: Objective,
    max_side: u64,
    ceiling: u64,
) -> Result<OracleResult, OracleError> {
    assert!(
        matches!(objective, Objective::MaxEdge | Objective::TotalLength),
        "min_objective_bruteforce handles MaxEdge and TotalLength"
    );
    guard(placement_count(p.n(), max_side), ceiling)?;
    let value = |pts: &[Point]| -> f64 {
        let emb = GridEmbedding::new(pts.to_vec(), Provenance::Oracle);
        let m = metrics(p, &emb);
        match objective {
            Objective::MaxEdge => m.max_sq_edge as f64,
            _ => m.total_length,
        }
    };
    let exact_max = |pts: &[Point]| -> u128 {
        crate::geometry::segments(p)
            .iter()
            .map(|s| squared_length(pts[s.ends.0], pts[s.ends.1]))
            .max()
            .unwrap_or(0)
    };

    let mut best: Option<(f64, u128, GridEmbedding)> = None;
    let mut ties = 0u64;
    let examined = for_each_placement(p.n(), max_side, &|_, _| true, &mut |pts| {
        let v = value(pts);
        let tol = match objective {
            Objective::MaxEdge => 0.0,
            _ => LENGTH_TOLERANCE,
        };
        if let Some((b, _, _)) = &best {
            if v > b + tol {
                return ControlFlow::Continue(());
            }
        }
        let emb = GridEmbedding::new(pts.to_vec(), Provenance::Oracle);
        if !check(p, &emb, CheckOptions::STRICT_PLANARITY)
            .expect("one point per vertex")
            .valid
        {
            return ControlFlow::Continue(());
        }
        match &best {
            Some((b, _, _)) if (v - b).abs() <= tol => ties += 1,
            _ => {
                best = Some((v, exact_max(pts), emb));
                ties = 1;
            }
        }
        ControlFlow::Continue(())
    });
    let (v, max_sq, emb) = best.ok_or(OracleError::NoPlacement { max_side })?;
    Ok(OracleResult {
        objective,
        optimum: match objective {
            Objective::MaxEdge => Optimum::Int(max_sq),
            _ => Optimum::Float(v),
        },
        witness: Some(Witness::Embedding(emb)),
        search_space: examined,
        ties: Some(ties),
    })
}

/// Whether some injective placement on the grid draws every edge with
/// length 1 and passes the checker in strict-planarity mode.
pub fn unit_length_feasible(
    p: &PathPair,
    max_side: u64,
    ceiling: u64,
) -> Result<OracleResult, OracleError> {
    guard(placement_count(p.n(), max_side), ceiling)?;
    // Adjacency lists so partial placements can be pruned as soon as an
    // edge between two placed vertices is not a unit step.
    let mut adj = vec![Vec::new(); p.n()];
    for s in crate::geometry::segments(p) {
        let (a, b) = s.ends;
        adj[a].push(b);
        adj[b].push(a);
    }
    let admissible = |pts: &[Point], v: usize| {
        adj[v]
            .iter()
            .filter(|&&u| u < v)
            .all(|&u| squared_length(pts[u], pts[v]) == 1)
    };
    let mut witness = None;
    let examined = for_each_placement(p.n(), max_side, &admissible, &mut |pts| {
        let emb = GridEmbedding::new(pts.to_vec(), Provenance::Oracle);
        if check_unit_length(p, &emb)
            && check(p, &emb, CheckOptions::STRICT_PLANARITY)
                .expect("one point per vertex")
                .valid
        {
            witness = Some(emb);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(OracleResult {
        objective: Objective::UnitFeasible,
        optimum: Optimum::Bool(witness.is_some()),
        witness: witness.map(Witness::Embedding),
        search_space: examined,
        ties: None,
    })
}
