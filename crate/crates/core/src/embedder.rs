//! Minimum-perimeter embedding: constraint graph, maximum matching, Kőnig
//! cover, 0/1 extents, prefix-sum coordinates. Also the rank-placement
//! baseline.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::geometry::{GridEmbedding, Point, Provenance};

use crate::constraint_graph::{build_constraint_graph, ConstraintGraph};
use crate::matching::{hopcroft_karp, konig_cover, MatchingError};
use crate::pathpair::{derive, PathPair, Side};

/// Per-edge coordinate differences: `d_x` along `P_x`, `d_y` along `P_y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtentAssignment {
    pub d_x: Vec<u64>,
    pub d_y: Vec<u64>,
}

impl ExtentAssignment {
    pub fn total(&self) -> u64 {
        self.d_x.iter().chain(&self.d_y).sum()
    }

    /// Every extent above 1 replaced by 1.
    pub fn clamped(&self) -> ExtentAssignment {
        ExtentAssignment {
            d_x: self.d_x.iter().map(|&d| d.min(1)).collect(),
            d_y: self.d_y.iter().map(|&d| d.min(1)).collect(),
        }
    }

    fn get(&self, side: Side, index: usize) -> u64 {
        match side {
            Side::X => self.d_x[index],
            Side::Y => self.d_y[index],
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("extent vectors have lengths {d_x}/{d_y}, expected {expected}")]
    WrongLength {
        d_x: usize,
        d_y: usize,
        expected: usize,
    },
    #[error("switch vertex {vertex} of P_{side}: both incident edges have extent 0")]
    SwitchConstraint { side: Side, vertex: usize },
    #[error("shared edge {{{u}, {v}}} has zero extent on both axes")]
    SharedConstraint { u: usize, v: usize },
    #[error("cover has {got} flags for {expected} constraint-graph vertices")]
    CoverLength { got: usize, expected: usize },
    #[error("cover leaves constraint-graph edge ({0}, {1}) uncovered")]
    UncoveredEdge(usize, usize),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

/// Checks the three extent-constraint families.
pub fn check_extents(p: &PathPair, e: &ExtentAssignment) -> Result<(), EmbedError> {
    let m = p.edge_count();
    if e.d_x.len() != m || e.d_y.len() != m {
        return Err(EmbedError::WrongLength {
            d_x: e.d_x.len(),
            d_y: e.d_y.len(),
            expected: m,
        });
    }
    let d = derive(p);
    for side in [Side::X, Side::Y] {
        let rank = p.rank(side);
        for &v in d.switches(side) {
            let i = rank[v];
            if e.get(side, i - 1) + e.get(side, i) == 0 {
                return Err(EmbedError::SwitchConstraint { side, vertex: v });
            }
        }
    }
    for s in &d.shared_edges {
        if e.d_x[s.x_index] + e.d_y[s.y_index] == 0 {
            return Err(EmbedError::SharedConstraint { u: s.u, v: s.v });
        }
    }
    Ok(())
}

/// Extent 1 for every covered constraint-graph vertex, 0 otherwise.
/// `cover` is indexed by global constraint-graph vertex id.
pub fn extents_from_cover(
    g: &ConstraintGraph,
    cover: &[bool],
) -> Result<ExtentAssignment, EmbedError> {
    if cover.len() != g.vertex_count() {
        return Err(EmbedError::CoverLength {
            got: cover.len(),
            expected: g.vertex_count(),
        });
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| !cover[u] && !cover[v]) {
        return Err(EmbedError::UncoveredEdge(u, v));
    }
    let m = g.edges_per_side();
    let flag = |c: &bool| u64::from(*c);
    Ok(ExtentAssignment {
        d_x: cover[..m].iter().map(flag).collect(),
        d_y: cover[m..].iter().map(flag).collect(),
    })
}

/// Prefix sums of the extents along each path, anchored at `(0, 0)`.
pub fn coordinates_from_extents(
    p: &PathPair,
    e: &ExtentAssignment,
) -> Result<GridEmbedding, EmbedError> {
    check_extents(p, e)?;
    let n = p.n();
    let mut points = vec![Point::new(0, 0); n];
    let mut x = 0i64;
    for (i, &v) in p.pi_x().iter().enumerate() {
        if i > 0 {
            x += e.d_x[i - 1] as i64;
        }
        points[v].x = x;
    }
    let mut y = 0i64;
    for (i, &v) in p.pi_y().iter().enumerate() {
        if i > 0 {
            y += e.d_y[i - 1] as i64;
        }
        points[v].y = y;
    }
    Ok(GridEmbedding::new(points, Provenance::MinPerimeter))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SolveMetrics {
    pub perimeter: i64,
    pub width: i64,
    pub height: i64,
    pub matching_size: usize,
    pub cover_size: usize,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub embedding: GridEmbedding,
    pub extents: ExtentAssignment,
    pub metrics: SolveMetrics,
}

/// Minimum-perimeter weakly monotone grid embedding.
///
/// The returned perimeter is `2 * |cover|`; the identities
/// `|cover| = |matching| = Σd_x + Σd_y = width + height` are asserted.
pub fn solve_min_perimeter(p: &PathPair) -> Result<Solution, EmbedError> {
    let derived = derive(p);
    let g = build_constraint_graph(p, &derived);
    let view = g.bipartite_view();
    let matching = hopcroft_karp(&view.graph);
    let cover = konig_cover(&view.graph, &matching)?;
    let extents = extents_from_cover(&g, &view.lift_cover(&cover))?;
    let embedding = coordinates_from_extents(p, &extents)?;

    let (width, height) = (embedding.width(), embedding.height());
    let total = extents.total() as i64;
    assert_eq!(total, cover.size() as i64);
    assert_eq!(
        total,
        width + height,
        "extents do not span the bounding box"
    );
    Ok(Solution {
        metrics: SolveMetrics {
            perimeter: 2 * total,
            width,
            height,
            matching_size: matching.size(),
            cover_size: cover.size(),
        },
        embedding,
        extents,
    })
}

/// Rank placement: `x(v) = pos_x[v]`, `y(v) = pos_y[v]`.
pub fn brass_baseline(p: &PathPair) -> GridEmbedding {
    let points = (0..p.n())
        .map(|v| Point::new(p.pos_x()[v] as i64, p.pos_y()[v] as i64))
        .collect();
    GridEmbedding::new(points, Provenance::RankBaseline)
}
