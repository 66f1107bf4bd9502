//! The constraint graph: one vertex per path edge, with an edge for every
//! switch pair and a link between the two incarnations of every shared edge.
//!
//! Global vertex numbering is `V_X` first (`0..n-1`), then `V_Y`
//! (`n-1..2(n-1)`), which is also the `(side, edge_index)` order.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::matching::{BipartiteGraph, VertexCover};
use crate::pathpair::{Alignment, DerivedStructure, PathPair, Side};

/// Color class of the two-coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Color {
    A,
    B,
}

impl Color {
    /// `A` for positively aligned `X` edges and negatively aligned `Y`
    /// edges. Switch pairs join opposite alignments on one side and shared
    /// links join equal alignments across sides, so every edge is
    /// bichromatic.
    pub fn from_alignment(side: Side, alignment: Alignment) -> Color {
        match (side, alignment) {
            (Side::X, Alignment::Positive) | (Side::Y, Alignment::Negative) => Color::A,
            _ => Color::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CgVertex {
    pub side: Side,
    pub edge_index: usize,
    pub alignment: Alignment,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintGraph {
    edges_per_side: usize,
    vertices: Vec<CgVertex>,
    /// Switch pairs of `P_x` as `(i - 1, i)` edge indices.
    pub edges_ex: Vec<(usize, usize)>,
    /// Switch pairs of `P_y`.
    pub edges_ey: Vec<(usize, usize)>,
    /// Shared-edge links as `(x_index, y_index)`.
    pub edges_m: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl ConstraintGraph {
    pub fn vertices(&self) -> &[CgVertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges_ex.len() + self.edges_ey.len() + self.edges_m.len()
    }

    /// Number of edges on each underlying path (`n - 1`).
    pub fn edges_per_side(&self) -> usize {
        self.edges_per_side
    }

    pub fn id(&self, side: Side, edge_index: usize) -> usize {
        match side {
            Side::X => edge_index,
            Side::Y => self.edges_per_side + edge_index,
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// All edges as global vertex-id pairs: `E_X`, then `E_Y`, then `M`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let x = |i| self.id(Side::X, i);
        let y = |i| self.id(Side::Y, i);
        self.edges_ex
            .iter()
            .map(move |&(i, j)| (x(i), x(j)))
            .chain(self.edges_ey.iter().map(move |&(i, j)| (y(i), y(j))))
            .chain(self.edges_m.iter().map(move |&(i, j)| (x(i), y(j))))
    }

    /// Maps the graph onto a [`BipartiteGraph`] using the stored colors.
    pub fn bipartite_view(&self) -> BipartiteView {
        let mut local = vec![0usize; self.vertices.len()];
        let mut a_vertices = Vec::new();
        let mut b_vertices = Vec::new();
        for (id, v) in self.vertices.iter().enumerate() {
            match v.color {
                Color::A => {
                    local[id] = a_vertices.len();
                    a_vertices.push(id);
                }
                Color::B => {
                    local[id] = b_vertices.len();
                    b_vertices.push(id);
                }
            }
        }
        let edges = self.edges().map(|(u, v)| {
            if self.vertices[u].color == Color::A {
                (local[u], local[v])
            } else {
                (local[v], local[u])
            }
        });
        let graph = BipartiteGraph::new(a_vertices.len(), b_vertices.len(), edges)
            .expect("constraint graph is properly two-colored");
        BipartiteView {
            graph,
            a_vertices,
            b_vertices,
        }
    }

    /// Graphviz rendering. `V_X` nodes are `x<i>` in blue, `V_Y` nodes are
    /// `y<i>` in red, shared-edge links are bold purple.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph constraint_graph {\n");
        out.push_str("  node [shape=circle, fontsize=10];\n");
        for v in &self.vertices {
            let (name, color) = match v.side {
                Side::X => ("x", "blue"),
                Side::Y => ("y", "red"),
            };
            let shape = match v.color {
                Color::A => "circle",
                Color::B => "doublecircle",
            };
            let _ = writeln!(
                out,
                "  {name}{} [color={color}, shape={shape}];",
                v.edge_index
            );
        }
        for &(i, j) in &self.edges_ex {
            let _ = writeln!(out, "  x{i} -- x{j} [color=blue];");
        }
        for &(i, j) in &self.edges_ey {
            let _ = writeln!(out, "  y{i} -- y{j} [color=red];");
        }
        for &(i, j) in &self.edges_m {
            let _ = writeln!(out, "  x{i} -- y{j} [color=purple, style=bold];");
        }
        out.push_str("}\n");
        out
    }
}

/// A constraint graph seen as a [`BipartiteGraph`], with the maps back to
/// global vertex ids.
#[derive(Debug, Clone)]
pub struct BipartiteView {
    pub graph: BipartiteGraph,
    pub a_vertices: Vec<usize>,
    pub b_vertices: Vec<usize>,
}

impl BipartiteView {
    /// Cover membership per global constraint-graph vertex.
    pub fn lift_cover(&self, c: &VertexCover) -> Vec<bool> {
        let mut out = vec![false; self.a_vertices.len() + self.b_vertices.len()];
        for a in c.cover_a() {
            out[self.a_vertices[a]] = true;
        }
        for b in c.cover_b() {
            out[self.b_vertices[b]] = true;
        }
        out
    }
}

/// Builds the constraint graph of `p`. `d` must be `derive(p)`.
pub fn build_constraint_graph(p: &PathPair, d: &DerivedStructure) -> ConstraintGraph {
    let m = p.edge_count();
    let mut vertices = Vec::with_capacity(2 * m);
    for side in [Side::X, Side::Y] {
        for i in 0..m {
            let alignment = d.alignment(side, i);
            vertices.push(CgVertex {
                side,
                edge_index: i,
                alignment,
                color: Color::from_alignment(side, alignment),
            });
        }
    }

    let switch_pairs = |side: Side| -> Vec<(usize, usize)> {
        let rank = p.rank(side);
        d.switches(side)
            .iter()
            .map(|&v| (rank[v] - 1, rank[v]))
            .collect()
    };
    let edges_ex = switch_pairs(Side::X);
    let edges_ey = switch_pairs(Side::Y);
    let edges_m: Vec<_> = d
        .shared_edges
        .iter()
        .map(|s| (s.x_index, s.y_index))
        .collect();

    let mut g = ConstraintGraph {
        edges_per_side: m,
        vertices,
        edges_ex,
        edges_ey,
        edges_m,
        adjacency: vec![Vec::new(); 2 * m],
    };
    let pairs: Vec<_> = g.edges().collect();
    for (u, v) in pairs {
        g.adjacency[u].push(v);
        g.adjacency[v].push(u);
    }
    for list in &mut g.adjacency {
        list.sort_unstable();
    }
    g
}

/// Two-coloring by breadth-first search, independent of alignments.
/// Each component's lowest-id vertex gets color `A`. `None` if an odd
/// cycle exists.
pub fn bfs_two_coloring(g: &ConstraintGraph) -> Option<Vec<Color>> {
    let n = g.vertex_count();
    let mut color: Vec<Option<Color>> = vec![None; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(Color::A);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let cu = color[u]?;
            let flip = if cu == Color::A { Color::B } else { Color::A };
            for &v in g.neighbors(u) {
                match color[v] {
                    None => {
                        color[v] = Some(flip);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    color.into_iter().collect()
}

/// True iff every edge joins the two stored colors and an independent BFS
/// coloring agrees with the stored one on every component, up to swapping
/// the two colors within the component.
pub fn verify_bipartite(g: &ConstraintGraph) -> bool {
    let stored = |v: usize| g.vertices[v].color;
    if g.edges().any(|(u, v)| stored(u) == stored(v)) {
        return false;
    }
    let Some(bfs) = bfs_two_coloring(g) else {
        return false;
    };
    // Within one component, either every vertex matches or every vertex is
    // swapped.
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let same = stored(start) == bfs[start];
        seen[start] = true;
        stack.push(start);
        while let Some(u) = stack.pop() {
            if (stored(u) == bfs[u]) != same {
                return false;
            }
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathpair::derive;

    fn cg(px: &[usize], py: &[usize]) -> ConstraintGraph {
        let p = PathPair::new(px.to_vec(), py.to_vec()).unwrap();
        build_constraint_graph(&p, &derive(&p))
    }

    #[test]
    fn triangle_graph() {
        let g = cg(&[0, 1, 2], &[0, 2, 1]);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edges_ex, vec![(0, 1)]);
        assert_eq!(g.edges_ey, vec![(0, 1)]);
        assert_eq!(g.edges_m, vec![(1, 1)]);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.neighbors(1), &[0, 3]);
        assert!(verify_bipartite(&g));
    }

    #[test]
    fn identical_paths() {
        let g = cg(&[0, 1, 2], &[0, 1, 2]);
        assert!(g.edges_ex.is_empty() && g.edges_ey.is_empty());
        assert_eq!(g.edges_m, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn two_vertices() {
        for py in [[0, 1], [1, 0]] {
            let g = cg(&[0, 1], &py);
            assert_eq!(g.vertex_count(), 2);
            assert_eq!(g.edge_count(), 1);
            assert!(verify_bipartite(&g));
        }
    }

    #[test]
    fn single_vertex() {
        let g = cg(&[0], &[0]);
        assert_eq!(g.vertex_count(), 0);
        assert!(verify_bipartite(&g));
        assert_eq!(
            g.to_dot(),
            "graph constraint_graph {\n  node [shape=circle, fontsize=10];\n}\n"
        );
    }

    #[test]
    fn bad_coloring_detected() {
        let mut g = cg(&[0, 1, 2], &[0, 2, 1]);
        g.vertices[0].color = g.vertices[1].color;
        assert!(!verify_bipartite(&g));
    }

    #[test]
    fn dot_output() {
        let dot = cg(&[0, 1], &[1, 0]).to_dot();
        assert!(dot.starts_with("graph "));
        assert!(!dot.contains("->"));
        assert!(dot.contains("x0 [color=blue"));
        assert!(dot.contains("y0 [color=red"));
        assert!(dot.contains("x0 -- y0 [color=purple, style=bold];"));
        assert_eq!(dot.matches(" -- ").count(), 1);
    }

    #[test]
    fn bipartite_view_round_trip() {
        let g = cg(&[0, 1, 2, 3, 4], &[3, 1, 4, 0, 2]);
        let view = g.bipartite_view();
        assert_eq!(view.graph.edge_count(), g.edge_count());
        for (a, b) in view.graph.edges() {
            let (u, v) = (view.a_vertices[a], view.b_vertices[b]);
            assert!(g.neighbors(u).contains(&v));
        }
    }
}
