//! Maximum bipartite matching by Hopcroft–Karp and minimum vertex cover by
//! Kőnig's alternating-path construction.
//!
//! Both routines are iterative, so augmenting paths of length `Θ(|V|)`
//! (common on the path-forest constraint graphs) do not grow the call stack.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

const NONE: usize = usize::MAX;
const INF: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchingError {
    #[error("edge ({a}, {b}) out of range for a {a_count} x {b_count} bipartite graph")]
    EdgeOutOfRange {
        a: usize,
        b: usize,
        a_count: usize,
        b_count: usize,
    },
    #[error("matching does not fit the graph: {0}")]
    InvalidMatching(String),
    #[error("matching is not maximum: alternating path reaches free b{to} via a{via}")]
    NotMaximum { via: usize, to: usize },
}

/// Bipartite graph with color classes `A = 0..a_count` and `B = 0..b_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    a_count: usize,
    b_count: usize,
    adjacency: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds the graph from an edge list. Neighbor lists are sorted and
    /// duplicates dropped.
    pub fn new(
        a_count: usize,
        b_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, MatchingError> {
        let mut adjacency = vec![Vec::new(); a_count];
        for (a, b) in edges {
            if a >= a_count || b >= b_count {
                return Err(MatchingError::EdgeOutOfRange {
                    a,
                    b,
                    a_count,
                    b_count,
                });
            }
            adjacency[a].push(b);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(BipartiteGraph {
            a_count,
            b_count,
            adjacency,
        })
    }

    pub fn a_count(&self) -> usize {
        self.a_count
    }

    pub fn b_count(&self) -> usize {
        self.b_count
    }

    pub fn neighbors(&self, a: usize) -> &[usize] {
        &self.adjacency[a]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.a_count && self.adjacency[a].binary_search(&b).is_ok()
    }
}

/// A matching, stored from both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Matching {
    pub match_a: Vec<Option<usize>>,
    pub match_b: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(g: &BipartiteGraph) -> Self {
        Matching {
            match_a: vec![None; g.a_count],
            match_b: vec![None; g.b_count],
        }
    }

    pub fn size(&self) -> usize {
        self.match_a.iter().filter(|m| m.is_some()).count()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.match_a
            .iter()
            .enumerate()
            .filter_map(|(a, m)| m.map(|b| (a, b)))
    }

    /// Checks that both sides agree and that every pair is a graph edge.
    pub fn validate(&self, g: &BipartiteGraph) -> Result<(), MatchingError> {
        if self.match_a.len() != g.a_count || self.match_b.len() != g.b_count {
            return Err(MatchingError::InvalidMatching(format!(
                "sizes {}x{} for a {}x{} graph",
                self.match_a.len(),
                self.match_b.len(),
                g.a_count,
                g.b_count
            )));
        }
        for (a, m) in self.match_a.iter().enumerate() {
            if let Some(b) = *m {
                if b >= g.b_count || self.match_b[b] != Some(a) {
                    return Err(MatchingError::InvalidMatching(format!(
                        "a{a} -> b{b} is not mirrored"
                    )));
                }
                if !g.has_edge(a, b) {
                    return Err(MatchingError::InvalidMatching(format!(
                        "a{a} -- b{b} is not an edge"
                    )));
                }
            }
        }
        for (b, m) in self.match_b.iter().enumerate() {
            if let Some(a) = *m {
                if a >= g.a_count || self.match_a[a] != Some(b) {
                    return Err(MatchingError::InvalidMatching(format!(
                        "b{b} -> a{a} is not mirrored"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Vertex cover as membership flags on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VertexCover {
    pub in_cover_a: Vec<bool>,
    pub in_cover_b: Vec<bool>,
}

impl VertexCover {
    pub fn size(&self) -> usize {
        self.in_cover_a
            .iter()
            .chain(&self.in_cover_b)
            .filter(|&&c| c)
            .count()
    }

    pub fn cover_a(&self) -> impl Iterator<Item = usize> + '_ {
        self.in_cover_a
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| c.then_some(i))
    }

    pub fn cover_b(&self) -> impl Iterator<Item = usize> + '_ {
        self.in_cover_b
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| c.then_some(i))
    }
}

/// Maximum cardinality matching.
///
/// Each phase builds BFS layers from the free `A` vertices, then searches
/// vertex-disjoint shortest augmenting paths by DFS, trying free roots in
/// ascending order and neighbors in adjacency order. Runs in
/// `O(|E| sqrt(|V|))`.
pub fn hopcroft_karp(g: &BipartiteGraph) -> Matching {
    let mut match_a = vec![NONE; g.a_count];
    let mut match_b = vec![NONE; g.b_count];
    let mut dist = vec![INF; g.a_count];
    let mut cursor = vec![0usize; g.a_count];
    let mut queue = VecDeque::new();
    let mut stack = Vec::new();

    loop {
        // Layering.
        queue.clear();
        for a in 0..g.a_count {
            if match_a[a] == NONE {
                dist[a] = 0;
                queue.push_back(a);
            } else {
                dist[a] = INF;
            }
        }
        let mut limit = INF;
        while let Some(a) = queue.pop_front() {
            if dist[a] >= limit {
                continue;
            }
            for &b in &g.adjacency[a] {
                let w = match_b[b];
                if w == NONE {
                    limit = limit.min(dist[a]);
                } else if dist[w] == INF {
                    dist[w] = dist[a] + 1;
                    queue.push_back(w);
                }
            }
        }
        if limit == INF {
            break;
        }

        // Augmentation.
        cursor.iter_mut().for_each(|c| *c = 0);
        let mut augmented = false;
        for root in 0..g.a_count {
            if match_a[root] != NONE || dist[root] != 0 {
                continue;
            }
            stack.clear();
            stack.push(root);
            while let Some(&a) = stack.last() {
                let Some(&b) = g.adjacency[a].get(cursor[a]) else {
                    dist[a] = INF;
                    stack.pop();
                    if let Some(&parent) = stack.last() {
                        cursor[parent] += 1;
                    }
                    continue;
                };
                let w = match_b[b];
                if w == NONE {
                    if dist[a] == limit {
                        for &u in &stack {
                            let v = g.adjacency[u][cursor[u]];
                            match_a[u] = v;
                            match_b[v] = u;
                        }
                        for &u in &stack {
                            dist[u] = INF;
                        }
                        augmented = true;
                        break;
                    }
                    cursor[a] += 1;
                } else if dist[w] != INF && dist[w] == dist[a] + 1 {
                    stack.push(w);
                } else {
                    cursor[a] += 1;
                }
            }
        }
        if !augmented {
            break;
        }
    }

    let wrap = |v: Vec<usize>| v.into_iter().map(|x| (x != NONE).then_some(x)).collect();
    Matching {
        match_a: wrap(match_a),
        match_b: wrap(match_b),
    }
}

/// Minimum vertex cover from a maximum matching.
///
/// `Z` is the set of vertices reachable from the unmatched `A` vertices by
/// alternating paths (unmatched edges `A -> B`, matched edges `B -> A`).
/// The cover is `(A \ Z) ∪ (B ∩ Z)` and has exactly `|m|` vertices. Fails if
/// `m` is inconsistent with `g` or the traversal reaches an unmatched `B`
/// vertex, which exposes an augmenting path.
pub fn konig_cover(g: &BipartiteGraph, m: &Matching) -> Result<VertexCover, MatchingError> {
    m.validate(g)?;
    let mut reach_a: Vec<bool> = m.match_a.iter().map(Option::is_none).collect();
    let mut reach_b = vec![false; g.b_count];
    let mut queue: VecDeque<usize> = (0..g.a_count).filter(|&a| reach_a[a]).collect();
    while let Some(a) = queue.pop_front() {
        for &b in &g.adjacency[a] {
            if m.match_a[a] == Some(b) || reach_b[b] {
                continue;
            }
            reach_b[b] = true;
            match m.match_b[b] {
                None => return Err(MatchingError::NotMaximum { via: a, to: b }),
                Some(w) if !reach_a[w] => {
                    reach_a[w] = true;
                    queue.push_back(w);
                }
                Some(_) => {}
            }
        }
    }
    let cover = VertexCover {
        in_cover_a: reach_a.iter().map(|&z| !z).collect(),
        in_cover_b: reach_b,
    };
    assert!(
        verify_cover(g, &cover),
        "Kőnig construction left an edge uncovered"
    );
    assert_eq!(
        cover.size(),
        m.size(),
        "Kőnig cover size differs from matching"
    );
    Ok(cover)
}

/// True iff every edge has at least one endpoint in the cover.
pub fn verify_cover(g: &BipartiteGraph, c: &VertexCover) -> bool {
    c.in_cover_a.len() == g.a_count
        && c.in_cover_b.len() == g.b_count
        && g.edges().all(|(a, b)| c.in_cover_a[a] || c.in_cover_b[b])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(a: usize, b: usize, edges: &[(usize, usize)]) -> BipartiteGraph {
        BipartiteGraph::new(a, b, edges.iter().copied()).unwrap()
    }

    #[test]
    fn small_matching_and_cover() {
        let g = graph(2, 2, &[(0, 0), (0, 1), (1, 1)]);
        let m = hopcroft_karp(&g);
        assert_eq!(m.size(), 2);
        assert_eq!(m.match_a, vec![Some(0), Some(1)]);
        let c = konig_cover(&g, &m).unwrap();
        assert_eq!(c.size(), 2);
        // No unmatched A vertex, so Z is empty and the cover is all of A.
        assert_eq!(c.cover_a().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(c.cover_b().count(), 0);
    }

    #[test]
    fn edgeless() {
        let g = graph(3, 2, &[]);
        let m = hopcroft_karp(&g);
        assert_eq!(m.size(), 0);
        let c = konig_cover(&g, &m).unwrap();
        assert_eq!(c.size(), 0);
    }

    #[test]
    fn complete_k33() {
        let edges: Vec<_> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
        let g = graph(3, 3, &edges);
        let m = hopcroft_karp(&g);
        assert_eq!(m.size(), 3);
        assert_eq!(konig_cover(&g, &m).unwrap().size(), 3);
    }

    #[test]
    fn single_edge_cover_picks_a_side() {
        let g = graph(1, 1, &[(0, 0)]);
        let m = hopcroft_karp(&g);
        let c = konig_cover(&g, &m).unwrap();
        assert_eq!(c.in_cover_a, vec![true]);
        assert_eq!(c.in_cover_b, vec![false]);
    }

    #[test]
    fn verify_cover_basics() {
        let g = graph(1, 1, &[(0, 0)]);
        let only_b = VertexCover {
            in_cover_a: vec![false],
            in_cover_b: vec![true],
        };
        let none = VertexCover {
            in_cover_a: vec![false],
            in_cover_b: vec![false],
        };
        assert!(verify_cover(&g, &only_b));
        assert!(!verify_cover(&g, &none));
    }

    #[test]
    fn non_maximum_matching_rejected() {
        let g = graph(2, 2, &[(0, 0), (0, 1), (1, 1)]);
        let mut m = Matching::empty(&g);
        m.match_a[0] = Some(1);
        m.match_b[1] = Some(0);
        assert!(matches!(
            konig_cover(&g, &m),
            Err(MatchingError::NotMaximum { to: 0, .. })
        ));
        assert!(matches!(
            konig_cover(&g, &Matching::empty(&g)),
            Err(MatchingError::NotMaximum { .. })
        ));
    }

    #[test]
    fn inconsistent_matching_rejected() {
        let g = graph(2, 2, &[(0, 0), (1, 1)]);
        let mut m = Matching::empty(&g);
        m.match_a[0] = Some(1);
        m.match_b[1] = Some(0);
        assert!(matches!(
            konig_cover(&g, &m),
            Err(MatchingError::InvalidMatching(_))
        ));
    }

    #[test]
    fn edge_out_of_range() {
        assert!(matches!(
            BipartiteGraph::new(1, 1, [(0, 1)]),
            Err(MatchingError::EdgeOutOfRange { .. })
        ));
    }

    #[test]
    fn long_augmenting_path_does_not_recurse() {
        // A path a0-b0-a1-b1-...; the greedy-looking first phase leaves a long
        // augmenting chain for later phases.
        let n = 200_000;
        let mut edges = Vec::new();
        for i in 0..n {
            edges.push((i, i));
            if i + 1 < n {
                edges.push((i + 1, i));
            }
        }
        let g = graph(n, n, &edges);
        let m = hopcroft_karp(&g);
        assert_eq!(m.size(), n);
        assert_eq!(konig_cover(&g, &m).unwrap().size(), n);
    }
}
