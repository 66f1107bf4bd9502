//! The path pair graph: two directed paths over one shared vertex set.
//!
//! Vertices are dense ids `0..n`. `pi_x[i]` is the `i`-th vertex of `P_x`
//! and `pos_x` is its inverse; likewise for `P_y`. Predecessor and
//! successor lookups are rank arithmetic on these arrays.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the two paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::X => f.write_str("X"),
            Side::Y => f.write_str("Y"),
        }
    }
}

/// Whether an edge's endpoints appear in the same order on both paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Alignment {
    Positive,
    Negative,
}

impl Alignment {
    pub fn flipped(self) -> Alignment {
        match self {
            Alignment::Positive => Alignment::Negative,
            Alignment::Negative => Alignment::Positive,
        }
    }
}

/// A directed edge of one of the paths, identified by its position along
/// that path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathEdge {
    pub side: Side,
    pub index: usize,
    /// `(pi_s[index], pi_s[index + 1])`.
    pub endpoints: (usize, usize),
}

/// A vertex pair that is consecutive on both paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SharedEdge {
    /// Smaller vertex id.
    pub u: usize,
    /// Larger vertex id.
    pub v: usize,
    pub x_index: usize,
    pub y_index: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error("instance must have at least one vertex")]
    Empty,
    #[error("length mismatch: n = {n}, px has {px} entries, py has {py} entries")]
    LengthMismatch { n: usize, px: usize, py: usize },
    #[error("duplicate vertex id {token} in {path}")]
    Duplicate { path: &'static str, token: String },
    #[error("vertex id {token} in {path} is out of range 0..{n}")]
    OutOfRange {
        path: &'static str,
        token: String,
        n: usize,
    },
    #[error("vertex label {token} in py does not occur in px")]
    UnknownLabel { token: String },
    #[error("mixed numeric ids and string labels ({token})")]
    MixedIds { token: String },
}

/// Two permutations of the same `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathPair {
    pi_x: Vec<usize>,
    pi_y: Vec<usize>,
    pos_x: Vec<usize>,
    pos_y: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl PathPair {
    /// Builds a path pair from two sequences of dense vertex ids.
    pub fn new(pi_x: Vec<usize>, pi_y: Vec<usize>) -> Result<Self, InstanceError> {
        let n = pi_x.len();
        if n == 0 && pi_y.is_empty() {
            return Err(InstanceError::Empty);
        }
        if pi_y.len() != n {
            return Err(InstanceError::LengthMismatch {
                n,
                px: n,
                py: pi_y.len(),
            });
        }
        let pos_x = inverse("px", &pi_x)?;
        let pos_y = inverse("py", &pi_y)?;
        Ok(PathPair {
            pi_x,
            pi_y,
            pos_x,
            pos_y,
            labels: None,
        })
    }

    /// Identity on `P_x`, the given order on `P_y`.
    pub fn with_identity_x(pi_y: Vec<usize>) -> Result<Self, InstanceError> {
        Self::new((0..pi_y.len()).collect(), pi_y)
    }

    pub fn n(&self) -> usize {
        self.pi_x.len()
    }

    /// Number of edges on each path.
    pub fn edge_count(&self) -> usize {
        self.n().saturating_sub(1)
    }

    pub fn pi_x(&self) -> &[usize] {
        &self.pi_x
    }

    pub fn pi_y(&self) -> &[usize] {
        &self.pi_y
    }

    pub fn pos_x(&self) -> &[usize] {
        &self.pos_x
    }

    pub fn pos_y(&self) -> &[usize] {
        &self.pos_y
    }

    pub fn order(&self, side: Side) -> &[usize] {
        match side {
            Side::X => &self.pi_x,
            Side::Y => &self.pi_y,
        }
    }

    pub fn rank(&self, side: Side) -> &[usize] {
        match side {
            Side::X => &self.pos_x,
            Side::Y => &self.pos_y,
        }
    }

    /// External labels, when the instance was read with non-numeric ids.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn edge(&self, side: Side, index: usize) -> PathEdge {
        let order = self.order(side);
        PathEdge {
            side,
            index,
            endpoints: (order[index], order[index + 1]),
        }
    }

    pub fn edges(&self, side: Side) -> impl Iterator<Item = PathEdge> + '_ {
        (0..self.edge_count()).map(move |i| self.edge(side, i))
    }

    pub fn predecessor(&self, side: Side, v: usize) -> Option<usize> {
        let r = self.rank(side)[v];
        (r > 0).then(|| self.order(side)[r - 1])
    }

    pub fn successor(&self, side: Side, v: usize) -> Option<usize> {
        let r = self.rank(side)[v];
        self.order(side).get(r + 1).copied()
    }

    /// The same instance with the roles of the two paths exchanged.
    pub fn swapped(&self) -> PathPair {
        PathPair {
            pi_x: self.pi_y.clone(),
            pi_y: self.pi_x.clone(),
            pos_x: self.pos_y.clone(),
            pos_y: self.pos_x.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Reads an instance document, JSON or the two-line `PX:`/`PY:` text
    /// form. Ids are either dense integers or arbitrary string labels; labels
    /// get dense ids in order of first appearance on `P_x`.
    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            parse_json(trimmed)
        } else {
            parse_text(text)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match &self.labels {
            None => serde_json::json!({
                "n": self.n(),
                "px": self.pi_x,
                "py": self.pi_y,
            }),
            Some(l) => serde_json::json!({
                "n": self.n(),
                "px": self.pi_x.iter().map(|&v| &l[v]).collect::<Vec<_>>(),
                "py": self.pi_y.iter().map(|&v| &l[v]).collect::<Vec<_>>(),
            }),
        }
    }
}

fn inverse(path: &'static str, order: &[usize]) -> Result<Vec<usize>, InstanceError> {
    let n = order.len();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n {
            return Err(InstanceError::OutOfRange {
                path,
                token: v.to_string(),
                n,
            });
        }
        if pos[v] != usize::MAX {
            return Err(InstanceError::Duplicate {
                path,
                token: v.to_string(),
            });
        }
        pos[v] = i;
    }
    Ok(pos)
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Token {
    Id(i64),
    Label(String),
}

impl Token {
    fn render(&self) -> String {
        match self {
            Token::Id(i) => i.to_string(),
            Token::Label(s) => format!("{s:?}"),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    n: usize,
    px: Vec<Token>,
    py: Vec<Token>,
}

fn parse_json(text: &str) -> Result<PathPair, InstanceError> {
    let doc: InstanceDoc =
        serde_json::from_str(text).map_err(|e| InstanceError::Malformed(e.to_string()))?;
    if doc.n == 0 && doc.px.is_empty() && doc.py.is_empty() {
        return Err(InstanceError::Empty);
    }
    if doc.px.len() != doc.n || doc.py.len() != doc.n {
        return Err(InstanceError::LengthMismatch {
            n: doc.n,
            px: doc.px.len(),
            py: doc.py.len(),
        });
    }
    resolve(doc.n, &doc.px, &doc.py)
}

fn parse_text(text: &str) -> Result<PathPair, InstanceError> {
    let mut px = None;
    let mut py = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(':').ok_or_else(|| {
            InstanceError::Malformed(format!("line {}: expected `PX:` or `PY:`", lineno + 1))
        })?;
        let tokens: Vec<Token> = rest
            .split_whitespace()
            .map(|t| match t.parse::<i64>() {
                Ok(i) => Token::Id(i),
                Err(_) => Token::Label(t.to_string()),
            })
            .collect();
        let slot = match key.trim().to_ascii_uppercase().as_str() {
            "PX" => &mut px,
            "PY" => &mut py,
            other => {
                return Err(InstanceError::Malformed(format!(
                    "line {}: unknown key {other:?}",
                    lineno + 1
                )))
            }
        };
        if slot.replace(tokens).is_some() {
            return Err(InstanceError::Malformed(format!(
                "line {}: repeated key {key:?}",
                lineno + 1
            )));
        }
    }
    let px = px.ok_or_else(|| InstanceError::Malformed("missing PX line".into()))?;
    let py = py.ok_or_else(|| InstanceError::Malformed("missing PY line".into()))?;
    if px.is_empty() && py.is_empty() {
        return Err(InstanceError::Empty);
    }
    if px.len() != py.len() {
        return Err(InstanceError::LengthMismatch {
            n: px.len(),
            px: px.len(),
            py: py.len(),
        });
    }
    // A text document whose tokens are all integers uses dense ids;
    // anything else is read as labels.
    if px.iter().chain(&py).all(|t| matches!(t, Token::Id(_))) {
        resolve(px.len(), &px, &py)
    } else {
        let relabel = |ts: Vec<Token>| -> Vec<Token> {
            ts.into_iter()
                .map(|t| match t {
                    Token::Id(i) => Token::Label(i.to_string()),
                    l => l,
                })
                .collect()
        };
        resolve(px.len(), &relabel(px), &relabel(py))
    }
}

fn resolve(n: usize, px: &[Token], py: &[Token]) -> Result<PathPair, InstanceError> {
    match &px[0] {
        Token::Id(_) => {
            let ids = |path: &'static str, ts: &[Token]| -> Result<Vec<usize>, InstanceError> {
                ts.iter()
                    .map(|t| match t {
                        Token::Id(i) if *i >= 0 && (*i as u64) < n as u64 => Ok(*i as usize),
                        Token::Id(_) => Err(InstanceError::OutOfRange {
                            path,
                            token: t.render(),
                            n,
                        }),
                        Token::Label(_) => Err(InstanceError::MixedIds { token: t.render() }),
                    })
                    .collect()
            };
            PathPair::new(ids("px", px)?, ids("py", py)?)
        }
        Token::Label(_) => {
            let mut index: HashMap<&str, usize> = HashMap::with_capacity(n);
            let mut labels = Vec::with_capacity(n);
            for t in px {
                let Token::Label(s) = t else {
                    return Err(InstanceError::MixedIds { token: t.render() });
                };
                if index.insert(s.as_str(), labels.len()).is_some() {
                    return Err(InstanceError::Duplicate {
                        path: "px",
                        token: t.render(),
                    });
                }
                labels.push(s.clone());
            }
            let pi_y = py
                .iter()
                .map(|t| match t {
                    Token::Label(s) => index
                        .get(s.as_str())
                        .copied()
                        .ok_or_else(|| InstanceError::UnknownLabel { token: t.render() }),
                    Token::Id(_) => Err(InstanceError::MixedIds { token: t.render() }),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut pair = PathPair::new((0..n).collect(), pi_y).map_err(|e| match e {
                InstanceError::Duplicate { path, token } => InstanceError::Duplicate {
                    path,
                    token: format!("{:?}", labels[token.parse::<usize>().unwrap_or(0)]),
                },
                e => e,
            })?;
            pair.labels = Some(labels);
            Ok(pair)
        }
    }
}

/// Switch vertices, shared edges and alignments of a [`PathPair`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DerivedStructure {
    /// Switch vertices of `P_x`, by ascending rank on `P_x`.
    pub switch_x: Vec<usize>,
    /// Switch vertices of `P_y`, by ascending rank on `P_y`.
    pub switch_y: Vec<usize>,
    /// Ordered by `x_index`.
    pub shared_edges: Vec<SharedEdge>,
    /// Alignment of each `P_x` edge.
    pub align_x: Vec<Alignment>,
    /// Alignment of each `P_y` edge.
    pub align_y: Vec<Alignment>,
}

impl DerivedStructure {
    pub fn switches(&self, side: Side) -> &[usize] {
        match side {
            Side::X => &self.switch_x,
            Side::Y => &self.switch_y,
        }
    }

    pub fn alignment(&self, side: Side, index: usize) -> Alignment {
        match side {
            Side::X => self.align_x[index],
            Side::Y => self.align_y[index],
        }
    }
}

/// Computes switch vertices, shared edges and edge alignments.
pub fn derive(p: &PathPair) -> DerivedStructure {
    let switch_x = switch_vertices(p, Side::X);
    let switch_y = switch_vertices(p, Side::Y);
    let align_x = alignments(p, Side::X);
    let align_y = alignments(p, Side::Y);

    let pos_y = p.pos_y();
    let shared_edges = p
        .edges(Side::X)
        .filter_map(|e| {
            let (a, b) = e.endpoints;
            (pos_y[a].abs_diff(pos_y[b]) == 1).then(|| SharedEdge {
                u: a.min(b),
                v: a.max(b),
                x_index: e.index,
                y_index: pos_y[a].min(pos_y[b]),
            })
        })
        .collect();

    DerivedStructure {
        switch_x,
        switch_y,
        shared_edges,
        align_x,
        align_y,
    }
}

fn switch_vertices(p: &PathPair, side: Side) -> Vec<usize> {
    let order = p.order(side);
    let other = p.rank(side.other());
    order
        .windows(3)
        .filter(|w| {
            let (prev, v, next) = (other[w[0]], other[w[1]], other[w[2]]);
            (prev < v) == (next < v)
        })
        .map(|w| w[1])
        .collect()
}

fn alignments(p: &PathPair, side: Side) -> Vec<Alignment> {
    let other = p.rank(side.other());
    p.order(side)
        .windows(2)
        .map(|w| {
            if other[w[0]] < other[w[1]] {
                Alignment::Positive
            } else {
                Alignment::Negative
            }
        })
        .collect()
}
