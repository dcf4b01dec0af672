//! Simple undirected graphs, the standard families used throughout the crate,
//! the join operation and connectivity utilities.
//!
//! Fans use a fixed labeling: path vertices `v_1..v_n` are ids `0..n-1` in
//! path order and hubs `w_1..w_m` are ids `n..n+m-1`. Certificates and marker
//! checks depend on it.

use std::fmt::Write as _;
use std::sync::OnceLock;

use thiserror::Error;

/// Graphs up to this order get a dense adjacency matrix on first use.
pub const DEFAULT_DENSE_THRESHOLD: usize = 512;

pub type VertexId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParams {
        family: &'static str,
        reason: String,
    },
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("edge list parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Named graph families with their integer parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFamily {
    Path(usize),
    Empty(usize),
    Complete(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    /// `K_{1,m}`: center is vertex 0.
    Star(usize),
    SquareOfPath(usize),
    /// `F_{m,n} = E_m + P_n`, given as `Fan(m, n)`.
    Fan(usize, usize),
}

#[derive(Debug, Clone)]
struct DenseAdjacency {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl DenseAdjacency {
    fn contains(&self, u: usize, v: usize) -> bool {
        let word = self.bits[u * self.words_per_row + v / 64];
        word >> (v % 64) & 1 == 1
    }
}

/// Simple undirected graph on vertices `0..order`.
///
/// Immutable once built. Neighbor lists are sorted and duplicate free.
#[derive(Debug, Clone)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
    dense_threshold: usize,
    dense: OnceLock<Option<DenseAdjacency>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged; loops are rejected.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if order == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); order];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: x, order });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Self {
            adjacency,
            edge_count,
            dense_threshold: DEFAULT_DENSE_THRESHOLD,
            dense: OnceLock::new(),
        })
    }

    /// Builds a graph from neighbor lists that already satisfy the symmetry
    /// and sortedness invariants. Used for materialized token graphs.
    pub(crate) fn from_sorted_adjacency(adjacency: Vec<Vec<VertexId>>) -> Self {
        debug_assert!(adjacency.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Self {
            adjacency,
            edge_count,
            dense_threshold: DEFAULT_DENSE_THRESHOLD,
            dense: OnceLock::new(),
        }
    }

    /// Overrides the order below which `has_edge` uses a dense bit matrix.
    pub fn with_dense_threshold(mut self, threshold: usize) -> Self {
        self.dense_threshold = threshold;
        self.dense = OnceLock::new();
        self
    }

    pub fn build(family: GraphFamily) -> Result<Self, GraphError> {
        use GraphFamily::*;
        let positive = |family: &'static str, values: &[usize]| {
            if values.contains(&0) {
                Err(GraphError::InvalidParams {
                    family,
                    reason: "sizes must be positive".into(),
                })
            } else {
                Ok(())
            }
        };
        match family {
            Path(n) => {
                positive("path", &[n])?;
                Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
            }
            Empty(n) => {
                positive("empty", &[n])?;
                Self::from_edges(n, std::iter::empty())
            }
            Complete(n) => {
                positive("complete", &[n])?;
                Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
            Cycle(n) => {
                if n < 3 {
                    return Err(GraphError::InvalidParams {
                        family: "cycle",
                        reason: format!("a cycle needs at least 3 vertices, got {n}"),
                    });
                }
                Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            CompleteBipartite(a, b) => {
                positive("complete-bipartite", &[a, b])?;
                Self::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            }
            Star(m) => {
                positive("star", &[m])?;
                Self::from_edges(m + 1, (1..=m).map(|i| (0, i)))
            }
            SquareOfPath(n) => {
                positive("square-of-path", &[n])?;
                Self::from_edges(
                    n,
                    (1..n).map(|i| (i - 1, i)).chain((2..n).map(|i| (i - 2, i))),
                )
            }
            Fan(m, n) => {
                positive("fan", &[m, n])?;
                Ok(join(&Self::build(Path(n))?, &Self::build(Empty(m))?))
            }
        }
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        if u >= self.order() || v >= self.order() {
            return false;
        }
        match self.dense_matrix() {
            Some(dense) => dense.contains(u, v),
            None => self.adjacency[u].binary_search(&v).is_ok(),
        }
    }

    fn dense_matrix(&self) -> Option<&DenseAdjacency> {
        self.dense
            .get_or_init(|| {
                let order = self.order();
                if order > self.dense_threshold {
                    return None;
                }
                let words_per_row = order.div_ceil(64);
                let mut bits = vec![0u64; words_per_row * order];
                for (u, list) in self.adjacency.iter().enumerate() {
                    for &v in list {
                        bits[u * words_per_row + v / 64] |= 1 << (v % 64);
                    }
                }
                Some(DenseAdjacency {
                    words_per_row,
                    bits,
                })
            })
            .as_ref()
    }

    /// All edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Checks symmetry, irreflexivity and sorted duplicate-free neighbor lists.
    pub fn validate(&self) -> bool {
        self.adjacency.iter().enumerate().all(|(u, list)| {
            list.windows(2).all(|w| w[0] < w[1])
                && list.iter().all(|&v| {
                    v != u && v < self.order() && self.adjacency[v].binary_search(&u).is_ok()
                })
        })
    }

    /// Subgraph induced by `keep`, relabeled to `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[VertexId]) -> Result<Self, GraphError> {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            if v >= self.order() {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    order: self.order(),
                });
            }
            index[v] = i;
        }
        let edges = keep.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.adjacency[v].iter().filter_map(move |&u| {
                (index[u] != usize::MAX && i < index[u]).then_some((i, index[u]))
            })
        });
        Self::from_edges(keep.len(), edges.collect::<Vec<_>>())
    }
}

/// The join `g + h`: disjoint union plus every edge between the two sides.
/// Vertices of `h` are shifted by `g.order()`.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let shift = g.order();
    let order = shift + h.order();
    let mut adjacency = Vec::with_capacity(order);
    for list in &g.adjacency {
        let mut row = list.clone();
        row.extend(shift..order);
        adjacency.push(row);
    }
    for list in &h.adjacency {
        let mut row: Vec<_> = (0..shift).collect();
        row.extend(list.iter().map(|v| v + shift));
        adjacency.push(row);
    }
    Graph::from_sorted_adjacency(adjacency)
}

/// Component count and a per-vertex component label (labels are assigned in
/// order of the smallest vertex of each component).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    pub labels: Vec<usize>,
}

pub fn connected_components(g: &Graph) -> Components {
    components_excluding(g, &vec![false; g.order()])
}

/// Components of `g` with the vertices flagged in `removed` deleted. Removed
/// vertices get the label `usize::MAX`.
pub fn components_excluding(g: &Graph, removed: &[bool]) -> Components {
    let mut labels = vec![usize::MAX; g.order()];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..g.order() {
        if removed[start] || labels[start] != usize::MAX {
            continue;
        }
        labels[start] = count;
        stack.push(start);
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if !removed[v] && labels[v] == usize::MAX {
                    labels[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    Components { count, labels }
}

/// How vertex ids are rendered in text output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexNames {
    #[default]
    Plain,
    /// Fan labels `v1..vn`, `w1..wm` under the canonical fan labeling.
    Fan { n: usize },
}

impl VertexNames {
    pub fn name(&self, v: VertexId) -> String {
        match *self {
            VertexNames::Plain => v.to_string(),
            VertexNames::Fan { n } if v < n => format!("v{}", v + 1),
            VertexNames::Fan { n } => format!("w{}", v - n + 1),
        }
    }
}

/// Undirected DOT output. Edge lines are sorted as strings so the output is
/// byte-stable.
pub fn to_dot(g: &Graph, names: VertexNames) -> String {
    let mut out = String::from("graph {\n");
    for v in 0..g.order() {
        let _ = writeln!(out, "  \"{}\";", names.name(v));
    }
    let mut lines: Vec<String> = g
        .edges()
        .map(|(u, v)| format!("  \"{}\" -- \"{}\";", names.name(u), names.name(v)))
        .collect();
    lines.sort();
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

/// Edge-list output: an `# order N` header, then one `u v` pair per line
/// with `u < v`, sorted.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("# order {}\n", g.order());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses the edge-list format written by [`to_edge_list`]. Blank lines and
/// other `#` comments are ignored; the `# order N` header is mandatory.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut order = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some("order") {
                let value = words.next().and_then(|w| w.parse::<usize>().ok());
                match value {
                    Some(n) if order.is_none() => order = Some(n),
                    Some(_) => {
                        return Err(GraphError::Parse {
                            line: line_no,
                            reason: "duplicate order header".into(),
                        })
                    }
                    None => {
                        return Err(GraphError::Parse {
                            line: line_no,
                            reason: "malformed order header".into(),
                        })
                    }
                }
            }
            continue;
        }
        let parsed: Vec<_> = line.split_whitespace().map(str::parse::<usize>).collect();
        match parsed.as_slice() {
            [Ok(u), Ok(v)] => edges.push((*u, *v)),
            _ => {
                return Err(GraphError::Parse {
                    line: line_no,
                    reason: format!("expected `u v`, got `{line}`"),
                })
            }
        }
    }
    let order = order.ok_or(GraphError::Parse {
        line: 1,
        reason: "missing `# order N` header".into(),
    })?;
    Graph::from_edges(order, edges)
}
