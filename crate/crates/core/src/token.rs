//! k-subsets of a vertex set, token adjacency, colex ranking and
//! materialized token graphs.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexId, VertexNames};

/// Default cap on the number of vertices of a materialized token graph.
pub const DEFAULT_MAX_VERTICES: u64 = 2_000_000;

const BINOM_ROWS: usize = 65;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TokenError {
    #[error("subset size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("member {member} out of range for order {order}")]
    OutOfRange { member: usize, order: usize },
    #[error("members must be strictly increasing: {0:?}")]
    NotSorted(Vec<usize>),
    #[error("rank {rank} out of range (C({n},{k}) = {total})")]
    RankOutOfRange {
        rank: u64,
        n: usize,
        k: usize,
        total: u64,
    },
    #[error("token count k = {k} must satisfy 1 <= k <= {max}")]
    InvalidK { k: usize, max: usize },
    #[error("binomial C({n},{k}) does not fit the rank table")]
    Overflow { n: usize, k: usize },
    #[error(
        "token graph would have {vertices} vertices, above the materialization cap of {cap}; \
         verify certificates by streaming instead"
    )]
    CapExceeded { vertices: u64, cap: u64 },
}

fn binomial_table() -> &'static [[u64; BINOM_ROWS]; BINOM_ROWS] {
    static TABLE: OnceLock<Box<[[u64; BINOM_ROWS]; BINOM_ROWS]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; BINOM_ROWS]; BINOM_ROWS]);
        for n in 0..BINOM_ROWS {
            t[n][0] = 1;
            for k in 1..=n {
                // Entries that overflow stay at u64::MAX and are rejected by `binomial`.
                t[n][k] = t[n - 1][k - 1].saturating_add(t[n - 1][k]);
            }
        }
        t
    })
}

/// `C(n, k)`, or `None` when `n > 64` or the value overflows.
pub fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    if n >= BINOM_ROWS {
        return None;
    }
    let value = binomial_table()[n][k];
    (value != u64::MAX).then_some(value)
}

/// A vertex of a token graph: a strictly increasing list of base vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct TokenVertex(Vec<VertexId>);

impl TryFrom<Vec<usize>> for TokenVertex {
    type Error = TokenError;

    fn try_from(members: Vec<usize>) -> Result<Self, Self::Error> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(TokenError::NotSorted(members));
        }
        Ok(Self(members))
    }
}

impl From<TokenVertex> for Vec<usize> {
    fn from(v: TokenVertex) -> Self {
        v.0
    }
}

impl TokenVertex {
    /// Builds a subset from members in any order. Duplicates are removed.
    pub fn from_unsorted<I: IntoIterator<Item = VertexId>>(members: I) -> Self {
        let mut members: Vec<_> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self(members)
    }

    pub fn members(&self) -> &[VertexId] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Checks that every member is below `order`.
    pub fn check_order(&self, order: usize) -> Result<(), TokenError> {
        match self.0.last() {
            Some(&last) if last >= order => Err(TokenError::OutOfRange {
                member: last,
                order,
            }),
            _ => Ok(()),
        }
    }

    /// `self \ {remove} ∪ {insert}`, keeping members sorted.
    pub fn swap(&self, remove: VertexId, insert: VertexId) -> Self {
        let mut members: Vec<_> = self.0.iter().copied().filter(|&x| x != remove).collect();
        let pos = members.partition_point(|&x| x < insert);
        members.insert(pos, insert);
        Self(members)
    }

    /// Symmetric difference when it has exactly two elements, as `(only in self, only in other)`.
    pub fn transposition(&self, other: &Self) -> Option<(VertexId, VertexId)> {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut left = None;
        let mut right = None;
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) if x == y => {
                    i += 1;
                    j += 1;
                }
                (Some(&x), Some(&y)) if x < y => {
                    if left.replace(x).is_some() {
                        return None;
                    }
                    i += 1;
                }
                (Some(_), Some(&y)) | (None, Some(&y)) => {
                    if right.replace(y).is_some() {
                        return None;
                    }
                    j += 1;
                }
                (Some(&x), None) => {
                    if left.replace(x).is_some() {
                        return None;
                    }
                    i += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        left.zip(right)
    }

    /// Renders `{v1,v3,w2}` for fan names or `{0,2,5}` for plain ids.
    pub fn display_with(&self, names: VertexNames) -> String {
        let parts: Vec<_> = self.0.iter().map(|&v| names.name(v)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Display for TokenVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(VertexNames::Plain))
    }
}

/// True iff `a` and `b` differ by moving one token along an edge of `g`.
pub fn token_adjacent(g: &Graph, a: &TokenVertex, b: &TokenVertex) -> Result<bool, TokenError> {
    if a.k() != b.k() {
        return Err(TokenError::SizeMismatch {
            left: a.k(),
            right: b.k(),
        });
    }
    a.check_order(g.order())?;
    b.check_order(g.order())?;
    Ok(a.transposition(b).is_some_and(|(x, y)| g.has_edge(x, y)))
}

/// Neighbors of `a` in the token graph of `g`, generated without
/// materializing it: for each member `x` and each neighbor `y ∉ a` of `x`,
/// yield `a \ {x} ∪ {y}`.
pub fn token_neighbors<'a>(
    g: &'a Graph,
    a: &'a TokenVertex,
) -> impl Iterator<Item = TokenVertex> + 'a {
    a.0.iter().flat_map(move |&x| {
        g.neighbors(x)
            .iter()
            .filter(move |&&y| !a.contains(y))
            .map(move |&y| a.swap(x, y))
    })
}

/// Colex rank: `Σ C(members[i], i + 1)`.
pub fn rank(v: &TokenVertex, n: usize) -> Result<u64, TokenError> {
    v.check_order(n)?;
    let mut total: u64 = 0;
    for (i, &x) in v.0.iter().enumerate() {
        let term = binomial(x, i + 1).ok_or(TokenError::Overflow { n: x, k: i + 1 })?;
        total = total
            .checked_add(term)
            .ok_or(TokenError::Overflow { n, k: v.k() })?;
    }
    Ok(total)
}

/// Inverse of [`rank`] over the k-subsets of `0..n`.
pub fn unrank(mut r: u64, n: usize, k: usize) -> Result<TokenVertex, TokenError> {
    let total = binomial(n, k).ok_or(TokenError::Overflow { n, k })?;
    if r >= total {
        return Err(TokenError::RankOutOfRange {
            rank: r,
            n,
            k,
            total,
        });
    }
    let mut members = vec![0; k];
    let mut upper = n;
    for slot in (0..k).rev() {
        let i = slot + 1;
        // largest x < upper with C(x, i) <= r
        let mut x = upper - 1;
        while binomial(x, i).expect("within table") > r {
            x -= 1;
        }
        members[slot] = x;
        r -= binomial(x, i).expect("within table");
        upper = x;
    }
    Ok(TokenVertex(members))
}

/// `V \ a` over vertices `0..n`.
pub fn complement_vertex(a: &TokenVertex, n: usize) -> TokenVertex {
    TokenVertex((0..n).filter(|&v| !a.contains(v)).collect())
}

/// Validates `k` against the base order and returns `C(order, k)`.
pub fn token_count(order: usize, k: usize) -> Result<u64, TokenError> {
    if k == 0 || k >= order {
        return Err(TokenError::InvalidK {
            k,
            max: order.saturating_sub(1),
        });
    }
    binomial(order, k).ok_or(TokenError::Overflow { n: order, k })
}

/// A fully materialized k-token graph. Vertex `r` is `unrank(r, n, k)`.
#[derive(Debug, Clone)]
pub struct TokenGraph {
    base: Graph,
    k: usize,
    graph: Graph,
}

impl TokenGraph {
    pub fn new(base: &Graph, k: usize) -> Result<Self, TokenError> {
        Self::with_cap(base, k, DEFAULT_MAX_VERTICES)
    }

    pub fn with_cap(base: &Graph, k: usize, cap: u64) -> Result<Self, TokenError> {
        let n = base.order();
        let count = token_count(n, k)?;
        if count > cap {
            return Err(TokenError::CapExceeded {
                vertices: count,
                cap,
            });
        }
        let mut adjacency = Vec::with_capacity(count as usize);
        for r in 0..count {
            let v = unrank(r, n, k)?;
            let mut row = token_neighbors(base, &v)
                .map(|u| rank(&u, n).map(|x| x as usize))
                .collect::<Result<Vec<_>, _>>()?;
            row.sort_unstable();
            adjacency.push(row);
        }
        Ok(Self {
            base: base.clone(),
            k,
            graph: Graph::from_sorted_adjacency(adjacency),
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The token graph as a plain graph over vertex ranks.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.order()
    }

    pub fn vertex(&self, r: usize) -> TokenVertex {
        unrank(r as u64, self.base.order(), self.k).expect("rank below vertex count")
    }

    pub fn index_of(&self, v: &TokenVertex) -> Result<usize, TokenError> {
        if v.k() != self.k {
            return Err(TokenError::SizeMismatch {
                left: v.k(),
                right: self.k,
            });
        }
        rank(v, self.base.order()).map(|r| r as usize)
    }
}
