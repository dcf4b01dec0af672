//! Gray codes for k-combinations as Hamiltonian paths and cycles of token
//! graphs.
//!
//! A k-subset of `0..n` is written as a binary word of length `n` whose
//! `i`-th character (from the left, 1-based) is `1` iff element `i − 1` is in
//! the subset. This convention is part of the output format.

use serde::{Deserialize, Serialize};

use crate::fan::{fan_cycle, FanError};
use crate::graph::{Graph, GraphError, GraphFamily};
use crate::token::{binomial, TokenGraph, TokenVertex};
use crate::verify::{brute_ham_cycle, brute_ham_path, SearchOutcome, VerifyError};

/// Which pairs of elements a single step may exchange.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosenessRelation {
    /// Any two elements.
    Transposition { n: usize },
    /// Elements `i` and `i + 1`.
    AdjacentTransposition { n: usize },
    /// Elements at distance at most two.
    OneOrTwoApart { n: usize },
    /// Endpoints of an edge of the given graph.
    GraphInduced(Graph),
}

impl ClosenessRelation {
    pub fn n(&self) -> usize {
        match self {
            ClosenessRelation::Transposition { n }
            | ClosenessRelation::AdjacentTransposition { n }
            | ClosenessRelation::OneOrTwoApart { n } => *n,
            ClosenessRelation::GraphInduced(g) => g.order(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClosenessRelation::Transposition { .. } => "transposition",
            ClosenessRelation::AdjacentTransposition { .. } => "adjacent",
            ClosenessRelation::OneOrTwoApart { .. } => "apart2",
            ClosenessRelation::GraphInduced(_) => "graph",
        }
    }
}

/// The graph whose edges are the allowed exchanges. The closeness graph on
/// k-subsets is the k-token graph of this graph.
pub fn closeness_graph(rel: &ClosenessRelation) -> Result<Graph, GraphError> {
    match rel {
        ClosenessRelation::Transposition { n } => Graph::build(GraphFamily::Complete(*n)),
        ClosenessRelation::AdjacentTransposition { n } => Graph::build(GraphFamily::Path(*n)),
        ClosenessRelation::OneOrTwoApart { n } => Graph::build(GraphFamily::SquareOfPath(*n)),
        ClosenessRelation::GraphInduced(g) => Ok(g.clone()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrayCodeListing {
    pub n: usize,
    pub k: usize,
    pub cyclic: bool,
    pub words: Vec<String>,
}

impl GrayCodeListing {
    /// One word per line, followed by `# cyclic` for cyclic codes.
    pub fn to_text(&self) -> String {
        let mut out = self.words.join("\n");
        out.push('\n');
        if self.cyclic {
            out.push_str("# cyclic\n");
        }
        out
    }
}

pub fn encode_word(v: &TokenVertex, n: usize) -> String {
    (0..n)
        .map(|i| if v.contains(i) { '1' } else { '0' })
        .collect()
}

/// Inverse of [`encode_word`]; `None` on characters other than `0`/`1`.
pub fn decode_word(word: &str) -> Option<TokenVertex> {
    let mut members = Vec::new();
    for (i, c) in word.chars().enumerate() {
        match c {
            '1' => members.push(i),
            '0' => {}
            _ => return None,
        }
    }
    Some(TokenVertex::from_unsorted(members))
}

/// Turns a token-graph cycle (or path, with `cyclic = false`) into words.
pub fn code_from_cycle(seq: &[TokenVertex], n: usize, cyclic: bool) -> GrayCodeListing {
    GrayCodeListing {
        n,
        k: seq.first().map_or(0, TokenVertex::k),
        cyclic,
        words: seq.iter().map(|v| encode_word(v, n)).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeReason {
    Malformed,
    Duplicate,
    Incomplete,
    NotClose,
    RelationMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CodeVerdict {
    Accept,
    Reject {
        reason: CodeReason,
        #[serde(skip_serializing_if = "Option::is_none")]
        index: Option<usize>,
        detail: String,
    },
}

impl CodeVerdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, CodeVerdict::Accept)
    }

    pub fn reason(&self) -> Option<CodeReason> {
        match self {
            CodeVerdict::Accept => None,
            CodeVerdict::Reject { reason, .. } => Some(*reason),
        }
    }
}

fn code_reject(reason: CodeReason, index: Option<usize>, detail: impl Into<String>) -> CodeVerdict {
    CodeVerdict::Reject {
        reason,
        index,
        detail: detail.into(),
    }
}

/// Checks that the listing is a (cyclic, if claimed) Gray code for all
/// k-subsets of `0..n` under `rel`.
pub fn verify_code(listing: &GrayCodeListing, rel: &ClosenessRelation) -> CodeVerdict {
    let (n, k) = (listing.n, listing.k);
    if rel.n() != n {
        return code_reject(
            CodeReason::RelationMismatch,
            None,
            format!("relation is over {} elements, listing over {n}", rel.n()),
        );
    }
    let graph = match closeness_graph(rel) {
        Ok(g) => g,
        Err(e) => return code_reject(CodeReason::RelationMismatch, None, e.to_string()),
    };
    let mut seen = std::collections::HashSet::with_capacity(listing.words.len());
    let mut subsets = Vec::with_capacity(listing.words.len());
    for (i, word) in listing.words.iter().enumerate() {
        let decoded = decode_word(word);
        match decoded {
            Some(v) if word.len() == n && v.k() == k => {
                if !seen.insert(word.as_str()) {
                    return code_reject(CodeReason::Duplicate, Some(i), format!("{word} repeated"));
                }
                subsets.push(v);
            }
            _ => {
                return code_reject(
                    CodeReason::Malformed,
                    Some(i),
                    format!("`{word}` is not a length-{n} word of weight {k}"),
                )
            }
        }
    }
    let expected = binomial(n, k).unwrap_or(u64::MAX);
    if subsets.len() as u64 != expected {
        return code_reject(
            CodeReason::Incomplete,
            None,
            format!(
                "expected C({n},{k}) = {expected} words, got {}",
                subsets.len()
            ),
        );
    }
    let steps = if listing.cyclic && subsets.len() > 1 {
        subsets.len()
    } else {
        subsets.len().saturating_sub(1)
    };
    for i in 0..steps {
        let (a, b) = (&subsets[i], &subsets[(i + 1) % subsets.len()]);
        let close = a
            .transposition(b)
            .is_some_and(|(x, y)| graph.has_edge(x, y));
        if !close {
            return code_reject(
                CodeReason::NotClose,
                Some(i),
                format!(
                    "{} -> {}",
                    listing.words[i],
                    listing.words[(i + 1) % subsets.len()]
                ),
            );
        }
    }
    CodeVerdict::Accept
}

/// Constructed cyclic Gray code under the fan relation: element ids follow
/// the canonical fan labeling (path first, then hubs). No search involved.
pub fn fan_gray_code(m: usize, n: usize, k: usize) -> Result<GrayCodeListing, FanError> {
    let cert = fan_cycle(m, n, k)?;
    Ok(code_from_cycle(&cert.cycle, m + n, true))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeSearch {
    Found(GrayCodeListing),
    None,
    BudgetExhausted,
}

/// Gray code by exhaustive search on the token graph of the relation's
/// closeness graph. Desk scale only.
pub fn search_code(
    rel: &ClosenessRelation,
    k: usize,
    cyclic: bool,
    budget: u64,
) -> Result<CodeSearch, VerifyError> {
    let n = rel.n();
    let base = closeness_graph(rel)?;
    let tg = TokenGraph::new(&base, k)?;
    let report = if cyclic {
        brute_ham_cycle(tg.graph(), budget)
    } else {
        brute_ham_path(tg.graph(), budget)
    };
    Ok(match report.outcome {
        SearchOutcome::Found(order) => {
            let seq: Vec<_> = order.into_iter().map(|r| tg.vertex(r)).collect();
            CodeSearch::Found(code_from_cycle(&seq, n, cyclic))
        }
        SearchOutcome::None => CodeSearch::None,
        SearchOutcome::BudgetExhausted => CodeSearch::BudgetExhausted,
    })
}
