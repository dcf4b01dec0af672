//! Independent checks: certificate verification, exhaustive Hamiltonian
//! search, cut witnesses and the complement isomorphism.
//!
//! Nothing in here calls into the constructions in [`crate::fan`]; the
//! constructions call into this module to validate their own output.

use std::cell::Cell;

use serde::Serialize;
use thiserror::Error;

use crate::fan::{expected_marker, CycleCertificate};
use crate::graph::{components_excluding, Graph, GraphError};
use crate::token::{
    complement_vertex, rank, token_adjacent, token_count, TokenError, TokenGraph, TokenVertex,
    DEFAULT_MAX_VERTICES,
};

/// Default node-expansion budget for the exhaustive searches.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

thread_local! {
    static EXPANSIONS: Cell<u64> = const { Cell::new(0) };
}

/// Total search expansions performed on the calling thread so far.
pub fn expansions_on_this_thread() -> u64 {
    EXPANSIONS.with(Cell::get)
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Token(#[from] TokenError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cut set must be nonempty")]
    EmptyCut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    WrongLength,
    InvalidK,
    OrderMismatch,
    InvalidVertex,
    Duplicate,
    NonEdgeAt,
    MarkerMismatch,
    BudgetExhausted,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::WrongLength => "wrong_length",
            Reason::InvalidK => "invalid_k",
            Reason::OrderMismatch => "order_mismatch",
            Reason::InvalidVertex => "invalid_vertex",
            Reason::Duplicate => "duplicate",
            Reason::NonEdgeAt => "non_edge_at",
            Reason::MarkerMismatch => "marker_mismatch",
            Reason::BudgetExhausted => "budget_exhausted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub reason: Reason,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub detail: String,
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.reason.code())?;
        if let Some(i) = self.index {
            write!(f, " {i}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Accept,
    Reject(Rejection),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            Verdict::Accept => None,
            Verdict::Reject(r) => Some(r),
        }
    }
}

fn reject(reason: Reason, index: Option<usize>, detail: impl Into<String>) -> Verdict {
    Verdict::Reject(Rejection {
        reason,
        index,
        detail: detail.into(),
    })
}

/// Checks that `seq` lists every k-subset of `g` exactly once with
/// consecutive entries token-adjacent; with `closed`, the last entry must
/// also be adjacent to the first.
pub fn verify_sequence(g: &Graph, k: usize, seq: &[TokenVertex], closed: bool) -> Verdict {
    let order = g.order();
    let expected = match token_count(order, k) {
        Ok(c) => c,
        Err(e) => return reject(Reason::InvalidK, None, e.to_string()),
    };
    if seq.len() as u64 != expected {
        return reject(
            Reason::WrongLength,
            None,
            format!(
                "expected C({order},{k}) = {expected} entries, got {}",
                seq.len()
            ),
        );
    }
    if closed && seq.len() < 3 {
        return reject(
            Reason::WrongLength,
            None,
            "a cycle needs at least 3 vertices",
        );
    }
    let mut seen = vec![false; seq.len()];
    for (i, v) in seq.iter().enumerate() {
        if v.k() != k {
            return reject(
                Reason::InvalidVertex,
                Some(i),
                format!("{v} does not have {k} members"),
            );
        }
        let r = match rank(v, order) {
            Ok(r) => r as usize,
            Err(e) => return reject(Reason::InvalidVertex, Some(i), e.to_string()),
        };
        if std::mem::replace(&mut seen[r], true) {
            return reject(Reason::Duplicate, Some(i), format!("{v} repeated"));
        }
    }
    let steps = if closed { seq.len() } else { seq.len() - 1 };
    for i in 0..steps {
        let (a, b) = (&seq[i], &seq[(i + 1) % seq.len()]);
        if !token_adjacent(g, a, b).unwrap_or(false) {
            return reject(
                Reason::NonEdgeAt,
                Some(i),
                format!("{a} and {b} are not adjacent"),
            );
        }
    }
    Verdict::Accept
}

/// Full certificate check: order, length, distinctness, cyclic adjacency and
/// (when claimed) the marker pair.
pub fn verify_cycle(g: &Graph, k: usize, cert: &CycleCertificate) -> Verdict {
    if cert.base_order() != g.order() {
        return reject(
            Reason::OrderMismatch,
            None,
            format!(
                "certificate is over {} vertices, graph has {}",
                cert.base_order(),
                g.order()
            ),
        );
    }
    if cert.k != k {
        // A certificate for another k can never have the right length.
        let got = cert.cycle.len();
        return reject(
            Reason::WrongLength,
            None,
            format!(
                "certificate is for k = {}, checking k = {k} ({got} entries)",
                cert.k
            ),
        );
    }
    let verdict = verify_sequence(g, k, &cert.cycle, true);
    if !verdict.is_accept() {
        return verdict;
    }
    if let Some([p, q]) = cert.marker {
        let len = cert.cycle.len();
        if p >= len || q >= len || (p + 1) % len != q && (q + 1) % len != p {
            return reject(
                Reason::MarkerMismatch,
                Some(p.min(len)),
                format!("marker positions {p},{q} are not cyclically consecutive"),
            );
        }
        let Some((x, y)) = expected_marker(cert) else {
            return reject(
                Reason::MarkerMismatch,
                Some(p),
                "marker claimed but not defined for this certificate",
            );
        };
        if cert.cycle[p] != x || cert.cycle[q] != y {
            return reject(
                Reason::MarkerMismatch,
                Some(p),
                format!(
                    "expected {x},{y} at positions {p},{q}, found {},{}",
                    cert.cycle[p], cert.cycle[q]
                ),
            );
        }
    }
    Verdict::Accept
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "vertices", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found(Vec<usize>),
    None,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub expansions: u64,
}

struct Search<'a> {
    g: &'a Graph,
    closed: bool,
    visited: Vec<bool>,
    path: Vec<usize>,
    expansions: u64,
    budget: u64,
    // scratch for the connectivity check
    mark: Vec<u32>,
    epoch: u32,
    stack: Vec<usize>,
}

enum Step {
    Done,
    Dead,
    OutOfBudget,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, closed: bool, budget: u64) -> Self {
        Self {
            g,
            closed,
            visited: vec![false; g.order()],
            path: Vec::with_capacity(g.order()),
            expansions: 0,
            budget,
            mark: vec![0; g.order()],
            epoch: 0,
            stack: Vec::new(),
        }
    }

    fn start(&self) -> usize {
        self.path[0]
    }

    /// Necessary conditions on the unvisited remainder given the current end.
    /// `None` means the branch is dead; `Some(Some(u))` means `u` is the only
    /// possible next vertex.
    fn feasible(&mut self, cur: usize) -> Option<Option<usize>> {
        let g = self.g;
        let start = self.start();
        let remaining = g.order() - self.path.len();
        if remaining == 0 {
            return (!self.closed || g.has_edge(cur, start)).then_some(None);
        }
        if self.closed && cur != start && !g.neighbors(start).iter().any(|&x| !self.visited[x]) {
            return None;
        }
        let mut weak = 0;
        let mut forced = None;
        for u in 0..g.order() {
            if self.visited[u] {
                continue;
            }
            let mut avail = 0;
            let mut touches_cur = false;
            for &x in g.neighbors(u) {
                if x == cur {
                    touches_cur = true;
                    avail += 1;
                } else if !self.visited[x] || (self.closed && x == start) {
                    avail += 1;
                }
            }
            if self.closed {
                if avail < 2 {
                    return None;
                }
                // both remaining edges of u are forced, one of them is cur–u
                if avail == 2 && touches_cur && cur != start && forced.replace(u).is_some() {
                    return None;
                }
            } else if avail == 0 {
                return None;
            } else if avail == 1 {
                weak += 1;
                if weak > 1 {
                    return None;
                }
                if touches_cur && remaining > 1 {
                    return None;
                }
            }
        }
        // unvisited vertices plus the current end must form one piece
        self.epoch += 1;
        let epoch = self.epoch;
        self.stack.clear();
        self.stack.push(cur);
        self.mark[cur] = epoch;
        let mut reached = 0;
        while let Some(u) = self.stack.pop() {
            for &x in g.neighbors(u) {
                if !self.visited[x] && self.mark[x] != epoch {
                    self.mark[x] = epoch;
                    reached += 1;
                    self.stack.push(x);
                }
            }
        }
        (reached == remaining).then_some(forced)
    }

    fn extend(&mut self, forced: Option<usize>) -> Step {
        let cur = *self.path.last().expect("path is seeded");
        if self.path.len() == self.g.order() {
            return if !self.closed || self.g.has_edge(cur, self.start()) {
                Step::Done
            } else {
                Step::Dead
            };
        }
        for &next in self.g.neighbors(cur) {
            if self.visited[next] || forced.is_some_and(|f| f != next) {
                continue;
            }
            if self.expansions >= self.budget {
                return Step::OutOfBudget;
            }
            self.expansions += 1;
            self.visited[next] = true;
            self.path.push(next);
            if let Some(next_forced) = self.feasible(next) {
                match self.extend(next_forced) {
                    Step::Dead => {}
                    other => return other,
                }
            }
            self.path.pop();
            self.visited[next] = false;
        }
        Step::Dead
    }

    fn run_from(&mut self, start: usize) -> Step {
        self.path.clear();
        self.visited.iter_mut().for_each(|v| *v = false);
        self.visited[start] = true;
        self.path.push(start);
        match self.feasible(start) {
            Some(forced) => self.extend(forced),
            None => Step::Dead,
        }
    }
}

fn finish(search: Search<'_>, step: Step) -> SearchReport {
    EXPANSIONS.with(|c| c.set(c.get() + search.expansions));
    let outcome = match step {
        Step::Done => SearchOutcome::Found(search.path),
        Step::Dead => SearchOutcome::None,
        Step::OutOfBudget => SearchOutcome::BudgetExhausted,
    };
    SearchReport {
        outcome,
        expansions: search.expansions,
    }
}

/// Exhaustive Hamiltonian cycle search from vertex 0, neighbors tried in
/// ascending order. Graphs with fewer than 3 vertices have no cycle.
pub fn brute_ham_cycle(g: &Graph, budget: u64) -> SearchReport {
    let mut search = Search::new(g, true, budget);
    if g.order() < 3 {
        return finish(search, Step::Dead);
    }
    let step = search.run_from(0);
    finish(search, step)
}

/// Exhaustive Hamiltonian path search. If the graph has degree-1 vertices,
/// only those are tried as starting points.
pub fn brute_ham_path(g: &Graph, budget: u64) -> SearchReport {
    let mut search = Search::new(g, false, budget);
    if g.order() == 1 {
        search.path.push(0);
        return finish(search, Step::Done);
    }
    let leaves: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) == 1).collect();
    if leaves.len() > 2 || (0..g.order()).any(|v| g.degree(v) == 0) {
        return finish(search, Step::Dead);
    }
    let starts: Vec<usize> = if leaves.is_empty() {
        (0..g.order()).collect()
    } else {
        leaves
    };
    for s in starts {
        match search.run_from(s) {
            Step::Dead => continue,
            step => return finish(search, step),
        }
    }
    finish(search, Step::Dead)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub cut_size: usize,
    pub component_count: usize,
    /// `component_count > cut_size`, which rules out a Hamiltonian cycle.
    pub proves: bool,
}

/// Counts the components of the k-token graph of `g` minus `cut`.
pub fn check_witness(
    g: &Graph,
    k: usize,
    cut: &[TokenVertex],
) -> Result<WitnessCheck, VerifyError> {
    check_witness_with_cap(g, k, cut, DEFAULT_MAX_VERTICES)
}

pub fn check_witness_with_cap(
    g: &Graph,
    k: usize,
    cut: &[TokenVertex],
    cap: u64,
) -> Result<WitnessCheck, VerifyError> {
    if cut.is_empty() {
        return Err(VerifyError::EmptyCut);
    }
    let tg = TokenGraph::with_cap(g, k, cap)?;
    let mut removed = vec![false; tg.vertex_count()];
    for v in cut {
        removed[tg.index_of(v)?] = true;
    }
    let cut_size = removed.iter().filter(|&&r| r).count();
    let component_count = components_excluding(tg.graph(), &removed).count;
    Ok(WitnessCheck {
        cut_size,
        component_count,
        proves: component_count > cut_size,
    })
}

/// Whether complementation maps the k-token graph of `g` isomorphically onto
/// its (n−k)-token graph.
pub fn check_complement_iso(g: &Graph, k: usize) -> Result<bool, VerifyError> {
    let n = g.order();
    let left = TokenGraph::new(g, k)?;
    let right = TokenGraph::new(g, n - k)?;
    if left.vertex_count() != right.vertex_count()
        || left.graph().edge_count() != right.graph().edge_count()
    {
        return Ok(false);
    }
    let mut image = vec![usize::MAX; left.vertex_count()];
    let mut hit = vec![false; right.vertex_count()];
    for (r, slot) in image.iter_mut().enumerate() {
        let c = right.index_of(&complement_vertex(&left.vertex(r), n))?;
        if std::mem::replace(&mut hit[c], true) {
            return Ok(false);
        }
        *slot = c;
    }
    // Injective on vertices, equal edge counts: edge images suffice.
    let preserved = left
        .graph()
        .edges()
        .all(|(a, b)| right.graph().has_edge(image[a], image[b]));
    Ok(preserved)
}
