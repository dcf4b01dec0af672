//! Hamiltonian cycles in token graphs of fan graphs `F_{m,n} = E_m + P_n`
//! and of joins `G_1 + G_2` where `G_2` has a Hamiltonian path.
//!
//! All constructions are explicit (no search). They work in the canonical
//! fan labeling: `v_i` is id `i - 1`, `w_j` is id `n + j - 1`. Every
//! certificate carries a *marker*: the positions of the consecutive pair
//! `{w_1, v_1, …, v_{k-1}}`, `{v_1, …, v_k}`, which is what lets the
//! recursive constructions splice cycles together.
//!
//! For `k = 2`:
//! * `m = 1`: paths `T_i = {v_i,w_1}{v_i,v_{i+1}}…{v_i,v_n}` joined with
//!   alternating orientation ([`double_cycle_m1`]).
//! * `m = 2n`: the `m = 1` cycle opened into a path, followed by one path
//!   per extra hub ([`double_cycle_max`]).
//! * `1 < m < 2n`: the first `m` of those paths with the pairs `{w_i, w_j}`,
//!   `j > m`, removed ([`double_cycle_mid`]).
//! * `m > 2n`: no cycle; the cut of all hub/path pairs leaves more
//!   components than its size ([`witness_over`]).
//!
//! For `k > 2`, [`lemma_cycle_m1`] handles one hub by recursion on the
//! largest path vertex, and [`fan_cycle`] peels off `w_1` and stitches the
//! cycles of `F_{m-1,n}^{k-1}` and `F_{m-1,n}^{k}` along their markers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{join, Graph, GraphError, GraphFamily, VertexId, VertexNames};
use crate::token::{complement_vertex, token_adjacent, TokenError, TokenGraph, TokenVertex};
use crate::verify::{
    brute_ham_cycle, check_witness, verify_cycle, Rejection, SearchOutcome, Verdict, VerifyError,
    DEFAULT_BUDGET,
};

#[derive(Debug, Error)]
pub enum FanError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("construction produced an invalid certificate: {0}")]
    Construction(Rejection),
    #[error("cut of size {cut_size} leaves only {components} components")]
    WitnessFails { cut_size: usize, components: usize },
    #[error("not a Hamiltonian path of the second graph: {0}")]
    InvalidHamPath(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Token(#[from] TokenError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

fn invalid(msg: impl Into<String>) -> FanError {
    FanError::InvalidParams(msg.into())
}

/// How certificate vertex ids relate to the base graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Labeling {
    /// Ids are the canonical fan labeling of `F_{m,n}`.
    #[serde(rename = "fan-canonical")]
    FanCanonical,
    /// Ids belong to another graph; `vertex_map[c]` is the id standing in
    /// for canonical fan id `c`.
    #[serde(rename = "mapped")]
    Mapped,
}

/// A claimed Hamiltonian cycle in a k-token graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCertificate {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub labeling: Labeling,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_map: Option<Vec<VertexId>>,
    pub cycle: Vec<TokenVertex>,
    /// Positions of `{w_1, v_1..v_{k-1}}` and `{v_1..v_k}`, in that order.
    #[serde(default)]
    pub marker: Option<[usize; 2]>,
}

impl CycleCertificate {
    pub fn base_order(&self) -> usize {
        self.m + self.n
    }

    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Rotates (and if needed reverses) the cycle so the marker pair sits at
    /// positions 0 and 1. Certificates without a marker are returned as is.
    pub fn normalized(&self) -> Self {
        let Some([p, q]) = self.marker else {
            return self.clone();
        };
        let len = self.cycle.len();
        let cycle: Vec<_> = if (p + 1) % len == q {
            (0..len)
                .map(|i| self.cycle[(p + i) % len].clone())
                .collect()
        } else {
            (0..len)
                .map(|i| self.cycle[(p + len - i) % len].clone())
                .collect()
        };
        Self {
            cycle,
            marker: Some([0, 1]),
            ..self.clone()
        }
    }

    /// Names used for text output: fan names for canonical certificates.
    pub fn vertex_names(&self) -> VertexNames {
        match self.labeling {
            Labeling::FanCanonical => VertexNames::Fan { n: self.n },
            Labeling::Mapped => VertexNames::Plain,
        }
    }
}

/// Canonical marker pair `({w_1, v_1..v_{k-1}}, {v_1..v_k})` for `F_{m,n}^{k}`.
pub fn marker_pair(n: usize, k: usize) -> (TokenVertex, TokenVertex) {
    (
        TokenVertex::from_unsorted((0..k - 1).chain([n])),
        TokenVertex::from_unsorted(0..k),
    )
}

/// The marker pair a certificate should hold, translated through its
/// labeling. `None` when the pair does not exist (`n < k`) or the map is bad.
pub fn expected_marker(cert: &CycleCertificate) -> Option<(TokenVertex, TokenVertex)> {
    if cert.k == 0 || cert.n < cert.k {
        return None;
    }
    let (x, y) = marker_pair(cert.n, cert.k);
    match cert.labeling {
        Labeling::FanCanonical => Some((x, y)),
        Labeling::Mapped => {
            let map = cert.vertex_map.as_ref()?;
            let tr = |v: &TokenVertex| -> Option<TokenVertex> {
                let members = v
                    .members()
                    .iter()
                    .map(|&c| map.get(c).copied())
                    .collect::<Option<Vec<_>>>()?;
                Some(TokenVertex::from_unsorted(members))
            };
            Some((tr(&x)?, tr(&y)?))
        }
    }
}

/// Cut witness that a token graph has no Hamiltonian cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonHamWitness {
    pub cut: Vec<TokenVertex>,
    pub cut_size: usize,
    #[serde(rename = "components")]
    pub component_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonHamProof {
    Witness(NonHamWitness),
    /// Exhaustive search found no cycle.
    Exhaustive {
        token_vertices: usize,
        expansions: u64,
    },
    /// Fewer than three token vertices, so no cycle can exist.
    TooSmall {
        token_vertices: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanFeasibility {
    Hamiltonian(CycleCertificate),
    NotHamiltonian(NonHamProof),
    Unknown(String),
}

impl FanFeasibility {
    pub fn is_hamiltonian(&self) -> bool {
        matches!(self, FanFeasibility::Hamiltonian(_))
    }
}

type Seq = Vec<TokenVertex>;

fn tv<I: IntoIterator<Item = usize>>(members: I) -> TokenVertex {
    TokenVertex::from_unsorted(members)
}

/// Hub index arithmetic for the `m = 2n` construction: `i + j` reduced into
/// `1..=modulus`, so `modulus ≡ modulus`, not 0.
pub fn hub_add(i: usize, j: usize, modulus: usize) -> usize {
    (i + j - 1) % modulus + 1
}

/// Cuts a cycle at the edge between `from` and `to` and returns the
/// Hamiltonian path that starts at `from` and ends at `to`.
fn open_at(cycle: &[TokenVertex], from: &TokenVertex, to: &TokenVertex) -> Seq {
    let len = cycle.len();
    let p = cycle
        .iter()
        .position(|v| v == from)
        .expect("open_at: start vertex missing");
    if cycle[(p + len - 1) % len] == *to {
        (0..len).map(|i| cycle[(p + i) % len].clone()).collect()
    } else {
        assert_eq!(
            cycle[(p + 1) % len],
            *to,
            "open_at: endpoints not consecutive"
        );
        (0..len)
            .map(|i| cycle[(p + len - i) % len].clone())
            .collect()
    }
}

fn locate_marker(cycle: &[TokenVertex], n: usize, k: usize) -> Option<[usize; 2]> {
    let (x, y) = marker_pair(n, k);
    let p = cycle.iter().position(|v| *v == x)?;
    let q = cycle.iter().position(|v| *v == y)?;
    let len = cycle.len();
    ((p + 1) % len == q || (q + 1) % len == p).then_some([p, q])
}

/// Wraps a canonical sequence as a certificate and verifies it against
/// `F_{m,n}`; construction bugs surface here rather than in callers.
fn certify(
    m: usize,
    n: usize,
    k: usize,
    cycle: Seq,
    with_marker: bool,
) -> Result<CycleCertificate, FanError> {
    let marker = if with_marker {
        Some(locate_marker(&cycle, n, k).ok_or_else(|| {
            FanError::Construction(Rejection {
                reason: crate::verify::Reason::MarkerMismatch,
                index: None,
                detail: "marker pair not consecutive in constructed cycle".into(),
            })
        })?)
    } else {
        None
    };
    let cert = CycleCertificate {
        m,
        n,
        k,
        labeling: Labeling::FanCanonical,
        vertex_map: None,
        cycle,
        marker,
    };
    let fan = Graph::build(GraphFamily::Fan(m, n))?;
    match verify_cycle(&fan, k, &cert) {
        Verdict::Accept => Ok(cert),
        Verdict::Reject(r) => Err(FanError::Construction(r)),
    }
}

/// Checks every consecutive pair of a partial sequence. Used after each
/// splice in the `1 < m < 2n` construction.
fn check_path(g: &Graph, seq: &[TokenVertex], what: &str) -> Result<(), FanError> {
    for (i, w) in seq.windows(2).enumerate() {
        if !token_adjacent(g, &w[0], &w[1])? {
            return Err(FanError::Construction(Rejection {
                reason: crate::verify::Reason::NonEdgeAt,
                index: Some(i),
                detail: format!("{what}: {} and {} are not adjacent", w[0], w[1]),
            }));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// k = 2
// ---------------------------------------------------------------------------

/// The `m = 1` double-vertex cycle in *index form*: index 0 is the hub and
/// index `i` is `v_i`. Starts at `{v_1, v_n}`.
fn m1_index_cycle(n: usize) -> Seq {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 1..=n {
        // T_i = {v_i,w_1}{v_i,v_{i+1}}…{v_i,v_n}; odd-indexed paths reversed
        let t: Seq = std::iter::once(tv([i, 0]))
            .chain((i + 1..=n).map(|j| tv([i, j])))
            .collect();
        if i % 2 == 1 {
            out.extend(t.into_iter().rev());
        } else {
            out.extend(t);
        }
    }
    out
}

/// Maps index form (0 = hub, i = v_i) to canonical ids of a fan with path length `n`.
fn index_to_canonical(seq: Seq, n: usize) -> Seq {
    seq.into_iter()
        .map(|v| tv(v.members().iter().map(|&x| if x == 0 { n } else { x - 1 })))
        .collect()
}

fn m1_canonical(n: usize) -> Seq {
    index_to_canonical(m1_index_cycle(n), n)
}

/// Hamiltonian cycle of `F_{1,n}^{2}` (`n ≥ 2`) with the marker edge
/// `{w_1,v_1}`–`{v_1,v_2}`.
pub fn double_cycle_m1(n: usize) -> Result<CycleCertificate, FanError> {
    if n < 2 {
        return Err(invalid(format!("double_cycle_m1 needs n >= 2, got {n}")));
    }
    certify(1, n, 2, m1_canonical(n), true)
}

/// Which path `P_t` of the `m = 2n` construction contains the hub pair
/// `{w_i, w_j}` (1-based, `i ≠ j`).
pub fn hub_pair_owner(i: usize, j: usize, n: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    debug_assert!(i >= 1 && j <= 2 * n && i < j);
    if i == 1 {
        j
    } else if i <= n && j < i + n {
        i
    } else if i <= n {
        j
    } else {
        i
    }
}

/// The paths `P_1, …, P_{2n}` of the `m = 2n` construction, canonical ids.
fn max_case_paths(n: usize) -> Vec<Seq> {
    let m = 2 * n;
    let v = |i: usize| i - 1;
    let w = |j: usize| n + j - 1;
    let mut paths = Vec::with_capacity(m);
    // P_1: the m = 1 cycle traversed from {v_n,w_1} to {v_1,v_n}
    let mut p1 = m1_canonical(n);
    p1.reverse();
    paths.push(p1);
    for i in 2..=m {
        let second = if i <= n { 1 } else { hub_add(i, n, m) };
        let mut p = vec![tv([w(i), v(n)]), tv([w(i), w(second)])];
        for j in (1..n).rev() {
            p.push(tv([w(i), v(j)]));
            p.push(tv([w(i), w(hub_add(i, j, m))]));
        }
        paths.push(p);
    }
    paths
}

/// Hamiltonian cycle of `F_{2n,n}^{2}`.
pub fn double_cycle_max(n: usize) -> Result<CycleCertificate, FanError> {
    if n < 2 {
        return Err(invalid(format!("double_cycle_max needs n >= 2, got {n}")));
    }
    let cycle = max_case_paths(n).concat();
    certify(2 * n, n, 2, cycle, true)
}

/// The modified paths `P'_1, …, P'_m` for `1 < m < 2n`.
fn mid_case_paths(m: usize, n: usize) -> Result<Vec<Seq>, FanError> {
    let w = |j: usize| n + j - 1;
    let fan = Graph::build(GraphFamily::Fan(m, n))?;
    let mut paths = max_case_paths(n);
    paths.truncate(m);
    let is_dropped = |v: &TokenVertex| v.members().iter().any(|&x| x >= n + m);
    for (idx, path) in paths.iter_mut().enumerate().skip(1) {
        let i = idx + 1;
        if i == m {
            let a = path
                .iter()
                .position(|v| *v == tv([w(m), w(m + 1)]))
                .expect("P_m holds {w_m,w_m+1}");
            let b = path
                .iter()
                .position(|v| *v == tv([w(m), w(1)]))
                .expect("P_m holds {w_m,w_1}");
            path.swap(a, b);
        }
        path.retain(|v| !is_dropped(v));
        check_path(&fan, path, &format!("P'_{i}"))?;
    }
    Ok(paths)
}

/// Hamiltonian cycle of `F_{m,n}^{2}` for `1 < m < 2n`.
pub fn double_cycle_mid(m: usize, n: usize) -> Result<CycleCertificate, FanError> {
    if n < 2 || m <= 1 || m >= 2 * n {
        return Err(invalid(format!(
            "double_cycle_mid needs n >= 2 and 1 < m < 2n, got m={m}, n={n}"
        )));
    }
    let fan = Graph::build(GraphFamily::Fan(m, n))?;
    let mut cycle = Seq::new();
    for (i, p) in mid_case_paths(m, n)?.into_iter().enumerate() {
        if let Some(last) = cycle.last() {
            if !token_adjacent(&fan, last, &p[0])? {
                return Err(FanError::Construction(Rejection {
                    reason: crate::verify::Reason::NonEdgeAt,
                    index: Some(cycle.len() - 1),
                    detail: format!("splice before P'_{}", i + 1),
                }));
            }
        }
        cycle.extend(p);
    }
    certify(m, n, 2, cycle, true)
}

/// The cut of all hub/path pairs `{w_i, v_j}` in `F_{m,n}^{2}`.
fn hub_path_cut(m: usize, n: usize) -> Vec<TokenVertex> {
    (0..n)
        .flat_map(|v| (n..n + m).map(move |w| tv([v, w])))
        .collect()
}

fn checked_witness(m: usize, n: usize) -> Result<(NonHamWitness, bool), FanError> {
    let fan = Graph::build(GraphFamily::Fan(m, n))?;
    let cut = hub_path_cut(m, n);
    let check = check_witness(&fan, 2, &cut)?;
    Ok((
        NonHamWitness {
            cut,
            cut_size: check.cut_size,
            component_count: check.component_count,
        },
        check.proves,
    ))
}

/// Non-Hamiltonicity witness for `F_{m,n}^{2}` with `m > 2n`, `n ≥ 2`.
/// The component count is computed, not assumed.
pub fn witness_over(m: usize, n: usize) -> Result<NonHamWitness, FanError> {
    if n < 2 || m <= 2 * n {
        return Err(invalid(format!(
            "witness_over needs n >= 2 and m > 2n, got m={m}, n={n}"
        )));
    }
    let (witness, proves) = checked_witness(m, n)?;
    if !proves {
        return Err(FanError::WitnessFails {
            cut_size: witness.cut_size,
            components: witness.component_count,
        });
    }
    Ok(witness)
}

/// The 6-cycle in `K_{1,3}^{2} = F_{3,1}^{2}` (center `v_1`). No marker:
/// the pair needs `v_2`.
pub fn star_double_cycle() -> Result<CycleCertificate, FanError> {
    let (v1, w1, w2, w3) = (0, 1, 2, 3);
    let cycle = vec![
        tv([v1, w1]),
        tv([w1, w2]),
        tv([v1, w2]),
        tv([w2, w3]),
        tv([v1, w3]),
        tv([w1, w3]),
    ];
    certify(3, 1, 2, cycle, false)
}

/// Decides Hamiltonicity of `F_{m,n}^{2}` and returns a certificate or proof.
pub fn double_cycle(m: usize, n: usize) -> Result<FanFeasibility, FanError> {
    if m == 0 || n == 0 {
        return Err(invalid(format!(
            "fan sizes must be positive, got m={m}, n={n}"
        )));
    }
    if n == 1 {
        return Ok(match m {
            3 => FanFeasibility::Hamiltonian(star_double_cycle()?),
            // F_{1,1} = K_2 has a single 2-subset
            1 => FanFeasibility::NotHamiltonian(NonHamProof::TooSmall { token_vertices: 1 }),
            2 => {
                let star = Graph::build(GraphFamily::Fan(m, 1))?;
                let tg = TokenGraph::new(&star, 2)?;
                let report = brute_ham_cycle(tg.graph(), DEFAULT_BUDGET);
                match report.outcome {
                    SearchOutcome::None => {
                        FanFeasibility::NotHamiltonian(NonHamProof::Exhaustive {
                            token_vertices: tg.vertex_count(),
                            expansions: report.expansions,
                        })
                    }
                    other => {
                        return Err(invalid(format!(
                            "unexpected search outcome on K_1,{m}: {other:?}"
                        )));
                    }
                }
            }
            _ => {
                // For m >= 4 the hub/path cut leaves C(m,2) isolated hub pairs.
                let (witness, proves) = checked_witness(m, 1)?;
                if !proves {
                    return Err(FanError::WitnessFails {
                        cut_size: witness.cut_size,
                        components: witness.component_count,
                    });
                }
                FanFeasibility::NotHamiltonian(NonHamProof::Witness(witness))
            }
        });
    }
    Ok(if m == 1 {
        FanFeasibility::Hamiltonian(double_cycle_m1(n)?)
    } else if m < 2 * n {
        FanFeasibility::Hamiltonian(double_cycle_mid(m, n)?)
    } else if m == 2 * n {
        FanFeasibility::Hamiltonian(double_cycle_max(n)?)
    } else {
        FanFeasibility::NotHamiltonian(NonHamProof::Witness(witness_over(m, n)?))
    })
}

// ---------------------------------------------------------------------------
// k > 2
// ---------------------------------------------------------------------------

/// Cycle of `F_{1,n}^{k}` in index form (0 = hub) containing the edge
/// `{0..k-1}`–`{1..k}`. Requires `2 <= k <= n - 1`.
fn lemma_index_cycle(n: usize, k: usize) -> Seq {
    if k == 2 {
        return m1_index_cycle(n);
    }
    // P_i: Hamiltonian path of the block of subsets whose largest index is i,
    // from X_i = {0..k-2, i} to Y_i = {1..k-1, i}.
    let block_path = |i: usize| -> Seq {
        let with_top: Seq = lemma_index_cycle(i - 1, k - 1)
            .into_iter()
            .map(|v| tv(v.members().iter().copied().chain([i])))
            .collect();
        let x = tv((0..k - 1).chain([i]));
        let y = tv((1..k).chain([i]));
        open_at(&with_top, &x, &y)
    };

    let mut cycle = Seq::new();
    let first_block = if (n - k) % 2 == 1 {
        // Z_j = {0..k} \ {j};  P_k = Z_k Z_0 Z_1 … Z_{k-1}
        let z = |j: usize| tv((0..=k).filter(move |&x| x != j));
        cycle.push(z(k));
        cycle.extend((0..k).map(z));
        k + 1
    } else {
        // A_{i,j} = {0..k+1} \ {i, j}
        let a = |i: usize, j: usize| tv((0..=k + 1).filter(move |&x| x != i && x != j));
        cycle.push(a(k, k + 1));
        cycle.push(a(0, k + 1));
        // R' = R_k R_1 R_2 … R_{k-1}
        cycle.push(a(k, 0));
        cycle.push(a(1, k));
        cycle.push(a(1, k + 1));
        cycle.push(a(1, 0));
        cycle.extend((2..k).rev().map(|j| a(1, j)));
        for t in 2..k {
            cycle.push(a(t, 0));
            cycle.extend((t + 1..=k + 1).rev().map(|j| a(t, j)));
        }
        k + 2
    };
    for i in first_block..=n {
        let mut p = block_path(i);
        if (i - first_block) % 2 == 1 {
            p.reverse();
        }
        cycle.extend(p);
    }
    cycle
}

/// Hamiltonian cycle of `F_{1,n}^{k}` (`n ≥ 3`, `2 ≤ k ≤ n − 1`) with the
/// marker edge.
pub fn lemma_cycle_m1(n: usize, k: usize) -> Result<CycleCertificate, FanError> {
    if n < 3 || k < 2 || k > n - 1 {
        return Err(invalid(format!(
            "lemma_cycle_m1 needs n >= 3 and 2 <= k <= n-1, got n={n}, k={k}"
        )));
    }
    certify(
        1,
        n,
        k,
        index_to_canonical(lemma_index_cycle(n, k), n),
        true,
    )
}

/// `F_{1,n}^{n}` through complementation: the cycle `w_1 v_1 … v_n` of the
/// fan itself, each vertex replaced by its complement.
fn complement_top_cycle(n: usize) -> Seq {
    std::iter::once(n)
        .chain(0..n)
        .map(|x| complement_vertex(&tv([x]), n + 1))
        .collect()
}

/// Canonical cycle of `F_{m,n}^{k}` containing the marker edge.
fn fan_sequence(m: usize, n: usize, k: usize) -> Result<Seq, FanError> {
    if k == 2 {
        return match double_cycle(m, n)? {
            FanFeasibility::Hamiltonian(c) => Ok(c.cycle),
            _ => Err(invalid(format!("F_{{{m},{n}}}^{{2}} is not Hamiltonian"))),
        };
    }
    if m == 1 {
        return Ok(if k < n {
            index_to_canonical(lemma_index_cycle(n, k), n)
        } else {
            complement_top_cycle(n)
        });
    }
    // Drop w_1 (id n): hubs w_2..w_m become the hubs of F_{m-1,n}.
    let lift = |c: usize| if c < n { c } else { c + 1 };
    let w1 = n;
    let with_w1: Seq = fan_sequence(m - 1, n, k - 1)?
        .into_iter()
        .map(|v| tv(v.members().iter().map(|&c| lift(c)).chain([w1])))
        .collect();
    let without_w1: Seq = fan_sequence(m - 1, n, k)?
        .into_iter()
        .map(|v| tv(v.members().iter().map(|&c| lift(c))))
        .collect();
    let w2 = n + 1;
    let x1 = tv([w1, w2].into_iter().chain(0..k - 2));
    let y1 = tv([w1].into_iter().chain(0..k - 1));
    let x2 = tv([w2].into_iter().chain(0..k - 1));
    let y2 = tv(0..k);
    let mut cycle = open_at(&with_w1, &x1, &y1);
    cycle.extend(open_at(&without_w1, &y2, &x2));
    Ok(cycle)
}

fn check_fan_params(m: usize, n: usize, k: usize) -> Result<(), FanError> {
    if k < 2 || n < k || m < 1 || m > 2 * n {
        return Err(invalid(format!(
            "fan_cycle needs k >= 2, n >= k and 1 <= m <= 2n, got m={m}, n={n}, k={k}"
        )));
    }
    Ok(())
}

/// Hamiltonian cycle of `F_{m,n}^{k}` for `k ≥ 2`, `n ≥ k`, `1 ≤ m ≤ 2n`,
/// with the marker edge.
pub fn fan_cycle(m: usize, n: usize, k: usize) -> Result<CycleCertificate, FanError> {
    check_fan_params(m, n, k)?;
    certify(m, n, k, fan_sequence(m, n, k)?, true)
}

/// Dispatcher over all `k`: covered inputs get a certificate, `k = 2`
/// gets the full characterization, everything else is `Unknown`.
pub fn fan_feasibility(m: usize, n: usize, k: usize) -> Result<FanFeasibility, FanError> {
    if m == 0 || n == 0 || k == 0 || k >= m + n {
        return Err(invalid(format!(
            "need m, n >= 1 and 1 <= k < m + n, got m={m}, n={n}, k={k}"
        )));
    }
    if k == 2 {
        return double_cycle(m, n);
    }
    if k > 2 && n >= k && m <= 2 * n {
        return Ok(FanFeasibility::Hamiltonian(fan_cycle(m, n, k)?));
    }
    Ok(FanFeasibility::Unknown(format!(
        "no construction or witness for F_{{{m},{n}}} with k = {k}"
    )))
}

fn validate_ham_path(g: &Graph, path: &[VertexId]) -> Result<(), FanError> {
    let order = g.order();
    if path.len() != order {
        return Err(FanError::InvalidHamPath(format!(
            "length {} but the graph has {order} vertices",
            path.len()
        )));
    }
    let mut seen = vec![false; order];
    for (i, &v) in path.iter().enumerate() {
        if v >= order {
            return Err(FanError::InvalidHamPath(format!(
                "vertex {v} at position {i} out of range"
            )));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(FanError::InvalidHamPath(format!(
                "vertex {v} repeated at position {i}"
            )));
        }
    }
    if let Some(i) = path.windows(2).position(|w| !g.has_edge(w[0], w[1])) {
        return Err(FanError::InvalidHamPath(format!(
            "({}, {}) at position {i} is not an edge",
            path[i],
            path[i + 1]
        )));
    }
    Ok(())
}

/// Hamiltonian cycle of `(g1 + g2)^{k}` given a Hamiltonian path of `g2`.
///
/// The fan `F_{m,n}` with hubs = `g1` and path = `hpath` spans the join, so
/// the fan certificate is relabeled onto the join's ids (`g1` first, then
/// `g2` shifted by `|g1|`, as produced by [`join`]).
pub fn join_cycle(
    g1: &Graph,
    g2: &Graph,
    hpath: &[VertexId],
    k: usize,
) -> Result<CycleCertificate, FanError> {
    validate_ham_path(g2, hpath)?;
    let (m, n) = (g1.order(), g2.order());
    check_fan_params(m, n, k)?;
    let fan = fan_sequence(m, n, k)?;
    // canonical v_i (id i-1) -> m + hpath[i-1]; w_j (id n+j-1) -> j-1
    let vertex_map: Vec<VertexId> = hpath.iter().map(|&p| m + p).chain(0..m).collect();
    let cycle: Seq = fan
        .iter()
        .map(|v| tv(v.members().iter().map(|&c| vertex_map[c])))
        .collect();
    let mut cert = CycleCertificate {
        m,
        n,
        k,
        labeling: Labeling::Mapped,
        vertex_map: Some(vertex_map),
        cycle,
        marker: None,
    };
    let (x, y) = expected_marker(&cert).expect("map covers all ids");
    let p = cert.cycle.iter().position(|v| *v == x);
    let q = cert.cycle.iter().position(|v| *v == y);
    cert.marker = p.zip(q).map(|(p, q)| [p, q]);
    let joined = join(g1, g2);
    match verify_cycle(&joined, k, &cert) {
        Verdict::Accept => Ok(cert),
        Verdict::Reject(r) => Err(FanError::Construction(r)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexNames;
    use crate::token::binomial;

    fn names(cert: &CycleCertificate) -> Vec<String> {
        cert.cycle
            .iter()
            .map(|v| v.display_with(VertexNames::Fan { n: cert.n }))
            .collect()
    }

    #[test]
    fn hub_add_wraps_to_modulus() {
        assert_eq!(hub_add(3, 1, 4), 4);
        assert_eq!(hub_add(4, 2, 4), 2);
        assert_eq!(hub_add(4, 4, 4), 4);
        assert_eq!(hub_add(1, 1, 4), 2);
    }

    #[test]
    fn m1_small_cases() {
        let c2 = double_cycle_m1(2).unwrap();
        assert_eq!(names(&c2), ["{v1,v2}", "{v1,w1}", "{v2,w1}"]);
        let c3 = double_cycle_m1(3).unwrap();
        assert_eq!(
            names(&c3),
            ["{v1,v3}", "{v1,v2}", "{v1,w1}", "{v2,w1}", "{v2,v3}", "{v3,w1}"]
        );
        assert_eq!(c3.marker, Some([2, 1]));
        assert!(double_cycle_m1(1).is_err());
    }

    #[test]
    fn m1_marker_for_range() {
        for n in 2..=8 {
            let c = double_cycle_m1(n).unwrap();
            assert_eq!(c.len() as u64, binomial(n + 1, 2).unwrap());
            assert!(c.marker.is_some());
        }
    }

    #[test]
    fn max_case_structure() {
        let c = double_cycle_max(2).unwrap();
        assert_eq!(c.len(), 15);
        for n in 2..=6 {
            let m = 2 * n;
            let paths = max_case_paths(n);
            let w = |j: usize| n + j - 1;
            // final vertex of P_{2n} is {w_1, w_2n}, next to {v_n, w_1}
            assert_eq!(paths[m - 1].last().unwrap(), &tv([w(1), w(m)]));
            assert_eq!(paths[0][0], tv([n - 1, w(1)]));
            for i in 1..=m {
                for j in i + 1..=m {
                    let pair = tv([w(i), w(j)]);
                    let holders: Vec<_> =
                        (1..=m).filter(|&t| paths[t - 1].contains(&pair)).collect();
                    assert_eq!(
                        holders,
                        vec![hub_pair_owner(i, j, n)],
                        "pair ({i},{j}), n={n}"
                    );
                }
            }
            double_cycle_max(n).unwrap();
        }
    }

    #[test]
    fn mid_case_endpoints_preserved() {
        for n in 2..=6 {
            let full = max_case_paths(n);
            for m in 2..2 * n {
                let mid = mid_case_paths(m, n).unwrap();
                let w = |j: usize| n + j - 1;
                for i in 0..m {
                    assert_eq!(mid[i][0], full[i][0]);
                    if i + 1 < m {
                        assert_eq!(mid[i].last(), full[i].last());
                    } else {
                        assert_eq!(mid[i].last().unwrap(), &tv([w(m), w(1)]));
                    }
                }
                let c = double_cycle_mid(m, n).unwrap();
                assert_eq!(c.len() as u64, binomial(n + m, 2).unwrap());
            }
        }
        assert_eq!(double_cycle_mid(2, 2).unwrap().len(), 6);
        assert_eq!(double_cycle_mid(3, 2).unwrap().len(), 10);
        assert!(double_cycle_mid(4, 2).is_err());
    }

    #[test]
    fn witness_counts() {
        let w = witness_over(5, 2).unwrap();
        assert_eq!((w.cut_size, w.component_count), (10, 11));
        let w = witness_over(7, 3).unwrap();
        assert_eq!((w.cut_size, w.component_count), (21, 22));
        assert!(witness_over(3, 1).is_err());
        assert!(witness_over(4, 2).is_err());
    }

    #[test]
    fn star_cycle() {
        let c = star_double_cycle().unwrap();
        assert_eq!(c.cycle.len(), 6);
        assert_eq!(
            names(&c),
            ["{v1,w1}", "{w1,w2}", "{v1,w2}", "{w2,w3}", "{v1,w3}", "{w1,w3}"]
        );
        assert_eq!(c.marker, None);
    }

    #[test]
    fn dispatcher_examples() {
        assert!(double_cycle(1, 2).unwrap().is_hamiltonian());
        assert!(double_cycle(3, 1).unwrap().is_hamiltonian());
        match double_cycle(5, 2).unwrap() {
            FanFeasibility::NotHamiltonian(NonHamProof::Witness(w)) => {
                assert_eq!(w.component_count, 11)
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            double_cycle(1, 1).unwrap(),
            FanFeasibility::NotHamiltonian(NonHamProof::TooSmall { token_vertices: 1 })
        ));
        assert!(matches!(
            double_cycle(2, 1).unwrap(),
            FanFeasibility::NotHamiltonian(NonHamProof::Exhaustive {
                token_vertices: 3,
                ..
            })
        ));
        assert!(matches!(
            double_cycle(4, 1).unwrap(),
            FanFeasibility::NotHamiltonian(NonHamProof::Witness(_))
        ));
    }

    #[test]
    fn lemma_both_parities() {
        let odd = lemma_cycle_m1(4, 3).unwrap();
        assert_eq!(odd.len(), 10);
        let even = lemma_cycle_m1(5, 3).unwrap();
        assert_eq!(even.len(), 20);
        assert_eq!(
            lemma_cycle_m1(3, 2).unwrap().cycle,
            double_cycle_m1(3).unwrap().cycle
        );
        assert!(lemma_cycle_m1(4, 4).is_err());
    }

    #[test]
    fn lemma_blocks_partition() {
        // Blocks by largest index cover every subset exactly once.
        for n in 3..=7 {
            for k in 2..n {
                let seq = lemma_index_cycle(n, k);
                let mut sizes = vec![0u64; n + 1];
                for v in &seq {
                    sizes[*v.members().last().unwrap()] += 1;
                }
                for (i, &s) in sizes.iter().enumerate() {
                    assert_eq!(s, binomial(i, k - 1).unwrap());
                }
                assert_eq!(seq.len() as u64, binomial(n + 1, k).unwrap());
            }
        }
    }

    #[test]
    fn fan_cycle_examples() {
        assert_eq!(fan_cycle(2, 3, 3).unwrap().len(), 10);
        assert_eq!(fan_cycle(4, 4, 3).unwrap().len(), 56);
        assert_eq!(fan_cycle(1, 5, 2).unwrap(), double_cycle_m1(5).unwrap());
        // F_{1,3}^{3} only reachable through complementation
        assert_eq!(fan_cycle(1, 3, 3).unwrap().len(), 4);
        assert!(fan_cycle(7, 3, 3).is_err());
        assert!(fan_cycle(1, 2, 3).is_err());
    }

    #[test]
    fn fan_cycle_halves() {
        // S_1 (containing w_1) comes first and has C(n+m-1, k-1) entries.
        let (m, n, k) = (3, 4, 3);
        let c = fan_cycle(m, n, k).unwrap();
        let s1 = binomial(n + m - 1, k - 1).unwrap() as usize;
        assert!(c.cycle[..s1].iter().all(|v| v.contains(n)));
        assert!(c.cycle[s1..].iter().all(|v| !v.contains(n)));
        assert_eq!(c.marker, Some([s1 - 1, s1]));
    }

    #[test]
    fn normalization_puts_marker_first() {
        let c = double_cycle_m1(4).unwrap();
        let norm = c.normalized();
        let (x, y) = marker_pair(4, 2);
        assert_eq!(norm.cycle[0], x);
        assert_eq!(norm.cycle[1], y);
        let fan = Graph::build(GraphFamily::Fan(1, 4)).unwrap();
        assert!(verify_cycle(&fan, 2, &norm).is_accept());
    }

    #[test]
    fn join_examples() {
        let e1 = Graph::build(GraphFamily::Empty(1)).unwrap();
        let p3 = Graph::build(GraphFamily::Path(3)).unwrap();
        let c = join_cycle(&e1, &p3, &[0, 1, 2], 2).unwrap();
        // canonical v_i -> 1 + (i-1), w_1 -> 0
        let m1 = double_cycle_m1(3).unwrap();
        let remapped: Vec<_> = m1
            .cycle
            .iter()
            .map(|v| tv(v.members().iter().map(|&x| if x == 3 { 0 } else { x + 1 })))
            .collect();
        assert_eq!(c.cycle, remapped);

        let k3 = Graph::build(GraphFamily::Complete(3)).unwrap();
        let c4 = Graph::build(GraphFamily::Cycle(4)).unwrap();
        assert_eq!(join_cycle(&k3, &c4, &[0, 1, 2, 3], 2).unwrap().len(), 21);

        let e4 = Graph::build(GraphFamily::Empty(4)).unwrap();
        assert_eq!(join_cycle(&e4, &p3, &[0, 1, 2], 3).unwrap().len(), 35);
    }

    #[test]
    fn join_rejects_bad_path() {
        let e1 = Graph::build(GraphFamily::Empty(1)).unwrap();
        let p3 = Graph::build(GraphFamily::Path(3)).unwrap();
        let err = join_cycle(&e1, &p3, &[0, 2, 1], 2).unwrap_err();
        assert!(
            matches!(err, FanError::InvalidHamPath(ref s) if s.contains("(0, 2)")),
            "{err}"
        );
        assert!(join_cycle(&e1, &p3, &[0, 1], 2).is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let c = double_cycle_m1(2).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            r#"{"m":1,"n":2,"k":2,"labeling":"fan-canonical","cycle":[[0,1],[0,2],[1,2]],"marker":[1,0]}"#
        );
        let back: CycleCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
