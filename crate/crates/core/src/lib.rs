//! Token graphs of fan and join graphs.
//!
//! The k-token graph of `G` has the k-subsets of `V(G)` as vertices, two
//! subsets being adjacent when their symmetric difference is an edge of `G`.
//! This crate builds explicit Hamiltonian cycles of the token graphs of fans
//! `F_{m,n} = E_m + P_n` and of joins `G_1 + G_2` (where `G_2` has a
//! Hamiltonian path), emits non-Hamiltonicity witnesses where no cycle
//! exists, checks all of it with independent verifiers, and turns the cycles
//! into cyclic Gray codes for combinations.

pub mod fan;
pub mod graph;
pub mod graycode;
pub mod token;
pub mod verify;

pub use fan::{
    double_cycle, double_cycle_m1, double_cycle_max, double_cycle_mid, fan_cycle, fan_feasibility,
    join_cycle, lemma_cycle_m1, star_double_cycle, witness_over, CycleCertificate, FanError,
    FanFeasibility, Labeling, NonHamProof, NonHamWitness,
};
pub use graph::{
    connected_components, join, Graph, GraphError, GraphFamily, VertexId, VertexNames,
};
pub use graycode::{
    closeness_graph, code_from_cycle, fan_gray_code, verify_code, ClosenessRelation,
    GrayCodeListing,
};
pub use token::{
    complement_vertex, rank, token_adjacent, unrank, TokenError, TokenGraph, TokenVertex,
};
pub use verify::{
    brute_ham_cycle, brute_ham_path, check_complement_iso, check_witness, verify_cycle,
    SearchOutcome, Verdict,
};
