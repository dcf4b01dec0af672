//! `tokenham`: construct, verify and search Hamiltonian cycles in token
//! graphs of fans and joins, and emit Gray codes for combinations.
//!
//! Exit codes: 0 success (certificate / found / accepted), 1 certificate
//! rejected, 2 proven non-Hamiltonian or no code exists, 3 unknown or search
//! budget exhausted, 64 usage or input error, 65 token graph over the
//! materialization cap.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tokenham::graph::{parse_edge_list, to_dot, to_edge_list};
use tokenham::graycode::{search_code, CodeSearch};
use tokenham::token::{TokenError, DEFAULT_MAX_VERTICES};
use tokenham::verify::DEFAULT_BUDGET;
use tokenham::{
    brute_ham_cycle, brute_ham_path, fan_feasibility, fan_gray_code, verify_cycle,
    ClosenessRelation, CycleCertificate, FanError, FanFeasibility, Graph, GraphFamily, NonHamProof,
    SearchOutcome, TokenGraph, Verdict, VertexNames,
};

const EXIT_OK: u8 = 0;
const EXIT_REJECT: u8 = 1;
const EXIT_NOT_HAMILTONIAN: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_CAP: u8 = 65;

/// Environment variable overriding the token-graph materialization cap.
const CAP_ENV: &str = "TOKENHAM_MAX_VERTICES";

#[derive(Parser)]
#[command(
    name = "tokenham",
    version,
    about = "Hamiltonian cycles in token graphs of fans and joins"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Out {
    Dot,
    Edges,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Family {
    Path,
    Empty,
    Complete,
    Cycle,
    Bipartite,
    Star,
    Path2,
    Fan,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Relation {
    Transposition,
    Adjacent,
    Apart2,
    Fan,
}

#[derive(Subcommand)]
enum Command {
    /// Hamiltonian cycle certificate (or witness) for the k-token graph of F_{m,n}.
    FanCycle {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Rotate the cycle so the marker pair is at positions 0 and 1.
        #[arg(long)]
        normalize: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Emit the k-token graph of a standard graph.
    TokenGraph {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated family parameters (fan: m,n; bipartite: a,b).
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        params: Vec<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "edges")]
        out: Out,
        /// Materialization cap (defaults to $TOKENHAM_MAX_VERTICES or 2000000).
        #[arg(long)]
        max_vertices: Option<u64>,
    },
    /// Check a certificate against a base graph given as an edge list.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Gray code for k-subsets of an n-set under a closeness relation.
    Graycode {
        #[arg(long, value_enum)]
        relation: Relation,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Number of hubs for the fan relation (words then have length n + m).
        #[arg(long)]
        m: Option<usize>,
        /// Search for a non-cyclic code (Hamiltonian path).
        #[arg(long)]
        path: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exhaustive Hamiltonian cycle (or path) search on an edge-list graph.
    Brute {
        /// Edge-list file, or `-` for stdin.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        path: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

/// Error carrying the exit code it should map to.
#[derive(Debug)]
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: anyhow::Error) -> Failure {
    Failure {
        code: EXIT_USAGE,
        error,
    }
}

impl From<TokenError> for Failure {
    fn from(e: TokenError) -> Self {
        let code = if matches!(e, TokenError::CapExceeded { .. }) {
            EXIT_CAP
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            error: e.into(),
        }
    }
}

impl From<FanError> for Failure {
    fn from(e: FanError) -> Self {
        match e {
            FanError::Token(t) => t.into(),
            other => usage(other.into()),
        }
    }
}

struct Output {
    stdout: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::FanCycle {
            m,
            n,
            k,
            normalize,
            format,
        } => fan_cycle_cmd(m, n, k, normalize, format),
        Command::TokenGraph {
            family,
            params,
            k,
            out,
            max_vertices,
        } => token_graph_cmd(family, &params, k, out, max_vertices),
        Command::Verify { graph, k, cert } => verify_cmd(&graph, k, &cert),
        Command::Graycode {
            relation,
            n,
            k,
            m,
            path,
            budget,
            format,
        } => graycode_cmd(relation, n, k, m, path, budget, format),
        Command::Brute {
            graph,
            path,
            budget,
        } => brute_cmd(&graph, path, budget),
    }
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn cert_text(cert: &CycleCertificate) -> String {
    let names = cert.vertex_names();
    let mut out = String::new();
    for v in &cert.cycle {
        let _ = writeln!(out, "{}", v.display_with(names));
    }
    if let Some([p, q]) = cert.marker {
        let _ = writeln!(out, "marker: {p} {q}");
    }
    out
}

fn fan_cycle_cmd(
    m: usize,
    n: usize,
    k: usize,
    normalize: bool,
    format: Format,
) -> Result<Output, Failure> {
    let names = VertexNames::Fan { n };
    let verdict = fan_feasibility(m, n, k)?;
    let (stdout, code) = match verdict {
        FanFeasibility::Hamiltonian(cert) => {
            let cert = if normalize { cert.normalized() } else { cert };
            let text = match format {
                Format::Json => to_json(&cert),
                Format::Text => cert_text(&cert),
            };
            (text, EXIT_OK)
        }
        FanFeasibility::NotHamiltonian(proof) => {
            let text = match (&proof, format) {
                (NonHamProof::Witness(w), Format::Json) => to_json(w),
                (NonHamProof::Witness(w), Format::Text) => {
                    let mut s = String::from("not hamiltonian\n");
                    for v in &w.cut {
                        let _ = writeln!(s, "cut: {}", v.display_with(names));
                    }
                    let _ = writeln!(
                        s,
                        "cut_size: {}\ncomponents: {}",
                        w.cut_size, w.component_count
                    );
                    s
                }
                (
                    NonHamProof::Exhaustive {
                        token_vertices,
                        expansions,
                    },
                    Format::Json,
                ) => to_json(&json!({
                    "verdict": "not_hamiltonian",
                    "proof": "exhaustive",
                    "token_vertices": token_vertices,
                    "expansions": expansions,
                })),
                (NonHamProof::TooSmall { token_vertices }, Format::Json) => to_json(&json!({
                    "verdict": "not_hamiltonian",
                    "proof": "too_small",
                    "token_vertices": token_vertices,
                })),
                (NonHamProof::Exhaustive { token_vertices, .. }, Format::Text) => {
                    format!(
                        "not hamiltonian\nexhaustive search over {token_vertices} token vertices\n"
                    )
                }
                (NonHamProof::TooSmall { token_vertices }, Format::Text) => {
                    format!("not hamiltonian\nonly {token_vertices} token vertices\n")
                }
            };
            (text, EXIT_NOT_HAMILTONIAN)
        }
        FanFeasibility::Unknown(reason) => {
            let text = match format {
                Format::Json => to_json(&json!({ "verdict": "unknown", "reason": reason })),
                Format::Text => format!("unknown: {reason}\n"),
            };
            (text, EXIT_UNKNOWN)
        }
    };
    Ok(Output { stdout, code })
}

fn materialization_cap(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CAP_ENV) {
        Ok(value) => value.trim().parse().map_err(|_| {
            usage(anyhow!(
                "{CAP_ENV} must be a non-negative integer, got `{value}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_VERTICES),
    }
}

fn family_from(family: Family, params: &[usize]) -> Result<(GraphFamily, VertexNames), Failure> {
    let one = |name: &str| match params {
        [a] => Ok(*a),
        _ => Err(usage(anyhow!("--family {name} takes one parameter"))),
    };
    let two = |name: &str| match params {
        [a, b] => Ok((*a, *b)),
        _ => Err(usage(anyhow!("--family {name} takes two parameters"))),
    };
    Ok(match family {
        Family::Path => (GraphFamily::Path(one("path")?), VertexNames::Plain),
        Family::Empty => (GraphFamily::Empty(one("empty")?), VertexNames::Plain),
        Family::Complete => (GraphFamily::Complete(one("complete")?), VertexNames::Plain),
        Family::Cycle => (GraphFamily::Cycle(one("cycle")?), VertexNames::Plain),
        Family::Star => (GraphFamily::Star(one("star")?), VertexNames::Plain),
        Family::Path2 => (GraphFamily::SquareOfPath(one("path2")?), VertexNames::Plain),
        Family::Bipartite => {
            let (a, b) = two("bipartite")?;
            (GraphFamily::CompleteBipartite(a, b), VertexNames::Plain)
        }
        Family::Fan => {
            let (m, n) = two("fan")?;
            (GraphFamily::Fan(m, n), VertexNames::Fan { n })
        }
    })
}

fn token_graph_cmd(
    family: Family,
    params: &[usize],
    k: usize,
    out: Out,
    cap: Option<u64>,
) -> Result<Output, Failure> {
    let cap = materialization_cap(cap)?;
    let (family, names) = family_from(family, params)?;
    let base = Graph::build(family).map_err(|e| usage(e.into()))?;
    let tg = TokenGraph::with_cap(&base, k, cap)?;
    let stdout = match out {
        Out::Edges => to_edge_list(tg.graph()),
        Out::Dot => {
            // nodes are token-graph ranks, labeled with their subsets
            let mut s = String::from("graph {\n");
            for r in 0..tg.vertex_count() {
                let _ = writeln!(
                    s,
                    "  \"{r}\" [label=\"{}\"];",
                    tg.vertex(r).display_with(names)
                );
            }
            let body = to_dot(tg.graph(), VertexNames::Plain);
            for line in body.lines().filter(|l| l.contains("--")) {
                s.push_str(line);
                s.push('\n');
            }
            s.push_str("}\n");
            s
        }
    };
    Ok(Output {
        stdout,
        code: EXIT_OK,
    })
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .context("reading stdin")
            .map_err(usage)?;
        return Ok(s);
    }
    std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(usage)
}

fn read_graph(path: &PathBuf) -> Result<Graph, Failure> {
    let text = read_input(path)?;
    parse_edge_list(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(usage)
}

fn verify_cmd(graph: &PathBuf, k: usize, cert: &PathBuf) -> Result<Output, Failure> {
    let g = read_graph(graph)?;
    let text = read_input(cert)?;
    let cert: CycleCertificate = serde_json::from_str(&text)
        .with_context(|| format!("parsing certificate {}", cert.display()))
        .map_err(usage)?;
    let verdict = verify_cycle(&g, k, &cert);
    let code = match verdict {
        Verdict::Accept => EXIT_OK,
        Verdict::Reject(_) => EXIT_REJECT,
    };
    Ok(Output {
        stdout: to_json(&verdict),
        code,
    })
}

fn graycode_cmd(
    relation: Relation,
    n: usize,
    k: usize,
    m: Option<usize>,
    path: bool,
    budget: u64,
    format: Format,
) -> Result<Output, Failure> {
    let render = |listing: &tokenham::GrayCodeListing, name: &str| match format {
        Format::Text => listing.to_text(),
        Format::Json => to_json(&json!({
            "n": listing.n,
            "k": listing.k,
            "relation": name,
            "cyclic": listing.cyclic,
            "words": listing.words,
        })),
    };
    if relation == Relation::Fan {
        let m = m.ok_or_else(|| usage(anyhow!("--relation fan requires --m")))?;
        let listing = fan_gray_code(m, n, k)?;
        return Ok(Output {
            stdout: render(&listing, "fan"),
            code: EXIT_OK,
        });
    }
    let rel = match relation {
        Relation::Transposition => ClosenessRelation::Transposition { n },
        Relation::Adjacent => ClosenessRelation::AdjacentTransposition { n },
        Relation::Apart2 => ClosenessRelation::OneOrTwoApart { n },
        Relation::Fan => unreachable!(),
    };
    let found = search_code(&rel, k, !path, budget).map_err(|e| match e {
        tokenham::verify::VerifyError::Token(t) => Failure::from(t),
        other => usage(other.into()),
    })?;
    Ok(match found {
        CodeSearch::Found(listing) => Output {
            stdout: render(&listing, rel.name()),
            code: EXIT_OK,
        },
        CodeSearch::None => Output {
            stdout: "none\n".into(),
            code: EXIT_NOT_HAMILTONIAN,
        },
        CodeSearch::BudgetExhausted => Output {
            stdout: "budget\n".into(),
            code: EXIT_UNKNOWN,
        },
    })
}

fn brute_cmd(graph: &PathBuf, path: bool, budget: u64) -> Result<Output, Failure> {
    let g = read_graph(graph)?;
    let report = if path {
        brute_ham_path(&g, budget)
    } else {
        brute_ham_cycle(&g, budget)
    };
    Ok(match report.outcome {
        SearchOutcome::Found(vertices) => {
            let line: Vec<String> = vertices.iter().map(ToString::to_string).collect();
            Output {
                stdout: format!("{}\n", line.join(" ")),
                code: EXIT_OK,
            }
        }
        SearchOutcome::None => Output {
            stdout: "none\n".into(),
            code: EXIT_NOT_HAMILTONIAN,
        },
        SearchOutcome::BudgetExhausted => Output {
            stdout: "budget\n".into(),
            code: EXIT_UNKNOWN,
        },
    })
}
