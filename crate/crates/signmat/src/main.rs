//! Command-line front end for the signing toolkit.
//!
//! Exit codes: 0 = property holds / construction succeeded, 1 = property
//! fails / nothing exists, 2 = usage or format error, 3 = enumeration guard
//! exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use signmat::cert::{two_matching_triples, vertex_list, CertificateJson, CountJson, SigningJson};
use signmat::exactla::{det_exact, format_rational, SymMatrix};
use signmat::gadgetry::{
    bounded_ev_transform, nsd_transform, partition_gadget, verify_psd_reduction,
    verify_singular_reduction,
};
use signmat::graph::Graph;
use signmat::io::{emit_coord_matrix, parse_coord_matrix, parse_edge_list, parse_partition};
use signmat::matching::{has_perfect_two_matching, nu_f};
use signmat::oracle;
use signmat::signlab::{
    all_signings_invertible_bipartite, apply_signing, count_invertible_signings,
    exists_invertible_signing, find_invertible_signing_bipartite,
    find_singular_signing_bipartite, pm_count_parity, solvability_index,
};
use signmat::{Error, Result};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "signmat", about = "Exact symmetric matrix signing toolkit")]
struct Cli {
    /// Emit machine-readable JSON certificates instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether any signing of the matrix is invertible.
    CheckInvertible { matrix: String },
    /// Construct an invertible signing for a bipartite-support matrix.
    FindSigning { matrix: String },
    /// Construct a singular signing of a bipartite graph's adjacency matrix.
    FindSingular { graph: String },
    /// Parity of the number of perfect matchings.
    PmParity { graph: String },
    /// Minimum edge additions until an invertible signing exists.
    SolvabilityIndex { matrix: String },
    /// Exhaustively count invertible edge signings.
    CountInvertible {
        graph: String,
        #[arg(long)]
        max_edges: Option<usize>,
    },
    /// Emit a Partition reduction matrix.
    Gadget {
        /// Comma-separated non-negative integers, e.g. "1,2,3".
        #[arg(long)]
        partition: String,
        #[arg(long, value_enum, default_value_t = Variant::Singular)]
        variant: Variant,
    },
    /// Exhaustively verify the Partition reduction equivalences.
    VerifyGadget {
        #[arg(long)]
        partition: String,
    },
    /// Brute-force reference oracles.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Singular,
    Psd,
    Nsd,
    BoundedEv,
}

#[derive(Subcommand)]
enum OracleOp {
    /// Determinant by permutation expansion (n <= 8).
    Det { matrix: String },
    /// Count invertible edge signings exhaustively.
    CountInvertible { graph: String },
    /// Count perfect matchings.
    PmCount { graph: String },
    /// Minimum edge addition for a perfect 2-matching.
    MinEdgeAdd { graph: String },
    /// Perfect 2-matching existence by backtracking.
    TwoMatching { graph: String },
    /// Twice the fractional matching number by subset DP.
    TwoNuF { graph: String },
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_matrix(path: &str) -> Result<SymMatrix> {
    parse_coord_matrix(&read_input(path)?)
}

fn load_graph(path: &str) -> Result<Graph> {
    parse_edge_list(&read_input(path)?)
}

/// Prints the certificate (JSON or plain) and converts it to an exit code.
fn finish(json: bool, cert: &CertificateJson, holds: bool) -> ExitCode {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(cert).expect("certificate serializes")
        );
    } else {
        print_plain(cert);
    }
    if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_plain(cert: &CertificateJson) {
    if let Some(msg) = &cert.message {
        println!("{msg}");
    }
    if let Some(s) = &cert.witness_set {
        let items: Vec<String> = s.iter().map(usize::to_string).collect();
        println!("witness set: {{{}}}", items.join(", "));
    }
    if let Some(signing) = &cert.signing {
        for &(u, v, sign) in &signing.edges {
            println!("edge {u} {v} {sign:+}");
        }
        for &(v, sign) in &signing.diagonal {
            println!("diagonal {v} {sign:+}");
        }
    }
    if let Some(det) = &cert.determinant {
        println!("determinant: {det}");
    }
    if let Some(p) = cert.parity {
        println!("parity: {p}");
    }
    if let Some(i) = cert.index {
        println!("index: {i}");
    }
    if let Some(pairs) = &cert.added_pairs {
        for &(u, v) in pairs {
            println!("add {u} {v}");
        }
    }
    if let Some(x) = &cert.two_matching {
        for &(u, v, value) in x {
            println!("x {u} {v} = {value}");
        }
    }
    if let Some(c) = &cert.count {
        println!(
            "invertible: {} of {} (bound {}, holds: {})",
            c.invertible, c.total, c.bound, c.bound_holds
        );
    }
    if let Some(z) = &cert.witness_z {
        let items: Vec<String> = z.iter().map(|s| format!("{s:+}")).collect();
        println!("z = ({})", items.join(", "));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Error::GuardExceeded(msg)) => {
            eprintln!("guard exceeded: {msg}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::CheckInvertible { matrix } => {
            let m = load_matrix(matrix)?;
            let (ok, witness) = exists_invertible_signing(&m);
            let mut cert = CertificateJson::new("check-invertible");
            cert.holds = Some(ok);
            if ok {
                cert.message = Some("an invertible signing exists".into());
            } else {
                let s = witness
                    .ok_or_else(|| Error::Internal("missing witness set".into()))?;
                // Re-validate the certificate against the input.
                let g = signmat::graph::support_graph(&m);
                let independent = s
                    .iter()
                    .all(|&v| !g.has_loop(v) && g.neighbors(v).iter().all(|u| !s.contains(u)));
                if !independent || g.neighborhood(&s).len() >= s.len() {
                    return Err(Error::Internal("witness set failed re-validation".into()));
                }
                cert.message = Some("every signing is singular".into());
                cert.witness_set = Some(vertex_list(&s));
            }
            Ok(finish(cli.json, &cert, ok))
        }
        Command::FindSigning { matrix } => {
            let m = load_matrix(matrix)?;
            let mut cert = CertificateJson::new("find-signing");
            match find_invertible_signing_bipartite(&m)? {
                Some(s) => {
                    let det = det_exact(&apply_signing(&m, &s)?);
                    if det.is_zero() {
                        return Err(Error::Internal("constructed signing is singular".into()));
                    }
                    cert.holds = Some(true);
                    cert.signing = Some(SigningJson::from(&s));
                    cert.determinant = Some(format_rational(&det));
                    Ok(finish(cli.json, &cert, true))
                }
                None => {
                    cert.holds = Some(false);
                    cert.message = Some("support has no perfect matching; every signing is singular".into());
                    Ok(finish(cli.json, &cert, false))
                }
            }
        }
        Command::FindSingular { graph } => {
            let g = load_graph(graph)?;
            let mut cert = CertificateJson::new("find-singular");
            match find_singular_signing_bipartite(&g)? {
                Some(s) => {
                    let det = det_exact(&apply_signing(&g.adjacency_matrix(), &s)?);
                    if !det.is_zero() {
                        return Err(Error::Internal("constructed signing is invertible".into()));
                    }
                    cert.holds = Some(true);
                    cert.signing = Some(SigningJson::from(&s));
                    cert.determinant = Some("0".into());
                    Ok(finish(cli.json, &cert, true))
                }
                None => {
                    debug_assert!(all_signings_invertible_bipartite(&g)?);
                    cert.holds = Some(false);
                    cert.message = Some("all signings invertible".into());
                    Ok(finish(cli.json, &cert, false))
                }
            }
        }
        Command::PmParity { graph } => {
            let g = load_graph(graph)?;
            let parity = pm_count_parity(&g)?;
            let mut cert = CertificateJson::new("pm-parity");
            cert.parity = Some(u8::from(parity));
            Ok(finish(cli.json, &cert, true))
        }
        Command::SolvabilityIndex { matrix } => {
            let m = load_matrix(matrix)?;
            let r = solvability_index(&m)?;
            // Re-validate: the witness must be a perfect 2-matching of G+F.
            let mut augmented = signmat::graph::support_graph(&m);
            for &(a, b) in &r.added_pairs {
                augmented.add_edge(a, b)?;
            }
            r.witness.validate(&augmented)?;
            let mut cert = CertificateJson::new("solvability-index");
            cert.index = Some(r.index);
            cert.added_pairs = Some(r.added_pairs.iter().copied().collect());
            cert.two_matching = Some(two_matching_triples(&r.witness));
            Ok(finish(cli.json, &cert, true))
        }
        Command::CountInvertible { graph, max_edges } => {
            let g = load_graph(graph)?;
            let report = count_invertible_signings(&g, *max_edges)?;
            let json = CountJson::from(&report);
            let holds = !has_perfect_two_matching(&g) || json.bound_holds;
            if !holds {
                return Err(Error::Internal(
                    "count fell below the guaranteed bound".into(),
                ));
            }
            let mut cert = CertificateJson::new("count-invertible");
            cert.count = Some(json);
            Ok(finish(cli.json, &cert, true))
        }
        Command::Gadget { partition, variant } => {
            let b = parse_partition(partition)?;
            let base = partition_gadget(&b);
            let out = match variant {
                Variant::Singular | Variant::Psd => base,
                Variant::Nsd => nsd_transform(&base),
                Variant::BoundedEv => bounded_ev_transform(&nsd_transform(&base)).0,
            };
            print!("{}", emit_coord_matrix(&out));
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyGadget { partition } => {
            let b = parse_partition(partition)?;
            let singular = verify_singular_reduction(&b)?;
            let psd = verify_psd_reduction(&b)?;
            let mut cert = CertificateJson::new("verify-gadget");
            cert.partition_exists = Some(singular.partition_exists);
            cert.witness_z = singular.witness_z.clone();
            cert.signing = singular.witness_signing.as_ref().map(SigningJson::from);
            cert.message = Some(format!(
                "singular equivalence: ok; psd equivalence: ok; partition exists: {}",
                psd.partition_exists
            ));
            Ok(finish(cli.json, &cert, true))
        }
        Command::Oracle { op } => run_oracle(cli.json, op),
    }
}

fn run_oracle(json: bool, op: &OracleOp) -> Result<ExitCode> {
    let mut cert = CertificateJson::new("oracle");
    match op {
        OracleOp::Det { matrix } => {
            let m = load_matrix(matrix)?;
            let det = oracle::permutation_expansion_det(&m)?;
            cert.determinant = Some(format_rational(&det));
        }
        OracleOp::CountInvertible { graph } => {
            let g = load_graph(graph)?;
            let count = oracle::brute_count_invertible(&g.adjacency_matrix(), false)?;
            cert.message = Some(format!("invertible signings: {count}"));
        }
        OracleOp::PmCount { graph } => {
            let g = load_graph(graph)?;
            let count = oracle::brute_count_perfect_matchings(&g)?;
            cert.message = Some(format!("perfect matchings: {count}"));
        }
        OracleOp::MinEdgeAdd { graph } => {
            let g = load_graph(graph)?;
            let (k, f) = oracle::brute_min_edge_add(&g)?;
            cert.index = Some(k);
            cert.added_pairs = Some(f);
        }
        OracleOp::TwoMatching { graph } => {
            let g = load_graph(graph)?;
            let ok = oracle::brute_has_perfect_two_matching(&g)?;
            cert.holds = Some(ok);
            cert.message = Some(format!("perfect 2-matching exists: {ok}"));
            return Ok(finish(json, &cert, ok));
        }
        OracleOp::TwoNuF { graph } => {
            let g = load_graph(graph)?;
            let two = oracle::brute_two_nu_f(&g)?;
            let main = nu_f(&g);
            cert.message = Some(format!(
                "2*nu_f = {two} (main path: {})",
                format_rational(&main)
            ));
        }
    }
    Ok(finish(json, &cert, true))
}
