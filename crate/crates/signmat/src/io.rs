//! Plain-text file formats: edge lists for graphs and coordinate files for
//! symmetric rational matrices. Both formats round-trip exactly.

use crate::exactla::{format_rational, parse_rational, SymMatrix};
use crate::gadgetry::PartitionInstance;
use crate::graph::Graph;
use crate::{Error, Result};
use num_traits::Zero;
use std::fmt::Write as _;

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty())
}

/// Parses "n m" followed by m lines "u v" (0-indexed); "u u" is a loop.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = data_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge list file".into()))?;
    let (n, m) = parse_two(header, "header")?;
    let mut g = Graph::new(n, true);
    for _ in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {m} edges, file ended early")))?;
        let (u, v) = parse_two(line, "edge")?;
        g.add_edge(u, v)
            .map_err(|e| Error::Parse(format!("bad edge `{line}`: {e}")))?;
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Parse(format!("unexpected trailing line `{extra}`")));
    }
    Ok(g)
}

/// Emits the edge-list format; edges sorted ascending.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses "n nnz" followed by nnz lines "i j value" with i <= j and value
/// an integer or "p/q" rational; stores both (i, j) and (j, i).
pub fn parse_coord_matrix(text: &str) -> Result<SymMatrix> {
    let mut lines = data_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let (n, nnz) = parse_two(header, "header")?;
    if n == 0 {
        return Err(Error::Parse("matrix dimension must be at least 1".into()));
    }
    let mut m = SymMatrix::zero(n);
    for _ in 0..nnz {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {nnz} entries, file ended early")))?;
        let mut parts = line.split_whitespace();
        let (i, j, value) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(i), Some(j), Some(v), None) => (i, j, v),
            _ => return Err(Error::Parse(format!("bad entry line `{line}`"))),
        };
        let i: usize = i
            .parse()
            .map_err(|_| Error::Parse(format!("bad row index in `{line}`")))?;
        let j: usize = j
            .parse()
            .map_err(|_| Error::Parse(format!("bad column index in `{line}`")))?;
        if i > j || j >= n {
            return Err(Error::Parse(format!(
                "entry ({i}, {j}) violates 0 <= i <= j < {n}"
            )));
        }
        let value = parse_rational(value)?;
        if value.is_zero() {
            return Err(Error::Parse(format!("explicit zero entry at ({i}, {j})")));
        }
        if !m.get(i, j).is_zero() {
            return Err(Error::Parse(format!("duplicate entry at ({i}, {j})")));
        }
        m.set(i, j, value);
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Parse(format!("unexpected trailing line `{extra}`")));
    }
    Ok(m)
}

/// Emits the coordinate format; entries sorted by (i, j).
pub fn emit_coord_matrix(m: &SymMatrix) -> String {
    let mut out = format!("{} {}\n", m.n(), m.nnz());
    for (i, j, v) in m.iter() {
        let _ = writeln!(out, "{i} {j} {}", format_rational(v));
    }
    out
}

fn parse_two(line: &str, what: &str) -> Result<(usize, usize)> {
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => {
            let a = a
                .parse()
                .map_err(|_| Error::Parse(format!("bad {what} line `{line}`")))?;
            let b = b
                .parse()
                .map_err(|_| Error::Parse(format!("bad {what} line `{line}`")))?;
            Ok((a, b))
        }
        _ => Err(Error::Parse(format!("bad {what} line `{line}`"))),
    }
}

/// Parses a comma-separated list of non-negative integers, e.g. "3,1,1,5".
pub fn parse_partition(text: &str) -> Result<PartitionInstance> {
    let entries = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad partition entry `{t}`")))
        })
        .collect::<Result<Vec<u64>>>()?;
    PartitionInstance::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, ratio};

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (1, 1)]).unwrap();
        let text = emit_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_errors() {
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("2 1\n0 1\n0 1").is_err()); // trailing line
        assert!(parse_edge_list("2 2\n0 1").is_err()); // short
        assert!(parse_edge_list("2 1\n0 5").is_err()); // out of range
        assert!(parse_edge_list("2 2\n0 1\n1 0").is_err()); // duplicate
    }

    #[test]
    fn coord_round_trip() {
        let mut m = SymMatrix::zero(3);
        m.set(0, 1, rat(2));
        m.set(1, 1, ratio(-1, 3));
        m.set(0, 2, ratio(7, 2));
        let text = emit_coord_matrix(&m);
        assert_eq!(parse_coord_matrix(&text).unwrap(), m);
    }

    #[test]
    fn coord_errors() {
        assert!(parse_coord_matrix("").is_err());
        assert!(parse_coord_matrix("2 1\n1 0 1").is_err()); // i > j
        assert!(parse_coord_matrix("2 1\n0 1 0").is_err()); // zero value
        assert!(parse_coord_matrix("2 2\n0 1 1\n0 1 2").is_err()); // dup
        assert!(parse_coord_matrix("0 0").is_err()); // empty dimension
        assert!(parse_coord_matrix("2 1\n0 1 x").is_err()); // bad value
    }

    #[test]
    fn coord_accepts_rationals_and_blank_lines() {
        let m = parse_coord_matrix("2 2\n\n0 0 1/2\n0 1 -3\n").unwrap();
        assert_eq!(m.get(0, 0), ratio(1, 2));
        assert_eq!(m.get(0, 1), rat(-3));
        assert_eq!(m.get(1, 0), rat(-3));
    }
}
