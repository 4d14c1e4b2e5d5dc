//! Machine-readable certificates emitted by the CLI: serde types plus
//! conversions from the library's result values. Rationals are serialized
//! as exact "p/q" strings.

use crate::exactla::{format_rational, Rational};
use crate::graph::TwoMatching;
use crate::signlab::{CountReport, Signing, SigningMode};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SigningJson {
    pub mode: String,
    /// Triples [u, v, sign].
    pub edges: Vec<(usize, usize, i8)>,
    /// Pairs [v, sign]; only entries differing from +1 are listed.
    pub diagonal: Vec<(usize, i8)>,
}

impl From<&Signing> for SigningJson {
    fn from(s: &Signing) -> SigningJson {
        SigningJson {
            mode: match s.mode() {
                SigningMode::OffDiagonal => "off-diagonal".into(),
                SigningMode::Full => "full".into(),
            },
            edges: s.edge_signs().map(|((u, v), sign)| (u, v, sign)).collect(),
            diagonal: s.diagonal_signs().filter(|&(_, sign)| sign != 1).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountJson {
    pub n: usize,
    pub m: usize,
    pub invertible: String,
    pub total: String,
    pub bound: String,
    pub bound_holds: bool,
}

impl From<&CountReport> for CountJson {
    fn from(r: &CountReport) -> CountJson {
        let count = Rational::from_integer(r.invertible_count.clone());
        CountJson {
            n: r.n,
            m: r.m,
            invertible: r.invertible_count.to_string(),
            total: r.total.to_string(),
            bound: format_rational(&r.bound),
            bound_holds: count >= r.bound,
        }
    }
}

/// The one certificate shape shared by all subcommands; unused fields are
/// omitted from the JSON.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signing: Option<SigningJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    /// Pairs added by the solvability algorithm.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub added_pairs: Option<Vec<(usize, usize)>>,
    /// Triples [u, v, value] of a perfect 2-matching.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_matching: Option<Vec<(usize, usize, u8)>>,
    /// Non-expanding independent set certifying non-invertibility.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_set: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<CountJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition_exists: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_z: Option<Vec<i8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl CertificateJson {
    pub fn new(kind: &str) -> CertificateJson {
        CertificateJson {
            kind: kind.into(),
            ..CertificateJson::default()
        }
    }
}

pub fn two_matching_triples(x: &TwoMatching) -> Vec<(usize, usize, u8)> {
    x.entries().map(|((u, v), value)| (u, v, value)).collect()
}

pub fn vertex_list(s: &BTreeSet<usize>) -> Vec<usize> {
    s.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signlab::Signing;

    #[test]
    fn signing_serialization_round_trip() {
        let mut s = Signing::new(3, SigningMode::OffDiagonal);
        s.set_edge_sign(0, 1, -1);
        s.set_edge_sign(1, 2, 1);
        let json = serde_json::to_string(&SigningJson::from(&s)).unwrap();
        let back: SigningJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.edges, vec![(0, 1, -1), (1, 2, 1)]);
        assert_eq!(back.mode, "off-diagonal");
    }

    #[test]
    fn certificate_omits_unused_fields() {
        let mut cert = CertificateJson::new("pm-parity");
        cert.parity = Some(1);
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains("parity"));
        assert!(!json.contains("two_matching"));
    }
}
