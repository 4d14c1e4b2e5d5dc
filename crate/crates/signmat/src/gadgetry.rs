//! Hardness gadgets: the Partition-based reduction matrices for the
//! singular / PSD / NSD / bounded-eigenvalue signing problems, together
//! with exhaustive desk-scale verifiers of the reduction equivalences.

use crate::exactla::{det_exact, is_psd_exact, rat, Rational, SymMatrix};
use crate::oracle::{brute_exists_psd_signing, brute_exists_singular_offdiag};
use crate::signlab::{apply_signing, Signing, SigningMode};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::HashMap;

/// A Partition instance: does some z in {±1}^n give <b, z> = 0?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInstance {
    b: Vec<u64>,
}

impl PartitionInstance {
    pub fn new(b: Vec<u64>) -> Result<PartitionInstance> {
        if b.is_empty() {
            return Err(Error::Precondition(
                "partition instance needs at least one entry".into(),
            ));
        }
        Ok(PartitionInstance { b })
    }

    pub fn entries(&self) -> &[u64] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The (n+2) x (n+2) reduction matrix [I_n, b, 1; b^T, <b,b>, 0; 1^T, 0, n].
pub fn partition_gadget(b: &PartitionInstance) -> SymMatrix {
    let n = b.len();
    let mut m = SymMatrix::zero(n + 2);
    let mut dot = BigInt::zero();
    for (i, &bi) in b.entries().iter().enumerate() {
        m.set(i, i, rat(1));
        m.set(i, n, Rational::from_integer(BigInt::from(bi)));
        m.set(i, n + 1, rat(1));
        dot += BigInt::from(bi) * BigInt::from(bi);
    }
    m.set(n, n, Rational::from_integer(dot));
    m.set(n + 1, n + 1, rat(n as i64));
    m
}

/// True iff some z in {±1}^n has <b, z> = 0. Meet-in-the-middle; guard
/// n <= 30.
pub fn has_partition(b: &PartitionInstance) -> Result<bool> {
    Ok(partition_witness(b)?.is_some())
}

/// A witnessing sign vector z with <b, z> = 0, if one exists.
pub fn partition_witness(b: &PartitionInstance) -> Result<Option<Vec<i8>>> {
    let n = b.len();
    if n > 30 {
        return Err(Error::GuardExceeded(format!(
            "partition search limited to n <= 30, got {n}"
        )));
    }
    let (left, right) = b.entries().split_at(n / 2);
    // Sum of every signing of the left half, keyed to the first sign mask
    // achieving it.
    let mut left_sums: HashMap<i128, u32> = HashMap::new();
    for mask in 0u32..1 << left.len() {
        let sum: i128 = left
            .iter()
            .enumerate()
            .map(|(k, &v)| if mask >> k & 1 == 1 { -(v as i128) } else { v as i128 })
            .sum();
        left_sums.entry(sum).or_insert(mask);
    }
    for mask in 0u32..1 << right.len() {
        let sum: i128 = right
            .iter()
            .enumerate()
            .map(|(k, &v)| if mask >> k & 1 == 1 { -(v as i128) } else { v as i128 })
            .sum();
        if let Some(&lmask) = left_sums.get(&-sum) {
            let mut z = Vec::with_capacity(n);
            for k in 0..left.len() {
                z.push(if lmask >> k & 1 == 1 { -1 } else { 1 });
            }
            for k in 0..right.len() {
                z.push(if mask >> k & 1 == 1 { -1 } else { 1 });
            }
            return Ok(Some(z));
        }
    }
    Ok(None)
}

/// Outcome of verifying one direction of the Partition reduction.
#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub partition_exists: bool,
    pub signing_exists: bool,
    pub witness_z: Option<Vec<i8>>,
    pub witness_signing: Option<Signing>,
}

/// Builds the gadget signing induced by a partition witness z: the ones
/// column gets signs z, the b column stays positive.
fn witness_signing(b: &PartitionInstance, z: &[i8], mode: SigningMode) -> Signing {
    let n = b.len();
    let mut s = Signing::new(n + 2, mode);
    for (i, &bi) in b.entries().iter().enumerate() {
        if bi != 0 {
            s.set_edge_sign(i, n, 1);
        }
        s.set_edge_sign(i, n + 1, z[i]);
    }
    s
}

/// Checks that the gadget has a singular off-diagonal signing iff the
/// Partition instance is solvable, by exhaustive search; on the positive
/// side re-validates the witness signing built from z.
pub fn verify_singular_reduction(b: &PartitionInstance) -> Result<ReductionReport> {
    let gadget = partition_gadget(b);
    let partition_exists = has_partition(b)?;
    let signing_exists = brute_exists_singular_offdiag(&gadget)?;
    if partition_exists != signing_exists {
        return Err(Error::Internal(format!(
            "singular reduction mismatch: partition {partition_exists}, signing {signing_exists}"
        )));
    }
    let (witness_z, witness_signing) = match partition_witness(b)? {
        Some(z) => {
            let s = witness_signing(b, &z, SigningMode::OffDiagonal);
            let signed = apply_signing(&gadget, &s)?;
            if !det_exact(&signed).is_zero() {
                return Err(Error::Internal(
                    "partition witness does not produce a singular signing".into(),
                ));
            }
            (Some(z), Some(s))
        }
        None => (None, None),
    };
    Ok(ReductionReport {
        partition_exists,
        signing_exists,
        witness_z,
        witness_signing,
    })
}

/// Checks that the gadget has a positive semidefinite (full) signing iff
/// the Partition instance is solvable; re-validates the witness.
pub fn verify_psd_reduction(b: &PartitionInstance) -> Result<ReductionReport> {
    let gadget = partition_gadget(b);
    let partition_exists = has_partition(b)?;
    let signing_exists = brute_exists_psd_signing(&gadget, true)?;
    if partition_exists != signing_exists {
        return Err(Error::Internal(format!(
            "psd reduction mismatch: partition {partition_exists}, signing {signing_exists}"
        )));
    }
    let (witness_z, witness_signing) = match partition_witness(b)? {
        Some(z) => {
            let s = witness_signing(b, &z, SigningMode::Full);
            let signed = apply_signing(&gadget, &s)?;
            if !is_psd_exact(&signed) {
                return Err(Error::Internal(
                    "partition witness does not produce a PSD signing".into(),
                ));
            }
            (Some(z), Some(s))
        }
        None => (None, None),
    };
    Ok(ReductionReport {
        partition_exists,
        signing_exists,
        witness_z,
        witness_signing,
    })
}

/// M is PSD iff -M is negative semidefinite; the NSD instance is just the
/// negation.
pub fn nsd_transform(m: &SymMatrix) -> SymMatrix {
    m.neg()
}

/// Bounded-eigenvalue instance at lambda = 0: off-diagonal entries kept,
/// each diagonal entry replaced by minus its absolute value.
pub fn bounded_ev_transform(m: &SymMatrix) -> (SymMatrix, Rational) {
    let mut out = SymMatrix::zero(m.n());
    for (i, j, v) in m.iter() {
        if i == j {
            out.set(i, i, -v.abs());
        } else {
            out.set(i, j, v.clone());
        }
    }
    (out, Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{max_eigenvalue_leq, schur_complement, BlockSplit};
    use crate::graph::support_graph;

    fn inst(b: &[u64]) -> PartitionInstance {
        PartitionInstance::new(b.to_vec()).unwrap()
    }

    #[test]
    fn gadget_structure() {
        let m = partition_gadget(&inst(&[1, 1]));
        let expected = SymMatrix::from_int_rows(&[
            vec![1, 0, 1, 1],
            vec![0, 1, 1, 1],
            vec![1, 1, 2, 0],
            vec![1, 1, 0, 2],
        ]);
        assert_eq!(m, expected);

        let m = partition_gadget(&inst(&[0]));
        let expected =
            SymMatrix::from_int_rows(&[vec![1, 0, 1], vec![0, 0, 0], vec![1, 0, 1]]);
        assert_eq!(m, expected);

        let m = partition_gadget(&inst(&[3, 4, 5]));
        assert_eq!(m.n(), 5);
        assert_eq!(m.get(3, 3), rat(50));
        assert_eq!(m.get(4, 4), rat(3));
        assert_eq!(m.get(3, 4), rat(0));
    }

    #[test]
    fn gadget_support_shape() {
        // b=(1,1): K2-free base with two hubs, each adjacent to both base
        // vertices, every vertex except the base pair carrying a loop.
        let g = support_graph(&partition_gadget(&inst(&[1, 1])));
        assert!(g.has_loop(0) && g.has_loop(1) && g.has_loop(2) && g.has_loop(3));
        assert!(g.has_edge(0, 2) && g.has_edge(1, 2));
        assert!(g.has_edge(0, 3) && g.has_edge(1, 3));
        assert!(!g.has_edge(0, 1) && !g.has_edge(2, 3));
    }

    #[test]
    fn partition_examples() {
        assert!(has_partition(&inst(&[1, 1])).unwrap());
        assert!(!has_partition(&inst(&[1, 2])).unwrap());
        assert!(has_partition(&inst(&[3, 4, 5, 6])).unwrap());
        assert!(!has_partition(&inst(&[2, 2, 2])).unwrap());
        let z = partition_witness(&inst(&[3, 4, 5, 6])).unwrap().unwrap();
        let sum: i64 = z
            .iter()
            .zip([3i64, 4, 5, 6])
            .map(|(&zi, bi)| i64::from(zi) * bi)
            .sum();
        assert_eq!(sum, 0);
    }

    #[test]
    fn singular_reduction_examples() {
        let r = verify_singular_reduction(&inst(&[1, 1])).unwrap();
        assert!(r.partition_exists && r.signing_exists);
        assert!(r.witness_signing.is_some());

        let r = verify_singular_reduction(&inst(&[1, 2])).unwrap();
        assert!(!r.partition_exists && !r.signing_exists);
    }

    #[test]
    fn psd_reduction_examples() {
        let r = verify_psd_reduction(&inst(&[1, 1])).unwrap();
        assert!(r.partition_exists && r.signing_exists);

        let r = verify_psd_reduction(&inst(&[1, 2])).unwrap();
        assert!(!r.partition_exists && !r.signing_exists);

        let r = verify_psd_reduction(&inst(&[2, 2, 2])).unwrap();
        assert!(!r.partition_exists && !r.signing_exists);
    }

    #[test]
    fn schur_shortcut_on_witness() {
        // For b=(1,1) and z=(1,-1): the Schur complement of the identity
        // block is the zero 2x2 matrix and the determinant is 0.
        let b = inst(&[1, 1]);
        let gadget = partition_gadget(&b);
        let s = witness_signing(&b, &[1, -1], SigningMode::OffDiagonal);
        let signed = apply_signing(&gadget, &s).unwrap();
        let dc = schur_complement(&signed, BlockSplit::new(2, 4).unwrap()).unwrap();
        assert_eq!(dc, SymMatrix::zero(2));
        assert!(det_exact(&signed).is_zero());
    }

    #[test]
    fn nsd_and_bounded_ev_transforms() {
        assert_eq!(nsd_transform(&SymMatrix::identity(2)), SymMatrix::identity(2).neg());

        let (mp, lambda) = bounded_ev_transform(&SymMatrix::identity(2));
        assert_eq!(mp, SymMatrix::identity(2).neg());
        assert!(lambda.is_zero());
        assert!(max_eigenvalue_leq(&mp, &lambda));

        // K2 adjacency is unchanged (zero diagonal), and no signing has
        // eigenvalues at most 0.
        let k2 = SymMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        let (mp, lambda) = bounded_ev_transform(&k2);
        assert_eq!(mp, k2);
        assert!(!max_eigenvalue_leq(&mp, &lambda));
    }
}
