//! Independent brute-force oracles used to cross-check the main algorithms.
//!
//! Nothing here shares code with the production paths: determinants use the
//! permutation expansion, matchings and 2-matchings use plain backtracking,
//! and the fractional matching number uses a subset DP over edge and
//! odd-cycle packings. All oracles carry hard size guards.

use crate::exactla::{Rational, SymMatrix};
use crate::graph::Graph;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// Determinant by the permutation (Leibniz) expansion. Guard: n <= 8.
pub fn permutation_expansion_det(m: &SymMatrix) -> Result<Rational> {
    let n = m.n();
    if n > 8 {
        return Err(Error::GuardExceeded(format!(
            "permutation expansion limited to n <= 8, got {n}"
        )));
    }
    let mut total = Rational::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permute_sum(m, &mut perm, 0, true, &mut total);
    Ok(total)
}

fn permute_sum(m: &SymMatrix, perm: &mut Vec<usize>, k: usize, sign: bool, total: &mut Rational) {
    let n = perm.len();
    if k == n {
        let mut term = if sign {
            Rational::one()
        } else {
            -Rational::one()
        };
        for i in 0..n {
            let v = m.get(i, perm[i]);
            if v.is_zero() {
                return;
            }
            term *= v;
        }
        *total += term;
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute_sum(m, perm, k + 1, sign ^ (i != k), total);
        perm.swap(k, i);
    }
}

/// True iff some permutation hits only nonzero entries (the matrix has a
/// nonzero generalized diagonal). Backtracking over columns.
pub fn nonzero_permutation_exists(m: &SymMatrix) -> Result<bool> {
    let n = m.n();
    if n > 20 {
        return Err(Error::GuardExceeded(format!(
            "generalized diagonal search limited to n <= 20, got {n}"
        )));
    }
    fn rec(m: &SymMatrix, row: usize, used: u32) -> bool {
        let n = m.n();
        if row == n {
            return true;
        }
        (0..n).any(|col| used >> col & 1 == 0 && !m.get(row, col).is_zero() && rec(m, row + 1, used | 1 << col))
    }
    Ok(rec(m, 0, 0))
}

/// All principal minors nonnegative, each computed by permutation
/// expansion: an independent positive-semidefiniteness test. Guard: n <= 8.
pub fn brute_is_psd(m: &SymMatrix) -> Result<bool> {
    let n = m.n();
    if n > 8 {
        return Err(Error::GuardExceeded(format!(
            "principal minor PSD test limited to n <= 8, got {n}"
        )));
    }
    for mask in 1u32..1 << n {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let mut sub = SymMatrix::zero(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a) {
                sub.set(a, b, m.get(i, j));
            }
        }
        if permutation_expansion_det(&sub)?.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Iterates over all signings of the support of `m` and counts those with a
/// nonzero permutation-expansion determinant. Signs every off-diagonal
/// support entry, and every diagonal support entry too when `sign_diagonal`.
/// Guards: n <= 8 and at most 2^20 signings.
pub fn brute_count_invertible(m: &SymMatrix, sign_diagonal: bool) -> Result<BigInt> {
    let n = m.n();
    let mut positions: Vec<(usize, usize)> = Vec::new();
    for (i, j, _) in m.iter() {
        if i != j || sign_diagonal {
            positions.push((i, j));
        }
    }
    if n > 8 || positions.len() > 20 {
        return Err(Error::GuardExceeded(format!(
            "brute signing count limited to n <= 8 and 2^20 signings, got n={n}, positions={}",
            positions.len()
        )));
    }
    let mut count = BigInt::zero();
    for mask in 0u32..1 << positions.len() {
        let mut signed = m.clone();
        for (k, &(i, j)) in positions.iter().enumerate() {
            if mask >> k & 1 == 1 {
                signed.set(i, j, -m.get(i, j));
            }
        }
        if !permutation_expansion_det(&signed)?.is_zero() {
            count += 1;
        }
    }
    Ok(count)
}

/// True iff some signing of the support of `m` has determinant zero.
/// Same guards and conventions as [`brute_count_invertible`].
pub fn brute_exists_singular_signing(m: &SymMatrix, sign_diagonal: bool) -> Result<bool> {
    let total_positions = m
        .iter()
        .filter(|&(i, j, _)| i != j || sign_diagonal)
        .count();
    let total = BigInt::one() << total_positions;
    Ok(brute_count_invertible(m, sign_diagonal)? != total)
}

/// Off-diagonal specialization of [`brute_exists_singular_signing`].
pub fn brute_exists_singular_offdiag(m: &SymMatrix) -> Result<bool> {
    brute_exists_singular_signing(m, false)
}

/// True iff some signing of the support of `m` is positive semidefinite,
/// by exhausting signings against the exact PSD test. With `sign_diagonal`
/// the diagonal support entries are signed too (full signings), otherwise
/// the diagonal stays fixed. Guard: at most 2^20 signings.
pub fn brute_exists_psd_signing(m: &SymMatrix, sign_diagonal: bool) -> Result<bool> {
    let positions: Vec<(usize, usize)> = m
        .iter()
        .map(|(i, j, _)| (i, j))
        .filter(|&(i, j)| i != j || sign_diagonal)
        .collect();
    if positions.len() > 20 {
        return Err(Error::GuardExceeded(format!(
            "brute PSD signing search limited to 2^20 signings, got positions={}",
            positions.len()
        )));
    }
    for mask in 0u32..1 << positions.len() {
        let mut signed = m.clone();
        for (k, &(i, j)) in positions.iter().enumerate() {
            if mask >> k & 1 == 1 {
                signed.set(i, j, -m.get(i, j));
            }
        }
        if crate::exactla::is_psd_exact(&signed) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Number of perfect matchings, by recursion on the lowest uncovered
/// vertex. Loops are ignored. Guard: n <= 16.
pub fn brute_count_perfect_matchings(g: &Graph) -> Result<u64> {
    let g = g.without_loops();
    if g.n() > 16 {
        return Err(Error::GuardExceeded(format!(
            "perfect matching count limited to n <= 16, got {}",
            g.n()
        )));
    }
    if g.n() % 2 != 0 {
        return Ok(0);
    }
    let adj = g.adjacency();
    fn rec(adj: &[Vec<usize>], covered: u32) -> u64 {
        let n = adj.len();
        let Some(v) = (0..n).find(|&v| covered >> v & 1 == 0) else {
            return 1;
        };
        adj[v]
            .iter()
            .filter(|&&u| covered >> u & 1 == 0)
            .map(|&u| rec(adj, covered | 1 << v | 1 << u))
            .sum()
    }
    Ok(rec(&adj, 0))
}

/// Size of a maximum matching, by plain backtracking. Loops ignored.
/// Guard: n <= 16.
pub fn brute_nu(g: &Graph) -> Result<usize> {
    let g = g.without_loops();
    if g.n() > 16 {
        return Err(Error::GuardExceeded(format!(
            "brute matching limited to n <= 16, got {}",
            g.n()
        )));
    }
    let adj = g.adjacency();
    fn rec(adj: &[Vec<usize>], covered: u32, from: usize) -> usize {
        let n = adj.len();
        let Some(v) = (from..n).find(|&v| covered >> v & 1 == 0) else {
            return 0;
        };
        let mut best = rec(adj, covered | 1 << v, v + 1); // leave v exposed
        for &u in &adj[v] {
            if covered >> u & 1 == 0 {
                best = best.max(1 + rec(adj, covered | 1 << v | 1 << u, v + 1));
            }
        }
        best
    }
    Ok(rec(&adj, 0, 0))
}

/// Perfect 2-matching existence by backtracking over edge values with
/// residual-degree pruning. Loops may take value at most 1 and contribute
/// twice; plain edges take values 0, 1, or 2. Guard: n <= 12.
pub fn brute_has_perfect_two_matching(g: &Graph) -> Result<bool> {
    if g.n() > 12 {
        return Err(Error::GuardExceeded(format!(
            "brute 2-matching limited to n <= 12, got {}",
            g.n()
        )));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    // last_at[v] = index of the last edge touching v, after which v's
    // residual must have reached zero.
    let mut last_at: Vec<Option<usize>> = vec![None; g.n()];
    for (k, &(u, v)) in edges.iter().enumerate() {
        last_at[u] = Some(k);
        last_at[v] = Some(k);
    }
    if last_at.iter().any(Option::is_none) && g.n() > 0 {
        return Ok(false); // isolated vertex can never reach degree sum 2
    }
    let mut residual = vec![2u8; g.n()];
    fn rec(
        edges: &[(usize, usize)],
        last_at: &[Option<usize>],
        residual: &mut [u8],
        k: usize,
    ) -> bool {
        if k == edges.len() {
            return residual.iter().all(|&r| r == 0);
        }
        let (u, v) = edges[k];
        let choices: &[u8] = if u == v { &[0, 1] } else { &[0, 1, 2] };
        for &x in choices {
            let need = if u == v { 2 * x } else { x };
            if residual[u] < need || (u != v && residual[v] < x) {
                break;
            }
            residual[u] -= need;
            if u != v {
                residual[v] -= x;
            }
            let closes_u = last_at[u] == Some(k) && residual[u] != 0;
            let closes_v = u != v && last_at[v] == Some(k) && residual[v] != 0;
            if !closes_u && !closes_v && rec(edges, last_at, residual, k + 1) {
                residual[u] += need;
                if u != v {
                    residual[v] += x;
                }
                return true;
            }
            residual[u] += need;
            if u != v {
                residual[v] += x;
            }
        }
        false
    }
    if g.n() == 0 {
        return Ok(true);
    }
    Ok(rec(&edges, &last_at, &mut residual, 0))
}

/// Smallest number of edges whose addition creates a perfect 2-matching,
/// together with one witness set, searching non-edges by increasing subset
/// size. Loops are never added. Guard: n <= 7.
pub fn brute_min_edge_add(g: &Graph) -> Result<(usize, Vec<(usize, usize)>)> {
    let n = g.n();
    if n > 7 {
        return Err(Error::GuardExceeded(format!(
            "brute edge addition limited to n <= 7, got {n}"
        )));
    }
    let mut non_edges: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                non_edges.push((u, v));
            }
        }
    }
    for k in 0..=non_edges.len() {
        let mut pick = vec![0usize; k];
        if let Some(f) = first_working_subset(g, &non_edges, &mut pick, 0, 0)? {
            return Ok((k, f));
        }
    }
    Err(Error::Internal(
        "adding all non-edges never produced a perfect 2-matching".into(),
    ))
}

fn first_working_subset(
    g: &Graph,
    non_edges: &[(usize, usize)],
    pick: &mut [usize],
    depth: usize,
    start: usize,
) -> Result<Option<Vec<(usize, usize)>>> {
    if depth == pick.len() {
        let mut h = g.clone();
        for &k in pick.iter() {
            let (u, v) = non_edges[k];
            h.add_edge(u, v)?;
        }
        if brute_has_perfect_two_matching(&h)? {
            return Ok(Some(pick.iter().map(|&k| non_edges[k]).collect()));
        }
        return Ok(None);
    }
    for k in start..non_edges.len() {
        pick[depth] = k;
        if let Some(f) = first_working_subset(g, non_edges, pick, depth + 1, k + 1)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Twice the fractional matching number, by a subset DP over packings of
/// disjoint edges (worth 2) and odd cycles (worth their length). Loops are
/// ignored. Guard: n <= 12.
pub fn brute_two_nu_f(g: &Graph) -> Result<u32> {
    let g = g.without_loops();
    let n = g.n();
    if n > 12 {
        return Err(Error::GuardExceeded(format!(
            "fractional matching DP limited to n <= 12, got {n}"
        )));
    }
    let adj = g.adjacency();
    let mut memo: HashMap<u32, u32> = HashMap::new();
    Ok(packing_value(&adj, (1u32 << n) - 1, &mut memo))
}

fn packing_value(adj: &[Vec<usize>], alive: u32, memo: &mut HashMap<u32, u32>) -> u32 {
    if alive == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&alive) {
        return v;
    }
    let lowest = alive.trailing_zeros() as usize;
    // Leave the lowest alive vertex uncovered.
    let mut best = packing_value(adj, alive & !(1 << lowest), memo);
    // Cover it by an edge.
    for &u in &adj[lowest] {
        if alive >> u & 1 == 1 {
            best = best.max(2 + packing_value(adj, alive & !(1 << lowest) & !(1 << u), memo));
        }
    }
    // Cover it by an odd cycle through it, found by DFS over alive vertices.
    let mut path = vec![lowest];
    let mut on_path = 1u32 << lowest;
    odd_cycles_from(adj, alive, lowest, &mut path, &mut on_path, &mut best, memo);
    memo.insert(alive, best);
    best
}

fn odd_cycles_from(
    adj: &[Vec<usize>],
    alive: u32,
    root: usize,
    path: &mut Vec<usize>,
    on_path: &mut u32,
    best: &mut u32,
    memo: &mut HashMap<u32, u32>,
) {
    let last = *path.last().unwrap();
    for &u in &adj[last] {
        if u == root && path.len() >= 3 && path.len() % 2 == 1 {
            let value = path.len() as u32 + packing_value(adj, alive & !*on_path, memo);
            *best = (*best).max(value);
        }
        // Only extend to vertices above the root so each cycle is visited a
        // bounded number of times.
        if u > root && alive >> u & 1 == 1 && *on_path >> u & 1 == 0 {
            path.push(u);
            *on_path |= 1 << u;
            odd_cycles_from(adj, alive, root, path, on_path, best, memo);
            path.pop();
            *on_path &= !(1 << u);
        }
    }
}
