//! Exhaustive graph enumeration at desk scale: all labeled graphs on n
//! vertices (optionally with loops) and all simple graphs up to isomorphism
//! via edge augmentation with canonical forms.

use crate::graph::Graph;
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Calls `f` on every labeled graph with vertex set {0..n}. With
/// `loops_allowed` the loop at each vertex is an independent choice.
/// Guard: at most 2^26 graphs.
pub fn for_each_labeled_graph(
    n: usize,
    loops_allowed: bool,
    mut f: impl FnMut(&Graph),
) -> Result<()> {
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in u..n {
            if u != v || loops_allowed {
                slots.push((u, v));
            }
        }
    }
    if slots.len() > 26 {
        return Err(Error::GuardExceeded(format!(
            "labeled enumeration limited to 2^26 graphs, got 2^{}",
            slots.len()
        )));
    }
    for mask in 0u64..1 << slots.len() {
        let mut g = Graph::new(n, loops_allowed);
        for (k, &(u, v)) in slots.iter().enumerate() {
            if mask >> k & 1 == 1 {
                g.add_edge(u, v).expect("slot is a valid edge");
            }
        }
        f(&g);
    }
    Ok(())
}

/// Pair index of the edge {i, j}, i < j, in colexicographic order: all
/// pairs inside {0..k} precede pairs whose larger endpoint is k.
fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

fn mask_graph(n: usize, mask: u64) -> Graph {
    let mut g = Graph::simple(n);
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_index(i, j) & 1 == 1 {
                g.add_edge(i, j).expect("valid edge");
            }
        }
    }
    g
}

/// Canonical adjacency bit mask: minimizes, over all vertex relabelings,
/// the sequence of adjacency rows (row k holds the adjacency of new vertex
/// k to new vertices 0..k), compared lexicographically row by row. Found by
/// a pruned backtracking search that fixes one new label at a time.
pub fn canonical_mask(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 10, "canonical form limited to n <= 10");
    assert!(!g.has_any_loop(), "canonical form is for simple graphs");
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let mut best_rows: Vec<u64> = Vec::new();
    let mut rows: Vec<u64> = Vec::new();
    let mut placement: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search_canonical(&adj, &mut placement, &mut used, &mut rows, &mut best_rows);
    let mut mask = 0u64;
    for (k, &row) in best_rows.iter().enumerate() {
        for i in 0..k {
            if row >> i & 1 == 1 {
                mask |= 1 << pair_index(i, k);
            }
        }
    }
    mask
}

fn search_canonical(
    adj: &[u64],
    placement: &mut Vec<usize>,
    used: &mut [bool],
    rows: &mut Vec<u64>,
    best_rows: &mut Vec<u64>,
) {
    let n = adj.len();
    let k = placement.len();
    if k == n {
        // Every branch that survives to a leaf is <= the incumbent.
        best_rows.clone_from(rows);
        return;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        // Row k: adjacency of v to already-placed vertices, bit i for
        // new label i.
        let mut row = 0u64;
        for (i, &p) in placement.iter().enumerate() {
            if adj[v] >> p & 1 == 1 {
                row |= 1 << i;
            }
        }
        if best_rows.len() > k {
            if row > best_rows[k] {
                continue; // this branch can only exceed the incumbent
            }
            if row < best_rows[k] {
                // Strictly better prefix: the old incumbent is dead beyond
                // this row, so drop it and let the first leaf below refill.
                best_rows.truncate(k);
            }
        }
        placement.push(v);
        used[v] = true;
        rows.push(row);
        search_canonical(adj, placement, used, rows, best_rows);
        rows.pop();
        used[v] = false;
        placement.pop();
    }
}

/// True iff the two simple graphs are isomorphic.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_mask(a) == canonical_mask(b)
}

/// All simple graphs on n vertices up to isomorphism, generated level by
/// level on the edge count and deduplicated by canonical form. Graphs are
/// returned canonically labeled, sorted by (edge count, mask).
/// Guard: n <= 8.
pub fn graphs_up_to_iso(n: usize) -> Result<Vec<Graph>> {
    if n > 8 {
        return Err(Error::GuardExceeded(format!(
            "isomorphism-class enumeration limited to n <= 8, got {n}"
        )));
    }
    let pairs = n * (n.max(1) - 1) / 2;
    let mut out: Vec<Graph> = Vec::new();
    let mut level: BTreeSet<u64> = BTreeSet::from([0u64]);
    loop {
        for &mask in &level {
            out.push(mask_graph(n, mask));
        }
        let mut next: BTreeSet<u64> = BTreeSet::new();
        for &mask in &level {
            for bit in 0..pairs {
                if mask >> bit & 1 == 0 {
                    let g = mask_graph(n, mask | 1 << bit);
                    next.insert(canonical_mask(&g));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    Ok(out)
}
