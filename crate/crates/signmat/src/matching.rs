//! Matching machinery: bipartite and general maximum matching, perfect
//! 2-matchings via the double cover, the Gallai-Edmonds decomposition, the
//! fractional matching number, and non-expanding independent set witnesses.
//!
//! Tie-breaking is deterministic everywhere: vertices and edges are always
//! scanned lowest-index first.

use crate::exactla::Rational;
use crate::graph::{double_cover, Graph, Matching, TwoMatching};
use crate::{Error, Result};
use num_bigint::BigInt;
use std::collections::{BTreeSet, VecDeque};

/// Maximum matching in a bipartite graph by augmenting paths (Kuhn).
/// `parts[v]` gives the side of vertex v; errors if an edge fails to cross
/// or the graph has loops.
pub fn max_matching_bipartite(g: &Graph, parts: &[bool]) -> Result<Matching> {
    if parts.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: parts.len(),
        });
    }
    if g.has_any_loop() {
        return Err(Error::LoopsUnsupported);
    }
    for (u, v) in g.edges() {
        if parts[u] == parts[v] {
            return Err(Error::BadBipartition { u, v });
        }
    }
    let adj = g.adjacency();
    let mut mate: Vec<Option<usize>> = vec![None; g.n()];
    for v in 0..g.n() {
        if !parts[v] && mate[v].is_none() {
            let mut visited = vec![false; g.n()];
            kuhn_augment(&adj, &mut mate, &mut visited, v);
        }
    }
    Ok(Matching::from_mates(&mate))
}

fn kuhn_augment(
    adj: &[Vec<usize>],
    mate: &mut [Option<usize>],
    visited: &mut [bool],
    v: usize,
) -> bool {
    for &u in &adj[v] {
        if visited[u] {
            continue;
        }
        visited[u] = true;
        let free = match mate[u] {
            None => true,
            Some(w) => kuhn_augment(adj, mate, visited, w),
        };
        if free {
            mate[u] = Some(v);
            mate[v] = Some(u);
            return true;
        }
    }
    false
}

/// Maximum matching in a general graph via Edmonds' blossom algorithm.
/// Loops are ignored.
pub fn max_matching_general(g: &Graph) -> Matching {
    let adj = g.adjacency();
    let n = g.n();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    // Greedy start, then augment from each remaining exposed vertex.
    for v in 0..n {
        if mate[v].is_none() {
            if let Some(&u) = adj[v].iter().find(|&&u| mate[u].is_none()) {
                mate[v] = Some(u);
                mate[u] = Some(v);
            }
        }
    }
    for v in 0..n {
        if mate[v].is_none() {
            find_augmenting(&adj, &mut mate, v);
        }
    }
    Matching::from_mates(&mate)
}

/// Searches for an augmenting path from the exposed vertex `root`,
/// contracting blossoms as they appear; augments `mate` in place on success.
pub(crate) fn find_augmenting(
    adj: &[Vec<usize>],
    mate: &mut [Option<usize>],
    root: usize,
) -> bool {
    let n = adj.len();
    debug_assert!(mate[root].is_none());
    let mut used = vec![false; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut queue = VecDeque::from([root]);
    used[root] = true;

    while let Some(v) = queue.pop_front() {
        for &to in &adj[v] {
            if base[v] == base[to] || mate[v] == Some(to) {
                continue;
            }
            let to_in_tree_even =
                to == root || matches!(mate[to], Some(m) if parent[m].is_some());
            if to_in_tree_even {
                let curbase = blossom_lca(mate, &parent, &base, v, to);
                let mut in_blossom = vec![false; n];
                mark_blossom_path(mate, &mut parent, &base, &mut in_blossom, v, curbase, to);
                mark_blossom_path(mate, &mut parent, &base, &mut in_blossom, to, curbase, v);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = curbase;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to].is_none() {
                parent[to] = Some(v);
                match mate[to] {
                    None => {
                        augment_along(mate, &parent, to);
                        return true;
                    }
                    Some(m) => {
                        if !used[m] {
                            used[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
    }
    false
}

fn blossom_lca(
    mate: &[Option<usize>],
    parent: &[Option<usize>],
    base: &[usize],
    a: usize,
    b: usize,
) -> usize {
    let mut seen = vec![false; base.len()];
    let mut v = a;
    loop {
        v = base[v];
        seen[v] = true;
        match mate[v] {
            None => break, // reached the root
            Some(m) => v = parent[m].expect("tree vertex has a parent"),
        }
    }
    let mut v = b;
    loop {
        v = base[v];
        if seen[v] {
            return v;
        }
        v = parent[mate[v].expect("non-root on tree path")].expect("tree vertex has a parent");
    }
}

fn mark_blossom_path(
    mate: &[Option<usize>],
    parent: &mut [Option<usize>],
    base: &[usize],
    in_blossom: &mut [bool],
    mut v: usize,
    curbase: usize,
    mut child: usize,
) {
    while base[v] != curbase {
        let m = mate[v].expect("blossom path alternates");
        in_blossom[base[v]] = true;
        in_blossom[base[m]] = true;
        parent[v] = Some(child);
        child = m;
        v = parent[m].expect("tree vertex has a parent");
    }
}

fn augment_along(mate: &mut [Option<usize>], parent: &[Option<usize>], start: usize) {
    let mut v = start;
    loop {
        let pv = parent[v].expect("augmenting path parent");
        let next = mate[pv];
        mate[v] = Some(pv);
        mate[pv] = Some(v);
        match next {
            Some(x) => v = x,
            None => break,
        }
    }
}

/// nu(G): size of a maximum matching, loops ignored.
pub fn nu(g: &Graph) -> usize {
    max_matching_general(g).size()
}

/// Vertices exposed by some maximum matching: {v : nu(G - v) = nu(G)}.
pub fn inessential_vertices(g: &Graph) -> BTreeSet<usize> {
    let g = g.without_loops();
    let total = nu(&g);
    (0..g.n())
        .filter(|&v| nu(&g.remove_vertex(v)) == total)
        .collect()
}

/// Gallai-Edmonds decomposition: B = inessential vertices split into
/// isolated (B1) and factor-critical (B>=3) parts, C = N(B), D = the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GallaiEdmonds {
    pub b1: BTreeSet<usize>,
    pub bge3: BTreeSet<usize>,
    pub c: BTreeSet<usize>,
    pub d: BTreeSet<usize>,
}

impl GallaiEdmonds {
    pub fn b(&self) -> BTreeSet<usize> {
        self.b1.union(&self.bge3).copied().collect()
    }
}

pub fn gallai_edmonds(g: &Graph) -> GallaiEdmonds {
    let g = g.without_loops();
    let b = inessential_vertices(&g);
    let c = g.neighborhood(&b);
    let d: BTreeSet<usize> = (0..g.n())
        .filter(|v| !b.contains(v) && !c.contains(v))
        .collect();
    let (b1, bge3): (BTreeSet<usize>, BTreeSet<usize>) = b
        .iter()
        .partition(|&&v| g.neighbors(v).iter().all(|u| !b.contains(u)));
    GallaiEdmonds { b1, bge3, c, d }
}

/// True iff H - v has a perfect matching for every vertex v.
pub fn is_factor_critical(h: &Graph) -> bool {
    let h = h.without_loops();
    if h.n() % 2 == 0 {
        return false;
    }
    (0..h.n()).all(|v| nu(&h.remove_vertex(v)) * 2 == h.n() - 1)
}

/// Fractional matching number nu_f(G) = nu(double cover)/2, loops ignored.
pub fn nu_f(g: &Graph) -> Rational {
    Rational::new(BigInt::from(nu_double_cover(g)), BigInt::from(2))
}

fn nu_double_cover(g: &Graph) -> usize {
    let dc = double_cover(&g.without_loops());
    max_matching_bipartite(dc.graph(), &dc.parts())
        .expect("double cover is bipartite")
        .size()
}

/// True iff G has a perfect 2-matching, decided via a perfect matching in
/// the bipartite double cover (loops included).
pub fn has_perfect_two_matching(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let dc = double_cover(g);
    let m = max_matching_bipartite(dc.graph(), &dc.parts()).expect("double cover is bipartite");
    m.size() == g.n()
}

/// Extracts a perfect 2-matching from the double-cover perfect matching:
/// x({u,v}) counts the matched mirror copies, a loop gets value 1 iff its
/// lifted edge is matched. Returns None when no perfect 2-matching exists.
pub fn extract_two_matching(g: &Graph) -> Option<TwoMatching> {
    let n = g.n();
    if n == 0 {
        return Some(TwoMatching::default());
    }
    let dc = double_cover(g);
    let matching =
        max_matching_bipartite(dc.graph(), &dc.parts()).expect("double cover is bipartite");
    if matching.size() != n {
        return None;
    }
    let mut x = TwoMatching::default();
    for (a, b) in matching.edges() {
        let (l, r) = if a < n { (a, b - n) } else { (b, a - n) };
        if l == r {
            x.set(l, l, 1);
        } else {
            let cur = x.get(l, r);
            x.set(l, r, cur + 1);
        }
    }
    x.validate(g).expect("double-cover extraction yields a valid 2-matching");
    Some(x)
}

/// Maximum matching that, among all maximum matchings, covers the largest
/// number of B1 vertices. Local search with blossom-aware rematching,
/// verified against Gallai-Edmonds counts with an exhaustive fallback.
pub fn max_matching_prefer_b1(g: &Graph, ged: &GallaiEdmonds) -> Result<Matching> {
    if *ged != gallai_edmonds(g) {
        return Err(Error::Precondition(
            "Gallai-Edmonds decomposition does not match the graph".into(),
        ));
    }
    let g = g.without_loops();
    let n = g.n();
    let base_adj = g.adjacency();
    let mut mate = max_matching_general(&g).mates(n);
    loop {
        let exposed_b1: Vec<usize> = ged
            .b1
            .iter()
            .copied()
            .filter(|&v| mate[v].is_none())
            .collect();
        let mut improved = false;
        for &u in &exposed_b1 {
            if mate[u].is_some() {
                continue;
            }
            // Attach a pendant to every covered non-B1 vertex; an augmenting
            // path from u must end at a pendant, and stripping the pendant
            // edge trades exposure of u for exposure of a non-B1 vertex.
            let targets: Vec<usize> = (0..n)
                .filter(|&w| !ged.b1.contains(&w) && mate[w].is_some())
                .collect();
            let mut adj: Vec<Vec<usize>> = base_adj.clone();
            adj.resize(n + targets.len(), Vec::new());
            let mut aux_mate = mate.clone();
            aux_mate.resize(n + targets.len(), None);
            for (k, &w) in targets.iter().enumerate() {
                adj[w].push(n + k);
                adj[n + k].push(w);
            }
            if find_augmenting(&adj, &mut aux_mate, u) {
                for (k, &w) in targets.iter().enumerate() {
                    if aux_mate[n + k] == Some(w) {
                        aux_mate[w] = None;
                    }
                }
                mate.copy_from_slice(&aux_mate[..n]);
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    let matching = Matching::from_mates(&mate);
    if prefer_b1_counts_ok(&g, ged, &matching) {
        return Ok(matching);
    }
    // Fixed point failed the Gallai-Edmonds count; fall back to exhaustive
    // search at small sizes.
    if n <= 10 {
        let best = exhaustive_prefer_b1(&g, ged);
        if prefer_b1_counts_ok(&g, ged, &best) {
            return Ok(best);
        }
    }
    Err(Error::Internal(
        "prefer-B1 matching failed the exposed-vertex count check".into(),
    ))
}

/// Checks |M| = nu and #exposed B>=3 vertices = 2(nu_f - nu).
fn prefer_b1_counts_ok(g: &Graph, ged: &GallaiEdmonds, m: &Matching) -> bool {
    let nu_g = nu(g);
    if m.size() != nu_g {
        return false;
    }
    let exposed_bge3 = ged.bge3.iter().filter(|&&v| !m.covers(v)).count();
    exposed_bge3 == nu_double_cover(g) - 2 * nu_g
}

fn exhaustive_prefer_b1(g: &Graph, ged: &GallaiEdmonds) -> Matching {
    let nu_g = nu(g);
    let mut best: Option<(usize, Matching)> = None;
    for m in enumerate_matchings(g) {
        if m.size() != nu_g {
            continue;
        }
        let covered_b1 = ged.b1.iter().filter(|&&v| m.covers(v)).count();
        let better = match &best {
            None => true,
            Some((c, _)) => covered_b1 > *c,
        };
        if better {
            best = Some((covered_b1, m));
        }
    }
    best.expect("graph has at least the empty matching").1
}

/// All matchings of G (loops ignored), by recursion on the lowest
/// undecided vertex. Exponential; intended for small graphs only.
pub fn enumerate_matchings(g: &Graph) -> Vec<Matching> {
    let adj = g.adjacency();
    let n = g.n();
    let mut out = Vec::new();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    fn rec(
        adj: &[Vec<usize>],
        mate: &mut Vec<Option<usize>>,
        v: usize,
        out: &mut Vec<Matching>,
    ) {
        let n = adj.len();
        let Some(v) = (v..n).find(|&v| mate[v].is_none()) else {
            out.push(Matching::from_mates(mate));
            return;
        };
        // v stays exposed
        mate[v] = Some(usize::MAX); // sentinel: decided-exposed
        rec(adj, mate, v + 1, out);
        mate[v] = None;
        for &u in &adj[v] {
            if u > v && mate[u].is_none() {
                mate[v] = Some(u);
                mate[u] = Some(v);
                rec(adj, mate, v + 1, out);
                mate[v] = None;
                mate[u] = None;
            }
        }
    }
    rec(&adj, &mut mate, 0, &mut out);
    // Strip the decided-exposed sentinel before reporting.
    out.into_iter()
        .map(|m| {
            let edges: Vec<(usize, usize)> = m.edges().filter(|&(_, v)| v != usize::MAX).collect();
            let mut mate = vec![None; n];
            for (u, v) in edges {
                mate[u] = Some(v);
                mate[v] = Some(u);
            }
            Matching::from_mates(&mate)
        })
        .collect()
}

/// If G has no perfect 2-matching, returns an independent set S with
/// |N(S)| < |S|; otherwise None. Every returned witness is re-verified; a
/// Koenig-style construction inside (B1, N(B1)) is tried first with an
/// exhaustive fallback.
pub fn witness_non_expanding_independent_set(g: &Graph) -> Option<BTreeSet<usize>> {
    if has_perfect_two_matching(g) {
        return None;
    }
    let ged = gallai_edmonds(g);
    // Loop vertices cover themselves, so they can never sit inside a
    // certifying set.
    let pool: BTreeSet<usize> = ged
        .b1
        .iter()
        .copied()
        .filter(|&v| !g.has_loop(v))
        .collect();
    if let Some(s) = hall_violator(g, &pool) {
        if verify_witness(g, &s) {
            return Some(s);
        }
    }
    // Exhaustive fallback over loop-free subsets.
    let candidates: Vec<usize> = (0..g.n()).filter(|&v| !g.has_loop(v)).collect();
    assert!(
        candidates.len() <= 24,
        "exhaustive witness search limited to 24 candidate vertices"
    );
    for mask in 1u32..1 << candidates.len() {
        let s: BTreeSet<usize> = candidates
            .iter()
            .enumerate()
            .filter(|&(k, _)| mask >> k & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        if verify_witness(g, &s) {
            return Some(s);
        }
    }
    panic!("no non-expanding independent set found despite missing perfect 2-matching");
}

fn verify_witness(g: &Graph, s: &BTreeSet<usize>) -> bool {
    if s.is_empty() {
        return false;
    }
    for &v in s {
        if g.has_loop(v) {
            return false;
        }
        if g.neighbors(v).iter().any(|u| s.contains(u)) {
            return false;
        }
    }
    g.neighborhood(s).len() < s.len()
}

/// Maximum Hall violator inside the bipartite graph (pool, N(pool)):
/// left vertices alternating-reachable from exposed left vertices.
fn hall_violator(g: &Graph, pool: &BTreeSet<usize>) -> Option<BTreeSet<usize>> {
    if pool.is_empty() {
        return None;
    }
    let left: Vec<usize> = pool.iter().copied().collect();
    let right: Vec<usize> = g.neighborhood(pool).into_iter().collect();
    let index_left: std::collections::BTreeMap<usize, usize> =
        left.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let index_right: std::collections::BTreeMap<usize, usize> =
        right.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let nl = left.len();
    let mut h = Graph::simple(nl + right.len());
    for (&v, &i) in &index_left {
        for u in g.neighbors(v) {
            if let Some(&j) = index_right.get(&u) {
                if !h.has_edge(i, nl + j) {
                    h.add_edge(i, nl + j).expect("valid edge");
                }
            }
        }
    }
    let parts: Vec<bool> = (0..nl + right.len()).map(|i| i >= nl).collect();
    let m = max_matching_bipartite(&h, &parts).expect("constructed bipartite");
    let mates = m.mates(nl + right.len());
    // Alternating BFS from exposed left vertices: unmatched edges left to
    // right, matched edges right to left.
    let adj = h.adjacency();
    let mut reach_left = vec![false; nl];
    let mut queue = VecDeque::new();
    for i in 0..nl {
        if mates[i].is_none() {
            reach_left[i] = true;
            queue.push_back(i);
        }
    }
    if queue.is_empty() {
        return None;
    }
    let mut reach_right = vec![false; right.len()];
    while let Some(i) = queue.pop_front() {
        for &rj in &adj[i] {
            let j = rj - nl;
            if reach_right[j] {
                continue;
            }
            reach_right[j] = true;
            if let Some(mi) = mates[rj] {
                if !reach_left[mi] {
                    reach_left[mi] = true;
                    queue.push_back(mi);
                }
            }
        }
    }
    Some(
        (0..nl)
            .filter(|&i| reach_left[i])
            .map(|i| left[i])
            .collect(),
    )
}
