//! Undirected graphs with optional self-loops, matchings, perfect
//! 2-matchings, the bipartite double cover, and Eulerian circuits.

use crate::exactla::{rat, SymMatrix};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Undirected graph on vertices 0..n. An edge (u, u) is a self-loop.
/// Edges are stored with u <= v, no duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    loops_allowed: bool,
}

impl Graph {
    pub fn new(n: usize, loops_allowed: bool) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
            loops_allowed,
        }
    }

    pub fn simple(n: usize) -> Self {
        Graph::new(n, false)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let loops_allowed = edges.iter().any(|&(u, v)| u == v);
        let mut g = Graph::new(n, loops_allowed);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Precondition(format!(
                "edge ({u},{v}) out of range for n={}",
                self.n
            )));
        }
        if u == v && !self.loops_allowed {
            return Err(Error::LoopsUnsupported);
        }
        let e = (u.min(v), u.max(v));
        if !self.edges.insert(e) {
            return Err(Error::Precondition(format!("duplicate edge ({u},{v})")));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.edges.contains(&(v, v))
    }

    pub fn has_any_loop(&self) -> bool {
        (0..self.n).any(|v| self.has_loop(v))
    }

    /// Neighbors of v excluding v itself, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v && b != v {
                    Some(b)
                } else if b == v && a != v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Adjacency lists over non-loop edges, ascending within each list.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Degree counting a loop twice.
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len() + if self.has_loop(v) { 2 } else { 0 }
    }

    /// Non-inclusive neighborhood of a vertex set.
    pub fn neighborhood(&self, s: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &v in s {
            for u in self.neighbors(v) {
                if !s.contains(&u) {
                    out.insert(u);
                }
            }
        }
        out
    }

    /// Copy of the graph with loops dropped.
    pub fn without_loops(&self) -> Graph {
        let mut g = Graph::simple(self.n);
        for &(u, v) in &self.edges {
            if u != v {
                g.add_edge(u, v).expect("copying valid edges");
            }
        }
        g
    }

    /// Graph minus one vertex, remaining vertices relabeled in order.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let relabel = |x: usize| if x > v { x - 1 } else { x };
        let mut g = Graph::new(self.n - 1, self.loops_allowed);
        for &(a, b) in &self.edges {
            if a != v && b != v {
                g.add_edge(relabel(a), relabel(b)).expect("valid edge");
            }
        }
        g
    }

    /// Induced subgraph on the given vertex set, plus the map from new
    /// vertex indices back to original ones.
    pub fn induced(&self, s: &BTreeSet<usize>) -> (Graph, Vec<usize>) {
        let verts: Vec<usize> = s.iter().copied().collect();
        let index: BTreeMap<usize, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::new(verts.len(), self.loops_allowed);
        for &(u, v) in &self.edges {
            if let (Some(&iu), Some(&iv)) = (index.get(&u), index.get(&v)) {
                g.add_edge(iu, iv).expect("valid edge");
            }
        }
        (g, verts)
    }

    /// 2-coloring if the graph is bipartite (loops make it non-bipartite).
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        if self.has_any_loop() {
            return None;
        }
        let adj = self.adjacency();
        let mut color = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].unwrap();
                for &u in &adj[v] {
                    match color[u] {
                        None => {
                            color[u] = Some(!cv);
                            queue.push_back(u);
                        }
                        Some(cu) if cu == cv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    /// Connected components as sorted vertex sets (loops count for
    /// incidence but not connectivity), singletons included.
    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for &u in &adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// 0/1 adjacency matrix; a loop at v puts 1 on the diagonal.
    pub fn adjacency_matrix(&self) -> SymMatrix {
        let mut m = SymMatrix::zero(self.n.max(1));
        for &(u, v) in &self.edges {
            m.set(u, v, rat(1));
        }
        m
    }
}

/// Support graph of a symmetric matrix: edge {i,j} iff M[i,j] != 0, with a
/// loop at i iff M[i,i] != 0.
pub fn support_graph(m: &SymMatrix) -> Graph {
    let mut g = Graph::new(m.n(), true);
    for (i, j, _) in m.iter() {
        g.add_edge(i, j).expect("support entries are unique");
    }
    g
}

/// Vertex-disjoint set of non-loop edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    edges: BTreeSet<(usize, usize)>,
}

impl Matching {
    pub fn from_mates(mate: &[Option<usize>]) -> Matching {
        let mut edges = BTreeSet::new();
        for (v, &m) in mate.iter().enumerate() {
            if let Some(u) = m {
                edges.insert((v.min(u), v.max(u)));
            }
        }
        Matching { edges }
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn mates(&self, n: usize) -> Vec<Option<usize>> {
        let mut mate = vec![None; n];
        for &(u, v) in &self.edges {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }

    pub fn covers(&self, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| a == v || b == v)
    }

    /// Checks disjointness, membership in the host graph, and no loops.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.edges {
            if u == v {
                return Err(Error::Internal(format!("loop ({u},{v}) in matching")));
            }
            if !g.has_edge(u, v) {
                return Err(Error::Internal(format!("matching edge ({u},{v}) not in graph")));
            }
            if !seen.insert(u) || !seen.insert(v) {
                return Err(Error::Internal(format!("vertex reused at ({u},{v})")));
            }
        }
        Ok(())
    }
}

/// Perfect 2-matching: x: E -> {0,1,2} with loop-doubled degree sum 2 at
/// every vertex. Zero values are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwoMatching {
    values: BTreeMap<(usize, usize), u8>,
}

impl TwoMatching {
    pub fn set(&mut self, u: usize, v: usize, value: u8) {
        assert!(value <= 2);
        let e = (u.min(v), u.max(v));
        if value == 0 {
            self.values.remove(&e);
        } else {
            self.values.insert(e, value);
        }
    }

    pub fn get(&self, u: usize, v: usize) -> u8 {
        *self.values.get(&(u.min(v), u.max(v))).unwrap_or(&0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u8)> + '_ {
        self.values.iter().map(|(&e, &v)| (e, v))
    }

    /// Checks the perfect 2-matching invariant against a host graph.
    /// A loop at v contributes twice its value to v's sum.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for (&(u, v), &x) in &self.values {
            if !g.has_edge(u, v) {
                return Err(Error::Internal(format!("edge ({u},{v}) not in graph")));
            }
            if u == v && x > 1 {
                return Err(Error::Internal(format!("loop value {x} > 1 at {u}")));
            }
        }
        for v in 0..g.n() {
            let mut sum = 0u32;
            for (&(a, b), &x) in &self.values {
                if a == v && b == v {
                    sum += 2 * u32::from(x);
                } else if a == v || b == v {
                    sum += u32::from(x);
                }
            }
            if sum != 2 {
                return Err(Error::Internal(format!("vertex {v} has degree sum {sum}")));
            }
        }
        Ok(())
    }
}

/// Bipartite double cover: vertex v splits into left(v) = v and
/// right(v) = n + v; edge {u,v} lifts to {left(u), right(v)} and
/// {left(v), right(u)}; a loop at v lifts to the single edge
/// {left(v), right(v)}.
#[derive(Debug, Clone)]
pub struct DoubleCover {
    h: Graph,
    n: usize,
}

impl DoubleCover {
    pub fn graph(&self) -> &Graph {
        &self.h
    }

    pub fn left(&self, v: usize) -> usize {
        v
    }

    pub fn right(&self, v: usize) -> usize {
        self.n + v
    }

    /// Side indicator for the cover graph: false = left copies.
    pub fn parts(&self) -> Vec<bool> {
        (0..2 * self.n).map(|i| i >= self.n).collect()
    }
}

pub fn double_cover(g: &Graph) -> DoubleCover {
    let n = g.n();
    let mut h = Graph::simple(2 * n);
    for (u, v) in g.edges() {
        if u == v {
            h.add_edge(u, n + u).expect("valid lift");
        } else {
            h.add_edge(u, n + v).expect("valid lift");
            h.add_edge(v, n + u).expect("valid lift");
        }
    }
    DoubleCover { h, n }
}

/// Eulerian circuit of the edges induced by `component`, as an ordered edge
/// list forming a closed trail. Errors on odd degree or disconnection.
pub fn eulerian_circuit(g: &Graph, component: &BTreeSet<usize>) -> Result<Vec<(usize, usize)>> {
    // Collect induced edges, each usable once.
    let mut incidence: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut edge_list: Vec<(usize, usize)> = Vec::new();
    for (u, v) in g.edges() {
        if component.contains(&u) && component.contains(&v) {
            let id = edge_list.len();
            edge_list.push((u, v));
            incidence.entry(u).or_default().push(id);
            if u != v {
                incidence.entry(v).or_default().push(id);
            }
        }
    }
    if edge_list.is_empty() {
        return Ok(Vec::new());
    }
    for &v in component {
        let deg = incidence.get(&v).map_or(0, |l| l.len())
            + if g.has_loop(v) { 1 } else { 0 };
        if deg % 2 != 0 {
            return Err(Error::OddDegree { vertex: v, degree: deg });
        }
        if deg == 0 {
            return Err(Error::NotConnected);
        }
    }
    let mut used = vec![false; edge_list.len()];
    let mut ptr: BTreeMap<usize, usize> = BTreeMap::new();
    let start = *incidence.keys().next().expect("nonempty");
    // Hierholzer: walk until stuck, splice sub-tours in.
    let mut stack = vec![start];
    let mut trail_vertices: Vec<usize> = Vec::new();
    while let Some(&v) = stack.last() {
        let list = incidence.get(&v).cloned().unwrap_or_default();
        let p = ptr.entry(v).or_insert(0);
        let mut advanced = false;
        while *p < list.len() {
            let id = list[*p];
            *p += 1;
            if used[id] {
                continue;
            }
            used[id] = true;
            let (a, b) = edge_list[id];
            let next = if a == v { b } else { a };
            stack.push(next);
            advanced = true;
            break;
        }
        if !advanced {
            trail_vertices.push(v);
            stack.pop();
        }
    }
    if used.iter().any(|&u| !u) {
        return Err(Error::NotConnected);
    }
    trail_vertices.reverse();
    if trail_vertices.len() != edge_list.len() + 1 {
        return Err(Error::NotConnected);
    }
    let circuit: Vec<(usize, usize)> = trail_vertices
        .windows(2)
        .map(|w| (w[0], w[1]))
        .collect();
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn support_graph_identity() {
        let g = support_graph(&SymMatrix::identity(3));
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert!((0..3).all(|v| g.has_loop(v)));
    }

    #[test]
    fn support_graph_c4() {
        let g = support_graph(&c4().adjacency_matrix());
        let expected: std::collections::BTreeSet<(usize, usize)> =
            [(0, 1), (1, 2), (2, 3), (0, 3)].into_iter().collect();
        assert_eq!(g.edges().collect::<std::collections::BTreeSet<_>>(), expected);
        assert!(!g.has_any_loop());
    }

    #[test]
    fn support_graph_gadget() {
        // Gadget for b = (1,1): two hub vertices with loops attached to {0,1}.
        let m = SymMatrix::from_int_rows(&[
            vec![1, 0, 1, 1],
            vec![0, 1, 1, 1],
            vec![1, 1, 2, 0],
            vec![1, 1, 0, 2],
        ]);
        let g = support_graph(&m);
        assert!(g.has_loop(0) && g.has_loop(1) && g.has_loop(2) && g.has_loop(3));
        assert!(g.has_edge(0, 2) && g.has_edge(1, 2) && g.has_edge(0, 3) && g.has_edge(1, 3));
        assert!(!g.has_edge(0, 1) && !g.has_edge(2, 3));
    }

    #[test]
    fn double_cover_k2() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let dc = double_cover(&g);
        assert_eq!(dc.graph().m(), 2);
        assert!(dc.graph().has_edge(dc.left(0), dc.right(1)));
        assert!(dc.graph().has_edge(dc.left(1), dc.right(0)));
        assert!(dc.graph().bipartition().is_some());
    }

    #[test]
    fn double_cover_triangle_is_c6() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let dc = double_cover(&g);
        assert_eq!(dc.graph().m(), 6);
        assert!(dc.graph().bipartition().is_some());
        assert!((0..6).all(|v| dc.graph().degree(v) == 2));
        assert_eq!(dc.graph().components().len(), 1);
    }

    #[test]
    fn double_cover_loop() {
        let g = Graph::from_edges(1, &[(0, 0)]).unwrap();
        let dc = double_cover(&g);
        assert_eq!(dc.graph().m(), 1);
        assert!(dc.graph().has_edge(0, 1));
    }

    #[test]
    fn eulerian_c4() {
        let g = c4();
        let comp: BTreeSet<usize> = (0..4).collect();
        let circuit = eulerian_circuit(&g, &comp).unwrap();
        assert_eq!(circuit.len(), 4);
        assert_eq!(circuit[0].0, circuit[3].1);
        for w in circuit.windows(2) {
            assert_eq!(w[0].1, w[1].0);
        }
    }

    #[test]
    fn eulerian_figure_eight() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let comp: BTreeSet<usize> = (0..5).collect();
        let circuit = eulerian_circuit(&g, &comp).unwrap();
        assert_eq!(circuit.len(), 6);
        assert_eq!(circuit[0].0, circuit[5].1);
    }

    #[test]
    fn eulerian_single_edge_errors() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let comp: BTreeSet<usize> = (0..2).collect();
        assert!(matches!(
            eulerian_circuit(&g, &comp),
            Err(Error::OddDegree { .. })
        ));
    }

    #[test]
    fn two_matching_validate() {
        let g = c4();
        let mut x = TwoMatching::default();
        x.set(0, 1, 2);
        x.set(2, 3, 2);
        assert!(x.validate(&g).is_ok());
        x.set(1, 2, 1);
        assert!(x.validate(&g).is_err());
    }

    #[test]
    fn adjacency_matrix_has_loop_diagonal() {
        let g = Graph::from_edges(2, &[(0, 0), (0, 1)]).unwrap();
        let m = g.adjacency_matrix();
        assert_eq!(m.get(0, 0), rat(1));
        assert_eq!(m.get(0, 1), rat(1));
        assert_eq!(m.get(1, 1), rat(0));
    }
}
