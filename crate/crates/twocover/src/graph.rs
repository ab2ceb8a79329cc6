//! Finite graphs with loops, graph homomorphisms, and the basic constructions
//! everything else is built on: products, coproducts, quotients, folds,
//! bipartiteness, named families.
//!
//! Vertices are dense integer ids `0..n`. Graphs are immutable values; every
//! derived graph is a fresh object together with an explicit old-to-new vertex
//! map where renumbering happens. Loops are ordinary edges `(v, v)` and count
//! once in `edge_count`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// An undirected finite graph, possibly with loops, on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Graph from an explicit edge list. Duplicate edges are ignored; `(a, a)`
    /// is a loop at `a`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::InvalidVertex { vertex: v, count: n });
                }
            }
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Ok(Graph { n, adj })
    }

    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Graph {
        Graph { n, adj: vec![BTreeSet::new(); n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edges, loops counted once.
    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].contains(&b)
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    /// Edges as ordered pairs `(a, b)` with `a <= b`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| self.adj[a].iter().filter(move |&&b| b >= a).map(move |&b| (a, b)))
    }

    /// Neighbor set of `v`. Panics if `v` is out of range; use
    /// [`Graph::neighborhood`] for a checked variant.
    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, count: self.n })
        }
    }

    /// `N(v)`: the set of neighbors of `v` (contains `v` iff `v` has a loop).
    pub fn neighborhood(&self, v: usize) -> Result<BTreeSet<usize>> {
        self.check_vertex(v)?;
        Ok(self.adj[v].clone())
    }

    /// `N2(v) = N(N(v))`: all vertices adjacent to some neighbor of `v`.
    /// `v` itself lies in `N2(v)` iff `v` is non-isolated.
    pub fn neighborhood2(&self, v: usize) -> Result<BTreeSet<usize>> {
        self.check_vertex(v)?;
        let mut out = BTreeSet::new();
        for &u in &self.adj[v] {
            out.extend(self.adj[u].iter().copied());
        }
        Ok(out)
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = vec![s];
            while let Some(v) = queue.pop() {
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// A graph is connected when it has at least one vertex and every pair of
    /// vertices is joined by a path. The empty graph is not connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// 2-coloring `0/1` per vertex, or `None` if some component has an odd
    /// closed walk (loops included). The class containing the smallest id of
    /// each component is class 0.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if u == v {
                        return None; // loop: odd closed walk
                    }
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        queue.push_back(u);
                    } else if color[u] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Breadth-first spanning forest from `root` (ties broken by ascending id).
    /// Returns `(parent, depth)`, with `parent[root] = root`; vertices outside
    /// the component of `root` keep `parent[v] = usize::MAX`.
    pub fn bfs_tree(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![usize::MAX; self.n];
        parent[root] = root;
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if parent[u] == usize::MAX {
                    parent[u] = v;
                    depth[u] = depth[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        (parent, depth)
    }

    // ----- named families ---------------------------------------------------

    /// Complete graph on `n` vertices (no loops).
    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::edgeless(n);
        for a in 0..n {
            for b in a + 1..n {
                g.adj[a].insert(b);
                g.adj[b].insert(a);
            }
        }
        g
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::pre(format!("cycle requires at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges)
    }

    /// Path with `n` edges on vertices `0..=n`.
    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
        Graph::new(n + 1, &edges).expect("valid")
    }

    /// Path with `n` edges plus a loop at every vertex: the reflexive interval.
    pub fn looped_interval(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
        edges.extend((0..=n).map(|i| (i, i)));
        Graph::new(n + 1, &edges).expect("valid")
    }

    /// Single vertex carrying a loop (the unit for the categorical product).
    pub fn looped_vertex() -> Graph {
        Graph::new(1, &[(0, 0)]).expect("valid")
    }

    /// Petersen graph: vertices 0..5 outer cycle, 5..10 inner pentagram,
    /// spokes `i - (i+5)`.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &edges).expect("valid")
    }

    /// Hypercube on `2^r` vertices; vertex ids are coordinate bitstrings.
    pub fn hypercube(r: u32) -> Graph {
        let n = 1usize << r;
        let mut edges = Vec::new();
        for v in 0..n {
            for b in 0..r {
                let u = v ^ (1 << b);
                if v < u {
                    edges.push((v, u));
                }
            }
        }
        Graph::new(n, &edges).expect("valid")
    }

    /// Grid-boundary family: vertices are tuples `x` with `x[i]` in
    /// `0..=dims[i]` such that at least `s` coordinates sit on the boundary
    /// (`x[i] = 0` or `x[i] = dims[i]`); edges join tuples at L1-distance 1.
    /// Requires `dims` nonempty, every `dims[i] >= 1`, and `s + 2 <= dims.len()`.
    ///
    /// Vertex ids enumerate the admissible tuples in lexicographic order; use
    /// [`Graph::boundary_grid_labels`] to recover the tuples.
    pub fn boundary_grid(dims: &[usize], s: usize) -> Result<Graph> {
        let labels = Self::boundary_grid_labels(dims, s)?;
        let index: std::collections::HashMap<&[usize], usize> =
            labels.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
        let mut edges = Vec::new();
        for (i, t) in labels.iter().enumerate() {
            for (k, &xk) in t.iter().enumerate() {
                if xk < dims[k] {
                    let mut up = t.clone();
                    up[k] += 1;
                    if let Some(&j) = index.get(up.as_slice()) {
                        edges.push((i, j));
                    }
                }
            }
        }
        Graph::new(labels.len(), &edges)
    }

    /// Coordinate tuples of [`Graph::boundary_grid`], in vertex-id order.
    pub fn boundary_grid_labels(dims: &[usize], s: usize) -> Result<Vec<Vec<usize>>> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::pre("boundary_grid: dims must be nonempty with every entry >= 1"));
        }
        if s + 2 > dims.len() {
            return Err(Error::pre(format!(
                "boundary_grid: require s + 2 <= number of coordinates (s = {s}, r = {})",
                dims.len()
            )));
        }
        let mut labels = Vec::new();
        let mut t = vec![0usize; dims.len()];
        loop {
            let on_boundary = t.iter().zip(dims).filter(|&(&x, &d)| x == 0 || x == d).count();
            if on_boundary >= s {
                labels.push(t.clone());
            }
            // lexicographic increment
            let mut k = dims.len();
            loop {
                if k == 0 {
                    return Ok(labels);
                }
                k -= 1;
                if t[k] < dims[k] {
                    t[k] += 1;
                    break;
                }
                t[k] = 0;
            }
        }
    }

    // ----- constructions ----------------------------------------------------

    /// Categorical product: vertices are pairs `(x, y)` with id `x * |H| + y`;
    /// `(x, y) ~ (x', y')` iff `x ~ x'` and `y ~ y'`.
    pub fn product(&self, h: &Graph) -> Graph {
        let n = self.n * h.n;
        let mut adj = vec![BTreeSet::new(); n];
        for x in 0..self.n {
            for &x2 in &self.adj[x] {
                for y in 0..h.n {
                    for &y2 in &h.adj[y] {
                        adj[x * h.n + y].insert(x2 * h.n + y2);
                    }
                }
            }
        }
        Graph { n, adj }
    }

    /// Disjoint union; vertices of `h` are shifted by `self.vertex_count()`.
    pub fn coproduct(&self, h: &Graph) -> Graph {
        let n = self.n + h.n;
        let mut adj = self.adj.clone();
        adj.extend(h.adj.iter().map(|s| s.iter().map(|&v| v + self.n).collect()));
        Graph { n, adj }
    }

    /// Quotient by a vertex partition. `classes` must list every vertex exactly
    /// once; class ids follow the order given. The quotient has an edge
    /// (possibly a loop) between classes whenever some representatives are
    /// adjacent. Returns the quotient together with the projection map.
    pub fn quotient_by_partition(&self, classes: &[Vec<usize>]) -> Result<(Graph, GraphMap)> {
        let mut class_of = vec![usize::MAX; self.n];
        for (ci, class) in classes.iter().enumerate() {
            for &v in class {
                self.check_vertex(v)?;
                if class_of[v] != usize::MAX {
                    return Err(Error::NotPartition(format!("vertex {v} listed twice")));
                }
                class_of[v] = ci;
            }
        }
        if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::NotPartition(format!("vertex {v} missing")));
        }
        let mut adj = vec![BTreeSet::new(); classes.len()];
        for (a, b) in self.edges() {
            adj[class_of[a]].insert(class_of[b]);
            adj[class_of[b]].insert(class_of[a]);
        }
        let q = Graph { n: classes.len(), adj };
        let map = GraphMap::new(self.clone(), q.clone(), class_of)?;
        Ok((q, map))
    }

    /// Vertex deletion. Surviving vertices are renumbered densely, preserving
    /// order; the second component maps old ids to new ids (`None` for `v`).
    pub fn delete_vertex(&self, v: usize) -> Result<(Graph, Vec<Option<usize>>)> {
        self.check_vertex(v)?;
        let renumber: Vec<Option<usize>> =
            (0..self.n).map(|x| if x == v { None } else { Some(if x < v { x } else { x - 1 }) }).collect();
        let mut adj = vec![BTreeSet::new(); self.n - 1];
        for (a, b) in self.edges() {
            if let (Some(na), Some(nb)) = (renumber[a], renumber[b]) {
                adj[na].insert(nb);
                adj[nb].insert(na);
            }
        }
        Ok((Graph { n: self.n - 1, adj }, renumber))
    }

    /// All pairs `(v, w)`, `v != w`, with `N(v) ⊆ N(w)`, in lexicographic
    /// order. Each such pair is a legal fold (deleting `v` and sending it to
    /// `w` preserves 2-homotopy invariants).
    pub fn find_folds(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.n {
            for w in 0..self.n {
                if v != w && self.adj[v].is_subset(&self.adj[w]) {
                    out.push((v, w));
                }
            }
        }
        out
    }

    /// Fold `v` onto `w` (requires `N(v) ⊆ N(w)`, `v != w`). Returns the folded
    /// graph `G - v` and the folding map `G -> G - v` sending `v` to `w` and
    /// every other vertex to itself (under dense renumbering). Restricted to
    /// surviving vertices the map is the identity, so folding is idempotent.
    pub fn apply_fold(&self, v: usize, w: usize) -> Result<(Graph, GraphMap)> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        if v == w || !self.adj[v].is_subset(&self.adj[w]) {
            return Err(Error::pre(format!("({v}, {w}) is not a fold: need v != w and N(v) ⊆ N(w)")));
        }
        let (folded, renumber) = self.delete_vertex(v)?;
        let assignment: Vec<usize> = (0..self.n)
            .map(|x| renumber[if x == v { w } else { x }].expect("w survives"))
            .collect();
        let map = GraphMap::new(self.clone(), folded.clone(), assignment)?;
        Ok((folded, map))
    }
}

/// A graph homomorphism: a vertex assignment sending edges to edges (loops may
/// map to loops). Verified on construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphMap {
    source: Graph,
    target: Graph,
    assignment: Vec<usize>,
}

impl GraphMap {
    pub fn new(source: Graph, target: Graph, assignment: Vec<usize>) -> Result<GraphMap> {
        if assignment.len() != source.vertex_count() {
            return Err(Error::GraphMismatch(format!(
                "assignment has {} entries for {} source vertices",
                assignment.len(),
                source.vertex_count()
            )));
        }
        for &fv in &assignment {
            target.check_vertex(fv)?;
        }
        for (a, b) in source.edges() {
            let (fa, fb) = (assignment[a], assignment[b]);
            if !target.has_edge(fa, fb) {
                return Err(Error::NotHomomorphism { a, b, fa, fb });
            }
        }
        Ok(GraphMap { source, target, assignment })
    }

    pub fn identity(g: Graph) -> GraphMap {
        let assignment = (0..g.vertex_count()).collect();
        GraphMap { source: g.clone(), target: g, assignment }
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn apply(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Composition `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &GraphMap) -> Result<GraphMap> {
        if self.target != other.source {
            return Err(Error::GraphMismatch("composition: target of first != source of second".into()));
        }
        let assignment = self.assignment.iter().map(|&v| other.assignment[v]).collect();
        GraphMap::new(self.source.clone(), other.target.clone(), assignment)
    }

    /// Preimage of a target vertex, ascending.
    pub fn fiber(&self, w: usize) -> Vec<usize> {
        (0..self.source.vertex_count()).filter(|&v| self.assignment[v] == w).collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.vertex_count()];
        for &v in &self.assignment {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// A graph with a chosen basepoint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasedGraph {
    pub graph: Graph,
    pub basepoint: usize,
}

impl BasedGraph {
    pub fn new(graph: Graph, basepoint: usize) -> Result<BasedGraph> {
        graph.check_vertex(basepoint)?;
        Ok(BasedGraph { graph, basepoint })
    }
}

/// A subgraph of an ambient graph, given by explicit vertex and edge subsets.
/// Not necessarily induced. Edges are stored as `(a, b)` with `a <= b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgraph {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl Subgraph {
    pub fn new(
        ambient: &Graph,
        vertices: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Subgraph> {
        let mut vs: BTreeSet<usize> = vertices.into_iter().collect();
        let mut es = BTreeSet::new();
        for (a, b) in edges {
            let (a, b) = (a.min(b), a.max(b));
            if !ambient.has_edge(a, b) {
                return Err(Error::NotAdjacent { a, b });
            }
            vs.insert(a);
            vs.insert(b);
            es.insert((a, b));
        }
        for &v in &vs {
            ambient.check_vertex(v)?;
        }
        Ok(Subgraph { vertices: vs, edges: es })
    }

    /// The whole of `g` as a subgraph of itself.
    pub fn full(g: &Graph) -> Subgraph {
        Subgraph { vertices: g.vertices().collect(), edges: g.edges().collect() }
    }

    /// Induced subgraph on a vertex set.
    pub fn induced(g: &Graph, vertices: impl IntoIterator<Item = usize>) -> Result<Subgraph> {
        let vs: BTreeSet<usize> = vertices.into_iter().collect();
        let es: Vec<_> = g.edges().filter(|&(a, b)| vs.contains(&a) && vs.contains(&b)).collect();
        Subgraph::new(g, vs, es)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn contains(&self, other: &Subgraph) -> bool {
        other.vertices.is_subset(&self.vertices) && other.edges.is_subset(&self.edges)
    }

    pub fn intersection(&self, other: &Subgraph) -> Subgraph {
        Subgraph {
            vertices: self.vertices.intersection(&other.vertices).copied().collect(),
            edges: self.edges.intersection(&other.edges).copied().collect(),
        }
    }

    pub fn union(&self, other: &Subgraph) -> Subgraph {
        Subgraph {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    /// Extract a standalone graph. Returns the graph on densely renumbered
    /// vertices and the list of original ids in new-id order.
    pub fn to_graph(&self) -> (Graph, Vec<usize>) {
        let ids: Vec<usize> = self.vertices.iter().copied().collect();
        let index: std::collections::HashMap<usize, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<_> = self.edges.iter().map(|&(a, b)| (index[&a], index[&b])).collect();
        (Graph::new(ids.len(), &edges).expect("valid"), ids)
    }
}

/// Brute-force graph isomorphism on small graphs, with degree pruning.
/// Returns a witness bijection `iso` with `iso[v]` the image of `v`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let n = g.vertex_count();
    let mut gd: Vec<_> = (0..n).map(|v| g.degree(v)).collect();
    let mut hd: Vec<_> = (0..n).map(|v| h.degree(v)).collect();
    gd.sort_unstable();
    hd.sort_unstable();
    if gd != hd {
        return None;
    }
    let mut iso = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(g: &Graph, h: &Graph, iso: &mut Vec<usize>, used: &mut Vec<bool>, v: usize) -> bool {
        let n = g.vertex_count();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || g.degree(v) != h.degree(w) || g.has_loop(v) != h.has_loop(w) {
                continue;
            }
            let ok = (0..v).all(|u| g.has_edge(u, v) == h.has_edge(iso[u], w));
            if ok {
                iso[v] = w;
                used[w] = true;
                if go(g, h, iso, used, v + 1) {
                    return true;
                }
                used[w] = false;
                iso[v] = usize::MAX;
            }
        }
        false
    }
    if go(g, h, &mut iso, &mut used, 0) {
        Some(iso)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loops_and_duplicates() {
        let g = Graph::new(3, &[(0, 1), (1, 0), (2, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_loop(2));
        assert!(!g.has_loop(0));
        assert_eq!(g.neighbors(2).iter().copied().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn neighborhood2_examples() {
        let c8 = Graph::cycle(8).unwrap();
        assert_eq!(c8.neighborhood2(0).unwrap(), BTreeSet::from([0, 2, 6]));
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.neighborhood2(0).unwrap(), BTreeSet::from([0, 2]));
        // v in N2(v) iff v non-isolated
        let g = Graph::new(2, &[]).unwrap();
        assert!(!g.neighborhood2(0).unwrap().contains(&0));
    }

    #[test]
    fn product_unit_and_k2_k3() {
        let k3 = Graph::complete(3);
        let unit = Graph::looped_vertex();
        assert_eq!(k3.product(&unit), k3);
        let k2 = Graph::complete(2);
        let p = k2.product(&k3);
        let c6 = Graph::cycle(6).unwrap();
        assert!(find_isomorphism(&p, &c6).is_some());
    }

    #[test]
    fn quotient_c6_antipodal() {
        let c6 = Graph::cycle(6).unwrap();
        let classes = vec![vec![0, 3], vec![1, 4], vec![2, 5]];
        let (q, map) = c6.quotient_by_partition(&classes).unwrap();
        assert_eq!(q, Graph::cycle(3).unwrap());
        assert_eq!(map.apply(4), 1);
    }

    #[test]
    fn folds_of_c4() {
        let c4 = Graph::cycle(4).unwrap();
        let folds = c4.find_folds();
        assert!(folds.contains(&(0, 2)));
        assert_eq!(folds, vec![(0, 2), (1, 3), (2, 0), (3, 1)]);
        let (g1, m1) = c4.apply_fold(0, 2).unwrap();
        assert_eq!(g1, Graph::path(2));
        assert_eq!(m1.apply(0), m1.apply(2));
        // fold map fixes survivors
        assert_eq!(m1.apply(1), 0);
        assert_eq!(m1.apply(3), 2);
        // second fold reaches K2
        let (g2, _) = g1.apply_fold(0, 2).unwrap();
        assert!(find_isomorphism(&g2, &Graph::complete(2)).is_some());
    }

    #[test]
    fn bipartition_classes() {
        let c6 = Graph::cycle(6).unwrap();
        let b = c6.bipartition().unwrap();
        assert_eq!(b, vec![0, 1, 0, 1, 0, 1]);
        assert!(Graph::cycle(5).unwrap().bipartition().is_none());
        assert!(Graph::looped_vertex().bipartition().is_none());
        // two components, each class 0 at its smallest id
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.bipartition().unwrap(), vec![0, 1, 0, 1]);
    }

    #[test]
    fn components_and_connectivity() {
        let g = Graph::new(5, &[(3, 1), (0, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 4], vec![1, 3], vec![2]]);
        assert!(!Graph::edgeless(0).is_connected());
        assert!(Graph::edgeless(1).is_connected());
    }

    #[test]
    fn named_families() {
        assert_eq!(Graph::petersen().edge_count(), 15);
        assert!(Graph::petersen().vertices().all(|v| Graph::petersen().degree(v) == 3));
        assert_eq!(Graph::hypercube(3), Graph::boundary_grid(&[1, 1, 1], 0).unwrap());
        let grid = Graph::boundary_grid(&[2, 2], 0).unwrap();
        assert_eq!(grid.vertex_count(), 9);
        assert_eq!(grid.edge_count(), 12);
        assert!(Graph::cycle(2).is_err());
        assert!(Graph::boundary_grid(&[2, 2], 1).is_err());
        assert_eq!(Graph::looped_interval(2).edge_count(), 5);
    }

    #[test]
    fn homomorphism_rejected() {
        let k2 = Graph::complete(2);
        let err = GraphMap::new(k2.clone(), k2.clone(), vec![0, 0]);
        assert!(err.is_err());
    }

    #[test]
    fn subgraph_ops() {
        let c4 = Graph::cycle(4).unwrap();
        let arc = Subgraph::new(&c4, [0, 1, 2], [(0, 1), (1, 2)]).unwrap();
        let full = Subgraph::full(&c4);
        assert!(full.contains(&arc));
        let (g, ids) = arc.to_graph();
        assert_eq!(g, Graph::path(2));
        assert_eq!(ids, vec![0, 1, 2]);
    }
}
