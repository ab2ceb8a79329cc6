//! Paths in graphs, the two elementary moves generating 2-homotopy, and a
//! brute-force oracle that classifies all paths between two vertices up to
//! 2-homotopy within a length cutoff.
//!
//! The moves:
//! * move (i): delete (or insert) a backtrack — two consecutive steps
//!   `x -> u -> x`;
//! * move (ii'): replace the vertex at one interior position by another common
//!   neighbor of its two flanking vertices.
//!
//! Together these generate the same equivalence relation as the full
//! length-preserving homotopy move, and both preserve endpoint and length
//! parity. The oracle unions paths along both moves and reports equivalence
//! classes with canonical (shortest, then lexicographically least)
//! representatives.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A path: a vertex sequence with consecutive vertices adjacent (a loop edge
/// permits staying put). A single vertex is the constant path of length 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    verts: Vec<usize>,
}

impl Path {
    pub fn new(g: &Graph, verts: Vec<usize>) -> Result<Path> {
        if verts.is_empty() {
            return Err(Error::pre("a path has at least one vertex"));
        }
        for &v in &verts {
            if v >= g.vertex_count() {
                return Err(Error::InvalidVertex { vertex: v, count: g.vertex_count() });
            }
        }
        for w in verts.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::NotAdjacent { a: w[0], b: w[1] });
            }
        }
        Ok(Path { verts })
    }

    pub fn constant(g: &Graph, v: usize) -> Result<Path> {
        Path::new(g, vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    /// Number of edge steps.
    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false // a path always has at least the constant step
    }

    pub fn start(&self) -> usize {
        self.verts[0]
    }

    pub fn end(&self) -> usize {
        *self.verts.last().unwrap()
    }

    pub fn is_loop(&self) -> bool {
        self.start() == self.end()
    }

    /// Length parity (0 even, 1 odd) — a 2-homotopy invariant.
    pub fn parity(&self) -> u8 {
        (self.len() % 2) as u8
    }

    pub fn reverse(&self) -> Path {
        Path { verts: self.verts.iter().rev().copied().collect() }
    }
}

/// Concatenation: traverse `first`, then `second`. Errors unless
/// `first.end() == second.start()`.
pub fn compose(first: &Path, second: &Path) -> Result<Path> {
    if first.end() != second.start() {
        return Err(Error::NotComposable { end: first.end(), start: second.start() });
    }
    let mut verts = first.verts.clone();
    verts.extend_from_slice(&second.verts[1..]);
    Ok(Path { verts })
}

/// Conjugation transporting a loop along a path: for `gamma: v -> w` and a
/// loop `phi` at `v`, the loop `reverse(gamma) * phi * gamma` at `w`.
pub fn conjugate(gamma: &Path, phi: &Path) -> Result<Path> {
    if !phi.is_loop() || phi.start() != gamma.start() {
        return Err(Error::pre("conjugate needs a loop based at the start of gamma"));
    }
    compose(&compose(&gamma.reverse(), phi)?, gamma)
}

/// All paths obtained from `p` by one application of move (i) in the deleting
/// direction: for each position `x` with `p[x] == p[x+2]`, remove the two
/// vertices at positions `x+1`, `x+2`. Duplicates are dropped.
pub fn move_i_reduce(p: &Path) -> Vec<Path> {
    let v = &p.verts;
    let mut out: Vec<Path> = Vec::new();
    for x in 0..v.len().saturating_sub(2) {
        if v[x] == v[x + 2] {
            let mut w = v.clone();
            w.drain(x + 1..x + 3);
            let q = Path { verts: w };
            if !out.contains(&q) {
                out.push(q);
            }
        }
    }
    out
}

/// All paths differing from `p` in exactly one position by move (ii'): the
/// vertex at an interior position `x` is replaced by a different common
/// neighbor of `p[x-1]` and `p[x+1]`. Ordered by position, then new vertex.
pub fn move_ii_prime_neighbors(g: &Graph, p: &Path) -> Vec<Path> {
    let v = &p.verts;
    let mut out = Vec::new();
    for x in 1..v.len().saturating_sub(1) {
        for &u in g.neighbors(v[x - 1]).intersection(g.neighbors(v[x + 1])) {
            if u != v[x] {
                let mut w = v.clone();
                w[x] = u;
                out.push(Path { verts: w });
            }
        }
    }
    out
}

/// Leftmost-first repeated backtrack deletion until no backtrack remains.
pub fn reduce_backtracks(p: &Path) -> Path {
    let mut v = p.verts.clone();
    loop {
        let Some(x) = (1..v.len().saturating_sub(1)).find(|&x| v[x - 1] == v[x + 1]) else {
            return Path { verts: v };
        };
        v.drain(x..x + 2);
    }
}

/// Default cap on the number of paths the oracle may enumerate.
pub const DEFAULT_ORACLE_BUDGET: usize = 5_000_000;

/// Small union-find over dense indices.
struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // root at the smaller index keeps representatives deterministic
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi as usize] = lo;
        }
    }
}

/// Complete classification of all paths starting at one vertex, up to a
/// length cutoff, under moves (i) and (ii'). Shared by the endpoint-filtered
/// oracle and the truncated universal cover.
pub(crate) struct Classification {
    pub cutoff: usize,
    /// Every path from the start vertex with length <= cutoff, as vertex
    /// sequences, in breadth-first (length-major, extension-lexicographic)
    /// order.
    pub paths: Vec<Vec<usize>>,
    pub index: HashMap<Vec<usize>, u32>,
    /// Class id per path; classes are numbered by their canonical
    /// representative in (length, lexicographic) order.
    pub class_of_path: Vec<u32>,
    /// Canonical representative (path index) per class.
    pub class_rep: Vec<u32>,
    pub class_size: Vec<usize>,
    /// For paths of length <= cutoff-2: class id in the classification that
    /// only uses merges among such short paths. Used for stability reporting.
    pub short_class_of_path: Vec<Option<u32>>,
    pub short_class_count: usize,
}

impl Classification {
    pub fn end_of_class(&self, class: u32) -> usize {
        *self.paths[self.class_rep[class as usize] as usize].last().unwrap()
    }
}

pub(crate) fn classify_from(
    g: &Graph,
    start: usize,
    cutoff: usize,
    budget: usize,
) -> Result<Classification> {
    if start >= g.vertex_count() {
        return Err(Error::InvalidVertex { vertex: start, count: g.vertex_count() });
    }
    // enumerate all paths from `start` of length <= cutoff, shortest first
    let mut paths: Vec<Vec<usize>> = vec![vec![start]];
    let mut index: HashMap<Vec<usize>, u32> = HashMap::new();
    index.insert(paths[0].clone(), 0);
    let mut layer_start = 0;
    for _ in 0..cutoff {
        let layer_end = paths.len();
        for i in layer_start..layer_end {
            let last = *paths[i].last().unwrap();
            for &u in g.neighbors(last) {
                let mut p = paths[i].clone();
                p.push(u);
                if paths.len() >= budget {
                    return Err(Error::BudgetExceeded { found: paths.len() + 1, budget });
                }
                index.insert(p.clone(), paths.len() as u32);
                paths.push(p);
            }
        }
        layer_start = layer_end;
    }

    // union along both moves; a second structure restricted to short paths
    // (length <= cutoff - 2) supports the stability report
    let n = paths.len();
    let mut uf = UnionFind::new(n);
    let mut uf_short = UnionFind::new(n);
    let short_cut = cutoff.saturating_sub(2);
    for i in 0..n {
        let p = &paths[i];
        let l = p.len() - 1;
        let is_short = l <= short_cut;
        // move (i): delete a backtrack
        for x in 0..p.len().saturating_sub(2) {
            if p[x] == p[x + 2] {
                let mut q = p.clone();
                q.drain(x + 1..x + 3);
                let j = index[&q];
                uf.union(i as u32, j);
                if is_short {
                    uf_short.union(i as u32, j);
                }
            }
        }
        // move (ii'): substitute one interior vertex
        for x in 1..p.len().saturating_sub(1) {
            for &u in g.neighbors(p[x - 1]).intersection(g.neighbors(p[x + 1])) {
                if u != p[x] {
                    let mut q = p.clone();
                    q[x] = u;
                    let j = index[&q];
                    uf.union(i as u32, j);
                    if is_short {
                        uf_short.union(i as u32, j);
                    }
                }
            }
        }
    }

    // canonical representative per root: min by (length, lexicographic).
    // paths are enumerated in exactly that order, so the smallest path index
    // in a class is its canonical representative.
    let mut rep_of_root: HashMap<u32, u32> = HashMap::new();
    for i in 0..n as u32 {
        let r = uf.find(i);
        rep_of_root.entry(r).or_insert(i); // first hit is minimal
    }
    let mut reps: Vec<(u32, u32)> = rep_of_root.iter().map(|(&r, &rep)| (rep, r)).collect();
    reps.sort_unstable();
    let class_rep: Vec<u32> = reps.iter().map(|&(rep, _)| rep).collect();
    let class_of_root: HashMap<u32, u32> =
        reps.iter().enumerate().map(|(c, &(_, r))| (r, c as u32)).collect();
    let mut class_of_path = vec![0u32; n];
    let mut class_size = vec![0usize; class_rep.len()];
    for i in 0..n as u32 {
        let c = class_of_root[&uf.find(i)];
        class_of_path[i as usize] = c;
        class_size[c as usize] += 1;
    }

    let mut short_roots: HashMap<u32, u32> = HashMap::new();
    let mut short_class_of_path: Vec<Option<u32>> = vec![None; n];
    for i in 0..n as u32 {
        if paths[i as usize].len() - 1 <= short_cut {
            let r = uf_short.find(i);
            let next = short_roots.len() as u32;
            let c = *short_roots.entry(r).or_insert(next);
            short_class_of_path[i as usize] = Some(c);
        }
    }

    Ok(Classification {
        cutoff,
        paths,
        index,
        class_of_path,
        class_rep,
        class_size,
        short_class_of_path,
        short_class_count: short_roots.len(),
    })
}

/// One 2-homotopy class in an oracle report.
#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub representative: Path,
    pub parity: u8,
    pub size: usize,
}

/// Oracle result: the 2-homotopy classes of paths `start -> end` with length
/// at most `cutoff`, with canonical representatives.
pub struct ClassTable {
    pub start: usize,
    pub end: usize,
    pub cutoff: usize,
    pub classes: Vec<ClassInfo>,
    /// True when the classes visible at cutoff-2 already tell the full story:
    /// the number of classes at cutoff `L` having a representative of length
    /// <= L-2 equals the number of classes of the L-2 run.
    pub stable: bool,
    lookup: HashMap<Vec<usize>, usize>,
}

impl ClassTable {
    /// Class index of a path (by its vertex sequence), if it was enumerated.
    pub fn class_of(&self, p: &Path) -> Option<usize> {
        self.lookup.get(p.vertices()).copied()
    }
}

/// Classify all paths `start -> end` of length at most `cutoff` up to
/// 2-homotopy. Exceeding `budget` enumerated paths is an error, not a
/// truncation.
pub fn oracle_classes(
    g: &Graph,
    start: usize,
    end: usize,
    cutoff: usize,
    budget: usize,
) -> Result<ClassTable> {
    if end >= g.vertex_count() {
        return Err(Error::InvalidVertex { vertex: end, count: g.vertex_count() });
    }
    let cls = classify_from(g, start, cutoff, budget)?;
    // classes restricted to the requested endpoint, in representative order
    let mut keep: Vec<u32> = (0..cls.class_rep.len() as u32)
        .filter(|&c| cls.end_of_class(c) == end)
        .collect();
    keep.sort_unstable(); // already ordered by construction; keep explicit
    let class_out: HashMap<u32, usize> =
        keep.iter().enumerate().map(|(o, &c)| (c, o)).collect();
    let classes: Vec<ClassInfo> = keep
        .iter()
        .map(|&c| {
            let rep = &cls.paths[cls.class_rep[c as usize] as usize];
            ClassInfo {
                representative: Path { verts: rep.clone() },
                parity: ((rep.len() - 1) % 2) as u8,
                size: cls.class_size[c as usize],
            }
        })
        .collect();
    // stability: compare against the cutoff-2 classification
    let short_cut = cutoff.saturating_sub(2);
    let full_with_short_rep = keep
        .iter()
        .filter(|&&c| cls.paths[cls.class_rep[c as usize] as usize].len() - 1 <= short_cut)
        .count();
    let mut short_seen = std::collections::HashSet::new();
    for (i, sc) in cls.short_class_of_path.iter().enumerate() {
        if let Some(sc) = sc {
            if *cls.paths[i].last().unwrap() == end {
                short_seen.insert(*sc);
            }
        }
    }
    let stable = full_with_short_rep == short_seen.len();
    let mut lookup = HashMap::new();
    for (i, p) in cls.paths.iter().enumerate() {
        if p.last() == Some(&end) {
            lookup.insert(p.clone(), class_out[&cls.class_of_path[i]]);
        }
    }
    Ok(ClassTable { start, end, cutoff, classes, stable, lookup })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(g: &Graph, v: &[usize]) -> Path {
        Path::new(g, v.to_vec()).unwrap()
    }

    #[test]
    fn path_validation_and_ops() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(Path::new(&c5, vec![0, 2]).is_err());
        assert!(Path::new(&c5, vec![]).is_err());
        let a = p(&c5, &[0, 1, 2]);
        let b = p(&c5, &[2, 3, 4, 0]);
        let ab = compose(&a, &b).unwrap();
        assert_eq!(ab.vertices(), &[0, 1, 2, 3, 4, 0]);
        assert_eq!(ab.parity(), 1);
        assert!(compose(&b, &a).is_err());
        assert_eq!(a.reverse().vertices(), &[2, 1, 0]);
        // loop edges are ordinary steps
        let li = Graph::looped_interval(1);
        assert_eq!(p(&li, &[0, 0, 1]).len(), 2);
    }

    #[test]
    fn moves() {
        let k4 = Graph::complete(4);
        let r = move_i_reduce(&p(&k4, &[0, 1, 0]));
        assert_eq!(r, vec![p(&k4, &[0])]);
        // 0-1-2 in K4: position 1 can become 3 (common neighbor of 0 and 2)
        let vs = move_ii_prime_neighbors(&k4, &p(&k4, &[0, 1, 2]));
        assert_eq!(vs, vec![p(&k4, &[0, 3, 2])]);
        // endpoints never move
        let c5 = Graph::cycle(5).unwrap();
        assert!(move_ii_prime_neighbors(&c5, &p(&c5, &[0, 1, 2])).is_empty());
        assert_eq!(
            reduce_backtracks(&p(&k4, &[0, 1, 2, 1, 3])).vertices(),
            &[0, 1, 3]
        );
        assert_eq!(reduce_backtracks(&p(&k4, &[0, 1, 0, 1, 0])).vertices(), &[0]);
    }

    #[test]
    fn conjugate_moves_basepoint() {
        let c5 = Graph::cycle(5).unwrap();
        let gamma = p(&c5, &[0, 1]);
        let phi = p(&c5, &[0, 1, 2, 3, 4, 0]);
        let out = conjugate(&gamma, &phi).unwrap();
        assert_eq!(out.start(), 1);
        assert_eq!(out.end(), 1);
        assert_eq!(out.len(), phi.len() + 2);
    }

    #[test]
    fn oracle_k2_single_class() {
        let k2 = Graph::complete(2);
        let t = oracle_classes(&k2, 0, 0, 8, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(t.classes.len(), 1);
        assert_eq!(t.classes[0].representative.vertices(), &[0]);
        assert!(t.stable);
    }

    #[test]
    fn oracle_k4_two_classes() {
        let k4 = Graph::complete(4);
        let t = oracle_classes(&k4, 0, 0, 6, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(t.classes.len(), 2);
        assert_eq!(t.classes[0].representative.len(), 0);
        assert_eq!(t.classes[1].representative.len(), 3);
        assert_eq!(t.classes[1].parity, 1);
        assert!(t.stable);
    }

    #[test]
    fn oracle_c5_winding_classes() {
        let c5 = Graph::cycle(5).unwrap();
        let t = oracle_classes(&c5, 0, 0, 12, DEFAULT_ORACLE_BUDGET).unwrap();
        let lens: Vec<usize> = t.classes.iter().map(|c| c.representative.len()).collect();
        assert_eq!(lens, vec![0, 5, 5, 10, 10]);
        assert!(t.stable);
        // winding +-1 classes have straight-line representatives
        assert_eq!(t.classes[1].representative.vertices(), &[0, 1, 2, 3, 4, 0]);
        assert_eq!(t.classes[2].representative.vertices(), &[0, 4, 3, 2, 1, 0]);
    }

    #[test]
    fn oracle_c4_collapses() {
        let c4 = Graph::cycle(4).unwrap();
        let t = oracle_classes(&c4, 0, 0, 10, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(t.classes.len(), 1);
        assert!(t.stable);
    }

    #[test]
    fn oracle_budget_is_an_error() {
        let k4 = Graph::complete(4);
        match oracle_classes(&k4, 0, 0, 8, 100) {
            Err(Error::BudgetExceeded { budget: 100, .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn oracle_parity_invariance() {
        // no class mixes parities: check via class lookup of both move images
        let k4 = Graph::complete(4);
        let t = oracle_classes(&k4, 0, 0, 6, DEFAULT_ORACLE_BUDGET).unwrap();
        let tri = p(&k4, &[0, 1, 2, 0]);
        let c = t.class_of(&tri).unwrap();
        assert_eq!(t.classes[c].parity, 1);
        for q in move_ii_prime_neighbors(&k4, &tri) {
            assert_eq!(t.class_of(&q), Some(c));
        }
    }

    #[test]
    fn oracle_class_lookup_merges_composites() {
        let c5 = Graph::cycle(5).unwrap();
        let t = oracle_classes(&c5, 0, 0, 12, DEFAULT_ORACLE_BUDGET).unwrap();
        let once = p(&c5, &[0, 1, 2, 3, 4, 0]);
        let back_forth = compose(&p(&c5, &[0, 1]), &p(&c5, &[1, 0])).unwrap();
        let padded = compose(&once, &back_forth).unwrap();
        assert_eq!(t.class_of(&once), t.class_of(&padded));
        let twice = compose(&once, &once).unwrap();
        assert_ne!(t.class_of(&once), t.class_of(&twice));
    }
}
