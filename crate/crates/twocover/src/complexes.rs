//! Neighborhood complexes, multihomomorphisms and Hom posets, homotopies of
//! graph maps, and the checks tying covers of graphs to coverings of these
//! derived objects.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMap};
use crate::homotopy::Path;
use crate::simplicial::{Poset, SimplicialComplex};

/// The neighborhood complex: one potential facet `N(v)` per non-isolated
/// vertex `v`, reduced to the maximal ones. A loop at `v` puts `v` into its
/// own neighborhood.
pub fn neighborhood_complex(g: &Graph) -> SimplicialComplex {
    SimplicialComplex::from_facets(
        g.vertices().filter(|&v| g.degree(v) > 0).map(|v| g.neighbors(v).clone()).collect(),
    )
}

/// A multihomomorphism `T -> G`: a nonempty set of vertices of `G` per
/// vertex of `T` such that every pair of sets over an edge of `T` is
/// completely joined in `G`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Multihom {
    values: Vec<BTreeSet<usize>>,
}

impl Multihom {
    pub fn new(t: &Graph, g: &Graph, values: Vec<BTreeSet<usize>>) -> Result<Multihom> {
        if values.len() != t.vertex_count() {
            return Err(Error::GraphMismatch(format!(
                "{} value sets for {} vertices",
                values.len(),
                t.vertex_count()
            )));
        }
        for (x, s) in values.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::pre(format!("empty value set at vertex {x}")));
            }
            for &u in s {
                if u >= g.vertex_count() {
                    return Err(Error::InvalidVertex { vertex: u, count: g.vertex_count() });
                }
            }
        }
        for (x, y) in t.edges() {
            for &u in &values[x] {
                for &v in &values[y] {
                    if !g.has_edge(u, v) {
                        return Err(Error::NotAdjacent { a: u, b: v });
                    }
                }
            }
        }
        Ok(Multihom { values })
    }

    /// The singleton multihom of a graph homomorphism.
    pub fn of_map(f: &GraphMap) -> Multihom {
        Multihom {
            values: f.assignment().iter().map(|&v| BTreeSet::from([v])).collect(),
        }
    }

    pub fn values(&self) -> &[BTreeSet<usize>] {
        &self.values
    }

    pub fn at(&self, x: usize) -> &BTreeSet<usize> {
        &self.values[x]
    }

    /// Pointwise containment — the order of the Hom poset.
    pub fn leq(&self, other: &Multihom) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a.is_subset(b))
    }

    pub fn is_singleton(&self) -> bool {
        self.values.iter().all(|s| s.len() == 1)
    }

    /// Extract the graph homomorphism of an all-singleton multihom.
    pub fn to_map(&self, t: &Graph, g: &Graph) -> Result<GraphMap> {
        if !self.is_singleton() {
            return Err(Error::pre("multihom has a non-singleton value"));
        }
        GraphMap::new(
            t.clone(),
            g.clone(),
            self.values.iter().map(|s| *s.first().unwrap()).collect(),
        )
    }

    /// Compose with a graph homomorphism on the target side.
    pub fn push_forward(&self, p: &GraphMap) -> Multihom {
        Multihom {
            values: self
                .values
                .iter()
                .map(|s| s.iter().map(|&v| p.apply(v)).collect())
                .collect(),
        }
    }
}

/// Default cap on the number of multihoms enumerated by `hom_poset`.
pub const DEFAULT_HOM_BUDGET: usize = 200_000;

/// The Hom poset: all multihoms `T -> G` ordered by pointwise containment.
pub struct HomPoset {
    pub elements: Vec<Multihom>,
    pub poset: Poset,
}

impl HomPoset {
    /// Index of a multihom among the elements.
    pub fn index_of(&self, m: &Multihom) -> Option<usize> {
        self.elements.binary_search(m).ok()
    }
}

/// Enumerate every multihom `T -> G`. Domains are first pruned to
/// arc-consistency; the remaining search assigns one nonempty value set per
/// vertex of `T`, checked against all previously assigned neighbors. Errors
/// when more than `budget` multihoms exist.
pub fn hom_poset(t: &Graph, g: &Graph, budget: usize) -> Result<HomPoset> {
    if t.vertex_count() == 0 {
        return Err(Error::pre("the test graph is empty"));
    }
    // arc consistency for singletons: u stays in dom(x) while every
    // T-neighbor of x still offers a G-neighbor of u
    let n = t.vertex_count();
    let mut dom: Vec<BTreeSet<usize>> = vec![g.vertices().collect(); n];
    loop {
        let mut changed = false;
        for x in 0..n {
            let keep: BTreeSet<usize> = dom[x]
                .iter()
                .copied()
                .filter(|&u| {
                    t.neighbors(x)
                        .iter()
                        .all(|&y| dom[y].iter().any(|&v| g.has_edge(u, v)))
                })
                .collect();
            if keep.len() != dom[x].len() {
                dom[x] = keep;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let mut elements: Vec<Multihom> = Vec::new();
    let mut partial: Vec<BTreeSet<usize>> = Vec::new();
    fn assign(
        t: &Graph,
        g: &Graph,
        dom: &[BTreeSet<usize>],
        partial: &mut Vec<BTreeSet<usize>>,
        elements: &mut Vec<Multihom>,
        budget: usize,
    ) -> Result<()> {
        let x = partial.len();
        if x == t.vertex_count() {
            if elements.len() >= budget {
                return Err(Error::BudgetExceeded { found: elements.len() + 1, budget });
            }
            elements.push(Multihom { values: partial.clone() });
            return Ok(());
        }
        let base: Vec<usize> = dom[x].iter().copied().collect();
        for mask in 1u64..(1u64 << base.len()) {
            let s: BTreeSet<usize> = base
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let ok = t.neighbors(x).iter().all(|&y| {
                if y > x {
                    return true; // not yet assigned
                }
                let assigned: &BTreeSet<usize> = if y == x { &s } else { &partial[y] };
                s.iter().all(|&u| assigned.iter().all(|&v| g.has_edge(u, v)))
            });
            if ok {
                partial.push(s);
                assign(t, g, dom, partial, elements, budget)?;
                partial.pop();
            }
        }
        Ok(())
    }
    if dom.iter().all(|d| !d.is_empty()) {
        assign(t, g, &dom, &mut partial, &mut elements, budget)?;
    }
    elements.sort();

    let m = elements.len();
    let mut leq = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            leq[i * m + j] = elements[i].leq(&elements[j]);
        }
    }
    Ok(HomPoset { elements, poset: Poset::new(m, leq)? })
}

/// The induced index map on Hom posets of a target-side homomorphism:
/// position of `p` composed with each source element among the target
/// elements.
pub fn induced_hom_map(p: &GraphMap, source: &HomPoset, target: &HomPoset) -> Result<Vec<usize>> {
    source
        .elements
        .iter()
        .map(|m| {
            let img = m.push_forward(p);
            target.index_of(&img).ok_or_else(|| {
                Error::pre("pushforward of a multihom is missing from the target poset")
            })
        })
        .collect()
}

/// Result of checking that a map decomposes the preimage of a star.
#[derive(Clone, Debug)]
pub struct StarReport {
    pub vertex: usize,
    pub fiber: Vec<usize>,
    /// The preimage of the star equals the union of the fiber stars.
    pub equal: bool,
    /// The fiber stars are pairwise vertex-disjoint.
    pub disjoint: bool,
}

impl StarReport {
    pub fn passes(&self) -> bool {
        self.equal && self.disjoint
    }
}

/// Check that the preimage under `p` of the closed star of `v` in the target
/// neighborhood complex is the disjoint union of the closed stars of the
/// fiber vertices in the source neighborhood complex.
pub fn star_decomposition_check(p: &GraphMap, v: usize) -> Result<StarReport> {
    if v >= p.target().vertex_count() {
        return Err(Error::InvalidVertex { vertex: v, count: p.target().vertex_count() });
    }
    let ng = neighborhood_complex(p.source());
    let nh = neighborhood_complex(p.target());
    let star_simplices = nh.star(v).all_simplices();
    let preimage: BTreeSet<BTreeSet<usize>> = ng
        .all_simplices()
        .into_iter()
        .filter(|s| star_simplices.contains(&s.iter().map(|&x| p.apply(x)).collect()))
        .collect();
    let fiber = p.fiber(v);
    let stars: Vec<BTreeSet<BTreeSet<usize>>> =
        fiber.iter().map(|&w| ng.star(w).all_simplices()).collect();
    let mut union: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for s in &stars {
        union.extend(s.iter().cloned());
    }
    let mut disjoint = true;
    for i in 0..stars.len() {
        for j in i + 1..stars.len() {
            let vi: BTreeSet<usize> = stars[i].iter().flatten().copied().collect();
            let vj: BTreeSet<usize> = stars[j].iter().flatten().copied().collect();
            if !vi.is_disjoint(&vj) {
                disjoint = false;
            }
        }
    }
    Ok(StarReport { vertex: v, fiber, equal: union == preimage, disjoint })
}

/// Result of the unique-lifting check for order-preserving maps of posets.
#[derive(Clone, Debug)]
pub struct PosetCoveringReport {
    pub holds: bool,
    /// `(x, y, count)` where `y <= f(x)` has `count != 1` preimages below `x`.
    pub down_failures: Vec<(usize, usize, usize)>,
    /// `(x, y, count)` where `y >= f(x)` has `count != 1` preimages above `x`.
    pub up_failures: Vec<(usize, usize, usize)>,
}

/// Check the poset covering property of an order-preserving map `f: P -> Q`:
/// for every `x` in `P` and every `y <= f(x)` there is exactly one `x' <= x`
/// with `f(x') = y`, and dually above.
pub fn poset_covering_check(p: &Poset, q: &Poset, f: &[usize]) -> Result<PosetCoveringReport> {
    if f.len() != p.len() {
        return Err(Error::pre("map length differs from poset size"));
    }
    for &y in f {
        if y >= q.len() {
            return Err(Error::pre(format!("image {y} out of range")));
        }
    }
    for x in 0..p.len() {
        for x2 in 0..p.len() {
            if p.leq(x, x2) && !q.leq(f[x], f[x2]) {
                return Err(Error::pre(format!("map is not order-preserving at ({x}, {x2})")));
            }
        }
    }
    let mut down_failures = Vec::new();
    let mut up_failures = Vec::new();
    for x in 0..p.len() {
        for y in 0..q.len() {
            if q.leq(y, f[x]) {
                let count = (0..p.len()).filter(|&x2| p.leq(x2, x) && f[x2] == y).count();
                if count != 1 {
                    down_failures.push((x, y, count));
                }
            }
            if q.leq(f[x], y) {
                let count = (0..p.len()).filter(|&x2| p.leq(x, x2) && f[x2] == y).count();
                if count != 1 {
                    up_failures.push((x, y, count));
                }
            }
        }
    }
    Ok(PosetCoveringReport {
        holds: down_failures.is_empty() && up_failures.is_empty(),
        down_failures,
        up_failures,
    })
}

/// Turn an even loop in the graph into an edge loop in the neighborhood
/// complex: keep the even positions. Consecutive kept vertices share the
/// dropped odd vertex as a common neighbor, so each pair spans a simplex.
pub fn phi_map(g: &Graph, p: &Path) -> Result<Vec<usize>> {
    if !p.is_loop() {
        return Err(Error::pre("phi expects a loop"));
    }
    if p.parity() != 0 {
        return Err(Error::pre("phi expects an even loop"));
    }
    let verts = p.vertices();
    let out: Vec<usize> = verts.iter().step_by(2).copied().collect();
    for w in out.windows(2) {
        let common = g.neighbors(w[0]).intersection(g.neighbors(w[1])).next();
        debug_assert!(common.is_some());
        let _ = common;
    }
    Ok(out)
}

/// Turn an edge loop in the neighborhood complex into an even loop in the
/// graph: interleave each consecutive pair with its smallest common
/// neighbor. Errors when a pair spans no simplex.
pub fn psi_map(g: &Graph, seq: &[usize]) -> Result<Path> {
    if seq.len() < 2 || seq.first() != seq.last() {
        return Err(Error::pre("psi expects a closed vertex sequence"));
    }
    let mut verts = vec![seq[0]];
    for w in seq.windows(2) {
        let common = g
            .neighbors(w[0])
            .intersection(g.neighbors(w[1]))
            .next()
            .copied()
            .ok_or_else(|| {
                Error::pre(format!("vertices {} and {} span no simplex", w[0], w[1]))
            })?;
        verts.push(common);
        verts.push(w[1]);
    }
    Path::new(g, verts)
}

/// A homotopy of graph maps `T -> H`: a sequence of homomorphisms where each
/// consecutive pair is cross-adjacent (all four mixed images over every edge
/// of `T` are adjacent, and over a loop the two levels are adjacent).
#[derive(Clone, Debug)]
pub struct Homotopy {
    levels: Vec<GraphMap>,
}

impl Homotopy {
    pub fn new(levels: Vec<GraphMap>) -> Result<Homotopy> {
        if levels.is_empty() {
            return Err(Error::pre("a homotopy has at least one level"));
        }
        let (s, t) = (levels[0].source(), levels[0].target());
        for l in &levels[1..] {
            if l.source() != s || l.target() != t {
                return Err(Error::GraphMismatch("homotopy levels over different graphs".into()));
            }
        }
        for k in 0..levels.len() - 1 {
            let (f, g2) = (&levels[k], &levels[k + 1]);
            for (x, y) in s.edges() {
                for (a, b) in [(x, y), (y, x)] {
                    if !t.has_edge(f.apply(a), g2.apply(b)) {
                        return Err(Error::NotAdjacent { a: f.apply(a), b: g2.apply(b) });
                    }
                }
            }
        }
        Ok(Homotopy { levels })
    }

    pub fn levels(&self) -> &[GraphMap] {
        &self.levels
    }

    pub fn first(&self) -> &GraphMap {
        &self.levels[0]
    }

    pub fn last(&self) -> &GraphMap {
        self.levels.last().unwrap()
    }

    /// The multihom of two consecutive levels: `x` goes to the set of its
    /// images at both levels.
    pub fn step_multihom(&self, k: usize, t: &Graph, g: &Graph) -> Result<Multihom> {
        let values = self.levels[k]
            .assignment()
            .iter()
            .zip(self.levels[k + 1].assignment())
            .map(|(&a, &b)| BTreeSet::from([a, b]))
            .collect();
        Multihom::new(t, g, values)
    }
}

/// All-to-one search for the index map realized by restriction: find, for
/// each element of the source poset, its position in the target after
/// composing with `p`; convenience wrapper bundling poset covering data.
pub struct HomCoveringData {
    pub source: HomPoset,
    pub target: HomPoset,
    pub index_map: Vec<usize>,
}

/// Build Hom posets of `t` into source and target of `p` and the induced map.
pub fn hom_covering_data(t: &Graph, p: &GraphMap, budget: usize) -> Result<HomCoveringData> {
    let source = hom_poset(t, p.source(), budget)?;
    let target = hom_poset(t, p.target(), budget)?;
    let index_map = induced_hom_map(p, &source, &target)?;
    Ok(HomCoveringData { source, target, index_map })
}
