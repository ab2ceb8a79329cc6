//! Finite presentations of the loop group of a graph, read off the square
//! complex: the 2-dimensional CW complex with the graph as 1-skeleton, a
//! 2-cell for every nondegenerate square class, and a disk attached along
//! `l l` for every loop edge `l`.
//!
//! Also here: the even-index subgroup of length-even classes (computed by
//! coset rewriting over the parity map), bounded search for decomposing a
//! square across a cover by subgraphs, and the gluing presentation that
//! assembles the group of a union from the groups of the parts.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Subgraph};
use crate::homology::{AbelianGroup, IntMatrix};

/// A square: a closed 4-walk `s0 s1 s2 s3` (indices mod 4). Stationary steps
/// require a loop edge. Degenerate means an opposite pair coincides.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Square {
    pub corners: [usize; 4],
}

impl Square {
    pub fn new(g: &Graph, corners: [usize; 4]) -> Result<Square> {
        for i in 0..4 {
            let (a, b) = (corners[i], corners[(i + 1) % 4]);
            if a >= g.vertex_count() {
                return Err(Error::InvalidVertex { vertex: a, count: g.vertex_count() });
            }
            if !g.has_edge(a, b) {
                return Err(Error::NotAdjacent { a, b });
            }
        }
        Ok(Square { corners })
    }

    pub fn is_degenerate(&self) -> bool {
        let c = &self.corners;
        c[0] == c[2] || c[1] == c[3]
    }

    /// Lexicographically least corner tuple over the eight dihedral
    /// relabelings (rotations and reflections of the 4-cycle).
    pub fn canonical(&self) -> Square {
        let c = &self.corners;
        let mut best = *c;
        for k in 0..4usize {
            let rot = [c[k], c[(k + 1) % 4], c[(k + 2) % 4], c[(k + 3) % 4]];
            let refl = [c[k], c[(k + 3) % 4], c[(k + 2) % 4], c[(k + 1) % 4]];
            if rot < best {
                best = rot;
            }
            if refl < best {
                best = refl;
            }
        }
        Square { corners: best }
    }

    /// The four sides as unordered vertex pairs (lo, hi); a stationary step
    /// appears as a loop pair (v, v).
    pub fn sides(&self) -> [(usize, usize); 4] {
        let c = &self.corners;
        let mut out = [(0, 0); 4];
        for i in 0..4 {
            let (a, b) = (c[i], c[(i + 1) % 4]);
            out[i] = (a.min(b), a.max(b));
        }
        out
    }
}

/// All nondegenerate squares of `g` up to dihedral symmetry, canonical forms
/// in ascending order.
pub fn enumerate_squares(g: &Graph) -> Vec<Square> {
    let mut seen: BTreeSet<[usize; 4]> = BTreeSet::new();
    for s0 in g.vertices() {
        for &s1 in g.neighbors(s0) {
            for &s2 in g.neighbors(s1) {
                if s2 == s0 {
                    continue;
                }
                for &s3 in g.neighbors(s2) {
                    if s3 == s1 || !g.has_edge(s3, s0) {
                        continue;
                    }
                    seen.insert(Square { corners: [s0, s1, s2, s3] }.canonical().corners);
                }
            }
        }
    }
    seen.into_iter().map(|corners| Square { corners }).collect()
}

/// The squares of `g` whose corners and sides all lie in the subgraph, with
/// corners in ambient vertex ids.
pub fn squares_of_subgraph(sub: &Subgraph) -> Vec<Square> {
    let (h, ids) = sub.to_graph();
    // `ids` is ascending, so relabeling preserves lexicographic order and
    // canonical forms map to canonical forms
    enumerate_squares(&h)
        .into_iter()
        .map(|s| Square { corners: s.corners.map(|v| ids[v]) })
        .collect()
}

/// One letter of a word: a generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn plus(gen: usize) -> Letter {
        Letter { gen, inv: false }
    }

    pub fn minus(gen: usize) -> Letter {
        Letter { gen, inv: true }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, inv: !self.inv }
    }

    /// Signed 1-based integer form: generator `i` is `i+1`, inverses negative.
    pub fn signed(self) -> i64 {
        let v = self.gen as i64 + 1;
        if self.inv { -v } else { v }
    }
}

pub type Word = Vec<Letter>;

pub fn word_inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Cancel adjacent inverse pairs until none remain.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last().is_some_and(|p| *p == l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// What a generator stands for.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GenLabel {
    /// A non-tree edge, oriented from the smaller to the larger endpoint.
    Edge(usize, usize),
    /// A loop edge at a vertex.
    Loop(usize),
    /// A derived generator (subgroup or gluing construction).
    Named(String),
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenLabel::Edge(a, b) => write!(f, "e{a}_{b}"),
            GenLabel::Loop(v) => write!(f, "l{v}"),
            GenLabel::Named(s) => write!(f, "{s}"),
        }
    }
}

/// A finite group presentation: labeled generators and relator words.
#[derive(Clone, Debug)]
pub struct GroupPresentation {
    labels: Vec<GenLabel>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(labels: Vec<GenLabel>, relators: Vec<Word>) -> Result<GroupPresentation> {
        let n = labels.len();
        for r in &relators {
            for l in r {
                if l.gen >= n {
                    return Err(Error::pre(format!(
                        "letter refers to generator {} of {}",
                        l.gen, n
                    )));
                }
            }
        }
        Ok(GroupPresentation { labels, relators })
    }

    pub fn generator_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[GenLabel] {
        &self.labels
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Exponent-sum matrix of the relators (one row per relator).
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.relators.len(), self.labels.len());
        for (i, r) in self.relators.iter().enumerate() {
            for l in r {
                m.add_to(i, l.gen, &if l.inv { (-1).into() } else { 1.into() });
            }
        }
        m
    }

    /// The abelianized group.
    pub fn abelianization(&self) -> AbelianGroup {
        AbelianGroup::from_relations(self.labels.len(), &self.relation_matrix())
    }
}

/// Presentation of the loop group at a basepoint, together with the parity
/// of each generator and the spanning-tree data needed to rewrite walks.
#[derive(Clone, Debug)]
pub struct CwPresentation {
    pub presentation: GroupPresentation,
    /// Length parity of each generator's defining loop.
    pub parity: Vec<u8>,
    pub basepoint: usize,
    /// Spanning-tree parent per vertex (basepoint is its own parent;
    /// `usize::MAX` outside the basepoint's component).
    pub tree_parent: Vec<usize>,
    pub tree_depth: Vec<usize>,
    /// Generator index per non-tree edge or loop, keyed by (lo, hi).
    pub edge_gen: BTreeMap<(usize, usize), usize>,
}

impl CwPresentation {
    fn tree_path_to(&self, v: usize) -> Vec<usize> {
        let mut up = vec![v];
        let mut x = v;
        while self.tree_parent[x] != x {
            x = self.tree_parent[x];
            up.push(x);
        }
        up.reverse();
        up
    }

    /// The defining loop of a generator as a vertex sequence from the
    /// basepoint: out along the tree, across the edge (or around the loop),
    /// back along the tree.
    pub fn generator_loop_verts(&self, gen: usize) -> Vec<usize> {
        match self.presentation.labels()[gen] {
            GenLabel::Edge(a, b) => {
                let mut w = self.tree_path_to(a);
                let back = self.tree_path_to(b);
                w.extend(back.iter().rev());
                w
            }
            GenLabel::Loop(v) => {
                let out = self.tree_path_to(v);
                let mut w = out.clone();
                w.push(v); // the stationary loop step
                w.extend(out.iter().rev().skip(1));
                w
            }
            GenLabel::Named(_) => unreachable!("tree presentations label by edges"),
        }
    }

    /// Rewrite a closed walk based at the basepoint as a word: tree steps
    /// vanish, a non-tree edge contributes its generator (sign by direction),
    /// and a stationary step contributes its loop generator.
    pub fn rewrite_closed_walk(&self, g: &Graph, walk: &[usize]) -> Result<Word> {
        if walk.first() != Some(&self.basepoint) || walk.last() != Some(&self.basepoint) {
            return Err(Error::pre("walk must start and end at the basepoint"));
        }
        let mut word = Word::new();
        for s in walk.windows(2) {
            let (x, y) = (s[0], s[1]);
            if !g.has_edge(x, y) {
                return Err(Error::NotAdjacent { a: x, b: y });
            }
            let key = (x.min(y), x.max(y));
            if x != y && (self.tree_parent[x] == y || self.tree_parent[y] == x) {
                continue; // tree edge
            }
            let gen = *self.edge_gen.get(&key).ok_or_else(|| {
                Error::pre(format!("step ({x}, {y}) leaves the basepoint's component"))
            })?;
            if x == y {
                word.push(Letter::plus(gen));
            } else {
                word.push(Letter { gen, inv: x > y });
            }
        }
        Ok(free_reduce(&word))
    }
}

/// Presentation of the loop group of `g` at `base` from the square complex.
///
/// A breadth-first spanning tree of the basepoint's component is collapsed;
/// the generators are the non-tree edges (oriented small-to-large) and one
/// generator per loop edge. Relators: the boundary word of every
/// nondegenerate square class in the component, plus `l l` per loop
/// generator. A stationary step always contributes the loop generator
/// positively; since `l l = 1`, the orientation is immaterial.
pub fn cw_presentation(g: &Graph, base: usize) -> Result<CwPresentation> {
    if base >= g.vertex_count() {
        return Err(Error::InvalidVertex { vertex: base, count: g.vertex_count() });
    }
    let (tree_parent, tree_depth) = g.bfs_tree(base);
    let in_comp = |v: usize| tree_parent[v] != usize::MAX;

    let mut labels = Vec::new();
    let mut parity = Vec::new();
    let mut edge_gen = BTreeMap::new();
    for (a, b) in g.edges() {
        if !in_comp(a) || a == b {
            continue;
        }
        if tree_parent[a] == b || tree_parent[b] == a {
            continue;
        }
        edge_gen.insert((a, b), labels.len());
        labels.push(GenLabel::Edge(a, b));
        parity.push(((tree_depth[a] + tree_depth[b] + 1) % 2) as u8);
    }
    let mut loop_gens = Vec::new();
    for v in g.vertices() {
        if g.has_loop(v) && in_comp(v) {
            edge_gen.insert((v, v), labels.len());
            loop_gens.push(labels.len());
            labels.push(GenLabel::Loop(v));
            parity.push(1);
        }
    }

    let scaffold = CwPresentation {
        presentation: GroupPresentation::new(labels.clone(), Vec::new())?,
        parity: parity.clone(),
        basepoint: base,
        tree_parent: tree_parent.clone(),
        tree_depth: tree_depth.clone(),
        edge_gen: edge_gen.clone(),
    };

    let mut relators = Vec::new();
    for sq in enumerate_squares(g) {
        if !in_comp(sq.corners[0]) {
            continue;
        }
        let mut word = Word::new();
        let c = sq.corners;
        for i in 0..4 {
            let (x, y) = (c[i], c[(i + 1) % 4]);
            if x != y && (tree_parent[x] == y || tree_parent[y] == x) {
                continue;
            }
            let gen = edge_gen[&(x.min(y), x.max(y))];
            if x == y {
                word.push(Letter::plus(gen));
            } else {
                word.push(Letter { gen, inv: x > y });
            }
        }
        relators.push(free_reduce(&word));
    }
    for &l in &loop_gens {
        relators.push(vec![Letter::plus(l), Letter::plus(l)]);
    }

    // every relator bounds an even closed walk, so its parity vanishes
    for r in &relators {
        let p: u32 = r.iter().map(|l| parity[l.gen] as u32).sum();
        assert_eq!(p % 2, 0, "relator with odd parity");
    }

    Ok(CwPresentation {
        presentation: GroupPresentation::new(labels, relators)?,
        ..scaffold
    })
}

/// Tietze trimming: free-reduce relators, drop empty ones, and repeatedly
/// eliminate generators forced trivial by length-1 relators.
pub fn tietze_trim(pres: &GroupPresentation) -> GroupPresentation {
    let mut labels = pres.labels().to_vec();
    let mut relators: Vec<Word> = pres.relators().iter().map(|r| free_reduce(r)).collect();
    loop {
        relators.retain(|r| !r.is_empty());
        let Some(dead) = relators.iter().find(|r| r.len() == 1).map(|r| r[0].gen) else {
            break;
        };
        // generator `dead` is trivial: erase it everywhere and renumber
        labels.remove(dead);
        let mut next: Vec<Word> = Vec::with_capacity(relators.len());
        for r in &relators {
            let w: Word = r
                .iter()
                .filter(|l| l.gen != dead)
                .map(|l| Letter { gen: l.gen - usize::from(l.gen > dead), inv: l.inv })
                .collect();
            next.push(free_reduce(&w));
        }
        relators = next;
    }
    GroupPresentation::new(labels, relators).expect("trimming preserves letter validity")
}

/// Presentation of the subgroup of even-length classes.
#[derive(Clone, Debug)]
pub struct EvenPart {
    pub presentation: GroupPresentation,
    /// 1 when the parity map is trivial (every generator even), else 2.
    pub index: usize,
}

/// Compute the even part of a presented loop group by rewriting along the
/// parity map. For index 2 the transversal is {1, t} with `t` the first odd
/// generator; the subgroup generators are the Schreier generators, with the
/// redundant one discarded, and each relator is rewritten from both cosets.
/// The result is Tietze-trimmed.
pub fn even_part_presentation(p: &CwPresentation) -> Result<EvenPart> {
    for r in p.presentation.relators() {
        let par: u32 = r.iter().map(|l| p.parity[l.gen] as u32).sum();
        if par % 2 != 0 {
            return Err(Error::pre("a relator has odd parity; no parity map exists"));
        }
    }
    let n = p.presentation.generator_count();
    let Some(t) = (0..n).find(|&i| p.parity[i] == 1) else {
        return Ok(EvenPart { presentation: tietze_trim(&p.presentation), index: 1 });
    };

    // subgroup generator index per (coset, generator), skipping (0, t)
    let mut sub_gen: BTreeMap<(u8, usize), usize> = BTreeMap::new();
    let mut labels = Vec::new();
    for r in 0..2u8 {
        for g in 0..n {
            if (r, g) == (0, t) {
                continue;
            }
            sub_gen.insert((r, g), labels.len());
            labels.push(GenLabel::Named(format!(
                "{}@{}",
                p.presentation.labels()[g],
                r
            )));
        }
    }

    let rewrite = |word: &[Letter], start: u8| -> Word {
        let mut out = Word::new();
        let mut r = start;
        for &l in word {
            let pg = p.parity[l.gen];
            if !l.inv {
                if let Some(&sg) = sub_gen.get(&(r, l.gen)) {
                    out.push(Letter::plus(sg));
                }
                r ^= pg;
            } else {
                let r2 = r ^ pg;
                if let Some(&sg) = sub_gen.get(&(r2, l.gen)) {
                    out.push(Letter::minus(sg));
                }
                r = r2;
            }
        }
        out
    };

    let mut relators = Vec::new();
    for w in p.presentation.relators() {
        relators.push(rewrite(w, 0));
        relators.push(rewrite(w, 1));
    }
    let pres = GroupPresentation::new(labels, relators)?;
    Ok(EvenPart { presentation: tietze_trim(&pres), index: 2 })
}

/// Outcome of the bounded square-decomposition search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecomposeOutcome {
    /// A splitting into squares lying inside the pieces was found.
    Decomposed { splits: usize },
    /// The search space was exhausted: no decomposition exists at any depth,
    /// because every branch ran out of legal splits.
    Refuted,
    /// The split budget cut off at least one branch; no verdict.
    Inconclusive,
}

fn square_fits(sq: &Square, piece: &Subgraph) -> bool {
    sq.corners.iter().all(|v| piece.vertices.contains(v))
        && sq.sides().iter().all(|&(a, b)| piece.has_edge(a, b))
}

/// Try to decompose `square` into squares each lying inside one of the
/// `pieces`, using at most `max_splits` elementary splits. A split replaces
/// a square by two squares sharing a new common corner `u`:
/// either `(s0 s1 u s3)` and `(u s1 s2 s3)` with `u` adjacent to `s1`, `s3`,
/// or `(s0 s1 s2 u)` and `(s0 u s2 s3)` with `u` adjacent to `s0`, `s2`.
/// Splits that reproduce the square itself are skipped (they make no
/// progress), so an exhausted search genuinely refutes.
pub fn decompose_square(
    g: &Graph,
    square: &Square,
    pieces: &[Subgraph],
    max_splits: usize,
) -> DecomposeOutcome {
    fn rec(
        g: &Graph,
        pending: &mut Vec<Square>,
        pieces: &[Subgraph],
        splits_left: usize,
        hit_limit: &mut bool,
    ) -> Option<usize> {
        let Some(pos) = pending
            .iter()
            .position(|sq| !pieces.iter().any(|p| square_fits(sq, p)))
        else {
            return Some(0);
        };
        if splits_left == 0 {
            *hit_limit = true;
            return None;
        }
        let sq = pending.remove(pos);
        let [s0, s1, s2, s3] = sq.corners;
        let mut candidates: Vec<(Square, Square)> = Vec::new();
        for &u in g.neighbors(s1).intersection(g.neighbors(s3)) {
            if u == s2 || u == s0 {
                continue;
            }
            candidates.push((
                Square { corners: [s0, s1, u, s3] },
                Square { corners: [u, s1, s2, s3] },
            ));
        }
        for &u in g.neighbors(s0).intersection(g.neighbors(s2)) {
            if u == s3 || u == s1 {
                continue;
            }
            candidates.push((
                Square { corners: [s0, s1, s2, u] },
                Square { corners: [s0, u, s2, s3] },
            ));
        }
        for (a, b) in candidates {
            pending.push(a);
            pending.push(b);
            if let Some(used) = rec(g, pending, pieces, splits_left - 1, hit_limit) {
                return Some(used + 1);
            }
            pending.pop();
            pending.pop();
        }
        pending.insert(pos, sq);
        None
    }

    let mut pending = vec![*square];
    let mut hit_limit = false;
    match rec(g, &mut pending, pieces, max_splits, &mut hit_limit) {
        Some(splits) => DecomposeOutcome::Decomposed { splits },
        None if hit_limit => DecomposeOutcome::Inconclusive,
        None => DecomposeOutcome::Refuted,
    }
}

/// Default split budget for square decomposition.
pub const DEFAULT_SPLIT_BUDGET: usize = 4;

/// Hypothesis report for the gluing presentation.
#[derive(Clone, Debug)]
pub struct GluingHypotheses {
    /// The pieces cover every vertex and edge of the graph.
    pub union_is_whole: bool,
    /// Every intersection of up to three pieces (with repetition) is
    /// connected as a subgraph.
    pub intersections_connected: bool,
    /// Index multisets whose intersection fails to be connected.
    pub intersection_failures: Vec<Vec<usize>>,
    /// Every square of the graph decomposes into squares inside pieces.
    pub squares_ok: bool,
    /// Squares that failed, with the search outcome.
    pub square_failures: Vec<([usize; 4], DecomposeOutcome)>,
}

impl GluingHypotheses {
    pub fn all_hold(&self) -> bool {
        self.union_is_whole && self.intersections_connected && self.squares_ok
    }
}

/// The gluing presentation of the loop group of a union of subgraphs.
#[derive(Clone, Debug)]
pub struct Gluing {
    pub hypotheses: GluingHypotheses,
    pub presentation: GroupPresentation,
}

/// Present the loop group of `g` at `base` from a cover by subgraphs that all
/// contain the basepoint: take the presentations of the pieces side by side
/// and, for every generator of every pairwise intersection, identify its
/// images in the two pieces. The presentation is the group of `g` when the
/// hypotheses hold; they are checked and reported, not assumed.
pub fn gluing_presentation(
    g: &Graph,
    base: usize,
    pieces: &[Subgraph],
    max_splits: usize,
) -> Result<Gluing> {
    if pieces.is_empty() {
        return Err(Error::pre("at least one piece is required"));
    }
    for (i, p) in pieces.iter().enumerate() {
        if !p.vertices.contains(&base) {
            return Err(Error::pre(format!("piece {i} does not contain the basepoint {base}")));
        }
    }

    // hypothesis: union covers g
    let mut union = pieces[0].clone();
    for p in &pieces[1..] {
        union = union.union(p);
    }
    let union_is_whole = union == Subgraph::full(g);

    // hypothesis: intersections of up to three pieces connected
    let mut intersection_failures = Vec::new();
    let k = pieces.len();
    for a in 0..k {
        for b in a..k {
            for c in b..k {
                let i3 = pieces[a].intersection(&pieces[b]).intersection(&pieces[c]);
                let (h, _) = i3.to_graph();
                if !h.is_connected() {
                    intersection_failures.push(vec![a, b, c]);
                }
            }
        }
    }
    let intersections_connected = intersection_failures.is_empty();

    // hypothesis: squares decompose into pieces
    let mut square_failures = Vec::new();
    for sq in enumerate_squares(g) {
        match decompose_square(g, &sq, pieces, max_splits) {
            DecomposeOutcome::Decomposed { .. } => {}
            out => square_failures.push((sq.corners, out)),
        }
    }
    let squares_ok = square_failures.is_empty();

    // piece presentations in local coordinates, with ambient id maps
    struct PieceData {
        graph: Graph,
        back: BTreeMap<usize, usize>,
        pres: CwPresentation,
        offset: usize,
    }
    let mut data = Vec::new();
    let mut labels = Vec::new();
    let mut relators: Vec<Word> = Vec::new();
    for (i, p) in pieces.iter().enumerate() {
        let (h, ids) = p.to_graph();
        let back: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(l, &a)| (a, l)).collect();
        let pres = cw_presentation(&h, back[&base])?;
        let offset = labels.len();
        for lbl in pres.presentation.labels() {
            let ambient = match lbl {
                GenLabel::Edge(a, b) => GenLabel::Edge(ids[*a], ids[*b]),
                GenLabel::Loop(v) => GenLabel::Loop(ids[*v]),
                GenLabel::Named(_) => unreachable!(),
            };
            labels.push(GenLabel::Named(format!("k{i}.{ambient}")));
        }
        for r in pres.presentation.relators() {
            relators.push(r.iter().map(|l| Letter { gen: l.gen + offset, ..*l }).collect());
        }
        data.push(PieceData { graph: h, back, pres, offset });
    }

    // identification relators: each generator of a pairwise intersection is
    // rewritten in both pieces and the two words are equated
    for a in 0..k {
        for b in a + 1..k {
            let inter = pieces[a].intersection(&pieces[b]);
            let (hi, iids) = inter.to_graph();
            if !inter.vertices.contains(&base) {
                continue; // covered by the connectivity hypothesis report
            }
            let iback: BTreeMap<usize, usize> =
                iids.iter().enumerate().map(|(l, &amb)| (amb, l)).collect();
            let ipres = cw_presentation(&hi, iback[&base])?;
            for gen in 0..ipres.presentation.generator_count() {
                let walk_ambient: Vec<usize> = ipres
                    .generator_loop_verts(gen)
                    .into_iter()
                    .map(|v| iids[v])
                    .collect();
                let mut words = [Word::new(), Word::new()];
                for (slot, &pi) in [a, b].iter().enumerate() {
                    let d = &data[pi];
                    let local: Vec<usize> = walk_ambient.iter().map(|v| d.back[v]).collect();
                    let w = d.pres.rewrite_closed_walk(&d.graph, &local)?;
                    words[slot] = w
                        .into_iter()
                        .map(|l| Letter { gen: l.gen + d.offset, ..l })
                        .collect();
                }
                let mut rel = words[0].clone();
                rel.extend(word_inverse(&words[1]));
                relators.push(free_reduce(&rel));
            }
        }
    }

    let pres = GroupPresentation::new(labels, relators)?;
    Ok(Gluing {
        hypotheses: GluingHypotheses {
            union_is_whole,
            intersections_connected,
            intersection_failures,
            squares_ok,
            square_failures,
        },
        presentation: tietze_trim(&pres),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_canonicalization() {
        let g = Graph::cycle(4).unwrap();
        let s = Square::new(&g, [1, 2, 3, 0]).unwrap();
        assert_eq!(s.canonical().corners, [0, 1, 2, 3]);
        let s = Square::new(&g, [2, 1, 0, 3]).unwrap();
        assert_eq!(s.canonical().corners, [0, 1, 2, 3]);
        assert!(!s.is_degenerate());
        assert!(Square::new(&g, [0, 0, 1, 2]).is_err()); // no loop at 0
        let k4 = Graph::complete(4);
        assert!(Square::new(&k4, [0, 1, 0, 2]).unwrap().is_degenerate());
    }

    #[test]
    fn square_enumeration() {
        assert_eq!(enumerate_squares(&Graph::cycle(5).unwrap()), vec![]);
        let c4 = enumerate_squares(&Graph::cycle(4).unwrap());
        assert_eq!(c4.len(), 1);
        assert_eq!(c4[0].corners, [0, 1, 2, 3]);
        let k4 = enumerate_squares(&Graph::complete(4));
        assert_eq!(
            k4.iter().map(|s| s.corners).collect::<Vec<_>>(),
            vec![[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]]
        );
        assert_eq!(enumerate_squares(&Graph::petersen()), vec![]);
        // two looped vertices joined by an edge support the square that walks
        // both loops
        let ll = Graph::new(2, &[(0, 0), (1, 1), (0, 1)]).unwrap();
        let sq = enumerate_squares(&ll);
        assert_eq!(sq.iter().map(|s| s.corners).collect::<Vec<_>>(), vec![[0, 0, 1, 1]]);
    }

    #[test]
    fn free_reduction_and_words() {
        let w = vec![Letter::plus(0), Letter::minus(0), Letter::plus(1)];
        assert_eq!(free_reduce(&w), vec![Letter::plus(1)]);
        let w = vec![Letter::plus(0), Letter::plus(1), Letter::minus(1), Letter::minus(0)];
        assert_eq!(free_reduce(&w), vec![]);
        assert_eq!(
            word_inverse(&[Letter::plus(0), Letter::minus(1)]),
            vec![Letter::plus(1), Letter::minus(0)]
        );
        assert_eq!(Letter::plus(0).signed(), 1);
        assert_eq!(Letter::minus(2).signed(), -3);
    }

    #[test]
    fn k4_presentation_worked_example() {
        let p = cw_presentation(&Graph::complete(4), 0).unwrap();
        assert_eq!(
            p.presentation.labels(),
            &[GenLabel::Edge(1, 2), GenLabel::Edge(1, 3), GenLabel::Edge(2, 3)]
        );
        assert_eq!(p.parity, vec![1, 1, 1]);
        let rels: Vec<Vec<i64>> = p
            .presentation
            .relators()
            .iter()
            .map(|r| r.iter().map(|l| l.signed()).collect())
            .collect();
        // squares (0,1,2,3) -> a c; (0,1,3,2) -> b c^-1; (0,2,1,3) -> a^-1 b
        assert_eq!(rels, vec![vec![1, 3], vec![2, -3], vec![-1, 2]]);
        let ab = p.presentation.abelianization();
        assert_eq!(ab, AbelianGroup::cyclic(2));
    }

    #[test]
    fn cycle_presentations() {
        let p = cw_presentation(&Graph::cycle(5).unwrap(), 0).unwrap();
        assert_eq!(p.presentation.generator_count(), 1);
        assert_eq!(p.presentation.labels(), &[GenLabel::Edge(2, 3)]);
        assert_eq!(p.parity, vec![1]);
        assert!(p.presentation.relators().is_empty());
        // C4: one generator, one square relator killing it
        let p = cw_presentation(&Graph::cycle(4).unwrap(), 0).unwrap();
        assert_eq!(p.presentation.generator_count(), 1);
        assert!(p.presentation.abelianization().is_trivial());
    }

    #[test]
    fn loop_disk_relator() {
        let g = Graph::new(1, &[(0, 0)]).unwrap();
        let p = cw_presentation(&g, 0).unwrap();
        assert_eq!(p.presentation.labels(), &[GenLabel::Loop(0)]);
        assert_eq!(p.parity, vec![1]);
        let rels = p.presentation.relators();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0], vec![Letter::plus(0), Letter::plus(0)]);
        assert_eq!(p.presentation.abelianization(), AbelianGroup::cyclic(2));
    }

    #[test]
    fn walk_rewriting_round_trips() {
        let g = Graph::complete(4);
        let p = cw_presentation(&g, 0).unwrap();
        for gen in 0..p.presentation.generator_count() {
            let verts = p.generator_loop_verts(gen);
            let w = p.rewrite_closed_walk(&g, &verts).unwrap();
            assert_eq!(w, vec![Letter::plus(gen)]);
        }
        // a pure tree loop rewrites to the empty word
        let w = p.rewrite_closed_walk(&g, &[0, 1, 0, 2, 0]).unwrap();
        assert!(w.is_empty());
        assert!(p.rewrite_closed_walk(&g, &[1, 2, 1]).is_err());
    }

    #[test]
    fn tietze_trimming() {
        // < a, b | a, a b > simplifies to the trivial group
        let p = GroupPresentation::new(
            vec![GenLabel::Named("a".into()), GenLabel::Named("b".into())],
            vec![vec![Letter::plus(0)], vec![Letter::plus(0), Letter::plus(1)]],
        )
        .unwrap();
        let t = tietze_trim(&p);
        assert_eq!(t.generator_count(), 0);
        assert!(t.relators().is_empty());
        // < a, b | b a b^-1 a > only free-reduces; nothing to kill
        let p = GroupPresentation::new(
            vec![GenLabel::Named("a".into()), GenLabel::Named("b".into())],
            vec![vec![
                Letter::plus(1),
                Letter::plus(0),
                Letter::minus(1),
                Letter::plus(0),
            ]],
        )
        .unwrap();
        let t = tietze_trim(&p);
        assert_eq!(t.generator_count(), 2);
        assert_eq!(t.relators().len(), 1);
    }

    #[test]
    fn even_part_k4_is_trivial() {
        let p = cw_presentation(&Graph::complete(4), 0).unwrap();
        let e = even_part_presentation(&p).unwrap();
        assert_eq!(e.index, 2);
        assert_eq!(e.presentation.generator_count(), 0);
        assert!(e.presentation.abelianization().is_trivial());
    }

    #[test]
    fn even_part_c5_is_free_of_rank_one() {
        let p = cw_presentation(&Graph::cycle(5).unwrap(), 0).unwrap();
        let e = even_part_presentation(&p).unwrap();
        assert_eq!(e.index, 2);
        assert_eq!(e.presentation.generator_count(), 1);
        assert!(e.presentation.relators().is_empty());
        assert_eq!(e.presentation.abelianization(), AbelianGroup::free(1));
    }

    #[test]
    fn even_part_bipartite_is_whole_group() {
        let p = cw_presentation(&Graph::cycle(6).unwrap(), 0).unwrap();
        let e = even_part_presentation(&p).unwrap();
        assert_eq!(e.index, 1);
        assert_eq!(e.presentation.abelianization(), AbelianGroup::free(1));
    }

    #[test]
    fn k23_square_splits_once() {
        // parts {0,1} and {2,3,4}
        let g = Graph::new(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let sq = Square::new(&g, [0, 2, 1, 3]).unwrap();
        let p1 = Subgraph::new(&g, [0, 1, 2, 4], [(0, 2), (0, 4), (1, 2), (1, 4)])
            .unwrap();
        let p2 = Subgraph::new(&g, [0, 1, 3, 4], [(0, 3), (0, 4), (1, 3), (1, 4)])
            .unwrap();
        assert_eq!(
            decompose_square(&g, &sq, &[p1.clone(), p2.clone()], 4),
            DecomposeOutcome::Decomposed { splits: 1 }
        );
        assert_eq!(
            decompose_square(&g, &sq, &[p1], 4),
            DecomposeOutcome::Refuted
        );
    }

    #[test]
    fn k4_square_never_decomposes_properly() {
        let g = Graph::complete(4);
        let sq = Square::new(&g, [0, 1, 2, 3]).unwrap();
        // pieces: two triangles; the square fits in neither, and the only
        // candidate splits reproduce the square, so the search refutes
        let t1 = Subgraph::new(&g, [0, 1, 2], [(0, 1), (0, 2), (1, 2)]).unwrap();
        let t2 = Subgraph::new(&g, [0, 1, 3], [(0, 1), (0, 3), (1, 3)]).unwrap();
        assert_eq!(decompose_square(&g, &sq, &[t1, t2], 6), DecomposeOutcome::Refuted);
    }

    #[test]
    fn gluing_wedge_of_triangles() {
        // triangles {0,1,2} and {0,3,4} sharing vertex 0
        let g = Graph::new(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        let t1 = Subgraph::new(&g, [0, 1, 2], [(0, 1), (0, 2), (1, 2)]).unwrap();
        let t2 = Subgraph::new(&g, [0, 3, 4], [(0, 3), (0, 4), (3, 4)]).unwrap();
        let vk = gluing_presentation(&g, 0, &[t1, t2], 4).unwrap();
        assert!(vk.hypotheses.all_hold());
        assert_eq!(vk.presentation.generator_count(), 2);
        assert!(vk.presentation.relators().is_empty());
        assert_eq!(vk.presentation.abelianization(), AbelianGroup::free(2));
    }

    #[test]
    fn gluing_detects_failed_hypotheses() {
        // two arcs covering C5 intersect in two isolated vertices
        let g = Graph::cycle(5).unwrap();
        let a1 = Subgraph::new(&g, [0, 1, 2, 3], [(0, 1), (1, 2), (2, 3)]).unwrap();
        let a2 = Subgraph::new(&g, [3, 4, 0], [(3, 4), (0, 4)]).unwrap();
        let vk = gluing_presentation(&g, 0, &[a1, a2], 4).unwrap();
        assert!(vk.hypotheses.union_is_whole);
        assert!(!vk.hypotheses.intersections_connected);
        assert!(!vk.hypotheses.all_hold());
    }

    #[test]
    fn gluing_matches_direct_presentation_on_k4() {
        // one piece = the whole graph: hypotheses hold trivially and the
        // gluing presentation abelianizes the same way
        let g = Graph::complete(4);
        let whole = Subgraph::full(&g);
        let vk = gluing_presentation(&g, 0, &[whole], 4).unwrap();
        assert!(vk.hypotheses.all_hold());
        assert_eq!(vk.presentation.abelianization(), AbelianGroup::cyclic(2));
    }
}
