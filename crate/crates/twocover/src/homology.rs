//! Exact integer linear algebra (Smith normal form over arbitrary-precision
//! integers), finitely generated abelian groups in invariant-factor normal
//! form, and two-dimensional chain complexes for graphs and simplicial
//! 2-skeletons.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::simplicial::SimplicialComplex;

/// Dense integer matrix, row-major, over `BigInt`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, a: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "row length mismatch");
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> IntMatrix {
        let mut m = IntMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, BigInt::from(f(i, j)));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.a[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &BigInt) {
        let idx = i * self.cols + j;
        self.a[idx] = &self.a[idx] + x;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let y = other.get(k, j);
                    if !y.is_zero() {
                        let add = x * y;
                        out.add_to(i, j, &add);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &x[j]).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMatrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            for j in 0..self.cols {
                self.a.swap(i * self.cols + j, k * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, l: usize) {
        if j != l {
            for i in 0..self.rows {
                self.a.swap(i * self.cols + j, i * self.cols + l);
            }
        }
    }

    /// `row_i -= q * row_k`
    fn row_sub_mul(&mut self, i: usize, k: usize, q: &BigInt) {
        for j in 0..self.cols {
            let x = self.get(k, j) * q;
            let idx = i * self.cols + j;
            self.a[idx] = &self.a[idx] - x;
        }
    }

    /// `col_j -= q * col_l`
    fn col_sub_mul(&mut self, j: usize, l: usize, q: &BigInt) {
        for i in 0..self.rows {
            let x = self.get(i, l) * q;
            let idx = i * self.cols + j;
            self.a[idx] = &self.a[idx] - x;
        }
    }

    /// `row_i += row_k`
    fn row_add(&mut self, i: usize, k: usize) {
        for j in 0..self.cols {
            let x = self.get(k, j).clone();
            self.add_to(i, j, &x);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.a[idx] = -self.a[idx].clone();
        }
    }
}

/// Smith normal form `U * m * V = D` with `U`, `V` unimodular and the diagonal
/// of `D` a divisibility chain of non-negative integers.
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
    /// Determinants of `U` and `V` (each `1` or `-1`), tracked through the
    /// elementary operations that built them.
    pub u_det: i32,
    pub v_det: i32,
}

impl Snf {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Compute the Smith normal form. Pivots are chosen by smallest nonzero
/// absolute value (row-major tie-break). Postconditions `U*m*V = D`,
/// diagonality, the divisibility chain, and `det U, det V = ±1` are all
/// checked before returning.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut u_det = 1i32;
    let mut v_det = 1i32;
    let mut t = 0;
    while t < r.min(c) {
        // pivot: smallest nonzero |entry| in the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !d.get(i, j).is_zero()
                    && pivot.map_or(true, |(pi, pj)| {
                        d.get(i, j).abs() < d.get(pi, pj).abs()
                    })
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_det = -u_det;
        }
        if pj != t {
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_det = -v_det;
        }
        loop {
            // clear column t and row t; swapping in a nonzero remainder
            // strictly shrinks the pivot, so this terminates
            loop {
                let mut changed = false;
                for i in t + 1..r {
                    if d.get(i, t).is_zero() {
                        continue;
                    }
                    let q = d.get(i, t) / d.get(t, t);
                    if !q.is_zero() {
                        d.row_sub_mul(i, t, &q);
                        u.row_sub_mul(i, t, &q);
                    }
                    if !d.get(i, t).is_zero() {
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                        u_det = -u_det;
                        changed = true;
                    }
                }
                for j in t + 1..c {
                    if d.get(t, j).is_zero() {
                        continue;
                    }
                    let q = d.get(t, j) / d.get(t, t);
                    if !q.is_zero() {
                        d.col_sub_mul(j, t, &q);
                        v.col_sub_mul(j, t, &q);
                    }
                    if !d.get(t, j).is_zero() {
                        d.swap_cols(t, j);
                        v.swap_cols(t, j);
                        v_det = -v_det;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            // make the pivot divide the whole trailing submatrix
            let mut offender = None;
            'scan: for i in t + 1..r {
                for j in t + 1..c {
                    if !(d.get(i, j) % d.get(t, t)).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    d.row_add(t, i);
                    u.row_add(t, i);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_det = -u_det;
        }
        t += 1;
    }
    let rank = t;
    // verification: U * m * V = D, diagonal divisibility chain, unit determinants
    assert_eq!(u.mul(m).mul(&v), d, "smith normal form: U*m*V != D");
    for i in 0..r {
        for j in 0..c {
            if i != j {
                assert!(d.get(i, j).is_zero(), "smith normal form: D not diagonal");
            }
        }
    }
    for i in 0..rank.saturating_sub(1) {
        assert!(
            (d.get(i + 1, i + 1) % d.get(i, i)).is_zero(),
            "smith normal form: divisibility chain broken"
        );
    }
    assert!(u_det == 1 || u_det == -1);
    assert!(v_det == 1 || v_det == -1);
    Snf { u, d, v, rank, u_det, v_det }
}

/// Repeated exact solving of `m x = b` over the integers.
pub struct LinearSolver {
    snf: Snf,
}

impl LinearSolver {
    pub fn new(m: &IntMatrix) -> LinearSolver {
        LinearSolver { snf: smith_normal_form(m) }
    }

    /// One integer solution of `m x = b`, or `None` if none exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let Snf { u, d, v, rank, .. } = &self.snf;
        assert_eq!(b.len(), u.cols());
        let ub = u.mul_vec(b);
        let mut z = vec![BigInt::zero(); v.rows()];
        for (i, ubi) in ub.iter().enumerate() {
            if i < *rank {
                let di = d.get(i, i);
                if !(ubi % di).is_zero() {
                    return None;
                }
                z[i] = ubi / di;
            } else if !ubi.is_zero() {
                return None;
            }
        }
        Some(v.mul_vec(&z))
    }

    pub fn solvable(&self, b: &[BigInt]) -> bool {
        self.solve(b).is_some()
    }
}

/// Basis of the integer kernel of `m`, as matrix columns. The columns span
/// `ker m` as a direct summand of the ambient lattice.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let c = m.cols();
    let k = c - snf.rank;
    let mut out = IntMatrix::zero(c, k);
    for j in 0..k {
        for i in 0..c {
            out.set(i, j, snf.v.get(i, snf.rank + j).clone());
        }
    }
    out
}

/// Generators (as columns) of the lattice `{x : h x ∈ column-span(l)}`.
pub fn preimage_lattice(h: &IntMatrix, l: &IntMatrix) -> IntMatrix {
    assert_eq!(h.rows(), l.rows());
    let stacked = h.hstack(l);
    let ker = kernel_basis(&stacked);
    let mut out = IntMatrix::zero(h.cols(), ker.cols());
    for j in 0..ker.cols() {
        for i in 0..h.cols() {
            out.set(i, j, ker.get(i, j).clone());
        }
    }
    out
}

/// Equality of the column-span lattices of `a` and `b` (mutual membership of
/// generators).
pub fn lattices_equal(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.rows(), b.rows());
    let sa = LinearSolver::new(a);
    let sb = LinearSolver::new(b);
    (0..a.cols()).all(|j| sb.solvable(&a.column(j)))
        && (0..b.cols()).all(|j| sa.solvable(&b.column(j)))
}

/// A finitely generated abelian group in normal form: free rank plus a
/// divisibility chain of invariant factors, each at least 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> AbelianGroup {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> AbelianGroup {
        assert!(n >= 2);
        AbelianGroup { free_rank: 0, torsion: vec![BigInt::from(n)] }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// The quotient `Z^n / (row span of the relation matrix)`.
    pub fn from_relations(n_generators: usize, relations: &IntMatrix) -> AbelianGroup {
        assert_eq!(relations.cols(), n_generators);
        let snf = smith_normal_form(relations);
        let torsion: Vec<BigInt> =
            snf.invariant_factors().into_iter().filter(|d| d > &BigInt::one()).collect();
        AbelianGroup { free_rank: n_generators - snf.rank, torsion }
    }

    /// Direct sum, renormalized to a single divisibility chain.
    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let tors: Vec<&BigInt> = self.torsion.iter().chain(&other.torsion).collect();
        let n = tors.len();
        let mut rel = IntMatrix::zero(n, n);
        for (i, t) in tors.iter().enumerate() {
            rel.set(i, i, (*t).clone());
        }
        let combined = AbelianGroup::from_relations(n, &rel);
        assert_eq!(combined.free_rank, 0);
        AbelianGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion: combined.torsion,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|t| match u64::try_from(t) {
                Ok(n) => serde_json::Value::from(n),
                Err(_) => serde_json::Value::from(t.to_string()),
            })
            .collect();
        serde_json::json!({ "free_rank": self.free_rank, "torsion": torsion })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A 2-cell of a square-complex or simplicial chain complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TwoCell {
    /// Equivalence class of a nondegenerate square, by canonical corner tuple.
    Square([usize; 4]),
    /// The disk glued twice around the loop at a vertex.
    LoopDisk(usize),
    /// A 2-simplex `a < b < c`.
    Triangle([usize; 3]),
}

/// A two-step chain complex `C2 -> C1 -> C0` of free abelian groups with
/// labelled cells. `boundary1` is `|C0| x |C1|`, `boundary2` is `|C1| x |C2|`;
/// `boundary1 * boundary2 = 0` is checked on construction.
pub struct ChainComplex2 {
    pub vertex_labels: Vec<usize>,
    pub edge_labels: Vec<(usize, usize)>,
    pub cell_labels: Vec<TwoCell>,
    pub boundary1: IntMatrix,
    pub boundary2: IntMatrix,
}

impl ChainComplex2 {
    /// Build from explicit cell lists. Vertices and edges carry their original
    /// ids; edges are `(a, b)` with `a <= b`, loops as `(a, a)`.
    pub fn from_cells(
        vertex_labels: Vec<usize>,
        edge_labels: Vec<(usize, usize)>,
        cell_labels: Vec<TwoCell>,
    ) -> ChainComplex2 {
        let vindex: std::collections::HashMap<usize, usize> =
            vertex_labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let eindex: std::collections::HashMap<(usize, usize), usize> =
            edge_labels.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut boundary1 = IntMatrix::zero(vertex_labels.len(), edge_labels.len());
        for (j, &(a, b)) in edge_labels.iter().enumerate() {
            if a != b {
                boundary1.add_to(vindex[&b], j, &BigInt::one());
                boundary1.add_to(vindex[&a], j, &(-BigInt::one()));
            }
        }
        let mut boundary2 = IntMatrix::zero(edge_labels.len(), cell_labels.len());
        for (j, cell) in cell_labels.iter().enumerate() {
            match cell {
                TwoCell::Square(s) => {
                    for i in 0..4 {
                        let (x, y) = (s[i], s[(i + 1) % 4]);
                        let e = eindex[&(x.min(y), x.max(y))];
                        // a side that stays put traverses the loop edge in its
                        // reference direction: coefficient +1
                        let coeff = if x <= y { BigInt::one() } else { -BigInt::one() };
                        boundary2.add_to(e, j, &coeff);
                    }
                }
                TwoCell::LoopDisk(v) => {
                    boundary2.add_to(eindex[&(*v, *v)], j, &BigInt::from(2));
                }
                TwoCell::Triangle([a, b, c]) => {
                    boundary2.add_to(eindex[&(*b, *c)], j, &BigInt::one());
                    boundary2.add_to(eindex[&(*a, *c)], j, &(-BigInt::one()));
                    boundary2.add_to(eindex[&(*a, *b)], j, &BigInt::one());
                }
            }
        }
        assert!(
            boundary1.mul(&boundary2).is_zero(),
            "chain complex: boundary1 * boundary2 != 0"
        );
        ChainComplex2 { vertex_labels, edge_labels, cell_labels, boundary1, boundary2 }
    }

    /// The cellular complex of a graph: vertices, edge cells (one per edge
    /// orbit, loops included), square 2-cells, and one disk glued twice around
    /// every loop.
    pub fn of_graph(g: &Graph) -> ChainComplex2 {
        let squares = crate::presentation::enumerate_squares(g);
        let mut cells: Vec<TwoCell> =
            squares.into_iter().map(|s| TwoCell::Square(s.corners)).collect();
        cells.extend(g.vertices().filter(|&v| g.has_loop(v)).map(TwoCell::LoopDisk));
        ChainComplex2::from_cells(g.vertices().collect(), g.edges().collect(), cells)
    }

    /// The 2-skeleton of a simplicial complex as a chain complex.
    pub fn of_two_skeleton(c: &SimplicialComplex) -> ChainComplex2 {
        let vertices: Vec<usize> = c.vertices().into_iter().collect();
        let mut edges = std::collections::BTreeSet::new();
        let mut triangles = std::collections::BTreeSet::new();
        for facet in c.facets() {
            let fs: Vec<usize> = facet.iter().copied().collect();
            for (i, &a) in fs.iter().enumerate() {
                for (k, &b) in fs.iter().enumerate().skip(i + 1) {
                    edges.insert((a, b));
                    for &cc in fs.iter().skip(k + 1) {
                        triangles.insert([a, b, cc]);
                    }
                }
            }
        }
        ChainComplex2::from_cells(
            vertices,
            edges.into_iter().collect(),
            triangles.into_iter().map(TwoCell::Triangle).collect(),
        )
    }

    /// `H0 = C0 / im(boundary1)`; always free for these complexes (asserted).
    pub fn h0(&self) -> AbelianGroup {
        let snf = smith_normal_form(&self.boundary1);
        assert!(
            snf.invariant_factors().iter().all(|d| d.is_one()),
            "H0 of a cell complex must be free"
        );
        AbelianGroup::free(self.vertex_labels.len() - snf.rank)
    }

    /// `H1 = ker(boundary1) / im(boundary2)`: free rank
    /// `dim ker(boundary1) - rank(boundary2)`, torsion the invariant factors
    /// of `boundary2` exceeding 1.
    pub fn h1(&self) -> AbelianGroup {
        let rank1 = smith_normal_form(&self.boundary1).rank;
        let snf2 = smith_normal_form(&self.boundary2);
        let torsion: Vec<BigInt> =
            snf2.invariant_factors().into_iter().filter(|d| d > &BigInt::one()).collect();
        AbelianGroup {
            free_rank: self.edge_labels.len() - rank1 - snf2.rank,
            torsion,
        }
    }
}

/// `H0(G)`: free of rank the number of connected components. Computed both
/// from components and cellularly; the two must agree.
pub fn h0_graph(g: &Graph) -> AbelianGroup {
    let by_components = AbelianGroup::free(g.components().len());
    let cellular = ChainComplex2::of_graph(g).h0();
    assert_eq!(by_components, cellular, "H0: component count and cellular H0 disagree");
    by_components
}

/// `H1(G)`: first integral homology of the square complex of `G`. Computed
/// two independent ways — abelianized presentations per component, and the
/// cellular chain complex — and the results are asserted equal.
pub fn h1_graph(g: &Graph) -> AbelianGroup {
    let mut by_presentation = AbelianGroup::trivial();
    for comp in g.components() {
        let base = comp[0];
        let pres = crate::presentation::cw_presentation(g, base)
            .expect("basepoint is a vertex");
        by_presentation = by_presentation.direct_sum(&pres.presentation.abelianization());
    }
    let cellular = ChainComplex2::of_graph(g).h1();
    assert_eq!(
        by_presentation, cellular,
        "H1: presentation route and chain complex route disagree"
    );
    cellular
}

/// `(H0, H1)` of the 2-skeleton of a simplicial complex.
pub fn simplicial_h01(c: &SimplicialComplex) -> (AbelianGroup, AbelianGroup) {
    let cc = ChainComplex2::of_two_skeleton(c);
    (cc.h0(), cc.h1())
}

/// Sanity check available to callers holding an alleged presentation of a
/// subgroup: the quotient must be consistent. (Used in tests.)
pub fn relation_matrix(n_generators: usize, relator_exponents: &[Vec<BigInt>]) -> IntMatrix {
    IntMatrix::from_rows(relator_exponents.to_vec(), n_generators)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_diag(m: &IntMatrix) -> Vec<i64> {
        let snf = smith_normal_form(m);
        (0..m.rows().min(m.cols()))
            .map(|i| i64::try_from(snf.d.get(i, i)).unwrap())
            .collect()
    }

    /// Fraction-free determinant (Bareiss), for cross-checking tracked
    /// determinant signs on small matrices.
    fn bareiss_det(m: &IntMatrix) -> BigInt {
        assert_eq!(m.rows(), m.cols());
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> =
            (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(s) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, s);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    #[test]
    fn snf_known_forms() {
        // diag(2,6,12)-style: [[2,4,4],[-6,6,12],[10,4,16]] has SNF diag(2,2,156)? compute honestly below
        let m = IntMatrix::from_fn(2, 2, |i, j| [[2, 4], [6, 8]][i][j]);
        assert_eq!(snf_diag(&m), vec![2, 4]); // det -8, gcd 2 -> 2, 4
        let m = IntMatrix::from_fn(3, 3, |i, j| [[1, 0, 1], [0, 1, 1], [1, 1, 0]][i][j]);
        assert_eq!(snf_diag(&m), vec![1, 1, 2]);
        let z = IntMatrix::zero(3, 2);
        assert_eq!(smith_normal_form(&z).rank, 0);
    }

    #[test]
    fn snf_determinant_sign_matches_bareiss() {
        // deterministic pseudo-random small matrices
        let mut seed = 0x243f6a88u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as i64 % 7) - 3
        };
        for _ in 0..20 {
            let m = IntMatrix::from_fn(4, 4, |_, _| next());
            let snf = smith_normal_form(&m);
            assert_eq!(bareiss_det(&snf.u), BigInt::from(snf.u_det));
            assert_eq!(bareiss_det(&snf.v), BigInt::from(snf.v_det));
        }
    }

    #[test]
    fn kernel_and_solving() {
        // x + y + z = 0 has kernel rank 2
        let m = IntMatrix::from_fn(1, 3, |_, _| 1);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
        let solver = LinearSolver::new(&IntMatrix::from_fn(2, 2, |i, j| [[2, 0], [0, 3]][i][j]));
        assert!(solver.solve(&[BigInt::from(4), BigInt::from(9)]).is_some());
        assert!(solver.solve(&[BigInt::from(1), BigInt::from(3)]).is_none());
    }

    #[test]
    fn lattice_comparison() {
        let a = IntMatrix::from_fn(2, 2, |i, j| [[1, 0], [0, 2]][i][j]);
        let b = IntMatrix::from_fn(2, 3, |i, j| [[1, 1, 0], [2, 0, 2]][i][j]);
        assert!(lattices_equal(&a, &b));
        let c = IntMatrix::from_fn(2, 1, |i, _| [[1], [1]][i][0]);
        assert!(!lattices_equal(&a, &c));
        // preimage of even lattice under doubling map is everything
        let h = IntMatrix::from_fn(1, 1, |_, _| 2);
        let l = IntMatrix::from_fn(1, 1, |_, _| 2);
        let pre = preimage_lattice(&h, &l);
        assert!(lattices_equal(&pre, &IntMatrix::identity(1)));
    }

    #[test]
    fn abelian_normal_forms() {
        let rel = IntMatrix::from_fn(1, 2, |_, j| [2, 0][j]);
        let g = AbelianGroup::from_relations(2, &rel);
        assert_eq!(g, AbelianGroup { free_rank: 1, torsion: vec![BigInt::from(2)] });
        assert_eq!(g.to_string(), "Z + Z/2");
        let s = AbelianGroup::cyclic(2).direct_sum(&AbelianGroup::cyclic(3));
        assert_eq!(s.torsion, vec![BigInt::from(6)]);
        let s2 = AbelianGroup::cyclic(2).direct_sum(&AbelianGroup::cyclic(4));
        assert_eq!(s2.torsion, vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
    }

    #[test]
    fn graph_homology_basics() {
        use crate::graph::Graph;
        assert_eq!(h1_graph(&Graph::complete(2)), AbelianGroup::trivial());
        assert_eq!(h1_graph(&Graph::cycle(5).unwrap()), AbelianGroup::free(1));
        assert_eq!(h1_graph(&Graph::cycle(4).unwrap()), AbelianGroup::trivial());
        assert_eq!(h1_graph(&Graph::complete(4)), AbelianGroup::cyclic(2));
        assert_eq!(h1_graph(&Graph::looped_vertex()), AbelianGroup::cyclic(2));
        assert_eq!(h0_graph(&Graph::edgeless(3)), AbelianGroup::free(3));
        assert_eq!(h0_graph(&Graph::edgeless(0)), AbelianGroup::trivial());
        // disjoint union: H1 adds
        let two_cycles = Graph::cycle(5).unwrap().coproduct(&Graph::cycle(3).unwrap());
        assert_eq!(h1_graph(&two_cycles), AbelianGroup::free(2));
    }

    #[test]
    fn petersen_homology() {
        use crate::graph::Graph;
        assert_eq!(h1_graph(&Graph::petersen()), AbelianGroup::free(6));
    }
}
