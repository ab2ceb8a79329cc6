//! Abstract simplicial complexes (given by facets) and finite posets with
//! their order complexes.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// An abstract simplicial complex described by its facets (maximal simplices).
/// Vertices are arbitrary `usize` labels; they need not be contiguous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    facets: Vec<BTreeSet<usize>>,
}

impl SimplicialComplex {
    /// Build from candidate simplices, keeping only the maximal ones.
    /// Empty candidate sets are ignored.
    pub fn from_facets(candidates: Vec<BTreeSet<usize>>) -> SimplicialComplex {
        let mut sets: Vec<BTreeSet<usize>> = Vec::new();
        for c in candidates {
            if c.is_empty() {
                continue;
            }
            if sets.iter().any(|s| c.is_subset(s)) {
                continue;
            }
            sets.retain(|s| !s.is_subset(&c));
            sets.push(c);
        }
        sets.sort();
        sets.dedup();
        SimplicialComplex { facets: sets }
    }

    pub fn facets(&self) -> &[BTreeSet<usize>] {
        &self.facets
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.facets.iter().flatten().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn has_simplex(&self, s: &BTreeSet<usize>) -> bool {
        !s.is_empty() && self.facets.iter().any(|f| s.is_subset(f))
    }

    /// Dimension: max facet size minus one. Empty complex has no dimension.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    /// All nonempty simplices (every subset of every facet).
    pub fn all_simplices(&self) -> BTreeSet<BTreeSet<usize>> {
        let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for f in &self.facets {
            let elems: Vec<usize> = f.iter().copied().collect();
            for mask in 1u64..(1u64 << elems.len()) {
                let s: BTreeSet<usize> = elems
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                out.insert(s);
            }
        }
        out
    }

    /// Vertex sets of the connected components (two vertices are connected
    /// when some facet contains both), sorted by minimum vertex.
    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        let verts: Vec<usize> = self.vertices().into_iter().collect();
        let mut comp: Vec<Option<usize>> = vec![None; verts.len()];
        let pos = |v: usize| verts.binary_search(&v).unwrap();
        let mut next = 0;
        for i in 0..verts.len() {
            if comp[i].is_some() {
                continue;
            }
            comp[i] = Some(next);
            let mut stack = vec![verts[i]];
            while let Some(v) = stack.pop() {
                for f in self.facets.iter().filter(|f| f.contains(&v)) {
                    for &w in f.iter() {
                        let j = pos(w);
                        if comp[j].is_none() {
                            comp[j] = Some(next);
                            stack.push(w);
                        }
                    }
                }
            }
            next += 1;
        }
        let mut out = vec![BTreeSet::new(); next];
        for (i, c) in comp.iter().enumerate() {
            out[c.unwrap()].insert(verts[i]);
        }
        out
    }

    /// The subcomplex of facets lying in the component of `v`.
    pub fn component_of(&self, v: usize) -> Result<SimplicialComplex> {
        let comp = self
            .components()
            .into_iter()
            .find(|c| c.contains(&v))
            .ok_or_else(|| Error::pre(format!("vertex {v} is not in the complex")))?;
        Ok(SimplicialComplex {
            facets: self.facets.iter().filter(|f| f.is_subset(&comp)).cloned().collect(),
        })
    }

    /// The closed star of `v`: all simplices `s` with `s + {v}` a simplex —
    /// equivalently, the subcomplex generated by the facets containing `v`.
    pub fn star(&self, v: usize) -> SimplicialComplex {
        SimplicialComplex {
            facets: self.facets.iter().filter(|f| f.contains(&v)).cloned().collect(),
        }
    }
}

/// A finite poset on elements `0..n`, verified on construction.
#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
}

impl Poset {
    /// `leq[i * n + j]` means `i <= j`. Verifies reflexivity, antisymmetry
    /// and transitivity.
    pub fn new(n: usize, leq: Vec<bool>) -> Result<Poset> {
        if leq.len() != n * n {
            return Err(Error::pre("relation table has wrong size"));
        }
        let at = |i: usize, j: usize| leq[i * n + j];
        for i in 0..n {
            if !at(i, i) {
                return Err(Error::pre(format!("not reflexive at {i}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && at(i, j) && at(j, i) {
                    return Err(Error::pre(format!("not antisymmetric at ({i}, {j})")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if at(i, j) {
                    for k in 0..n {
                        if at(j, k) && !at(i, k) {
                            return Err(Error::pre(format!(
                                "not transitive at ({i}, {j}, {k})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(Poset { n, leq })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// `j` covers `i`: `i < j` with nothing strictly between.
    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) && !(0..self.n).any(|k| self.lt(i, k) && self.lt(k, j))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| !(0..self.n).any(|i| self.lt(i, j))).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| !(0..self.n).any(|j| self.lt(i, j))).collect()
    }

    /// Elements `<= x`.
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&i| self.leq(i, x)).collect()
    }

    /// Elements `>= x`.
    pub fn up_set(&self, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.leq(x, j)).collect()
    }

    /// The order complex: simplices are the chains, so the facets are the
    /// maximal chains. Every element appears (singleton chains count).
    pub fn order_complex(&self) -> SimplicialComplex {
        let mut facets: Vec<BTreeSet<usize>> = Vec::new();
        // grow chains upward from each minimal starting point via covers
        let mut stack: Vec<Vec<usize>> = self.minimal_elements().into_iter().map(|m| vec![m]).collect();
        // every maximal chain starts at a minimal element and steps through
        // covers, so this search is exhaustive
        while let Some(chain) = stack.pop() {
            let top = *chain.last().unwrap();
            let ups: Vec<usize> = (0..self.n).filter(|&j| self.covers(top, j)).collect();
            if ups.is_empty() {
                facets.push(chain.iter().copied().collect());
            } else {
                for j in ups {
                    let mut c = chain.clone();
                    c.push(j);
                    stack.push(c);
                }
            }
        }
        // isolated elements are singleton chains already covered above
        SimplicialComplex::from_facets(facets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn facet_reduction() {
        let c = SimplicialComplex::from_facets(vec![s(&[0, 1]), s(&[0]), s(&[1, 2]), s(&[0, 1])]);
        assert_eq!(c.facets(), &[s(&[0, 1]), s(&[1, 2])]);
        assert!(c.has_simplex(&s(&[0])));
        assert!(c.has_simplex(&s(&[1, 2])));
        assert!(!c.has_simplex(&s(&[0, 2])));
        assert!(!c.has_simplex(&s(&[])));
        assert_eq!(c.vertices(), s(&[0, 1, 2]));
        assert_eq!(c.dimension(), Some(1));
    }

    #[test]
    fn simplices_and_components() {
        let c = SimplicialComplex::from_facets(vec![s(&[0, 1, 2]), s(&[4, 5])]);
        assert_eq!(c.all_simplices().len(), 7 + 3);
        let comps = c.components();
        assert_eq!(comps, vec![s(&[0, 1, 2]), s(&[4, 5])]);
        let c0 = c.component_of(1).unwrap();
        assert_eq!(c0.facets(), &[s(&[0, 1, 2])]);
        assert!(c.component_of(3).is_err());
    }

    #[test]
    fn stars() {
        let c = SimplicialComplex::from_facets(vec![s(&[0, 1, 2]), s(&[2, 3]), s(&[3, 4])]);
        let st2 = c.star(2);
        assert_eq!(st2.facets(), &[s(&[0, 1, 2]), s(&[2, 3])]);
        assert!(st2.has_simplex(&s(&[3])));
        assert!(!st2.has_simplex(&s(&[3, 4])));
    }

    #[test]
    fn poset_axioms() {
        // 2-chain 0 < 1
        let p = Poset::new(2, vec![true, true, false, true]).unwrap();
        assert!(p.leq(0, 1));
        assert!(!p.leq(1, 0));
        // missing reflexivity
        assert!(Poset::new(1, vec![false]).is_err());
        // 0 <= 1 <= 2 but not 0 <= 2: not transitive
        let mut leq = vec![false; 9];
        for i in 0..3 {
            leq[i * 3 + i] = true;
        }
        leq[1] = true; // 0 <= 1
        leq[5] = true; // 1 <= 2
        assert!(Poset::new(3, leq).is_err());
    }

    #[test]
    fn order_complex_of_fence() {
        // fence 0 < 1 > 2 < 3: maximal chains {0,1}, {1,2}? no: 2 < 1 and
        // 2 < 3, so chains are {0,1}, {2,1}, {2,3}
        let n = 4;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        leq[1] = true; // 0 <= 1
        leq[2 * n + 1] = true; // 2 <= 1
        leq[2 * n + 3] = true; // 2 <= 3
        let p = Poset::new(n, leq).unwrap();
        let oc = p.order_complex();
        assert_eq!(
            oc.facets(),
            &[s(&[0, 1]), s(&[1, 2]), s(&[2, 3])]
        );
        assert_eq!(p.minimal_elements(), vec![0, 2]);
        assert_eq!(p.maximal_elements(), vec![1, 3]);
        assert!(p.covers(0, 1));
        assert!(!p.covers(0, 0));
    }

    #[test]
    fn order_complex_of_three_chain() {
        let n = 3;
        let mut leq = vec![false; 9];
        for i in 0..3 {
            for j in i..3 {
                leq[i * 3 + j] = true;
            }
        }
        let p = Poset::new(n, leq).unwrap();
        let oc = p.order_complex();
        assert_eq!(oc.facets(), &[s(&[0, 1, 2])]);
    }
}
