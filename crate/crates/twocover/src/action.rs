//! Finite groups as verified multiplication tables, and right actions of such
//! groups on graphs by automorphisms.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMap};

/// A finite group on elements `0..order`, presented by its full multiplication
/// table. Group axioms are verified on construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<usize>, // row-major: mul[a * order + b] = a * b
    identity: usize,
    inv: Vec<usize>,
}

impl GroupTable {
    pub fn new(order: usize, mul: Vec<usize>) -> Result<GroupTable> {
        if order == 0 {
            return Err(Error::NotGroup("a group has at least one element".into()));
        }
        if mul.len() != order * order {
            return Err(Error::NotGroup(format!(
                "table has {} entries for order {order}",
                mul.len()
            )));
        }
        if let Some(&x) = mul.iter().find(|&&x| x >= order) {
            return Err(Error::NotGroup(format!("table entry {x} out of range")));
        }
        let at = |a: usize, b: usize| mul[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| Error::NotGroup("no identity element".into()))?;
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::NotGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            inv[a] = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::NotGroup(format!("element {a} has no inverse")))?;
        }
        Ok(GroupTable { order, mul, identity, inv })
    }

    /// Cyclic group of order `n` with addition mod `n`.
    pub fn cyclic(n: usize) -> Result<GroupTable> {
        if n == 0 {
            return Err(Error::NotGroup("cyclic group needs order >= 1".into()));
        }
        let mul = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        GroupTable::new(n, mul)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }
}

/// A right action of a finite group on the vertex set of a graph, with every
/// element acting as a graph automorphism. Verified on construction.
#[derive(Clone, Debug)]
pub struct GroupAction {
    graph: Graph,
    group: GroupTable,
    act: Vec<usize>, // act[v * order + e] = v . e
}

impl GroupAction {
    pub fn new(graph: Graph, group: GroupTable, act: Vec<usize>) -> Result<GroupAction> {
        let n = graph.vertex_count();
        let m = group.order();
        if act.len() != n * m {
            return Err(Error::NotAction(format!("action table has {} entries for {n} x {m}", act.len())));
        }
        let a = GroupAction { graph, group, act };
        for v in 0..n {
            if a.act(v, a.group.identity()) != v {
                return Err(Error::NotAction(format!("identity moves vertex {v}")));
            }
            for g in 0..m {
                if a.act(v, g) >= n {
                    return Err(Error::NotAction(format!("vertex {v} . {g} out of range")));
                }
                for h in 0..m {
                    if a.act(v, a.group.mul(g, h)) != a.act(a.act(v, g), h) {
                        return Err(Error::NotAction(format!(
                            "action axiom fails at vertex {v}, elements ({g}, {h})"
                        )));
                    }
                }
            }
        }
        for g in 0..m {
            // each element acts as an automorphism: a permutation preserving
            // adjacency in both directions
            let mut hit = vec![false; n];
            for v in 0..n {
                hit[a.act(v, g)] = true;
            }
            if hit.iter().any(|&h| !h) {
                return Err(Error::NotAction(format!("element {g} does not act bijectively")));
            }
            for (x, y) in a.graph.edges() {
                if !a.graph.has_edge(a.act(x, g), a.act(y, g)) {
                    return Err(Error::NotAction(format!(
                        "element {g} does not preserve edge ({x}, {y})"
                    )));
                }
            }
        }
        Ok(a)
    }

    /// Action of the cyclic group generated by one automorphism `tau`
    /// (given by its vertex images); the order is computed.
    pub fn cyclic_from(graph: Graph, tau: &[usize]) -> Result<GroupAction> {
        let n = graph.vertex_count();
        if tau.len() != n {
            return Err(Error::NotAction("permutation length mismatch".into()));
        }
        let mut powers: Vec<Vec<usize>> = vec![(0..n).collect()];
        loop {
            let prev = powers.last().unwrap();
            let next: Vec<usize> = prev.iter().map(|&v| tau[v]).collect();
            if next.iter().enumerate().all(|(i, &v)| i == v) {
                break;
            }
            if powers.len() > n {
                return Err(Error::NotAction("not a permutation of finite order".into()));
            }
            powers.push(next);
        }
        let order = powers.len();
        let group = GroupTable::cyclic(order)?;
        let act = (0..n).flat_map(|v| (0..order).map(move |e| powers[e][v])).collect();
        GroupAction::new(graph, group, act)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn act(&self, v: usize, g: usize) -> usize {
        self.act[v * self.group.order() + g]
    }

    /// True when no non-identity element fixes a vertex.
    pub fn is_free(&self) -> bool {
        (0..self.graph.vertex_count()).all(|v| {
            (0..self.group.order())
                .all(|g| g == self.group.identity() || self.act(v, g) != v)
        })
    }

    /// Orbits as sorted vertex lists, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.graph.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if seen[v] {
                continue;
            }
            let mut orbit: Vec<usize> =
                (0..self.group.order()).map(|g| self.act(v, g)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &u in &orbit {
                seen[u] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Quotient graph `G / Γ` on the orbits, together with the projection map.
    pub fn quotient(&self) -> (Graph, GraphMap) {
        let orbits = self.orbits();
        self.graph.quotient_by_partition(&orbits).expect("orbits partition the vertex set")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::find_isomorphism;

    #[test]
    fn cyclic_table_is_a_group() {
        let z6 = GroupTable::cyclic(6).unwrap();
        assert_eq!(z6.identity(), 0);
        assert_eq!(z6.mul(4, 5), 3);
        assert_eq!(z6.inv(2), 4);
    }

    #[test]
    fn bad_tables_rejected() {
        // constant table: no identity
        assert!(GroupTable::new(2, vec![0, 0, 0, 0]).is_err());
        assert!(GroupTable::new(2, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn rotation_action_on_c6() {
        let c6 = Graph::cycle(6).unwrap();
        let tau: Vec<usize> = (0..6).map(|x| (x + 3) % 6).collect();
        let a = GroupAction::cyclic_from(c6, &tau).unwrap();
        assert_eq!(a.group().order(), 2);
        assert!(a.is_free());
        let (q, _) = a.quotient();
        assert_eq!(q, Graph::cycle(3).unwrap());
    }

    #[test]
    fn reflection_action_on_c8_quotient_has_two_loops() {
        let c8 = Graph::cycle(8).unwrap();
        let tau: Vec<usize> = (0..8).map(|x| (8 - 1 - x) % 8).collect();
        let a = GroupAction::cyclic_from(c8, &tau).unwrap();
        assert!(a.is_free());
        let (q, _) = a.quotient();
        let loops: Vec<usize> = q.vertices().filter(|&v| q.has_loop(v)).collect();
        assert_eq!(loops.len(), 2);
        let expected =
            Graph::new(4, &[(0, 0), (0, 1), (1, 2), (2, 3), (3, 3)]).unwrap();
        assert!(find_isomorphism(&q, &expected).is_some());
    }

    #[test]
    fn non_automorphism_rejected() {
        let p2 = Graph::path(2);
        // swapping an endpoint with the middle breaks adjacency
        assert!(GroupAction::cyclic_from(p2, &[1, 0, 2]).is_err());
    }
}
