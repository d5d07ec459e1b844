//! Brute-force enumeration of forests and TU-subgraphs.
//!
//! A TU-subgraph is an edge subset whose components are trees or unicyclic
//! graphs with an odd cycle. Summing weights over these subsets by size gives
//! the characteristic-polynomial coefficients of `L`, `Q` and of their reduced
//! forms `L1`, `Q1`, entirely independently of any matrix computation.
//!
//! Enumeration walks edge subsets in index order with a rollback union-find
//! that tracks bipartite parity, so a branch is cut as soon as it closes an
//! even cycle or a second cycle in one component.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

/// Hard cap on `e(G)` for exhaustive enumeration.
pub const MAX_ORACLE_EDGES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {0} edges; exhaustive enumeration is capped at {MAX_ORACLE_EDGES}")]
    TooLarge(usize),
    #[error("graph has no spanning tree")]
    ZeroTrees,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ComponentKind {
    Tree,
    OddUnicyclic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuComponent {
    pub vertices: Vec<usize>,
    pub edge_count: usize,
    pub kind: ComponentKind,
}

/// An edge subset whose every component is a tree or odd-unicyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuSubgraph {
    pub edge_subset: Vec<usize>,
    pub components: Vec<TuComponent>,
}

impl TuSubgraph {
    /// `V_0`: every vertex covered by the edge subset.
    pub fn vertex_support(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .components
            .iter()
            .flat_map(|c| c.vertices.iter().copied())
            .collect();
        v.sort_unstable();
        v
    }

    /// Number of odd-unicyclic components, `c`.
    pub fn unicyclic_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.kind == ComponentKind::OddUnicyclic)
            .count()
    }

    pub fn is_forest(&self) -> bool {
        self.unicyclic_count() == 0
    }

    /// `W(H) = 4^c · ∏ (1 + e(T_i))`.
    pub fn weight_w(&self) -> BigInt {
        self.components
            .iter()
            .map(|c| match c.kind {
                ComponentKind::Tree => BigInt::from(1 + c.edge_count),
                ComponentKind::OddUnicyclic => BigInt::from(4),
            })
            .product()
    }

    /// Restricted weight with respect to `v1`: a unicyclic component through
    /// `v1` scores 0, a tree through `v1` scores 1, the rest as in `W`.
    pub fn weight_w1(&self, v1: usize) -> BigInt {
        self.components
            .iter()
            .map(|c| {
                let touches = c.vertices.binary_search(&v1).is_ok();
                match (c.kind, touches) {
                    (ComponentKind::OddUnicyclic, true) => BigInt::zero(),
                    (ComponentKind::OddUnicyclic, false) => BigInt::from(4),
                    (ComponentKind::Tree, true) => BigInt::one(),
                    (ComponentKind::Tree, false) => BigInt::from(1 + c.edge_count),
                }
            })
            .product()
    }
}

/// Classifies the subgraph spanned by `edge_subset`; `None` means it is not a
/// TU-subgraph (an even cycle, or more edges than vertices in a component).
pub fn classify_subgraph(g: &Graph, edge_subset: &[usize]) -> Option<TuSubgraph> {
    let mut subset = edge_subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    let n = g.order();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &j in &subset {
        let (u, v) = g.edge(j);
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut colour = vec![u8::MAX; n];
    let mut components = Vec::new();
    for start in 0..n {
        if adj[start].is_empty() || colour[start] != u8::MAX {
            continue;
        }
        colour[start] = 0;
        let mut stack = vec![start];
        let mut vertices = vec![start];
        let mut odd = false;
        let mut degree_sum = 0;
        while let Some(u) = stack.pop() {
            degree_sum += adj[u].len();
            for &w in &adj[u] {
                if colour[w] == u8::MAX {
                    colour[w] = colour[u] ^ 1;
                    vertices.push(w);
                    stack.push(w);
                } else if colour[w] == colour[u] {
                    odd = true;
                }
            }
        }
        vertices.sort_unstable();
        let edge_count = degree_sum / 2;
        let kind = if edge_count + 1 == vertices.len() {
            ComponentKind::Tree
        } else if edge_count == vertices.len() && odd {
            ComponentKind::OddUnicyclic
        } else {
            return None;
        };
        components.push(TuComponent {
            vertices,
            edge_count,
            kind,
        });
    }
    Some(TuSubgraph {
        edge_subset: subset,
        components,
    })
}

/// Per-size signed weight totals: entry `j − 1` holds the coefficient for `j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedCount {
    coeffs: Vec<BigInt>,
}

impl WeightedCount {
    fn with_len(len: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); len],
        }
    }

    /// Coefficient for edge count `j` (1-based; zero outside the table).
    pub fn get(&self, j: usize) -> BigInt {
        j.checked_sub(1)
            .and_then(|i| self.coeffs.get(i))
            .cloned()
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn accumulate(&mut self, j: usize, w: &BigInt) {
        if (1..=self.coeffs.len()).contains(&j) {
            self.coeffs[j - 1] += w;
        }
    }

    fn apply_signs(mut self) -> Self {
        for (i, c) in self.coeffs.iter_mut().enumerate() {
            // Entry i is j = i + 1.
            if i % 2 == 0 {
                *c = -c.clone();
            }
        }
        self
    }
}

impl Serialize for WeightedCount {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

/// All four coefficient tables from a single enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTables {
    /// `ℓ_j`, `j = 1..n−1`.
    pub laplacian: WeightedCount,
    /// `p_j`, `j = 1..n`.
    pub signless: WeightedCount,
    /// `ℓ'_j`, `j = 1..n−1`.
    pub reduced_laplacian: WeightedCount,
    /// `p'_j`, `j = 1..n−1`.
    pub reduced_signless: WeightedCount,
}

/// Union-find over vertices with parity to the root, undo log, and per-root
/// bookkeeping of edge count and cycle presence.
struct ParityForest {
    parent: Vec<usize>,
    parity: Vec<u8>,
    size: Vec<usize>,
    edges: Vec<usize>,
    cyclic: Vec<bool>,
    touched: Vec<u32>,
    log: Vec<Undo>,
}

enum Undo {
    Merge {
        child: usize,
        root: usize,
        root_cyclic: bool,
    },
    Close {
        root: usize,
    },
}

impl ParityForest {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            parity: vec![0; n],
            size: vec![1; n],
            edges: vec![0; n],
            cyclic: vec![false; n],
            touched: vec![0; n],
            log: Vec::new(),
        }
    }

    fn find(&self, mut v: usize) -> (usize, u8) {
        let mut p = 0;
        while self.parent[v] != v {
            p ^= self.parity[v];
            v = self.parent[v];
        }
        (v, p)
    }

    /// Adds edge `{u, v}` if the result stays a TU-subgraph (and, when
    /// `acyclic`, a forest). Returns whether it was added.
    fn try_add(&mut self, u: usize, v: usize, acyclic: bool) -> bool {
        let (ru, pu) = self.find(u);
        let (rv, pv) = self.find(v);
        if ru == rv {
            // Closing a cycle: odd iff endpoints share a colour.
            if acyclic || self.cyclic[ru] || pu != pv {
                return false;
            }
            self.cyclic[ru] = true;
            self.edges[ru] += 1;
            self.log.push(Undo::Close { root: ru });
        } else {
            if self.cyclic[ru] && self.cyclic[rv] {
                return false;
            }
            let (child, root) = if self.size[ru] < self.size[rv] {
                (ru, rv)
            } else {
                (rv, ru)
            };
            self.parent[child] = root;
            self.parity[child] = pu ^ pv ^ 1;
            self.size[root] += self.size[child];
            self.edges[root] += self.edges[child] + 1;
            let root_cyclic = self.cyclic[root];
            self.cyclic[root] |= self.cyclic[child];
            self.log.push(Undo::Merge {
                child,
                root,
                root_cyclic,
            });
        }
        self.touched[u] += 1;
        self.touched[v] += 1;
        true
    }

    fn undo(&mut self, u: usize, v: usize) {
        self.touched[u] -= 1;
        self.touched[v] -= 1;
        match self.log.pop().expect("undo without add") {
            Undo::Close { root } => {
                self.cyclic[root] = false;
                self.edges[root] -= 1;
            }
            Undo::Merge {
                child,
                root,
                root_cyclic,
            } => {
                self.parent[child] = child;
                self.parity[child] = 0;
                self.size[root] -= self.size[child];
                self.edges[root] -= self.edges[child] + 1;
                self.cyclic[root] = root_cyclic;
            }
        }
    }

    /// `(W, W1)` of the current subset.
    fn weights(&self, v1: usize) -> (BigInt, BigInt) {
        let mut w = BigInt::one();
        let mut w1 = BigInt::one();
        let v1_root = if self.touched[v1] > 0 {
            Some(self.find(v1).0)
        } else {
            None
        };
        for r in 0..self.parent.len() {
            if self.parent[r] != r || self.edges[r] == 0 {
                continue;
            }
            let through_v1 = v1_root == Some(r);
            if self.cyclic[r] {
                w *= 4;
                if through_v1 {
                    w1 = BigInt::zero();
                } else {
                    w1 *= 4;
                }
            } else {
                let f = 1 + self.edges[r];
                w *= f;
                if !through_v1 {
                    w1 *= f;
                }
            }
        }
        (w, w1)
    }
}

fn check_size(g: &Graph) -> Result<(), OracleError> {
    if g.size() > MAX_ORACLE_EDGES {
        Err(OracleError::TooLarge(g.size()))
    } else {
        Ok(())
    }
}

/// Visits every TU edge subset (or every forest, when `acyclic`) exactly once,
/// including the empty one, passing its size and the union-find state.
fn enumerate(g: &Graph, acyclic: bool, visit: &mut dyn FnMut(usize, &ParityForest)) {
    fn rec(
        g: &Graph,
        start: usize,
        depth: usize,
        acyclic: bool,
        uf: &mut ParityForest,
        visit: &mut dyn FnMut(usize, &ParityForest),
    ) {
        visit(depth, uf);
        for j in start..g.size() {
            let (u, v) = g.edge(j);
            if uf.try_add(u, v, acyclic) {
                rec(g, j + 1, depth + 1, acyclic, uf, visit);
                uf.undo(u, v);
            }
        }
    }
    let mut uf = ParityForest::new(g.order());
    rec(g, 0, 0, acyclic, &mut uf, visit);
}

/// `ℓ_j`, `p_j`, `ℓ'_j`, `p'_j` from weighted subgraph sums, with `v1` as the
/// deleted vertex for the reduced tables.
pub fn coefficient_tables(g: &Graph, v1: usize) -> Result<CoefficientTables, OracleError> {
    check_size(g)?;
    if v1 >= g.order() {
        return Err(OracleError::VertexOutOfRange(v1));
    }
    let n = g.order();
    let mut lap = WeightedCount::with_len(n - 1);
    let mut sig = WeightedCount::with_len(n);
    let mut rlap = WeightedCount::with_len(n - 1);
    let mut rsig = WeightedCount::with_len(n - 1);
    enumerate(g, false, &mut |j, uf| {
        if j == 0 {
            return;
        }
        let (w, w1) = uf.weights(v1);
        let forest = (0..n).all(|r| uf.parent[r] != r || !uf.cyclic[r]);
        sig.accumulate(j, &w);
        rsig.accumulate(j, &w1);
        if forest {
            lap.accumulate(j, &w);
            rlap.accumulate(j, &w1);
        }
    });
    Ok(CoefficientTables {
        laplacian: lap.apply_signs(),
        signless: sig.apply_signs(),
        reduced_laplacian: rlap.apply_signs(),
        reduced_signless: rsig.apply_signs(),
    })
}

/// `ℓ_j = (−1)^j Σ W(F)` over forests `F` with `j` edges, `j = 1..n−1`.
pub fn laplacian_coeffs_bruteforce(g: &Graph) -> Result<WeightedCount, OracleError> {
    Ok(coefficient_tables(g, 0)?.laplacian)
}

/// `p_j = (−1)^j Σ W(H)` over TU-subgraphs `H` with `j` edges, `j = 1..n`.
pub fn signless_coeffs_bruteforce(g: &Graph) -> Result<WeightedCount, OracleError> {
    Ok(coefficient_tables(g, 0)?.signless)
}

/// `(ℓ'_j, p'_j)` with restricted weights relative to `v1`.
pub fn reduced_coeffs_bruteforce(
    g: &Graph,
    v1: usize,
) -> Result<(WeightedCount, WeightedCount), OracleError> {
    let t = coefficient_tables(g, v1)?;
    Ok((t.reduced_laplacian, t.reduced_signless))
}

/// Number of spanning trees by counting forests with `n − 1` edges.
pub fn spanning_tree_count_bruteforce(g: &Graph) -> Result<BigInt, OracleError> {
    check_size(g)?;
    let target = g.order() - 1;
    let mut count = 0u64;
    enumerate(g, true, &mut |j, _| {
        if j == target {
            count += 1;
        }
    });
    Ok(BigInt::from(count))
}

/// Every TU edge subset, classified, keyed by the sorted edge list. Intended
/// for small graphs in tests and diagnostics.
pub fn all_tu_subgraphs(g: &Graph) -> Result<BTreeMap<Vec<usize>, TuSubgraph>, OracleError> {
    check_size(g)?;
    let mut out = BTreeMap::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        g: &Graph,
        start: usize,
        uf: &mut ParityForest,
        chosen: &mut Vec<usize>,
        out: &mut BTreeMap<Vec<usize>, TuSubgraph>,
    ) {
        let h = classify_subgraph(g, chosen).expect("enumerator only yields TU subsets");
        out.insert(chosen.clone(), h);
        for j in start..g.size() {
            let (u, v) = g.edge(j);
            if uf.try_add(u, v, false) {
                chosen.push(j);
                rec(g, j + 1, uf, chosen, out);
                chosen.pop();
                uf.undo(u, v);
            }
        }
    }
    let mut uf = ParityForest::new(g.order());
    rec(g, 0, &mut uf, &mut chosen, &mut out);
    Ok(out)
}

/// `τ = 2^t · s` with `s` odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCountFactored {
    pub tau: BigInt,
    pub t: u64,
    pub s: BigInt,
}

impl Serialize for TreeCountFactored {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("TreeCountFactored", 3)?;
        st.serialize_field("tau", &self.tau.to_string())?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("s", &self.s.to_string())?;
        st.end()
    }
}

pub fn factor_tree_count(tau: &BigInt) -> Result<TreeCountFactored, OracleError> {
    if tau <= &BigInt::zero() {
        return Err(OracleError::ZeroTrees);
    }
    let t = tau.trailing_zeros().expect("nonzero");
    Ok(TreeCountFactored {
        tau: tau.clone(),
        t,
        s: tau >> t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle, path, random_connected};

    fn ints(w: &WeightedCount) -> Vec<i64> {
        w.values()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    fn c3() -> Graph {
        cycle(3).unwrap()
    }

    /// Plain 2^e enumeration through `classify_subgraph`.
    fn naive_tables(g: &Graph, v1: usize) -> CoefficientTables {
        let n = g.order();
        let mut t = CoefficientTables {
            laplacian: WeightedCount::with_len(n - 1),
            signless: WeightedCount::with_len(n),
            reduced_laplacian: WeightedCount::with_len(n - 1),
            reduced_signless: WeightedCount::with_len(n - 1),
        };
        for mask in 1u32..(1 << g.size()) {
            let subset: Vec<usize> = (0..g.size()).filter(|j| mask >> j & 1 == 1).collect();
            if let Some(h) = classify_subgraph(g, &subset) {
                let j = subset.len();
                t.signless.accumulate(j, &h.weight_w());
                t.reduced_signless.accumulate(j, &h.weight_w1(v1));
                if h.is_forest() {
                    t.laplacian.accumulate(j, &h.weight_w());
                    t.reduced_laplacian.accumulate(j, &h.weight_w1(v1));
                }
            }
        }
        CoefficientTables {
            laplacian: t.laplacian.apply_signs(),
            signless: t.signless.apply_signs(),
            reduced_laplacian: t.reduced_laplacian.apply_signs(),
            reduced_signless: t.reduced_signless.apply_signs(),
        }
    }

    #[test]
    fn classification() {
        let h = classify_subgraph(&c3(), &[0, 1, 2]).unwrap();
        assert_eq!(h.unicyclic_count(), 1);
        assert_eq!(h.components[0].kind, ComponentKind::OddUnicyclic);
        assert!(classify_subgraph(&cycle(4).unwrap(), &[0, 1, 2, 3]).is_none());
        let p = classify_subgraph(&path(3).unwrap(), &[0, 1]).unwrap();
        assert_eq!(p.components.len(), 1);
        assert_eq!(p.components[0].kind, ComponentKind::Tree);
        assert!(classify_subgraph(&complete_graph(4).unwrap(), &[0, 1, 2, 3, 4]).is_none());
        let empty = classify_subgraph(&c3(), &[]).unwrap();
        assert!(empty.components.is_empty());
        assert_eq!(empty.weight_w(), BigInt::one());
    }

    #[test]
    fn weights() {
        let tri = classify_subgraph(&c3(), &[0, 1, 2]).unwrap();
        assert_eq!(tri.weight_w(), BigInt::from(4));
        assert_eq!(tri.weight_w1(0), BigInt::zero());
        let p3 = classify_subgraph(&path(3).unwrap(), &[0, 1]).unwrap();
        assert_eq!(p3.weight_w(), BigInt::from(3));
        assert_eq!(p3.weight_w1(0), BigInt::one());
        // Triangle on {0,1,2} plus the disjoint edge {3,4}.
        let g = Graph::from_edge_list(5, &[(0, 1), (0, 2), (1, 2), (3, 4)]).unwrap();
        let h = classify_subgraph(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(h.weight_w(), BigInt::from(8));
        assert_eq!(h.vertex_support(), vec![0, 1, 2, 3, 4]);
        // Two-edge tree away from v1.
        let g = Graph::from_edge_list(4, &[(1, 2), (2, 3)]).unwrap();
        let t = classify_subgraph(&g, &[0, 1]).unwrap();
        assert_eq!(t.weight_w1(0), BigInt::from(3));
    }

    #[test]
    fn hand_enumerated_tables() {
        let t = coefficient_tables(&c3(), 0).unwrap();
        assert_eq!(ints(&t.laplacian), vec![-6, 9]);
        assert_eq!(ints(&t.signless), vec![-6, 9, -4]);
        assert_eq!(ints(&t.reduced_laplacian), vec![-4, 3]);
        assert_eq!(ints(&t.reduced_signless), vec![-4, 3]);

        let p3 = path(3).unwrap();
        let t = coefficient_tables(&p3, 0).unwrap();
        assert_eq!(ints(&t.laplacian), vec![-4, 3]);
        assert_eq!(ints(&t.signless), vec![-4, 3, 0]);
        let (rl, _) = reduced_coeffs_bruteforce(&p3, 1).unwrap();
        assert_eq!(ints(&rl), vec![-2, 1]);

        let c4 = signless_coeffs_bruteforce(&cycle(4).unwrap()).unwrap();
        assert_eq!(c4.get(4), BigInt::zero());

        let k1 = Graph::empty(1).unwrap();
        assert!(laplacian_coeffs_bruteforce(&k1).unwrap().is_empty());
    }

    #[test]
    fn spanning_trees_and_factoring() {
        assert_eq!(
            spanning_tree_count_bruteforce(&c3()).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            spanning_tree_count_bruteforce(&complete_graph(4).unwrap()).unwrap(),
            BigInt::from(16)
        );
        assert_eq!(
            spanning_tree_count_bruteforce(&path(3).unwrap()).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            spanning_tree_count_bruteforce(&complete_graph(8).unwrap()),
            Err(OracleError::TooLarge(28))
        );

        let f = factor_tree_count(&BigInt::from(1296)).unwrap();
        assert_eq!((f.t, f.s), (4, BigInt::from(81)));
        let f = factor_tree_count(&BigInt::from(3)).unwrap();
        assert_eq!((f.t, f.s), (0, BigInt::from(3)));
        let f = factor_tree_count(&BigInt::from(4)).unwrap();
        assert_eq!((f.t, f.s), (2, BigInt::one()));
        assert_eq!(
            factor_tree_count(&BigInt::zero()),
            Err(OracleError::ZeroTrees)
        );
    }

    #[test]
    fn pruned_enumeration_matches_naive_subset_scan() {
        for seed in 0..25 {
            let g = random_connected(6, 0.5, seed).unwrap();
            for v1 in 0..g.order() {
                assert_eq!(
                    coefficient_tables(&g, v1).unwrap(),
                    naive_tables(&g, v1),
                    "seed {seed}"
                );
            }
        }
        let k5 = complete_graph(5).unwrap();
        assert_eq!(coefficient_tables(&k5, 2).unwrap(), naive_tables(&k5, 2));
        let tu = all_tu_subgraphs(&k5).unwrap();
        let naive = (0u32..1 << 10)
            .filter(|m| {
                let s: Vec<usize> = (0..10).filter(|j| m >> j & 1 == 1).collect();
                classify_subgraph(&k5, &s).is_some()
            })
            .count();
        assert_eq!(tu.len(), naive);
    }

    #[test]
    fn restricted_weight_never_exceeds_weight() {
        let g = random_connected(6, 0.6, 3).unwrap();
        for h in all_tu_subgraphs(&g).unwrap().values() {
            for v1 in 0..g.order() {
                assert!(h.weight_w1(v1) <= h.weight_w());
                if !h.vertex_support().contains(&v1) {
                    assert_eq!(h.weight_w1(v1), h.weight_w());
                }
            }
        }
    }
}
