//! Deterministic and seeded graph families.
//!
//! Random generators draw from ChaCha8 seeded with the caller's `u64`, so a
//! seed reproduces the same graph on every platform.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

const MAX_CONNECTED_ATTEMPTS: usize = 100_000;

fn require_order(n: usize, min: usize) -> Result<(), GraphError> {
    if n < min {
        Err(GraphError::InvalidOrder { min, got: n })
    } else {
        Ok(())
    }
}

pub fn complete_graph(n: usize) -> Result<Graph, GraphError> {
    require_order(n, 1)?;
    let pairs: Vec<_> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    Graph::from_edge_list(n, &pairs)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    require_order(n, 3)?;
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edge_list(n, &pairs)
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    require_order(n, 1)?;
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edge_list(n, &pairs)
}

/// Star `K_{1,n-1}` centred at vertex 0.
pub fn star(n: usize) -> Result<Graph, GraphError> {
    require_order(n, 1)?;
    let pairs: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Graph::from_edge_list(n, &pairs)
}

/// Decodes a Prüfer sequence over `0..seq.len() + 2`.
fn tree_from_pruefer(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &a in seq {
        degree[a] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &a in seq {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer step always has a leaf");
        edges.push((leaf, a));
        degree[a] -= 1;
        if degree[a] == 1 {
            leaves.push(Reverse(a));
        }
    }
    let Reverse(u) = leaves.pop().unwrap();
    let Reverse(v) = leaves.pop().unwrap();
    edges.push((u, v));
    edges
}

fn tree_with_rng(n: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    match n {
        1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
            tree_from_pruefer(&seq)
        }
    }
}

/// Uniform labeled tree via a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    require_order(n, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Graph::from_edge_list(n, &tree_with_rng(n, &mut rng))
}

/// Erdős–Rényi `G(n, p)` draws, redrawn until connected.
pub fn random_connected(n: usize, edge_prob: f64, seed: u64) -> Result<Graph, GraphError> {
    require_order(n, 1)?;
    if !(edge_prob > 0.0 && edge_prob <= 1.0) {
        return Err(GraphError::InvalidProbability(edge_prob));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_CONNECTED_ATTEMPTS {
        let pairs: Vec<_> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .filter(|_| rng.random_bool(edge_prob))
            .collect();
        let g = Graph::from_edge_list(n, &pairs)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GraphError::NoConnectedDraw(MAX_CONNECTED_ATTEMPTS))
}

/// Random tree plus one uniformly chosen non-edge.
pub fn random_unicyclic(n: usize, seed: u64) -> Result<Graph, GraphError> {
    require_order(n, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree = Graph::from_edge_list(n, &tree_with_rng(n, &mut rng))?;
    let non_edges: Vec<_> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| !tree.has_edge(i, j))
        .collect();
    let extra = non_edges[rng.random_range(0..non_edges.len())];
    let mut pairs = tree.edges().to_vec();
    pairs.push(extra);
    Graph::from_edge_list(n, &pairs)
}
