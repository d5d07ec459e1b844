//! Simple undirected graphs with canonical edge indexing.
//!
//! Vertices are `0..order`. Edges are stored as `(u, v)` with `u < v`, sorted
//! lexicographically; the position of an edge in that list is its index, and
//! every incidence-matrix column and line-graph vertex follows it. Vertex 0 is
//! the distinguished vertex whose row and column are deleted to form the
//! reduced Laplacians.

mod generators;
mod graph6;

use std::collections::VecDeque;

use thiserror::Error;

use crate::linalg::IntMatrix;

pub use generators::{
    complete_graph, cycle, path, random_connected, random_tree, random_unicyclic, star,
};
pub use graph6::{parse_graph6, read_graph6_lines, to_graph6, MAX_GRAPH6_ORDER};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph order must be at least {min}, got {got}")]
    InvalidOrder { min: usize, got: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("graph has no edges")]
    EmptyEdgeSet,
    #[error("orientation has {got} flags but graph has {expected} edges")]
    OrientationLengthMismatch { expected: usize, got: usize },
    #[error("graph is not connected and unicyclic")]
    NotUnicyclic,
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("order {0} exceeds the graph6 short-form limit of 62")]
    OrderTooLarge(usize),
    #[error("edge probability {0} must lie in (0, 1]")]
    InvalidProbability(f64),
    #[error("no connected graph drawn after {0} attempts")]
    NoConnectedDraw(usize),
}

/// A simple undirected labeled graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a canonical graph from an unordered list of vertex pairs.
    ///
    /// Pairs may be given in either orientation; repeated pairs are rejected.
    pub fn from_edge_list(order: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        if order < 1 {
            return Err(GraphError::InvalidOrder { min: 1, got: order });
        }
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            for vertex in [a, b] {
                if vertex >= order {
                    return Err(GraphError::VertexOutOfRange { vertex, order });
                }
            }
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self { order, edges })
    }

    /// Graph on `order` vertices with no edges.
    pub fn empty(order: usize) -> Result<Self, GraphError> {
        Self::from_edge_list(order, &[])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of edges, `e(G)`.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    /// Index of edge `{u, v}`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.order];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.order];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Line graph: one vertex per edge, adjacent iff the edges share an endpoint.
    pub fn line_graph(&self) -> Graph {
        let mut pairs = Vec::new();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.order];
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            incident[u].push(j);
            incident[v].push(j);
        }
        for list in &incident {
            for (a, &i) in list.iter().enumerate() {
                for &j in &list[a + 1..] {
                    pairs.push((i, j));
                }
            }
        }
        if self.edges.is_empty() {
            // The only place an order-0 graph can arise.
            return Graph {
                order: 0,
                edges: Vec::new(),
            };
        }
        // Two distinct simple edges share at most one endpoint, so no pair repeats.
        Graph::from_edge_list(self.edges.len(), &pairs).expect("line graph pairs are simple")
    }

    /// Unoriented 0/1 vertex-edge incidence matrix `X` (n × e).
    pub fn incidence_unoriented(&self) -> Result<IntMatrix, GraphError> {
        if self.edges.is_empty() {
            return Err(GraphError::EmptyEdgeSet);
        }
        let mut x = IntMatrix::zeros(self.order, self.edges.len());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            x.set(u, j, 1);
            x.set(v, j, 1);
        }
        Ok(x)
    }

    /// Oriented 0/±1 incidence matrix `D`: +1 at the tail, −1 at the head.
    pub fn incidence_oriented(&self, orientation: &Orientation) -> Result<IntMatrix, GraphError> {
        if self.edges.is_empty() {
            return Err(GraphError::EmptyEdgeSet);
        }
        if orientation.len() != self.edges.len() {
            return Err(GraphError::OrientationLengthMismatch {
                expected: self.edges.len(),
                got: orientation.len(),
            });
        }
        let mut d = IntMatrix::zeros(self.order, self.edges.len());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            let (tail, head) = if orientation.forward(j) {
                (u, v)
            } else {
                (v, u)
            };
            d.set(tail, j, 1);
            d.set(head, j, -1);
        }
        Ok(d)
    }

    pub fn adjacency(&self) -> IntMatrix {
        let mut a = IntMatrix::zeros(self.order, self.order);
        for &(u, v) in &self.edges {
            a.set(u, v, 1);
            a.set(v, u, 1);
        }
        a
    }

    /// `L = Deg − A`.
    pub fn laplacian(&self) -> IntMatrix {
        self.degree_plus_signed_adjacency(-1)
    }

    /// `Q = Deg + A`.
    pub fn signless_laplacian(&self) -> IntMatrix {
        self.degree_plus_signed_adjacency(1)
    }

    fn degree_plus_signed_adjacency(&self, sign: i64) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.order, self.order);
        for (v, d) in self.degrees().into_iter().enumerate() {
            m.set(v, v, d as i64);
        }
        for &(u, v) in &self.edges {
            m.set(u, v, sign);
            m.set(v, u, sign);
        }
        m
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbors();
        let mut seen = vec![false; self.order];
        let mut parts = Vec::new();
        for start in 0..self.order {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut part = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        part.push(w);
                        queue.push_back(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Two-colouring per component; `None` if some component has an odd cycle.
    fn two_colouring(&self) -> Option<Vec<u8>> {
        let adj = self.neighbors();
        let mut colour = vec![u8::MAX; self.order];
        for start in 0..self.order {
            if colour[start] != u8::MAX {
                continue;
            }
            colour[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if colour[w] == u8::MAX {
                        colour[w] = colour[u] ^ 1;
                        queue.push_back(w);
                    } else if colour[w] == colour[u] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_some()
    }

    /// Number of components that are bipartite (isolated vertices included).
    pub fn bipartite_component_count(&self) -> usize {
        self.components()
            .into_iter()
            .filter(|part| self.induced(part).is_bipartite())
            .count()
    }

    /// Subgraph induced on `vertices`, relabelled to `0..vertices.len()` in
    /// the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut position = vec![usize::MAX; self.order];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let pairs: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| position[u] != usize::MAX && position[v] != usize::MAX)
            .map(|&(u, v)| (position[u], position[v]))
            .collect();
        Graph::from_edge_list(vertices.len().max(1), &pairs).expect("induced subgraph is simple")
    }

    pub fn is_unicyclic(&self) -> bool {
        self.size() == self.order && self.is_connected()
    }

    /// Length of the unique cycle of a connected unicyclic graph.
    pub fn cycle_length_of_unicyclic(&self) -> Result<usize, GraphError> {
        if !self.is_unicyclic() {
            return Err(GraphError::NotUnicyclic);
        }
        // Strip leaves until only the cycle remains.
        let adj = self.neighbors();
        let mut deg = self.degrees();
        let mut removed = vec![false; self.order];
        let mut leaves: Vec<usize> = (0..self.order).filter(|&v| deg[v] == 1).collect();
        while let Some(v) = leaves.pop() {
            removed[v] = true;
            for &w in &adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        leaves.push(w);
                    }
                }
            }
        }
        Ok(removed.iter().filter(|r| !**r).count())
    }
}

/// Direction of every edge: `true` means `u → v` for edge `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation(Vec<bool>);

impl Orientation {
    pub fn new(flags: Vec<bool>) -> Self {
        Self(flags)
    }

    /// Every edge from its lower endpoint to its higher endpoint.
    pub fn default_for(g: &Graph) -> Self {
        Self(vec![true; g.size()])
    }

    pub fn random<R: rand::Rng + ?Sized>(g: &Graph, rng: &mut R) -> Self {
        Self((0..g.size()).map(|_| rng.random()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn forward(&self, edge: usize) -> bool {
        self.0[edge]
    }
}
