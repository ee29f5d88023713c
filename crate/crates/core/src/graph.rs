//! Undirected simple graphs with sorted adjacency lists.

use thiserror::Error;

/// Soft capacity for this artifact; corpora stay far below it.
pub const MAX_NODES: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("self-loop at node {node} is not allowed in a simple graph")]
    SelfLoop { node: usize },
    #[error("node count {n} exceeds the supported maximum {max}")]
    TooManyNodes { n: usize, max: usize },
}

/// Undirected simple graph on nodes `0..n`.
///
/// Immutable after construction: adjacency is symmetric, sorted, deduplicated,
/// and free of self-loops. Values are cheap to share read-only across threads.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_NODES {
            return Err(GraphError::TooManyNodes { n, max: MAX_NODES });
        }
        Ok(Graph {
            n,
            adj: vec![Vec::new(); n],
        })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse silently;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::NodeOutOfRange { node: u, n });
            }
            if v >= n {
                return Err(GraphError::NodeOutOfRange { node: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { node: u });
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        for list in &mut g.adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        if v >= self.n {
            return Err(GraphError::NodeOutOfRange { node: v, n: self.n });
        }
        Ok(self.adj[v].len())
    }

    /// Sorted neighbor list of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` pairs with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Connectivity by breadth-first traversal from node 0.
    ///
    /// Conventions: `n = 0` is not connected, `n = 1` is.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }
}

/// The 5-node graph of the first fixture adjacency matrix (Hamiltonian).
pub fn fixture_a() -> Graph {
    Graph::from_edge_list(5, &[(0, 1), (0, 4), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
}

/// The 5-node graph of the second fixture adjacency matrix (not Hamiltonian:
/// node 0 is an articulation point).
pub fn fixture_b() -> Graph {
    Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 4), (2, 3)]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(0).unwrap(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
    }

    #[test]
    fn fixture_a_degree_sequence() {
        let g = fixture_a();
        let degs: Vec<usize> = (0..5).map(|v| g.degree(v).unwrap()).collect();
        assert_eq!(degs, vec![2, 3, 2, 3, 2]);
    }

    #[test]
    fn single_isolated_node() {
        let g = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
        assert!(g.is_connected());
    }

    #[test]
    fn rejects_out_of_range_endpoint() {
        let err = Graph::from_edge_list(3, &[(0, 3)]).unwrap_err();
        assert_eq!(err, GraphError::NodeOutOfRange { node: 3, n: 3 });
    }

    #[test]
    fn rejects_self_loop() {
        let err = Graph::from_edge_list(3, &[(1, 1)]).unwrap_err();
        assert_eq!(err, GraphError::SelfLoop { node: 1 });
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edge_list(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn adjacency_symmetric_after_construction() {
        let g = fixture_b();
        for u in 0..g.n() {
            for &v in g.neighbors(u) {
                assert!(g.has_edge(v, u), "asymmetric edge ({u},{v})");
            }
        }
    }

    #[test]
    fn degree_out_of_range_is_error() {
        let g = fixture_a();
        assert!(g.degree(5).is_err());
    }

    #[test]
    fn connectivity() {
        // Two disjoint edges on 4 nodes.
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert!(fixture_a().is_connected());
        assert!(!Graph::empty(0).unwrap().is_connected());
    }

    #[test]
    fn edges_sorted() {
        let g = fixture_a();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 4), (1, 2), (1, 3), (2, 3), (3, 4)]);
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        assert_eq!(edges, sorted);
    }

    #[test]
    fn node_cap_enforced() {
        assert!(Graph::empty(MAX_NODES).is_ok());
        assert!(Graph::empty(MAX_NODES + 1).is_err());
    }
}
