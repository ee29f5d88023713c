//! Exact decision of the Hamiltonian-cycle property.
//!
//! `is_hamiltonian` is the labeling oracle for corpus construction: it either
//! answers exactly (with a verifiable witness cycle on yes-instances) or fails
//! loudly when its node-expansion budget runs out. It never guesses.

use crate::graph::Graph;
use thiserror::Error;

/// Default search budget in node expansions.
pub const DEFAULT_EXPANSION_BUDGET: u64 = 100_000_000;

/// Node-count ceiling for the factorial brute-force oracle.
pub const BRUTE_FORCE_MAX_NODES: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    /// The search exceeded its expansion budget; the instance is undecided.
    #[error("undecided: expansion budget exhausted after {expanded} node expansions")]
    BudgetExceeded { expanded: u64 },
    #[error("graph with {n} nodes exceeds brute-force capacity {max}")]
    BruteForceCapacity { n: usize, max: usize },
}

/// Outcome of the exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub hamiltonian: bool,
    /// A Hamiltonian cycle (length n, implicit wrap to the first node) when
    /// `hamiltonian` is true.
    pub witness: Option<Vec<usize>>,
    /// Search-effort telemetry.
    pub nodes_expanded: u64,
}

/// A cheap proof that a graph cannot be Hamiltonian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FalseCertificate {
    /// Fewer than three nodes.
    TooFewNodes,
    /// Some node has degree below two.
    LowDegree { node: usize, degree: usize },
    Disconnected,
    /// Removing this node disconnects the graph; Hamiltonian graphs are
    /// 2-connected.
    ArticulationPoint { node: usize },
}

/// Result of the necessary-condition screen: either a certificate of
/// non-Hamiltonicity or no conclusion. Never a false negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Necessity {
    False(FalseCertificate),
    Unknown,
}

/// Screens quick necessary conditions: node count, minimum degree,
/// connectivity, and 2-connectivity.
pub fn necessary_condition_check(g: &Graph) -> Necessity {
    let n = g.n();
    if n < 3 {
        return Necessity::False(FalseCertificate::TooFewNodes);
    }
    for v in 0..n {
        let d = g.neighbors(v).len();
        if d < 2 {
            return Necessity::False(FalseCertificate::LowDegree { node: v, degree: d });
        }
    }
    if !g.is_connected() {
        return Necessity::False(FalseCertificate::Disconnected);
    }
    if let Some(node) = find_articulation_point(g) {
        return Necessity::False(FalseCertificate::ArticulationPoint { node });
    }
    Necessity::Unknown
}

/// First articulation point in DFS order, if any. Iterative lowlink DFS.
fn find_articulation_point(g: &Graph) -> Option<usize> {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![UNSEEN; n];
    let mut timer = 0usize;
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        let mut root_children = 0usize;
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(top) = stack.len().checked_sub(1) {
            let (u, i) = stack[top];
            if i < g.neighbors(u).len() {
                stack[top].1 += 1;
                let v = g.neighbors(u)[i];
                if disc[v] == UNSEEN {
                    parent[v] = u;
                    if u == root {
                        root_children += 1;
                    }
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    stack.push((v, 0));
                } else if v != parent[u] {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if p != root && low[u] >= disc[p] {
                        return Some(p);
                    }
                }
            }
        }
        if root_children >= 2 {
            return Some(root);
        }
    }
    None
}

/// Exact Hamiltonicity with the default expansion budget.
pub fn is_hamiltonian(g: &Graph) -> Result<OracleResult, OracleError> {
    is_hamiltonian_with_budget(g, DEFAULT_EXPANSION_BUDGET)
}

/// Exact Hamiltonicity by backtracking from node 0.
///
/// Pruning: remaining-graph connectivity from the path endpoint, degree-based
/// dead-end detection on unvisited nodes, and neighbor expansion in ascending
/// degree order. Exceeding `budget` node expansions aborts with an explicit
/// undecided error rather than a guess.
pub fn is_hamiltonian_with_budget(g: &Graph, budget: u64) -> Result<OracleResult, OracleError> {
    if let Necessity::False(_) = necessary_condition_check(g) {
        return Ok(OracleResult {
            hamiltonian: false,
            witness: None,
            nodes_expanded: 0,
        });
    }
    let n = g.n();
    let by_degree: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            let mut nb = g.neighbors(u).to_vec();
            nb.sort_by_key(|&v| (g.neighbors(v).len(), v));
            nb
        })
        .collect();

    let mut search = Search {
        g,
        order: &by_degree,
        visited: vec![false; n],
        path: Vec::with_capacity(n),
        expanded: 0,
        budget,
        scratch: vec![false; n],
        queue: Vec::with_capacity(n),
    };
    search.visited[0] = true;
    search.path.push(0);
    search.expanded = 1;
    let found = search.extend()?;
    let expanded = search.expanded;
    let witness = found.then(|| {
        debug_assert!(verify_hamiltonian_cycle(g, &search.path));
        search.path.clone()
    });
    Ok(OracleResult {
        hamiltonian: found,
        witness,
        nodes_expanded: expanded,
    })
}

struct Search<'a> {
    g: &'a Graph,
    order: &'a [Vec<usize>],
    visited: Vec<bool>,
    path: Vec<usize>,
    expanded: u64,
    budget: u64,
    scratch: Vec<bool>,
    queue: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self) -> Result<bool, OracleError> {
        let n = self.g.n();
        let last = *self.path.last().unwrap();
        if self.path.len() == n {
            return Ok(self.g.has_edge(last, 0));
        }
        if !self.feasible(last) {
            return Ok(false);
        }
        for idx in 0..self.order[last].len() {
            let v = self.order[last][idx];
            if self.visited[v] {
                continue;
            }
            self.expanded += 1;
            if self.expanded > self.budget {
                return Err(OracleError::BudgetExceeded {
                    expanded: self.expanded,
                });
            }
            self.visited[v] = true;
            self.path.push(v);
            if self.extend()? {
                return Ok(true);
            }
            self.path.pop();
            self.visited[v] = false;
        }
        Ok(false)
    }

    /// Checks that the partial path can still close into a Hamiltonian cycle:
    /// every unvisited node must keep two usable neighbors (unvisited or a
    /// path endpoint), and all unvisited nodes plus node 0 must be reachable
    /// from the current endpoint through unvisited nodes.
    fn feasible(&mut self, last: usize) -> bool {
        let n = self.g.n();
        for u in 0..n {
            if self.visited[u] {
                continue;
            }
            let mut usable = 0;
            for &w in self.g.neighbors(u) {
                if !self.visited[w] || w == last || w == 0 {
                    usable += 1;
                    if usable == 2 {
                        break;
                    }
                }
            }
            if usable < 2 {
                return false;
            }
        }

        self.scratch.fill(false);
        self.queue.clear();
        let mut reached = 0usize;
        let mut zero_reached = false;
        for &w in self.g.neighbors(last) {
            if !self.visited[w] && !self.scratch[w] {
                self.scratch[w] = true;
                self.queue.push(w);
                reached += 1;
            } else if w == 0 {
                zero_reached = true;
            }
        }
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            for &w in self.g.neighbors(u) {
                if !self.visited[w] && !self.scratch[w] {
                    self.scratch[w] = true;
                    self.queue.push(w);
                    reached += 1;
                } else if w == 0 {
                    zero_reached = true;
                }
            }
        }
        let unvisited = n - self.path.len();
        reached == unvisited && zero_reached
    }
}

/// Exhaustive permutation oracle for tests and cross-checks: fixes node 0 and
/// tries every ordering of the rest. Intentionally has no pruning.
pub fn brute_force_hamiltonian(g: &Graph) -> Result<bool, OracleError> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(OracleError::BruteForceCapacity {
            n,
            max: BRUTE_FORCE_MAX_NODES,
        });
    }
    if n < 3 {
        return Ok(false);
    }
    let mut rest: Vec<usize> = (1..n).collect();
    Ok(permute_and_check(g, &mut rest, 0))
}

fn permute_and_check(g: &Graph, rest: &mut [usize], k: usize) -> bool {
    if k == rest.len() {
        let mut prev = 0;
        for &v in rest.iter() {
            if !g.has_edge(prev, v) {
                return false;
            }
            prev = v;
        }
        return g.has_edge(prev, 0);
    }
    for i in k..rest.len() {
        rest.swap(k, i);
        if permute_and_check(g, rest, k + 1) {
            rest.swap(k, i);
            return true;
        }
        rest.swap(k, i);
    }
    false
}

/// Checks that `cycle` is a Hamiltonian cycle of `g`: length n, every node
/// exactly once, consecutive nodes (and last back to first) adjacent.
pub fn verify_hamiltonian_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.n();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    cycle
        .windows(2)
        .all(|w| g.has_edge(w[0], w[1]))
        && g.has_edge(cycle[n - 1], cycle[0])
}
