//! Small integral max-flow (Dinic) on unit-scale networks.
//!
//! Capacities are integers and augmenting paths are found by BFS levels plus
//! DFS blocking flow, so the returned flow is always integral. Network sizes
//! here are a few thousand nodes at most.

use alloc::vec;
use alloc::vec::Vec;

pub struct MaxFlow {
    to: Vec<u32>,
    residual: Vec<i64>,
    original: Vec<i64>,
    adj: Vec<Vec<u32>>,
}

impl MaxFlow {
    pub fn new(nodes: usize) -> Self {
        MaxFlow {
            to: Vec::new(),
            residual: Vec::new(),
            original: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    /// Add a directed edge and its residual twin; returns the edge id.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> usize {
        debug_assert!(cap >= 0);
        let id = self.to.len();
        self.to.push(to as u32);
        self.residual.push(cap);
        self.original.push(cap);
        self.adj[from].push(id as u32);
        self.to.push(from as u32);
        self.residual.push(0);
        self.original.push(0);
        self.adj[to].push(id as u32 + 1);
        id
    }

    /// Flow currently assigned to the edge.
    pub fn flow(&self, edge: usize) -> i64 {
        self.original[edge] - self.residual[edge]
    }

    pub fn run(&mut self, source: usize, sink: usize) -> i64 {
        let n = self.adj.len();
        let mut total = 0;
        loop {
            // BFS level graph
            let mut level = vec![u32::MAX; n];
            level[source] = 0;
            let mut queue = alloc::collections::VecDeque::new();
            queue.push_back(source);
            while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.to[e as usize] as usize;
                    if self.residual[e as usize] > 0 && level[v] == u32::MAX {
                        level[v] = level[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if level[sink] == u32::MAX {
                return total;
            }
            let mut iter = vec![0usize; n];
            loop {
                let pushed = self.dfs(source, sink, i64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn dfs(&mut self, u: usize, sink: usize, limit: i64, level: &[u32], iter: &mut [usize]) -> i64 {
        if u == sink {
            return limit;
        }
        while iter[u] < self.adj[u].len() {
            let e = self.adj[u][iter[u]] as usize;
            let v = self.to[e] as usize;
            if self.residual[e] > 0 && level[v] == level[u] + 1 {
                let pushed = self.dfs(v, sink, limit.min(self.residual[e]), level, iter);
                if pushed > 0 {
                    self.residual[e] -= pushed;
                    self.residual[e ^ 1] += pushed;
                    return pushed;
                }
            }
            iter[u] += 1;
        }
        0
    }
}
