//! Unit-scale max-flow on dense capacity matrices (a few hundred nodes at most).

use std::collections::VecDeque;

pub(crate) struct FlowNet {
    orig: Vec<Vec<usize>>,
    cap: Vec<Vec<usize>>,
}

impl FlowNet {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowNet {
            orig: vec![vec![0; nodes]; nodes],
            cap: vec![vec![0; nodes]; nodes],
        }
    }

    pub(crate) fn add(&mut self, u: usize, v: usize, c: usize) {
        self.orig[u][v] += c;
        self.cap[u][v] += c;
    }

    /// Edmonds–Karp; stops once `limit` units are routed.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let Some(parent) = self.bfs(s, t) else { break };
            let mut bottleneck = limit - flow;
            let mut v = t;
            while v != s {
                let u = parent[v];
                bottleneck = bottleneck.min(self.cap[u][v]);
                v = u;
            }
            let mut v = t;
            while v != s {
                let u = parent[v];
                self.cap[u][v] -= bottleneck;
                self.cap[v][u] += bottleneck;
                v = u;
            }
            flow += bottleneck;
        }
        flow
    }

    /// Flow currently routed along the original arc `u → v`.
    pub(crate) fn flow_on(&self, u: usize, v: usize) -> usize {
        self.orig[u][v].saturating_sub(self.cap[u][v])
    }

    /// Nodes reachable from `s` in the residual network.
    pub(crate) fn residual_reach(&self, s: usize) -> Vec<bool> {
        let n = self.cap.len();
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if !seen[v] && self.cap[u][v] > 0 {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    fn bfs(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let n = self.cap.len();
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if parent[v] == usize::MAX && self.cap[u][v] > 0 {
                    parent[v] = u;
                    if v == t {
                        return Some(parent);
                    }
                    queue.push_back(v);
                }
            }
        }
        None
    }
}
