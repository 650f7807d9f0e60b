//! Dinic's maximum flow on integer capacities.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    rev: usize,
    cap: i64,
}

#[derive(Debug, Clone)]
pub struct MaxFlow {
    adj: Vec<Vec<Arc>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

/// Handle to an arc added with [`MaxFlow::add_arc`], used to read its flow.
#[derive(Debug, Clone, Copy)]
pub struct ArcRef {
    from: usize,
    index: usize,
    cap: i64,
}

impl MaxFlow {
    pub fn new(nodes: usize) -> Self {
        MaxFlow { adj: vec![Vec::new(); nodes], level: vec![0; nodes], iter: vec![0; nodes] }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> ArcRef {
        debug_assert!(cap >= 0);
        let (fi, ti) = (self.adj[from].len(), self.adj[to].len() + usize::from(from == to));
        self.adj[from].push(Arc { to, rev: ti, cap });
        self.adj[to].push(Arc { to: from, rev: fi, cap: 0 });
        ArcRef { from, index: fi, cap }
    }

    /// An undirected edge: capacity `cap` in each direction.
    pub fn add_edge(&mut self, a: usize, b: usize, cap: i64) {
        let (ai, bi) = (self.adj[a].len(), self.adj[b].len());
        self.adj[a].push(Arc { to: b, rev: bi, cap });
        self.adj[b].push(Arc { to: a, rev: ai, cap });
    }

    pub fn flow_on(&self, arc: ArcRef) -> i64 {
        arc.cap - self.adj[arc.from][arc.index].cap
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for a in &self.adj[v] {
                if a.cap > 0 && self.level[a.to] < 0 {
                    self.level[a.to] = self.level[v] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: i64) -> i64 {
        if v == t {
            return pushed;
        }
        while self.iter[v] < self.adj[v].len() {
            let i = self.iter[v];
            let (to, cap) = (self.adj[v][i].to, self.adj[v][i].cap);
            if cap > 0 && self.level[v] < self.level[to] {
                let d = self.dfs(to, t, pushed.min(cap));
                if d > 0 {
                    self.adj[v][i].cap -= d;
                    let rev = self.adj[v][i].rev;
                    self.adj[to][rev].cap += d;
                    return d;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    /// Pushes up to `limit` units from `s` to `t` and returns the amount pushed.
    pub fn run_limited(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut total = 0;
        while total < limit && self.bfs(s, t) {
            self.iter.fill(0);
            loop {
                let f = self.dfs(s, t, limit - total);
                if f == 0 {
                    break;
                }
                total += f;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    pub fn run(&mut self, s: usize, t: usize) -> i64 {
        self.run_limited(s, t, i64::MAX)
    }

    /// Nodes reachable from `s` in the residual network. After a maximum
    /// flow this is the inclusion-minimal source side of a minimum cut.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for a in &self.adj[v] {
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    stack.push(a.to);
                }
            }
        }
        seen
    }
}
