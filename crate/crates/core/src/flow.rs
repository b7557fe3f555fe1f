//! Small Dinic max-flow over paired directed arcs with u64 capacities.

pub(crate) const INF: u64 = u64::MAX / 4;

struct Arc {
    to: usize,
    cap: u64,
}

pub(crate) struct FlowNet {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
}

impl FlowNet {
    pub fn new(nodes: usize) -> FlowNet {
        FlowNet {
            adj: vec![Vec::new(); nodes],
            arcs: Vec::new(),
        }
    }

    /// One arc u->v with capacity `cap` and its partner v->u with
    /// capacity `back`. Partners share residual space.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: u64, back: u64) {
        self.adj[u].push(self.arcs.len());
        self.arcs.push(Arc { to: v, cap });
        self.adj[v].push(self.arcs.len());
        self.arcs.push(Arc { to: u, cap: back });
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<u32>> {
        let mut level = vec![u32::MAX; self.adj.len()];
        let mut queue = std::collections::VecDeque::new();
        level[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && level[arc.to] == u32::MAX {
                    level[arc.to] = level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        if level[t] == u32::MAX {
            None
        } else {
            Some(level)
        }
    }

    fn augment(
        &mut self,
        u: usize,
        t: usize,
        pushed: u64,
        level: &[u32],
        iter: &mut [usize],
    ) -> u64 {
        if u == t {
            return pushed;
        }
        while iter[u] < self.adj[u].len() {
            let a = self.adj[u][iter[u]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > 0 && level[to] == level[u] + 1 {
                let got = self.augment(to, t, pushed.min(cap), level, iter);
                if got > 0 {
                    self.arcs[a].cap -= got;
                    self.arcs[a ^ 1].cap += got;
                    return got;
                }
            }
            iter[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut flow = 0;
        while let Some(level) = self.levels(s, t) {
            let mut iter = vec![0; self.adj.len()];
            loop {
                let got = self.augment(s, t, INF, &level, &mut iter);
                if got == 0 {
                    break;
                }
                flow += got;
            }
        }
        flow
    }

    /// Nodes reachable from `from` over arcs with leftover capacity.
    pub fn reachable(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(u) = stack.pop() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }
}
