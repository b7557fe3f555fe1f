//! Comparability graphs: recognition, transitive orientations, and the
//! two direct solvers the branching framework leans on.
//!
//! Recognition runs the edge-forcing procedure: orienting one edge forces
//! every edge reachable from it through shared endpoints with non-adjacent
//! far ends, the forced block is removed, and the process repeats on the
//! rest. A block forced in both directions means no transitive orientation
//! exists. Whatever the forcing produces is independently re-verified
//! before being returned, so an internal bug fails loudly here instead of
//! feeding the solvers a bad orientation.
//!
//! With an orientation in hand, a maximum-weight clique is a heaviest
//! directed path (found by one relaxation sweep in topological order) and
//! a maximum-weight independent set is a heaviest antichain (read off a
//! minimum-flow computation over the order).

use crate::error::Error;
use crate::flow::{FlowNet, INF};
use crate::graph::{iter_bits, Graph, SetKind, Solution, Weight};
use crate::solver::ClassBackend;
use std::collections::VecDeque;
use std::sync::Mutex;

const WORD: usize = 64;

/// Directed bit matrix sized n x n.
struct Bitmat {
    stride: usize,
    bits: Vec<u64>,
}

impl Bitmat {
    fn new(n: usize) -> Bitmat {
        let stride = (n + WORD - 1) / WORD;
        Bitmat {
            stride,
            bits: vec![0; n * stride],
        }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.stride + v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.stride + v / WORD] |= 1 << (v % WORD);
    }

    #[inline]
    fn clear(&mut self, u: usize, v: usize) {
        self.bits[u * self.stride + v / WORD] &= !(1 << (v % WORD));
    }

    #[inline]
    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.stride..(u + 1) * self.stride]
    }
}

/// An assignment of one direction to every edge of a graph such that the
/// directed relation is transitive (and therefore acyclic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitiveOrientation {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TransitiveOrientation {
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>) -> TransitiveOrientation {
        edges.sort_unstable();
        TransitiveOrientation { n, edges }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn reversed(&self) -> TransitiveOrientation {
        TransitiveOrientation::new(self.n, self.edges.iter().map(|&(u, v)| (v, u)).collect())
    }

    /// Vertices in topological order, smallest id first among the ready
    /// ones. None if the directed edges contain a cycle.
    pub fn topo_order(&self) -> Option<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        let mut indeg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            out[u].push(v);
            indeg[v] += 1;
        }
        let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..self.n)
            .filter(|&v| indeg[v] == 0)
            .map(std::cmp::Reverse)
            .collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(std::cmp::Reverse(u)) = heap.pop() {
            order.push(u);
            for &v in &out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(std::cmp::Reverse(v));
                }
            }
        }
        if order.len() == self.n {
            Some(order)
        } else {
            None
        }
    }

    /// One "u -> v" line per edge, sorted by the topological rank of the
    /// source, then of the target.
    pub fn dump(&self) -> String {
        let order = self.topo_order().expect("orientation must be acyclic");
        let mut rank = vec![0usize; self.n];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        let mut sorted = self.edges.clone();
        sorted.sort_unstable_by_key(|&(u, v)| (rank[u], rank[v]));
        let mut out = String::new();
        for (u, v) in sorted {
            out.push_str(&format!("{} -> {}\n", u, v));
        }
        out
    }
}

/// Finds a transitive orientation of `g`, or None when none exists.
///
/// Edges are claimed block by block: each unclaimed edge seeds a block,
/// direction assignments propagate through forcing, and a block demanding
/// both directions of some edge rejects the graph. The result is always
/// re-checked with [`verify_orientation`] before it is returned.
pub fn recognize_and_orient(g: &Graph) -> Option<TransitiveOrientation> {
    let n = g.n();
    let mut remaining = Bitmat::new(n);
    for u in 0..n {
        for v in g.neighbors(u) {
            remaining.set(u, v);
        }
    }
    let mut dir = Bitmat::new(n);
    let mut oriented: Vec<(usize, usize)> = Vec::with_capacity(g.m());
    let mut class: Vec<(usize, usize)> = Vec::new();

    for su in 0..n {
        let starts: Vec<usize> = iter_bits(remaining.row(su)).filter(|&v| v > su).collect();
        for sv in starts {
            if !remaining.get(su, sv) {
                continue; // claimed by a block seeded earlier in this row
            }
            class.clear();
            class.push((su, sv));
            dir.set(su, sv);
            let mut head = 0;
            while head < class.len() {
                let (a, b) = class[head];
                head += 1;
                // shared source: a->b forces a->c when c ~ a but c !~ b
                for c in iter_bits(remaining.row(a)) {
                    if c == b || remaining.get(b, c) || dir.get(a, c) {
                        continue;
                    }
                    if dir.get(c, a) {
                        return None;
                    }
                    dir.set(a, c);
                    class.push((a, c));
                }
                // shared target: a->b forces c->b when c ~ b but c !~ a
                for c in iter_bits(remaining.row(b)) {
                    if c == a || remaining.get(a, c) || dir.get(c, b) {
                        continue;
                    }
                    if dir.get(b, c) {
                        return None;
                    }
                    dir.set(c, b);
                    class.push((c, b));
                }
            }
            for &(a, b) in &class {
                remaining.clear(a, b);
                remaining.clear(b, a);
            }
            oriented.extend_from_slice(&class);
        }
    }

    debug_assert_eq!(oriented.len(), g.m());
    let o = TransitiveOrientation::new(n, oriented);
    assert!(
        verify_orientation(g, &o),
        "conflict-free forcing must yield a transitive orientation"
    );
    Some(o)
}

/// Full certificate check: `o` assigns exactly one direction to every edge
/// of `g` and nothing else, the relation is transitive, and (checked
/// independently) acyclic.
pub fn verify_orientation(g: &Graph, o: &TransitiveOrientation) -> bool {
    let n = g.n();
    if o.n() != n || o.edges().len() != g.m() {
        return false;
    }
    let mut out = Bitmat::new(n);
    for &(u, v) in o.edges() {
        if u >= n || v >= n || u == v || !g.has_edge(u, v) {
            return false;
        }
        if out.get(u, v) || out.get(v, u) {
            return false; // duplicate or both directions
        }
        out.set(u, v);
    }
    for &(u, v) in o.edges() {
        let (ru, rv) = (out.row(u), out.row(v));
        if rv.iter().zip(ru).any(|(&b, &a)| b & !a != 0) {
            return false; // u -> v -> w without u -> w
        }
    }
    o.topo_order().is_some()
}

/// Every graph with at most 4 edges or at most 4 non-edges has a
/// transitive orientation, so membership needs no search there.
pub fn trivially_transitive(g: &Graph) -> bool {
    let s = g.stats();
    s.m.min(s.co_m) <= 4
}

/// Maximum-weight clique of a comparability graph: the heaviest directed
/// path under `o`, by one relaxation sweep in topological order. Runs in
/// O(n + m). Requires `verify_orientation(g, o)`; that check is on the
/// caller so this stays linear.
pub fn wmc_comparability(g: &Graph, o: &TransitiveOrientation) -> Solution {
    let n = g.n();
    if n == 0 {
        return Solution::empty(SetKind::Clique);
    }
    debug_assert_eq!(o.n(), n);
    debug_assert_eq!(o.edges().len(), g.m());
    let mut out = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for &(u, v) in o.edges() {
        out[u].push(v);
        indeg[v] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut dist: Vec<Weight> = g.weights().to_vec();
    let mut pred = vec![usize::MAX; n];
    let mut processed = 0;
    while let Some(u) = queue.pop_front() {
        processed += 1;
        for &v in &out[u] {
            if dist[u] + g.weight(v) > dist[v] {
                dist[v] = dist[u] + g.weight(v);
                pred[v] = u;
            }
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    debug_assert_eq!(processed, n, "orientation must be acyclic");
    let mut end = 0;
    for v in 1..n {
        if dist[v] > dist[end] {
            end = v;
        }
    }
    let mut chain = vec![end];
    while pred[*chain.last().unwrap()] != usize::MAX {
        chain.push(pred[*chain.last().unwrap()]);
    }
    let sol = Solution::new(SetKind::Clique, chain, g);
    debug_assert_eq!(sol.weight, dist[end]);
    sol
}

/// Maximum-weight independent set of a comparability graph: the heaviest
/// antichain under `o`, via minimum flow with per-vertex lower bounds.
///
/// Each vertex becomes a split arc that must carry at least its weight,
/// chains become source-to-sink paths, and the minimum total flow equals
/// the maximum antichain weight. Seeding one path per vertex gives a
/// feasible flow; pushing the surplus back from sink to source minimises
/// it, and the antichain sits on the saturated split arcs along the final
/// residual cut. Requires `verify_orientation(g, o)`.
pub fn wmis_comparability(g: &Graph, o: &TransitiveOrientation) -> Solution {
    let n = g.n();
    if n == 0 {
        return Solution::empty(SetKind::IndependentSet);
    }
    debug_assert_eq!(o.n(), n);
    debug_assert_eq!(o.edges().len(), g.m());
    let total: Weight = g.weights().iter().sum();
    assert!(total < INF / 2, "total weight overflows the flow network");
    let (s, t) = (2 * n, 2 * n + 1);
    let mut net = FlowNet::new(2 * n + 2);
    for v in 0..n {
        let w = g.weight(v);
        // back capacities hold the seeded per-vertex path, and the split
        // arc's zero back capacity is what pins the lower bound
        net.add_edge(s, 2 * v, INF, w);
        net.add_edge(2 * v, 2 * v + 1, INF, 0);
        net.add_edge(2 * v + 1, t, INF, w);
    }
    for &(u, v) in o.edges() {
        net.add_edge(2 * u + 1, 2 * v, INF, 0);
    }
    let surplus = net.max_flow(t, s);
    let value = total - surplus;
    let reach = net.reachable(t);
    let vertices: Vec<usize> = (0..n)
        .filter(|&v| reach[2 * v + 1] && !reach[2 * v])
        .collect();
    let sol = Solution::new(SetKind::IndependentSet, vertices, g);
    assert_eq!(
        sol.weight, value,
        "residual cut must match the minimum flow value"
    );
    sol
}

/// The framework backend for the comparability class. Remembers the last
/// orientation it derived, so a membership check followed by a solve on
/// the same graph pays for recognition once.
pub struct ComparabilityBackend {
    cache: Mutex<Option<(Graph, Option<TransitiveOrientation>)>>,
}

impl ComparabilityBackend {
    pub fn new() -> ComparabilityBackend {
        ComparabilityBackend {
            cache: Mutex::new(None),
        }
    }

    fn orient(&self, g: &Graph) -> Option<TransitiveOrientation> {
        if let Some((cached, o)) = self.cache.lock().unwrap().as_ref() {
            if cached == g {
                return o.clone();
            }
        }
        let o = recognize_and_orient(g);
        *self.cache.lock().unwrap() = Some((g.clone(), o.clone()));
        o
    }
}

impl Default for ComparabilityBackend {
    fn default() -> Self {
        Self::new()
    }
}

impl ClassBackend for ComparabilityBackend {
    fn contains(&self, g: &Graph) -> bool {
        self.orient(g).is_some()
    }

    fn solve_wmc(&self, g: &Graph) -> Result<Solution, Error> {
        let o = self.orient(g).ok_or(Error::NotInClass)?;
        Ok(wmc_comparability(g, &o))
    }

    fn solve_wmis(&self, g: &Graph) -> Result<Solution, Error> {
        let o = self.orient(g).ok_or(Error::NotInClass)?;
        Ok(wmis_comparability(g, &o))
    }
}
