//! Undirected vertex-weighted graphs over a dense adjacency bit matrix.
//!
//! Vertices are `0..n`, weights are nonnegative integers, and every edit
//! returns a fresh graph; nothing here mutates in place. The text format is
//! one `n m` header line, an optional line of n weights (all 1 when
//! absent), and one `u v` line per edge. `#` starts a comment.

use crate::error::Error;
use std::fmt::Write as _;

pub type Weight = u64;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
    weights: Vec<Weight>,
    m: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub co_m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges())
    }
}

impl Graph {
    pub fn new(
        n: usize,
        edges: &[(usize, usize)],
        weights: Option<Vec<Weight>>,
    ) -> Result<Graph, Error> {
        let weights = match weights {
            Some(w) if w.len() != n => {
                return Err(Error::Parse {
                    line: 0,
                    reason: format!("expected {} weights, got {}", n, w.len()),
                })
            }
            Some(w) => w,
            None => vec![1; n],
        };
        let stride = (n + WORD - 1) / WORD;
        let mut g = Graph {
            n,
            stride,
            bits: vec![0; n * stride],
            weights,
            m: 0,
        };
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            if g.has_edge(u, v) {
                return Err(Error::AlreadyAnEdge { u, v });
            }
            g.set_edge(u, v);
        }
        g.m = edges.len();
        Ok(g)
    }

    pub fn empty(n: usize) -> Graph {
        Graph::new(n, &[], None).unwrap()
    }

    fn check_vertex(&self, v: usize) -> Result<(), Error> {
        if v >= self.n {
            Err(Error::OutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), Error> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfPair(u));
        }
        Ok(())
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.stride + v / WORD] |= 1 << (v % WORD);
        self.bits[v * self.stride + u / WORD] |= 1 << (u % WORD);
    }

    fn clear_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.stride + v / WORD] &= !(1 << (v % WORD));
        self.bits[v * self.stride + u / WORD] &= !(1 << (u % WORD));
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.stride + v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub fn weight(&self, v: usize) -> Weight {
        self.weights[v]
    }

    #[inline]
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn set_weight(&self, vs: &[usize]) -> Weight {
        vs.iter().map(|&v| self.weights[v]).sum()
    }

    /// Same adjacency, different weights.
    pub fn reweighted(&self, weights: Vec<Weight>) -> Result<Graph, Error> {
        if weights.len() != self.n {
            return Err(Error::Parse {
                line: 0,
                reason: format!("expected {} weights, got {}", self.n, weights.len()),
            });
        }
        let mut g = self.clone();
        g.weights = weights;
        Ok(g)
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.stride..(v + 1) * self.stride]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    /// All edges as (u, v) with u < v, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// All non-adjacent pairs as (u, v) with u < v, ascending.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn stats(&self) -> GraphStats {
        let pairs = self.n * self.n.saturating_sub(1) / 2;
        let (mut lo, mut hi) = (usize::MAX, 0);
        for v in 0..self.n {
            let d = self.degree(v);
            lo = lo.min(d);
            hi = hi.max(d);
        }
        GraphStats {
            n: self.n,
            m: self.m,
            co_m: pairs - self.m,
            min_degree: if self.n == 0 { 0 } else { lo },
            max_degree: hi,
        }
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                    g.m += 1;
                }
            }
        }
        g.weights = self.weights.clone();
        g
    }

    /// Subgraph induced by `keep` (deduplicated, sorted ascending). Returns
    /// the graph and the map from new ids back to the originals.
    pub fn induced(&self, keep: &[usize]) -> Result<(Graph, Vec<usize>), Error> {
        let mut map: Vec<usize> = keep.to_vec();
        map.sort_unstable();
        map.dedup();
        if let Some(&v) = map.iter().find(|&&v| v >= self.n) {
            return Err(Error::OutOfRange { v, n: self.n });
        }
        let mut g = Graph::empty(map.len());
        g.weights = map.iter().map(|&v| self.weights[v]).collect();
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                    g.m += 1;
                }
            }
        }
        Ok((g, map))
    }

    /// Drops `v` and relabels the rest contiguously. Returns the graph and
    /// the map from new ids back to the originals.
    pub fn delete_vertex(&self, v: usize) -> Result<(Graph, Vec<usize>), Error> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, Error> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        let mut g = self.clone();
        g.clear_edge(u, v);
        g.m -= 1;
        Ok(g)
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, Error> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(Error::AlreadyAnEdge { u, v });
        }
        let mut g = self.clone();
        g.set_edge(u, v);
        g.m += 1;
        Ok(g)
    }

    /// Vertices adjacent to both `x` and `y`, ascending.
    pub fn common_neighbors(&self, x: usize, y: usize) -> Result<Vec<usize>, Error> {
        self.check_pair(x, y)?;
        let (rx, ry) = (self.row(x), self.row(y));
        let and: Vec<u64> = rx.iter().zip(ry).map(|(a, b)| a & b).collect();
        Ok(iter_bits(&and).collect())
    }

    /// Vertices adjacent to neither `x` nor `y`, excluding x and y, ascending.
    pub fn common_non_neighbors(&self, x: usize, y: usize) -> Result<Vec<usize>, Error> {
        self.check_pair(x, y)?;
        let (rx, ry) = (self.row(x), self.row(y));
        let mut nor: Vec<u64> = rx.iter().zip(ry).map(|(a, b)| !(a | b)).collect();
        // mask off x, y, and the tail past n
        nor[x / WORD] &= !(1 << (x % WORD));
        nor[y / WORD] &= !(1 << (y % WORD));
        if self.n % WORD != 0 {
            if let Some(last) = nor.last_mut() {
                *last &= (1 << (self.n % WORD)) - 1;
            }
        }
        Ok(iter_bits(&nor).collect())
    }

    pub fn parse(text: &str) -> Result<Graph, Error> {
        let mut lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let data = raw.split('#').next().unwrap_or("").trim();
            if !data.is_empty() {
                lines.push((idx + 1, data));
            }
        }
        let err = |line: usize, reason: String| Error::Parse { line, reason };
        let (hline, header) = *lines
            .first()
            .ok_or_else(|| err(1, "missing 'n m' header".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = parse_num(it.next(), hline, "vertex count")?;
        let m: usize = parse_num(it.next(), hline, "edge count")?;
        if it.next().is_some() {
            return Err(err(hline, "header must be exactly 'n m'".into()));
        }
        let rest = &lines[1..];
        let weights = match rest.len() {
            len if len == m => None,
            len if len == m + 1 => {
                let (wline, wtext) = rest[0];
                let mut ws = Vec::with_capacity(n);
                for tok in wtext.split_whitespace() {
                    let w: i128 = tok
                        .parse()
                        .map_err(|_| err(wline, format!("bad weight '{}'", tok)))?;
                    if w < 0 {
                        return Err(err(wline, format!("negative weight {}", w)));
                    }
                    ws.push(u64::try_from(w).map_err(|_| {
                        err(wline, format!("weight {} does not fit in 64 bits", w))
                    })?);
                }
                if ws.len() != n {
                    return Err(err(wline, format!("expected {} weights, got {}", n, ws.len())));
                }
                Some(ws)
            }
            len => {
                return Err(err(
                    hline,
                    format!("expected {} edge lines (plus an optional weight line), got {}", m, len),
                ))
            }
        };
        let edge_lines = if weights.is_some() { &rest[1..] } else { rest };
        let mut edges = Vec::with_capacity(m);
        for &(eline, etext) in edge_lines {
            let mut it = etext.split_whitespace();
            let u: usize = parse_num(it.next(), eline, "edge endpoint")?;
            let v: usize = parse_num(it.next(), eline, "edge endpoint")?;
            if it.next().is_some() {
                return Err(err(eline, "edge line must be exactly 'u v'".into()));
            }
            edges.push((u, v));
        }
        Graph::new(n, &edges, weights).map_err(|e| match e {
            Error::Parse { .. } => e,
            other => err(0, other.to_string()),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.m);
        if self.n > 0 {
            let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
            let _ = writeln!(out, "{}", ws.join(" "));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", u, v);
        }
        out
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize, Error> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        reason: format!("missing {}", what),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        reason: format!("bad {} '{}'", what, tok),
    })
}

/// Indices of set bits in a little-endian word slice, ascending.
pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        std::iter::successors(
            if w == 0 { None } else { Some(w) },
            |w| {
                let rest = w & (w - 1);
                if rest == 0 {
                    None
                } else {
                    Some(rest)
                }
            },
        )
        .map(move |w| i * WORD + w.trailing_zeros() as usize)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    Clique,
    IndependentSet,
}

/// A certified vertex set: a clique or an independent set with its weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub kind: SetKind,
    pub vertices: Vec<usize>,
    pub weight: Weight,
}

impl Solution {
    pub fn new(kind: SetKind, mut vertices: Vec<usize>, g: &Graph) -> Solution {
        vertices.sort_unstable();
        let weight = g.set_weight(&vertices);
        Solution {
            kind,
            vertices,
            weight,
        }
    }

    pub fn empty(kind: SetKind) -> Solution {
        Solution {
            kind,
            vertices: Vec::new(),
            weight: 0,
        }
    }

    /// Pairwise adjacency (clique) or non-adjacency (independent set) holds
    /// and the weight matches the vertex list.
    pub fn validate(&self, g: &Graph) -> bool {
        if self.vertices.iter().any(|&v| v >= g.n()) {
            return false;
        }
        for (i, &u) in self.vertices.iter().enumerate() {
            for &v in &self.vertices[i + 1..] {
                if u == v {
                    return false;
                }
                let adjacent = g.has_edge(u, v);
                if adjacent != (self.kind == SetKind::Clique) {
                    return false;
                }
            }
        }
        self.weight == g.set_weight(&self.vertices)
    }

    /// Relabels through `map` (new id -> old id), keeping the weight.
    pub fn mapped(&self, map: &[usize]) -> Solution {
        let mut vertices: Vec<usize> = self.vertices.iter().map(|&v| map[v]).collect();
        vertices.sort_unstable();
        Solution {
            kind: self.kind,
            vertices,
            weight: self.weight,
        }
    }
}
