//! Branching solvers for graphs a bounded number of edge edits away from a
//! class the backend handles directly.
//!
//! A distant-edge set certifies the distance: apex pairs are edges whose
//! deletion lands in the class, add pairs are non-edges whose insertion
//! does. The solvers branch on one pair at a time. Clique solvers restrict
//! to common neighborhoods when both endpoints stay, independent-set
//! solvers to common non-neighborhoods; the opposite problem/mode pairings
//! branch by deleting one endpoint. Every branch retires at least one pair,
//! so a k-pair set costs at most 2^k backend calls.

use crate::error::Error;
use crate::graph::{Graph, SetKind, Solution};

/// Which edit a distant-edge set prescribes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EditMode {
    /// Pairs are edges; deleting them all lands in the class.
    Apex,
    /// Pairs are non-edges; adding them all lands in the class.
    Add,
}

impl EditMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EditMode::Apex => "apex",
            EditMode::Add => "add",
        }
    }

    /// The mode certifying the complement graph (deletions become
    /// additions and vice versa).
    pub fn flipped(self) -> EditMode {
        match self {
            EditMode::Apex => EditMode::Add,
            EditMode::Add => EditMode::Apex,
        }
    }
}

impl std::fmt::Display for EditMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for EditMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "apex" => Ok(EditMode::Apex),
            "add" => Ok(EditMode::Add),
            _ => Err(Error::BadSet(format!("unknown mode {s:?}"))),
        }
    }
}

/// An ordered list of vertex pairs, all to delete (apex) or all to add.
/// Pairs are stored with the smaller endpoint first, in the order given;
/// the solvers always branch on the first remaining pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistantEdgeSet {
    mode: EditMode,
    pairs: Vec<(usize, usize)>,
}

impl DistantEdgeSet {
    pub fn new(mode: EditMode, pairs: Vec<(usize, usize)>) -> Result<Self, Error> {
        let mut normalized = Vec::with_capacity(pairs.len());
        for (u, v) in pairs {
            if u == v {
                return Err(Error::SelfPair(u));
            }
            let p = (u.min(v), u.max(v));
            if normalized.contains(&p) {
                return Err(Error::BadSet(format!("duplicate pair {} {}", p.0, p.1)));
            }
            normalized.push(p);
        }
        Ok(DistantEdgeSet {
            mode,
            pairs: normalized,
        })
    }

    pub fn empty(mode: EditMode) -> Self {
        DistantEdgeSet {
            mode,
            pairs: Vec::new(),
        }
    }

    pub fn mode(&self) -> EditMode {
        self.mode
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    /// Performs every edit. Apex pairs must be edges of g, add pairs
    /// non-edges, and all endpoints in range.
    pub fn apply(&self, g: &Graph) -> Result<Graph, Error> {
        let mut out = g.clone();
        for &(u, v) in &self.pairs {
            out = match self.mode {
                EditMode::Apex => out.delete_edge(u, v)?,
                EditMode::Add => out.add_edge(u, v)?,
            };
        }
        Ok(out)
    }

    /// Text format: a mode line ("apex" or "add"), then one "u v" pair per
    /// line. '#' starts a comment; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut mode = None;
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if mode.is_none() {
                mode = Some(line.parse::<EditMode>().map_err(|_| Error::Parse {
                    line: i + 1,
                    reason: format!("expected mode line \"apex\" or \"add\", got {line:?}"),
                })?);
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_endpoint = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line: i + 1,
                    reason: format!("bad endpoint {s:?}"),
                })
            };
            match fields.as_slice() {
                [u, v] => pairs.push((parse_endpoint(u)?, parse_endpoint(v)?)),
                _ => {
                    return Err(Error::Parse {
                        line: i + 1,
                        reason: "expected a pair: two endpoints".into(),
                    })
                }
            }
        }
        let mode = mode.ok_or(Error::Parse {
            line: 1,
            reason: "missing mode line".into(),
        })?;
        DistantEdgeSet::new(mode, pairs)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.mode);
        for &(u, v) in &self.pairs {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// A hereditary graph class with exact solvers. Backends answer membership
/// for any graph and solve only members (NotInClass otherwise).
pub trait ClassBackend: Sync {
    fn contains(&self, g: &Graph) -> bool;
    fn solve_wmc(&self, g: &Graph) -> Result<Solution, Error>;
    fn solve_wmis(&self, g: &Graph) -> Result<Solution, Error>;
}

/// Instrumentation for one k-pair solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    /// Backend solve calls at the leaves; bounded by 2^k.
    pub leaf_calls: u64,
    /// Deepest branching depth reached (0 when the set is empty).
    pub max_depth: usize,
}

impl SolveStats {
    fn leaf(depth: usize) -> Self {
        SolveStats {
            leaf_calls: 1,
            max_depth: depth,
        }
    }

    fn merge(self, other: Self) -> Self {
        SolveStats {
            leaf_calls: self.leaf_calls + other.leaf_calls,
            max_depth: self.max_depth.max(other.max_depth),
        }
    }
}

/// Views the inner backend's class through complementation: membership,
/// cliques, and independent sets all swap roles.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplementBackend<B>(pub B);

impl<B: ClassBackend> ClassBackend for ComplementBackend<B> {
    fn contains(&self, g: &Graph) -> bool {
        self.0.contains(&g.complement())
    }

    fn solve_wmc(&self, g: &Graph) -> Result<Solution, Error> {
        let s = self.0.solve_wmis(&g.complement())?;
        Ok(Solution::new(SetKind::Clique, s.vertices, g))
    }

    fn solve_wmis(&self, g: &Graph) -> Result<Solution, Error> {
        let s = self.0.solve_wmc(&g.complement())?;
        Ok(Solution::new(SetKind::IndependentSet, s.vertices, g))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Problem {
    Clique,
    Independent,
}

impl Problem {
    fn kind(self) -> SetKind {
        match self {
            Problem::Clique => SetKind::Clique,
            Problem::Independent => SetKind::IndependentSet,
        }
    }

    fn solve(self, g: &Graph, backend: &dyn ClassBackend) -> Result<Solution, Error> {
        match self {
            Problem::Clique => backend.solve_wmc(g),
            Problem::Independent => backend.solve_wmis(g),
        }
    }
}

#[cfg(feature = "parallel")]
fn branch2<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    rayon::join(a, b)
}

#[cfg(not(feature = "parallel"))]
fn branch2<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA,
    B: FnOnce() -> RB,
{
    (a(), b())
}

/// Heavier solution wins; ties keep the first.
fn prefer_first(a: Solution, b: Solution) -> Solution {
    if b.weight > a.weight {
        b
    } else {
        a
    }
}

fn check_pair(g: &Graph, x: usize, y: usize) -> Result<(usize, usize), Error> {
    if x == y {
        return Err(Error::SelfPair(x));
    }
    let n = g.n();
    for v in [x, y] {
        if v >= n {
            return Err(Error::OutOfRange { v, n });
        }
    }
    Ok((x.min(y), x.max(y)))
}

/// Inverse of an induced-subgraph map: old id -> new id where kept.
fn inverse_map(n: usize, map: &[usize]) -> Vec<Option<usize>> {
    let mut inv = vec![None; n];
    for (new, &old) in map.iter().enumerate() {
        inv[old] = Some(new);
    }
    inv
}

/// Pairs whose endpoints both survive, relabeled; order preserved.
fn restrict_pairs(pairs: &[(usize, usize)], inv: &[Option<usize>]) -> Vec<(usize, usize)> {
    pairs
        .iter()
        .filter_map(|&(u, v)| match (inv[u], inv[v]) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        })
        .collect()
}

/// Maximum-weight clique when adding the single non-edge xy lands g in the
/// backend's class. Branches on which endpoint to exclude; ties keep the
/// smaller endpoint's branch.
pub fn wmc_edge_add_one(
    g: &Graph,
    xy: (usize, usize),
    backend: &dyn ClassBackend,
) -> Result<Solution, Error> {
    let (x, y) = check_pair(g, xy.0, xy.1)?;
    if g.has_edge(x, y) {
        return Err(Error::AlreadyAnEdge { u: x, v: y });
    }
    if !backend.contains(&g.add_edge(x, y)?) {
        return Err(Error::CertificateFailed);
    }
    let solve_without = |drop: usize| -> Result<Solution, Error> {
        let (sub, map) = g.delete_vertex(drop)?;
        Ok(backend.solve_wmc(&sub)?.mapped(&map))
    };
    Ok(prefer_first(solve_without(x)?, solve_without(y)?))
}

/// Maximum-weight clique when deleting the single edge xy lands g in the
/// backend's class. Either the clique keeps both endpoints (restrict to
/// their common neighborhood, then add them back) or it lives in g - xy;
/// ties keep the augmented clique.
pub fn wmc_edge_apex_one(
    g: &Graph,
    xy: (usize, usize),
    backend: &dyn ClassBackend,
) -> Result<Solution, Error> {
    let (x, y) = check_pair(g, xy.0, xy.1)?;
    if !g.has_edge(x, y) {
        return Err(Error::NotAnEdge { u: x, v: y });
    }
    let deleted = g.delete_edge(x, y)?;
    if !backend.contains(&deleted) {
        return Err(Error::CertificateFailed);
    }
    let (sub, map) = g.induced(&g.common_neighbors(x, y)?)?;
    let mut verts = backend.solve_wmc(&sub)?.mapped(&map).vertices;
    verts.extend([x, y]);
    let augmented = Solution::new(SetKind::Clique, verts, g);
    let dropped = backend.solve_wmc(&deleted)?;
    Ok(prefer_first(augmented, dropped))
}

/// Maximum-weight independent set when deleting the single edge xy lands g
/// in the backend's class. Branches on which endpoint to exclude; ties
/// keep the smaller endpoint's branch.
pub fn wmis_edge_apex_one(
    g: &Graph,
    xy: (usize, usize),
    backend: &dyn ClassBackend,
) -> Result<Solution, Error> {
    let (x, y) = check_pair(g, xy.0, xy.1)?;
    if !g.has_edge(x, y) {
        return Err(Error::NotAnEdge { u: x, v: y });
    }
    if !backend.contains(&g.delete_edge(x, y)?) {
        return Err(Error::CertificateFailed);
    }
    let solve_without = |drop: usize| -> Result<Solution, Error> {
        let (sub, map) = g.delete_vertex(drop)?;
        Ok(backend.solve_wmis(&sub)?.mapped(&map))
    };
    Ok(prefer_first(solve_without(x)?, solve_without(y)?))
}

/// Maximum-weight independent set when adding the single non-edge xy lands
/// g in the backend's class. Either the set keeps both endpoints (restrict
/// to their common non-neighborhood, then add them back) or it lives in
/// g + xy; ties keep the augmented set.
pub fn wmis_edge_add_one(
    g: &Graph,
    xy: (usize, usize),
    backend: &dyn ClassBackend,
) -> Result<Solution, Error> {
    let (x, y) = check_pair(g, xy.0, xy.1)?;
    if g.has_edge(x, y) {
        return Err(Error::AlreadyAnEdge { u: x, v: y });
    }
    let added = g.add_edge(x, y)?;
    if !backend.contains(&added) {
        return Err(Error::CertificateFailed);
    }
    let (sub, map) = g.induced(&g.common_non_neighbors(x, y)?)?;
    let mut verts = backend.solve_wmis(&sub)?.mapped(&map).vertices;
    verts.extend([x, y]);
    let augmented = Solution::new(SetKind::IndependentSet, verts, g);
    let merged = backend.solve_wmis(&added)?;
    Ok(prefer_first(augmented, merged))
}

/// Maximum-weight clique of g given a distant-edge set, in at most 2^k
/// backend calls. Validates the certificate up front: applying the whole
/// set must land in the backend's class.
pub fn wmc_k(
    g: &Graph,
    set: &DistantEdgeSet,
    backend: &dyn ClassBackend,
) -> Result<(Solution, SolveStats), Error> {
    solve_k(g, set, Problem::Clique, backend)
}

/// Maximum-weight independent set of g given a distant-edge set, in at
/// most 2^k backend calls. Validates the certificate up front.
pub fn wmis_k(
    g: &Graph,
    set: &DistantEdgeSet,
    backend: &dyn ClassBackend,
) -> Result<(Solution, SolveStats), Error> {
    solve_k(g, set, Problem::Independent, backend)
}

fn solve_k(
    g: &Graph,
    set: &DistantEdgeSet,
    problem: Problem,
    backend: &dyn ClassBackend,
) -> Result<(Solution, SolveStats), Error> {
    if !backend.contains(&set.apply(g)?) {
        return Err(Error::CertificateFailed);
    }
    // endpoint exclusion solves clique/add and independent-set/apex; the
    // other two pairings branch between restricting and editing
    let exclude_endpoints = match (problem, set.mode()) {
        (Problem::Clique, EditMode::Add) | (Problem::Independent, EditMode::Apex) => true,
        (Problem::Clique, EditMode::Apex) | (Problem::Independent, EditMode::Add) => false,
    };
    let (sol, stats) = if exclude_endpoints {
        vertex_branch_rec(g, set.pairs(), problem, backend, 0)?
    } else {
        edit_branch_rec(g, set.pairs(), problem, backend, 0)?
    };
    if set.k() < 64 {
        assert!(
            stats.leaf_calls <= 1 << set.k(),
            "branching exceeded the 2^k leaf bound"
        );
    }
    debug_assert!(sol.validate(g));
    Ok((sol, stats))
}

/// No clique contains both ends of a missing edge, and no independent set
/// both ends of an edge: branch on which endpoint to drop.
fn vertex_branch_rec(
    g: &Graph,
    pairs: &[(usize, usize)],
    problem: Problem,
    backend: &dyn ClassBackend,
    depth: usize,
) -> Result<(Solution, SolveStats), Error> {
    let Some(&(x, y)) = pairs.first() else {
        return Ok((problem.solve(g, backend)?, SolveStats::leaf(depth)));
    };
    let rest = &pairs[1..];
    let solve_without = |drop: usize| -> Result<(Solution, SolveStats), Error> {
        let (sub, map) = g.delete_vertex(drop)?;
        let inv = inverse_map(g.n(), &map);
        let (sol, stats) = vertex_branch_rec(
            &sub,
            &restrict_pairs(rest, &inv),
            problem,
            backend,
            depth + 1,
        )?;
        Ok((sol.mapped(&map), stats))
    };
    let (ra, rb) = branch2(|| solve_without(x), || solve_without(y));
    let (sol_x, stats_x) = ra?;
    let (sol_y, stats_y) = rb?;
    Ok((prefer_first(sol_x, sol_y), stats_x.merge(stats_y)))
}

/// A clique either keeps both ends of a deletable edge (restrict to their
/// common neighborhood) or survives its deletion; dually, an independent
/// set either keeps both ends of an addable non-edge (restrict to their
/// common non-neighborhood) or survives its insertion. Ties keep the
/// augmented branch.
fn edit_branch_rec(
    g: &Graph,
    pairs: &[(usize, usize)],
    problem: Problem,
    backend: &dyn ClassBackend,
    depth: usize,
) -> Result<(Solution, SolveStats), Error> {
    let Some(&(x, y)) = pairs.first() else {
        return Ok((problem.solve(g, backend)?, SolveStats::leaf(depth)));
    };
    let rest = &pairs[1..];
    let keep_both = || -> Result<(Solution, SolveStats), Error> {
        let core = match problem {
            Problem::Clique => g.common_neighbors(x, y),
            Problem::Independent => g.common_non_neighbors(x, y),
        }?;
        let (sub, map) = g.induced(&core)?;
        let inv = inverse_map(g.n(), &map);
        let (sol, stats) = edit_branch_rec(
            &sub,
            &restrict_pairs(rest, &inv),
            problem,
            backend,
            depth + 1,
        )?;
        let mut verts = sol.mapped(&map).vertices;
        verts.extend([x, y]);
        Ok((Solution::new(problem.kind(), verts, g), stats))
    };
    let resolve_pair = || -> Result<(Solution, SolveStats), Error> {
        let edited = match problem {
            Problem::Clique => g.delete_edge(x, y)?,
            Problem::Independent => g.add_edge(x, y)?,
        };
        edit_branch_rec(&edited, rest, problem, backend, depth + 1)
    };
    let (ra, rb) = branch2(keep_both, resolve_pair);
    let (sol_keep, stats_keep) = ra?;
    let (sol_edit, stats_edit) = rb?;
    Ok((
        prefer_first(sol_keep, sol_edit),
        stats_keep.merge(stats_edit),
    ))
}
