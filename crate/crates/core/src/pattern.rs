//! Pattern graphs and exhaustive copy detection.
//!
//! Containment is always non-induced. Three independent detectors exist:
//!
//! * a class-by-class backtracker for complete multipartite patterns
//!   ([`contains_copy_through_edge`], [`is_pattern_free`]);
//! * a vertex-by-vertex embedding backtracker for arbitrary pattern graphs
//!   ([`explicit_copy_through_edge`]);
//! * a neighborhood-subset search specialized to `K_{s,t}`
//!   ([`kst_copy_through_edge`], [`oriented_kst_through_edge`]).
//!
//! [`copy_through_edge`] dispatches to the fastest applicable one and is what
//! the closure engine uses.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, iter_bits, Edge, Graph, SideLabeling, MAX_VERTICES};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PatternKind {
    /// Class sizes `a_1, ..., a_k` of `K_{a_1,...,a_k}`.
    CompleteMultipartite(Vec<usize>),
    Explicit,
}

/// The graph `H` whose copies drive the bootstrap process.
///
/// For complete multipartite patterns the pattern graph numbers its vertices
/// class by class: class 0 is `0..a_1`, class 1 is `a_1..a_1+a_2`, and so on.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pattern {
    kind: PatternKind,
    graph: Graph,
}

impl Pattern {
    pub fn complete_multipartite(sizes: Vec<usize>) -> Result<Self> {
        if sizes.len() < 2 {
            return Err(Error::InvalidPattern(
                "a complete multipartite pattern needs at least two classes".into(),
            ));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidPattern("class sizes must be at least 1".into()));
        }
        let total: usize = sizes.iter().sum();
        if total > MAX_VERTICES {
            return Err(Error::TooManyVertices(total));
        }
        let mut graph = Graph::empty(total);
        let starts = class_starts(&sizes);
        for (i, (&si, &ai)) in starts.iter().zip(&sizes).enumerate() {
            for (&sj, &aj) in starts.iter().zip(&sizes).skip(i + 1) {
                for x in si..si + ai {
                    for y in sj..sj + aj {
                        graph.add_edge(Edge { u: x, v: y });
                    }
                }
            }
        }
        Ok(Pattern {
            kind: PatternKind::CompleteMultipartite(sizes),
            graph,
        })
    }

    /// `K_{s,t}` with the `s`-class listed first.
    pub fn kst(s: usize, t: usize) -> Result<Self> {
        Self::complete_multipartite(vec![s, t])
    }

    /// `K_r` as `K_{1,...,1}`.
    pub fn clique(r: usize) -> Result<Self> {
        Self::complete_multipartite(vec![1; r])
    }

    /// `K_t^k`: `k` classes of size `t`.
    pub fn balanced(t: usize, k: usize) -> Result<Self> {
        Self::complete_multipartite(vec![t; k])
    }

    pub fn explicit(graph: Graph) -> Result<Self> {
        if graph.edge_count() == 0 {
            return Err(Error::InvalidPattern("pattern has no edges".into()));
        }
        Ok(Pattern {
            kind: PatternKind::Explicit,
            graph,
        })
    }

    pub fn kind(&self) -> &PatternKind {
        &self.kind
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn min_degree(&self) -> usize {
        self.graph.min_degree().unwrap_or(0)
    }

    pub fn class_sizes(&self) -> Option<&[usize]> {
        match &self.kind {
            PatternKind::CompleteMultipartite(sizes) => Some(sizes),
            PatternKind::Explicit => None,
        }
    }

    /// `(s, t)` when the pattern is `K_{s,t}`.
    pub fn bipartite_sizes(&self) -> Option<(usize, usize)> {
        match self.class_sizes() {
            Some(&[s, t]) => Some((s, t)),
            _ => None,
        }
    }

    /// Splits a flat vertex mapping into the witness class layout.
    fn witness_from_mapping(&self, mapping: Vec<usize>) -> CopyWitness {
        match &self.kind {
            PatternKind::CompleteMultipartite(sizes) => {
                let mut classes = Vec::with_capacity(sizes.len());
                let mut rest = mapping.as_slice();
                for &a in sizes {
                    let (head, tail) = rest.split_at(a);
                    classes.push(head.to_vec());
                    rest = tail;
                }
                CopyWitness { classes }
            }
            PatternKind::Explicit => CopyWitness {
                classes: vec![mapping],
            },
        }
    }
}

fn class_starts(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .scan(0, |acc, &a| {
            let s = *acc;
            *acc += a;
            Some(s)
        })
        .collect()
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PatternKind::Explicit => write!(
                f,
                "explicit(n={},e={})",
                self.vertex_count(),
                self.edge_count()
            ),
            PatternKind::CompleteMultipartite(sizes) => {
                let list = |xs: &[usize]| {
                    xs.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
                };
                if let [s, t] = sizes.as_slice() {
                    write!(f, "kst:{s},{t}")
                } else if sizes.iter().all(|&a| a == 1) {
                    write!(f, "clique:{}", sizes.len())
                } else if sizes.iter().all(|&a| a == sizes[0]) {
                    write!(f, "ktk:{}^{}", sizes[0], sizes.len())
                } else {
                    write!(f, "multi:{}", list(sizes))
                }
            }
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Parses `kst:s,t`, `clique:r`, `multi:a1,...,ak` or `ktk:t^k`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPattern(format!("cannot parse pattern literal `{s}`"));
        let (kind, body) = s.trim().split_once(':').ok_or_else(bad)?;
        let nums = |text: &str, sep: char| -> Result<Vec<usize>> {
            text.split(sep)
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        match kind {
            "kst" => match nums(body, ',')?.as_slice() {
                &[a, b] => Pattern::kst(a, b),
                _ => Err(bad()),
            },
            "clique" => match nums(body, ',')?.as_slice() {
                &[r] => Pattern::clique(r),
                _ => Err(bad()),
            },
            "multi" => Pattern::complete_multipartite(nums(body, ',')?),
            "ktk" => match nums(body, '^')?.as_slice() {
                &[t, k] => Pattern::balanced(t, k),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

/// An embedding of a pattern into a host graph.
///
/// For complete multipartite patterns `classes[i]` holds the host vertices
/// of pattern class `i`. For explicit patterns there is a single entry
/// listing the image of pattern vertex `0, 1, ...` in order. Either way the
/// concatenation of `classes` is the vertex mapping.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CopyWitness {
    pub classes: Vec<Vec<usize>>,
}

impl CopyWitness {
    pub fn mapping(&self) -> Vec<usize> {
        self.classes.iter().flatten().copied().collect()
    }

    pub fn vertex_mask(&self) -> u64 {
        self.classes.iter().flatten().fold(0, |m, &v| m | bit(v))
    }

    /// Re-checks the witness from scratch: the class layout matches the
    /// pattern, images are distinct host vertices, every pattern edge lands
    /// on a host edge, and `anchor` (if given) is the image of a pattern edge.
    pub fn validate(&self, g: &Graph, pattern: &Pattern, anchor: Option<Edge>) -> bool {
        let layout_ok = match pattern.kind() {
            PatternKind::CompleteMultipartite(sizes) => {
                self.classes.len() == sizes.len()
                    && self.classes.iter().zip(sizes).all(|(c, &a)| c.len() == a)
            }
            PatternKind::Explicit => self.classes.len() == 1,
        };
        if !layout_ok {
            return false;
        }
        let map = self.mapping();
        if map.len() != pattern.vertex_count() || map.iter().any(|&v| v >= g.vertex_count()) {
            return false;
        }
        if self.vertex_mask().count_ones() as usize != map.len() {
            return false;
        }
        let pg = pattern.graph();
        if !pg.edges().all(|pe| g.adjacent(map[pe.u], map[pe.v])) {
            return false;
        }
        match anchor {
            None => true,
            Some(e) => {
                let pre = |x: usize| map.iter().position(|&y| y == x);
                match (pre(e.u), pre(e.v)) {
                    (Some(a), Some(b)) => pg.adjacent(a, b),
                    _ => false,
                }
            }
        }
    }

    /// Additionally requires class 0 on the left and class 1 on the right.
    pub fn validate_oriented(
        &self,
        g: &Graph,
        sides: &SideLabeling,
        left_size: usize,
        right_size: usize,
        anchor: Option<Edge>,
    ) -> bool {
        let Ok(pattern) = Pattern::kst(left_size, right_size) else {
            return false;
        };
        self.validate(g, &pattern, anchor)
            && self.classes[0].iter().all(|&v| sides.left_mask() & bit(v) != 0)
            && self.classes[1].iter().all(|&v| sides.right_mask() & bit(v) != 0)
    }
}

fn with_anchor<'a>(g: &'a Graph, e: Edge) -> Result<Cow<'a, Graph>> {
    g.check_edge(e)?;
    Ok(if g.has_edge(e) {
        Cow::Borrowed(g)
    } else {
        Cow::Owned(g.with_edge(e))
    })
}

/// Exhaustively searches for a copy of `h` in `g + e` that uses `e`.
///
/// This is the reference detector: class-by-class backtracking for complete
/// multipartite patterns, embedding backtracking for explicit ones. A
/// pattern larger than the host simply has no copy.
pub fn contains_copy_through_edge(g: &Graph, h: &Pattern, e: Edge) -> Result<Option<CopyWitness>> {
    let g = with_anchor(g, e)?;
    if h.vertex_count() > g.vertex_count() {
        return Ok(None);
    }
    Ok(match h.kind() {
        PatternKind::CompleteMultipartite(sizes) => multipartite_search(&g, sizes, Some(e)),
        PatternKind::Explicit => {
            embedding_search(&g, h.graph(), Some(e)).map(|m| h.witness_from_mapping(m))
        }
    })
}

/// Embedding-backtracker detector applied to the pattern graph of any
/// pattern, including complete multipartite ones.
pub fn explicit_copy_through_edge(g: &Graph, h: &Pattern, e: Edge) -> Result<Option<CopyWitness>> {
    let g = with_anchor(g, e)?;
    if h.vertex_count() > g.vertex_count() {
        return Ok(None);
    }
    Ok(embedding_search(&g, h.graph(), Some(e)).map(|m| h.witness_from_mapping(m)))
}

/// Specialized detector for `K_{s,t}`, witness classes ordered `[s, t]`.
pub fn kst_copy_through_edge(g: &Graph, s: usize, t: usize, e: Edge) -> Result<Option<CopyWitness>> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidPattern("class sizes must be at least 1".into()));
    }
    let g = with_anchor(g, e)?;
    Ok(kst_present(&g, s, t, e))
}

/// Detector for the side-respecting process in a bipartite host: the
/// `left_size` class must lie on the left and the `right_size` class on the
/// right. Witness classes are `[left, right]`.
pub fn oriented_kst_through_edge(
    g: &Graph,
    sides: &SideLabeling,
    left_size: usize,
    right_size: usize,
    e: Edge,
) -> Result<Option<CopyWitness>> {
    if !sides.is_cross(e) {
        return Err(Error::SameSideEdge(e));
    }
    let g = with_anchor(g, e)?;
    Ok(oriented_present(&g, sides, left_size, right_size, e))
}

pub(crate) fn oriented_present(
    g: &Graph,
    sides: &SideLabeling,
    left_size: usize,
    right_size: usize,
    e: Edge,
) -> Option<CopyWitness> {
    let (x, y) = if sides.left_mask() & bit(e.u) != 0 {
        (e.u, e.v)
    } else {
        (e.v, e.u)
    };
    biclique_through(
        g,
        sides.left_mask(),
        sides.right_mask(),
        left_size,
        right_size,
        x,
        y,
    )
    .map(|(a, b)| CopyWitness {
        classes: vec![iter_bits(a).collect(), iter_bits(b).collect()],
    })
}

fn kst_present(g: &Graph, s: usize, t: usize, e: Edge) -> Option<CopyWitness> {
    if s + t > g.vertex_count() {
        return None;
    }
    let all = g.vertex_mask();
    let orientations: &[(usize, usize)] = if s == t {
        &[(e.u, e.v)]
    } else {
        &[(e.u, e.v), (e.v, e.u)]
    };
    orientations.iter().find_map(|&(x, y)| {
        biclique_through(g, all, all, s, t, x, y).map(|(a, b)| CopyWitness {
            classes: vec![iter_bits(a).collect(), iter_bits(b).collect()],
        })
    })
}

/// Finds `A ⊆ a_pool` (|A| = a, x ∈ A) and `B ⊆ b_pool` (|B| = b, y ∈ B)
/// with every `A`-`B` pair adjacent. `xy` must be an edge of `g`.
///
/// Enumerates `B ⊆ N(x)` containing `y`, keeping the common neighborhood of
/// `B` inside `a_pool` large enough to host `A`.
fn biclique_through(
    g: &Graph,
    a_pool: u64,
    b_pool: u64,
    a: usize,
    b: usize,
    x: usize,
    y: usize,
) -> Option<(u64, u64)> {
    if a == 0 || b == 0 || a_pool & bit(x) == 0 || b_pool & bit(y) == 0 {
        return None;
    }
    let common = g.neighbors(y) & a_pool;
    if (common.count_ones() as usize) < a {
        return None;
    }
    let cand: Vec<usize> = iter_bits(g.neighbors(x) & b_pool & !bit(y)).collect();
    let chosen = extend_b(g, &cand, 0, b - 1, common, a, bit(y))?;
    let common = chosen.1;
    let mut rest = common & !bit(x);
    let mut set_a = bit(x);
    for _ in 1..a {
        let low = rest & rest.wrapping_neg();
        set_a |= low;
        rest &= !low;
    }
    Some((set_a, chosen.0))
}

fn extend_b(
    g: &Graph,
    cand: &[usize],
    from: usize,
    need: usize,
    common: u64,
    a: usize,
    set_b: u64,
) -> Option<(u64, u64)> {
    if need == 0 {
        return Some((set_b, common));
    }
    for i in from..cand.len() {
        if cand.len() - i < need {
            break;
        }
        let w = cand[i];
        let c = common & g.neighbors(w);
        if (c.count_ones() as usize) < a {
            continue;
        }
        if let Some(found) = extend_b(g, cand, i + 1, need - 1, c, a, set_b | bit(w)) {
            return Some(found);
        }
    }
    None
}

/// Fast detector used by the closure engine; `e` must already be in `g`.
pub(crate) fn copy_through_present_edge(g: &Graph, h: &Pattern, e: Edge) -> Option<CopyWitness> {
    debug_assert!(g.has_edge(e));
    if h.vertex_count() > g.vertex_count() {
        return None;
    }
    match h.kind() {
        PatternKind::CompleteMultipartite(sizes) if sizes.len() == 2 => {
            kst_present(g, sizes[0], sizes[1], e)
        }
        PatternKind::CompleteMultipartite(sizes) => multipartite_search(g, sizes, Some(e)),
        PatternKind::Explicit => {
            embedding_search(g, h.graph(), Some(e)).map(|m| h.witness_from_mapping(m))
        }
    }
}

/// Fastest available detector for a copy of `h` through `e` in `g + e`.
pub fn copy_through_edge(g: &Graph, h: &Pattern, e: Edge) -> Result<Option<CopyWitness>> {
    let g = with_anchor(g, e)?;
    Ok(copy_through_present_edge(&g, h, e))
}

/// Searches `g` for any copy of `h`, without an anchor edge.
pub fn find_copy(g: &Graph, h: &Pattern) -> Option<CopyWitness> {
    if h.vertex_count() > g.vertex_count() {
        return None;
    }
    match h.kind() {
        PatternKind::CompleteMultipartite(sizes) => multipartite_search(g, sizes, None),
        PatternKind::Explicit => {
            embedding_search(g, h.graph(), None).map(|m| h.witness_from_mapping(m))
        }
    }
}

/// `true` iff `g` contains no copy of `h`.
pub fn is_pattern_free(g: &Graph, h: &Pattern) -> bool {
    find_copy(g, h).is_none()
}

/// `true` iff `g` has no copy of `K_{left_size,right_size}` with the first
/// class on the left side.
pub fn is_oriented_free(g: &Graph, sides: &SideLabeling, left_size: usize, right_size: usize) -> bool {
    g.edges()
        .filter(|&e| sides.is_cross(e))
        .all(|e| oriented_present(g, sides, left_size, right_size, e).is_none())
}

/// Candidate order: largest degree first, ties by vertex index.
fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

struct Multipartite<'a> {
    g: &'a Graph,
    sizes: &'a [usize],
    order: Vec<usize>,
    forced: Vec<Option<usize>>,
    chosen: Vec<u64>,
    /// Common neighborhood of each chosen class.
    common: Vec<u64>,
}

fn multipartite_search(g: &Graph, sizes: &[usize], anchor: Option<Edge>) -> Option<CopyWitness> {
    let k = sizes.len();
    let mut state = Multipartite {
        g,
        sizes,
        order: degree_order(g),
        forced: vec![None; k],
        chosen: vec![0; k],
        common: vec![0; k],
    };
    let found = match anchor {
        None => state.fill_class(0),
        Some(e) => (0..k).any(|i| {
            (0..k).filter(|&j| j != i).any(|j| {
                state.forced.iter_mut().for_each(|f| *f = None);
                state.forced[i] = Some(e.u);
                state.forced[j] = Some(e.v);
                state.fill_class(0)
            })
        }),
    };
    found.then(|| CopyWitness {
        classes: state.chosen.iter().map(|&c| iter_bits(c).collect()).collect(),
    })
}

impl Multipartite<'_> {
    fn fill_class(&mut self, c: usize) -> bool {
        let k = self.sizes.len();
        if c == k {
            return true;
        }
        let mut pool = self.g.vertex_mask();
        let mut used = 0u64;
        for d in 0..k {
            if d < c {
                pool &= self.common[d];
                used |= self.chosen[d];
            } else if d != c {
                if let Some(x) = self.forced[d] {
                    pool &= self.g.neighbors(x);
                    used |= bit(x);
                }
            }
        }
        pool &= !used;
        let later: usize = self.sizes[c + 1..].iter().sum();
        match self.forced[c] {
            Some(x) => {
                if pool & bit(x) == 0 {
                    return false;
                }
                let start = self.g.neighbors(x);
                self.pick(c, pool & !bit(x), bit(x), start, self.sizes[c] - 1, 0, later)
            }
            None => self.pick(c, pool, 0, self.g.vertex_mask(), self.sizes[c], 0, later),
        }
    }

    /// Chooses `need` more vertices for class `c` from `pool`, in candidate
    /// order starting at position `from`.
    #[allow(clippy::too_many_arguments)]
    fn pick(
        &mut self,
        c: usize,
        pool: u64,
        set: u64,
        common: u64,
        need: usize,
        from: usize,
        later: usize,
    ) -> bool {
        // Later classes live in the common neighborhood of everything chosen.
        let mut later_pool = common & !set;
        for d in 0..c {
            later_pool &= self.common[d] & !self.chosen[d];
        }
        if (later_pool.count_ones() as usize) < later {
            return false;
        }
        if need == 0 {
            self.chosen[c] = set;
            self.common[c] = common;
            if self.fill_class(c + 1) {
                return true;
            }
            self.chosen[c] = 0;
            return false;
        }
        if ((pool.count_ones()) as usize) < need {
            return false;
        }
        for i in from..self.order.len() {
            let v = self.order[i];
            if pool & bit(v) == 0 {
                continue;
            }
            let next_pool = pool & !bit(v);
            if self.pick(
                c,
                next_pool,
                set | bit(v),
                common & self.g.neighbors(v),
                need - 1,
                i + 1,
                later,
            ) {
                return true;
            }
        }
        false
    }
}

/// Embedding backtracker: maps pattern vertices one at a time onto distinct
/// host vertices so that every pattern edge lands on a host edge.
fn embedding_search(g: &Graph, p: &Graph, anchor: Option<Edge>) -> Option<Vec<usize>> {
    let pn = p.vertex_count();
    if pn > g.vertex_count() {
        return None;
    }
    let order = degree_order(g);
    let mut map = vec![usize::MAX; pn];
    match anchor {
        Some(e) => {
            for pe in p.edges() {
                for (a, b) in [(pe.u, pe.v), (pe.v, pe.u)] {
                    map.fill(usize::MAX);
                    map[a] = e.u;
                    map[b] = e.v;
                    let seq = placement_order(p, &[a, b]);
                    if embed(g, p, &order, &seq, 0, &mut map, bit(e.u) | bit(e.v)) {
                        return Some(map);
                    }
                }
            }
            None
        }
        None => {
            let seq = placement_order(p, &[]);
            embed(g, p, &order, &seq, 0, &mut map, 0).then_some(map)
        }
    }
}

/// Greedy order: next is the unplaced vertex with most placed neighbors,
/// then highest degree, then lowest index.
fn placement_order(p: &Graph, placed: &[usize]) -> Vec<usize> {
    let mut done: u64 = placed.iter().fold(0, |m, &v| m | bit(v));
    let mut seq = Vec::new();
    while (done.count_ones() as usize) < p.vertex_count() {
        let next = (0..p.vertex_count())
            .filter(|&v| done & bit(v) == 0)
            .max_by_key(|&v| {
                (
                    (p.neighbors(v) & done).count_ones(),
                    p.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .expect("an unplaced vertex remains");
        seq.push(next);
        done |= bit(next);
    }
    seq
}

fn embed(
    g: &Graph,
    p: &Graph,
    order: &[usize],
    seq: &[usize],
    depth: usize,
    map: &mut [usize],
    used: u64,
) -> bool {
    let Some(&w) = seq.get(depth) else {
        return true;
    };
    let mut cand = g.vertex_mask() & !used;
    for x in iter_bits(p.neighbors(w)) {
        if map[x] != usize::MAX {
            cand &= g.neighbors(map[x]);
        }
    }
    let need_deg = p.degree(w);
    for &v in order {
        if cand & bit(v) == 0 || g.degree(v) < need_deg {
            continue;
        }
        map[w] = v;
        if embed(g, p, order, seq, depth + 1, map, used | bit(v)) {
            return true;
        }
    }
    map[w] = usize::MAX;
    false
}
