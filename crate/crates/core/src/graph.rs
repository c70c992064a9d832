//! Dense simple graphs on at most 64 labeled vertices.
//!
//! Each vertex stores its neighborhood as a `u64` bitset, so neighborhood
//! intersections (the inner loop of copy detection) are single `&`
//! instructions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in increasing order.
pub(crate) fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// An undirected edge, always stored with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Fails on a loop.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(Error::Loop(a)),
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = Error;

    fn try_from([a, b]: [usize; 2]) -> Result<Self> {
        Edge::new(a, b)
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// Dense undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// # Panics
    /// If `n > MAX_VERTICES`; use [`Graph::try_empty`] for a checked version.
    pub fn empty(n: usize) -> Self {
        Self::try_empty(n).expect("vertex count within bitset capacity")
    }

    pub fn try_empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::try_empty(n)?;
        for (a, b) in edges {
            let e = Edge::new(a, b)?;
            g.check_vertex(e.v)?;
            g.add_edge(e);
        }
        Ok(g)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn check_edge(&self, e: Edge) -> Result<()> {
        self.check_vertex(e.u)?;
        self.check_vertex(e.v)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Mask of all vertices.
    pub fn vertex_mask(&self) -> u64 {
        low_bits(self.n)
    }

    /// Neighborhood of `v` as a bitset.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbor_list(&self, v: usize) -> Vec<usize> {
        iter_bits(self.adj[v]).collect()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, e: Edge) -> bool {
        self.adj[e.u] & bit(e.v) != 0
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a] & bit(b) != 0
    }

    /// Adds `e`; returns whether it was new. Endpoints must be in range.
    pub fn add_edge(&mut self, e: Edge) -> bool {
        let fresh = !self.has_edge(e);
        self.adj[e.u] |= bit(e.v);
        self.adj[e.v] |= bit(e.u);
        fresh
    }

    pub fn remove_edge(&mut self, e: Edge) -> bool {
        let present = self.has_edge(e);
        self.adj[e.u] &= !bit(e.v);
        self.adj[e.v] &= !bit(e.u);
        present
    }

    /// Copy of `self` with `e` added.
    pub fn with_edge(&self, e: Edge) -> Self {
        let mut g = self.clone();
        g.add_edge(e);
        g
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            iter_bits(self.adj[u] & !low_bits(u + 1)).map(move |v| Edge { u, v })
        })
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(a, b)| a & !b == 0)
    }

    /// Adds `other`'s edges to `self`, returning the union.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch(self.n, other.n));
        }
        Ok(Graph {
            n: self.n,
            adj: self.adj.iter().zip(&other.adj).map(|(a, b)| a | b).collect(),
        })
    }

    /// Minimum degree, or `None` for the null graph.
    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    /// Checks symmetry, absence of loops and range of the bitsets.
    pub fn is_well_formed(&self) -> bool {
        let mask = self.vertex_mask();
        (0..self.n).all(|u| {
            self.adj[u] & !mask == 0
                && self.adj[u] & bit(u) == 0
                && iter_bits(self.adj[u]).all(|v| self.adj[v] & bit(u) != 0)
        })
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for e in self.edges() {
            g.add_edge(Edge::new(perm[e.u], perm[e.v]).expect("permutation is injective"));
        }
        g
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::format_edge_list(self, None, &[]))
    }
}

/// Side of a vertex in a bipartite host.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Assignment of every vertex to the left or right class of `K_{l,m}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SideLabeling {
    sides: Vec<Side>,
}

impl SideLabeling {
    pub fn new(sides: Vec<Side>) -> Self {
        SideLabeling { sides }
    }

    /// Vertices `0..left` on the left, `left..left+right` on the right.
    pub fn prefix(left: usize, right: usize) -> Self {
        let mut sides = vec![Side::Left; left];
        sides.resize(left + right, Side::Right);
        SideLabeling { sides }
    }

    pub fn side(&self, v: usize) -> Side {
        self.sides[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.sides.len()
    }

    pub fn left_count(&self) -> usize {
        self.sides.iter().filter(|&&s| s == Side::Left).count()
    }

    pub fn right_count(&self) -> usize {
        self.sides.len() - self.left_count()
    }

    pub fn left_mask(&self) -> u64 {
        self.mask(Side::Left)
    }

    pub fn right_mask(&self) -> u64 {
        self.mask(Side::Right)
    }

    fn mask(&self, side: Side) -> u64 {
        self.sides
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == side)
            .fold(0, |m, (v, _)| m | bit(v))
    }

    /// Number of leading left vertices if the labeling has the prefix form.
    pub fn as_prefix(&self) -> Option<usize> {
        let l = self.left_count();
        (self.sides[..l].iter().all(|&s| s == Side::Left)).then_some(l)
    }

    pub fn is_cross(&self, e: Edge) -> bool {
        self.sides[e.u] != self.sides[e.v]
    }

    /// The complete bipartite graph between the two sides.
    pub fn host(&self) -> Graph {
        let mut g = Graph::empty(self.sides.len());
        let (left, right) = (self.left_mask(), self.right_mask());
        for v in 0..self.sides.len() {
            g.adj[v] = if left & bit(v) != 0 { right } else { left };
        }
        g
    }
}

/// `K_n`.
pub fn complete_graph(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    let all = low_bits(n);
    for v in 0..n {
        g.adj[v] = all & !bit(v);
    }
    g
}

/// `K_{l,m}` with vertices `0..l` on the left.
pub fn complete_bipartite(l: usize, m: usize) -> (Graph, SideLabeling) {
    let sides = SideLabeling::prefix(l, m);
    (sides.host(), sides)
}

/// Adds `k` new vertices `n..n+k`, each adjacent to every original vertex.
/// The new vertices form a clique when `clique` is set and an independent
/// set otherwise.
pub fn cone(g: &Graph, k: usize, clique: bool) -> Graph {
    let n = g.n;
    let mut out = Graph::empty(n + k);
    for e in g.edges() {
        out.add_edge(e);
    }
    for x in n..n + k {
        for v in 0..n {
            out.add_edge(Edge { u: v, v: x });
        }
        if clique {
            for y in x + 1..n + k {
                out.add_edge(Edge { u: x, v: y });
            }
        }
    }
    out
}

/// `E(F) \ E(G)` in lexicographic order.
pub fn edge_complement_list(g: &Graph, f: &Graph) -> Result<Vec<Edge>> {
    if g.n != f.n {
        return Err(Error::VertexCountMismatch(g.n, f.n));
    }
    if let Some(e) = g.edges().find(|&e| !f.has_edge(e)) {
        return Err(Error::NotInHost(e));
    }
    Ok(f.edges().filter(|&e| !g.has_edge(e)).collect())
}
