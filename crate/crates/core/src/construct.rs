//! Explicit extremal constructions with documented vertex layouts.
//!
//! Every generator assigns blocks to consecutive index ranges in a fixed
//! order (X first, then the Y blocks, then distinguished single vertices,
//! then W, then Z) and returns the layout next to the graph.

use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{complete_graph, Edge, Graph, SideLabeling, MAX_VERTICES};

/// Named vertex blocks partitioning `0..n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BlockLayout {
    blocks: Vec<(String, Range<usize>)>,
}

impl BlockLayout {
    fn from_sizes(spec: &[(&str, usize)]) -> Self {
        let mut at = 0;
        let blocks = spec
            .iter()
            .map(|&(name, size)| {
                let r = at..at + size;
                at += size;
                (name.to_string(), r)
            })
            .collect();
        BlockLayout { blocks }
    }

    pub fn get(&self, name: &str) -> Option<Range<usize>> {
        self.blocks
            .iter()
            .find(|(b, _)| b == name)
            .map(|(_, r)| r.clone())
    }

    /// Indices of block `name`; panics if the block does not exist.
    pub fn block(&self, name: &str) -> Range<usize> {
        self.get(name)
            .unwrap_or_else(|| panic!("layout has no block `{name}`"))
    }

    pub fn blocks(&self) -> &[(String, Range<usize>)] {
        &self.blocks
    }

    pub fn vertex_count(&self) -> usize {
        self.blocks.last().map_or(0, |(_, r)| r.end)
    }

    /// One `block NAME lo..hi` line per block (half-open ranges).
    pub fn comment_lines(&self) -> Vec<String> {
        self.blocks
            .iter()
            .map(|(name, r)| format!("block {name} {}..{}", r.start, r.end))
            .collect()
    }
}

fn params(msg: String) -> Error {
    Error::InvalidParameters(msg)
}

fn check_total(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices(n))
    } else {
        Ok(())
    }
}

fn join(g: &mut Graph, a: Range<usize>, b: Range<usize>) {
    for x in a {
        for y in b.clone() {
            if x != y {
                g.add_edge(Edge::new(x, y).expect("distinct"));
            }
        }
    }
}

fn clique(g: &mut Graph, a: Range<usize>) {
    join(g, a.clone(), a);
}

/// `G_n`: `X` a `t`-clique, `Y` (`t-1`) and `Z` (`n-2t+1`) independent,
/// `X ∪ Z` completely joined to `Y`.
///
/// Layout: `X`, `Z`, `Y`, so the lexicographic closure schedule adds the
/// `X`-`Z` edges first, then the edges inside `Z`, then inside `Y`.
pub fn construct_gn(n: usize, t: usize) -> Result<(Graph, BlockLayout)> {
    if t < 2 || n + 1 < 2 * t {
        return Err(params(format!("G_n needs t >= 2 and n >= 2t-1 (got n={n}, t={t})")));
    }
    check_total(n)?;
    let layout = BlockLayout::from_sizes(&[("X", t), ("Z", n + 1 - 2 * t), ("Y", t - 1)]);
    let mut g = Graph::empty(n);
    let (x, y, z) = (layout.block("X"), layout.block("Y"), layout.block("Z"));
    clique(&mut g, x.clone());
    join(&mut g, x, y.clone());
    join(&mut g, z, y);
    Ok((g, layout))
}

/// `F_n` for `K_{t,t+1}`: `G_n`'s shape with `Y` extended by `y*`, which
/// is joined to `X` only.
///
/// Layout: `X` (`t`), `Y` (`t-1`), `y*` (1), `Z` (`n-2t`).
pub fn construct_fn_ktt1(n: usize, t: usize) -> Result<(Graph, BlockLayout)> {
    if t < 2 || n < 2 * t + 1 {
        return Err(params(format!("F_n needs t >= 2 and n >= 2t+1 (got n={n}, t={t})")));
    }
    check_total(n)?;
    let layout =
        BlockLayout::from_sizes(&[("X", t), ("Y", t - 1), ("y*", 1), ("Z", n - 2 * t)]);
    let mut g = Graph::empty(n);
    let (x, y, ys, z) = (
        layout.block("X"),
        layout.block("Y"),
        layout.block("y*"),
        layout.block("Z"),
    );
    clique(&mut g, x.clone());
    join(&mut g, x.clone(), y.clone());
    join(&mut g, x, ys);
    join(&mut g, z, y);
    Ok((g, layout))
}

/// `H_n` for `K_{s,t}`, `s < t`: `Y = Y1 ∪ Y2` a `(t-1)`-clique, `X`
/// joined to `W ∪ Y`, `x*` joined to `Y`, `Z` joined to `Y2`. Every vertex
/// of `W ∪ Z` has degree `s-1`.
///
/// Layout: `X` (`s-1`), `Y1` (`t-s`), `Y2` (`s-1`), `x*` (1), `W` (`s-1`),
/// `Z` (`n-t-2s+2`).
pub fn construct_hn(n: usize, s: usize, t: usize) -> Result<(Graph, BlockLayout)> {
    if s < 2 || s >= t || n + 2 < t + 2 * s {
        return Err(params(format!(
            "H_n needs 2 <= s < t and n >= t+2s-2 (got n={n}, s={s}, t={t})"
        )));
    }
    check_total(n)?;
    let layout = BlockLayout::from_sizes(&[
        ("X", s - 1),
        ("Y1", t - s),
        ("Y2", s - 1),
        ("x*", 1),
        ("W", s - 1),
        ("Z", n + 2 - t - 2 * s),
    ]);
    let (x, y1, y2, xs, w, z) = (
        layout.block("X"),
        layout.block("Y1"),
        layout.block("Y2"),
        layout.block("x*"),
        layout.block("W"),
        layout.block("Z"),
    );
    let y = y1.start..y2.end;
    let mut g = Graph::empty(n);
    clique(&mut g, y.clone());
    join(&mut g, x.clone(), w);
    join(&mut g, x, y.clone());
    join(&mut g, xs, y);
    join(&mut g, z, y2);
    Ok((g, layout))
}

/// `F_n^{k,t}`: complete `k`-partite on `C_1..C_k` (`|C_i| = t` for
/// `i < k`, `|C_k| = t-1`), `X = C_1` also a clique, and an independent `Z`
/// joined to `Y = C_2 ∪ ... ∪ C_k`.
///
/// Layout: `X` (= `C1`), `C2`, ..., `Ck`, `Z` (`n-tk+1`).
pub fn construct_fkt(n: usize, k: usize, t: usize) -> Result<(Graph, BlockLayout)> {
    if k < 2 || t < 1 || n + 1 < t * k {
        return Err(params(format!(
            "F_n^(k,t) needs k >= 2, t >= 1 and n >= tk-1 (got n={n}, k={k}, t={t})"
        )));
    }
    check_total(n)?;
    let names: Vec<String> = (2..=k).map(|i| format!("C{i}")).collect();
    let mut spec: Vec<(&str, usize)> = vec![("X", t)];
    for (i, name) in names.iter().enumerate() {
        spec.push((name, if i + 2 == k { t - 1 } else { t }));
    }
    spec.push(("Z", n + 1 - t * k));
    let layout = BlockLayout::from_sizes(&spec);
    let classes: Vec<Range<usize>> = layout.blocks()[..k].iter().map(|(_, r)| r.clone()).collect();
    let mut g = Graph::empty(n);
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            join(&mut g, a.clone(), b.clone());
        }
    }
    clique(&mut g, classes[0].clone());
    let y = classes[1].start..classes[k - 1].end;
    join(&mut g, layout.block("Z"), y);
    Ok((g, layout))
}

/// `K_n` minus the edges inside the last `n-r+2` vertices.
pub fn construct_lovasz(n: usize, r: usize) -> Result<Graph> {
    if r < 2 || r > n {
        return Err(params(format!("need 2 <= r <= n (got n={n}, r={r})")));
    }
    check_total(n)?;
    let mut g = complete_graph(n);
    let hole = r - 2..n;
    for x in hole.clone() {
        for y in x + 1..hole.end {
            g.remove_edge(Edge { u: x, v: y });
        }
    }
    Ok(g)
}

/// `G_0 ⊆ K_{l,m}`: `X1` joined to all of the right side, `Y1` to all of the
/// left side, and `X2` to `Y2`.
///
/// Layout: left `X1` (`s-1`), `X2` (`t-s`), `X3` (`l-t+1`); right `Y1`
/// (`s-1`), `Y2` (`t-s`), `Y3` (`m-t+1`). Vertices `0..l` are left.
pub fn construct_g0(
    l: usize,
    m: usize,
    s: usize,
    t: usize,
) -> Result<(Graph, SideLabeling, BlockLayout)> {
    if s < 2 || s > t || t > m || l + 1 < t || s > l {
        return Err(params(format!(
            "G_0 needs 2 <= s <= t <= m and t-1 <= l, s <= l (got l={l}, m={m}, s={s}, t={t})"
        )));
    }
    check_total(l + m)?;
    let layout = BlockLayout::from_sizes(&[
        ("X1", s - 1),
        ("X2", t - s),
        ("X3", l + 1 - t),
        ("Y1", s - 1),
        ("Y2", t - s),
        ("Y3", m + 1 - t),
    ]);
    let left = 0..l;
    let right = l..l + m;
    let mut g = Graph::empty(l + m);
    join(&mut g, layout.block("X1"), right);
    join(&mut g, layout.block("Y1"), left);
    join(&mut g, layout.block("X2"), layout.block("Y2"));
    Ok((g, SideLabeling::prefix(l, m), layout))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas;
    use crate::pattern::{is_pattern_free, Pattern};

    fn block_sizes(layout: &BlockLayout) -> Vec<usize> {
        layout.blocks().iter().map(|(_, r)| r.len()).collect()
    }

    #[test]
    fn gn_examples() {
        assert_eq!(construct_gn(5, 2).unwrap().0.edge_count(), 5);
        assert_eq!(construct_gn(8, 3).unwrap().0.edge_count(), 15);
        let (g, layout) = construct_gn(3, 2).unwrap();
        assert_eq!(block_sizes(&layout), vec![2, 0, 1]);
        assert_eq!(g, complete_graph(3));
        assert!(construct_gn(2, 2).is_err());
        assert!(construct_gn(5, 1).is_err());
    }

    #[test]
    fn fn_examples() {
        assert_eq!(construct_fn_ktt1(5, 2).unwrap().0.edge_count(), 6);
        assert_eq!(construct_fn_ktt1(9, 3).unwrap().0.edge_count(), 18);
        for (n, t) in [(7, 3), (10, 4), (9, 2)] {
            let gn = construct_gn(n, t).unwrap().0.edge_count();
            let fnn = construct_fn_ktt1(n, t).unwrap().0.edge_count();
            assert_eq!(fnn, gn + 1);
        }
        assert!(construct_fn_ktt1(4, 2).is_err());
    }

    #[test]
    fn hn_examples() {
        assert_eq!(construct_hn(7, 2, 3).unwrap().0.edge_count(), 8);
        let (g, layout) = construct_hn(11, 2, 4).unwrap();
        assert_eq!(g.edge_count(), 15);
        assert!(is_pattern_free(&g, &Pattern::kst(2, 4).unwrap()));
        for name in ["W", "Z"] {
            assert!(layout.block(name).all(|v| g.degree(v) == 1));
        }
        let (g, layout) = construct_hn(14, 3, 5).unwrap();
        assert_eq!(block_sizes(&layout), vec![2, 2, 2, 1, 2, 5]);
        for name in ["W", "Z"] {
            assert!(layout.block(name).all(|v| g.degree(v) == 2));
        }
        assert!(construct_hn(10, 3, 3).is_err());
        assert!(construct_hn(5, 2, 4).is_err());
    }

    #[test]
    fn fkt_examples() {
        let (g, layout) = construct_fkt(12, 3, 2).unwrap();
        assert_eq!(block_sizes(&layout), vec![2, 2, 1, 7]);
        // Oracle: count edges pair by pair from the adjacency definition.
        let block_of = |v: usize| layout.blocks().iter().position(|(_, r)| r.contains(&v)).unwrap();
        let mut count = 0;
        for u in 0..12 {
            for v in u + 1..12 {
                let (a, b) = (block_of(u), block_of(v));
                let z = 3;
                let adjacent = (a == 0 && b == 0) || (a != b && a < z && b < z) || (a != b && (a == z || b == z) && a.min(b) >= 1);
                count += adjacent as usize;
            }
        }
        assert_eq!(count, 30);
        assert_eq!(g.edge_count(), 30);
    }

    #[test]
    fn fkt_two_parts_is_gn() {
        for (n, t) in [(5, 2), (8, 3), (12, 4)] {
            let (g, gl) = construct_gn(n, t).unwrap();
            let (f, fl) = construct_fkt(n, 2, t).unwrap();
            let mut perm = vec![0; n];
            for (from, to) in [("X", "X"), ("Y", "C2"), ("Z", "Z")] {
                for (a, b) in gl.block(from).zip(fl.block(to)) {
                    perm[a] = b;
                }
            }
            assert_eq!(g.permuted(&perm), f);
        }
    }

    #[test]
    fn fkt_unit_classes_match_lovasz_count() {
        for n in 3..12 {
            for r in 2..=n.min(7) {
                if n + 1 < r {
                    continue;
                }
                let g = construct_fkt(n, r, 1).unwrap().0;
                assert_eq!(g.edge_count() as u64, formulas::wsat_clique(n as u64, r as u64));
            }
        }
    }

    #[test]
    fn lovasz_examples() {
        assert_eq!(construct_lovasz(4, 3).unwrap().edge_count(), 3);
        assert_eq!(construct_lovasz(5, 3).unwrap().edge_count(), 4);
        let mut k6 = complete_graph(6);
        k6.remove_edge(Edge { u: 4, v: 5 });
        assert_eq!(construct_lovasz(6, 6).unwrap(), k6);
        assert!(construct_lovasz(4, 5).is_err());
        assert!(is_pattern_free(&construct_lovasz(7, 4).unwrap(), &Pattern::clique(4).unwrap()));
    }

    #[test]
    fn g0_examples() {
        assert_eq!(construct_g0(4, 4, 2, 3).unwrap().0.edge_count(), 8);
        assert_eq!(construct_g0(5, 7, 2, 4).unwrap().0.edge_count(), 15);
        for n in 3..8 {
            for t in 2..=n {
                let g = construct_g0(n, n, t, t).unwrap().0;
                assert_eq!(g.edge_count(), (2 * n - t + 1) * (t - 1));
            }
        }
        let (g, sides, _) = construct_g0(6, 6, 3, 3).unwrap();
        assert!(g.edges().all(|e| sides.is_cross(e)));
        assert!(construct_g0(4, 4, 1, 3).is_err());
        assert!(construct_g0(4, 2, 2, 3).is_err());
    }

    #[test]
    fn formula_sweep() {
        for t in 2..=6usize {
            for n in 2 * t - 1..=40 {
                let g = construct_gn(n, t).unwrap().0;
                assert!(g.is_well_formed());
                assert_eq!(g.edge_count() as u64, formulas::wsat_ktt(n as u64, t as u64));
                if n > 2 * t {
                    let f = construct_fn_ktt1(n, t).unwrap().0;
                    assert_eq!(f.edge_count() as u64, formulas::wsat_ktt(n as u64, t as u64) + 1);
                }
            }
            for s in 2..t {
                for n in t + 2 * s - 2..=40 {
                    let (g, layout) = construct_hn(n, s, t).unwrap();
                    assert_eq!(layout.vertex_count(), n);
                    assert_eq!(
                        g.edge_count() as u64,
                        formulas::kst_upper(n as u64, s as u64, t as u64)
                    );
                }
            }
            for k in 2..=6usize {
                for n in (t * k).saturating_sub(1)..=40 {
                    let (g, layout) = construct_fkt(n, k, t).unwrap();
                    assert_eq!(layout.vertex_count(), n);
                    assert_eq!(g.edge_count() as u64, formulas::fkt_edges(n as u64, k as u64, t as u64));
                }
            }
            for s in 2..=t {
                for l in t - 1..=8 {
                    if l < s {
                        continue;
                    }
                    for m in t..=8 {
                        let (g, _, layout) = construct_g0(l, m, s, t).unwrap();
                        assert_eq!(layout.vertex_count(), l + m);
                        assert_eq!(
                            g.edge_count() as u64,
                            formulas::wsat_bipartite(l as u64, m as u64, s as u64, t as u64)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn comment_lines() {
        let (_, layout) = construct_gn(5, 2).unwrap();
        assert_eq!(
            layout.comment_lines(),
            vec!["block X 0..2", "block Z 2..4", "block Y 4..5"]
        );
    }
}
