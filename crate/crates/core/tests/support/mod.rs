//! Independent oracles shared by the integration tests. None of these reuse
//! the library's detectors, closure engine or elimination code.
#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wsat::search::canonical_form;
use wsat::{Edge, Graph};

pub fn e(a: usize, b: usize) -> Edge {
    Edge::new(a, b).unwrap()
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(e(u, v));
            }
        }
    }
    g
}

/// Every graph on `n` labeled vertices, indexed by the bits of `code` over
/// the pairs in lexicographic order.
pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if code >> k & 1 == 1 {
                g.add_edge(e(u, v));
            }
            k += 1;
        }
    }
    g
}

/// One representative per isomorphism class on `n <= 8` vertices, grown
/// vertex by vertex from the classes on `n - 1` vertices.
pub fn isomorphism_classes(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(0)];
    for size in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u32..1 << (size - 1) {
                let mut h = Graph::empty(size);
                for ed in g.edges() {
                    h.add_edge(ed);
                }
                for u in 0..size - 1 {
                    if mask >> u & 1 == 1 {
                        h.add_edge(e(u, size - 1));
                    }
                }
                if seen.insert(canonical_form(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

/// Whether `g` with `anchor` added holds a complete multipartite copy with
/// the given class sizes using `anchor`, by trying every assignment of
/// vertices to classes.
pub fn brute_multipartite_through(g: &Graph, sizes: &[usize], anchor: Edge) -> bool {
    let n = g.vertex_count();
    let mut g = g.clone();
    g.add_edge(anchor);
    let k = sizes.len();
    let mut assign = vec![k; n];
    fn rec(g: &Graph, sizes: &[usize], anchor: Edge, assign: &mut Vec<usize>, v: usize, count: &mut Vec<usize>) -> bool {
        let n = g.vertex_count();
        let k = sizes.len();
        if v == n {
            if count.iter().zip(sizes).any(|(c, s)| c != s) {
                return false;
            }
            let (cu, cv) = (assign[anchor.u], assign[anchor.v]);
            if cu == k || cv == k || cu == cv {
                return false;
            }
            for a in 0..n {
                for b in a + 1..n {
                    if assign[a] < k && assign[b] < k && assign[a] != assign[b] && !g.adjacent(a, b) {
                        return false;
                    }
                }
            }
            return true;
        }
        for c in 0..=k {
            if c < k && count[c] == sizes[c] {
                continue;
            }
            assign[v] = c;
            if c < k {
                count[c] += 1;
            }
            let hit = rec(g, sizes, anchor, assign, v + 1, count);
            if c < k {
                count[c] -= 1;
            }
            if hit {
                return true;
            }
        }
        assign[v] = k;
        false
    }
    let mut count = vec![0; k];
    rec(&g, sizes, anchor, &mut assign, 0, &mut count)
}

/// `K_{a,b}` through `anchor` with the `a` class among `left` vertices and
/// the `b` class among the others, by subset enumeration.
pub fn brute_oriented_through(g: &Graph, left: &[bool], a: usize, b: usize, anchor: Edge) -> bool {
    let n = g.vertex_count();
    let mut g = g.clone();
    g.add_edge(anchor);
    let ls: Vec<usize> = (0..n).filter(|&v| left[v]).collect();
    let rs: Vec<usize> = (0..n).filter(|&v| !left[v]).collect();
    let (x, y) = if left[anchor.u] { (anchor.u, anchor.v) } else { (anchor.v, anchor.u) };
    if left[x] == left[y] {
        return false;
    }
    for am in 0u64..1 << ls.len() {
        let av: Vec<usize> = (0..ls.len()).filter(|i| am >> i & 1 == 1).map(|i| ls[i]).collect();
        if av.len() != a || !av.contains(&x) {
            continue;
        }
        for bm in 0u64..1 << rs.len() {
            let bv: Vec<usize> = (0..rs.len()).filter(|i| bm >> i & 1 == 1).map(|i| rs[i]).collect();
            if bv.len() != b || !bv.contains(&y) {
                continue;
            }
            if av.iter().all(|&p| bv.iter().all(|&q| g.adjacent(p, q))) {
                return true;
            }
        }
    }
    false
}

/// Fixed point of "add any host edge completing a copy through itself".
pub fn naive_closure<F: Fn(&Graph, Edge) -> bool>(g: &Graph, host: &Graph, through: F) -> Graph {
    let mut cur = g.clone();
    loop {
        let addable: Vec<Edge> = host
            .edges()
            .filter(|&ed| !cur.has_edge(ed) && through(&cur, ed))
            .collect();
        if addable.is_empty() {
            return cur;
        }
        for ed in addable {
            cur.add_edge(ed);
        }
    }
}

/// Rank over the rationals by textbook elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for j in 0..cols {
            m[rank][j] = &m[rank][j] / &pivot;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[rank][j];
                    m[i][j] = &m[i][j] - d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Edge vectors for the moment curve with `a_v = v + 1`, as integers.
pub fn integer_edge_vectors(g: &Graph, t: usize) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    let b = t - 1;
    let u = |v: usize| -> Vec<i64> { (0..b).map(|i| (v as i64 + 1).pow(i as u32)).collect() };
    g.edges()
        .map(|ed| {
            let mut f = vec![0i64; n * b];
            f[ed.u * b..(ed.u + 1) * b].copy_from_slice(&u(ed.v));
            f[ed.v * b..(ed.v + 1) * b].copy_from_slice(&u(ed.u));
            f
        })
        .collect()
}
