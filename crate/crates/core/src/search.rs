//! Exhaustive search for `wsat(F, H)` on tiny hosts.
//!
//! Candidate edge sets are enumerated by ascending size and, within a size,
//! as lexicographic combinations of `E(F)`. The first candidate that is
//! weakly saturated is returned, so the witness is the lexicographically
//! least one of minimum size.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use itertools::Itertools;
use rayon::prelude::*;
use serde_json::json;

use crate::bootstrap::{bisaturated_closure, closure};
use crate::error::{Error, Result};
use crate::graph::{complete_bipartite, Edge, Graph, SideLabeling};
use crate::pattern::{is_oriented_free, is_pattern_free, Pattern};

pub const DEFAULT_BUDGET: u64 = 10_000_000;
const CHUNK: usize = 4096;
const ISOMORPH_MAX_N: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Skip candidates where a vertex missing host edges has degree below
    /// `delta(H) - 1`.
    pub min_degree_prune: bool,
    /// Test pattern-freeness before running the closure.
    pub free_prefilter: bool,
    /// Reuse verdicts across isomorphic candidates (complete hosts on at
    /// most seven vertices, sequential mode only).
    pub isomorph_rejection: bool,
    /// Maximum number of verification calls.
    pub budget: u64,
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            min_degree_prune: true,
            free_prefilter: true,
            isomorph_rejection: true,
            budget: DEFAULT_BUDGET,
            parallel: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub minimum: usize,
    pub witness: Graph,
    /// Candidates generated, pruned or not.
    pub explored: u64,
    /// Candidates that reached a closure or freeness test.
    pub verifications: u64,
    pub host: String,
    pub pattern: String,
    /// The host itself is pattern-free, so only the host qualifies.
    pub vacuous: bool,
}

impl SearchResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "host": self.host,
            "pattern": self.pattern,
            "minimum": self.minimum,
            "vacuous": self.vacuous,
            "explored": self.explored,
            "verifications": self.verifications,
            "witness": {
                "n": self.witness.vertex_count(),
                "edges": self.witness.edges().collect::<Vec<Edge>>(),
            },
        })
    }
}

enum Kind<'a> {
    Plain(&'a Pattern),
    Oriented {
        sides: &'a SideLabeling,
        left: usize,
        right: usize,
    },
}

struct Problem<'a> {
    host: &'a Graph,
    kind: Kind<'a>,
    complete_host: bool,
}

impl Problem<'_> {
    fn is_free(&self, g: &Graph) -> bool {
        match self.kind {
            Kind::Plain(h) => is_pattern_free(g, h),
            Kind::Oriented { sides, left, right } => is_oriented_free(g, sides, left, right),
        }
    }

    fn closes(&self, g: &Graph) -> bool {
        let closed = match self.kind {
            Kind::Plain(h) => closure(g, self.host, h).map(|(c, _)| c),
            Kind::Oriented { sides, left, right } => {
                bisaturated_closure(g, sides, left, right).map(|(c, _)| c)
            }
        };
        closed.expect("candidates are spanning subgraphs of the host") == *self.host
    }

    fn pattern_min_degree(&self) -> usize {
        match self.kind {
            Kind::Plain(h) => h.min_degree(),
            Kind::Oriented { left, right, .. } => left.min(right),
        }
    }

    fn start_size(&self) -> usize {
        let bipartite = match self.kind {
            Kind::Plain(h) => h.bipartite_sizes().is_some(),
            Kind::Oriented { .. } => true,
        };
        if !bipartite {
            return 0;
        }
        let need = self.pattern_min_degree().saturating_sub(1);
        let total: usize = (0..self.host.vertex_count())
            .map(|v| self.host.degree(v).min(need))
            .sum();
        total.div_ceil(2)
    }
}

/// Exact `wsat(F, H)`.
pub fn wsat_bruteforce(f: &Graph, h: &Pattern, opts: &SearchOptions) -> Result<SearchResult> {
    let n = f.vertex_count();
    let problem = Problem {
        host: f,
        kind: Kind::Plain(h),
        complete_host: f.edge_count() == n * n.saturating_sub(1) / 2,
    };
    let host_desc = if problem.complete_host {
        format!("complete:{n}")
    } else {
        format!("graph(n={n},e={})", f.edge_count())
    };
    run(&problem, host_desc, h.to_string(), opts)
}

/// Exact minimum over spanning subgraphs of `K_{l,m}`: the bisaturation
/// number `w(l,m,K_{s,t})` when `oriented`, otherwise `wsat(K_{l,m}, K_{s,t})`.
pub fn wsat_bruteforce_bipartite(
    l: usize,
    m: usize,
    s: usize,
    t: usize,
    oriented: bool,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let (host, sides) = complete_bipartite(l, m);
    let pattern = Pattern::kst(s, t)?;
    let kind = if oriented {
        Kind::Oriented {
            sides: &sides,
            left: s,
            right: t,
        }
    } else {
        Kind::Plain(&pattern)
    };
    let problem = Problem {
        host: &host,
        kind,
        complete_host: false,
    };
    let label = if oriented {
        format!("oriented:{s},{t}")
    } else {
        pattern.to_string()
    };
    run(&problem, format!("bipartite:{l},{m}"), label, opts)
}

fn run(problem: &Problem, host: String, pattern: String, opts: &SearchOptions) -> Result<SearchResult> {
    let f = problem.host;
    let n = f.vertex_count();
    if problem.is_free(f) {
        return Ok(SearchResult {
            minimum: f.edge_count(),
            witness: f.clone(),
            explored: 0,
            verifications: 1,
            host,
            pattern,
            vacuous: true,
        });
    }
    let host_edges: Vec<Edge> = f.edges().collect();
    let host_deg: Vec<usize> = (0..n).map(|v| f.degree(v)).collect();
    let need = problem.pattern_min_degree().saturating_sub(1);
    let verifications = AtomicU64::new(1);
    let exhausted = AtomicBool::new(false);
    let mut explored = 0u64;
    let use_cache = opts.isomorph_rejection && !opts.parallel && problem.complete_host && n <= ISOMORPH_MAX_N;
    let mut cache: HashMap<u32, bool> = HashMap::new();

    let build = |combo: &[usize]| -> Graph {
        let mut g = Graph::empty(n);
        for &i in combo {
            g.add_edge(host_edges[i]);
        }
        g
    };
    let degree_ok = |g: &Graph| -> bool {
        !opts.min_degree_prune
            || (0..n).all(|v| {
                let d = g.degree(v);
                d == host_deg[v] || d >= need
            })
    };
    let verify = |g: &Graph| -> bool {
        if verifications.fetch_add(1, Ordering::Relaxed) >= opts.budget {
            exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        if opts.free_prefilter {
            return problem.is_free(g) && problem.closes(g);
        }
        problem.closes(g) && problem.is_free(g)
    };

    let start = problem.start_size().min(host_edges.len());
    for size in start..=host_edges.len() {
        let exceeded = || Error::BudgetExceeded {
            budget: opts.budget,
            last_completed: (size > start).then(|| size - 1),
        };
        let mut combos = (0..host_edges.len()).combinations(size);
        let mut found: Option<Graph> = None;
        if opts.parallel {
            loop {
                let chunk: Vec<Vec<usize>> = combos.by_ref().take(CHUNK).collect();
                if chunk.is_empty() {
                    break;
                }
                let hit = chunk.par_iter().position_first(|c| {
                    let g = build(c);
                    degree_ok(&g) && verify(&g)
                });
                if exhausted.load(Ordering::Relaxed) {
                    return Err(exceeded());
                }
                match hit {
                    Some(i) => {
                        explored += i as u64 + 1;
                        found = Some(build(&chunk[i]));
                        break;
                    }
                    None => explored += chunk.len() as u64,
                }
            }
        } else {
            for c in combos {
                explored += 1;
                let g = build(&c);
                if !degree_ok(&g) {
                    continue;
                }
                let ok = if use_cache {
                    let key = canonical_form(&g);
                    match cache.get(&key) {
                        Some(&v) => v,
                        None => {
                            let v = verify(&g);
                            if exhausted.load(Ordering::Relaxed) {
                                return Err(exceeded());
                            }
                            cache.insert(key, v);
                            v
                        }
                    }
                } else {
                    let v = verify(&g);
                    if exhausted.load(Ordering::Relaxed) {
                        return Err(exceeded());
                    }
                    v
                };
                if ok {
                    found = Some(g);
                    break;
                }
            }
        }
        if let Some(witness) = found {
            return Ok(SearchResult {
                minimum: size,
                witness,
                explored,
                verifications: verifications.load(Ordering::Relaxed),
                host,
                pattern,
                vacuous: false,
            });
        }
    }
    unreachable!("the host itself is weakly saturated once it contains the pattern")
}

/// Largest graph [`canonical_form`] accepts.
pub const CANONICAL_MAX_N: usize = 8;

/// Minimum upper-triangle adjacency bitstring over the vertex orders that
/// list the colour classes of the stable colour refinement in order. Two
/// graphs on at most eight vertices are isomorphic iff their forms agree.
pub fn canonical_form(g: &Graph) -> u32 {
    let n = g.vertex_count();
    assert!(n <= CANONICAL_MAX_N, "canonical form is for tiny graphs");
    let mut color = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = g.neighbor_list(v).iter().map(|&u| color[u]).collect();
                around.sort_unstable();
                (color[v], around)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        color = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        if distinct.len() == classes {
            break;
        }
        classes = distinct.len();
    }
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); classes];
    for v in 0..n {
        cells[color[v]].push(v);
    }
    let mut best = u32::MAX;
    let mut placed = Vec::with_capacity(n);
    search_cells(g, &cells, 0, &mut placed, &mut best);
    best
}

fn search_cells(g: &Graph, cells: &[Vec<usize>], i: usize, placed: &mut Vec<usize>, best: &mut u32) {
    if i == cells.len() {
        let n = placed.len();
        let mut code = 0u32;
        for a in 0..n {
            for b in a + 1..n {
                code = (code << 1) | u32::from(g.adjacent(placed[a], placed[b]));
            }
        }
        *best = (*best).min(code);
        return;
    }
    let len = cells[i].len();
    for perm in cells[i].iter().copied().permutations(len) {
        let mark = placed.len();
        placed.extend(perm);
        search_cells(g, cells, i + 1, placed, best);
        placed.truncate(mark);
    }
}
