//! The `H`-bootstrap process inside a host graph `F`.
//!
//! Starting from `G ⊆ F`, repeatedly add an edge of `F` whose addition
//! completes a copy of `H` through it. The process is monotone, so the final
//! graph does not depend on the order of additions; only the trace does.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{edge_complement_list, Edge, Graph, SideLabeling};
use crate::pattern::{
    copy_through_present_edge, is_oriented_free, is_pattern_free, oriented_present, CopyWitness,
    Pattern,
};

/// Order in which candidate edges are tried.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ClosurePolicy {
    /// Scan missing edges lexicographically, add the first addable one and
    /// restart the scan.
    #[default]
    Lexicographic,
    /// Same scan-and-restart loop over a seeded shuffle of the candidates.
    Shuffled(u64),
    /// Add every edge addable with respect to the round-start graph at once;
    /// the trace lists each round in lexicographic order.
    Rounds,
    /// [`ClosurePolicy::Rounds`] with each round evaluated on the rayon pool.
    ParallelRounds,
}

/// One addition: the edge and the copy of `H` it completed.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TraceStep {
    pub edge: Edge,
    pub witness: CopyWitness,
}

/// Replayable record of a closure run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosureTrace {
    pub steps: Vec<TraceStep>,
    pub initial: String,
    pub final_graph: String,
}

impl ClosureTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.steps.iter().map(|s| s.edge)
    }

    /// The trace file format: a JSON array of `{edge, witness}` objects.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.steps)?)
    }

    pub fn from_json(text: &str, initial: &Graph) -> Result<Self> {
        let steps: Vec<TraceStep> = serde_json::from_str(text)?;
        let mut g = initial.clone();
        for s in &steps {
            if s.edge.v < g.vertex_count() {
                g.add_edge(s.edge);
            }
        }
        Ok(ClosureTrace {
            steps,
            initial: fingerprint(initial),
            final_graph: fingerprint(&g),
        })
    }
}

/// Short stable hash of the canonical edge list.
pub fn fingerprint(g: &Graph) -> String {
    let digest = Sha256::digest(crate::io::format_edge_list(g, None, &[]).as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Outcome of checking weak saturation.
#[derive(Clone, Debug)]
pub struct SaturationVerdict {
    pub is_weakly_saturated: bool,
    pub is_pattern_free: bool,
    pub closure_complete: bool,
    pub trace: ClosureTrace,
    /// Host edges the process never added.
    pub missing: Vec<Edge>,
}

fn run_closure<D>(
    g: &Graph,
    candidates: Vec<Edge>,
    detect: D,
    policy: ClosurePolicy,
) -> (Graph, ClosureTrace)
where
    D: Fn(&Graph, Edge) -> Option<CopyWitness> + Sync,
{
    let mut current = g.clone();
    let mut steps = Vec::new();
    match policy {
        ClosurePolicy::Lexicographic | ClosurePolicy::Shuffled(_) => {
            let mut pending = candidates;
            if let ClosurePolicy::Shuffled(seed) = policy {
                pending.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            }
            'scan: loop {
                for i in 0..pending.len() {
                    let e = pending[i];
                    current.add_edge(e);
                    if let Some(witness) = detect(&current, e) {
                        pending.remove(i);
                        steps.push(TraceStep { edge: e, witness });
                        continue 'scan;
                    }
                    current.remove_edge(e);
                }
                break;
            }
        }
        ClosurePolicy::Rounds | ClosurePolicy::ParallelRounds => {
            let mut pending = candidates;
            loop {
                let probe = |&e: &Edge| detect(&current.with_edge(e), e).map(|w| (e, w));
                let mut found: Vec<(Edge, CopyWitness)> = if policy == ClosurePolicy::Rounds {
                    pending.iter().filter_map(probe).collect()
                } else {
                    pending.par_iter().filter_map(probe).collect()
                };
                if found.is_empty() {
                    break;
                }
                found.sort_by_key(|(e, _)| *e);
                for (e, _) in &found {
                    current.add_edge(*e);
                }
                pending.retain(|e| !current.has_edge(*e));
                steps.extend(found.into_iter().map(|(edge, witness)| TraceStep { edge, witness }));
            }
        }
    }
    let trace = ClosureTrace {
        steps,
        initial: fingerprint(g),
        final_graph: fingerprint(&current),
    };
    (current, trace)
}

/// Closure of `g` inside host `f` under `h` with the default policy.
pub fn closure(g: &Graph, f: &Graph, h: &Pattern) -> Result<(Graph, ClosureTrace)> {
    closure_with(g, f, h, ClosurePolicy::default())
}

pub fn closure_with(
    g: &Graph,
    f: &Graph,
    h: &Pattern,
    policy: ClosurePolicy,
) -> Result<(Graph, ClosureTrace)> {
    let candidates = edge_complement_list(g, f)?;
    Ok(run_closure(
        g,
        candidates,
        |cur, e| copy_through_present_edge(cur, h, e),
        policy,
    ))
}

pub fn verify_weakly_saturated(g: &Graph, f: &Graph, h: &Pattern) -> Result<SaturationVerdict> {
    verify_with(g, f, h, ClosurePolicy::default())
}

pub fn verify_with(
    g: &Graph,
    f: &Graph,
    h: &Pattern,
    policy: ClosurePolicy,
) -> Result<SaturationVerdict> {
    let (closed, trace) = closure_with(g, f, h, policy)?;
    let free = is_pattern_free(g, h);
    Ok(verdict(free, &closed, f, trace))
}

fn verdict(free: bool, closed: &Graph, host: &Graph, trace: ClosureTrace) -> SaturationVerdict {
    let missing: Vec<Edge> = host.edges().filter(|&e| !closed.has_edge(e)).collect();
    let complete = missing.is_empty();
    SaturationVerdict {
        is_weakly_saturated: free && complete,
        is_pattern_free: free,
        closure_complete: complete,
        trace,
        missing,
    }
}

fn check_bipartite(g: &Graph, sides: &SideLabeling) -> Result<()> {
    if g.vertex_count() != sides.vertex_count() {
        return Err(Error::VertexCountMismatch(g.vertex_count(), sides.vertex_count()));
    }
    match g.edges().find(|&e| !sides.is_cross(e)) {
        Some(e) => Err(Error::SameSideEdge(e)),
        None => Ok(()),
    }
}

/// Side-respecting closure inside `K_{l,m}`: every witness places its
/// `left_size` class on the left and its `right_size` class on the right.
pub fn bisaturated_closure(
    g: &Graph,
    sides: &SideLabeling,
    left_size: usize,
    right_size: usize,
) -> Result<(Graph, ClosureTrace)> {
    bisaturated_closure_with(g, sides, left_size, right_size, ClosurePolicy::default())
}

pub fn bisaturated_closure_with(
    g: &Graph,
    sides: &SideLabeling,
    left_size: usize,
    right_size: usize,
    policy: ClosurePolicy,
) -> Result<(Graph, ClosureTrace)> {
    check_bipartite(g, sides)?;
    let host = sides.host();
    let candidates = edge_complement_list(g, &host)?;
    Ok(run_closure(
        g,
        candidates,
        |cur, e| oriented_present(cur, sides, left_size, right_size, e),
        policy,
    ))
}

/// Weak bisaturation check. Pattern-freeness is taken in the oriented
/// sense: no copy with the first class on the left.
pub fn verify_bisaturated(
    g: &Graph,
    sides: &SideLabeling,
    left_size: usize,
    right_size: usize,
) -> Result<SaturationVerdict> {
    let (closed, trace) = bisaturated_closure(g, sides, left_size, right_size)?;
    let free = is_oriented_free(g, sides, left_size, right_size);
    Ok(verdict(free, &closed, &sides.host(), trace))
}

/// Replays `trace` from `g`, re-validating every witness in the graph built
/// so far. Fails on a repeated edge, an edge already in `g`, or a witness
/// that does not hold at its step.
pub fn replay_trace(g: &Graph, trace: &ClosureTrace, h: &Pattern) -> bool {
    replay(g, trace, |cur, step| step.witness.validate(cur, h, Some(step.edge)))
}

/// [`replay_trace`] plus the requirement that every added edge is in `f`.
pub fn replay_trace_in_host(g: &Graph, f: &Graph, trace: &ClosureTrace, h: &Pattern) -> bool {
    g.is_subgraph_of(f)
        && trace.edges().all(|e| e.v < f.vertex_count() && f.has_edge(e))
        && replay_trace(g, trace, h)
}

/// Replay for traces of [`bisaturated_closure`].
pub fn replay_bisaturated_trace(
    g: &Graph,
    sides: &SideLabeling,
    left_size: usize,
    right_size: usize,
    trace: &ClosureTrace,
) -> bool {
    trace.edges().all(|e| e.v < sides.vertex_count() && sides.is_cross(e))
        && replay(g, trace, |cur, step| {
            step.witness
                .validate_oriented(cur, sides, left_size, right_size, Some(step.edge))
        })
}

fn replay<F>(g: &Graph, trace: &ClosureTrace, valid: F) -> bool
where
    F: Fn(&Graph, &TraceStep) -> bool,
{
    let mut current = g.clone();
    for step in &trace.steps {
        if step.edge.v >= current.vertex_count() || !current.add_edge(step.edge) {
            return false;
        }
        if !valid(&current, step) {
            return false;
        }
    }
    true
}
