use std::collections::BTreeMap;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, PrimeField};
use super::matrix::{determinant, nullspace};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::pattern::CopyWitness;

const EXHAUSTIVE_SUBSETS: u64 = 1_000_000;
const SAMPLED_SUBSETS: usize = 10_000;

/// `n` vectors in `field^(t-1)`, any `t-1` of them independent.
#[derive(Clone, Debug)]
pub struct GeneralPositionFamily<F: Field> {
    field: F,
    t: usize,
    vectors: Vec<Vec<F::Elem>>,
}

/// Moment-curve family `u_v = (1, a, ..., a^(t-2))`, `a = v + 1`, over `F_p`.
pub fn moment_family(n: usize, t: usize, p: u64) -> Result<GeneralPositionFamily<PrimeField>> {
    let field = PrimeField::new(p)?;
    if p <= n as u64 {
        return Err(Error::PrimeTooSmall { p, n });
    }
    moment_family_in(field, n, t)
}

/// The moment-curve family over an arbitrary field, checked for general
/// position.
pub fn moment_family_in<F: Field>(field: F, n: usize, t: usize) -> Result<GeneralPositionFamily<F>> {
    if t < 2 {
        return Err(Error::InvalidParameters(format!("t = {t} must be at least 2")));
    }
    let vectors = (0..n)
        .map(|v| {
            let a = field.embed(v as u64 + 1);
            (0..t - 1).map(|i| field.pow(&a, i as u64)).collect()
        })
        .collect();
    let fam = GeneralPositionFamily { field, t, vectors };
    fam.check_general_position()?;
    Ok(fam)
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k as u64).fold(1u64, |acc, i| acc.saturating_mul(n as u64 - i) / (i + 1))
}

impl<F: Field> GeneralPositionFamily<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector(&self, v: usize) -> &[F::Elem] {
        &self.vectors[v]
    }

    /// Nonzero determinant for every `(t-1)`-subset, or for a seeded random
    /// sample of them when there are too many.
    pub fn check_general_position(&self) -> Result<()> {
        let k = self.t - 1;
        let n = self.n();
        if k > n {
            return Ok(());
        }
        let check = |subset: &[usize]| -> Result<()> {
            let m: Vec<Vec<F::Elem>> = subset.iter().map(|&v| self.vectors[v].clone()).collect();
            if self.field.is_zero(&determinant(&self.field, &m)) {
                return Err(Error::GeneralPosition(format!("vectors {subset:?} are dependent")));
            }
            Ok(())
        };
        if binomial(n, k) <= EXHAUSTIVE_SUBSETS {
            for subset in (0..n).combinations(k) {
                check(&subset)?;
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..SAMPLED_SUBSETS {
                let mut subset = sample(&mut rng, n, k).into_vec();
                subset.sort_unstable();
                check(&subset)?;
            }
        }
        Ok(())
    }

    /// Dimension `n(t-1)` of the edge-vector space.
    pub fn edge_dim(&self) -> usize {
        self.n() * (self.t - 1)
    }

    /// `f_e`: block `x` holds `u_y`, block `y` holds `u_x`.
    pub fn edge_vector(&self, e: Edge) -> Vec<F::Elem> {
        let b = self.t - 1;
        let mut f = vec![self.field.zero(); self.edge_dim()];
        f[e.u * b..(e.u + 1) * b].clone_from_slice(&self.vectors[e.v]);
        f[e.v * b..(e.v + 1) * b].clone_from_slice(&self.vectors[e.u]);
        f
    }

    /// The unique (up to scale) dependence among `t` family vectors.
    fn dependence(&self, verts: &[usize]) -> Result<Vec<F::Elem>> {
        let rows: Vec<Vec<F::Elem>> = (0..self.t - 1)
            .map(|i| verts.iter().map(|&v| self.vectors[v][i].clone()).collect())
            .collect();
        let ns = nullspace(&self.field, &rows, verts.len());
        if ns.len() != 1 {
            return Err(Error::GeneralPosition(format!(
                "dependence space of {verts:?} has dimension {}",
                ns.len()
            )));
        }
        Ok(ns.into_iter().next().unwrap())
    }
}

/// Edge vectors for every edge of a graph, in lexicographic edge order.
#[derive(Clone, Debug)]
pub struct EdgeVectorAssignment<F: Field> {
    pub dim: usize,
    pub edges: Vec<Edge>,
    pub vectors: Vec<Vec<F::Elem>>,
}

impl<F: Field> EdgeVectorAssignment<F> {
    pub fn get(&self, e: Edge) -> Option<&[F::Elem]> {
        self.edges
            .binary_search(&e)
            .ok()
            .map(|i| self.vectors[i].as_slice())
    }
}

pub fn edge_vectors<F: Field>(g: &Graph, fam: &GeneralPositionFamily<F>) -> Result<EdgeVectorAssignment<F>> {
    if g.vertex_count() != fam.n() {
        return Err(Error::VertexCountMismatch(g.vertex_count(), fam.n()));
    }
    let edges: Vec<Edge> = g.edges().collect();
    let vectors = edges.iter().map(|&e| fam.edge_vector(e)).collect();
    Ok(EdgeVectorAssignment {
        dim: fam.edge_dim(),
        edges,
        vectors,
    })
}

/// Coefficients `c_{v_i w_j} = alpha_i beta_j` of the dependence carried by
/// a `K_{t,t}` copy.
pub fn ktt_dependence_coeffs<F: Field>(
    copy: &CopyWitness,
    fam: &GeneralPositionFamily<F>,
) -> Result<BTreeMap<Edge, F::Elem>> {
    let t = fam.t();
    let [a, b] = copy.classes.as_slice() else {
        return Err(Error::InvalidPattern("expected a two-class witness".into()));
    };
    if a.len() != t || b.len() != t {
        return Err(Error::InvalidPattern(format!(
            "expected classes of size {t}, found {} and {}",
            a.len(),
            b.len()
        )));
    }
    if let Some(&v) = a.iter().chain(b).find(|&&v| v >= fam.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: fam.n() });
    }
    let alpha = fam.dependence(a)?;
    let beta = fam.dependence(b)?;
    let f = fam.field();
    let mut coeffs = BTreeMap::new();
    for (i, &v) in a.iter().enumerate() {
        for (j, &w) in b.iter().enumerate() {
            let c = f.mul(&alpha[i], &beta[j]);
            if f.is_zero(&c) {
                return Err(Error::GeneralPosition(format!(
                    "zero coefficient on edge ({v},{w})"
                )));
            }
            coeffs.insert(Edge::new(v, w)?, c);
        }
    }
    Ok(coeffs)
}

/// Whether `sum c_e f_e` is the zero vector.
pub fn dependence_vanishes<F: Field>(
    coeffs: &BTreeMap<Edge, F::Elem>,
    fam: &GeneralPositionFamily<F>,
) -> bool {
    let f = fam.field();
    let mut acc = vec![f.zero(); fam.edge_dim()];
    for (&e, c) in coeffs {
        for (slot, x) in acc.iter_mut().zip(fam.edge_vector(e)) {
            *slot = f.add(slot, &f.mul(c, &x));
        }
    }
    acc.iter().all(|x| f.is_zero(x))
}
