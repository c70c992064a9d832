use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::family::{dependence_vanishes, edge_vectors, ktt_dependence_coeffs, moment_family, moment_family_in};
use super::field::{next_prime_above, Field, PrimeField};
use super::matrix::{rank, EchelonBasis};
use crate::bootstrap::ClosureTrace;
use crate::construct::construct_gn;
use crate::error::{Error, Result};
use crate::formulas::wsat_ktt;
use crate::graph::{complete_graph, Graph};
use crate::pattern::CopyWitness;

/// Above this many `K_{t,t}` copies exhaustive validation falls back to
/// sampling.
pub const EXHAUSTIVE_LIMIT: u64 = 100_000;
/// Sample size used by that fallback.
pub const FALLBACK_SAMPLES: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validation {
    Exhaustive,
    Sampled(usize),
}

impl FromStr for Validation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "exhaustive" {
            return Ok(Validation::Exhaustive);
        }
        s.strip_prefix("sampled:")
            .and_then(|k| k.parse().ok())
            .map(Validation::Sampled)
            .ok_or_else(|| Error::InvalidParameters(format!("bad validation mode `{s}`")))
    }
}

impl fmt::Display for Validation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Validation::Exhaustive => write!(f, "exhaustive"),
            Validation::Sampled(k) => write!(f, "sampled:{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationRecord {
    /// `"exhaustive"` or `"sampled"`.
    pub mode: String,
    pub copies_checked: u64,
    pub seed: Option<u64>,
}

impl ValidationRecord {
    pub fn is_exhaustive(&self) -> bool {
        self.mode == "exhaustive"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundCertificate {
    pub n: usize,
    pub t: usize,
    pub p: u64,
    pub rank_full: usize,
    pub rank_construction: usize,
    pub formula_value: u64,
    pub validation: ValidationRecord,
    /// Certified lower bound on `wsat(n, K_{t,t})`; equals `rank_full`.
    pub verdict: usize,
}

/// Field-independent part of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCore {
    pub rank_full: usize,
    pub rank_construction: usize,
    pub validation: ValidationRecord,
}

/// Smallest prime above `max(n, 1000)`.
pub fn default_prime(n: usize) -> u64 {
    next_prime_above((n as u64).max(1000))
}

fn copy_count(n: usize, t: usize) -> u64 {
    let c = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1));
    c(n as u64, t as u64).saturating_mul(c((n - t) as u64, t as u64)) / 2
}

pub fn certify_lower_bound(
    n: usize,
    t: usize,
    p: u64,
    validate: Validation,
    seed: u64,
) -> Result<LowerBoundCertificate> {
    check_params(n, t)?;
    let fam = moment_family(n, t, p)?;
    let core = certify_with(fam, n, t, validate, seed)?;
    Ok(LowerBoundCertificate {
        n,
        t,
        p,
        rank_full: core.rank_full,
        rank_construction: core.rank_construction,
        formula_value: wsat_ktt(n as u64, t as u64),
        validation: core.validation,
        verdict: core.rank_full,
    })
}

/// The certificate computation over any field containing the moment curve
/// in general position.
pub fn certify_core<F: Field>(
    field: F,
    n: usize,
    t: usize,
    validate: Validation,
    seed: u64,
) -> Result<CertificateCore> {
    check_params(n, t)?;
    let fam = moment_family_in(field, n, t)?;
    certify_with(fam, n, t, validate, seed)
}

fn check_params(n: usize, t: usize) -> Result<()> {
    if t < 2 || n < 2 * t {
        return Err(Error::InvalidParameters(format!(
            "certificates need t >= 2 and n >= 2t (n = {n}, t = {t})"
        )));
    }
    Ok(())
}

fn certify_with<F: Field>(
    fam: super::family::GeneralPositionFamily<F>,
    n: usize,
    t: usize,
    validate: Validation,
    seed: u64,
) -> Result<CertificateCore> {
    let check = |classes: Vec<Vec<usize>>| -> Result<()> {
        let copy = CopyWitness { classes };
        let coeffs = ktt_dependence_coeffs(&copy, &fam)?;
        if !dependence_vanishes(&coeffs, &fam) {
            return Err(Error::GeneralPosition(format!(
                "dependence of copy {:?} does not vanish",
                copy.classes
            )));
        }
        Ok(())
    };
    let sampled = match validate {
        Validation::Exhaustive if copy_count(n, t) <= EXHAUSTIVE_LIMIT => None,
        Validation::Exhaustive => Some(FALLBACK_SAMPLES),
        Validation::Sampled(k) => Some(k),
    };
    let validation = match sampled {
        None => {
            let mut checked = 0;
            for a in (0..n).combinations(t) {
                let rest: Vec<usize> = (0..n).filter(|v| !a.contains(v)).collect();
                for b in rest.into_iter().combinations(t) {
                    if b[0] < a[0] {
                        continue;
                    }
                    check(vec![a.clone(), b])?;
                    checked += 1;
                }
            }
            ValidationRecord {
                mode: "exhaustive".into(),
                copies_checked: checked,
                seed: None,
            }
        }
        Some(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..k {
                let pick = sample(&mut rng, n, 2 * t).into_vec();
                let mut a = pick[..t].to_vec();
                let mut b = pick[t..].to_vec();
                a.sort_unstable();
                b.sort_unstable();
                check(vec![a, b])?;
            }
            ValidationRecord {
                mode: "sampled".into(),
                copies_checked: k as u64,
                seed: Some(seed),
            }
        }
    };
    let field = fam.field().clone();
    let full = edge_vectors(&complete_graph(n), &fam)?;
    let (gn, _) = construct_gn(n, t)?;
    let cons = edge_vectors(&gn, &fam)?;
    Ok(CertificateCore {
        rank_full: rank(&field, &full.vectors),
        rank_construction: rank(&field, &cons.vectors),
        validation,
    })
}

/// Rank of `{f_e : e in E(G_i)}` before any addition and after each step of
/// `trace`, over `F_p`.
pub fn rank_along_trace(g: &Graph, trace: &ClosureTrace, t: usize, p: u64) -> Result<Vec<usize>> {
    let fam = moment_family(g.vertex_count(), t, p)?;
    let mut basis = EchelonBasis::new(PrimeField::new(p)?, fam.edge_dim());
    for e in g.edges() {
        basis.insert(&fam.edge_vector(e));
    }
    let mut ranks = vec![basis.rank()];
    for e in trace.edges() {
        basis.insert(&fam.edge_vector(e));
        ranks.push(basis.rank());
    }
    Ok(ranks)
}
