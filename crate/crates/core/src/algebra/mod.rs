//! Linear-algebra lower-bound certificates for `wsat(n, K_{t,t})`.
//!
//! Every edge `xy` of `K_n` gets a vector `f_e` whose `x` block is `u_y`
//! and whose `y` block is `u_x`, where the `u_v` are in general position.
//! Each copy of `K_{t,t}` carries a dependence with all coefficients
//! nonzero, so the rank of all edge vectors bounds `wsat` from below.

mod certificate;
mod family;
mod field;
mod matrix;

pub use certificate::{
    certify_core, certify_lower_bound, default_prime, rank_along_trace, CertificateCore,
    LowerBoundCertificate, Validation, ValidationRecord, EXHAUSTIVE_LIMIT, FALLBACK_SAMPLES,
};
pub use family::{
    edge_vectors, ktt_dependence_coeffs, moment_family, moment_family_in, dependence_vanishes,
    EdgeVectorAssignment, GeneralPositionFamily,
};
pub use field::{is_prime, next_prime_above, Field, PrimeField, Rationals};
pub use matrix::{determinant, nullspace, rank, EchelonBasis};
