//! Closed-form weak saturation values, evaluated in exact integer arithmetic.
//!
//! Callers are responsible for the parameter ranges in which each value is
//! known to hold; here the functions only require the arithmetic to stay
//! non-negative.

pub fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// `wsat(n, K_{t,t}) = (t-1)(n+1-t/2)`, computed as `(t-1)(2n+2-t)/2`.
pub fn wsat_ktt(n: u64, t: u64) -> u64 {
    let twice = (t - 1) * (2 * n + 2 - t);
    assert!(twice.is_multiple_of(2), "(t-1)(2n+2-t) is always even");
    twice / 2
}

/// `wsat(n, K_{t,t+1}) = wsat(n, K_{t,t}) + 1`.
pub fn wsat_ktt1(n: u64, t: u64) -> u64 {
    wsat_ktt(n, t) + 1
}

/// Upper bound `(s-1)(n-s) + C(t,2)` for `wsat(n, K_{s,t})`, `s < t`.
pub fn kst_upper(n: u64, s: u64, t: u64) -> u64 {
    (s - 1) * (n - s) + binom2(t)
}

/// Lower bound `(s-1)(n-t+1) + C(t,2)` for `wsat(n, K_{s,t})`, `s < t`.
pub fn kst_lower(n: u64, s: u64, t: u64) -> u64 {
    (s - 1) * (n + 1 - t) + binom2(t)
}

/// `wsat(n, K_r) = C(n,2) - C(n-r+2,2)`.
pub fn wsat_clique(n: u64, r: u64) -> u64 {
    binom2(n) - binom2(n + 2 - r)
}

/// Bisaturation number `w(l,m,K_{s,t}) = lm - (l-s+1)(m-t+1)`.
pub fn bisaturation(l: u64, m: u64, s: u64, t: u64) -> u64 {
    l * m - (l + 1 - s) * (m + 1 - t)
}

/// `wsat(K_{n,n}, K_{s,t}) = n^2 - (n-s+1)^2 + (t-s)^2`.
pub fn wsat_knn(n: u64, s: u64, t: u64) -> u64 {
    n * n - (n + 1 - s).pow(2) + (t - s).pow(2)
}

/// `wsat(K_{l,m}, K_{s,t}) = (l+m-s+1)(s-1) + (t-s)^2`.
pub fn wsat_bipartite(l: u64, m: u64, s: u64, t: u64) -> u64 {
    (l + m + 1 - s) * (s - 1) + (t - s).pow(2)
}

/// Edge count of `F_n^{k,t}`.
pub fn fkt_edges(n: u64, k: u64, t: u64) -> u64 {
    let core = t * k - 1;
    let squares = (k - 1) * t * t + (t - 1) * (t - 1);
    let multipartite = (core * core - squares) / 2;
    let z = n + 1 - t * k;
    binom2(t) + multipartite + z * (core - t)
}

/// Degree-counting lower bound `ceil(n(s-1)/2)`.
pub fn trivial_lower(n: u64, s: u64) -> u64 {
    (n * (s - 1)).div_ceil(2)
}
