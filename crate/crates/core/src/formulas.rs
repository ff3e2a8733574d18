//! Closed-form clique expectation and overlap formulas.
//!
//! Binomial coefficients are computed in exact big-integer arithmetic and
//! converted to floating point only at the last step; documented relative
//! tolerance for closed-form comparisons is 1e-12.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FormulaError {
    #[error("clique size {r} exceeds vertex count {n}")]
    CliqueSizeTooLarge { r: u64, n: u64 },
    #[error("probability {0} is not in [0, 1]")]
    BadProbability(f64),
}

/// Exact C(n, r).
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn binomial_f64(n: u64, r: u64) -> f64 {
    binomial(n, r).to_f64().unwrap_or(f64::INFINITY)
}

/// Number of unordered pairs inside an r-set, C(r, 2).
fn pairs(r: u64) -> u64 {
    r * r.saturating_sub(1) / 2
}

fn check_p(p: f64) -> Result<(), FormulaError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(FormulaError::BadProbability(p));
    }
    Ok(())
}

/// Expected number of r-cliques in G(n, p): C(n, r) * p^C(r,2).
pub fn expected_clique_count(n: u64, r: u64, p: f64) -> Result<f64, FormulaError> {
    if r > n {
        return Err(FormulaError::CliqueSizeTooLarge { r, n });
    }
    check_p(p)?;
    Ok(binomial_f64(n, r) * p.powi(pairs(r) as i32))
}

/// Expected number of k-cliques inside a u-vertex subset: C(u, k) * p^C(k,2).
pub fn mu(u: u64, k: u64, p: f64) -> Result<f64, FormulaError> {
    expected_clique_count(u, k, p)
}

/// Coefficient counting ordered pairs (S, T) of k-subsets of a u-set with
/// |S ∩ T| = i: C(u, i) * C(u-i, k-i) * C(u-k, k-i).
pub fn overlap_pair_coefficient(u: u64, k: u64, i: u64) -> BigUint {
    binomial(u, i) * binomial(u - i, k - i) * binomial(u.saturating_sub(k), k - i)
}

/// Sum of joint clique probabilities over ordered pairs of k-subsets
/// sharing at least two vertices:
/// sum over i = 2..k-1 of C(u,i) C(u-i,k-i) C(u-k,k-i) p^(2 C(k,2) - C(i,2)).
/// The sum is empty (zero) for k = 2.
pub fn delta(u: u64, k: u64, p: f64) -> Result<f64, FormulaError> {
    if k > u {
        return Err(FormulaError::CliqueSizeTooLarge { r: k, n: u });
    }
    check_p(p)?;
    let mut total = 0.0;
    for i in 2..k {
        let coeff = overlap_pair_coefficient(u, k, i)
            .to_f64()
            .unwrap_or(f64::INFINITY);
        let exponent = 2 * pairs(k) - pairs(i);
        total += coeff * p.powi(exponent as i32);
    }
    Ok(total)
}

/// Upper bound e^(-mu + delta/2) on the probability that none of the
/// clique events occurs. Values >= 1 are vacuous; the caller decides.
pub fn janson_upper_bound(mu: f64, delta: f64) -> f64 {
    (-mu + delta / 2.0).exp()
}

/// Counts, by brute-force enumeration over all ordered pairs (S, T) of
/// k-subsets of {0, .., u-1}, how many have |S ∩ T| = i. Independent of
/// `overlap_pair_coefficient` on purpose: the two are compared as a check.
pub fn count_overlap_pairs_exhaustive(u: u64, k: u64, i: u64) -> u64 {
    let subsets = k_subsets_masks(u as usize, k as usize);
    let mut count = 0u64;
    for &s in &subsets {
        for &t in &subsets {
            if (s & t).count_ones() as u64 == i {
                count += 1;
            }
        }
    }
    count
}

fn k_subsets_masks(u: usize, k: usize) -> Vec<u64> {
    assert!(u <= 64, "exhaustive pair enumeration limited to u <= 64");
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(next: usize, u: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<u64>) {
        if current.len() == k {
            out.push(current.iter().fold(0u64, |m, &v| m | 1 << v));
            return;
        }
        if u - next < k - current.len() {
            return;
        }
        for v in next..u {
            current.push(v);
            rec(v + 1, u, k, current, out);
            current.pop();
        }
    }
    rec(0, u, k, &mut current, &mut out);
    out
}

/// The edge probability 20 * n^(-2/k), clamped into [0, 1]. Returns the
/// probability and whether clamping occurred.
pub fn paper_edge_probability(n: u64, k: u64) -> (f64, bool) {
    let raw = 20.0 * (n as f64).powf(-2.0 / k as f64);
    if raw > 1.0 {
        (1.0, true)
    } else {
        (raw, false)
    }
}
