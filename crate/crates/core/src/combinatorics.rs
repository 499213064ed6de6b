//! Exact multi-index combinatorics.
//!
//! All counts are arbitrary-precision integers; conversion to `f64` happens
//! only where a value enters a floating-point sum.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Exponent vector `α = (α₁, …, α_n)` of the monomial `z^α`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(Self(parts))
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n.max(1)])
    }

    /// Unit index `e_j` in dimension `n`.
    pub fn unit(n: usize, j: usize) -> Self {
        let mut parts = vec![0; n];
        parts[j] = 1;
        Self(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    /// `|α| = α₁ + … + α_n`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl From<&[u32]> for MultiIndex {
    /// Panics on an empty slice.
    fn from(parts: &[u32]) -> Self {
        assert!(!parts.is_empty(), "multi-index needs at least one part");
        Self(parts.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(parts: [u32; N]) -> Self {
        Self::from(&parts[..])
    }
}

/// Every multi-index of dimension `n` and weight `k`, in ascending
/// lexicographic order.
pub fn enumerate_weight(n: usize, k: u32) -> Result<Vec<MultiIndex>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fill(&mut current, 0, k, &mut out);
    Ok(out)
}

fn fill(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex(current.to_vec()));
        return;
    }
    for a in 0..=remaining {
        current[pos] = a;
        fill(current, pos + 1, remaining - a, out);
    }
}

/// All multi-indices of dimension `n` with weight `0..=cap`, grouped by
/// weight and lexicographic inside each weight.
pub fn enumerate_up_to(n: usize, cap: u32) -> Result<Vec<MultiIndex>> {
    let mut out = Vec::new();
    for k in 0..=cap {
        out.extend(enumerate_weight(n, k)?);
    }
    Ok(out)
}

pub fn factorial(m: u32) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * i)
}

/// `C(m, k)`, exact. Zero when `k > m`.
pub fn binomial(m: u64, k: u64) -> BigUint {
    if k > m {
        return BigUint::from(0u32);
    }
    let k = k.min(m - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        // acc * (m - k + i) is divisible by i at every step
        acc = acc * (m - k + i) / i;
    }
    acc
}

/// Number of monomials of weight `k` in `n` variables, `C(n + k - 1, k)`.
pub fn simplex_count(n: usize, k: u32) -> BigUint {
    assert!(n >= 1, "simplex_count needs n >= 1");
    binomial(n as u64 + k as u64 - 1, k as u64)
}

/// `|α|! / (α₁! ⋯ α_n!)`.
pub fn multinomial(alpha: &MultiIndex) -> BigUint {
    let mut running = 0u64;
    let mut acc = BigUint::one();
    for &a in alpha.parts() {
        running += a as u64;
        acc *= binomial(running, a as u64);
    }
    acc
}

/// `α₁^α₁ ⋯ α_n^α_n` with `0⁰ = 1`.
pub fn self_power(alpha: &MultiIndex) -> BigUint {
    alpha
        .parts()
        .iter()
        .fold(BigUint::one(), |acc, &a| acc * BigUint::from(a).pow(a))
}

/// `k^k` with `0⁰ = 1`.
pub fn power_of_self(k: u32) -> BigUint {
    BigUint::from(k).pow(k)
}

/// `Σ α_j ln α_j`, the logarithm of [`self_power`] (terms with `α_j = 0`
/// contribute nothing).
pub fn ln_self_power(alpha: &MultiIndex) -> f64 {
    alpha
        .parts()
        .iter()
        .filter(|&&a| a > 1)
        .map(|&a| a as f64 * (a as f64).ln())
        .sum()
}

/// Lossy conversion used at the summation boundary. Saturates to infinity.
pub(crate) fn big_to_f64(v: &BigUint) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pascal(rows: usize) -> Vec<Vec<u128>> {
        let mut t: Vec<Vec<u128>> = vec![vec![1]];
        for m in 1..rows {
            let prev = &t[m - 1];
            let mut row = vec![1u128; m + 1];
            for j in 1..m {
                row[j] = prev[j - 1] + prev[j];
            }
            t.push(row);
        }
        t
    }

    fn fact_u128(m: u32) -> u128 {
        (1..=m as u128).product()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_weight(1, 5).unwrap(), vec![MultiIndex::from([5])]);
        assert_eq!(
            enumerate_weight(2, 2).unwrap(),
            vec![
                MultiIndex::from([0, 2]),
                MultiIndex::from([1, 1]),
                MultiIndex::from([2, 0])
            ]
        );
        assert_eq!(enumerate_weight(0, 3), Err(Error::ZeroDimension));
    }

    #[test]
    fn enumerate_matches_nested_loops() {
        let mut brute = Vec::new();
        for a in 0..=2u32 {
            for b in 0..=2u32 {
                for c in 0..=2u32 {
                    if a + b + c == 2 {
                        brute.push(MultiIndex::from([a, b, c]));
                    }
                }
            }
        }
        brute.sort();
        let got = enumerate_weight(3, 2).unwrap();
        assert_eq!(got.len(), 6);
        assert_eq!(got, brute);
    }

    #[test]
    fn simplex_count_examples() {
        assert_eq!(simplex_count(2, 3), BigUint::from(4u32));
        assert_eq!(simplex_count(1, 7), BigUint::from(1u32));
        let t = pascal(20);
        assert_eq!(simplex_count(4, 10), BigUint::from(t[13][10]));
        assert_eq!(t[13][10], 286);
    }

    #[test]
    fn simplex_count_matches_pascal() {
        let t = pascal(30);
        for n in 1..=8usize {
            for k in 0..=15u32 {
                let m = n + k as usize - 1;
                assert_eq!(simplex_count(n, k), BigUint::from(t[m][k as usize]));
            }
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(&MultiIndex::from([2, 1])), BigUint::from(3u32));
        assert_eq!(multinomial(&MultiIndex::from([0, 0, 0])), BigUint::from(1u32));
        let oracle = fact_u128(7) / (fact_u128(3) * fact_u128(2) * fact_u128(2));
        assert_eq!(oracle, 210);
        assert_eq!(multinomial(&MultiIndex::from([3, 2, 2])), BigUint::from(210u32));
    }

    #[test]
    fn multinomial_beyond_u64() {
        // 25! overflows u64; the multinomial (25) in one variable is still 1
        assert_eq!(multinomial(&MultiIndex::from([25])), BigUint::from(1u32));
        assert_eq!(
            factorial(25) / (factorial(12) * factorial(13)),
            multinomial(&MultiIndex::from([12, 13]))
        );
    }

    #[test]
    fn self_power_examples() {
        assert_eq!(self_power(&MultiIndex::from([2, 3])), BigUint::from(108u32));
        assert_eq!(self_power(&MultiIndex::from([0, 0])), BigUint::from(1u32));
        assert_eq!(self_power(&MultiIndex::from([1, 1, 1, 1])), BigUint::from(1u32));
        let a = MultiIndex::from([3, 0, 4]);
        assert!((ln_self_power(&a) - (27.0f64 * 256.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn multinomial_theorem_at_ones() {
        for n in 1..=4usize {
            for k in 0..=12u32 {
                let total: BigUint = enumerate_weight(n, k).unwrap().iter().map(multinomial).sum();
                assert_eq!(total, BigUint::from(n).pow(k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn cardinality_is_simplex_count() {
        for n in 1..=5usize {
            for k in 0..=15u32 {
                let len = enumerate_weight(n, k).unwrap().len();
                assert_eq!(BigUint::from(len), simplex_count(n, k));
            }
        }
    }

    proptest! {
        #[test]
        fn bounds_on_multinomial_and_self_power(parts in prop::collection::vec(0u32..9, 1..5)) {
            let a = MultiIndex::new(parts).unwrap();
            let k = a.weight();
            prop_assert!(multinomial(&a) >= BigUint::one());
            prop_assert!(self_power(&a) >= BigUint::one());
            prop_assert!(self_power(&a) <= power_of_self(k));
        }

        #[test]
        fn enumeration_is_deterministic_and_sorted(n in 1usize..5, k in 0u32..8) {
            let first = enumerate_weight(n, k).unwrap();
            let second = enumerate_weight(n, k).unwrap();
            prop_assert_eq!(&first, &second);
            prop_assert!(first.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(first.iter().all(|a| a.weight() == k && a.dimension() == n));
        }
    }
}
