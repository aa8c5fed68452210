//! q-analog combinatorics for the rank metric.
//!
//! The ambient space is GF(q^m)^n identified with m × n matrices over
//! GF(q). Throughout we require n ≤ m; parameters arriving with n > m are
//! transposed on construction (covering problems are invariant under it).
//!
//! Core quantities, all exact integers:
//!
//! - `alpha(q, m, r)` = ∏_{i=0}^{r-1} (q^m − q^i), the number of ordered
//!   r-tuples of linearly independent vectors in GF(q)^m.
//! - Gaussian binomial `[n r]_q` = alpha(q, n, r) / alpha(q, r, r), the
//!   number of r-dimensional subspaces of GF(q)^n.
//! - `sphere_size(r)` = `[n r]_q · alpha(q, m, r)`, the number of m × n
//!   matrices of rank exactly r.
//! - `ball_volume(rho)` = Σ_{r ≤ rho} sphere_size(r).

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// ∏_{i=0}^{r-1} (q^m − q^i). Equals 1 for r = 0 and vanishes for r > m.
pub fn alpha(q: u64, m: u32, r: u32) -> BigInt {
    let qm = BigInt::from(q).pow(m);
    let mut acc = BigInt::one();
    let mut qi = BigInt::one();
    for _ in 0..r {
        acc *= &qm - &qi;
        qi *= q;
    }
    acc
}

fn gauss_cache() -> &'static RwLock<HashMap<(u64, u32, u32), BigInt>> {
    static CACHE: OnceLock<RwLock<HashMap<(u64, u32, u32), BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Gaussian binomial coefficient `[n r]_q`: 0 for r > n, 1 for r = 0,
/// otherwise alpha(q, n, r) / alpha(q, r, r). The division is exact; the
/// result is memoized process-wide.
pub fn gauss_binomial(q: u64, n: u32, r: u32) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    if r == 0 {
        return BigInt::one();
    }
    let key = (q, n, r);
    if let Some(v) = gauss_cache().read().unwrap().get(&key) {
        return v.clone();
    }
    let num = alpha(q, n, r);
    let den = alpha(q, r, r);
    let (quot, rem) = num_integer::Integer::div_rem(&num, &den);
    debug_assert!(rem.is_zero(), "gaussian binomial division must be exact");
    gauss_cache()
        .write()
        .unwrap()
        .entry(key)
        .or_insert(quot)
        .clone()
}

/// Ordinary binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// q^C(j, 2), the sign-free power appearing in q-analog alternating sums.
pub fn q_choose2_pow(q: u64, j: u32) -> BigInt {
    BigInt::from(q).pow(j * j.saturating_sub(1) / 2)
}

/// Validated parameters (q, m, n) of the ambient space GF(q^m)^n.
///
/// Construction normalizes to n ≤ m by swapping when needed and records
/// that it did so. All counting below depends only on the normalized pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceParams {
    q: u64,
    m: u32,
    n: u32,
    transposed: bool,
}

impl SpaceParams {
    /// Requires q ≥ 2, m ≥ 1, n ≥ 1. Swaps m and n when n > m.
    pub fn new(q: u64, m: u32, n: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParams(format!("q must be at least 2, got {q}")));
        }
        if m == 0 || n == 0 {
            return Err(Error::InvalidParams(format!(
                "m and n must be at least 1, got m={m}, n={n}"
            )));
        }
        if n > m {
            Ok(SpaceParams { q, m: n, n: m, transposed: true })
        } else {
            Ok(SpaceParams { q, m, n, transposed: false })
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Extension degree after normalization (the larger dimension).
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Code length after normalization (the smaller dimension).
    pub fn n(&self) -> u32 {
        self.n
    }

    /// True when `new` swapped the given m and n to restore n ≤ m.
    pub fn transposed(&self) -> bool {
        self.transposed
    }

    /// q^m, the field size.
    pub fn field_size(&self) -> BigInt {
        BigInt::from(self.q).pow(self.m)
    }

    /// q^{mn}, the number of vectors in the space.
    pub fn space_size(&self) -> BigInt {
        BigInt::from(self.q).pow(self.m * self.n)
    }

    /// Number of vectors at rank distance exactly r from a fixed center.
    /// Zero for r > n.
    pub fn sphere_size(&self, r: u32) -> BigInt {
        gauss_binomial(self.q, self.n, r) * alpha(self.q, self.m, r)
    }

    /// Number of vectors at rank distance at most rho from a fixed center.
    pub fn ball_volume(&self, rho: u32) -> BigInt {
        let mut acc = BigInt::zero();
        for r in 0..=rho.min(self.n) {
            acc += self.sphere_size(r);
        }
        acc
    }

    /// Largest l ≥ 0 with (q^m)^l ≤ k. Requires k ≥ 1.
    pub fn floor_log_field_size(&self, k: &BigInt) -> Result<u32> {
        if k < &BigInt::one() {
            return Err(Error::InvalidParams(format!("floor log requires k >= 1, got {k}")));
        }
        let qm = self.field_size();
        let mut l = 0u32;
        let mut acc = qm.clone();
        while &acc <= k {
            acc *= &qm;
            l += 1;
        }
        Ok(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    #[test]
    fn alpha_small_values() {
        assert_eq!(alpha(2, 3, 2), BigInt::from(42));
        assert_eq!(alpha(2, 3, 0), BigInt::one());
        assert_eq!(alpha(2, 2, 3), BigInt::zero());
        assert_eq!(alpha(2, 7, 3), BigInt::from(1_984_248u64));
        assert_eq!(alpha(3, 2, 1), BigInt::from(8));
    }

    #[test]
    fn gauss_small_values() {
        assert_eq!(gauss_binomial(2, 4, 2), BigInt::from(35));
        assert_eq!(gauss_binomial(2, 7, 3), BigInt::from(11811));
        assert_eq!(gauss_binomial(2, 3, 1), BigInt::from(7));
        assert_eq!(gauss_binomial(2, 3, 5), BigInt::zero());
        assert_eq!(gauss_binomial(3, 4, 2), BigInt::from(130));
        assert_eq!(gauss_binomial(5, 6, 0), BigInt::one());
    }

    #[test]
    fn gauss_symmetry() {
        for n in 0..8u32 {
            for r in 0..=n {
                assert_eq!(gauss_binomial(2, n, r), gauss_binomial(2, n, n - r));
                assert_eq!(gauss_binomial(3, n, r), gauss_binomial(3, n, n - r));
            }
        }
    }

    #[test]
    fn params_normalize() {
        let p = SpaceParams::new(2, 3, 5).unwrap();
        assert_eq!((p.m(), p.n()), (5, 3));
        assert!(p.transposed());
        let p = SpaceParams::new(2, 5, 3).unwrap();
        assert_eq!((p.m(), p.n()), (5, 3));
        assert!(!p.transposed());
        assert!(SpaceParams::new(1, 2, 2).is_err());
        assert!(SpaceParams::new(2, 0, 2).is_err());
    }

    #[test]
    fn sphere_sizes_2_2_2() {
        let p = SpaceParams::new(2, 2, 2).unwrap();
        assert_eq!(p.sphere_size(0), BigInt::one());
        assert_eq!(p.sphere_size(1), BigInt::from(9));
        assert_eq!(p.sphere_size(2), BigInt::from(6));
        assert_eq!(p.ball_volume(1), BigInt::from(10));
        assert_eq!(p.ball_volume(2), BigInt::from(16));
        assert_eq!(p.ball_volume(7), BigInt::from(16));
    }

    #[test]
    fn sphere_sizes_sum_to_space() {
        for (q, m, n) in [(2u64, 4u32, 3u32), (2, 7, 7), (3, 4, 2), (5, 3, 3)] {
            let p = SpaceParams::new(q, m, n).unwrap();
            let total: BigInt = (0..=n).map(|r| p.sphere_size(r)).sum();
            assert_eq!(total, p.space_size());
        }
    }

    #[test]
    fn sphere_sizes_7_7() {
        let p = SpaceParams::new(2, 7, 7).unwrap();
        let expect = [
            "1",
            "16129",
            "42677334",
            "23435953128",
            "2812314375360",
            "71124337751040",
            "325139829719040",
            "163849992929280",
        ];
        for (r, e) in expect.iter().enumerate() {
            assert_eq!(p.sphere_size(r as u32), big(e), "rank {r}");
        }
        assert_eq!(p.ball_volume(2), big("42693464"));
        assert_eq!(p.ball_volume(3), big("23478646592"));
    }

    #[test]
    fn ball_volume_3_3() {
        let p = SpaceParams::new(2, 3, 3).unwrap();
        assert_eq!(p.ball_volume(1), BigInt::from(50));
    }

    #[test]
    fn floor_log_field_size() {
        let p = SpaceParams::new(2, 3, 3).unwrap();
        assert_eq!(p.floor_log_field_size(&BigInt::from(1)).unwrap(), 0);
        assert_eq!(p.floor_log_field_size(&BigInt::from(7)).unwrap(), 0);
        assert_eq!(p.floor_log_field_size(&BigInt::from(8)).unwrap(), 1);
        assert_eq!(p.floor_log_field_size(&BigInt::from(64)).unwrap(), 2);
        assert_eq!(p.floor_log_field_size(&BigInt::from(511)).unwrap(), 2);
        assert!(p.floor_log_field_size(&BigInt::zero()).is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(4, 0), BigInt::one());
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
