//! GF(q^m) arithmetic in the polynomial basis 1, x, ..., x^{m-1} modulo a
//! fixed irreducible polynomial, plus the small prime-field helpers the
//! matrix code shares.
//!
//! Moduli are compiled in for q = 2, m ≤ 8 and q = 3, m ≤ 4; other fields
//! report `UnsupportedField`. The basis choice is part of the public
//! contract: expanding a vector to a matrix (see `matrix::expand`) writes
//! the coefficients of this basis down each column, so every enumeration
//! and index in this crate is reproducible across runs and platforms.

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_EXT_DEGREE: usize = 8;

/// (q, m, monic modulus coefficients low degree first, length m + 1).
const IRREDUCIBLE: &[(u64, u32, &[u8])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
];

pub(crate) fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Explicit enumeration and rank work model GF(q) with `u8` entries and
/// needs multiplicative inverses, hence primes below 2^8.
pub(crate) fn require_small_prime(q: u64) -> Result<()> {
    if !is_prime(q) || q > 251 {
        return Err(Error::InvalidParams(format!(
            "explicit codes need a prime base field that fits a byte, got q = {q}"
        )));
    }
    Ok(())
}

/// inv[a] = a^{-1} mod q for 1 ≤ a < q; inv[0] = 0 as a placeholder.
pub(crate) fn inverse_table(q: u64) -> Vec<u8> {
    let mut inv = vec![0u8; q as usize];
    for a in 1..q {
        let mut x = 1u64;
        // q is prime and tiny, so a^{q-2} by repeated multiplication.
        for _ in 0..q - 2 {
            x = x * a % q;
        }
        inv[a as usize] = x as u8;
    }
    inv
}

/// An element of GF(q^m): coefficients of the residue polynomial, lowest
/// degree first, entries reduced mod q, positions m.. always zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ExtElem {
    coeffs: [u8; MAX_EXT_DEGREE],
}

impl ExtElem {
    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// GF(q^m) with its compiled-in modulus.
#[derive(Debug, Clone)]
pub struct ExtField {
    q: u64,
    m: u32,
    modulus: &'static [u8],
}

impl ExtField {
    pub fn new(q: u64, m: u32) -> Result<Self> {
        let entry = IRREDUCIBLE
            .iter()
            .find(|(tq, tm, _)| *tq == q && *tm == m)
            .ok_or(Error::UnsupportedField { q, m })?;
        Ok(ExtField { q, m, modulus: entry.2 })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// q^m as a machine integer (the table keeps this at most 256).
    pub fn size(&self) -> u64 {
        self.q.pow(self.m)
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem::default()
    }

    pub fn one(&self) -> ExtElem {
        let mut e = ExtElem::default();
        e.coeffs[0] = 1;
        e
    }

    /// The class of x, reduced when m = 1.
    pub fn gen(&self) -> ExtElem {
        let mut e = ExtElem::default();
        if self.m == 1 {
            // x ≡ -p_0 for the monic linear modulus x + p_0.
            e.coeffs[0] = ((self.q - u64::from(self.modulus[0])) % self.q) as u8;
        } else {
            e.coeffs[1] = 1;
        }
        e
    }

    /// Element whose coefficients are the base-q digits of `index`
    /// (least significant digit on the constant term). Requires
    /// index < q^m.
    pub fn from_index(&self, index: u64) -> ExtElem {
        debug_assert!(index < self.size());
        let mut e = ExtElem::default();
        let mut rest = index;
        for i in 0..self.m as usize {
            e.coeffs[i] = (rest % self.q) as u8;
            rest /= self.q;
        }
        e
    }

    /// Inverse of `from_index`.
    pub fn index(&self, e: ExtElem) -> u64 {
        let mut idx = 0u64;
        for i in (0..self.m as usize).rev() {
            idx = idx * self.q + u64::from(e.coeffs[i]);
        }
        idx
    }

    pub fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let mut out = ExtElem::default();
        for i in 0..self.m as usize {
            out.coeffs[i] =
                ((u64::from(a.coeffs[i]) + u64::from(b.coeffs[i])) % self.q) as u8;
        }
        out
    }

    pub fn neg(&self, a: ExtElem) -> ExtElem {
        let mut out = ExtElem::default();
        for i in 0..self.m as usize {
            out.coeffs[i] = ((self.q - u64::from(a.coeffs[i])) % self.q) as u8;
        }
        out
    }

    pub fn sub(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let m = self.m as usize;
        let mut prod = [0u64; 2 * MAX_EXT_DEGREE - 1];
        for i in 0..m {
            if a.coeffs[i] == 0 {
                continue;
            }
            let ai = u64::from(a.coeffs[i]);
            for j in 0..m {
                prod[i + j] = (prod[i + j] + ai * u64::from(b.coeffs[j])) % self.q;
            }
        }
        // Fold x^d down using x^m ≡ -(low part of modulus).
        for d in (m..2 * m - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for j in 0..m {
                let fold = c * u64::from(self.modulus[j]) % self.q;
                prod[d - m + j] = (prod[d - m + j] + self.q - fold) % self.q;
            }
        }
        let mut out = ExtElem::default();
        for i in 0..m {
            out.coeffs[i] = prod[i] as u8;
        }
        out
    }

    pub fn pow(&self, base: ExtElem, mut exp: u64) -> ExtElem {
        let mut acc = self.one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            exp >>= 1;
        }
        acc
    }

    /// None for zero.
    pub fn inv(&self, a: ExtElem) -> Option<ExtElem> {
        if a.is_zero() {
            return None;
        }
        Some(self.pow(a, self.size() - 2))
    }
}
