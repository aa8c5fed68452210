//! Explicit codes as word lists, plus generalized Reed-Solomon-style
//! maximum-rank-distance codes built from linearized polynomials.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactcodes::field::ExtField;
use crate::exactcodes::matrix::{expand, FqMatrix};
use crate::qcombinat::SpaceParams;

/// A code in GF(q^m)^n stored as expanded m × n matrices.
///
/// Words are validated to be distinct and of matching shape. Minimum
/// distance and the rank-weight histogram are computed on first use and
/// cached; they always agree with direct recomputation because the word
/// list is immutable.
#[derive(Debug)]
pub struct Code {
    params: SpaceParams,
    words: Vec<FqMatrix>,
    min_distance: OnceLock<Option<u32>>,
    histogram: OnceLock<Vec<u64>>,
}

impl Code {
    pub fn new(params: &SpaceParams, words: Vec<FqMatrix>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::InvalidParams("a code needs at least one word".into()));
        }
        for w in &words {
            if w.q() != params.q() || w.rows() != params.m() || w.cols() != params.n() {
                return Err(Error::InvalidParams(format!(
                    "word shape {} x {} over GF({}) does not match {params:?}",
                    w.rows(),
                    w.cols(),
                    w.q()
                )));
            }
        }
        let mut seen = HashSet::with_capacity(words.len());
        for w in &words {
            if !seen.insert(w.entries()) {
                return Err(Error::InvalidParams("duplicate codeword".into()));
            }
        }
        Ok(Code {
            params: *params,
            words,
            min_distance: OnceLock::new(),
            histogram: OnceLock::new(),
        })
    }

    pub fn params(&self) -> &SpaceParams {
        &self.params
    }

    pub fn words(&self) -> &[FqMatrix] {
        &self.words
    }

    pub fn cardinality(&self) -> usize {
        self.words.len()
    }

    /// Minimum pairwise rank distance; None for a single-word code.
    pub fn min_distance(&self) -> Option<u32> {
        *self.min_distance.get_or_init(|| {
            if self.words.len() < 2 {
                return None;
            }
            let mut best = u32::MAX;
            for (i, a) in self.words.iter().enumerate() {
                for b in &self.words[i + 1..] {
                    let d = a.sub(b).expect("validated shapes").rank();
                    best = best.min(d);
                }
            }
            Some(best)
        })
    }

    /// histogram[r] = number of words of rank weight exactly r,
    /// r = 0..=n.
    pub fn weight_histogram(&self) -> &[u64] {
        self.histogram.get_or_init(|| {
            let mut h = vec![0u64; self.params.n() as usize + 1];
            for w in &self.words {
                h[w.rank() as usize] += 1;
            }
            h
        })
    }
}

/// The maximum-rank-distance code of dimension k over GF(q^m) with
/// evaluation points 1, x, ..., x^{n-1}: row i of the generator matrix is
/// the coordinatewise q^i-th power of the points, and codewords are all
/// GF(q^m)-combinations of the rows. Its minimum distance is n - k + 1
/// and it contains q^{mk} words.
///
/// Message vectors are enumerated as base-q^m digits of 0..q^{mk} with
/// digit i multiplying row i, so the first q^{mk'} words of any larger
/// code of dimension k' < k form exactly the dimension-k' code: the
/// family is nested by prefix.
pub fn gabidulin_code(params: &SpaceParams, k: u32, budget: u64) -> Result<Code> {
    let n = params.n();
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!(
            "code dimension k = {k} must lie in 1..={n}"
        )));
    }
    let field = ExtField::new(params.q(), params.m())?;
    let qm = field.size();
    let cardinality = qm.checked_pow(k).filter(|&c| c <= budget).ok_or_else(|| {
        Error::BudgetExceeded(format!(
            "enumerating q^{{mk}} = {}^{k} codewords exceeds the budget of {budget}",
            qm
        ))
    })?;

    // generator[i][j] = (x^j)^{q^i}
    let mut generator = Vec::with_capacity(k as usize);
    for i in 0..k {
        let mut row = Vec::with_capacity(n as usize);
        let mut point = field.one();
        for _ in 0..n {
            row.push(field.pow(point, params.q().pow(i)));
            point = field.mul(point, field.gen());
        }
        generator.push(row);
    }

    let mut words = Vec::with_capacity(cardinality as usize);
    for msg_index in 0..cardinality {
        let mut word = vec![field.zero(); n as usize];
        let mut rest = msg_index;
        for row in &generator {
            let digit = rest % qm;
            rest /= qm;
            if digit != 0 {
                let coeff = field.from_index(digit);
                for (w, g) in word.iter_mut().zip(row) {
                    *w = field.add(*w, field.mul(coeff, *g));
                }
            }
        }
        words.push(expand(&field, &word)?);
    }
    Code::new(params, words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::mrd_weight_distribution;
    use num_bigint::BigInt;

    #[test]
    fn code_rejects_duplicates_and_shape_mismatch() {
        let p = SpaceParams::new(2, 2, 2).unwrap();
        let w = FqMatrix::zero(2, 2, 2).unwrap();
        assert!(Code::new(&p, vec![w.clone(), w.clone()]).is_err());
        let tall = FqMatrix::zero(2, 3, 2).unwrap();
        assert!(Code::new(&p, vec![tall]).is_err());
        assert!(Code::new(&p, vec![]).is_err());
    }

    #[test]
    fn gabidulin_shape_and_distance() {
        let p = SpaceParams::new(2, 3, 3).unwrap();
        for k in 1..=3u32 {
            let c = gabidulin_code(&p, k, 1 << 20).unwrap();
            assert_eq!(c.cardinality() as u64, 8u64.pow(k));
            assert_eq!(c.min_distance(), Some(3 - k + 1));
        }
    }

    #[test]
    fn weight_histogram_matches_closed_form() {
        for (q, m, n, k) in [(2u64, 3u32, 3u32, 1u32), (2, 3, 3, 2), (3, 2, 2, 1), (2, 4, 4, 2)] {
            let p = SpaceParams::new(q, m, n).unwrap();
            let c = gabidulin_code(&p, k, 1 << 20).unwrap();
            let d = n - k + 1;
            let h = c.weight_histogram();
            for r in 0..=n {
                assert_eq!(
                    BigInt::from(h[r as usize]),
                    mrd_weight_distribution(&p, d, r).unwrap(),
                    "(q, m, n, k, r) = ({q}, {m}, {n}, {k}, {r})"
                );
            }
        }
    }

    #[test]
    fn gabidulin_nesting_by_prefix() {
        let p = SpaceParams::new(2, 3, 3).unwrap();
        let small = gabidulin_code(&p, 1, 1 << 20).unwrap();
        let large = gabidulin_code(&p, 2, 1 << 20).unwrap();
        assert_eq!(
            &large.words()[..small.cardinality()],
            small.words(),
            "prefix of the larger code must be the smaller code"
        );
    }

    #[test]
    fn gabidulin_budget() {
        let p = SpaceParams::new(2, 4, 4).unwrap();
        assert!(matches!(
            gabidulin_code(&p, 4, 1000),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn unsupported_base_field() {
        let p = SpaceParams::new(5, 2, 2).unwrap();
        assert!(matches!(
            gabidulin_code(&p, 1, 1 << 20),
            Err(Error::UnsupportedField { .. })
        ));
    }
}
