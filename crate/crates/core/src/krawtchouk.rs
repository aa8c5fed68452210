//! q-Krawtchouk polynomials: eigenvalues of the rank-metric association
//! scheme on m × n matrices over GF(q).
//!
//! For 0 ≤ i, j ≤ n,
//!
//! ```text
//! K_j(i) = Σ_{l=0}^{j} (-1)^{j-l} q^{lm + C(j-l,2)} [n-l  n-j]_q [n-i  l]_q
//! ```
//!
//! These integers (they can be negative) diagonalize the distance
//! distribution of any rank-metric code and are the only place a signed
//! quantity enters the bound computations.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qcombinat::{gauss_binomial, q_choose2_pow, SpaceParams};

/// Evaluates K_j(i) directly from the sum. Requires i, j ≤ n.
pub fn krawtchouk(params: &SpaceParams, j: u32, i: u32) -> Result<BigInt> {
    let n = params.n();
    if j > n || i > n {
        return Err(Error::IndexOutOfRange(format!(
            "krawtchouk indices j={j}, i={i} exceed n={n}"
        )));
    }
    let q = params.q();
    let m = params.m();
    let mut acc = BigInt::zero();
    for l in 0..=j {
        let mut term = BigInt::from(q).pow(l * m) * q_choose2_pow(q, j - l);
        term *= gauss_binomial(q, n - l, n - j);
        term *= gauss_binomial(q, n - i, l);
        if (j - l) % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    Ok(acc)
}

/// All values K_j(i) for one parameter set, checked on construction.
///
/// Build verifies three identities over the full index range:
/// K_j(0) equals the sphere size N_j, each column sums to q^{mn} δ_{i,0},
/// and Σ_i N_i K_j(i) K_l(i) = q^{mn} N_j δ_{jl} (orthogonality for the
/// weights N_i). A failure is reported as `ArithmeticBug`.
#[derive(Debug, Clone)]
pub struct KrawtchoukTable {
    params: SpaceParams,
    /// values[j][i] = K_j(i), both indices in 0..=n.
    values: Vec<Vec<BigInt>>,
}

impl KrawtchoukTable {
    pub fn build(params: &SpaceParams) -> Result<Self> {
        let n = params.n();
        let mut values = Vec::with_capacity(n as usize + 1);
        for j in 0..=n {
            let mut row = Vec::with_capacity(n as usize + 1);
            for i in 0..=n {
                row.push(krawtchouk(params, j, i)?);
            }
            values.push(row);
        }
        let table = KrawtchoukTable { params: *params, values };
        table.check()?;
        Ok(table)
    }

    fn check(&self) -> Result<()> {
        let n = self.params.n() as usize;
        let space = self.params.space_size();
        let spheres: Vec<BigInt> =
            (0..=n as u32).map(|r| self.params.sphere_size(r)).collect();

        for j in 0..=n {
            if self.values[j][0] != spheres[j] {
                return Err(Error::ArithmeticBug(format!(
                    "K_{j}(0) != sphere size for {:?}",
                    self.params
                )));
            }
        }
        for i in 0..=n {
            let col_sum: BigInt = (0..=n).map(|j| &self.values[j][i]).sum();
            let want = if i == 0 { space.clone() } else { BigInt::zero() };
            if col_sum != want {
                return Err(Error::ArithmeticBug(format!(
                    "column {i} of Krawtchouk table sums to {col_sum}, expected {want}"
                )));
            }
        }
        for j in 0..=n {
            for l in j..=n {
                let mut acc = BigInt::zero();
                for i in 0..=n {
                    acc += &spheres[i] * &self.values[j][i] * &self.values[l][i];
                }
                let want = if j == l { &space * &spheres[j] } else { BigInt::zero() };
                if acc != want {
                    return Err(Error::ArithmeticBug(format!(
                        "orthogonality fails at (j, l) = ({j}, {l})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn params(&self) -> &SpaceParams {
        &self.params
    }

    /// K_j(i); panics if an index exceeds n (the table is square).
    pub fn get(&self, j: u32, i: u32) -> &BigInt {
        &self.values[j as usize][i as usize]
    }
}
