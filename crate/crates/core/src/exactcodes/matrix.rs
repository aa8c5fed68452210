//! Matrices over a small prime field GF(q), their rank, and the expansion
//! between vectors of GF(q^m)^n and m × n matrices.
//!
//! Index convention used by every enumeration in this crate: the matrix
//! with index `t` has entry (i, j) equal to digit i + m·j of t written in
//! base q. Columns are therefore consecutive digit groups, which makes
//! the matrix index of an expanded vector equal the natural index of the
//! vector itself (coordinate j contributing digits j·m..j·m+m).

use crate::error::{Error, Result};
use crate::exactcodes::field::{inverse_table, require_small_prime, ExtElem, ExtField};

/// Dense row-major matrix over GF(q), entries reduced mod q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    q: u64,
    rows: u32,
    cols: u32,
    entries: Vec<u8>,
}

impl FqMatrix {
    pub fn zero(q: u64, rows: u32, cols: u32) -> Result<Self> {
        require_small_prime(q)?;
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParams(format!(
                "matrix dimensions must be positive, got {rows} x {cols}"
            )));
        }
        Ok(FqMatrix { q, rows, cols, entries: vec![0; rows as usize * cols as usize] })
    }

    /// Row-major entries, each already reduced mod q.
    pub fn from_entries(q: u64, rows: u32, cols: u32, entries: Vec<u8>) -> Result<Self> {
        let mut m = FqMatrix::zero(q, rows, cols)?;
        if entries.len() != m.entries.len() {
            return Err(Error::InvalidParams(format!(
                "expected {} entries for a {rows} x {cols} matrix, got {}",
                m.entries.len(),
                entries.len()
            )));
        }
        if entries.iter().any(|&e| u64::from(e) >= q) {
            return Err(Error::InvalidParams(format!("entries must be below q = {q}")));
        }
        m.entries = entries;
        Ok(m)
    }

    /// Matrix whose entries are the base-q digits of `index` in the
    /// column-major order described at the top of this module.
    pub fn from_index(q: u64, rows: u32, cols: u32, index: u64) -> Result<Self> {
        let mut m = FqMatrix::zero(q, rows, cols)?;
        decode_index(index, q, rows as usize, cols as usize, &mut m.entries);
        Ok(m)
    }

    /// Inverse of `from_index`. Panics if q^{rows·cols} overflows u64,
    /// which enumeration budgets rule out before matrices this large are
    /// ever indexed.
    pub fn to_index(&self) -> u64 {
        let mut idx = 0u64;
        for j in (0..self.cols as usize).rev() {
            for i in (0..self.rows as usize).rev() {
                idx = idx
                    .checked_mul(self.q)
                    .and_then(|x| x.checked_add(u64::from(self.get(i, j))))
                    .expect("matrix index exceeds u64");
            }
        }
        idx
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.cols as usize + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u8) {
        assert!(u64::from(value) < self.q, "entry not reduced mod q");
        self.entries[i * self.cols as usize + j] = value;
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn sub(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.q != other.q || self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidParams(
                "matrix subtraction needs matching shapes and fields".into(),
            ));
        }
        let mut out = self.clone();
        sub_mod_into(&self.entries, &other.entries, self.q, &mut out.entries);
        Ok(out)
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut out =
            FqMatrix::zero(self.q, self.cols, self.rows).expect("shape already validated");
        for i in 0..self.rows as usize {
            for j in 0..self.cols as usize {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn rank(&self) -> u32 {
        let inv = inverse_table(self.q);
        let mut buf = self.entries.clone();
        rank_in_place(&mut buf, self.rows as usize, self.cols as usize, self.q, &inv)
    }
}

/// Writes the base-q digits of `index` into `out` (row-major buffer of an
/// rows × cols matrix) using the column-major digit order.
pub(crate) fn decode_index(index: u64, q: u64, rows: usize, cols: usize, out: &mut [u8]) {
    let mut rest = index;
    for j in 0..cols {
        for i in 0..rows {
            out[i * cols + j] = (rest % q) as u8;
            rest /= q;
        }
    }
    debug_assert_eq!(rest, 0, "index out of range for this shape");
}

/// out = a - b entrywise mod q. Slices must share a length.
pub(crate) fn sub_mod_into(a: &[u8], b: &[u8], q: u64, out: &mut [u8]) {
    let qq = q as u16;
    for ((&x, &y), o) in a.iter().zip(b).zip(out.iter_mut()) {
        *o = ((u16::from(x) + qq - u16::from(y)) % qq) as u8;
    }
}

/// Gaussian elimination over GF(q) on a scratch row-major buffer;
/// destroys the buffer and returns the rank. `inv` is the mod-q inverse
/// table.
pub(crate) fn rank_in_place(buf: &mut [u8], rows: usize, cols: usize, q: u64, inv: &[u8]) -> u32 {
    let qq = u16::try_from(q).expect("base field fits a byte");
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| buf[r * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for c in col..cols {
                buf.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let scale = u16::from(inv[buf[rank * cols + col] as usize]);
        for c in col..cols {
            buf[rank * cols + c] = (u16::from(buf[rank * cols + c]) * scale % qq) as u8;
        }
        for r in rank + 1..rows {
            let factor = u16::from(buf[r * cols + col]);
            if factor == 0 {
                continue;
            }
            for c in col..cols {
                let sub = factor * u16::from(buf[rank * cols + c]) % qq;
                buf[r * cols + c] = ((u16::from(buf[r * cols + c]) + qq - sub) % qq) as u8;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank as u32
}

/// Expands a GF(q^m)^n vector into the m × n matrix whose column j holds
/// the polynomial-basis coefficients of coordinate j.
pub fn expand(field: &ExtField, vector: &[ExtElem]) -> Result<FqMatrix> {
    let m = field.degree();
    let n = u32::try_from(vector.len())
        .map_err(|_| Error::InvalidParams("vector too long".into()))?;
    let mut out = FqMatrix::zero(field.q(), m, n)?;
    for (j, e) in vector.iter().enumerate() {
        for i in 0..m as usize {
            out.set(i, j, e.coeff(i));
        }
    }
    Ok(out)
}

/// Inverse of `expand`: reads each column back as an element.
pub fn contract(field: &ExtField, matrix: &FqMatrix) -> Result<Vec<ExtElem>> {
    if matrix.q() != field.q() || matrix.rows() != field.degree() {
        return Err(Error::InvalidParams(
            "matrix shape does not match the field it is contracted over".into(),
        ));
    }
    let mut out = Vec::with_capacity(matrix.cols() as usize);
    for j in 0..matrix.cols() as usize {
        let mut idx = 0u64;
        for i in (0..matrix.rows() as usize).rev() {
            idx = idx * field.q() + u64::from(matrix.get(i, j));
        }
        out.push(field.from_index(idx));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_prime_fields() {
        assert!(FqMatrix::zero(4, 2, 2).is_err());
        assert!(FqMatrix::zero(1, 2, 2).is_err());
        assert!(FqMatrix::zero(257, 2, 2).is_err());
    }

    #[test]
    fn index_round_trip() {
        for q in [2u64, 3, 5] {
            let total = q.pow(4);
            for idx in 0..total {
                let m = FqMatrix::from_index(q, 2, 2, idx).unwrap();
                assert_eq!(m.to_index(), idx);
            }
        }
    }

    #[test]
    fn index_layout_is_column_major() {
        // index q fills entry (1, 0): second digit of the first column.
        let m = FqMatrix::from_index(3, 2, 2, 3).unwrap();
        assert_eq!(m.get(1, 0), 1);
        assert_eq!(m.get(0, 0), 0);
        assert_eq!(m.get(0, 1), 0);
        // index q^rows starts the second column.
        let m = FqMatrix::from_index(3, 2, 2, 9).unwrap();
        assert_eq!(m.get(0, 1), 1);
    }

    #[test]
    fn rank_small_cases() {
        let id = FqMatrix::from_entries(2, 3, 3, vec![1, 0, 0, 0, 1, 0, 0, 0, 1]).unwrap();
        assert_eq!(id.rank(), 3);
        let zero = FqMatrix::zero(2, 3, 3).unwrap();
        assert_eq!(zero.rank(), 0);
        // Row 2 = row 0 + row 1 mod 2.
        let dep = FqMatrix::from_entries(2, 3, 3, vec![1, 1, 0, 0, 1, 1, 1, 0, 1]).unwrap();
        assert_eq!(dep.rank(), 2);
        // Over GF(3): second row is a scalar multiple of the first.
        let dep3 = FqMatrix::from_entries(3, 2, 3, vec![1, 2, 0, 2, 1, 0]).unwrap();
        assert_eq!(dep3.rank(), 1);
        let ind3 = FqMatrix::from_entries(3, 2, 3, vec![1, 2, 0, 2, 1, 1]).unwrap();
        assert_eq!(ind3.rank(), 2);
    }

    #[test]
    fn rank_matches_transpose() {
        for q in [2u64, 3] {
            for idx in 0..q.pow(6) {
                let m = FqMatrix::from_index(q, 2, 3, idx).unwrap();
                assert_eq!(m.rank(), m.transpose().rank(), "q = {q}, idx = {idx}");
            }
        }
    }

    #[test]
    fn rank_counts_match_subspace_counting() {
        // Number of m x n matrices of rank r over GF(q) has a closed
        // form; check the enumeration against it.
        use crate::qcombinat::SpaceParams;
        use num_bigint::BigInt;
        for (q, m, n) in [(2u64, 2u32, 2u32), (2, 3, 2), (3, 2, 2)] {
            let params = SpaceParams::new(q, m, n).unwrap();
            let mut counts = vec![0u64; (n.min(m) + 1) as usize];
            for idx in 0..q.pow(m * n) {
                let mat = FqMatrix::from_index(q, m, n, idx).unwrap();
                counts[mat.rank() as usize] += 1;
            }
            for (r, c) in counts.iter().enumerate() {
                assert_eq!(
                    BigInt::from(*c),
                    params.sphere_size(r as u32),
                    "(q, m, n, r) = ({q}, {m}, {n}, {r})"
                );
            }
        }
    }

    #[test]
    fn expand_contract_round_trip() {
        let f = ExtField::new(2, 3).unwrap();
        let field_size = f.size();
        for a in 0..field_size {
            for b in 0..field_size {
                let v = vec![f.from_index(a), f.from_index(b)];
                let m = expand(&f, &v).unwrap();
                assert_eq!((m.rows(), m.cols()), (3, 2));
                assert_eq!(contract(&f, &m).unwrap(), v);
            }
        }
    }

    #[test]
    fn expanded_index_matches_vector_index() {
        // Vector index in base q^m agrees with the matrix index in base q
        // because columns are consecutive digit groups.
        let f = ExtField::new(3, 2).unwrap();
        for idx in 0..f.size() * f.size() {
            let v = vec![f.from_index(idx % f.size()), f.from_index(idx / f.size())];
            let m = expand(&f, &v).unwrap();
            assert_eq!(m.to_index(), idx);
        }
    }

    #[test]
    fn subtraction_is_entrywise_mod_q() {
        let a = FqMatrix::from_entries(3, 2, 2, vec![1, 2, 0, 1]).unwrap();
        let b = FqMatrix::from_entries(3, 2, 2, vec![2, 2, 1, 0]).unwrap();
        let d = a.sub(&b).unwrap();
        assert_eq!(d.entries(), &[2, 0, 2, 1]);
        assert!(a.sub(&FqMatrix::zero(3, 2, 3).unwrap()).is_err());
    }
}
