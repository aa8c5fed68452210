//! Exhaustive covering computations on small spaces, and the explicit
//! covering construction behind `bounds::construction_upper_bound`.
//!
//! Everything here walks all q^{mn} matrices (or all pairs with a code),
//! so every entry point takes a budget and refuses spaces it cannot
//! afford rather than degrade. The full-space sweeps (`covering_radius`,
//! `union_ball_volume`, `enumerate_sphere_intersections`) distribute over
//! rayon when the `parallel` feature is on; their `_seq` twins always
//! exist and return bit-identical results, which the test suite and the
//! bench suite both rely on.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactcodes::field::{inverse_table, require_small_prime};
use crate::exactcodes::gabidulin::Code;
use crate::exactcodes::matrix::{decode_index, rank_in_place, sub_mod_into, FqMatrix};
use crate::geometry::IntersectionTable;
use crate::qcombinat::SpaceParams;

/// Scratch-free context for rank computations during sweeps.
struct SweepCtx {
    q: u64,
    rows: usize,
    cols: usize,
    len: usize,
    inv: Vec<u8>,
}

impl SweepCtx {
    fn new(params: &SpaceParams) -> Result<Self> {
        require_small_prime(params.q())?;
        let rows = params.m() as usize;
        let cols = params.n() as usize;
        Ok(SweepCtx {
            q: params.q(),
            rows,
            cols,
            len: rows * cols,
            inv: inverse_table(params.q()),
        })
    }

    /// Space size as u64 after checking it against the budget.
    fn space_checked(params: &SpaceParams, budget: u64) -> Result<u64> {
        let space = params.space_size();
        if space > BigInt::from(budget) {
            return Err(Error::BudgetExceeded(format!(
                "enumerating q^{{mn}} = {space} vectors exceeds the budget of {budget}"
            )));
        }
        Ok(space.to_u64().expect("bounded by a u64 budget"))
    }

    fn decode(&self, idx: u64, out: &mut [u8; 64]) {
        decode_index(idx, self.q, self.rows, self.cols, &mut out[..self.len]);
    }

    fn rank_of_diff(&self, a: &[u8], b: &[u8]) -> u32 {
        let mut work = [0u8; 64];
        sub_mod_into(a, b, self.q, &mut work[..self.len]);
        rank_in_place(&mut work[..self.len], self.rows, self.cols, self.q, &self.inv)
    }

    fn min_distance_to(&self, x: &[u8], words: &[&[u8]]) -> u32 {
        let mut best = u32::MAX;
        for w in words {
            let d = self.rank_of_diff(x, w);
            if d < best {
                best = d;
                if best == 0 {
                    break;
                }
            }
        }
        best
    }
}

fn word_slices(code: &Code) -> Vec<&[u8]> {
    code.words().iter().map(|w| w.entries()).collect()
}

/// Largest distance from any vector of the space to the code: an
/// exhaustive sweep, parallel when the `parallel` feature is enabled.
pub fn covering_radius(code: &Code, budget: u64) -> Result<u32> {
    #[cfg(feature = "parallel")]
    {
        crate::init_threads();
        let ctx = SweepCtx::new(code.params())?;
        let size = SweepCtx::space_checked(code.params(), budget)?;
        let words = word_slices(code);
        Ok((0..size)
            .into_par_iter()
            .map(|idx| {
                let mut x = [0u8; 64];
                ctx.decode(idx, &mut x);
                ctx.min_distance_to(&x[..ctx.len], &words)
            })
            .max()
            .expect("space is never empty"))
    }
    #[cfg(not(feature = "parallel"))]
    covering_radius_seq(code, budget)
}

/// Single-threaded `covering_radius`; always available and always equal.
pub fn covering_radius_seq(code: &Code, budget: u64) -> Result<u32> {
    let ctx = SweepCtx::new(code.params())?;
    let size = SweepCtx::space_checked(code.params(), budget)?;
    let words = word_slices(code);
    let mut radius = 0u32;
    let mut x = [0u8; 64];
    for idx in 0..size {
        ctx.decode(idx, &mut x);
        radius = radius.max(ctx.min_distance_to(&x[..ctx.len], &words));
    }
    Ok(radius)
}

fn centers_decoded(ctx: &SweepCtx, centers: &[u64], size: u64) -> Result<Vec<Vec<u8>>> {
    if centers.is_empty() {
        return Err(Error::InvalidParams("need at least one center".into()));
    }
    centers
        .iter()
        .map(|&c| {
            if c >= size {
                return Err(Error::IndexOutOfRange(format!(
                    "center index {c} outside the space of {size} vectors"
                )));
            }
            let mut buf = [0u8; 64];
            ctx.decode(c, &mut buf);
            Ok(buf[..ctx.len].to_vec())
        })
        .collect()
}

/// Exact number of vectors within distance ρ of at least one of the given
/// centers (vectors given by their space index). The honest counterpart
/// of the union volume bound B(K).
pub fn union_ball_volume(
    params: &SpaceParams,
    rho: u32,
    centers: &[u64],
    budget: u64,
) -> Result<BigInt> {
    #[cfg(feature = "parallel")]
    {
        crate::init_threads();
        if rho > params.n() {
            return Err(Error::InvalidParams(format!(
                "rho = {rho} exceeds n = {}",
                params.n()
            )));
        }
        let ctx = SweepCtx::new(params)?;
        let size = SweepCtx::space_checked(params, budget)?;
        let decoded = centers_decoded(&ctx, centers, size)?;
        let slices: Vec<&[u8]> = decoded.iter().map(|c| c.as_slice()).collect();
        let count = (0..size)
            .into_par_iter()
            .filter(|&idx| {
                let mut x = [0u8; 64];
                ctx.decode(idx, &mut x);
                slices.iter().any(|c| ctx.rank_of_diff(&x[..ctx.len], c) <= rho)
            })
            .count();
        return Ok(BigInt::from(count));
    }
    #[cfg(not(feature = "parallel"))]
    union_ball_volume_seq(params, rho, centers, budget)
}

/// Single-threaded `union_ball_volume`.
pub fn union_ball_volume_seq(
    params: &SpaceParams,
    rho: u32,
    centers: &[u64],
    budget: u64,
) -> Result<BigInt> {
    if rho > params.n() {
        return Err(Error::InvalidParams(format!(
            "rho = {rho} exceeds n = {}",
            params.n()
        )));
    }
    let ctx = SweepCtx::new(params)?;
    let size = SweepCtx::space_checked(params, budget)?;
    let decoded = centers_decoded(&ctx, centers, size)?;
    let mut count = 0u64;
    let mut x = [0u8; 64];
    for idx in 0..size {
        ctx.decode(idx, &mut x);
        if decoded.iter().any(|c| ctx.rank_of_diff(&x[..ctx.len], c) <= rho) {
            count += 1;
        }
    }
    Ok(BigInt::from(count))
}

/// Canonical rank-w representative: an identity block in the top-left.
fn rank_representative(params: &SpaceParams, w: u32) -> FqMatrix {
    let mut mat = FqMatrix::zero(params.q(), params.m(), params.n())
        .expect("params are validated");
    for i in 0..w as usize {
        mat.set(i, i, 1);
    }
    mat
}

/// A second representative of rank w, placed and scaled differently, for
/// the distance-transitivity cross-check.
fn rank_representative_alt(params: &SpaceParams, w: u32) -> FqMatrix {
    let mut mat = FqMatrix::zero(params.q(), params.m(), params.n())
        .expect("params are validated");
    let value = (params.q() - 1) as u8;
    let rows = params.m() as usize;
    let cols = params.n() as usize;
    for i in 0..w as usize {
        mat.set(rows - 1 - i, cols - 1 - i, value);
    }
    mat
}

fn sweep_counts_for_center(ctx: &SweepCtx, size: u64, center: &[u8], dim: usize) -> Vec<u64> {
    let zero = vec![0u8; ctx.len];
    #[cfg(feature = "parallel")]
    {
        (0..size)
            .into_par_iter()
            .fold(
                || vec![0u64; dim * dim],
                |mut acc, idx| {
                    let mut x = [0u8; 64];
                    ctx.decode(idx, &mut x);
                    let u = ctx.rank_of_diff(&x[..ctx.len], &zero) as usize;
                    let s = ctx.rank_of_diff(&x[..ctx.len], center) as usize;
                    acc[u * dim + s] += 1;
                    acc
                },
            )
            .reduce(
                || vec![0u64; dim * dim],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut acc = vec![0u64; dim * dim];
        let mut x = [0u8; 64];
        for idx in 0..size {
            ctx.decode(idx, &mut x);
            let u = ctx.rank_of_diff(&x[..ctx.len], &zero) as usize;
            let s = ctx.rank_of_diff(&x[..ctx.len], center) as usize;
            acc[u * dim + s] += 1;
        }
        acc
    }
}

/// Brute-force sphere intersection numbers: counts[u][s][w] is measured
/// by sweeping the space against a fixed pair of vectors at distance w.
pub fn enumerate_sphere_intersections(
    params: &SpaceParams,
    budget: u64,
) -> Result<Vec<Vec<Vec<u64>>>> {
    crate::init_threads();
    let ctx = SweepCtx::new(params)?;
    let size = SweepCtx::space_checked(params, budget)?;
    let dim = params.n() as usize + 1;
    let mut out = vec![vec![vec![0u64; dim]; dim]; dim];
    for w in 0..dim {
        let rep = rank_representative(params, w as u32);
        debug_assert_eq!(rep.rank(), w as u32);
        let counts = sweep_counts_for_center(&ctx, size, rep.entries(), dim);
        for u in 0..dim {
            for s in 0..dim {
                out[u][s][w] = counts[u * dim + s];
            }
        }
    }
    Ok(out)
}

/// Single-threaded `enumerate_sphere_intersections` (identical output;
/// with the `parallel` feature off the two entry points coincide).
pub fn enumerate_sphere_intersections_seq(
    params: &SpaceParams,
    budget: u64,
) -> Result<Vec<Vec<Vec<u64>>>> {
    let ctx = SweepCtx::new(params)?;
    let size = SweepCtx::space_checked(params, budget)?;
    let dim = params.n() as usize + 1;
    let mut out = vec![vec![vec![0u64; dim]; dim]; dim];
    let zero = vec![0u8; ctx.len];
    let mut x = [0u8; 64];
    for w in 0..dim {
        let rep = rank_representative(params, w as u32);
        for idx in 0..size {
            ctx.decode(idx, &mut x);
            let u = ctx.rank_of_diff(&x[..ctx.len], &zero) as usize;
            let s = ctx.rank_of_diff(&x[..ctx.len], rep.entries()) as usize;
            out[u][s][w] += 1;
        }
    }
    Ok(out)
}

/// Compares the closed-form intersection numbers against enumeration.
///
/// For every w this sweeps the space against two different rank-w
/// representatives: agreement between the two sweeps witnesses that the
/// counts only depend on the distance w (distance transitivity), and
/// agreement with `IntersectionTable` validates the eigenvalue formula.
pub fn check_intersections_by_enumeration(params: &SpaceParams, budget: u64) -> Result<()> {
    crate::init_threads();
    let ctx = SweepCtx::new(params)?;
    let size = SweepCtx::space_checked(params, budget)?;
    let dim = params.n() as usize + 1;
    let table = IntersectionTable::build(params)?;
    for w in 0..dim {
        let rep = rank_representative(params, w as u32);
        let alt = rank_representative_alt(params, w as u32);
        if rep.rank() != w as u32 || alt.rank() != w as u32 {
            return Err(Error::ArithmeticBug(format!(
                "representative of rank {w} has wrong rank"
            )));
        }
        let counts = sweep_counts_for_center(&ctx, size, rep.entries(), dim);
        let counts_alt = sweep_counts_for_center(&ctx, size, alt.entries(), dim);
        if counts != counts_alt {
            return Err(Error::ArithmeticBug(format!(
                "sphere intersections differ between two rank-{w} representatives"
            )));
        }
        for u in 0..dim {
            for s in 0..dim {
                let formula = table.sphere(u as u32, s as u32, w as u32);
                if formula != &BigInt::from(counts[u * dim + s]) {
                    return Err(Error::ArithmeticBug(format!(
                        "J({u}, {s}, {w}) formula gives {formula}, enumeration gives {}",
                        counts[u * dim + s]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The explicit covering code with radius ρ: every matrix whose top ρ
/// rows vanish and whose nonzero columns number at most n − ρ. Its
/// cardinality matches `bounds::construction_upper_bound`.
///
/// Words are emitted by support size, then by support mask, then by
/// column values with the rightmost support column varying fastest.
pub fn construction_code(params: &SpaceParams, rho: u32, budget: u64) -> Result<Code> {
    require_small_prime(params.q())?;
    let n = params.n();
    let m = params.m();
    if rho > n {
        return Err(Error::InvalidParams(format!("rho = {rho} exceeds n = {n}")));
    }
    let expected = crate::bounds::construction_upper_bound(params, rho)?;
    if expected > BigInt::from(budget) {
        return Err(Error::BudgetExceeded(format!(
            "the construction holds {expected} words, over the budget of {budget}"
        )));
    }

    // Nonzero column patterns live in the free rows rho..m.
    let column_values: u64 = params.q().pow(m - rho) - 1;
    let mut masks: Vec<u32> = (0..1u32 << n)
        .filter(|mask| mask.count_ones() <= n - rho)
        .collect();
    masks.sort_by_key(|mask| (mask.count_ones(), *mask));

    let mut words = Vec::new();
    for mask in masks {
        let support: Vec<usize> =
            (0..n as usize).filter(|j| mask >> j & 1 == 1).collect();
        let mut odometer = vec![1u64; support.len()];
        'values: loop {
            let mut word = FqMatrix::zero(params.q(), m, n)?;
            for (&j, &value) in support.iter().zip(&odometer) {
                let mut rest = value;
                for i in rho as usize..m as usize {
                    word.set(i, j, (rest % params.q()) as u8);
                    rest /= params.q();
                }
            }
            words.push(word);
            // Advance the rightmost column first, values 1..=column_values.
            let mut pos = support.len();
            loop {
                if pos == 0 {
                    break 'values;
                }
                pos -= 1;
                if odometer[pos] < column_values {
                    odometer[pos] += 1;
                    for v in odometer[pos + 1..].iter_mut() {
                        *v = 1;
                    }
                    break;
                }
                odometer[pos] = 1;
            }
        }
    }
    let code = Code::new(params, words)?;
    if BigInt::from(code.cardinality()) != expected {
        return Err(Error::ArithmeticBug(format!(
            "construction produced {} words, closed form says {expected}",
            code.cardinality()
        )));
    }
    Ok(code)
}

/// True when `word` belongs to the explicit covering code for (params, ρ).
pub fn is_construction_word(params: &SpaceParams, rho: u32, word: &FqMatrix) -> Result<bool> {
    if word.q() != params.q() || word.rows() != params.m() || word.cols() != params.n() {
        return Err(Error::InvalidParams("word shape does not match params".into()));
    }
    if rho > params.n() {
        return Err(Error::InvalidParams(format!(
            "rho = {rho} exceeds n = {}",
            params.n()
        )));
    }
    for i in 0..rho as usize {
        for j in 0..params.n() as usize {
            if word.get(i, j) != 0 {
                return Ok(false);
            }
        }
    }
    let nonzero_cols = (0..params.n() as usize)
        .filter(|&j| (0..params.m() as usize).any(|i| word.get(i, j) != 0))
        .count();
    Ok(nonzero_cols <= (params.n() - rho) as usize)
}

/// Inverts an r × r matrix over GF(q) by Gauss-Jordan elimination.
fn invert_mod_q(a: &[u8], r: usize, q: u64, inv: &[u8]) -> Option<Vec<u8>> {
    let qq = q as u16;
    let mut aug = vec![0u8; r * 2 * r];
    for i in 0..r {
        for j in 0..r {
            aug[i * 2 * r + j] = a[i * r + j];
        }
        aug[i * 2 * r + r + i] = 1;
    }
    let w = 2 * r;
    for col in 0..r {
        let pivot = (col..r).find(|&row| aug[row * w + col] != 0)?;
        if pivot != col {
            for c in 0..w {
                aug.swap(pivot * w + c, col * w + c);
            }
        }
        let scale = u16::from(inv[aug[col * w + col] as usize]);
        for c in 0..w {
            aug[col * w + c] = (u16::from(aug[col * w + c]) * scale % qq) as u8;
        }
        for row in 0..r {
            if row == col || aug[row * w + col] == 0 {
                continue;
            }
            let factor = u16::from(aug[row * w + col]);
            for c in 0..w {
                let sub = factor * u16::from(aug[col * w + c]) % qq;
                aug[row * w + c] = ((u16::from(aug[row * w + c]) + qq - sub) % qq) as u8;
            }
        }
    }
    let mut out = vec![0u8; r * r];
    for i in 0..r {
        for j in 0..r {
            out[i * r + j] = aug[i * w + r + j];
        }
    }
    Some(out)
}

/// Produces a word of the explicit covering code within distance ρ of
/// `target`, constructively:
///
/// 1. Let r be the rank of the top ρ rows, J the leftmost r independent
///    columns of that block, and I the leftmost r rows of the block that
///    are independent on J.
/// 2. Build U agreeing with the target on the top ρ rows and, below,
///    replaying each row as its J-column combination of the rows I; U
///    then has rank r and differs from the target only outside J on the
///    bottom rows.
/// 3. Copy back the leftmost ρ − r columns outside J from the target
///    (set J'), making the difference vanish there too.
///
/// The word target − U' has zero top rows and at most n − ρ nonzero
/// columns (they avoid J ∪ J'), and its distance to the target, the rank
/// of U', is at most ρ.
pub fn construction_cover_word(
    params: &SpaceParams,
    rho: u32,
    target: &FqMatrix,
) -> Result<FqMatrix> {
    require_small_prime(params.q())?;
    let m = params.m() as usize;
    let n = params.n() as usize;
    if rho > params.n() {
        return Err(Error::InvalidParams(format!("rho = {rho} exceeds n = {n}")));
    }
    if target.q() != params.q() || target.rows() != params.m() || target.cols() != params.n() {
        return Err(Error::InvalidParams("target shape does not match params".into()));
    }
    let q = params.q();
    let inv = inverse_table(q);
    let rho = rho as usize;

    // J: leftmost independent columns of the top block, greedily.
    let mut cols_j: Vec<usize> = Vec::new();
    let mut scratch = Vec::new();
    for col in 0..n {
        let mut trial = cols_j.clone();
        trial.push(col);
        scratch.clear();
        for i in 0..rho {
            for &j in &trial {
                scratch.push(target.get(i, j));
            }
        }
        let rank = rank_in_place(&mut scratch, rho, trial.len(), q, &inv);
        if rank as usize == trial.len() {
            cols_j = trial;
            if cols_j.len() == rho {
                break;
            }
        }
    }
    let r = cols_j.len();

    // I: leftmost rows of the top block independent on the J columns.
    let mut rows_i: Vec<usize> = Vec::new();
    for i in 0..rho {
        let mut trial = rows_i.clone();
        trial.push(i);
        scratch.clear();
        for &ti in &trial {
            for &j in &cols_j {
                scratch.push(target.get(ti, j));
            }
        }
        let rank = rank_in_place(&mut scratch, trial.len(), r, q, &inv);
        if rank as usize == trial.len() {
            rows_i = trial;
            if rows_i.len() == r {
                break;
            }
        }
    }

    let mut vij = vec![0u8; r * r];
    for (a, &i) in rows_i.iter().enumerate() {
        for (b, &j) in cols_j.iter().enumerate() {
            vij[a * r + b] = target.get(i, j);
        }
    }
    let vij_inv = invert_mod_q(&vij, r, q, &inv).ok_or_else(|| {
        Error::ArithmeticBug("independent submatrix failed to invert".into())
    })?;

    let qq = q as u16;
    let mut u_mat = FqMatrix::zero(q, params.m(), params.n())?;
    for i in 0..rho {
        for j in 0..n {
            u_mat.set(i, j, target.get(i, j));
        }
    }
    for i in rho..m {
        // l = target[i, J] · vij_inv, then row = l · target[I, :].
        let mut l = vec![0u16; r];
        for (c, lv) in l.iter_mut().enumerate() {
            let mut acc = 0u16;
            for (t, &j) in cols_j.iter().enumerate() {
                acc =
                    (acc + u16::from(target.get(i, j)) * u16::from(vij_inv[t * r + c])) % qq;
            }
            *lv = acc;
        }
        for j in 0..n {
            let mut acc = 0u16;
            for (t, &src) in rows_i.iter().enumerate() {
                acc = (acc + l[t] * u16::from(target.get(src, j))) % qq;
            }
            u_mat.set(i, j, acc as u8);
        }
    }

    // J': the leftmost rho - r columns outside J, copied back verbatim.
    let mut in_j = vec![false; n];
    for &j in &cols_j {
        in_j[j] = true;
    }
    let mut copied = 0usize;
    for j in 0..n {
        if copied == rho - r {
            break;
        }
        if !in_j[j] {
            for i in 0..m {
                u_mat.set(i, j, target.get(i, j));
            }
            copied += 1;
        }
    }

    let word = target.sub(&u_mat)?;
    if !is_construction_word(params, rho as u32, &word)? {
        return Err(Error::ArithmeticBug(
            "cover procedure produced a word outside the code".into(),
        ));
    }
    if u_mat.rank() > rho as u32 {
        return Err(Error::ArithmeticBug(format!(
            "cover procedure overshot the radius: distance {} > rho = {rho}",
            u_mat.rank()
        )));
    }
    Ok(word)
}

/// Exact K(q^m, n, ρ) by exhaustive search: iterative deepening over the
/// code size with a depth-first cover search. `budget` caps the space
/// size and the total work, measured in elementary vector operations
/// (ball constructions cost one unit per space element, node visits one
/// unit per bitset word); exceeding either reports an error instead of a
/// guess. Intended for spaces of a few thousand vectors.
pub fn exact_min_covering(params: &SpaceParams, rho: u32, budget: u64) -> Result<BigInt> {
    let n = params.n();
    if rho > n {
        return Err(Error::InvalidParams(format!("rho = {rho} exceeds n = {n}")));
    }
    if rho == n {
        return Ok(BigInt::one());
    }
    if rho == 0 {
        return Ok(params.space_size());
    }
    require_small_prime(params.q())?;
    let ctx = SweepCtx::new(params)?;
    let size = SweepCtx::space_checked(params, budget)?;
    let digits = (ctx.len) as u32;
    let q = params.q();

    // rank_table[t] = rank of the matrix with index t; distances then
    // come from indices alone.
    let rank_table = build_rank_table(&ctx, size);
    let v = params
        .ball_volume(rho)
        .to_u64()
        .expect("ball volume bounded by the space size");

    let diff = |a: u64, b: u64| -> u64 {
        if q == 2 {
            a ^ b
        } else {
            let mut out = 0u64;
            let mut pa = a;
            let mut pb = b;
            let mut place = 1u64;
            for _ in 0..digits {
                let da = pa % q;
                let db = pb % q;
                out += (da + q - db) % q * place;
                place *= q;
                pa /= q;
                pb /= q;
            }
            out
        }
    };

    let words = (size as usize + 63) / 64;
    // Keep the ball cache well under 64 MB whatever the space size.
    let cache_cap = ((64usize << 20) / (words * 8)).max(1);
    let mut searcher = CoverSearch {
        size,
        v,
        rho,
        rank_table,
        diff: &diff,
        ball_cache: HashMap::new(),
        cache_cap,
        work: size,
        budget,
        bitset_words: words,
    };

    let lower = params
        .space_size()
        .div_ceil(&params.ball_volume(rho))
        .to_u64()
        .expect("at most the space size");
    for k in lower..=size {
        let empty = vec![0u64; words];
        match searcher.try_cover(&empty, 0, 0, k)? {
            true => return Ok(BigInt::from(k)),
            false => continue,
        }
    }
    Err(Error::ArithmeticBug(
        "no cover found even with every vector as a codeword".into(),
    ))
}

fn build_rank_table(ctx: &SweepCtx, size: u64) -> Vec<u8> {
    #[cfg(feature = "parallel")]
    {
        crate::init_threads();
        (0..size)
            .into_par_iter()
            .map(|idx| {
                let mut x = [0u8; 64];
                ctx.decode(idx, &mut x);
                let mut work = [0u8; 64];
                work[..ctx.len].copy_from_slice(&x[..ctx.len]);
                rank_in_place(&mut work[..ctx.len], ctx.rows, ctx.cols, ctx.q, &ctx.inv) as u8
            })
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut out = Vec::with_capacity(size as usize);
        let mut x = [0u8; 64];
        for idx in 0..size {
            ctx.decode(idx, &mut x);
            let mut work = [0u8; 64];
            work[..ctx.len].copy_from_slice(&x[..ctx.len]);
            out.push(rank_in_place(
                &mut work[..ctx.len],
                ctx.rows,
                ctx.cols,
                ctx.q,
                &ctx.inv,
            ) as u8);
        }
        out
    }
}

struct CoverSearch<'a> {
    size: u64,
    v: u64,
    rho: u32,
    rank_table: Vec<u8>,
    diff: &'a dyn Fn(u64, u64) -> u64,
    /// center -> membership bitset; capped, so a miss may rebuild.
    ball_cache: HashMap<u64, Vec<u64>>,
    cache_cap: usize,
    /// Elementary operations spent so far, counted against `budget`.
    work: u64,
    budget: u64,
    bitset_words: usize,
}

impl CoverSearch<'_> {
    fn charge(&mut self, units: u64) -> Result<()> {
        self.work = self.work.saturating_add(units);
        if self.work > self.budget {
            return Err(Error::Unavailable(format!(
                "exhaustive covering search exceeded the work budget of {}",
                self.budget
            )));
        }
        Ok(())
    }

    fn ball(&mut self, center: u64) -> Result<Vec<u64>> {
        if let Some(bits) = self.ball_cache.get(&center) {
            return Ok(bits.clone());
        }
        self.charge(self.size)?;
        let mut bits = vec![0u64; self.bitset_words];
        for idx in 0..self.size {
            let d = self.rank_table[(self.diff)(idx, center) as usize];
            if u32::from(d) <= self.rho {
                bits[(idx / 64) as usize] |= 1 << (idx % 64);
            }
        }
        if self.ball_cache.len() < self.cache_cap {
            self.ball_cache.insert(center, bits.clone());
        }
        Ok(bits)
    }

    /// Depth-first: can `slots` more codewords cover everything?
    fn try_cover(
        &mut self,
        covered: &[u64],
        covered_count: u64,
        scan_from: u64,
        slots: u64,
    ) -> Result<bool> {
        self.charge(self.bitset_words as u64)?;
        if covered_count == self.size {
            return Ok(true);
        }
        if slots == 0 || self.size - covered_count > slots * self.v {
            return Ok(false);
        }
        // First uncovered vector; everything below scan_from is covered.
        let mut first = None;
        for idx in scan_from..self.size {
            if covered[(idx / 64) as usize] >> (idx % 64) & 1 == 0 {
                first = Some(idx);
                break;
            }
        }
        let first = first.expect("covered_count < size");

        // Some codeword must cover `first`; by symmetry of the metric the
        // candidates are exactly the ball around it. When nothing has
        // been chosen yet, translating the whole code lets us fix the
        // candidate to the vector itself.
        let candidates: Vec<u64> = if covered_count == 0 {
            let mut only = vec![0u64; self.bitset_words];
            only[(first / 64) as usize] |= 1 << (first % 64);
            only
        } else {
            self.ball(first)?
        };
        for (word_ix, mut word) in candidates.iter().copied().enumerate() {
            while word != 0 {
                let c = word_ix as u64 * 64 + word.trailing_zeros() as u64;
                word &= word - 1;
                let bits = self.ball(c)?;
                let mut next = covered.to_vec();
                let mut next_count = 0u64;
                for (w, b) in next.iter_mut().zip(&bits) {
                    *w |= *b;
                    next_count += w.count_ones() as u64;
                }
                if self.try_cover(&next, next_count, first, slots - 1)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcodes::gabidulin::gabidulin_code;

    fn p(q: u64, m: u32, n: u32) -> SpaceParams {
        SpaceParams::new(q, m, n).unwrap()
    }

    #[test]
    fn construction_code_matches_closed_form() {
        for (q, m, n, rho, want) in [
            (2u64, 3u32, 2u32, 1u32, 7usize),
            (2, 3, 3, 1, 37),
            (2, 3, 3, 2, 4),
            (2, 4, 4, 3, 5),
            (3, 2, 2, 1, 5),
        ] {
            let params = p(q, m, n);
            let code = construction_code(&params, rho, 1 << 20).unwrap();
            assert_eq!(code.cardinality(), want);
            let closed = crate::bounds::construction_upper_bound(&params, rho).unwrap();
            assert_eq!(BigInt::from(want), closed);
            for word in code.words() {
                assert!(is_construction_word(&params, rho, word).unwrap());
            }
        }
    }

    #[test]
    fn construction_radius_is_exactly_rho() {
        for (q, m, n, rho) in [(2u64, 3u32, 2u32, 1u32), (2, 3, 3, 2), (3, 2, 2, 1)] {
            let params = p(q, m, n);
            let code = construction_code(&params, rho, 1 << 20).unwrap();
            assert_eq!(covering_radius(&code, 1 << 20).unwrap(), rho);
            assert_eq!(covering_radius_seq(&code, 1 << 20).unwrap(), rho);
        }
    }

    #[test]
    fn cover_word_lands_in_code_within_rho() {
        for (q, m, n, rho) in [(2u64, 3u32, 2u32, 1u32), (2, 3, 3, 2), (3, 2, 2, 1)] {
            let params = p(q, m, n);
            let size = params.space_size().to_u64().unwrap();
            for idx in 0..size {
                let target = FqMatrix::from_index(q, m, n, idx).unwrap();
                let word = construction_cover_word(&params, rho, &target).unwrap();
                assert!(is_construction_word(&params, rho, &word).unwrap());
                assert!(target.sub(&word).unwrap().rank() <= rho);
            }
        }
    }

    #[test]
    fn cover_word_trivial_radii() {
        let params = p(2, 3, 3);
        let target = FqMatrix::from_index(2, 3, 3, 333).unwrap();
        // rho = 0: the code is the whole space, the word is the target.
        let word = construction_cover_word(&params, 0, &target).unwrap();
        assert_eq!(word.entries(), target.entries());
        // rho = n: only the zero matrix remains.
        let word = construction_cover_word(&params, 3, &target).unwrap();
        assert!(word.is_zero());
    }

    #[test]
    fn exact_min_covering_tiny_spaces() {
        assert_eq!(exact_min_covering(&p(2, 2, 2), 1, 1 << 20).unwrap(), BigInt::from(3));
        assert_eq!(exact_min_covering(&p(2, 3, 2), 1, 1 << 20).unwrap(), BigInt::from(4));
        assert_eq!(exact_min_covering(&p(3, 2, 2), 1, 1 << 20).unwrap(), BigInt::from(5));
        assert_eq!(exact_min_covering(&p(2, 3, 3), 2, 1 << 24).unwrap(), BigInt::from(4));
        assert_eq!(exact_min_covering(&p(2, 2, 2), 2, 1 << 20).unwrap(), BigInt::one());
        assert_eq!(
            exact_min_covering(&p(2, 2, 2), 0, 1 << 20).unwrap(),
            p(2, 2, 2).space_size()
        );
    }

    #[test]
    fn exact_min_covering_respects_budgets() {
        // Space too big for the sweep budget.
        assert!(matches!(
            exact_min_covering(&p(2, 7, 7), 3, 1 << 20),
            Err(Error::BudgetExceeded(_))
        ));
        // Budget covers the 81-vector sweep but starves the node count.
        assert!(matches!(
            exact_min_covering(&p(3, 2, 2), 1, 81),
            Err(Error::Unavailable(_))
        ));
    }

    #[test]
    fn union_volume_matches_intersection_table() {
        let params = p(2, 3, 3);
        let table = IntersectionTable::build(&params).unwrap();
        let v = params.ball_volume(1);
        // A single ball.
        assert_eq!(union_ball_volume(&params, 1, &[0], 1 << 20).unwrap(), v);
        // Two centers at each distance w: 2v - I(rho, w).
        for w in 1..=3u32 {
            let rep = rank_representative(&params, w);
            let idx = rep.to_index();
            let got = union_ball_volume(&params, 1, &[0, idx], 1 << 20).unwrap();
            let expect = &v + &v - table.ball_same_radius(1, w);
            assert_eq!(got, expect, "w = {w}");
            let seq = union_ball_volume_seq(&params, 1, &[0, idx], 1 << 20).unwrap();
            assert_eq!(got, seq);
        }
    }

    #[test]
    fn union_volume_rejects_bad_centers() {
        let params = p(2, 2, 2);
        assert!(union_ball_volume(&params, 1, &[], 1 << 20).is_err());
        assert!(union_ball_volume(&params, 1, &[1 << 20], 1 << 20).is_err());
    }

    #[test]
    fn enumerated_intersections_match_formula() {
        for (q, m, n) in [(2u64, 2u32, 2u32), (3, 2, 2), (2, 3, 2)] {
            check_intersections_by_enumeration(&p(q, m, n), 1 << 20).unwrap();
        }
    }

    #[test]
    fn enumeration_seq_equals_parallel_entry() {
        let params = p(2, 3, 2);
        let a = enumerate_sphere_intersections(&params, 1 << 20).unwrap();
        let b = enumerate_sphere_intersections_seq(&params, 1 << 20).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gabidulin_radius_is_forced() {
        // Interpolation on k independent evaluation points puts every
        // vector within n - k of the code, and a proper code has radius
        // at least 1, so radius = n - k = 1 is forced here.
        let params = p(2, 3, 3);
        let code = gabidulin_code(&params, 2, 1 << 20).unwrap();
        assert_eq!(covering_radius(&code, 1 << 20).unwrap(), 1);
    }

    #[test]
    fn budget_refuses_large_sweeps() {
        let params = p(2, 3, 3);
        let code = construction_code(&params, 2, 1 << 20).unwrap();
        assert!(matches!(
            covering_radius(&code, 100),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(
            construction_code(&params, 1, 10),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
