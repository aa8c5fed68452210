//! Exact integer linear programming lower bound.
//!
//! For each distance δ ≤ ρ, a covering code must admit, around any vector
//! at distance δ from it, a distance distribution (A_δ, ..., A_n) with
//! A_δ ≥ 1, A_i ≤ N_i, and enough mass to cover every sphere around that
//! vector: Σ_i A_i Σ_{s ≤ ρ} J(r, s, i) ≥ N_r for all r. Minimizing
//! Σ A_i over integer sequences gives T_δ, and the cardinality of any
//! covering code is at least max_{0 ≤ δ ≤ ρ} T_δ.
//!
//! The minimization runs as branch and bound over an exact-rational LP
//! relaxation: a two-phase primal simplex on `BigRational` with Bland's
//! rule, so there is no cycling and no floating-point noise. Branching
//! always splits the most fractional variable, exploring the floor branch
//! first; nodes whose LP value rounds up to at least the incumbent are
//! pruned.
//!
//! Work is budgeted in simplex pivots, the one step whose cost is roughly
//! constant per tableau. Exhausting the allowance is not an error: the
//! search stops and reports the strongest bound it has proven so far,
//! which is the minimum of the incumbent and every open subtree's
//! relaxation bound. That number is always a valid lower bound on the
//! integer optimum, merely not always the optimum itself.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::IntersectionTable;
use crate::qcombinat::SpaceParams;

/// Knobs for the integer program.
#[derive(Debug, Clone)]
pub struct IlpConfig {
    /// Also cap the first nonzero count by its sphere size (A_δ ≤ N_δ).
    /// The distribution interpretation always satisfies this; keeping it
    /// on shrinks the search space and never weakens the bound.
    pub cap_first_nonzero: bool,
    /// Simplex pivots per call, shared by every δ, before the search
    /// stops and settles for the best bound proven by then.
    pub pivot_limit: u64,
}

impl Default for IlpConfig {
    fn default() -> Self {
        IlpConfig { cap_first_nonzero: true, pivot_limit: 20_000 }
    }
}

/// A lower bound together with whether it was certified optimal or cut
/// short by the pivot budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpBound {
    pub value: BigInt,
    pub certified: bool,
}

/// max_{0 ≤ δ ≤ ρ} T_δ. Requires ρ ≤ n.
pub fn ilp_lower_bound(params: &SpaceParams, rho: u32, config: &IlpConfig) -> Result<BigInt> {
    ilp_lower_bound_status(params, rho, config).map(|b| b.value)
}

/// Like [`ilp_lower_bound`] but says whether every δ certified its
/// optimum within the pivot budget.
pub fn ilp_lower_bound_status(
    params: &SpaceParams,
    rho: u32,
    config: &IlpConfig,
) -> Result<IlpBound> {
    if rho > params.n() {
        return Err(Error::InvalidParams(format!(
            "rho = {rho} exceeds n = {}",
            params.n()
        )));
    }
    let table = IntersectionTable::build(params)?;
    let mut best = BigInt::zero();
    let mut certified = true;
    let mut work = config.pivot_limit;
    for delta in 0..=rho {
        let t = t_delta_from_table(&table, rho, delta, config, &mut work)?;
        if t.value > best {
            best = t.value;
        }
        certified &= t.certified;
    }
    Ok(IlpBound { value: best, certified })
}

/// T_δ alone. Requires δ ≤ ρ ≤ n.
pub fn ilp_t_delta(
    params: &SpaceParams,
    rho: u32,
    delta: u32,
    config: &IlpConfig,
) -> Result<BigInt> {
    if rho > params.n() || delta > rho {
        return Err(Error::InvalidParams(format!(
            "need delta <= rho <= n, got delta = {delta}, rho = {rho}, n = {}",
            params.n()
        )));
    }
    let table = IntersectionTable::build(params)?;
    let mut work = config.pivot_limit;
    t_delta_from_table(&table, rho, delta, config, &mut work).map(|b| b.value)
}

fn t_delta_from_table(
    table: &IntersectionTable,
    rho: u32,
    delta: u32,
    config: &IlpConfig,
    work: &mut u64,
) -> Result<IlpBound> {
    let params = table.params();
    let n = params.n();
    // Variable t stands for A_{δ+t}, t = 0..=n-δ.
    let nv = (n - delta + 1) as usize;
    let spheres: Vec<BigInt> = (delta..=n).map(|i| params.sphere_size(i)).collect();

    // weights[r][t] = Σ_{s ≤ ρ} J(r, s, δ+t): how many of the N_r vectors
    // at distance r a single codeword at distance δ+t covers.
    let mut weights = Vec::with_capacity(n as usize + 1);
    let mut rhs = Vec::with_capacity(n as usize + 1);
    for r in 0..=n {
        let mut row = Vec::with_capacity(nv);
        for t in 0..nv {
            let i = delta + t as u32;
            let mut acc = BigInt::zero();
            for s in 0..=rho {
                acc += table.sphere(r, s, i);
            }
            row.push(acc);
        }
        weights.push(row);
        rhs.push(params.sphere_size(r));
    }

    let mut lo = vec![BigInt::zero(); nv];
    lo[0] = BigInt::one();
    let mut hi: Vec<Option<BigInt>> = (0..nv).map(|t| Some(spheres[t].clone())).collect();
    if !config.cap_first_nonzero {
        hi[0] = None;
    }

    // A_i = N_i for all i ≥ δ is feasible, so this starts finite.
    let incumbent: BigInt = spheres.iter().sum();

    branch_and_bound(&weights, &rhs, lo, hi, incumbent, work)
}

fn branch_and_bound(
    weights: &[Vec<BigInt>],
    rhs: &[BigInt],
    lo0: Vec<BigInt>,
    hi0: Vec<Option<BigInt>>,
    mut incumbent: BigInt,
    work: &mut u64,
) -> Result<IlpBound> {
    // Each stack entry carries the relaxation bound of the subtree rooted
    // there (for the root, Σ lo: the variables cannot sum to less). The
    // subtree optimum is never below it, which is what makes stopping
    // early sound.
    let root_bound: BigInt = lo0.iter().sum();
    let mut stack = vec![(lo0, hi0, root_bound)];
    while let Some((lo, hi, carried)) = stack.pop() {
        let (obj, solution) = match solve_lp(weights, rhs, &lo, &hi, work)? {
            LpSolve::Optimal(obj, solution) => (obj, solution),
            LpSolve::Infeasible => continue,
            LpSolve::OutOfBudget => {
                // Everything resolved so far is summarized by the
                // incumbent; this node and the queued ones are open, so
                // their carried bounds cap what we can claim.
                let mut proven = incumbent.min(carried);
                for (_, _, b) in stack {
                    if b < proven {
                        proven = b;
                    }
                }
                return Ok(IlpBound { value: proven, certified: false });
            }
        };
        let node_bound = obj.ceil().to_integer();
        if node_bound >= incumbent {
            continue;
        }
        match most_fractional(&solution) {
            None => {
                // Integral and, by the check above, strictly better.
                incumbent = obj.to_integer();
            }
            Some(t) => {
                let floor = solution[t].floor().to_integer();
                let mut lo_up = lo.clone();
                let mut hi_down = hi.clone();
                hi_down[t] = Some(floor.clone());
                lo_up[t] = floor + 1;
                // Pushed second so the floor branch is explored first.
                stack.push((lo_up, hi, node_bound.clone()));
                stack.push((lo, hi_down, node_bound));
            }
        }
    }
    Ok(IlpBound { value: incumbent, certified: true })
}

/// Index of the variable farthest from integrality, ties to the lowest
/// index; `None` when everything is integral.
fn most_fractional(solution: &[BigRational]) -> Option<usize> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut best: Option<(usize, BigRational)> = None;
    for (t, x) in solution.iter().enumerate() {
        let frac = x - x.floor();
        if frac.is_zero() {
            continue;
        }
        let dist = if frac > half { BigRational::one() - &frac } else { frac };
        match &best {
            Some((_, d)) if *d >= dist => {}
            _ => best = Some((t, dist)),
        }
    }
    best.map(|(t, _)| t)
}

enum LpSolve {
    Optimal(BigRational, Vec<BigRational>),
    Infeasible,
    OutOfBudget,
}

/// Minimizes Σ x over x with lo ≤ x ≤ hi (hi entry `None` = unbounded)
/// and Σ_t weights[r][t] x_t ≥ rhs[r] for every row r. Pivots in the
/// two simplex phases draw down `work`; the handful spent evicting
/// leftover artificials are not counted, being bounded by the row count.
fn solve_lp(
    weights: &[Vec<BigInt>],
    rhs: &[BigInt],
    lo: &[BigInt],
    hi: &[Option<BigInt>],
    work: &mut u64,
) -> Result<LpSolve> {
    let nv = lo.len();

    // Shift to y = x - lo ≥ 0.
    let mut cover_rows: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    for (row, b) in weights.iter().zip(rhs) {
        let shift: BigInt = row.iter().zip(lo).map(|(w, l)| w * l).sum();
        let need = b - shift;
        // Weights are nonnegative, so rows with need ≤ 0 hold for any
        // y ≥ 0 and can be dropped.
        if need.is_positive() {
            cover_rows.push((row.clone(), need));
        }
    }
    let mut ub_rows: Vec<(usize, BigInt)> = Vec::new();
    for t in 0..nv {
        if let Some(h) = &hi[t] {
            let room = h - &lo[t];
            if room.is_negative() {
                return Ok(LpSolve::Infeasible);
            }
            ub_rows.push((t, room));
        }
    }

    let n_cover = cover_rows.len();
    let n_ub = ub_rows.len();
    let n_rows = n_cover + n_ub;
    // Columns: nv structural | n_cover surplus | n_ub slack |
    // n_cover artificial | rhs.
    let n_struct = nv;
    let surplus0 = n_struct;
    let slack0 = surplus0 + n_cover;
    let art0 = slack0 + n_ub;
    let n_cols = art0 + n_cover;

    let zero = || BigRational::zero();
    let mut tab: Vec<Vec<BigRational>> = vec![vec![zero(); n_cols + 1]; n_rows];
    let mut basis: Vec<usize> = vec![0; n_rows];

    for (idx, (row, need)) in cover_rows.iter().enumerate() {
        for t in 0..nv {
            tab[idx][t] = BigRational::from(row[t].clone());
        }
        tab[idx][surplus0 + idx] = -BigRational::one();
        tab[idx][art0 + idx] = BigRational::one();
        tab[idx][n_cols] = BigRational::from(need.clone());
        basis[idx] = art0 + idx;
    }
    for (idx, (t, room)) in ub_rows.iter().enumerate() {
        let r = n_cover + idx;
        tab[r][*t] = BigRational::one();
        tab[r][slack0 + idx] = BigRational::one();
        tab[r][n_cols] = BigRational::from(room.clone());
        basis[r] = slack0 + idx;
    }

    // Phase 1: minimize the artificial sum, whose reduced-cost row is
    // the negated sum of the artificial-basic rows.
    let mut z = vec![zero(); n_cols + 1];
    for row in tab.iter().take(n_cover) {
        for (zc, v) in z.iter_mut().zip(row) {
            *zc -= v;
        }
    }
    for c in art0..n_cols {
        z[c] += BigRational::one();
    }
    if !simplex(&mut tab, &mut z, &mut basis, n_cols, n_cols, work)? {
        return Ok(LpSolve::OutOfBudget);
    }
    // Optimal phase-1 value is -z[rhs].
    if !z[n_cols].is_zero() {
        return Ok(LpSolve::Infeasible);
    }

    // Drive leftover artificials out of the basis; rows that cannot be
    // pivoted are all-zero (redundant) and are deleted.
    let mut r = 0;
    while r < tab.len() {
        if basis[r] >= art0 {
            if let Some(c) = (0..art0).find(|&c| !tab[r][c].is_zero()) {
                pivot(&mut tab, &mut z, &mut basis, r, c, n_cols);
            } else {
                tab.remove(r);
                basis.remove(r);
                continue;
            }
        }
        r += 1;
    }

    // Phase 2: minimize Σ y.
    let mut z = vec![zero(); n_cols + 1];
    for c in 0..n_struct {
        z[c] = BigRational::one();
    }
    for (r, row) in tab.iter().enumerate() {
        if basis[r] < n_struct {
            for (zc, v) in z.iter_mut().zip(row) {
                *zc -= v;
            }
        }
    }
    if !simplex(&mut tab, &mut z, &mut basis, art0, n_cols, work)? {
        return Ok(LpSolve::OutOfBudget);
    }

    let mut y = vec![zero(); nv];
    for (r, &b) in basis.iter().enumerate() {
        if b < nv {
            y[b] = tab[r][n_cols].clone();
        }
    }
    let solution: Vec<BigRational> =
        y.iter().zip(lo).map(|(yi, l)| yi + BigRational::from(l.clone())).collect();
    let obj: BigRational = solution.iter().sum();
    Ok(LpSolve::Optimal(obj, solution))
}

/// Primal simplex with Bland's rule. Columns at `allowed_cols` and beyond
/// never enter the basis (used to wall off artificials in phase 2).
/// Returns false when `work` ran dry before optimality.
fn simplex(
    tab: &mut Vec<Vec<BigRational>>,
    z: &mut [BigRational],
    basis: &mut Vec<usize>,
    allowed_cols: usize,
    rhs_col: usize,
    work: &mut u64,
) -> Result<bool> {
    loop {
        let Some(enter) = (0..allowed_cols).find(|&c| z[c].is_negative()) else {
            return Ok(true);
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..tab.len() {
            if tab[r][enter].is_positive() {
                let ratio = &tab[r][rhs_col] / &tab[r][enter];
                match &leave {
                    Some((lr, lratio))
                        if *lratio < ratio
                            || (*lratio == ratio && basis[*lr] < basis[r]) => {}
                    _ => leave = Some((r, ratio)),
                }
            }
        }
        let Some((row, _)) = leave else {
            // Both phases minimize objectives bounded below by zero, so a
            // ray of descent cannot exist.
            return Err(Error::ArithmeticBug(
                "simplex detected an unbounded direction in a bounded program".into(),
            ));
        };
        if *work == 0 {
            return Ok(false);
        }
        *work -= 1;
        pivot(tab, z, basis, row, enter, rhs_col);
    }
}

fn pivot(
    tab: &mut [Vec<BigRational>],
    z: &mut [BigRational],
    basis: &mut [usize],
    row: usize,
    col: usize,
    rhs_col: usize,
) {
    let piv = tab[row][col].clone();
    for v in tab[row].iter_mut() {
        *v /= &piv;
    }
    for r in 0..tab.len() {
        if r != row && !tab[r][col].is_zero() {
            let factor = tab[r][col].clone();
            for c in 0..=rhs_col {
                let delta = &factor * &tab[row][c];
                tab[r][c] -= delta;
            }
        }
    }
    if !z[col].is_zero() {
        let factor = z[col].clone();
        for c in 0..=rhs_col {
            let delta = &factor * &tab[row][c];
            z[c] -= delta;
        }
    }
    basis[row] = col;
}
