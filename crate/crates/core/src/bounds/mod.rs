//! Lower and upper bounds on K(q^m, n, ρ), the minimum cardinality of a
//! code in GF(q^m)^n with rank covering radius ρ.
//!
//! Lower bounds: sphere covering (`sphere_covering_lower_bound`) and an
//! exact integer program over distance distributions (`ilp_lower_bound`).
//!
//! Upper bounds: a greedy argument (`greedy_upper_bound`) showing how fast
//! the uncovered count must shrink as codewords are added one by one, its
//! refinement seeded with a maximum-rank-distance code and a coverage
//! guarantee for each new codeword (`refined_upper_bound`), and a closed
//! form counting an explicit covering code (`construction_upper_bound`).
//!
//! `best_bounds` runs a requested subset of methods within explicit
//! budgets and aggregates the strongest valid bound in each direction,
//! never substituting a weaker number when a method runs out of budget.

mod ilp;

pub use ilp::{ilp_lower_bound, ilp_t_delta, IlpConfig};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{IntersectionTable, UnionBoundTable};
use crate::qcombinat::{binomial, gauss_binomial, q_choose2_pow, SpaceParams};

/// ⌈q^{mn} / v(ρ)⌉: balls of radius ρ around codewords must cover the
/// space. Requires ρ ≤ n.
pub fn sphere_covering_lower_bound(params: &SpaceParams, rho: u32) -> Result<BigInt> {
    if rho > params.n() {
        return Err(Error::InvalidParams(format!(
            "rho = {rho} exceeds n = {}",
            params.n()
        )));
    }
    Ok(params.space_size().div_ceil(&params.ball_volume(rho)))
}

/// Number of words of rank weight r in a maximum-rank-distance code of
/// minimum distance d on this space (such codes exist for every
/// 1 ≤ d ≤ n when n ≤ m):
///
/// ```text
/// M(d, 0) = 1,   M(d, r) = 0 for 0 < r < d,
/// M(d, r) = [n r]_q Σ_{j=0}^{r-d} (-1)^j q^C(j,2) [r j]_q (q^{m(r-d+1-j)} − 1).
/// ```
pub fn mrd_weight_distribution(params: &SpaceParams, d: u32, r: u32) -> Result<BigInt> {
    let n = params.n();
    if d == 0 || d > n {
        return Err(Error::InvalidParams(format!(
            "minimum distance d = {d} must lie in 1..={n}"
        )));
    }
    if r > n {
        return Err(Error::IndexOutOfRange(format!("rank r = {r} exceeds n = {n}")));
    }
    if r == 0 {
        return Ok(BigInt::one());
    }
    if r < d {
        return Ok(BigInt::zero());
    }
    let q = params.q();
    let m = params.m();
    let mut acc = BigInt::zero();
    for j in 0..=(r - d) {
        let mut term = q_choose2_pow(q, j) * gauss_binomial(q, r, j);
        term *= BigInt::from(q).pow(m * (r - d + 1 - j)) - BigInt::one();
        if j % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    let out = gauss_binomial(q, n, r) * acc;
    if out.is_negative() {
        return Err(Error::ArithmeticBug(format!(
            "weight distribution M({d}, {r}) came out negative"
        )));
    }
    Ok(out)
}

/// One greedy descent step: with k codewords placed and u vectors still
/// uncovered, some new codeword covers at least ⌈u v / min(q^{mn}−k, B(u))⌉
/// of them.
fn greedy_step(
    u: &BigInt,
    v: &BigInt,
    space_minus_k: &BigInt,
    btable: &UnionBoundTable,
    hint: &mut u32,
) -> BigInt {
    let b = btable.eval_hinted(u, hint);
    let denom = if space_minus_k < &b { space_minus_k } else { &b };
    let next = u - (u * v).div_ceil(denom);
    if next.is_negative() {
        BigInt::zero()
    } else {
        next
    }
}

/// Iterates the greedy descent from a seed code of `seed_size` codewords
/// leaving `seed_uncovered` vectors uncovered, returning the cardinality
/// at which the uncovered count provably reaches zero. Each iteration
/// adds one codeword; more than `step_limit` iterations aborts with
/// `Unavailable`.
pub fn greedy_upper_bound(
    params: &SpaceParams,
    rho: u32,
    seed_size: &BigInt,
    seed_uncovered: &BigInt,
    step_limit: u64,
) -> Result<BigInt> {
    if rho > params.n() {
        return Err(Error::InvalidParams(format!(
            "rho = {rho} exceeds n = {}",
            params.n()
        )));
    }
    if seed_size < &BigInt::one() {
        return Err(Error::InvalidParams(format!(
            "seed size must be at least 1, got {seed_size}"
        )));
    }
    let space = params.space_size();
    if seed_uncovered.is_negative() || seed_uncovered > &space {
        return Err(Error::InvalidParams(format!(
            "seed uncovered count {seed_uncovered} outside 0..=q^{{mn}}"
        )));
    }
    if seed_uncovered.is_zero() {
        return Ok(seed_size.clone());
    }
    let btable = UnionBoundTable::build(params, rho)?;
    let v = params.ball_volume(rho);
    let mut u = seed_uncovered.clone();
    let mut k = seed_size.clone();
    let mut space_minus_k = &space - &k;
    let mut hint = params.n();
    let mut steps = 0u64;
    while !u.is_zero() {
        steps += 1;
        if steps > step_limit {
            return Err(Error::Unavailable(format!(
                "greedy descent exceeded the step budget of {step_limit} \
                 with {u} vectors still uncovered"
            )));
        }
        u = greedy_step(&u, &v, &space_minus_k, &btable, &mut hint);
        k += 1;
        space_minus_k -= 1;
    }
    Ok(k)
}

/// Coverage guaranteed for the next codeword when the k codewords already
/// placed sit inside a chain of nested maximum-rank-distance codes: the
/// new word can be drawn from the smallest code in the chain containing
/// all k words plus one more, which keeps every previous word at distance
/// at least d_k = n − ⌈log_{q^m}(k+1)⌉ + 1 from it. A previous word at
/// distance l steals at most I(ρ, l) of the new ball, and the count of
/// words at each distance is capped by the weight distribution M(d_k, l),
/// worst case filling the smallest distances first. Floor at zero.
pub fn next_codeword_coverage(params: &SpaceParams, rho: u32, k: &BigInt) -> Result<BigInt> {
    if rho > params.n() {
        return Err(Error::InvalidParams(format!(
            "rho = {rho} exceeds n = {}",
            params.n()
        )));
    }
    if k < &BigInt::one() {
        return Err(Error::InvalidParams(format!("need k >= 1, got {k}")));
    }
    let it = IntersectionTable::build(params)?;
    let tracker = CoverageTracker::new(params, rho, &it, k)?;
    Ok(tracker.coverage().clone().max(BigInt::zero()))
}

/// Incremental evaluator of the per-step coverage guarantee.
///
/// For fixed d = d_k the guarantee is v(ρ) − Σ_l μ_l I(ρ, l), where μ
/// fills levels l = d, d+1, ... up to the weight-distribution caps
/// M(d, l) with total budget k. Raising k by one either deepens the
/// current partial level (one subtraction) or, on crossing a power of
/// q^m, rebuilds for the next smaller d. The raw value may go negative;
/// users floor it at zero.
struct CoverageTracker {
    v: BigInt,
    /// I(ρ, l) for l = 0..=n.
    overlaps: Vec<BigInt>,
    /// M(d, l) for l = d..=a at the current d, indexed from level d.
    caps: Vec<BigInt>,
    a: u32,
    n: u32,
    qm: BigInt,
    /// Current d and the cardinality at which it next decreases.
    d: u32,
    next_rebuild: BigInt,
    /// Raw coverage value at the current budget.
    cov: BigInt,
    /// Level currently being filled (absolute l), and room left in it.
    fill_level: u32,
    room: BigInt,
    saturated: bool,
}

impl CoverageTracker {
    fn new(
        params: &SpaceParams,
        rho: u32,
        table: &IntersectionTable,
        k: &BigInt,
    ) -> Result<Self> {
        let n = params.n();
        let a = n.min(2 * rho);
        let overlaps: Vec<BigInt> =
            (0..=n).map(|l| table.ball_same_radius(rho, l).clone()).collect();
        let mut tracker = CoverageTracker {
            v: params.ball_volume(rho),
            overlaps,
            caps: Vec::new(),
            a,
            n,
            qm: params.field_size(),
            d: 0,
            next_rebuild: BigInt::zero(),
            cov: BigInt::zero(),
            fill_level: 0,
            room: BigInt::zero(),
            saturated: false,
        };
        tracker.rebuild(params, k)?;
        Ok(tracker)
    }

    /// Recomputes everything for the d implied by cardinality k.
    fn rebuild(&mut self, params: &SpaceParams, k: &BigInt) -> Result<()> {
        // ⌈log_{q^m}(k+1)⌉ and the end of this d's range of k.
        let target = k + BigInt::one();
        let mut t = 0u32;
        let mut pow = BigInt::one();
        while pow < target {
            if t == self.n {
                return Err(Error::InvalidParams(format!(
                    "cardinality {k} exceeds the space size"
                )));
            }
            pow *= &self.qm;
            t += 1;
        }
        self.next_rebuild = pow; // d drops once k reaches q^{mt}
        let d = self.n - t + 1;
        self.d = d;

        self.caps.clear();
        self.cov = self.v.clone();
        self.fill_level = self.a + 1;
        self.room = BigInt::zero();
        self.saturated = true;

        // With d ≤ n this is exactly the d ≥ 2ρ + 1 case: no previous
        // word can reach into the new ball at all.
        if d > self.a {
            return Ok(());
        }

        for l in d..=self.a {
            self.caps.push(mrd_weight_distribution(params, d, l)?);
        }
        let mut budget = k.clone();
        for l in d..=self.a {
            let cap = &self.caps[(l - d) as usize];
            if &budget >= cap {
                self.cov -= cap * &self.overlaps[l as usize];
                budget -= cap;
            } else {
                self.cov -= &budget * &self.overlaps[l as usize];
                self.fill_level = l;
                self.room = cap - &budget;
                self.saturated = false;
                return Ok(());
            }
        }
        // Budget filled every level; coverage is constant until d drops.
        Ok(())
    }

    /// Raw (unfloored) coverage at the current budget.
    fn coverage(&self) -> &BigInt {
        &self.cov
    }

    /// Moves the budget from k to k+1.
    fn advance(&mut self, params: &SpaceParams, k_next: &BigInt) -> Result<()> {
        if *k_next >= self.next_rebuild {
            return self.rebuild(params, k_next);
        }
        if self.saturated {
            return Ok(());
        }
        // One more unit lands in the current partial level.
        self.cov -= &self.overlaps[self.fill_level as usize];
        self.room -= 1;
        while self.room.is_zero() {
            self.fill_level += 1;
            if self.fill_level > self.a {
                self.saturated = true;
                return Ok(());
            }
            self.room = self.caps[(self.fill_level - self.d) as usize].clone();
        }
        Ok(())
    }
}

/// Upper bound from the refined greedy recursion.
///
/// Seeds with a maximum-rank-distance code of q^{m(n−a)} words,
/// a = min(n, 2ρ), then adds words one at a time, tracking two parallel
/// guarantees on how many vectors remain uncovered: the plain greedy
/// descent and the running total of per-step coverage guarantees from
/// `next_codeword_coverage` (both valid simultaneously because the
/// construction keeps the code nested inside larger such codes). Stops at
/// the first cardinality where either guarantee hits zero. Iterations
/// beyond `step_limit` abort with `Unavailable`.
pub fn refined_upper_bound(params: &SpaceParams, rho: u32, step_limit: u64) -> Result<BigInt> {
    let n = params.n();
    if rho > n {
        return Err(Error::InvalidParams(format!("rho = {rho} exceeds n = {n}")));
    }
    let a = n.min(2 * rho);
    let k0 = BigInt::from(params.q()).pow(params.m() * (n - a));
    let v = params.ball_volume(rho);
    let space = params.space_size();

    let mut u = &space - &k0 * &v;
    if !u.is_positive() {
        return Ok(k0);
    }
    let mut h = u.clone();

    let it = IntersectionTable::build(params)?;
    let btable = UnionBoundTable::from_intersections(&it, rho)?;
    let mut tracker = CoverageTracker::new(params, rho, &it, &k0)?;

    let mut k = k0;
    let mut space_minus_k = &space - &k;
    let mut hint = n;
    let mut steps = 0u64;
    loop {
        steps += 1;
        if steps > step_limit {
            return Err(Error::Unavailable(format!(
                "refined descent exceeded the step budget of {step_limit} \
                 with {u} vectors still uncovered; raise the budget to continue"
            )));
        }
        let cov = tracker.coverage();
        let mut h_next = &h - cov.max(&BigInt::zero());
        if h_next.is_negative() {
            h_next = BigInt::zero();
        }
        let g_next = greedy_step(&u, &v, &space_minus_k, &btable, &mut hint);
        let u_next = if h_next < g_next { h_next.clone() } else { g_next };

        k += 1;
        space_minus_k -= 1;
        h = h_next;
        u = u_next;
        if u.is_zero() {
            return Ok(k);
        }
        tracker.advance(params, &k)?;
    }
}

/// Cardinality of an explicit covering code: matrices whose top ρ rows
/// vanish and whose nonzero columns number at most n − ρ. See
/// `exactcodes::standard_cover_code` for the code itself and the
/// procedure that covers any matrix within distance ρ.
pub fn construction_upper_bound(params: &SpaceParams, rho: u32) -> Result<BigInt> {
    let n = params.n();
    if rho > n {
        return Err(Error::InvalidParams(format!("rho = {rho} exceeds n = {n}")));
    }
    let column_choices = BigInt::from(params.q()).pow(params.m() - rho) - BigInt::one();
    let mut acc = BigInt::zero();
    let mut pow = BigInt::one();
    for i in 0..=(n - rho) {
        acc += binomial(n as u64, i as u64) * &pow;
        pow *= &column_choices;
    }
    Ok(acc)
}

/// Which side of K a method bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Lower,
    Upper,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
        })
    }
}

/// The bound methods, in the tag vocabulary used by the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Ilp,
    SphereCovering,
    Greedy,
    MrdRefined,
    Construction,
    SingletonTrivial,
    OracleExact,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Ilp,
        Method::SphereCovering,
        Method::Greedy,
        Method::MrdRefined,
        Method::Construction,
        Method::SingletonTrivial,
        Method::OracleExact,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Method::Ilp => "ilp",
            Method::SphereCovering => "sphere-covering",
            Method::Greedy => "greedy",
            Method::MrdRefined => "mrd-refined",
            Method::Construction => "construction",
            Method::SingletonTrivial => "singleton-trivial",
            Method::OracleExact => "oracle-exact",
        }
    }

    pub fn bounds_lower(&self) -> bool {
        matches!(
            self,
            Method::Ilp | Method::SphereCovering | Method::SingletonTrivial | Method::OracleExact
        )
    }

    pub fn bounds_upper(&self) -> bool {
        matches!(
            self,
            Method::Greedy
                | Method::MrdRefined
                | Method::Construction
                | Method::SingletonTrivial
                | Method::OracleExact
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.tag() == s)
            .ok_or_else(|| {
                let tags: Vec<&str> = Method::ALL.iter().map(|m| m.tag()).collect();
                Error::InvalidParams(format!(
                    "unknown method '{s}', expected one of: {}",
                    tags.join(", ")
                ))
            })
    }
}

/// A single computed bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub direction: Direction,
    pub value: BigInt,
    pub method: Method,
}

/// Work limits for the expensive methods. Exceeding one never costs
/// correctness: the integer program degrades to a weaker bound it has
/// still proven, while the descents and the oracle report `Unavailable`
/// and drop out of aggregation (an unfinished search is no bound at all).
#[derive(Debug, Clone)]
pub struct Budget {
    /// Simplex pivots per integer program, shared across its distances δ.
    pub ilp_pivots: u64,
    /// Iterations for the greedy and refined descents.
    pub recursion_steps: u64,
    /// Space-size cap and elementary-work budget for the exact oracle.
    pub enumeration: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { ilp_pivots: 20_000, recursion_steps: 2_000_000, enumeration: 1 << 22 }
    }
}

/// Best lower and upper bound found by the requested methods.
#[derive(Debug, Clone)]
pub struct BestBounds {
    pub lower: BoundResult,
    pub upper: BoundResult,
}

/// Runs every requested method applicable to each direction and keeps the
/// strongest result. Trivial bounds (1 below; the whole space above, or 1
/// when ρ = n) participate unconditionally, so both directions always
/// carry a value. A search method exceeding its budget is skipped (the
/// integer program instead degrades to a weaker proven bound); if every
/// requested method for a direction is skipped that way, the whole call
/// reports `Unavailable` rather than pretending the trivial bound was
/// asked for.
pub fn best_bounds(
    params: &SpaceParams,
    rho: u32,
    methods: &[Method],
    budget: &Budget,
) -> Result<BestBounds> {
    let n = params.n();
    if rho > n {
        return Err(Error::InvalidParams(format!("rho = {rho} exceeds n = {n}")));
    }
    if methods.is_empty() {
        return Err(Error::InvalidParams("no methods requested".into()));
    }

    // Degenerate radii have exact trivial answers.
    if rho == n {
        let one = BoundResult {
            direction: Direction::Lower,
            value: BigInt::one(),
            method: Method::SingletonTrivial,
        };
        return Ok(BestBounds {
            upper: BoundResult { direction: Direction::Upper, ..one.clone() },
            lower: one,
        });
    }
    if rho == 0 {
        let space = params.space_size();
        return Ok(BestBounds {
            lower: BoundResult {
                direction: Direction::Lower,
                value: space.clone(),
                method: Method::SingletonTrivial,
            },
            upper: BoundResult {
                direction: Direction::Upper,
                value: space,
                method: Method::SingletonTrivial,
            },
        });
    }

    let mut lower: Vec<(BigInt, Method)> = vec![(BigInt::one(), Method::SingletonTrivial)];
    let mut upper: Vec<(BigInt, Method)> =
        vec![(params.space_size(), Method::SingletonTrivial)];
    let mut lower_requested = 0u32;
    let mut lower_unavailable: Vec<String> = Vec::new();
    let mut upper_requested = 0u32;
    let mut upper_unavailable: Vec<String> = Vec::new();

    let mut oracle_value: Option<BigInt> = None;
    for &method in methods {
        match method {
            Method::SingletonTrivial => {}
            Method::SphereCovering => {
                lower_requested += 1;
                lower.push((sphere_covering_lower_bound(params, rho)?, method));
            }
            Method::Ilp => {
                lower_requested += 1;
                let config =
                    IlpConfig { pivot_limit: budget.ilp_pivots, ..IlpConfig::default() };
                // Budget exhaustion degrades to a weaker proven bound, so
                // this never lands in the unavailable bucket.
                lower.push((ilp_lower_bound(params, rho, &config)?, method));
            }
            Method::Construction => {
                upper_requested += 1;
                upper.push((construction_upper_bound(params, rho)?, method));
            }
            Method::MrdRefined => {
                upper_requested += 1;
                match refined_upper_bound(params, rho, budget.recursion_steps) {
                    Ok(v) => upper.push((v, method)),
                    Err(Error::Unavailable(msg)) => upper_unavailable.push(msg),
                    Err(e) => return Err(e),
                }
            }
            Method::Greedy => {
                upper_requested += 1;
                let seed_uncovered = params.space_size() - params.ball_volume(rho);
                match greedy_upper_bound(
                    params,
                    rho,
                    &BigInt::one(),
                    &seed_uncovered,
                    budget.recursion_steps,
                ) {
                    Ok(v) => upper.push((v, method)),
                    Err(Error::Unavailable(msg)) => upper_unavailable.push(msg),
                    Err(e) => return Err(e),
                }
            }
            Method::OracleExact => {
                lower_requested += 1;
                upper_requested += 1;
                match crate::exactcodes::exact_min_covering(params, rho, budget.enumeration) {
                    Ok(v) => oracle_value = Some(v),
                    Err(Error::Unavailable(msg)) | Err(Error::BudgetExceeded(msg)) => {
                        lower_unavailable.push(msg.clone());
                        upper_unavailable.push(msg);
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    if let Some(v) = oracle_value {
        lower.push((v.clone(), Method::OracleExact));
        upper.push((v, Method::OracleExact));
    }

    if lower_requested > 0 && lower.len() == 1 && !lower_unavailable.is_empty() {
        return Err(Error::Unavailable(lower_unavailable.join("; ")));
    }
    if upper_requested > 0 && upper.len() == 1 && !upper_unavailable.is_empty() {
        return Err(Error::Unavailable(upper_unavailable.join("; ")));
    }

    // Strongest value wins; on ties the method earlier in this list does.
    let lower_priority = [
        Method::OracleExact,
        Method::Ilp,
        Method::SphereCovering,
        Method::SingletonTrivial,
    ];
    let upper_priority = [
        Method::OracleExact,
        Method::Construction,
        Method::MrdRefined,
        Method::Greedy,
        Method::SingletonTrivial,
    ];
    let pos = |order: &[Method], m: Method| order.iter().position(|x| *x == m).unwrap();
    let best_lower = lower
        .into_iter()
        .max_by(|(va, ma), (vb, mb)| {
            va.cmp(vb)
                .then_with(|| pos(&lower_priority, *mb).cmp(&pos(&lower_priority, *ma)))
        })
        .unwrap();
    let best_upper = upper
        .into_iter()
        .min_by(|(va, ma), (vb, mb)| {
            va.cmp(vb)
                .then_with(|| pos(&upper_priority, *ma).cmp(&pos(&upper_priority, *mb)))
        })
        .unwrap();

    let out = BestBounds {
        lower: BoundResult {
            direction: Direction::Lower,
            value: best_lower.0,
            method: best_lower.1,
        },
        upper: BoundResult {
            direction: Direction::Upper,
            value: best_upper.0,
            method: best_upper.1,
        },
    };
    if out.lower.value > out.upper.value {
        return Err(Error::ArithmeticBug(format!(
            "lower bound {} exceeds upper bound {} at {params:?}, rho = {rho}",
            out.lower.value, out.upper.value
        )));
    }
    Ok(out)
}
