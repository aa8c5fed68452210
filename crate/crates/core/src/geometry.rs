//! Exact intersection numbers of rank-metric spheres and balls, and the
//! union volume bound built from them.
//!
//! `sphere_intersection(u, s, w)` counts, for any two centers at rank
//! distance w, the vectors at distance u from the first and s from the
//! second. The association scheme makes this independent of the choice of
//! centers and expressible through the Krawtchouk eigenvalues:
//!
//! ```text
//! J(u, s, w) = (1 / (q^{mn} N_w)) · Σ_i N_i K_u(i) K_s(i) K_w(i)
//! ```
//!
//! where N_i is the sphere size. The division is exact; a nonzero
//! remainder is reported as an internal arithmetic bug.
//!
//! Summing J over u ≤ a, s ≤ b gives the ball intersection I(a, b, w).
//! I(ρ, ρ, w), abbreviated I(ρ, w), drives the union bound B(K): the
//! maximum number of vectors that K balls of radius ρ can cover, computed
//! by placing centers far apart first and charging each new ball only for
//! what it cannot share with a farthest previous center.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::krawtchouk::KrawtchoukTable;
use crate::qcombinat::SpaceParams;

fn check_indices(params: &SpaceParams, u: u32, s: u32, w: u32) -> Result<()> {
    let n = params.n();
    if u > n || s > n || w > n {
        return Err(Error::IndexOutOfRange(format!(
            "distances (u={u}, s={s}, w={w}) exceed n={n}"
        )));
    }
    Ok(())
}

/// J(u, s, w) computed from scratch. Prefer [`IntersectionTable`] when
/// more than a few values are needed.
pub fn sphere_intersection(params: &SpaceParams, u: u32, s: u32, w: u32) -> Result<BigInt> {
    check_indices(params, u, s, w)?;
    let table = IntersectionTable::build(params)?;
    Ok(table.sphere(u, s, w).clone())
}

/// I(a, b, w) = Σ_{u ≤ a, s ≤ b} J(u, s, w): vectors within distance a of
/// one center and b of another, the centers being w apart.
pub fn ball_intersection(params: &SpaceParams, a: u32, b: u32, w: u32) -> Result<BigInt> {
    check_indices(params, a, b, w)?;
    let table = IntersectionTable::build(params)?;
    Ok(table.ball(a, b, w).clone())
}

/// Every J and I value for one parameter set, with consistency checks
/// performed once at build time.
#[derive(Debug, Clone)]
pub struct IntersectionTable {
    params: SpaceParams,
    dim: usize,
    /// sphere[idx(u, s, w)] = J(u, s, w)
    sphere: Vec<BigInt>,
    /// ball[idx(a, b, w)] = I(a, b, w)
    ball: Vec<BigInt>,
}

impl IntersectionTable {
    pub fn build(params: &SpaceParams) -> Result<Self> {
        let kt = KrawtchoukTable::build(params)?;
        Self::from_krawtchouk(&kt)
    }

    pub fn from_krawtchouk(kt: &KrawtchoukTable) -> Result<Self> {
        let params = *kt.params();
        let n = params.n() as usize;
        let dim = n + 1;
        let space = params.space_size();
        let spheres: Vec<BigInt> =
            (0..dim).map(|r| params.sphere_size(r as u32)).collect();

        let mut sphere = vec![BigInt::zero(); dim * dim * dim];
        for w in 0..dim {
            let denom = &space * &spheres[w];
            for u in 0..dim {
                for s in 0..=u {
                    let mut acc = BigInt::zero();
                    for i in 0..dim {
                        acc += &spheres[i]
                            * kt.get(u as u32, i as u32)
                            * kt.get(s as u32, i as u32)
                            * kt.get(w as u32, i as u32);
                    }
                    let (quot, rem) = acc.div_rem(&denom);
                    if !rem.is_zero() {
                        return Err(Error::ArithmeticBug(format!(
                            "J({u}, {s}, {w}) is not integral for {params:?}"
                        )));
                    }
                    if quot.is_negative() {
                        return Err(Error::ArithmeticBug(format!(
                            "J({u}, {s}, {w}) = {quot} is negative for {params:?}"
                        )));
                    }
                    // J is symmetric in its first two arguments.
                    sphere[(u * dim + s) * dim + w] = quot.clone();
                    sphere[(s * dim + u) * dim + w] = quot;
                }
            }
        }

        // Row sums: fixing the two centers, every vector has some distance
        // s to the second one, so Σ_s J(u, s, w) recovers the sphere N_u.
        for u in 0..dim {
            for w in 0..dim {
                let total: BigInt =
                    (0..dim).map(|s| &sphere[(u * dim + s) * dim + w]).sum();
                if total != spheres[u] {
                    return Err(Error::ArithmeticBug(format!(
                        "Σ_s J({u}, s, {w}) = {total}, expected sphere size {}",
                        spheres[u]
                    )));
                }
            }
        }
        // N_w J(u, s, w) counts ordered triangles with side pattern
        // (u, s, w) and is invariant under relabeling the three vertices.
        for u in 0..dim {
            for s in 0..dim {
                for w in 0..dim {
                    let t = &spheres[w] * &sphere[(u * dim + s) * dim + w];
                    let t2 = &spheres[u] * &sphere[(w * dim + s) * dim + u];
                    if t != t2 {
                        return Err(Error::ArithmeticBug(format!(
                            "triangle count not symmetric at ({u}, {s}, {w})"
                        )));
                    }
                }
            }
        }

        let mut ball = vec![BigInt::zero(); dim * dim * dim];
        for w in 0..dim {
            for a in 0..dim {
                for b in 0..dim {
                    let mut acc = sphere[(a * dim + b) * dim + w].clone();
                    if a > 0 {
                        acc += &ball[((a - 1) * dim + b) * dim + w];
                    }
                    if b > 0 {
                        acc += &ball[(a * dim + (b - 1)) * dim + w];
                    }
                    if a > 0 && b > 0 {
                        acc -= &ball[((a - 1) * dim + (b - 1)) * dim + w];
                    }
                    ball[(a * dim + b) * dim + w] = acc;
                }
            }
        }

        Ok(IntersectionTable { params, dim, sphere, ball })
    }

    pub fn params(&self) -> &SpaceParams {
        &self.params
    }

    /// J(u, s, w); panics if an index exceeds n.
    pub fn sphere(&self, u: u32, s: u32, w: u32) -> &BigInt {
        assert!(
            (u as usize) < self.dim && (s as usize) < self.dim && (w as usize) < self.dim,
            "intersection index out of range"
        );
        &self.sphere[(u as usize * self.dim + s as usize) * self.dim + w as usize]
    }

    /// I(a, b, w); panics if an index exceeds n.
    pub fn ball(&self, a: u32, b: u32, w: u32) -> &BigInt {
        assert!(
            (a as usize) < self.dim && (b as usize) < self.dim && (w as usize) < self.dim,
            "intersection index out of range"
        );
        &self.ball[(a as usize * self.dim + b as usize) * self.dim + w as usize]
    }

    /// I(ρ, w), the overlap of two radius-ρ balls with centers w apart.
    pub fn ball_same_radius(&self, rho: u32, w: u32) -> &BigInt {
        self.ball(rho.min(self.params.n()), rho.min(self.params.n()), w)
    }
}

/// Upper bound B(K) on the volume of a union of K balls of radius ρ.
///
/// Centers are charged in layers: the first ball contributes the full
/// ball volume v, each of the next q^{am} − q^{(a-1)m} balls at most
/// v − I(ρ, n−a+1), and the remainder beyond q^{lm} centers at most
/// v − I(ρ, n−l), where l = min(⌊log_{q^m} K⌋, n). The result is capped
/// at the space size.
pub fn union_volume_bound(params: &SpaceParams, rho: u32, k: &BigInt) -> Result<BigInt> {
    let table = UnionBoundTable::build(params, rho)?;
    table.eval(k)
}

/// Precomputed pieces of B(K) for one (params, ρ), so that repeated
/// evaluations inside the greedy recursions cost O(1) big-int operations.
#[derive(Debug, Clone)]
pub struct UnionBoundTable {
    params: SpaceParams,
    space: BigInt,
    /// (q^m)^a for a in 0..=n.
    field_pows: Vec<BigInt>,
    /// prefix[l] = v + Σ_{a=1}^{l} (q^{am} − q^{(a-1)m}) (v − I(ρ, n−a+1)).
    prefix: Vec<BigInt>,
    /// tail[l] = v − I(ρ, n−l), the per-ball charge past q^{lm} centers.
    tail: Vec<BigInt>,
}

impl UnionBoundTable {
    pub fn build(params: &SpaceParams, rho: u32) -> Result<Self> {
        if rho > params.n() {
            return Err(Error::InvalidParams(format!(
                "rho = {rho} exceeds n = {}",
                params.n()
            )));
        }
        let it = IntersectionTable::build(params)?;
        Self::from_intersections(&it, rho)
    }

    pub fn from_intersections(it: &IntersectionTable, rho: u32) -> Result<Self> {
        let params = *it.params();
        let n = params.n();
        if rho > n {
            return Err(Error::InvalidParams(format!("rho = {rho} exceeds n = {n}")));
        }
        let v = params.ball_volume(rho);
        let qm = params.field_size();
        let mut field_pows = Vec::with_capacity(n as usize + 1);
        field_pows.push(BigInt::one());
        for _ in 0..n {
            let next = field_pows.last().unwrap() * &qm;
            field_pows.push(next);
        }
        let mut prefix = Vec::with_capacity(n as usize + 1);
        let mut tail = Vec::with_capacity(n as usize + 1);
        prefix.push(v.clone());
        tail.push(&v - it.ball_same_radius(rho, n));
        for a in 1..=n {
            let new_centers = &field_pows[a as usize] - &field_pows[a as usize - 1];
            let charge = &v - it.ball_same_radius(rho, n - a + 1);
            let p = prefix.last().unwrap() + new_centers * charge;
            prefix.push(p);
            tail.push(&v - it.ball_same_radius(rho, n - a));
        }
        Ok(UnionBoundTable {
            params,
            space: params.space_size(),
            field_pows,
            prefix,
            tail,
        })
    }

    pub fn params(&self) -> &SpaceParams {
        &self.params
    }

    /// B(k) for k ≥ 1.
    pub fn eval(&self, k: &BigInt) -> Result<BigInt> {
        if k < &BigInt::one() {
            return Err(Error::InvalidParams(format!(
                "union bound needs at least one ball, got k = {k}"
            )));
        }
        let mut level = self.params.n();
        Ok(self.eval_hinted(k, &mut level))
    }

    /// Like `eval` but reuses a caller-held level l between calls. The
    /// recursions evaluate B on a non-increasing sequence of k, so l only
    /// ever steps down; starting from the previous level makes the search
    /// amortized O(1). Requires 1 ≤ k and level ≥ ⌊log_{q^m} k⌋ clamped
    /// to n.
    pub(crate) fn eval_hinted(&self, k: &BigInt, level: &mut u32) -> BigInt {
        debug_assert!(k >= &BigInt::one());
        while *level > 0 && &self.field_pows[*level as usize] > k {
            *level -= 1;
        }
        let l = *level as usize;
        let mut b = &self.prefix[l] + (k - &self.field_pows[l]) * &self.tail[l];
        if b > self.space {
            b = self.space.clone();
        }
        b
    }
}
