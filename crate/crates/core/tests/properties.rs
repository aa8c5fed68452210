//! Randomized identity checks: the closed-form tables against their
//! defining algebraic relations, and the union volume bound against
//! exact unions of random balls.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rankcov::exactcodes::union_ball_volume;
use rankcov::geometry::{IntersectionTable, UnionBoundTable};
use rankcov::krawtchouk::KrawtchoukTable;
use rankcov::qcombinat::SpaceParams;

fn small_params() -> impl Strategy<Value = SpaceParams> {
    (prop_oneof![Just(2u64), Just(3), Just(5)], 1u32..=4, 1u32..=4)
        .prop_map(|(q, m, n)| SpaceParams::new(q, m.max(n), m.min(n)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn krawtchouk_at_zero_is_sphere_size(params in small_params(), j in 0u32..=4) {
        let j = j.min(params.n());
        let table = KrawtchoukTable::build(&params).unwrap();
        prop_assert_eq!(table.get(j, 0), &params.sphere_size(j));
    }

    #[test]
    fn krawtchouk_orthogonality(params in small_params()) {
        // build() already enforces orthogonality internally; this spells
        // the sum out independently of that check.
        let table = KrawtchoukTable::build(&params).unwrap();
        let n = params.n();
        let space = params.space_size();
        for j in 0..=n {
            for l in 0..=n {
                let mut acc = BigInt::zero();
                for i in 0..=n {
                    acc += params.sphere_size(i) * table.get(j, i) * table.get(l, i);
                }
                let want = if j == l {
                    &space * params.sphere_size(j)
                } else {
                    BigInt::zero()
                };
                prop_assert_eq!(acc, want);
            }
        }
    }

    #[test]
    fn sphere_intersections_sum_to_sphere(params in small_params()) {
        let table = IntersectionTable::build(&params).unwrap();
        let n = params.n();
        for u in 0..=n {
            for w in 0..=n {
                let mut acc = BigInt::zero();
                for s in 0..=n {
                    acc += table.sphere(u, s, w);
                }
                prop_assert_eq!(acc, params.sphere_size(u), "u={} w={}", u, w);
            }
        }
    }

    #[test]
    fn weighted_intersections_are_symmetric(params in small_params()) {
        // N_w J(u, s, w) counts ordered triangles with side ranks
        // (u, s, w), so it cannot depend on the argument order.
        let table = IntersectionTable::build(&params).unwrap();
        let n = params.n();
        for u in 0..=n {
            for s in 0..=n {
                for w in 0..=n {
                    let base = params.sphere_size(w) * table.sphere(u, s, w);
                    for (a, b, c) in [(s, w, u), (w, u, s), (u, w, s)] {
                        let other = params.sphere_size(c) * table.sphere(a, b, c);
                        prop_assert_eq!(&base, &other);
                    }
                }
            }
        }
    }

    #[test]
    fn ball_intersections_shrink_with_distance(
        params in (prop_oneof![Just(2u64), Just(3)], 1u32..=5, 1u32..=5)
            .prop_map(|(q, m, n)| SpaceParams::new(q, m.max(n), m.min(n)).unwrap()),
        rho in 0u32..=5,
    ) {
        let rho = rho.min(params.n());
        let table = IntersectionTable::build(&params).unwrap();
        let mut prev = table.ball_same_radius(rho, 0).clone();
        prop_assert_eq!(&prev, &params.ball_volume(rho));
        for w in 1..=params.n() {
            let cur = table.ball_same_radius(rho, w).clone();
            prop_assert!(cur <= prev, "I(rho, w) grew at w = {}", w);
            prop_assert!(cur >= BigInt::zero());
            prev = cur;
        }
    }

    #[test]
    fn union_bound_is_monotone_and_capped(
        params in small_params(),
        rho in 0u32..=4,
        k in 1u64..5000,
    ) {
        let rho = rho.min(params.n());
        let table = UnionBoundTable::build(&params, rho).unwrap();
        let a = table.eval(&BigInt::from(k)).unwrap();
        let b = table.eval(&BigInt::from(k + 1)).unwrap();
        prop_assert!(a <= b);
        prop_assert!(b <= params.space_size());
        prop_assert!(a >= params.ball_volume(rho).min(params.space_size()));
    }
}

/// Exact unions of K random balls never exceed B(K).
#[test]
fn union_bound_dominates_random_unions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    for (q, m, n) in [(2u64, 2u32, 2u32), (2, 3, 3)] {
        let params = SpaceParams::new(q, m, n).unwrap();
        let size = params.space_size().to_u64().unwrap();
        let all: Vec<u64> = (0..size).collect();
        for rho in 1..n {
            let table = UnionBoundTable::build(&params, rho).unwrap();
            for _ in 0..100 {
                let k = rng.gen_range(1..=16u64);
                let centers: Vec<u64> = all
                    .choose_multiple(&mut rng, k as usize)
                    .copied()
                    .collect();
                let exact = union_ball_volume(&params, rho, &centers, 1 << 20).unwrap();
                let bound = table.eval(&BigInt::from(centers.len())).unwrap();
                assert!(
                    exact <= bound,
                    "q={q} m={m} n={n} rho={rho}: union {exact} > B({}) = {bound}",
                    centers.len()
                );
            }
        }
    }
}

/// The greedy recursion terminates within its guaranteed step count: each
/// step removes at least one uncovered vector.
#[test]
fn greedy_terminates_within_uncovered_count() {
    let params = SpaceParams::new(2, 3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let seed_size = BigInt::from(rng.gen_range(1u64..=8));
        let uncovered = BigInt::from(rng.gen_range(0u64..=200));
        let steps = uncovered.to_u64().unwrap();
        let got =
            rankcov::bounds::greedy_upper_bound(&params, 1, &seed_size, &uncovered, steps)
                .unwrap();
        assert!(got >= seed_size.clone());
        assert!(got <= &seed_size + BigInt::from(steps));
    }
    // Zero budget with nothing uncovered is still fine.
    let got = rankcov::bounds::greedy_upper_bound(
        &params,
        1,
        &BigInt::one(),
        &BigInt::zero(),
        0,
    )
    .unwrap();
    assert_eq!(got, BigInt::one());
}
