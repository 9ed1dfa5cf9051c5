//! Seeded random instances for the verification suites.
//!
//! Every generator takes an explicit `ChaCha8Rng`, and suites derive one
//! stream per case from the suite seed, so results are reproducible and
//! independent of how cases are scheduled across threads.

use std::sync::Arc;

use iet_core::exact::{Basis, ExactError, ExactScalar, Rat};
use iet_core::iet::{Iet, Interval};
use num_bigint::BigInt;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// The rng for one case: same seed, one ChaCha stream per case index.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

fn small_rat(rng: &mut ChaCha8Rng, num: std::ops::RangeInclusive<i64>, den: std::ops::RangeInclusive<i64>) -> Rat {
    Rat::new(
        BigInt::from(rng.gen_range(num)),
        BigInt::from(rng.gen_range(den)),
    )
}

/// A uniformly random permutation of `1..=d` that is irreducible (no proper
/// prefix of the domain maps onto a prefix of the range) and not the
/// identity.
pub fn irreducible_pi1(rng: &mut ChaCha8Rng, d: usize) -> Vec<usize> {
    assert!(d >= 2);
    let mut pi: Vec<usize> = (1..=d).collect();
    loop {
        pi.shuffle(rng);
        let mut max_so_far = 0;
        let irreducible = !(0..d - 1).any(|k| {
            max_so_far = max_so_far.max(pi[k]);
            max_so_far == k + 1
        });
        if irreducible && pi.iter().enumerate().any(|(i, &p)| p != i + 1) {
            return pi.clone();
        }
    }
}

fn labels(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("I{i}")).collect()
}

/// A rational exchange on `[0, 1)`: integer weights over their sum.
pub fn rational_iet(rng: &mut ChaCha8Rng, d: usize) -> Iet {
    let pi1 = irreducible_pi1(rng, d);
    let weights: Vec<i64> = (0..d).map(|_| rng.gen_range(1..=20)).collect();
    let total: i64 = weights.iter().sum();
    let b = Basis::rational();
    let lengths = weights
        .into_iter()
        .map(|w| b.from_rational(Rat::new(BigInt::from(w), BigInt::from(total))))
        .collect();
    Iet::new(
        labels(d),
        (1..=d).collect(),
        pi1,
        lengths,
        Interval::new(b.from_int(0), b.from_int(1)),
    )
    .expect("random rational exchange")
}

/// One of a few three-element bases `{1, sqrt p, sqrt q}`.
pub fn three_element_basis(rng: &mut ChaCha8Rng) -> Arc<Basis> {
    const PAIRS: [[u64; 2]; 6] = [[2, 3], [2, 5], [3, 5], [2, 7], [3, 7], [5, 7]];
    let pair = PAIRS[rng.gen_range(0..PAIRS.len())];
    Basis::with_sqrts(&pair).expect("three-element basis")
}

/// An exchange over a three-element basis with positive coefficients on the
/// constant and nonnegative ones on the roots; the base is `[0, total)`.
pub fn three_basis_iet(rng: &mut ChaCha8Rng, d: usize, basis: &Arc<Basis>) -> Iet {
    let pi1 = irreducible_pi1(rng, d);
    let lengths: Vec<ExactScalar> = (0..d)
        .map(|_| {
            basis.scalar(vec![
                small_rat(rng, 1..=9, 1..=5),
                small_rat(rng, 0..=6, 1..=5),
                small_rat(rng, 0..=6, 1..=5),
            ])
        })
        .collect();
    let total = lengths.iter().fold(basis.zero(), |acc, l| &acc + l);
    Iet::new(
        labels(d),
        (1..=d).collect(),
        pi1,
        lengths,
        Interval::new(basis.zero(), total),
    )
    .expect("random exchange over a quadratic basis")
}

/// A symmetric exchange with rationally independent lengths
/// `c_i * sqrt(p_i)` for distinct primes `p_i`, on `[0, total)`.
pub fn symmetric_independent_iet(rng: &mut ChaCha8Rng, d: usize) -> Iet {
    const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
    assert!((2..=PRIMES.len()).contains(&d));
    let basis = Basis::with_sqrts(&PRIMES[..d]).expect("prime square roots");
    let lengths: Vec<ExactScalar> = (0..d)
        .map(|i| {
            let mut coeffs = vec![Rat::from_integer(BigInt::from(0)); d + 1];
            coeffs[i + 1] = small_rat(rng, 1..=9, 1..=9);
            basis.scalar(coeffs)
        })
        .collect();
    let total = lengths.iter().fold(basis.zero(), |acc, l| &acc + l);
    Iet::new(
        labels(d),
        (1..=d).collect(),
        (1..=d).rev().collect(),
        lengths,
        Interval::new(basis.zero(), total),
    )
    .expect("random symmetric exchange")
}

/// A random subinterval with endpoints on the `1/grid` subdivision of the
/// base, never empty.
pub fn random_subinterval(rng: &mut ChaCha8Rng, t: &Iet, grid: i64) -> Interval {
    random_subinterval_of(rng, t.base(), grid)
}

/// Same, inside an arbitrary interval.
pub fn random_subinterval_of(rng: &mut ChaCha8Rng, within: &Interval, grid: i64) -> Interval {
    let u = rng.gen_range(0..grid);
    let v = rng.gen_range(u + 1..=grid);
    let width = within.width();
    let left = &within.left + &width.scale(&Rat::new(BigInt::from(u), BigInt::from(grid)));
    let right = &within.left + &width.scale(&Rat::new(BigInt::from(v), BigInt::from(grid)));
    Interval::new(left, right)
}

/// The widest stretch of the base that contains none of `points` in its
/// interior. The points must be sorted; base endpoints count as gap ends.
pub fn widest_gap(t: &Iet, points: &[ExactScalar]) -> Result<Interval, ExactError> {
    let mut best: Option<Interval> = None;
    let mut cursor = t.base().left.clone();
    for p in points.iter().chain(std::iter::once(&t.base().right)) {
        if p.le(&cursor)? || p.gt(&t.base().right)? {
            continue;
        }
        let gap = Interval::new(cursor.clone(), p.clone());
        best = Some(match best {
            None => gap,
            Some(b) => {
                if gap.width().gt(&b.width())? {
                    gap
                } else {
                    b
                }
            }
        });
        cursor = p.clone();
    }
    Ok(best.unwrap_or_else(|| t.base().clone()))
}

/// Positive tower widths `v` scaled so that `sum v_g * h_g` equals `total`
/// exactly (the mass constraint for width reassignment).
pub fn normalized_widths(
    rng: &mut ChaCha8Rng,
    heights: &[u64],
    total: &ExactScalar,
) -> Vec<ExactScalar> {
    let raw: Vec<Rat> = heights.iter().map(|_| small_rat(rng, 1..=9, 1..=9)).collect();
    let mass: Rat = raw
        .iter()
        .zip(heights)
        .map(|(u, &h)| u * Rat::from_integer(BigInt::from(h)))
        .sum();
    raw.into_iter()
        .map(|u| total.scale(&(u / &mass)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic_per_stream() {
        let a = rational_iet(&mut case_rng(7, 3), 4);
        let b = rational_iet(&mut case_rng(7, 3), 4);
        assert_eq!(a.lengths(), b.lengths());
        assert_eq!(a.order1(), b.order1());
        let c = rational_iet(&mut case_rng(7, 4), 4);
        assert!(a.lengths() != c.lengths() || a.order1() != c.order1());
    }

    #[test]
    fn permutations_are_irreducible() {
        let mut rng = case_rng(1, 0);
        for d in 2..=6 {
            for _ in 0..50 {
                let pi = irreducible_pi1(&mut rng, d);
                let mut max_so_far = 0;
                for k in 0..d - 1 {
                    max_so_far = max_so_far.max(pi[k]);
                    assert!(max_so_far > k + 1, "reducible prefix in {pi:?}");
                }
            }
        }
    }

    #[test]
    fn symmetric_instances_are_symmetric_with_independent_lengths() {
        let mut rng = case_rng(2, 0);
        for d in 2..=6 {
            let t = symmetric_independent_iet(&mut rng, d);
            assert!(t.is_symmetric());
            assert_eq!(t.d(), d);
            for l in t.lengths() {
                assert!(l.sign().unwrap() > 0);
                assert!(!l.is_rational());
            }
        }
    }

    #[test]
    fn normalized_widths_satisfy_the_mass_constraint() {
        let mut rng = case_rng(3, 0);
        let t = rational_iet(&mut rng, 3);
        let heights = [4u64, 7, 2];
        let v = normalized_widths(&mut rng, &heights, &t.base().width());
        let mass = v
            .iter()
            .zip(&heights)
            .fold(t.basis().zero(), |acc, (w, &h)| {
                &acc + &w.scale(&iet_core::exact::rat(&h.to_string()))
            });
        assert_eq!(mass, t.base().width());
    }

    #[test]
    fn random_subintervals_sit_inside_the_base() {
        let mut rng = case_rng(4, 9);
        let basis = three_element_basis(&mut rng);
        let t = three_basis_iet(&mut rng, 3, &basis);
        for _ in 0..20 {
            let j = random_subinterval(&mut rng, &t, 200);
            assert!(j.subset_of(t.base()).unwrap());
            assert!(!j.is_empty().unwrap());
        }
    }
}
