//! Ready-made interval exchange transformations used across the test suites
//! and shipped with the command-line tool as example data.
//!
//! All presets live on the unit interval `[0, 1)` and use the reversing
//! permutation `pi1(i) = d + 1 - i`, so each of them is symmetric.

use crate::exact::{rat, Basis};
use crate::iet::{Iet, Interval};

fn reversing(labels: &[&str], lengths: Vec<crate::exact::ExactScalar>) -> Iet {
    let d = labels.len();
    let base = lengths[0].basis().clone();
    Iet::new(
        labels.iter().map(|s| s.to_string()).collect(),
        (1..=d).collect(),
        (1..=d).rev().collect(),
        lengths,
        Interval::new(base.from_int(0), base.from_int(1)),
    )
    .expect("preset data is valid")
}

/// The golden 2-IET: rotation by the golden mean, with lengths
/// `((sqrt5 - 1)/2, (3 - sqrt5)/2)` over the basis `{1, sqrt5}`.
///
/// Its lengths are rationally independent, so no finite scan ever finds a
/// connection; this is the standing example of a (uniquely) ergodic map.
pub fn golden() -> Iet {
    let b = Basis::with_sqrts(&[5]).expect("basis {1, sqrt5}");
    reversing(
        &["A", "B"],
        vec![
            b.scalar(vec![rat("-1/2"), rat("1/2")]),
            b.scalar(vec![rat("3/2"), rat("-1/2")]),
        ],
    )
}

/// A fully connected symmetric 4-IET with lengths `(1/10, 3/20, 1/8, 5/8)`.
///
/// Every backward endpoint orbit terminates on another endpoint, one of the
/// resulting connections avoids all middle points, and `T^2` fixes the third
/// exchanged interval pointwise — three independent ways to see the map is
/// not ergodic.
pub fn example1() -> Iet {
    let b = Basis::rational();
    reversing(
        &["1", "2", "3", "4"],
        vec![
            b.from_rational(rat("1/10")),
            b.from_rational(rat("3/20")),
            b.from_rational(rat("1/8")),
            b.from_rational(rat("5/8")),
        ],
    )
}

/// A symmetric 4-IET with lengths `(1/40, 1/5, 1/20, 29/40)`.
///
/// The lengths satisfy `2(l1 + l2) + l3 = 1/2` and `l2 > l1 + l3`, which
/// forces the backward orbit of the midpoint `1/2` onto an endpoint after
/// two steps: the connection through `1/2` makes `-1` an eigenvalue of the
/// induced rotation structure. All lengths are rational, so this instance is
/// fully connected (periodic); see [`example2_irrational`] for the variant
/// with a single connection.
pub fn example2() -> Iet {
    let b = Basis::rational();
    reversing(
        &["1", "2", "3", "4"],
        vec![
            b.from_rational(rat("1/40")),
            b.from_rational(rat("1/5")),
            b.from_rational(rat("1/20")),
            b.from_rational(rat("29/40")),
        ],
    )
}

/// An irrational variant of [`example2`] over the basis `{1, sqrt2}`:
/// lengths `(2/80, (18 - sqrt2)/80, 2*sqrt2/80, (60 - sqrt2)/80)`.
///
/// The same length constraints hold (`2(l1 + l2) + l3 = 1/2`,
/// `l2 > l1 + l3`), so the connection through `1/2` is still present, but
/// `l2 / l3` is irrational and no other connection appears in any finite
/// scan.
pub fn example2_irrational() -> Iet {
    let b = Basis::with_sqrts(&[2]).expect("basis {1, sqrt2}");
    reversing(
        &["1", "2", "3", "4"],
        vec![
            b.scalar(vec![rat("2/80"), rat("0")]),
            b.scalar(vec![rat("18/80"), rat("-1/80")]),
            b.scalar(vec![rat("0"), rat("2/80")]),
            b.scalar(vec![rat("60/80"), rat("-1/80")]),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_symmetric_and_normalised() {
        for t in [golden(), example1(), example2(), example2_irrational()] {
            assert!(t.is_symmetric());
            assert_eq!(t.base().width(), t.basis().from_int(1));
        }
    }

    #[test]
    fn irrational_variant_satisfies_the_length_constraints() {
        let t = example2_irrational();
        let b = t.basis().clone();
        let half = b.from_rational(rat("1/2"));
        // 2(l1 + l2) + l3 = 1/2
        let lhs = (t.length(0) + t.length(1)).scale(&rat("2")) + t.length(2);
        assert_eq!(lhs, half);
        // l2 > l1 + l3
        assert!(t.length(1).gt(&(t.length(0) + t.length(2))).unwrap());
        // l4 = 1/2 + l1 + l2
        let l4 = half + t.length(0) + t.length(1);
        assert_eq!(*t.length(3), l4);
    }
}
