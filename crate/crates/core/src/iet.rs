//! Interval exchange transformations with exact endpoints.
//!
//! An IET is described by an ordered alphabet of `d` labels, two bijections
//! `pi0, pi1 : label -> {1..d}` giving the order of the exchanged intervals
//! before and after the map, a positive exact length per label, and a base
//! interval `[a, b)`. All intervals are half-open `[left, right)` and the map
//! is right-continuous.

use serde::Serialize;
use thiserror::Error;

use crate::exact::{Basis, ExactError, ExactScalar};
use crate::report::CheckReport;

#[derive(Debug, Error)]
pub enum IetError {
    #[error("invalid interval exchange data: {0}")]
    InvalidData(String),
    #[error("permutation is reducible: the first {k} intervals form an invariant block")]
    Reducible { k: usize },
    #[error("length of interval {label} is not positive")]
    NonPositiveLength { label: String },
    #[error("lengths sum to {sum} but the base interval has width {width}")]
    LengthSumMismatch { sum: String, width: String },
    #[error("point {point} lies outside the domain")]
    OutOfDomain { point: String },
    #[error("sample point {point} is an interval endpoint")]
    SampleOnEndpoint { point: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A half-open interval [left, right).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub left: ExactScalar,
    pub right: ExactScalar,
}

impl Interval {
    pub fn new(left: ExactScalar, right: ExactScalar) -> Interval {
        Interval { left, right }
    }

    pub fn width(&self) -> ExactScalar {
        &self.right - &self.left
    }

    pub fn midpoint(&self) -> ExactScalar {
        (&self.left + &self.right).half()
    }

    pub fn is_empty(&self) -> Result<bool, ExactError> {
        self.left.ge(&self.right)
    }

    /// Membership in [left, right).
    pub fn contains(&self, x: &ExactScalar) -> Result<bool, ExactError> {
        Ok(self.left.le(x)? && x.lt(&self.right)?)
    }

    /// Membership in the open interior (left, right).
    pub fn contains_interior(&self, x: &ExactScalar) -> Result<bool, ExactError> {
        Ok(self.left.lt(x)? && x.lt(&self.right)?)
    }

    pub fn translate(&self, by: &ExactScalar) -> Interval {
        Interval::new(&self.left + by, &self.right + by)
    }

    pub fn intersect(&self, other: &Interval) -> Result<Option<Interval>, ExactError> {
        let left = ExactScalar::max_of(self.left.clone(), other.left.clone())?;
        let right = ExactScalar::min_of(self.right.clone(), other.right.clone())?;
        if left.lt(&right)? {
            Ok(Some(Interval::new(left, right)))
        } else {
            Ok(None)
        }
    }

    /// True when `self` is contained in `other` as sets.
    pub fn subset_of(&self, other: &Interval) -> Result<bool, ExactError> {
        Ok(other.left.le(&self.left)? && self.right.le(&other.right)?)
    }

    pub fn describe(&self, digits: u32) -> String {
        format!(
            "[{}, {})",
            self.left.to_decimal(digits).unwrap_or_else(|_| self.left.to_string()),
            self.right.to_decimal(digits).unwrap_or_else(|_| self.right.to_string()),
        )
    }
}

/// Identifies one of the distinguished central points of an IET: the center
/// of an exchanged interval or the midpoint of the whole base interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterId {
    Letter(usize),
    Half,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MarkedPointKind {
    /// Left endpoint of the exchanged interval with this label index.
    Endpoint(usize),
    /// Midpoint of the exchanged interval with this label index.
    Center(usize),
    /// Midpoint of the whole base interval.
    Half,
}

#[derive(Debug, Clone, Serialize)]
pub struct MarkedPoint {
    pub kind: MarkedPointKind,
    pub value: ExactScalar,
}

/// One step of an orbit, with an exact flag when the point coincides with a
/// left endpoint of some exchanged interval.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitPoint {
    pub step: i64,
    pub value: ExactScalar,
    /// Label index of the interval whose left endpoint this point equals.
    pub boundary_hit: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Iet {
    labels: Vec<String>,
    /// pi0[letter] = 0-based position of the letter's interval in the domain.
    pi0: Vec<usize>,
    /// pi1[letter] = 0-based position of the letter's image in the range.
    pi1: Vec<usize>,
    /// order0[position] = letter at this domain position.
    order0: Vec<usize>,
    order1: Vec<usize>,
    lengths: Vec<ExactScalar>,
    base: Interval,
    /// Left endpoint of I_letter in the domain.
    left0: Vec<ExactScalar>,
    /// Left endpoint of T(I_letter) in the range.
    left1: Vec<ExactScalar>,
    /// Translation applied on I_letter: shift = left1 - left0.
    shift: Vec<ExactScalar>,
}

impl Iet {
    /// Build and validate an IET. `pi0` and `pi1` use 1-based positions, as
    /// is conventional for permutation pairs.
    pub fn new(
        labels: Vec<String>,
        pi0: Vec<usize>,
        pi1: Vec<usize>,
        lengths: Vec<ExactScalar>,
        base: Interval,
    ) -> Result<Iet, IetError> {
        Self::build(labels, pi0, pi1, lengths, base, true)
    }

    /// Like [`Iet::new`] but skips the reducibility check. Induced maps of
    /// IETs with connections can legitimately be reducible; they are outputs
    /// of this crate, not inputs.
    pub fn new_allow_reducible(
        labels: Vec<String>,
        pi0: Vec<usize>,
        pi1: Vec<usize>,
        lengths: Vec<ExactScalar>,
        base: Interval,
    ) -> Result<Iet, IetError> {
        Self::build(labels, pi0, pi1, lengths, base, false)
    }

    fn build(
        labels: Vec<String>,
        pi0: Vec<usize>,
        pi1: Vec<usize>,
        lengths: Vec<ExactScalar>,
        base: Interval,
        check_reducible: bool,
    ) -> Result<Iet, IetError> {
        let d = labels.len();
        if d == 0 {
            return Err(IetError::InvalidData("alphabet is empty".into()));
        }
        for i in 0..d {
            if labels[i].is_empty() {
                return Err(IetError::InvalidData(format!("label {i} is empty")));
            }
            if labels[i + 1..].contains(&labels[i]) {
                return Err(IetError::InvalidData(format!(
                    "duplicate label {:?}",
                    labels[i]
                )));
            }
        }
        if pi0.len() != d || pi1.len() != d || lengths.len() != d {
            return Err(IetError::InvalidData(format!(
                "expected {d} entries in pi0, pi1 and lambda"
            )));
        }
        let to_order = |pi: &[usize], which: &str| -> Result<Vec<usize>, IetError> {
            let mut order = vec![usize::MAX; d];
            for (letter, &pos) in pi.iter().enumerate() {
                if pos < 1 || pos > d {
                    return Err(IetError::InvalidData(format!(
                        "{which}[{letter}] = {pos} is outside 1..={d}"
                    )));
                }
                if order[pos - 1] != usize::MAX {
                    return Err(IetError::InvalidData(format!(
                        "{which} maps two labels to position {pos}"
                    )));
                }
                order[pos - 1] = letter;
            }
            Ok(order)
        };
        let order0 = to_order(&pi0, "pi0")?;
        let order1 = to_order(&pi1, "pi1")?;
        let pi0: Vec<usize> = pi0.iter().map(|p| p - 1).collect();
        let pi1: Vec<usize> = pi1.iter().map(|p| p - 1).collect();

        if check_reducible {
            // pi1∘pi0⁻¹ leaves {1..k} invariant for some k < d iff the first
            // k domain intervals occupy exactly the first k range positions.
            let mut max_pos = 0usize;
            for k in 1..d {
                max_pos = max_pos.max(pi1[order0[k - 1]]);
                if max_pos == k - 1 {
                    return Err(IetError::Reducible { k });
                }
            }
        }

        let basis = lengths[0].basis().clone();
        for x in lengths.iter().chain([&base.left, &base.right]) {
            if !Basis::compatible(&basis, x.basis()) {
                return Err(IetError::Exact(ExactError::BasisMismatch(
                    format!("{:?}", basis),
                    format!("{:?}", x.basis()),
                )));
            }
        }
        for (letter, len) in lengths.iter().enumerate() {
            if len.sign()? <= 0 {
                return Err(IetError::NonPositiveLength {
                    label: labels[letter].clone(),
                });
            }
        }
        let mut sum = basis.zero();
        for len in &lengths {
            sum = &sum + len;
        }
        let width = base.width();
        if sum != width {
            return Err(IetError::LengthSumMismatch {
                sum: sum.to_string(),
                width: width.to_string(),
            });
        }

        let mut left0 = vec![basis.zero(); d];
        let mut cursor = base.left.clone();
        for &letter in &order0 {
            left0[letter] = cursor.clone();
            cursor = &cursor + &lengths[letter];
        }
        let mut left1 = vec![basis.zero(); d];
        cursor = base.left.clone();
        for &letter in &order1 {
            left1[letter] = cursor.clone();
            cursor = &cursor + &lengths[letter];
        }
        let shift = (0..d).map(|i| &left1[i] - &left0[i]).collect();

        Ok(Iet {
            labels,
            pi0,
            pi1,
            order0,
            order1,
            lengths,
            base,
            left0,
            left1,
            shift,
        })
    }

    pub fn d(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, letter: usize) -> &str {
        &self.labels[letter]
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis(&self) -> &std::sync::Arc<Basis> {
        self.lengths[0].basis()
    }

    pub fn base(&self) -> &Interval {
        &self.base
    }

    /// 1-based domain position of a letter.
    pub fn pi0(&self, letter: usize) -> usize {
        self.pi0[letter] + 1
    }

    /// 1-based range position of a letter.
    pub fn pi1(&self, letter: usize) -> usize {
        self.pi1[letter] + 1
    }

    /// Letters in domain order.
    pub fn order0(&self) -> &[usize] {
        &self.order0
    }

    /// Letters in range order.
    pub fn order1(&self) -> &[usize] {
        &self.order1
    }

    /// The letter whose interval starts at the base point (pi0 position 1).
    pub fn first_domain_letter(&self) -> usize {
        self.order0[0]
    }

    /// The letter whose image starts at the base point (pi1 position 1).
    pub fn first_range_letter(&self) -> usize {
        self.order1[0]
    }

    /// Letter at the next domain position, if any.
    pub fn next_in_domain(&self, letter: usize) -> Option<usize> {
        self.order0.get(self.pi0[letter] + 1).copied()
    }

    pub fn prev_in_domain(&self, letter: usize) -> Option<usize> {
        self.pi0[letter].checked_sub(1).map(|p| self.order0[p])
    }

    pub fn length(&self, letter: usize) -> &ExactScalar {
        &self.lengths[letter]
    }

    pub fn lengths(&self) -> &[ExactScalar] {
        &self.lengths
    }

    /// Left endpoint of the exchanged interval I_letter.
    pub fn boundary(&self, letter: usize) -> &ExactScalar {
        &self.left0[letter]
    }

    /// Left endpoint of the image interval T(I_letter).
    pub fn image_boundary(&self, letter: usize) -> &ExactScalar {
        &self.left1[letter]
    }

    pub fn shift(&self, letter: usize) -> &ExactScalar {
        &self.shift[letter]
    }

    pub fn domain_interval(&self, letter: usize) -> Interval {
        Interval::new(
            self.left0[letter].clone(),
            &self.left0[letter] + &self.lengths[letter],
        )
    }

    pub fn image_interval(&self, letter: usize) -> Interval {
        Interval::new(
            self.left1[letter].clone(),
            &self.left1[letter] + &self.lengths[letter],
        )
    }

    /// The letter whose interval contains x.
    pub fn locate(&self, x: &ExactScalar) -> Result<usize, IetError> {
        if !self.base.contains(x)? {
            return Err(IetError::OutOfDomain {
                point: x.to_string(),
            });
        }
        // Walk domain positions; x >= left of the first piece, so the first
        // piece whose right end exceeds x contains it.
        for &letter in &self.order0 {
            let right = &self.left0[letter] + &self.lengths[letter];
            if x.lt(&right)? {
                return Ok(letter);
            }
        }
        unreachable!("x < b but no piece contains it");
    }

    /// The letter whose image interval contains y.
    pub fn locate_image(&self, y: &ExactScalar) -> Result<usize, IetError> {
        if !self.base.contains(y)? {
            return Err(IetError::OutOfDomain {
                point: y.to_string(),
            });
        }
        for &letter in &self.order1 {
            let right = &self.left1[letter] + &self.lengths[letter];
            if y.lt(&right)? {
                return Ok(letter);
            }
        }
        unreachable!("y < b but no piece contains it");
    }

    pub fn apply(&self, x: &ExactScalar) -> Result<ExactScalar, IetError> {
        Ok(x + &self.shift[self.locate(x)?])
    }

    pub fn apply_inverse(&self, y: &ExactScalar) -> Result<ExactScalar, IetError> {
        Ok(y - &self.shift[self.locate_image(y)?])
    }

    /// T^n with n of either sign.
    pub fn apply_n(&self, x: &ExactScalar, n: i64) -> Result<ExactScalar, IetError> {
        let mut p = x.clone();
        if n >= 0 {
            for _ in 0..n {
                p = self.apply(&p)?;
            }
        } else {
            for _ in 0..(-n) {
                p = self.apply_inverse(&p)?;
            }
        }
        Ok(p)
    }

    /// The orbit segment x, T^{±1}x, ..., T^n x (sign of n gives the
    /// direction), each point flagged when it equals some ∂I_α.
    pub fn orbit(&self, x: &ExactScalar, n: i64) -> Result<Vec<OrbitPoint>, IetError> {
        let mut out = Vec::with_capacity(n.unsigned_abs() as usize + 1);
        let mut p = x.clone();
        let dir = if n >= 0 { 1 } else { -1 };
        let mut step = 0i64;
        loop {
            out.push(OrbitPoint {
                step,
                boundary_hit: self.boundary_hit(&p),
                value: p.clone(),
            });
            if step == n {
                break;
            }
            p = if dir > 0 {
                self.apply(&p)?
            } else {
                self.apply_inverse(&p)?
            };
            step += dir;
        }
        Ok(out)
    }

    /// The letter whose left endpoint equals x, if any (exact test).
    pub fn boundary_hit(&self, x: &ExactScalar) -> Option<usize> {
        (0..self.d()).find(|&letter| &self.left0[letter] == x)
    }

    /// Midpoint of I_letter.
    pub fn center(&self, letter: usize) -> ExactScalar {
        &self.left0[letter] + &self.lengths[letter].half()
    }

    /// Midpoint of the base interval.
    pub fn center_half(&self) -> ExactScalar {
        self.base.midpoint()
    }

    pub fn center_of(&self, id: CenterId) -> ExactScalar {
        match id {
            CenterId::Letter(letter) => self.center(letter),
            CenterId::Half => self.center_half(),
        }
    }

    pub fn center_name(&self, id: CenterId) -> String {
        match id {
            CenterId::Letter(letter) => format!("c_{}", self.labels[letter]),
            CenterId::Half => "c_1/2".to_string(),
        }
    }

    /// All distinguished points: left endpoints, interval centers, and the
    /// midpoint of the base interval.
    pub fn marked_points(&self) -> Vec<MarkedPoint> {
        let mut out = Vec::with_capacity(2 * self.d() + 1);
        for &letter in &self.order0 {
            out.push(MarkedPoint {
                kind: MarkedPointKind::Endpoint(letter),
                value: self.left0[letter].clone(),
            });
        }
        for &letter in &self.order0 {
            out.push(MarkedPoint {
                kind: MarkedPointKind::Center(letter),
                value: self.center(letter),
            });
        }
        out.push(MarkedPoint {
            kind: MarkedPointKind::Half,
            value: self.center_half(),
        });
        out
    }

    /// True iff pi1∘pi0⁻¹(i) = d+1-i for all i.
    pub fn is_symmetric(&self) -> bool {
        let d = self.d();
        (0..d).all(|p| self.pi1[self.order0[p]] == d - 1 - p)
    }

    /// The letter paired with `letter` under the symmetry: the one at the
    /// mirrored domain position d+1-pi0(letter).
    pub fn symmetric_partner(&self, letter: usize) -> usize {
        self.order0[self.d() - 1 - self.pi0[letter]]
    }

    /// The reflection x -> a + b - x of the base interval.
    pub fn involution(&self, x: &ExactScalar) -> ExactScalar {
        &(&self.base.left + &self.base.right) - x
    }

    /// True when no discontinuity is fake: consecutive domain intervals
    /// never map to consecutive range intervals in the same order.
    pub fn is_non_degenerate(&self) -> bool {
        (1..self.d()).all(|p| {
            let prev = self.order0[p - 1];
            let here = self.order0[p];
            self.pi1[prev] + 1 != self.pi1[here]
        })
    }

    pub fn lengths_pairwise_distinct(&self) -> bool {
        let d = self.d();
        (0..d).all(|i| (i + 1..d).all(|j| self.lengths[i] != self.lengths[j]))
    }

    /// Exact verification of the reversing identity refl∘T = T⁻¹∘refl at the
    /// given sample points, plus the endpoint identity refl(T(∂I_α)) = ∂I_α̂
    /// where α̂ sits at the next domain position. Both hold for symmetric
    /// IETs; for others the report records the failures.
    pub fn verify_conjugacy(&self, samples: &[ExactScalar]) -> Result<CheckReport, IetError> {
        let mut report = CheckReport::new();
        for (i, x) in samples.iter().enumerate() {
            if self.boundary_hit(x).is_some() {
                return Err(IetError::SampleOnEndpoint {
                    point: x.to_string(),
                });
            }
            if !self.base.contains(x)? {
                return Err(IetError::OutOfDomain {
                    point: x.to_string(),
                });
            }
            let lhs = self.involution(&self.apply(x)?);
            let rhs = self.apply_inverse(&self.involution(x))?;
            report.record(
                format!("reflect_after_map.sample{i}"),
                lhs == rhs,
                format!("x = {x}: refl(T(x)) = {lhs}, T⁻¹(refl(x)) = {rhs}"),
            );
        }
        for p in 0..self.d() - 1 {
            let alpha = self.order0[p];
            let hat = self.order0[p + 1];
            let lhs = self.involution(&(&self.left0[alpha] + &self.shift[alpha]));
            let rhs = &self.left0[hat];
            report.record(
                format!("endpoint_identity.{}", self.labels[alpha]),
                &lhs == rhs,
                format!(
                    "refl(T(∂I_{})) = {lhs} vs ∂I_{} = {rhs}",
                    self.labels[alpha], self.labels[hat]
                ),
            );
        }
        Ok(report)
    }

    /// Split a subinterval of the base at the domain break points, returning
    /// pieces (in order) tagged with the letter whose interval contains them.
    pub fn split_domain(&self, iv: &Interval) -> Result<Vec<(Interval, usize)>, IetError> {
        if iv.is_empty()? {
            return Ok(Vec::new());
        }
        if !iv.subset_of(&self.base)? {
            return Err(IetError::OutOfDomain {
                point: iv.describe(12),
            });
        }
        let mut out = Vec::new();
        let mut lo = iv.left.clone();
        while lo.lt(&iv.right)? {
            let letter = self.locate(&lo)?;
            let piece_right = &self.left0[letter] + &self.lengths[letter];
            let hi = ExactScalar::min_of(piece_right, iv.right.clone())?;
            out.push((Interval::new(lo.clone(), hi.clone()), letter));
            lo = hi;
        }
        Ok(out)
    }

    /// Image of a subinterval that lies within a single exchanged interval.
    pub fn translate_piece(&self, iv: &Interval, letter: usize) -> Interval {
        iv.translate(&self.shift[letter])
    }

    /// T(iv) as an ordered list of intervals (split at discontinuities).
    pub fn push_forward(&self, iv: &Interval) -> Result<Vec<Interval>, IetError> {
        Ok(self
            .split_domain(iv)?
            .into_iter()
            .map(|(piece, letter)| self.translate_piece(&piece, letter))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::presets::{example1 as example_one, example2 as example_two, golden};
    use std::sync::Arc;

    fn rational_basis() -> Arc<Basis> {
        Basis::rational()
    }

    #[test]
    fn construction_validates() {
        let t = example_one();
        assert_eq!(t.d(), 4);
        assert!(t.is_symmetric());

        // pi1∘pi0⁻¹ = (1)(2 3) keeps {1} invariant.
        let b = rational_basis();
        let third = b.from_rational(rat("1/3"));
        let err = Iet::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![1, 2, 3],
            vec![1, 3, 2],
            vec![third.clone(), third.clone(), third.clone()],
            Interval::new(b.from_int(0), b.from_int(1)),
        );
        assert!(matches!(err, Err(IetError::Reducible { k: 1 })));

        let golden = golden();
        assert_eq!(golden.base().width(), golden.basis().from_int(1));
    }

    #[test]
    fn construction_rejects_bad_lengths() {
        let b = rational_basis();
        let err = Iet::new(
            vec!["A".into(), "B".into()],
            vec![1, 2],
            vec![2, 1],
            vec![b.from_rational(rat("0")), b.from_int(1)],
            Interval::new(b.from_int(0), b.from_int(1)),
        );
        assert!(matches!(err, Err(IetError::NonPositiveLength { .. })));

        let err = Iet::new(
            vec!["A".into(), "B".into()],
            vec![1, 2],
            vec![2, 1],
            vec![b.from_int(1), b.from_int(1)],
            Interval::new(b.from_int(0), b.from_int(1)),
        );
        assert!(matches!(err, Err(IetError::LengthSumMismatch { .. })));
    }

    #[test]
    fn apply_matches_known_values() {
        let t = example_one();
        let b = t.basis().clone();
        // T(∂I_2) = lambda_3 + lambda_4 = 1 - (lambda_1 + lambda_2) = 3/4.
        assert_eq!(
            t.apply(&b.from_rational(rat("1/10"))).unwrap(),
            b.from_rational(rat("3/4"))
        );

        // d=1 identity.
        let id = Iet::new(
            vec!["only".into()],
            vec![1],
            vec![1],
            vec![b.from_int(1)],
            Interval::new(b.from_int(0), b.from_int(1)),
        )
        .unwrap();
        let x = b.from_rational(rat("2/7"));
        assert_eq!(id.apply(&x).unwrap(), x);

        // golden: T(0) = (3 - sqrt5)/2.
        let g = golden();
        let gb = g.basis().clone();
        assert_eq!(
            g.apply(&gb.from_int(0)).unwrap(),
            gb.scalar(vec![rat("3/2"), rat("-1/2")])
        );
    }

    #[test]
    fn orbit_flags_boundary_hits() {
        let t = example_one();
        let b = t.basis().clone();
        let orbit = t.orbit(&b.from_rational(rat("1/10")), 2).unwrap();
        let values: Vec<_> = orbit.iter().map(|p| p.value.clone()).collect();
        assert_eq!(
            values,
            vec![
                b.from_rational(rat("1/10")),
                b.from_rational(rat("3/4")),
                b.from_rational(rat("3/8")),
            ]
        );
        // 1/10 = ∂I_2 and 3/8 = ∂I_4.
        assert_eq!(orbit[0].boundary_hit, Some(1));
        assert_eq!(orbit[1].boundary_hit, None);
        assert_eq!(orbit[2].boundary_hit, Some(3));

        // n = 0 gives just the start.
        assert_eq!(t.orbit(&b.from_rational(rat("1/3")), 0).unwrap().len(), 1);
    }

    #[test]
    fn backward_orbit_of_golden_midpoint() {
        let g = golden();
        let b = g.basis().clone();
        let orbit = g.orbit(&b.from_rational(rat("1/2")), -2).unwrap();
        // T⁻¹(1/2) = 1/2 - (3-sqrt5)/2 = (sqrt5-2)/1... computed exactly:
        let expect1 = b.scalar(vec![rat("-1"), rat("1/2")]);
        let expect2 = b.scalar(vec![rat("-3/2"), rat("1")]);
        assert_eq!(orbit[1].value, expect1);
        assert_eq!(orbit[2].value, expect2);
        // Float cross-check of the target values quoted to 3 decimals.
        assert!((orbit[1].value.approx_f64().unwrap() - 0.118).abs() < 1e-3);
        assert!((orbit[2].value.approx_f64().unwrap() - 0.736).abs() < 1e-3);
    }

    #[test]
    fn inverse_undoes_apply() {
        let g = golden();
        let b = g.basis().clone();
        for num in 0..20 {
            let x = b.from_rational(rat(&format!("{num}/20")));
            let y = g.apply(&x).unwrap();
            assert_eq!(g.apply_inverse(&y).unwrap(), x);
        }
        assert!(matches!(
            g.apply(&b.from_int(1)),
            Err(IetError::OutOfDomain { .. })
        ));
    }

    #[test]
    fn marked_points_of_golden_and_example_two() {
        let g = golden();
        let b = g.basis().clone();
        let marked = g.marked_points();
        assert_eq!(marked.len(), 5);
        assert_eq!(marked[0].value, b.from_int(0));
        assert_eq!(marked[1].value, b.scalar(vec![rat("-1/2"), rat("1/2")]));
        assert_eq!(marked[2].value, b.scalar(vec![rat("-1/4"), rat("1/4")]));
        assert_eq!(marked[3].value, b.scalar(vec![rat("1/4"), rat("1/4")]));
        assert_eq!(marked[4].value, b.from_rational(rat("1/2")));

        let t2 = example_two();
        let rb = t2.basis().clone();
        assert_eq!(t2.boundary(1), &rb.from_rational(rat("1/40")));
        assert_eq!(t2.boundary(2), &rb.from_rational(rat("9/40")));
        assert_eq!(t2.center_half(), rb.from_rational(rat("1/2")));
    }

    #[test]
    fn symmetry_predicate() {
        assert!(example_one().is_symmetric());
        assert!(golden().is_symmetric());

        // cyclic pi1∘pi0⁻¹ = (2 3 1) is not symmetric
        let b = rational_basis();
        let t = Iet::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![1, 2, 3],
            vec![2, 3, 1],
            vec![
                b.from_rational(rat("1/2")),
                b.from_rational(rat("1/3")),
                b.from_rational(rat("1/6")),
            ],
            Interval::new(b.from_int(0), b.from_int(1)),
        )
        .unwrap();
        assert!(!t.is_symmetric());
    }

    #[test]
    fn conjugacy_verifies_for_symmetric_maps() {
        let g = golden();
        let b = g.basis().clone();
        let samples: Vec<_> = (1..100)
            .map(|n| b.from_rational(rat(&format!("{n}/100"))))
            .collect();
        let report = g.verify_conjugacy(&samples).unwrap();
        assert!(report.all_passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn conjugacy_fails_for_cyclic_permutation() {
        let b = rational_basis();
        let t = Iet::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![1, 2, 3],
            vec![2, 3, 1],
            vec![
                b.from_rational(rat("1/2")),
                b.from_rational(rat("1/3")),
                b.from_rational(rat("1/6")),
            ],
            Interval::new(b.from_int(0), b.from_int(1)),
        )
        .unwrap();
        let samples: Vec<_> = (1..50)
            .filter(|n| *n != 25 && *n * 2 != 50 * 5 / 6)
            .map(|n| b.from_rational(rat(&format!("{n}/50"))))
            .filter(|x| t.boundary_hit(x).is_none())
            .collect();
        let report = t.verify_conjugacy(&samples).unwrap();
        assert!(!report.all_passed());
    }

    #[test]
    fn endpoint_identity_example_two() {
        let t = example_two();
        let report = t.verify_conjugacy(&[]).unwrap();
        // refl(T(∂I_1)) = ∂I_2 is the first endpoint item.
        let item = &report.items[0];
        assert_eq!(item.name, "endpoint_identity.1");
        assert_eq!(item.status, crate::report::CheckStatus::Pass);
        let lhs = t.involution(&t.apply(t.boundary(0)).unwrap());
        assert_eq!(&lhs, t.boundary(1));
    }

    #[test]
    fn sample_on_endpoint_rejected() {
        let g = golden();
        let b = g.basis().clone();
        let err = g.verify_conjugacy(&[b.from_int(0)]);
        assert!(matches!(err, Err(IetError::SampleOnEndpoint { .. })));
    }

    #[test]
    fn degeneracy_detection() {
        let b = rational_basis();
        // pi1 = (2, 3, 1): letter x maps to position 2 while y goes to 3 —
        // the break between x and y is fake (the map is a rotation).
        let t = Iet::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![1, 2, 3],
            vec![2, 3, 1],
            vec![
                b.from_rational(rat("1/4")),
                b.from_rational(rat("1/4")),
                b.from_rational(rat("1/2")),
            ],
            Interval::new(b.from_int(0), b.from_int(1)),
        )
        .unwrap();
        assert!(!t.is_non_degenerate());
        assert!(example_one().is_non_degenerate());
        assert!(golden().is_non_degenerate());
        assert!(!t.lengths_pairwise_distinct());
        assert!(example_one().lengths_pairwise_distinct());
    }

    #[test]
    fn split_and_push_forward() {
        let t = example_one();
        let b = t.basis().clone();
        // [0.05, 0.3) crosses ∂I_2 = 0.1 and ∂I_3 = 0.25.
        let iv = Interval::new(b.from_rational(rat("1/20")), b.from_rational(rat("3/10")));
        let pieces = t.split_domain(&iv).unwrap();
        assert_eq!(pieces.len(), 3);
        assert_eq!(pieces[0].1, 0);
        assert_eq!(pieces[1].1, 1);
        assert_eq!(pieces[2].1, 2);
        assert_eq!(pieces[0].0.right, b.from_rational(rat("1/10")));
        let images = t.push_forward(&iv).unwrap();
        let total: ExactScalar = images
            .iter()
            .fold(b.zero(), |acc, piece| &acc + &piece.width());
        assert_eq!(total, iv.width());
    }

    #[test]
    fn symmetric_partner_and_involution() {
        let t = example_one();
        assert_eq!(t.symmetric_partner(0), 3);
        assert_eq!(t.symmetric_partner(1), 2);
        let b = t.basis().clone();
        let x = b.from_rational(rat("1/3"));
        assert_eq!(t.involution(&x), b.from_rational(rat("2/3")));
        // Centers are fixed by refl∘T (symmetric IET).
        for letter in 0..t.d() {
            let c = t.center(letter);
            let image = t.involution(&t.apply(&c).unwrap());
            assert_eq!(image, c, "center of letter {letter}");
        }
    }
}
