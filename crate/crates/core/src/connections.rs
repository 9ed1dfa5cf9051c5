//! Exact detection of connections.
//!
//! A *connection* is a finite orbit segment joining two discontinuities: a
//! pair of letters `(beta, alpha)` and a count `n >= 1` with
//! `T^{-n}(d I_beta) = d I_alpha`, where `pi0(beta) != 1` and
//! `pi1(alpha) != 1` (`d I` denotes the left endpoint of an exchanged
//! interval). `M(beta)` is the least such `n` over all admissible `alpha`,
//! and dually `N(alpha)` is the least `n >= 1` with
//! `T^n(d I_alpha) = d I_beta`, `pi0(beta) != 1`. By convention the first
//! domain letter and the first range letter carry the *trivial* connection
//! `T^{-1}(a) = d I_{pi1^{-1}(1)}` and both get the value 1.
//!
//! Scans are exact and finite: a letter is either resolved with the minimal
//! step count or reported [`ScanBound::Unknown`] at the given budget. The
//! module never claims "no connection", only "none within the budget".
//!
//! On top of the scan this module provides two consumers:
//! * [`periodic_decomposition`] — when every backward scan resolves, the map
//!   has only periodic orbits and splits into finitely many intervals on
//!   which a power of the map is the identity;
//! * [`ergodicity_obstructions`] — for symmetric maps, a connection whose
//!   orbit segment avoids every middle point `c_alpha` and the midpoint
//!   `c_{1/2}` certifies non-ergodicity (the union of the towers over the
//!   segment is a proper invariant set).

use serde::Serialize;
use thiserror::Error;

use crate::exact::{ExactError, ExactScalar};
use crate::iet::{CenterId, Iet, IetError, Interval};
use crate::report::CheckReport;

/// Default number of orbit steps scanned per endpoint.
pub const DEFAULT_SCAN_BUDGET: u64 = 10_000;

#[derive(Debug, Error)]
pub enum ConnectionError {
    #[error("scan budget must be at least 1")]
    BadBudget,
    #[error("the map is not symmetric")]
    NotSymmetric,
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error(transparent)]
    Iet(#[from] IetError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Outcome of one finite endpoint scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanBound {
    /// Minimal step count realising the defining equality.
    Found(u64),
    /// No hit within the budget carried as payload.
    Unknown(u64),
}

impl ScanBound {
    pub fn is_found(&self) -> bool {
        matches!(self, ScanBound::Found(_))
    }

    pub fn found(&self) -> Option<u64> {
        match self {
            ScanBound::Found(n) => Some(*n),
            ScanBound::Unknown(_) => None,
        }
    }
}

impl std::fmt::Display for ScanBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScanBound::Found(n) => write!(f, "{n}"),
            ScanBound::Unknown(budget) => write!(f, ">{budget}"),
        }
    }
}

impl Serialize for ScanBound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            ScanBound::Found(n) => s.serialize_u64(*n),
            ScanBound::Unknown(budget) => {
                let mut map = s.serialize_map(Some(1))?;
                map.serialize_entry("unknown_up_to", budget)?;
                map.end()
            }
        }
    }
}

/// Scan results for a single letter: the backward value `M` and the forward
/// value `N`, each with the partner letter realising it when found.
#[derive(Debug, Clone, Serialize)]
pub struct LetterScan {
    pub label: String,
    pub m: ScanBound,
    /// Letter index `alpha` with `T^{-M}(d I_beta) = d I_alpha`.
    pub m_partner: Option<usize>,
    pub n: ScanBound,
    /// Letter index `beta` with `T^{N}(d I_alpha) = d I_beta`.
    pub n_partner: Option<usize>,
    /// `M` holds by the trivial convention for the first domain letter.
    pub m_trivial: bool,
    /// `N` holds by the trivial convention for the first range letter.
    pub n_trivial: bool,
}

/// A non-trivial connection, recorded from the backward scan.
#[derive(Debug, Clone, Serialize)]
pub struct Connection {
    /// Letter whose left endpoint starts the backward orbit.
    pub beta: usize,
    /// Letter whose left endpoint terminates it.
    pub alpha: usize,
    /// Number of backward steps `n >= 1`.
    pub steps: u64,
    /// The full segment `T^{-k}(d I_beta)` for `k = 0..=steps`.
    pub segment: Vec<ExactScalar>,
}

impl Connection {
    /// Index of `x` in the segment, decided exactly.
    pub fn position_of(&self, x: &ExactScalar) -> Option<usize> {
        self.segment.iter().position(|p| p == x)
    }

    pub fn contains(&self, x: &ExactScalar) -> bool {
        self.position_of(x).is_some()
    }
}

/// Full scan report for one map.
#[derive(Debug, Clone, Serialize)]
pub struct ConnectionReport {
    pub n_max: u64,
    /// One entry per letter, in alphabet order.
    pub letters: Vec<LetterScan>,
    /// Non-trivial connections, ordered by starting letter.
    pub connections: Vec<Connection>,
    /// Number of non-trivial connections found.
    pub d_prime: usize,
}

impl ConnectionReport {
    pub fn m(&self, letter: usize) -> ScanBound {
        self.letters[letter].m
    }

    pub fn n(&self, letter: usize) -> ScanBound {
        self.letters[letter].n
    }

    /// The non-trivial connection starting at `d I_beta`, if found.
    pub fn connection_for(&self, beta: usize) -> Option<&Connection> {
        self.connections.iter().find(|c| c.beta == beta)
    }

    /// True when every backward scan resolved (trivial values count).
    pub fn fully_resolved(&self) -> bool {
        self.letters.iter().all(|s| s.m.is_found())
    }

    /// Labels whose backward scan hit the budget without resolving.
    pub fn unresolved_labels(&self) -> Vec<String> {
        self.letters
            .iter()
            .filter(|s| !s.m.is_found())
            .map(|s| s.label.clone())
            .collect()
    }

    /// All points lying on a non-trivial connection segment, sorted and
    /// de-duplicated. Points of the trivial connection are not included.
    pub fn connection_points(&self) -> Result<Vec<ExactScalar>, ExactError> {
        let mut points = Vec::new();
        for c in &self.connections {
            points.extend(c.segment.iter().cloned());
        }
        let mut sorted = crate::exact::sort_by_scalar_key(points, |p| p)?;
        sorted.dedup();
        Ok(sorted)
    }

    /// First connection point in the interior of `iv`, if any.
    pub fn point_in_interior(&self, iv: &Interval) -> Result<Option<ExactScalar>, ExactError> {
        for p in self.connection_points()? {
            if iv.contains_interior(&p)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }
}


/// Scan every endpoint orbit up to `n_max` steps.
///
/// Backward scans start at `d I_beta` for `pi0(beta) != 1` and stop at the
/// first hit `T^{-n}(d I_beta) = d I_alpha` with `pi1(alpha) != 1`; hits on
/// the remaining endpoint (the one mapped from the left end of the base) do
/// not terminate a connection and the scan walks through them. Forward scans
/// are dual. When several letters could realise the same minimal `n` the
/// smallest letter wins, but distinct left endpoints make this vacuous.
pub fn connection_scan(t: &Iet, n_max: u64) -> Result<ConnectionReport, ConnectionError> {
    if n_max == 0 {
        return Err(ConnectionError::BadBudget);
    }
    let first0 = t.first_domain_letter();
    let first1 = t.first_range_letter();
    let mut letters = Vec::with_capacity(t.d());
    let mut connections = Vec::new();

    for letter in 0..t.d() {
        // Backward scan for M(letter).
        let (m, m_partner, m_trivial) = if letter == first0 {
            (ScanBound::Found(1), Some(first1), true)
        } else {
            let mut segment = vec![t.boundary(letter).clone()];
            let mut x = t.boundary(letter).clone();
            let mut hit = None;
            for n in 1..=n_max {
                x = t.apply_inverse(&x)?;
                segment.push(x.clone());
                if let Some(alpha) = t.boundary_hit(&x) {
                    if t.pi1(alpha) != 1 {
                        hit = Some((n, alpha));
                        break;
                    }
                }
            }
            match hit {
                Some((n, alpha)) => {
                    connections.push(Connection {
                        beta: letter,
                        alpha,
                        steps: n,
                        segment,
                    });
                    (ScanBound::Found(n), Some(alpha), false)
                }
                None => (ScanBound::Unknown(n_max), None, false),
            }
        };

        // Forward scan for N(letter).
        let (n_bound, n_partner, n_trivial) = if letter == first1 {
            (ScanBound::Found(1), Some(first0), true)
        } else {
            let mut x = t.boundary(letter).clone();
            let mut hit = None;
            for n in 1..=n_max {
                x = t.apply(&x)?;
                if let Some(beta) = t.boundary_hit(&x) {
                    if t.pi0(beta) != 1 {
                        hit = Some((n, beta));
                        break;
                    }
                }
            }
            match hit {
                Some((n, beta)) => (ScanBound::Found(n), Some(beta), false),
                None => (ScanBound::Unknown(n_max), None, false),
            }
        };

        letters.push(LetterScan {
            label: t.label(letter).to_string(),
            m,
            m_partner,
            n: n_bound,
            n_partner,
            m_trivial,
            n_trivial,
        });
    }

    let d_prime = connections.len();
    Ok(ConnectionReport {
        n_max,
        letters,
        connections,
        d_prime,
    })
}

/// Split a fully connected map into intervals on which a power of the map is
/// the identity.
///
/// Requires every backward scan in `report` to be resolved; then every orbit
/// is periodic, so the forward orbit of each left endpoint closes up. The
/// union of those orbits is a finite invariant set; the intervals between
/// consecutive orbit points are permuted rigidly by the map, and each one is
/// returned together with the exact period of its left endpoint.
///
/// `budget` bounds the steps spent closing each endpoint orbit; running out
/// is reported as an unmet hypothesis rather than an answer.
pub fn periodic_decomposition(
    t: &Iet,
    report: &ConnectionReport,
    budget: u64,
) -> Result<Vec<(Interval, u64)>, ConnectionError> {
    if !report.fully_resolved() {
        return Err(ConnectionError::HypothesisNotMet(format!(
            "backward scans unresolved at budget {} for letters {:?}; \
             only fully connected maps decompose into periodic pieces",
            report.n_max,
            report.unresolved_labels(),
        )));
    }

    // Union of the (closed) forward orbits of all left endpoints, tagged
    // with the period of their orbit.
    let mut tagged: Vec<(ExactScalar, u64)> = Vec::new();
    for letter in 0..t.d() {
        let start = t.boundary(letter).clone();
        if tagged.iter().any(|(p, _)| *p == start) {
            continue;
        }
        let mut orbit = vec![start.clone()];
        let mut x = start.clone();
        let mut closed = false;
        for _ in 0..budget {
            x = t.apply(&x)?;
            if x == start {
                closed = true;
                break;
            }
            orbit.push(x.clone());
        }
        if !closed {
            return Err(ConnectionError::HypothesisNotMet(format!(
                "the orbit of the left endpoint of interval {} did not close \
                 within {} steps",
                t.label(letter),
                budget,
            )));
        }
        let period = orbit.len() as u64;
        tagged.extend(orbit.into_iter().map(|p| (p, period)));
    }

    // Sort by position; the cells between consecutive orbit points are the
    // periodic components.
    let sorted = crate::exact::sort_by_scalar_key(tagged, |(p, _)| p)?;

    let mut cells = Vec::with_capacity(sorted.len());
    for i in 0..sorted.len() {
        let left = sorted[i].0.clone();
        let right = if i + 1 < sorted.len() {
            sorted[i + 1].0.clone()
        } else {
            t.base().right.clone()
        };
        cells.push((Interval::new(left, right), sorted[i].1));
    }
    Ok(cells)
}

/// For symmetric maps: check every found connection for middle points and
/// report the obstruction when a connection avoids them all.
///
/// One passing item is recorded per connection that contains a middle point
/// (together with the reflection identity the hit must satisfy) and one
/// failing `NotErgodic` item per connection that contains none. Letters
/// whose scan hit the budget are reported informationally: an unresolved
/// scan never proves anything in either direction.
pub fn ergodicity_obstructions(
    t: &Iet,
    report: &ConnectionReport,
) -> Result<CheckReport, ConnectionError> {
    if !t.is_symmetric() {
        return Err(ConnectionError::NotSymmetric);
    }
    let mut out = CheckReport::new();

    for scan in report.letters.iter() {
        if !scan.m.is_found() {
            out.pass(
                format!("scan.{}.unresolved", scan.label),
                format!(
                    "no connection within {} backward steps; nothing to test",
                    report.n_max
                ),
            );
        }
    }

    for c in &report.connections {
        let beta_label = t.label(c.beta);
        // Which middle points lie on the segment, and where.
        let mut hits: Vec<(CenterId, usize)> = Vec::new();
        for letter in 0..t.d() {
            let center = t.center(letter);
            if let Some(k) = c.position_of(&center) {
                hits.push((CenterId::Letter(letter), k));
            }
        }
        if let Some(k) = c.position_of(&t.center_half()) {
            hits.push((CenterId::Half, k));
        }

        let at_most_one = hits.len() <= 1;
        out.record(
            format!("connection.{beta_label}.at_most_one_center"),
            at_most_one,
            format!("{} middle point(s) on the segment", hits.len()),
        );

        match hits.first() {
            None => {
                out.fail(
                    format!("connection.{beta_label}.contains_center"),
                    format!(
                        "NotErgodic: the {}-step connection starting at the left \
                         endpoint of interval {} contains no middle point; the \
                         towers over the segment form a proper invariant set",
                        c.steps, beta_label,
                    ),
                );
            }
            Some((center, k)) => {
                out.pass(
                    format!("connection.{beta_label}.contains_center"),
                    format!(
                        "{} lies on the segment at backward step {}",
                        t.center_name(*center),
                        k
                    ),
                );
                check_reflection_identity(t, c, *center, *k, &mut out)?;
            }
        }
    }
    Ok(out)
}

/// A middle point on a connection segment pins down the segment's mirror
/// image: if `T^k(c) = d I_beta` and the orbit of `c` stays clear of the
/// endpoints strictly between, then `T^{-k-e}(c)` must be the *previous*
/// endpoint in domain order, where `e = 1` for the midpoint of the base and
/// `e = 0` otherwise. Records the outcome of that exact check.
fn check_reflection_identity(
    t: &Iet,
    c: &Connection,
    center: CenterId,
    k: usize,
    out: &mut CheckReport,
) -> Result<(), ConnectionError> {
    let beta_label = t.label(c.beta);
    let name = format!("connection.{beta_label}.reflection_identity");
    let value = t.center_of(center);

    // Premise: no endpoint hit strictly within |k| steps either way, and for
    // a hit at step 0 (only possible for the midpoint of the base) the
    // terminating letter must not be first in range order.
    let mut premise = true;
    if k == 0 && t.pi1(c.beta) == 1 {
        premise = false;
    }
    for j in 1..k {
        // Forward iterates are earlier segment entries; backward iterates
        // may run past the segment end.
        let forward = &c.segment[k - j];
        let backward = if k + j < c.segment.len() {
            c.segment[k + j].clone()
        } else {
            t.apply_n(&value, -(j as i64))?
        };
        if t.boundary_hit(forward).is_some() || t.boundary_hit(&backward).is_some() {
            premise = false;
            break;
        }
    }
    if !premise {
        out.pass(
            name,
            "orbit of the middle point meets an endpoint too early; \
             reflection identity not applicable"
                .to_string(),
        );
        return Ok(());
    }

    let offset = match center {
        CenterId::Half => 1,
        CenterId::Letter(_) => 0,
    };
    let reflected = t.apply_n(&value, -(k as i64) - offset)?;
    let partner = t
        .prev_in_domain(c.beta)
        .expect("connections never start at the first domain letter");
    let ok = reflected == *t.boundary(partner);
    out.record(
        name,
        ok,
        format!(
            "T^-{}({}) against the left endpoint of interval {}",
            k as i64 + offset,
            t.center_name(center),
            t.label(partner),
        ),
    );
    Ok(())
}

/// For symmetric maps, the backward value of a letter equals the forward
/// value of its predecessor in domain order: `M(alpha) = N(alpha-hat)` with
/// `pi0(alpha-hat) = pi0(alpha) - 1`. Checks the equality for every letter
/// (two unresolved scans at the same budget are consistent).
pub fn symmetric_endpoint_pairing(
    t: &Iet,
    report: &ConnectionReport,
) -> Result<CheckReport, ConnectionError> {
    if !t.is_symmetric() {
        return Err(ConnectionError::NotSymmetric);
    }
    let mut out = CheckReport::new();
    for letter in 0..t.d() {
        let Some(prev) = t.prev_in_domain(letter) else {
            continue;
        };
        let m = report.m(letter);
        let n = report.n(prev);
        let consistent = match (m, n) {
            (ScanBound::Found(a), ScanBound::Found(b)) => a == b,
            // A value found on one side but missed on the other at the same
            // budget is a genuine violation.
            (ScanBound::Found(a), ScanBound::Unknown(budget))
            | (ScanBound::Unknown(budget), ScanBound::Found(a)) => a > budget,
            (ScanBound::Unknown(_), ScanBound::Unknown(_)) => true,
        };
        out.record(
            format!("pairing.{}", t.label(letter)),
            consistent,
            format!("M({}) = {}, N({}) = {}", t.label(letter), m, t.label(prev), n),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::iet::Iet;
    use crate::presets::{example1, example2, example2_irrational, golden};
    use crate::Basis;

    fn q(t: &Iet, text: &str) -> ExactScalar {
        t.basis().from_rational(rat(text))
    }

    fn swap_iet(l1: &str, l2: &str) -> Iet {
        let b = Basis::rational();
        Iet::new(
            vec!["A".into(), "B".into()],
            vec![1, 2],
            vec![2, 1],
            vec![b.from_rational(rat(l1)), b.from_rational(rat(l2))],
            Interval::new(b.from_int(0), b.from_int(1)),
        )
        .unwrap()
    }

    #[test]
    fn rejects_zero_budget() {
        assert!(matches!(
            connection_scan(&example1(), 0),
            Err(ConnectionError::BadBudget)
        ));
    }

    #[test]
    fn example1_scan_is_fully_connected() {
        let t = example1();
        let r = connection_scan(&t, 100).unwrap();

        assert_eq!(r.d_prime, 3);
        assert!(r.fully_resolved());

        // Trivial conventions on the first domain/range letters.
        assert!(r.letters[0].m_trivial);
        assert_eq!(r.m(0), ScanBound::Found(1));
        assert_eq!(r.letters[0].m_partner, Some(3));
        assert!(r.letters[3].n_trivial);
        assert_eq!(r.n(3), ScanBound::Found(1));
        assert_eq!(r.letters[3].n_partner, Some(0));

        // Backward values and partners.
        assert_eq!(r.m(1), ScanBound::Found(12));
        assert_eq!(r.letters[1].m_partner, Some(0));
        assert_eq!(r.m(2), ScanBound::Found(2));
        assert_eq!(r.letters[2].m_partner, Some(2)); // self-connection
        assert_eq!(r.m(3), ScanBound::Found(2));
        assert_eq!(r.letters[3].m_partner, Some(1));

        // Forward values and partners.
        assert_eq!(r.n(0), ScanBound::Found(12));
        assert_eq!(r.letters[0].n_partner, Some(1));
        assert_eq!(r.n(1), ScanBound::Found(2));
        assert_eq!(r.letters[1].n_partner, Some(3));
        assert_eq!(r.n(2), ScanBound::Found(2));
        assert_eq!(r.letters[2].n_partner, Some(2));

        // Short segments in full.
        let c3 = r.connection_for(2).unwrap();
        assert_eq!(c3.segment, vec![q(&t, "1/4"), q(&t, "5/8"), q(&t, "1/4")]);
        let c4 = r.connection_for(3).unwrap();
        assert_eq!(c4.segment, vec![q(&t, "3/8"), q(&t, "3/4"), q(&t, "1/10")]);

        // The long segment, spot-checked.
        let c2 = r.connection_for(1).unwrap();
        let expected = [
            "1/10", "19/40", "17/20", "1/5", "23/40", "19/20", "1/20", "17/40", "4/5",
            "3/20", "21/40", "9/10", "0",
        ];
        assert_eq!(c2.segment.len(), expected.len());
        for (point, text) in c2.segment.iter().zip(expected) {
            assert_eq!(*point, q(&t, text));
        }

        // All distinct points on non-trivial connections.
        assert_eq!(r.connection_points().unwrap().len(), 17);
    }

    #[test]
    fn example1_second_power_fixes_the_third_interval() {
        let t = example1();
        let i3 = t.domain_interval(2);
        let once = t.push_forward(&i3).unwrap();
        assert_eq!(once.len(), 1);
        assert_eq!(once[0].left, q(&t, "5/8"));
        assert_eq!(once[0].right, q(&t, "3/4"));
        let twice = t.push_forward(&once[0]).unwrap();
        assert_eq!(twice.len(), 1);
        assert_eq!(twice[0].left, i3.left);
        assert_eq!(twice[0].right, i3.right);
    }

    #[test]
    fn example2_scan_matches_hand_computation() {
        let t = example2();
        let r = connection_scan(&t, 100).unwrap();

        assert_eq!(r.d_prime, 3);
        assert_eq!(r.m(1), ScanBound::Found(11));
        assert_eq!(r.letters[1].m_partner, Some(2));
        assert_eq!(r.m(2), ScanBound::Found(3));
        assert_eq!(r.letters[2].m_partner, Some(1));
        assert_eq!(r.m(3), ScanBound::Found(11));
        assert_eq!(r.letters[3].m_partner, Some(0));

        assert_eq!(r.n(0), ScanBound::Found(11));
        assert_eq!(r.letters[0].n_partner, Some(3));
        assert_eq!(r.n(1), ScanBound::Found(3));
        assert_eq!(r.letters[1].n_partner, Some(2));
        assert_eq!(r.n(2), ScanBound::Found(11));
        assert_eq!(r.letters[2].n_partner, Some(1));

        // The connection through the midpoint of the base.
        let c = r.connection_for(2).unwrap();
        assert_eq!(
            c.segment,
            vec![q(&t, "9/40"), q(&t, "1/2"), q(&t, "31/40"), q(&t, "1/40")]
        );
        assert!(c.contains(&t.center_half()));
    }

    #[test]
    fn golden_scan_stays_unresolved() {
        let t = golden();
        let r = connection_scan(&t, 200).unwrap();
        assert_eq!(r.d_prime, 0);
        assert!(!r.fully_resolved());
        assert_eq!(r.m(1), ScanBound::Unknown(200));
        assert_eq!(r.n(0), ScanBound::Unknown(200));
        assert!(r.letters[0].m_trivial && r.letters[1].n_trivial);
        assert_eq!(r.unresolved_labels(), vec!["B".to_string()]);
        assert!(r.connection_points().unwrap().is_empty());
    }

    #[test]
    fn example1_obstruction_found() {
        let t = example1();
        let r = connection_scan(&t, 100).unwrap();
        let report = ergodicity_obstructions(&t, &r).unwrap();

        // The middle point of the first interval lies on the long segment
        // and satisfies the reflection identity.
        let item = report
            .items
            .iter()
            .find(|i| i.name == "connection.2.contains_center")
            .unwrap();
        assert!(matches!(item.status, crate::CheckStatus::Pass));
        assert!(item.detail.contains("c_1"));
        let refl = report
            .items
            .iter()
            .find(|i| i.name == "connection.2.reflection_identity")
            .unwrap();
        assert!(matches!(refl.status, crate::CheckStatus::Pass));

        // The two short connections avoid every middle point.
        let failures: Vec<_> = report.failures().collect();
        assert_eq!(failures.len(), 2);
        assert!(failures
            .iter()
            .all(|i| i.detail.starts_with("NotErgodic")));
        assert!(failures.iter().any(|i| i.name == "connection.3.contains_center"));
        assert!(failures.iter().any(|i| i.name == "connection.4.contains_center"));
    }

    #[test]
    fn example2_obstruction_analysis() {
        let t = example2();
        let r = connection_scan(&t, 100).unwrap();
        let report = ergodicity_obstructions(&t, &r).unwrap();

        // The midpoint of the base sits on the 3-step connection and the
        // reflection identity holds exactly.
        let item = report
            .items
            .iter()
            .find(|i| i.name == "connection.3.contains_center")
            .unwrap();
        assert!(matches!(item.status, crate::CheckStatus::Pass));
        assert!(item.detail.contains("c_1/2"));
        let refl = report
            .items
            .iter()
            .find(|i| i.name == "connection.3.reflection_identity")
            .unwrap();
        assert!(matches!(refl.status, crate::CheckStatus::Pass));

        // The rational instance is fully connected: the two long
        // connections carry no middle point and witness non-ergodicity.
        let failures: Vec<_> = report.failures().collect();
        assert_eq!(failures.len(), 2);
        assert!(failures.iter().any(|i| i.name == "connection.2.contains_center"));
        assert!(failures.iter().any(|i| i.name == "connection.4.contains_center"));
    }

    #[test]
    fn example2_irrational_has_single_benign_connection() {
        let t = example2_irrational();
        let r = connection_scan(&t, 300).unwrap();
        assert_eq!(r.d_prime, 1);
        assert_eq!(r.m(2), ScanBound::Found(3));
        assert_eq!(r.m(1), ScanBound::Unknown(300));
        assert_eq!(r.m(3), ScanBound::Unknown(300));

        let report = ergodicity_obstructions(&t, &r).unwrap();
        assert!(report.all_passed());
        let item = report
            .items
            .iter()
            .find(|i| i.name == "connection.3.contains_center")
            .unwrap();
        assert!(item.detail.contains("c_1/2"));
    }

    #[test]
    fn obstructions_require_symmetry() {
        let b = Basis::rational();
        let third = b.from_rational(rat("1/3"));
        let t = Iet::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![1, 2, 3],
            vec![3, 1, 2],
            vec![third.clone(), third.clone(), third.clone()],
            Interval::new(b.from_int(0), b.from_int(1)),
        )
        .unwrap();
        assert!(!t.is_symmetric());
        let r = connection_scan(&t, 10).unwrap();
        assert!(matches!(
            ergodicity_obstructions(&t, &r),
            Err(ConnectionError::NotSymmetric)
        ));
    }

    #[test]
    fn endpoint_pairing_holds_on_the_presets() {
        for (t, budget) in [
            (example1(), 100),
            (example2(), 100),
            (golden(), 200),
            (example2_irrational(), 200),
        ] {
            let r = connection_scan(&t, budget).unwrap();
            let report = symmetric_endpoint_pairing(&t, &r).unwrap();
            assert!(report.all_passed(), "{}", report.summary());
        }
    }

    #[test]
    fn mirrored_endpoint_iterates_agree() {
        // I(T^{-m+1}(d I_alpha)) = T^m(d I_alpha-hat) for m below the
        // backward value of alpha.
        let t = example2();
        let alpha = 2;
        let hat = t.prev_in_domain(alpha).unwrap();
        for m in 1..3i64 {
            let lhs = t.involution(&t.apply_n(t.boundary(alpha), -m + 1).unwrap());
            let rhs = t.apply_n(t.boundary(hat), m).unwrap();
            assert_eq!(lhs, rhs, "m = {m}");
        }

        let t = golden();
        for m in 1..20i64 {
            let lhs = t.involution(&t.apply_n(t.boundary(1), -m + 1).unwrap());
            let rhs = t.apply_n(t.boundary(0), m).unwrap();
            assert_eq!(lhs, rhs, "m = {m}");
        }
    }

    #[test]
    fn periodic_decomposition_of_rational_rotations() {
        // Swap with lengths (1/3, 2/3): three cells of period 3.
        let t = swap_iet("1/3", "2/3");
        let r = connection_scan(&t, 10).unwrap();
        assert_eq!(r.m(1), ScanBound::Found(2));
        let cells = periodic_decomposition(&t, &r, 100).unwrap();
        assert_eq!(cells.len(), 3);
        assert!(cells.iter().all(|(_, p)| *p == 3));
        assert_eq!(cells[0].0.left, q(&t, "0"));
        assert_eq!(cells[0].0.right, q(&t, "1/3"));
        assert_eq!(cells[2].0.right, q(&t, "1"));

        // Swap with lengths (1/2, 1/2): two cells of period 2.
        let t = swap_iet("1/2", "1/2");
        let r = connection_scan(&t, 10).unwrap();
        let cells = periodic_decomposition(&t, &r, 100).unwrap();
        assert_eq!(cells.len(), 2);
        assert!(cells.iter().all(|(_, p)| *p == 2));
    }

    #[test]
    fn periodic_decomposition_of_a_symmetric_three_letter_map() {
        let b = Basis::rational();
        let t = Iet::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![1, 2, 3],
            vec![3, 2, 1],
            vec![
                b.from_rational(rat("1/4")),
                b.from_rational(rat("1/2")),
                b.from_rational(rat("1/4")),
            ],
            Interval::new(b.from_int(0), b.from_int(1)),
        )
        .unwrap();
        let r = connection_scan(&t, 10).unwrap();
        let cells = periodic_decomposition(&t, &r, 100).unwrap();
        assert_eq!(cells.len(), 3);
        // The middle interval is fixed pointwise, the outer two swap.
        assert_eq!(cells[0].1, 2);
        assert_eq!(cells[1].0.left, q(&t, "1/4"));
        assert_eq!(cells[1].0.right, q(&t, "3/4"));
        assert_eq!(cells[1].1, 1);
        assert_eq!(cells[2].1, 2);
    }

    #[test]
    fn periodic_decomposition_of_the_fully_connected_preset() {
        let t = example1();
        let r = connection_scan(&t, 100).unwrap();
        let cells = periodic_decomposition(&t, &r, 1000).unwrap();
        assert_eq!(cells.len(), 17);

        // Exact tiling of the base.
        assert_eq!(cells[0].0.left, t.base().left);
        for w in cells.windows(2) {
            assert_eq!(w[0].0.right, w[1].0.left);
        }
        assert_eq!(cells.last().unwrap().0.right, t.base().right);

        // The third exchanged interval and its image form the period-2
        // component; everything else has period 15.
        for (cell, period) in &cells {
            let is_i3 = cell.left == q(&t, "1/4") && cell.right == q(&t, "3/8");
            let is_ti3 = cell.left == q(&t, "5/8") && cell.right == q(&t, "3/4");
            if is_i3 || is_ti3 {
                assert_eq!(*period, 2);
            } else {
                assert_eq!(*period, 15);
            }
            // Certify the period on the left endpoint.
            assert_eq!(
                t.apply_n(&cell.left, *period as i64).unwrap(),
                cell.left
            );
        }
    }

    #[test]
    fn periodic_decomposition_certifies_on_the_second_preset() {
        let t = example2();
        let r = connection_scan(&t, 100).unwrap();
        let cells = periodic_decomposition(&t, &r, 1000).unwrap();
        assert_eq!(cells[0].0.left, t.base().left);
        for w in cells.windows(2) {
            assert_eq!(w[0].0.right, w[1].0.left);
        }
        assert_eq!(cells.last().unwrap().0.right, t.base().right);
        for (cell, period) in &cells {
            assert!(*period >= 1);
            assert_eq!(
                t.apply_n(&cell.left, *period as i64).unwrap(),
                cell.left
            );
        }
    }

    #[test]
    fn periodic_decomposition_requires_resolution() {
        let t = golden();
        let r = connection_scan(&t, 50).unwrap();
        assert!(matches!(
            periodic_decomposition(&t, &r, 100),
            Err(ConnectionError::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn scan_bound_serialization() {
        assert_eq!(
            serde_json::to_string(&ScanBound::Found(12)).unwrap(),
            "12"
        );
        assert_eq!(
            serde_json::to_string(&ScanBound::Unknown(100)).unwrap(),
            r#"{"unknown_up_to":100}"#
        );
        assert_eq!(ScanBound::Found(3).to_string(), "3");
        assert_eq!(ScanBound::Unknown(100).to_string(), ">100");
    }
}
