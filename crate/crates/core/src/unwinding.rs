//! Rebuilding a map from its Rokhlin towers with reassigned floor widths.
//!
//! A tower decomposition over a subinterval `J` tiles the base with floors
//! `T^i(I_g^J)`. Keeping the floors in their base order but giving every
//! floor of tower `g` a new width `v_g` (with total mass `sum_g v_g h_g`
//! equal to the base length) lays out a new tiling, and requiring the new
//! map to climb the new towers exactly as the old one did determines an
//! interval exchange with the same labels and permutation pair. [`unwind`]
//! performs that reassembly and certifies the outcome by re-inducing the
//! rebuilt map on the reassigned interval: the towers must reproduce the
//! original heights, floor order and permutation with the requested widths.
//!
//! The construction also respects the connection structure: every backward
//! endpoint identity of the original map holds verbatim in the rebuilt one
//! (new identities may appear at special width choices, e.g. when the
//! reassigned lengths are commensurable). The certification transcript
//! records both directions.

use crate::connections::{connection_scan, ConnectionError, ConnectionReport, ScanBound};
use crate::exact::{rat, Basis, ExactError, ExactScalar, Rat};
use crate::iet::{Iet, IetError, Interval};
use crate::induction::{induce, InductionError, SubintervalSpec, TowerDecomposition};
use crate::report::CheckReport;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum UnwindError {
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("reassigned mass {got} differs from the base length {expected}")]
    MassMismatch { expected: ExactScalar, got: ExactScalar },
    #[error("a connection point {point} lies inside the induction interval")]
    ConnectionIntersectsJ { point: ExactScalar },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("re-induction certification failed: {0}")]
    CertificationFailed(String),
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error(transparent)]
    Induction(#[from] InductionError),
    #[error(transparent)]
    Iet(#[from] IetError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Outcome of [`unwind`]: the rebuilt map, its reassigned induction
/// interval, the re-induced towers over it, and the verification transcript.
#[derive(Debug, Clone)]
pub struct UnwindResult {
    /// The rebuilt map: same labels and permutation pair, new lengths.
    pub iet: Iet,
    /// The reassigned induction interval, positioned by the floor layout.
    pub j_tilde: Interval,
    /// Towers of the rebuilt map over `j_tilde`, from re-induction.
    pub towers: TowerDecomposition,
    /// Signed-iterate representation of the left endpoint of the original
    /// `J` when one exists: `(letter, p)` with `T^p(d I_letter)` equal to
    /// the endpoint. The same expression is verified against the rebuilt
    /// map and `j_tilde`.
    pub left_endpoint_rep: Option<(usize, i64)>,
    /// Same for the right endpoint.
    pub right_endpoint_rep: Option<(usize, i64)>,
    /// The certification transcript; every item must pass.
    pub certification: CheckReport,
}

impl UnwindResult {
    /// The reassigned length vector, in letter order.
    pub fn lambda(&self) -> &[ExactScalar] {
        self.iet.lengths()
    }
}

/// Rebuild the map from the towers of `dec` with floor widths `v`.
///
/// `v` holds one positive width per induced letter; the total reassigned
/// mass `sum_g v[g] * heights[g]` must equal the base length exactly, and
/// the interior of `dec.j` must avoid every connection point recorded in
/// `report`. The returned certification re-induces the rebuilt map on the
/// reassigned interval and compares heights, floor order, permutation and
/// widths; a mismatch there is reported as a hard error since it would
/// indicate a defect in the construction itself rather than in its inputs.
pub fn unwind(
    t: &Iet,
    report: &ConnectionReport,
    dec: &TowerDecomposition,
    v: &[ExactScalar],
    budget: u64,
) -> Result<UnwindResult, UnwindError> {
    let d = t.d();
    let k = dec.induced.d();
    if report.letters.len() != d {
        return Err(UnwindError::HypothesisNotMet(
            "the connection report describes a different alphabet".into(),
        ));
    }
    if v.len() != k {
        return Err(UnwindError::BadArgument(format!(
            "need one width per tower ({k}), got {}",
            v.len()
        )));
    }
    let zero = t.basis().zero();
    for (g, w) in v.iter().enumerate() {
        if !Basis::compatible(t.basis(), w.basis()) {
            return Err(UnwindError::BadArgument(format!(
                "width for {} uses an incompatible basis",
                dec.induced.label(g)
            )));
        }
        if !w.gt(&zero)? {
            return Err(UnwindError::BadArgument(format!(
                "width for {} must be positive",
                dec.induced.label(g)
            )));
        }
    }

    let mut mass = zero.clone();
    for (g, h) in dec.heights.iter().enumerate() {
        mass = mass + v[g].scale(&rat(&h.to_string()));
    }
    let base_width = t.base().width();
    if mass != base_width {
        return Err(UnwindError::MassMismatch {
            expected: base_width,
            got: mass,
        });
    }

    if let Some(point) = report.point_in_interior(&dec.j)? {
        return Err(UnwindError::ConnectionIntersectsJ { point });
    }

    // Group the floors into the exchanged intervals: each floor must sit
    // inside a single continuity interval (floors map by translation, so
    // a genuine discontinuity can only fall on a floor boundary), and the
    // new length of each interval is the sum of its floors' new widths.
    let mut lambda = vec![zero.clone(); d];
    for &(g, i) in &dec.floor_order {
        let f = dec.floor(g, i);
        let letter = t.locate(&f.left)?;
        if !f.subset_of(&t.domain_interval(letter))? {
            return Err(UnwindError::HypothesisNotMet(format!(
                "floor {} of tower {} straddles the boundary of {}",
                i,
                dec.induced.label(g),
                t.label(letter)
            )));
        }
        lambda[letter] = &lambda[letter] + &v[g];
    }

    let t_new = Iet::new(
        t.labels().to_vec(),
        (0..d).map(|l| t.pi0(l)).collect(),
        (0..d).map(|l| t.pi1(l)).collect(),
        lambda,
        t.base().clone(),
    )?;

    // Lay the floors out again in base order with the new widths; the
    // level-0 floors tile `J`, so their reassigned images form one
    // contiguous block, which is the new induction interval.
    let mut cursor = t.base().left.clone();
    let mut j_left: Option<ExactScalar> = None;
    let mut j_right: Option<ExactScalar> = None;
    let mut in_block = false;
    let mut after_block = false;
    for &(g, i) in &dec.floor_order {
        let next = &cursor + &v[g];
        if i == 0 {
            if after_block {
                return Err(UnwindError::HypothesisNotMet(
                    "ground floors do not form a contiguous block".into(),
                ));
            }
            if !in_block {
                j_left = Some(cursor.clone());
                in_block = true;
            }
            j_right = Some(next.clone());
        } else if in_block {
            in_block = false;
            after_block = true;
        }
        cursor = next;
    }
    let j_tilde = Interval::new(
        j_left.ok_or_else(|| UnwindError::HypothesisNotMet("no ground floors".into()))?,
        j_right.ok_or_else(|| UnwindError::HypothesisNotMet("no ground floors".into()))?,
    );

    let mut certification = CheckReport::new();

    // The built-in oracle: re-induce and demand the exact tower data back.
    let towers = induce(&t_new, &SubintervalSpec::Explicit(j_tilde.clone()), budget)?;
    if towers.induced.d() != k {
        return Err(UnwindError::CertificationFailed(format!(
            "re-induction produced {} towers, expected {k}",
            towers.induced.d()
        )));
    }
    if towers.heights != dec.heights {
        return Err(UnwindError::CertificationFailed(format!(
            "re-induction heights {:?} differ from {:?}",
            towers.heights, dec.heights
        )));
    }
    if towers.floor_order != dec.floor_order {
        return Err(UnwindError::CertificationFailed(
            "re-induction floors are ordered differently".into(),
        ));
    }
    for g in 0..k {
        if towers.induced.length(g) != &v[g] {
            return Err(UnwindError::CertificationFailed(format!(
                "re-induced width of {} is {}, expected {}",
                towers.induced.label(g),
                towers.induced.length(g),
                v[g]
            )));
        }
        if towers.induced.pi1(g) != dec.induced.pi1(g) {
            return Err(UnwindError::CertificationFailed(format!(
                "re-induced permutation sends {} to range position {}, expected {}",
                towers.induced.label(g),
                towers.induced.pi1(g),
                dec.induced.pi1(g)
            )));
        }
    }
    certification.pass(
        "reinduction",
        format!(
            "towers over {} reproduce the heights {:?}, the floor order, the \
             permutation and the reassigned widths",
            j_tilde.describe(8),
            dec.heights
        ),
    );

    // Endpoints of the exchanged intervals occupy the same floors in both
    // decompositions.
    let mut floors_ok = true;
    let mut floor_notes = Vec::new();
    for letter in 0..d {
        let old = dec.locate_floor(t.boundary(letter))?;
        let new = towers.locate_floor(t_new.boundary(letter))?;
        if old.is_none() || old != new {
            floors_ok = false;
            floor_notes.push(format!(
                "d I_{} moved from floor {:?} to {:?}",
                t.label(letter),
                old,
                new
            ));
        }
    }
    certification.record(
        "endpoint_floors",
        floors_ok,
        if floors_ok {
            format!("all {d} interval endpoints stay in their floors")
        } else {
            floor_notes.join("; ")
        },
    );

    // Every recorded backward endpoint identity of the original map must
    // hold verbatim for the rebuilt one.
    let mut persist_ok = true;
    let mut persist_notes = Vec::new();
    for c in &report.connections {
        let landed = t_new.apply_n(t_new.boundary(c.beta), -(c.steps as i64))?;
        if &landed != t_new.boundary(c.alpha) {
            persist_ok = false;
            persist_notes.push(format!(
                "T^-{}(d I_{}) no longer lands on d I_{}",
                c.steps,
                t_new.label(c.beta),
                t_new.label(c.alpha)
            ));
        }
    }
    certification.record(
        "connections_preserved",
        persist_ok,
        if persist_ok {
            format!(
                "{} backward endpoint identities carry over",
                report.connections.len()
            )
        } else {
            persist_notes.join("; ")
        },
    );

    // Rescan the rebuilt map: known finite bounds may only persist or drop
    // (a drop means an additional identity appeared earlier on the orbit,
    // which special width choices can create). A lost or delayed bound
    // fails the comparison.
    let rescanned = connection_scan(&t_new, report.n_max)?;
    let mut bounds_ok = true;
    let mut bound_notes = Vec::new();
    for letter in 0..d {
        for (table, old, new) in [
            ("M", report.m(letter), rescanned.m(letter)),
            ("N", report.n(letter), rescanned.n(letter)),
        ] {
            match (old, new) {
                (ScanBound::Found(a), ScanBound::Found(b)) if b > a => {
                    bounds_ok = false;
                    bound_notes.push(format!(
                        "{table}({}) receded from {a} to {b}",
                        t.label(letter)
                    ));
                }
                (ScanBound::Found(a), ScanBound::Found(b)) if b < a => {
                    bound_notes.push(format!(
                        "{table}({}) drops from {a} to {b}",
                        t.label(letter)
                    ));
                }
                (ScanBound::Found(a), ScanBound::Unknown(_)) => {
                    bounds_ok = false;
                    bound_notes.push(format!(
                        "{table}({}) = {a} was lost",
                        t.label(letter)
                    ));
                }
                (ScanBound::Unknown(_), ScanBound::Found(b)) => {
                    bound_notes.push(format!(
                        "{table}({}) newly found at {b}",
                        t.label(letter)
                    ));
                }
                _ => {}
            }
        }
    }
    certification.record(
        "connection_bounds",
        bounds_ok,
        if bound_notes.is_empty() {
            "M and N tables match exactly".to_string()
        } else {
            bound_notes.join("; ")
        },
    );

    // When an endpoint of `J` is a signed iterate of an interval endpoint,
    // the same expression must produce the corresponding endpoint of the
    // reassigned interval.
    let rep_limit = 2 * dec.total_floors() + 4;
    let left_endpoint_rep = signed_iterate_rep(t, &dec.j.left, rep_limit)?;
    let right_endpoint_rep = signed_iterate_rep(t, &dec.j.right, rep_limit)?;
    let mut rep_ok = true;
    let mut rep_notes = Vec::new();
    for (side, rep, target) in [
        ("left", &left_endpoint_rep, &j_tilde.left),
        ("right", &right_endpoint_rep, &j_tilde.right),
    ] {
        match rep {
            Some((letter, p)) => {
                let landed = t_new.apply_n(t_new.boundary(*letter), *p)?;
                if &landed == target {
                    rep_notes.push(format!("{side} = T^{p}(d I_{})", t.label(*letter)));
                } else {
                    rep_ok = false;
                    rep_notes.push(format!(
                        "{side} = T^{p}(d I_{}) does not carry over",
                        t.label(*letter)
                    ));
                }
            }
            None => rep_notes.push(format!(
                "{side}: no signed-iterate form within {rep_limit} steps"
            )),
        }
    }
    certification.record("j_endpoints_dynamic", rep_ok, rep_notes.join("; "));

    Ok(UnwindResult {
        iet: t_new,
        j_tilde,
        towers,
        left_endpoint_rep,
        right_endpoint_rep,
        certification,
    })
}

/// Find `(letter, p)` with `T^p(d I_letter) = target` and `|p| <= limit`,
/// preferring small `|p|` and backward powers on ties.
fn signed_iterate_rep(
    t: &Iet,
    target: &ExactScalar,
    limit: u64,
) -> Result<Option<(usize, i64)>, IetError> {
    let d = t.d();
    let mut forward: Vec<ExactScalar> = (0..d).map(|a| t.boundary(a).clone()).collect();
    let mut backward = forward.clone();
    for (letter, x) in forward.iter().enumerate() {
        if x == target {
            return Ok(Some((letter, 0)));
        }
    }
    for p in 1..=limit {
        for (letter, x) in backward.iter_mut().enumerate() {
            *x = t.apply_inverse(x)?;
            if &*x == target {
                return Ok(Some((letter, -(p as i64))));
            }
        }
        for (letter, x) in forward.iter_mut().enumerate() {
            *x = t.apply(x)?;
            if &*x == target {
                return Ok(Some((letter, p as i64)));
            }
        }
    }
    Ok(None)
}

/// The elementwise combination `s*v + (1-s)*w` of two width vectors.
pub fn blend_widths(
    v: &[ExactScalar],
    w: &[ExactScalar],
    s: &Rat,
) -> Result<Vec<ExactScalar>, UnwindError> {
    if v.len() != w.len() {
        return Err(UnwindError::BadArgument(format!(
            "width vectors have lengths {} and {}",
            v.len(),
            w.len()
        )));
    }
    let complement = rat("1") - s;
    Ok(v.iter()
        .zip(w)
        .map(|(a, b)| a.scale(s) + b.scale(&complement))
        .collect())
}

/// Dimension of the family of width reassignments around the given map:
/// one degree of freedom per tower, minus one for the mass constraint and
/// one per non-trivial connection recorded in the report.
///
/// The count uses the connections the scan actually found; letters whose
/// scan hit its budget without resolving contribute no constraint, so a
/// deeper connection on such a letter would lower the true dimension.
pub fn simplex_dim(t: &Iet, report: &ConnectionReport) -> Result<usize, UnwindError> {
    if report.letters.len() != t.d() {
        return Err(UnwindError::HypothesisNotMet(
            "the connection report describes a different alphabet".into(),
        ));
    }
    (t.d())
        .checked_sub(report.d_prime + 1)
        .ok_or_else(|| {
            UnwindError::HypothesisNotMet(format!(
                "{} non-trivial connections on {} letters leave no freedom",
                report.d_prime,
                t.d()
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connections::connection_scan;
    use crate::presets::{example1, example2, example2_irrational, golden};

    fn scalar(t: &Iet, text: &str) -> ExactScalar {
        t.basis().from_rational(rat(text))
    }

    fn golden_setup() -> (Iet, ConnectionReport, TowerDecomposition) {
        let t = golden();
        let report = connection_scan(&t, 200).unwrap();
        let j = SubintervalSpec::explicit(
            scalar(&t, "0"),
            t.basis().scalar(vec![rat("3/2"), rat("-1/2")]),
        );
        let dec = induce(&t, &j, 10_000).unwrap();
        (t, report, dec)
    }

    #[test]
    fn golden_unwinds_to_the_rational_rotation() {
        let (t, report, dec) = golden_setup();
        assert_eq!(dec.heights, vec![3, 2]);
        let v = vec![scalar(&t, "1/5"), scalar(&t, "1/5")];
        let res = unwind(&t, &report, &dec, &v, 10_000).unwrap();
        assert!(res.certification.all_passed(), "{}", res.certification.summary());

        assert_eq!(res.lambda()[0], scalar(&t, "3/5"));
        assert_eq!(res.lambda()[1], scalar(&t, "2/5"));
        assert_eq!(res.j_tilde.left, scalar(&t, "0"));
        assert_eq!(res.j_tilde.right, scalar(&t, "2/5"));
        assert_eq!(res.towers.heights, vec![3, 2]);
        assert_eq!(res.towers.induced.length(0), &v[0]);
        assert_eq!(res.towers.induced.length(1), &v[1]);

        // The endpoints of J are the 0th and 1st forward images of the
        // first interval's left endpoint.
        assert_eq!(res.left_endpoint_rep, Some((0, 0)));
        assert_eq!(res.right_endpoint_rep, Some((0, 1)));

        // The rebuilt map is periodic, so it picks up an identity the
        // original never had: five backward steps close up, and the scan
        // sees the hit after four.
        let rescanned = connection_scan(&res.iet, 50).unwrap();
        assert_eq!(rescanned.m(1), ScanBound::Found(4));
        assert_eq!(rescanned.d_prime, 1);
    }

    #[test]
    fn identity_widths_recover_the_original_map() {
        let (t, report, dec) = golden_setup();
        let v = dec.induced.lengths().to_vec();
        let res = unwind(&t, &report, &dec, &v, 10_000).unwrap();
        assert!(res.certification.all_passed(), "{}", res.certification.summary());
        assert_eq!(res.lambda(), t.lengths());
        assert_eq!(res.j_tilde, dec.j);

        let t = example2_irrational();
        let report = connection_scan(&t, 300).unwrap();
        let j = SubintervalSpec::Explicit(t.domain_interval(1));
        let dec = induce(&t, &j, 10_000).unwrap();
        let v = dec.induced.lengths().to_vec();
        let res = unwind(&t, &report, &dec, &v, 10_000).unwrap();
        assert!(res.certification.all_passed(), "{}", res.certification.summary());
        assert_eq!(res.lambda(), t.lengths());
    }

    #[test]
    fn alternative_widths_certify_and_blend_affinely() {
        let (t, report, dec) = golden_setup();
        let v = vec![scalar(&t, "1/5"), scalar(&t, "1/5")];
        let w = vec![scalar(&t, "1/10"), scalar(&t, "7/20")];

        let res_w = unwind(&t, &report, &dec, &w, 10_000).unwrap();
        assert!(res_w.certification.all_passed(), "{}", res_w.certification.summary());
        assert_eq!(res_w.lambda()[0], scalar(&t, "11/20"));
        assert_eq!(res_w.lambda()[1], scalar(&t, "9/20"));

        // Reassembly is affine in the widths.
        let s = rat("1/3");
        let u = blend_widths(&v, &w, &s).unwrap();
        assert_eq!(u[0], scalar(&t, "2/15"));
        assert_eq!(u[1], scalar(&t, "3/10"));
        let res_v = unwind(&t, &report, &dec, &v, 10_000).unwrap();
        let res_u = unwind(&t, &report, &dec, &u, 10_000).unwrap();
        assert!(res_u.certification.all_passed(), "{}", res_u.certification.summary());
        let blended = blend_widths(res_v.lambda(), res_w.lambda(), &s).unwrap();
        assert_eq!(res_u.lambda(), &blended[..]);
        assert_eq!(res_u.lambda()[0], scalar(&t, "17/30"));
        assert_eq!(res_u.lambda()[1], scalar(&t, "13/30"));
    }

    #[test]
    fn bad_width_vectors_are_rejected() {
        let (t, report, dec) = golden_setup();
        let wrong_mass = vec![scalar(&t, "1/5"), scalar(&t, "1/4")];
        assert!(matches!(
            unwind(&t, &report, &dec, &wrong_mass, 10_000),
            Err(UnwindError::MassMismatch { .. })
        ));
        let short = vec![scalar(&t, "1/5")];
        assert!(matches!(
            unwind(&t, &report, &dec, &short, 10_000),
            Err(UnwindError::BadArgument(_))
        ));
        let zero = vec![scalar(&t, "0"), scalar(&t, "1/2")];
        assert!(matches!(
            unwind(&t, &report, &dec, &zero, 10_000),
            Err(UnwindError::BadArgument(_))
        ));
    }

    #[test]
    fn connection_points_inside_j_are_rejected() {
        let t = example2();
        let report = connection_scan(&t, 300).unwrap();
        let j = SubintervalSpec::Explicit(t.domain_interval(1));
        let dec = induce(&t, &j, 10_000).unwrap();
        let v = dec.induced.lengths().to_vec();
        assert!(matches!(
            unwind(&t, &report, &dec, &v, 10_000),
            Err(UnwindError::ConnectionIntersectsJ { .. })
        ));
    }

    #[test]
    fn irrational_preset_unwind_certifies() {
        let t = example2_irrational();
        let report = connection_scan(&t, 300).unwrap();
        let j = SubintervalSpec::Explicit(t.domain_interval(1));
        let dec = induce(&t, &j, 10_000).unwrap();
        assert_eq!(dec.heights, vec![6, 8, 4]);

        let v = vec![
            scalar(&t, "1/18"),
            scalar(&t, "1/18"),
            scalar(&t, "1/18"),
        ];
        let res = unwind(&t, &report, &dec, &v, 10_000).unwrap();
        assert!(res.certification.all_passed(), "{}", res.certification.summary());
        assert_eq!(res.towers.heights, vec![6, 8, 4]);
        let total = res.lambda().iter().fold(t.basis().zero(), |a, b| a + b);
        assert_eq!(total, scalar(&t, "1"));
        // Both endpoints of I_2 are interval endpoints themselves.
        assert_eq!(res.left_endpoint_rep, Some((1, 0)));
        assert_eq!(res.right_endpoint_rep, Some((2, 0)));
    }

    #[test]
    fn simplex_dimension_counts_free_parameters() {
        let cases: [(Iet, u64, usize); 4] = [
            (golden(), 200, 1),
            (example1(), 100, 0),
            (example2(), 300, 0),
            (example2_irrational(), 300, 2),
        ];
        for (t, budget, dim) in cases {
            let report = connection_scan(&t, budget).unwrap();
            assert_eq!(simplex_dim(&t, &report).unwrap(), dim);
        }
    }
}
