//! Symmetric subintervals, symmetric induction and center tracking, and the
//! alternating eigenfunction construction.
//!
//! For a symmetric map the reflection `I(x) = a + b - x` conjugates `T` to
//! its inverse. A subinterval is *symmetric* when it is centred on one of
//! the distinguished points: `J = [c_beta - D, c_beta + D) ⊆ I_beta` for a
//! letter `beta`, or `J = [c_1/2 - D, c_1/2 + D)` for the midpoint of the
//! base. Such intervals arise dynamically from endpoint orbits
//! ([`symmetric_interval`]), the induced map on them inherits the reversing
//! identity, and — away from connections — its letters' centers are exact
//! backward iterates of the original centers ([`symmetric_induce`]). When
//! the base midpoint lies inside a connection, labelling tower floors
//! alternately `+1`/`-1` produces an exact eigenfunction of eigenvalue `-1`
//! for the composition operator ([`build_eigenfunction`]).

use serde::Serialize;
use thiserror::Error;

use crate::connections::{ConnectionReport, ScanBound};
use crate::exact::{ExactError, ExactScalar};
use crate::iet::{CenterId, Iet, IetError, Interval};
use crate::induction::{
    backward_return, induce, InductionError, SubintervalSpec, TowerDecomposition,
};
use crate::report::CheckReport;

#[derive(Debug, Error)]
pub enum SymmetryError {
    #[error("the map is not symmetric")]
    NotSymmetric,
    #[error("invalid construction argument: {0}")]
    BadArgument(String),
    #[error(
        "the backward orbit of interval {label} reaches an endpoint after \
         {backward_value} steps, so depth m = {m} is unavailable"
    )]
    ConnectionTooShort {
        label: String,
        m: u64,
        backward_value: u64,
    },
    #[error(
        "cannot certify depth m = {m} for interval {label}: the scan only \
         ruled out connections up to {budget} steps"
    )]
    UnverifiedBound { label: String, m: u64, budget: u64 },
    #[error("a connection point ({point}) lies inside the subinterval")]
    ConnectionIntersectsJ { point: ExactScalar },
    #[error(
        "the endpoint orbits of interval {label} coincide at depth {m}; \
         the spanned interval is empty"
    )]
    DegenerateInterval { label: String, m: u64 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("tower {letter} has odd height {height}; no alternating labelling exists")]
    OddHeight { letter: usize, height: u64 },
    #[error(
        "no symmetric interval avoiding the known connections was found \
         (depths tried up to {tried_up_to})"
    )]
    NoDisjointInterval { tried_up_to: u64 },
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error(transparent)]
    Induction(#[from] InductionError),
    #[error(transparent)]
    Iet(#[from] IetError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Which pair of endpoint orbits spans the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetricVariant {
    /// Endpoints `T^{-m}(dI_alpha)`, `T^m(dI_alpha_hat)`: the interval is
    /// centred on the center of some exchanged interval.
    Beta,
    /// Endpoints `T^{-m+1}(dI_alpha)`, `T^m(dI_alpha_hat)`: the interval is
    /// centred on the midpoint of the base.
    Half,
}

/// A subinterval certified to be centred on a distinguished point.
#[derive(Debug, Clone, Serialize)]
pub struct SymmetricInterval {
    pub interval: Interval,
    pub center: CenterId,
}

impl SymmetricInterval {
    /// Build `[c - delta, c + delta)` around a distinguished center and
    /// certify the containment required of a symmetric interval.
    pub fn around(
        t: &Iet,
        center: CenterId,
        delta: &ExactScalar,
    ) -> Result<SymmetricInterval, SymmetryError> {
        if !t.is_symmetric() {
            return Err(SymmetryError::NotSymmetric);
        }
        if delta.sign()? <= 0 {
            return Err(SymmetryError::BadArgument(
                "the half-width must be positive".to_string(),
            ));
        }
        let c = t.center_of(center);
        let interval = Interval::new(&c - delta, &c + delta);
        let enclosure = match center {
            CenterId::Letter(beta) => t.domain_interval(beta),
            CenterId::Half => t.base().clone(),
        };
        if !interval.subset_of(&enclosure)? {
            return Err(SymmetryError::BadArgument(format!(
                "{} does not fit around {} with half-width {}",
                interval.describe(8),
                t.center_name(center),
                delta,
            )));
        }
        Ok(SymmetricInterval { interval, center })
    }

    /// The center point as a scalar.
    pub fn center_point(&self, t: &Iet) -> ExactScalar {
        t.center_of(self.center)
    }

    /// Half-width of the interval.
    pub fn delta(&self) -> ExactScalar {
        self.interval.width().half()
    }

    /// The reflection through the interval's own center,
    /// `x -> a_J + b_J - x`.
    pub fn reflect(&self, x: &ExactScalar) -> ExactScalar {
        &(&self.interval.left + &self.interval.right) - x
    }
}

/// Certify `m` against the scanned backward value of `alpha`: the endpoint
/// orbit `T^{-1}(dI_alpha), ..., T^{-m}(dI_alpha)` must stay clear of the
/// endpoint set, i.e. `m < M(alpha)`.
fn check_depth(
    t: &Iet,
    alpha: usize,
    m: u64,
    report: &ConnectionReport,
) -> Result<(), SymmetryError> {
    match report.m(alpha) {
        ScanBound::Found(n) => {
            if m >= n {
                return Err(SymmetryError::ConnectionTooShort {
                    label: t.label(alpha).to_string(),
                    m,
                    backward_value: n,
                });
            }
        }
        ScanBound::Unknown(budget) => {
            if m > budget {
                return Err(SymmetryError::UnverifiedBound {
                    label: t.label(alpha).to_string(),
                    m,
                    budget,
                });
            }
        }
    }
    Ok(())
}

/// Construct a symmetric interval from endpoint orbits: the left-closed
/// right-open interval with endpoints `T^{-m}(dI_alpha)` and
/// `T^m(dI_alpha_hat)` (variant [`SymmetricVariant::Beta`]) or
/// `T^{-m+1}(dI_alpha)` and `T^m(dI_alpha_hat)` ([`SymmetricVariant::Half`]),
/// where `alpha_hat` precedes `alpha` in the domain. Requires `m >= 1` and
/// `m < M(alpha)`; the reflection identity tying the two endpoints together
/// and the location of the resulting center are certified exactly.
pub fn symmetric_interval(
    t: &Iet,
    alpha: usize,
    m: u64,
    variant: SymmetricVariant,
    report: &ConnectionReport,
) -> Result<SymmetricInterval, SymmetryError> {
    if !t.is_symmetric() {
        return Err(SymmetryError::NotSymmetric);
    }
    if alpha >= t.d() {
        return Err(SymmetryError::BadArgument(format!(
            "no interval with index {alpha}"
        )));
    }
    if m == 0 {
        return Err(SymmetryError::BadArgument(
            "the orbit depth m must be at least 1".to_string(),
        ));
    }
    let Some(alpha_hat) = t.prev_in_domain(alpha) else {
        return Err(SymmetryError::BadArgument(format!(
            "interval {} is leftmost in the domain and has no predecessor",
            t.label(alpha)
        )));
    };
    check_depth(t, alpha, m, report)?;

    let m_i = m as i64;
    let back = match variant {
        SymmetricVariant::Beta => t.apply_n(t.boundary(alpha), -m_i)?,
        SymmetricVariant::Half => t.apply_n(t.boundary(alpha), -m_i + 1)?,
    };
    let fore = t.apply_n(t.boundary(alpha_hat), m_i)?;

    // The two endpoints are mirror images: refl(T(T^{-m}(dI_alpha))) equals
    // T^m(dI_alpha_hat), which for the Half variant reads
    // refl(T^{-m+1}(dI_alpha)) = T^m(dI_alpha_hat).
    let mirrored = match variant {
        SymmetricVariant::Beta => t.involution(&t.apply(&back)?),
        SymmetricVariant::Half => t.involution(&back),
    };
    if mirrored != fore {
        return Err(SymmetryError::CertificationFailed(format!(
            "endpoint reflection identity fails for {} at depth {m}",
            t.label(alpha),
        )));
    }

    let (lo, hi) = if back.lt(&fore)? {
        (back, fore)
    } else {
        (fore, back)
    };
    let interval = Interval::new(lo, hi);
    if interval.is_empty()? {
        // Happens exactly when the backward orbit passes through the base
        // midpoint at this depth; the mirror identity still held.
        return Err(SymmetryError::DegenerateInterval {
            label: t.label(alpha).to_string(),
            m,
        });
    }

    let center = match variant {
        SymmetricVariant::Beta => {
            let beta = t.locate(&interval.left)?;
            if !interval.subset_of(&t.domain_interval(beta))? {
                return Err(SymmetryError::CertificationFailed(format!(
                    "the interval leaves {} instead of sitting around its center",
                    t.label(beta),
                )));
            }
            if interval.midpoint() != t.center(beta) {
                return Err(SymmetryError::CertificationFailed(format!(
                    "the interval midpoint is not the center of {}",
                    t.label(beta),
                )));
            }
            CenterId::Letter(beta)
        }
        SymmetricVariant::Half => {
            if interval.midpoint() != t.center_half() {
                return Err(SymmetryError::CertificationFailed(
                    "the interval midpoint is not the midpoint of the base".to_string(),
                ));
            }
            CenterId::Half
        }
    };
    Ok(SymmetricInterval { interval, center })
}

/// One induced letter's center explained as a backward iterate of an
/// original distinguished point.
#[derive(Debug, Clone, Serialize)]
pub struct CenterAssignment {
    /// The induced letter whose center is being described.
    pub induced_letter: usize,
    /// The original center `c_sigma` it comes from.
    pub source: CenterId,
    /// The backward time `l` with `c^J = T^{-l}(c_sigma)`.
    pub backward_time: u64,
}

/// The correspondence between induced centers and original centers.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CenterMap {
    pub entries: Vec<CenterAssignment>,
}

impl CenterMap {
    pub fn entry_for(&self, induced_letter: usize) -> Option<&CenterAssignment> {
        self.entries
            .iter()
            .find(|e| e.induced_letter == induced_letter)
    }

    /// Distinct sources map to distinct induced letters and vice versa.
    pub fn is_injective(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                self.entries[i].induced_letter != self.entries[j].induced_letter
                    && self.entries[i].source != self.entries[j].source
            })
        })
    }

    /// Every one of the `d_j` induced letters has an explanation.
    pub fn covers(&self, d_j: usize) -> bool {
        self.is_injective()
            && self.entries.len() == d_j
            && (0..d_j).all(|g| self.entry_for(g).is_some())
    }
}

fn delta_half(id: CenterId) -> u64 {
    match id {
        CenterId::Half => 1,
        CenterId::Letter(_) => 0,
    }
}

/// The centers of `t` that lie on some non-trivial connection segment.
fn centers_in_connections(t: &Iet, report: &ConnectionReport) -> Vec<CenterId> {
    let mut hits = Vec::new();
    let mut ids: Vec<CenterId> = (0..t.d()).map(CenterId::Letter).collect();
    ids.push(CenterId::Half);
    for id in ids {
        let c = t.center_of(id);
        if report.connections.iter().any(|conn| conn.contains(&c)) {
            hits.push(id);
        }
    }
    hits
}

/// Midpoints of the refinement of the induced map's base by its domain
/// breaks and the reflections of its image breaks. Both sides of the
/// reversing identity are affine with slope -1 on each cell, so agreement
/// at these midpoints certifies agreement everywhere off a finite set.
fn conjugacy_samples(induced: &Iet) -> Result<Vec<ExactScalar>, SymmetryError> {
    let base = induced.base();
    let mut cuts: Vec<ExactScalar> = vec![base.left.clone(), base.right.clone()];
    for letter in 0..induced.d() {
        cuts.push(induced.boundary(letter).clone());
        cuts.push(induced.involution(induced.image_boundary(letter)));
    }
    let mut cuts = crate::exact::sort_by_scalar_key(cuts, |p| p)?;
    cuts.dedup();
    let mut samples = Vec::with_capacity(cuts.len().saturating_sub(1));
    for pair in cuts.windows(2) {
        samples.push((&pair[0] + &pair[1]).half());
    }
    Ok(samples)
}

/// Induce on a symmetric interval disjoint from all known connections and
/// certify the expected structure: the reversing identity for the induced
/// map, the letter count `d - d'`, symmetry of the induced permutation, and
/// the center correspondence (each induced center is `p_J(c_sigma)` for a
/// distinct original center away from connections, with the parity relation
/// `r_J = 2l - 1_{sigma = 1/2}`). Violated clauses are recorded in the
/// returned report, not raised as errors: they are the expected outcome for
/// non-ergodic inputs.
pub fn symmetric_induce(
    t: &Iet,
    s: &SymmetricInterval,
    report: &ConnectionReport,
    budget: u64,
) -> Result<(TowerDecomposition, CenterMap, CheckReport), SymmetryError> {
    if !t.is_symmetric() {
        return Err(SymmetryError::NotSymmetric);
    }
    if let Some(point) = report.point_in_interior(&s.interval)? {
        return Err(SymmetryError::ConnectionIntersectsJ { point });
    }

    let tower = induce(t, &SubintervalSpec::Explicit(s.interval.clone()), budget)?;
    let induced = &tower.induced;
    let mut out = CheckReport::new();

    out.absorb("conjugacy", induced.verify_conjugacy(&conjugacy_samples(induced)?)?);
    out.record(
        "letter_count",
        induced.d() == t.d() - report.d_prime,
        format!(
            "induced map has {} letters, expected d - d' = {} - {}",
            induced.d(),
            t.d(),
            report.d_prime
        ),
    );
    out.record(
        "induced_permutation_symmetric",
        induced.is_symmetric(),
        "the induced letters should be exchanged in reverse order".to_string(),
    );

    // Center correspondence: distinguished points away from connections,
    // other than the center of J itself, flow backwards onto the induced
    // centers.
    let blocked = centers_in_connections(t, report);
    let mut map = CenterMap::default();
    let mut ids: Vec<CenterId> = (0..t.d()).map(CenterId::Letter).collect();
    ids.push(CenterId::Half);
    for sigma in ids {
        if sigma == s.center {
            continue;
        }
        let c = t.center_of(sigma);
        let name = t.center_name(sigma);
        let (p, ell) = backward_return(t, &s.interval, &c, budget)?;
        if blocked.contains(&sigma) {
            // Dichotomy branch: centers inside connections land on induced
            // endpoints, not centers.
            let on_boundary = (0..induced.d()).any(|g| *induced.boundary(g) == p);
            out.record(
                format!("center_map.{name}.connection_case"),
                on_boundary,
                format!(
                    "{name} lies in a connection; its backward return should \
                     be an induced endpoint (backward time {ell})"
                ),
            );
            continue;
        }
        let matched = (0..induced.d()).find(|&g| induced.center(g) == p);
        match matched {
            Some(g) => {
                let delta = delta_half(sigma);
                let forward = t.apply_n(&c, ell as i64 - delta as i64)?;
                let image_ok = induced.apply(&p)? == forward;
                out.record(
                    format!("center_map.{name}.image"),
                    image_ok,
                    format!(
                        "induced image of the pulled-back center should be \
                         the forward iterate at time {}",
                        ell - delta
                    ),
                );
                let parity_ok = tower.height(g) == 2 * ell - delta;
                out.record(
                    format!("center_map.{name}.parity"),
                    parity_ok,
                    format!(
                        "return time of the induced center should be 2*{ell} - {delta}, \
                         tower height is {}",
                        tower.height(g)
                    ),
                );
                map.entries.push(CenterAssignment {
                    induced_letter: g,
                    source: sigma,
                    backward_time: ell,
                });
            }
            None => {
                out.fail(
                    format!("center_map.{name}.assignment"),
                    format!(
                        "backward return of {name} (time {ell}) is neither an \
                         induced center nor explained by a known connection"
                    ),
                );
            }
        }
    }
    map.entries.sort_by_key(|e| e.induced_letter);
    out.record(
        "center_map.injective",
        map.is_injective(),
        "distinct sources must explain distinct induced letters".to_string(),
    );
    out.record(
        "center_map.covers",
        map.covers(induced.d()),
        format!(
            "{} assignments for {} induced letters",
            map.entries.len(),
            induced.d()
        ),
    );

    Ok((tower, map, out))
}

/// Exact check that the global reflection realises the local one: for a
/// letter-centred interval, `refl(T(x))` is the reflection of `x` through
/// the interval's center for every sample in the interior; for a midpoint-
/// centred interval, `refl` itself is.
pub fn local_reflection_check(
    t: &Iet,
    s: &SymmetricInterval,
    samples: &[ExactScalar],
) -> Result<CheckReport, SymmetryError> {
    if !t.is_symmetric() {
        return Err(SymmetryError::NotSymmetric);
    }
    let mut out = CheckReport::new();
    for (i, x) in samples.iter().enumerate() {
        if !s.interval.contains_interior(x)? {
            return Err(SymmetryError::BadArgument(format!(
                "sample {x} is not interior to {}",
                s.interval.describe(8)
            )));
        }
        let via_global = match s.center {
            CenterId::Letter(_) => t.involution(&t.apply(x)?),
            CenterId::Half => t.involution(x),
        };
        let local = s.reflect(x);
        out.record(
            format!("local_reflection.sample{i}"),
            via_global == local,
            format!("x = {x}: global route gives {via_global}, local reflection {local}"),
        );
    }
    Ok(out)
}

/// Exact check of the backward-iterate identity
/// `T^{-m}(c) = T^{-1}(refl(T^{m - d}(c)))` with `d = 1` for the base
/// midpoint and `0` otherwise, valid whenever the forward orbit
/// `c, T(c), ..., T^{m-1}(c)` stays clear of the endpoint set. The premise
/// and the identity are both recorded.
pub fn inverse_iterates_check(
    t: &Iet,
    sigma: CenterId,
    m: u64,
) -> Result<CheckReport, SymmetryError> {
    if !t.is_symmetric() {
        return Err(SymmetryError::NotSymmetric);
    }
    if m == 0 {
        return Err(SymmetryError::BadArgument(
            "the iterate depth m must be at least 1".to_string(),
        ));
    }
    let c = t.center_of(sigma);
    let name = t.center_name(sigma);
    let mut out = CheckReport::new();
    let mut y = c.clone();
    for k in 0..m {
        if let Some(beta) = t.boundary_hit(&y) {
            out.fail(
                "premise.orbit_avoids_endpoints",
                format!(
                    "T^{k}({name}) is the left endpoint of {}; the identity \
                     does not apply",
                    t.label(beta)
                ),
            );
            return Ok(out);
        }
        if k + 1 < m {
            y = t.apply(&y)?;
        }
    }
    out.pass(
        "premise.orbit_avoids_endpoints",
        format!("{name}, ..., T^{}({name}) avoid all endpoints", m - 1),
    );
    let delta = delta_half(sigma);
    let lhs = t.apply_n(&c, -(m as i64))?;
    let fwd = t.apply_n(&c, m as i64 - delta as i64)?;
    let rhs = t.apply_inverse(&t.involution(&fwd))?;
    out.record(
        "identity",
        lhs == rhs,
        format!("T^{{-{m}}}({name}) = {lhs} vs reflected route {rhs}"),
    );
    Ok(out)
}

/// An exact eigenfunction of eigenvalue -1: tower floors labelled
/// alternately `+1`/`-1` from the ground up.
#[derive(Debug, Clone)]
pub struct EigenfunctionTable {
    /// The symmetric interval the towers were induced on.
    pub interval: SymmetricInterval,
    /// The towers the labelling lives on.
    pub tower: TowerDecomposition,
    /// `signs[letter][level]`, `+1` on even levels, `-1` on odd ones.
    pub signs: Vec<Vec<i8>>,
    /// Certification record for the construction.
    pub checks: CheckReport,
}

impl EigenfunctionTable {
    /// The sign at a point, if it lies on some floor.
    pub fn sign_at(&self, x: &ExactScalar) -> Result<Option<i8>, ExactError> {
        Ok(self
            .tower
            .locate_floor(x)?
            .map(|(letter, level)| self.signs[letter][level as usize]))
    }

    /// All floors in base order with their signs.
    pub fn rows(&self) -> Vec<(usize, u64, i8)> {
        self.tower
            .floor_order
            .iter()
            .map(|&(letter, level)| (letter, level, self.signs[letter][level as usize]))
            .collect()
    }
}

/// Walk endpoint orbits of increasing depth and hand every symmetric
/// interval disjoint from the known connections to `consider`, stopping at
/// the first one it accepts.
fn search_disjoint_intervals<R>(
    t: &Iet,
    report: &ConnectionReport,
    max_depth: u64,
    mut consider: impl FnMut(SymmetricInterval) -> Result<Option<R>, SymmetryError>,
) -> Result<Option<R>, SymmetryError> {
    for m in 1..=max_depth {
        for alpha in 0..t.d() {
            if alpha == t.first_domain_letter() {
                continue;
            }
            for variant in [SymmetricVariant::Beta, SymmetricVariant::Half] {
                let cand = match symmetric_interval(t, alpha, m, variant, report) {
                    Ok(s) => s,
                    Err(
                        SymmetryError::ConnectionTooShort { .. }
                        | SymmetryError::UnverifiedBound { .. }
                        | SymmetryError::DegenerateInterval { .. },
                    ) => continue,
                    Err(e) => return Err(e),
                };
                if report.point_in_interior(&cand.interval)?.is_none() {
                    if let Some(r) = consider(cand)? {
                        return Ok(Some(r));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The first symmetric interval (by endpoint-orbit depth) whose interior
/// avoids all known connection points.
pub fn disjoint_symmetric_interval(
    t: &Iet,
    report: &ConnectionReport,
    max_depth: u64,
) -> Result<SymmetricInterval, SymmetryError> {
    search_disjoint_intervals(t, report, max_depth, |s| Ok(Some(s)))?.ok_or(
        SymmetryError::NoDisjointInterval {
            tried_up_to: max_depth,
        },
    )
}

/// Maximum endpoint-orbit depth tried when searching for a connection-free
/// symmetric interval.
pub const EIGENFUNCTION_SEARCH_DEPTH: u64 = 200;

/// Build an exact eigenfunction of eigenvalue -1 when the base midpoint
/// lies inside a connection: induce on a symmetric interval (the given one,
/// or one found by search), require every tower height to be even, label
/// floors alternately and verify the sign flip `f(T(x)) = -f(x)` on every
/// floor.
pub fn build_eigenfunction(
    t: &Iet,
    report: &ConnectionReport,
    explicit: Option<&SymmetricInterval>,
    budget: u64,
) -> Result<EigenfunctionTable, SymmetryError> {
    if !t.is_symmetric() {
        return Err(SymmetryError::NotSymmetric);
    }
    let half = t.center_half();
    let carrier = report
        .connections
        .iter()
        .find(|conn| conn.contains(&half))
        .ok_or_else(|| {
            SymmetryError::NotApplicable(
                "the base midpoint does not lie on any known connection".to_string(),
            )
        })?;

    let mut checks = CheckReport::new();
    checks.pass(
        "midpoint_in_connection",
        format!(
            "base midpoint found on the connection of {} at backward step {}",
            t.label(carrier.beta),
            carrier.position_of(&half).unwrap_or_default(),
        ),
    );

    let (s, tower) = match explicit {
        Some(s) => {
            match report.point_in_interior(&s.interval)? {
                None => checks.pass(
                    "interval_connection_free",
                    "the interval interior avoids all known connection points".to_string(),
                ),
                Some(p) => checks.pass(
                    "interval_connection_free",
                    format!(
                        "connection point {} lies inside the given interval; \
                         the labelling is still verified structurally below",
                        p
                    ),
                ),
            }
            let tower = induce(t, &SubintervalSpec::Explicit(s.interval.clone()), budget)?;
            (s.clone(), tower)
        }
        None => {
            // Try connection-free intervals in search order; skip those
            // whose towers fail to cover the base (possible when the map
            // has periodic components) and remember the first such failure.
            let mut skipped: Option<InductionError> = None;
            let found = search_disjoint_intervals(
                t,
                report,
                EIGENFUNCTION_SEARCH_DEPTH,
                |cand| {
                    match induce(t, &SubintervalSpec::Explicit(cand.interval.clone()), budget)
                    {
                        Ok(tower) => Ok(Some((cand, tower))),
                        Err(
                            e @ (InductionError::IncompleteTower { .. }
                            | InductionError::BudgetExhausted { .. }),
                        ) => {
                            skipped.get_or_insert(e);
                            Ok(None)
                        }
                        Err(e) => Err(e.into()),
                    }
                },
            )?;
            match found {
                Some((cand, tower)) => {
                    checks.pass(
                        "interval_connection_free",
                        format!(
                            "search found {} centred on {}",
                            cand.interval.describe(8),
                            t.center_name(cand.center),
                        ),
                    );
                    (cand, tower)
                }
                None => {
                    return Err(match skipped {
                        Some(e) => e.into(),
                        None => SymmetryError::NoDisjointInterval {
                            tried_up_to: EIGENFUNCTION_SEARCH_DEPTH,
                        },
                    })
                }
            }
        }
    };
    for (letter, &h) in tower.heights.iter().enumerate() {
        if h % 2 != 0 {
            return Err(SymmetryError::OddHeight { letter, height: h });
        }
    }
    checks.pass(
        "heights_even",
        format!("tower heights {:?} are all even", tower.heights),
    );

    let signs: Vec<Vec<i8>> = tower
        .heights
        .iter()
        .map(|&h| (0..h).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect())
        .collect();
    let table = EigenfunctionTable {
        interval: s,
        tower,
        signs,
        checks: CheckReport::new(),
    };

    // The alternation makes f(T(x)) = -f(x) within each tower; the top
    // floors map back into ground floors (sign +1) and carry sign -1 by
    // evenness. Verify the flip exactly on every floor midpoint.
    let mut flips_ok = true;
    let mut flip_detail = String::new();
    for &(letter, level) in &table.tower.floor_order {
        let x = table.tower.floor(letter, level).midpoint();
        let fx = table.signs[letter][level as usize];
        let y = t.apply(&x)?;
        match table.sign_at(&y)? {
            Some(fy) if fy == -fx => {}
            other => {
                flips_ok = false;
                flip_detail = format!(
                    "floor ({letter}, {level}): f = {fx}, image sign {other:?}"
                );
                break;
            }
        }
    }
    let mut checks = checks;
    checks.record(
        "sign_flip",
        flips_ok,
        if flips_ok {
            "f(T(x)) = -f(x) verified on every floor".to_string()
        } else {
            flip_detail
        },
    );
    for (letter, signs) in table.signs.iter().enumerate() {
        let sum: i64 = signs.iter().map(|&s| s as i64).sum();
        checks.record(
            format!("tower_sum.{}", table.tower.induced.label(letter)),
            sum == 0,
            format!("signs over the tower sum to {sum}"),
        );
    }

    Ok(EigenfunctionTable { checks, ..table })
}
