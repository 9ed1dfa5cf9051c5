//! Nested rigidity towers for symmetric interval exchanges.
//!
//! Pick a letter whose center avoids every known connection and a second
//! letter whose backward endpoint orbit never closes up within the scanned
//! budget. The orbit then comes arbitrarily close to the free center, and
//! each close approach spans a symmetric interval around it. Shrinking the
//! approach radius yields a ladder of strictly nested symmetric intervals,
//! and inducing twice — once on each ladder interval, then again on the
//! distinguished middle floor of its largest tower — produces a stack of
//! floors `Xi_n` whose measure stays bounded below while the whole stack is
//! translated by less than `d/q_n` under `T^{q_n}`, where `q_n` is the
//! return time of the widest second-stage interval.
//!
//! Those rigidity times are what make centred sawtooth cocycles useful
//! witnesses of non-trivial recurrence: along the stack, the Birkhoff sums
//! `S_{q_n} f` are affine with slope exactly `a * q_n`, vanish at a
//! distinguished pulled-back center, and stay uniformly bounded. The
//! verification routine measures every one of these claims exactly, and the
//! witness routine reports the image intervals of `S_{q_n} f` whose
//! persistent overlap exhibits finite essential values of the skew product.

use num_bigint::BigInt;
use thiserror::Error;

use crate::cocycle::{birkhoff_sum, derivative_sum, Cocycle, CocycleError};
use crate::connections::{ConnectionReport, ScanBound};
use crate::exact::{sort_by_scalar_key, ExactError, ExactScalar, Rat};
use crate::iet::{CenterId, Iet, IetError, Interval};
use crate::induction::InductionError;
use crate::report::CheckReport;
use crate::symmetry::{
    symmetric_induce, symmetric_interval, CenterMap, SymmetricInterval, SymmetricVariant,
    SymmetryError,
};

#[derive(Debug, Error)]
pub enum RigidityError {
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("the exchange is not symmetric")]
    NotSymmetric,
    #[error("every letter center lies on a known connection")]
    NoFreeCenter,
    #[error(
        "every non-leftmost endpoint closes up a connection within {budget} backward steps; \
         the ladder needs an orbit that stays clear"
    )]
    NoUnresolvedEndpoint { budget: u64 },
    #[error(
        "no backward endpoint iterate fell within {epsilon} of the free center \
         in {cap} steps while building rung {depth}"
    )]
    BudgetExhausted { depth: u64, cap: u64, epsilon: String },
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Induction(#[from] InductionError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Iet(#[from] IetError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// One round of induction together with its center correspondence and the
/// certification transcript recorded while checking it.
#[derive(Debug, Clone)]
pub struct RigidityStage {
    pub towers: crate::induction::TowerDecomposition,
    pub centers: CenterMap,
    pub certification: CheckReport,
}

/// One rung of the ladder: everything produced at depth `n`.
#[derive(Debug, Clone)]
pub struct RigidityTower {
    /// Ladder depth, starting at 1.
    pub n: u64,
    /// Backward orbit depth of the endpoint iterate spanning `J_n`.
    pub m: u64,
    /// The target radius the approach had to beat at this depth.
    pub epsilon: ExactScalar,
    /// The symmetric interval `J_n` around the free center.
    pub j: SymmetricInterval,
    /// First induction: the towers over `J_n`.
    pub stage1: RigidityStage,
    /// Letter of the first-stage tower with the largest measure.
    pub gamma: usize,
    /// Measure of that tower.
    pub x_measure: ExactScalar,
    /// Height of that tower.
    pub gamma_height: u64,
    /// Level of the distinguished middle floor inside the `gamma` tower.
    pub central_level: u64,
    /// The middle floor, recentred on an original distinguished point.
    pub central: SymmetricInterval,
    /// Second induction: the towers over the middle floor.
    pub stage2: RigidityStage,
    /// Letter of the widest second-stage interval at this depth.
    pub top: usize,
    /// Original center explaining `top`; fixed across the whole ladder.
    pub top_source: CenterId,
    /// The rigidity time: height of the `top` tower in the second stage.
    pub q: u64,
    /// The moved stack: floors `T^i` of the top interval, `i < gamma_height/2`.
    pub xi: Vec<Interval>,
    /// Total measure of the stack.
    pub xi_measure: ExactScalar,
    /// The distinguished point `c` carried by the top tower: its backward
    /// orbit first re-enters the middle floor at time `ell`.
    pub center: ExactScalar,
    /// First backward entry time of `center`, equal to `(q + delta) / 2`.
    pub ell: u64,
    /// 1 when `center` is the midpoint of the base, 0 otherwise.
    pub delta: u64,
}

/// The full ladder: the selected letters, the rungs that track the same
/// widest second-stage interval as the deepest rung, and ladder-wide checks.
#[derive(Debug, Clone)]
pub struct RigidityConstruction {
    /// Letter whose center the ladder shrinks onto.
    pub beta: usize,
    /// Letter whose left endpoint supplies the interval endpoints.
    pub alpha: usize,
    /// Identity of the tracked second-stage letter, as an original center.
    pub top_source: CenterId,
    /// The kept rungs, ordered by depth.
    pub towers: Vec<RigidityTower>,
    /// Depths dropped because their own widest letter tracked a different
    /// center than the deepest rung.
    pub dropped: Vec<u64>,
    /// Ladder-wide facts: strict nesting and growth of the rigidity times.
    pub checks: CheckReport,
}

/// The first letter whose center avoids every known connection segment.
pub fn select_free_center(t: &Iet, report: &ConnectionReport) -> Option<usize> {
    (0..t.d()).find(|&beta| {
        let c = t.center(beta);
        !report.connections.iter().any(|conn| conn.contains(&c))
    })
}

/// The first non-leftmost letter whose backward endpoint orbit stayed clear
/// of the endpoint set for the whole scan.
pub fn select_unresolved_endpoint(t: &Iet, report: &ConnectionReport) -> Option<usize> {
    (0..t.d()).find(|&alpha| {
        t.pi0(alpha) != 1 && matches!(report.m(alpha), ScanBound::Unknown(_))
    })
}

fn int_rat(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

fn delta_of(id: CenterId) -> u64 {
    match id {
        CenterId::Half => 1,
        CenterId::Letter(_) => 0,
    }
}

fn dec(s: &ExactScalar) -> String {
    s.to_decimal(10).unwrap_or_else(|_| "<exact>".to_string())
}

struct Rung {
    n: u64,
    m: u64,
    epsilon: ExactScalar,
    j: SymmetricInterval,
    stage1: RigidityStage,
    gamma: usize,
    x_measure: ExactScalar,
    gamma_height: u64,
    central_level: u64,
    central: SymmetricInterval,
    stage2: RigidityStage,
    local_top: usize,
    local_source: CenterId,
    local_ell: u64,
    nested: bool,
}

/// Build the ladder of rigidity towers.
///
/// The free center and the unresolved endpoint are selected automatically;
/// at each depth the least backward iterate of the endpoint within the
/// current target radius spans the symmetric interval `J_n`, the radius for
/// the next depth shrinks to at most half the previous target and at most
/// the achieved approach distance, and the two-stage induction data is
/// certified as it is produced. A certification failure is a hard error:
/// the structural claims this construction rests on must all hold exactly.
pub fn build_rigidity_towers(
    t: &Iet,
    report: &ConnectionReport,
    depth: u64,
    budget: u64,
) -> Result<RigidityConstruction, RigidityError> {
    if !t.is_symmetric() {
        return Err(RigidityError::NotSymmetric);
    }
    if depth == 0 {
        return Err(RigidityError::BadArgument(
            "the ladder depth must be at least 1".to_string(),
        ));
    }
    if budget == 0 {
        return Err(RigidityError::BadArgument(
            "the search budget must be at least 1".to_string(),
        ));
    }
    if report.letters.len() != t.d() {
        return Err(RigidityError::BadArgument(format!(
            "the connection report describes {} letters, the exchange has {}",
            report.letters.len(),
            t.d()
        )));
    }

    let beta = select_free_center(t, report).ok_or(RigidityError::NoFreeCenter)?;
    let alpha = select_unresolved_endpoint(t, report)
        .ok_or(RigidityError::NoUnresolvedEndpoint { budget: report.n_max })?;
    let ScanBound::Unknown(scan_cap) = report.m(alpha) else {
        return Err(RigidityError::BadArgument(
            "the chosen endpoint orbit is already resolved".to_string(),
        ));
    };
    let cap = budget.min(scan_cap);

    let c_beta = t.center(beta);
    // The first target radius keeps every interval strictly inside the free
    // letter and strictly clear of every known connection point.
    let mut eps = t.length(beta).half();
    for p in report.connection_points()? {
        let dist = (&p - &c_beta).abs()?;
        if dist.lt(&eps)? {
            eps = dist;
        }
    }
    let mut eps = eps.half();

    let mut rungs: Vec<Rung> = Vec::new();
    for n in 1..=depth {
        let mut hit: Option<(u64, ExactScalar)> = None;
        let mut x = t.boundary(alpha).clone();
        for m in 1..=cap {
            x = t.apply_inverse(&x)?;
            let dist = (&x - &c_beta).abs()?;
            if dist.is_zero() {
                // The orbit passes through the center itself; the next
                // iterates still span honest intervals around it.
                continue;
            }
            if dist.lt(&eps)? {
                hit = Some((m, dist));
                break;
            }
        }
        let Some((m, radius)) = hit else {
            return Err(RigidityError::BudgetExhausted {
                depth: n,
                cap,
                epsilon: dec(&eps),
            });
        };

        let j = symmetric_interval(t, alpha, m, SymmetricVariant::Beta, report)?;
        if j.center != CenterId::Letter(beta) {
            return Err(RigidityError::CertificationFailed(format!(
                "rung {n} landed on {} instead of the free center {}",
                t.center_name(j.center),
                t.label(beta)
            )));
        }
        if j.delta() != radius {
            return Err(RigidityError::CertificationFailed(format!(
                "rung {n} spans half-width {} instead of the approach distance {}",
                dec(&j.delta()),
                dec(&radius)
            )));
        }
        let nested = match rungs.last() {
            Some(prev) => {
                j.interval.subset_of(&prev.j.interval)? && j.delta().lt(&prev.j.delta())?
            }
            None => true,
        };

        let (towers1, centers1, cert1) = symmetric_induce(t, &j, report, budget)?;
        if !cert1.all_passed() {
            let why = cert1.first_failure().map(|i| i.name.clone()).unwrap_or_default();
            return Err(RigidityError::CertificationFailed(format!(
                "first induction at rung {n}: {why}"
            )));
        }

        let d1 = towers1.induced.d();
        let mut gamma = 0usize;
        let mut x_measure = towers1
            .induced
            .length(0)
            .scale(&int_rat(towers1.height(0)));
        for g in 1..d1 {
            let meas = towers1.induced.length(g).scale(&int_rat(towers1.height(g)));
            if meas.gt(&x_measure)? {
                gamma = g;
                x_measure = meas;
            }
        }
        let gamma_height = towers1.height(gamma);
        if gamma_height < 2 {
            return Err(RigidityError::CertificationFailed(format!(
                "the largest tower at rung {n} is a single floor; nothing to climb"
            )));
        }
        let assignment = centers1.entry_for(gamma).cloned().ok_or_else(|| {
            RigidityError::CertificationFailed(format!(
                "the largest tower at rung {n} carries no distinguished center"
            ))
        })?;
        let central_level = assignment.backward_time;
        if central_level >= gamma_height {
            return Err(RigidityError::CertificationFailed(format!(
                "center entry time {central_level} exceeds the tower height {gamma_height} at rung {n}"
            )));
        }
        let central_floor = towers1.floor(gamma, central_level).clone();
        let central =
            SymmetricInterval::around(t, assignment.source, &central_floor.width().half())?;
        if central.interval != central_floor {
            return Err(RigidityError::CertificationFailed(format!(
                "the middle floor at rung {n} is not centred on {}",
                t.center_name(assignment.source)
            )));
        }

        let (towers2, centers2, cert2) = symmetric_induce(t, &central, report, budget)?;
        if !cert2.all_passed() {
            let why = cert2.first_failure().map(|i| i.name.clone()).unwrap_or_default();
            return Err(RigidityError::CertificationFailed(format!(
                "second induction at rung {n}: {why}"
            )));
        }
        let d2 = towers2.induced.d();
        let mut local_top = 0usize;
        for g in 1..d2 {
            if towers2
                .induced
                .length(g)
                .gt(towers2.induced.length(local_top))?
            {
                local_top = g;
            }
        }
        let top_entry = centers2.entry_for(local_top).cloned().ok_or_else(|| {
            RigidityError::CertificationFailed(format!(
                "the widest second-stage interval at rung {n} carries no distinguished center"
            ))
        })?;

        rungs.push(Rung {
            n,
            m,
            epsilon: eps.clone(),
            j,
            stage1: RigidityStage {
                towers: towers1,
                centers: centers1,
                certification: cert1,
            },
            gamma,
            x_measure,
            gamma_height,
            central_level,
            central,
            stage2: RigidityStage {
                towers: towers2,
                centers: centers2,
                certification: cert2,
            },
            local_top,
            local_source: top_entry.source,
            local_ell: top_entry.backward_time,
            nested,
        });
        eps = ExactScalar::min_of(eps.half(), radius)?;
    }

    let top_source = rungs.last().expect("depth >= 1").local_source;
    let mut checks = CheckReport::new();
    checks.record(
        "nested",
        rungs.iter().all(|r| r.nested),
        "each interval must sit strictly inside the previous one".to_string(),
    );

    let mut towers = Vec::new();
    let mut dropped = Vec::new();
    for rung in rungs {
        if rung.local_source != top_source {
            dropped.push(rung.n);
            continue;
        }
        let q = rung.stage2.towers.height(rung.local_top);
        let delta = delta_of(rung.local_source);
        let ell = rung.local_ell;
        if q + delta != 2 * ell {
            return Err(RigidityError::CertificationFailed(format!(
                "rung {}: rigidity time {q} breaks the parity 2*{ell} - {delta}",
                rung.n
            )));
        }
        let xi_count = rung.gamma_height / 2;
        if xi_count == 0 || xi_count > q {
            return Err(RigidityError::CertificationFailed(format!(
                "rung {}: a stack of {xi_count} floors does not fit under the return time {q}",
                rung.n
            )));
        }
        let xi: Vec<Interval> = (0..xi_count)
            .map(|i| rung.stage2.towers.floor(rung.local_top, i).clone())
            .collect();
        let xi_measure = rung
            .stage2
            .towers
            .induced
            .length(rung.local_top)
            .scale(&int_rat(xi_count));
        towers.push(RigidityTower {
            n: rung.n,
            m: rung.m,
            epsilon: rung.epsilon,
            j: rung.j,
            stage1: rung.stage1,
            gamma: rung.gamma,
            x_measure: rung.x_measure,
            gamma_height: rung.gamma_height,
            central_level: rung.central_level,
            central: rung.central,
            stage2: rung.stage2,
            top: rung.local_top,
            top_source,
            q,
            xi,
            xi_measure,
            center: t.center_of(top_source),
            ell,
            delta,
        });
    }

    checks.record(
        "ladder",
        !towers.is_empty(),
        format!(
            "kept {} of {} rungs tracking {}; dropped depths {:?}",
            towers.len(),
            depth,
            t.center_name(top_source),
            dropped
        ),
    );
    checks.record(
        "returns_increase",
        towers.windows(2).all(|w| w[0].q < w[1].q),
        "the rigidity times must grow strictly along the ladder".to_string(),
    );

    Ok(RigidityConstruction {
        beta,
        alpha,
        top_source,
        towers,
        dropped,
        checks,
    })
}

/// The single slope shared by all pieces of the cocycle, validated against
/// the exchange it will be summed over.
fn uniform_slope(t: &Iet, f: &Cocycle) -> Result<ExactScalar, RigidityError> {
    if f.arity() != t.d() {
        return Err(RigidityError::BadArgument(format!(
            "the cocycle has {} pieces for {} letters",
            f.arity(),
            t.d()
        )));
    }
    let a = f.slope(0).clone();
    if !crate::exact::Basis::compatible(a.basis(), t.basis()) {
        return Err(RigidityError::BadArgument(
            "the cocycle and the exchange use different scalar bases".to_string(),
        ));
    }
    for letter in 1..t.d() {
        if *f.slope(letter) != a {
            return Err(RigidityError::BadArgument(
                "the quantitative criterion needs one slope shared by all pieces".to_string(),
            ));
        }
    }
    Ok(a)
}

/// Measure every quantitative claim about one rung exactly.
///
/// The returned report carries one item per claim; a violated claim is a
/// failed item, not an error. In order: the stack keeps measure above
/// `1/(3d^2)`; the stack height stays below the rigidity time `q` and `q`
/// floors of the ground interval fit inside the base; `T^q` restricted to
/// each stack floor is one translation of size at most `d/q`; each floor and
/// its image share a continuity interval; the derivative sums equal `a * q`
/// with `a` nonzero; the Birkhoff sum vanishes one step above the
/// pulled-back center with the predicted parity; and the sums are affine on
/// each floor and bounded by `|a| * (d + 2)` on the whole stack.
pub fn verify_effcriterion(
    t: &Iet,
    f: &Cocycle,
    tower: &RigidityTower,
) -> Result<CheckReport, RigidityError> {
    if !t.is_symmetric() {
        return Err(RigidityError::NotSymmetric);
    }
    let a = uniform_slope(t, f)?;
    let d = t.d();
    let q = tower.q;
    let qi = q as i64;
    let q_rat = int_rat(q);
    let mut out = CheckReport::new();

    let floor_bound = t
        .basis()
        .from_rational(Rat::new(BigInt::from(1), BigInt::from((3 * d * d) as u32)));
    out.record(
        "stack_measure",
        tower.xi_measure.gt(&floor_bound)?,
        format!(
            "Leb(stack) = {} must exceed 1/(3d^2) = {}",
            dec(&tower.xi_measure),
            dec(&floor_bound)
        ),
    );

    let ground_width = tower.stage2.towers.induced.length(tower.top).clone();
    let spread = ground_width.scale(&q_rat);
    out.record(
        "time_scale",
        tower.gamma_height <= q && spread.le(&t.base().width())?,
        format!(
            "stack source height {} within q = {q}, and q copies of the ground \
             interval measure {} within the base",
            tower.gamma_height,
            dec(&spread)
        ),
    );

    let disp_bound = t
        .basis()
        .from_rational(Rat::new(BigInt::from(d as u32), BigInt::from(q)));
    let mut sup_disp = t.basis().zero();
    let mut translates = true;
    let mut one_piece = true;
    for floor in &tower.xi {
        let image_left = t.apply_n(&floor.left, qi)?;
        let disp = &image_left - &floor.left;
        let mid = floor.midpoint();
        if &t.apply_n(&mid, qi)? - &mid != disp {
            translates = false;
        }
        let abs = disp.abs()?;
        if abs.gt(&sup_disp)? {
            sup_disp = abs;
        }
        let hull = if disp.sign()? >= 0 {
            Interval::new(floor.left.clone(), &floor.right + &disp)
        } else {
            Interval::new(&floor.left + &disp, floor.right.clone())
        };
        let letter = t.locate(&hull.left)?;
        if !hull.subset_of(&t.domain_interval(letter))? {
            one_piece = false;
        }
    }
    out.record(
        "displacement_is_translation",
        translates,
        "T^q must move each stack floor rigidly".to_string(),
    );
    out.record(
        "displacement_bound",
        sup_disp.le(&disp_bound)?,
        format!(
            "sup |T^q x - x| over the stack = {} within d/q = {}",
            dec(&sup_disp),
            dec(&disp_bound)
        ),
    );
    out.record(
        "one_continuity_interval",
        one_piece,
        "each floor and its T^q image must share a continuity interval".to_string(),
    );

    let slope_total = a.scale(&q_rat);
    let ground_mid = tower.stage2.towers.floor(tower.top, 0).midpoint();
    let dsum = derivative_sum(t, f, &ground_mid, qi)?;
    out.record(
        "slope_sum",
        !a.is_zero() && dsum == slope_total,
        format!(
            "S_q f' = {} must equal q * a = {} with a nonzero",
            dec(&dsum),
            dec(&slope_total)
        ),
    );

    // The window of length q = 2*ell - delta closes symmetrically around
    // the distinguished center one step above the ground floor: at the
    // anchor T^{-(ell-1)}(c) the sum pairs off exactly.
    let ground_center = tower.stage2.towers.induced.center(tower.top);
    let pulled_back = t.apply_n(&tower.center, -(tower.ell as i64))? == ground_center;
    let anchor = t.apply_n(&tower.center, -(tower.ell as i64 - 1))?;
    let on_first_floor = anchor == t.apply(&ground_center)?;
    let s_at_anchor = birkhoff_sum(t, f, &anchor, qi)?;
    out.record(
        "vanishing_at_center",
        tower.q + tower.delta == 2 * tower.ell
            && pulled_back
            && on_first_floor
            && s_at_anchor.is_zero(),
        format!(
            "first backward entry at time {} = (q + {})/2, and S_q f one step up = {}",
            tower.ell,
            tower.delta,
            dec(&s_at_anchor)
        ),
    );

    let sum_bound = a
        .abs()?
        .scale(&Rat::from_integer(BigInt::from((d + 2) as u32)));
    let mut sup_sum = t.basis().zero();
    let mut affine = true;
    for floor in &tower.xi {
        let v_left = birkhoff_sum(t, f, &floor.left, qi)?;
        let mid = floor.midpoint();
        let predicted = &v_left + &slope_total.try_mul(&(&mid - &floor.left))?;
        if birkhoff_sum(t, f, &mid, qi)? != predicted {
            affine = false;
        }
        let v_right = &v_left + &slope_total.try_mul(&floor.width())?;
        for v in [v_left, v_right] {
            let abs = v.abs()?;
            if abs.gt(&sup_sum)? {
                sup_sum = abs;
            }
        }
    }
    out.record(
        "sums_affine",
        affine,
        format!("S_q f must be affine with slope q * a = {} on each floor", dec(&slope_total)),
    );
    out.record(
        "sum_bound",
        sup_sum.le(&sum_bound)?,
        format!(
            "sup |S_q f| over the stack = {} within |a|(d+2) = {}",
            dec(&sup_sum),
            dec(&sum_bound)
        ),
    );

    Ok(out)
}

/// The image of the Birkhoff sums over one stack, as a merged union of
/// value intervals.
#[derive(Debug, Clone)]
pub struct WitnessImage {
    pub n: u64,
    pub q: u64,
    pub components: Vec<Interval>,
    pub measure: ExactScalar,
}

/// Image unions per rung, their intersection across the ladder, and the
/// widest persistent component — the candidate essential values.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub images: Vec<WitnessImage>,
    pub intersection: Vec<Interval>,
    pub intersection_measure: ExactScalar,
    pub candidate: Option<Interval>,
    pub empty_intersection: bool,
    pub checks: CheckReport,
}

fn merge_components(components: Vec<Interval>) -> Result<Vec<Interval>, ExactError> {
    let sorted = sort_by_scalar_key(components, |iv| &iv.left)?;
    let mut out: Vec<Interval> = Vec::new();
    for iv in sorted {
        if let Some(last) = out.last_mut() {
            if iv.left.le(&last.right)? {
                if iv.right.gt(&last.right)? {
                    last.right = iv.right;
                }
                continue;
            }
        }
        out.push(iv);
    }
    Ok(out)
}

fn intersect_unions(a: &[Interval], b: &[Interval]) -> Result<Vec<Interval>, ExactError> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            if let Some(z) = x.intersect(y)? {
                out.push(z);
            }
        }
    }
    merge_components(out)
}

fn union_measure(basis: &std::sync::Arc<crate::exact::Basis>, parts: &[Interval]) -> ExactScalar {
    parts
        .iter()
        .fold(basis.zero(), |acc, iv| &acc + &iv.width())
}

/// Compute the exact image of `S_{q_n} f` over every stack of the ladder
/// and intersect the images across depths.
///
/// On each floor the sum is affine with slope `a * q_n`, so its image is the
/// interval between the endpoint values; the union of these per stack has
/// positive measure whenever `a` is nonzero, and values that persist in
/// every image are the witnesses the criterion is after. An empty
/// intersection is reported as a failed item, not an error: deeper ladders
/// may still recover overlap along a subsequence.
pub fn essential_value_witness(
    t: &Iet,
    f: &Cocycle,
    construction: &RigidityConstruction,
) -> Result<WitnessReport, RigidityError> {
    if !t.is_symmetric() {
        return Err(RigidityError::NotSymmetric);
    }
    if construction.towers.is_empty() {
        return Err(RigidityError::BadArgument(
            "the ladder has no rungs to witness".to_string(),
        ));
    }
    let a = uniform_slope(t, f)?;
    let mut checks = CheckReport::new();
    let mut images = Vec::new();
    for tower in &construction.towers {
        let slope_total = a.scale(&int_rat(tower.q));
        let mut components = Vec::new();
        for floor in &tower.xi {
            let v_left = birkhoff_sum(t, f, &floor.left, tower.q as i64)?;
            let v_right = &v_left + &slope_total.try_mul(&floor.width())?;
            let (lo, hi) = if v_left.lt(&v_right)? {
                (v_left, v_right)
            } else {
                (v_right, v_left)
            };
            if lo.lt(&hi)? {
                components.push(Interval::new(lo, hi));
            }
        }
        let components = merge_components(components)?;
        let measure = union_measure(t.basis(), &components);
        checks.record(
            format!("image_measure.{}", tower.n),
            measure.sign()? > 0,
            format!(
                "S_q f over the depth-{} stack covers measure {}",
                tower.n,
                dec(&measure)
            ),
        );
        images.push(WitnessImage {
            n: tower.n,
            q: tower.q,
            components,
            measure,
        });
    }

    let mut intersection = images[0].components.clone();
    for img in &images[1..] {
        intersection = intersect_unions(&intersection, &img.components)?;
    }
    let intersection_measure = union_measure(t.basis(), &intersection);
    let empty_intersection = intersection.is_empty();
    checks.record(
        "intersection_nonempty",
        !empty_intersection,
        format!(
            "values persisting across all depths cover measure {}",
            dec(&intersection_measure)
        ),
    );
    let mut candidate: Option<Interval> = None;
    for iv in &intersection {
        let wider = match &candidate {
            Some(cur) => iv.width().gt(&cur.width())?,
            None => true,
        };
        if wider {
            candidate = Some(iv.clone());
        }
    }

    Ok(WitnessReport {
        images,
        intersection,
        intersection_measure,
        candidate,
        empty_intersection,
        checks,
    })
}
