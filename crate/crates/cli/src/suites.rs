//! The verification suites behind `iet verify --suite <name>`.
//!
//! Each suite re-runs library constructions on fixed or seeded inputs and
//! records per-check outcomes. Every check restates a library invariant or a
//! documented oracle value; the suites add no logic of their own beyond
//! choosing inputs. Reports are deterministic: the seed defaults to a fixed
//! constant, case order is fixed, and elapsed time is kept out of the
//! serialized form.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use anyhow::{bail, Result};
use iet_core::cocycle::{berktrujillo_check, Cocycle};
use iet_core::connections::{
    connection_scan, ergodicity_obstructions, symmetric_endpoint_pairing, ScanBound,
};
use iet_core::exact::rat;
use iet_core::iet::CenterId;
use iet_core::induction::{induce, InductionError, SubintervalSpec, TowerDecomposition};
use iet_core::presets::{example1, example2, golden};
use iet_core::report::{CheckReport, CheckStatus};
use iet_core::rigidity::{build_rigidity_towers, essential_value_witness, verify_effcriterion};
use iet_core::symmetry::{
    build_eigenfunction, symmetric_induce, symmetric_interval, SymmetricInterval,
    SymmetricVariant,
};
use iet_core::unwinding::{blend_widths, unwind};
use iet_core::Iet;
use serde::Serialize;

use crate::gen;
use crate::render::{scalar_cell, Table};

/// Seed used when `--seed` is not given, so repeated runs are byte-identical.
pub const DEFAULT_SEED: u64 = 1729;

pub const SUITE_NAMES: [&str; 7] = [
    "example1",
    "example2",
    "berk-trujillo",
    "unwinding",
    "symmetric-induction",
    "effcriterion",
    "kac",
];

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub seed: u64,
    pub jobs: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: DEFAULT_SEED, jobs: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteStatus {
    Pass,
    Fail,
    /// Not evaluated; the detail carries the reason.
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub status: SuiteStatus,
    pub detail: String,
}

/// Outcome of one suite: named checks, any files written, and (unserialized)
/// the wall-clock time the run took.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub checks: Vec<SuiteCheck>,
    pub artifacts: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteResult {
    fn new(suite: &str) -> SuiteResult {
        SuiteResult {
            suite: suite.to_string(),
            checks: Vec::new(),
            artifacts: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn record(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push(SuiteCheck {
            name: name.into(),
            status: if ok { SuiteStatus::Pass } else { SuiteStatus::Fail },
            detail: detail.into(),
        });
    }

    fn absorb(&mut self, prefix: &str, report: &CheckReport) {
        for item in &report.items {
            self.checks.push(SuiteCheck {
                name: format!("{prefix}.{}", item.name),
                status: match item.status {
                    CheckStatus::Pass => SuiteStatus::Pass,
                    CheckStatus::Fail => SuiteStatus::Fail,
                },
                detail: item.detail.clone(),
            });
        }
    }

    /// A suite passes when no check failed (skipped checks don't count).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != SuiteStatus::Fail)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut pass = 0;
        let mut fail = 0;
        let mut skip = 0;
        for c in &self.checks {
            match c.status {
                SuiteStatus::Pass => pass += 1,
                SuiteStatus::Fail => fail += 1,
                SuiteStatus::Skipped => skip += 1,
            }
        }
        (pass, fail, skip)
    }

    /// One-line verdict. Timing is deliberately left out so the emitted
    /// report is identical from run to run; it lives in `elapsed`.
    pub fn summary_line(&self) -> String {
        let (pass, fail, skip) = self.counts();
        format!(
            "suite {}: {} — {} passed, {} failed, {} skipped",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            pass,
            fail,
            skip,
        )
    }

    pub fn table(&self) -> Table {
        let mut table = Table::new(&["check", "status", "detail"]);
        for c in &self.checks {
            table.push(vec![
                c.name.clone(),
                match c.status {
                    SuiteStatus::Pass => "pass".into(),
                    SuiteStatus::Fail => "FAIL".into(),
                    SuiteStatus::Skipped => "skipped".into(),
                },
                c.detail.clone(),
            ]);
        }
        table
    }
}

/// Run `count` independent cases, optionally across threads, collecting the
/// results in case order regardless of scheduling.
fn run_cases<R: Send>(jobs: usize, count: usize, task: impl Fn(usize) -> R + Sync) -> Vec<R> {
    let jobs = jobs.max(1).min(count.max(1));
    if jobs == 1 {
        return (0..count).map(task).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..count).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let r = task(i);
                slots.lock().expect("case slots")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("case slots")
        .into_iter()
        .map(|r| r.expect("every case ran"))
        .collect()
}

pub fn run_suite(name: &str, opts: SuiteOptions) -> Result<SuiteResult> {
    let start = std::time::Instant::now();
    let mut result = match name {
        "example1" => suite_example1()?,
        "example2" => suite_example2()?,
        "berk-trujillo" => suite_berk_trujillo(opts)?,
        "unwinding" => suite_unwinding(opts)?,
        "symmetric-induction" => suite_symmetric_induction(opts)?,
        "effcriterion" => suite_effcriterion(opts)?,
        "kac" => suite_kac(opts)?,
        other => bail!("no suite named `{other}` (suites: {})", SUITE_NAMES.join(", ")),
    };
    result.elapsed = start.elapsed();
    Ok(result)
}

/// The fully connected 4-exchange: exact scan values, the second power
/// fixing the third interval, and the ergodicity obstruction.
fn suite_example1() -> Result<SuiteResult> {
    let mut out = SuiteResult::new("example1");
    let t = example1();
    let report = connection_scan(&t, 100)?;

    out.record(
        "scan.fully_resolved",
        report.fully_resolved(),
        format!("all endpoint orbits land within {} steps", report.n_max),
    );
    out.record(
        "scan.forward_I2",
        report.n(1) == ScanBound::Found(2),
        format!("N(I2) = {}", report.n(1)),
    );
    out.record(
        "scan.backward_I4",
        report.m(3) == ScanBound::Found(2),
        format!("M(I4) = {}", report.m(3)),
    );
    out.record(
        "scan.connection_count",
        report.d_prime == 3,
        format!("{} non-trivial connections", report.d_prime),
    );
    out.absorb("pairing", &symmetric_endpoint_pairing(&t, &report)?);

    let i3 = t.domain_interval(2);
    let once = t.push_forward(&i3)?;
    let twice = if once.len() == 1 { t.push_forward(&once[0])? } else { Vec::new() };
    out.record(
        "second_power_fixes_I3",
        once.len() == 1 && twice.len() == 1 && twice[0] == i3,
        format!(
            "T(I3) = {}, T^2(I3) = I3 = {}",
            once.first().map_or("split".into(), |iv| iv.describe(6)),
            i3.describe(6),
        ),
    );

    let obstructions = ergodicity_obstructions(&t, &report)?;
    let verdicts: Vec<&str> = obstructions
        .items
        .iter()
        .filter(|i| i.status == CheckStatus::Fail)
        .map(|i| i.name.as_str())
        .collect();
    let not_ergodic = obstructions
        .items
        .iter()
        .any(|i| i.status == CheckStatus::Fail && i.detail.starts_with("NotErgodic"));
    out.record(
        "obstruction.not_ergodic",
        not_ergodic,
        format!("failing middle-point checks: {verdicts:?}"),
    );

    let mut free_connection = None;
    for c in &report.connections {
        let centers_hit = (0..t.d()).any(|l| c.position_of(&t.center(l)).is_some());
        let half_hit = c.position_of(&t.center_half()).is_some();
        if !centers_hit && !half_hit {
            free_connection = Some(t.label(c.beta).to_string());
        }
    }
    out.record(
        "obstruction.connection_without_middle_points",
        free_connection.is_some(),
        match &free_connection {
            Some(label) => format!(
                "the connection starting at interval {label} carries no interval center and not 1/2"
            ),
            None => "every connection carries a middle point".into(),
        },
    );
    Ok(out)
}

/// The eigenvalue example: induction on the second interval and the exact
/// `f(Tx) = -f(x)` table.
fn suite_example2() -> Result<SuiteResult> {
    let mut out = SuiteResult::new("example2");
    let t = example2();
    let report = connection_scan(&t, 300)?;

    let s = SymmetricInterval::around(&t, CenterId::Letter(1), &t.length(1).half())?;
    out.record(
        "interval_is_I2",
        s.interval == t.domain_interval(1),
        format!("induction interval {}", s.interval.describe(6)),
    );

    let table = build_eigenfunction(&t, &report, Some(&s), 100_000)?;
    out.absorb("eigenfunction", &table.checks);

    out.record(
        "heights",
        table.tower.heights == vec![6, 8, 4],
        format!("first return times {:?}", table.tower.heights),
    );
    let induced = &table.tower.induced;
    out.record(
        "induced_symmetric_3iet",
        induced.d() == 3 && induced.is_symmetric(),
        format!("induced map exchanges {} intervals", induced.d()),
    );

    let l1 = t.length(0);
    let l2 = t.length(1);
    let l3 = t.length(2);
    let expected = vec![l3.clone(), l1.clone(), (l2 - l1) - l3];
    out.record(
        "induced_lengths",
        induced.lengths() == expected.as_slice(),
        format!(
            "lengths ({}, {}, {})",
            scalar_cell(&expected[0], 6),
            scalar_cell(&expected[1], 6),
            scalar_cell(&expected[2], 6),
        ),
    );

    let mut flips = 0usize;
    let mut total = 0usize;
    let mut all_flip = true;
    for &(letter, level) in &table.tower.floor_order {
        let mid = table.tower.floor(letter, level).midpoint();
        let here = table.sign_at(&mid)?;
        let there = table.sign_at(&t.apply(&mid)?)?;
        total += 1;
        match (here, there) {
            (Some(a), Some(b)) if b == -a => flips += 1,
            _ => all_flip = false,
        }
    }
    out.record(
        "sign_flips_on_every_floor",
        all_flip && flips == total,
        format!("f(Tx) = -f(x) at all {total} floor midpoints"),
    );
    Ok(out)
}

/// Exact Kac totals and tilings for seeded random inductions.
fn suite_kac(opts: SuiteOptions) -> Result<SuiteResult> {
    const CASES: usize = 500;
    const BUDGET: u64 = 20_000;
    const ATTEMPTS: u32 = 12;

    let mut out = SuiteResult::new("kac");
    let reports = run_cases(opts.jobs, CASES, |i| -> (bool, String) {
        let mut rng = gen::case_rng(opts.seed, i as u64);
        for attempt in 0..ATTEMPTS {
            let d = rand::Rng::gen_range(&mut rng, 2..=6usize);
            let basis = gen::three_element_basis(&mut rng);
            let t = gen::three_basis_iet(&mut rng, d, &basis);
            let j = gen::random_subinterval(&mut rng, &t, 200);
            let dec = match induce(&t, &SubintervalSpec::Explicit(j), BUDGET) {
                Ok(dec) => dec,
                Err(InductionError::IncompleteTower { .. })
                | Err(InductionError::BudgetExhausted { .. }) => continue,
                Err(other) => return (false, format!("induction error: {other}")),
            };
            let kac_ok = dec.kac_total() == t.base().width();
            let tiling_ok = match tiles_exactly(&t, &dec) {
                Ok(ok) => ok,
                Err(e) => return (false, format!("tiling check error: {e}")),
            };
            return (
                kac_ok && tiling_ok,
                format!(
                    "d={d}, basis {{{}}}, {} towers, {} floors, resamples={attempt}; \
                     kac={kac_ok}, tiling={tiling_ok}",
                    basis.names().join(", "),
                    dec.induced.d(),
                    dec.total_floors(),
                ),
            );
        }
        (false, format!("no completable draw within {ATTEMPTS} attempts"))
    });
    for (i, (ok, detail)) in reports.into_iter().enumerate() {
        out.record(format!("case{i:03}"), ok, detail);
    }
    Ok(out)
}

/// Exact check that the floors of a decomposition partition the base.
fn tiles_exactly(t: &Iet, dec: &TowerDecomposition) -> Result<bool> {
    let mut cursor = t.base().left.clone();
    for &(letter, level) in &dec.floor_order {
        let floor = dec.floor(letter, level);
        if floor.left != cursor {
            return Ok(false);
        }
        cursor = floor.right.clone();
    }
    Ok(cursor == t.base().right)
}

/// Width reassignment: certified rebuilds, the identity reassignment, and
/// affinity in the widths.
fn suite_unwinding(opts: SuiteOptions) -> Result<SuiteResult> {
    const CASES: usize = 200;
    const AFFINE_CASES: usize = 50;
    const BUDGET: u64 = 200_000;

    let mut out = SuiteResult::new("unwinding");
    let reports = run_cases(opts.jobs, CASES, |i| -> (bool, String) {
        let mut rng = gen::case_rng(opts.seed, i as u64);
        let d = rand::Rng::gen_range(&mut rng, 2..=5usize);
        let t = gen::rational_iet(&mut rng, d);
        let report = match connection_scan(&t, 2_000) {
            Ok(r) => r,
            Err(e) => return (false, format!("scan error: {e}")),
        };
        let j = gen::random_subinterval(&mut rng, &t, 200);
        let dec = match induce(&t, &SubintervalSpec::Explicit(j), BUDGET) {
            Ok(dec) => dec,
            Err(e) => return (false, format!("induction error: {e}")),
        };

        let v = gen::normalized_widths(&mut rng, &dec.heights, &t.base().width());
        let res = match unwind(&t, &report, &dec, &v, BUDGET) {
            Ok(res) => res,
            Err(e) => return (false, format!("unwind error: {e}")),
        };
        let mut ok = res.certification.all_passed();
        let mut notes = vec![format!(
            "d={d}, {} towers, certification {}",
            dec.induced.d(),
            res.certification.summary()
        )];
        ok &= res.towers.heights == dec.heights && res.towers.floor_order == dec.floor_order;

        // Reassigning the original widths must reproduce the original map.
        match unwind(&t, &report, &dec, dec.induced.lengths(), BUDGET) {
            Ok(id) => {
                let same_lengths = id.lambda() == t.lengths();
                let same_j = id.j_tilde == dec.j;
                ok &= same_lengths && same_j;
                notes.push(format!("identity reassignment: lengths={same_lengths}, j={same_j}"));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("identity reassignment error: {e}"));
            }
        }

        // Affinity: reassignment commutes with blending width vectors.
        if i < AFFINE_CASES {
            let w = gen::normalized_widths(&mut rng, &dec.heights, &t.base().width());
            let s = rat(&format!("{}/10", rand::Rng::gen_range(&mut rng, 1..=9)));
            let blended = match blend_widths(&v, &w, &s) {
                Ok(b) => b,
                Err(e) => return (false, format!("blend error: {e}")),
            };
            let res_w = unwind(&t, &report, &dec, &w, BUDGET);
            let res_b = unwind(&t, &report, &dec, &blended, BUDGET);
            match (res_w, res_b) {
                (Ok(rw), Ok(rb)) => {
                    match blend_widths(res.lambda(), rw.lambda(), &s) {
                        Ok(expected) => {
                            let affine = rb.lambda() == expected.as_slice();
                            ok &= affine;
                            notes.push(format!("affinity at s={s}: {affine}"));
                        }
                        Err(e) => {
                            ok = false;
                            notes.push(format!("blend error: {e}"));
                        }
                    }
                }
                (Err(e), _) | (_, Err(e)) => {
                    ok = false;
                    notes.push(format!("unwind error in affinity check: {e}"));
                }
            }
        }
        (ok, notes.join("; "))
    });
    for (i, (ok, detail)) in reports.into_iter().enumerate() {
        out.record(format!("case{i:03}"), ok, detail);
    }
    Ok(out)
}

/// Symmetric induction on seeded maps with rationally independent lengths.
fn suite_symmetric_induction(opts: SuiteOptions) -> Result<SuiteResult> {
    const CASES: usize = 100;
    const BUDGET: u64 = 300_000;
    const ATTEMPTS: u32 = 10;

    let mut out = SuiteResult::new("symmetric-induction");
    let reports = run_cases(opts.jobs, CASES, |i| -> (bool, String) {
        let mut rng = gen::case_rng(opts.seed, i as u64);
        let d = rand::Rng::gen_range(&mut rng, 2..=6usize);
        let t = gen::symmetric_independent_iet(&mut rng, d);
        let report = match connection_scan(&t, 50) {
            Ok(r) => r,
            Err(e) => return (false, format!("scan error: {e}")),
        };
        if report.d_prime != 0 {
            return (
                false,
                format!("expected no connections, scan found {}", report.d_prime),
            );
        }
        for attempt in 0..ATTEMPTS {
            let alpha = rand::Rng::gen_range(&mut rng, 0..d);
            let m = rand::Rng::gen_range(&mut rng, 1..=3u64);
            let s = match symmetric_interval(&t, alpha, m, SymmetricVariant::Beta, &report) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let (towers, centers, checks) = match symmetric_induce(&t, &s, &report, BUDGET) {
                Ok(triple) => triple,
                Err(_) => continue,
            };
            let certified = checks.all_passed();
            let shape = towers.induced.d() == d && towers.induced.is_symmetric();
            let map_ok = centers.is_injective() && centers.covers(d);
            return (
                certified && shape && map_ok,
                format!(
                    "d={d}, alpha={}, m={m}, heights {:?}, resamples={attempt}; \
                     certification {}, symmetric d-exchange={shape}, center map \
                     injective and covering={map_ok}",
                    t.label(alpha),
                    towers.heights,
                    checks.summary(),
                ),
            );
        }
        (false, format!("no inducible symmetric interval within {ATTEMPTS} attempts"))
    });
    for (i, (ok, detail)) in reports.into_iter().enumerate() {
        out.record(format!("case{i:03}"), ok, detail);
    }
    Ok(out)
}

/// Vanishing of the center window sums for the golden map and seeded
/// symmetric maps.
fn suite_berk_trujillo(opts: SuiteOptions) -> Result<SuiteResult> {
    const RANDOM_MAPS: usize = 20;
    const N_MAX: u64 = 1_000;

    let mut out = SuiteResult::new("berk-trujillo");
    let reports = run_cases(opts.jobs, RANDOM_MAPS + 1, |i| -> Vec<(String, bool, String)> {
        let (name, t) = if i == 0 {
            ("golden".to_string(), golden())
        } else {
            let mut rng = gen::case_rng(opts.seed, i as u64);
            let d = rand::Rng::gen_range(&mut rng, 2..=6usize);
            (format!("random{:02}", i - 1), gen::symmetric_independent_iet(&mut rng, d))
        };
        let mut rows = Vec::new();
        let report = match connection_scan(&t, 50) {
            Ok(r) => r,
            Err(e) => {
                rows.push((name, false, format!("scan error: {e}")));
                return rows;
            }
        };
        let f = Cocycle::central(&t, &rat("1"));
        let mut centers: Vec<CenterId> = (0..t.d()).map(CenterId::Letter).collect();
        centers.push(CenterId::Half);
        for center in centers {
            let label = match center {
                CenterId::Letter(l) => format!("{name}.center_{}", t.label(l)),
                CenterId::Half => format!("{name}.center_half"),
            };
            let rep = match berktrujillo_check(&t, &f, &report, center, N_MAX) {
                Ok(rep) => rep,
                Err(e) => {
                    rows.push((label, false, format!("window check error: {e}")));
                    continue;
                }
            };
            let live = rep.rows.iter().filter(|r| !r.skipped).count();
            let vanishing = match center {
                CenterId::Half => rep
                    .rows
                    .iter()
                    .filter(|r| !r.skipped)
                    .all(|r| r.literal_is_zero),
                CenterId::Letter(_) => rep
                    .rows
                    .iter()
                    .filter(|r| !r.skipped)
                    .all(|r| r.pairing_is_zero == Some(true)),
            };
            let ok = rep.checks.all_passed() && vanishing;
            rows.push((
                label,
                ok,
                format!(
                    "{} of {} indices evaluated to zero in the defining form; \
                     residual identities {}",
                    live,
                    rep.rows.len(),
                    rep.checks.summary(),
                ),
            ));
        }
        rows
    });
    for rows in reports {
        for (name, ok, detail) in rows {
            out.record(name, ok, detail);
        }
    }
    Ok(out)
}

/// The rigidity ladder and its quantitative criterion on the golden map and
/// one seeded symmetric 4-exchange.
fn suite_effcriterion(opts: SuiteOptions) -> Result<SuiteResult> {
    const DEPTH: u64 = 3;

    let mut out = SuiteResult::new("effcriterion");
    let mut rng = gen::case_rng(opts.seed, 1_000);
    let targets: Vec<(String, Iet, u64)> = vec![
        ("golden".into(), golden(), 200_000),
        ("random4".into(), gen::symmetric_independent_iet(&mut rng, 4), 2_000_000),
    ];

    for (name, t, budget) in targets {
        let report = connection_scan(&t, 200)?;
        let construction = match build_rigidity_towers(&t, &report, DEPTH, budget) {
            Ok(c) => c,
            Err(e) => {
                out.record(format!("{name}.construction"), false, format!("{e}"));
                continue;
            }
        };
        out.absorb(&format!("{name}.ladder"), &construction.checks);
        out.record(
            format!("{name}.depth"),
            !construction.towers.is_empty(),
            format!(
                "{} rungs kept, dropped {:?}, rigidity times {:?}",
                construction.towers.len(),
                construction.dropped,
                construction.towers.iter().map(|w| w.q).collect::<Vec<_>>(),
            ),
        );

        let f = Cocycle::central(&t, &rat("1"));
        for tower in &construction.towers {
            match verify_effcriterion(&t, &f, tower) {
                Ok(rep) => {
                    let failing: Vec<&str> = rep
                        .items
                        .iter()
                        .filter(|i| i.status == CheckStatus::Fail)
                        .map(|i| i.name.as_str())
                        .collect();
                    out.record(
                        format!("{name}.n{}.criterion", tower.n),
                        rep.all_passed(),
                        format!(
                            "q={}, ell={}, delta={}, stack of {} floors; {}{}",
                            tower.q,
                            tower.ell,
                            tower.delta,
                            tower.xi.len(),
                            rep.summary(),
                            if failing.is_empty() {
                                String::new()
                            } else {
                                format!(", failing {failing:?}")
                            },
                        ),
                    );
                }
                Err(e) => out.record(
                    format!("{name}.n{}.criterion", tower.n),
                    false,
                    format!("{e}"),
                ),
            }
        }

        match essential_value_witness(&t, &f, &construction) {
            Ok(wit) => {
                let positive = wit
                    .images
                    .iter()
                    .all(|img| img.measure.sign().unwrap_or(0) > 0);
                out.record(
                    format!("{name}.witness.images_positive"),
                    positive,
                    format!(
                        "image measures {:?}",
                        wit.images
                            .iter()
                            .map(|img| scalar_cell(&img.measure, 6))
                            .collect::<Vec<_>>(),
                    ),
                );
                out.record(
                    format!("{name}.witness.intersection"),
                    !wit.empty_intersection
                        && wit.intersection_measure.sign().unwrap_or(0) > 0,
                    format!(
                        "common mass {} across {} rungs, candidate {}",
                        scalar_cell(&wit.intersection_measure, 6),
                        wit.images.len(),
                        wit.candidate
                            .as_ref()
                            .map_or("none".into(), |iv| iv.describe(6)),
                    ),
                );
                out.absorb(&format!("{name}.witness"), &wit.checks);
            }
            Err(e) => out.record(format!("{name}.witness"), false, format!("{e}")),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suites_are_usage_errors() {
        assert!(run_suite("no-such-suite", SuiteOptions::default()).is_err());
    }

    #[test]
    fn example_suites_pass() {
        let r1 = run_suite("example1", SuiteOptions::default()).unwrap();
        assert!(r1.passed(), "{}", failures(&r1));
        let r2 = run_suite("example2", SuiteOptions::default()).unwrap();
        assert!(r2.passed(), "{}", failures(&r2));
    }

    #[test]
    fn case_runner_preserves_order_across_threads() {
        let squares = run_cases(4, 100, |i| i * i);
        assert_eq!(squares, (0..100).map(|i| i * i).collect::<Vec<_>>());
    }

    fn failures(r: &SuiteResult) -> String {
        r.checks
            .iter()
            .filter(|c| c.status == SuiteStatus::Fail)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("\n")
    }
}
