//! The `iet` command surface: the argument grammar and one handler per
//! subcommand. Handlers parse input, call the library, shape an [`Artifact`]
//! and pick the exit code; they add no mathematics of their own.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use iet_core::cocycle::{berktrujillo_check, birkhoff_sum, skew_orbit, Cocycle, SkewState};
use iet_core::connections::connection_scan;
use iet_core::exact::{Basis, Rat};
use iet_core::iet::CenterId;
use iet_core::induction::{induce, TowerDecomposition};
use iet_core::io::IetSpec;
use iet_core::rigidity::{
    build_rigidity_towers, essential_value_witness, verify_effcriterion, RigidityTower,
};
use iet_core::symmetry::{
    build_eigenfunction, symmetric_induce, symmetric_interval, SymmetricInterval,
    SymmetricVariant,
};
use iet_core::unwinding::unwind;
use iet_core::{ExactScalar, Iet};
use serde_json::{json, Value};

use crate::float::{self, FALLBACK_TOLERANCE};
use crate::input;
use crate::render::{interval_value, scalar_cell, scalar_value, Artifact, Format, Table};
use crate::suites::{self, SuiteOptions, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "iet",
    version,
    about = "Exact computations with interval exchange transformations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand that emits a report.
#[derive(Args, Debug)]
pub struct OutputOpts {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Decimal digits shown in tables and CSV cells (JSON always carries
    /// exact coefficients plus a 30-digit decimal).
    #[arg(long, default_value_t = 12)]
    pub digits: u32,
    /// Write the report to this file and print its path instead.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `--variant` choices for `symmetric-induce`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum VariantArg {
    /// Center the interval on the free letter center.
    Beta,
    /// Center the interval on the base midpoint.
    Half,
}

impl From<VariantArg> for SymmetricVariant {
    fn from(v: VariantArg) -> SymmetricVariant {
        match v {
            VariantArg::Beta => SymmetricVariant::Beta,
            VariantArg::Half => SymmetricVariant::Half,
        }
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Validate a map given as a file or preset name and print its data.
    Check {
        /// Path to a JSON description, or a preset name
        /// (golden, example1, example2, example2-irrational).
        input: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Iterate a point and report the exact orbit.
    Orbit {
        input: String,
        /// Starting point, as comma-separated basis coefficients.
        #[arg(long)]
        x: String,
        /// Number of steps; negative iterates the inverse.
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Also run the orbit in f64 and report the largest deviation.
        #[arg(long)]
        float_fallback: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Scan singular orbits for connections.
    Connections {
        input: String,
        /// Orbit steps to scan before declaring a bound unknown.
        #[arg(long, default_value_t = 300)]
        nmax: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Build the first-return towers over a subinterval.
    Induce {
        input: String,
        /// The subinterval: a letter, `LEFT..RIGHT` endpoints, or
        /// `orbit:ALPHA,M,BETA,N` for endpoints taken from singular orbits.
        #[arg(long)]
        j: String,
        /// Cap on the return-time search.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Induce on an interval symmetric about an orbit of centers.
    SymmetricInduce {
        input: String,
        /// Letter whose singular orbit bounds the interval.
        #[arg(long)]
        alpha: String,
        /// Backward depth of the bounding orbit point.
        #[arg(long, default_value_t = 1)]
        m: u64,
        /// Which middle point the interval is centered on.
        #[arg(long, value_enum, default_value_t = VariantArg::Beta)]
        variant: VariantArg,
        /// Connection-scan depth used to certify the construction.
        #[arg(long, default_value_t = 300)]
        nmax: u64,
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Label tower floors with alternating signs of an eigenfunction.
    Eigenfunction {
        input: String,
        /// Center the induction interval here (requires --delta).
        #[arg(long)]
        center: Option<String>,
        /// Half-width of the induction interval (requires --center).
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, default_value_t = 300)]
        nmax: u64,
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Reassign tower widths and rebuild the map they came from.
    Unwind {
        input: String,
        /// The induction subinterval (same forms as `induce --j`).
        #[arg(long)]
        j: String,
        /// New tower widths, semicolon-separated coefficient lists.
        #[arg(long)]
        v: String,
        #[arg(long, default_value_t = 300)]
        nmax: u64,
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Partial sums of a centered affine observable along an orbit.
    Birkhoff {
        input: String,
        #[arg(long)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Slope of the observable `f(x) = a (x - midpoint)`.
        #[arg(long, default_value = "1")]
        slope: String,
        /// Also run the sums in f64 and report the largest deviation.
        #[arg(long)]
        float_fallback: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Evaluate the vanishing identities for sums windowed at a center.
    BerkTrujillo {
        input: String,
        /// A letter (label or 1-based index) or `half`.
        #[arg(long, default_value = "half")]
        center: String,
        /// Largest window index to evaluate.
        #[arg(long, default_value_t = 60)]
        nmax: u64,
        /// Connection-scan depth used to find the admissible windows.
        #[arg(long, default_value_t = 300)]
        scan_depth: u64,
        #[arg(long, default_value = "1")]
        slope: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Orbit of the skew product over one or two base coordinates.
    Skew {
        input: String,
        #[arg(long)]
        x: String,
        /// Optional second base coordinate.
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "1")]
        slope: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Build the nested rigidity towers and check the quantitative
    /// criterion on each rung.
    Rigidity {
        input: String,
        /// Number of ladder depths to build.
        #[arg(long, default_value_t = 3)]
        depth: u64,
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
        #[arg(long, default_value_t = 200)]
        nmax: u64,
        #[arg(long, default_value = "1")]
        slope: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run a named verification suite.
    Verify {
        /// One of: example1, example2, berk-trujillo, unwinding,
        /// symmetric-induction, effcriterion, kac.
        #[arg(long)]
        suite: String,
        /// Seed for the suites that draw random instances.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Worker threads for independent cases.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
}

pub fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Check { input, output } => cmd_check(&input, &output),
        Command::Orbit { input, x, n, float_fallback, output } => {
            cmd_orbit(&input, &x, n, float_fallback, &output)
        }
        Command::Connections { input, nmax, output } => cmd_connections(&input, nmax, &output),
        Command::Induce { input, j, budget, output } => cmd_induce(&input, &j, budget, &output),
        Command::SymmetricInduce { input, alpha, m, variant, nmax, budget, output } => {
            cmd_symmetric_induce(&input, &alpha, m, variant, nmax, budget, &output)
        }
        Command::Eigenfunction { input, center, delta, nmax, budget, output } => {
            cmd_eigenfunction(&input, center.as_deref(), delta.as_deref(), nmax, budget, &output)
        }
        Command::Unwind { input, j, v, nmax, budget, output } => {
            cmd_unwind(&input, &j, &v, nmax, budget, &output)
        }
        Command::Birkhoff { input, x, n, slope, float_fallback, output } => {
            cmd_birkhoff(&input, &x, n, &slope, float_fallback, &output)
        }
        Command::BerkTrujillo { input, center, nmax, scan_depth, slope, output } => {
            cmd_berk_trujillo(&input, &center, nmax, scan_depth, &slope, &output)
        }
        Command::Skew { input, x, y, n, slope, output } => {
            cmd_skew(&input, &x, y.as_deref(), n, &slope, &output)
        }
        Command::Rigidity { input, depth, budget, nmax, slope, output } => {
            cmd_rigidity(&input, depth, budget, nmax, &slope, &output)
        }
        Command::Verify { suite, seed, jobs, output } => cmd_verify(&suite, seed, jobs, &output),
    }
}

fn emit(artifact: &Artifact, output: &OutputOpts) -> Result<()> {
    artifact.emit(output.format, output.out.as_deref(), &mut std::io::stdout())
}

fn parse_slope(text: &str) -> Result<Rat> {
    Basis::parse_rat(text).with_context(|| format!("slope `{text}` is not a rational like 3/2"))
}

fn center_name(t: &Iet, c: CenterId) -> String {
    match c {
        CenterId::Letter(l) => format!("c({})", t.label(l)),
        CenterId::Half => "1/2".to_string(),
    }
}

fn cmd_check(input: &str, output: &OutputOpts) -> Result<i32> {
    let t = input::load_iet(input)?;
    let spec = IetSpec::from_iet(&t)?;
    let mut table = Table::new(&["letter", "length", "left", "right", "image left"]);
    for i in 0..t.d() {
        let iv = t.domain_interval(i);
        let image_left = t.apply(&iv.left)?;
        table.push(vec![
            t.label(i).to_string(),
            scalar_cell(t.length(i), output.digits),
            scalar_cell(&iv.left, output.digits),
            scalar_cell(&iv.right, output.digits),
            scalar_cell(&image_left, output.digits),
        ]);
    }
    let json = json!({
        "spec": spec,
        "d": t.d(),
        "base": interval_value(t.base()),
        "basis": t.basis().names(),
        "symmetric": t.is_symmetric(),
    });
    let artifact = Artifact::new(
        format!(
            "{}-interval exchange on {}, basis {{{}}}, {}",
            t.d(),
            t.base().describe(output.digits),
            t.basis().names().join(", "),
            if t.is_symmetric() { "symmetric" } else { "not symmetric" },
        ),
        json,
    )
    .with_table(table);
    emit(&artifact, output)?;
    Ok(0)
}

fn cmd_orbit(
    input: &str,
    x_text: &str,
    n: i64,
    float_fallback: bool,
    output: &OutputOpts,
) -> Result<i32> {
    let t = input::load_iet(input)?;
    let x = input::parse_point(&t, x_text)?;
    let points = t.orbit(&x, n)?;
    let mut table = Table::new(&["step", "value", "boundary of"]);
    for p in &points {
        table.push(vec![
            p.step.to_string(),
            scalar_cell(&p.value, output.digits),
            p.boundary_hit.map_or(String::new(), |l| t.label(l).to_string()),
        ]);
    }
    let mut json = json!({
        "x0": scalar_value(&x),
        "n": n,
        "points": points,
    });
    let mut summary = format!("orbit of {} for {} steps", scalar_cell(&x, output.digits), n);
    if float_fallback {
        if n > 0 {
            let (rep, worst) = float::orbit_agreement(&t, &x, n as u64, FALLBACK_TOLERANCE)?;
            json["float"] = json!({
                "worst_deviation": worst,
                "tolerance": FALLBACK_TOLERANCE,
                "within_tolerance": rep.all_passed(),
            });
            summary.push_str(&format!(
                "; float cross-check max deviation {:.3e}{}",
                worst,
                if rep.all_passed() { "" } else { " (EXCEEDS TOLERANCE)" },
            ));
        } else {
            json["float"] = json!({ "skipped": "cross-check covers forward orbits only" });
            summary.push_str("; float cross-check skipped for a backward orbit");
        }
    }
    let artifact = Artifact::new(summary, json).with_table(table);
    emit(&artifact, output)?;
    Ok(0)
}

fn cmd_connections(input: &str, nmax: u64, output: &OutputOpts) -> Result<i32> {
    let t = input::load_iet(input)?;
    let report = connection_scan(&t, nmax)?;

    let mut m_map = serde_json::Map::new();
    let mut n_map = serde_json::Map::new();
    for scan in &report.letters {
        m_map.insert(scan.label.clone(), serde_json::to_value(scan.m)?);
        n_map.insert(scan.label.clone(), serde_json::to_value(scan.n)?);
    }
    let json = json!({
        "n_max": report.n_max,
        "d_prime": report.d_prime,
        "fully_resolved": report.fully_resolved(),
        "M": Value::Object(m_map),
        "N": Value::Object(n_map),
        "letters": report.letters,
        "connections": report.connections,
    });

    let mut table = Table::new(&["letter", "M", "to", "N", "to", "notes"]);
    for scan in &report.letters {
        let mut notes = Vec::new();
        if scan.m_trivial {
            notes.push("M trivial");
        }
        if scan.n_trivial {
            notes.push("N trivial");
        }
        table.push(vec![
            scan.label.clone(),
            scan.m.to_string(),
            scan.m_partner.map_or(String::new(), |l| t.label(l).to_string()),
            scan.n.to_string(),
            scan.n_partner.map_or(String::new(), |l| t.label(l).to_string()),
            notes.join(", "),
        ]);
    }
    let artifact = Artifact::new(
        format!(
            "{} non-trivial connection(s) within {} steps; endpoint orbits {}",
            report.d_prime,
            report.n_max,
            if report.fully_resolved() { "fully resolved" } else { "not fully resolved" },
        ),
        json,
    )
    .with_table(table);
    emit(&artifact, output)?;
    Ok(0)
}

fn tower_json(dec: &TowerDecomposition) -> Result<Value> {
    let mut towers = Vec::new();
    for g in 0..dec.induced.d() {
        let floors: Vec<Value> =
            (0..dec.height(g)).map(|i| interval_value(dec.floor(g, i))).collect();
        towers.push(json!({
            "letter": dec.induced.label(g),
            "height": dec.height(g),
            "width": scalar_value(dec.induced.length(g)),
            "floors": floors,
        }));
    }
    Ok(json!({
        "j": interval_value(&dec.j),
        "heights": dec.heights,
        "induced": IetSpec::from_iet(&dec.induced)?,
        "towers": towers,
    }))
}

fn floor_table(dec: &TowerDecomposition, digits: u32) -> Table {
    let mut table = Table::new(&["tower", "level", "left", "right", "width"]);
    for &(g, i) in &dec.floor_order {
        let floor = dec.floor(g, i);
        table.push(vec![
            dec.induced.label(g).to_string(),
            i.to_string(),
            scalar_cell(&floor.left, digits),
            scalar_cell(&floor.right, digits),
            scalar_cell(&floor.width(), digits),
        ]);
    }
    table
}

fn cmd_induce(input: &str, j_text: &str, budget: u64, output: &OutputOpts) -> Result<i32> {
    let t = input::load_iet(input)?;
    let spec = input::parse_j(&t, j_text)?;
    let dec = induce(&t, &spec, budget)?;
    let kac = dec.kac_total();
    let kac_ok = kac == t.base().width();
    let mut json = tower_json(&dec)?;
    json["kac_total"] = scalar_value(&kac);
    json["kac_identity"] = Value::Bool(kac_ok);
    let artifact = Artifact::new(
        format!(
            "{} towers over J = {}, heights {:?}; height-weighted widths sum to the base width: {}",
            dec.induced.d(),
            dec.j.describe(output.digits),
            dec.heights,
            if kac_ok { "yes" } else { "NO" },
        ),
        json,
    )
    .with_table(floor_table(&dec, output.digits));
    emit(&artifact, output)?;
    Ok(if kac_ok { 0 } else { 1 })
}

fn cmd_symmetric_induce(
    input: &str,
    alpha_text: &str,
    m: u64,
    variant: VariantArg,
    nmax: u64,
    budget: u64,
    output: &OutputOpts,
) -> Result<i32> {
    let t = input::load_iet(input)?;
    let report = connection_scan(&t, nmax)?;
    let alpha = input::parse_letter(&t, alpha_text)?;
    let s = symmetric_interval(&t, alpha, m, variant.into(), &report)?;
    let (towers, centers, checks) = symmetric_induce(&t, &s, &report, budget)?;

    let mut table = Table::new(&["letter", "height", "center from", "backward time"]);
    for g in 0..towers.induced.d() {
        let entry = centers.entry_for(g);
        table.push(vec![
            towers.induced.label(g).to_string(),
            towers.height(g).to_string(),
            entry.map_or(String::new(), |e| center_name(&t, e.source)),
            entry.map_or(String::new(), |e| e.backward_time.to_string()),
        ]);
    }
    let mut json = tower_json(&towers)?;
    json["interval"] = serde_json::to_value(&s)?;
    json["centers"] = serde_json::to_value(&centers)?;
    json["checks"] = serde_json::to_value(&checks)?;
    let ok = checks.all_passed();
    let artifact = Artifact::new(
        format!(
            "induced {}-exchange over the symmetric interval {} around {}; certification: {}",
            towers.induced.d(),
            s.interval.describe(output.digits),
            center_name(&t, s.center),
            checks.summary(),
        ),
        json,
    )
    .with_table(table);
    emit(&artifact, output)?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_eigenfunction(
    input: &str,
    center: Option<&str>,
    delta: Option<&str>,
    nmax: u64,
    budget: u64,
    output: &OutputOpts,
) -> Result<i32> {
    let t = input::load_iet(input)?;
    let report = connection_scan(&t, nmax)?;
    let s = match (center, delta) {
        (None, None) => None,
        (Some(c), Some(dl)) => {
            let center = input::parse_center(&t, c)?;
            let half_width = input::parse_point(&t, dl)?;
            Some(SymmetricInterval::around(&t, center, &half_width)?)
        }
        _ => bail!("--center and --delta go together; give both or neither"),
    };
    let table = build_eigenfunction(&t, &report, s.as_ref(), budget)?;

    let mut rows = Table::new(&["tower", "level", "left", "right", "sign"]);
    let mut row_values = Vec::new();
    for (letter, level, sign) in table.rows() {
        let floor = table.tower.floor(letter, level);
        rows.push(vec![
            table.tower.induced.label(letter).to_string(),
            level.to_string(),
            scalar_cell(&floor.left, output.digits),
            scalar_cell(&floor.right, output.digits),
            if sign > 0 { "+1".into() } else { "-1".into() },
        ]);
        row_values.push(json!({
            "tower": table.tower.induced.label(letter),
            "level": level,
            "floor": interval_value(floor),
            "sign": sign,
        }));
    }
    let ok = table.checks.all_passed();
    let json = json!({
        "interval": serde_json::to_value(&table.interval)?,
        "heights": table.tower.heights,
        "rows": row_values,
        "checks": serde_json::to_value(&table.checks)?,
    });
    let artifact = Artifact::new(
        format!(
            "alternating labels on {} floors over {}; the labelling flips under the map: {}",
            table.tower.total_floors(),
            table.interval.interval.describe(output.digits),
            table.checks.summary(),
        ),
        json,
    )
    .with_table(rows);
    emit(&artifact, output)?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_unwind(
    input: &str,
    j_text: &str,
    v_text: &str,
    nmax: u64,
    budget: u64,
    output: &OutputOpts,
) -> Result<i32> {
    let t = input::load_iet(input)?;
    let report = connection_scan(&t, nmax)?;
    let spec = input::parse_j(&t, j_text)?;
    let dec = induce(&t, &spec, budget)?;
    let v = input::parse_scalar_list(&t, v_text)?;
    let res = unwind(&t, &report, &dec, &v, budget)?;

    let mut table = Table::new(&["letter", "old length", "new length"]);
    for i in 0..t.d() {
        table.push(vec![
            t.label(i).to_string(),
            scalar_cell(t.length(i), output.digits),
            scalar_cell(&res.lambda()[i], output.digits),
        ]);
    }
    let rep_json = |rep: Option<(usize, i64)>| -> Value {
        match rep {
            Some((letter, p)) => json!({ "letter": t.label(letter), "power": p }),
            None => Value::Null,
        }
    };
    let ok = res.certification.all_passed();
    let json = json!({
        "iet": IetSpec::from_iet(&res.iet)?,
        "lambda": res.lambda().iter().map(scalar_value).collect::<Vec<_>>(),
        "j_tilde": interval_value(&res.j_tilde),
        "heights": res.towers.heights,
        "left_endpoint_rep": rep_json(res.left_endpoint_rep),
        "right_endpoint_rep": rep_json(res.right_endpoint_rep),
        "certification": serde_json::to_value(&res.certification)?,
    });
    let artifact = Artifact::new(
        format!(
            "rebuilt the map from {} reassigned tower widths; J moved to {}; certification: {}",
            v.len(),
            res.j_tilde.describe(output.digits),
            res.certification.summary(),
        ),
        json,
    )
    .with_table(table);
    emit(&artifact, output)?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_birkhoff(
    input: &str,
    x_text: &str,
    n: i64,
    slope: &str,
    float_fallback: bool,
    output: &OutputOpts,
) -> Result<i32> {
    let t = input::load_iet(input)?;
    let x = input::parse_point(&t, x_text)?;
    let a = parse_slope(slope)?;
    let f = Cocycle::central(&t, &a);

    let mut table = Table::new(&["step", "point", "partial sum"]);
    let mut rows = Vec::new();
    let mut p = x.clone();
    let mut sum = t.basis().zero();
    let mut push = |k: i64, p: &ExactScalar, sum: &ExactScalar, table: &mut Table| {
        table.push(vec![
            k.to_string(),
            scalar_cell(p, output.digits),
            scalar_cell(sum, output.digits),
        ]);
        rows.push(json!({ "step": k, "point": scalar_value(p), "sum": scalar_value(sum) }));
    };
    push(0, &p, &sum, &mut table);
    if n >= 0 {
        for k in 1..=n {
            sum = &sum + &f.eval(&t, &p)?;
            p = t.apply(&p)?;
            push(k, &p, &sum, &mut table);
        }
    } else {
        for k in 1..=(-n) {
            p = t.apply_inverse(&p)?;
            sum = &sum - &f.eval(&t, &p)?;
            push(-k, &p, &sum, &mut table);
        }
    }
    let total = birkhoff_sum(&t, &f, &x, n)?;
    let consistent = total == sum;

    let mut json = json!({
        "slope": a.to_string(),
        "x0": scalar_value(&x),
        "n": n,
        "rows": rows,
        "total": scalar_value(&total),
        "running_sum_matches_direct_sum": consistent,
    });
    let mut summary = format!(
        "S_{} f({}) = {} for f(x) = {}*(x - midpoint)",
        n,
        scalar_cell(&x, output.digits),
        scalar_cell(&total, output.digits),
        a,
    );
    if float_fallback {
        if n > 0 {
            let (rep, worst) = float::birkhoff_agreement(&t, &f, &x, n as u64, FALLBACK_TOLERANCE)?;
            json["float"] = json!({
                "worst_deviation": worst,
                "tolerance": FALLBACK_TOLERANCE,
                "within_tolerance": rep.all_passed(),
            });
            summary.push_str(&format!(
                "; float cross-check max deviation {:.3e}{}",
                worst,
                if rep.all_passed() { "" } else { " (EXCEEDS TOLERANCE)" },
            ));
        } else {
            json["float"] = json!({ "skipped": "cross-check covers forward sums only" });
            summary.push_str("; float cross-check skipped for backward sums");
        }
    }
    let artifact = Artifact::new(summary, json).with_table(table);
    emit(&artifact, output)?;
    Ok(if consistent { 0 } else { 1 })
}

fn cmd_berk_trujillo(
    input: &str,
    center_text: &str,
    nmax: u64,
    scan_depth: u64,
    slope: &str,
    output: &OutputOpts,
) -> Result<i32> {
    let t = input::load_iet(input)?;
    let report = connection_scan(&t, scan_depth)?;
    let center = input::parse_center(&t, center_text)?;
    let a = parse_slope(slope)?;
    let f = Cocycle::central(&t, &a);
    let rep = berktrujillo_check(&t, &f, &report, center, nmax)?;

    let mut table = Table::new(&["n", "window sum", "zero", "pairing", "zero", "skipped"]);
    let mut live = 0usize;
    let mut skipped = 0usize;
    for row in &rep.rows {
        if row.skipped {
            skipped += 1;
        } else {
            live += 1;
        }
        table.push(vec![
            row.n.to_string(),
            scalar_cell(&row.literal, output.digits),
            if row.literal_is_zero { "yes".into() } else { "no".into() },
            row.pairing.as_ref().map_or(String::new(), |p| scalar_cell(p, output.digits)),
            row.pairing_is_zero
                .map_or(String::new(), |z| if z { "yes".into() } else { "no".into() }),
            if row.skipped { "yes".into() } else { String::new() },
        ]);
    }
    let ok = rep.checks.all_passed();
    let json = json!({
        "center": center_name(&t, center),
        "slope": a.to_string(),
        "report": serde_json::to_value(&rep)?,
    });
    let artifact = Artifact::new(
        format!(
            "window sums at {}: {} indices evaluated, {} skipped (orbit meets an endpoint); {}",
            center_name(&t, center),
            live,
            skipped,
            rep.checks.summary(),
        ),
        json,
    )
    .with_table(table);
    emit(&artifact, output)?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_skew(
    input: &str,
    x_text: &str,
    y_text: Option<&str>,
    n: u64,
    slope: &str,
    output: &OutputOpts,
) -> Result<i32> {
    let t = input::load_iet(input)?;
    let a = parse_slope(slope)?;
    let f = Cocycle::central(&t, &a);
    let mut points = vec![input::parse_point(&t, x_text)?];
    if let Some(y) = y_text {
        points.push(input::parse_point(&t, y)?);
    }
    let start = SkewState::resting(&t, points);
    let states = skew_orbit(&t, &f, &start, n)?;

    let coords = start.points.len();
    let mut headers = vec!["step".to_string()];
    for c in 0..coords {
        headers.push(format!("x{}", c + 1));
        headers.push(format!("fiber{}", c + 1));
    }
    let mut table = Table::new(&headers.iter().map(String::as_str).collect::<Vec<_>>());
    for (k, state) in states.iter().enumerate() {
        let mut row = vec![k.to_string()];
        for c in 0..coords {
            row.push(scalar_cell(&state.points[c], output.digits));
            row.push(scalar_cell(&state.fibers[c], output.digits));
        }
        table.push(row);
    }
    let json = json!({
        "slope": a.to_string(),
        "n": n,
        "states": serde_json::to_value(&states)?,
    });
    let artifact = Artifact::new(
        format!(
            "skew-product orbit over {} coordinate(s) for {} steps (slope {})",
            coords, n, a,
        ),
        json,
    )
    .with_table(table);
    emit(&artifact, output)?;
    Ok(0)
}

/// Largest absolute displacement of `T^q` over the floor midpoints of the
/// stack, exactly.
fn sup_displacement(t: &Iet, tower: &RigidityTower) -> Result<Option<ExactScalar>> {
    let mut sup: Option<ExactScalar> = None;
    for iv in &tower.xi {
        let mid = iv.midpoint();
        let moved = t.apply_n(&mid, tower.q as i64)?;
        let disp = (&moved - &mid).abs()?;
        sup = Some(match sup {
            None => disp,
            Some(s) => ExactScalar::max_of(s, disp)?,
        });
    }
    Ok(sup)
}

/// Largest absolute value of the length-`q` sums over the stack: the sums
/// are affine with slope `a q` on each floor, so the extremes sit at the
/// floor endpoints.
fn sup_sum(t: &Iet, f: &Cocycle, a: &Rat, tower: &RigidityTower) -> Result<Option<ExactScalar>> {
    let aq = a.clone() * Basis::parse_rat(&tower.q.to_string()).expect("integer literal");
    let mut sup: Option<ExactScalar> = None;
    for iv in &tower.xi {
        let at_left = birkhoff_sum(t, f, &iv.left, tower.q as i64)?;
        let at_right = &at_left + &iv.width().scale(&aq);
        let cand = ExactScalar::max_of(at_left.abs()?, at_right.abs()?)?;
        sup = Some(match sup {
            None => cand,
            Some(s) => ExactScalar::max_of(s, cand)?,
        });
    }
    Ok(sup)
}

fn cmd_rigidity(
    input: &str,
    depth: u64,
    budget: u64,
    nmax: u64,
    slope: &str,
    output: &OutputOpts,
) -> Result<i32> {
    let t = input::load_iet(input)?;
    let report = connection_scan(&t, nmax)?;
    let construction = build_rigidity_towers(&t, &report, depth, budget)?;
    let a = parse_slope(slope)?;
    let f = Cocycle::central(&t, &a);

    let mut ok = construction.checks.all_passed();
    let witness = if construction.towers.is_empty() {
        None
    } else {
        Some(essential_value_witness(&t, &f, &construction)?)
    };

    let mut rungs = Vec::new();
    let mut table = Table::new(&["n", "floor", "left", "right", "width"]);
    for tower in &construction.towers {
        let criterion = verify_effcriterion(&t, &f, tower)?;
        ok &= criterion.all_passed();
        for (idx, iv) in tower.xi.iter().enumerate() {
            table.push(vec![
                tower.n.to_string(),
                idx.to_string(),
                scalar_cell(&iv.left, output.digits),
                scalar_cell(&iv.right, output.digits),
                scalar_cell(&iv.width(), output.digits),
            ]);
        }
        let image_measure = witness
            .as_ref()
            .and_then(|w| w.images.iter().find(|im| im.n == tower.n))
            .map(|im| scalar_value(&im.measure));
        rungs.push(json!({
            "n": tower.n,
            "q": tower.q,
            "ell": tower.ell,
            "delta": tower.delta,
            "j": serde_json::to_value(&tower.j)?,
            "floors": tower.xi.len(),
            "leb_xi": scalar_value(&tower.xi_measure),
            "sup_displacement": sup_displacement(&t, tower)?.map(|s| scalar_value(&s)),
            "sup_sum": sup_sum(&t, &f, &a, tower)?.map(|s| scalar_value(&s)),
            "image_measure": image_measure,
            "criterion": serde_json::to_value(&criterion)?,
        }));
    }

    let witness_json = match &witness {
        None => Value::Null,
        Some(w) => {
            ok &= w.checks.all_passed();
            json!({
                "images": w.images.iter().map(|im| json!({
                    "n": im.n,
                    "q": im.q,
                    "components": im.components.iter().map(interval_value).collect::<Vec<_>>(),
                    "measure": scalar_value(&im.measure),
                })).collect::<Vec<_>>(),
                "intersection": w.intersection.iter().map(interval_value).collect::<Vec<_>>(),
                "intersection_measure": scalar_value(&w.intersection_measure),
                "candidate": w.candidate.as_ref().map(interval_value),
                "empty_intersection": w.empty_intersection,
                "checks": serde_json::to_value(&w.checks)?,
            })
        }
    };
    let json = json!({
        "beta": t.label(construction.beta),
        "alpha": t.label(construction.alpha),
        "top_source": center_name(&t, construction.top_source),
        "depth": depth,
        "kept": construction.towers.len(),
        "dropped": construction.dropped,
        "rungs": rungs,
        "witness": witness_json,
        "checks": serde_json::to_value(&construction.checks)?,
    });
    let artifact = Artifact::new(
        format!(
            "ladder around {}: {} rung(s) kept, {} dropped; rigidity times {:?}; all checks: {}",
            center_name(&t, construction.top_source),
            construction.towers.len(),
            construction.dropped.len(),
            construction.towers.iter().map(|w| w.q).collect::<Vec<_>>(),
            if ok { "pass" } else { "FAIL" },
        ),
        json,
    )
    .with_table(table);
    emit(&artifact, output)?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_verify(suite: &str, seed: u64, jobs: usize, output: &OutputOpts) -> Result<i32> {
    let opts = SuiteOptions { seed, jobs };
    let mut result = suites::run_suite(suite, opts)?;
    if let Some(path) = &output.out {
        result.artifacts.push(path.display().to_string());
    }
    eprintln!("{} finished in {:.1}s", suite, result.elapsed.as_secs_f64());
    let code = if result.passed() { 0 } else { 1 };
    let artifact = Artifact::new(result.summary_line(), serde_json::to_value(&result)?)
        .with_table(result.table());
    emit(&artifact, output)?;
    Ok(code)
}
