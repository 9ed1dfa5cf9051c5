//! Input handling: loading maps from JSON files or built-in presets, and
//! parsing points, subintervals, and width lists from command-line text.

use anyhow::{anyhow, bail, Context, Result};
use iet_core::exact::ExactScalar;
use iet_core::iet::{CenterId, Iet, Interval};
use iet_core::induction::SubintervalSpec;
use iet_core::io::iet_from_json;
use iet_core::presets;

/// Load a map from a JSON file; the names of the built-in presets are
/// accepted when no such file exists.
pub fn load_iet(input: &str) -> Result<Iet> {
    let path = std::path::Path::new(input);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        return iet_from_json(&text).with_context(|| format!("loading {}", path.display()));
    }
    match input {
        "golden" => Ok(presets::golden()),
        "example1" => Ok(presets::example1()),
        "example2" => Ok(presets::example2()),
        "example2-irrational" => Ok(presets::example2_irrational()),
        _ => bail!(
            "no file named `{input}` and no preset with that name \
             (presets: golden, example1, example2, example2-irrational)"
        ),
    }
}

/// Parse a point as a comma-separated coefficient list over the map's
/// basis; shorter lists are padded with zeros, so plain rationals work.
pub fn parse_point(t: &Iet, text: &str) -> Result<ExactScalar> {
    let mut coeffs: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    let want = t.basis().len();
    if coeffs.len() > want {
        bail!(
            "{} coefficients for a basis of {} elements ({})",
            coeffs.len(),
            want,
            t.basis().names().join(", ")
        );
    }
    coeffs.resize(want, "0".to_string());
    Ok(t.basis().parse_scalar(&coeffs)?)
}

/// Resolve a letter given by label or by 1-based position.
pub fn parse_letter(t: &Iet, text: &str) -> Result<usize> {
    if let Some(i) = t.label_index(text) {
        return Ok(i);
    }
    if let Ok(k) = text.parse::<usize>() {
        if (1..=t.d()).contains(&k) {
            return Ok(k - 1);
        }
    }
    bail!(
        "no interval named `{text}` (labels: {}); a 1-based index up to {} also works",
        t.labels().join(", "),
        t.d()
    )
}

/// Parse a center: `half` (the base midpoint) or a letter.
pub fn parse_center(t: &Iet, text: &str) -> Result<CenterId> {
    if text.eq_ignore_ascii_case("half") {
        return Ok(CenterId::Half);
    }
    Ok(CenterId::Letter(parse_letter(t, text)?))
}

/// Parse a subinterval specification. Three forms:
///
/// - a letter (label or 1-based index): that letter's full domain interval;
/// - `LEFT..RIGHT`: explicit endpoints, each a coefficient list;
/// - `orbit:ALPHA,M0,BETA,N0`: endpoints `T^M0(left of ALPHA)` and
///   `T^N0(left of BETA)`, resolved and certified by the library.
pub fn parse_j(t: &Iet, text: &str) -> Result<SubintervalSpec> {
    if let Some(rest) = text.strip_prefix("orbit:") {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            bail!("orbit form takes four fields: orbit:ALPHA,M0,BETA,N0");
        }
        let alpha = parse_letter(t, parts[0])?;
        let m0: i64 = parts[1].parse().context("orbit step M0")?;
        let beta = parse_letter(t, parts[2])?;
        let n0: i64 = parts[3].parse().context("orbit step N0")?;
        return Ok(SubintervalSpec::Dynamic { alpha, m0, beta, n0 });
    }
    if let Some((lo, hi)) = text.split_once("..") {
        let left = parse_point(t, lo)?;
        let right = parse_point(t, hi)?;
        return Ok(SubintervalSpec::Explicit(Interval::new(left, right)));
    }
    let letter = parse_letter(t, text)
        .map_err(|e| anyhow!("subinterval `{text}` is neither a letter, LEFT..RIGHT, nor orbit:...\n{e}"))?;
    Ok(SubintervalSpec::Explicit(t.domain_interval(letter)))
}

/// Parse a semicolon-separated list of scalars (each a coefficient list).
pub fn parse_scalar_list(t: &Iet, text: &str) -> Result<Vec<ExactScalar>> {
    text.split(';').map(|part| parse_point(t, part)).collect()
}
