//! Double-precision shadow computations.
//!
//! The library decides everything in exact arithmetic; this module rebuilds
//! the same maps over `f64` so exact results can be cross-checked against a
//! plain floating-point simulation. It is used by the `--float-fallback`
//! flag and by the orbit-agreement acceptance check, and never feeds back
//! into any exact decision.

use anyhow::Result;
use iet_core::cocycle::Cocycle;
use iet_core::exact::ExactScalar;
use iet_core::iet::Iet;
use iet_core::report::CheckReport;

/// Tolerance for short cross-checks requested with `--float-fallback`.
pub const FALLBACK_TOLERANCE: f64 = 1e-12;

/// A piecewise translation over `f64`.
pub struct FloatIet {
    /// Left endpoints of the exchanged intervals in domain order.
    breaks: Vec<f64>,
    /// Translation applied on the piece starting at `breaks[i]`.
    shifts: Vec<f64>,
}

impl FloatIet {
    pub fn of(t: &Iet) -> Result<FloatIet> {
        let mut breaks = Vec::with_capacity(t.d());
        let mut shifts = Vec::with_capacity(t.d());
        for &letter in t.order0() {
            breaks.push(t.boundary(letter).approx_f64()?);
            shifts.push(t.shift(letter).approx_f64()?);
        }
        Ok(FloatIet { breaks, shifts })
    }

    /// One step: locate the piece by its left endpoint and translate.
    pub fn apply(&self, x: f64) -> f64 {
        let pos = self.breaks.partition_point(|b| *b <= x).saturating_sub(1);
        x + self.shifts[pos]
    }
}

/// A piecewise affine observable over `f64`.
pub struct FloatCocycle {
    breaks: Vec<f64>,
    slopes: Vec<f64>,
    offsets: Vec<f64>,
}

impl FloatCocycle {
    pub fn of(t: &Iet, f: &Cocycle) -> Result<FloatCocycle> {
        let mut breaks = Vec::with_capacity(t.d());
        let mut slopes = Vec::with_capacity(t.d());
        let mut offsets = Vec::with_capacity(t.d());
        for &letter in t.order0() {
            breaks.push(t.boundary(letter).approx_f64()?);
            slopes.push(f.slope(letter).approx_f64()?);
            offsets.push(f.offset(letter).approx_f64()?);
        }
        Ok(FloatCocycle { breaks, slopes, offsets })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let pos = self.breaks.partition_point(|b| *b <= x).saturating_sub(1);
        self.slopes[pos] * x + self.offsets[pos]
    }
}

/// Walk `steps` forward orbit steps exactly and in `f64` side by side and
/// report the worst pointwise deviation against `tol`.
pub fn orbit_agreement(
    t: &Iet,
    x0: &ExactScalar,
    steps: u64,
    tol: f64,
) -> Result<(CheckReport, f64)> {
    let sim = FloatIet::of(t)?;
    let mut exact = x0.clone();
    let mut float = x0.approx_f64()?;
    let mut worst: f64 = (exact.approx_f64()? - float).abs();
    for _ in 0..steps {
        exact = t.apply(&exact)?;
        float = sim.apply(float);
        worst = worst.max((exact.approx_f64()? - float).abs());
    }
    let mut report = CheckReport::new();
    report.record(
        "orbit_agreement",
        worst <= tol,
        format!("max |exact - float| = {worst:.3e} over {steps} steps (tolerance {tol:.0e})"),
    );
    Ok((report, worst))
}

/// Same for the running Birkhoff sums of `f` along the orbit of `x0`.
pub fn birkhoff_agreement(
    t: &Iet,
    f: &Cocycle,
    x0: &ExactScalar,
    steps: u64,
    tol: f64,
) -> Result<(CheckReport, f64)> {
    let sim = FloatIet::of(t)?;
    let fsim = FloatCocycle::of(t, f)?;
    let mut exact = x0.clone();
    let mut float = x0.approx_f64()?;
    let mut exact_sum = t.basis().zero();
    let mut float_sum = 0.0f64;
    let mut worst = 0.0f64;
    for _ in 0..steps {
        exact_sum = &exact_sum + &f.eval(t, &exact)?;
        float_sum += fsim.eval(float);
        exact = t.apply(&exact)?;
        float = sim.apply(float);
        worst = worst.max((exact_sum.approx_f64()? - float_sum).abs());
    }
    let mut report = CheckReport::new();
    report.record(
        "birkhoff_agreement",
        worst <= tol,
        format!("max |exact - float| = {worst:.3e} over {steps} partial sums (tolerance {tol:.0e})"),
    );
    Ok((report, worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use iet_core::exact::rat;
    use iet_core::presets::{example2, golden};

    #[test]
    fn float_orbits_track_exact_ones() {
        let g = golden();
        let x = g.basis().from_rational(rat("1/3"));
        let (report, worst) = orbit_agreement(&g, &x, 3_000, 1e-10).unwrap();
        assert!(report.all_passed(), "worst deviation {worst}");
    }

    #[test]
    fn float_sums_track_exact_ones() {
        let t = example2();
        let f = Cocycle::central(&t, &rat("1"));
        let x = t.basis().from_rational(rat("9/31"));
        let (report, worst) = birkhoff_agreement(&t, &f, &x, 500, 1e-11).unwrap();
        assert!(report.all_passed(), "worst deviation {worst}");
    }

    #[test]
    fn locates_track_pieces() {
        let t = example2();
        let sim = FloatIet::of(&t).unwrap();
        for text in ["1/80", "1/8", "9/40", "1/2", "39/40"] {
            let x = t.basis().from_rational(rat(text));
            let exact = t.apply(&x).unwrap().approx_f64().unwrap();
            let float = sim.apply(x.approx_f64().unwrap());
            assert!((exact - float).abs() < 1e-14, "{text}: {exact} vs {float}");
        }
    }
}
