//! Class-conditioned random states and the `(Tr KK†, entropy)` records
//! used to draw the scatter plots, plus the analytic boundary curves.

use std::fmt;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::invariants::{classify, k_matrix, DEFAULT_RANK_TOL};
use crate::io::format_fermion;
use crate::random::{self, stream_rng};
use crate::rdm::{one_rdm, von_neumann_entropy, EntropyCurve};
use crate::tensor::FermiState336;

/// Default bound on the condition number of random SLOCC factors.
pub const DEFAULT_CONDITION_CAP: f64 = 1e3;

/// Slack allowed on the record range checks.
pub const RANGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleClass {
    /// Gaussian amplitudes on all twenty triples.
    GhzRandom,
    /// Random SLOCC images of the canonical W state.
    WClass,
    /// Random SLOCC images of `e^123 + e^156`.
    Biseparable,
    /// Gaussian coefficients of `α e^123 + β e^145 + γ e^246 + δ e^356`.
    Canonical4,
    /// `α e^123 + β e^456` with Gaussian coefficients.
    ZeroCon,
}

impl SampleClass {
    pub const ALL: [SampleClass; 5] = [
        SampleClass::GhzRandom,
        SampleClass::WClass,
        SampleClass::Biseparable,
        SampleClass::Canonical4,
        SampleClass::ZeroCon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SampleClass::GhzRandom => "ghz_random",
            SampleClass::WClass => "w_class",
            SampleClass::Biseparable => "biseparable",
            SampleClass::Canonical4 => "canonical4",
            SampleClass::ZeroCon => "zero_con",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| domain(format!("unknown sample class {s:?}")))
    }
}

impl fmt::Display for SampleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

fn slater(i: usize, j: usize, k: usize) -> FermiState336 {
    FermiState336::slater(i, j, k).expect("distinct modes")
}

/// `e^126 + e^423 + e^153` (1-based modes).
pub fn canonical_w() -> FermiState336 {
    slater(0, 1, 5) + slater(3, 1, 2) + slater(0, 4, 2)
}

/// `e^123 + e^156` (1-based modes).
pub fn canonical_biseparable() -> FermiState336 {
    slater(0, 1, 2) + slater(0, 4, 5)
}

/// `e^123 + e^456` (1-based modes).
pub fn canonical_ghz() -> FermiState336 {
    slater(0, 1, 2) + slater(3, 4, 5)
}

/// `α e^123 + β e^145 + γ e^246 + δ e^356` (1-based modes).
pub fn canonical_four(c: [Complex64; 4]) -> FermiState336 {
    slater(0, 1, 2) * c[0] + slater(0, 3, 4) * c[1] + slater(1, 3, 5) * c[2] + slater(2, 4, 5) * c[3]
}

/// What to sample and how.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleSpec {
    pub class: SampleClass,
    pub count: usize,
    pub seed: u64,
    pub condition_cap: f64,
}

impl SampleSpec {
    pub fn new(class: SampleClass, count: usize, seed: u64) -> Self {
        Self {
            class,
            count,
            seed,
            condition_cap: DEFAULT_CONDITION_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(domain("sample count must be at least 1"));
        }
        if !(self.condition_cap > 1.0) {
            return Err(domain(format!("condition cap {} must exceed 1", self.condition_cap)));
        }
        Ok(())
    }

    /// The normalized state with the given index; depends only on
    /// `(class, seed, index, condition_cap)`.
    pub fn state(&self, index: u64) -> Result<FermiState336> {
        let mut rng = stream_rng(self.seed, index);
        let raw = match self.class {
            SampleClass::GhzRandom => random::fermi_state(&mut rng),
            SampleClass::WClass => canonical_w().apply_slocc(&random::slocc(&mut rng, self.condition_cap)?),
            SampleClass::Biseparable => {
                canonical_biseparable().apply_slocc(&random::slocc(&mut rng, self.condition_cap)?)
            }
            SampleClass::Canonical4 => {
                let c = [0; 4].map(|_| random::complex_gaussian(&mut rng));
                canonical_four(c)
            }
            SampleClass::ZeroCon => {
                let (a, b) = (random::complex_gaussian(&mut rng), random::complex_gaussian(&mut rng));
                slater(0, 1, 2) * a + slater(3, 4, 5) * b
            }
        };
        raw.normalized()
    }
}

/// One scatter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointRecord {
    pub tr_kk_dagger: f64,
    pub entropy: f64,
    pub class_label: String,
    pub con: f64,
    pub d_abs: f64,
}

impl PointRecord {
    /// Evaluates a normalized state and checks the record ranges.
    pub fn from_state(p: &FermiState336) -> Result<Self> {
        let k = k_matrix(p);
        let tr_kk = k.trace_kk_dagger();
        let tr_k2 = k.trace_sq().norm();
        let entropy = von_neumann_entropy(&one_rdm(p))?;
        let class_label = match classify(p, DEFAULT_RANK_TOL) {
            Ok(c) => c.label.to_string(),
            Err(Error::Unclassifiable { rank, .. }) => format!("Unclassifiable{rank}"),
            Err(e) => return Err(e),
        };
        let record = Self {
            tr_kk_dagger: tr_kk,
            entropy,
            class_label,
            con: tr_kk - tr_k2,
            d_abs: tr_k2 / 6.0,
        };
        record.check_ranges(p)?;
        Ok(record)
    }

    fn check_ranges(&self, p: &FermiState336) -> Result<()> {
        let problem = if !(self.tr_kk_dagger >= -RANGE_TOL && self.tr_kk_dagger <= 1.5 + RANGE_TOL) {
            Some(format!("Tr KK† = {} outside [0, 3/2]", self.tr_kk_dagger))
        } else if !(self.entropy <= 6f64.ln() + RANGE_TOL) {
            Some(format!("entropy {} exceeds ln 6", self.entropy))
        } else {
            None
        };
        match problem {
            Some(message) => Err(Error::InvariantViolation {
                message,
                state: format_fermion(p),
            }),
            None => Ok(()),
        }
    }
}

/// Samples every state of `spec` in parallel; records come back in index order.
pub fn sample(spec: &SampleSpec) -> Result<Vec<PointRecord>> {
    spec.validate()?;
    (0..spec.count as u64)
        .into_par_iter()
        .map(|n| PointRecord::from_state(&spec.state(n)?))
        .collect()
}

pub const CSV_HEADER: &str = "tr_kk_dagger,entropy,con,d_abs,class";

/// Writes records with 17 significant digits per value.
pub fn write_csv<W: Write>(out: &mut W, records: &[PointRecord]) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{}",
            r.tr_kk_dagger, r.entropy, r.con, r.d_abs, r.class_label
        )?;
    }
    Ok(())
}

/// Grid `min, min+step, …` closed with `max`, validated against the curve's domain.
pub fn curve_points(kind: EntropyCurve, min: f64, max: f64, step: f64) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = kind.domain();
    if !(min.is_finite() && max.is_finite() && min >= lo && max <= hi && min <= max) {
        return Err(domain(format!(
            "{} curve is defined on [{lo}, {hi}]; got min {min}, max {max}",
            kind.name()
        )));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(domain(format!("step {step} must be positive")));
    }
    let mut xs = Vec::new();
    let mut n = 0u64;
    loop {
        let x = min + n as f64 * step;
        // stop before landing within rounding of the endpoint
        if x >= max - 1e-9 * step {
            break;
        }
        xs.push(x);
        n += 1;
    }
    xs.push(max);
    xs.into_iter().map(|x| Ok((x, kind.eval(x)?))).collect()
}

pub fn write_curve_csv<W: Write>(out: &mut W, points: &[(f64, f64)]) -> Result<()> {
    writeln!(out, "x,entropy")?;
    for (x, s) in points {
        writeln!(out, "{x:.16e},{s:.16e}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_names_round_trip() {
        for c in SampleClass::ALL {
            assert_eq!(SampleClass::parse(c.name()).unwrap(), c);
        }
        assert!(SampleClass::parse("ghz").is_err());
    }

    #[test]
    fn zero_con_points_on_curve() {
        let records = sample(&SampleSpec::new(SampleClass::ZeroCon, 50, 3)).unwrap();
        for r in records {
            let s = EntropyCurve::ZeroCon.eval(r.tr_kk_dagger.min(1.5)).unwrap();
            assert!((s - r.entropy).abs() < 1e-8);
        }
    }

    #[test]
    fn rejects_empty_spec() {
        assert!(sample(&SampleSpec::new(SampleClass::GhzRandom, 0, 1)).is_err());
    }

    #[test]
    fn curve_grid_includes_endpoints() {
        let pts = curve_points(EntropyCurve::ZeroCon, 0.0, 1.5, 0.1).unwrap();
        assert_eq!(pts.len(), 16);
        assert_eq!(pts[0].0, 0.0);
        assert_eq!(pts[15].0, 1.5);
        assert!((pts[15].1 - 6f64.ln()).abs() < 1e-14);
        assert!(curve_points(EntropyCurve::Biseparable, 0.0, 1.2, 0.1).is_err());
        assert!(curve_points(EntropyCurve::Biseparable, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn csv_layout() {
        let records = sample(&SampleSpec::new(SampleClass::GhzRandom, 2, 9)).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &records).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(lines[1].ends_with(",GHZ"));
    }
}
