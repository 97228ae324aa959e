//! The `fermion-ckw` command line: argument parsing, the five commands and
//! the mapping from errors to exit codes.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{classify, k_matrix, DEFAULT_RANK_TOL};
use crate::io::{read_fermion, read_qubits, write_fermion};
use crate::qubit::embed;
use crate::rdm::{one_rdm, spectral_entropy, BorlandDennis, EntropyCurve};
use crate::sampling::{
    curve_points, sample, write_csv, write_curve_csv, SampleClass, SampleSpec, DEFAULT_CONDITION_CAP,
};
use crate::tensor::FermiState336;
use crate::verify::{self, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_AMBIGUOUS: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "fermion-ckw",
    version,
    about = "Entanglement invariants of three fermions with six modes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print K-based invariants, the class and the one-particle spectrum of a state file.
    Invariants {
        #[arg(long)]
        state: PathBuf,
        /// Relative singular-value cut for the rank of K.
        #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
        tol: f64,
    },
    /// Write (Tr KK†, entropy) records for random states of one class.
    Sample {
        /// ghz_random, w_class, biseparable, canonical4 or zero_con.
        #[arg(long)]
        class: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Largest condition number accepted for random SLOCC factors.
        #[arg(long = "cond-cap", default_value_t = DEFAULT_CONDITION_CAP)]
        cond_cap: f64,
    },
    /// Tabulate an analytic entropy curve.
    Curves {
        /// zero_con, biseparable or w_special.
        #[arg(long)]
        kind: String,
        #[arg(long, allow_negative_numbers = true)]
        min: f64,
        #[arg(long, allow_negative_numbers = true)]
        max: f64,
        #[arg(long, allow_negative_numbers = true)]
        step: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the seeded property suites and print a JSON report.
    Verify {
        /// all, invariants, ckw, fierz, rdm or fock.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Rank tolerance used by the classification checks.
        #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
        tol: f64,
    },
    /// Embed a three-qubit state file as a three-fermion state file.
    Embed {
        #[arg(long)]
        qubits: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Output of the `invariants` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantsReport {
    pub norm: f64,
    #[serde(rename = "trK2")]
    pub tr_k2: [f64; 2],
    #[serde(rename = "D")]
    pub d: [f64; 2],
    pub tr_kk_dagger: f64,
    pub con: f64,
    pub class: String,
    #[serde(rename = "rankK")]
    pub rank_k: usize,
    pub singular_values: [f64; 6],
    /// Spectrum of the normalized state; absent for the zero state.
    pub spectrum: Option<[f64; 6]>,
    pub entropy: Option<f64>,
    pub borland_dennis: Option<BorlandDennis>,
}

/// K-based quantities of `p` as given; spectral data of `p/‖p‖`.
pub fn invariants_report(p: &FermiState336, tol: f64) -> Result<InvariantsReport> {
    let class = classify(p, tol)?;
    let k = k_matrix(p);
    let tr_k2 = k.trace_sq();
    let d = tr_k2 / 6.0;
    let tr_kk = k.trace_kk_dagger();
    let (spectrum, entropy, borland_dennis) = match p.normalized() {
        Ok(unit) => {
            let rho = one_rdm(&unit);
            let spectrum = rho.spectrum();
            (
                Some(spectrum),
                Some(spectral_entropy(&spectrum)?),
                Some(rho.borland_dennis()),
            )
        }
        Err(_) => (None, None, None),
    };
    Ok(InvariantsReport {
        norm: p.norm(),
        tr_k2: [tr_k2.re, tr_k2.im],
        d: [d.re, d.im],
        tr_kk_dagger: tr_kk,
        con: tr_kk - tr_k2.norm(),
        class: class.label.to_string(),
        rank_k: class.rank,
        singular_values: class.singular_values,
        spectrum,
        entropy,
        borland_dennis,
    })
}

/// Exit code for an error that stops a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Domain(_) | Error::Json(_) => EXIT_PARSE,
        Error::Unclassifiable { .. } => EXIT_AMBIGUOUS,
        Error::InvariantViolation { .. } | Error::Resource(_) | Error::Io(_) => EXIT_VERIFICATION,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct AmbiguityReport<'a> {
    error: &'a str,
    rank: usize,
    tol: f64,
    singular_values: [f64; 6],
}

/// Runs one parsed command. Reports go to `out`, diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli.command, out) {
        Ok(code) => code,
        // a closed stdout (e.g. piped into `head`) is not worth a message
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Error::Json(e)) if e.io_error_kind() == Some(std::io::ErrorKind::BrokenPipe) => EXIT_OK,
        Err(e) => {
            if let Error::Unclassifiable {
                rank,
                tol,
                singular_values,
            } = &e
            {
                let report = AmbiguityReport {
                    error: "unclassifiable",
                    rank: *rank,
                    tol: *tol,
                    singular_values: *singular_values,
                };
                let _ = print_json(out, &report);
            }
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Invariants { state, tol } => {
            let report = invariants_report(&read_fermion(&state)?, tol)?;
            print_json(out, &report)?;
            Ok(EXIT_OK)
        }
        Command::Sample {
            class,
            n,
            seed,
            out: path,
            cond_cap,
        } => {
            let spec = SampleSpec {
                class: SampleClass::parse(&class)?,
                count: n,
                seed,
                condition_cap: cond_cap,
            };
            let records = sample(&spec)?;
            let mut file = create(&path)?;
            write_csv(&mut file, &records)?;
            file.flush()?;
            Ok(EXIT_OK)
        }
        Command::Curves {
            kind,
            min,
            max,
            step,
            out: path,
        } => {
            let points = curve_points(EntropyCurve::parse(&kind)?, min, max, step)?;
            let mut file = create(&path)?;
            write_curve_csv(&mut file, &points)?;
            file.flush()?;
            Ok(EXIT_OK)
        }
        Command::Verify { suite, n, seed, tol } => {
            let opts = VerifyOptions {
                suite: Suite::parse(&suite)?,
                n,
                seed,
                tol,
            };
            let report = verify::run(&opts)?;
            print_json(out, &report)?;
            Ok(if report.ok() { EXIT_OK } else { EXIT_VERIFICATION })
        }
        Command::Embed { qubits, out: path } => {
            write_fermion(&path, &embed(&read_qubits(&qubits)?))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::format_fermion;
    use tempfile::tempdir;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(
            std::iter::once("fermion-ckw").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn invariants_of_ghz() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("ghz.json");
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p = FermiState336::slater(0, 1, 2).unwrap() * h + FermiState336::slater(3, 4, 5).unwrap() * h;
        std::fs::write(&path, format_fermion(&p)).unwrap();
        let (code, out, _) = call(&["invariants", "--state", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["class"], "GHZ");
        assert_eq!(v["rankK"], 6);
        assert!((v["D"][0].as_f64().unwrap() - 0.25).abs() < 1e-14);
        assert!(v["con"].as_f64().unwrap().abs() < 1e-14);
    }

    #[test]
    fn parse_errors_exit_two() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, r#"{"fermion_336": [[3, 2, 1, 1.0, 0.0]]}"#).unwrap();
        assert_eq!(call(&["invariants", "--state", path.to_str().unwrap()]).0, EXIT_PARSE);
        assert_eq!(
            call(&["sample", "--class", "nope", "--n", "1", "--seed", "1", "--out", "x"]).0,
            EXIT_PARSE
        );
        assert_eq!(call(&["frobnicate"]).0, 2);
    }

    #[test]
    fn ambiguity_exits_three() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("w.json");
        let w = crate::sampling::canonical_w().normalized().unwrap();
        std::fs::write(&path, format_fermion(&w)).unwrap();
        // a cut between the nonzero singular values of K forces rank 2
        let sv = k_matrix(&w).singular_values();
        if sv[1] > sv[2] * 1.01 {
            let tol = ((sv[1] + sv[2]) / 2.0 / sv[0]).to_string();
            let (code, out, _) = call(&["invariants", "--state", path.to_str().unwrap(), "--tol", &tol]);
            assert_eq!(code, EXIT_AMBIGUOUS);
            assert!(out.contains("singular_values"));
        }
    }

    #[test]
    fn curves_and_embed() {
        let dir = tempdir().unwrap();
        let csv = dir.path().join("c.csv");
        let (code, _, _) = call(&[
            "curves",
            "--kind",
            "zero_con",
            "--min",
            "0",
            "--max",
            "1.5",
            "--step",
            "0.5",
            "--out",
            csv.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 5);
        let (code, _, err) = call(&[
            "curves",
            "--kind",
            "biseparable",
            "--min",
            "0",
            "--max",
            "2",
            "--step",
            "0.5",
            "--out",
            csv.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains("[0, 1]"));

        let q = dir.path().join("q.json");
        let f = dir.path().join("f.json");
        std::fs::write(&q, r#"{"qubits_3": [[0, 0, 0, 1.0, 0.0]]}"#).unwrap();
        let (code, _, _) = call(&["embed", "--qubits", q.to_str().unwrap(), "--out", f.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        let p = read_fermion(&f).unwrap();
        assert_eq!(p, FermiState336::slater(0, 1, 2).unwrap());
    }
}
