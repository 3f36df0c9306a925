//! Command-line surface of the `triangular` binary.
//!
//! Exit status: 0 on success, 1 when a verification check fails or an input
//! violates a family or triangular-set invariant, 2 on malformed input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::height::{measure, LeadingTerm};
use crate::interp::{reconstruct, result_from_json, result_to_json, verify_all};
use crate::primary::{
    family_from_json, family_to_json, gen_family, parse_family, validate_loaded, GenSpec,
    PrimaryFamily,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "triangular",
    version,
    about = "Triangular sets from primary components"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random primary family.
    Gen {
        #[arg(long)]
        n: usize,
        /// Fiber degrees d_1,..,d_n.
        #[arg(long, value_delimiter = ',', required = true)]
        fibers: Vec<u32>,
        /// Inclusive exponent range lo,hi.
        #[arg(long, value_delimiter = ',', num_args = 1, default_value = "1,1")]
        delta: Vec<u32>,
        #[arg(long, default_value_t = 8)]
        coeff_bits: u32,
        #[arg(long, default_value_t = 8)]
        point_bits: u32,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a family file and print its fiber degrees.
    Validate { family: PathBuf },
    /// Reconstruct T, N and F from a family file.
    Build {
        family: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Include the idempotents of every internal node.
        #[arg(long)]
        audit: bool,
    },
    /// Check a result file against its family.
    Verify { family: PathBuf, result: PathBuf },
    /// Height report for a family and its reconstruction.
    Measure {
        family: PathBuf,
        /// Result file to measure; reconstructed from the family if absent.
        #[arg(long)]
        result: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Leave the monic leading term out of component heights.
        #[arg(long)]
        exclude_leading: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Markdown,
    Json,
}

/// Runs one command, reporting errors on stderr. Returns the exit status.
pub fn run(config: RunConfig) -> i32 {
    match dispatch(config.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(cfg),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_MALFORMED
            } else {
                EXIT_OK
            }
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotTriangular(_)
        | Error::InvalidFamily(_)
        | Error::Shape(_)
        | Error::NonUnit(_)
        | Error::NoConvergence(_)
        | Error::OutOfScope { .. } => EXIT_FAIL,
        Error::Parse { .. }
        | Error::Unsatisfiable(_)
        | Error::Malformed(_)
        | Error::Json(_)
        | Error::Io(_) => EXIT_MALFORMED,
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Gen {
            n,
            fibers,
            delta,
            coeff_bits,
            point_bits,
            seed,
            output,
        } => {
            if fibers.len() != n {
                return Err(Error::Unsatisfiable(format!(
                    "--n {n} but {} fiber degrees",
                    fibers.len()
                )));
            }
            let range = match delta[..] {
                [d] => (d, d),
                [lo, hi] => (lo, hi),
                _ => return Err(Error::Unsatisfiable("--delta takes lo,hi".into())),
            };
            let spec = GenSpec::new(&fibers, range, coeff_bits, point_bits);
            let family = gen_family(&spec, seed)?;
            emit(output.as_deref(), &family_to_json(&family)?)?;
            Ok(EXIT_OK)
        }
        Command::Validate { family } => {
            let (fam, declared) = parse_family(&read(&family)?)?;
            match validate_loaded(&fam, &declared) {
                Ok(()) => {
                    let d: Vec<String> = declared.iter().map(ToString::to_string).collect();
                    println!("ok: n = {}, degrees ({})", fam.n(), d.join(", "));
                    Ok(EXIT_OK)
                }
                Err(violations) => {
                    for v in violations {
                        println!("{v}");
                    }
                    Ok(EXIT_FAIL)
                }
            }
        }
        Command::Build {
            family,
            output,
            audit,
        } => {
            let fam = load_family(&family)?;
            let r = reconstruct(&fam)?;
            emit(output.as_deref(), &result_to_json(&r, audit)?)?;
            Ok(EXIT_OK)
        }
        Command::Verify { family, result } => {
            let fam = load_family(&family)?;
            let claim = result_from_json(&read(&result)?)?;
            let report = verify_all(&fam, &claim.t, &claim.n, &claim.f)?;
            print!("{report}");
            if report.all_passed() {
                println!("all checks passed");
                Ok(EXIT_OK)
            } else {
                let failed = report.failures().count();
                println!("{failed} check(s) failed");
                Ok(EXIT_FAIL)
            }
        }
        Command::Measure {
            family,
            result,
            format,
            output,
            exclude_leading,
        } => {
            let fam = load_family(&family)?;
            let (t, n) = match result {
                Some(path) => {
                    let claim = result_from_json(&read(&path)?)?;
                    (claim.t, claim.n)
                }
                None => {
                    let r = reconstruct(&fam)?;
                    (r.t.polys().to_vec(), r.n)
                }
            };
            let leading = if exclude_leading {
                LeadingTerm::Exclude
            } else {
                LeadingTerm::Include
            };
            let report = measure(&fam, &t, &n, leading)?;
            let text = match format {
                Format::Csv => report.to_csv(),
                Format::Markdown => report.to_markdown(),
                Format::Json => report.to_json()?,
            };
            emit(output.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn load_family(path: &Path) -> Result<PrimaryFamily> {
    family_from_json(&read(path)?)
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_gen_flags() {
        let cfg = RunConfig::try_parse_from([
            "triangular",
            "gen",
            "--n",
            "2",
            "--fibers",
            "2,2",
            "--delta",
            "1,1",
            "--coeff-bits",
            "8",
            "--point-bits",
            "4",
            "--seed",
            "7",
            "-o",
            "fam.json",
        ])
        .unwrap();
        let Command::Gen {
            n,
            fibers,
            delta,
            seed,
            output,
            ..
        } = cfg.command
        else {
            panic!("not gen");
        };
        assert_eq!((n, fibers, delta, seed), (2, vec![2, 2], vec![1, 1], 7));
        assert_eq!(output.unwrap(), PathBuf::from("fam.json"));
    }

    #[test]
    fn seed_is_required() {
        assert!(
            RunConfig::try_parse_from(["triangular", "gen", "--n", "1", "--fibers", "2"]).is_err()
        );
    }

    #[test]
    fn error_classes() {
        assert_eq!(exit_code(&Error::Malformed("x".into())), EXIT_MALFORMED);
        assert_eq!(exit_code(&Error::InvalidFamily(vec![])), EXIT_FAIL);
        assert_eq!(
            run_from([
                "triangular",
                "gen",
                "--n",
                "3",
                "--fibers",
                "2,2",
                "--seed",
                "1"
            ]),
            EXIT_MALFORMED
        );
        assert_eq!(run_from(["triangular", "frobnicate"]), EXIT_MALFORMED);
    }
}
