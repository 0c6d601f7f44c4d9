//! The `tropirange` command line.
//!
//! Every verb prints JSON on stdout. Exit codes: 0 success, 1 domain error
//! or failed check batch, 2 usage error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tropirange::charpoly::{self, PERMANENT_CAP};
use tropirange::cnumrange::{conv_max, w_max_c, w_max_c_matrix, PERMUTATION_CAP};
use tropirange::isometry::validate_isometry;
use tropirange::maxcore::text::{parse_matrix, write_matrix};
use tropirange::numrange::{w_max, w_max_k, witness_for};
use tropirange::{cap_from_env, oracles, probe, random, spectra, Matrix};

pub mod json;
pub mod sweep;

use json::*;

#[derive(Parser, Debug)]
#[command(name = "tropirange", version, about = "Max-times numerical ranges, spectra and maxpolynomials")]
pub struct Cli {
    /// Override the brute-force size cap (also read from TROPIRANGE_CAP).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: Option<u64>,
    /// Emit JSON for verbs whose default output is matrix text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(clap::Args, Debug)]
pub struct Input {
    /// Matrix file, or `-` for stdin.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Geometric,
    Tropical,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Max numerical range [min diag, max entry].
    Range(Input),
    /// k-numerical range.
    Krange {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    /// An isometry X with f_A(X) = z.
    Witness {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long)]
        z: f64,
    },
    /// Geometric or tropical spectrum, or its k-subset maxima with --k.
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "geometric")]
        kind: Kind,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: Option<u64>,
    },
    /// Characteristic maxpolynomial coefficients and roots.
    Charpoly(Input),
    /// C-numerical range for a vector or square matrix C.
    Crange {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        c: PathBuf,
    },
    /// Validates an isometry file and prints its anchor rows.
    Isometry(Input),
    /// Seeded sweep of every law suite and invariant check.
    Laws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// One oracle cross-check batch.
    Oracle {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(oracles::ORACLE_NAMES.iter().copied()))]
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Components of the grid isometry graph (evidence only).
    ProbeConnect {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, default_value_t = 2)]
        grid: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
    },
    /// Random nonnegative matrix, entries on (0, 10] with the given density.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        sorted_diag: bool,
        /// Write the matrix here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Errors that end a run with exit code 1.
#[derive(Debug)]
pub enum Failure {
    Domain(tropirange::Error),
    Io { path: PathBuf, source: io::Error },
    /// A check batch ran but reported failures; its summary is already
    /// printed.
    Checks,
}

impl From<tropirange::Error> for Failure {
    fn from(e: tropirange::Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read_text(path: &Path) -> std::result::Result<String, Failure> {
    let io_err = |source| Failure::Io { path: path.to_path_buf(), source };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn read_matrix(path: &Path) -> std::result::Result<Matrix, Failure> {
    Ok(parse_matrix(&read_text(path)?)?)
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Outcome {
    let text = serde_json::to_string(value).expect("output records serialize");
    writeln!(out, "{text}").map_err(|source| Failure::Io { path: PathBuf::from("<stdout>"), source })
}

fn rows_of(m: &Matrix) -> Vec<Vec<Num>> {
    (0..m.rows()).map(|i| nums(m.row(i))).collect()
}

fn as_usize(v: u64) -> usize {
    usize::try_from(v).unwrap_or(usize::MAX)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Outcome {
    let cap = |default: usize| cli.cap.map(as_usize).unwrap_or_else(|| cap_from_env(default));
    match cli.verb {
        Verb::Range(input) => {
            let a = read_matrix(&input.input)?;
            emit(out, &Hull::from(w_max(&a)?))
        }
        Verb::Krange { input, k } => {
            let a = read_matrix(&input.input)?;
            let k = as_usize(k);
            let w = w_max_k(&a, k)?;
            emit(out, &KRange { k, lo: Num(w.lo()), hi: Num(w.hi()) })
        }
        Verb::Witness { input, k, z } => {
            let a = read_matrix(&input.input)?;
            let k = as_usize(k);
            let w = witness_for(&a, k, z)?;
            let m = w.isometry.matrix();
            if cli.json {
                emit(out, &WitnessOut { k, z: Num(z), value: Num(w.value), case: w.case.label(), matrix: rows_of(m) })
            } else {
                writeln!(out, "{}# value {}", write_matrix(m), w.value)
                    .map_err(|source| Failure::Io { path: PathBuf::from("<stdout>"), source })
            }
        }
        Verb::Spectrum { input, kind, k } => {
            let a = read_matrix(&input.input)?;
            let cap = cap(PERMANENT_CAP);
            let spectrum = match kind {
                Kind::Geometric => spectra::sigma_max(&a)?,
                Kind::Tropical => charpoly::sigma_trop(&a, cap)?,
            };
            match k {
                None => emit(out, &roots(&spectrum)),
                Some(k) => {
                    let values = spectrum.k_subset_maxima(as_usize(k))?;
                    emit(
                        out,
                        &KSpectrum {
                            kind: spectrum.kind().label(),
                            k: as_usize(k),
                            hull: conv_max(&values)?.into(),
                            values: nums(&values),
                        },
                    )
                }
            }
        }
        Verb::Charpoly(input) => {
            let a = read_matrix(&input.input)?;
            let p = charpoly::characteristic_polynomial(&a, cap(PERMANENT_CAP))?;
            emit(
                out,
                &CharpolyOut {
                    deltas: nums(&p.deltas),
                    essential: p.essential_indices(),
                    roots: roots(&p.roots),
                    zero_mult: p.zero_mult,
                },
            )
        }
        Verb::Crange { input, c } => {
            let a = read_matrix(&input.input)?;
            let cm = read_matrix(&c)?;
            let cap = cap(PERMUTATION_CAP);
            let values = match cm.shape() {
                (1, _) => w_max_c(&a, cm.row(0), cap)?,
                (_, 1) => w_max_c(&a, cm.transpose().row(0), cap)?,
                _ => w_max_c_matrix(&a, &cm, cap)?,
            };
            emit(out, &CRangeOut { hull: conv_max(&values)?.into(), values: nums(&values) })
        }
        Verb::Isometry(input) => {
            let x = validate_isometry(&read_matrix(&input.input)?)?;
            let one_based = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
            emit(
                out,
                &IsometryOut {
                    n: x.n(),
                    k: x.k(),
                    anchors: x.anchors().iter().map(|a| one_based(a)).collect(),
                    permutation_rows: one_based(&x.permutation_rows()),
                },
            )
        }
        Verb::Laws { seed, trials } => {
            let summary = sweep::run_all(as_usize(trials), seed, cap(PERMUTATION_CAP))?;
            emit(out, &summary)?;
            if summary.passed { Ok(()) } else { Err(Failure::Checks) }
        }
        Verb::Oracle { name, seed, trials } => {
            let r = oracles::cross_check(&name, as_usize(trials), seed)?;
            let passed = r.passed();
            emit(
                out,
                &OracleOut {
                    oracle: r.name,
                    seed,
                    trials: r.trials,
                    failures: r.failures,
                    first_failure: r.first_failure,
                    passed,
                },
            )?;
            if passed { Ok(()) } else { Err(Failure::Checks) }
        }
        Verb::ProbeConnect { n, k, grid, step } => {
            let r = probe::probe_connect(n, as_usize(k), grid, step)?;
            emit(
                out,
                &ProbeOut {
                    n: r.n,
                    k: r.k,
                    grid: r.grid,
                    step: r.step,
                    states: r.states,
                    components: r.components,
                    sizes: r.sizes,
                    evidence: r.evidence,
                },
            )
        }
        Verb::Gen { n, density, seed, sorted_diag, output } => {
            let m: Matrix = random::gen_matrix(n, density, seed, sorted_diag)?;
            let text = write_matrix(&m);
            let io_err = |path: &Path| {
                let path = path.to_path_buf();
                move |source| Failure::Io { path, source }
            };
            match output {
                Some(path) => {
                    fs::write(&path, &text).map_err(io_err(&path))?;
                    if cli.json {
                        emit(out, &serde_json::json!({ "n": n, "path": path.display().to_string() }))?;
                    }
                    Ok(())
                }
                None if cli.json => emit(out, &serde_json::json!({ "n": n, "matrix": rows_of(&m) })),
                None => out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>"))),
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the verb, writing
/// results to `out` and usage messages to `err`. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            // --help and --version are successful parses
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(Failure::Checks) => 1,
        Err(Failure::Domain(e)) => {
            let _ = emit(out, &ErrorOut { error: ErrorBody { kind: e.kind().into(), message: e.to_string() } });
            1
        }
        Err(Failure::Io { path, source }) => {
            let message = format!("{}: {source}", path.display());
            let _ = emit(out, &ErrorOut { error: ErrorBody { kind: "io".into(), message } });
            1
        }
    }
}
