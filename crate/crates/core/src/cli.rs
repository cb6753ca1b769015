//! Command-line front end: `decompose`, `reconstruct`, `verify` and `bench`.
//!
//! Exit codes: 0 success, 1 I/O or data error, 2 usage error, 3 verification
//! failure.

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::io::{format_float, read_matrix, read_terms, write_matrix, write_terms, MatrixFormat};
use crate::matrix::{CoefficientMatrix, ComplexMatrix};
use crate::oracle::{naive_decompose, NAIVE_MAX_QUBITS};
use crate::random::{
    random_complex, random_complex_symmetric, random_hermitian, random_real_symmetric,
};
use crate::structure::{check_structure, SymmetryClass};
use crate::transform::{
    coefficients_from_terms, decompose, decompose_slice, reconstruct, terms_from_coefficients,
    OpCounters,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Tolerance used by `verify` for oracle agreement and coefficient structure.
pub const VERIFY_TOLERANCE: f64 = 1e-12;

/// Largest `n` accepted by `bench`.
pub const BENCH_MAX_QUBITS: usize = 14;

#[derive(Parser, Debug)]
#[command(
    name = "pauli-fwht",
    version,
    about = "Pauli string decomposition via the fast Walsh-Hadamard transform"
)]
pub struct Cli {
    /// Upper bound on worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Binary,
    Text,
}

impl From<FormatArg> for MatrixFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Binary => MatrixFormat::Binary,
            FormatArg::Text => MatrixFormat::Text,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    /// Term CSV with one line per coefficient above the threshold.
    Terms,
    /// Dense coefficient matrix in the binary matrix format.
    Dense,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose a matrix file into Pauli coefficients.
    Decompose {
        #[arg(short, long)]
        input: PathBuf,
        /// Input matrix encoding.
        #[arg(long, value_enum, default_value = "binary")]
        format: FormatArg,
        #[arg(short, long)]
        output: PathBuf,
        /// Terms with |coefficient| <= threshold are dropped.
        #[arg(long, default_value_t = 1e-12)]
        threshold: f64,
        #[arg(long, value_enum, default_value = "terms")]
        emit: Emit,
    },
    /// Rebuild a matrix from a term file.
    Reconstruct {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Output matrix encoding.
        #[arg(long, value_enum, default_value = "binary")]
        format: FormatArg,
        /// Qubit count, needed only when the term file has no terms.
        #[arg(long)]
        qubits: Option<usize>,
    },
    /// Cross-check the transform against the brute-force oracle on seeded random matrices.
    Verify {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Perturb every decomposition (negative control for the checks).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Time decompositions of seeded random Hermitian matrices.
    Bench {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Timed runs per matrix.
        #[arg(long, default_value_t = 10)]
        repeats: usize,
        /// Distinct random matrices per qubit count.
        #[arg(long, default_value_t = 10)]
        matrices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV destination.
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// A failure mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Verify(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Data(_) => EXIT_DATA,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Verify(_) => EXIT_VERIFY,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Verify(m) => f.write_str(m),
        }
    }
}

fn data_err(path: &Path, e: impl fmt::Display) -> CliError {
    CliError::Data(format!("{}: {e}", path.display()))
}

fn open(path: &Path) -> Result<File, CliError> {
    File::open(path).map_err(|e| data_err(path, e))
}

fn create(path: &Path) -> Result<File, CliError> {
    File::create(path).map_err(|e| data_err(path, e))
}

/// Parses `args` (including the program name), runs the command, and
/// returns the process exit code. Diagnostics go to `stderr`, reports to `stdout`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{rendered}")
            } else {
                write!(stdout, "{rendered}")
            };
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let (result, out, err) = pool.install(|| {
                let mut out = Vec::new();
                let mut err = Vec::new();
                let result = dispatch(cli.command, &mut out, &mut err);
                (result, out, err)
            });
            let _ = stdout.write_all(&out);
            let _ = stderr.write_all(&err);
            result
        }
        None => dispatch(cli.command, stdout, stderr),
    }
}

fn dispatch(
    command: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Decompose {
            input,
            format,
            output,
            threshold,
            emit,
        } => cmd_decompose(&input, format.into(), &output, threshold, emit, stderr),
        Command::Reconstruct {
            input,
            output,
            format,
            qubits,
        } => cmd_reconstruct(&input, &output, format.into(), qubits),
        Command::Verify {
            n_max,
            seed,
            trials,
            inject_fault,
        } => {
            let decomposer: Decomposer = if inject_fault {
                faulty_decompose
            } else {
                decompose
            };
            cmd_verify(n_max, seed, trials, decomposer, stdout)
        }
        Command::Bench {
            n_min,
            n_max,
            repeats,
            matrices,
            seed,
            output,
        } => {
            let config = BenchConfig {
                n_min,
                n_max,
                repeats,
                matrices,
                seed,
            };
            cmd_bench(&config, &output, stdout)
        }
    }
}

pub fn cmd_decompose(
    input: &Path,
    format: MatrixFormat,
    output: &Path,
    threshold: f64,
    emit: Emit,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    if threshold.is_nan() || threshold < 0.0 {
        return Err(CliError::Usage(format!(
            "threshold must be non-negative, got {threshold}"
        )));
    }
    let a =
        read_matrix(io::BufReader::new(open(input)?), format).map_err(|e| data_err(input, e))?;
    let n = a.qubits();
    let start = Instant::now();
    let coeffs = decompose(a);
    let elapsed = start.elapsed().as_secs_f64();
    let sink = create(output)?;
    let written = match emit {
        Emit::Terms => {
            let terms = terms_from_coefficients(&coeffs, threshold);
            write_terms(&terms, sink).map_err(|e| data_err(output, e))?;
            terms.len()
        }
        Emit::Dense => {
            write_matrix(coeffs.as_matrix(), sink, MatrixFormat::Binary)
                .map_err(|e| data_err(output, e))?;
            coeffs.dim() * coeffs.dim()
        }
    };
    let _ = writeln!(stderr, "n={n} terms={written} elapsed={elapsed:.6}s");
    Ok(())
}

pub fn cmd_reconstruct(
    input: &Path,
    output: &Path,
    format: MatrixFormat,
    qubits: Option<usize>,
) -> Result<(), CliError> {
    let terms = read_terms(io::BufReader::new(open(input)?)).map_err(|e| data_err(input, e))?;
    let coeffs = match qubits {
        Some(n) if terms.is_empty() => {
            CoefficientMatrix::zeros(n).map_err(|e| CliError::Usage(e.to_string()))?
        }
        Some(n) if n != terms.qubits() => {
            return Err(data_err(
                input,
                format!("terms act on {} qubits, --qubits says {n}", terms.qubits()),
            ))
        }
        _ => coefficients_from_terms(&terms),
    };
    let m = reconstruct(coeffs);
    write_matrix(&m, create(output)?, format).map_err(|e| data_err(output, e))
}

/// A decomposition routine under test.
pub type Decomposer = fn(ComplexMatrix) -> CoefficientMatrix;

fn faulty_decompose(a: ComplexMatrix) -> CoefficientMatrix {
    let mut c = decompose(a);
    let z = c.get(0, 0);
    c.set(0, 0, z + 1e-6);
    c
}

/// Input families exercised by `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    General,
    Hermitian,
    RealSymmetric,
    ComplexSymmetric,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 4] = [
        MatrixKind::General,
        MatrixKind::Hermitian,
        MatrixKind::RealSymmetric,
        MatrixKind::ComplexSymmetric,
    ];

    pub fn generate(self, n: usize, seed: u64) -> ComplexMatrix {
        match self {
            MatrixKind::General => random_complex(n, seed),
            MatrixKind::Hermitian => random_hermitian(n, seed),
            MatrixKind::RealSymmetric => random_real_symmetric(n, seed),
            MatrixKind::ComplexSymmetric => random_complex_symmetric(n, seed),
        }
        .expect("qubit count validated by caller")
    }

    pub fn class(self) -> SymmetryClass {
        match self {
            MatrixKind::General => SymmetryClass::General,
            MatrixKind::Hermitian => SymmetryClass::Hermitian,
            MatrixKind::RealSymmetric => SymmetryClass::RealSymmetric,
            MatrixKind::ComplexSymmetric => SymmetryClass::ComplexSymmetric,
        }
    }

    fn index(self) -> u64 {
        self as u64
    }
}

/// Per-case seed. Distinct `(n, index, salt)` give distinct streams.
pub fn derive_seed(seed: u64, n: usize, index: usize, salt: u64) -> u64 {
    seed ^ ((n as u64) << 48) ^ ((salt & 0xff) << 40) ^ index as u64
}

/// Worst deviations observed by `verify` for one qubit count.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyRow {
    pub n: usize,
    pub max_oracle_deviation: f64,
    pub max_imag_hermitian: f64,
    pub max_forbidden_symmetric: f64,
    pub structure_failures: usize,
}

impl VerifyRow {
    pub fn passed(&self) -> bool {
        self.max_oracle_deviation <= VERIFY_TOLERANCE && self.structure_failures == 0
    }
}

/// Runs the oracle and structure checks for `n` in `1..=n_max`.
pub fn run_verify(
    n_max: usize,
    seed: u64,
    trials: usize,
    decomposer: Decomposer,
) -> Result<Vec<VerifyRow>, CliError> {
    if n_max > NAIVE_MAX_QUBITS {
        return Err(CliError::Usage(format!(
            "--n-max {n_max} exceeds the oracle limit of {NAIVE_MAX_QUBITS}"
        )));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let mut row = VerifyRow {
            n,
            ..VerifyRow::default()
        };
        for trial in 0..trials {
            for kind in MatrixKind::ALL {
                let a = kind.generate(n, derive_seed(seed, n, trial, kind.index()));
                let expected = naive_decompose(&a).map_err(|e| CliError::Usage(e.to_string()))?;
                let got = decomposer(a);
                row.max_oracle_deviation =
                    row.max_oracle_deviation.max(got.max_abs_diff(&expected));
                let report = check_structure(&got, kind.class(), VERIFY_TOLERANCE)
                    .expect("tolerance is a valid constant");
                if kind.class().is_hermitian() {
                    row.max_imag_hermitian = row.max_imag_hermitian.max(report.max_imag_coeff);
                }
                if kind.class().is_symmetric() {
                    row.max_forbidden_symmetric =
                        row.max_forbidden_symmetric.max(report.max_forbidden_coeff);
                }
                if !report.passed {
                    row.structure_failures += 1;
                }
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn cmd_verify(
    n_max: usize,
    seed: u64,
    trials: usize,
    decomposer: Decomposer,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let rows = run_verify(n_max, seed, trials, decomposer)?;
    let _ = writeln!(
        stdout,
        "n  max|fast-oracle|  max|Im| hermitian  max|forbidden| symmetric  status"
    );
    for row in &rows {
        let _ = writeln!(
            stdout,
            "{:<2} {:<17.3e} {:<19.3e} {:<25.3e} {}",
            row.n,
            row.max_oracle_deviation,
            row.max_imag_hermitian,
            row.max_forbidden_symmetric,
            if row.passed() { "ok" } else { "FAIL" }
        );
    }
    match rows.iter().filter(|r| !r.passed()).count() {
        0 => Ok(()),
        bad => Err(CliError::Verify(format!(
            "{bad} qubit count(s) exceeded tolerance {VERIFY_TOLERANCE:e}"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub repeats: usize,
    pub matrices: usize,
    pub seed: u64,
}

/// One timed decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub run: usize,
    pub matrix_index: usize,
    pub seconds: f64,
    pub swaps: u64,
    pub adds_plus_subs: u64,
}

pub const BENCH_CSV_HEADER: &str = "n,run,matrix_index,seconds,swaps,adds_plus_subs";

impl BenchConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_max > BENCH_MAX_QUBITS {
            return Err(CliError::Usage(format!(
                "--n-max {} exceeds the benchmark limit of {BENCH_MAX_QUBITS}",
                self.n_max
            )));
        }
        if self.n_min > self.n_max {
            return Err(CliError::Usage(format!(
                "--n-min {} is larger than --n-max {}",
                self.n_min, self.n_max
            )));
        }
        if self.repeats == 0 || self.matrices == 0 {
            return Err(CliError::Usage(
                "--repeats and --matrices must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Times the decomposition of seeded random Hermitian matrices, calling
/// `sink` with each row as soon as it is measured. Matrix generation and the
/// copy that restores the input before each run are not timed.
pub fn run_bench(config: &BenchConfig, mut sink: impl FnMut(&BenchRow)) -> Result<(), CliError> {
    config.validate()?;
    for n in config.n_min..=config.n_max {
        let mut work = ComplexMatrix::zeros(n).map_err(|e| CliError::Usage(e.to_string()))?;
        for matrix_index in 0..config.matrices {
            let a = random_hermitian(n, derive_seed(config.seed, n, matrix_index, 0xbe))
                .map_err(|e| CliError::Usage(e.to_string()))?;
            for run in 0..config.repeats {
                work.as_mut_slice().copy_from_slice(a.as_slice());
                let start = Instant::now();
                let counters = decompose_slice(work.as_mut_slice(), n);
                let seconds = start.elapsed().as_secs_f64();
                sink(&BenchRow {
                    n,
                    run,
                    matrix_index,
                    seconds,
                    swaps: counters.swaps,
                    adds_plus_subs: counters.adds_plus_subs(),
                });
            }
        }
    }
    Ok(())
}

/// Mean seconds per qubit count, in increasing `n`.
pub fn bench_means(rows: &[BenchRow]) -> Vec<(usize, f64)> {
    let mut means: Vec<(usize, f64, usize)> = Vec::new();
    for row in rows {
        match means.last_mut() {
            Some((n, total, count)) if *n == row.n => {
                *total += row.seconds;
                *count += 1;
            }
            _ => means.push((row.n, row.seconds, 1)),
        }
    }
    means
        .into_iter()
        .map(|(n, total, count)| (n, total / count as f64))
        .collect()
}

pub fn cmd_bench(
    config: &BenchConfig,
    output: &Path,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    config.validate()?;
    let mut csv = BufWriter::new(create(output)?);
    let mut rows = Vec::new();
    let mut io_error = None;
    writeln!(csv, "{BENCH_CSV_HEADER}").map_err(|e| data_err(output, e))?;
    run_bench(config, |row| {
        if io_error.is_none() {
            if let Err(e) = writeln!(
                csv,
                "{},{},{},{},{},{}",
                row.n,
                row.run,
                row.matrix_index,
                format_float(row.seconds),
                row.swaps,
                row.adds_plus_subs
            ) {
                io_error = Some(e);
            }
        }
        rows.push(*row);
    })?;
    if let Some(e) = io_error {
        return Err(data_err(output, e));
    }
    csv.flush().map_err(|e| data_err(output, e))?;

    let _ = writeln!(stdout, "n   mean_seconds   ratio_to_previous");
    let mut previous: Option<f64> = None;
    for (n, mean) in bench_means(&rows) {
        let ratio = previous.map_or("-".to_string(), |p| format!("{:.3}", mean / p));
        let _ = writeln!(stdout, "{n:<3} {mean:<14.6e} {ratio}");
        previous = Some(mean);
    }
    Ok(())
}

/// Counts the bench CSV must report for `n`.
pub fn expected_bench_counts(n: usize) -> (u64, u64) {
    (
        OpCounters::expected_swaps(n),
        OpCounters::expected_adds_plus_subs(n),
    )
}
