//! The `xagmc` command line.
//!
//! Exit codes: 0 on success, 1 when a verification or lemma check fails,
//! 2 for usage, domain and I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::io::{bristol, dot, json, write_atomic};
use crate::synth::{self, degree_lower_bound, Construction, MIN_ARITY};
use crate::verify::{self, reference_anf, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "xagmc",
    version,
    about = "AND-optimal circuits for all degree-(n-1) monomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConstructionArg {
    Optimal,
    Baseline,
}

impl From<ConstructionArg> for Construction {
    fn from(c: ConstructionArg) -> Self {
        match c {
            ConstructionArg::Optimal => Construction::Optimal,
            ConstructionArg::Baseline => Construction::Baseline,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Bristol,
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a circuit and write it out.
    Synth {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "optimal")]
        construction: ConstructionArg,
        #[arg(long, value_enum, default_value = "bristol")]
        format: Format,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a circuit and check it against the reference function.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "optimal")]
        construction: ConstructionArg,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Fail unless the circuit has exactly this many AND gates.
        #[arg(long)]
        expect_ands: Option<usize>,
        /// JSON report file; stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the symbolic property suite for 3 <= n <= max-n.
    Lemmas {
        #[arg(long)]
        max_n: usize,
    },
    /// Print AND counts and degree lower bounds.
    Stats {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Checks,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}\n{}\n", Cli::command().render_usage())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(Failure::Checks) => EXIT_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}\n\n{}", Cli::command().render_usage());
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Synth {
            n,
            construction,
            format,
            out,
        } => {
            let construction = Construction::from(construction);
            let (circuit, plan) = synth::synthesize_with_plan(n, construction)?;
            let text = match format {
                Format::Bristol => bristol::export(&circuit)?,
                Format::Dot => dot::export(&circuit),
                Format::Json => json::export(&circuit, Some(construction)),
            };
            emit(out.as_deref(), text.as_bytes(), stdout)?;
            writeln!(stderr, "construction: {construction}")?;
            writeln!(stderr, "n: {n}")?;
            writeln!(stderr, "and_count: {}", circuit.and_count())?;
            writeln!(
                stderr,
                "stage_budget: {} + {} + {} = {}",
                plan.budget.stage1,
                plan.budget.stage2,
                plan.budget.stage3,
                plan.budget.total()
            )?;
            Ok(())
        }
        Command::Verify {
            n,
            construction,
            mode,
            samples,
            seed,
            expect_ands,
            report,
        } => {
            let circuit = synth::synthesize(n, construction.into())?;
            let result: VerificationReport = match mode {
                ModeArg::Exhaustive => verify::check_exhaustive(&circuit, expect_ands)?,
                ModeArg::Sample => verify::check_sampled(&circuit, samples, seed, expect_ands)?,
            };
            let mut doc = serde_json::to_string_pretty(&result)?;
            doc.push('\n');
            emit(report.as_deref(), doc.as_bytes(), stdout)?;
            writeln!(stderr, "{result}")?;
            if result.passed {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Lemmas { max_n } => {
            let report = verify::check_lemma_suite(max_n)?;
            let mut summary: Vec<(String, usize, usize)> = Vec::new();
            for check in &report.checks {
                let name = check.lemma.to_string();
                match summary.iter_mut().find(|(l, _, _)| *l == name) {
                    Some(entry) => {
                        entry.1 += 1;
                        entry.2 += usize::from(check.passed);
                    }
                    None => summary.push((name, 1, usize::from(check.passed))),
                }
                if !check.passed {
                    writeln!(stdout, "{check}")?;
                }
            }
            for (name, total, passed) in &summary {
                let status = if passed == total { "PASS" } else { "FAIL" };
                writeln!(stdout, "[{status}] {name}: {passed}/{total}")?;
            }
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Stats { n } => {
            let stats = stats(n)?;
            write!(stdout, "{}", stats.render())?;
            Ok(())
        }
    }
}

fn emit(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => {
            write_atomic(p, bytes).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => Ok(stdout.write_all(bytes)?),
    }
}

/// Summary numbers printed by `xagmc stats`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub n: usize,
    pub optimal_formula: usize,
    pub baseline_formula: usize,
    /// `deg(f_k) - 1` for each output, in order.
    pub degree_bounds: Vec<usize>,
    pub optimal_ands: usize,
    pub optimal_gates: usize,
    pub baseline_ands: usize,
    pub baseline_gates: usize,
}

impl Stats {
    /// Every per-output degree bound is at most the optimal AND count.
    pub fn bound_holds(&self) -> bool {
        self.degree_bounds.iter().all(|&b| b <= self.optimal_ands)
    }

    fn render(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| s.push_str(&format!("{k}: {v}\n"));
        line("n", self.n.to_string());
        line("2n-3", self.optimal_formula.to_string());
        line("3n-6", self.baseline_formula.to_string());
        let (lo, hi) = (
            self.degree_bounds.iter().min().copied().unwrap_or(0),
            self.degree_bounds.iter().max().copied().unwrap_or(0),
        );
        if lo == hi {
            line(
                "degree_bound_per_output",
                format!("{lo} (all {} outputs)", self.degree_bounds.len()),
            );
        } else {
            let all: Vec<String> = self.degree_bounds.iter().map(|b| b.to_string()).collect();
            line("degree_bound_per_output", all.join(" "));
        }
        line(
            "optimal",
            format!("{} ANDs, {} gates", self.optimal_ands, self.optimal_gates),
        );
        line(
            "baseline",
            format!("{} ANDs, {} gates", self.baseline_ands, self.baseline_gates),
        );
        line("bound_holds", self.bound_holds().to_string());
        s
    }
}

pub fn stats(n: usize) -> Result<Stats, synth::SynthError> {
    if n < MIN_ARITY {
        return Err(synth::SynthError::ArityTooSmall(n));
    }
    let optimal = synth::synthesize(n, Construction::Optimal)?;
    let baseline = synth::synthesize(n, Construction::Baseline)?;
    let degree_bounds = (1..=n)
        .map(|k| degree_lower_bound(&reference_anf(n, k)))
        .collect();
    Ok(Stats {
        n,
        optimal_formula: Construction::Optimal.expected_ands(n),
        baseline_formula: Construction::Baseline.expected_ands(n),
        degree_bounds,
        optimal_ands: optimal.and_count(),
        optimal_gates: optimal.len(),
        baseline_ands: baseline.and_count(),
        baseline_gates: baseline.len(),
    })
}
