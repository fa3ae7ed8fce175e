//! Reference oracles and circuit equivalence checks.
//!
//! The reference function is evaluated directly, never through a circuit.
//! Exhaustive checks compare whole truth tables; sampled checks pack 64
//! inputs per word and always include the `n + 2` structured inputs
//! (all-ones, all-zeros, and every single-zero input), since `f` is nonzero
//! on only `n + 1` of the `2^n` inputs.

use std::fmt;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::anf::{Anf, AnfError, Monomial, TruthTable, MAX_TABLE_ARITY};
use crate::synth::{self, Construction, SynthError};
use crate::xag::{Circuit, XagError};

/// At most this many mismatches are recorded per report.
pub const MISMATCH_CAP: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("expected {expected} input bits, got {got}")]
    InputLength { expected: usize, got: usize },
    #[error("arity {0} is too large for exhaustive checking (limit {MAX_TABLE_ARITY})")]
    ArityTooLarge(usize),
    #[error("circuit has {got} outputs but arity {arity} needs {arity}")]
    OutputCount { arity: usize, got: usize },
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("lemma suite supports 3 <= n_max <= 16, got {0}")]
    SuiteRange(usize),
    #[error("circuits disagree in arity: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error(transparent)]
    Circuit(#[from] XagError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Anf(#[from] AnfError),
}

/// `f_i(x) = AND_{j != i} x_j` for every `i`; `input[j - 1]` is `x_j`.
pub fn reference_f(n: usize, input: &[bool]) -> Result<Vec<bool>, VerifyError> {
    if input.len() != n {
        return Err(VerifyError::InputLength {
            expected: n,
            got: input.len(),
        });
    }
    // All ones except possibly at i: zero count is 0, or 1 and located at i.
    let mut zeros = input
        .iter()
        .enumerate()
        .filter(|(_, &b)| !b)
        .map(|(j, _)| j);
    let out = match (zeros.next(), zeros.next()) {
        (None, _) => vec![true; n],
        (Some(z), None) => (0..n).map(|i| i == z).collect(),
        _ => vec![false; n],
    };
    Ok(out)
}

/// Truth tables of `f_1..f_n`, built directly from the definition.
pub fn reference_tables(n: usize) -> Result<Vec<TruthTable>, VerifyError> {
    if n > MAX_TABLE_ARITY {
        return Err(VerifyError::ArityTooLarge(n));
    }
    let full = (1u64 << n) - 1;
    (0..n)
        .map(|i| {
            let skip = full & !(1u64 << i);
            TruthTable::from_fn(n, |x| x & skip == skip).map_err(VerifyError::from)
        })
        .collect()
}

/// ANF of `f_i`: the single monomial skipping `x_i`.
pub fn reference_anf(n: usize, i: usize) -> Anf {
    Anf::from_monomial(n, Monomial::all_but(n, i)).expect("variables within arity")
}

/// ANF of `s_0^n`: the XOR of every degree-(n-1) monomial.
pub fn sigma_anf(n: usize) -> Anf {
    Anf::from_monomials(n, (1..=n).map(|i| Monomial::all_but(n, i)))
        .expect("variables within arity")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => write!(f, "exhaustive"),
            Mode::Sampled { count, seed } => write!(f, "sampled(count={count}, seed={seed})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Input bits, `x_1` first.
    pub input: String,
    /// 1-based output index.
    pub output: usize,
    pub expected: bool,
    pub got: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub mode: Mode,
    pub arity: usize,
    pub inputs_tested: u64,
    pub outputs_checked: usize,
    /// Total mismatching (input, output) pairs, including unrecorded ones.
    pub mismatch_count: u64,
    /// The first [`MISMATCH_CAP`] mismatches.
    pub mismatches: Vec<Mismatch>,
    pub and_count_observed: usize,
    pub and_count_expected: Option<usize>,
    pub passed: bool,
}

impl VerificationReport {
    fn finish(mut self) -> Self {
        self.passed = self.mismatch_count == 0
            && self
                .and_count_expected
                .is_none_or(|e| e == self.and_count_observed);
        self
    }

    fn record(&mut self, input: impl FnOnce() -> String, output: usize, expected: bool) {
        self.mismatch_count += 1;
        if self.mismatches.len() < MISMATCH_CAP {
            self.mismatches.push(Mismatch {
                input: input(),
                output,
                expected,
                got: !expected,
            });
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} inputs={} mismatches={} ands={}",
            self.mode, self.arity, self.inputs_tested, self.mismatch_count, self.and_count_observed
        )?;
        if let Some(e) = self.and_count_expected {
            write!(f, " (expected {e})")?;
        }
        write!(f, " => {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

fn check_outputs(c: &Circuit) -> Result<(), VerifyError> {
    if c.outputs().len() != c.arity() {
        return Err(VerifyError::OutputCount {
            arity: c.arity(),
            got: c.outputs().len(),
        });
    }
    Ok(())
}

fn bit_string(n: usize, x: u64) -> String {
    (0..n)
        .map(|j| if x >> j & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Compares the circuit against the reference on all `2^n` inputs.
pub fn check_exhaustive(
    c: &Circuit,
    expected_and_count: Option<usize>,
) -> Result<VerificationReport, VerifyError> {
    let n = c.arity();
    if n > MAX_TABLE_ARITY {
        return Err(VerifyError::ArityTooLarge(n));
    }
    check_outputs(c)?;
    let got = c.eval_all()?;
    let want = reference_tables(n)?;
    let mut report = VerificationReport {
        mode: Mode::Exhaustive,
        arity: n,
        inputs_tested: 1 << n,
        outputs_checked: n,
        mismatch_count: 0,
        mismatches: Vec::new(),
        and_count_observed: c.and_count(),
        and_count_expected: expected_and_count,
        passed: false,
    };
    for (k, (g, w)) in got.iter().zip(&want).enumerate() {
        for (word, (a, b)) in g.words().iter().zip(w.words()).enumerate() {
            let mut diff = a ^ b;
            while diff != 0 {
                let bit = diff.trailing_zeros() as u64;
                let x = word as u64 * 64 + bit;
                report.record(|| bit_string(n, x), k + 1, b >> bit & 1 == 1);
                diff &= diff - 1;
            }
        }
    }
    Ok(report.finish())
}

/// Packed input batches: `count` seeded uniform samples followed by the
/// structured inputs. Each batch holds one lane word per variable and the
/// number of lanes in use.
fn sample_batches(n: usize, count: usize, seed: u64) -> Vec<(Vec<u64>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut batches = Vec::new();
    let mut left = count;
    while left > 0 {
        let lanes = left.min(64);
        let words = (0..n).map(|_| rng.next_u64()).collect();
        batches.push((words, lanes));
        left -= lanes;
    }
    // structured: lane 0 all-ones, lane 1 all-zeros, lane 2 + k zero at x_{k+1}
    let structured = n + 2;
    let mut start = 0;
    while start < structured {
        let lanes = (structured - start).min(64);
        let mut words = vec![0u64; n];
        for lane in 0..lanes {
            let which = start + lane;
            for (j, w) in words.iter_mut().enumerate() {
                let bit = match which {
                    0 => true,
                    1 => false,
                    k => k - 2 != j,
                };
                *w |= u64::from(bit) << lane;
            }
        }
        batches.push((words, lanes));
        start += lanes;
    }
    batches
}

/// Packed reference: lane-wise `f_i`. A lane has `f_i = 1` iff every input
/// except `x_i` is 1 in that lane.
fn reference_packed(inputs: &[u64]) -> Vec<u64> {
    let n = inputs.len();
    let mut prefix = vec![u64::MAX; n + 1];
    for j in 0..n {
        prefix[j + 1] = prefix[j] & inputs[j];
    }
    let mut suffix = u64::MAX;
    let mut out = vec![0; n];
    for i in (0..n).rev() {
        out[i] = prefix[i] & suffix;
        suffix &= inputs[i];
    }
    out
}

fn lane_input(inputs: &[u64], lane: usize) -> String {
    inputs
        .iter()
        .map(|w| if w >> lane & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Compares the circuit against the reference on `count` seeded samples plus
/// the `n + 2` structured inputs. Deterministic for a fixed seed.
pub fn check_sampled(
    c: &Circuit,
    count: usize,
    seed: u64,
    expected_and_count: Option<usize>,
) -> Result<VerificationReport, VerifyError> {
    if count == 0 {
        return Err(VerifyError::NoSamples);
    }
    check_outputs(c)?;
    let n = c.arity();
    let mut report = VerificationReport {
        mode: Mode::Sampled { count, seed },
        arity: n,
        inputs_tested: (count + n + 2) as u64,
        outputs_checked: n,
        mismatch_count: 0,
        mismatches: Vec::new(),
        and_count_observed: c.and_count(),
        and_count_expected: expected_and_count,
        passed: false,
    };
    for (inputs, lanes) in sample_batches(n, count, seed) {
        let used = if lanes == 64 {
            u64::MAX
        } else {
            (1 << lanes) - 1
        };
        let got = c.eval_packed(&inputs)?;
        let want = reference_packed(&inputs);
        for (k, (g, w)) in got.iter().zip(&want).enumerate() {
            let mut diff = (g ^ w) & used;
            while diff != 0 {
                let lane = diff.trailing_zeros() as usize;
                report.record(|| lane_input(&inputs, lane), k + 1, w >> lane & 1 == 1);
                diff &= diff - 1;
            }
        }
    }
    Ok(report.finish())
}

/// Result of comparing two circuits with each other and with the reference
/// on the same sampled inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferentialReport {
    pub arity: usize,
    pub inputs_tested: u64,
    /// (input, output) pairs where the two circuits disagree.
    pub disagreements: u64,
    pub first: VerificationReport,
    pub second: VerificationReport,
    pub passed: bool,
}

/// Runs [`check_sampled`] on both circuits and counts lane-wise
/// disagreements between them on the same inputs.
pub fn check_differential(
    a: &Circuit,
    b: &Circuit,
    count: usize,
    seed: u64,
) -> Result<DifferentialReport, VerifyError> {
    if a.arity() != b.arity() {
        return Err(VerifyError::ArityMismatch(a.arity(), b.arity()));
    }
    let first = check_sampled(a, count, seed, None)?;
    let second = check_sampled(b, count, seed, None)?;
    let mut disagreements = 0;
    for (inputs, lanes) in sample_batches(a.arity(), count, seed) {
        let used = if lanes == 64 {
            u64::MAX
        } else {
            (1 << lanes) - 1
        };
        let ya = a.eval_packed(&inputs)?;
        let yb = b.eval_packed(&inputs)?;
        disagreements += ya
            .iter()
            .zip(&yb)
            .map(|(p, q)| ((p ^ q) & used).count_ones() as u64)
            .sum::<u64>();
    }
    let passed = first.passed && second.passed && disagreements == 0;
    Ok(DifferentialReport {
        arity: a.arity(),
        inputs_tested: first.inputs_tested,
        disagreements,
        first,
        second,
        passed,
    })
}

/// GF(2) rank of a set of bit vectors.
pub fn gf2_rank(vectors: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let mut v = v;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// One symbolic or structural property checked by [`check_lemma_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    /// Even `n`: `s_0^n = s_0^{n-1} * (x_1 + .. + x_n)`.
    SigmaEvenStep,
    /// Odd `n`: the `s_0^{n-2}` recursion, or the `s_0^3` base case.
    SigmaOddRecursion,
    /// The synthesized `s_0^n` node has the right ANF and `n - 2` ANDs.
    SigmaCircuit,
    /// `(x_i + x_{i+1}) * s_0^n` is exactly two degree-(n-1) monomials.
    PairProduct,
    /// Even `n`: `s_0^{n-1} * (x_1 + .. + x_{n-1}) = x_1 .. x_{n-1}`.
    EvenLastOutput,
    /// The `n` intermediate nodes have GF(2) rank `n`.
    LinearIndependence,
    /// `f_1` equals `s_0^n` plus the even-indexed pair products (plus `f_n`).
    FirstOutput,
    /// `f_k = f_{k-1} + s_{k-1}^n`.
    OutputChain,
    /// Every synthesized output has the single expected monomial and the
    /// circuit has `2n - 3` ANDs.
    CircuitOutputs,
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Lemma::SigmaEvenStep => "sigma_even_step",
            Lemma::SigmaOddRecursion => "sigma_odd_recursion",
            Lemma::SigmaCircuit => "sigma_circuit",
            Lemma::PairProduct => "pair_product",
            Lemma::EvenLastOutput => "even_last_output",
            Lemma::LinearIndependence => "linear_independence",
            Lemma::FirstOutput => "first_output",
            Lemma::OutputChain => "output_chain",
            Lemma::CircuitOutputs => "circuit_outputs",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub lemma: Lemma,
    pub n: usize,
    /// The `i` or `k` the check is instantiated at, when it has one.
    pub index: Option<usize>,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for LemmaCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {} n={}", self.lemma, self.n)?;
        if let Some(i) = self.index {
            write!(f, " i={i}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub n_max: usize,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn find(&self, lemma: Lemma, n: usize, index: Option<usize>) -> Option<&LemmaCheck> {
        self.checks
            .iter()
            .find(|c| c.lemma == lemma && c.n == n && c.index == index)
    }
}

/// `(x_i + x_{i+1}) * s_0^n`, computed symbolically.
pub fn pair_product_anf(n: usize, i: usize) -> Result<Anf, AnfError> {
    Anf::xor_of_vars(n, [i, i + 1])?.multiply(&sigma_anf(n))
}

/// Runs every symbolic and structural property for `3 <= n <= n_max`.
pub fn check_lemma_suite(n_max: usize) -> Result<LemmaReport, VerifyError> {
    if !(3..=16).contains(&n_max) {
        return Err(VerifyError::SuiteRange(n_max));
    }
    let mut checks = Vec::new();
    for n in 3..=n_max {
        symbolic_checks(n, &mut checks)?;
        circuit_checks(n, &mut checks)?;
    }
    Ok(LemmaReport { n_max, checks })
}

fn push(
    checks: &mut Vec<LemmaCheck>,
    lemma: Lemma,
    n: usize,
    index: Option<usize>,
    passed: bool,
    detail: String,
) {
    checks.push(LemmaCheck {
        lemma,
        n,
        index,
        passed,
        detail,
    });
}

fn symbolic_checks(n: usize, checks: &mut Vec<LemmaCheck>) -> Result<(), VerifyError> {
    let s0 = sigma_anf(n);

    if n.is_multiple_of(2) {
        let lifted = lift(&sigma_anf(n - 1), n)?;
        let got = lifted.multiply(&Anf::xor_of_vars(n, 1..=n)?)?;
        push(
            checks,
            Lemma::SigmaEvenStep,
            n,
            None,
            got == s0,
            format!("{got}"),
        );
    } else {
        let x = |j| Anf::var(n, j);
        let got = if n == 3 {
            x(1)?
                .add(&x(2)?)?
                .multiply(&x(2)?.add(&x(3)?)?)?
                .add(&x(2)?)?
        } else {
            let inner = x(n - 1)?
                .add(&x(n)?)?
                .multiply(&Anf::xor_of_vars(n, 1..n)?)?
                .add(&x(n - 1)?)?;
            lift(&sigma_anf(n - 2), n)?.multiply(&inner)?
        };
        push(
            checks,
            Lemma::SigmaOddRecursion,
            n,
            None,
            got == s0,
            format!("{got}"),
        );
    }

    for i in 1..n {
        let got = pair_product_anf(n, i)?;
        let want = Anf::from_monomials(n, [Monomial::all_but(n, i), Monomial::all_but(n, i + 1)])?;
        push(
            checks,
            Lemma::PairProduct,
            n,
            Some(i),
            got == want,
            format!("{got}"),
        );
    }

    if n.is_multiple_of(2) {
        let got = lift(&sigma_anf(n - 1), n)?.multiply(&Anf::xor_of_vars(n, 1..n)?)?;
        let want = reference_anf(n, n);
        push(
            checks,
            Lemma::EvenLastOutput,
            n,
            None,
            got == want,
            format!("{got}"),
        );
    }

    let pairs: Vec<Anf> = (1..n)
        .map(|i| pair_product_anf(n, i))
        .collect::<Result<_, _>>()?;
    let mut f1 = s0.clone();
    let last = if n.is_multiple_of(2) { n - 2 } else { n - 1 };
    if n.is_multiple_of(2) {
        f1 = f1.add(&reference_anf(n, n))?;
    }
    for i in (2..=last).step_by(2) {
        f1 = f1.add(&pairs[i - 1])?;
    }
    push(
        checks,
        Lemma::FirstOutput,
        n,
        None,
        f1 == reference_anf(n, 1),
        format!("{f1}"),
    );

    for k in 2..=n {
        let got = reference_anf(n, k - 1).add(&pairs[k - 2])?;
        let ok = got == reference_anf(n, k);
        push(checks, Lemma::OutputChain, n, Some(k), ok, format!("{got}"));
    }
    Ok(())
}

/// Re-embeds an ANF into a larger arity.
fn lift(a: &Anf, arity: usize) -> Result<Anf, AnfError> {
    Anf::from_monomials(arity, a.terms().cloned())
}

fn circuit_checks(n: usize, checks: &mut Vec<LemmaCheck>) -> Result<(), VerifyError> {
    let (c, plan) = synth::synthesize_with_plan(n, Construction::Optimal)?;
    let s0 = plan
        .node(&format!("s_0^{n}"))
        .expect("optimal plan labels s_0^n");

    let tables = c.node_tables(&[s0])?;
    let got = Anf::from_truth_table(&tables[0]);
    let ands = c.and_count_of(s0);
    let ok = got == sigma_anf(n) && ands == n - 2 && plan.budget.stage1 == n - 2;
    push(
        checks,
        Lemma::SigmaCircuit,
        n,
        None,
        ok,
        format!("{ands} ANDs, {} terms", got.len()),
    );

    let mut nodes = vec![s0];
    nodes.extend(&plan.stage2);
    let coords: Option<Vec<u64>> = c
        .node_tables(&nodes)?
        .iter()
        .map(|t| Anf::from_truth_table(t).leave_one_out_coords())
        .collect();
    let rank = coords.as_deref().map_or(0, gf2_rank);
    push(
        checks,
        Lemma::LinearIndependence,
        n,
        None,
        rank == n,
        format!("rank {rank} of {} vectors", nodes.len()),
    );

    let outs: Vec<_> = c.outputs().iter().map(|o| o.gate).collect();
    let tables = c.node_tables(&outs)?;
    let wrong = tables
        .iter()
        .enumerate()
        .filter(|(k, t)| Anf::from_truth_table(t) != reference_anf(n, k + 1))
        .count();
    let ands = c.and_count();
    push(
        checks,
        Lemma::CircuitOutputs,
        n,
        None,
        wrong == 0 && ands == 2 * n - 3,
        format!("{ands} ANDs, {wrong} wrong outputs"),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::synthesize;
    use crate::xag::Gate;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    /// Literal definition: AND over every j != i.
    fn literal_f(input: &[bool]) -> Vec<bool> {
        (0..input.len())
            .map(|i| (0..input.len()).filter(|&j| j != i).all(|j| input[j]))
            .collect()
    }

    #[test]
    fn reference_examples() {
        assert_eq!(reference_f(5, &bits("11111")).unwrap(), bits("11111"));
        assert_eq!(reference_f(5, &bits("11011")).unwrap(), bits("00100"));
        assert_eq!(reference_f(5, &bits("10011")).unwrap(), bits("00000"));
        assert_eq!(
            reference_f(5, &bits("1111")),
            Err(VerifyError::InputLength {
                expected: 5,
                got: 4
            })
        );
    }

    #[test]
    fn reference_matches_literal_definition() {
        for n in 1..=10 {
            for x in 0..1u32 << n {
                let input: Vec<bool> = (0..n).map(|j| x >> j & 1 == 1).collect();
                assert_eq!(reference_f(n, &input).unwrap(), literal_f(&input));
            }
        }
    }

    #[test]
    fn reference_tables_match_anf_route() {
        for n in 1..=12 {
            let tables = reference_tables(n).unwrap();
            for (i, t) in tables.iter().enumerate() {
                assert_eq!(*t, reference_anf(n, i + 1).to_truth_table().unwrap());
            }
        }
    }

    #[test]
    fn packed_reference_matches_scalar() {
        let inputs = [0b1011u64, 0b1110, 0b0111, 0b1101];
        let packed = reference_packed(&inputs);
        for lane in 0..4 {
            let input: Vec<bool> = inputs.iter().map(|w| w >> lane & 1 == 1).collect();
            let scalar = reference_f(4, &input).unwrap();
            let lanes: Vec<bool> = packed.iter().map(|w| w >> lane & 1 == 1).collect();
            assert_eq!(lanes, scalar, "lane {lane}");
        }
    }

    #[test]
    fn exhaustive_examples() {
        let r = check_exhaustive(&synthesize(6, Construction::Optimal).unwrap(), Some(9)).unwrap();
        assert!(r.passed, "{r}");
        assert_eq!(r.inputs_tested, 64);
        let r =
            check_exhaustive(&synthesize(6, Construction::Baseline).unwrap(), Some(12)).unwrap();
        assert!(r.passed, "{r}");
        let r = check_exhaustive(&synthesize(6, Construction::Optimal).unwrap(), Some(8)).unwrap();
        assert!(!r.passed);
        assert_eq!(r.mismatch_count, 0);
    }

    #[test]
    fn deleted_xor_operand_is_caught() {
        let c = synthesize(5, Construction::Optimal).unwrap();
        let out = c.outputs()[0].gate;
        let Gate::Xor(ops) = c.gate(out).clone() else {
            panic!("f_1 is an XOR");
        };
        let mut ops = ops;
        ops.pop();
        let mutated = if ops.len() >= 2 {
            c.with_gate(out, Gate::Xor(ops)).unwrap()
        } else {
            c.with_output(0, ops[0]).unwrap()
        };
        let r = check_exhaustive(&mutated, None).unwrap();
        assert!(!r.passed);
        assert!(!r.mismatches.is_empty());
        assert!(r.mismatches.len() <= MISMATCH_CAP);
    }

    #[test]
    fn exhaustive_rejects_wrong_shape() {
        let c = synthesize(3, Construction::Optimal).unwrap();
        let c = Circuit::from_parts(3, c.gates().to_vec(), c.outputs()[..2].to_vec()).unwrap();
        assert_eq!(
            check_exhaustive(&c, None),
            Err(VerifyError::OutputCount { arity: 3, got: 2 })
        );
    }

    #[test]
    fn sampled_includes_structured_inputs() {
        let batches = sample_batches(5, 3, 7);
        let mut inputs = Vec::new();
        for (words, lanes) in &batches {
            for lane in 0..*lanes {
                inputs.push(lane_input(words, lane));
            }
        }
        assert_eq!(inputs.len(), 3 + 5 + 2);
        for s in [
            "11111", "00000", "01111", "10111", "11011", "11101", "11110",
        ] {
            assert!(inputs.iter().any(|i| i == s), "missing {s}");
        }
        for structured in &inputs[3..] {
            let want = reference_f(5, &bits(structured)).unwrap();
            if structured == "11111" {
                assert!(want.iter().all(|&b| b));
            } else if structured != "00000" {
                let z = structured.find('0').unwrap();
                assert_eq!(want.iter().filter(|&&b| b).count(), 1);
                assert!(want[z]);
            }
        }
    }

    #[test]
    fn sampled_is_deterministic() {
        let c = synthesize(40, Construction::Optimal).unwrap();
        let a = check_sampled(&c, 500, 9, Some(77)).unwrap();
        let b = check_sampled(&c, 500, 9, Some(77)).unwrap();
        assert_eq!(a, b);
        assert!(a.passed, "{a}");
        assert_eq!(a.inputs_tested, 542);
        assert_eq!(check_sampled(&c, 0, 9, None), Err(VerifyError::NoSamples));
    }

    #[test]
    fn sampled_catches_a_wrong_tap() {
        let (c, plan) = synthesize_with_plan_opt(41);
        let mutated = c.with_output(3, plan[0]).unwrap();
        let r = check_sampled(&mutated, 100, 1, None).unwrap();
        assert!(!r.passed);
        assert!(r.mismatches.iter().all(|m| m.input.len() == 41));
    }

    fn synthesize_with_plan_opt(n: usize) -> (Circuit, Vec<crate::xag::GateId>) {
        let (c, plan) = synth::synthesize_with_plan(n, Construction::Optimal).unwrap();
        (c, plan.stage2)
    }

    #[test]
    fn differential_agrees() {
        let a = synthesize(101, Construction::Optimal).unwrap();
        let b = synthesize(101, Construction::Baseline).unwrap();
        let r = check_differential(&a, &b, 1000, 42).unwrap();
        assert!(r.passed);
        assert_eq!(r.disagreements, 0);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(gf2_rank(&[]), 0);
        assert_eq!(gf2_rank(&[0b011, 0b110, 0b101]), 2);
        assert_eq!(gf2_rank(&[0b001, 0b010, 0b100]), 3);
        assert_eq!(gf2_rank(&[0, 0]), 0);
    }

    #[test]
    fn lemma_suite_examples() {
        let r = check_lemma_suite(8).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{c}");
        }
        let c = r.find(Lemma::PairProduct, 7, Some(4)).unwrap();
        let got = pair_product_anf(7, 4).unwrap();
        let want =
            Anf::from_monomials(7, [Monomial::all_but(7, 4), Monomial::all_but(7, 5)]).unwrap();
        assert_eq!(got, want);
        assert!(c.passed);

        let c = r.find(Lemma::EvenLastOutput, 6, None).unwrap();
        assert!(c.passed);
        assert_eq!(c.detail, "x1x2x3x4x5");

        assert_eq!(check_lemma_suite(2), Err(VerifyError::SuiteRange(2)));
        assert_eq!(check_lemma_suite(17), Err(VerifyError::SuiteRange(17)));
    }
}
