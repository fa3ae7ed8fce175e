//! Circuits for the "all monomials of degree n-1" function
//! `f_i(x) = AND_{j != i} x_j`.
//!
//! The optimal construction runs in three stages:
//!
//! 1. `s_0^n`, the XOR of all `n` degree-(n-1) monomials, with `n - 2` ANDs.
//!    Odd `n` uses the recursion
//!    `s_0^n = s_0^{n-2} & (((x_{n-1} ^ x_n) & (x_1 ^ .. ^ x_{n-1})) ^ x_{n-1})`
//!    from the base case `s_0^3 = ((x_1 ^ x_2) & (x_2 ^ x_3)) ^ x_2`.
//!    Even `n` builds `s_0^{n-1}` that way and finishes with
//!    `s_0^n = s_0^{n-1} & (x_1 ^ .. ^ x_n)`.
//! 2. `s_i^n = (x_i ^ x_{i+1}) & s_0^n`, whose ANF is exactly the two
//!    monomials missing `x_i` and `x_{i+1}`. Odd `n` takes `i = 1..n-1`.
//!    Even `n` takes `i = 1..n-2` and computes
//!    `f_n = s_0^{n-1} & (x_1 ^ .. ^ x_{n-1})` directly. Either way `n - 1` ANDs.
//! 3. XOR-only recombination: `f_1` is `s_0^n` plus every even-indexed
//!    `s_{2i}^n` (plus `f_n` for even `n`), then `f_k = f_{k-1} ^ s_{k-1}^n`.
//!
//! Total: `(n - 2) + (n - 1) = 2n - 3` ANDs. The baseline combines prefix and
//! suffix products and uses `3n - 6`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::anf::Anf;
use crate::xag::{Circuit, CircuitBuilder, GateId, XagError};

/// Smallest arity the constructions accept.
pub const MIN_ARITY: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("arity must be at least {MIN_ARITY}, got {0}")]
    ArityTooSmall(usize),
    #[error("missing prerequisite node {0}")]
    MissingNode(String),
    #[error(transparent)]
    Circuit(#[from] XagError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    /// Three-stage construction with `2n - 3` ANDs.
    Optimal,
    /// Prefix/suffix products with `3n - 6` ANDs.
    Baseline,
}

impl Construction {
    pub fn as_str(self) -> &'static str {
        match self {
            Construction::Optimal => "optimal",
            Construction::Baseline => "baseline",
        }
    }

    /// The AND count this construction achieves at arity `n`.
    pub fn expected_ands(self, n: usize) -> usize {
        match self {
            Construction::Optimal => 2 * n - 3,
            Construction::Baseline => 3 * n - 6,
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Construction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "optimal" => Ok(Construction::Optimal),
            "baseline" => Ok(Construction::Baseline),
            other => Err(format!("unknown construction `{other}`")),
        }
    }
}

/// The input gates plus lazily built, shared XOR prefixes
/// `x_1 ^ x_2 ^ .. ^ x_k`.
#[derive(Debug)]
pub struct Inputs {
    vars: Vec<GateId>,
    prefixes: Vec<GateId>,
}

impl Inputs {
    /// Adds `x_1..x_n` to the builder.
    pub fn add_to(b: &mut CircuitBuilder) -> Result<Self, SynthError> {
        let vars = (1..=b.arity())
            .map(|v| b.input(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            prefixes: vars.first().copied().into_iter().collect(),
            vars,
        })
    }

    /// The gate for `x_j`, 1-based.
    pub fn var(&self, j: usize) -> GateId {
        self.vars[j - 1]
    }

    /// `x_1 ^ .. ^ x_k`, built as a chain so every prefix is shared.
    pub fn prefix(&mut self, b: &mut CircuitBuilder, k: usize) -> Result<GateId, SynthError> {
        assert!(
            k >= 1 && k <= self.vars.len(),
            "prefix length {k} out of range"
        );
        while self.prefixes.len() < k {
            let next = self.vars[self.prefixes.len()];
            let last = *self.prefixes.last().expect("seeded with x_1");
            let p = b.xor2(last, next)?;
            self.prefixes.push(p);
        }
        Ok(self.prefixes[k - 1])
    }
}

/// Stage-1 nodes: `s_0^k` for every `k` the recursion touched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sigma {
    pub n: usize,
    levels: Vec<(usize, GateId)>,
}

impl Sigma {
    /// `s_0^k`, if the recursion produced it.
    pub fn get(&self, k: usize) -> Option<GateId> {
        self.levels.iter().find(|(m, _)| *m == k).map(|&(_, g)| g)
    }

    pub fn top(&self) -> GateId {
        self.get(self.n).expect("top level is always built")
    }

    pub fn levels(&self) -> &[(usize, GateId)] {
        &self.levels
    }
}

/// Builds `s_0^n` with `n - 2` ANDs. For even `n` the odd-arity
/// intermediate `s_0^{n-1}` is kept in the returned levels.
pub fn build_sigma(
    n: usize,
    b: &mut CircuitBuilder,
    inputs: &mut Inputs,
) -> Result<Sigma, SynthError> {
    if n < MIN_ARITY {
        return Err(SynthError::ArityTooSmall(n));
    }
    let x = |j: usize| inputs.var(j);
    let (x1, x2, x3) = (x(1), x(2), x(3));
    let a = b.xor2(x1, x2)?;
    let c = b.xor2(x2, x3)?;
    let prod = b.and(a, c)?;
    let mut top = b.xor2(prod, x2)?;
    let mut levels = vec![(3, top)];

    let odd_top = if n % 2 == 1 { n } else { n - 1 };
    for m in (5..=odd_top).step_by(2) {
        let (xm1, xm) = (inputs.var(m - 1), inputs.var(m));
        let pair = b.xor2(xm1, xm)?;
        let prefix = inputs.prefix(b, m - 1)?;
        let t = b.and(pair, prefix)?;
        let u = b.xor2(t, xm1)?;
        top = b.and(top, u)?;
        levels.push((m, top));
    }
    if n.is_multiple_of(2) {
        let prefix = inputs.prefix(b, n)?;
        top = b.and(top, prefix)?;
        levels.push((n, top));
    }
    Ok(Sigma { n, levels })
}

/// Stage-2 nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage2 {
    /// `s_1^n, s_2^n, ...`: `n - 1` of them for odd `n`, `n - 2` for even.
    pub pairs: Vec<GateId>,
    /// `f_n`, computed directly from `s_0^{n-1}` when `n` is even.
    pub last_output: Option<GateId>,
}

impl Stage2 {
    /// All stage-2 gates in order, `f_n` last when present.
    pub fn gates(&self) -> Vec<GateId> {
        self.pairs.iter().copied().chain(self.last_output).collect()
    }
}

/// Builds the `n - 1` stage-2 nodes from the stage-1 results.
pub fn build_stage2(
    n: usize,
    b: &mut CircuitBuilder,
    inputs: &mut Inputs,
    sigma: &Sigma,
) -> Result<Stage2, SynthError> {
    if n < MIN_ARITY {
        return Err(SynthError::ArityTooSmall(n));
    }
    let s0 = sigma
        .get(n)
        .ok_or_else(|| SynthError::MissingNode(format!("s_0^{n}")))?;
    let count = if n % 2 == 1 { n - 1 } else { n - 2 };
    let mut pairs = Vec::with_capacity(count);
    for i in 1..=count {
        let (xi, xj) = (inputs.var(i), inputs.var(i + 1));
        let d = b.xor2(xi, xj)?;
        pairs.push(b.and(d, s0)?);
    }
    let last_output = if n.is_multiple_of(2) {
        let s_odd = sigma
            .get(n - 1)
            .ok_or_else(|| SynthError::MissingNode(format!("s_0^{}", n - 1)))?;
        let prefix = inputs.prefix(b, n - 1)?;
        Some(b.and(s_odd, prefix)?)
    } else {
        None
    };
    Ok(Stage2 { pairs, last_output })
}

/// XOR-only recombination; returns `f_1..f_n` in index order.
pub fn build_stage3(
    n: usize,
    b: &mut CircuitBuilder,
    sigma: &Sigma,
    stage2: &Stage2,
) -> Result<Vec<GateId>, SynthError> {
    if n < MIN_ARITY {
        return Err(SynthError::ArityTooSmall(n));
    }
    let s0 = sigma
        .get(n)
        .ok_or_else(|| SynthError::MissingNode(format!("s_0^{n}")))?;
    let even = n.is_multiple_of(2);
    let want = if even { n - 2 } else { n - 1 };
    if stage2.pairs.len() < want {
        return Err(SynthError::MissingNode(format!(
            "s_{}^{n}",
            stage2.pairs.len() + 1
        )));
    }
    let s = |i: usize| stage2.pairs[i - 1];

    let mut terms = vec![s0];
    if even {
        let fnn = stage2
            .last_output
            .ok_or_else(|| SynthError::MissingNode(format!("f_{n}")))?;
        terms.push(fnn);
    }
    terms.extend((2..=want).step_by(2).map(s));
    let mut outputs = vec![b.xor(&terms)?];
    let chain_end = if even { n - 1 } else { n };
    for k in 2..=chain_end {
        let prev = outputs[k - 2];
        outputs.push(b.xor2(prev, s(k - 1))?);
    }
    if let Some(fnn) = stage2.last_output.filter(|_| even) {
        outputs.push(fnn);
    }
    Ok(outputs)
}

/// AND gates added per stage on a fresh builder. For the baseline the stages
/// are prefix products, suffix products and the final combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StageBudget {
    pub stage1: usize,
    pub stage2: usize,
    pub stage3: usize,
}

impl StageBudget {
    pub fn total(&self) -> usize {
        self.stage1 + self.stage2 + self.stage3
    }
}

/// A synthesized circuit together with its labelled intermediates.
#[derive(Debug, Clone)]
pub struct SynthesisPlan {
    pub n: usize,
    pub construction: Construction,
    /// Labelled intermediate nodes, e.g. `s_0^5`, `s_3^5`, `f_4`, `p_3`.
    pub nodes: Vec<(String, GateId)>,
    /// Stage-2 gates (optimal only), `f_n` last for even `n`.
    pub stage2: Vec<GateId>,
    pub budget: StageBudget,
}

impl SynthesisPlan {
    pub fn node(&self, label: &str) -> Option<GateId> {
        self.nodes.iter().find(|(l, _)| l == label).map(|&(_, g)| g)
    }
}

pub fn synthesize(n: usize, construction: Construction) -> Result<Circuit, SynthError> {
    synthesize_with_plan(n, construction).map(|(c, _)| c)
}

pub fn synthesize_with_plan(
    n: usize,
    construction: Construction,
) -> Result<(Circuit, SynthesisPlan), SynthError> {
    if n < MIN_ARITY {
        return Err(SynthError::ArityTooSmall(n));
    }
    let mut b = CircuitBuilder::new(n);
    let mut inputs = Inputs::add_to(&mut b)?;
    let (outputs, nodes, stage2, budget) = match construction {
        Construction::Optimal => optimal(n, &mut b, &mut inputs)?,
        Construction::Baseline => baseline(n, &mut b, &inputs)?,
    };
    for (k, g) in outputs.into_iter().enumerate() {
        b.output(format!("f_{}", k + 1), g)?;
    }
    let plan = SynthesisPlan {
        n,
        construction,
        nodes,
        stage2,
        budget,
    };
    Ok((b.build(), plan))
}

type Built = (Vec<GateId>, Vec<(String, GateId)>, Vec<GateId>, StageBudget);

fn optimal(n: usize, b: &mut CircuitBuilder, inputs: &mut Inputs) -> Result<Built, SynthError> {
    let before = b.and_gates();
    let sigma = build_sigma(n, b, inputs)?;
    let after1 = b.and_gates();
    let stage2 = build_stage2(n, b, inputs, &sigma)?;
    let after2 = b.and_gates();
    let outputs = build_stage3(n, b, &sigma, &stage2)?;
    let budget = StageBudget {
        stage1: after1 - before,
        stage2: after2 - after1,
        stage3: b.and_gates() - after2,
    };

    let mut nodes: Vec<(String, GateId)> = sigma
        .levels()
        .iter()
        .map(|&(k, g)| (format!("s_0^{k}"), g))
        .collect();
    for (i, &g) in stage2.pairs.iter().enumerate() {
        nodes.push((format!("s_{}^{n}", i + 1), g));
    }
    if let Some(g) = stage2.last_output {
        nodes.push((format!("f_{n}"), g));
    }
    Ok((outputs, nodes, stage2.gates(), budget))
}

fn baseline(n: usize, b: &mut CircuitBuilder, inputs: &Inputs) -> Result<Built, SynthError> {
    let x = |j: usize| inputs.var(j);
    let mut nodes = Vec::new();

    // p[i] = x_1 .. x_i for i = 1..n-1
    let start = b.and_gates();
    let mut p = vec![GateId::new(0); n];
    p[1] = x(1);
    for i in 2..n {
        p[i] = b.and(p[i - 1], x(i))?;
        nodes.push((format!("p_{i}"), p[i]));
    }
    let after_p = b.and_gates();

    // q[i] = x_i .. x_n for i = 2..n
    let mut q = vec![GateId::new(0); n + 1];
    q[n] = x(n);
    for i in (2..n).rev() {
        q[i] = b.and(x(i), q[i + 1])?;
        nodes.push((format!("q_{i}"), q[i]));
    }
    let after_q = b.and_gates();

    let mut outputs = vec![q[2]];
    for i in 2..n {
        outputs.push(b.and(p[i - 1], q[i + 1])?);
    }
    outputs.push(p[n - 1]);
    let budget = StageBudget {
        stage1: after_p - start,
        stage2: after_q - after_p,
        stage3: b.and_gates() - after_q,
    };
    Ok((outputs, nodes, Vec::new(), budget))
}

/// The multiplicative-complexity lower bound `max(deg(f) - 1, 0)`.
pub fn degree_lower_bound(a: &Anf) -> usize {
    a.degree().saturating_sub(1)
}
