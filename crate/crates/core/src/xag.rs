//! XOR-AND graphs: an append-only gate DAG over `{INPUT, CONST1, AND, XOR, NOT}`.
//!
//! Gate ids are dense and assigned in creation order, and every operand id is
//! strictly smaller than the id of the gate that reads it, so id order is a
//! topological order. Evaluation is bit-parallel: each gate value is a slice
//! of 64-lane words.

use rustc_hash::FxHashMap;
use std::fmt;

use thiserror::Error;

use crate::anf::{TruthTable, MAX_TABLE_ARITY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XagError {
    #[error("input variable x_{var} out of range for arity {arity}")]
    VarOutOfRange { var: usize, arity: usize },
    #[error("input variable x_{0} added twice")]
    DuplicateInput(usize),
    #[error("unknown gate {0}")]
    UnknownGate(GateId),
    #[error("XOR needs at least 2 operands, got {0}")]
    XorArity(usize),
    #[error("gate {gate} reads operand {operand}, which is not older than itself")]
    NotTopological { gate: GateId, operand: GateId },
    #[error("expected {expected} input bits, got {got}")]
    InputLength { expected: usize, got: usize },
    #[error("arity {0} is too large for exhaustive evaluation (limit {MAX_TABLE_ARITY})")]
    ArityTooLarge(usize),
    #[error("no output with index {0}")]
    NoSuchOutput(usize),
}

/// Index of a gate inside its circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GateId(u32);

impl GateId {
    pub fn new(index: usize) -> Self {
        Self(u32::try_from(index).expect("gate index exceeds u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    /// Primary input `x_var`, 1-based.
    Input(usize),
    Const1,
    And([GateId; 2]),
    /// Multi-input XOR, at least two operands, in the order given.
    Xor(Vec<GateId>),
    Not(GateId),
}

impl Gate {
    pub fn operands(&self) -> &[GateId] {
        match self {
            Gate::Input(_) | Gate::Const1 => &[],
            Gate::And(ops) => ops,
            Gate::Xor(ops) => ops,
            Gate::Not(a) => std::slice::from_ref(a),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Gate::Input(_) => "INPUT",
            Gate::Const1 => "CONST1",
            Gate::And(_) => "AND",
            Gate::Xor(_) => "XOR",
            Gate::Not(_) => "NOT",
        }
    }
}

/// A labelled circuit output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub label: String,
    pub gate: GateId,
}

/// A finalized, immutable circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    arity: usize,
    gates: Vec<Gate>,
    outputs: Vec<Output>,
}

impl Circuit {
    /// Assembles a circuit from raw parts, checking every structural
    /// invariant (operands older than readers, distinct in-range inputs,
    /// known output gates). No hash-consing is applied.
    pub fn from_parts(
        arity: usize,
        gates: Vec<Gate>,
        outputs: Vec<Output>,
    ) -> Result<Self, XagError> {
        let mut seen = vec![false; arity];
        for (i, gate) in gates.iter().enumerate() {
            let id = GateId::new(i);
            match gate {
                Gate::Input(var) => {
                    if *var == 0 || *var > arity {
                        return Err(XagError::VarOutOfRange { var: *var, arity });
                    }
                    if std::mem::replace(&mut seen[var - 1], true) {
                        return Err(XagError::DuplicateInput(*var));
                    }
                }
                Gate::Xor(ops) if ops.len() < 2 => return Err(XagError::XorArity(ops.len())),
                _ => {}
            }
            for &op in gate.operands() {
                if op >= id {
                    return Err(XagError::NotTopological {
                        gate: id,
                        operand: op,
                    });
                }
            }
        }
        for out in &outputs {
            if out.gate.index() >= gates.len() {
                return Err(XagError::UnknownGate(out.gate));
            }
        }
        Ok(Self {
            arity,
            gates,
            outputs,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id.index()]
    }

    pub fn outputs(&self) -> &[Output] {
        &self.outputs
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// The id of the INPUT gate for `x_var`, if present.
    pub fn input(&self, var: usize) -> Option<GateId> {
        self.gates
            .iter()
            .position(|g| *g == Gate::Input(var))
            .map(GateId::new)
    }

    /// Marks every gate on which one of `roots` depends, roots included.
    pub fn cone(&self, roots: &[GateId]) -> Vec<bool> {
        let mut live = vec![false; self.gates.len()];
        for r in roots {
            live[r.index()] = true;
        }
        for i in (0..self.gates.len()).rev() {
            if live[i] {
                for op in self.gates[i].operands() {
                    live[op.index()] = true;
                }
            }
        }
        live
    }

    /// Gates reachable from any output.
    pub fn reachable(&self) -> Vec<bool> {
        let roots: Vec<GateId> = self.outputs.iter().map(|o| o.gate).collect();
        self.cone(&roots)
    }

    /// Number of distinct AND gates reachable from the outputs.
    pub fn and_count(&self) -> usize {
        self.reachable()
            .iter()
            .zip(&self.gates)
            .filter(|(live, g)| **live && matches!(g, Gate::And(_)))
            .count()
    }

    /// Number of AND gates in the cone of `root`.
    pub fn and_count_of(&self, root: GateId) -> usize {
        self.cone(&[root])
            .iter()
            .zip(&self.gates)
            .filter(|(live, g)| **live && matches!(g, Gate::And(_)))
            .count()
    }

    /// Evaluates every output on one input; `input[j - 1]` is `x_j`.
    pub fn eval(&self, input: &[bool]) -> Result<Vec<bool>, XagError> {
        if input.len() != self.arity {
            return Err(XagError::InputLength {
                expected: self.arity,
                got: input.len(),
            });
        }
        let lanes: Vec<u64> = input.iter().map(|&b| u64::from(b)).collect();
        Ok(self
            .eval_packed(&lanes)?
            .into_iter()
            .map(|w| w & 1 == 1)
            .collect())
    }

    /// Evaluates 64 inputs at once. `inputs[j - 1]` holds `x_j` for each of
    /// the 64 lanes; the result holds one lane word per output.
    pub fn eval_packed(&self, inputs: &[u64]) -> Result<Vec<u64>, XagError> {
        if inputs.len() != self.arity {
            return Err(XagError::InputLength {
                expected: self.arity,
                got: inputs.len(),
            });
        }
        let roots: Vec<GateId> = self.outputs.iter().map(|o| o.gate).collect();
        let live = self.cone(&roots);
        let values = self.eval_lanes(1, &live, |var, lane| lane[0] = inputs[var]);
        Ok(roots.iter().map(|r| values[r.index()]).collect())
    }

    /// Truth tables of every output over all `2^arity` inputs.
    pub fn eval_all(&self) -> Result<Vec<TruthTable>, XagError> {
        let roots: Vec<GateId> = self.outputs.iter().map(|o| o.gate).collect();
        self.node_tables(&roots)
    }

    /// Truth tables of arbitrary internal nodes.
    pub fn node_tables(&self, nodes: &[GateId]) -> Result<Vec<TruthTable>, XagError> {
        if self.arity > MAX_TABLE_ARITY {
            return Err(XagError::ArityTooLarge(self.arity));
        }
        for &node in nodes {
            if node.index() >= self.gates.len() {
                return Err(XagError::UnknownGate(node));
            }
        }
        const PATTERNS: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        let total = TruthTable::word_count(self.arity);
        let block = total.min(64);
        let live = self.cone(nodes);
        let mut words = vec![Vec::with_capacity(total); nodes.len()];
        for start in (0..total).step_by(block) {
            let values = self.eval_lanes(block, &live, |var, lane| {
                for (k, slot) in lane.iter_mut().enumerate() {
                    *slot = if var < 6 {
                        PATTERNS[var]
                    } else if ((start + k) >> (var - 6)) & 1 == 1 {
                        u64::MAX
                    } else {
                        0
                    };
                }
            });
            for (dst, node) in words.iter_mut().zip(nodes) {
                let at = node.index() * block;
                dst.extend_from_slice(&values[at..at + block]);
            }
        }
        Ok(words
            .into_iter()
            .map(|w| TruthTable::from_words(self.arity, w).expect("sized by word_count"))
            .collect())
    }

    /// Forward pass over the live gates, `width` words per gate. `fill` writes
    /// the lanes of input `x_{var+1}`.
    fn eval_lanes(
        &self,
        width: usize,
        live: &[bool],
        mut fill: impl FnMut(usize, &mut [u64]),
    ) -> Vec<u64> {
        let mut values = vec![0u64; self.gates.len() * width];
        for (i, gate) in self.gates.iter().enumerate() {
            if !live[i] {
                continue;
            }
            let (prev, rest) = values.split_at_mut(i * width);
            let cur = &mut rest[..width];
            let operand = |id: GateId| &prev[id.index() * width..(id.index() + 1) * width];
            match gate {
                Gate::Input(var) => fill(var - 1, cur),
                Gate::Const1 => cur.fill(u64::MAX),
                Gate::And([a, b]) => {
                    for ((c, x), y) in cur.iter_mut().zip(operand(*a)).zip(operand(*b)) {
                        *c = x & y;
                    }
                }
                Gate::Xor(ops) => {
                    cur.copy_from_slice(operand(ops[0]));
                    for &op in &ops[1..] {
                        for (c, x) in cur.iter_mut().zip(operand(op)) {
                            *c ^= x;
                        }
                    }
                }
                Gate::Not(a) => {
                    for (c, x) in cur.iter_mut().zip(operand(*a)) {
                        *c = !x;
                    }
                }
            }
        }
        values
    }

    /// A copy with output `index` (0-based) redirected to `gate`.
    pub fn with_output(&self, index: usize, gate: GateId) -> Result<Self, XagError> {
        if index >= self.outputs.len() {
            return Err(XagError::NoSuchOutput(index));
        }
        let mut outputs = self.outputs.clone();
        outputs[index].gate = gate;
        Self::from_parts(self.arity, self.gates.clone(), outputs)
    }

    /// A copy with gate `id` replaced; the replacement is validated.
    pub fn with_gate(&self, id: GateId, gate: Gate) -> Result<Self, XagError> {
        if id.index() >= self.gates.len() {
            return Err(XagError::UnknownGate(id));
        }
        let mut gates = self.gates.clone();
        gates[id.index()] = gate;
        Self::from_parts(self.arity, gates, self.outputs.clone())
    }

    /// Rewrites every `NOT(a)` as `XOR(CONST1, a)`. A CONST1 gate is placed
    /// first, shifting all other ids by one.
    pub fn without_not(&self) -> Self {
        let shift = |id: GateId| GateId::new(id.index() + 1);
        let mut gates = Vec::with_capacity(self.gates.len() + 1);
        gates.push(Gate::Const1);
        for gate in &self.gates {
            gates.push(match gate {
                Gate::Input(v) => Gate::Input(*v),
                Gate::Const1 => Gate::Const1,
                Gate::And([a, b]) => Gate::And([shift(*a), shift(*b)]),
                Gate::Xor(ops) => Gate::Xor(ops.iter().map(|&o| shift(o)).collect()),
                Gate::Not(a) => Gate::Xor(vec![GateId::new(0), shift(*a)]),
            });
        }
        let outputs = self
            .outputs
            .iter()
            .map(|o| Output {
                label: o.label.clone(),
                gate: shift(o.gate),
            })
            .collect();
        Self::from_parts(self.arity, gates, outputs).expect("shifting preserves structure")
    }
}

/// Single-owner builder with structural hash-consing: requesting a gate
/// identical to an existing one (same kind, same operands in the same order)
/// returns the existing id.
#[derive(Debug)]
pub struct CircuitBuilder {
    arity: usize,
    gates: Vec<Gate>,
    outputs: Vec<Output>,
    inputs: Vec<Option<GateId>>,
    consed: FxHashMap<Gate, GateId>,
    ands: usize,
}

impl CircuitBuilder {
    pub fn new(arity: usize) -> Self {
        Self {
            arity,
            gates: Vec::new(),
            outputs: Vec::new(),
            inputs: vec![None; arity],
            consed: FxHashMap::default(),
            ands: 0,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of gates created so far.
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Number of distinct AND gates created so far.
    pub fn and_gates(&self) -> usize {
        self.ands
    }

    /// Adds the INPUT gate for `x_var` (1-based).
    pub fn input(&mut self, var: usize) -> Result<GateId, XagError> {
        if var == 0 || var > self.arity {
            return Err(XagError::VarOutOfRange {
                var,
                arity: self.arity,
            });
        }
        if self.inputs[var - 1].is_some() {
            return Err(XagError::DuplicateInput(var));
        }
        let id = self.push(Gate::Input(var));
        self.inputs[var - 1] = Some(id);
        Ok(id)
    }

    /// The INPUT gate for `x_var`, if it has been added.
    pub fn input_id(&self, var: usize) -> Option<GateId> {
        self.inputs.get(var.checked_sub(1)?).copied().flatten()
    }

    pub fn const1(&mut self) -> GateId {
        self.intern(Gate::Const1)
    }

    pub fn and(&mut self, a: GateId, b: GateId) -> Result<GateId, XagError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.intern(Gate::And([a, b])))
    }

    pub fn xor(&mut self, operands: &[GateId]) -> Result<GateId, XagError> {
        if operands.len() < 2 {
            return Err(XagError::XorArity(operands.len()));
        }
        for &op in operands {
            self.check(op)?;
        }
        Ok(self.intern(Gate::Xor(operands.to_vec())))
    }

    pub fn xor2(&mut self, a: GateId, b: GateId) -> Result<GateId, XagError> {
        self.xor(&[a, b])
    }

    pub fn not(&mut self, a: GateId) -> Result<GateId, XagError> {
        self.check(a)?;
        Ok(self.intern(Gate::Not(a)))
    }

    pub fn output(&mut self, label: impl Into<String>, gate: GateId) -> Result<(), XagError> {
        self.check(gate)?;
        self.outputs.push(Output {
            label: label.into(),
            gate,
        });
        Ok(())
    }

    pub fn build(self) -> Circuit {
        Circuit {
            arity: self.arity,
            gates: self.gates,
            outputs: self.outputs,
        }
    }

    fn check(&self, id: GateId) -> Result<(), XagError> {
        if id.index() < self.gates.len() {
            Ok(())
        } else {
            Err(XagError::UnknownGate(id))
        }
    }

    fn intern(&mut self, gate: Gate) -> GateId {
        if let Some(&id) = self.consed.get(&gate) {
            return id;
        }
        let id = self.push(gate.clone());
        self.consed.insert(gate, id);
        id
    }

    fn push(&mut self, gate: Gate) -> GateId {
        if matches!(gate, Gate::And(_)) {
            self.ands += 1;
        }
        let id = GateId::new(self.gates.len());
        self.gates.push(gate);
        id
    }
}
