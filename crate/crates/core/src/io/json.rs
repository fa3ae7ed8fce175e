//! Lossless JSON form of a circuit.
//!
//! ```json
//! {
//!   "n": 3, "construction": "optimal", "and_count": 3,
//!   "gates": [{"id": 0, "kind": "INPUT", "var": 1, "operands": []}, ...],
//!   "outputs": [{"label": "f_1", "id": 9}, ...]
//! }
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::synth::Construction;
use crate::xag::{Circuit, Gate, GateId, Output, XagError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error(transparent)]
    Serde(#[from] serde_json::Error),
    #[error("gate {index} has id {id}; ids must be dense and in order")]
    IdOrder { index: usize, id: usize },
    #[error("gate {id}: {reason}")]
    Gate { id: usize, reason: String },
    #[error("unknown construction `{0}`")]
    Construction(String),
    #[error(transparent)]
    Circuit(#[from] XagError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGate {
    pub id: usize,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var: Option<usize>,
    pub operands: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonOutput {
    pub label: String,
    pub id: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonCircuit {
    pub n: usize,
    pub construction: Option<String>,
    pub and_count: usize,
    pub gates: Vec<JsonGate>,
    pub outputs: Vec<JsonOutput>,
}

impl JsonCircuit {
    pub fn from_circuit(c: &Circuit, construction: Option<Construction>) -> Self {
        let gates = c
            .gates()
            .iter()
            .enumerate()
            .map(|(id, g)| JsonGate {
                id,
                kind: g.kind().to_string(),
                var: match g {
                    Gate::Input(v) => Some(*v),
                    _ => None,
                },
                operands: g.operands().iter().map(|o| o.index()).collect(),
            })
            .collect();
        let outputs = c
            .outputs()
            .iter()
            .map(|o| JsonOutput {
                label: o.label.clone(),
                id: o.gate.index(),
            })
            .collect();
        Self {
            n: c.arity(),
            construction: construction.map(|c| c.to_string()),
            and_count: c.and_count(),
            gates,
            outputs,
        }
    }

    pub fn to_circuit(&self) -> Result<Circuit, JsonError> {
        if let Some(name) = &self.construction {
            name.parse::<Construction>()
                .map_err(|_| JsonError::Construction(name.clone()))?;
        }
        let mut gates = Vec::with_capacity(self.gates.len());
        for (index, g) in self.gates.iter().enumerate() {
            if g.id != index {
                return Err(JsonError::IdOrder { index, id: g.id });
            }
            let ops: Vec<GateId> = g.operands.iter().map(|&o| GateId::new(o)).collect();
            let bad = |reason: &str| JsonError::Gate {
                id: g.id,
                reason: reason.into(),
            };
            let gate = match (g.kind.as_str(), ops.as_slice()) {
                ("INPUT", []) => Gate::Input(g.var.ok_or_else(|| bad("INPUT without var"))?),
                ("CONST1", []) => Gate::Const1,
                ("AND", &[a, b]) => Gate::And([a, b]),
                ("XOR", _) => Gate::Xor(ops),
                ("NOT", &[a]) => Gate::Not(a),
                (kind, _) => {
                    return Err(bad(&format!(
                        "bad {kind} gate with {} operands",
                        g.operands.len()
                    )))
                }
            };
            gates.push(gate);
        }
        let outputs = self
            .outputs
            .iter()
            .map(|o| Output {
                label: o.label.clone(),
                gate: GateId::new(o.id),
            })
            .collect();
        Ok(Circuit::from_parts(self.n, gates, outputs)?)
    }
}

pub fn export(c: &Circuit, construction: Option<Construction>) -> String {
    let doc = JsonCircuit::from_circuit(c, construction);
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn import(text: &str) -> Result<Circuit, JsonError> {
    let doc: JsonCircuit = serde_json::from_str(text)?;
    doc.to_circuit()
}
