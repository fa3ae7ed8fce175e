//! Bristol Fashion reader and writer.
//!
//! Layout written by [`export`]:
//!
//! ```text
//! <gates> <wires>
//! 1 <n>
//! 1 <outputs>
//!
//! 2 1 <a> <b> <out> AND|XOR
//! 1 1 <a> <out> INV
//! ```
//!
//! Wires `0..n` are the inputs, wire `j - 1` carrying `x_j`. The last
//! `outputs` wires carry the outputs in order. Multi-input XORs become
//! left-associated chains and CONST1 becomes `XOR(w0, w0)` then `INV`.
//! Only gates reachable from an output are written.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::xag::{Circuit, CircuitBuilder, Gate, GateId, XagError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BristolError {
    #[error("circuit has no outputs")]
    NoOutputs,
    #[error("circuit has no inputs")]
    NoInputs,
    #[error("line {line}: malformed header: {reason}")]
    Header { line: usize, reason: String },
    #[error("line {line}: malformed gate: {reason}")]
    Gate { line: usize, reason: String },
    #[error("header declares {declared} gates, body has {found}")]
    GateCount { declared: usize, found: usize },
    #[error("line {line}: unknown operation `{op}`")]
    UnknownOp { line: usize, op: String },
    #[error("line {line}: wire {wire} is out of range (wires: {wires})")]
    WireRange {
        line: usize,
        wire: usize,
        wires: usize,
    },
    #[error("line {line}: wire {wire} is never defined")]
    UndefinedWire { line: usize, wire: usize },
    #[error("line {line}: wire {wire} is read before the gate defining it (cycle)")]
    Cyclic { line: usize, wire: usize },
    #[error("line {line}: wire {wire} is defined twice")]
    Redefined { line: usize, wire: usize },
    #[error("output wire {0} is never defined")]
    UndefinedOutput(usize),
    #[error(transparent)]
    Circuit(#[from] XagError),
}

struct Line {
    ins: Vec<usize>,
    out: usize,
    op: String,
}

#[derive(Default)]
struct Writer {
    lines: Vec<String>,
    ands: usize,
}

impl Writer {
    fn binary(&mut self, a: usize, b: usize, out: usize, op: &str) {
        if op == "AND" {
            self.ands += 1;
        }
        self.lines.push(format!("2 1 {a} {b} {out} {op}"));
    }

    fn inv(&mut self, a: usize, out: usize) {
        self.lines.push(format!("1 1 {a} {out} INV"));
    }
}

/// Writes a circuit as a Bristol Fashion document.
pub fn export(c: &Circuit) -> Result<String, BristolError> {
    if c.outputs().is_empty() {
        return Err(BristolError::NoOutputs);
    }
    let n = c.arity();
    if n == 0 {
        return Err(BristolError::NoInputs);
    }
    let live = c.reachable();

    // Which output slots each gate can write into directly. An output whose
    // gate is an input, or is already claimed by an earlier output, is
    // copied with a double INV instead.
    let mut direct: HashMap<GateId, usize> = HashMap::new();
    let mut copies = Vec::new();
    for (k, out) in c.outputs().iter().enumerate() {
        let is_input = matches!(c.gate(out.gate), Gate::Input(_));
        if is_input || direct.contains_key(&out.gate) {
            copies.push(k);
        } else {
            direct.insert(out.gate, k);
        }
    }

    // Count internal wires first so output wires can sit on top.
    let mut internal = 0usize;
    for (i, gate) in c.gates().iter().enumerate() {
        if !live[i] {
            continue;
        }
        let id = GateId::new(i);
        let own = usize::from(!direct.contains_key(&id));
        internal += match gate {
            Gate::Input(_) => 0,
            Gate::And(_) | Gate::Not(_) => own,
            Gate::Xor(ops) => ops.len() - 2 + own,
            Gate::Const1 => 1 + own,
        };
    }
    internal += copies.len();
    let outputs = c.outputs().len();
    let wires = n + internal + outputs;
    let out_wire = |k: usize| n + internal + k;

    let mut w = Writer::default();
    let mut wire_of = vec![usize::MAX; c.len()];
    let mut next = n;
    let mut fresh = || {
        let v = next;
        next += 1;
        v
    };
    for (i, gate) in c.gates().iter().enumerate() {
        let id = GateId::new(i);
        if let Gate::Input(var) = gate {
            wire_of[i] = var - 1;
            continue;
        }
        if !live[i] {
            continue;
        }
        let dst = match direct.get(&id) {
            Some(&k) => out_wire(k),
            None => fresh(),
        };
        let get = |g: &GateId| wire_of[g.index()];
        match gate {
            Gate::Input(_) => unreachable!(),
            Gate::Const1 => {
                let zero = fresh();
                w.binary(0, 0, zero, "XOR");
                w.inv(zero, dst);
            }
            Gate::And([a, b]) => w.binary(get(a), get(b), dst, "AND"),
            Gate::Not(a) => w.inv(get(a), dst),
            Gate::Xor(ops) => {
                let mut acc = get(&ops[0]);
                for (j, op) in ops[1..].iter().enumerate() {
                    let target = if j + 2 == ops.len() { dst } else { fresh() };
                    w.binary(acc, get(op), target, "XOR");
                    acc = target;
                }
            }
        }
        wire_of[i] = dst;
    }
    for k in copies {
        let src = wire_of[c.outputs()[k].gate.index()];
        let mid = fresh();
        w.inv(src, mid);
        w.inv(mid, out_wire(k));
    }
    debug_assert_eq!(next, n + internal);

    let mut doc = String::new();
    let _ = writeln!(doc, "{} {}", w.lines.len(), wires);
    let _ = writeln!(doc, "1 {n}");
    let _ = writeln!(doc, "1 {outputs}");
    doc.push('\n');
    for line in &w.lines {
        doc.push_str(line);
        doc.push('\n');
    }
    debug_assert_eq!(w.ands, c.and_count());
    Ok(doc)
}

fn parse_nums(line: usize, text: &str) -> Result<Vec<usize>, BristolError> {
    text.split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| BristolError::Header {
                line,
                reason: format!("`{t}` is not a number"),
            })
        })
        .collect()
}

/// Reads a group declaration line `<count> <size_1> .. <size_count>`.
fn parse_groups(line: usize, text: &str) -> Result<usize, BristolError> {
    let nums = parse_nums(line, text)?;
    match nums.split_first() {
        Some((&count, sizes)) if sizes.len() == count => Ok(sizes.iter().sum()),
        _ => Err(BristolError::Header {
            line,
            reason: "group count does not match the number of sizes".into(),
        }),
    }
}

fn parse_gate(line: usize, text: &str) -> Result<Line, BristolError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let bad = |reason: &str| BristolError::Gate {
        line,
        reason: reason.into(),
    };
    let (op, nums) = tokens.split_last().ok_or_else(|| bad("empty line"))?;
    let nums: Vec<usize> = nums
        .iter()
        .map(|t| {
            t.parse()
                .map_err(|_| bad(&format!("`{t}` is not a number")))
        })
        .collect::<Result<_, _>>()?;
    let (&n_in, rest) = nums.split_first().ok_or_else(|| bad("missing arity"))?;
    let (&n_out, wires) = rest.split_first().ok_or_else(|| bad("missing arity"))?;
    if wires.len() != n_in + n_out {
        return Err(bad("wire list does not match declared arities"));
    }
    if n_out != 1 {
        return Err(bad("only single-output gates are supported"));
    }
    let want_in = match *op {
        "AND" | "XOR" => 2,
        "INV" | "EQW" | "EQ" => 1,
        other => {
            return Err(BristolError::UnknownOp {
                line,
                op: other.into(),
            })
        }
    };
    if n_in != want_in {
        return Err(bad(&format!("{op} takes {want_in} inputs")));
    }
    Ok(Line {
        ins: wires[..n_in].to_vec(),
        out: wires[n_in],
        op: (*op).to_string(),
    })
}

/// Parses a Bristol Fashion document. All input groups are concatenated into
/// `x_1..x_n`; all output groups become outputs `y_1..y_m`.
pub fn import(text: &str) -> Result<Circuit, BristolError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut header = |what: &str| {
        lines.next().ok_or_else(|| BristolError::Header {
            line: 0,
            reason: format!("missing {what} line"),
        })
    };
    let (l1, first) = header("size")?;
    let sizes = parse_nums(l1, first)?;
    let [gate_count, wire_count] = sizes[..] else {
        return Err(BristolError::Header {
            line: l1,
            reason: "expected `<gates> <wires>`".into(),
        });
    };
    let (l2, ins) = header("input")?;
    let n = parse_groups(l2, ins)?;
    let (l3, outs) = header("output")?;
    let m = parse_groups(l3, outs)?;
    if n + m > wire_count {
        return Err(BristolError::Header {
            line: l3,
            reason: format!("{n} inputs and {m} outputs exceed {wire_count} wires"),
        });
    }

    let body: Vec<(usize, Line)> = lines
        .map(|(ln, l)| parse_gate(ln, l).map(|g| (ln, g)))
        .collect::<Result<_, _>>()?;
    if body.len() != gate_count {
        return Err(BristolError::GateCount {
            declared: gate_count,
            found: body.len(),
        });
    }

    // Wire -> line that defines it, for distinguishing cycles from
    // dangling reads.
    let mut defined_at: HashMap<usize, usize> = HashMap::new();
    for (ln, g) in &body {
        if g.out >= wire_count {
            return Err(BristolError::WireRange {
                line: *ln,
                wire: g.out,
                wires: wire_count,
            });
        }
        if g.out < n || defined_at.insert(g.out, *ln).is_some() {
            return Err(BristolError::Redefined {
                line: *ln,
                wire: g.out,
            });
        }
    }

    let mut b = CircuitBuilder::new(n);
    let mut wire: Vec<Option<GateId>> = vec![None; wire_count];
    for (j, slot) in wire.iter_mut().enumerate().take(n) {
        *slot = Some(b.input(j + 1)?);
    }
    for (ln, g) in &body {
        if g.op == "EQ" {
            // EQ carries a literal constant in place of its input wire.
            let one = b.const1();
            wire[g.out] = Some(match g.ins[0] {
                1 => one,
                0 => b.xor2(one, one)?,
                v => {
                    return Err(BristolError::Gate {
                        line: *ln,
                        reason: format!("EQ constant must be 0 or 1, got {v}"),
                    })
                }
            });
            continue;
        }
        let mut ins = Vec::with_capacity(g.ins.len());
        for &w in &g.ins {
            if w >= wire_count {
                return Err(BristolError::WireRange {
                    line: *ln,
                    wire: w,
                    wires: wire_count,
                });
            }
            match wire[w] {
                Some(id) => ins.push(id),
                None if defined_at.contains_key(&w) => {
                    return Err(BristolError::Cyclic { line: *ln, wire: w })
                }
                None => return Err(BristolError::UndefinedWire { line: *ln, wire: w }),
            }
        }
        let id = match g.op.as_str() {
            "AND" => b.and(ins[0], ins[1])?,
            "XOR" => b.xor2(ins[0], ins[1])?,
            "INV" => b.not(ins[0])?,
            "EQW" => ins[0],
            _ => unreachable!("rejected by parse_gate"),
        };
        wire[g.out] = Some(id);
    }
    for k in 0..m {
        let w = wire_count - m + k;
        let id = wire[w].ok_or(BristolError::UndefinedOutput(w))?;
        b.output(format!("y_{}", k + 1), id)?;
    }
    Ok(b.build())
}
