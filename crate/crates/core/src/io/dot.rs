//! Graphviz export for inspection.

use std::fmt::Write as _;

use crate::xag::{Circuit, Gate};

/// Renders the circuit as a `digraph`. Nodes are emitted in gate-id order;
/// only inputs and gates reachable from an output appear. Each output gets
/// an extra box-shaped sink carrying its label.
pub fn export(c: &Circuit) -> String {
    let live = c.reachable();
    let mut out = String::from("digraph xag {\n  rankdir=BT;\n");
    for (i, gate) in c.gates().iter().enumerate() {
        if !live[i] && !matches!(gate, Gate::Input(_)) {
            continue;
        }
        let label = match gate {
            Gate::Input(v) => format!("x_{v}"),
            other => other.kind().to_string(),
        };
        let shape = match gate {
            Gate::Input(_) => "plaintext",
            Gate::And(_) => "box",
            _ => "ellipse",
        };
        let _ = writeln!(out, "  g{i} [label=\"{label}\", shape={shape}];");
        for op in gate.operands() {
            let _ = writeln!(out, "  g{} -> g{i};", op.index());
        }
    }
    for (k, o) in c.outputs().iter().enumerate() {
        let _ = writeln!(
            out,
            "  out{k} [label=\"{}\", shape=doubleoctagon];",
            o.label.replace('"', "\\\"")
        );
        let _ = writeln!(out, "  g{} -> out{k};", o.gate.index());
    }
    out.push_str("}\n");
    out
}
