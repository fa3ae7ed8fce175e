use xagmc::io::bristol::{self, BristolError};
use xagmc::io::{dot, json};
use xagmc::verify::check_exhaustive;
use xagmc::{synthesize, CircuitBuilder, Construction};

fn and_lines(doc: &str) -> usize {
    doc.lines().filter(|l| l.ends_with(" AND")).count()
}

#[test]
fn bristol_n3_has_three_ands() {
    let c = synthesize(3, Construction::Optimal).unwrap();
    let doc = bristol::export(&c).unwrap();
    assert_eq!(and_lines(&doc), 3);
    let mut header = doc.lines();
    let first: Vec<usize> = header
        .next()
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    assert_eq!(first[0], doc.lines().skip(4).count());
    assert_eq!(header.next(), Some("1 3"));
    assert_eq!(header.next(), Some("1 3"));
    assert_eq!(header.next(), Some(""));
}

#[test]
fn bristol_single_not() {
    let mut b = CircuitBuilder::new(1);
    let x1 = b.input(1).unwrap();
    let y = b.not(x1).unwrap();
    b.output("y", y).unwrap();
    let doc = bristol::export(&b.build()).unwrap();
    assert_eq!(doc, "1 2\n1 1\n1 1\n\n1 1 0 1 INV\n");
}

#[test]
fn bristol_const_and_input_outputs() {
    // CONST1, a bare input and a repeated gate as outputs.
    let mut b = CircuitBuilder::new(2);
    let x1 = b.input(1).unwrap();
    let x2 = b.input(2).unwrap();
    let one = b.const1();
    let a = b.and(x1, x2).unwrap();
    b.output("one", one).unwrap();
    b.output("x2", x2).unwrap();
    b.output("a", a).unwrap();
    b.output("a again", a).unwrap();
    let c = b.build();
    let doc = bristol::export(&c).unwrap();
    assert_eq!(and_lines(&doc), 1);
    assert!(!doc.contains("EQ"));
    let back = bristol::import(&doc).unwrap();
    assert_eq!(back.eval_all().unwrap(), c.eval_all().unwrap());
}

#[test]
fn bristol_round_trip_small() {
    for n in 3..=12 {
        for cons in [Construction::Optimal, Construction::Baseline] {
            let c = synthesize(n, cons).unwrap();
            let doc = bristol::export(&c).unwrap();
            assert_eq!(and_lines(&doc), c.and_count());
            let back = bristol::import(&doc).unwrap();
            let r = check_exhaustive(&back, Some(cons.expected_ands(n))).unwrap();
            assert!(r.passed, "n={n} {cons}: {r}");
        }
    }
}

#[test]
fn bristol_and_lines_match_count() {
    for n in 3..=64 {
        for cons in [Construction::Optimal, Construction::Baseline] {
            let c = synthesize(n, cons).unwrap();
            assert_eq!(and_lines(&bristol::export(&c).unwrap()), c.and_count());
        }
    }
}

#[test]
fn bristol_export_is_deterministic() {
    let a = bristol::export(&synthesize(20, Construction::Optimal).unwrap()).unwrap();
    let b = bristol::export(&synthesize(20, Construction::Optimal).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn bristol_rejects_empty_outputs() {
    let mut b = CircuitBuilder::new(2);
    b.input(1).unwrap();
    assert_eq!(bristol::export(&b.build()), Err(BristolError::NoOutputs));
}

#[test]
fn bristol_import_errors() {
    assert!(matches!(
        bristol::import("2 4\n1 2\n1 1\n\n"),
        Err(BristolError::GateCount {
            declared: 2,
            found: 0
        })
    ));
    assert!(matches!(
        bristol::import("1 4\n1 2\n1 1\n\n2 1 0 2 3 AND\n"),
        Err(BristolError::UndefinedWire { wire: 2, .. })
    ));
    assert!(matches!(
        bristol::import("1 3\n1 2\n1 1\n\n2 1 0 1 2 OR\n"),
        Err(BristolError::UnknownOp { .. })
    ));
    assert!(matches!(
        bristol::import("2 4\n1 2\n1 1\n\n2 1 0 2 3 AND\n2 1 0 1 2 XOR\n"),
        Err(BristolError::Cyclic { wire: 2, .. })
    ));
    assert!(matches!(
        bristol::import("x y\n"),
        Err(BristolError::Header { .. })
    ));
    assert!(matches!(
        bristol::import("1 3\n2 2\n1 1\n\n2 1 0 1 2 AND\n"),
        Err(BristolError::Header { .. })
    ));
    assert!(matches!(
        bristol::import("2 3\n1 2\n1 1\n\n2 1 0 1 2 AND\n2 1 0 1 2 XOR\n"),
        Err(BristolError::Redefined { wire: 2, .. })
    ));
    assert!(matches!(
        bristol::import("1 3\n1 2\n1 1\n\n2 1 0 9 2 AND\n"),
        Err(BristolError::WireRange { wire: 9, .. })
    ));
    assert!(matches!(
        bristol::import("1 4\n1 2\n1 1\n\n2 1 0 1 2 AND\n"),
        Err(BristolError::UndefinedOutput(3))
    ));
}

#[test]
fn bristol_import_accepts_groups_and_eq() {
    // Two 1-bit inputs, one output: y = NOT(x1 AND x2) XOR 1 via EQ/EQW.
    let doc = "4 7\n2 1 1\n1 1\n\n2 1 0 1 2 AND\n1 1 2 3 INV\n1 1 1 4 EQ\n2 1 3 4 6 XOR\n";
    let c = bristol::import(doc).unwrap();
    assert_eq!(c.arity(), 2);
    for x in 0..4usize {
        let input = [x & 1 == 1, x & 2 == 2];
        assert_eq!(c.eval(&input).unwrap(), vec![input[0] && input[1]]);
    }
}

#[test]
fn dot_n3_has_labelled_sinks() {
    let c = synthesize(3, Construction::Optimal).unwrap();
    let d = dot::export(&c);
    assert!(d.starts_with("digraph"));
    for k in 1..=3 {
        let node = format!("out{} [label=\"f_{k}\"", k - 1);
        assert!(d.contains(&node), "missing {node}");
        // sinks: nothing leaves an output node
        assert!(!d.contains(&format!("out{} ->", k - 1)));
    }
    assert_eq!(
        d,
        dot::export(&synthesize(3, Construction::Optimal).unwrap())
    );
}

#[test]
fn dot_sigma3_has_one_and() {
    let (c, plan) = xagmc::synth::synthesize_with_plan(3, Construction::Optimal).unwrap();
    let s0 = plan.node("s_0^3").unwrap();
    let sub = xagmc::Circuit::from_parts(
        3,
        c.gates().to_vec(),
        vec![xagmc::xag::Output {
            label: "s0".into(),
            gate: s0,
        }],
    )
    .unwrap();
    let d = dot::export(&sub);
    assert_eq!(d.matches("label=\"AND\"").count(), 1);
}

#[test]
fn json_round_trip() {
    for n in [3, 8, 13] {
        let c = synthesize(n, Construction::Optimal).unwrap();
        let text = json::export(&c, Some(Construction::Optimal));
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["n"], n);
        assert_eq!(doc["construction"], "optimal");
        assert_eq!(doc["and_count"], 2 * n - 3);
        assert_eq!(doc["outputs"][0]["label"], "f_1");
        assert_eq!(json::import(&text).unwrap(), c);
    }
}

#[test]
fn json_rejects_bad_documents() {
    let bad_order = r#"{"n":1,"construction":null,"and_count":0,
        "gates":[{"id":1,"kind":"INPUT","var":1,"operands":[]}],"outputs":[]}"#;
    assert!(json::import(bad_order).is_err());
    let forward = r#"{"n":1,"construction":null,"and_count":0,
        "gates":[{"id":0,"kind":"NOT","operands":[0]}],"outputs":[]}"#;
    assert!(json::import(forward).is_err());
    let unknown = r#"{"n":1,"construction":"fast","and_count":0,"gates":[],"outputs":[]}"#;
    assert!(json::import(unknown).is_err());
}
