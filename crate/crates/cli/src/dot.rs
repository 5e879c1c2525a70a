use std::fmt::Write as _;

use crosscut_core::FinitePoset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram in Graphviz DOT, bottom to top. Only covers become edges.
pub fn poset_to_dot(p: &FinitePoset, name: &str) -> String {
    let mut out = format!(
        "digraph {} {{\n  rankdir=BT;\n  node [shape=plaintext];\n",
        quote(name)
    );
    for (i, l) in p.labels().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(l));
    }
    for &(a, b) in p.covers() {
        let _ = writeln!(out, "  n{a} -> n{b} [arrowhead=none];");
    }
    out.push_str("}\n");
    out
}
