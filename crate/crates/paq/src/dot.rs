//! Graphviz output of Hasse diagrams, drawn bottom to top.

use std::fmt::Write as _;

use paq_core::Poset;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Cover edges only; all maximal elements share the top rank.
pub fn to_dot(p: &Poset, name: &str) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n  node [shape=circle];\n", quote(name));
    for x in p.elements() {
        writeln!(out, "  n{x} [label={}];", quote(&p.display_name(x))).unwrap();
    }
    let maxima: Vec<String> = p.maxima().iter().map(|x| format!("n{x}")).collect();
    if !maxima.is_empty() {
        writeln!(out, "  {{ rank=max; {}; }}", maxima.join("; ")).unwrap();
    }
    for (x, y) in p.covers() {
        writeln!(out, "  n{x} -> n{y} [arrowhead=none];").unwrap();
    }
    out.push_str("}\n");
    out
}
