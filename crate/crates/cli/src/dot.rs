use std::fmt::Write;

use knitting::ARComponent;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz text for a component. Nodes are numbered in `(orbit, index)`
/// order; arrows carry their class and dashed translate edges carry the
/// mesh template.
pub fn emit_dot<F>(c: &ARComponent<F>) -> String {
    let mut order: Vec<usize> = (0..c.nodes.len()).collect();
    order.sort_by_key(|&k| (c.nodes[k].orbit, c.nodes[k].index, k));
    let mut id = vec![0; c.nodes.len()];
    for (pos, &k) in order.iter().enumerate() {
        id[k] = pos;
    }
    let mut out = String::from("digraph component {\n  rankdir=LR;\n  node [shape=box];\n");
    for &k in &order {
        let n = &c.nodes[k];
        let style = if n.in_slice { ", style=bold" } else { "" };
        writeln!(out, "  n{} [label={}, orbit={}, index={}{style}];", id[k], quote(&n.signature), n.orbit, n.index).unwrap();
    }
    let mut edges: Vec<(usize, usize, String)> = c
        .arrows
        .iter()
        .map(|a| (id[a.source], id[a.target], format!("label={}", quote(&a.class.to_string()))))
        .collect();
    edges.extend(c.meshes.iter().map(|m| {
        let label = m.record.template.unwrap_or("?");
        (id[m.end], id[m.start], format!("label={}, style=dashed, constraint=false", quote(label)))
    }));
    edges.sort();
    for (s, t, attrs) in edges {
        writeln!(out, "  n{s} -> n{t} [{attrs}];").unwrap();
    }
    out.push_str("}\n");
    out
}
