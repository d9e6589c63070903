use crate::semigroup::{green_classes, right_cayley_graph, ElementSet, FiniteSemigroup};

fn html_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One HTML-table node per D-class: rows are R-classes, columns L-classes,
/// cells list the H-class with idempotents starred.
pub fn egg_box_dot(s: &FiniteSemigroup) -> String {
    let g = green_classes(s);
    let mut out = String::from("digraph eggbox {\n  node [shape=plaintext];\n");
    for (d, class) in g.d_classes.iter().enumerate() {
        let mut rows: Vec<usize> = class.iter().map(|&x| g.r_of[x]).collect();
        let mut cols: Vec<usize> = class.iter().map(|&x| g.l_of[x]).collect();
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        out.push_str(&format!("  d{} [label=<<TABLE BORDER=\"0\" CELLBORDER=\"1\" CELLSPACING=\"0\">", d + 1));
        for &r in &rows {
            out.push_str("<TR>");
            for &l in &cols {
                let cell: Vec<String> = g.r_classes[r]
                    .iter()
                    .filter(|&&x| g.l_of[x] == l)
                    .map(|&x| {
                        let star = if s.is_idempotent(x) { "*" } else { "" };
                        format!("{}{star}", html_escape(&s.name(x)))
                    })
                    .collect();
                out.push_str(&format!("<TD>{}</TD>", cell.join(", ")));
            }
            out.push_str("</TR>");
        }
        out.push_str("</TABLE>>];\n");
    }
    out.push_str("}\n");
    out
}

/// `Γ_r(S, A)` with arcs labelled by generator names.
pub fn cayley_dot(s: &FiniteSemigroup, a: &ElementSet) -> String {
    let graph = right_cayley_graph(s, a);
    let mut out = String::from("digraph cayley {\n");
    for x in s.elements() {
        out.push_str(&format!("  n{} [label={}];\n", x + 1, quoted(&s.name(x))));
    }
    for &(x, g, y) in &graph.arcs {
        out.push_str(&format!("  n{} -> n{} [label={}];\n", x + 1, y + 1, quoted(&s.name(g))));
    }
    out.push_str("}\n");
    out
}
