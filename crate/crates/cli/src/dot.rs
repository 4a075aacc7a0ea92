//! Graphviz export of cover graphs and queue layouts.

use std::fmt::Write;

use poset_queues::rainbow::QueueLayout;
use poset_queues::Poset;

/// Largest class index of the `set19` colour scheme.
const PALETTE: usize = 9;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Renders the cover graph. With a layout, nodes carry their position as
/// `rank` and appear in extension order, and edges carry `queue` plus a
/// colour derived from it.
pub fn export_dot(poset: &Poset, layout: Option<&QueueLayout>) -> String {
    let mut out = String::from("digraph {\n");
    if poset.is_empty() {
        out.push_str("}\n");
        return out;
    }
    out.push_str("  rankdir=LR;\n");
    match layout {
        None => {
            for v in 0..poset.len() {
                let _ = writeln!(out, "  {};", quote(poset.name(v)));
            }
            for &(u, v) in poset.cover_edges() {
                let _ = writeln!(out, "  {} -> {};", quote(poset.name(u)), quote(poset.name(v)));
            }
        }
        Some(l) => {
            out.push_str("  edge [colorscheme=set19];\n");
            for (rank, &v) in l.extension.order().iter().enumerate() {
                let _ = writeln!(out, "  {} [rank={}];", quote(poset.name(v)), rank);
            }
            for (&(u, v), &q) in l.edges.iter().zip(&l.queue_of) {
                let _ = writeln!(
                    out,
                    "  {} -> {} [queue={}, color={}];",
                    quote(poset.name(u)),
                    quote(poset.name(v)),
                    q,
                    (q - 1) % PALETTE + 1
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use poset_queues::rainbow::queue_assignment;
    use poset_queues::LinearExtension;

    #[test]
    fn empty_poset() {
        let p = Poset::build::<&str>(&[], &[]).unwrap();
        assert_eq!(export_dot(&p, None), "digraph {\n}\n");
    }

    #[test]
    fn quotes_are_escaped() {
        let p = Poset::build(&["a\"b", "c"], &[("a\"b", "c")]).unwrap();
        let dot = export_dot(&p, None);
        assert!(dot.contains(r#""a\"b" -> "c";"#));
    }

    #[test]
    fn layout_annotations() {
        let p = Poset::build(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
        let ext = LinearExtension::from_names(&p, &["b", "a", "c"]).unwrap();
        let l = queue_assignment(&ext, p.cover_edges());
        let dot = export_dot(&p, Some(&l));
        assert!(dot.find("\"b\" [rank=0]").unwrap() < dot.find("\"a\" [rank=1]").unwrap());
        assert!(dot.contains("\"a\" -> \"c\" [queue=1, color=1];"));
    }
}
