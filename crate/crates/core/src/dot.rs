use std::fmt::Write as _;

use crate::automaton::{Automaton, Mark};
use crate::error::Result;

/// Renders a Graphviz digraph; α-transitions are drawn dashed.
pub fn to_dot(a: &Automaton) -> Result<String> {
    a.ensure_valid()?;
    let mut s = String::new();
    let title = a.name().unwrap_or("A").replace('"', "\\\"");
    let _ = writeln!(s, "digraph \"{title}\" {{");
    s.push_str("  rankdir=LR;\n  node [shape=circle];\n  init [shape=point];\n");
    for q in a.states() {
        let _ = writeln!(s, "  q{q} [label=\"q{q}\"];");
    }
    let _ = writeln!(s, "  init -> q{};", a.initial());
    for t in a.transitions() {
        let label = a.alphabet().name(t.letter).replace('"', "\\\"");
        match t.mark {
            Mark::NonAlpha => {
                let _ = writeln!(s, "  q{} -> q{} [label=\"{label}\"];", t.src, t.dst);
            }
            Mark::Alpha => {
                let _ = writeln!(
                    s,
                    "  q{} -> q{} [label=\"{label}\", style=dashed];",
                    t.src, t.dst
                );
            }
        }
    }
    s.push_str("}\n");
    Ok(s)
}
