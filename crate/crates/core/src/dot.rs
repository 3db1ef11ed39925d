//! Graphviz export.

use std::fmt::Write as _;

use crate::automaton::Automaton;
use crate::wheeler::WheelerOrder;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT source with one node per state (double circle for finals) and one
/// labelled edge per transition. With an order, each node also shows its
/// rank and nodes are laid out left to right by rank.
pub fn export_dot(a: &Automaton, order: Option<&WheelerOrder>) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  start [shape=point];\n");
    let states: Vec<usize> = match order {
        Some(o) => o.sequence(),
        None => (0..a.state_count()).collect(),
    };
    for &q in &states {
        let shape = if a.is_final(q) { "doublecircle" } else { "circle" };
        let label = match order {
            Some(o) => format!("q{q}\\n#{}", o.rank(q)),
            None => format!("q{q}"),
        };
        let _ = writeln!(out, "  q{q} [shape={shape}, label=\"{label}\"];");
    }
    let _ = writeln!(out, "  start -> q{};", a.initial());
    for (u, s, v) in a.edges() {
        let _ = writeln!(out, "  q{u} -> q{v} [label={}];", quote(a.alphabet().name(s)));
    }
    if order.is_some() && states.len() > 1 {
        // invisible chain keeps ranks in order
        let chain: Vec<String> = states.iter().map(|q| format!("q{q}")).collect();
        let _ = writeln!(out, "  {{ edge [style=invis, weight=100]; {}; }}", chain.join(" -> "));
    }
    out.push_str("}\n");
    out
}
