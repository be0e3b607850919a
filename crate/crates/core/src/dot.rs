//! Graphviz export. Skeleton states are diamonds; arena states are circles
//! for player 1 and squares for player 2. Parallel edges are merged into one
//! edge labeled with all their colors.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::games::{Arena, Player};
use crate::skeleton::{ParityAutomaton, Skeleton};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Edges grouped by `(src, dst, suffix)` in first-seen order, labels joined
/// by commas.
fn grouped(edges: impl IntoIterator<Item = (String, String, String, String)>) -> Vec<(String, String, String)> {
    let mut order = Vec::new();
    let mut labels: BTreeMap<(String, String, String), Vec<String>> = BTreeMap::new();
    for (s, c, t, suffix) in edges {
        let key = (s, t, suffix);
        let entry = labels.entry(key.clone()).or_default();
        if entry.is_empty() {
            order.push(key);
        }
        entry.push(c);
    }
    order
        .into_iter()
        .map(|key| {
            let mut label = labels[&key].join(", ");
            if !key.2.is_empty() {
                label = format!("{label} | {}", key.2);
            }
            (key.0, key.1, label)
        })
        .collect()
}

fn render(name: &str, nodes: &[(String, &str)], init: Option<&str>, edges: Vec<(String, String, String)>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for (n, shape) in nodes {
        writeln!(out, "  {} [shape={shape}];", quote(n)).unwrap();
    }
    if let Some(i) = init {
        writeln!(out, "  \"__init\" [shape=point];").unwrap();
        writeln!(out, "  \"__init\" -> {};", quote(i)).unwrap();
    }
    for (s, t, label) in edges {
        writeln!(out, "  {} -> {} [label={}];", quote(&s), quote(&t), quote(&label)).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn skeleton_dot(m: &Skeleton) -> String {
    let nodes: Vec<(String, &str)> = m.states().iter().map(|s| (s.clone(), "diamond")).collect();
    let edges = grouped(m.named_edges().into_iter().map(|(s, c, t)| (s, c, t, String::new())));
    render("skeleton", &nodes, Some(m.state_name(m.init())), edges)
}

/// Edges labeled `colors | priority`.
pub fn parity_dot(a: &ParityAutomaton) -> String {
    let m = a.skeleton();
    let nodes: Vec<(String, &str)> = m.states().iter().map(|s| (s.clone(), "diamond")).collect();
    let edges = grouped(m.transitions().map(|t| {
        (
            m.state_name(t.state).to_string(),
            m.color_name(t.color).to_string(),
            m.state_name(m.target(t)).to_string(),
            a.priority(t).to_string(),
        )
    }));
    render("parity", &nodes, Some(m.state_name(m.init())), edges)
}

pub fn arena_dot(a: &Arena) -> String {
    let nodes: Vec<(String, &str)> = (0..a.num_states())
        .map(|s| {
            let shape = match a.owner(s) {
                Player::P1 => "circle",
                Player::P2 => "box",
            };
            (a.states()[s].clone(), shape)
        })
        .collect();
    let edges = grouped(a.named_edges().into_iter().map(|(s, c, t)| (s, c, t, String::new())));
    render("arena", &nodes, None, edges)
}
