//! Cycle supports: sets of transitions whose induced multigraph is strongly
//! connected, i.e. the transition sets of closed walks.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{Error, Result};
use crate::skeleton::{Skeleton, Transition};

/// A non-empty, strongly connected set of transitions of a fixed skeleton.
///
/// Supports are ordered canonically: by size first, then lexicographically
/// on their sorted transitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleSupport {
    edges: Vec<Transition>,
}

impl Ord for CycleSupport {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
    }
}

impl PartialOrd for CycleSupport {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl CycleSupport {
    /// Validates strong connectivity of `edges` in `m`.
    pub fn new(m: &Skeleton, edges: impl IntoIterator<Item = Transition>) -> Result<Self> {
        let mut edges: Vec<Transition> = edges.into_iter().collect();
        edges.sort();
        edges.dedup();
        if edges.is_empty() {
            return Err(Error::input("a cycle support needs at least one transition"));
        }
        if edges
            .iter()
            .any(|t| t.state >= m.num_states() || t.color >= m.num_colors())
        {
            return Err(Error::input("transition out of range"));
        }
        if !is_strongly_connected(m, &edges) {
            return Err(Error::input("transitions are not strongly connected"));
        }
        Ok(CycleSupport { edges })
    }

    /// Builds a support from `(state, color)` names.
    pub fn from_names(m: &Skeleton, edges: &[(&str, &str)]) -> Result<Self> {
        let ts = edges
            .iter()
            .map(|(s, c)| {
                Ok(Transition {
                    state: m.state_index(s)?,
                    color: m.color_index(c)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CycleSupport::new(m, ts)
    }

    pub(crate) fn from_sorted_unchecked(edges: Vec<Transition>) -> Self {
        CycleSupport { edges }
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, t: Transition) -> bool {
        self.edges.binary_search(&t).is_ok()
    }

    /// Sorted, distinct source states; in a strongly connected set these are
    /// all the states it visits.
    pub fn states(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.edges.iter().map(|t| t.state).collect();
        s.dedup();
        s
    }

    pub fn visits(&self, state: usize) -> bool {
        self.edges.iter().any(|t| t.state == state)
    }

    pub fn shares_state(&self, other: &CycleSupport) -> bool {
        let (a, b) = (self.states(), other.states());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return true,
            }
        }
        false
    }

    /// Union of two supports; it is again a support when they share a state.
    pub fn union(&self, other: &CycleSupport) -> CycleSupport {
        let mut edges = Vec::with_capacity(self.edges.len() + other.edges.len());
        let (mut i, mut j) = (0, 0);
        while i < self.edges.len() || j < other.edges.len() {
            let next = match (self.edges.get(i), other.edges.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                    *a
                }
                (Some(a), Some(b)) if a < b => {
                    i += 1;
                    *a
                }
                (Some(_), Some(b)) => {
                    j += 1;
                    *b
                }
                (Some(a), None) => {
                    i += 1;
                    *a
                }
                (None, Some(b)) => {
                    j += 1;
                    *b
                }
                (None, None) => unreachable!(),
            };
            edges.push(next);
        }
        CycleSupport { edges }
    }

    /// A closed walk from `start` traversing every transition of the support,
    /// as a color word. `start` must be visited by the support.
    pub fn closed_walk(&self, m: &Skeleton, start: usize) -> Vec<usize> {
        assert!(self.visits(start), "walk start must lie on the support");
        let mut word = Vec::new();
        let mut at = start;
        for &t in &self.edges {
            word.extend(self.path(m, at, t.state));
            word.push(t.color);
            at = m.target(t);
        }
        word.extend(self.path(m, at, start));
        word
    }

    fn path(&self, m: &Skeleton, from: usize, to: usize) -> Vec<usize> {
        if from == to {
            return Vec::new();
        }
        let mut prev: Vec<Option<Transition>> = vec![None; m.num_states()];
        let mut seen = vec![false; m.num_states()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(s) = queue.pop_front() {
            for &t in self.edges.iter().filter(|t| t.state == s) {
                let n = m.target(t);
                if !seen[n] {
                    seen[n] = true;
                    prev[n] = Some(t);
                    queue.push_back(n);
                }
            }
        }
        let mut colors = Vec::new();
        let mut at = to;
        while at != from {
            let t = prev[at].expect("support is strongly connected");
            colors.push(t.color);
            at = t.state;
        }
        colors.reverse();
        colors
    }

    /// `{(s,c),...}` with state and color names.
    pub fn describe(&self, m: &Skeleton) -> String {
        let parts: Vec<String> = self
            .edges
            .iter()
            .map(|t| format!("({},{})", m.state_name(t.state), m.color_name(t.color)))
            .collect();
        format!("{{{}}}", parts.join(","))
    }

    /// `(state, color)` name pairs.
    pub fn named(&self, m: &Skeleton) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|t| (m.state_name(t.state).to_string(), m.color_name(t.color).to_string()))
            .collect()
    }
}

/// Component id of every vertex in the graph `(0..n, edges)`.
pub(crate) fn scc_ids(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
    for _ in 0..n {
        g.add_node(());
    }
    for (a, b) in edges {
        g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
    }
    let mut ids = vec![0; n];
    for (i, comp) in tarjan_scc(&g).into_iter().enumerate() {
        for v in comp {
            ids[v.index()] = i;
        }
    }
    ids
}

fn is_strongly_connected(m: &Skeleton, edges: &[Transition]) -> bool {
    let ids = scc_ids(m.num_states(), edges.iter().map(|&t| (t.state, m.target(t))));
    let comp = ids[edges[0].state];
    edges
        .iter()
        .all(|&t| ids[t.state] == comp && ids[m.target(t)] == comp)
}

/// Transitions lying on some cycle, i.e. inside a strongly connected
/// component of the skeleton.
pub fn cyclic_transitions(m: &Skeleton) -> BTreeSet<Transition> {
    let ids = scc_ids(m.num_states(), m.transitions().map(|t| (t.state, m.target(t))));
    m.transitions()
        .filter(|&t| ids[t.state] == ids[m.target(t)])
        .collect()
}

/// All cycle supports of `m` in canonical order.
///
/// Supports never straddle two strongly connected components, so each
/// component is searched separately by include/exclude branching over its
/// internal transitions, pruning branches whose included transitions can no
/// longer end up strongly connected.
pub fn enumerate_cycle_supports(m: &Skeleton, cap: usize) -> Result<Vec<CycleSupport>> {
    if cap == 0 {
        return Err(Error::input("support cap must be positive"));
    }
    let ids = scc_ids(m.num_states(), m.transitions().map(|t| (t.state, m.target(t))));
    let mut by_comp: Vec<Vec<Transition>> = vec![Vec::new(); m.num_states()];
    for t in m.transitions() {
        if ids[t.state] == ids[m.target(t)] {
            by_comp[ids[t.state]].push(t);
        }
    }
    let mut out = Vec::new();
    for edges in by_comp.into_iter().filter(|e| !e.is_empty()) {
        let mut search = Search {
            m,
            edges: &edges,
            decision: vec![Decision::Open; edges.len()],
            out: &mut out,
            cap,
        };
        search.run(0)?;
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Decision {
    Open,
    In,
    Out,
}

struct Search<'a> {
    m: &'a Skeleton,
    edges: &'a [Transition],
    decision: Vec<Decision>,
    out: &'a mut Vec<CycleSupport>,
    cap: usize,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<()> {
        if !self.viable() {
            return Ok(());
        }
        if depth == self.edges.len() {
            if self.out.len() == self.cap {
                return Err(Error::CapExceeded { cap: self.cap });
            }
            let chosen: Vec<Transition> = self
                .edges
                .iter()
                .zip(&self.decision)
                .filter(|(_, d)| **d == Decision::In)
                .map(|(t, _)| *t)
                .collect();
            self.out.push(CycleSupport::from_sorted_unchecked(chosen));
            return Ok(());
        }
        for d in [Decision::In, Decision::Out] {
            self.decision[depth] = d;
            self.run(depth + 1)?;
        }
        self.decision[depth] = Decision::Open;
        Ok(())
    }

    /// A partial decision is viable when some completion is strongly
    /// connected: the included transitions all sit in one component of the
    /// not-excluded graph, or, with nothing included yet, that graph still
    /// has an internal transition.
    fn viable(&self) -> bool {
        let m = self.m;
        let active = || {
            self.edges
                .iter()
                .zip(&self.decision)
                .filter(|(_, d)| **d != Decision::Out)
                .map(|(t, _)| *t)
        };
        let ids = scc_ids(m.num_states(), active().map(|t| (t.state, m.target(t))));
        let internal = |t: &Transition| ids[t.state] == ids[m.target(*t)];
        let mut included = self
            .edges
            .iter()
            .zip(&self.decision)
            .filter(|(_, d)| **d == Decision::In)
            .map(|(t, _)| *t)
            .peekable();
        match included.peek().copied() {
            None => active().any(|t| internal(&t)),
            Some(first) => {
                let comp = ids[first.state];
                included.all(|t| internal(&t) && ids[t.state] == comp)
            }
        }
    }
}
