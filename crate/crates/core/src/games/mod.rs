//! Finite edge-colored arenas, parity games on their products with parity
//! automata, and strategies whose memory is a skeleton.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::skeleton::{ParityAutomaton, Transition};

pub mod arenas;
pub mod lift;
pub mod solve;
pub mod strategy;

pub use lift::{lift_experiment, random_arena, random_game, LiftReport};
pub use solve::{brute_force_regions, solve_parity, Regions, Solution};
pub use strategy::{strategy_project, verify_strategy, PlayWitness, SkeletonStrategy, StrategyCheck};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    /// The player who wins when `priority` is the largest seen infinitely
    /// often.
    pub fn of_priority(priority: u32) -> Player {
        if priority.is_multiple_of(2) {
            Player::P1
        } else {
            Player::P2
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::P1 => "P1",
            Player::P2 => "P2",
        })
    }
}

impl FromStr for Player {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P1" | "p1" | "1" => Ok(Player::P1),
            "P2" | "p2" | "2" => Ok(Player::P2),
            _ => Err(Error::input(format!("unknown player {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArenaEdge {
    pub src: usize,
    pub color: usize,
    pub dst: usize,
}

/// A non-blocking arena whose edges carry colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    alphabet: Vec<String>,
    states: Vec<String>,
    owner: Vec<Player>,
    edges: Vec<ArenaEdge>,
    out: Vec<Vec<usize>>,
}

impl Arena {
    pub fn new(alphabet: Vec<String>, states: Vec<(String, Player)>, edges: &[(String, String, String)]) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::input("arena has no states"));
        }
        let idx = |names: &[String], what: &str| -> Result<HashMap<String, usize>> {
            let mut m = HashMap::new();
            for (i, n) in names.iter().enumerate() {
                if m.insert(n.clone(), i).is_some() {
                    return Err(Error::input(format!("duplicate {what} {n:?}")));
                }
            }
            Ok(m)
        };
        let color_ix = idx(&alphabet, "color")?;
        let (names, owner): (Vec<String>, Vec<Player>) = states.into_iter().unzip();
        let state_ix = idx(&names, "state")?;
        let mut out = vec![Vec::new(); names.len()];
        let mut es = Vec::with_capacity(edges.len());
        for (s, c, t) in edges {
            let src = *state_ix.get(s).ok_or_else(|| Error::UnknownState(s.clone()))?;
            let dst = *state_ix.get(t).ok_or_else(|| Error::UnknownState(t.clone()))?;
            let color = *color_ix.get(c).ok_or_else(|| Error::UnknownColor(c.clone()))?;
            out[src].push(es.len());
            es.push(ArenaEdge { src, color, dst });
        }
        if let Some(s) = out.iter().position(|o| o.is_empty()) {
            return Err(Error::input(format!("state {:?} has no outgoing edge", names[s])));
        }
        Ok(Arena {
            alphabet,
            states: names,
            owner,
            edges: es,
            out,
        })
    }

    pub fn from_edges(alphabet: &[&str], states: &[(&str, Player)], edges: &[(&str, &str, &str)]) -> Result<Self> {
        Arena::new(
            alphabet.iter().map(|s| s.to_string()).collect(),
            states.iter().map(|(s, p)| (s.to_string(), *p)).collect(),
            &edges
                .iter()
                .map(|(s, c, t)| (s.to_string(), c.to_string(), t.to_string()))
                .collect::<Vec<_>>(),
        )
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn owner(&self, s: usize) -> Player {
        self.owner[s]
    }

    pub fn edges(&self) -> &[ArenaEdge] {
        &self.edges
    }

    pub fn out(&self, s: usize) -> &[usize] {
        &self.out[s]
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn color_name(&self, c: usize) -> &str {
        &self.alphabet[c]
    }

    /// Edges as `(src, color, dst)` names.
    pub fn named_edges(&self) -> Vec<(String, String, String)> {
        self.edges
            .iter()
            .map(|e| {
                (
                    self.states[e.src].clone(),
                    self.alphabet[e.color].clone(),
                    self.states[e.dst].clone(),
                )
            })
            .collect()
    }

    /// Index of the first edge matching the given names.
    pub fn find_edge(&self, src: &str, color: &str, dst: &str) -> Result<usize> {
        let s = self.state_index(src)?;
        self.out[s]
            .iter()
            .copied()
            .find(|&e| self.alphabet[self.edges[e].color] == color && self.states[self.edges[e].dst] == dst)
            .ok_or_else(|| Error::input(format!("no edge ({src}, {color}, {dst})")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameEdge {
    pub src: usize,
    pub dst: usize,
    pub priority: u32,
}

/// Parity game with priorities on edges; player 1 wins a play when the
/// largest priority seen infinitely often is even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGame {
    states: Vec<String>,
    owner: Vec<Player>,
    edges: Vec<GameEdge>,
    out: Vec<Vec<usize>>,
}

impl ParityGame {
    pub fn new(states: Vec<String>, owner: Vec<Player>, edges: Vec<GameEdge>) -> Result<Self> {
        if states.len() != owner.len() {
            return Err(Error::input("one owner per state is required"));
        }
        let mut out = vec![Vec::new(); states.len()];
        for (i, e) in edges.iter().enumerate() {
            if e.src >= states.len() || e.dst >= states.len() {
                return Err(Error::input("edge endpoint out of range"));
            }
            out[e.src].push(i);
        }
        if let Some(s) = out.iter().position(|o| o.is_empty()) {
            return Err(Error::input(format!("state {:?} has no outgoing edge", states[s])));
        }
        Ok(ParityGame {
            states,
            owner,
            edges,
            out,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn owner(&self, s: usize) -> Player {
        self.owner[s]
    }

    pub fn edges(&self) -> &[GameEdge] {
        &self.edges
    }

    pub fn out(&self, s: usize) -> &[usize] {
        &self.out[s]
    }

    /// The same game with every priority shifted by one, which swaps the
    /// roles of even and odd.
    pub fn flip_parity(&self) -> ParityGame {
        let edges = self
            .edges
            .iter()
            .map(|e| GameEdge {
                priority: e.priority + 1,
                ..*e
            })
            .collect();
        let owner = self.owner.iter().map(|p| p.opponent()).collect();
        ParityGame::new(self.states.clone(), owner, edges).expect("same shape")
    }
}

/// A parity game built from an arena and a parity automaton, remembering
/// where every state and edge came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGame {
    pub game: ParityGame,
    /// `(arena state, automaton state)` of every game state.
    pub components: Vec<(usize, usize)>,
    /// Arena edge behind every game edge.
    pub arena_edge: Vec<usize>,
}

impl ProductGame {
    pub fn state_of(&self, s: usize, m: usize) -> Option<usize> {
        self.components.iter().position(|&c| c == (s, m))
    }
}

/// Product of an arena with a parity automaton reading its colors, reachable
/// from every `(s, init)`.
pub fn product_game(a: &Arena, d: &ParityAutomaton) -> Result<ProductGame> {
    let sk = d.skeleton();
    let colors = a
        .alphabet()
        .iter()
        .map(|c| {
            sk.color_index(c)
                .map_err(|_| Error::AlphabetMismatch(format!("arena color {c:?} is unknown to the automaton")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..a.num_states() {
        index.insert((s, sk.init()), components.len());
        components.push((s, sk.init()));
        queue.push_back(components.len() - 1);
    }
    let mut edges = Vec::new();
    let mut arena_edge = Vec::new();
    while let Some(i) = queue.pop_front() {
        let (s, m) = components[i];
        for &e in a.out(s) {
            let ae = a.edges()[e];
            let t = Transition {
                state: m,
                color: colors[ae.color],
            };
            let next = (ae.dst, sk.target(t));
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    index.insert(next, components.len());
                    components.push(next);
                    queue.push_back(components.len() - 1);
                    components.len() - 1
                }
            };
            edges.push(GameEdge {
                src: i,
                dst: j,
                priority: d.priority(t),
            });
            arena_edge.push(e);
        }
    }
    let states = components
        .iter()
        .map(|&(s, m)| format!("{}|{}", a.states()[s], sk.state_name(m)))
        .collect();
    let owner = components.iter().map(|&(s, _)| a.owner(s)).collect();
    // edges were pushed grouped by source in queue order, which is the
    // state order, so per-state edge order follows the arena
    Ok(ProductGame {
        game: ParityGame::new(states, owner, edges)?,
        components,
        arena_edge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::competition_automaton;
    use crate::skeleton::Skeleton;

    #[test]
    fn blocking_arena_rejected() {
        let err = Arena::from_edges(&["a"], &[("s", Player::P1), ("t", Player::P2)], &[("s", "a", "t")]);
        assert!(matches!(err, Err(Error::Input(_))));
    }

    #[test]
    fn product_with_trivial_automaton_keeps_shape() {
        let a = Arena::from_edges(
            &["a", "b"],
            &[("s", Player::P1), ("t", Player::P2)],
            &[("s", "a", "t"), ("t", "b", "s"), ("t", "a", "t")],
        )
        .unwrap();
        let d = ParityAutomaton::new(Skeleton::trivial(&["a", "b"]), vec![3, 4]).unwrap();
        let g = product_game(&a, &d).unwrap();
        assert_eq!(g.game.num_states(), 2);
        let prios: Vec<u32> = g.game.edges().iter().map(|e| e.priority).collect();
        assert_eq!(prios, vec![3, 4, 3]);
    }

    #[test]
    fn product_reaches_automaton_states() {
        let a = Arena::from_edges(&["a", "b", "c"], &[("s", Player::P1)], &[("s", "a", "s"), ("s", "b", "s")]).unwrap();
        let g = product_game(&a, &competition_automaton()).unwrap();
        assert_eq!(g.game.states(), ["s|m1", "s|m2"]);
    }

    #[test]
    fn unknown_arena_color_rejected() {
        let a = Arena::from_edges(&["z"], &[("s", Player::P1)], &[("s", "z", "s")]).unwrap();
        assert!(matches!(product_game(&a, &competition_automaton()), Err(Error::AlphabetMismatch(_))));
    }
}
