//! Strategies whose memory is a skeleton updated by the colors seen.

use std::collections::BTreeMap;

use super::{product_game, Arena, GameEdge, ParityGame, Player, ProductGame, Solution};
use crate::error::{Error, Result};
use crate::games::solve_parity;
use crate::skeleton::{ParityAutomaton, Skeleton, Transition};

/// `nxt(s, m)`: the arena edge taken at an owned state `s` in memory state
/// `m`. Defined for every owned state and every memory state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonStrategy {
    pub player: Player,
    pub skeleton: Skeleton,
    nxt: BTreeMap<(usize, usize), usize>,
}

impl SkeletonStrategy {
    pub fn new(a: &Arena, player: Player, skeleton: Skeleton, nxt: BTreeMap<(usize, usize), usize>) -> Result<Self> {
        for s in (0..a.num_states()).filter(|&s| a.owner(s) == player) {
            for m in 0..skeleton.num_states() {
                let e = *nxt.get(&(s, m)).ok_or_else(|| {
                    Error::input(format!(
                        "strategy has no move at ({}, {})",
                        a.states()[s],
                        skeleton.state_name(m)
                    ))
                })?;
                if a.edges().get(e).map(|x| x.src) != Some(s) {
                    return Err(Error::input(format!("strategy move at {} leaves another state", a.states()[s])));
                }
            }
        }
        Ok(SkeletonStrategy { player, skeleton, nxt })
    }

    /// A memoryless strategy: `choice(s)` is taken at every owned state. The
    /// one-state memory reads `alphabet`, which should match the automaton
    /// the strategy is checked against.
    pub fn memoryless<S: AsRef<str>>(a: &Arena, player: Player, alphabet: &[S], choice: impl Fn(usize) -> usize) -> Result<Self> {
        let skeleton = Skeleton::trivial(alphabet);
        let nxt = (0..a.num_states())
            .filter(|&s| a.owner(s) == player)
            .map(|s| ((s, 0), choice(s)))
            .collect();
        SkeletonStrategy::new(a, player, skeleton, nxt)
    }

    pub fn next(&self, s: usize, m: usize) -> Option<usize> {
        self.nxt.get(&(s, m)).copied()
    }

    /// `((arena state, memory state), arena edge)` in key order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.nxt.iter().map(|(&k, &e)| (k, e))
    }
}

/// Reads a skeleton-based strategy off a positional strategy of the product
/// game of `a` with an automaton on `skeleton`. Memory states not paired
/// with an owned arena state in the game get its first edge.
pub fn strategy_project(
    a: &Arena,
    pg: &ProductGame,
    skeleton: &Skeleton,
    positional: &[usize],
    player: Player,
) -> Result<SkeletonStrategy> {
    let mut nxt = BTreeMap::new();
    for (i, &(s, m)) in pg.components.iter().enumerate() {
        if a.owner(s) == player {
            nxt.insert((s, m), pg.arena_edge[positional[i]]);
        }
    }
    for s in (0..a.num_states()).filter(|&s| a.owner(s) == player) {
        for m in 0..skeleton.num_states() {
            nxt.entry((s, m)).or_insert(a.out(s)[0]);
        }
    }
    SkeletonStrategy::new(a, player, skeleton.clone(), nxt)
}

/// A play won by the opponent against the strategy, from a state the player
/// could have won.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayWitness {
    pub arena_state: String,
    pub automaton_state: String,
    pub memory_state: String,
    pub prefix: Vec<String>,
    pub period: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyCheck {
    /// Product states the player wins without restriction.
    pub winnable: usize,
    /// Of those, the ones still won when bound to the strategy.
    pub kept: usize,
    pub witness: Option<PlayWitness>,
}

impl StrategyCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Binds the player to `strat` and checks that it still wins from every
/// state of the product game it could win from.
pub fn verify_strategy(a: &Arena, d: &ParityAutomaton, strat: &SkeletonStrategy, player: Player) -> Result<StrategyCheck> {
    if strat.player != player {
        return Err(Error::input(format!("strategy belongs to {}, not {player}", strat.player)));
    }
    let dsk = d.skeleton();
    let (joint, pairs) = dsk.product_with_components(&strat.skeleton)?;
    let priority = joint
        .transitions()
        .map(|t| {
            d.priority(Transition {
                state: pairs[t.state].0,
                color: t.color,
            })
        })
        .collect();
    let dj = ParityAutomaton::new(joint, priority)?;
    let pg = product_game(a, &dj)?;
    let full = solve_parity(&pg.game);

    let g = &pg.game;
    let mut kept_edges = Vec::new();
    let mut origin = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let (s, jm) = pg.components[e.src];
        if a.owner(s) == player {
            let ms = pairs[jm].1;
            if strat.next(s, ms) != Some(pg.arena_edge[i]) {
                continue;
            }
        }
        kept_edges.push(*e);
        origin.push(i);
    }
    let owner = (0..g.num_states()).map(|v| g.owner(v)).collect();
    let bound = ParityGame::new(g.states().to_vec(), owner, kept_edges)?;
    let res = solve_parity(&bound);

    let lost: Vec<usize> = (0..g.num_states())
        .filter(|&v| full.winner[v] == player && res.winner[v] != player)
        .collect();
    let winnable = full.region(player).len();
    let witness = lost.first().map(|&v| {
        let (s, jm) = pg.components[v];
        let (md, ms) = pairs[jm];
        let (prefix, period) = play_from(&bound, &res, v);
        let color = |e: usize| a.color_name(a.edges()[pg.arena_edge[origin[e]]].color).to_string();
        PlayWitness {
            arena_state: a.states()[s].clone(),
            automaton_state: dsk.state_name(md).to_string(),
            memory_state: strat.skeleton.state_name(ms).to_string(),
            prefix: prefix.into_iter().map(color).collect(),
            period: period.into_iter().map(color).collect(),
        }
    });
    Ok(StrategyCheck {
        winnable,
        kept: winnable - lost.len(),
        witness,
    })
}

/// The lasso of edges followed from `v` when every state plays its choice in
/// `sol`.
fn play_from(g: &ParityGame, sol: &Solution, v: usize) -> (Vec<usize>, Vec<usize>) {
    let mut seen = vec![usize::MAX; g.num_states()];
    let mut path = Vec::new();
    let mut u = v;
    while seen[u] == usize::MAX {
        seen[u] = path.len();
        let e = sol.strategy[u];
        path.push(e);
        let GameEdge { dst, .. } = g.edges()[e];
        u = dst;
    }
    let period = path.split_off(seen[u]);
    (path, period)
}
