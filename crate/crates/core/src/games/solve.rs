//! Zielonka's recursive algorithm with positional strategies, and a brute
//! force oracle enumerating positional strategies of both players.

use std::collections::VecDeque;

use super::{ParityGame, Player};
use crate::error::{Error, Result};

/// Winner of every state and a positional choice (an edge index) at every
/// state. At a state won by its owner the choice is winning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub winner: Vec<Player>,
    pub strategy: Vec<usize>,
}

impl Solution {
    pub fn region(&self, p: Player) -> Vec<usize> {
        (0..self.winner.len()).filter(|&s| self.winner[s] == p).collect()
    }
}

/// Edges become intermediate vertices carrying their priority; states get
/// priority 0, which never changes the largest priority of a cycle.
struct Expanded {
    ns: usize,
    owner: Vec<Player>,
    prio: Vec<u32>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl Expanded {
    fn of(g: &ParityGame) -> Self {
        let ns = g.num_states();
        let n = ns + g.edges().len();
        let mut owner = Vec::with_capacity(n);
        let mut prio = vec![0; n];
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        owner.extend((0..ns).map(|s| g.owner(s)));
        for (i, e) in g.edges().iter().enumerate() {
            let v = ns + i;
            owner.push(Player::P1);
            prio[v] = e.priority;
            succ[e.src].push(v);
            pred[v].push(e.src);
            succ[v].push(e.dst);
            pred[e.dst].push(v);
        }
        Expanded {
            ns,
            owner,
            prio,
            succ,
            pred,
        }
    }

    /// Attractor of `target` for `p` inside `alive`; records attracting moves
    /// of `p` in `strat`.
    fn attractor(&self, alive: &[bool], target: &[bool], p: Player, strat: &mut [usize]) -> Vec<bool> {
        let n = alive.len();
        let mut attr: Vec<bool> = (0..n).map(|v| alive[v] && target[v]).collect();
        let mut count: Vec<usize> = (0..n)
            .map(|v| self.succ[v].iter().filter(|&&w| alive[w]).count())
            .collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| attr[v]).collect();
        while let Some(u) = queue.pop_front() {
            for &v in &self.pred[u] {
                if !alive[v] || attr[v] {
                    continue;
                }
                if self.owner[v] == p {
                    attr[v] = true;
                    strat[v] = u;
                    queue.push_back(v);
                } else {
                    count[v] -= 1;
                    if count[v] == 0 {
                        attr[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        attr
    }

    fn zielonka(&self, alive: &[bool], strat: &mut [usize]) -> Vec<Option<Player>> {
        let n = alive.len();
        let Some(d) = (0..n).filter(|&v| alive[v]).map(|v| self.prio[v]).max() else {
            return vec![None; n];
        };
        let p = Player::of_priority(d);
        let q = p.opponent();
        let top: Vec<bool> = (0..n).map(|v| alive[v] && self.prio[v] == d).collect();
        let a = self.attractor(alive, &top, p, strat);
        let rest: Vec<bool> = (0..n).map(|v| alive[v] && !a[v]).collect();
        let w1 = self.zielonka(&rest, strat);
        let opp: Vec<bool> = w1.iter().map(|w| *w == Some(q)).collect();
        if !opp.iter().any(|&b| b) {
            for v in 0..n {
                if top[v] && self.owner[v] == p {
                    strat[v] = *self.succ[v].iter().find(|&&w| alive[w]).expect("subgames are traps");
                }
            }
            return (0..n).map(|v| alive[v].then_some(p)).collect();
        }
        let b = self.attractor(alive, &opp, q, strat);
        let rest: Vec<bool> = (0..n).map(|v| alive[v] && !b[v]).collect();
        let mut w = self.zielonka(&rest, strat);
        for v in 0..n {
            if b[v] {
                w[v] = Some(q);
            }
        }
        w
    }
}

/// Winning regions and uniform positional winning strategies.
pub fn solve_parity(g: &ParityGame) -> Solution {
    let ex = Expanded::of(g);
    let n = ex.owner.len();
    let mut strat = vec![usize::MAX; n];
    let w = ex.zielonka(&vec![true; n], &mut strat);
    let winner: Vec<Player> = (0..ex.ns).map(|s| w[s].expect("every state is solved")).collect();
    let strategy = (0..ex.ns)
        .map(|s| {
            if winner[s] == g.owner(s) {
                debug_assert!(strat[s] >= ex.ns, "winning choice recorded");
                strat[s] - ex.ns
            } else {
                g.out(s)[0]
            }
        })
        .collect();
    Solution { winner, strategy }
}

/// Regions found by enumerating positional strategies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regions {
    /// States from which some player-1 strategy beats every player-2 strategy.
    pub p1: Vec<bool>,
    /// States from which some player-2 strategy beats every player-1 strategy.
    pub p2: Vec<bool>,
}

impl Regions {
    /// Every state is won by exactly one player.
    pub fn is_partition(&self) -> bool {
        self.p1.iter().zip(&self.p2).all(|(a, b)| a != b)
    }
}

pub const BRUTE_FORCE_MAX_STATES: usize = 12;
pub const BRUTE_FORCE_MAX_DEGREE: usize = 4;

pub fn brute_force_regions(g: &ParityGame) -> Result<Regions> {
    let n = g.num_states();
    if n > BRUTE_FORCE_MAX_STATES {
        return Err(Error::SizeCap(format!(
            "brute force handles at most {BRUTE_FORCE_MAX_STATES} states, got {n}"
        )));
    }
    if let Some(s) = (0..n).find(|&s| g.out(s).len() > BRUTE_FORCE_MAX_DEGREE) {
        return Err(Error::SizeCap(format!(
            "brute force handles out-degree at most {BRUTE_FORCE_MAX_DEGREE}, state {:?} has {}",
            g.states()[s],
            g.out(s).len()
        )));
    }
    Ok(Regions {
        p1: guaranteed(g, Player::P1),
        p2: guaranteed(g, Player::P2),
    })
}

/// States from which some positional strategy of `p` wins against every
/// positional strategy of the opponent.
fn guaranteed(g: &ParityGame, p: Player) -> Vec<bool> {
    let n = g.num_states();
    let mine: Vec<usize> = (0..n).filter(|&s| g.owner(s) == p).collect();
    let theirs: Vec<usize> = (0..n).filter(|&s| g.owner(s) != p).collect();
    let mut won = vec![false; n];
    let mut choice = vec![0usize; n];
    for_each_assignment(g, &mine, &mut choice, &mut |choice| {
        let mut beaten = vec![false; n];
        let mut inner = choice.to_vec();
        for_each_assignment(g, &theirs, &mut inner, &mut |full| {
            for (s, b) in beaten.iter_mut().enumerate() {
                if !*b && Player::of_priority(cycle_max(g, full, s)) != p {
                    *b = true;
                }
            }
        });
        for s in 0..n {
            won[s] |= !beaten[s];
        }
    });
    won
}

/// Calls `f` once per assignment of an outgoing edge position to every state
/// in `states`, leaving other entries of `choice` untouched.
fn for_each_assignment(g: &ParityGame, states: &[usize], choice: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    for &s in states {
        choice[s] = 0;
    }
    loop {
        f(choice);
        let mut i = 0;
        loop {
            let Some(&s) = states.get(i) else {
                return;
            };
            choice[s] += 1;
            if choice[s] < g.out(s).len() {
                break;
            }
            choice[s] = 0;
            i += 1;
        }
    }
}

/// Largest priority on the cycle reached from `s` when every state `v` follows
/// its edge at position `choice[v]`.
fn cycle_max(g: &ParityGame, choice: &[usize], s: usize) -> u32 {
    let mut seen = vec![usize::MAX; g.num_states()];
    let mut path = Vec::new();
    let mut v = s;
    while seen[v] == usize::MAX {
        seen[v] = path.len();
        let e = g.out(v)[choice[v]];
        path.push(e);
        v = g.edges()[e].dst;
    }
    path[seen[v]..].iter().map(|&e| g.edges()[e].priority).max().expect("non-empty cycle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::GameEdge;

    fn game(owner: &[Player], edges: &[(usize, usize, u32)]) -> ParityGame {
        ParityGame::new(
            (0..owner.len()).map(|i| format!("v{i}")).collect(),
            owner.to_vec(),
            edges
                .iter()
                .map(|&(src, dst, priority)| GameEdge { src, dst, priority })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_state_games() {
        let g = game(&[Player::P1], &[(0, 0, 0)]);
        assert_eq!(solve_parity(&g).winner, vec![Player::P1]);
        let g = game(&[Player::P1], &[(0, 0, 1), (0, 0, 2)]);
        let s = solve_parity(&g);
        assert_eq!(s.winner, vec![Player::P1]);
        assert_eq!(s.strategy, vec![1]);
        assert!(brute_force_regions(&g).unwrap().p1[0]);
    }

    #[test]
    fn player_two_picks_odd_cycle() {
        // v0 (P2) chooses between a 1-loop through v1 and a 2-loop through v1
        let g = game(&[Player::P2, Player::P1], &[(0, 1, 1), (0, 1, 2), (1, 0, 0)]);
        let s = solve_parity(&g);
        assert_eq!(s.winner, vec![Player::P2, Player::P2]);
        assert_eq!(s.strategy[0], 0);
        let r = brute_force_regions(&g).unwrap();
        assert_eq!(r.p2, vec![true, true]);
        assert!(r.is_partition());
    }

    #[test]
    fn brute_force_caps() {
        let owner = vec![Player::P1; 13];
        let edges: Vec<_> = (0..13).map(|i| (i, i, 0)).collect();
        assert!(matches!(brute_force_regions(&game(&owner, &edges)), Err(Error::SizeCap(_))));
    }
}
