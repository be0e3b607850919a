//! Random arenas and the experiment checking that strategies read off the
//! synthesized parity automaton are optimal for both players.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{product_game, solve_parity, strategy_project, verify_strategy, Arena, GameEdge, ParityGame, PlayWitness, Player};
use crate::condition::ConditionSpec;
use crate::error::{Error, Result};
use crate::skeleton::Skeleton;
use crate::synthesis::{synthesize, SynthesisOptions};

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Arena with 1 to `max_states` states named `s0, s1, …`, uniform owners,
/// out-degree 1 to 3, and uniform colors and targets.
pub fn random_arena(seed: u64, stream: u64, max_states: usize, alphabet: &[String]) -> Result<Arena> {
    if max_states == 0 || alphabet.is_empty() {
        return Err(Error::input("need at least one state and one color"));
    }
    let mut rng = rng_for(seed, stream);
    let n = rng.random_range(1..=max_states);
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let states = names
        .iter()
        .map(|s| (s.clone(), if rng.random_bool(0.5) { Player::P1 } else { Player::P2 }))
        .collect();
    let mut edges = Vec::new();
    for s in &names {
        for _ in 0..rng.random_range(1..=3) {
            let c = &alphabet[rng.random_range(0..alphabet.len())];
            let t = &names[rng.random_range(0..n)];
            edges.push((s.clone(), c.clone(), t.clone()));
        }
    }
    Arena::new(alphabet.to_vec(), states, &edges)
}

/// Parity game with 1 to `max_states` states, out-degree 1 to 3 and
/// priorities drawn from `0..n_priorities`.
pub fn random_game(seed: u64, stream: u64, max_states: usize, n_priorities: u32) -> Result<ParityGame> {
    if max_states == 0 || n_priorities == 0 {
        return Err(Error::input("need at least one state and one priority"));
    }
    let mut rng = rng_for(seed, stream);
    let n = rng.random_range(1..=max_states);
    let owner = (0..n)
        .map(|_| if rng.random_bool(0.5) { Player::P1 } else { Player::P2 })
        .collect();
    let mut edges = Vec::new();
    for src in 0..n {
        for _ in 0..rng.random_range(1..=3) {
            edges.push(GameEdge {
                src,
                dst: rng.random_range(0..n),
                priority: rng.random_range(0..n_priorities),
            });
        }
    }
    ParityGame::new((0..n).map(|i| format!("v{i}")).collect(), owner, edges)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftFailure {
    pub arena: u64,
    pub player: Player,
    pub witness: Option<PlayWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub seed: u64,
    pub arenas: u64,
    pub automaton_states: usize,
    pub p1_passed: u64,
    pub p2_passed: u64,
    pub failures: Vec<LiftFailure>,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Synthesizes a parity automaton for `cond` on the right congruence times
/// `m`, then for `n_arenas` random arenas over its alphabet projects both
/// players' optimal positional strategies on the product game to strategies
/// based on that skeleton, and verifies them.
pub fn lift_experiment(cond: &ConditionSpec, m: &Skeleton, n_arenas: u64, max_states: usize, seed: u64) -> Result<LiftReport> {
    let opts = SynthesisOptions {
        allow_transient: true,
        ..SynthesisOptions::default()
    };
    let d = synthesize(cond, m, &opts)?.automaton;
    let sk = d.skeleton();
    let mut report = LiftReport {
        seed,
        arenas: n_arenas,
        automaton_states: sk.num_states(),
        p1_passed: 0,
        p2_passed: 0,
        failures: Vec::new(),
    };
    for i in 0..n_arenas {
        let a = random_arena(seed, i, max_states, sk.alphabet())?;
        let pg = product_game(&a, &d)?;
        let sol = solve_parity(&pg.game);
        for player in [Player::P1, Player::P2] {
            let strat = strategy_project(&a, &pg, sk, &sol.strategy, player)?;
            let check = verify_strategy(&a, &d, &strat, player)?;
            if check.passed() {
                match player {
                    Player::P1 => report.p1_passed += 1,
                    Player::P2 => report.p2_passed += 1,
                }
            } else {
                report.failures.push(LiftFailure {
                    arena: i,
                    player,
                    witness: check.witness,
                });
            }
        }
    }
    Ok(report)
}
