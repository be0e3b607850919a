//! Finite truncations of the arenas used to argue about memory: merged
//! chains, a choice between cycles, and a discounted-sum arena where player 2
//! must remember which branch player 1 took.

use super::{Arena, Player};
use crate::condition::ds_alphabet;
use crate::ds::{greedy_expansion, infinite_gap_sequence};
use crate::error::{Error, Result};
use crate::Rational;
use num_traits::One;

/// An ultimately periodic continuation `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Continuation {
    pub prefix: Vec<String>,
    pub period: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// One-player arena of player 1: chains for `w1` and `w2` from two start
    /// states end in a common state `s`, from which both continuations are
    /// available.
    MergedChains {
        alphabet: Vec<String>,
        w1: Vec<String>,
        w2: Vec<String>,
        w1_cont: Continuation,
        w2_cont: Continuation,
    },
    /// A single player-1 state with one self-loop per color.
    OneState { alphabet: Vec<String> },
    /// One-player arena of player 2: a chain for `w` from `s1` to `s2`, where
    /// player 2 picks any word of `family` and returns to `s2`.
    CycleChoice {
        alphabet: Vec<String>,
        w: Vec<String>,
        family: Vec<Vec<String>>,
    },
    /// Discounted sum with `k = ⌈1/λ - 1⌉`: player 1 reaches `s2` through one
    /// of `depth` prefixes of the infinite gap sequence, and player 2 answers
    /// with a branch of `digits` greedy digits ending in a `-k` sink.
    DsInfiniteMemory { lambda: Rational, depth: usize, digits: usize },
}

struct Builder {
    states: Vec<(String, Player)>,
    edges: Vec<(String, String, String)>,
}

impl Builder {
    fn state(&mut self, name: String, owner: Player) -> String {
        self.states.push((name.clone(), owner));
        name
    }

    fn edge(&mut self, src: &str, color: &str, dst: &str) {
        self.edges.push((src.to_string(), color.to_string(), dst.to_string()));
    }

    /// Chain reading `word` from `src` into `dst` through fresh states
    /// `{tag}1, {tag}2, …`.
    fn chain(&mut self, src: &str, word: &[String], dst: &str, tag: &str, owner: Player) {
        let mut cur = src.to_string();
        for (i, c) in word.iter().enumerate() {
            let next = if i + 1 == word.len() {
                dst.to_string()
            } else {
                self.state(format!("{tag}{}", i + 1), owner)
            };
            self.edge(&cur, c, &next);
            cur = next;
        }
    }

    /// Reads `prefix · period^ω` from `src` through `|prefix| + |period|` fresh
    /// states, the last one looping back to the start of the period.
    fn lasso(&mut self, src: &str, cont: &Continuation, tag: &str, owner: Player) -> Result<()> {
        if cont.period.is_empty() {
            return Err(Error::input("continuation period is empty"));
        }
        let word: Vec<&String> = cont.prefix.iter().chain(&cont.period).collect();
        let nodes: Vec<String> = (1..=word.len())
            .map(|i| self.state(format!("{tag}{i}"), owner))
            .collect();
        let mut cur = src.to_string();
        for (c, n) in word.iter().zip(&nodes) {
            self.edge(&cur, c, n);
            cur = n.clone();
        }
        // after the last letter the period starts over: read its first letter
        // into the node reached by it the first time
        let back = &nodes[cont.prefix.len()];
        self.edge(&cur, &cont.period[0], back);
        Ok(())
    }

    fn finish(self, alphabet: Vec<String>) -> Result<Arena> {
        Arena::new(alphabet, self.states, &self.edges)
    }
}

pub fn counterexample_arena(kind: &Counterexample) -> Result<Arena> {
    let mut b = Builder {
        states: Vec::new(),
        edges: Vec::new(),
    };
    match kind {
        Counterexample::MergedChains {
            alphabet,
            w1,
            w2,
            w1_cont,
            w2_cont,
        } => {
            let p = Player::P1;
            let s = "s".to_string();
            let start = |b: &mut Builder, w: &[String], name: &str| {
                if w.is_empty() {
                    s.clone()
                } else {
                    b.state(name.to_string(), p)
                }
            };
            let t1 = start(&mut b, w1, "t1");
            let t2 = start(&mut b, w2, "t2");
            if t1 == t2 {
                return Err(Error::input("w1 and w2 cannot both be empty"));
            }
            b.state(s.clone(), p);
            b.chain(&t1, w1, &s, "u", p);
            b.chain(&t2, w2, &s, "v", p);
            b.lasso(&s, w1_cont, "x", p)?;
            b.lasso(&s, w2_cont, "y", p)?;
            b.finish(alphabet.clone())
        }
        Counterexample::OneState { alphabet } => {
            if alphabet.is_empty() {
                return Err(Error::input("empty alphabet"));
            }
            b.state("s".into(), Player::P1);
            for c in alphabet {
                b.edge("s", c, "s");
            }
            b.finish(alphabet.clone())
        }
        Counterexample::CycleChoice { alphabet, w, family } => {
            if family.is_empty() || family.iter().any(|f| f.is_empty()) {
                return Err(Error::input("the family must hold non-empty words"));
            }
            let p = Player::P2;
            let s1 = b.state("s1".into(), p);
            let s2 = b.state("s2".into(), p);
            for (j, f) in family.iter().enumerate() {
                let tag = format!("c{}_", j + 1);
                b.chain(&s2, f, &s2, &tag, p);
            }
            if w.is_empty() {
                // s1 starts the first cycle itself, entering its chain
                let cycles: Vec<(String, String)> = b
                    .edges
                    .iter()
                    .filter(|(src, _, _)| *src == s2)
                    .map(|(_, c, t)| (c.clone(), t.clone()))
                    .collect();
                for (c, t) in cycles {
                    b.edge(&s1, &c, &t);
                }
            } else {
                b.chain(&s1, w, &s2, "w", p);
            }
            b.finish(alphabet.clone())
        }
        Counterexample::DsInfiniteMemory { lambda, depth, digits } => {
            if *depth == 0 || *digits == 0 {
                return Err(Error::input("truncation depth and digit count must be at least 1"));
            }
            let k = ds_k(lambda);
            let seq = infinite_gap_sequence(lambda, *depth)?;
            let color = |c: i64| c.to_string();
            b.state("s1".into(), Player::P1);
            b.state("s2".into(), Player::P2);
            let sink = b.state("sink".into(), Player::P2);
            b.edge(&sink, &color(-k), &sink);
            for j in 1..=*depth {
                let word: Vec<String> = seq.colors[..j].iter().map(|&c| color(c)).collect();
                b.chain("s1", &word, "s2", &format!("p{j}_"), Player::P1);
                let g = &seq.gaps[j - 1];
                let exp = greedy_expansion(&-g.clone(), lambda, k, *digits)?;
                let word: Vec<String> = exp.digits.iter().map(|&c| color(c)).collect();
                b.chain("s2", &word, &sink, &format!("r{j}_"), Player::P2);
            }
            b.finish(ds_alphabet(k))
        }
    }
}

/// The player-1 state with self-loops `a` and `b`.
pub fn one_state_arena() -> Arena {
    counterexample_arena(&Counterexample::OneState {
        alphabet: vec!["a".into(), "b".into()],
    })
    .expect("valid arena")
}

/// `⌈1/λ - 1⌉`, the smallest `k` for which discounted sum has a gap sequence.
pub fn ds_k(lambda: &Rational) -> i64 {
    let v = (Rational::one() / lambda.clone() - Rational::one()).ceil();
    v.to_integer().try_into().expect("small k")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::ConditionSpec;
    use crate::fixtures::{buchi_ab, buchi_ab_skeleton};
    use crate::games::{product_game, solve_parity};
    use crate::scalar::{ds_of_lasso, ds_of_word};
    use crate::synthesis::{synthesize, SynthesisOptions};
    use num_traits::Zero;

    fn words(ws: &[&str]) -> Vec<String> {
        ws.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn merged_chains_five_nodes() {
        let a = counterexample_arena(&Counterexample::MergedChains {
            alphabet: words(&["a", "b", "c"]),
            w1: words(&["a"]),
            w2: words(&["b"]),
            w1_cont: Continuation {
                prefix: vec![],
                period: words(&["a"]),
            },
            w2_cont: Continuation {
                prefix: vec![],
                period: words(&["b"]),
            },
        })
        .unwrap();
        assert_eq!(a.num_states(), 5);
        assert!(a.find_edge("t1", "a", "s").is_ok());
        assert!(a.find_edge("t2", "b", "s").is_ok());
        assert!(a.find_edge("x1", "a", "x1").is_ok());
    }

    #[test]
    fn lasso_reads_prefix_then_period() {
        let a = counterexample_arena(&Counterexample::MergedChains {
            alphabet: words(&["a", "b"]),
            w1: words(&["a"]),
            w2: vec![],
            w1_cont: Continuation {
                prefix: words(&["b"]),
                period: words(&["a", "b"]),
            },
            w2_cont: Continuation {
                prefix: vec![],
                period: words(&["b"]),
            },
        })
        .unwrap();
        // s -b-> x1 -a-> x2 -b-> x3 -a-> x2
        assert!(a.find_edge("s", "b", "x1").is_ok());
        assert!(a.find_edge("x1", "a", "x2").is_ok());
        assert!(a.find_edge("x2", "b", "x3").is_ok());
        assert!(a.find_edge("x3", "a", "x2").is_ok());
    }

    fn cycle_choice(family: &[&[&str]]) -> (Arena, Player) {
        let a = counterexample_arena(&Counterexample::CycleChoice {
            alphabet: words(&["a", "b", "c"]),
            w: vec![],
            family: family.iter().map(|f| words(f)).collect(),
        })
        .unwrap();
        let d = synthesize(&buchi_ab(), &buchi_ab_skeleton(), &SynthesisOptions::default())
            .unwrap()
            .automaton;
        let pg = product_game(&a, &d).unwrap();
        let sol = solve_parity(&pg.game);
        let s1 = pg.state_of(0, d.skeleton().init()).unwrap();
        (a, sol.winner[s1])
    }

    #[test]
    fn cycle_choice_two_states() {
        // single-letter cycles are each losing, so player 2 repeats one
        let (a, w) = cycle_choice(&[&["a"], &["b"]]);
        assert_eq!(a.num_states(), 2);
        assert!((0..2).all(|s| a.owner(s) == Player::P2));
        assert_eq!(w, Player::P2);
        // every interleaving of winning cycles wins for player 1
        let (_, w) = cycle_choice(&[&["a", "b"], &["b", "a"]]);
        assert_eq!(w, Player::P1);
    }

    #[test]
    fn ds_branches_drop_below_zero() {
        let lambda = Rational::new(2.into(), 3.into());
        let depth = 3;
        let a = counterexample_arena(&Counterexample::DsInfiniteMemory {
            lambda: lambda.clone(),
            depth,
            digits: 12,
        })
        .unwrap();
        assert_eq!(ds_k(&lambda), 1);
        let seq = infinite_gap_sequence(&lambda, depth).unwrap();
        let cond = ConditionSpec::discounted_sum(lambda.clone(), 1).unwrap();
        for j in 1..=depth {
            let g = &seq.gaps[j - 1];
            let exp = greedy_expansion(&-g.clone(), &lambda, 1, 12).unwrap();
            let branch = ds_of_lasso(&exp.digits, &[-1], &lambda);
            assert!(g.clone() + branch.clone() < Rational::zero(), "branch {j} reaches below zero");
            let prefix = &seq.colors[..j];
            let total = ds_of_word(prefix, &lambda) + lambda.pow(j as i32) * branch;
            assert!(total < Rational::zero());
            let mut pre: Vec<i64> = prefix.to_vec();
            pre.extend(&exp.digits);
            assert!(!cond
                .lasso_value(&crate::condition::Lasso::from_ints(&pre, &[-1]).unwrap())
                .unwrap()
                .is_win());
        }
        assert!(a.find_edge("sink", "-1", "sink").is_ok());
    }
}
