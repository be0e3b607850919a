//! Skeleton-relative prefix-independence and cycle-consistency, plus the
//! mean-payoff word family showing that cycle-consistency fails for it.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_traits::Zero;

use crate::condition::{Acceptor, ConditionSpec, Value};
use crate::error::{Error, Result};
use crate::skeleton::{Skeleton, Transition};
use crate::support::{enumerate_cycle_supports, CycleSupport};
use crate::{Rational, DEFAULT_SUPPORT_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Evidence for a failed check, re-checkable through [`Witness::recheck`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Two prefixes reaching the same skeleton state with different residuals.
    Prefixes {
        state: String,
        first: Vec<String>,
        second: Vec<String>,
    },
    /// Two same-valued cycles on a state whose union takes the other value.
    /// Supports are given on the skeleton; walks are color words starting
    /// and ending at the state after `access`.
    Supports {
        state: String,
        access: Vec<String>,
        value: Value,
        first: Vec<(String, String)>,
        second: Vec<(String, String)>,
        first_walk: Vec<String>,
        second_walk: Vec<String>,
        union_walk: Vec<String>,
    },
}

impl Witness {
    /// Re-evaluates the witness with the condition's own oracles.
    pub fn recheck(&self, cond: &ConditionSpec, m: &Skeleton) -> Result<bool> {
        match self {
            Witness::Prefixes { state, first, second } => {
                let q = m.state_index(state)?;
                let reach = |w: &[String]| -> Result<usize> {
                    Ok(m.state_after(m.init(), &m.encode(w)?))
                };
                Ok(reach(first)? == q
                    && reach(second)? == q
                    && cond.residual_compare(first, second)? != crate::ResidualOrder::Equal)
            }
            Witness::Supports {
                value,
                access,
                first_walk,
                second_walk,
                union_walk,
                ..
            } => Ok(cond.value_of(access, first_walk)? == *value
                && cond.value_of(access, second_walk)? == *value
                && cond.value_of(access, union_walk)? != *value),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl ConsistencyReport {
    fn pass() -> Self {
        ConsistencyReport {
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    fn fail(w: Witness) -> Self {
        ConsistencyReport {
            verdict: Verdict::Fail,
            witness: Some(w),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Product `M_∼ ⊗ m` of the right-congruence automaton with `m`, with the
/// component states of every product state.
pub fn residual_product(cond: &ConditionSpec, m: &Skeleton) -> Result<(Skeleton, Vec<(usize, usize)>)> {
    let rc = cond.right_congruence_over(m.alphabet())?;
    rc.product_with_components(m)
}

/// Passes when all prefixes reaching the same state of `m` have the same
/// residual.
pub fn check_prefix_independence(cond: &ConditionSpec, m: &Skeleton) -> Result<ConsistencyReport> {
    let (p, pairs) = residual_product(cond, m)?;
    let access = p.access_words();
    // first product state seen for every state of m
    let mut seen: Vec<Option<usize>> = vec![None; m.num_states()];
    for (i, &(class, q)) in pairs.iter().enumerate() {
        match seen[q] {
            None => seen[q] = Some(i),
            Some(j) if pairs[j].0 != class => {
                // product states are in breadth-first order, so `j` and `i`
                // carry the two shortest conflicting prefixes
                return Ok(ConsistencyReport::fail(Witness::Prefixes {
                    state: m.state_name(q).to_string(),
                    first: p.decode(&access[j]),
                    second: p.decode(&access[i]),
                }));
            }
            Some(_) => {}
        }
    }
    Ok(ConsistencyReport::pass())
}

/// Passes when, on every state of `M_∼ ⊗ m`, winning cycles and losing cycles
/// are each closed under union. Only sound for union-invariant conditions.
pub fn check_cycle_consistency(cond: &ConditionSpec, m: &Skeleton) -> Result<ConsistencyReport> {
    check_cycle_consistency_capped(cond, m, DEFAULT_SUPPORT_CAP)
}

pub fn check_cycle_consistency_capped(cond: &ConditionSpec, m: &Skeleton, cap: usize) -> Result<ConsistencyReport> {
    if !cond.union_invariant() {
        return Err(Error::Unsupported(format!(
            "cycle-consistency of {} conditions is unsupported for general conditions; use dedicated demos",
            cond.kind()
        )));
    }
    let (p, pairs) = residual_product(cond, m)?;
    let access = p.access_words();
    let supports = enumerate_cycle_supports(&p, cap)?;
    for q in 0..p.num_states() {
        let through: Vec<&CycleSupport> = supports.iter().filter(|s| s.visits(q)).collect();
        // read from q itself so the witness is self-contained
        let vals = through
            .iter()
            .map(|s| value_at(cond, &p, &access, s, q))
            .collect::<Result<Vec<_>>>()?;
        for (x, &a) in through.iter().enumerate() {
            for (y, &b) in through.iter().enumerate().skip(x + 1) {
                let va = vals[x];
                if va != vals[y] {
                    continue;
                }
                let u = a.union(b);
                if value_at(cond, &p, &access, &u, q)? == va {
                    continue;
                }
                return Ok(ConsistencyReport::fail(Witness::Supports {
                    state: p.state_name(q).to_string(),
                    access: p.decode(&access[q]),
                    value: va,
                    first: project(m, &p, &pairs, a),
                    second: project(m, &p, &pairs, b),
                    first_walk: p.decode(&a.closed_walk(&p, q)),
                    second_walk: p.decode(&b.closed_walk(&p, q)),
                    union_walk: p.decode(&u.closed_walk(&p, q)),
                }));
            }
        }
    }
    // Pairs of supports miss violations where one support carries cycles of
    // both values, which happens when p does not track the condition's own
    // automaton. Compare the cycles' effects on that automaton instead.
    if let Some(v) = profile_violation(cond, &p, &access, cap)? {
        let support = |w: &[usize]| -> Result<CycleSupport> {
            let run = p.run_from(v.state, w);
            CycleSupport::new(&p, w.iter().zip(&run).map(|(&color, &state)| Transition { state, color }))
        };
        let union: Vec<usize> = v.first.iter().chain(&v.second).copied().collect();
        return Ok(ConsistencyReport::fail(Witness::Supports {
            state: p.state_name(v.state).to_string(),
            access: p.decode(&access[v.state]),
            value: v.value,
            first: project(m, &p, &pairs, &support(&v.first)?),
            second: project(m, &p, &pairs, &support(&v.second)?),
            first_walk: p.decode(&v.first),
            second_walk: p.decode(&v.second),
            union_walk: p.decode(&union),
        }));
    }
    Ok(ConsistencyReport::pass())
}

/// Effect of a word on an automaton: for every state, the state reached and
/// the set of transitions taken, as a bitset over transition ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Profile(Vec<(usize, Vec<u64>)>);

struct ProfileAlgebra<'a> {
    acc: Acceptor<'a>,
    /// Profile of every color of the product skeleton.
    letters: Vec<Profile>,
    /// Product color index to automaton color index.
    color_map: Vec<usize>,
}

impl<'a> ProfileAlgebra<'a> {
    fn new(acc: Acceptor<'a>, p: &Skeleton) -> Result<Self> {
        let d = acc.sk;
        let color_map = d.color_map_from(p)?;
        let words = d.num_transitions().div_ceil(64);
        let letters = color_map
            .iter()
            .map(|&c| {
                Profile(
                    (0..d.num_states())
                        .map(|state| {
                            let t = Transition { state, color: c };
                            let mut bits = vec![0u64; words];
                            let id = d.transition_id(t);
                            bits[id / 64] |= 1 << (id % 64);
                            (d.target(t), bits)
                        })
                        .collect(),
                )
            })
            .collect();
        Ok(ProfileAlgebra { acc, letters, color_map })
    }

    /// `f` then `g`.
    fn then(&self, f: &Profile, g: &Profile) -> Profile {
        Profile(
            f.0.iter()
                .map(|(mid, b1)| {
                    let (end, b2) = &g.0[*mid];
                    (*end, b1.iter().zip(b2).map(|(x, y)| x | y).collect())
                })
                .collect(),
        )
    }

    /// Value of `f^ω` read from automaton state `d0`.
    fn value(&self, f: &Profile, d0: usize) -> Value {
        let mut pos = vec![usize::MAX; f.0.len()];
        let mut path = Vec::new();
        let mut d = d0;
        while pos[d] == usize::MAX {
            pos[d] = path.len();
            path.push(d);
            d = f.0[d].0;
        }
        let mut bits = vec![0u64; f.0[d0].1.len()];
        for &s in &path[pos[d]..] {
            for (b, x) in bits.iter_mut().zip(&f.0[s].1) {
                *b |= x;
            }
        }
        let sk = self.acc.sk;
        let cycle: Vec<Transition> = (0..sk.num_transitions())
            .filter(|&id| bits[id / 64] >> (id % 64) & 1 == 1)
            .map(|id| sk.transition_at(id))
            .collect();
        Value::from_win(self.acc.accepts(&cycle))
    }
}

/// Two same-valued cycles on `state`, given as color words of the product,
/// whose concatenation takes the other value.
struct ProfileViolation {
    state: usize,
    value: Value,
    first: Vec<usize>,
    second: Vec<usize>,
}

/// Exact cycle-consistency for automaton-backed conditions: collects the
/// profiles of all cycles on each state of `p` and tests every pair. Other
/// conditions return `None`; their values are determined by supports.
fn profile_violation(
    cond: &ConditionSpec,
    p: &Skeleton,
    access: &[Vec<usize>],
    cap: usize,
) -> Result<Option<ProfileViolation>> {
    let Some(acc) = Acceptor::of(cond) else {
        return Ok(None);
    };
    let alg = ProfileAlgebra::new(acc, p)?;
    let d = alg.acc.sk;
    for q in 0..p.num_states() {
        let start: Vec<usize> = access[q].iter().map(|&c| alg.color_map[c]).collect();
        let d0 = d.state_after(d.init(), &start);
        let mut seen: HashSet<(usize, Profile)> = HashSet::new();
        let mut queue: VecDeque<(usize, Profile, Vec<usize>)> = VecDeque::new();
        for c in 0..p.num_colors() {
            let next = (p.succ(q, c), alg.letters[c].clone());
            if seen.insert(next.clone()) {
                queue.push_back((next.0, next.1, vec![c]));
            }
        }
        // cycles on q, shortest word first
        let mut cycles: Vec<(Profile, Vec<usize>, Value)> = Vec::new();
        while let Some((s, f, w)) = queue.pop_front() {
            if seen.len() > cap {
                return Err(Error::SizeCap(format!(
                    "more than {cap} (state, profile) pairs while checking cycle-consistency"
                )));
            }
            for c in 0..p.num_colors() {
                let next = (p.succ(s, c), alg.then(&f, &alg.letters[c]));
                if seen.insert(next.clone()) {
                    let mut w2 = w.clone();
                    w2.push(c);
                    queue.push_back((next.0, next.1, w2));
                }
            }
            if s == q {
                let v = alg.value(&f, d0);
                cycles.push((f, w, v));
            }
        }
        for (i, (f, w1, v1)) in cycles.iter().enumerate() {
            for (g, w2, v2) in &cycles[i + 1..] {
                if v1 == v2 && alg.value(&alg.then(f, g), d0) != *v1 {
                    return Ok(Some(ProfileViolation {
                        state: q,
                        value: *v1,
                        first: w1.clone(),
                        second: w2.clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn value_at(cond: &ConditionSpec, p: &Skeleton, access: &[Vec<usize>], s: &CycleSupport, q: usize) -> Result<Value> {
    cond.value_in(p, &access[q], &s.closed_walk(p, q))
}

/// Image of a product support on `m`, as sorted `(state, color)` names.
fn project(m: &Skeleton, p: &Skeleton, pairs: &[(usize, usize)], s: &CycleSupport) -> Vec<(String, String)> {
    let mut out: Vec<Transition> = s
        .transitions()
        .iter()
        .map(|t| Transition {
            state: pairs[t.state].1,
            color: m.color_index(p.color_name(t.color)).expect("shared alphabet"),
        })
        .collect();
    out.sort();
    out.dedup();
    out.iter()
        .map(|t| (m.state_name(t.state).to_string(), m.color_name(t.color).to_string()))
        .collect()
}

/// One word `w_n = 1^n (-1)^{n+1}` of the mean-payoff family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpRow {
    pub n: usize,
    /// Mean payoff of `(w_n)^ω`, i.e. the average over one period.
    pub mean_payoff: Rational,
    /// Position `n² + n` in `w_0 w_1 w_2 ⋯`.
    pub zero_position: usize,
    /// Running sum of `w_0 w_1 ⋯` at `zero_position`.
    pub running_sum: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpReport {
    pub rows: Vec<MpRow>,
    /// Every `(w_n)^ω` is losing with mean payoff exactly `-1/(2n+1)`.
    pub cycles_losing: bool,
    /// The running sum of the concatenation returns to zero at every `n² + n`.
    pub returns_to_zero: bool,
}

impl MpReport {
    pub fn claims_hold(&self) -> bool {
        self.cycles_losing && self.returns_to_zero
    }
}

pub fn mp_word(n: usize) -> Vec<i64> {
    let mut w = vec![1; n];
    w.extend(std::iter::repeat_n(-1, n + 1));
    w
}

/// Each `(w_n)^ω` loses for mean payoff `≥ 0`, yet `w_0 w_1 w_2 ⋯` keeps
/// returning to a running sum of zero, so its limit-superior average is 0.
pub fn mp_counterexample_report(n_max: usize) -> Result<MpReport> {
    if n_max == 0 {
        return Err(Error::input("n_max must be at least 1"));
    }
    let cond = ConditionSpec::MeanPayoff { colors: None };
    let mut concat = Vec::new();
    for n in 0..=n_max {
        concat.extend(mp_word(n));
    }
    let mut running = vec![0i64];
    for c in &concat {
        running.push(running.last().expect("non-empty") + c);
    }
    let mut rows = Vec::with_capacity(n_max + 1);
    let (mut cycles_losing, mut returns_to_zero) = (true, true);
    for n in 0..=n_max {
        let w = mp_word(n);
        let sum: i64 = w.iter().sum();
        let mean_payoff = Rational::new(sum.into(), (w.len() as i64).into());
        let names: Vec<String> = w.iter().map(|c| c.to_string()).collect();
        let losing = cond.value_of::<String>(&[], &names)? == Value::Lose;
        cycles_losing &= losing
            && mean_payoff == Rational::new((-1).into(), (2 * n as i64 + 1).into())
            && mean_payoff < Rational::zero();
        let zero_position = n * n + n;
        let running_sum = running[zero_position];
        returns_to_zero &= running_sum == 0;
        rows.push(MpRow {
            n,
            mean_payoff,
            zero_position,
            running_sum,
        });
    }
    Ok(MpReport {
        rows,
        cycles_losing,
        returns_to_zero,
    })
}
