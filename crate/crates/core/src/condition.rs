//! Winning conditions and their oracles: lasso evaluation, residual
//! comparison, gaps and right-congruence automata.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::ds;
use crate::error::{Error, Result};
use crate::scalar::{self, GapValue};
use crate::skeleton::{ParityAutomaton, Skeleton, Transition};
use crate::support::{enumerate_cycle_supports, CycleSupport};
use crate::{Rational, DEFAULT_SUPPORT_CAP};

/// Outcome of an infinite word for player 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Win,
    Lose,
}

impl Value {
    pub fn from_win(win: bool) -> Self {
        if win {
            Value::Win
        } else {
            Value::Lose
        }
    }

    pub fn is_win(self) -> bool {
        self == Value::Win
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Value::Win => "win",
            Value::Lose => "lose",
        })
    }
}

/// Ultimately periodic word `prefix · period^ω`, colors by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub prefix: Vec<String>,
    pub period: Vec<String>,
}

impl Lasso {
    pub fn new<S: AsRef<str>>(prefix: &[S], period: &[S]) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::input("lasso period must be non-empty"));
        }
        let own = |w: &[S]| w.iter().map(|c| c.as_ref().to_string()).collect();
        Ok(Lasso {
            prefix: own(prefix),
            period: own(period),
        })
    }

    pub fn from_ints(prefix: &[i64], period: &[i64]) -> Result<Self> {
        let s = |w: &[i64]| w.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        Lasso::new(&s(prefix), &s(period))
    }
}

/// Outcome of comparing the residuals (winning continuations) of two prefixes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResidualOrder {
    Equal,
    /// The first residual is strictly included in the second.
    Less,
    /// The second residual is strictly included in the first.
    Greater,
    Incomparable,
}

impl fmt::Display for ResidualOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResidualOrder::Equal => "equal",
            ResidualOrder::Less => "less",
            ResidualOrder::Greater => "greater",
            ResidualOrder::Incomparable => "incomparable",
        })
    }
}

/// Muller condition on a skeleton: a run wins when the set of transitions it
/// takes infinitely often is one of the listed supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MullerCondition {
    skeleton: Skeleton,
    winning: BTreeSet<CycleSupport>,
}

impl MullerCondition {
    pub fn new(skeleton: Skeleton, winning: impl IntoIterator<Item = CycleSupport>) -> Self {
        MullerCondition {
            skeleton,
            winning: winning.into_iter().collect(),
        }
    }

    /// The Muller table of a parity automaton: supports with even maximum.
    pub fn from_parity(a: &ParityAutomaton, cap: usize) -> Result<Self> {
        let winning = enumerate_cycle_supports(a.skeleton(), cap)?
            .into_iter()
            .filter(|s| a.max_priority(s.transitions()).unwrap_or(1).is_multiple_of(2));
        Ok(MullerCondition::new(a.skeleton().clone(), winning))
    }

    /// Generalized Büchi on the trivial skeleton: win iff every color of
    /// `required` occurs infinitely often.
    pub fn generalized_buchi(alphabet: &[&str], required: &[&str]) -> Result<Self> {
        let m = Skeleton::trivial(alphabet);
        let req = m.encode(required)?;
        let winning = enumerate_cycle_supports(&m, DEFAULT_SUPPORT_CAP)?
            .into_iter()
            .filter(|s| req.iter().all(|&c| s.contains(Transition { state: 0, color: c })));
        Ok(MullerCondition::new(m, winning))
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn winning(&self) -> &BTreeSet<CycleSupport> {
        &self.winning
    }

    pub fn accepts_cycle(&self, cycle: &[Transition]) -> bool {
        self.winning
            .contains(&CycleSupport::from_sorted_unchecked(cycle.to_vec()))
    }
}

/// A winning condition over a finite color alphabet.
#[derive(Clone, Debug, PartialEq)]
pub enum ConditionSpec {
    /// Language of a deterministic parity automaton.
    Dpa(ParityAutomaton),
    /// Explicit Muller table on a skeleton.
    Muller(MullerCondition),
    /// `DS_λ(w) = Σ λ^i w_i ≥ 0` over colors `[-k, k]`.
    DiscountedSum { lambda: Rational, k: i64 },
    /// Limit-inferior average weight `≥ 0`; evaluated on lassos as the
    /// period average. The optional list fixes the alphabet.
    MeanPayoff { colors: Option<Vec<i64>> },
    /// Limit-superior of partial sums `≥ 0`.
    TotalPayoff { colors: Option<Vec<i64>> },
}

impl ConditionSpec {
    pub fn discounted_sum(lambda: Rational, k: i64) -> Result<Self> {
        if lambda <= Rational::zero() || lambda >= Rational::one() {
            return Err(Error::input(format!("discount factor {lambda} must lie in (0, 1)")));
        }
        if k < 0 {
            return Err(Error::input("color bound k must be non-negative"));
        }
        Ok(ConditionSpec::DiscountedSum { lambda, k })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ConditionSpec::Dpa(_) => "dpa",
            ConditionSpec::Muller(_) => "muller",
            ConditionSpec::DiscountedSum { .. } => "discounted-sum",
            ConditionSpec::MeanPayoff { .. } => "mean-payoff",
            ConditionSpec::TotalPayoff { .. } => "total-payoff",
        }
    }

    /// Whether a cycle's value depends only on its set of transitions.
    /// Discounted sum qualifies exactly when `λ = 1/n`, where every cycle on
    /// a finite gap has continuation value `-gap`.
    pub fn union_invariant(&self) -> bool {
        match self {
            ConditionSpec::Dpa(_) | ConditionSpec::Muller(_) => true,
            ConditionSpec::DiscountedSum { lambda, .. } => lambda.numer().is_one(),
            ConditionSpec::MeanPayoff { .. } | ConditionSpec::TotalPayoff { .. } => false,
        }
    }

    /// Color names, when the condition fixes them.
    pub fn alphabet(&self) -> Option<Vec<String>> {
        match self {
            ConditionSpec::Dpa(a) => Some(a.skeleton().alphabet().to_vec()),
            ConditionSpec::Muller(m) => Some(m.skeleton().alphabet().to_vec()),
            ConditionSpec::DiscountedSum { k, .. } => Some(ds_alphabet(*k)),
            ConditionSpec::MeanPayoff { colors } | ConditionSpec::TotalPayoff { colors } => colors
                .as_ref()
                .map(|cs| cs.iter().map(|c| c.to_string()).collect()),
        }
    }

    /// Whether `prefix · period^ω` belongs to the condition.
    pub fn lasso_value(&self, w: &Lasso) -> Result<Value> {
        self.value_of(&w.prefix, &w.period)
    }

    /// [`ConditionSpec::lasso_value`] on borrowed words.
    pub fn value_of<S: AsRef<str>>(&self, prefix: &[S], period: &[S]) -> Result<Value> {
        if period.is_empty() {
            return Err(Error::input("lasso period must be non-empty"));
        }
        match self {
            ConditionSpec::Dpa(a) => Ok(Value::from_win(a.accepts(prefix, period)?)),
            ConditionSpec::Muller(m) => {
                let sk = m.skeleton();
                let cycle = sk.lasso_cycle(&sk.encode(prefix)?, &sk.encode(period)?);
                Ok(Value::from_win(m.accepts_cycle(&cycle)))
            }
            ConditionSpec::DiscountedSum { lambda, k } => {
                let u = parse_bounded(prefix, *k)?;
                let v = parse_bounded(period, *k)?;
                Ok(Value::from_win(
                    scalar::ds_of_lasso(&u, &v, lambda) >= Rational::zero(),
                ))
            }
            ConditionSpec::MeanPayoff { colors } => {
                parse_ints(prefix, colors.as_deref())?;
                let v = parse_ints(period, colors.as_deref())?;
                Ok(Value::from_win(v.iter().map(|&c| c as i128).sum::<i128>() >= 0))
            }
            ConditionSpec::TotalPayoff { colors } => {
                let u = parse_ints(prefix, colors.as_deref())?;
                let v = parse_ints(period, colors.as_deref())?;
                Ok(Value::from_win(total_payoff_wins(&u, &v)))
            }
        }
    }

    /// Value of `prefix · period^ω` given as color indices of `m`.
    pub fn value_in(&self, m: &Skeleton, prefix: &[usize], period: &[usize]) -> Result<Value> {
        self.value_of(&m.decode(prefix), &m.decode(period))
    }

    /// Value of a cycle support of `m`, read from its first state after that
    /// state's shortest access word. `access` is `m.access_words()`.
    pub fn support_value(&self, m: &Skeleton, access: &[Vec<usize>], s: &CycleSupport) -> Result<Value> {
        let q = s.transitions()[0].state;
        self.value_in(m, &access[q], &s.closed_walk(m, q))
    }

    /// Compares the residuals of two finite words.
    pub fn residual_compare<S: AsRef<str>>(&self, w1: &[S], w2: &[S]) -> Result<ResidualOrder> {
        match self {
            ConditionSpec::Dpa(_) | ConditionSpec::Muller(_) => {
                let acc = Acceptor::of(self).expect("automaton-backed");
                let q1 = acc.sk.state_after(acc.sk.init(), &acc.sk.encode(w1)?);
                let q2 = acc.sk.state_after(acc.sk.init(), &acc.sk.encode(w2)?);
                acc.compare_states(q1, q2, DEFAULT_SUPPORT_CAP)
            }
            ConditionSpec::DiscountedSum { lambda, k } => {
                let g1 = gap(&parse_bounded(w1, *k)?, lambda, *k);
                let g2 = gap(&parse_bounded(w2, *k)?, lambda, *k);
                Ok(order_of(g1.cmp(&g2)))
            }
            ConditionSpec::MeanPayoff { colors } => {
                parse_ints(w1, colors.as_deref())?;
                parse_ints(w2, colors.as_deref())?;
                Ok(ResidualOrder::Equal)
            }
            ConditionSpec::TotalPayoff { colors } => {
                let s1: i128 = parse_ints(w1, colors.as_deref())?.iter().map(|&c| c as i128).sum();
                let s2: i128 = parse_ints(w2, colors.as_deref())?.iter().map(|&c| c as i128).sum();
                Ok(order_of(s1.cmp(&s2)))
            }
        }
    }

    /// Minimal-state automaton of the right congruence: states are the
    /// classes of prefixes with equal residuals.
    pub fn right_congruence_automaton(&self) -> Result<Skeleton> {
        match self.alphabet() {
            Some(alphabet) => self.right_congruence_over(&alphabet),
            None => Err(Error::input(format!(
                "{} condition needs an explicit color list to build its right congruence",
                self.kind()
            ))),
        }
    }

    /// Right-congruence automaton over the given alphabet, used when the
    /// condition does not fix its own colors.
    pub(crate) fn right_congruence_over(&self, alphabet: &[String]) -> Result<Skeleton> {
        match self {
            ConditionSpec::Dpa(_) | ConditionSpec::Muller(_) => {
                Acceptor::of(self).expect("automaton-backed").quotient(DEFAULT_SUPPORT_CAP)
            }
            ConditionSpec::DiscountedSum { lambda, k } => ds::right_congruence(lambda, *k),
            ConditionSpec::MeanPayoff { .. } => {
                parse_ints(alphabet, None)?;
                Ok(Skeleton::trivial(alphabet)
                    .with_state_names(vec!["[ε]".to_string()])
                    .expect("one name"))
            }
            ConditionSpec::TotalPayoff { .. } => Err(Error::InfiniteIndex(
                "total payoff residuals are ordered by the prefix sum, which is unbounded".into(),
            )),
        }
    }
}

fn order_of(o: std::cmp::Ordering) -> ResidualOrder {
    match o {
        std::cmp::Ordering::Equal => ResidualOrder::Equal,
        std::cmp::Ordering::Less => ResidualOrder::Less,
        std::cmp::Ordering::Greater => ResidualOrder::Greater,
    }
}

/// Colors `-k, …, k` as names, in increasing order.
pub fn ds_alphabet(k: i64) -> Vec<String> {
    (-k..=k).map(|c| c.to_string()).collect()
}

/// Gap of a finite word under `DS_λ ≥ 0` with colors in `[-k, k]`.
pub fn gap(w: &[i64], lambda: &Rational, k: i64) -> GapValue {
    scalar::gap_of_word(w, lambda, k)
}

fn parse_ints<S: AsRef<str>>(w: &[S], allowed: Option<&[i64]>) -> Result<Vec<i64>> {
    w.iter()
        .map(|c| {
            let c = c.as_ref();
            let v: i64 = c.parse().map_err(|_| Error::UnknownColor(c.to_string()))?;
            match allowed {
                Some(a) if !a.contains(&v) => Err(Error::UnknownColor(c.to_string())),
                _ => Ok(v),
            }
        })
        .collect()
}

fn parse_bounded<S: AsRef<str>>(w: &[S], k: i64) -> Result<Vec<i64>> {
    let v = parse_ints(w, None)?;
    match v.iter().position(|c| c.abs() > k) {
        Some(i) => Err(Error::UnknownColor(w[i].as_ref().to_string())),
        None => Ok(v),
    }
}

/// `limsup` of partial sums of `u · v^ω` is `≥ 0`: either the period gains,
/// or it is balanced and some running total over one period reaches zero.
fn total_payoff_wins(u: &[i64], v: &[i64]) -> bool {
    let period: i128 = v.iter().map(|&c| c as i128).sum();
    if period != 0 {
        return period > 0;
    }
    let mut run: i128 = u.iter().map(|&c| c as i128).sum();
    let mut best = i128::MIN;
    for &c in v {
        run += c as i128;
        best = best.max(run);
    }
    best >= 0
}

/// Skeleton plus a support-level acceptance, shared by parity and Muller
/// conditions for residual comparison.
/// The automaton behind a Dpa or Muller condition, judged on the set of
/// its transitions a cycle visits.
pub(crate) struct Acceptor<'a> {
    pub(crate) sk: &'a Skeleton,
    cond: &'a ConditionSpec,
}

impl<'a> Acceptor<'a> {
    pub(crate) fn of(cond: &'a ConditionSpec) -> Option<Self> {
        let sk = match cond {
            ConditionSpec::Dpa(a) => a.skeleton(),
            ConditionSpec::Muller(m) => m.skeleton(),
            _ => return None,
        };
        Some(Acceptor { sk, cond })
    }

    pub(crate) fn accepts(&self, cycle: &[Transition]) -> bool {
        match self.cond {
            ConditionSpec::Dpa(a) => a.max_priority(cycle).expect("non-empty") % 2 == 0,
            ConditionSpec::Muller(m) => m.accepts_cycle(cycle),
            _ => unreachable!(),
        }
    }

    /// Runs both copies of the automaton in lockstep from `(q1, q2)` and
    /// looks, in every cycle support of that product, for one accepted on one
    /// side only.
    fn compare_states(&self, q1: usize, q2: usize, cap: usize) -> Result<ResidualOrder> {
        if q1 == q2 {
            return Ok(ResidualOrder::Equal);
        }
        let sk = self.sk;
        let nc = sk.num_colors();
        let mut index: HashMap<(usize, usize), usize> = HashMap::from([((q1, q2), 0)]);
        let mut pairs = vec![(q1, q2)];
        let mut upd = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            for c in 0..nc {
                let next = (sk.succ(a, c), sk.succ(b, c));
                let id = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                upd.push(id);
            }
            i += 1;
        }
        let names = (0..pairs.len()).map(|i| i.to_string()).collect();
        let product = Skeleton::from_table(sk.alphabet().to_vec(), names, 0, upd);
        // from_table keeps the breadth-first order, which is the order pairs
        // were discovered in.
        let (mut first_only, mut second_only) = (false, false);
        for s in enumerate_cycle_supports(&product, cap)? {
            let mut left: Vec<Transition> = Vec::with_capacity(s.len());
            let mut right: Vec<Transition> = Vec::with_capacity(s.len());
            for t in s.transitions() {
                let (a, b) = pairs[t.state];
                left.push(Transition { state: a, color: t.color });
                right.push(Transition { state: b, color: t.color });
            }
            for side in [&mut left, &mut right] {
                side.sort();
                side.dedup();
            }
            match (self.accepts(&left), self.accepts(&right)) {
                (true, false) => first_only = true,
                (false, true) => second_only = true,
                _ => {}
            }
            if first_only && second_only {
                break;
            }
        }
        Ok(match (first_only, second_only) {
            (false, false) => ResidualOrder::Equal,
            (false, true) => ResidualOrder::Less,
            (true, false) => ResidualOrder::Greater,
            (true, true) => ResidualOrder::Incomparable,
        })
    }

    /// Quotient of the reachable automaton by residual equality; classes are
    /// named `[w]` after their least access word.
    fn quotient(&self, cap: usize) -> Result<Skeleton> {
        let sk = self.sk;
        let mut reps: Vec<usize> = Vec::new();
        let mut class_of = vec![0; sk.num_states()];
        for s in 0..sk.num_states() {
            let mut found = None;
            for (i, &r) in reps.iter().enumerate() {
                if self.compare_states(r, s, cap)? == ResidualOrder::Equal {
                    found = Some(i);
                    break;
                }
            }
            class_of[s] = match found {
                Some(i) => i,
                None => {
                    reps.push(s);
                    reps.len() - 1
                }
            };
        }
        let nc = sk.num_colors();
        let mut upd = Vec::with_capacity(reps.len() * nc);
        for &r in &reps {
            for c in 0..nc {
                upd.push(class_of[sk.succ(r, c)]);
            }
        }
        let placeholder = (0..reps.len()).map(|i| i.to_string()).collect();
        let q = Skeleton::from_table(sk.alphabet().to_vec(), placeholder, class_of[sk.init()], upd);
        let names = q
            .access_words()
            .iter()
            .map(|w| class_label(&q.decode(w)))
            .collect();
        q.with_state_names(names)
    }
}

/// `[w]` with `ε` for the empty word; colors are concatenated when all are
/// single characters and comma-separated otherwise.
pub fn class_label(word: &[String]) -> String {
    if word.is_empty() {
        return "[ε]".to_string();
    }
    let sep = if word.iter().all(|c| c.chars().count() == 1) { "" } else { "," };
    format!("[{}]", word.join(sep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactScalar;

    fn competition() -> ParityAutomaton {
        ParityAutomaton::from_edges(
            &["a", "b", "c"],
            "m1",
            &[
                ("m1", "a", "m2", 2),
                ("m1", "b", "m1", 1),
                ("m1", "c", "m1", 3),
                ("m2", "a", "m1", 2),
                ("m2", "b", "m2", 0),
                ("m2", "c", "m2", 0),
            ],
        )
        .unwrap()
    }

    fn abc() -> ConditionSpec {
        let a = ParityAutomaton::from_edges(
            &["a", "b"],
            "e",
            &[
                ("e", "a", "A", 1),
                ("e", "b", "B", 1),
                ("A", "a", "B", 1),
                ("A", "b", "AB", 1),
                ("B", "a", "B", 1),
                ("B", "b", "B", 1),
                ("AB", "a", "AB", 0),
                ("AB", "b", "AB", 0),
            ],
        )
        .unwrap();
        ConditionSpec::Dpa(a)
    }

    fn half() -> Rational {
        Rational::from_frac(1, 2)
    }

    #[test]
    fn dpa_lasso_uses_cycle_maximum() {
        let c = ConditionSpec::Dpa(competition());
        assert_eq!(c.value_of::<&str>(&[], &["b"]).unwrap(), Value::Lose);
        assert_eq!(c.value_of(&["a"], &["b"]).unwrap(), Value::Win);
        assert_eq!(c.value_of::<&str>(&[], &["a", "a", "c"]).unwrap(), Value::Lose);
    }

    #[test]
    fn discounted_sum_lasso() {
        let c = ConditionSpec::discounted_sum(half(), 2).unwrap();
        assert_eq!(c.lasso_value(&Lasso::from_ints(&[], &[1, -1]).unwrap()).unwrap(), Value::Win);
        assert_eq!(c.lasso_value(&Lasso::from_ints(&[-2], &[2]).unwrap()).unwrap(), Value::Win);
        assert_eq!(c.lasso_value(&Lasso::from_ints(&[-2, 1], &[2]).unwrap()).unwrap(), Value::Lose);
        assert!(matches!(
            c.lasso_value(&Lasso::from_ints(&[], &[3]).unwrap()),
            Err(Error::UnknownColor(_))
        ));
    }

    #[test]
    fn mean_and_total_payoff_lassos() {
        let mp = ConditionSpec::MeanPayoff { colors: None };
        assert_eq!(mp.lasso_value(&Lasso::from_ints(&[], &[1, -1, -1]).unwrap()).unwrap(), Value::Lose);
        assert_eq!(mp.lasso_value(&Lasso::from_ints(&[-5], &[1, -1]).unwrap()).unwrap(), Value::Win);
        let tp = ConditionSpec::TotalPayoff { colors: None };
        assert_eq!(tp.lasso_value(&Lasso::from_ints(&[-5], &[1, -1]).unwrap()).unwrap(), Value::Lose);
        assert_eq!(tp.lasso_value(&Lasso::from_ints(&[-1], &[1, -1]).unwrap()).unwrap(), Value::Win);
        assert_eq!(tp.lasso_value(&Lasso::from_ints(&[], &[0]).unwrap()).unwrap(), Value::Win);
        assert_eq!(tp.lasso_value(&Lasso::from_ints(&[9], &[-1]).unwrap()).unwrap(), Value::Lose);
    }

    #[test]
    fn residuals_of_abc() {
        let c = abc();
        assert_eq!(c.residual_compare::<&str>(&[], &[]).unwrap(), ResidualOrder::Equal);
        assert_eq!(c.residual_compare(&[], &["a"]).unwrap(), ResidualOrder::Incomparable);
        assert_eq!(c.residual_compare(&["b"], &["a", "b"]).unwrap(), ResidualOrder::Less);
        assert_eq!(c.residual_compare(&["a", "a"], &["b", "b"]).unwrap(), ResidualOrder::Equal);
    }

    #[test]
    fn residuals_of_gap_automaton_as_dpa() {
        // The gap automaton with "never reach bot" acceptance ranks lower
        // gaps below higher ones.
        let c = ConditionSpec::discounted_sum(half(), 2).unwrap();
        let dpa = ds::gap_dpa(&half(), 2).unwrap();
        let d = ConditionSpec::Dpa(dpa);
        assert_eq!(d.residual_compare(&["-1"], &["0"]).unwrap(), ResidualOrder::Less);
        assert_eq!(c.residual_compare(&["-1"], &["0"]).unwrap(), ResidualOrder::Less);
        assert_eq!(d.residual_compare(&["1", "-1"], &["1"]).unwrap(), ResidualOrder::Equal);
    }

    #[test]
    fn right_congruence_of_abc_has_four_classes() {
        let rc = abc().right_congruence_automaton().unwrap();
        assert_eq!(rc.states(), ["[ε]", "[a]", "[b]", "[ab]"]);
    }

    #[test]
    fn prefix_independent_condition_has_one_class() {
        let buchi = ParityAutomaton::from_edges(
            &["a", "b"],
            "p",
            &[("p", "a", "q", 2), ("p", "b", "p", 1), ("q", "a", "q", 2), ("q", "b", "p", 1)],
        )
        .unwrap();
        let rc = ConditionSpec::Dpa(buchi).right_congruence_automaton().unwrap();
        assert_eq!(rc.num_states(), 1);
    }

    #[test]
    fn union_invariance_flags() {
        assert!(ConditionSpec::Dpa(competition()).union_invariant());
        assert!(ConditionSpec::discounted_sum(half(), 2).unwrap().union_invariant());
        assert!(!ConditionSpec::discounted_sum(Rational::from_frac(2, 3), 1)
            .unwrap()
            .union_invariant());
        assert!(!ConditionSpec::MeanPayoff { colors: None }.union_invariant());
        assert!(ConditionSpec::discounted_sum(Rational::one(), 1).is_err());
    }

    #[test]
    fn generalized_buchi_table() {
        let m = MullerCondition::generalized_buchi(&["a", "b", "c"], &["a", "b"]).unwrap();
        assert_eq!(m.winning().len(), 2);
        let c = ConditionSpec::Muller(m);
        assert_eq!(c.value_of::<&str>(&[], &["a", "b"]).unwrap(), Value::Win);
        assert_eq!(c.value_of::<&str>(&[], &["a", "c"]).unwrap(), Value::Lose);
    }
}
