//! Discounted-sum analysis: the finite-index classification, gap automata,
//! greedy expansions, the infinite gap sequence and a sampled check of
//! cycle-consistency.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::condition::{ds_alphabet, ConditionSpec, Value};
use crate::error::{Error, Result};
use crate::scalar::{self, ExactScalar, GapValue};
use crate::skeleton::{ParityAutomaton, Skeleton};
use crate::Rational;

/// Whether `DS_λ ≥ 0` over `[-k, k]` has a finite right congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DsVerdict {
    /// `k < 1/λ - 1`: the first non-zero color decides the outcome.
    ThreeClass,
    /// `λ = 1/n`: gaps are integers; carries the number of gap states.
    FiniteGap(usize),
    InfiniteIndex,
}

impl fmt::Display for DsVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DsVerdict::ThreeClass => f.write_str("three-class"),
            DsVerdict::FiniteGap(n) => write!(f, "finite-gap({n})"),
            DsVerdict::InfiniteIndex => f.write_str("infinite-index"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsClassification {
    pub lambda: Rational,
    pub k: i64,
    pub verdict: DsVerdict,
}

fn check_lambda<S: ExactScalar>(lambda: &S) -> Result<()> {
    if *lambda <= S::zero() || *lambda >= S::one() {
        return Err(Error::input(format!("discount factor {lambda} must lie in (0, 1)")));
    }
    Ok(())
}

/// `k < 1/λ - 1`.
fn below_three_class_bound<S: ExactScalar>(lambda: &S, k: i64) -> bool {
    S::from_int(k) < S::one() / lambda.clone() - S::one()
}

pub fn classify_ds(lambda: &Rational, k: i64) -> Result<DsClassification> {
    check_lambda(lambda)?;
    if k < 0 {
        return Err(Error::input("color bound k must be non-negative"));
    }
    let verdict = if below_three_class_bound(lambda, k) {
        DsVerdict::ThreeClass
    } else if lambda.numer().is_one() {
        DsVerdict::FiniteGap(gap_bfs(lambda, k).0.num_states())
    } else {
        DsVerdict::InfiniteIndex
    };
    Ok(DsClassification {
        lambda: lambda.clone(),
        k,
        verdict,
    })
}

/// A gap automaton: a skeleton over `[-k, k]` whose states carry gap values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapAutomaton {
    pub skeleton: Skeleton,
    /// Gap value of every state, aligned with the skeleton's state indices.
    pub gaps: Vec<GapValue>,
}

impl GapAutomaton {
    /// States with every continuation winning (`top`) and losing (`bot`).
    pub fn sinks(&self) -> (Option<usize>, Option<usize>) {
        (
            self.gaps.iter().position(|g| *g == GapValue::Top),
            self.gaps.iter().position(|g| *g == GapValue::Bot),
        )
    }

    /// Parity acceptance "never reach `bot`": priority 1 on transitions out
    /// of `bot`, 0 elsewhere.
    pub fn to_parity(&self) -> ParityAutomaton {
        let sk = &self.skeleton;
        let priority = sk
            .transitions()
            .map(|t| u32::from(self.gaps[t.state] == GapValue::Bot))
            .collect();
        ParityAutomaton::new(sk.clone(), priority).expect("one priority per transition")
    }
}

/// Breadth-first exploration of gap values from `0`; terminates when gaps
/// are confined to a finite set (always the case for `λ = 1/n`).
fn gap_bfs(lambda: &Rational, k: i64) -> (Skeleton, Vec<GapValue>) {
    if k == 0 {
        // only color 0: the empty word's class is already all-winning
        let names = vec!["0".to_string()];
        return (Skeleton::from_table(ds_alphabet(0), names, 0, vec![0]), vec![GapValue::zero()]);
    }
    let colors: Vec<i64> = (-k..=k).collect();
    let mut index: HashMap<GapValue, usize> = HashMap::from([(GapValue::zero(), 0)]);
    let mut gaps = vec![GapValue::zero()];
    let mut upd = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for &c in &colors {
            let next = scalar::gap_step(&gaps[i], c, lambda, k);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    gaps.push(next.clone());
                    index.insert(next, gaps.len() - 1);
                    queue.push_back(gaps.len() - 1);
                    gaps.len() - 1
                }
            };
            upd.push(id);
        }
    }
    let names = gaps.iter().map(|g| g.to_string()).collect();
    (Skeleton::from_table(ds_alphabet(k), names, 0, upd), gaps)
}

/// The three-class automaton `[ε]`, `[1]`, `[-1]`: zeros keep the class,
/// the first non-zero color decides. Pruned to reachable classes, so `k = 0`
/// leaves only `[ε]`.
fn three_class(k: i64) -> GapAutomaton {
    let colors: Vec<i64> = (-k..=k).collect();
    let mut upd = Vec::new();
    for c in &colors {
        upd.push(match c.signum() {
            0 => 0,
            1 => 1,
            _ => 2,
        });
    }
    upd.extend(std::iter::repeat_n(1, colors.len()));
    upd.extend(std::iter::repeat_n(2, colors.len()));
    let names = vec!["[ε]".to_string(), "[1]".to_string(), "[-1]".to_string()];
    let skeleton = Skeleton::from_table(ds_alphabet(k), names, 0, upd);
    let gaps = skeleton
        .states()
        .iter()
        .map(|n| match n.as_str() {
            "[1]" => GapValue::Top,
            "[-1]" => GapValue::Bot,
            _ => GapValue::zero(),
        })
        .collect();
    GapAutomaton { skeleton, gaps }
}

/// Gap automaton for `λ = 1/n` by breadth-first search, or the three-class
/// automaton when `k < 1/λ - 1` and `λ` is not of that shape.
pub fn gap_automaton(lambda: &Rational, k: i64) -> Result<GapAutomaton> {
    check_lambda(lambda)?;
    if lambda.numer().is_one() {
        let (skeleton, gaps) = gap_bfs(lambda, k);
        Ok(GapAutomaton { skeleton, gaps })
    } else if below_three_class_bound(lambda, k) {
        Ok(three_class(k))
    } else {
        Err(infinite_index(lambda, k))
    }
}

fn infinite_index(lambda: &Rational, k: i64) -> Error {
    Error::InfiniteIndex(format!(
        "discounted sum with λ = {lambda} and k = {k}: λ is not 1/n and k ≥ ⌈1/λ - 1⌉, so the gap takes infinitely many values"
    ))
}

/// Right-congruence automaton of `DS_λ ≥ 0` following [`classify_ds`].
pub(crate) fn right_congruence(lambda: &Rational, k: i64) -> Result<Skeleton> {
    match classify_ds(lambda, k)?.verdict {
        DsVerdict::ThreeClass => Ok(three_class(k).skeleton),
        DsVerdict::FiniteGap(_) => Ok(gap_bfs(lambda, k).0),
        DsVerdict::InfiniteIndex => Err(infinite_index(lambda, k)),
    }
}

/// The discounted-sum condition as a parity automaton on its gap automaton.
pub fn gap_dpa(lambda: &Rational, k: i64) -> Result<ParityAutomaton> {
    Ok(gap_automaton(lambda, k)?.to_parity())
}

/// Digits and exact remainder of a truncated greedy expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyExpansion<S = Rational> {
    pub digits: Vec<i64>,
    /// `x - Σ digits[i] λ^i`; non-negative for `x ≥ 0`, non-positive otherwise.
    pub remainder: S,
}

/// Expansion of `x` in base `1/λ` with digits in `[0, k]` (in `[-k, 0]` for
/// negative `x`), each digit the largest keeping the partial sum at most `x`.
pub fn greedy_expansion<S: ExactScalar>(x: &S, lambda: &S, k: i64, n_digits: usize) -> Result<GreedyExpansion<S>> {
    check_lambda(lambda)?;
    if below_three_class_bound(lambda, k) {
        return Err(Error::input(format!("k = {k} is below ⌈1/λ - 1⌉ for λ = {lambda}")));
    }
    let bound = scalar::max_ds(lambda, k);
    if x.abs() > bound {
        return Err(Error::input(format!("{x} lies outside [-{bound}, {bound}]")));
    }
    if x.is_negative() {
        let pos = greedy_expansion(&-x.clone(), lambda, k, n_digits)?;
        return Ok(GreedyExpansion {
            digits: pos.digits.iter().map(|d| -d).collect(),
            remainder: -pos.remainder,
        });
    }
    let mut digits = Vec::with_capacity(n_digits);
    let mut rest = x.clone();
    let mut weight = S::one();
    let top = S::from_int(k);
    for _ in 0..n_digits {
        let d = (rest.clone() / weight.clone()).floor().min(top.clone());
        rest = rest - d.clone() * weight.clone();
        digits.push(to_i64(&d));
        weight = weight * lambda.clone();
    }
    Ok(GreedyExpansion {
        digits,
        remainder: rest,
    })
}

fn to_i64<S: ExactScalar>(d: &S) -> i64 {
    let mut n = 0i64;
    let mut v = d.clone();
    // digits are small non-negative integers
    while v >= S::one() {
        v = v - S::one();
        n += 1;
    }
    n
}

/// The gap sequence proving infinite index for `λ = p/q`, `p ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapSequence<S = Rational> {
    /// `c_1 = 1`, then `c_i = -⌊g_{i-1}⌋`.
    pub colors: Vec<i64>,
    /// `g_i = gap(c_1 … c_i)`.
    pub gaps: Vec<S>,
    pub pairwise_distinct: bool,
    /// Reduced denominator of `g_i` is exactly `p^i` for every `i`.
    pub denominators_exact: bool,
    /// `0 < g_i < 1/λ` for every `i ≥ 2`.
    pub bounded: bool,
}

impl<S> GapSequence<S> {
    pub fn all_checks_pass(&self) -> bool {
        self.pairwise_distinct && self.denominators_exact && self.bounded
    }
}

pub fn infinite_gap_sequence<S: ExactScalar>(lambda: &S, n_terms: usize) -> Result<GapSequence<S>> {
    check_lambda(lambda)?;
    let p = lambda.numerator();
    if p.is_one() {
        return Err(Error::Unsupported(format!(
            "not applicable: λ = {lambda} is of the form 1/n, where gaps stay integral"
        )));
    }
    if n_terms == 0 {
        return Err(Error::input("need at least one term"));
    }
    let inv = S::one() / lambda.clone();
    let mut colors = vec![1i64];
    let mut gaps = vec![inv.clone()];
    while gaps.len() < n_terms {
        let prev = gaps.last().expect("non-empty");
        let fl = prev.floor();
        let c = -to_i64(&fl);
        gaps.push((prev.clone() - fl) / lambda.clone());
        colors.push(c);
    }
    let distinct: BTreeSet<&S> = gaps.iter().collect();
    let denominators_exact = gaps
        .iter()
        .enumerate()
        .all(|(i, g)| g.denominator() == p.pow(i + 1));
    let bounded = gaps
        .iter()
        .skip(1)
        .all(|g| *g > S::zero() && *g < inv);
    Ok(GapSequence {
        pairwise_distinct: distinct.len() == gaps.len(),
        colors,
        gaps,
        denominators_exact,
        bounded,
    })
}

/// How an interleaving's sign was settled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolution {
    /// A partial sum over this many letters confined the value to an
    /// interval not containing zero in its interior.
    Interval { letters: usize },
    /// The interval never resolved (the value is exactly zero); the lasso's
    /// closed form decided.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterleavingOutcome {
    pub expected: Value,
    pub value: Value,
    pub resolution: Resolution,
}

impl InterleavingOutcome {
    pub fn consistent(&self) -> bool {
        self.expected == self.value
    }
}

/// Letters examined before falling back to the closed form.
const MAX_INTERVAL_LETTERS: usize = 1024;

/// Evaluates the infinite word `prefix · family[pre[0]] · family[pre[1]] ⋯
/// (family[rep[0]] ⋯)^ω` and compares it with the common value of the
/// family's cycles after `prefix`. Returns `None` for an empty family.
pub fn interleaving_check(
    lambda: &Rational,
    k: i64,
    prefix: &[i64],
    family: &[Vec<i64>],
    pre: &[usize],
    rep: &[usize],
) -> Result<Option<InterleavingOutcome>> {
    if family.is_empty() {
        return Ok(None);
    }
    if rep.is_empty() || family.iter().any(|v| v.is_empty()) {
        return Err(Error::input("cycles and the repeated block must be non-empty"));
    }
    if pre.iter().chain(rep).any(|&i| i >= family.len()) {
        return Err(Error::input("interleaving index out of range"));
    }
    let cond = ConditionSpec::discounted_sum(lambda.clone(), k)?;
    let show = |w: &[i64]| w.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    let mut expected = None;
    for v in family {
        let val = cond.value_of(&show(prefix), &show(v))?;
        match expected {
            None => expected = Some(val),
            Some(e) if e != val => {
                return Err(Error::input("cycle family mixes winning and losing cycles"))
            }
            _ => {}
        }
    }
    let expected = expected.expect("non-empty family");
    let mut u = prefix.to_vec();
    for &i in pre {
        u.extend(&family[i]);
    }
    let v: Vec<i64> = rep.iter().flat_map(|&i| family[i].iter().copied()).collect();

    let bound = scalar::max_ds(lambda, k);
    let mut letters = 16;
    while letters <= MAX_INTERVAL_LETTERS {
        let word: Vec<i64> = u.iter().chain(v.iter().cycle()).take(letters).copied().collect();
        let partial = scalar::ds_of_word(&word, lambda);
        let slack = bound.clone() * ExactScalar::pow(lambda, letters);
        if partial.clone() - slack.clone() >= Rational::zero() {
            return Ok(Some(outcome(expected, Value::Win, Resolution::Interval { letters })));
        }
        if partial + slack < Rational::zero() {
            return Ok(Some(outcome(expected, Value::Lose, Resolution::Interval { letters })));
        }
        letters *= 2;
    }
    let value = Value::from_win(scalar::ds_of_lasso(&u, &v, lambda) >= Rational::zero());
    Ok(Some(outcome(expected, value, Resolution::Exact)))
}

fn outcome(expected: Value, value: Value, resolution: Resolution) -> InterleavingOutcome {
    InterleavingOutcome {
        expected,
        value,
        resolution,
    }
}

/// One failing sample of the cycle-consistency demo.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemoFailure {
    pub sample: u64,
    pub prefix: Vec<i64>,
    pub family: Vec<Vec<i64>>,
    pub pre: Vec<usize>,
    pub rep: Vec<usize>,
    pub outcome: InterleavingOutcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DsDemoReport {
    pub samples: u64,
    pub vacuous: u64,
    pub consistent: u64,
    pub resolved_by_interval: u64,
    pub resolved_exactly: u64,
    pub failures: Vec<DemoFailure>,
}

impl DsDemoReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Samples prefixes and same-valued cycle families after them, and checks
/// that random interleavings of the family keep that value.
pub fn ds_cycle_consistency_demo(lambda: &Rational, k: i64, samples: u64, seed: u64) -> Result<DsDemoReport> {
    let cond = ConditionSpec::discounted_sum(lambda.clone(), k)?;
    let show = |w: &[i64]| w.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    let mut report = DsDemoReport {
        samples,
        ..Default::default()
    };
    for sample in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(sample);
        let word = |rng: &mut ChaCha8Rng, lo: usize, hi: usize| -> Vec<i64> {
            let n = rng.random_range(lo..=hi);
            (0..n).map(|_| rng.random_range(-k..=k)).collect()
        };
        let prefix = word(&mut rng, 0, 3);
        let target = Value::from_win(rng.random_bool(0.5));
        let size = rng.random_range(1..=3);
        let mut family = Vec::new();
        for _ in 0..40 {
            if family.len() == size {
                break;
            }
            let v = word(&mut rng, 1, 3);
            if cond.value_of(&show(&prefix), &show(&v))? == target {
                family.push(v);
            }
        }
        let pre: Vec<usize> = (0..rng.random_range(0..=3))
            .map(|_| rng.random_range(0..family.len().max(1)))
            .collect();
        let rep: Vec<usize> = (0..rng.random_range(1..=4))
            .map(|_| rng.random_range(0..family.len().max(1)))
            .collect();
        match interleaving_check(lambda, k, &prefix, &family, &pre, &rep)? {
            None => report.vacuous += 1,
            Some(o) => {
                match o.resolution {
                    Resolution::Interval { .. } => report.resolved_by_interval += 1,
                    Resolution::Exact => report.resolved_exactly += 1,
                }
                if o.consistent() {
                    report.consistent += 1;
                } else {
                    report.failures.push(DemoFailure {
                        sample,
                        prefix,
                        family,
                        pre,
                        rep,
                        outcome: o,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::from_frac(p, q)
    }

    #[test]
    fn classification_cases() {
        assert_eq!(classify_ds(&r(2, 5), 1).unwrap().verdict, DsVerdict::ThreeClass);
        assert_eq!(classify_ds(&r(1, 2), 2).unwrap().verdict, DsVerdict::FiniteGap(6));
        assert_eq!(classify_ds(&r(2, 3), 1).unwrap().verdict, DsVerdict::InfiniteIndex);
        assert_eq!(classify_ds(&r(1, 2), 0).unwrap().verdict, DsVerdict::ThreeClass);
        assert_eq!(classify_ds(&r(1, 2), 1).unwrap().verdict, DsVerdict::FiniteGap(4));
        assert!(classify_ds(&r(3, 2), 1).is_err());
    }

    #[test]
    fn three_class_automaton_for_two_fifths() {
        let g = gap_automaton(&r(2, 5), 1).unwrap();
        assert_eq!(g.skeleton.states(), ["[ε]", "[-1]", "[1]"]);
        let zero = g.skeleton.color_index("0").unwrap();
        assert_eq!(g.skeleton.succ(0, zero), 0);
    }

    #[test]
    fn small_gap_automata() {
        let g = gap_automaton(&r(1, 2), 0).unwrap();
        assert_eq!(g.skeleton.states(), ["0"]);
        let g = gap_automaton(&r(1, 3), 1).unwrap();
        let states: BTreeSet<&str> = g.skeleton.states().iter().map(|s| s.as_str()).collect();
        assert_eq!(states, BTreeSet::from(["0", "top", "bot"]));
        assert!(matches!(gap_automaton(&r(2, 3), 1), Err(Error::InfiniteIndex(_))));
    }

    #[test]
    fn greedy_one_third_in_base_two() {
        let e = greedy_expansion(&r(1, 3), &r(1, 2), 1, 6).unwrap();
        assert_eq!(e.digits, vec![0, 0, 1, 0, 1, 0]);
        assert_eq!(e.remainder, r(1, 48));
        let zero = greedy_expansion(&r(0, 1), &r(1, 2), 1, 5).unwrap();
        assert_eq!(zero.digits, vec![0; 5]);
        assert!(zero.remainder.is_zero());
        let neg = greedy_expansion(&r(-1, 3), &r(1, 2), 1, 6).unwrap();
        assert_eq!(neg.digits, vec![0, 0, -1, 0, -1, 0]);
        assert_eq!(neg.remainder, r(-1, 48));
    }

    #[test]
    fn greedy_maximal_value() {
        let (l, k) = (r(2, 3), 1);
        let x = scalar::max_ds(&l, k);
        let e = greedy_expansion(&x, &l, k, 7).unwrap();
        assert_eq!(e.digits, vec![1; 7]);
        assert_eq!(e.remainder, x * l.pow(7));
    }

    #[test]
    fn greedy_rejects_bad_input() {
        assert!(greedy_expansion(&r(5, 1), &r(1, 2), 1, 4).is_err());
        assert!(greedy_expansion(&r(0, 1), &r(2, 5), 1, 4).is_err());
    }

    #[test]
    fn infinite_gaps_for_two_thirds() {
        let s = infinite_gap_sequence(&r(2, 3), 20).unwrap();
        assert_eq!(s.gaps[0], r(3, 2));
        assert_eq!(s.gaps[1], r(3, 4));
        assert_eq!(s.colors[1], -1);
        assert!(s.all_checks_pass());
        assert!(matches!(infinite_gap_sequence(&r(1, 2), 5), Err(Error::Unsupported(_))));
    }

    #[test]
    fn mixed_family_is_rejected() {
        let err = interleaving_check(&r(1, 2), 2, &[], &[vec![1], vec![-1]], &[], &[0]);
        assert!(matches!(err, Err(Error::Input(_))));
        assert_eq!(interleaving_check(&r(1, 2), 2, &[], &[], &[], &[0]).unwrap(), None);
    }

    #[test]
    fn balanced_interleaving_needs_closed_form() {
        // After prefix 1 the gap is 2; the cycle -1 keeps it there, so the
        // value is exactly zero.
        let o = interleaving_check(&r(1, 2), 2, &[1], &[vec![-1]], &[], &[0])
            .unwrap()
            .unwrap();
        assert_eq!(o.resolution, Resolution::Exact);
        assert!(o.consistent());
    }
}
