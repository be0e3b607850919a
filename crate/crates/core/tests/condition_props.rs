mod common;

use chromatic::condition::ds_alphabet;
use chromatic::fixtures::{ab_prefix, buchi_ab, competition_automaton, competition_muller, ds_half};
use chromatic::{ConditionSpec, GapValue, ParityAutomaton, Rational, ResidualOrder, Value};
use common::{abc, skeleton_over, word_over};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Every condition with a lasso generator over its alphabet.
fn conditions() -> Vec<(ConditionSpec, Vec<String>)> {
    vec![
        (buchi_ab(), abc()),
        (ab_prefix(), vec!["a".into(), "b".into()]),
        (ConditionSpec::Dpa(competition_automaton()), abc()),
        (competition_muller(), abc()),
        (ds_half(), ds_alphabet(2)),
        (ConditionSpec::discounted_sum(rat(2, 3), 1).unwrap(), ds_alphabet(1)),
        (ConditionSpec::MeanPayoff { colors: Some(vec![-1, 0, 1]) }, ds_alphabet(1)),
        (ConditionSpec::TotalPayoff { colors: Some(vec![-1, 0, 1]) }, ds_alphabet(1)),
    ]
}

fn any_lasso() -> impl Strategy<Value = (usize, Vec<String>, Vec<String>, usize, usize)> {
    (0..conditions().len()).prop_flat_map(|i| {
        let alphabet = conditions()[i].1.clone();
        (
            Just(i),
            word_over(alphabet.clone(), 0..=5),
            word_over(alphabet, 1..=5),
            0usize..5,
            1usize..4,
        )
    })
}

fn lambdas() -> impl Strategy<Value = (Rational, i64)> {
    (
        proptest::sample::select(vec![(1, 2), (1, 3), (2, 5), (2, 3), (3, 4)]),
        1i64..=3,
    )
        .prop_map(|((p, q), k)| (rat(p, q), k))
}

/// `Σ w_i λ^i` computed directly.
fn ds_direct(w: &[i64], lambda: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut pow = Rational::one();
    for &c in w {
        acc += Rational::from_integer(c.into()) * &pow;
        pow *= lambda;
    }
    acc
}

fn powi(x: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lasso_value_ignores_rotation_and_repetition((i, u, v, rot, reps) in any_lasso()) {
        let (cond, _) = &conditions()[i];
        let base = cond.value_of(&u, &v).unwrap();
        let repeated: Vec<String> = v.iter().cycle().take(v.len() * (reps + 1)).cloned().collect();
        prop_assert_eq!(cond.value_of(&u, &repeated).unwrap(), base);
        let r = rot % v.len();
        let mut shifted = u.clone();
        shifted.extend_from_slice(&v[..r]);
        let rotated: Vec<String> = v[r..].iter().chain(&v[..r]).cloned().collect();
        prop_assert_eq!(cond.value_of(&shifted, &rotated).unwrap(), base);
    }

    #[test]
    fn gap_matches_direct_recomputation(
        (lambda, k) in lambdas(),
        raw in proptest::collection::vec(-3i64..=3, 0..12),
    ) {
        let w: Vec<i64> = raw.into_iter().map(|c| c.clamp(-k, k)).collect();
        let g = ds_direct(&w, &lambda) / powi(&lambda, w.len());
        let max = Rational::from_integer(k.into()) / (Rational::one() - &lambda);
        let want = if g >= max {
            GapValue::Top
        } else if g < -max.clone() {
            GapValue::Bot
        } else {
            GapValue::Finite(g)
        };
        prop_assert_eq!(chromatic::condition::gap(&w, &lambda, k), want);
    }

    #[test]
    fn ds_value_follows_gap(
        (lambda, k) in lambdas(),
        u in proptest::collection::vec(-3i64..=3, 0..6),
        v in proptest::collection::vec(-3i64..=3, 1..6),
    ) {
        let u: Vec<i64> = u.into_iter().map(|c| c.clamp(-k, k)).collect();
        let v: Vec<i64> = v.into_iter().map(|c| c.clamp(-k, k)).collect();
        let cond = ConditionSpec::discounted_sum(lambda.clone(), k).unwrap();
        let names = |w: &[i64]| w.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let value = cond.value_of(&names(&u), &names(&v)).unwrap();
        // DS(v^ω) = DS(v) / (1 - λ^|v|)
        let tail = ds_direct(&v, &lambda) / (Rational::one() - powi(&lambda, v.len()));
        let want = match chromatic::condition::gap(&u, &lambda, k) {
            GapValue::Top => Value::Win,
            GapValue::Bot => Value::Lose,
            GapValue::Finite(g) => Value::from_win(tail >= -g),
        };
        prop_assert_eq!(value, want);
    }

    #[test]
    fn right_congruence_states_are_distinct_classes(
        d in skeleton_over(abc(), 3)
            .prop_flat_map(|m| {
                let n = m.num_transitions();
                (Just(m), proptest::collection::vec(0u32..3, n))
            })
            .prop_map(|(m, pr)| ParityAutomaton::new(m, pr).unwrap()),
        w in word_over(abc(), 0..=6),
    ) {
        let cond = ConditionSpec::Dpa(d);
        let rc = cond.right_congruence_automaton().unwrap();
        let access: Vec<Vec<String>> = rc.access_words().iter().map(|w| rc.decode(w)).collect();
        for i in 0..access.len() {
            for j in i + 1..access.len() {
                prop_assert_ne!(cond.residual_compare(&access[i], &access[j]).unwrap(), ResidualOrder::Equal);
            }
        }
        let q = rc.state_after(rc.init(), &rc.encode(&w).unwrap());
        prop_assert_eq!(cond.residual_compare(&w, &access[q]).unwrap(), ResidualOrder::Equal);
    }
}

#[test]
fn total_payoff_has_infinite_index() {
    let tp = ConditionSpec::TotalPayoff { colors: Some(vec![-1, 0, 1]) };
    assert!(matches!(tp.right_congruence_automaton(), Err(chromatic::Error::InfiniteIndex(_))));
    let w = |n: usize| vec!["1".to_string(); n];
    assert_eq!(tp.residual_compare(&w(3), &w(2)).unwrap(), ResidualOrder::Greater);
}
