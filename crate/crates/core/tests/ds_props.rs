use chromatic::condition::ds_alphabet;
use chromatic::ds::{gap_automaton, gap_dpa, greedy_expansion, infinite_gap_sequence};
use chromatic::{ConditionSpec, Rational, Skeleton};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn max_ds(lambda: &Rational, k: i64) -> Rational {
    Rational::from_integer(k.into()) / (Rational::one() - lambda)
}

/// Parameters with a finite-index right congruence.
fn finite_cases() -> Vec<(Rational, i64)> {
    vec![
        (rat(1, 2), 1),
        (rat(1, 2), 2),
        (rat(1, 2), 3),
        (rat(1, 3), 1),
        (rat(1, 3), 2),
        (rat(1, 4), 1),
        (rat(2, 5), 1),
        (rat(1, 3), 3),
    ]
}

#[test]
fn gap_labels_follow_the_recurrence() {
    for (lambda, k) in finite_cases() {
        let g = gap_automaton(&lambda, k).unwrap();
        let sk = &g.skeleton;
        if !lambda.numer().is_one() {
            continue;
        }
        let max = max_ds(&lambda, k);
        for t in sk.transitions() {
            let (from, to) = (sk.state_name(t.state), sk.state_name(sk.target(t)));
            let c: i64 = sk.color_name(t.color).parse().unwrap();
            match from {
                "top" | "bot" => assert_eq!(to, from, "sinks are absorbing"),
                _ => {
                    let g0: Rational = from.parse().unwrap();
                    let raw = (g0 + Rational::from_integer(c.into())) / &lambda;
                    let want = if raw >= max {
                        "top".to_string()
                    } else if raw < -max.clone() {
                        "bot".to_string()
                    } else {
                        raw.to_string()
                    };
                    assert_eq!(to, want, "λ={lambda} k={k} from {from} reading {c}");
                }
            }
        }
    }
}

/// Gap class of a word, recomputed from its discounted sum.
fn direct_class(w: &[i64], lambda: &Rational, k: i64) -> String {
    let mut ds = Rational::zero();
    let mut pow = Rational::one();
    for &c in w {
        ds += Rational::from_integer(c.into()) * &pow;
        pow *= lambda;
    }
    let g = ds / pow;
    let max = max_ds(lambda, k);
    if g >= max {
        "top".into()
    } else if g < -max {
        "bot".into()
    } else {
        g.to_string()
    }
}

/// Breadth-first exploration of gap classes over words, independent of the
/// library's gap arithmetic.
fn direct_automaton(lambda: &Rational, k: i64) -> Skeleton {
    let alphabet = ds_alphabet(k);
    let mut reps: Vec<Vec<i64>> = vec![vec![]];
    let mut names = vec![direct_class(&[], lambda, k)];
    let mut upd = Vec::new();
    let mut i = 0;
    while i < reps.len() {
        for c in -k..=k {
            let w: Vec<i64> = reps[i].iter().copied().chain([c]).collect();
            let class = direct_class(&w, lambda, k);
            if !names.contains(&class) {
                names.push(class.clone());
                reps.push(w);
            }
            upd.push((names[i].clone(), c.to_string(), class));
        }
        i += 1;
        assert!(reps.len() < 200, "gap classes do not close up");
    }
    let init = names[0].clone();
    Skeleton::new(alphabet, names, &init, &upd).unwrap()
}

#[test]
fn gap_automaton_is_the_right_congruence_automaton() {
    for (lambda, k) in finite_cases() {
        let g = gap_automaton(&lambda, k).unwrap();
        if lambda.numer().is_one() {
            let direct = direct_automaton(&lambda, k);
            assert!(g.skeleton.is_isomorphic(&direct), "λ={lambda} k={k}");
        }
        // minimizing the parity form merges nothing
        let minimized = ConditionSpec::Dpa(gap_dpa(&lambda, k).unwrap())
            .right_congruence_automaton()
            .unwrap();
        assert!(g.skeleton.is_isomorphic(&minimized), "λ={lambda} k={k}");
        let rc = ConditionSpec::discounted_sum(lambda.clone(), k)
            .unwrap()
            .right_congruence_automaton()
            .unwrap();
        assert!(g.skeleton.is_isomorphic(&rc), "λ={lambda} k={k}");
    }
}

#[test]
fn gap_sequences_have_exact_denominators() {
    for (p, q) in [(2, 3), (3, 4), (2, 5)] {
        let lambda = rat(p, q);
        let s = infinite_gap_sequence(&lambda, 15).unwrap();
        assert!(s.all_checks_pass(), "λ={lambda}");
        for (i, g) in s.gaps.iter().enumerate() {
            let pp: num_bigint::BigInt = num_traits::pow(p.into(), i + 1);
            assert_eq!(g.denom(), &pp, "g_{} = {g}", i + 1);
        }
        let distinct: std::collections::BTreeSet<_> = s.gaps.iter().collect();
        assert_eq!(distinct.len(), s.gaps.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn greedy_remainders_shrink_within_the_tail_bound(
        (p, q) in proptest::sample::select(vec![(1i64, 2i64), (1, 3), (2, 3), (3, 4)]),
        extra_k in 0i64..2,
        num in -1000i64..=1000,
    ) {
        let lambda = rat(p, q);
        // smallest admissible k, plus a margin
        let k = ((q - p) + p - 1) / p + extra_k;
        let max = max_ds(&lambda, k);
        let x = max.clone() * rat(num, 1000);
        let mut prev: Option<Rational> = None;
        for n in [0usize, 1, 2, 4, 8, 16, 32, 64] {
            let r = greedy_expansion(&x, &lambda, k, n).unwrap();
            prop_assert_eq!(r.digits.len(), n);
            // exact remainder
            let mut sum = Rational::zero();
            let mut pow = Rational::one();
            for &d in &r.digits {
                prop_assert!(d.abs() <= k);
                sum += Rational::from_integer(d.into()) * &pow;
                pow *= &lambda;
            }
            prop_assert_eq!(&r.remainder, &(x.clone() - sum));
            prop_assert!(r.remainder.is_zero() || r.remainder.is_positive() == x.is_positive());
            prop_assert!(r.remainder.abs() <= max.clone() * &pow, "n={}", n);
            if let Some(prev) = &prev {
                prop_assert!(r.remainder.abs() <= prev.abs());
            }
            prev = Some(r.remainder);
        }
    }
}
