//! The small worked examples used throughout the tests, the acceptance suite
//! and the command-line examples.

use crate::condition::{ConditionSpec, MullerCondition};
use crate::skeleton::{ParityAutomaton, Skeleton};
use crate::{Rational, DEFAULT_SUPPORT_CAP};

/// Two-state skeleton over `{a, b, c}` remembering whether the last `a`/`b`
/// was an `a` (state `init`) or a `b` (state `m2`).
pub fn buchi_ab_skeleton() -> Skeleton {
    Skeleton::from_edges(
        &["a", "b", "c"],
        "init",
        &[
            ("init", "a", "init"),
            ("init", "b", "m2"),
            ("init", "c", "init"),
            ("m2", "a", "init"),
            ("m2", "b", "m2"),
            ("m2", "c", "m2"),
        ],
    )
    .expect("valid skeleton")
}

/// `Büchi(a) ∩ Büchi(b)` over `{a, b, c}`.
pub fn buchi_ab() -> ConditionSpec {
    ConditionSpec::Muller(
        MullerCondition::generalized_buchi(&["a", "b", "c"], &["a", "b"]).expect("valid colors"),
    )
}

/// Parity automaton with states `m1`, `m2` over `{a, b, c}`:
/// `m1 -a|2-> m2`, `m1 -b|1-> m1`, `m1 -c|3-> m1`, `m2 -a|2-> m1`,
/// `m2 -b,c|0-> m2`.
pub fn competition_automaton() -> ParityAutomaton {
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
    .expect("valid automaton")
}

/// [`competition_automaton`] as an explicit Muller table on its skeleton.
pub fn competition_muller() -> ConditionSpec {
    ConditionSpec::Muller(
        MullerCondition::from_parity(&competition_automaton(), DEFAULT_SUPPORT_CAP)
            .expect("small automaton"),
    )
}

/// `ab{a,b}^ω` as a parity automaton.
pub fn ab_prefix() -> ConditionSpec {
    ConditionSpec::Dpa(
        ParityAutomaton::from_edges(
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
        .expect("valid automaton"),
    )
}

/// Skeleton over `{a, b}` that ignores `a` in its initial state.
pub fn ab_prefix_skeleton() -> Skeleton {
    Skeleton::from_edges(
        &["a", "b"],
        "init",
        &[("init", "a", "init"), ("init", "b", "m2"), ("m2", "a", "m2"), ("m2", "b", "m2")],
    )
    .expect("valid skeleton")
}

/// `DS_{1/2} ≥ 0` over colors `-2, …, 2`.
pub fn ds_half() -> ConditionSpec {
    ConditionSpec::discounted_sum(Rational::new(1.into(), 2.into()), 2).expect("valid parameters")
}
