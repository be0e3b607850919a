#![allow(dead_code)]

use std::collections::BTreeMap;

use chromatic::Skeleton;
use proptest::prelude::*;

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Skeleton from a flat update table, restricted to the states reachable
/// from state 0.
pub fn skeleton_from_table(alphabet: &[String], n: usize, table: &[usize]) -> Skeleton {
    let nc = alphabet.len();
    let mut index = BTreeMap::new();
    let mut order = vec![0];
    index.insert(0, 0);
    let mut i = 0;
    while i < order.len() {
        let s = order[i];
        for c in 0..nc {
            let t = table[s * nc + c] % n;
            if let std::collections::btree_map::Entry::Vacant(e) = index.entry(t) {
                e.insert(order.len());
                order.push(t);
            }
        }
        i += 1;
    }
    let state = |s: usize| format!("q{}", index[&s]);
    let states = (0..order.len()).map(|i| format!("q{i}")).collect();
    let upd: Vec<(String, String, String)> = order
        .iter()
        .flat_map(|&s| (0..nc).map(move |c| (s, c)))
        .map(|(s, c)| (state(s), alphabet[c].clone(), state(table[s * nc + c] % n)))
        .collect();
    Skeleton::new(alphabet.to_vec(), states, "q0", &upd).expect("reachable total skeleton")
}

/// Random skeletons with at most `max_states` states over `alphabet`.
pub fn skeleton_over(alphabet: Vec<String>, max_states: usize) -> impl Strategy<Value = Skeleton> {
    let nc = alphabet.len();
    (1..=max_states)
        .prop_flat_map(move |n| (Just(n), proptest::collection::vec(0..n, n * nc)))
        .prop_map(move |(n, table)| skeleton_from_table(&alphabet, n, &table))
}

pub fn abc() -> Vec<String> {
    vec!["a".into(), "b".into(), "c".into()]
}

/// Word over `alphabet` with length in `len`.
pub fn word_over(alphabet: Vec<String>, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<String>> {
    proptest::collection::vec(proptest::sample::select(alphabet), len)
}
