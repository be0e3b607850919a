//! JSON documents for skeletons, parity automata, conditions, arenas and
//! strategies. Every document carries `"format": 1` and a `"type"` tag;
//! object keys come out sorted, so equal values serialize to equal bytes.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use crate::condition::{ConditionSpec, MullerCondition};
use crate::error::{Error, Result};
use crate::games::{Arena, Player, SkeletonStrategy};
use crate::skeleton::{ParityAutomaton, Skeleton, Transition};
use crate::support::CycleSupport;
use crate::{Rational, DEFAULT_SUPPORT_CAP};

pub const FORMAT: u64 = 1;

/// Pretty-printed JSON with a trailing newline.
pub fn to_canonical_string(v: &Json) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Json> {
    Ok(serde_json::from_str(text)?)
}

fn check_header(v: &Json, ty: &str) -> Result<()> {
    match v.get("format") {
        Some(f) if f.as_u64() == Some(FORMAT) => {}
        Some(f) => return Err(Error::input(format!("unsupported format {f}"))),
        None => return Err(Error::input("missing \"format\" field")),
    }
    match v.get("type").and_then(Json::as_str) {
        Some(t) if t == ty => Ok(()),
        Some(t) => Err(Error::input(format!("expected a {ty} document, found {t}"))),
        None => Err(Error::input("missing \"type\" field")),
    }
}

fn field<T: for<'de> Deserialize<'de>>(v: &Json) -> Result<T> {
    Ok(T::deserialize(v)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSkeleton {
    format: u64,
    #[serde(rename = "type")]
    ty: String,
    alphabet: Vec<String>,
    states: Vec<String>,
    init: String,
    upd: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    priority: Option<Vec<(String, String, u32)>>,
}

fn raw_skeleton(m: &Skeleton, ty: &str) -> RawSkeleton {
    RawSkeleton {
        format: FORMAT,
        ty: ty.to_string(),
        alphabet: m.alphabet().to_vec(),
        states: m.states().to_vec(),
        init: m.state_name(m.init()).to_string(),
        upd: m.named_edges(),
        priority: None,
    }
}

pub fn skeleton_to_json(m: &Skeleton) -> Json {
    serde_json::to_value(raw_skeleton(m, "skeleton")).expect("serializable")
}

pub fn skeleton_from_json(v: &Json) -> Result<Skeleton> {
    check_header(v, "skeleton")?;
    let r: RawSkeleton = field(v)?;
    if r.priority.is_some() {
        return Err(Error::input("a skeleton has no priorities"));
    }
    Skeleton::new(r.alphabet, r.states, &r.init, &r.upd)
}

pub fn parity_to_json(a: &ParityAutomaton) -> Json {
    let m = a.skeleton();
    let mut r = raw_skeleton(m, "parity-automaton");
    r.priority = Some(
        m.transitions()
            .map(|t| {
                (
                    m.state_name(t.state).to_string(),
                    m.color_name(t.color).to_string(),
                    a.priority(t),
                )
            })
            .collect(),
    );
    serde_json::to_value(r).expect("serializable")
}

pub fn parity_from_json(v: &Json) -> Result<ParityAutomaton> {
    check_header(v, "parity-automaton")?;
    let r: RawSkeleton = field(v)?;
    let prios = r.priority.ok_or_else(|| Error::input("missing \"priority\" field"))?;
    let m = Skeleton::new(r.alphabet, r.states, &r.init, &r.upd)?;
    let mut table = vec![None; m.num_transitions()];
    for (s, c, p) in prios {
        let t = Transition {
            state: m.state_index(&s)?,
            color: m.color_index(&c)?,
        };
        let slot = &mut table[m.transition_id(t)];
        if slot.is_some() {
            return Err(Error::input(format!("priority of ({s}, {c}) given twice")));
        }
        *slot = Some(p);
    }
    let priority = table
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            p.ok_or_else(|| {
                let t = m.transition_at(i);
                Error::input(format!(
                    "no priority for ({}, {})",
                    m.state_name(t.state),
                    m.color_name(t.color)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ParityAutomaton::new(m, priority)
}

/// A skeleton document, or the skeleton of a parity-automaton document.
pub fn skeleton_like_from_json(v: &Json) -> Result<Skeleton> {
    match v.get("type").and_then(Json::as_str) {
        Some("parity-automaton") => Ok(parity_from_json(v)?.skeleton().clone()),
        _ => skeleton_from_json(v),
    }
}

fn rational_to_json(q: &Rational) -> Json {
    json!([q.numer().to_i64(), q.denom().to_i64()])
}

/// Parses `"p/q"`, `"n"` or `[p, q]`.
pub fn rational_from_json(v: &Json) -> Result<Rational> {
    match v {
        Json::String(s) => parse_rational(s),
        Json::Array(xs) if xs.len() == 2 => {
            let n = xs[0].as_i64().ok_or_else(|| Error::input("numerator must be an integer"))?;
            let d = xs[1].as_i64().ok_or_else(|| Error::input("denominator must be an integer"))?;
            if d == 0 {
                return Err(Error::input("zero denominator"));
            }
            Ok(Rational::new(n.into(), d.into()))
        }
        _ => Err(Error::input(format!("not a rational: {v}"))),
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::input(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::new(n.into(), d.into()))
}

pub fn condition_to_json(c: &ConditionSpec) -> Json {
    let mut v = match c {
        ConditionSpec::Dpa(a) => json!({"kind": "dpa", "automaton": parity_to_json(a)}),
        ConditionSpec::Muller(m) => {
            let sk = m.skeleton();
            let winning: Vec<Vec<(String, String)>> = m.winning().iter().map(|s| s.named(sk)).collect();
            json!({"kind": "muller", "skeleton": skeleton_to_json(sk), "winning": winning})
        }
        ConditionSpec::DiscountedSum { lambda, k } => {
            json!({"kind": "discounted-sum", "lambda": rational_to_json(lambda), "k": k})
        }
        ConditionSpec::MeanPayoff { colors } => json!({"kind": "mean-payoff", "colors": colors}),
        ConditionSpec::TotalPayoff { colors } => json!({"kind": "total-payoff", "colors": colors}),
    };
    let o = v.as_object_mut().expect("object");
    o.insert("format".into(), json!(FORMAT));
    o.insert("type".into(), json!("condition"));
    if o.get("colors").is_some_and(Json::is_null) {
        o.remove("colors");
    }
    v
}

/// Reads a condition. Besides the kinds written by [`condition_to_json`],
/// `{"kind": "generalized-buchi", "alphabet": [...], "required": [...]}`
/// builds the Muller table of a generalized Büchi condition.
pub fn condition_from_json(v: &Json) -> Result<ConditionSpec> {
    check_header(v, "condition")?;
    let kind = v
        .get("kind")
        .and_then(Json::as_str)
        .ok_or_else(|| Error::input("missing \"kind\" field"))?;
    let get = |k: &str| v.get(k).ok_or_else(|| Error::input(format!("missing \"{k}\" field")));
    let colors = || -> Result<Option<Vec<i64>>> {
        match v.get("colors") {
            None | Some(Json::Null) => Ok(None),
            Some(c) => Ok(Some(field(c)?)),
        }
    };
    match kind {
        "dpa" => Ok(ConditionSpec::Dpa(parity_from_json(get("automaton")?)?)),
        "muller" => {
            let sk = skeleton_from_json(get("skeleton")?)?;
            let sets: Vec<Vec<(String, String)>> = field(get("winning")?)?;
            let winning = sets
                .iter()
                .map(|s| {
                    let pairs: Vec<(&str, &str)> = s.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                    CycleSupport::from_names(&sk, &pairs)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ConditionSpec::Muller(MullerCondition::new(sk, winning)))
        }
        "generalized-buchi" => {
            let alphabet: Vec<String> = field(get("alphabet")?)?;
            let required: Vec<String> = field(get("required")?)?;
            let a: Vec<&str> = alphabet.iter().map(String::as_str).collect();
            let r: Vec<&str> = required.iter().map(String::as_str).collect();
            Ok(ConditionSpec::Muller(MullerCondition::generalized_buchi(&a, &r)?))
        }
        "parity-muller" => {
            // the Muller table of a parity automaton on its own skeleton
            let a = parity_from_json(get("automaton")?)?;
            Ok(ConditionSpec::Muller(MullerCondition::from_parity(&a, DEFAULT_SUPPORT_CAP)?))
        }
        "discounted-sum" => {
            let lambda = rational_from_json(get("lambda")?)?;
            let k = get("k")?.as_i64().ok_or_else(|| Error::input("k must be an integer"))?;
            ConditionSpec::discounted_sum(lambda, k)
        }
        "mean-payoff" => Ok(ConditionSpec::MeanPayoff { colors: colors()? }),
        "total-payoff" => Ok(ConditionSpec::TotalPayoff { colors: colors()? }),
        other => Err(Error::input(format!("unknown condition kind {other:?}"))),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArena {
    format: u64,
    #[serde(rename = "type")]
    ty: String,
    alphabet: Vec<String>,
    states: Vec<String>,
    owner: BTreeMap<String, String>,
    edges: Vec<(String, String, String)>,
}

pub fn arena_to_json(a: &Arena) -> Json {
    let r = RawArena {
        format: FORMAT,
        ty: "arena".into(),
        alphabet: a.alphabet().to_vec(),
        states: a.states().to_vec(),
        owner: (0..a.num_states())
            .map(|s| (a.states()[s].clone(), a.owner(s).to_string()))
            .collect(),
        edges: a.named_edges(),
    };
    serde_json::to_value(r).expect("serializable")
}

pub fn arena_from_json(v: &Json) -> Result<Arena> {
    check_header(v, "arena")?;
    let r: RawArena = field(v)?;
    let states = r
        .states
        .iter()
        .map(|s| {
            let o = r
                .owner
                .get(s)
                .ok_or_else(|| Error::input(format!("no owner for state {s:?}")))?;
            Ok((s.clone(), o.parse::<Player>()?))
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(extra) = r.owner.keys().find(|k| !r.states.contains(k)) {
        return Err(Error::UnknownState(extra.clone()));
    }
    Arena::new(r.alphabet, states, &r.edges)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStrategy {
    format: u64,
    #[serde(rename = "type")]
    ty: String,
    player: String,
    skeleton: Json,
    /// `[arena state, memory state, color, target]`
    next: Vec<(String, String, String, String)>,
}

pub fn strategy_to_json(a: &Arena, s: &SkeletonStrategy) -> Json {
    let sk = &s.skeleton;
    let next = s
        .entries()
        .map(|((st, m), e)| {
            let edge = a.edges()[e];
            (
                a.states()[st].clone(),
                sk.state_name(m).to_string(),
                a.color_name(edge.color).to_string(),
                a.states()[edge.dst].clone(),
            )
        })
        .collect();
    let r = RawStrategy {
        format: FORMAT,
        ty: "strategy".into(),
        player: s.player.to_string(),
        skeleton: skeleton_to_json(sk),
        next,
    };
    serde_json::to_value(r).expect("serializable")
}

pub fn strategy_from_json(a: &Arena, v: &Json) -> Result<SkeletonStrategy> {
    check_header(v, "strategy")?;
    let r: RawStrategy = field(v)?;
    let player: Player = r.player.parse()?;
    let sk = skeleton_from_json(&r.skeleton)?;
    let mut nxt = BTreeMap::new();
    for (s, m, c, t) in &r.next {
        let key = (a.state_index(s)?, sk.state_index(m)?);
        if nxt.insert(key, a.find_edge(s, c, t)?).is_some() {
            return Err(Error::input(format!("move at ({s}, {m}) given twice")));
        }
    }
    SkeletonStrategy::new(a, player, sk, nxt)
}
