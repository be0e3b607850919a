//! Parity synthesis through cycle competition: label cycle supports, compare
//! opposite-valued supports through witnesses, order the classes of the
//! resulting preorder, and read transition priorities off a linear extension.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};
use std::cmp::Reverse;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::condition::{ConditionSpec, Lasso, Value};
use crate::consistency::{check_cycle_consistency_capped, check_prefix_independence, residual_product, Witness};
use crate::error::{Error, Result};
use crate::skeleton::{ParityAutomaton, Skeleton, Transition};
use crate::support::{enumerate_cycle_supports, CycleSupport};
use crate::DEFAULT_SUPPORT_CAP;

/// Which of two competing supports dominates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    First,
    Second,
}

/// Cycle supports of a skeleton labeled by a condition whose values are
/// well defined per support.
#[derive(Clone, Debug)]
pub struct CycleAnalysis<'a> {
    m: &'a Skeleton,
    cond: &'a ConditionSpec,
    access: Vec<Vec<usize>>,
    supports: Vec<CycleSupport>,
    values: Vec<Value>,
    index: HashMap<CycleSupport, usize>,
}

impl<'a> CycleAnalysis<'a> {
    /// Runs both consistency checks on `(cond, m)` and labels every support.
    pub fn new(m: &'a Skeleton, cond: &'a ConditionSpec, cap: usize) -> Result<Self> {
        let pi = check_prefix_independence(cond, m)?;
        if let Some(w) = pi.witness {
            return Err(Error::Precondition {
                check: "prefix-independence",
                detail: describe_witness(&w),
            });
        }
        let cc = check_cycle_consistency_capped(cond, m, cap)?;
        if let Some(w) = cc.witness {
            return Err(Error::Precondition {
                check: "cycle-consistency",
                detail: describe_witness(&w),
            });
        }
        Self::unchecked(m, cond, cap)
    }

    /// Labels supports without the consistency checks.
    pub(crate) fn unchecked(m: &'a Skeleton, cond: &'a ConditionSpec, cap: usize) -> Result<Self> {
        let supports = enumerate_cycle_supports(m, cap)?;
        if supports.is_empty() {
            return Err(Error::input("skeleton has no cycle supports"));
        }
        let access = m.access_words();
        let values = supports
            .iter()
            .map(|s| cond.support_value(m, &access, s))
            .collect::<Result<Vec<_>>>()?;
        let index = supports.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(CycleAnalysis {
            m,
            cond,
            access,
            supports,
            values,
            index,
        })
    }

    pub fn skeleton(&self) -> &Skeleton {
        self.m
    }

    /// Supports in canonical order.
    pub fn supports(&self) -> &[CycleSupport] {
        &self.supports
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn classified(&self) -> Vec<(CycleSupport, Value)> {
        self.supports.iter().cloned().zip(self.values.iter().copied()).collect()
    }

    pub fn value(&self, s: &CycleSupport) -> Result<Value> {
        match self.index.get(s) {
            Some(&i) => Ok(self.values[i]),
            None => self.cond.support_value(self.m, &self.access, s),
        }
    }

    fn opposite(&self, g1: &CycleSupport, g2: &CycleSupport) -> Result<(Value, Value)> {
        let (v1, v2) = (self.value(g1)?, self.value(g2)?);
        if v1 == v2 {
            return Err(Error::input(format!(
                "{} and {} are both {v1}; competition needs opposite values",
                g1.describe(self.m),
                g2.describe(self.m)
            )));
        }
        Ok((v1, v2))
    }

    fn is_witness(&self, g1: &CycleSupport, v1: Value, g2: &CycleSupport, v2: Value, z: &CycleSupport) -> Result<bool> {
        Ok(z.shares_state(g1)
            && z.shares_state(g2)
            && self.value(&g1.union(z))? == v1
            && self.value(&g2.union(z))? == v2)
    }

    /// Canonically least support witnessing that `g1` and `g2` compete.
    pub fn competing_witness(&self, g1: &CycleSupport, g2: &CycleSupport) -> Result<Option<CycleSupport>> {
        let (v1, v2) = self.opposite(g1, g2)?;
        for z in &self.supports {
            if self.is_witness(g1, v1, g2, v2, z)? {
                return Ok(Some(z.clone()));
            }
        }
        Ok(None)
    }

    /// Every support witnessing that `g1` and `g2` compete.
    pub fn witnesses(&self, g1: &CycleSupport, g2: &CycleSupport) -> Result<Vec<CycleSupport>> {
        let (v1, v2) = self.opposite(g1, g2)?;
        let mut out = Vec::new();
        for z in &self.supports {
            if self.is_witness(g1, v1, g2, v2, z)? {
                out.push(z.clone());
            }
        }
        Ok(out)
    }

    /// The support whose value `g1 ∪ g2 ∪ zeta` takes.
    pub fn dominates(&self, g1: &CycleSupport, g2: &CycleSupport, zeta: &CycleSupport) -> Result<Dominance> {
        let (v1, v2) = self.opposite(g1, g2)?;
        if !self.is_witness(g1, v1, g2, v2, zeta)? {
            return Err(Error::input(format!(
                "{} does not witness the competition of {} and {}",
                zeta.describe(self.m),
                g1.describe(self.m),
                g2.describe(self.m)
            )));
        }
        let all = g1.union(g2).union(zeta);
        Ok(if self.value(&all)? == v1 {
            Dominance::First
        } else {
            Dominance::Second
        })
    }

    /// Competition, domination, the preorder and its quotient.
    pub fn preorder(&self) -> Result<CycleClassTable> {
        let n = self.supports.len();
        let mut competes = vec![vec![false; n]; n];
        // dom[i][j]: support i dominates support j
        let mut dom = vec![vec![false; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                if self.values[i] == self.values[j] {
                    continue;
                }
                let (gi, gj) = (&self.supports[i], &self.supports[j]);
                let Some(z) = self.competing_witness(gi, gj)? else {
                    continue;
                };
                competes[i][j] = true;
                competes[j][i] = true;
                match self.dominates(gi, gj, &z)? {
                    Dominance::First => dom[i][j] = true,
                    Dominance::Second => dom[j][i] = true,
                }
            }
        }
        // lt[a][b]: a ⊲ b
        let mut lt = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                lt[a][b] = if self.values[a] != self.values[b] {
                    dom[b][a]
                } else {
                    (0..n).any(|g| self.values[g] != self.values[a] && dom[g][a] && dom[b][g])
                };
            }
        }

        let mut keys: HashMap<(Value, Vec<bool>, Vec<bool>), usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(n);
        let mut members: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            let key = (self.values[i], competes[i].clone(), dom[i].clone());
            let next = members.len();
            let c = *keys.entry(key).or_insert(next);
            if c == next {
                members.push(Vec::new());
            }
            members[c].push(i);
            class_of.push(c);
        }
        let k = members.len();
        let rep: Vec<usize> = members.iter().map(|ms| ms[0]).collect();
        for a in 0..n {
            for b in 0..n {
                if lt[a][b] != lt[rep[class_of[a]]][rep[class_of[b]]] {
                    return Err(Error::Internal(format!(
                        "⊲ is not compatible with ≃: {} vs {} disagrees with their class representatives",
                        self.supports[a].describe(self.m),
                        self.supports[b].describe(self.m)
                    )));
                }
            }
        }
        let mut order = BTreeSet::new();
        for a in 0..k {
            for b in 0..k {
                if lt[rep[a]][rep[b]] {
                    order.insert((a, b));
                }
            }
        }
        let describe = |c: usize| self.supports[rep[c]].describe(self.m);
        for &(a, b) in &order {
            if a == b {
                return Err(Error::Internal(format!("⊲ is not irreflexive on {}", describe(a))));
            }
            for c in 0..k {
                if order.contains(&(b, c)) && !order.contains(&(a, c)) {
                    return Err(Error::Internal(format!(
                        "⊲ is not transitive: {} ⊲ {} ⊲ {}",
                        describe(a),
                        describe(b),
                        describe(c)
                    )));
                }
            }
        }
        let lift = |rel: &Vec<Vec<bool>>| -> BTreeSet<(usize, usize)> {
            let mut out = BTreeSet::new();
            for a in 0..k {
                for b in 0..k {
                    if rel[rep[a]][rep[b]] {
                        out.insert((a, b));
                    }
                }
            }
            out
        };
        let classes = members
            .into_iter()
            .enumerate()
            .map(|(c, ms)| CycleClass {
                representative: self.supports[rep[c]].clone(),
                value: self.values[rep[c]],
                members: ms,
            })
            .collect();
        Ok(CycleClassTable {
            supports: self.supports.clone(),
            class_of,
            classes,
            competes: lift(&competes),
            dominates: lift(&dom),
            order,
        })
    }
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Prefixes { state, first, second } => format!(
            "prefixes {:?} and {:?} both reach {state} with different residuals",
            first.join(" "),
            second.join(" ")
        ),
        Witness::Supports { state, value, first, second, .. } => format!(
            "on {state}, {:?} and {:?} are {value} but their union is not",
            first, second
        ),
    }
}

/// A class of the equivalence `≃` on cycle supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClass {
    /// Canonically least member.
    pub representative: CycleSupport,
    pub value: Value,
    /// Indices into [`CycleClassTable::supports`].
    pub members: Vec<usize>,
}

/// Supports of a skeleton grouped into `≃`-classes, with relations between
/// classes. Class ids follow the canonical order of their least members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClassTable {
    pub supports: Vec<CycleSupport>,
    pub class_of: Vec<usize>,
    pub classes: Vec<CycleClass>,
    /// Symmetric pairs of competing classes.
    pub competes: BTreeSet<(usize, usize)>,
    /// `(a, b)`: class `a` dominates class `b`.
    pub dominates: BTreeSet<(usize, usize)>,
    /// `(a, b)`: `a ⊲ b`.
    pub order: BTreeSet<(usize, usize)>,
}

impl CycleClassTable {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of_support(&self, s: &CycleSupport) -> Option<usize> {
        self.supports.iter().position(|x| x == s).map(|i| self.class_of[i])
    }

    /// Covering pairs of `⊲`.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        self.order
            .iter()
            .copied()
            .filter(|&(a, b)| {
                !(0..self.classes.len()).any(|c| self.order.contains(&(a, c)) && self.order.contains(&(c, b)))
            })
            .collect()
    }
}

pub fn classify_supports(m: &Skeleton, cond: &ConditionSpec) -> Result<Vec<(CycleSupport, Value)>> {
    Ok(CycleAnalysis::new(m, cond, DEFAULT_SUPPORT_CAP)?.classified())
}

pub fn build_cycle_preorder(m: &Skeleton, cond: &ConditionSpec) -> Result<CycleClassTable> {
    CycleAnalysis::new(m, cond, DEFAULT_SUPPORT_CAP)?.preorder()
}

/// Layered linear extension: classes in topological order of `⊲` (least id
/// first among the available ones), each taking the smallest number of its
/// parity above everything below it. Even means winning.
pub fn linear_extension(table: &CycleClassTable) -> Vec<u32> {
    let k = table.num_classes();
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut indegree = vec![0usize; k];
    for &(a, b) in &table.order {
        below[b].push(a);
        indegree[b] += 1;
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..k).filter(|&c| indegree[c] == 0).map(Reverse).collect();
    let mut p = vec![0u32; k];
    while let Some(Reverse(c)) = ready.pop() {
        let floor = below[c].iter().map(|&a| p[a] + 1).max().unwrap_or(0);
        let want = if table.classes[c].value == Value::Win { 0 } else { 1 };
        p[c] = if floor % 2 == want { floor } else { floor + 1 };
        for &(a, b) in &table.order {
            if a == c {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    ready.push(Reverse(b));
                }
            }
        }
    }
    p
}

/// Problems with a candidate extension; empty when it is valid.
pub fn validate_extension(table: &CycleClassTable, p_gamma: &[u32]) -> Vec<String> {
    let mut issues = Vec::new();
    if p_gamma.len() != table.num_classes() {
        issues.push(format!("expected {} values, got {}", table.num_classes(), p_gamma.len()));
        return issues;
    }
    for (c, class) in table.classes.iter().enumerate() {
        if p_gamma[c].is_multiple_of(2) != (class.value == Value::Win) {
            issues.push(format!("class {c} is {} but gets {}", class.value, p_gamma[c]));
        }
    }
    for &(a, b) in &table.order {
        if p_gamma[a] >= p_gamma[b] {
            issues.push(format!("class {a} ⊲ class {b} but {} ≥ {}", p_gamma[a], p_gamma[b]));
        }
    }
    issues
}

/// Priority of every transition: the least class value over the supports
/// through it. Transitions on no cycle are an error unless `allow_transient`,
/// which gives them the least class value among supports reachable from
/// their target.
pub fn assign_priorities(
    m: &Skeleton,
    table: &CycleClassTable,
    p_gamma: &[u32],
    allow_transient: bool,
) -> Result<ParityAutomaton> {
    if p_gamma.len() != table.num_classes() {
        return Err(Error::input("one value per class is required"));
    }
    let mut best: BTreeMap<Transition, u32> = BTreeMap::new();
    for (i, s) in table.supports.iter().enumerate() {
        let v = p_gamma[table.class_of[i]];
        for &t in s.transitions() {
            best.entry(t).and_modify(|p| *p = (*p).min(v)).or_insert(v);
        }
    }
    let mut priority = Vec::with_capacity(m.num_transitions());
    for t in m.transitions() {
        let p = match best.get(&t) {
            Some(&p) => p,
            None if allow_transient => {
                let reach = m.shortest_words_from(m.target(t));
                table
                    .supports
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| reach[s.transitions()[0].state].is_some())
                    .map(|(i, _)| p_gamma[table.class_of[i]])
                    .min()
                    .ok_or_else(|| Error::Internal("no cycle reachable from a transient transition".into()))?
            }
            None => {
                return Err(Error::Precondition {
                    check: "transient transitions",
                    detail: format!(
                        "({}, {}) lies on no cycle; prune transient transitions or allow them explicitly",
                        m.state_name(t.state),
                        m.color_name(t.color)
                    ),
                })
            }
        };
        priority.push(p);
    }
    ParityAutomaton::new(m.clone(), priority)
}

/// First support whose maximal priority has the wrong parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportMismatch {
    pub support: CycleSupport,
    pub description: String,
    pub value: Value,
    pub max_priority: u32,
}

/// First sampled lasso on which automaton and condition disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoMismatch {
    pub lasso: Lasso,
    pub value: Value,
    pub accepted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisCheck {
    pub supports_checked: usize,
    pub support_mismatch: Option<SupportMismatch>,
    pub lassos_checked: usize,
    pub lasso_mismatches: usize,
    pub first_lasso_mismatch: Option<LassoMismatch>,
}

impl SynthesisCheck {
    pub fn passed(&self) -> bool {
        self.support_mismatch.is_none() && self.lasso_mismatches == 0
    }
}

/// Checks every support of `out`'s skeleton (its maximal priority is even
/// exactly when it wins) and `samples` random lassos against the condition.
pub fn verify_synthesis(out: &ParityAutomaton, cond: &ConditionSpec, samples: usize, seed: u64) -> Result<SynthesisCheck> {
    verify_synthesis_capped(out, cond, samples, seed, DEFAULT_SUPPORT_CAP)
}

pub fn verify_synthesis_capped(
    out: &ParityAutomaton,
    cond: &ConditionSpec,
    samples: usize,
    seed: u64,
    cap: usize,
) -> Result<SynthesisCheck> {
    let m = out.skeleton();
    let access = m.access_words();
    let supports = enumerate_cycle_supports(m, cap)?;
    let mut support_mismatch = None;
    for s in &supports {
        let value = cond.support_value(m, &access, s)?;
        let max_priority = out.max_priority(s.transitions()).expect("non-empty support");
        if max_priority.is_multiple_of(2) != value.is_win() {
            support_mismatch = Some(SupportMismatch {
                support: s.clone(),
                description: s.describe(m),
                value,
                max_priority,
            });
            break;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nc = m.num_colors();
    let (mut lasso_mismatches, mut first_lasso_mismatch) = (0, None);
    for _ in 0..samples {
        let u: Vec<usize> = (0..rng.random_range(0..=6)).map(|_| rng.random_range(0..nc)).collect();
        let v: Vec<usize> = (0..rng.random_range(1..=6)).map(|_| rng.random_range(0..nc)).collect();
        let accepted = out.accepts_indices(&u, &v);
        let value = cond.value_in(m, &u, &v)?;
        if accepted != value.is_win() {
            lasso_mismatches += 1;
            if first_lasso_mismatch.is_none() {
                first_lasso_mismatch = Some(LassoMismatch {
                    lasso: Lasso::new(&m.decode(&u), &m.decode(&v))?,
                    value,
                    accepted,
                });
            }
        }
    }
    Ok(SynthesisCheck {
        supports_checked: supports.len(),
        support_mismatch,
        lassos_checked: samples,
        lasso_mismatches,
        first_lasso_mismatch,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisOptions {
    pub cap: usize,
    pub allow_transient: bool,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            cap: DEFAULT_SUPPORT_CAP,
            allow_transient: false,
            samples: 1000,
            seed: 0,
        }
    }
}

/// Everything the pipeline computed on `M_∼ ⊗ m`.
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub table: CycleClassTable,
    pub p_gamma: Vec<u32>,
    pub automaton: ParityAutomaton,
    pub check: SynthesisCheck,
}

/// Parity automaton for `cond` on top of `M_∼ ⊗ m`, verified before return.
pub fn synthesize(cond: &ConditionSpec, m: &Skeleton, opts: &SynthesisOptions) -> Result<Synthesis> {
    if !cond.union_invariant() {
        return Err(Error::Unsupported(format!(
            "synthesis needs a union-invariant condition; {} is not",
            cond.kind()
        )));
    }
    let (product, _) = residual_product(cond, m).map_err(Error::at("right-congruence"))?;
    let analysis = CycleAnalysis::new(&product, cond, opts.cap).map_err(Error::at("consistency"))?;
    let table = analysis.preorder().map_err(Error::at("preorder"))?;
    let p_gamma = linear_extension(&table);
    let issues = validate_extension(&table, &p_gamma);
    if !issues.is_empty() {
        return Err(Error::Stage {
            stage: "extension",
            source: Box::new(Error::Internal(issues.join("; "))),
        });
    }
    let automaton =
        assign_priorities(&product, &table, &p_gamma, opts.allow_transient).map_err(Error::at("assignment"))?;
    let check = verify_synthesis_capped(&automaton, cond, opts.samples, opts.seed, opts.cap)
        .map_err(Error::at("verification"))?;
    if !check.passed() {
        let detail = match (&check.support_mismatch, &check.first_lasso_mismatch) {
            (Some(s), _) => format!("{} is {} but has maximal priority {}", s.description, s.value, s.max_priority),
            (None, Some(l)) => format!(
                "lasso {:?}·({:?})^ω is {} but accepted = {}",
                l.lasso.prefix, l.lasso.period, l.value, l.accepted
            ),
            (None, None) => unreachable!("a failed check has a mismatch"),
        };
        return Err(Error::Stage {
            stage: "verification",
            source: Box::new(Error::Internal(detail)),
        });
    }
    Ok(Synthesis {
        table,
        p_gamma,
        automaton,
        check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn competition_table() -> (Skeleton, CycleClassTable) {
        let m = competition_automaton().skeleton().clone();
        let t = build_cycle_preorder(&m, &competition_muller()).unwrap();
        (m, t)
    }

    fn sup(m: &Skeleton, edges: &[(&str, &str)]) -> CycleSupport {
        CycleSupport::from_names(m, edges).unwrap()
    }

    #[test]
    fn competition_witnesses_and_domination() {
        let m = competition_automaton().skeleton().clone();
        let cond = competition_muller();
        let a = CycleAnalysis::new(&m, &cond, 1000).unwrap();
        let m1b = sup(&m, &[("m1", "b")]);
        let m1c = sup(&m, &[("m1", "c")]);
        let m2b = sup(&m, &[("m2", "b")]);
        let aa = sup(&m, &[("m1", "a"), ("m2", "a")]);
        assert_eq!(a.competing_witness(&m1b, &m2b).unwrap(), None);
        let z = a.competing_witness(&m1c, &m2b).unwrap().unwrap();
        assert_eq!(z, aa);
        assert_eq!(a.dominates(&m1c, &m2b, &z).unwrap(), Dominance::First);
        let z = a.competing_witness(&aa, &m1b).unwrap().unwrap();
        assert_eq!(a.dominates(&aa, &m1b, &z).unwrap(), Dominance::First);
        let z = a.competing_witness(&m1c, &aa).unwrap().unwrap();
        assert_eq!(a.dominates(&m1c, &aa, &z).unwrap(), Dominance::First);
        assert!(a.competing_witness(&m1b, &m1c).is_err());
    }

    #[test]
    fn competition_classes_and_greedy_extension() {
        let (m, t) = competition_table();
        assert_eq!(t.num_classes(), 4);
        let id = |e: &[(&str, &str)]| t.class_of_support(&sup(&m, e)).unwrap();
        let (m1b, m1c, m2b, aa) = (
            id(&[("m1", "b")]),
            id(&[("m1", "c")]),
            id(&[("m2", "b")]),
            id(&[("m1", "a"), ("m2", "a")]),
        );
        assert_eq!(id(&[("m2", "c")]), m2b);
        assert_eq!(id(&[("m1", "a"), ("m2", "a"), ("m2", "b")]), aa);
        assert_eq!(id(&[("m1", "a"), ("m1", "c"), ("m2", "a")]), m1c);
        let mut hasse = t.hasse();
        hasse.sort();
        let mut want = vec![(m1b, aa), (aa, m1c), (m2b, m1c)];
        want.sort();
        assert_eq!(hasse, want);
        let p = linear_extension(&t);
        assert_eq!((p[m1c], p[aa], p[m2b], p[m1b]), (3, 2, 0, 1));
        let mut hand = vec![0; 4];
        hand[m1c] = 5;
        hand[aa] = 2;
        hand[m2b] = 4;
        hand[m1b] = 1;
        assert!(validate_extension(&t, &hand).is_empty());
        let out = assign_priorities(&m, &t, &p, false).unwrap();
        assert_eq!(out.priorities(), competition_automaton().priorities());
    }

    #[test]
    fn mutated_competition_fails_on_m1c() {
        let mut a = competition_automaton();
        let m1c = Transition {
            state: 0,
            color: 2,
        };
        a.set_priority(m1c, 2);
        let r = verify_synthesis(&a, &competition_muller(), 200, 0).unwrap();
        assert_eq!(r.support_mismatch.unwrap().description, "{(m1,c)}");
    }

    #[test]
    fn buchi_ab_synthesis() {
        let s = synthesize(&buchi_ab(), &buchi_ab_skeleton(), &SynthesisOptions::default()).unwrap();
        assert_eq!(s.automaton.skeleton().num_states(), 2);
        assert!(s.check.passed());
    }

    #[test]
    fn trivial_skeleton_refused_for_buchi_ab() {
        let err = synthesize(&buchi_ab(), &Skeleton::trivial(&["a", "b", "c"]), &SynthesisOptions::default());
        assert!(matches!(err.unwrap_err().root(), Error::Precondition { check: "cycle-consistency", .. }));
    }

    #[test]
    fn ab_prefix_needs_transient_opt_in() {
        let triv = Skeleton::trivial(&["a", "b"]);
        let err = synthesize(&ab_prefix(), &triv, &SynthesisOptions::default()).unwrap_err();
        assert!(matches!(err.root(), Error::Precondition { check: "transient transitions", .. }));
        let opts = SynthesisOptions {
            allow_transient: true,
            ..Default::default()
        };
        let s = synthesize(&ab_prefix(), &triv, &opts).unwrap();
        assert_eq!(s.automaton.skeleton().num_states(), 4);
    }

    #[test]
    fn ds_half_synthesis() {
        let opts = SynthesisOptions {
            allow_transient: true,
            ..Default::default()
        };
        let s = synthesize(&ds_half(), &Skeleton::trivial(&crate::condition::ds_alphabet(2)), &opts).unwrap();
        assert_eq!(s.automaton.skeleton().num_states(), 6);
        assert_eq!(s.table.num_classes(), 2);
        let sk = s.automaton.skeleton();
        for t in sk.transitions() {
            let odd = s.automaton.priority(t) % 2 == 1;
            let touches_bot = sk.state_name(t.state) == "bot|triv" || sk.state_name(sk.target(t)) == "bot|triv";
            assert_eq!(odd, touches_bot, "{}", sk.state_name(t.state));
        }
    }
}
