//! Skeletons (chromatic memory structures), parity automata on top of them,
//! runs, products and color abstraction.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};

/// A transition `(state, color)` of a skeleton, by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub state: usize,
    pub color: usize,
}

/// Finite deterministic machine over a color alphabet, with no acceptance.
///
/// Every state is reachable from `init` and the update function is total.
/// States and colors are referred to by index; names are kept for I/O.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    alphabet: Vec<String>,
    states: Vec<String>,
    init: usize,
    upd: Vec<usize>,
}

fn index_names(names: &[String], what: &str) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if map.insert(n.clone(), i).is_some() {
            return Err(Error::input(format!("duplicate {what} `{n}`")));
        }
    }
    Ok(map)
}

impl Skeleton {
    /// Builds a skeleton from named parts, checking totality and reachability.
    pub fn new(
        alphabet: Vec<String>,
        states: Vec<String>,
        init: &str,
        upd: &[(String, String, String)],
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::input("empty alphabet"));
        }
        let colors = index_names(&alphabet, "color")?;
        let names = index_names(&states, "state")?;
        let init = *names
            .get(init)
            .ok_or_else(|| Error::UnknownState(init.to_string()))?;
        let nc = alphabet.len();
        let mut table = vec![usize::MAX; states.len() * nc];
        for (s, c, t) in upd {
            let s = *names.get(s).ok_or_else(|| Error::UnknownState(s.clone()))?;
            let ci = *colors.get(c).ok_or_else(|| Error::UnknownColor(c.clone()))?;
            let t = *names.get(t).ok_or_else(|| Error::UnknownState(t.clone()))?;
            let slot = &mut table[s * nc + ci];
            if *slot != usize::MAX {
                return Err(Error::input(format!(
                    "update defined twice for ({}, {c})",
                    states[s]
                )));
            }
            *slot = t;
        }
        if let Some(pos) = table.iter().position(|&t| t == usize::MAX) {
            return Err(Error::input(format!(
                "update undefined for ({}, {})",
                states[pos / nc],
                alphabet[pos % nc]
            )));
        }
        let sk = Skeleton {
            alphabet,
            states,
            init,
            upd: table,
        };
        let reach = sk.reachable();
        if let Some(s) = reach.iter().position(|r| !r) {
            return Err(Error::input(format!(
                "state `{}` is not reachable from the initial state",
                sk.states[s]
            )));
        }
        Ok(sk)
    }

    /// Convenience constructor: states are listed in order of first
    /// appearance, starting with `init`.
    pub fn from_edges(alphabet: &[&str], init: &str, edges: &[(&str, &str, &str)]) -> Result<Self> {
        let mut states = vec![init.to_string()];
        for (s, _, t) in edges {
            for n in [s, t] {
                if !states.iter().any(|x| x == n) {
                    states.push(n.to_string());
                }
            }
        }
        let upd: Vec<_> = edges
            .iter()
            .map(|(s, c, t)| (s.to_string(), c.to_string(), t.to_string()))
            .collect();
        Skeleton::new(
            alphabet.iter().map(|c| c.to_string()).collect(),
            states,
            init,
            &upd,
        )
    }

    /// Builds from an index table and keeps only the part reachable from
    /// `init`, renumbering states in breadth-first order.
    pub(crate) fn from_table(
        alphabet: Vec<String>,
        states: Vec<String>,
        init: usize,
        upd: Vec<usize>,
    ) -> Self {
        let nc = alphabet.len();
        let mut order = vec![usize::MAX; states.len()];
        let mut queue = VecDeque::from([init]);
        let mut seen = vec![init];
        order[init] = 0;
        while let Some(s) = queue.pop_front() {
            for c in 0..nc {
                let t = upd[s * nc + c];
                if order[t] == usize::MAX {
                    order[t] = seen.len();
                    seen.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut new_upd = vec![0; seen.len() * nc];
        for (i, &s) in seen.iter().enumerate() {
            for c in 0..nc {
                new_upd[i * nc + c] = order[upd[s * nc + c]];
            }
        }
        Skeleton {
            alphabet,
            states: seen.iter().map(|&s| states[s].clone()).collect(),
            init: 0,
            upd: new_upd,
        }
    }

    /// The one-state skeleton, which remembers nothing.
    pub fn trivial<S: AsRef<str>>(alphabet: &[S]) -> Self {
        let alphabet: Vec<String> = alphabet.iter().map(|c| c.as_ref().to_string()).collect();
        let nc = alphabet.len();
        Skeleton {
            alphabet,
            states: vec!["triv".to_string()],
            init: 0,
            upd: vec![0; nc],
        }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_colors(&self) -> usize {
        self.alphabet.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.upd.len()
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.states[s]
    }

    pub fn color_name(&self, c: usize) -> &str {
        &self.alphabet[c]
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn color_index(&self, name: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::UnknownColor(name.to_string()))
    }

    pub fn succ(&self, s: usize, c: usize) -> usize {
        self.upd[s * self.alphabet.len() + c]
    }

    pub fn target(&self, t: Transition) -> usize {
        self.succ(t.state, t.color)
    }

    /// Dense index of a transition, `state * |colors| + color`.
    pub fn transition_id(&self, t: Transition) -> usize {
        t.state * self.alphabet.len() + t.color
    }

    pub fn transition_at(&self, id: usize) -> Transition {
        let nc = self.alphabet.len();
        Transition {
            state: id / nc,
            color: id % nc,
        }
    }

    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        (0..self.upd.len()).map(|id| self.transition_at(id))
    }

    /// Translates color names to indices.
    pub fn encode<S: AsRef<str>>(&self, word: &[S]) -> Result<Vec<usize>> {
        word.iter().map(|c| self.color_index(c.as_ref())).collect()
    }

    pub fn decode(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&c| self.alphabet[c].clone()).collect()
    }

    /// States visited when reading `word` from `init`, starting with `init`.
    pub fn run<S: AsRef<str>>(&self, word: &[S]) -> Result<Vec<usize>> {
        Ok(self.run_from(self.init, &self.encode(word)?))
    }

    pub fn run_from(&self, start: usize, word: &[usize]) -> Vec<usize> {
        let mut states = Vec::with_capacity(word.len() + 1);
        let mut s = start;
        states.push(s);
        for &c in word {
            s = self.succ(s, c);
            states.push(s);
        }
        states
    }

    pub fn state_after(&self, start: usize, word: &[usize]) -> usize {
        word.iter().fold(start, |s, &c| self.succ(s, c))
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut stack = vec![self.init];
        seen[self.init] = true;
        while let Some(s) = stack.pop() {
            for c in 0..self.alphabet.len() {
                let t = self.succ(s, c);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Length-lexicographically least word reaching each state from `start`
    /// (`None` for states not reachable from `start`).
    pub fn shortest_words_from(&self, start: usize) -> Vec<Option<Vec<usize>>> {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.states.len()];
        words[start] = Some(Vec::new());
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            for c in 0..self.alphabet.len() {
                let t = self.succ(s, c);
                if words[t].is_none() {
                    let mut w = words[s].clone().expect("visited");
                    w.push(c);
                    words[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
        words
    }

    /// Length-lexicographically least access word of every state.
    pub fn access_words(&self) -> Vec<Vec<usize>> {
        self.shortest_words_from(self.init)
            .into_iter()
            .map(|w| w.expect("all states are reachable"))
            .collect()
    }

    /// Maps color indices of `other` to color indices of `self`, requiring
    /// both alphabets to contain the same names.
    pub fn color_map_from(&self, other: &Skeleton) -> Result<Vec<usize>> {
        if self.alphabet.len() != other.alphabet.len() {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet, other.alphabet
            )));
        }
        other
            .alphabet
            .iter()
            .map(|c| {
                self.color_index(c).map_err(|_| {
                    Error::AlphabetMismatch(format!("{:?} vs {:?}", self.alphabet, other.alphabet))
                })
            })
            .collect()
    }

    /// Reachable part of the direct product. States are named `"s1|s2"` and
    /// colors follow the order of `self`.
    pub fn product(&self, other: &Skeleton) -> Result<Skeleton> {
        Ok(self.product_with_components(other)?.0)
    }

    /// Same as [`Skeleton::product`] but also returns the component states of
    /// every product state.
    pub fn product_with_components(&self, other: &Skeleton) -> Result<(Skeleton, Vec<(usize, usize)>)> {
        let map = other.color_map_from(self)?;
        let nc = self.alphabet.len();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.init, other.init)];
        index.insert((self.init, other.init), 0);
        let mut upd = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            for c in 0..nc {
                let next = (self.succ(a, c), other.succ(b, map[c]));
                let id = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                upd.push(id);
            }
            i += 1;
        }
        let states = pairs
            .iter()
            .map(|&(a, b)| format!("{}|{}", self.states[a], other.states[b]))
            .collect();
        let sk = Skeleton {
            alphabet: self.alphabet.clone(),
            states,
            init: 0,
            upd,
        };
        Ok((sk, pairs))
    }

    /// Isomorphism of reachable deterministic machines, ignoring state names.
    pub fn is_isomorphic(&self, other: &Skeleton) -> bool {
        let Ok(map) = other.color_map_from(self) else {
            return false;
        };
        if self.states.len() != other.states.len() {
            return false;
        }
        let mut fwd = vec![usize::MAX; self.states.len()];
        let mut bwd = vec![usize::MAX; other.states.len()];
        fwd[self.init] = other.init;
        bwd[other.init] = self.init;
        let mut stack = vec![self.init];
        while let Some(s) = stack.pop() {
            let o = fwd[s];
            for c in 0..self.alphabet.len() {
                let t = self.succ(s, c);
                let u = other.succ(o, map[c]);
                match (fwd[t], bwd[u]) {
                    (usize::MAX, usize::MAX) => {
                        fwd[t] = u;
                        bwd[u] = t;
                        stack.push(t);
                    }
                    (x, y) if x == u && y == t => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Transitions visited infinitely often by `prefix · period^ω`, sorted.
    pub fn lasso_cycle(&self, prefix: &[usize], period: &[usize]) -> Vec<Transition> {
        assert!(!period.is_empty(), "lasso period must be non-empty");
        let mut s = self.state_after(self.init, prefix);
        let mut starts: Vec<usize> = Vec::new();
        loop {
            if let Some(i) = starts.iter().position(|&x| x == s) {
                let mut out: Vec<Transition> = Vec::new();
                for &start in &starts[i..] {
                    let mut q = start;
                    for &c in period {
                        out.push(Transition { state: q, color: c });
                        q = self.succ(q, c);
                    }
                }
                out.sort();
                out.dedup();
                return out;
            }
            starts.push(s);
            s = self.state_after(s, period);
        }
    }

    /// Renames the states; `names` must be distinct and as many as states.
    pub fn with_state_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.states.len() {
            return Err(Error::input("wrong number of state names"));
        }
        index_names(&names, "state")?;
        self.states = names;
        Ok(self)
    }

    /// Triples `(state, color, target)` by name, in transition order.
    pub fn named_edges(&self) -> Vec<(String, String, String)> {
        self.transitions()
            .map(|t| {
                (
                    self.states[t.state].clone(),
                    self.alphabet[t.color].clone(),
                    self.states[self.target(t)].clone(),
                )
            })
            .collect()
    }
}

/// A skeleton with a priority on every transition; a word is accepted when the
/// largest priority seen infinitely often is even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityAutomaton {
    skeleton: Skeleton,
    priority: Vec<u32>,
}

/// Coarsest partition of colors acting identically in every state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorPartition {
    /// Classes of color indices, each sorted, ordered by least member.
    pub classes: Vec<Vec<usize>>,
    /// Representative (least member of its class) of every color.
    pub representative: Vec<usize>,
}

impl ColorPartition {
    pub fn is_identity(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

impl ParityAutomaton {
    pub fn new(skeleton: Skeleton, priority: Vec<u32>) -> Result<Self> {
        if priority.len() != skeleton.num_transitions() {
            return Err(Error::input(format!(
                "expected {} priorities, got {}",
                skeleton.num_transitions(),
                priority.len()
            )));
        }
        Ok(ParityAutomaton { skeleton, priority })
    }

    /// Builds from `(state, color, target, priority)` quadruples.
    pub fn from_edges(alphabet: &[&str], init: &str, edges: &[(&str, &str, &str, u32)]) -> Result<Self> {
        let triples: Vec<_> = edges.iter().map(|&(s, c, t, _)| (s, c, t)).collect();
        let skeleton = Skeleton::from_edges(alphabet, init, &triples)?;
        let mut priority = vec![0; skeleton.num_transitions()];
        for &(s, c, _, p) in edges {
            let t = Transition {
                state: skeleton.state_index(s)?,
                color: skeleton.color_index(c)?,
            };
            priority[skeleton.transition_id(t)] = p;
        }
        ParityAutomaton::new(skeleton, priority)
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn priority(&self, t: Transition) -> u32 {
        self.priority[self.skeleton.transition_id(t)]
    }

    pub fn priorities(&self) -> &[u32] {
        &self.priority
    }

    pub fn set_priority(&mut self, t: Transition, p: u32) {
        let id = self.skeleton.transition_id(t);
        self.priority[id] = p;
    }

    /// Largest priority among the given transitions.
    pub fn max_priority<'a>(&self, ts: impl IntoIterator<Item = &'a Transition>) -> Option<u32> {
        ts.into_iter().map(|&t| self.priority(t)).max()
    }

    pub fn accepts_indices(&self, prefix: &[usize], period: &[usize]) -> bool {
        let cycle = self.skeleton.lasso_cycle(prefix, period);
        self.max_priority(&cycle).expect("non-empty cycle").is_multiple_of(2)
    }

    /// Acceptance of `prefix · period^ω`, colors given by name.
    pub fn accepts<S: AsRef<str>>(&self, prefix: &[S], period: &[S]) -> Result<bool> {
        if period.is_empty() {
            return Err(Error::input("lasso period must be non-empty"));
        }
        Ok(self.accepts_indices(&self.skeleton.encode(prefix)?, &self.skeleton.encode(period)?))
    }

    /// Merges colors whose update and priority columns coincide in every state.
    pub fn color_abstraction(&self) -> ColorPartition {
        let sk = &self.skeleton;
        let column = |c: usize| -> Vec<(usize, u32)> {
            (0..sk.num_states())
                .map(|s| {
                    let t = Transition { state: s, color: c };
                    (sk.target(t), self.priority(t))
                })
                .collect()
        };
        let mut by_column: BTreeMap<Vec<(usize, u32)>, usize> = BTreeMap::new();
        let mut representative = Vec::with_capacity(sk.num_colors());
        for c in 0..sk.num_colors() {
            representative.push(*by_column.entry(column(c)).or_insert(c));
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for c in 0..sk.num_colors() {
            if representative[c] == c {
                classes.push(vec![c]);
            } else {
                let r = representative[c];
                classes
                    .iter_mut()
                    .find(|cl| cl[0] == r)
                    .expect("representative seen first")
                    .push(c);
            }
        }
        ColorPartition {
            classes,
            representative,
        }
    }

    /// The automaton restricted to one representative per color class.
    pub fn abstract_colors(&self, partition: &ColorPartition) -> ParityAutomaton {
        let sk = &self.skeleton;
        let reps: Vec<usize> = partition.classes.iter().map(|c| c[0]).collect();
        let alphabet: Vec<String> = reps.iter().map(|&c| sk.alphabet[c].clone()).collect();
        let mut upd = Vec::new();
        let mut priority = Vec::new();
        for s in 0..sk.num_states() {
            for &c in &reps {
                let t = Transition { state: s, color: c };
                upd.push(sk.target(t));
                priority.push(self.priority(t));
            }
        }
        // Dropping colors can make states unreachable; prune and carry the
        // priorities along by name.
        let nc = reps.len();
        let full = Skeleton {
            alphabet,
            states: sk.states.clone(),
            init: sk.init,
            upd,
        };
        let pruned = Skeleton::from_table(full.alphabet.clone(), full.states.clone(), full.init, full.upd.clone());
        let mut pr = Vec::with_capacity(pruned.num_transitions());
        for s in 0..pruned.num_states() {
            let old = sk.state_index(pruned.state_name(s)).expect("same names");
            for c in 0..nc {
                pr.push(priority[old * nc + c]);
            }
        }
        ParityAutomaton {
            skeleton: pruned,
            priority: pr,
        }
    }
}
