//! Deterministic parity automata with transition-based priorities.
//!
//! A run is accepting iff the minimum priority occurring infinitely often is
//! even. Complementation is therefore a shift of every priority by one.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::OmegaGraph;
use crate::words::{Alphabet, FiniteWord, LassoWord};

pub type State = usize;

/// Largest priority accepted in automaton files.
pub const MAX_PRIORITY: u8 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub target: State,
    pub priority: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dpa {
    alphabet: Alphabet,
    state_names: Vec<String>,
    initial: State,
    /// Indexed by `state * |alphabet| + letter`.
    table: Vec<Transition>,
}

impl Dpa {
    /// `table[state][letter]` in alphabet declaration order.
    pub fn new(
        alphabet: Alphabet,
        state_names: Vec<String>,
        initial: State,
        table: Vec<Vec<Transition>>,
    ) -> Result<Self> {
        let n = state_names.len();
        if n == 0 {
            return Err(Error::PreconditionViolated("automaton has no states".into()));
        }
        if initial >= n || table.len() != n {
            return Err(Error::PreconditionViolated(
                "transition table does not match the state count".into(),
            ));
        }
        let mut flat = Vec::with_capacity(n * alphabet.len());
        for row in table {
            if row.len() != alphabet.len() {
                return Err(Error::PreconditionViolated(
                    "transition table is not total".into(),
                ));
            }
            for t in row {
                if t.target >= n {
                    return Err(Error::PreconditionViolated(format!(
                        "transition target {} out of range",
                        t.target
                    )));
                }
                flat.push(t);
            }
        }
        Ok(Dpa {
            alphabet,
            state_names,
            initial,
            table: flat,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_dpa(text)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        Dpa::parse(&text)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn state_name(&self, q: State) -> &str {
        &self.state_names[q]
    }

    /// Looks a state up by name; plain indices are accepted as well.
    pub fn state_by_name(&self, name: &str) -> Result<State> {
        if let Some(q) = self.state_names.iter().position(|s| s == name) {
            return Ok(q);
        }
        match name.parse::<usize>() {
            Ok(q) if q < self.num_states() => Ok(q),
            _ => Err(Error::UnknownState(name.to_string())),
        }
    }

    /// Transition on the letter with index `letter`.
    pub fn step(&self, q: State, letter: usize) -> Transition {
        self.table[q * self.alphabet.len() + letter]
    }

    pub fn step_char(&self, q: State, c: char) -> Result<Transition> {
        Ok(self.step(q, self.alphabet.require(c)?))
    }

    pub fn priorities(&self) -> BTreeSet<u8> {
        self.table.iter().map(|t| t.priority).collect()
    }

    /// State reached reading `u` from `from`, and the least priority seen (`None` for ε).
    pub fn run_finite(&self, from: State, u: &FiniteWord) -> Result<(State, Option<u8>)> {
        let mut q = from;
        let mut min: Option<u8> = None;
        for &c in u.letters() {
            let t = self.step_char(q, c)?;
            q = t.target;
            min = Some(min.map_or(t.priority, |m| m.min(t.priority)));
        }
        Ok((q, min))
    }

    /// Whether `w` is accepted when reading from `from`.
    pub fn member_from(&self, from: State, w: &LassoWord) -> Result<bool> {
        let (mut q, _) = self.run_finite(from, w.prefix())?;
        let mut block_start: HashMap<State, usize> = HashMap::new();
        let mut block_min = Vec::new();
        loop {
            if let Some(&first) = block_start.get(&q) {
                let min = block_min[first..].iter().min().copied().expect("nonempty cycle");
                return Ok(min % 2 == 0);
            }
            block_start.insert(q, block_min.len());
            let (next, min) = self.run_finite(q, w.period())?;
            block_min.push(min.expect("period is nonempty"));
            q = next;
        }
    }

    pub fn member(&self, w: &LassoWord) -> Result<bool> {
        self.member_from(self.initial, w)
    }

    /// Same structure with every priority raised by one: recognizes the complement.
    pub fn complement_shift(&self) -> Dpa {
        let mut out = self.clone();
        for t in &mut out.table {
            t.priority += 1;
        }
        out
    }

    /// Synchronized product; every edge carries both priorities.
    pub fn product(&self, other: &Dpa) -> Result<ProductGraph> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "[{}] vs [{}]",
                self.alphabet, other.alphabet
            )));
        }
        let (n1, n2) = (self.num_states(), other.num_states());
        let mut graph = OmegaGraph::new(n1 * n2);
        for p in 0..n1 {
            for q in 0..n2 {
                for (i, &c) in self.alphabet.letters().iter().enumerate() {
                    let (t1, t2) = (self.step(p, i), other.step(q, i));
                    graph.add_arc(p * n2 + q, c, t1.target * n2 + t2.target, [t1.priority, t2.priority]);
                }
            }
        }
        Ok(ProductGraph {
            right_states: n2,
            graph,
        })
    }

    /// Reachable states with a shortest access word each (ties by alphabet order).
    pub fn reachable_states(&self) -> BTreeMap<State, FiniteWord> {
        self.access_words(false)
            .into_iter()
            .enumerate()
            .filter_map(|(q, w)| w.map(|w| (q, w)))
            .collect()
    }

    /// Per state, a shortest word reaching it from the initial state. With
    /// `nonempty`, only nonempty words count (the initial state then needs a cycle).
    pub fn access_words(&self, nonempty: bool) -> Vec<Option<FiniteWord>> {
        let mut access: Vec<Option<FiniteWord>> = vec![None; self.num_states()];
        let mut queue = VecDeque::new();
        if nonempty {
            for (i, &c) in self.alphabet.letters().iter().enumerate() {
                let q = self.step(self.initial, i).target;
                if access[q].is_none() {
                    access[q] = Some(FiniteWord::from(vec![c]));
                    queue.push_back(q);
                }
            }
        } else {
            access[self.initial] = Some(FiniteWord::empty());
            queue.push_back(self.initial);
        }
        while let Some(q) = queue.pop_front() {
            for (i, &c) in self.alphabet.letters().iter().enumerate() {
                let t = self.step(q, i).target;
                if access[t].is_none() {
                    let mut w = access[q].clone().expect("queued states have words");
                    w.push(c);
                    access[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
        access
    }

    /// `None` iff `L(p) ⊆ L(q)`; otherwise a lasso accepted from `p` and rejected from `q`.
    pub fn residual_included(&self, p: State, q: State) -> Option<LassoWord> {
        ResidualOracle::new(self).counterexample(p, q)
    }
}

impl fmt::Display for Dpa {
    /// Writes the `dpa v1` file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dpa v1")?;
        writeln!(f, "alphabet {}", self.alphabet)?;
        let numbered = self
            .state_names
            .iter()
            .enumerate()
            .all(|(i, s)| *s == i.to_string());
        if numbered {
            writeln!(f, "states {}", self.num_states())?;
        } else {
            writeln!(f, "states {}", self.state_names.join(" "))?;
        }
        writeln!(f, "initial {}", self.state_names[self.initial])?;
        for q in 0..self.num_states() {
            for (i, c) in self.alphabet.letters().iter().enumerate() {
                let t = self.step(q, i);
                writeln!(
                    f,
                    "trans {} {} {} {}",
                    self.state_names[q], c, self.state_names[t.target], t.priority
                )?;
            }
        }
        Ok(())
    }
}

/// Synchronized product of two automata over the same alphabet.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    right_states: usize,
    graph: OmegaGraph,
}

impl ProductGraph {
    pub fn num_vertices(&self) -> usize {
        self.graph.len()
    }

    pub fn vertex(&self, p: State, q: State) -> usize {
        p * self.right_states + q
    }

    pub fn states_of(&self, v: usize) -> (State, State) {
        (v / self.right_states, v % self.right_states)
    }

    /// Outgoing edges of `v`: letter, target vertex, priority pair.
    pub fn edges(&self, v: usize) -> impl Iterator<Item = (char, usize, (u8, u8))> + '_ {
        self.graph
            .arcs(v)
            .iter()
            .map(|a| (a.letter, a.dst, (a.pri[0], a.pri[1])))
    }

    pub fn reachable_from(&self, start: usize) -> Vec<usize> {
        self.graph
            .reachable(&[start])
            .into_iter()
            .enumerate()
            .filter_map(|(v, r)| r.then_some(v))
            .collect()
    }

    /// A lasso whose run from `start` is accepting in both coordinates, if any.
    pub fn conj_nonempty_witness(&self, start: usize) -> Option<LassoWord> {
        self.graph.accepting_lasso(&[start])
    }
}

/// Memoized residual inclusion queries for one automaton.
pub(crate) struct ResidualOracle {
    product: ProductGraph,
    cache: HashMap<(State, State), Option<LassoWord>>,
}

impl ResidualOracle {
    pub(crate) fn new(a: &Dpa) -> Self {
        ResidualOracle {
            product: a.product(&a.complement_shift()).expect("same alphabet"),
            cache: HashMap::new(),
        }
    }

    /// A word in `L(p) \ L(q)`, if any.
    pub(crate) fn counterexample(&mut self, p: State, q: State) -> Option<LassoWord> {
        if p == q {
            return None;
        }
        let v = self.product.vertex(p, q);
        let product = &self.product;
        self.cache
            .entry((p, q))
            .or_insert_with(|| product.conj_nonempty_witness(v))
            .clone()
    }
}

fn parse_dpa(text: &str) -> Result<Dpa> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut header = false;
    let mut alphabet: Option<Alphabet> = None;
    let mut names: Option<Vec<String>> = None;
    let mut initial: Option<(usize, String)> = None;
    let mut trans: Vec<(usize, Vec<String>)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some((&keyword, rest)) = tokens.split_first() else {
            continue;
        };
        if !header {
            if tokens != ["dpa", "v1"] {
                return Err(err(line_no, "expected header `dpa v1`".into()));
            }
            header = true;
            continue;
        }
        match keyword {
            "alphabet" => {
                let mut letters = Vec::new();
                for tok in rest {
                    let mut chars = tok.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => letters.push(c),
                        _ => return Err(err(line_no, format!("letter `{tok}` is not a single character"))),
                    }
                }
                alphabet = Some(Alphabet::new(letters).map_err(|e| err(line_no, e.to_string()))?);
            }
            "states" => {
                let list = match rest {
                    [count] if count.parse::<usize>().is_ok() => {
                        let n: usize = count.parse().unwrap();
                        (0..n).map(|i| i.to_string()).collect::<Vec<_>>()
                    }
                    _ => rest.iter().map(|s| s.to_string()).collect(),
                };
                if list.is_empty() {
                    return Err(err(line_no, "no states declared".into()));
                }
                let distinct: BTreeSet<&String> = list.iter().collect();
                if distinct.len() != list.len() {
                    return Err(err(line_no, "duplicate state name".into()));
                }
                names = Some(list);
            }
            "initial" => match rest {
                [q] => initial = Some((line_no, q.to_string())),
                _ => return Err(err(line_no, "expected `initial <state>`".into())),
            },
            "trans" => {
                if rest.len() != 4 {
                    return Err(err(line_no, "expected `trans <state> <letter> <state> <priority>`".into()));
                }
                trans.push((line_no, rest.iter().map(|s| s.to_string()).collect()));
            }
            other => return Err(err(line_no, format!("unknown keyword `{other}`"))),
        }
    }

    let last = text.lines().count().max(1);
    if !header {
        return Err(err(last, "missing header `dpa v1`".into()));
    }
    let alphabet = alphabet.ok_or_else(|| err(last, "missing `alphabet`".into()))?;
    let names = names.ok_or_else(|| err(last, "missing `states`".into()))?;
    let lookup = |line: usize, name: &str| {
        names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| err(line, format!("unknown state `{name}`")))
    };
    let (init_line, init_name) = initial.ok_or_else(|| err(last, "missing `initial`".into()))?;
    let initial = lookup(init_line, &init_name)?;

    let k = alphabet.len();
    let mut table: Vec<Vec<Option<Transition>>> = vec![vec![None; k]; names.len()];
    for (line, t) in &trans {
        let src = lookup(*line, &t[0])?;
        let mut chars = t[1].chars();
        let letter = match (chars.next(), chars.next()) {
            (Some(c), None) => alphabet
                .index_of(c)
                .ok_or_else(|| err(*line, format!("letter `{c}` is not in the alphabet")))?,
            _ => return Err(err(*line, format!("letter `{}` is not a single character", t[1]))),
        };
        let target = lookup(*line, &t[2])?;
        let priority: u8 = t[3]
            .parse()
            .map_err(|_| err(*line, format!("invalid priority `{}`", t[3])))?;
        if priority > MAX_PRIORITY {
            return Err(err(*line, format!("priority {priority} exceeds {MAX_PRIORITY}")));
        }
        if table[src][letter].is_some() {
            return Err(err(*line, format!("duplicate transition for ({}, {})", t[0], t[1])));
        }
        table[src][letter] = Some(Transition { target, priority });
    }
    let mut rows = Vec::with_capacity(names.len());
    for (q, row) in table.into_iter().enumerate() {
        let mut full = Vec::with_capacity(k);
        for (i, t) in row.into_iter().enumerate() {
            full.push(t.ok_or_else(|| {
                err(last, format!("missing transition for ({}, {})", names[q], alphabet.letter(i)))
            })?);
        }
        rows.push(full);
    }
    Dpa::new(alphabet, names, initial, rows)
}
