//! Arenas, games with ω-regular objectives, and their solution.
//!
//! A game is solved through its product with the objective's automaton,
//! which is a parity game; memory states of the resulting Eve strategy are
//! pairs (vertex, automaton state).

mod parity;
mod strategy;

pub use parity::{product_game, solve_parity, ParityGame, ParitySolution, PgEdge};
pub use strategy::{
    find_positional, losing_play, solve_game, verify_strategy, GameSolution, Strategy,
    POSITIONAL_SEARCH_LIMIT,
};

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::Dpa;
use crate::error::{Error, Result};
use crate::words::Alphabet;

pub type Vertex = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Owner {
    Eve,
    Adam,
}

impl Owner {
    fn token(self) -> &'static str {
        match self {
            Owner::Eve => "E",
            Owner::Adam => "A",
        }
    }
}

/// A finite sinkless edge-labelled graph whose vertices are split between Eve and Adam.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    alphabet: Alphabet,
    names: Vec<String>,
    owners: Vec<Owner>,
    out: Vec<Vec<(char, Vertex)>>,
}

impl Arena {
    /// An arena without vertices; fill it with [`add_vertex`](Self::add_vertex)
    /// and [`add_edge`](Self::add_edge), then [`validate`](Self::validate).
    pub fn empty(alphabet: Alphabet) -> Self {
        Arena {
            alphabet,
            names: Vec::new(),
            owners: Vec::new(),
            out: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, owner: Owner) -> Vertex {
        self.names.push(name.into());
        self.owners.push(owner);
        self.out.push(Vec::new());
        self.names.len() - 1
    }

    pub fn add_edge(&mut self, src: Vertex, letter: char, dst: Vertex) -> Result<()> {
        self.alphabet.require(letter)?;
        if src >= self.len() || dst >= self.len() {
            return Err(Error::PreconditionViolated(format!(
                "edge ({src}, {letter}, {dst}) refers to a missing vertex"
            )));
        }
        if !self.out[src].contains(&(letter, dst)) {
            self.out[src].push((letter, dst));
        }
        Ok(())
    }

    /// Rejects sinks and duplicate vertex names.
    pub fn validate(&self) -> Result<()> {
        let distinct: BTreeSet<&String> = self.names.iter().collect();
        if distinct.len() != self.names.len() {
            return Err(Error::PreconditionViolated("duplicate vertex name".into()));
        }
        if let Some(v) = (0..self.len()).find(|&v| self.out[v].is_empty()) {
            return Err(Error::SinkVertex(self.names[v].clone()));
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_arena(text)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        Arena::parse(&text)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name)
    }

    pub fn owner(&self, v: Vertex) -> Owner {
        self.owners[v]
    }

    /// Outgoing edges as (letter, target), in insertion order.
    pub fn edges(&self, v: Vertex) -> &[(char, Vertex)] {
        &self.out[v]
    }

    pub fn num_edges(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, src: Vertex, letter: char, dst: Vertex) -> bool {
        self.out[src].contains(&(letter, dst))
    }

    pub fn is_eve_only(&self) -> bool {
        self.owners.iter().all(|&o| o == Owner::Eve)
    }
}

impl fmt::Display for Arena {
    /// Writes the `arena v1` file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "arena v1")?;
        writeln!(f, "alphabet {}", self.alphabet)?;
        for v in 0..self.len() {
            writeln!(f, "vertex {} {}", self.names[v], self.owners[v].token())?;
        }
        for v in 0..self.len() {
            for &(c, t) in &self.out[v] {
                writeln!(f, "edge {} {} {}", self.names[v], c, self.names[t])?;
            }
        }
        Ok(())
    }
}

fn parse_arena(text: &str) -> Result<Arena> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut arena: Option<Arena> = None;
    let mut header = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if !header {
            if tokens != ["arena", "v1"] {
                return Err(err(line_no, "expected header `arena v1`".into()));
            }
            header = true;
            continue;
        }
        match tokens.as_slice() {
            ["alphabet", letters @ ..] => {
                if arena.is_some() {
                    return Err(err(line_no, "duplicate `alphabet`".into()));
                }
                let mut chars = Vec::new();
                for tok in letters {
                    let mut it = tok.chars();
                    match (it.next(), it.next()) {
                        (Some(c), None) => chars.push(c),
                        _ => return Err(err(line_no, format!("letter `{tok}` is not a single character"))),
                    }
                }
                let alphabet = Alphabet::new(chars).map_err(|e| err(line_no, e.to_string()))?;
                arena = Some(Arena::empty(alphabet));
            }
            ["vertex", name, owner] => {
                let a = arena
                    .as_mut()
                    .ok_or_else(|| err(line_no, "`vertex` before `alphabet`".into()))?;
                let owner = match *owner {
                    "E" => Owner::Eve,
                    "A" => Owner::Adam,
                    o => return Err(err(line_no, format!("owner must be E or A, got `{o}`"))),
                };
                if a.vertex_by_name(name).is_some() {
                    return Err(err(line_no, format!("duplicate vertex `{name}`")));
                }
                a.add_vertex(*name, owner);
            }
            ["edge", src, letter, dst] => {
                let a = arena
                    .as_mut()
                    .ok_or_else(|| err(line_no, "`edge` before `alphabet`".into()))?;
                let find = |n: &str| {
                    a.vertex_by_name(n)
                        .ok_or_else(|| err(line_no, format!("unknown vertex `{n}`")))
                };
                let (s, d) = (find(src)?, find(dst)?);
                let mut it = letter.chars();
                let c = match (it.next(), it.next()) {
                    (Some(c), None) => c,
                    _ => return Err(err(line_no, format!("letter `{letter}` is not a single character"))),
                };
                if a.has_edge(s, c, d) {
                    return Err(err(line_no, "duplicate edge".into()));
                }
                a.add_edge(s, c, d).map_err(|e| err(line_no, e.to_string()))?;
            }
            [keyword, ..] => return Err(err(line_no, format!("malformed `{keyword}` line"))),
            [] => unreachable!(),
        }
    }
    let last = text.lines().count().max(1);
    if !header {
        return Err(err(last, "missing header `arena v1`".into()));
    }
    let arena = arena.ok_or_else(|| err(last, "missing `alphabet`".into()))?;
    if arena.is_empty() {
        return Err(err(last, "arena has no vertices".into()));
    }
    arena.validate()?;
    Ok(arena)
}

/// An arena together with Eve's objective.
#[derive(Clone, Debug)]
pub struct Game {
    arena: Arena,
    condition: Dpa,
}

impl Game {
    pub fn new(arena: Arena, condition: Dpa) -> Result<Self> {
        if !arena.alphabet().same_letters(condition.alphabet()) {
            return Err(Error::AlphabetMismatch(format!(
                "arena [{}] vs condition [{}]",
                arena.alphabet(),
                condition.alphabet()
            )));
        }
        arena.validate()?;
        Ok(Game { arena, condition })
    }

    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    pub fn condition(&self) -> &Dpa {
        &self.condition
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArenaParams {
    pub vertices: usize,
    /// Each vertex gets between 1 and `out_degree` outgoing edges.
    pub out_degree: usize,
    /// Probability that a vertex belongs to Eve.
    pub eve_fraction: f64,
}

/// A deterministic pseudo-random sinkless arena.
pub fn random_arena(params: ArenaParams, alphabet: &Alphabet, seed: u64) -> Result<Arena> {
    if params.vertices == 0 || params.out_degree == 0 {
        return Err(Error::PreconditionViolated(
            "random arenas need at least one vertex and one edge per vertex".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arena = Arena::empty(alphabet.clone());
    let p = params.eve_fraction.clamp(0.0, 1.0);
    for v in 0..params.vertices {
        let owner = if rng.gen_bool(p) { Owner::Eve } else { Owner::Adam };
        arena.add_vertex(format!("v{v}"), owner);
    }
    for v in 0..params.vertices {
        let degree = rng.gen_range(1..=params.out_degree);
        for _ in 0..degree {
            let c = alphabet.letter(rng.gen_range(0..alphabet.len()));
            let t = rng.gen_range(0..params.vertices);
            arena.add_edge(v, c, t)?;
        }
    }
    arena.validate()?;
    Ok(arena)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn w2game_shape() {
        let g = fixtures::w2game();
        assert_eq!(g.len(), 2);
        assert_eq!(g.num_edges(), 6);
        assert_eq!(g.owner(g.vertex_by_name("u").unwrap()), Owner::Adam);
        assert_eq!(g.owner(g.vertex_by_name("center").unwrap()), Owner::Eve);
        assert_eq!(Arena::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn sinks_are_rejected() {
        let text = "arena v1\nalphabet a\nvertex x E\nvertex y A\nedge x a y\n";
        assert_eq!(Arena::parse(text), Err(Error::SinkVertex("y".into())));
    }

    #[test]
    fn malformed_arenas() {
        assert!(matches!(Arena::parse("vertex x E\n"), Err(Error::Parse { line: 1, .. })));
        let text = "arena v1\nalphabet a\nvertex x Q\n";
        assert!(matches!(Arena::parse(text), Err(Error::Parse { line: 3, .. })));
        let text = "arena v1\nalphabet a\nvertex x E\nedge x b x\n";
        assert!(matches!(Arena::parse(text), Err(Error::Parse { line: 4, .. })));
        let text = "arena v1\nalphabet a\nvertex x E\nedge x a y\n";
        assert!(matches!(Arena::parse(text), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn condition_alphabet_must_match() {
        let r = Game::new(fixtures::twoloops(), fixtures::rabin());
        assert!(matches!(r, Err(Error::AlphabetMismatch(_))));
        assert!(Game::new(fixtures::twoloops(), fixtures::buchi_a()).is_ok());
    }

    #[test]
    fn random_arenas() {
        let ab = Alphabet::new("ab".chars()).unwrap();
        let params = ArenaParams {
            vertices: 3,
            out_degree: 2,
            eve_fraction: 1.0,
        };
        let a = random_arena(params, &ab, 42).unwrap();
        assert!(a.validate().is_ok());
        assert!(a.is_eve_only());
        assert_eq!(a, random_arena(params, &ab, 42).unwrap());
        for v in 0..a.len() {
            assert!((1..=2).contains(&a.edges(v).len()));
        }
        let mixed = ArenaParams {
            vertices: 40,
            out_degree: 3,
            eve_fraction: 0.5,
        };
        let m = random_arena(mixed, &ab, 7).unwrap();
        assert!(!m.is_eve_only());
        assert!((0..m.len()).any(|v| m.owner(v) == Owner::Eve));
    }
}
