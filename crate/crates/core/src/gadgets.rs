//! Small games built from a failed property's witness, on which the
//! condition needs memory.
//!
//! Words on edges are spelled out letter by letter through fresh vertices
//! with a single successor (owned by Adam). Ultimately periodic words become
//! a path into a cycle that never returns to the choice vertex.

use std::fmt;

use crate::automata::Dpa;
use crate::error::{Error, Result};
use crate::games::{find_positional, solve_game, Arena, Game, Owner, Strategy, Vertex};
use crate::positionality::Witness;
use crate::words::{Alphabet, FiniteWord, LassoWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub arena: Arena,
    pub start: Vertex,
    /// Eve's only vertex with a real choice.
    pub choice: Vertex,
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.arena)
    }
}

struct Builder {
    arena: Arena,
}

impl Builder {
    fn edge(&mut self, src: Vertex, c: char, dst: Vertex) -> Result<()> {
        self.arena
            .add_edge(src, c, dst)
            .map_err(|e| Error::InvalidWitness(e.to_string()))
    }

    /// Spells the nonempty `word` from `from` to `to`.
    fn thread(&mut self, from: Vertex, word: &FiniteWord, to: Vertex, tag: &str) -> Result<()> {
        let letters = word.letters();
        let mut x = from;
        for (i, &c) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() {
                to
            } else {
                self.arena.add_vertex(format!("{tag}{}", i + 1), Owner::Adam)
            };
            self.edge(x, c, next)?;
            x = next;
        }
        Ok(())
    }

    /// Spells `w` from `from`: nodes `n_1..n_m` for the letters of
    /// prefix·period, the last one looping back to the start of the period.
    fn lasso(&mut self, from: Vertex, w: &LassoWord, tag: &str) -> Result<()> {
        let letters: Vec<char> = w.prefix().letters().iter().chain(w.period().letters()).copied().collect();
        let loop_start = w.prefix().len();
        let nodes: Vec<Vertex> = (1..=letters.len())
            .map(|k| self.arena.add_vertex(format!("{tag}{k}"), Owner::Adam))
            .collect();
        self.edge(from, letters[0], nodes[0])?;
        for k in 1..letters.len() {
            self.edge(nodes[k - 1], letters[k], nodes[k])?;
        }
        self.edge(nodes[letters.len() - 1], letters[loop_start], nodes[loop_start])
    }

    /// Start vertex and the Eve choice vertex reached by reading `u`.
    fn entry(&mut self, u: &FiniteWord) -> Result<(Vertex, Vertex)> {
        if u.is_empty() {
            let c = self.arena.add_vertex("c", Owner::Eve);
            return Ok((c, c));
        }
        let s = self.arena.add_vertex("s", Owner::Adam);
        let c = self.arena.add_vertex("c", Owner::Eve);
        self.thread(s, u, c, "u")?;
        Ok((s, c))
    }
}

fn nonempty(word: &FiniteWord, name: &str) -> Result<()> {
    if word.is_empty() {
        return Err(Error::InvalidWitness(format!("`{name}` must be nonempty")));
    }
    Ok(())
}

/// Builds the game in which `witness` forces Eve to use memory.
pub fn gadget_from_witness(witness: &Witness, alphabet: &Alphabet) -> Result<Gadget> {
    let mut b = Builder {
        arena: Arena::empty(alphabet.clone()),
    };
    let (start, choice) = match witness {
        Witness::One(w) => {
            nonempty(&w.u, "u")?;
            nonempty(&w.u_prime, "u'")?;
            let s = b.arena.add_vertex("s", Owner::Adam);
            let c = b.arena.add_vertex("c", Owner::Eve);
            b.thread(s, &w.u, c, "u")?;
            b.thread(s, &w.u_prime, c, "up")?;
            b.lasso(c, &w.w, "w")?;
            b.lasso(c, &w.w_prime, "wp")?;
            (s, c)
        }
        Witness::Two(w) => {
            nonempty(&w.v, "v")?;
            let (s, c) = b.entry(&w.u)?;
            b.thread(c, &w.v, c, "v")?;
            b.lasso(c, &w.w, "w")?;
            (s, c)
        }
        Witness::Three(w) => {
            nonempty(&w.v, "v")?;
            nonempty(&w.v_prime, "v'")?;
            let (s, c) = b.entry(&w.u)?;
            b.thread(c, &w.v, c, "v")?;
            b.thread(c, &w.v_prime, c, "vp")?;
            (s, c)
        }
    };
    b.arena.validate()?;
    Ok(Gadget {
        arena: b.arena,
        start,
        choice,
    })
}

/// Outcome of playing the condition on a witness gadget.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub gadget: Gadget,
    /// Eve wins from the start vertex (with memory).
    pub eve_wins: bool,
    /// A positional winning strategy from the start vertex, if any exists.
    pub positional: Option<Strategy>,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.eve_wins && self.positional.is_none()
    }
}

pub fn certify(a: &Dpa, witness: &Witness) -> Result<Certificate> {
    let gadget = gadget_from_witness(witness, a.alphabet())?;
    let game = Game::new(gadget.arena.clone(), a.clone())?;
    let eve_wins = solve_game(&game)?.region.contains(&gadget.start);
    let positional = find_positional(&game, gadget.start)?;
    Ok(Certificate {
        gadget,
        eve_wins,
        positional,
    })
}

/// Eve wins the witness gadget from its start, but not positionally.
pub fn certify_nonpositional(a: &Dpa, witness: &Witness) -> Result<bool> {
    Ok(certify(a, witness)?.holds())
}
