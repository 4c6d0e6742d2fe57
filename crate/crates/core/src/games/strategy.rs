//! Eve strategies as a graph of memory states mapped onto the arena.

use std::collections::VecDeque;

use super::{parity, Arena, Game, Owner, Vertex};
use crate::error::{Error, Result};
use crate::graph::OmegaGraph;
use crate::words::LassoWord;

/// Upper bound on the number of choice functions [`find_positional`] enumerates.
pub const POSITIONAL_SEARCH_LIMIT: u128 = 1_000_000;

/// A strategy graph `S` with `sigma: S -> V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    sigma: Vec<Vertex>,
    edges: Vec<Vec<(char, usize)>>,
}

impl Strategy {
    pub fn new(sigma: Vec<Vertex>, edges: Vec<Vec<(char, usize)>>) -> Self {
        assert_eq!(sigma.len(), edges.len(), "one edge list per memory state");
        Strategy { sigma, edges }
    }

    /// The positional strategy whose memory states are the arena vertices.
    /// `choice[v]` is Eve's move at `v`; Adam vertices keep all their moves.
    pub fn from_choice(arena: &Arena, choice: &[Option<(char, Vertex)>]) -> Self {
        let edges = (0..arena.len())
            .map(|v| match arena.owner(v) {
                Owner::Eve => choice[v].into_iter().collect(),
                Owner::Adam => arena.edges(v).to_vec(),
            })
            .collect();
        Strategy::new((0..arena.len()).collect(), edges)
    }

    pub fn num_states(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self, s: usize) -> Vertex {
        self.sigma[s]
    }

    pub fn edges(&self, s: usize) -> &[(char, usize)] {
        &self.edges[s]
    }

    /// Memory states mapped to `v`.
    pub fn states_at(&self, v: Vertex) -> Vec<usize> {
        (0..self.num_states()).filter(|&s| self.sigma[s] == v).collect()
    }

    /// `max |sigma^-1(v)|`, zero for an empty strategy.
    pub fn memory(&self) -> usize {
        let mut count = std::collections::BTreeMap::new();
        for &v in &self.sigma {
            *count.entry(v).or_insert(0) += 1;
        }
        count.into_values().max().unwrap_or(0)
    }

    pub fn is_positional(&self) -> bool {
        self.memory() <= 1
    }

    /// Checks the morphism, Eve single-choice, Adam completeness and sinklessness.
    pub fn validate(&self, arena: &Arena) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidStrategy(m));
        for s in 0..self.num_states() {
            let v = self.sigma[s];
            if v >= arena.len() {
                return bad(format!("memory state {s} maps to a missing vertex"));
            }
            if self.edges[s].is_empty() {
                return bad(format!("memory state {s} has no outgoing edge"));
            }
            for &(c, t) in &self.edges[s] {
                if t >= self.num_states() {
                    return bad(format!("memory state {s} has an edge to missing state {t}"));
                }
                if !arena.has_edge(v, c, self.sigma[t]) {
                    return bad(format!(
                        "edge ({s}, {c}, {t}) is not mapped to an arena edge from `{}`",
                        arena.name(v)
                    ));
                }
            }
            match arena.owner(v) {
                Owner::Eve if self.edges[s].len() != 1 => {
                    return bad(format!(
                        "memory state {s} over Eve vertex `{}` has {} edges",
                        arena.name(v),
                        self.edges[s].len()
                    ));
                }
                Owner::Adam => {
                    for &(c, t) in arena.edges(v) {
                        if !self.edges[s].iter().any(|&(d, u)| d == c && self.sigma[u] == t) {
                            return bad(format!(
                                "memory state {s} does not answer Adam's move ({}, {c}, {})",
                                arena.name(v),
                                arena.name(t)
                            ));
                        }
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Product with a cyclic counter of size `k`; same plays, `k` times the memory.
    /// State `(s, i)` has index `s * k + i`.
    pub fn inflate(&self, k: usize) -> Strategy {
        assert!(k > 0);
        let mut sigma = Vec::with_capacity(self.num_states() * k);
        let mut edges = Vec::with_capacity(self.num_states() * k);
        for s in 0..self.num_states() {
            for i in 0..k {
                sigma.push(self.sigma[s]);
                edges.push(
                    self.edges[s]
                        .iter()
                        .map(|&(c, t)| (c, t * k + (i + 1) % k))
                        .collect(),
                );
            }
        }
        Strategy::new(sigma, edges)
    }
}

/// A play of `s` from one of `from` whose label the condition rejects.
pub fn losing_play(g: &Game, s: &Strategy, from: &[usize]) -> Result<Option<LassoWord>> {
    s.validate(g.arena())?;
    if let Some(&bad) = from.iter().find(|&&m| m >= s.num_states()) {
        return Err(Error::InvalidStrategy(format!("start state {bad} does not exist")));
    }
    let dpa = g.condition();
    let nq = dpa.num_states();
    let mut graph = OmegaGraph::new(s.num_states() * nq);
    for m in 0..s.num_states() {
        for q in 0..nq {
            for &(c, t) in s.edges(m) {
                let tr = dpa.step_char(q, c)?;
                // shifting by one complements the condition
                graph.add_arc(m * nq + q, c, t * nq + tr.target, [tr.priority + 1, 0]);
            }
        }
    }
    let starts: Vec<usize> = from.iter().map(|&m| m * nq + dpa.initial()).collect();
    Ok(graph.accepting_lasso(&starts))
}

/// Whether every play of `s` from a state in `from` is won by Eve.
pub fn verify_strategy(g: &Game, s: &Strategy, from: &[usize]) -> Result<bool> {
    Ok(losing_play(g, s, from)?.is_none())
}

/// The first positional strategy (odometer order, first Eve vertex fastest)
/// that wins from `v0`.
pub fn find_positional(g: &Game, v0: Vertex) -> Result<Option<Strategy>> {
    let arena = g.arena();
    if v0 >= arena.len() {
        return Err(Error::PreconditionViolated(format!("vertex {v0} does not exist")));
    }
    let eve: Vec<Vertex> = (0..arena.len()).filter(|&v| arena.owner(v) == Owner::Eve).collect();
    let size = eve
        .iter()
        .try_fold(1u128, |acc, &v| acc.checked_mul(arena.edges(v).len() as u128))
        .unwrap_or(u128::MAX);
    if size > POSITIONAL_SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge {
            size,
            limit: POSITIONAL_SEARCH_LIMIT,
        });
    }
    let mut digits = vec![0usize; eve.len()];
    loop {
        let mut choice = vec![None; arena.len()];
        for (&v, &d) in eve.iter().zip(&digits) {
            choice[v] = Some(arena.edges(v)[d]);
        }
        let s = Strategy::from_choice(arena, &choice);
        if verify_strategy(g, &s, &[v0])? {
            return Ok(Some(s));
        }
        let mut i = 0;
        loop {
            if i == eve.len() {
                return Ok(None);
            }
            digits[i] += 1;
            if digits[i] < arena.edges(eve[i]).len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSolution {
    /// Vertices from which Eve wins, ascending.
    pub region: Vec<Vertex>,
    pub strategy: Strategy,
    /// `initial[i]` is the memory state to start from at `region[i]`.
    pub initial: Vec<usize>,
    /// The product vertex `(v, q)` behind each memory state.
    pub product_states: Vec<(Vertex, usize)>,
}

impl GameSolution {
    pub fn initial_state(&self, v: Vertex) -> Option<usize> {
        self.region.iter().position(|&r| r == v).map(|i| self.initial[i])
    }
}

/// Solves the product parity game. Memory states are the product vertices
/// reachable from `(v, q0)`, `v` in the winning region, under Eve's positional
/// product strategy.
pub fn solve_game(g: &Game) -> Result<GameSolution> {
    let (arena, dpa) = (g.arena(), g.condition());
    let nq = dpa.num_states();
    let pg = parity::product_game(g);
    let sol = parity::solve_parity(&pg);
    let q0 = dpa.initial();
    let region: Vec<Vertex> = (0..arena.len()).filter(|&v| sol.eve_region[v * nq + q0]).collect();

    let mut id = vec![usize::MAX; pg.num_vertices()];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    let visit = |x: usize, id: &mut Vec<usize>, order: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
        if id[x] == usize::MAX {
            id[x] = order.len();
            order.push(x);
            queue.push_back(x);
        }
        id[x]
    };
    let initial: Vec<usize> = region
        .iter()
        .map(|&v| visit(v * nq + q0, &mut id, &mut order, &mut queue))
        .collect();
    let mut edges: Vec<Vec<(char, usize)>> = Vec::new();
    while let Some(x) = queue.pop_front() {
        debug_assert!(sol.eve_region[x]);
        let moves: Vec<usize> = match pg.owner(x) {
            Owner::Eve => vec![sol.eve_choice[x].expect("Eve vertices in her region have a choice")],
            Owner::Adam => pg.out_edges(x).to_vec(),
        };
        let mut out = Vec::new();
        for e in moves {
            let edge = *pg.edge(e);
            out.push((edge.letter, visit(edge.dst, &mut id, &mut order, &mut queue)));
        }
        edges.push(out);
    }
    let sigma = order.iter().map(|&x| x / nq).collect();
    let product_states = order.iter().map(|&x| (x / nq, x % nq)).collect();
    Ok(GameSolution {
        region,
        strategy: Strategy::new(sigma, edges),
        initial,
        product_states,
    })
}
