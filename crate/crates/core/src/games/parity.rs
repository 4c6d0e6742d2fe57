//! Parity games with edge priorities (min-even), solved by attractor recursion.
//!
//! Edges are subdivided so that every edge becomes a vertex carrying its
//! priority; original vertices get a priority above all edge priorities and
//! therefore never decide a play. The recursion always splits on the
//! minimum priority present.

use super::{Game, Owner, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PgEdge {
    pub src: Vertex,
    pub dst: Vertex,
    pub priority: u8,
    pub letter: char,
}

#[derive(Clone, Debug, Default)]
pub struct ParityGame {
    owners: Vec<Owner>,
    edges: Vec<PgEdge>,
    out: Vec<Vec<usize>>,
}

impl ParityGame {
    pub fn new(owners: Vec<Owner>) -> Self {
        let out = vec![Vec::new(); owners.len()];
        ParityGame {
            owners,
            edges: Vec::new(),
            out,
        }
    }

    pub fn add_edge(&mut self, src: Vertex, dst: Vertex, priority: u8, letter: char) -> usize {
        self.edges.push(PgEdge {
            src,
            dst,
            priority,
            letter,
        });
        self.out[src].push(self.edges.len() - 1);
        self.edges.len() - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.owners.len()
    }

    pub fn owner(&self, v: Vertex) -> Owner {
        self.owners[v]
    }

    pub fn edge(&self, e: usize) -> &PgEdge {
        &self.edges[e]
    }

    /// Indices of the edges leaving `v`.
    pub fn out_edges(&self, v: Vertex) -> &[usize] {
        &self.out[v]
    }

    pub fn edges(&self) -> &[PgEdge] {
        &self.edges
    }

    pub fn priorities(&self) -> std::collections::BTreeSet<u8> {
        self.edges.iter().map(|e| e.priority).collect()
    }

    pub fn is_sinkless(&self) -> bool {
        self.out.iter().all(|o| !o.is_empty())
    }
}

/// Product of the arena with the objective automaton. Vertex `(v, q)` has
/// index `v * |Q| + q` and inherits the owner of `v`.
pub fn product_game(g: &Game) -> ParityGame {
    let (arena, dpa) = (g.arena(), g.condition());
    let nq = dpa.num_states();
    let owners = (0..arena.len() * nq).map(|x| arena.owner(x / nq)).collect();
    let mut pg = ParityGame::new(owners);
    for v in 0..arena.len() {
        for q in 0..nq {
            for &(c, t) in arena.edges(v) {
                let tr = dpa.step_char(q, c).expect("game alphabets are checked");
                pg.add_edge(v * nq + q, t * nq + tr.target, tr.priority, c);
            }
        }
    }
    pg
}

/// Winning regions with positional strategies (edge indices) for both players.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParitySolution {
    pub eve_region: Vec<bool>,
    /// Defined on Eve's vertices inside Eve's region.
    pub eve_choice: Vec<Option<usize>>,
    /// Defined on Adam's vertices inside Adam's region.
    pub adam_choice: Vec<Option<usize>>,
}

impl ParitySolution {
    pub fn adam_region(&self) -> Vec<bool> {
        self.eve_region.iter().map(|&w| !w).collect()
    }
}

struct Subdivided {
    owner: Vec<Owner>,
    prio: Vec<u16>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

fn player(p: u16) -> Owner {
    if p.is_multiple_of(2) {
        Owner::Eve
    } else {
        Owner::Adam
    }
}

fn idx(o: Owner) -> usize {
    match o {
        Owner::Eve => 0,
        Owner::Adam => 1,
    }
}

fn opponent(o: Owner) -> Owner {
    match o {
        Owner::Eve => Owner::Adam,
        Owner::Adam => Owner::Eve,
    }
}

impl Subdivided {
    fn new(pg: &ParityGame) -> Self {
        let n = pg.num_vertices();
        let top = pg.edges.iter().map(|e| e.priority as u16).max().unwrap_or(0) + 1;
        let total = n + pg.edges.len();
        let mut owner = pg.owners.clone();
        let mut prio = vec![top; n];
        let mut succ = vec![Vec::new(); total];
        for (i, e) in pg.edges.iter().enumerate() {
            // single successor, ownership is immaterial
            owner.push(Owner::Adam);
            prio.push(e.priority as u16);
            succ[e.src].push(n + i);
            succ[n + i].push(e.dst);
        }
        let mut pred = vec![Vec::new(); total];
        for (v, ss) in succ.iter().enumerate() {
            for &s in ss {
                pred[s].push(v);
            }
        }
        Subdivided {
            owner,
            prio,
            succ,
            pred,
        }
    }

    /// Vertices of `set` from which `who` forces a visit to `target`;
    /// records attractor moves for `who` in `strat`.
    fn attractor(&self, set: &[bool], target: &[bool], who: Owner, strat: &mut [usize]) -> Vec<bool> {
        let mut attr: Vec<bool> = target.iter().zip(set).map(|(&t, &s)| t && s).collect();
        let mut remaining: Vec<usize> = (0..set.len())
            .map(|v| if set[v] { self.succ[v].iter().filter(|&&s| set[s]).count() } else { 0 })
            .collect();
        let mut stack: Vec<usize> = (0..set.len()).filter(|&v| attr[v]).collect();
        while let Some(v) = stack.pop() {
            for &u in &self.pred[v] {
                if !set[u] || attr[u] {
                    continue;
                }
                if self.owner[u] == who {
                    attr[u] = true;
                    strat[u] = v;
                    stack.push(u);
                } else {
                    remaining[u] -= 1;
                    if remaining[u] == 0 {
                        attr[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        attr
    }

    /// Returns `[eve_won, adam_won]` for the subgame `set`; `strat` receives a
    /// winning successor for every vertex owned by the player who wins it.
    fn solve(&self, set: &[bool], strat: &mut [usize]) -> [Vec<bool>; 2] {
        let n = set.len();
        let mut set = set.to_vec();
        let mut won = [vec![false; n], vec![false; n]];
        loop {
            let Some(d) = (0..n).filter(|&v| set[v]).map(|v| self.prio[v]).min() else {
                return won;
            };
            let alpha = player(d);
            let beta = opponent(alpha);
            let top: Vec<bool> = (0..n).map(|v| set[v] && self.prio[v] == d).collect();
            for v in (0..n).filter(|&v| top[v] && self.owner[v] == alpha) {
                strat[v] = *self.succ[v].iter().find(|&&s| set[s]).expect("subgames are sinkless");
            }
            let attr = self.attractor(&set, &top, alpha, strat);
            let rest: Vec<bool> = (0..n).map(|v| set[v] && !attr[v]).collect();
            let sub = self.solve(&rest, strat);
            if !sub[idx(beta)].iter().any(|&b| b) {
                for v in (0..n).filter(|&v| set[v]) {
                    won[idx(alpha)][v] = true;
                }
                return won;
            }
            let lost = self.attractor(&set, &sub[idx(beta)], beta, strat);
            for v in (0..n).filter(|&v| lost[v]) {
                won[idx(beta)][v] = true;
                set[v] = false;
            }
        }
    }
}

pub fn solve_parity(pg: &ParityGame) -> ParitySolution {
    let sub = Subdivided::new(pg);
    let total = sub.owner.len();
    let mut strat = vec![usize::MAX; total];
    let won = sub.solve(&vec![true; total], &mut strat);
    let n = pg.num_vertices();
    let choice = |v: Vertex| {
        let s = strat[v];
        debug_assert!(s >= n && s != usize::MAX);
        Some(s - n)
    };
    let mut out = ParitySolution {
        eve_region: won[0][..n].to_vec(),
        eve_choice: vec![None; n],
        adam_choice: vec![None; n],
    };
    for (v, &eve_wins) in won[0][..n].iter().enumerate() {
        match (pg.owner(v), eve_wins) {
            (Owner::Eve, true) => out.eve_choice[v] = choice(v),
            (Owner::Adam, false) => out.adam_choice[v] = choice(v),
            _ => {}
        }
    }
    out
}
