//! Edge-labelled graphs whose edges carry a pair of priorities, with a search
//! for lassos that are accepting (min-even) in both coordinates.
//!
//! Single-coordinate questions use a constant `0` in the second coordinate.

use std::collections::{BTreeSet, VecDeque};

use crate::words::{FiniteWord, LassoWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub letter: char,
    pub dst: usize,
    pub pri: [u8; 2],
}

#[derive(Clone, Debug, Default)]
pub struct OmegaGraph {
    out: Vec<Vec<Arc>>,
}

const UNSEEN: usize = usize::MAX;

/// Iterative Tarjan. Returns the component id of every vertex; ids are
/// assigned in reverse topological order of the condensation.
pub fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut calls: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0;
    let mut comps = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        calls.push((root, 0));

        while let Some(&mut (v, ref mut next)) = calls.last_mut() {
            if let Some(&w) = adj[v].get(*next) {
                *next += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = comps;
                    if w == v {
                        break;
                    }
                }
                comps += 1;
            }
        }
    }
    comp
}

impl OmegaGraph {
    pub fn new(vertices: usize) -> Self {
        OmegaGraph {
            out: vec![Vec::new(); vertices],
        }
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn add_arc(&mut self, src: usize, letter: char, dst: usize, pri: [u8; 2]) {
        self.out[src].push(Arc { letter, dst, pri });
    }

    pub fn arcs(&self, v: usize) -> &[Arc] {
        &self.out[v]
    }

    /// Breadth-first search from `starts`; arcs are explored in insertion order.
    /// Returns, per vertex, its distance and the arc used to reach it.
    fn bfs(&self, starts: &[usize]) -> (Vec<usize>, Vec<Option<(usize, char)>>) {
        let mut dist = vec![UNSEEN; self.len()];
        let mut parent = vec![None; self.len()];
        let mut queue = VecDeque::new();
        for &s in starts {
            if dist[s] == UNSEEN {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for arc in &self.out[v] {
                if dist[arc.dst] == UNSEEN {
                    dist[arc.dst] = dist[v] + 1;
                    parent[arc.dst] = Some((v, arc.letter));
                    queue.push_back(arc.dst);
                }
            }
        }
        (dist, parent)
    }

    /// Vertices reachable from `starts` (starts included).
    pub fn reachable(&self, starts: &[usize]) -> Vec<bool> {
        self.bfs(starts).0.into_iter().map(|d| d != UNSEEN).collect()
    }

    /// Shortest path from `from` to `to` using only arcs accepted by `keep`.
    fn path_within(
        &self,
        from: usize,
        to: usize,
        keep: &dyn Fn(usize, &Arc) -> bool,
    ) -> Option<Vec<char>> {
        if from == to {
            return Some(Vec::new());
        }
        let mut parent: Vec<Option<(usize, char)>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for arc in &self.out[v] {
                if !keep(v, arc) || seen[arc.dst] {
                    continue;
                }
                seen[arc.dst] = true;
                parent[arc.dst] = Some((v, arc.letter));
                if arc.dst == to {
                    return Some(unwind(&parent, from, to));
                }
                queue.push_back(arc.dst);
            }
        }
        None
    }

    /// Finds a lasso, read from one of `starts`, along which the minimum
    /// priority seen infinitely often is even in both coordinates.
    ///
    /// For every pair of even thresholds `(d0, d1)` the graph is restricted to
    /// arcs with priorities `>= (d0, d1)`; a reachable strongly connected
    /// component containing an arc with first priority `d0` and an arc with
    /// second priority `d1` yields a cycle through both. Among all candidates
    /// the shortest normalized lasso is returned (ties: lexicographic).
    pub fn accepting_lasso(&self, starts: &[usize]) -> Option<LassoWord> {
        let (dist, parent) = self.bfs(starts);
        let reached = |v: usize| dist[v] != UNSEEN;

        let mut evens = [BTreeSet::new(), BTreeSet::new()];
        for v in (0..self.len()).filter(|&v| reached(v)) {
            for arc in &self.out[v] {
                for (k, set) in evens.iter_mut().enumerate() {
                    if arc.pri[k] % 2 == 0 {
                        set.insert(arc.pri[k]);
                    }
                }
            }
        }

        let mut best: Option<LassoWord> = None;
        for &d0 in &evens[0] {
            for &d1 in &evens[1] {
                let allowed = |v: usize, arc: &Arc| reached(v) && arc.pri[0] >= d0 && arc.pri[1] >= d1;
                let adj: Vec<Vec<usize>> = (0..self.len())
                    .map(|v| {
                        self.out[v]
                            .iter()
                            .filter(|a| allowed(v, a))
                            .map(|a| a.dst)
                            .collect()
                    })
                    .collect();
                let comp = tarjan_scc(&adj);
                let mut examined = BTreeSet::new();
                for v in 0..self.len() {
                    if !reached(v) || !examined.insert(comp[v]) {
                        continue;
                    }
                    let c = comp[v];
                    let inside = |u: usize, a: &Arc| allowed(u, a) && comp[u] == c && comp[a.dst] == c;
                    let members: Vec<usize> = (0..self.len()).filter(|&u| comp[u] == c).collect();
                    let internal = || {
                        members
                            .iter()
                            .flat_map(|&u| self.out[u].iter().map(move |a| (u, *a)))
                            .filter(|(u, a)| inside(*u, a))
                    };
                    let both = internal().find(|(_, a)| a.pri == [d0, d1]);
                    let arcs = match both {
                        Some(e) => vec![e],
                        None => {
                            let e0 = internal().find(|(_, a)| a.pri[0] == d0);
                            let e1 = internal().find(|(_, a)| a.pri[1] == d1);
                            match (e0, e1) {
                                (Some(e0), Some(e1)) => vec![e0, e1],
                                _ => continue,
                            }
                        }
                    };
                    let entry = *members
                        .iter()
                        .min_by_key(|&&u| (dist[u], u))
                        .expect("component is nonempty");
                    let mut cycle = Vec::new();
                    let mut at = entry;
                    for (src, arc) in &arcs {
                        cycle.extend(self.path_within(at, *src, &inside).expect("strongly connected"));
                        cycle.push(arc.letter);
                        at = arc.dst;
                    }
                    cycle.extend(self.path_within(at, entry, &inside).expect("strongly connected"));

                    let access = unwind_to_root(&parent, entry);
                    let lasso = LassoWord::new(access, FiniteWord::from(cycle))
                        .expect("cycle is nonempty")
                        .normalize();
                    let better = match &best {
                        None => true,
                        Some(b) => rank(&lasso) < rank(b),
                    };
                    if better {
                        best = Some(lasso);
                    }
                }
            }
        }
        best
    }
}

fn rank(w: &LassoWord) -> (usize, String) {
    (w.prefix().len() + w.period().len(), w.to_string())
}

fn unwind(parent: &[Option<(usize, char)>], from: usize, to: usize) -> Vec<char> {
    let mut letters = Vec::new();
    let mut v = to;
    while v != from {
        let (p, c) = parent[v].expect("broken parent chain");
        letters.push(c);
        v = p;
    }
    letters.reverse();
    letters
}

fn unwind_to_root(parent: &[Option<(usize, char)>], to: usize) -> FiniteWord {
    let mut letters = Vec::new();
    let mut v = to;
    while let Some((p, c)) = parent[v] {
        letters.push(c);
        v = p;
    }
    letters.reverse();
    FiniteWord::from(letters)
}
