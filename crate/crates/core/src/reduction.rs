//! Shrinking finite-memory strategies on Eve-only arenas to positional ones
//! by merging memory states that sit over the same vertex.

use std::fmt;

use serde::Serialize;

use crate::automata::Dpa;
use crate::error::{Error, Result};
use crate::games::{losing_play, Game, Strategy};
use crate::positionality::{compare_lassos, Preorder};
use crate::words::{FiniteWord, LassoWord};

fn successor(s: &Strategy, m: usize) -> Result<(char, usize)> {
    match s.edges(m) {
        [only] => Ok(*only),
        edges => Err(Error::NotEveOnly(format!(
            "memory state {m} has {} outgoing edges",
            edges.len()
        ))),
    }
}

/// The word read along the unique play from `m`.
pub fn unique_path_lasso(s: &Strategy, m: usize) -> Result<LassoWord> {
    let mut position = vec![usize::MAX; s.num_states()];
    let mut letters = Vec::new();
    let mut x = m;
    while position[x] == usize::MAX {
        position[x] = letters.len();
        let (c, t) = successor(s, x)?;
        letters.push(c);
        x = t;
    }
    let start = position[x];
    let prefix = FiniteWord::from(letters[..start].to_vec());
    let period = FiniteWord::from(letters[start..].to_vec());
    Ok(LassoWord::new(prefix, period)?.normalize())
}

/// Label of the shortest nonempty path from `from` to `to`. Plays are
/// unique, so this follows successors until `to` or a repeat.
pub fn path_word(s: &Strategy, from: usize, to: usize) -> Result<Option<FiniteWord>> {
    let mut seen = vec![false; s.num_states()];
    let mut letters = Vec::new();
    let mut x = from;
    loop {
        let (c, t) = successor(s, x)?;
        letters.push(c);
        if t == to {
            return Ok(Some(FiniteWord::from(letters)));
        }
        if seen[t] {
            return Ok(None);
        }
        seen[t] = true;
        x = t;
    }
}

/// One `≤_L` query asked while choosing a merge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub left: String,
    pub right: String,
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergePlan {
    pub keep: usize,
    pub drop: usize,
    /// 1: no path either way, 2: path `p -> q` only, 3: path `q -> p` only, 4: both.
    pub case: u8,
    pub comparisons: Vec<Comparison>,
}

impl fmt::Display for MergePlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}: keep {} drop {}", self.case, self.keep, self.drop)?;
        for c in &self.comparisons {
            write!(f, " [{} vs {}: {}]", c.left, c.right, c.relation)?;
        }
        Ok(())
    }
}

/// Removes `plan.drop`, redirecting its incoming edges to `plan.keep`.
/// States above `drop` shift down by one.
pub fn merge(s: &Strategy, plan: &MergePlan) -> Result<Strategy> {
    let n = s.num_states();
    let (keep, drop) = (plan.keep, plan.drop);
    if keep >= n || drop >= n || keep == drop {
        return Err(Error::InvalidPlan(format!("cannot merge {drop} into {keep} among {n} states")));
    }
    if s.sigma(keep) != s.sigma(drop) {
        return Err(Error::InvalidPlan(format!("states {keep} and {drop} lie over different vertices")));
    }
    let renumber = |x: usize| {
        let x = if x == drop { keep } else { x };
        if x > drop {
            x - 1
        } else {
            x
        }
    };
    let mut sigma = Vec::with_capacity(n - 1);
    let mut edges = Vec::with_capacity(n - 1);
    for m in (0..n).filter(|&m| m != drop) {
        sigma.push(s.sigma(m));
        let mut out: Vec<(char, usize)> = Vec::new();
        for &(c, t) in s.edges(m) {
            let e = (c, renumber(t));
            if !out.contains(&e) {
                out.push(e);
            }
        }
        edges.push(out);
    }
    Ok(Strategy::new(sigma, edges))
}

fn record(left: &LassoWord, right: &LassoWord, rel: &Preorder) -> Comparison {
    Comparison {
        left: left.to_string(),
        right: right.to_string(),
        relation: rel.to_string(),
    }
}

/// Decides which of `p`, `q` survives. The result keeps the state whose
/// continuation is at least as good.
pub fn choose_merge(s: &Strategy, a: &Dpa, p: usize, q: usize) -> Result<MergePlan> {
    if p == q || p >= s.num_states() || q >= s.num_states() || s.sigma(p) != s.sigma(q) {
        return Err(Error::PreconditionViolated(format!(
            "memory states {p} and {q} must be distinct and lie over the same vertex"
        )));
    }
    let forward = path_word(s, p, q)?;
    let backward = path_word(s, q, p)?;
    let lasso = |x: usize| unique_path_lasso(s, x);
    let omega = |v: &FiniteWord| LassoWord::omega(v.clone()).map(|w| w.normalize());
    // the third entry wins when strictly better, the fourth otherwise
    let (left, right, case, keep_if_left_wins, keep_if_right_wins) = match (&forward, &backward) {
        (None, None) => (lasso(p)?, lasso(q)?, 1, p, q),
        (Some(v), None) => (omega(v)?, lasso(q)?, 2, p, q),
        (None, Some(v)) => (omega(v)?, lasso(p)?, 3, q, p),
        (Some(v), Some(v_prime)) => (omega(v_prime)?, omega(v)?, 4, q, p),
    };
    let rel = compare_lassos(a, &left, &right)?;
    let keep = match &rel {
        Preorder::Equivalent => p.min(q),
        Preorder::LeftLeq => keep_if_right_wins,
        Preorder::RightLeq => keep_if_left_wins,
        Preorder::Incomparable { u, u_prime } => {
            return Err(Error::IncomparableLassos {
                left: left.to_string(),
                right: right.to_string(),
                u: u.to_string(),
                u_prime: u_prime.to_string(),
            })
        }
    };
    Ok(MergePlan {
        keep,
        drop: if keep == p { q } else { p },
        case,
        comparisons: vec![record(&left, &right, &rel)],
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub strategy: Strategy,
    /// Initial memory states after all merges, ascending.
    pub initial: Vec<usize>,
    pub merges: Vec<MergePlan>,
    /// Number of memory states before the first merge and after each merge.
    pub sizes: Vec<usize>,
}

fn first_shared_pair(s: &Strategy) -> Option<(usize, usize)> {
    let n = s.num_states();
    (0..n).find_map(|p| ((p + 1)..n).find(|&q| s.sigma(p) == s.sigma(q)).map(|q| (p, q)))
}

/// Merges memory states until the strategy is positional, re-verifying after
/// every merge that it still wins from the initial states.
pub fn reduce_to_positional(g: &Game, s: &Strategy, initial: &[usize]) -> Result<Reduction> {
    let arena = g.arena();
    if let Some(v) = (0..arena.len()).find(|&v| arena.owner(v) != crate::games::Owner::Eve) {
        return Err(Error::NotEveOnly(format!("vertex `{}` belongs to Adam", arena.name(v))));
    }
    if let Some(play) = losing_play(g, s, initial)? {
        return Err(Error::PreconditionViolated(format!(
            "the input strategy loses the play {play}"
        )));
    }
    let mut current = s.clone();
    let mut init: Vec<usize> = initial.to_vec();
    init.sort_unstable();
    init.dedup();
    let mut merges = Vec::new();
    let mut sizes = vec![current.num_states()];
    while let Some((p, q)) = first_shared_pair(&current) {
        let plan = choose_merge(&current, g.condition(), p, q)?;
        let next = merge(&current, &plan)?;
        debug_assert_eq!(next.num_states() + 1, current.num_states());
        init = init
            .iter()
            .map(|&x| {
                let x = if x == plan.drop { plan.keep } else { x };
                if x > plan.drop {
                    x - 1
                } else {
                    x
                }
            })
            .collect();
        init.dedup();
        if let Some(play) = losing_play(g, &next, &init)? {
            return Err(Error::MergeBrokeWinning {
                keep: plan.keep,
                drop: plan.drop,
                play: play.to_string(),
            });
        }
        sizes.push(next.num_states());
        merges.push(plan);
        current = next;
    }
    Ok(Reduction {
        strategy: current,
        initial: init,
        merges,
        sizes,
    })
}
