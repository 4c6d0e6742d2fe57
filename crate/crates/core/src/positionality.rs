//! Decides the three local preference properties that characterize
//! Eve-positionality of an ω-regular language, and exposes the residual
//! preorder `w ≤ w'` ("`uw ∈ L` implies `uw' ∈ L` for every prefix `u`").
//!
//! Quantification over prefixes `u` becomes quantification over reachable
//! states (with recorded access words). Quantification over nonempty words
//! `v` goes through the priority transition monoid: two words with the same
//! state map and the same minimum-priority map behave identically in every
//! check. Infinite words are lassos obtained as residual-inclusion witnesses.
//!
//! A YES verdict means the language is Eve-positional on every arena; a NO
//! verdict comes with a witness whose claims can be re-checked by membership
//! queries alone.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::automata::{Dpa, ResidualOracle, State};
use crate::error::{Error, Result};
use crate::words::{Alphabet, FiniteWord, LassoWord};

pub const DEFAULT_MONOID_CAP: usize = 100_000;

/// The behaviour of a nonempty word on the automaton: target state and
/// least priority seen, for every source state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidElement {
    pub f: Vec<State>,
    pub g: Vec<u8>,
    /// A shortest (then lexicographically least) word with this behaviour.
    pub witness: FiniteWord,
}

impl MonoidElement {
    fn of_letter(a: &Dpa, letter: usize) -> Self {
        let (f, g) = (0..a.num_states())
            .map(|q| {
                let t = a.step(q, letter);
                (t.target, t.priority)
            })
            .unzip();
        MonoidElement {
            f,
            g,
            witness: FiniteWord::from(vec![a.alphabet().letter(letter)]),
        }
    }

    /// Behaviour of `w` computed by running the automaton.
    pub fn of_word(a: &Dpa, w: &FiniteWord) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::PreconditionViolated(
                "monoid elements need a nonempty word".into(),
            ));
        }
        let mut f = Vec::with_capacity(a.num_states());
        let mut g = Vec::with_capacity(a.num_states());
        for q in 0..a.num_states() {
            let (t, min) = a.run_finite(q, w)?;
            f.push(t);
            g.push(min.expect("nonempty word"));
        }
        Ok(MonoidElement {
            f,
            g,
            witness: w.clone(),
        })
    }

    /// Behaviour of `self.witness · other.witness`.
    pub fn then(&self, other: &MonoidElement) -> MonoidElement {
        let (f, g) = self
            .f
            .iter()
            .zip(&self.g)
            .map(|(&mid, &p)| (other.f[mid], p.min(other.g[mid])))
            .unzip();
        MonoidElement {
            f,
            g,
            witness: self.witness.concat(&other.witness),
        }
    }

    fn key(&self) -> (Vec<State>, Vec<u8>) {
        (self.f.clone(), self.g.clone())
    }

    /// Whether `witness^ω` is accepted from `p`.
    pub fn omega_accepts(&self, p: State) -> bool {
        omega_accepts_with(p, |q| (self.f[q], self.g[q]))
    }
}

/// Follows `step` from `p` until a state repeats; accepts iff the least
/// priority on the cycle is even.
fn omega_accepts_with(p: State, step: impl Fn(State) -> (State, u8)) -> bool {
    let mut order: HashMap<State, usize> = HashMap::new();
    let mut mins = Vec::new();
    let mut q = p;
    loop {
        if let Some(&first) = order.get(&q) {
            return mins[first..].iter().min().copied().expect("nonempty cycle") % 2 == 0;
        }
        order.insert(q, mins.len());
        let (next, pri) = step(q);
        mins.push(pri);
        q = next;
    }
}

/// Whether `m.witness^ω` is accepted from `p`.
pub fn omega_accept(m: &MonoidElement, p: State) -> bool {
    m.omega_accepts(p)
}

/// Closure of the letter elements under composition, breadth-first by word
/// length; one element per distinct behaviour, in shortlex order of witnesses.
pub fn generate_monoid(a: &Dpa, cap: usize) -> Result<Vec<MonoidElement>> {
    if cap == 0 {
        return Err(Error::PreconditionViolated("monoid cap must be at least 1".into()));
    }
    let letters: Vec<MonoidElement> = (0..a.alphabet().len())
        .map(|i| MonoidElement::of_letter(a, i))
        .collect();
    let mut seen = HashMap::new();
    let mut elements: Vec<MonoidElement> = Vec::new();
    for m in &letters {
        if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(m.key()) {
            slot.insert(elements.len());
            elements.push(m.clone());
        }
    }
    if elements.len() > cap {
        return Err(Error::MonoidTooLarge { cap });
    }
    let mut next = 0;
    while next < elements.len() {
        let base = elements[next].clone();
        next += 1;
        for l in &letters {
            let m = base.then(l);
            if seen.contains_key(&m.key()) {
                continue;
            }
            seen.insert(m.key(), elements.len());
            elements.push(m);
            if elements.len() > cap {
                return Err(Error::MonoidTooLarge { cap });
            }
        }
    }
    Ok(elements)
}

/// Refutes property 1: `uw ∈ L`, `u'w' ∈ L`, `uw' ∉ L`, `u'w ∉ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness1 {
    pub u: FiniteWord,
    pub u_prime: FiniteWord,
    pub w: LassoWord,
    pub w_prime: LassoWord,
}

/// Refutes property 2: `uvw ∈ L`, `uv^ω ∉ L`, `uw ∉ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness2 {
    pub u: FiniteWord,
    pub v: FiniteWord,
    pub w: LassoWord,
}

/// Refutes property 3: `u(vv')^ω ∈ L`, `uv^ω ∉ L`, `uv'^ω ∉ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness3 {
    pub u: FiniteWord,
    pub v: FiniteWord,
    pub v_prime: FiniteWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    One(Witness1),
    Two(Witness2),
    Three(Witness3),
}

#[derive(Serialize, Deserialize)]
struct RawWitness {
    property: u8,
    u: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    up: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    v: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    vp: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    w: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    wp: Option<String>,
}

impl Witness {
    pub fn property(&self) -> u8 {
        match self {
            Witness::One(_) => 1,
            Witness::Two(_) => 2,
            Witness::Three(_) => 3,
        }
    }

    /// Re-checks the refutation with membership queries only.
    pub fn certify(&self, a: &Dpa) -> Result<bool> {
        let omega = |u: &FiniteWord, v: &FiniteWord| -> Result<bool> {
            a.member(&LassoWord::new(u.clone(), v.clone())?)
        };
        Ok(match self {
            Witness::One(x) => {
                a.member(&x.w.prepend(&x.u))?
                    && a.member(&x.w_prime.prepend(&x.u_prime))?
                    && !a.member(&x.w_prime.prepend(&x.u))?
                    && !a.member(&x.w.prepend(&x.u_prime))?
            }
            Witness::Two(x) => {
                !x.v.is_empty()
                    && a.member(&x.w.prepend(&x.u.concat(&x.v)))?
                    && !omega(&x.u, &x.v)?
                    && !a.member(&x.w.prepend(&x.u))?
            }
            Witness::Three(x) => {
                !x.v.is_empty()
                    && !x.v_prime.is_empty()
                    && omega(&x.u, &x.v.concat(&x.v_prime))?
                    && !omega(&x.u, &x.v)?
                    && !omega(&x.u, &x.v_prime)?
            }
        })
    }

    fn to_raw(&self) -> RawWitness {
        let s = |w: &FiniteWord| Some(w.to_string());
        let l = |w: &LassoWord| Some(w.to_string());
        match self {
            Witness::One(x) => RawWitness {
                property: 1,
                u: x.u.to_string(),
                up: s(&x.u_prime),
                v: None,
                vp: None,
                w: l(&x.w),
                wp: l(&x.w_prime),
            },
            Witness::Two(x) => RawWitness {
                property: 2,
                u: x.u.to_string(),
                up: None,
                v: s(&x.v),
                vp: None,
                w: l(&x.w),
                wp: None,
            },
            Witness::Three(x) => RawWitness {
                property: 3,
                u: x.u.to_string(),
                up: None,
                v: s(&x.v),
                vp: s(&x.v_prime),
                w: None,
                wp: None,
            },
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("witness serializes")
    }

    /// Compact JSON, e.g. `{"property":3,"u":"","v":"ab","vp":"ac"}`.
    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let raw: RawWitness =
            serde_json::from_str(text).map_err(|e| Error::InvalidWitness(e.to_string()))?;
        let field = |name: &str, v: &Option<String>| {
            v.clone()
                .ok_or_else(|| Error::InvalidWitness(format!("missing field `{name}`")))
        };
        let word = |text: String| FiniteWord::parse(&text, alphabet);
        let lasso = |text: String| LassoWord::parse(&text, alphabet);
        let u = word(raw.u.clone())?;
        match raw.property {
            1 => Ok(Witness::One(Witness1 {
                u,
                u_prime: word(field("up", &raw.up)?)?,
                w: lasso(field("w", &raw.w)?)?,
                w_prime: lasso(field("wp", &raw.wp)?)?,
            })),
            2 => Ok(Witness::Two(Witness2 {
                u,
                v: word(field("v", &raw.v)?)?,
                w: lasso(field("w", &raw.w)?)?,
            })),
            3 => Ok(Witness::Three(Witness3 {
                u,
                v: word(field("v", &raw.v)?)?,
                v_prime: word(field("vp", &raw.vp)?)?,
            })),
            p => Err(Error::InvalidWitness(format!("unknown property {p}"))),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::One(x) => write!(f, "u={} u'={} w={} w'={}", x.u, x.u_prime, x.w, x.w_prime),
            Witness::Two(x) => write!(f, "u={} v={} w={}", x.u, x.v, x.w),
            Witness::Three(x) => write!(f, "u={} v={} v'={}", x.u, x.v, x.v_prime),
        }
    }
}

/// Outcome of one property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: u8,
    /// Present iff the property fails.
    pub witness: Option<Witness>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub positional: bool,
    pub failed_property: Option<u8>,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "positional": self.positional,
            "failed_property": self.failed_property,
            "witness": self.witness.as_ref().map(Witness::to_json_value),
        })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }
}

/// Shared state for the property checks on one automaton.
pub struct Checker<'a> {
    dpa: &'a Dpa,
    cap: usize,
    oracle: ResidualOracle,
    reachable: Vec<State>,
    access: Vec<Option<FiniteWord>>,
    monoid: Option<Vec<MonoidElement>>,
}

impl<'a> Checker<'a> {
    pub fn new(dpa: &'a Dpa, cap: usize) -> Self {
        let access = dpa.access_words(false);
        let reachable = (0..dpa.num_states()).filter(|&q| access[q].is_some()).collect();
        Checker {
            dpa,
            cap,
            oracle: ResidualOracle::new(dpa),
            reachable,
            access,
            monoid: None,
        }
    }

    fn monoid(&mut self) -> Result<&[MonoidElement]> {
        if self.monoid.is_none() {
            self.monoid = Some(generate_monoid(self.dpa, self.cap)?);
        }
        Ok(self.monoid.as_deref().expect("just computed"))
    }

    fn access(&self, q: State) -> FiniteWord {
        self.access[q].clone().expect("reachable state")
    }

    /// Pairs of reachable states with incomparable residuals. Witnesses prefer
    /// nonempty access words so that the gadget needs no empty path.
    pub fn property1(&mut self) -> PropertyReport {
        let nonempty = self.dpa.access_words(true);
        let mut fallback = None;
        let reach = self.reachable.clone();
        for (i, &p) in reach.iter().enumerate() {
            for &q in &reach[i + 1..] {
                let Some(w) = self.oracle.counterexample(p, q) else { continue };
                let Some(w_prime) = self.oracle.counterexample(q, p) else { continue };
                let pick = |s: State| nonempty[s].clone().unwrap_or_else(|| self.access(s));
                let witness = Witness1 {
                    u: pick(p),
                    u_prime: pick(q),
                    w,
                    w_prime,
                };
                if nonempty[p].is_some() && nonempty[q].is_some() {
                    return fail(1, Witness::One(witness));
                }
                fallback.get_or_insert(witness);
            }
        }
        match fallback {
            Some(w) => fail(1, Witness::One(w)),
            None => pass(1),
        }
    }

    pub fn property2(&mut self) -> Result<PropertyReport> {
        self.monoid()?;
        let monoid = self.monoid.take().expect("computed above");
        let mut report = pass(2);
        'outer: for &p in &self.reachable {
            for m in &monoid {
                if m.omega_accepts(p) {
                    continue;
                }
                if let Some(w) = self.oracle.counterexample(m.f[p], p) {
                    report = fail(
                        2,
                        Witness::Two(Witness2 {
                            u: self.access(p),
                            v: m.witness.clone(),
                            w,
                        }),
                    );
                    break 'outer;
                }
            }
        }
        self.monoid = Some(monoid);
        Ok(report)
    }

    pub fn property3(&mut self) -> Result<PropertyReport> {
        let reach = self.reachable.clone();
        let access = self.access.clone();
        let monoid = self.monoid()?;
        for &p in &reach {
            let accepts: Vec<bool> = monoid.iter().map(|m| m.omega_accepts(p)).collect();
            for (i, m) in monoid.iter().enumerate() {
                if accepts[i] {
                    continue;
                }
                for (j, m2) in monoid.iter().enumerate() {
                    if accepts[j] {
                        continue;
                    }
                    let joint = omega_accepts_with(p, |q| {
                        let mid = m.f[q];
                        (m2.f[mid], m.g[q].min(m2.g[mid]))
                    });
                    if joint {
                        let witness = Witness3 {
                            u: access[p].clone().expect("reachable"),
                            v: m.witness.clone(),
                            v_prime: m2.witness.clone(),
                        };
                        return Ok(fail(3, Witness::Three(witness)));
                    }
                }
            }
        }
        Ok(pass(3))
    }

    /// Properties in order 1, 2, 3; the first failure is reported.
    pub fn verdict(&mut self) -> Result<Verdict> {
        let mut reports = vec![self.property1()];
        if reports[0].passed() {
            reports.push(self.property2()?);
        }
        if reports.iter().all(PropertyReport::passed) {
            reports.push(self.property3()?);
        }
        Ok(match reports.into_iter().find(|r| !r.passed()) {
            Some(r) => Verdict {
                positional: false,
                failed_property: Some(r.property),
                witness: r.witness,
            },
            None => Verdict {
                positional: true,
                failed_property: None,
                witness: None,
            },
        })
    }
}

fn pass(property: u8) -> PropertyReport {
    PropertyReport {
        property,
        witness: None,
    }
}

fn fail(property: u8, witness: Witness) -> PropertyReport {
    PropertyReport {
        property,
        witness: Some(witness),
    }
}

pub fn check_property1(a: &Dpa) -> PropertyReport {
    Checker::new(a, DEFAULT_MONOID_CAP).property1()
}

pub fn check_property2(a: &Dpa) -> Result<PropertyReport> {
    Checker::new(a, DEFAULT_MONOID_CAP).property2()
}

pub fn check_property3(a: &Dpa) -> Result<PropertyReport> {
    Checker::new(a, DEFAULT_MONOID_CAP).property3()
}

pub fn check_positional(a: &Dpa) -> Result<Verdict> {
    check_positional_with_cap(a, DEFAULT_MONOID_CAP)
}

pub fn check_positional_with_cap(a: &Dpa, cap: usize) -> Result<Verdict> {
    Checker::new(a, cap).verdict()
}

/// How two lassos relate in the residual preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preorder {
    /// `w < w'`.
    LeftLeq,
    /// `w' < w`.
    RightLeq,
    Equivalent,
    /// `uw ∈ L ∌ uw'` and `u'w' ∈ L ∌ u'w`.
    Incomparable { u: FiniteWord, u_prime: FiniteWord },
}

impl Preorder {
    /// `w ≤ w'`.
    pub fn left_le_right(&self) -> bool {
        matches!(self, Preorder::LeftLeq | Preorder::Equivalent)
    }

    pub fn right_le_left(&self) -> bool {
        matches!(self, Preorder::RightLeq | Preorder::Equivalent)
    }
}

impl fmt::Display for Preorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preorder::LeftLeq => f.write_str("left_leq"),
            Preorder::RightLeq => f.write_str("right_leq"),
            Preorder::Equivalent => f.write_str("equivalent"),
            Preorder::Incomparable { u, u_prime } => write!(f, "incomparable u={u} u'={u_prime}"),
        }
    }
}

/// Compares `w` and `w'` in the residual preorder, over all reachable states.
pub fn compare_lassos(a: &Dpa, w: &LassoWord, w_prime: &LassoWord) -> Result<Preorder> {
    let mut left_refuted: Option<FiniteWord> = None;
    let mut right_refuted: Option<FiniteWord> = None;
    for (p, u) in a.reachable_states() {
        let (x, y) = (a.member_from(p, w)?, a.member_from(p, w_prime)?);
        if x && !y && left_refuted.is_none() {
            left_refuted = Some(u);
        } else if y && !x && right_refuted.is_none() {
            right_refuted = Some(u);
        }
    }
    Ok(match (left_refuted, right_refuted) {
        (None, None) => Preorder::Equivalent,
        (None, Some(_)) => Preorder::LeftLeq,
        (Some(_), None) => Preorder::RightLeq,
        (Some(u), Some(u_prime)) => Preorder::Incomparable { u, u_prime },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrderLaw {
    /// Any two lassos are comparable.
    Totality,
    /// `vw ≤ v^ω` or `vw ≤ w`.
    LoopOrExit,
    /// `(vv')^ω ≤ v^ω` or `(vv')^ω ≤ v'^ω`.
    Alternation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderViolation {
    pub law: OrderLaw,
    pub v: FiniteWord,
    pub v_prime: FiniteWord,
    pub w: LassoWord,
    pub w_other: LassoWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderLawsReport {
    pub samples: usize,
    pub violations: Vec<OrderViolation>,
}

fn random_word(rng: &mut ChaCha8Rng, alphabet: &Alphabet, min: usize, max: usize) -> FiniteWord {
    let len = rng.gen_range(min..=max);
    FiniteWord::from(
        (0..len)
            .map(|_| alphabet.letter(rng.gen_range(0..alphabet.len())))
            .collect::<Vec<_>>(),
    )
}

pub(crate) fn random_lasso(rng: &mut ChaCha8Rng, alphabet: &Alphabet, max_prefix: usize, max_period: usize) -> LassoWord {
    let prefix = random_word(rng, alphabet, 0, max_prefix);
    let period = random_word(rng, alphabet, 1, max_period);
    LassoWord::new(prefix, period).expect("period is nonempty")
}

/// Samples the order laws that hold for positional languages.
pub fn verify_order_laws(a: &Dpa, samples: usize, seed: u64) -> Result<OrderLawsReport> {
    if !check_positional(a)?.positional {
        return Err(Error::PreconditionViolated(
            "the order laws are only guaranteed for positional languages".into(),
        ));
    }
    sample_order_laws(a, samples, seed)
}

/// [`verify_order_laws`] without re-running the positionality check.
pub(crate) fn sample_order_laws(a: &Dpa, samples: usize, seed: u64) -> Result<OrderLawsReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = a.alphabet();
    let mut violations = Vec::new();
    for _ in 0..samples {
        let v = random_word(&mut rng, alphabet, 1, 3);
        let v_prime = random_word(&mut rng, alphabet, 1, 3);
        let w = random_lasso(&mut rng, alphabet, 3, 3);
        let w_other = random_lasso(&mut rng, alphabet, 3, 3);
        let violation = |law| OrderViolation {
            law,
            v: v.clone(),
            v_prime: v_prime.clone(),
            w: w.clone(),
            w_other: w_other.clone(),
        };

        let v_omega = LassoWord::omega(v.clone())?;
        let v_prime_omega = LassoWord::omega(v_prime.clone())?;
        let both_omega = LassoWord::omega(v.concat(&v_prime))?;
        let vw = w.prepend(&v);

        let total = [(&w, &w_other), (&v_omega, &v_prime_omega)];
        for (x, y) in total {
            if matches!(compare_lassos(a, x, y)?, Preorder::Incomparable { .. }) {
                violations.push(violation(OrderLaw::Totality));
                break;
            }
        }
        if !compare_lassos(a, &vw, &v_omega)?.left_le_right()
            && !compare_lassos(a, &vw, &w)?.left_le_right()
        {
            violations.push(violation(OrderLaw::LoopOrExit));
        }
        if !compare_lassos(a, &both_omega, &v_omega)?.left_le_right()
            && !compare_lassos(a, &both_omega, &v_prime_omega)?.left_le_right()
        {
            violations.push(violation(OrderLaw::Alternation));
        }
    }
    Ok(OrderLawsReport {
        samples,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn lasso(a: &Dpa, s: &str) -> LassoWord {
        LassoWord::parse(s, a.alphabet()).unwrap()
    }

    /// Distinct behaviours of all words of length 1..=max_len, by direct runs.
    fn brute_behaviours(a: &Dpa, max_len: usize) -> Vec<(Vec<State>, Vec<u8>)> {
        let mut out: Vec<(Vec<State>, Vec<u8>)> = Vec::new();
        for w in a.alphabet().words_up_to(max_len).into_iter().skip(1) {
            let mut f = Vec::new();
            let mut g = Vec::new();
            for q in 0..a.num_states() {
                let (t, m) = a.run_finite(q, &w).unwrap();
                f.push(t);
                g.push(m.unwrap());
            }
            if !out.contains(&(f.clone(), g.clone())) {
                out.push((f, g));
            }
        }
        out
    }

    #[test]
    fn monoid_examples() {
        let buchi = fixtures::buchi_a();
        let m = generate_monoid(&buchi, 10).unwrap();
        assert_eq!(brute_behaviours(&buchi, 3).len(), 2);
        assert_eq!(m.len(), 2);
        assert_eq!((m[0].f.clone(), m[0].g.clone(), m[0].witness.to_string()), (vec![0], vec![0], "a".into()));
        assert_eq!((m[1].f.clone(), m[1].g.clone(), m[1].witness.to_string()), (vec![0], vec![1], "b".into()));

        // brute-force closure over words of length <= 4 finds exactly two behaviours
        let onea = fixtures::onea();
        assert_eq!(brute_behaviours(&onea, 4).len(), 2);
        assert_eq!(generate_monoid(&onea, 10).unwrap().len(), 2);
    }

    #[test]
    fn monoid_matches_brute_force_closure() {
        for (name, a) in fixtures::all() {
            let m = generate_monoid(&a, DEFAULT_MONOID_CAP).unwrap();
            let mut brute = brute_behaviours(&a, 6);
            let mut ours: Vec<_> = m.iter().map(|e| (e.f.clone(), e.g.clone())).collect();
            brute.sort();
            ours.sort();
            assert_eq!(ours, brute, "{name}");
        }
    }

    #[test]
    fn composition_is_concatenation() {
        for (_, a) in fixtures::all() {
            for &x in a.alphabet().letters() {
                for &y in a.alphabet().letters() {
                    let ex = MonoidElement::of_word(&a, &FiniteWord::from(vec![x])).unwrap();
                    let ey = MonoidElement::of_word(&a, &FiniteWord::from(vec![y])).unwrap();
                    let exy = MonoidElement::of_word(&a, &FiniteWord::from(vec![x, y])).unwrap();
                    assert_eq!(ex.then(&ey), exy);
                }
            }
        }
    }

    #[test]
    fn monoid_cap_is_enforced() {
        let w2 = fixtures::w2();
        assert_eq!(generate_monoid(&w2, 2), Err(Error::MonoidTooLarge { cap: 2 }));
        assert!(matches!(check_positional_with_cap(&w2, 2), Err(Error::MonoidTooLarge { .. })));
    }

    #[test]
    fn omega_accept_examples() {
        let buchi = fixtures::buchi_a();
        assert!(MonoidElement::of_word(&buchi, &"a".into()).unwrap().omega_accepts(0));
        let infab = fixtures::infab();
        assert!(MonoidElement::of_word(&infab, &"ab".into()).unwrap().omega_accepts(0));
        assert!(!MonoidElement::of_word(&infab, &"a".into()).unwrap().omega_accepts(0));
        let onea = fixtures::onea();
        assert!(!omega_accept(&MonoidElement::of_word(&onea, &"a".into()).unwrap(), 0));
    }

    #[test]
    fn monoid_elements_are_sound_and_match_membership() {
        for (name, a) in fixtures::all() {
            for m in generate_monoid(&a, DEFAULT_MONOID_CAP).unwrap() {
                assert_eq!(MonoidElement::of_word(&a, &m.witness).unwrap(), m, "{name}");
                let omega = LassoWord::omega(m.witness.clone()).unwrap();
                for p in 0..a.num_states() {
                    assert_eq!(m.omega_accepts(p), a.member_from(p, &omega).unwrap(), "{name}");
                }
            }
        }
    }

    #[test]
    fn property1_examples() {
        let res = fixtures::res();
        let r = check_property1(&res);
        let w = r.witness.clone().unwrap();
        assert!(w.certify(&res).unwrap());
        assert_eq!(w.to_string(), "u=a u'=b w=:b w'=:c");
        assert!(check_property1(&fixtures::w2()).passed());
        assert!(check_property1(&fixtures::buchi_a()).passed());
    }

    #[test]
    fn property2_examples() {
        let onea = fixtures::onea();
        let w = check_property2(&onea).unwrap().witness.unwrap();
        assert!(w.certify(&onea).unwrap());
        assert_eq!(w.to_string(), "u= v=a w=:b");
        assert!(check_property2(&fixtures::fin_a()).unwrap().passed());
        assert!(check_property2(&fixtures::buchi_a()).unwrap().passed());
    }

    #[test]
    fn property3_examples() {
        let infab = fixtures::infab();
        let w = check_property3(&infab).unwrap().witness.unwrap();
        assert!(w.certify(&infab).unwrap());
        assert_eq!(w.to_string(), "u= v=a v'=b");
        let w2 = fixtures::w2();
        let w = check_property3(&w2).unwrap().witness.unwrap();
        assert!(w.certify(&w2).unwrap());
        assert!(check_property3(&fixtures::rabin()).unwrap().passed());
    }

    #[test]
    fn fixture_verdicts() {
        for (name, a) in fixtures::positional() {
            assert!(check_positional(&a).unwrap().positional, "{name}");
        }
        for (name, a, property) in fixtures::non_positional() {
            let v = check_positional(&a).unwrap();
            assert!(!v.positional, "{name}");
            assert_eq!(v.failed_property, Some(property), "{name}");
            assert!(v.witness.unwrap().certify(&a).unwrap(), "{name}");
        }
    }

    #[test]
    fn compare_examples() {
        let buchi = fixtures::buchi_a();
        assert_eq!(
            compare_lassos(&buchi, &lasso(&buchi, ":b"), &lasso(&buchi, ":a")).unwrap(),
            Preorder::LeftLeq
        );
        let res = fixtures::res();
        assert_eq!(
            compare_lassos(&res, &lasso(&res, ":b"), &lasso(&res, ":c")).unwrap(),
            Preorder::Incomparable {
                u: "a".into(),
                u_prime: "b".into()
            }
        );
        for (_, a) in fixtures::all() {
            let w = LassoWord::omega(FiniteWord::from(vec![a.alphabet().letter(0)])).unwrap();
            assert_eq!(compare_lassos(&a, &w, &w).unwrap(), Preorder::Equivalent);
        }
    }

    #[test]
    fn order_laws_on_positional_fixtures() {
        for (name, a) in [("buchi_a", fixtures::buchi_a()), ("ex3", fixtures::ex3()), ("rabin", fixtures::rabin())] {
            let r = verify_order_laws(&a, 500, 1).unwrap();
            assert_eq!(r.samples, 500);
            assert!(r.violations.is_empty(), "{name}: {:?}", r.violations.first());
        }
        assert!(matches!(
            verify_order_laws(&fixtures::infab(), 10, 1),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn order_laws_detect_non_positional_languages() {
        // INFAB violates the alternation law: (ab)^ω is in, a^ω and b^ω are out
        let r = sample_order_laws(&fixtures::infab(), 300, 3).unwrap();
        assert!(r.violations.iter().any(|v| v.law == OrderLaw::Alternation));
        let r = sample_order_laws(&fixtures::res(), 300, 3).unwrap();
        assert!(r.violations.iter().any(|v| v.law == OrderLaw::Totality));
    }

    #[test]
    fn witness_json_round_trip() {
        let a = fixtures::w2();
        let w = Witness::Three(Witness3 {
            u: FiniteWord::empty(),
            v: "ab".into(),
            v_prime: "ac".into(),
        });
        assert_eq!(w.to_json(), r#"{"property":3,"u":"","v":"ab","vp":"ac"}"#);
        assert_eq!(Witness::from_json(&w.to_json(), a.alphabet()).unwrap(), w);
        assert!(w.certify(&a).unwrap());

        let res = fixtures::res();
        let w = check_positional(&res).unwrap().witness.unwrap();
        assert_eq!(Witness::from_json(&w.to_json(), res.alphabet()).unwrap(), w);
        assert!(matches!(
            Witness::from_json(r#"{"property":2,"u":""}"#, res.alphabet()),
            Err(Error::InvalidWitness(_))
        ));
    }
}
