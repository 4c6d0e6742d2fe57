//! The automata and arenas shipped in `fixtures/`, compiled in.

use crate::automata::Dpa;
use crate::games::Arena;

pub const BUCHI_A: &str = include_str!("../../../fixtures/buchi_a.dpa");
pub const FIN_A: &str = include_str!("../../../fixtures/fin_a.dpa");
pub const ONEA: &str = include_str!("../../../fixtures/onea.dpa");
pub const INFAB: &str = include_str!("../../../fixtures/infab.dpa");
pub const RABIN: &str = include_str!("../../../fixtures/rabin.dpa");
pub const W2: &str = include_str!("../../../fixtures/w2.dpa");
pub const RES: &str = include_str!("../../../fixtures/res.dpa");
pub const EX3: &str = include_str!("../../../fixtures/ex3.dpa");
pub const W2GAME: &str = include_str!("../../../fixtures/w2game.arena");
pub const TWOLOOPS: &str = include_str!("../../../fixtures/twoloops.arena");

fn load(text: &str) -> Dpa {
    Dpa::parse(text).expect("bundled fixture parses")
}

/// Infinitely many `a`.
pub fn buchi_a() -> Dpa {
    load(BUCHI_A)
}

/// Finitely many `a`.
pub fn fin_a() -> Dpa {
    load(FIN_A)
}

/// At least one `a` and finitely many `a`.
pub fn onea() -> Dpa {
    load(ONEA)
}

/// Infinitely many `a` and infinitely many `b`.
pub fn infab() -> Dpa {
    load(INFAB)
}

/// Infinitely many `a` and finitely many `b`.
pub fn rabin() -> Dpa {
    load(RABIN)
}

/// Finitely many `a`, or infinitely many `b` and infinitely many `c`.
pub fn w2() -> Dpa {
    load(W2)
}

/// `a` then infinitely many `b`, or `b` then infinitely many `c`.
pub fn res() -> Dpa {
    load(RES)
}

/// Infinitely many factors `ac*a`, finitely many factors `bc*b`.
pub fn ex3() -> Dpa {
    load(EX3)
}

pub fn w2game() -> Arena {
    Arena::parse(W2GAME).expect("bundled fixture parses")
}

pub fn twoloops() -> Arena {
    Arena::parse(TWOLOOPS).expect("bundled fixture parses")
}

/// Every bundled automaton with its name.
pub fn all() -> Vec<(&'static str, Dpa)> {
    vec![
        ("buchi_a", buchi_a()),
        ("fin_a", fin_a()),
        ("onea", onea()),
        ("infab", infab()),
        ("rabin", rabin()),
        ("w2", w2()),
        ("res", res()),
        ("ex3", ex3()),
    ]
}

/// Bundled automata whose languages are positional.
pub fn positional() -> Vec<(&'static str, Dpa)> {
    vec![
        ("buchi_a", buchi_a()),
        ("fin_a", fin_a()),
        ("rabin", rabin()),
        ("ex3", ex3()),
    ]
}

/// Bundled automata whose languages are not positional, with the first failing property.
pub fn non_positional() -> Vec<(&'static str, Dpa, u8)> {
    vec![
        ("onea", onea(), 2),
        ("infab", infab(), 3),
        ("w2", w2(), 3),
        ("res", res(), 1),
    ]
}
