//! Deciding positionality of ω-regular languages given as deterministic
//! parity automata, with games, strategy reduction and counterexample gadgets.

pub mod automata;
pub mod error;
pub mod fixtures;
pub mod gadgets;
pub mod games;
pub mod graph;
pub mod positionality;
pub mod reduction;
pub mod selftest;
pub mod words;

pub use automata::{Dpa, State, Transition};
pub use error::{Error, Result};
pub use games::{Arena, Game, Owner, Strategy};
pub use positionality::{check_positional, compare_lassos, Preorder, Verdict, Witness};
pub use words::{Alphabet, FiniteWord, LassoWord};
