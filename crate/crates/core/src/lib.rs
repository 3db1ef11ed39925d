//! Wheeler automata and Wheeler languages.
//!
//! * [`wheeler`]: is a given automaton Wheeler under its alphabet order?
//! * [`language`]: is its *language* Wheeler? (witness search and an
//!   independent construct-and-verify decider)
//! * [`min_wdfa`]: minimum Wheeler DFA from a minimum DFA.
//! * [`gw`]: search over alphabet orders, plus a betweenness solver.
//! * [`reductions`]: the hardness gadgets, for building test corpora.

pub mod alphabet;
pub mod automaton;
pub mod cli;
pub mod corpus;
pub mod dot;
pub mod fixtures;
pub mod format;
pub mod gw;
pub mod language;
pub mod min_wdfa;
pub mod ops;
pub mod reductions;
pub mod wheeler;

pub use alphabet::{colex_compare, is_primitive, is_suffix, OrderedAlphabet, Sym, Word};
pub use automaton::{Automaton, AutomatonError, Edge, StateId};
pub use format::{parse_automaton, serialize_automaton, ParseError};
pub use ops::{determinize, language_equal, minimize, right_context_equal, trim_basic};
pub use wheeler::{WheelerError, WheelerOrder, WheelerViolation};
