//! Small automata used as examples throughout the docs and tests, shipped as
//! text files under `fixtures/` and parsed on demand.

use crate::automaton::Automaton;
use crate::format::parse_automaton;
use crate::gw::{parse_betweenness, BetweennessInstance};

pub const FIG1: &str = include_str!("../fixtures/fig1.aut");
pub const FIG2: &str = include_str!("../fixtures/fig2.aut");
pub const FIG3A: &str = include_str!("../fixtures/fig3a.aut");
pub const FIG3B: &str = include_str!("../fixtures/fig3b.aut");
pub const STAR_FREE_NOT_GW: &str = include_str!("../fixtures/star_free_not_gw.aut");
pub const UNIVERSAL_D: &str = include_str!("../fixtures/universal_d.aut");
pub const EPSILON_D: &str = include_str!("../fixtures/epsilon_d.aut");
pub const BETWEENNESS_SAT: &str = include_str!("../fixtures/betweenness_sat.btw");
pub const BETWEENNESS_UNSAT: &str = include_str!("../fixtures/betweenness_unsat.btw");

fn load(text: &str) -> Automaton {
    parse_automaton(text).expect("fixture parses")
}

/// WDFA for `ac* + dc*f` over `a < c < d < f`.
pub fn fig1() -> Automaton {
    load(FIG1)
}

/// Same shape as [`fig1`] with `d` renamed `b`, over `a < b < c < f`.
pub fn fig2() -> Automaton {
    load(FIG2)
}

/// Minimum DFA for `ac* + dc*f`.
pub fn fig3a() -> Automaton {
    load(FIG3A)
}

/// Minimum DFA for `ac* + bc*f`.
pub fn fig3b() -> Automaton {
    load(FIG3B)
}

/// Minimum DFA for `a(aba)*a + ba(aba)*b`.
pub fn star_free_not_gw() -> Automaton {
    load(STAR_FREE_NOT_GW)
}

pub fn universal_d() -> Automaton {
    load(UNIVERSAL_D)
}

pub fn epsilon_d() -> Automaton {
    load(EPSILON_D)
}

pub fn betweenness_sat() -> BetweennessInstance {
    parse_betweenness(BETWEENNESS_SAT).expect("fixture parses")
}

pub fn betweenness_unsat() -> BetweennessInstance {
    parse_betweenness(BETWEENNESS_UNSAT).expect("fixture parses")
}
