//! Generalized Wheelerness: is there *some* alphabet order under which an
//! automaton (or its language) is Wheeler? Plus a brute-force solver for
//! betweenness instances, used to validate the gadget in
//! [`crate::reductions::reduce_betweenness_to_dfa`].

use std::collections::HashSet;
use std::fmt::Write as _;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::alphabet::{OrderedAlphabet, Sym};
use crate::automaton::Automaton;
use crate::format::{err, tokenize, ParseError, ParseErrorKind};
use crate::language::{
    check_witness_dfa, is_language_wheeler_dfa, Certificate, LanguageError, LanguageOptions, Status, Witness,
};
use crate::ops::{minimal_dfa, trim_basic};
use crate::wheeler::{dfa_wheeler_order, nfa_wheeler_search, WheelerError};

/// Largest alphabet whose orders are enumerated.
pub const MAX_GW_ALPHABET: usize = 8;
pub const MAX_BETWEENNESS_ELEMENTS: usize = 10;

/// A candidate symbol order: the automaton's symbols, smallest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphabetOrder(pub Vec<Sym>);

impl AlphabetOrder {
    pub fn render(&self, alphabet: &OrderedAlphabet) -> String {
        self.0.iter().map(|&s| alphabet.name(s)).join(" < ")
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, s)| s.index() == i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GwVerdict {
    /// The lexicographically first order that works.
    Gw(AlphabetOrder),
    NotGw,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GwError {
    #[error("alphabet has {size} symbols; at most {max} are supported")]
    AlphabetTooLarge { size: usize, max: usize },
    #[error("betweenness instance has {size} elements; at most {max} are supported")]
    TooManyElements { size: usize, max: usize },
    #[error("order search for one alphabet order exceeded its budget: {0}")]
    Budget(WheelerError),
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error("language verdict under {0:?} was not conclusive")]
    Inconclusive(AlphabetOrder),
}

/// All orders in lexicographic order, one per distinct relative order of
/// the symbols that actually label edges (the others cannot matter).
fn candidate_orders(a: &Automaton) -> Result<Vec<AlphabetOrder>, GwError> {
    let sigma = a.alphabet().len();
    if sigma > MAX_GW_ALPHABET {
        return Err(GwError::AlphabetTooLarge {
            size: sigma,
            max: MAX_GW_ALPHABET,
        });
    }
    let used: HashSet<Sym> = a.edges().map(|e| e.1).collect();
    let mut seen = HashSet::new();
    Ok((0..sigma as u32)
        .map(Sym)
        .permutations(sigma)
        .filter(|p| seen.insert(p.iter().filter(|s| used.contains(s)).copied().collect::<Vec<_>>()))
        .map(AlphabetOrder)
        .collect())
}

fn first_success<F>(orders: Vec<AlphabetOrder>, check: F) -> Result<GwVerdict, GwError>
where
    F: Fn(&AlphabetOrder) -> Result<bool, GwError> + Sync,
{
    let hit = orders
        .into_par_iter()
        .map(|o| check(&o).map(|ok| (o, ok)))
        .find_first(|r| !matches!(r, Ok((_, false))));
    match hit {
        Some(Ok((o, _))) => Ok(GwVerdict::Gw(o)),
        Some(Err(e)) => Err(e),
        None => Ok(GwVerdict::NotGw),
    }
}

/// Is the automaton Wheeler under `order`? DFAs use the polynomial test,
/// NFAs the backtracking search with `budget` nodes.
pub fn wheeler_under(a: &Automaton, order: &AlphabetOrder, budget: u64) -> Result<bool, GwError> {
    let r = a.with_alphabet_order(&order.0);
    let result = if r.is_deterministic() {
        dfa_wheeler_order(&r)
    } else {
        nfa_wheeler_search(&r, budget)
    };
    match result {
        Ok(_) => Ok(true),
        Err(WheelerError::Violation(_) | WheelerError::NotWheeler) => Ok(false),
        Err(e) => Err(GwError::Budget(e)),
    }
}

/// Tries every alphabet order on the automaton itself.
pub fn gw_automaton_check(a: &Automaton, budget: u64) -> Result<GwVerdict, GwError> {
    let a = trim_basic(a);
    let orders = candidate_orders(&a)?;
    first_success(orders, |o| wheeler_under(&a, o, budget))
}

/// Is the language of the minimum DFA `min` Wheeler under `order`?
pub fn language_wheeler_under(
    min: &Automaton,
    order: &AlphabetOrder,
    options: &LanguageOptions,
) -> Result<bool, GwError> {
    language_verdict_under(min, order, options).map(|(ok, _)| ok)
}

/// Old symbol index to its symbol in the relabelled automaton.
fn rank_map(order: &AlphabetOrder) -> Vec<Sym> {
    let mut rank = vec![Sym(0); order.0.len()];
    for (i, &s) in order.0.iter().enumerate() {
        rank[s.index()] = Sym(i as u32);
    }
    rank
}

fn translate(w: &Witness, map: impl Fn(Sym) -> Sym) -> Witness {
    let tr = |x: &[Sym]| x.iter().map(|&s| map(s)).collect();
    Witness {
        mu: tr(&w.mu),
        nu: tr(&w.nu),
        gamma: tr(&w.gamma),
        anchors: w.anchors,
    }
}

/// Verdict under `order`, plus the refuting witness (in `min`'s own
/// symbols) when there is one.
fn language_verdict_under(
    min: &Automaton,
    order: &AlphabetOrder,
    options: &LanguageOptions,
) -> Result<(bool, Option<Witness>), GwError> {
    let r = min.with_alphabet_order(&order.0);
    let v = is_language_wheeler_dfa(&r, options)?;
    match v.status {
        Status::Wheeler => Ok((true, None)),
        Status::NotWheeler => {
            let w = match v.certificate {
                Certificate::Witness(w) => Some(translate(&w, |s| order.0[s.index()])),
                _ => None,
            };
            Ok((false, w))
        }
        Status::BoundedWheeler => Err(GwError::Inconclusive(order.clone())),
    }
}

/// Tries every alphabet order on the language. The minimum DFA does not
/// depend on the order, so it is computed once.
///
/// A witness depends on the order only through two co-lex comparisons, so
/// witnesses found so far are re-validated under each new order first; the
/// full decider runs only when none of them applies.
pub fn gw_language_check(a: &Automaton, options: &LanguageOptions) -> Result<GwVerdict, GwError> {
    let min = minimal_dfa(a);
    let orders = candidate_orders(&min)?;
    let mut known: Vec<Witness> = Vec::new();
    let chunk = 4 * rayon::current_num_threads();
    for batch in orders.chunks(chunk) {
        let results: Vec<_> = batch
            .par_iter()
            .map(|o| {
                let r = min.with_alphabet_order(&o.0);
                let rank = rank_map(o);
                let refuted = known
                    .iter()
                    .any(|w| check_witness_dfa(&r, &translate(w, |s| rank[s.index()])).valid);
                if refuted {
                    Ok((false, None))
                } else {
                    language_verdict_under(&min, o, options)
                }
            })
            .collect();
        for (o, res) in batch.iter().zip(results) {
            match res? {
                (true, _) => return Ok(GwVerdict::Gw(o.clone())),
                (false, Some(w)) if !known.contains(&w) => known.push(w),
                _ => {}
            }
        }
    }
    Ok(GwVerdict::NotGw)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BetweennessError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("triple {0} is out of range or repeats an element")]
    BadTriple(usize),
}

/// Elements `Y` and ordered triples over them (by index into `Y`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetweennessInstance {
    elements: Vec<String>,
    triples: Vec<[usize; 3]>,
}

impl BetweennessInstance {
    pub fn new(elements: Vec<String>, triples: Vec<[usize; 3]>) -> Result<Self, BetweennessError> {
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e) {
                return Err(BetweennessError::DuplicateElement(e.clone()));
            }
        }
        for (i, t) in triples.iter().enumerate() {
            if t.iter().any(|&x| x >= elements.len()) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(BetweennessError::BadTriple(i));
            }
        }
        Ok(BetweennessInstance { elements, triples })
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// `order` lists element indices smallest first.
    pub fn is_satisfied_by(&self, order: &[usize]) -> bool {
        let mut pos = vec![0; self.elements.len()];
        for (p, &e) in order.iter().enumerate() {
            pos[e] = p;
        }
        self.triples.iter().all(|&[a, b, c]| {
            (pos[a] < pos[b] && pos[b] < pos[c]) || (pos[a] > pos[b] && pos[b] > pos[c])
        })
    }
}

/// ```text
/// elements p q r
/// triple p q r
/// ```
pub fn parse_betweenness(text: &str) -> Result<BetweennessInstance, ParseError> {
    let mut lines = tokenize(text);
    let elements: Vec<String> = match lines.next() {
        Some((_, tokens)) if tokens[0].1 == "elements" => tokens[1..].iter().map(|t| t.1.to_string()).collect(),
        Some((line, tokens)) => return Err(err(line, tokens[0].0, ParseErrorKind::MissingHeader("elements"))),
        None => return Err(err(0, 0, ParseErrorKind::MissingHeader("elements"))),
    };
    let mut triples = Vec::new();
    for (line, tokens) in lines {
        match tokens.as_slice() {
            [(_, "triple"), rest @ ..] if rest.len() == 3 => {
                let mut t = [0; 3];
                for (slot, &(col, name)) in t.iter_mut().zip(rest) {
                    *slot = elements
                        .iter()
                        .position(|e| e == name)
                        .ok_or_else(|| err(line, col, ParseErrorKind::UndefinedSymbol(name.to_string())))?;
                }
                triples.push(t);
            }
            [(col, _), ..] => {
                return Err(err(line, *col, ParseErrorKind::Syntax("`triple <a> <b> <c>`".into())));
            }
            [] => unreachable!("blank lines are skipped"),
        }
    }
    BetweennessInstance::new(elements, triples)
        .map_err(|e| err(1, 1, ParseErrorKind::Syntax(e.to_string())))
}

pub fn serialize_betweenness(i: &BetweennessInstance) -> String {
    let mut out = format!("elements {}\n", i.elements.join(" "));
    for t in &i.triples {
        let _ = writeln!(out, "triple {}", t.iter().map(|&x| &i.elements[x]).join(" "));
    }
    out
}

/// First satisfying order (element indices, smallest first) in
/// lexicographic order, or `None` if unsatisfiable.
pub fn solve_betweenness(i: &BetweennessInstance) -> Result<Option<Vec<usize>>, GwError> {
    let n = i.elements.len();
    if n > MAX_BETWEENNESS_ELEMENTS {
        return Err(GwError::TooManyElements {
            size: n,
            max: MAX_BETWEENNESS_ELEMENTS,
        });
    }
    Ok((0..n).permutations(n).find(|p| i.is_satisfied_by(p)))
}
