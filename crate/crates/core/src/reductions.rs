//! The three hardness gadgets, built exactly as drawn, for producing test
//! corpora whose answers are known from the other side of the reduction.

use thiserror::Error;

use crate::alphabet::Sym;
use crate::automaton::{Automaton, Edge, StateId};
use crate::gw::BetweennessInstance;
use crate::alphabet::OrderedAlphabet;
use crate::ops::trim_basic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub automaton: Automaton,
    /// Names of the symbols added to the input alphabet, in order.
    pub fresh_symbols: Vec<String>,
    pub states_added: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("the input must accept the empty word")]
    PreconditionEpsilonNotAccepted,
    #[error("the initial state must not have in-edges")]
    InitialHasInEdge,
}

fn report(input_states: usize, automaton: Automaton, fresh: Vec<Sym>) -> ReductionReport {
    let fresh_symbols = fresh
        .iter()
        .map(|&s| automaton.alphabet().name(s).to_string())
        .collect();
    ReductionReport {
        states_added: automaton.state_count().saturating_sub(input_states),
        automaton,
        fresh_symbols,
    }
}

/// `A ↦ A″` with `L(A″) = a·(L c)*·L + b·(Σ + c)*`, where `a < b < c` are
/// fresh and placed after `Σ`. `L(A)` is universal iff `L(A″)` is Wheeler.
///
/// State 0 is the new initial state, the input's states follow shifted by
/// one, and the last state is the accepting sink.
pub fn reduce_universality(a: &Automaton) -> Result<ReductionReport, ReductionError> {
    if !a.is_final(a.initial()) {
        return Err(ReductionError::PreconditionEpsilonNotAccepted);
    }
    let n = a.state_count();
    let mut sigma = a.alphabet().clone();
    let old: Vec<Sym> = sigma.syms().collect();
    let sa = sigma.push_fresh("a");
    let sb = sigma.push_fresh("b");
    let sc = sigma.push_fresh("c");
    let start = a.initial() + 1;
    let sink = n + 1;
    let mut edges: Vec<Edge> = a.edges().map(|(u, s, v)| (u + 1, s, v + 1)).collect();
    edges.extend(a.finals().map(|f| (f + 1, sc, start)));
    edges.push((0, sa, start));
    edges.push((0, sb, sink));
    edges.extend(old.iter().chain([&sc]).map(|&s| (sink, s, sink)));
    let finals = a.finals().map(|f| f + 1).chain([sink]);
    let out = Automaton::new(sigma, n + 2, 0, finals, edges).expect("ids in range");
    Ok(report(n, out, vec![sa, sb, sc]))
}

/// Gadget state `q_i^k` for `i ≥ 1`, `k ∈ 1..=7`.
fn gadget_state(n: usize, i: usize, k: usize) -> StateId {
    n + 2 + 7 * (i - 1) + (k - 1)
}

/// `A ↦ A′` over `Σ′ = Σ ∪ {x₁, …, x_{σ−1}, e, f}`: `A` is Wheeler under
/// its own order iff `A′` is Wheeler under some order.
///
/// Input states keep their ids; `q_e = n`, `q_f = n + 1`; gadget `i`
/// occupies `n + 2 + 7(i − 1) ..` with superscripts 1 to 7 in order.
pub fn reduce_nfa_wheeler_to_gw(a: &Automaton) -> Result<ReductionReport, ReductionError> {
    if a.edges().any(|e| e.2 == a.initial()) {
        return Err(ReductionError::InitialHasInEdge);
    }
    let n = a.state_count();
    let sigma_len = a.alphabet().len();
    let mut sigma = a.alphabet().clone();
    let xs: Vec<Sym> = (1..sigma_len).map(|i| sigma.push_fresh(&format!("x{i}"))).collect();
    let se = sigma.push_fresh("e");
    let sf = sigma.push_fresh("f");
    let (qe, qf, q0) = (n, n + 1, a.initial());
    let mut edges: Vec<Edge> = a.edges().collect();
    for (idx, &x) in xs.iter().enumerate() {
        let i = idx + 1;
        let ai = Sym(idx as u32);
        let next = Sym(i as u32);
        let g = |k| gadget_state(n, i, k);
        edges.extend([
            (q0, next, g(3)),
            (g(3), x, g(5)),
            (g(5), x, g(7)),
            (g(7), ai, g(2)),
            (g(2), x, g(5)),
            (g(5), se, qe),
            (q0, x, g(4)),
            (g(4), x, g(6)),
            (g(6), ai, g(1)),
            (g(1), x, g(4)),
            (g(4), sf, qf),
        ]);
    }
    let total = n + 2 + 7 * xs.len();
    let finals = a.finals().chain([qe, qf]);
    let out = Automaton::new(sigma, total, q0, finals, edges).expect("ids in range");
    let mut fresh = xs;
    fresh.extend([se, sf]);
    Ok(report(n, out, fresh))
}

/// Betweenness instance `↦` DFA over `Y ∪ {x₁, …, x_k, e, f}`. The instance
/// is satisfiable iff the DFA is Wheeler under some order iff its language
/// is.
///
/// States: q0; `q_j` for each element that is the first or last entry of a
/// triple, in element order; `q_e`, `q_f`; then per triple `i` the states
/// `q¹, q³, q⁵` (first-entry side, exit `e`) followed by `q², q⁴, q⁶`
/// (last-entry side, exit `f`).
pub fn reduce_betweenness_to_dfa(inst: &BetweennessInstance) -> ReductionReport {
    let ys = inst.elements();
    let triples = inst.triples();
    let mut sigma = OrderedAlphabet::new(ys.iter().cloned()).expect("distinct elements");
    let xs: Vec<Sym> = (1..=triples.len()).map(|i| sigma.push_fresh(&format!("x{i}"))).collect();
    let se = sigma.push_fresh("e");
    let sf = sigma.push_fresh("f");

    let mut state_of = vec![usize::MAX; ys.len()];
    let mut next = 1;
    for (j, slot) in state_of.iter_mut().enumerate() {
        if triples.iter().any(|t| t[0] == j || t[2] == j) {
            *slot = next;
            next += 1;
        }
    }
    let (qe, qf) = (next, next + 1);
    let base = next + 2;
    let mut edges: Vec<Edge> = (0..ys.len())
        .filter(|&j| state_of[j] != usize::MAX)
        .map(|j| (0, Sym(j as u32), state_of[j]))
        .collect();
    for (i, &[a, b, c]) in triples.iter().enumerate() {
        let x = xs[i];
        let yb = Sym(b as u32);
        let s = |k: usize| base + 6 * i + [0, 3, 1, 4, 2, 5][k - 1];
        edges.extend([
            (state_of[a], x, s(1)),
            (s(1), x, s(3)),
            (s(3), yb, s(5)),
            (s(5), x, s(1)),
            (s(1), se, qe),
            (state_of[c], x, s(2)),
            (s(2), x, s(4)),
            (s(4), yb, s(6)),
            (s(6), x, s(2)),
            (s(2), sf, qf),
        ]);
    }
    let total = base + 6 * triples.len();
    let out = Automaton::new(sigma, total, 0, [qe, qf], edges).expect("ids in range");
    let mut fresh = xs;
    fresh.extend([se, sf]);
    // with no triples nothing is reachable but q0
    let out = trim_basic(&out);
    report(1, out, fresh)
}
