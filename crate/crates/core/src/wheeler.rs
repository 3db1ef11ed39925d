//! Wheeler orders for a fixed automaton and alphabet order.
//!
//! An order `<` on the states is Wheeler when q0 is its minimum and has no
//! in-edges, and for any two edges `(u1, a1, v1)`, `(u2, a2, v2)`:
//!
//! * (i)  `a1 ≺ a2` implies `v1 < v2`;
//! * (ii) `a1 = a2` and `u1 < u2` imply `v1 ≤ v2`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::alphabet::{colex_compare, OrderedAlphabet, Sym, Word, INITIAL_MARKER};
use crate::automaton::{Automaton, Edge, StateId};

/// A total order on states, stored as `rank[state]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WheelerOrder {
    rank: Vec<usize>,
}

impl WheelerOrder {
    /// From `rank[state]`; `None` unless it is a permutation of `0..n`.
    pub fn from_ranks(rank: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; rank.len()];
        for &r in &rank {
            if r >= rank.len() || std::mem::replace(&mut seen[r], true) {
                return None;
            }
        }
        Some(WheelerOrder { rank })
    }

    /// From the states listed smallest first.
    pub fn from_sequence(states: &[StateId]) -> Option<Self> {
        let mut rank = vec![usize::MAX; states.len()];
        for (r, &q) in states.iter().enumerate() {
            if q >= states.len() || rank[q] != usize::MAX {
                return None;
            }
            rank[q] = r;
        }
        Some(WheelerOrder { rank })
    }

    pub fn identity(n: usize) -> Self {
        WheelerOrder {
            rank: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, q: StateId) -> usize {
        self.rank[q]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// States listed smallest first.
    pub fn sequence(&self) -> Vec<StateId> {
        let mut seq = vec![0; self.rank.len()];
        for (q, &r) in self.rank.iter().enumerate() {
            seq[r] = q;
        }
        seq
    }
}

impl fmt::Display for WheelerOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sequence().iter().map(|q| format!("q{q}")).collect();
        write!(f, "{}", parts.join(" < "))
    }
}

/// The label `λ(q)` shared by every edge entering `q`; `None` for states
/// without in-edges (in a basic automaton, only q0, whose label is `#`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaMap {
    labels: Vec<Option<Sym>>,
}

impl LambdaMap {
    pub fn label(&self, q: StateId) -> Option<Sym> {
        self.labels[q]
    }

    pub fn labels(&self) -> &[Option<Sym>] {
        &self.labels
    }

    pub fn render(&self, alphabet: &OrderedAlphabet, q: StateId) -> String {
        self.labels[q].map_or(INITIAL_MARKER.to_string(), |s| alphabet.name(s).to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    InitialHasInEdge,
    InputInconsistent,
    ConditionI,
    ConditionII,
    OrderContradiction,
}

/// Why an automaton (with a given order, where relevant) is not Wheeler.
/// Edge evidence always consists of edges of the automaton.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WheelerViolation {
    #[error("initial state has in-edge {edge:?}")]
    InitialHasInEdge { edge: Edge },
    #[error("edges {first:?} and {second:?} enter the same state with different labels")]
    InputInconsistent { first: Edge, second: Edge },
    #[error("condition (i) fails on {first:?} and {second:?}")]
    ConditionI { first: Edge, second: Edge },
    #[error("condition (ii) fails on {first:?} and {second:?}")]
    ConditionII { first: Edge, second: Edge },
    #[error("order is not a permutation with the initial state first (at q{state})")]
    OrderContradiction { state: StateId },
}

impl WheelerViolation {
    pub fn kind(&self) -> ViolationKind {
        match self {
            WheelerViolation::InitialHasInEdge { .. } => ViolationKind::InitialHasInEdge,
            WheelerViolation::InputInconsistent { .. } => ViolationKind::InputInconsistent,
            WheelerViolation::ConditionI { .. } => ViolationKind::ConditionI,
            WheelerViolation::ConditionII { .. } => ViolationKind::ConditionII,
            WheelerViolation::OrderContradiction { .. } => ViolationKind::OrderContradiction,
        }
    }

    /// Independently re-evaluates the named clause on the evidence: true iff
    /// the evidence edges exist and really break it.
    pub fn recheck(&self, a: &Automaton, order: Option<&WheelerOrder>) -> bool {
        let has = |&(u, s, v): &Edge| a.successors(u, s).any(|t| t == v);
        let rank = |q: StateId| order.map(|o| o.rank(q));
        match self {
            WheelerViolation::InitialHasInEdge { edge } => has(edge) && edge.2 == a.initial(),
            WheelerViolation::InputInconsistent { first, second } => {
                has(first) && has(second) && first.2 == second.2 && first.1 != second.1
            }
            WheelerViolation::ConditionI { first, second } => {
                has(first)
                    && has(second)
                    && first.1 < second.1
                    && matches!((rank(first.2), rank(second.2)), (Some(x), Some(y)) if x >= y)
            }
            WheelerViolation::ConditionII { first, second } => {
                has(first)
                    && has(second)
                    && first.1 == second.1
                    && matches!((rank(first.0), rank(second.0)), (Some(x), Some(y)) if x < y)
                    && matches!((rank(first.2), rank(second.2)), (Some(x), Some(y)) if x > y)
            }
            WheelerViolation::OrderContradiction { state } => match order {
                Some(o) => o.len() != a.state_count() || (*state == a.initial() && o.rank(*state) != 0),
                None => false,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WheelerError {
    #[error("not Wheeler: {0}")]
    Violation(WheelerViolation),
    #[error("no Wheeler order exists")]
    NotWheeler,
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("automaton is not deterministic")]
    NotDeterministic,
    #[error("automaton has states unreachable from the initial state")]
    NotBasic,
}

impl From<WheelerViolation> for WheelerError {
    fn from(v: WheelerViolation) -> Self {
        WheelerError::Violation(v)
    }
}

/// λ, or the first reason it is undefined: an edge into q0, or a state
/// entered under two labels.
pub fn input_consistency(a: &Automaton) -> Result<LambdaMap, WheelerViolation> {
    let preds = a.predecessors();
    if let Some(&(s, u)) = preds[a.initial()].first() {
        return Err(WheelerViolation::InitialHasInEdge {
            edge: (u, s, a.initial()),
        });
    }
    let mut labels = vec![None; a.state_count()];
    for (v, inc) in preds.iter().enumerate() {
        if let (Some(&(s1, u1)), Some(&(s2, u2))) = (inc.first(), inc.last()) {
            if s1 != s2 {
                return Err(WheelerViolation::InputInconsistent {
                    first: (u1, s1, v),
                    second: (u2, s2, v),
                });
            }
            labels[v] = Some(s1);
        }
    }
    Ok(LambdaMap { labels })
}

/// Checks every clause of the definition against `o`. Works for NFAs.
pub fn verify_wheeler(a: &Automaton, o: &WheelerOrder) -> Result<(), WheelerViolation> {
    let n = a.state_count();
    if o.len() != n {
        return Err(WheelerViolation::OrderContradiction { state: o.len().min(n) });
    }
    if o.rank(a.initial()) != 0 {
        return Err(WheelerViolation::OrderContradiction { state: a.initial() });
    }
    let lambda = input_consistency(a)?;
    let preds = a.predecessors();
    let in_edge = |v: StateId| {
        let (s, u) = preds[v][0];
        (u, s, v)
    };

    // (i): λ must be non-decreasing along the order
    let mut top: Option<(Sym, StateId)> = None;
    for q in o.sequence() {
        let Some(s) = lambda.label(q) else { continue };
        match top {
            Some((t, p)) if s < t => {
                return Err(WheelerViolation::ConditionI {
                    first: in_edge(q),
                    second: in_edge(p),
                })
            }
            Some((t, _)) if s == t => {}
            _ => top = Some((s, q)),
        }
    }

    // (ii): per label, targets are non-decreasing in the source rank
    let mut by_label: Vec<Vec<(usize, usize, Edge)>> = vec![Vec::new(); a.alphabet().len()];
    for e @ (u, s, v) in a.edges() {
        by_label[s.index()].push((o.rank(u), o.rank(v), e));
    }
    for mut group in by_label {
        group.sort_unstable_by_key(|&(ru, rv, _)| (ru, rv));
        let mut best: Option<(usize, Edge)> = None;
        let mut i = 0;
        while i < group.len() {
            let ru = group[i].0;
            let j = i + group[i..].iter().take_while(|g| g.0 == ru).count();
            if let Some((max_rv, first)) = best {
                let (_, rv, second) = group[i];
                if rv < max_rv {
                    return Err(WheelerViolation::ConditionII { first, second });
                }
            }
            let (_, rv, e) = group[j - 1];
            if best.is_none_or(|(m, _)| rv > m) {
                best = Some((rv, e));
            }
            i = j;
        }
    }
    Ok(())
}

/// For each reachable state, its BFS-shortest entering word with ties broken
/// co-lexicographically; `None` for unreachable states.
pub fn shortest_entering_words(d: &Automaton) -> Vec<Option<Word>> {
    let n = d.state_count();
    let mut words: Vec<Option<Word>> = vec![None; n];
    words[d.initial()] = Some(Vec::new());
    let mut layer = vec![d.initial()];
    while !layer.is_empty() {
        let mut best: Vec<Option<Word>> = vec![None; n];
        let mut touched = Vec::new();
        for &u in &layer {
            for &(s, v) in d.out(u) {
                if words[v].is_some() {
                    continue;
                }
                let mut w = words[u].clone().expect("layer states have words");
                w.push(s);
                match &best[v] {
                    Some(b) if colex_compare(b, &w).is_le() => {}
                    None => {
                        touched.push(v);
                        best[v] = Some(w);
                    }
                    Some(_) => best[v] = Some(w),
                }
            }
        }
        for &v in &touched {
            words[v] = best[v].take();
        }
        layer = touched;
    }
    words
}

/// The unique order that can make a DFA Wheeler: states sorted by the co-lex
/// order of any entering word. Fails with the first violated clause.
pub fn dfa_wheeler_order(d: &Automaton) -> Result<WheelerOrder, WheelerError> {
    if !d.is_deterministic() {
        return Err(WheelerError::NotDeterministic);
    }
    let words = shortest_entering_words(d);
    if words.iter().any(Option::is_none) {
        return Err(WheelerError::NotBasic);
    }
    input_consistency(d)?;
    let words: Vec<Word> = words.into_iter().map(Option::unwrap).collect();
    let mut seq: Vec<StateId> = (0..d.state_count()).collect();
    seq.sort_by(|&p, &q| colex_compare(&words[p], &words[q]));
    let order = WheelerOrder::from_sequence(&seq).expect("permutation");
    verify_wheeler(d, &order)?;
    Ok(order)
}

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

const UNKNOWN: i8 = 0;
const LESS: i8 = 1;
const GREATER: i8 = -1;

struct Constraints<'a> {
    n: usize,
    out: Vec<Vec<Vec<StateId>>>,
    preds: &'a [Vec<(Sym, StateId)>],
}

impl Constraints<'_> {
    /// Records `p < q` and everything it forces. False on contradiction.
    fn assert_less(&self, rel: &mut [i8], p: StateId, q: StateId) -> bool {
        let n = self.n;
        let mut stack = vec![(p, q)];
        while let Some((x, y)) = stack.pop() {
            if x == y {
                return false;
            }
            match rel[x * n + y] {
                LESS => continue,
                GREATER => return false,
                _ => {}
            }
            rel[x * n + y] = LESS;
            rel[y * n + x] = GREATER;
            for r in 0..n {
                if rel[r * n + x] == LESS && rel[r * n + y] != LESS {
                    stack.push((r, y));
                }
                if rel[y * n + r] == LESS && rel[x * n + r] != LESS {
                    stack.push((x, r));
                }
            }
            // (ii) forwards: x < y forces successors on a common label apart
            for (ox, oy) in self.out[x].iter().zip(&self.out[y]) {
                for &v1 in ox {
                    for &v2 in oy {
                        if v1 != v2 && rel[v1 * n + v2] != LESS {
                            stack.push((v1, v2));
                        }
                    }
                }
            }
            // (ii) backwards: x < y forbids u2 < u1 for sources entering them
            for &(s1, u1) in &self.preds[x] {
                for &(s2, u2) in &self.preds[y] {
                    if s1 == s2 && u1 != u2 && rel[u1 * n + u2] != LESS {
                        stack.push((u1, u2));
                    }
                }
            }
        }
        true
    }
}

/// Backtracking search for a Wheeler order of an arbitrary automaton.
///
/// Orders between label blocks are fixed up front; within blocks, pairwise
/// decisions are propagated through transitivity and condition (ii) before
/// branching. Each branch point counts as one node against `budget`.
pub fn nfa_wheeler_search(a: &Automaton, budget: u64) -> Result<WheelerOrder, WheelerError> {
    let lambda = input_consistency(a)?;
    let n = a.state_count();
    let sigma = a.alphabet().len();
    let preds = a.predecessors();
    let mut out = vec![vec![Vec::new(); sigma]; n];
    for (u, s, v) in a.edges() {
        out[u][s.index()].push(v);
    }
    let cons = Constraints {
        n,
        out,
        preds: &preds,
    };
    let key = |q: StateId| (q != a.initial(), lambda.label(q));
    let mut rel = vec![UNKNOWN; n * n];
    for p in 0..n {
        for q in 0..n {
            if key(p) < key(q) && !cons.assert_less(&mut rel, p, q) {
                return Err(WheelerError::NotWheeler);
            }
        }
    }

    let mut nodes = 0u64;
    let mut stack = vec![rel];
    while let Some(rel) = stack.pop() {
        let open = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .find(|&(p, q)| rel[p * n + q] == UNKNOWN);
        let Some((p, q)) = open else {
            let rank: Vec<usize> = (0..n)
                .map(|q| (0..n).filter(|&p| rel[p * n + q] == LESS).count())
                .collect();
            let order = WheelerOrder::from_ranks(rank).expect("total order");
            debug_assert_eq!(verify_wheeler(a, &order), Ok(()));
            return Ok(order);
        };
        nodes += 1;
        if nodes > budget {
            return Err(WheelerError::BudgetExceeded(budget));
        }
        // p < q is explored first
        for (x, y) in [(q, p), (p, q)] {
            let mut next = rel.clone();
            if cons.assert_less(&mut next, x, y) {
                stack.push(next);
            }
        }
    }
    Err(WheelerError::NotWheeler)
}

/// A word whose image of a state interval is not an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceCounterexample {
    /// Inclusive rank range of the starting interval.
    pub interval: (usize, usize),
    pub word: Word,
    /// Reached states, listed in rank order.
    pub reached: Vec<StateId>,
}

/// Checks that every interval of states maps to an interval under every word
/// of length at most `maxlen`. Returns the first failure found, scanning
/// intervals by `(lo, hi)` and words breadth first in symbol order.
pub fn path_coherence_check(
    a: &Automaton,
    o: &WheelerOrder,
    maxlen: usize,
) -> Result<(), CoherenceCounterexample> {
    let n = a.state_count();
    let seq = o.sequence();
    for lo in 0..n {
        for hi in lo..n {
            let start: Vec<StateId> = seq[lo..=hi].to_vec();
            let mut seen: HashSet<Vec<StateId>> = HashSet::from([start.clone()]);
            let mut queue = VecDeque::from([(start, Vec::new())]);
            while let Some((set, word)) = queue.pop_front() {
                if word.len() == maxlen {
                    continue;
                }
                for s in a.alphabet().syms() {
                    let mut next: Vec<StateId> =
                        set.iter().flat_map(|&q| a.successors(q, s)).collect();
                    next.sort_unstable_by_key(|&q| o.rank(q));
                    next.dedup();
                    let mut w = word.clone();
                    w.push(s);
                    let contiguous = next.windows(2).all(|p| o.rank(p[1]) == o.rank(p[0]) + 1);
                    if !contiguous {
                        return Err(CoherenceCounterexample {
                            interval: (lo, hi),
                            word: w,
                            reached: next,
                        });
                    }
                    if !next.is_empty() && seen.insert(next.clone()) {
                        queue.push_back((next, w));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Labels of all simple cycles (each cycle once, read from its smallest
/// state). Stops after `limit` cycles.
pub fn simple_cycle_labels(a: &Automaton, limit: usize) -> Vec<Word> {
    let n = a.state_count();
    let mut out = Vec::new();
    for start in 0..n {
        let mut on_path = vec![false; n];
        let mut label = Vec::new();
        fn dfs(
            a: &Automaton,
            start: StateId,
            q: StateId,
            on_path: &mut [bool],
            label: &mut Word,
            out: &mut Vec<Word>,
            limit: usize,
        ) {
            for &(s, v) in a.out(q) {
                if out.len() >= limit {
                    return;
                }
                if v == start {
                    let mut w = label.clone();
                    w.push(s);
                    out.push(w);
                } else if v > start && !on_path[v] {
                    on_path[v] = true;
                    label.push(s);
                    dfs(a, start, v, on_path, label, out, limit);
                    label.pop();
                    on_path[v] = false;
                }
            }
        }
        on_path[start] = true;
        dfs(a, start, start, &mut on_path, &mut label, &mut out, limit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{random_dfa, random_nfa, random_wheeler_nfa};
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Direct pairwise reading of the definition.
    fn brute_is_wheeler(a: &Automaton, o: &WheelerOrder) -> bool {
        if o.rank(a.initial()) != 0 || a.edges().any(|e| e.2 == a.initial()) {
            return false;
        }
        let edges: Vec<Edge> = a.edges().collect();
        for &(u1, a1, v1) in &edges {
            for &(u2, a2, v2) in &edges {
                if v1 == v2 && a1 != a2 {
                    return false;
                }
                if a1 < a2 && o.rank(v1) >= o.rank(v2) {
                    return false;
                }
                if a1 == a2 && o.rank(u1) < o.rank(u2) && o.rank(v1) > o.rank(v2) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn fig1_lambda_and_order() {
        let a = fixtures::fig1();
        let lambda = input_consistency(&a).unwrap();
        let labels: Vec<String> = (0..6).map(|q| lambda.render(a.alphabet(), q)).collect();
        assert_eq!(labels, ["#", "a", "c", "c", "d", "f"]);
        let o = dfa_wheeler_order(&a).unwrap();
        assert_eq!(o.sequence(), [0, 1, 2, 3, 4, 5]);
        assert_eq!(o.to_string(), "q0 < q1 < q2 < q3 < q4 < q5");
    }

    #[test]
    fn fig3a_is_input_inconsistent() {
        let a = fixtures::fig3a();
        let v = input_consistency(&a).unwrap_err();
        assert_eq!(v.kind(), ViolationKind::InputInconsistent);
        assert!(v.recheck(&a, None));
        assert_eq!(v, WheelerViolation::InputInconsistent { first: (0, Sym(0), 1), second: (1, Sym(1), 1) });
    }

    #[test]
    fn single_state() {
        let a = fixtures::epsilon_d();
        assert_eq!(input_consistency(&a).unwrap().label(0), None);
        assert_eq!(dfa_wheeler_order(&a).unwrap(), WheelerOrder::identity(1));
        assert_eq!(verify_wheeler(&a, &WheelerOrder::identity(1)), Ok(()));
        let u = fixtures::universal_d();
        assert!(matches!(
            dfa_wheeler_order(&u),
            Err(WheelerError::Violation(WheelerViolation::InitialHasInEdge { .. }))
        ));
    }

    #[test]
    fn fig2_condition_ii_on_c_edges() {
        let a = fixtures::fig2();
        let Err(WheelerError::Violation(v)) = dfa_wheeler_order(&a) else {
            panic!("fig2 must fail");
        };
        assert_eq!(v.kind(), ViolationKind::ConditionII);
        let c = a.alphabet().sym("c").unwrap();
        let WheelerViolation::ConditionII { first, second } = v else { unreachable!() };
        assert_eq!((first.1, second.1), (c, c));
        let o = WheelerOrder::identity(6);
        assert!(v.recheck(&a, Some(&o)));
    }

    #[test]
    fn fig1_swapped_order_breaks_ii() {
        let a = fixtures::fig1();
        let o = WheelerOrder::from_sequence(&[0, 1, 3, 2, 4, 5]).unwrap();
        let v = verify_wheeler(&a, &o).unwrap_err();
        assert_eq!(v.kind(), ViolationKind::ConditionII);
        assert!(v.recheck(&a, Some(&o)));
        assert!(!brute_is_wheeler(&a, &o));
    }

    #[test]
    fn bad_orders() {
        let a = fixtures::fig1();
        let o = WheelerOrder::from_sequence(&[1, 0, 2, 3, 4, 5]).unwrap();
        let v = verify_wheeler(&a, &o).unwrap_err();
        assert_eq!(v.kind(), ViolationKind::OrderContradiction);
        assert!(v.recheck(&a, Some(&o)));
        assert!(WheelerOrder::from_ranks(vec![0, 0]).is_none());
        assert!(WheelerOrder::from_sequence(&[0, 2]).is_none());
    }

    #[test]
    fn nfa_search_on_figures() {
        assert_eq!(
            nfa_wheeler_search(&fixtures::fig1(), DEFAULT_NODE_BUDGET).unwrap().sequence(),
            [0, 1, 2, 3, 4, 5]
        );
        assert_eq!(
            nfa_wheeler_search(&fixtures::fig2(), DEFAULT_NODE_BUDGET),
            Err(WheelerError::NotWheeler)
        );
    }

    #[test]
    fn verify_matches_brute_force_on_all_orders() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut wheeler_seen = 0;
        for round in 0..60 {
            let a = if round % 2 == 0 {
                random_dfa(&mut rng, 6, 2)
            } else {
                random_wheeler_nfa(&mut rng, 6, 2)
            };
            let n = a.state_count();
            let mut valid = Vec::new();
            for p in permutations(n) {
                let o = WheelerOrder::from_sequence(&p).unwrap();
                let brute = brute_is_wheeler(&a, &o);
                match verify_wheeler(&a, &o) {
                    Ok(()) => assert!(brute, "{a:?} {o}"),
                    Err(v) => {
                        assert!(!brute);
                        assert!(v.recheck(&a, Some(&o)), "{v:?}");
                    }
                }
                if brute {
                    valid.push(o);
                }
            }
            if a.is_deterministic() {
                // uniqueness for DFAs
                assert!(valid.len() <= 1);
                match dfa_wheeler_order(&a) {
                    Ok(o) => assert_eq!(valid, vec![o]),
                    Err(_) => assert!(valid.is_empty()),
                }
            }
            match nfa_wheeler_search(&a, DEFAULT_NODE_BUDGET) {
                Ok(o) => {
                    assert!(valid.contains(&o));
                    wheeler_seen += 1;
                }
                Err(e) => {
                    assert!(valid.is_empty(), "{e:?}");
                }
            }
        }
        assert!(wheeler_seen > 10);
    }

    #[test]
    fn nfa_search_agrees_with_exhaustive_on_random_nfas() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..80 {
            let a = random_nfa(&mut rng, 5, 2);
            let exists = permutations(a.state_count())
                .iter()
                .any(|p| brute_is_wheeler(&a, &WheelerOrder::from_sequence(p).unwrap()));
            assert_eq!(nfa_wheeler_search(&a, DEFAULT_NODE_BUDGET).is_ok(), exists);
        }
    }

    #[test]
    fn generated_wheeler_nfas_are_found() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let a = random_wheeler_nfa(&mut rng, 12, 3);
            let o = nfa_wheeler_search(&a, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(verify_wheeler(&a, &o), Ok(()));
        }
    }

    #[test]
    fn budget_is_reported() {
        // all states share a label and no edge pair constrains them
        let s = OrderedAlphabet::new(["a"]).unwrap();
        let edges: Vec<Edge> = (1..6).map(|v| (0, Sym(0), v)).collect();
        let a = Automaton::new(s, 6, 0, 1..6, edges).unwrap();
        assert_eq!(nfa_wheeler_search(&a, 2), Err(WheelerError::BudgetExceeded(2)));
        assert!(nfa_wheeler_search(&a, 100).is_ok());
    }

    #[test]
    fn path_coherence() {
        let a = fixtures::fig1();
        let o = dfa_wheeler_order(&a).unwrap();
        assert_eq!(path_coherence_check(&a, &o, 6), Ok(()));
        assert_eq!(path_coherence_check(&a, &o, 0), Ok(()));

        let b = fixtures::fig2();
        let o = WheelerOrder::identity(6);
        if let Err(cx) = path_coherence_check(&b, &o, 3) {
            let seq = o.sequence();
            let start = seq[cx.interval.0..=cx.interval.1].iter().copied().collect();
            let reached: Vec<_> = b.run_from(&start, &cx.word).into_iter().collect();
            let mut sorted = cx.reached.clone();
            sorted.sort_unstable();
            assert_eq!(reached, sorted);
        }
    }

    #[test]
    fn path_coherence_holds_on_random_wdfas() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut checked = 0;
        for _ in 0..300 {
            let d = random_dfa(&mut rng, 6, 2);
            if let Ok(o) = dfa_wheeler_order(&d) {
                assert_eq!(path_coherence_check(&d, &o, 5), Ok(()));
                checked += 1;
            }
        }
        assert!(checked > 5);
    }

    #[test]
    fn cycle_labels_of_wdfas_are_primitive() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..300 {
            let d = random_dfa(&mut rng, 6, 2);
            if dfa_wheeler_order(&d).is_ok() {
                for w in simple_cycle_labels(&d, 1000) {
                    assert_eq!(crate::is_primitive(&w), Some(true));
                }
            }
        }
        let s = OrderedAlphabet::new(["a"]).unwrap();
        let two_cycle = Automaton::new(s, 2, 0, [0], [(0, Sym(0), 1), (1, Sym(0), 0)]).unwrap();
        assert_eq!(simple_cycle_labels(&two_cycle, 10), vec![vec![Sym(0), Sym(0)]]);
    }
}
