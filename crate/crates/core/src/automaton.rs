use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::alphabet::{OrderedAlphabet, Sym};

pub type StateId = usize;

/// An edge `(source, symbol, target)`.
pub type Edge = (StateId, Sym, StateId);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("automaton must have at least one state")]
    NoStates,
    #[error("state {state} out of range 0..{count}")]
    StateOutOfRange { state: StateId, count: usize },
    #[error("symbol rank {0} is not in the alphabet")]
    SymbolOutOfRange(u32),
    #[error("operation requires a deterministic automaton")]
    NotDeterministic,
    #[error("word `{0}` cannot be read from the initial state")]
    NotReadable(String),
    #[error("the empty word has no primitivity")]
    EmptyWord,
    #[error("subset construction exceeded {cap} states")]
    StateBlowup { cap: usize },
}

/// A finite automaton `(Q, q0, δ, F, Σ)` with a single initial state.
///
/// Transitions are kept per state, sorted by `(symbol, target)` and free of
/// duplicates, so two automata compare equal iff they are state-for-state
/// identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    alphabet: OrderedAlphabet,
    initial: StateId,
    finals: Vec<bool>,
    delta: Vec<Vec<(Sym, StateId)>>,
    deterministic: bool,
}

impl Automaton {
    pub fn new<F, E>(
        alphabet: OrderedAlphabet,
        state_count: usize,
        initial: StateId,
        finals: F,
        edges: E,
    ) -> Result<Self, AutomatonError>
    where
        F: IntoIterator<Item = StateId>,
        E: IntoIterator<Item = Edge>,
    {
        if state_count == 0 {
            return Err(AutomatonError::NoStates);
        }
        let check = |state: StateId| {
            if state < state_count {
                Ok(state)
            } else {
                Err(AutomatonError::StateOutOfRange {
                    state,
                    count: state_count,
                })
            }
        };
        check(initial)?;
        let mut final_flags = vec![false; state_count];
        for f in finals {
            final_flags[check(f)?] = true;
        }
        let mut delta = vec![Vec::new(); state_count];
        for (src, sym, dst) in edges {
            check(src)?;
            check(dst)?;
            if sym.index() >= alphabet.len() {
                return Err(AutomatonError::SymbolOutOfRange(sym.0));
            }
            delta[src].push((sym, dst));
        }
        Ok(Self::from_parts(alphabet, initial, final_flags, delta))
    }

    pub(crate) fn from_parts(
        alphabet: OrderedAlphabet,
        initial: StateId,
        finals: Vec<bool>,
        mut delta: Vec<Vec<(Sym, StateId)>>,
    ) -> Self {
        for out in &mut delta {
            out.sort_unstable();
            out.dedup();
        }
        let deterministic = delta
            .iter()
            .all(|out| out.windows(2).all(|w| w[0].0 != w[1].0));
        Automaton {
            alphabet,
            initial,
            finals,
            delta,
            deterministic,
        }
    }

    /// The one-state automaton for the empty language.
    pub fn empty_language(alphabet: OrderedAlphabet) -> Self {
        Self::from_parts(alphabet, 0, vec![false], vec![Vec::new()])
    }

    pub fn alphabet(&self) -> &OrderedAlphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(q, _)| q)
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    /// Outgoing `(symbol, target)` pairs of `q`, sorted.
    pub fn out(&self, q: StateId) -> &[(Sym, StateId)] {
        &self.delta[q]
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(q, out)| out.iter().map(move |&(a, v)| (q, a, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.delta.iter().map(Vec::len).sum()
    }

    /// Targets of `q` on `a`.
    pub fn successors(&self, q: StateId, a: Sym) -> impl Iterator<Item = StateId> + '_ {
        let out = &self.delta[q];
        let start = out.partition_point(|&(s, _)| s < a);
        out[start..]
            .iter()
            .take_while(move |&&(s, _)| s == a)
            .map(|&(_, v)| v)
    }

    /// The unique target of `q` on `a`, for deterministic automata.
    pub fn next(&self, q: StateId, a: Sym) -> Option<StateId> {
        self.successors(q, a).next()
    }

    /// Incoming `(symbol, source)` pairs per state, sorted.
    pub fn predecessors(&self) -> Vec<Vec<(Sym, StateId)>> {
        let mut preds = vec![Vec::new(); self.state_count()];
        for (u, a, v) in self.edges() {
            preds[v].push((a, u));
        }
        for p in &mut preds {
            p.sort_unstable();
        }
        preds
    }

    /// `δ(q0, word)`.
    pub fn run(&self, word: &[Sym]) -> BTreeSet<StateId> {
        self.run_from(&BTreeSet::from([self.initial]), word)
    }

    /// `⋃_{q ∈ from} δ(q, word)`, i.e. a run with a set of initial states.
    pub fn run_from(&self, from: &BTreeSet<StateId>, word: &[Sym]) -> BTreeSet<StateId> {
        let mut current = from.clone();
        for &a in word {
            if current.is_empty() {
                break;
            }
            current = current
                .iter()
                .flat_map(|&q| self.successors(q, a))
                .collect();
        }
        current
    }

    /// Deterministic run; `None` once the word falls off the automaton.
    pub fn walk(&self, from: StateId, word: &[Sym]) -> Option<StateId> {
        word.iter().try_fold(from, |q, &a| self.next(q, a))
    }

    pub fn accepts(&self, word: &[Sym]) -> bool {
        self.run(word).iter().any(|&q| self.finals[q])
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for &(_, v) in &self.delta[q] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    pub fn coreachable(&self) -> Vec<bool> {
        let preds = self.predecessors();
        let mut seen = self.finals.clone();
        let mut queue: VecDeque<StateId> = self.finals().collect();
        while let Some(q) = queue.pop_front() {
            for &(_, u) in &preds[q] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// Every state reachable from q0 and co-reachable to F.
    pub fn is_basic(&self) -> bool {
        let r = self.reachable();
        let c = self.coreachable();
        r.iter().zip(&c).all(|(&r, &c)| r && c)
    }

    /// Same automaton over an alphabet listing the symbols in `order`
    /// (old symbols, new rank = position in `order`). `order` must be a
    /// permutation of the alphabet.
    pub fn with_alphabet_order(&self, order: &[Sym]) -> Automaton {
        assert_eq!(order.len(), self.alphabet.len(), "order must be a permutation");
        let mut new_rank = vec![Sym(u32::MAX); order.len()];
        for (rank, &old) in order.iter().enumerate() {
            new_rank[old.index()] = Sym(rank as u32);
        }
        assert!(new_rank.iter().all(|s| s.0 != u32::MAX), "order must be a permutation");
        let alphabet =
            OrderedAlphabet::new(order.iter().map(|&s| self.alphabet.name(s).to_string()))
                .expect("permutation of a valid alphabet");
        self.relabel(alphabet, |s| new_rank[s.index()])
    }

    /// Re-expresses the automaton over `target`, which must contain every
    /// symbol of this automaton's alphabet (possibly in another order).
    pub fn over_alphabet(&self, target: &OrderedAlphabet) -> Option<Automaton> {
        let map: Option<Vec<Sym>> = self
            .alphabet
            .symbols()
            .iter()
            .map(|name| target.sym(name))
            .collect();
        let map = map?;
        Some(self.relabel(target.clone(), |s| map[s.index()]))
    }

    fn relabel(&self, alphabet: OrderedAlphabet, f: impl Fn(Sym) -> Sym) -> Automaton {
        let delta = self
            .delta
            .iter()
            .map(|out| out.iter().map(|&(a, v)| (f(a), v)).collect())
            .collect();
        Self::from_parts(alphabet, self.initial, self.finals.clone(), delta)
    }

    /// Renumbers states: new id of old state `q` is `perm[q]`.
    pub fn permute_states(&self, perm: &[StateId]) -> Automaton {
        let n = self.state_count();
        assert_eq!(perm.len(), n);
        let mut finals = vec![false; n];
        let mut delta = vec![Vec::new(); n];
        for q in 0..n {
            finals[perm[q]] = self.finals[q];
            delta[perm[q]] = self.delta[q].iter().map(|&(a, v)| (a, perm[v])).collect();
        }
        Self::from_parts(self.alphabet.clone(), perm[self.initial], finals, delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn run_examples() {
        let fig1 = fixtures::fig1();
        let w = |t: &str| fig1.alphabet().parse_word(t).unwrap();
        assert_eq!(fig1.run(&w("dcf")), BTreeSet::from([5]));
        assert_eq!(fig1.run(&w("")), BTreeSet::from([0]));
        let fig3b = fixtures::fig3b();
        let w = |t: &str| fig3b.alphabet().parse_word(t).unwrap();
        assert!(fig3b.run(&w("ba")).is_empty());
    }

    #[test]
    fn rejects_out_of_range() {
        let s = OrderedAlphabet::new(["a"]).unwrap();
        assert!(Automaton::new(s.clone(), 0, 0, [], []).is_err());
        assert!(Automaton::new(s.clone(), 1, 0, [1], []).is_err());
        assert!(Automaton::new(s, 1, 0, [], [(0, Sym(1), 0)]).is_err());
    }

    #[test]
    fn determinism_flag() {
        let s = OrderedAlphabet::new(["a"]).unwrap();
        let d = Automaton::new(s.clone(), 2, 0, [1], [(0, Sym(0), 1)]).unwrap();
        assert!(d.is_deterministic());
        let n = Automaton::new(s, 2, 0, [1], [(0, Sym(0), 1), (0, Sym(0), 0)]).unwrap();
        assert!(!n.is_deterministic());
    }

    #[test]
    fn reorder_alphabet_relabels_edges() {
        let fig1 = fixtures::fig1();
        // a < d < c < f
        let order = [Sym(0), Sym(2), Sym(1), Sym(3)];
        let r = fig1.with_alphabet_order(&order);
        assert_eq!(r.alphabet().symbols(), ["a", "d", "c", "f"]);
        let w = r.alphabet().parse_word("dcf").unwrap();
        assert_eq!(r.run(&w), BTreeSet::from([5]));
    }
}
