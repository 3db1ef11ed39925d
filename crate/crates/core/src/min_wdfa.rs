//! Minimum Wheeler DFA from a minimum DFA.
//!
//! List the prefixes of `L` of length at most `d = n + n²` in co-lex order,
//! cut the list into maximal runs of words that agree on their minimum-DFA
//! state and last symbol, keep one representative per run, and wire the
//! representatives together by locating each `β·c` with a binary search.
//!
//! Two routes produce the same runs. The explicit route materializes the
//! sorted prefix list. The compressed route never does: the co-lex sorted
//! prefixes of length `≤ r` are `ε` followed, for each symbol `a` in order, by
//! `{α·a}` for the prefixes `α` of length `≤ r − 1` in their own order, so the
//! run list at depth `r` is computed from the run list at depth `r − 1`.

use std::cmp::Ordering;

use thiserror::Error;

use crate::alphabet::{colex_compare, Colex, Sym, Word};
use crate::automaton::{Automaton, AutomatonError, StateId};
use crate::ops::{language_equal, minimize};
use crate::wheeler::{verify_wheeler, WheelerOrder, WheelerViolation};

pub const DEFAULT_WORD_CAP: u64 = 10_000_000;
pub const DEFAULT_RUN_CAP: u64 = 1 << 22;
/// Above this many prefixes [`fingerprint`] prefers the compressed route
/// even when enumeration is allowed.
pub const EXPLICIT_ROUTE_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WdfaError {
    #[error("automaton is not deterministic")]
    NotDeterministic,
    #[error("{count} prefixes exceed the enumeration cap of {cap}")]
    InfeasibleEnumeration { count: u128, cap: u64 },
    #[error("cannot place {beta:?}·{symbol:?} between neighbouring representatives")]
    ConstructionInconsistent { beta: Word, symbol: Sym },
    #[error("constructed automaton is not Wheeler: {0}")]
    NotWheeler(WheelerViolation),
    #[error("constructed automaton accepts a different language")]
    LanguageMismatch,
    #[error("{runs} co-lex classes exceed the bound of {bound} for a Wheeler language")]
    TooManyClasses { runs: u128, bound: u128 },
}

impl From<AutomatonError> for WdfaError {
    fn from(_: AutomatonError) -> Self {
        WdfaError::NotDeterministic
    }
}

/// Prefix length that guarantees every class has a representative.
pub fn certifying_depth(n: usize) -> usize {
    n + n * n
}

/// Upper bound on the number of states of the minimum WDFA of a Wheeler
/// language whose minimum DFA has `n` states over `σ` symbols (the known
/// bound is `2^n − 1 + σ`). Every run at every depth lies inside one of
/// those states, so more runs than this refutes Wheelerness.
pub fn class_bound(n: usize, sigma: usize) -> u128 {
    let pow = if n >= 120 { u128::MAX } else { 1u128 << n };
    pow.saturating_mul(sigma.max(1) as u128)
}

/// `|Pref(L)^{≤d}|`, counted by paths of the (trimmed) DFA; saturates.
pub fn count_prefixes(min_dfa: &Automaton, d: usize) -> u128 {
    let n = min_dfa.state_count();
    let mut layer = vec![0u128; n];
    layer[min_dfa.initial()] = 1;
    let mut total = 1u128;
    for _ in 0..d {
        let mut next = vec![0u128; n];
        for (q, &c) in layer.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(_, v) in min_dfa.out(q) {
                next[v] = next[v].saturating_add(c);
            }
        }
        total = total.saturating_add(next.iter().fold(0u128, |s, &c| s.saturating_add(c)));
        if next.iter().all(|&c| c == 0) {
            break;
        }
        layer = next;
    }
    total
}

/// `Pref(L)^{≤d}` in strictly increasing co-lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixList {
    pub depth: usize,
    pub words: Vec<Word>,
    /// Minimum-DFA state reached by each word.
    pub class_of: Vec<StateId>,
}

impl PrefixList {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn last_sym(&self, i: usize) -> Option<Sym> {
        self.words[i].last().copied()
    }
}

/// Walks every path of length `≤ d` from q0 and sorts the labels co-lex.
pub fn enumerate_prefixes(min_dfa: &Automaton, d: usize, word_cap: u64) -> Result<PrefixList, WdfaError> {
    if !min_dfa.is_deterministic() {
        return Err(WdfaError::NotDeterministic);
    }
    let count = count_prefixes(min_dfa, d);
    if count > word_cap as u128 {
        return Err(WdfaError::InfeasibleEnumeration { count, cap: word_cap });
    }
    let mut found: Vec<(Word, StateId)> = Vec::with_capacity(count as usize);
    let mut stack = vec![(Vec::new(), min_dfa.initial())];
    while let Some((w, q)) = stack.pop() {
        if w.len() < d {
            for &(s, v) in min_dfa.out(q) {
                let mut x = w.clone();
                x.push(s);
                stack.push((x, v));
            }
        }
        found.push((w, q));
    }
    found.sort_unstable_by(|x, y| colex_compare(&x.0, &y.0));
    let (words, class_of) = found.into_iter().unzip();
    Ok(PrefixList { depth: d, words, class_of })
}

/// One representative per `≡_L^c` run, in co-lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub representatives: Vec<Word>,
    /// Minimum-DFA state of each representative.
    pub classes: Vec<StateId>,
}

impl Fingerprint {
    pub fn m(&self) -> usize {
        self.representatives.len()
    }
}

/// Scans the sorted list; a run ends when the state or the last symbol
/// changes. Each run is represented by its shortest word (the co-lex
/// smallest among equally short ones).
pub fn compute_fingerprint(p: &PrefixList) -> Fingerprint {
    let mut representatives: Vec<Word> = Vec::new();
    let mut classes = Vec::new();
    let mut lasts: Vec<Option<Sym>> = Vec::new();
    for (i, w) in p.words.iter().enumerate() {
        let key = (p.class_of[i], p.last_sym(i));
        match (classes.last(), lasts.last()) {
            (Some(&c), Some(&l)) if (c, l) == key => {
                let rep = representatives.last_mut().expect("non-empty");
                if w.len() < rep.len() {
                    *rep = w.clone();
                }
            }
            _ => {
                representatives.push(w.clone());
                classes.push(key.0);
                lasts.push(key.1);
            }
        }
    }
    Fingerprint { representatives, classes }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Run {
    class: StateId,
    last: Option<Sym>,
    /// Representative, as a node of the word trie below.
    rep: usize,
    len: usize,
}

/// Same runs as `compute_fingerprint(enumerate_prefixes(..))`, computed in
/// `O(d·σ·m)` run operations without listing the prefixes.
/// Fails once the run count passes [`class_bound`] or `run_cap`.
pub fn compressed_fingerprint(min_dfa: &Automaton, d: usize, run_cap: u64) -> Result<Fingerprint, WdfaError> {
    if !min_dfa.is_deterministic() {
        return Err(WdfaError::NotDeterministic);
    }
    let bound = class_bound(min_dfa.state_count(), min_dfa.alphabet().len());
    // trie of representatives: node -> (parent, symbol); node 0 is ε
    let mut trie: Vec<(usize, Sym)> = vec![(0, Sym(0))];
    let root = Run {
        class: min_dfa.initial(),
        last: None,
        rep: 0,
        len: 0,
    };
    let mut level = vec![root];
    for _ in 0..d {
        let mut next = vec![root];
        for a in min_dfa.alphabet().syms() {
            for run in &level {
                let Some(class) = min_dfa.next(run.class, a) else { continue };
                let len = run.len + 1;
                match next.last_mut() {
                    Some(top) if top.class == class && top.last == Some(a) => {
                        if len < top.len {
                            trie.push((run.rep, a));
                            top.rep = trie.len() - 1;
                            top.len = len;
                        }
                    }
                    _ => {
                        trie.push((run.rep, a));
                        next.push(Run {
                            class,
                            last: Some(a),
                            rep: trie.len() - 1,
                            len,
                        });
                    }
                }
            }
        }
        let runs = next.len() as u128;
        if runs > bound {
            return Err(WdfaError::TooManyClasses { runs, bound });
        }
        if runs > run_cap as u128 {
            return Err(WdfaError::InfeasibleEnumeration { count: runs, cap: run_cap });
        }
        if trie.len() > (1 << 20) && trie.len() > 4 * next.len() * (d + 1).min(64) {
            compact(&mut trie, &mut next);
        }
        let stable = next.len() == level.len()
            && next
                .iter()
                .zip(&level)
                .all(|(x, y)| (x.class, x.last, x.len) == (y.class, y.last, y.len));
        level = next;
        if stable {
            break;
        }
    }
    let word = |mut node: usize| {
        let mut w = Vec::new();
        while node != 0 {
            let (parent, s) = trie[node];
            w.push(s);
            node = parent;
        }
        w.reverse();
        w
    };
    Ok(Fingerprint {
        representatives: level.iter().map(|r| word(r.rep)).collect(),
        classes: level.iter().map(|r| r.class).collect(),
    })
}

/// Drops trie nodes no representative depends on. Parents always precede
/// their children, so one forward pass renumbers.
fn compact(trie: &mut Vec<(usize, Sym)>, runs: &mut [Run]) {
    let mut keep = vec![false; trie.len()];
    keep[0] = true;
    for run in runs.iter() {
        let mut node = run.rep;
        while !keep[node] {
            keep[node] = true;
            node = trie[node].0;
        }
    }
    let mut new_id = vec![usize::MAX; trie.len()];
    let mut out = Vec::new();
    for (i, &(parent, s)) in trie.iter().enumerate() {
        if keep[i] {
            new_id[i] = out.len();
            out.push((if i == 0 { 0 } else { new_id[parent] }, s));
        }
    }
    for run in runs.iter_mut() {
        run.rep = new_id[run.rep];
    }
    *trie = out;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdfaOptions {
    /// Prefix depth; `None` means the certifying depth `n + n²`.
    pub depth: Option<usize>,
    /// Above this many prefixes the run-compressed route is used instead of
    /// materializing the list.
    pub word_cap: u64,
    /// Cap on runs held at once by the compressed route.
    pub run_cap: u64,
}

impl Default for WdfaOptions {
    fn default() -> Self {
        WdfaOptions {
            depth: None,
            word_cap: DEFAULT_WORD_CAP,
            run_cap: DEFAULT_RUN_CAP,
        }
    }
}

/// A Wheeler DFA whose state `i` is the `i`-th representative; the identity
/// order is its Wheeler order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wdfa {
    pub automaton: Automaton,
    pub order: WheelerOrder,
    pub fingerprint: Fingerprint,
    /// Number of prefixes the fingerprint was read from.
    pub prefix_count: u128,
    /// False when built from a depth below `n + n²`.
    pub certifying: bool,
}

/// Fingerprint at the requested depth, by whichever route fits the cap.
pub fn fingerprint(min_dfa: &Automaton, options: &WdfaOptions) -> Result<(Fingerprint, u128), WdfaError> {
    let d = options
        .depth
        .unwrap_or_else(|| certifying_depth(min_dfa.state_count()));
    let count = count_prefixes(min_dfa, d);
    let fp = if count <= options.word_cap.min(EXPLICIT_ROUTE_LIMIT) as u128 {
        let fp = compute_fingerprint(&enumerate_prefixes(min_dfa, d, options.word_cap)?);
        let bound = class_bound(min_dfa.state_count(), min_dfa.alphabet().len());
        if fp.m() as u128 > bound {
            return Err(WdfaError::TooManyClasses { runs: fp.m() as u128, bound });
        }
        fp
    } else {
        compressed_fingerprint(min_dfa, d, options.run_cap)?
    };
    Ok((fp, count))
}

/// Wires the fingerprint into an automaton. `β_j·c` is located among the
/// sorted representatives; between `β_s` and `β_{s+1}` the one in the same
/// `≡_L` class wins, and if both are, the one ending in `c`.
pub fn assemble(min_dfa: &Automaton, fp: &Fingerprint) -> Result<Automaton, WdfaError> {
    let reps = &fp.representatives;
    let m = reps.len();
    let mut edges = Vec::new();
    for (j, beta) in reps.iter().enumerate() {
        for (c, target_class) in min_dfa.out(fp.classes[j]).iter().copied() {
            let mut probe = beta.clone();
            probe.push(c);
            let target = match reps.binary_search_by(|r| colex_compare(r, &probe)) {
                Ok(s) => s,
                Err(0) => 0,
                Err(pos) if pos == m => m - 1,
                Err(pos) => {
                    let (s, t) = (pos - 1, pos);
                    match (fp.classes[s] == target_class, fp.classes[t] == target_class) {
                        (true, false) => s,
                        (false, true) => t,
                        (true, true) if reps[s].last() == Some(&c) => s,
                        (true, true) if reps[t].last() == Some(&c) => t,
                        _ => {
                            return Err(WdfaError::ConstructionInconsistent {
                                beta: beta.clone(),
                                symbol: c,
                            })
                        }
                    }
                }
            };
            edges.push((j, c, target));
        }
    }
    let finals = (0..m).filter(|&j| min_dfa.is_final(fp.classes[j]));
    Ok(Automaton::new(min_dfa.alphabet().clone(), m, 0, finals, edges).expect("ids in range"))
}

/// Minimum WDFA for `L(d)` with default options.
pub fn build_min_wdfa(d: &Automaton) -> Result<Wdfa, WdfaError> {
    build_min_wdfa_with(d, &WdfaOptions::default())
}

/// Builds, then checks the result is Wheeler and language-equal to the
/// input. Any failure means the language is not Wheeler (at a certifying
/// depth).
pub fn build_min_wdfa_with(d: &Automaton, options: &WdfaOptions) -> Result<Wdfa, WdfaError> {
    let min = minimize(d)?;
    let (fp, prefix_count) = fingerprint(&min, options)?;
    let automaton = assemble(&min, &fp)?;
    let order = WheelerOrder::identity(automaton.state_count());
    verify_wheeler(&automaton, &order).map_err(WdfaError::NotWheeler)?;
    if !language_equal(&automaton, &min) {
        return Err(WdfaError::LanguageMismatch);
    }
    let certifying = options
        .depth
        .is_none_or(|depth| depth >= certifying_depth(min.state_count()));
    Ok(Wdfa {
        automaton,
        order,
        fingerprint: fp,
        prefix_count,
        certifying,
    })
}

/// Sanity helper for callers holding words: true iff strictly increasing.
pub fn is_colex_sorted(words: &[Word]) -> bool {
    words
        .windows(2)
        .all(|w| Colex(&w[0]).cmp(&Colex(&w[1])) == Ordering::Less)
}
