//! Is `L(A)` Wheeler under the alphabet order?
//!
//! Two independent deciders:
//!
//! * **Witness search.** `L` is not Wheeler iff there are words `μ, ν, γ`
//!   with `γ` a suffix of neither `μ` nor `ν`, `μ` and `ν` reaching distinct
//!   states `u ≠ v` of the minimum DFA, `γ` labelling a cycle at both, and
//!   `μ, ν ≺ γ` or `γ ≺ μ, ν`. Such triples exist with
//!   `|μ|, |ν| ≤ |γ| ≤ n³ + 2n² + n + 2`.
//! * **Construct and verify.** Build the minimum WDFA (see [`crate::min_wdfa`]);
//!   the construction succeeds iff `L` is Wheeler.
//!
//! The witness search reads `γ` backwards from `(u, v)` in the product
//! `D × D` while reading `μ` and `ν` backwards alongside in `D`. Each of
//! the two comparisons with `γ` is either still tied (at some state of `D`)
//! or already decided below or above `γ`. A node is `(p₁, p₂, X, Y)`; the
//! pair stays inside the strongly connected component of `(u, v)` so the
//! walk read so far extends to a closed one. A node where both comparisons
//! are decided on the same side yields a witness. The node space is finite,
//! so an uncapped search is a decision procedure.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::alphabet::{colex_compare, is_suffix, power, Sym, Word};
use crate::automaton::{Automaton, AutomatonError, StateId};
use crate::min_wdfa::{build_min_wdfa_with, Wdfa, WdfaError, WdfaOptions};
use crate::ops::{determinize_capped, minimal_dfa, minimize, trim_basic};
use crate::wheeler::shortest_entering_words;

/// `n³ + 2n² + n + 2`.
pub fn witness_length_bound(n: usize) -> u64 {
    let n = n as u64;
    n * n * n + 2 * n * n + n + 2
}

/// A triple certifying that a language is not Wheeler.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub mu: Word,
    pub nu: Word,
    pub gamma: Word,
    /// States reached by `μ` and `ν` (in the automaton searched).
    pub anchors: (StateId, StateId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchCaps {
    /// Witnesses with a longer `γ` are still reported, but flagged.
    pub gamma_bound: u64,
    /// Maximum number of symbols of `γ` read backwards before both
    /// comparisons are decided.
    pub cycle_len_cap: usize,
    /// Maximum power applied to the base cycle to make `γ` long enough.
    pub pump_cap: usize,
    /// Maximum search nodes per anchor pair.
    pub path_count_cap: usize,
}

impl SearchCaps {
    /// Caps large enough that the search is exhaustive for `n` states.
    pub fn for_states(n: usize) -> Self {
        SearchCaps {
            gamma_bound: witness_length_bound(n),
            cycle_len_cap: n * n * (n + 2) * (n + 2),
            pump_cap: n + 1,
            path_count_cap: 100_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    /// The three conditions (plus `γ ⋪ μ, ν`) hold.
    pub valid: bool,
    /// `|μ|, |ν| ≤ |γ| ≤ n³ + 2n² + n + 2`.
    pub within_bound: bool,
}

fn side_condition(w: &Witness) -> bool {
    let below = |x: &Word| colex_compare(x, &w.gamma).is_lt();
    let above = |x: &Word| colex_compare(x, &w.gamma).is_gt();
    (below(&w.mu) && below(&w.nu)) || (above(&w.mu) && above(&w.nu))
}

fn suffix_condition(w: &Witness) -> bool {
    !w.gamma.is_empty() && !is_suffix(&w.gamma, &w.mu) && !is_suffix(&w.gamma, &w.nu)
}

/// Checks a witness against a minimum DFA.
pub fn check_witness_dfa(min_dfa: &Automaton, w: &Witness) -> WitnessCheck {
    let q0 = min_dfa.initial();
    let valid = match (min_dfa.walk(q0, &w.mu), min_dfa.walk(q0, &w.nu)) {
        (Some(u), Some(v)) => {
            u != v
                && min_dfa.walk(u, &w.gamma) == Some(u)
                && min_dfa.walk(v, &w.gamma) == Some(v)
                && suffix_condition(w)
                && side_condition(w)
        }
        _ => false,
    };
    let g = w.gamma.len();
    let within_bound = w.mu.len() <= g
        && w.nu.len() <= g
        && g as u64 <= witness_length_bound(min_dfa.state_count());
    WitnessCheck { valid, within_bound }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NfaWitnessCheck {
    /// Conditions 1–3 (and `γ ⋪ μ, ν`) hold, condition 1 for all
    /// `i, j ≤ min(ijcap, 2ⁿ)`.
    pub valid: bool,
    /// `|μ|, |ν| < |γ|`.
    pub strict_lengths: bool,
}

/// States `δ(s, γ^i)` for `i ≤ limit` of a DFA, `None` standing for the
/// dead state. Stops once the sequence cycles.
fn pumped_states(d: &Automaton, start: Option<StateId>, gamma: &[Sym], limit: u128) -> Vec<Option<StateId>> {
    let mut seen = Vec::new();
    let mut cur = start;
    let mut i = 0u128;
    while i <= limit && !seen.contains(&cur) {
        seen.push(cur);
        cur = cur.and_then(|q| d.walk(q, gamma));
        i += 1;
    }
    seen
}

/// Checks a witness against an NFA. Condition 1 is decided on the minimum
/// DFA: the states reached by `μγ^i` are eventually periodic, so only
/// finitely many distinct ones need comparing.
pub fn check_witness_nfa(a: &Automaton, w: &Witness, ijcap: u128) -> Result<NfaWitnessCheck, AutomatonError> {
    let n = a.state_count();
    let limit = if n >= 127 { ijcap } else { ijcap.min(1u128 << n) };
    let cycles = |word: &Word| {
        a.run(word)
            .into_iter()
            .any(|p| a.run_from(&[p].into(), &w.gamma).contains(&p))
    };
    let local = suffix_condition(w) && side_condition(w) && cycles(&w.mu) && cycles(&w.nu);
    let strict_lengths = w.mu.len() < w.gamma.len() && w.nu.len() < w.gamma.len();
    if !local {
        return Ok(NfaWitnessCheck { valid: false, strict_lengths });
    }
    let d = minimize(&determinize_capped(&trim_basic(a), DEFAULT_STATE_CAP)?)?;
    let xs = pumped_states(&d, d.walk(d.initial(), &w.mu), &w.gamma, limit);
    let ys = pumped_states(&d, d.walk(d.initial(), &w.nu), &w.gamma, limit);
    let valid = xs.iter().all(|x| !ys.contains(x));
    Ok(NfaWitnessCheck { valid, strict_lengths })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found(Witness),
    /// No witness; `exhaustive` is false if some cap cut the search short.
    NoneFound { exhaustive: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Side {
    Tied(StateId),
    Below,
    Above,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    /// Still tied; the word read the same symbol as `γ`.
    Match,
    /// Decided by reading symbol `b` into this step from state `y`.
    Diverge(StateId, Sym),
    /// The word ended at q0 (a proper suffix of `γ`).
    Start,
    /// Already decided earlier.
    Keep,
}

type Node = (StateId, StateId, Side, Side);

/// Tarjan SCC ids over the product graph on pairs `p * n + q`.
fn product_sccs(d: &Automaton) -> (Vec<usize>, Vec<bool>) {
    let n = d.state_count();
    let succ = |x: usize| {
        let (p, q) = (x / n, x % n);
        d.out(p)
            .iter()
            .filter_map(move |&(s, p2)| d.next(q, s).map(|q2| p2 * n + q2))
    };
    let total = n * n;
    let mut index = vec![usize::MAX; total];
    let mut low = vec![0; total];
    let mut on_stack = vec![false; total];
    let mut comp = vec![usize::MAX; total];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut comps = 0;
    for root in 0..total {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, Vec<usize>, usize)> = vec![(root, succ(root).collect(), 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(frame) = call.last_mut() {
            let x = frame.0;
            if frame.2 < frame.1.len() {
                let y = frame.1[frame.2];
                frame.2 += 1;
                if index[y] == usize::MAX {
                    index[y] = next_index;
                    low[y] = next_index;
                    next_index += 1;
                    stack.push(y);
                    on_stack[y] = true;
                    call.push((y, succ(y).collect(), 0));
                } else if on_stack[y] {
                    low[x] = low[x].min(index[y]);
                }
            } else {
                call.pop();
                if let Some(parent) = call.last() {
                    low[parent.0] = low[parent.0].min(low[x]);
                }
                if low[x] == index[x] {
                    loop {
                        let y = stack.pop().expect("scc member");
                        on_stack[y] = false;
                        comp[y] = comps;
                        if y == x {
                            break;
                        }
                    }
                    comps += 1;
                }
            }
        }
    }
    let mut size = vec![0usize; comps];
    for &c in &comp {
        size[c] += 1;
    }
    let cyclic = (0..total)
        .map(|x| size[comp[x]] > 1 || succ(x).any(|y| y == x))
        .collect();
    (comp, cyclic)
}

struct WitnessSearch<'a> {
    d: &'a Automaton,
    n: usize,
    /// in-edges per state and symbol
    preds: Vec<Vec<Vec<StateId>>>,
    /// all in-edges per state, sorted by symbol
    incoming: Vec<Vec<(Sym, StateId)>>,
    access: Vec<Word>,
    comp: Vec<usize>,
    caps: SearchCaps,
}

enum PairResult {
    Found(Witness),
    Exhausted,
    Capped,
}

impl WitnessSearch<'_> {
    fn advance(&self, side: Side, g: Sym) -> Vec<(Side, Step)> {
        match side {
            Side::Below | Side::Above => vec![(side, Step::Keep)],
            Side::Tied(x) => {
                let mut out = Vec::new();
                if x == self.d.initial() {
                    out.push((Side::Below, Step::Start));
                }
                for &(b, y) in &self.incoming[x] {
                    let next = match b.cmp(&g) {
                        std::cmp::Ordering::Equal => (Side::Tied(y), Step::Match),
                        std::cmp::Ordering::Less => (Side::Below, Step::Diverge(y, b)),
                        std::cmp::Ordering::Greater => (Side::Above, Step::Diverge(y, b)),
                    };
                    if !out.iter().any(|o: &(Side, Step)| o.0 == next.0) {
                        out.push(next);
                    }
                }
                out
            }
        }
    }

    fn search_pair(&self, u: StateId, v: StateId) -> PairResult {
        let n = self.n;
        let home = self.comp[u * n + v];
        let start: Node = (u, v, Side::Tied(u), Side::Tied(v));
        // node -> (parent, symbol read, step for μ, step for ν)
        let mut parent: HashMap<Node, (Node, Sym, Step, Step)> = HashMap::new();
        let mut depth: HashMap<Node, usize> = HashMap::from([(start, 0)]);
        let mut queue = VecDeque::from([start]);
        let mut capped = false;
        while let Some(node) = queue.pop_front() {
            let (p1, p2, x, y) = node;
            let dist = depth[&node];
            if dist >= self.caps.cycle_len_cap {
                capped = true;
                continue;
            }
            for g in self.d.alphabet().syms() {
                let pairs: Vec<(StateId, StateId)> = self.preds[p1][g.index()]
                    .iter()
                    .flat_map(|&a| self.preds[p2][g.index()].iter().map(move |&b| (a, b)))
                    .filter(|&(a, b)| self.comp[a * n + b] == home)
                    .collect();
                if pairs.is_empty() {
                    continue;
                }
                let xs = self.advance(x, g);
                let ys = self.advance(y, g);
                for &(a, b) in &pairs {
                    for &(nx, sx) in &xs {
                        for &(ny, sy) in &ys {
                            let next: Node = (a, b, nx, ny);
                            if depth.contains_key(&next) {
                                continue;
                            }
                            if depth.len() >= self.caps.path_count_cap {
                                return PairResult::Capped;
                            }
                            depth.insert(next, dist + 1);
                            parent.insert(next, (node, g, sx, sy));
                            let done = matches!(
                                (nx, ny),
                                (Side::Below, Side::Below) | (Side::Above, Side::Above)
                            );
                            if done {
                                match self.witness(u, v, next, &parent) {
                                    Some(w) => return PairResult::Found(w),
                                    None => capped = true,
                                }
                            } else {
                                queue.push_back(next);
                            }
                        }
                    }
                }
            }
        }
        if capped {
            PairResult::Capped
        } else {
            PairResult::Exhausted
        }
    }

    fn witness(&self, u: StateId, v: StateId, goal: Node, parent: &HashMap<Node, (Node, Sym, Step, Step)>) -> Option<Witness> {
        // steps from the start, i.e. γ's symbols from last to first
        let mut trail = Vec::new();
        let mut node = goal;
        while let Some(&(prev, g, sx, sy)) = parent.get(&node) {
            trail.push((g, sx, sy));
            node = prev;
        }
        trail.reverse();
        let w: Word = trail.iter().rev().map(|t| t.0).collect();
        let word_for = |pick: fn(&(Sym, Step, Step)) -> Step| -> Word {
            let (t, step) = trail
                .iter()
                .enumerate()
                .find_map(|(t, s)| match pick(s) {
                    Step::Match | Step::Keep => None,
                    other => Some((t, other)),
                })
                .expect("goal decides both sides");
            let matched = &w[w.len() - t..];
            match step {
                Step::Diverge(y, b) => {
                    let mut out = self.access[y].clone();
                    out.push(b);
                    out.extend_from_slice(matched);
                    out
                }
                _ => matched.to_vec(),
            }
        };
        let mu = word_for(|s| s.1);
        let nu = word_for(|s| s.2);
        let r = self.product_path((u, v), (goal.0, goal.1))?;
        let mut base = r;
        base.extend_from_slice(&w);
        let need = mu.len().max(nu.len());
        let k = need.div_ceil(base.len()).max(1);
        if k > self.caps.pump_cap {
            return None;
        }
        let witness = Witness {
            mu,
            nu,
            gamma: power(&base, k),
            anchors: (u, v),
        };
        debug_assert!(check_witness_dfa(self.d, &witness).valid, "{witness:?}");
        Some(witness)
    }

    /// Shortest word leading from `from` to `to` in the product.
    fn product_path(&self, from: (StateId, StateId), to: (StateId, StateId)) -> Option<Word> {
        let mut prev: HashMap<(StateId, StateId), ((StateId, StateId), Sym)> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = std::collections::HashSet::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut w = Vec::new();
                let mut cur = x;
                while cur != from {
                    let (p, s) = prev[&cur];
                    w.push(s);
                    cur = p;
                }
                w.reverse();
                return Some(w);
            }
            for &(s, a) in self.d.out(x.0) {
                if let Some(b) = self.d.next(x.1, s) {
                    if seen.insert((a, b)) {
                        prev.insert((a, b), (x, s));
                        queue.push_back((a, b));
                    }
                }
            }
        }
        None
    }
}

fn witness_key(w: &Witness) -> impl Ord + '_ {
    (
        w.gamma.len(),
        crate::alphabet::Colex(&w.gamma),
        crate::alphabet::Colex(&w.mu),
        crate::alphabet::Colex(&w.nu),
    )
}

/// Searches all anchor pairs and returns the smallest witness by
/// `(|γ|, γ, μ, ν)`, co-lex on words.
pub fn find_witness(min_dfa: &Automaton, caps: &SearchCaps) -> WitnessOutcome {
    let d = min_dfa;
    let n = d.state_count();
    let sigma = d.alphabet().len();
    let mut preds = vec![vec![Vec::new(); sigma]; n];
    for (u, s, v) in d.edges() {
        preds[v][s.index()].push(u);
    }
    let Some(access) = shortest_entering_words(d).into_iter().collect::<Option<Vec<_>>>() else {
        return WitnessOutcome::NoneFound { exhaustive: false };
    };
    let (comp, cyclic) = product_sccs(d);
    let search = WitnessSearch {
        d,
        n,
        preds,
        incoming: d.predecessors(),
        access,
        comp,
        caps: *caps,
    };
    let mut best: Option<Witness> = None;
    let mut exhaustive = true;
    for u in 0..n {
        for v in u + 1..n {
            if !cyclic[u * n + v] {
                continue;
            }
            match search.search_pair(u, v) {
                PairResult::Found(w) => {
                    let swapped = Witness {
                        mu: w.nu.clone(),
                        nu: w.mu.clone(),
                        gamma: w.gamma.clone(),
                        anchors: (w.anchors.1, w.anchors.0),
                    };
                    for cand in [w, swapped] {
                        if best.as_ref().is_none_or(|b| witness_key(&cand) < witness_key(b)) {
                            best = Some(cand);
                        }
                    }
                }
                PairResult::Capped => exhaustive = false,
                PairResult::Exhausted => {}
            }
        }
    }
    match best {
        Some(w) => WitnessOutcome::Found(w),
        None => WitnessOutcome::NoneFound { exhaustive },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    WitnessSearch,
    ConstructVerify,
    #[default]
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Wheeler,
    NotWheeler,
    /// No witness within caps that do not guarantee completeness.
    BoundedWheeler,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Witness(Witness),
    Wdfa(Box<Wdfa>),
    /// The construct-and-verify decider failed this way.
    Refutation(WdfaError),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageVerdict {
    pub status: Status,
    pub certificate: Certificate,
    /// Caps used by the witness search, if it ran.
    pub caps: Option<SearchCaps>,
    /// The minimum DFA the verdict was computed on; witness words and
    /// anchors refer to it.
    pub min_dfa: Automaton,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LanguageError {
    #[error("automaton is not deterministic")]
    NotDeterministic,
    #[error("witness search and construction disagree: {witness:?} vs {construct:?}")]
    InternalDisagreement { witness: Status, construct: Status },
    #[error("{0}")]
    InfeasibleEnumeration(WdfaError),
    #[error("{0}")]
    StateBlowup(AutomatonError),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LanguageOptions {
    pub method: Method,
    /// Defaults to [`SearchCaps::for_states`] of the minimum DFA.
    pub caps: Option<SearchCaps>,
    pub wdfa: WdfaOptions,
}

pub const DEFAULT_STATE_CAP: usize = 1 << 18;

fn by_witness(min: &Automaton, caps: SearchCaps) -> (Status, Certificate) {
    match find_witness(min, &caps) {
        WitnessOutcome::Found(w) => (Status::NotWheeler, Certificate::Witness(w)),
        WitnessOutcome::NoneFound { exhaustive: true } => (Status::Wheeler, Certificate::None),
        WitnessOutcome::NoneFound { exhaustive: false } => (Status::BoundedWheeler, Certificate::None),
    }
}

fn by_construction(min: &Automaton, options: &WdfaOptions) -> Result<(Status, Certificate), LanguageError> {
    match build_min_wdfa_with(min, options) {
        Ok(w) => Ok((Status::Wheeler, Certificate::Wdfa(Box::new(w)))),
        Err(e @ WdfaError::InfeasibleEnumeration { .. }) => Err(LanguageError::InfeasibleEnumeration(e)),
        Err(WdfaError::NotDeterministic) => Err(LanguageError::NotDeterministic),
        Err(e) => Ok((Status::NotWheeler, Certificate::Refutation(e))),
    }
}

/// Decides whether the language of a DFA is Wheeler.
pub fn is_language_wheeler_dfa(d: &Automaton, options: &LanguageOptions) -> Result<LanguageVerdict, LanguageError> {
    if !d.is_deterministic() {
        return Err(LanguageError::NotDeterministic);
    }
    let min = minimize(d).map_err(|_| LanguageError::NotDeterministic)?;
    let caps = options
        .caps
        .unwrap_or_else(|| SearchCaps::for_states(min.state_count()));
    let (status, certificate, caps) = match options.method {
        Method::WitnessSearch => {
            let (s, c) = by_witness(&min, caps);
            (s, c, Some(caps))
        }
        Method::ConstructVerify => {
            let (s, c) = by_construction(&min, &options.wdfa)?;
            (s, c, None)
        }
        Method::Both => {
            let (ws, wc) = by_witness(&min, caps);
            let (cs, cc) = by_construction(&min, &options.wdfa)?;
            let (status, cert) = match (ws, cs) {
                (Status::NotWheeler, Status::NotWheeler) => (ws, wc),
                (Status::Wheeler | Status::BoundedWheeler, Status::Wheeler) => (cs, cc),
                (Status::BoundedWheeler, Status::NotWheeler) => (cs, cc),
                _ => {
                    return Err(LanguageError::InternalDisagreement {
                        witness: ws,
                        construct: cs,
                    })
                }
            };
            (status, cert, Some(caps))
        }
    };
    Ok(LanguageVerdict {
        status,
        certificate,
        caps,
        min_dfa: min,
    })
}

/// Decides whether the language of an NFA is Wheeler by determinizing (up to
/// `state_cap` subsets) and deciding on the minimum DFA.
pub fn is_language_wheeler_nfa(
    a: &Automaton,
    options: &LanguageOptions,
    state_cap: usize,
) -> Result<LanguageVerdict, LanguageError> {
    let d = determinize_capped(&trim_basic(a), state_cap).map_err(LanguageError::StateBlowup)?;
    is_language_wheeler_dfa(&d, options)
}

/// Convenience: minimum DFA of any automaton, then [`is_language_wheeler_dfa`].
pub fn is_language_wheeler(a: &Automaton, options: &LanguageOptions) -> Result<LanguageVerdict, LanguageError> {
    if a.is_deterministic() {
        is_language_wheeler_dfa(a, options)
    } else {
        is_language_wheeler_dfa(&minimal_dfa(a), options)
    }
}
