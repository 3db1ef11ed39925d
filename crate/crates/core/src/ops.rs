//! Classical constructions: trimming, subset construction, minimization and
//! language equivalence.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{OrderedAlphabet, Sym};
use crate::automaton::{Automaton, AutomatonError, StateId};

/// Keeps exactly the states that are reachable from q0 and co-reachable to F.
/// State ids keep their relative order. If q0 itself goes, the result is the
/// one-state empty-language automaton.
pub fn trim_basic(a: &Automaton) -> Automaton {
    let reach = a.reachable();
    let coreach = a.coreachable();
    let keep: Vec<bool> = reach.iter().zip(&coreach).map(|(&r, &c)| r && c).collect();
    if !keep[a.initial()] {
        return Automaton::empty_language(a.alphabet().clone());
    }
    if keep.iter().all(|&k| k) {
        return a.clone();
    }
    let mut new_id = vec![usize::MAX; a.state_count()];
    let mut next = 0;
    for q in 0..a.state_count() {
        if keep[q] {
            new_id[q] = next;
            next += 1;
        }
    }
    let mut finals = vec![false; next];
    let mut delta = vec![Vec::new(); next];
    for q in (0..a.state_count()).filter(|&q| keep[q]) {
        finals[new_id[q]] = a.is_final(q);
        delta[new_id[q]] = a
            .out(q)
            .iter()
            .filter(|&&(_, v)| keep[v])
            .map(|&(s, v)| (s, new_id[v]))
            .collect();
    }
    Automaton::from_parts(a.alphabet().clone(), new_id[a.initial()], finals, delta)
}

/// Powerset construction over the reachable subsets, numbered in BFS order.
pub fn determinize(a: &Automaton) -> Automaton {
    determinize_capped(a, usize::MAX).expect("uncapped")
}

/// [`determinize`] that gives up once more than `cap` subsets are discovered.
pub fn determinize_capped(a: &Automaton, cap: usize) -> Result<Automaton, AutomatonError> {
    let sigma = a.alphabet().len();
    let mut index: HashMap<Vec<StateId>, StateId> = HashMap::new();
    let mut subsets: Vec<Vec<StateId>> = Vec::new();
    let start = vec![a.initial()];
    index.insert(start.clone(), 0);
    subsets.push(start);
    let mut delta: Vec<Vec<(Sym, StateId)>> = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        let mut out = Vec::new();
        for s in 0..sigma as u32 {
            let sym = Sym(s);
            let mut target: Vec<StateId> = subsets[i]
                .iter()
                .flat_map(|&q| a.successors(q, sym))
                .collect();
            if target.is_empty() {
                continue;
            }
            target.sort_unstable();
            target.dedup();
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    if id >= cap {
                        return Err(AutomatonError::StateBlowup { cap });
                    }
                    index.insert(target.clone(), id);
                    subsets.push(target);
                    id
                }
            };
            out.push((sym, id));
        }
        delta.push(out);
        i += 1;
    }
    let finals = subsets
        .iter()
        .map(|set| set.iter().any(|&q| a.is_final(q)))
        .collect();
    let d = Automaton::from_parts(a.alphabet().clone(), 0, finals, delta);
    Ok(trim_basic(&d))
}

/// Renumbers a deterministic automaton in BFS order from q0, visiting edges
/// in symbol order. Two trimmed DFAs are isomorphic iff their canonical forms
/// are equal.
pub fn canonical(d: &Automaton) -> Automaton {
    let n = d.state_count();
    let mut order = vec![usize::MAX; n];
    let mut queue = VecDeque::from([d.initial()]);
    order[d.initial()] = 0;
    let mut next = 1;
    while let Some(q) = queue.pop_front() {
        for &(_, v) in d.out(q) {
            if order[v] == usize::MAX {
                order[v] = next;
                next += 1;
                queue.push_back(v);
            }
        }
    }
    // unreachable states keep their relative order at the end
    for slot in order.iter_mut().filter(|o| **o == usize::MAX) {
        *slot = next;
        next += 1;
    }
    d.permute_states(&order)
}

/// Minimum DFA by partition refinement, in canonical numbering.
pub fn minimize(d: &Automaton) -> Result<Automaton, AutomatonError> {
    if !d.is_deterministic() {
        return Err(AutomatonError::NotDeterministic);
    }
    let d = trim_basic(d);
    let n = d.state_count();
    let sigma = d.alphabet().len();
    let mut class: Vec<usize> = (0..n).map(|q| usize::from(d.is_final(q))).collect();
    let mut class_count = 0;
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next_class = vec![0; n];
        for q in 0..n {
            let sig: Vec<usize> = (0..sigma as u32)
                .map(|s| d.next(q, Sym(s)).map_or(usize::MAX, |v| class[v]))
                .collect();
            let len = ids.len();
            next_class[q] = *ids.entry((class[q], sig)).or_insert(len);
        }
        let count = ids.len();
        class = next_class;
        if count == class_count {
            break;
        }
        class_count = count;
    }
    let mut finals = vec![false; class_count];
    let mut delta = vec![Vec::new(); class_count];
    for q in 0..n {
        finals[class[q]] = d.is_final(q);
        delta[class[q]] = d.out(q).iter().map(|&(s, v)| (s, class[v])).collect();
    }
    let quotient = Automaton::from_parts(d.alphabet().clone(), class[d.initial()], finals, delta);
    Ok(canonical(&quotient))
}

/// Canonical minimum DFA of any automaton's language.
pub fn minimal_dfa(a: &Automaton) -> Automaton {
    let d = if a.is_deterministic() {
        trim_basic(a)
    } else {
        determinize(&trim_basic(a))
    };
    minimize(&d).expect("deterministic")
}

fn union_alphabet(a: &OrderedAlphabet, b: &OrderedAlphabet) -> OrderedAlphabet {
    let mut out = a.clone();
    for name in b.symbols() {
        if !out.contains(name) {
            out.push(name.clone()).expect("valid symbol");
        }
    }
    out
}

/// `L(a) = L(b)`, decided by comparing canonical minimum DFAs. Symbols are
/// matched by name; a symbol missing from one alphabet simply has no edges
/// there.
pub fn language_equal(a: &Automaton, b: &Automaton) -> bool {
    let sigma = union_alphabet(a.alphabet(), b.alphabet());
    let a = a.over_alphabet(&sigma).expect("superset alphabet");
    let b = b.over_alphabet(&sigma).expect("superset alphabet");
    minimal_dfa(&a) == minimal_dfa(&b)
}

/// `α ≡_L β` decided on a minimum DFA by comparing the states reached.
pub fn right_context_equal(
    min_dfa: &Automaton,
    alpha: &[Sym],
    beta: &[Sym],
) -> Result<bool, AutomatonError> {
    let reach = |w: &[Sym]| {
        min_dfa
            .walk(min_dfa.initial(), w)
            .ok_or_else(|| AutomatonError::NotReadable(min_dfa.alphabet().render(w)))
    };
    Ok(reach(alpha)? == reach(beta)?)
}
