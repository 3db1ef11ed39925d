//! Seeded random automata for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::alphabet::{OrderedAlphabet, Sym, Word};
use crate::automaton::{Automaton, Edge};
use crate::ops::trim_basic;

/// `a < b < c < ...`, then `s26 < s27 < ...` past the Latin letters.
pub fn letters(sigma: usize) -> OrderedAlphabet {
    OrderedAlphabet::new((0..sigma).map(|i| {
        if i < 26 {
            ((b'a' + i as u8) as char).to_string()
        } else {
            format!("s{i}")
        }
    }))
    .expect("distinct names")
}

/// Every word over the first `sigma` symbols of length at most `max_len`,
/// shortest first.
pub fn words_up_to(sigma: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * sigma);
        for w in &layer {
            for s in 0..sigma as u32 {
                let mut x: Word = w.clone();
                x.push(Sym(s));
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn random_finals<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    if finals.is_empty() {
        finals.push(rng.gen_range(0..n));
    }
    finals
}

/// Random partial DFA with up to `n` states, trimmed.
pub fn random_dfa<R: Rng>(rng: &mut R, n: usize, sigma: usize) -> Automaton {
    let mut edges = Vec::new();
    for q in 0..n {
        for s in 0..sigma as u32 {
            if rng.gen_bool(0.7) {
                edges.push((q, Sym(s), rng.gen_range(0..n)));
            }
        }
    }
    let finals = random_finals(rng, n);
    trim_basic(&Automaton::new(letters(sigma), n, 0, finals, edges).expect("in range"))
}

/// Random NFA with up to `n` states, trimmed.
pub fn random_nfa<R: Rng>(rng: &mut R, n: usize, sigma: usize) -> Automaton {
    let mut edges = Vec::new();
    for q in 0..n {
        for s in 0..sigma as u32 {
            for v in 0..n {
                if rng.gen_bool(0.8 / n as f64 + 0.1) {
                    edges.push((q, Sym(s), v));
                }
            }
        }
    }
    let finals = random_finals(rng, n);
    trim_basic(&Automaton::new(letters(sigma), n, 0, finals, edges).expect("in range"))
}

/// Random NFA that is Wheeler by construction, then trimmed.
///
/// States are laid out in their intended Wheeler order: the initial state,
/// then one block per symbol. Edges labelled `a` run from arbitrary states
/// into the `a`-block along a monotone staircase, so no two `a`-edges cross.
/// State ids are shuffled so the order is not the identity.
pub fn random_wheeler_nfa<R: Rng>(rng: &mut R, n: usize, sigma: usize) -> Automaton {
    assert!(n >= 2 && sigma >= 1);
    let mut block_of = vec![0; n - 1];
    for (i, b) in block_of.iter_mut().enumerate() {
        *b = if i < sigma { i } else { rng.gen_range(0..sigma) };
    }
    block_of.sort_unstable();

    let mut edges: Vec<Edge> = Vec::new();
    for s in 0..sigma {
        let block: Vec<usize> = (1..n).filter(|&q| block_of[q - 1] == s).collect();
        if block.is_empty() {
            continue;
        }
        // staircase from (u, block[0]) to (u', block[last]) over (source rank, target)
        let mut u = rng.gen_range(0..n);
        let mut vi = 0;
        loop {
            let v = block[vi];
            if rng.gen_bool(0.8) || !edges.iter().any(|e| e.2 == v) {
                edges.push((u, Sym(s as u32), v));
            }
            let can_u = u + 1 < n;
            let can_v = vi + 1 < block.len();
            match (can_u, can_v) {
                (false, false) => break,
                (true, false) => {
                    if rng.gen_bool(0.5) {
                        break;
                    }
                    u += 1;
                }
                (false, true) => vi += 1,
                (true, true) => match rng.gen_range(0..3) {
                    0 => u += 1,
                    1 => vi += 1,
                    _ => {
                        u += 1;
                        vi += 1;
                    }
                },
            }
        }
    }
    let finals = random_finals(rng, n);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let edges = edges.into_iter().map(|(u, a, v)| (ids[u], a, ids[v]));
    let finals = finals.into_iter().map(|q| ids[q]);
    let a = Automaton::new(letters(sigma), n, ids[0], finals, edges).expect("in range");
    trim_basic(&a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn word_counts() {
        assert_eq!(words_up_to(2, 3).len(), 1 + 2 + 4 + 8);
        assert_eq!(words_up_to(3, 0), vec![Vec::<Sym>::new()]);
    }

    #[test]
    fn generators_are_seeded_and_trimmed() {
        let mk = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (random_dfa(&mut rng, 8, 2), random_nfa(&mut rng, 5, 2), random_wheeler_nfa(&mut rng, 8, 3))
        };
        let (d, a, w) = mk(5);
        assert_eq!(mk(5), (d.clone(), a.clone(), w.clone()));
        assert!(d.is_deterministic());
        for x in [&d, &a, &w] {
            assert!(x.is_basic() || x.finals().count() == 0);
        }
    }
}
