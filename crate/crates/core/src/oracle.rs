//! Brute-force ground truth by explicit path and word enumeration.
//!
//! Nothing here uses matrix products or semiring sums over states. Values
//! come from the set of all successful path weights of a word, collected
//! either by walking every path or, for the bulk checks, by pushing the set
//! of distinct path weights and the number of paths through each state.
//! Use only on small automata and short words.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::automaton::{Alphabet, WeightedAutomaton};
use crate::decisions::Verdict;
use crate::error::{Error, Result};
use crate::matrix::TropicalMatrix;
use crate::semiring::{Rational, SemiringTag, Weight};
use crate::word::Word;

/// Largest number of words an enumeration may visit.
pub const WORD_LIMIT: u128 = 10_000_000;

/// Visits every successful path labeled `letters` as (state sequence, weight).
fn for_each_path(a: &WeightedAutomaton, letters: &[usize], f: &mut dyn FnMut(&[usize], &Weight)) {
    fn go(
        a: &WeightedAutomaton,
        letters: &[usize],
        states: &mut Vec<usize>,
        weight: &Weight,
        f: &mut dyn FnMut(&[usize], &Weight),
    ) {
        let tag = a.tag();
        let cur = *states.last().expect("path has a start");
        match letters.split_first() {
            None => {
                let fin = &a.finals()[cur];
                if fin.is_finite() {
                    f(states, &tag.mul(weight, fin));
                }
            }
            Some((&l, rest)) => {
                for (next, w) in a.matrix(l).row(cur) {
                    states.push(*next);
                    go(a, rest, states, &tag.mul(weight, w), f);
                    states.pop();
                }
            }
        }
    }
    for (s, init) in a.initial().iter().enumerate() {
        if init.is_finite() {
            let mut states = vec![s];
            go(a, letters, &mut states, init, f);
        }
    }
}

/// All successful paths labeled `w`, with their weights (initial and final
/// weights included).
pub fn enum_paths(a: &WeightedAutomaton, w: &Word) -> Result<Vec<(Vec<usize>, Weight)>> {
    let letters = a.alphabet().encode(w)?;
    let mut out = Vec::new();
    for_each_path(a, &letters, &mut |states, weight| out.push((states.to_vec(), weight.clone())));
    Ok(out)
}

/// Semiring sum of the weights of all successful paths labeled `w`.
pub fn eval_bruteforce(a: &WeightedAutomaton, w: &Word) -> Result<Weight> {
    let letters = a.alphabet().encode(w)?;
    let tag = a.tag();
    let mut acc = Weight::Zero;
    for_each_path(a, &letters, &mut |_, weight| acc = tag.add(&acc, weight));
    Ok(acc)
}

/// Number of successful paths labeled `letters` and the set of their
/// distinct weights.
fn path_summary(a: &WeightedAutomaton, letters: &[usize]) -> (u128, BTreeSet<Rational>) {
    let n = a.num_states();
    let mut count: Vec<u128> = vec![0; n];
    let mut weights: Vec<BTreeSet<Rational>> = vec![BTreeSet::new(); n];
    for (s, w) in a.initial().iter().enumerate() {
        if let Some(v) = w.value() {
            count[s] = 1;
            weights[s].insert(v.clone());
        }
    }
    for &l in letters {
        let mut next_count: Vec<u128> = vec![0; n];
        let mut next_weights: Vec<BTreeSet<Rational>> = vec![BTreeSet::new(); n];
        for p in (0..n).filter(|&p| count[p] > 0) {
            for (q, w) in a.matrix(l).row(p) {
                let w = w.value().expect("stored arcs are finite");
                next_count[*q] = next_count[*q].saturating_add(count[p]);
                next_weights[*q].extend(weights[p].iter().map(|x| x + w));
            }
        }
        count = next_count;
        weights = next_weights;
    }
    let mut total: u128 = 0;
    let mut out = BTreeSet::new();
    for (s, w) in a.finals().iter().enumerate() {
        if let (Some(v), true) = (w.value(), count[s] > 0) {
            total = total.saturating_add(count[s]);
            out.extend(weights[s].iter().map(|x| x + v));
        }
    }
    (total, out)
}

fn eval_letters(a: &WeightedAutomaton, letters: &[usize]) -> Weight {
    let (_, weights) = path_summary(a, letters);
    let best = match a.tag() {
        SemiringTag::MinPlus => weights.into_iter().next(),
        _ => weights.into_iter().next_back(),
    };
    best.map_or(Weight::Zero, Weight::Finite)
}

/// Number of successful paths labeled `w` (saturating).
pub fn ambiguity(a: &WeightedAutomaton, w: &Word) -> Result<usize> {
    let letters = a.alphabet().encode(w)?;
    let (count, _) = path_summary(a, &letters);
    Ok(usize::try_from(count).unwrap_or(usize::MAX))
}

/// Checks the enumeration guard for all words of length `<= max_len`.
pub fn check_bound(alphabet: &Alphabet, max_len: usize) -> Result<()> {
    let k = alphabet.len() as u128;
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(layer);
        if total > WORD_LIMIT {
            return Err(Error::BoundExceeded { words: total, limit: WORD_LIMIT });
        }
        layer = layer.saturating_mul(k);
        if layer == 0 {
            break;
        }
    }
    Ok(())
}

/// Words of length `<= max_len` in length-lexicographic order (alphabet
/// order within a length), as letter-index vectors.
pub fn words_upto(alphabet: &Alphabet, max_len: usize) -> Result<impl Iterator<Item = Vec<usize>>> {
    check_bound(alphabet, max_len)?;
    let k = alphabet.len();
    let mut current: Option<Vec<usize>> = Some(Vec::new());
    Ok(std::iter::from_fn(move || {
        let out = current.take()?;
        // successor in length-lex order
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                if k == 0 || next.len() == max_len {
                    current = None;
                } else {
                    current = Some(vec![0; next.len() + 1]);
                }
                break;
            }
            i -= 1;
            if next[i] + 1 < k {
                next[i] += 1;
                current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }))
}

/// Compares `a` and `b` on every word of length `<= max_len`; the witness is
/// the first difference in length-lexicographic order. Values compare
/// exactly, zero matching zero whatever the semirings.
pub fn equal_upto(a: &WeightedAutomaton, b: &WeightedAutomaton, max_len: usize) -> Result<Verdict> {
    a.alphabet().ensure_same(b.alphabet())?;
    for letters in words_upto(a.alphabet(), max_len)? {
        if eval_letters(a, &letters) != eval_letters(b, &letters) {
            return Ok(Verdict::Fails { witness: a.alphabet().decode(&letters) });
        }
    }
    Ok(Verdict::Holds)
}

/// Checks that, for every word of length `<= max_len`, all successful paths
/// share one weight.
pub fn one_valued_upto(a: &WeightedAutomaton, max_len: usize) -> Result<Verdict> {
    for letters in words_upto(a.alphabet(), max_len)? {
        if path_summary(a, &letters).1.len() > 1 {
            return Ok(Verdict::Fails { witness: a.alphabet().decode(&letters) });
        }
    }
    Ok(Verdict::Holds)
}

/// Largest number of successful paths on a word of length `<= max_len`,
/// with the first word reaching it.
pub fn max_ambiguity_upto(a: &WeightedAutomaton, max_len: usize) -> Result<(usize, Word)> {
    let mut best = (0, Vec::new());
    for letters in words_upto(a.alphabet(), max_len)? {
        let count = usize::try_from(path_summary(a, &letters).0).unwrap_or(usize::MAX);
        if count > best.0 {
            best = (count, letters);
        }
    }
    Ok((best.0, a.alphabet().decode(&best.1)))
}

/// Every simple circuit of the graph of `m` with its exact mean weight. A
/// circuit is listed once, starting from its smallest state.
pub fn simple_circuits(m: &TropicalMatrix) -> Vec<(Vec<usize>, Rational)> {
    fn extend(
        m: &TropicalMatrix,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        weight: Rational,
        out: &mut Vec<(Vec<usize>, Rational)>,
    ) {
        let cur = *path.last().expect("nonempty");
        for (next, w) in m.row(cur) {
            let w = w.value().expect("stored entries are finite");
            if *next == start {
                let total = &weight + w;
                out.push((path.clone(), total / Rational::from_integer(BigInt::from(path.len()))));
            } else if *next > start && !on_path[*next] {
                on_path[*next] = true;
                path.push(*next);
                extend(m, start, path, on_path, &weight + w, out);
                path.pop();
                on_path[*next] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; m.dim()];
    for start in 0..m.dim() {
        on_path[start] = true;
        extend(m, start, &mut vec![start], &mut on_path, Rational::from_integer(BigInt::from(0)), &mut out);
        on_path[start] = false;
    }
    out
}
