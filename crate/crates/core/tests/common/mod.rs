//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twa::{Alphabet, SemiringTag, TropicalMatrix, WeightedAutomaton, Weight};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(name)
}

pub fn alphabet(letters: usize) -> Alphabet {
    Alphabet::new(['a', 'b', 'c'].into_iter().take(letters)).unwrap()
}

/// Weight drawn from `{zero} ∪ {lo..=hi}`, zero with probability `p_zero`.
pub fn weight(rng: &mut impl Rng, p_zero: f64, lo: i64, hi: i64) -> Weight {
    if rng.gen_bool(p_zero) {
        Weight::Zero
    } else {
        Weight::from_int(rng.gen_range(lo..=hi))
    }
}

pub fn random_matrix(rng: &mut impl Rng, n: usize, p_zero: f64, lo: i64, hi: i64) -> TropicalMatrix {
    let dense: Vec<Vec<Weight>> = (0..n)
        .map(|_| (0..n).map(|_| weight(rng, p_zero, lo, hi)).collect())
        .collect();
    TropicalMatrix::from_dense(SemiringTag::MaxPlus, dense).unwrap()
}

/// Random automaton with `states` states over the first `letters` letters.
pub fn random_automaton(
    rng: &mut impl Rng,
    tag: SemiringTag,
    states: usize,
    letters: usize,
    p_arc: f64,
    lo: i64,
    hi: i64,
) -> WeightedAutomaton {
    let alpha = alphabet(letters);
    let mut a = WeightedAutomaton::new(tag, alpha.clone(), states).unwrap();
    for s in 0..states {
        if rng.gen_bool(0.4) {
            a.set_initial(s, Weight::from_int(rng.gen_range(lo..=hi))).unwrap();
        }
        if rng.gen_bool(0.4) {
            a.set_final(s, Weight::from_int(rng.gen_range(lo..=hi))).unwrap();
        }
        for &c in alpha.symbols() {
            for t in 0..states {
                if rng.gen_bool(p_arc) {
                    a.set_arc(s, c, t, Weight::from_int(rng.gen_range(lo..=hi))).unwrap();
                }
            }
        }
    }
    a
}

/// Random automaton whose trim part has at least one state.
pub fn random_trim_automaton(
    rng: &mut impl Rng,
    tag: SemiringTag,
    max_states: usize,
    letters: usize,
    lo: i64,
    hi: i64,
) -> WeightedAutomaton {
    loop {
        let n = rng.gen_range(1..=max_states);
        let t = random_automaton(rng, tag, n, letters, 0.35, lo, hi).trim();
        if t.num_states() > 0 {
            return t;
        }
    }
}

pub fn words(alphabet: &Alphabet, max_len: usize) -> Vec<twa::Word> {
    twa::oracle::words_upto(alphabet, max_len)
        .unwrap()
        .map(|letters| alphabet.decode(&letters))
        .collect()
}

/// Random deterministic automaton: one initial state and at most one arc per
/// state and letter. Its series is the same read in max-plus or min-plus.
pub fn random_deterministic(rng: &mut impl Rng, states: usize, letters: usize, lo: i64, hi: i64) -> WeightedAutomaton {
    let alpha = alphabet(letters);
    let mut a = WeightedAutomaton::new(SemiringTag::MaxPlus, alpha.clone(), states).unwrap();
    a.set_initial(0, Weight::from_int(rng.gen_range(lo..=hi))).unwrap();
    for s in 0..states {
        if rng.gen_bool(0.5) {
            a.set_final(s, Weight::from_int(rng.gen_range(lo..=hi))).unwrap();
        }
        for &c in alpha.symbols() {
            if rng.gen_bool(0.7) {
                let t = rng.gen_range(0..states);
                a.set_arc(s, c, t, Weight::from_int(rng.gen_range(lo..=hi))).unwrap();
            }
        }
    }
    a
}

/// A random deterministic automaton read in max-plus and in min-plus.
pub fn random_equal_pair(rng: &mut impl Rng, letters: usize) -> (WeightedAutomaton, WeightedAutomaton) {
    let n = rng.gen_range(1..=4);
    let d = random_deterministic(rng, n, letters, -3, 3);
    let min = d.retag(SemiringTag::MinPlus).unwrap();
    (d, min)
}

/// Two-copy blow-up of `d`: state `s` becomes `s` and `s + n`, each copy
/// conjugated by its own random potential, and each copy of a source keeps
/// the arc towards a random nonempty set of copies of the target. Every path still carries the weight of
/// the underlying path of `d`, so the result is 1-valued and recognizes the
/// same series, but it is usually ambiguous.
pub fn blow_up(rng: &mut impl Rng, d: &WeightedAutomaton, tag: SemiringTag) -> WeightedAutomaton {
    let n = d.num_states();
    let u: Vec<i64> = (0..2 * n).map(|_| rng.gen_range(-3..=3)).collect();
    let mut a = WeightedAutomaton::new(tag, d.alphabet().clone(), 2 * n).unwrap();
    let shift = |w: &Weight, by: i64| w.shifted(&twa::Rational::from_integer(by.into()));
    for s in 0..n {
        for copy in [s, s + n] {
            if d.initial()[s].is_finite() {
                a.set_initial(copy, shift(&d.initial()[s], u[copy])).unwrap();
            }
            if d.finals()[s].is_finite() {
                a.set_final(copy, shift(&d.finals()[s], -u[copy])).unwrap();
            }
        }
    }
    for (p, l, q, w) in d.arcs() {
        let c = d.alphabet().symbol(l);
        for x in [p, p + n] {
            let keep = rng.gen_range(1..4u32);
            for (i, y) in [q, q + n].into_iter().enumerate() {
                if keep >> i & 1 == 1 {
                    a.set_arc(x, c, y, shift(w, u[y] - u[x])).unwrap();
                }
            }
        }
    }
    a
}

/// Equal max-plus / min-plus pair whose members are both ambiguous.
pub fn random_ambiguous_pair(rng: &mut impl Rng, letters: usize) -> (WeightedAutomaton, WeightedAutomaton) {
    let n = rng.gen_range(1..=3);
    let d = random_deterministic(rng, n, letters, -3, 3);
    (blow_up(rng, &d, SemiringTag::MaxPlus), blow_up(rng, &d, SemiringTag::MinPlus))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Same automaton up to a renaming of states (labels ignored). Brute force
/// over permutations, for small automata only.
pub fn isomorphic(a: &WeightedAutomaton, b: &WeightedAutomaton) -> bool {
    let n = a.num_states();
    if n != b.num_states() || a.tag() != b.tag() || a.alphabet() != b.alphabet() || a.num_arcs() != b.num_arcs() {
        return false;
    }
    permutations(n).into_iter().any(|pi| {
        (0..n).all(|s| a.initial()[s] == b.initial()[pi[s]] && a.finals()[s] == b.finals()[pi[s]])
            && a.arcs().into_iter().all(|(p, l, q, x)| b.matrix(l).get(pi[p], pi[q]) == x)
    })
}
