//! Small reference automata used by the tests, the acceptance suite and the
//! command-line examples.

use crate::automaton::{Alphabet, WeightedAutomaton};
use crate::semiring::{SemiringTag, Weight};

fn w(n: i64) -> Weight {
    Weight::from_int(n)
}

/// Automaton from integer-weighted initial, final and arc lists.
pub fn build(
    tag: SemiringTag,
    symbols: &[char],
    n: usize,
    initial: &[(usize, i64)],
    finals: &[(usize, i64)],
    arcs: &[(usize, char, usize, i64)],
) -> WeightedAutomaton {
    let alphabet = Alphabet::new(symbols.iter().copied()).expect("valid alphabet");
    let mut a = WeightedAutomaton::new(tag, alphabet, n).expect("scalar tag");
    for &(s, x) in initial {
        a.set_initial(s, w(x)).expect("state in range");
    }
    for &(s, x) in finals {
        a.set_final(s, w(x)).expect("state in range");
    }
    for &(p, c, q, x) in arcs {
        a.set_arc(p, c, q, w(x)).expect("arc in range");
    }
    a
}

/// Two-state max-plus automaton over `{a, b}`; state `A = 0`, `B = 1`.
pub fn pair_max() -> WeightedAutomaton {
    build(
        SemiringTag::MaxPlus,
        &['a', 'b'],
        2,
        &[(0, 0)],
        &[(0, 0), (1, 1)],
        &[
            (0, 'a', 1, 1),
            (0, 'b', 0, 1),
            (1, 'a', 0, 1),
            (1, 'a', 1, 0),
            (1, 'b', 0, 2),
            (1, 'b', 1, 1),
        ],
    )
}

/// Two-state min-plus automaton equivalent to [`pair_max`].
pub fn pair_min() -> WeightedAutomaton {
    build(
        SemiringTag::MinPlus,
        &['a', 'b'],
        2,
        &[(0, 0)],
        &[(0, 0)],
        &[
            (0, 'a', 0, 2),
            (0, 'a', 1, 1),
            (0, 'b', 0, 1),
            (1, 'a', 0, 1),
            (1, 'b', 1, 3),
        ],
    )
}

/// The four-state 1-valued automaton extracted from the pair
/// ([`pair_max`], [`pair_min`]); states `A, B, C, D = 0, 1, 2, 3`.
pub fn pair_one_valued() -> WeightedAutomaton {
    build(
        SemiringTag::MaxPlus,
        &['a', 'b'],
        4,
        &[(0, 0)],
        &[(0, 0), (1, 1)],
        &[
            (0, 'a', 1, 1),
            (0, 'a', 3, 1),
            (0, 'b', 0, 1),
            (1, 'a', 2, 1),
            (1, 'b', 0, 2),
            (1, 'b', 1, 1),
            (2, 'a', 1, 1),
            (3, 'a', 0, 1),
            (3, 'a', 1, 0),
            (3, 'b', 2, 2),
        ],
    )
}

/// Max-plus automaton for `w ↦ max(|w|_a, |w|_b)`: one state counts `a`,
/// the other counts `b`.
pub fn max_letter_count() -> WeightedAutomaton {
    build(
        SemiringTag::MaxPlus,
        &['a', 'b'],
        2,
        &[(0, 0), (1, 0)],
        &[(0, 0), (1, 0)],
        &[(0, 'a', 0, 1), (0, 'b', 0, 0), (1, 'a', 1, 0), (1, 'b', 1, 1)],
    )
}

/// One-letter automaton made of disjoint cycles, one per period `i`, each
/// entered at its origin with weight `0` and exiting there with weight `i`.
/// Recognizes `a^n ↦ ⊕ { i : i divides n }` in the given semiring.
pub fn divisor_cycles(tag: SemiringTag, periods: &[usize]) -> WeightedAutomaton {
    let alphabet = Alphabet::new(['a']).expect("valid alphabet");
    let n: usize = periods.iter().sum();
    let mut a = WeightedAutomaton::new(tag, alphabet, n).expect("scalar tag");
    let mut base = 0;
    for &p in periods {
        a.set_initial(base, w(0)).expect("in range");
        a.set_final(base, w(p as i64)).expect("in range");
        for k in 0..p {
            a.set_arc(base + k, 'a', base + (k + 1) % p, w(0)).expect("in range");
        }
        base += p;
    }
    a
}

/// Deterministic one-letter automaton on a single cycle of length `p * q`
/// recognizing `a^n ↦ p` if only `p | n`, `q` if only `q | n`,
/// `both(p, q)` if both divide, undefined otherwise.
pub fn divisor_clock(tag: SemiringTag, p: usize, q: usize, both: fn(usize, usize) -> usize) -> WeightedAutomaton {
    let alphabet = Alphabet::new(['a']).expect("valid alphabet");
    let n = p * q;
    let mut a = WeightedAutomaton::new(tag, alphabet, n).expect("scalar tag");
    a.set_initial(0, w(0)).expect("in range");
    for k in 0..n {
        a.set_arc(k, 'a', (k + 1) % n, w(0)).expect("in range");
        let value = match (k % p == 0, k % q == 0) {
            (true, true) => Some(both(p, q)),
            (true, false) => Some(p),
            (false, true) => Some(q),
            (false, false) => None,
        };
        if let Some(v) = value {
            a.set_final(k, w(v as i64)).expect("in range");
        }
    }
    a
}

/// Max-plus automaton of dimension `(p + q) r s` for the series
/// `T = max(S_p, S_q) + min(S_r, S_s)`.
pub fn prime_period_max(p: usize, q: usize, r: usize, s: usize) -> WeightedAutomaton {
    let t1 = divisor_cycles(SemiringTag::MaxPlus, &[p, q]);
    let t2 = divisor_clock(SemiringTag::MaxPlus, r, s, usize::min);
    t1.hadamard(&t2).expect("same tag and alphabet")
}

/// Min-plus automaton of dimension `p q (r + s)` for the same series.
pub fn prime_period_min(p: usize, q: usize, r: usize, s: usize) -> WeightedAutomaton {
    let t1 = divisor_clock(SemiringTag::MinPlus, p, q, usize::max);
    let t2 = divisor_cycles(SemiringTag::MinPlus, &[r, s]);
    t1.hadamard(&t2).expect("same tag and alphabet")
}
