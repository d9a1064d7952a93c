//! Decision procedures on max-plus series: nonpositivity, the Fatou
//! normalization, equality with a constant (everywhere or on the support),
//! language equivalence of supports, and comparison of a max-plus series
//! with a min-plus one.
//!
//! Every entry point trims its input first. Negative answers come with a
//! witness word that can be checked by evaluation.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::automaton::{BooleanAutomaton, WeightedAutomaton};
use crate::error::{Error, Result};
use crate::matrix::{dot, TropicalMatrix};
use crate::semiring::{Rational, SemiringTag, Weight};
use crate::spectral::{critical_circuit, star_times_vector};
use crate::word::Word;

/// Outcome of a decision procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails { witness: Word },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Word> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails { witness } => Some(witness),
        }
    }
}

/// Resource caps for the procedures whose worst case is exponential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of Boolean matrices in a transition monoid.
    pub monoid_cap: usize,
    /// Maximum number of subsets created by a determinization.
    pub subset_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            monoid_cap: 1_000_000,
            subset_cap: 1_000_000,
        }
    }
}

pub(crate) fn require_tag(a: &WeightedAutomaton, tag: SemiringTag) -> Result<()> {
    if a.tag() == tag {
        Ok(())
    } else {
        Err(Error::TagMismatch {
            expected: tag.to_string(),
            found: a.tag(),
        })
    }
}

/// Heaviest-arc letter for the arc `p -> q` of the letter sum.
fn best_letter(a: &WeightedAutomaton, p: usize, q: usize) -> (usize, Rational) {
    let mut best: Option<(usize, &Rational)> = None;
    for l in 0..a.alphabet().len() {
        if let Some(v) = a.matrix(l).get(p, q).value() {
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((l, v));
            }
        }
    }
    let (l, v) = best.expect("arc of the letter sum");
    (l, v.clone())
}

/// Breadth-first path from the `from` states (with entry weights) to the
/// first state where `goal` yields an exit weight. Returns the letters read
/// and the total weight entry + arcs + exit.
fn bfs_path(
    a: &WeightedAutomaton,
    from: &[(usize, Rational)],
    goal: impl Fn(usize) -> Option<Rational>,
) -> Option<(Vec<usize>, Rational)> {
    let n = a.num_states();
    let mut visited = vec![false; n];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut entry: Vec<Option<&Rational>> = vec![None; n];
    let mut queue = VecDeque::new();
    for (s, w) in from {
        if !visited[*s] {
            visited[*s] = true;
            entry[*s] = Some(w);
            queue.push_back(*s);
        }
    }
    while let Some(s) = queue.pop_front() {
        if let Some(exit) = goal(s) {
            let mut letters = Vec::new();
            let mut weight = exit;
            let mut cur = s;
            while let Some((prev, l)) = parent[cur] {
                letters.push(l);
                weight += a.matrix(l).get(prev, cur).value().expect("arc on path");
                cur = prev;
            }
            weight += entry[cur].expect("path starts at an entry state");
            letters.reverse();
            return Some((letters, weight));
        }
        for l in 0..a.alphabet().len() {
            for (t, _) in a.matrix(l).row(s) {
                if !visited[*t] {
                    visited[*t] = true;
                    parent[*t] = Some((s, l));
                    queue.push_back(*t);
                }
            }
        }
    }
    None
}

/// Decides whether `⟨S, w⟩ <= 0` for every word `w`.
///
/// On a trim automaton with `M = ⊕_a μ(a)` this holds iff the maximum mean
/// circuit of `M` is `<= 0` and `α M^k β <= 0` for `k < |Q|`. A failing `k`
/// yields a witness of length `k` by backtracking through the vectors
/// `α M^j`; a positive circuit yields a pumped witness `w1 c^n w2`.
pub fn decide_nonpositive(a: &WeightedAutomaton) -> Result<Verdict> {
    require_tag(a, SemiringTag::MaxPlus)?;
    let t = a.trim();
    let n = t.num_states();
    if n == 0 {
        return Ok(Verdict::Holds);
    }
    let m = t.letter_sum()?;
    let tag = SemiringTag::MaxPlus;

    let mut vectors: Vec<Vec<Weight>> = Vec::with_capacity(n);
    vectors.push(t.initial().to_vec());
    for k in 0..n {
        let v = &vectors[k];
        if dot(tag, v, t.finals()).is_positive() {
            return Ok(Verdict::Fails {
                witness: backtrack(&t, &vectors, k),
            });
        }
        if k + 1 < n {
            let next = m.vec_mul(v);
            vectors.push(next);
        }
    }

    if let Some((circuit, rho)) = critical_circuit(&m)? {
        if rho.is_positive() {
            return Ok(Verdict::Fails {
                witness: pump(&t, &circuit),
            });
        }
    }
    Ok(Verdict::Holds)
}

/// Word of length `k` realizing `α M^k β`.
fn backtrack(t: &WeightedAutomaton, vectors: &[Vec<Weight>], k: usize) -> Word {
    let tag = SemiringTag::MaxPlus;
    let n = t.num_states();
    let mut j = (0..n)
        .max_by(|&x, &y| {
            let wx = tag.mul(&vectors[k][x], &t.finals()[x]);
            let wy = tag.mul(&vectors[k][y], &t.finals()[y]);
            // ties resolve to the smallest index
            wx.cmp_max_plus(&wy).then(y.cmp(&x))
        })
        .expect("nonempty");
    let transposed: Vec<TropicalMatrix> = t.matrices().iter().map(TropicalMatrix::transpose).collect();
    let mut letters = Vec::with_capacity(k);
    for step in (1..=k).rev() {
        let target = &vectors[step][j];
        let (i, l) = (0..t.alphabet().len())
            .flat_map(|l| transposed[l].row(j).iter().map(move |(i, w)| (l, *i, w)))
            .find(|(_, i, w)| tag.mul(&vectors[step - 1][*i], w) == *target)
            .map(|(l, i, _)| (i, l))
            .expect("argmax predecessor exists");
        letters.push(l);
        j = i;
    }
    letters.reverse();
    t.alphabet().decode(&letters)
}

/// `w1 c^n w2` with `c` the critical circuit read through its heaviest letters.
fn pump(t: &WeightedAutomaton, circuit: &[usize]) -> Word {
    let k = circuit.len();
    let mut cycle = Vec::with_capacity(k);
    let mut cycle_weight = Rational::zero();
    for i in 0..k {
        let (l, w) = best_letter(t, circuit[i], circuit[(i + 1) % k]);
        cycle.push(l);
        cycle_weight += w;
    }
    let c0 = circuit[0];
    let starts: Vec<(usize, Rational)> = t
        .initial()
        .iter()
        .enumerate()
        .filter_map(|(s, w)| w.value().map(|v| (s, v.clone())))
        .collect();
    let (w1, a) = bfs_path(t, &starts, |s| (s == c0).then(Rational::zero)).expect("trim: accessible");
    let (w2, b) = bfs_path(t, &[(c0, Rational::zero())], |s| t.finals()[s].value().cloned())
        .expect("trim: co-accessible");
    let deficit = -(a + b) / &cycle_weight;
    let reps = if deficit.is_negative() {
        0
    } else {
        (deficit.floor().to_integer() + BigInt::from(1))
            .to_usize()
            .expect("repetition count fits in memory")
    };
    let mut letters = w1;
    for _ in 0..reps {
        letters.extend_from_slice(&cycle);
    }
    letters.extend(w2);
    t.alphabet().decode(&letters)
}

/// `u = M* β` on a trim nonpositive automaton, as finite rationals.
pub(crate) fn potential(t: &WeightedAutomaton) -> Result<Vec<Rational>> {
    let m = t.letter_sum()?;
    star_times_vector(&m, t.finals())?
        .into_iter()
        .map(|w| match w {
            Weight::Finite(v) => Ok(v),
            Weight::Zero => Err(Error::InvalidWeight("state is not co-accessible".into())),
        })
        .collect()
}

/// Diagonal conjugation by `u`: `α_i + u_i`, `β_i - u_i`, `μ(a)_ij - u_i + u_j`.
pub(crate) fn conjugate(t: &WeightedAutomaton, u: &[Rational]) -> Result<WeightedAutomaton> {
    let initial = t.initial().iter().zip(u).map(|(w, x)| w.shifted(x)).collect();
    let finals = t.finals().iter().zip(u).map(|(w, x)| w.shifted(&-x)).collect();
    let mu = t
        .matrices()
        .iter()
        .map(|m| m.map_entries(|i, j, w| w.shifted(&(&u[j] - &u[i]))))
        .collect();
    let mut out = WeightedAutomaton::from_parts(t.tag(), t.alphabet().clone(), initial, mu, finals)?;
    out.set_labels(t.labels().map(<[String]>::to_vec));
    Ok(out)
}

/// Equivalent trim automaton whose weights are all `<= 0`, for a series
/// with only nonpositive values. Conjugates by the diagonal of `u = M* β`.
pub fn fatou_normalize(a: &WeightedAutomaton) -> Result<WeightedAutomaton> {
    if let Verdict::Fails { witness } = decide_nonpositive(a)? {
        return Err(Error::NotNonpositive { witness });
    }
    let t = a.trim();
    let u = potential(&t)?;
    conjugate(&t, &u)
}

/// Boolean automaton keeping exactly the weights equal to `0`.
pub(crate) fn zero_filter(t: &WeightedAutomaton) -> BooleanAutomaton {
    let mut b = BooleanAutomaton::new(t.alphabet().clone(), t.num_states());
    for s in 0..t.num_states() {
        b.set_initial(s, t.initial()[s].is_unit()).expect("in range");
        b.set_final(s, t.finals()[s].is_unit()).expect("in range");
    }
    for (p, l, q, w) in t.arcs() {
        if w.is_unit() {
            b.add_transition(p, t.alphabet().symbol(l), q).expect("in range");
        }
    }
    b
}

/// Square Boolean matrix stored as row bitsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    pub fn zeros(n: usize) -> Self {
        let stride = n.div_ceil(64);
        BoolMatrix {
            n,
            stride,
            bits: vec![0; n * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BoolMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.stride + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// Boolean product `self · other`.
    pub fn mul(&self, other: &BoolMatrix) -> BoolMatrix {
        let mut out = BoolMatrix::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self.get(i, k) {
                    let src = other.row(k);
                    let dst = &mut out.bits[i * self.stride..(i + 1) * self.stride];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d |= s;
                    }
                }
            }
        }
        out
    }

    /// Transition matrix of one letter of an NFA.
    pub fn of_letter(nfa: &BooleanAutomaton, letter: usize) -> BoolMatrix {
        let mut m = BoolMatrix::zeros(nfa.num_states());
        for p in 0..nfa.num_states() {
            for &q in nfa.successors(p, letter) {
                m.set(p, q);
            }
        }
        m
    }

    /// `ᾱ X β̄` for the initial and final sets of `nfa`.
    pub fn accepts(&self, nfa: &BooleanAutomaton) -> bool {
        let finals = nfa.final_states();
        nfa.initial_states()
            .into_iter()
            .any(|i| finals.iter().any(|&j| self.get(i, j)))
    }
}

/// The transition monoid `{μ̄(w) : w ∈ Σ*}` of an NFA, identity included,
/// each element paired with a shortest word producing it (breadth-first,
/// letters in alphabet order).
pub fn boolean_monoid_closure(nfa: &BooleanAutomaton, cap: usize) -> Result<Vec<(BoolMatrix, Word)>> {
    let k = nfa.alphabet().len();
    let generators: Vec<BoolMatrix> = (0..k).map(|l| BoolMatrix::of_letter(nfa, l)).collect();
    let mut seen: HashSet<BoolMatrix> = HashSet::new();
    let mut out: Vec<(BoolMatrix, Vec<usize>)> = Vec::new();
    let id = BoolMatrix::identity(nfa.num_states());
    seen.insert(id.clone());
    out.push((id, Vec::new()));
    let mut head = 0;
    while head < out.len() {
        for (l, g) in generators.iter().enumerate() {
            let next = out[head].0.mul(g);
            if seen.insert(next.clone()) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "transition monoid",
                        cap,
                    });
                }
                let mut word = out[head].1.clone();
                word.push(l);
                out.push((next, word));
            }
        }
        head += 1;
    }
    Ok(out
        .into_iter()
        .map(|(m, w)| (m, nfa.alphabet().decode(&w)))
        .collect())
}

fn require_cap(cap: usize) -> Result<()> {
    if cap == 0 {
        Err(Error::CapExceeded {
            what: "transition monoid",
            cap,
        })
    } else {
        Ok(())
    }
}

/// Decides `⟨S, w⟩ = c` for every word (so in particular `supp S = Σ*`).
pub fn decide_equal_const(a: &WeightedAutomaton, c: &Rational, limits: &Limits) -> Result<Verdict> {
    require_tag(a, SemiringTag::MaxPlus)?;
    require_cap(limits.monoid_cap)?;
    let shifted = a.shift(&-c);
    if let fail @ Verdict::Fails { .. } = decide_nonpositive(&shifted)? {
        return Ok(fail);
    }
    let normalized = fatou_normalize(&shifted)?;
    let filtered = zero_filter(&normalized);
    for (x, w) in boolean_monoid_closure(&filtered, limits.monoid_cap)? {
        if !x.accepts(&filtered) {
            return Ok(Verdict::Fails { witness: w });
        }
    }
    Ok(Verdict::Holds)
}

/// Decides `⟨S, w⟩ = c` for every `w ∈ supp S`.
pub fn decide_equal_const_on_support(a: &WeightedAutomaton, c: &Rational) -> Result<Verdict> {
    require_tag(a, SemiringTag::MaxPlus)?;
    let shifted = a.shift(&-c);
    if let fail @ Verdict::Fails { .. } = decide_nonpositive(&shifted)? {
        return Ok(fail);
    }
    let normalized = fatou_normalize(&shifted)?;
    nfa_equivalence(&normalized.support(), &zero_filter(&normalized))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Relation {
    Equal,
    Included,
}

fn compare_languages(n1: &BooleanAutomaton, n2: &BooleanAutomaton, rel: Relation) -> Result<Verdict> {
    n1.alphabet().ensure_same(n2.alphabet())?;
    let k = n1.alphabet().len();
    let accepts = |nfa: &BooleanAutomaton, set: &[usize]| set.iter().any(|&s| nfa.is_final(s));
    let bad = |x: &[usize], y: &[usize]| {
        let (a, b) = (accepts(n1, x), accepts(n2, y));
        match rel {
            Relation::Equal => a != b,
            Relation::Included => a && !b,
        }
    };

    type Node = (Vec<usize>, Vec<usize>);
    let start: Node = (n1.initial_states(), n2.initial_states());
    let mut index: HashMap<Node, usize> = HashMap::new();
    let mut nodes: Vec<(Node, Option<(usize, usize)>)> = Vec::new();
    index.insert(start.clone(), 0);
    nodes.push((start, None));
    let mut head = 0;
    while head < nodes.len() {
        let (x, y) = nodes[head].0.clone();
        if bad(&x, &y) {
            let mut letters = Vec::new();
            let mut cur = head;
            while let Some((prev, l)) = nodes[cur].1 {
                letters.push(l);
                cur = prev;
            }
            letters.reverse();
            return Ok(Verdict::Fails {
                witness: n1.alphabet().decode(&letters),
            });
        }
        for l in 0..k {
            let next = (n1.step(&x, l), n2.step(&y, l));
            if next.0.is_empty() && next.1.is_empty() {
                continue;
            }
            if !index.contains_key(&next) {
                index.insert(next.clone(), nodes.len());
                nodes.push((next, Some((head, l))));
            }
        }
        head += 1;
    }
    Ok(Verdict::Holds)
}

/// Language equality of two NFAs over the same alphabet, by breadth-first
/// exploration of the product of their subset constructions. The witness is
/// a shortest word accepted by exactly one of them.
pub fn nfa_equivalence(n1: &BooleanAutomaton, n2: &BooleanAutomaton) -> Result<Verdict> {
    compare_languages(n1, n2, Relation::Equal)
}

/// Language inclusion `L(n1) ⊆ L(n2)`; the witness is in `L(n1) \ L(n2)`.
pub fn nfa_inclusion(n1: &BooleanAutomaton, n2: &BooleanAutomaton) -> Result<Verdict> {
    compare_languages(n1, n2, Relation::Included)
}

fn check_pair(a: &WeightedAutomaton, b: &WeightedAutomaton) -> Result<()> {
    require_tag(a, SemiringTag::MaxPlus)?;
    require_tag(b, SemiringTag::MinPlus)?;
    a.alphabet().ensure_same(b.alphabet())
}

/// Decides whether a max-plus series `S` and a min-plus series `T` are
/// equal: same support, and the same value on every word of it.
pub fn decide_series_equal(a: &WeightedAutomaton, b: &WeightedAutomaton) -> Result<Verdict> {
    check_pair(a, b)?;
    let (ta, tb) = (a.trim(), b.trim());
    if let fail @ Verdict::Fails { .. } = nfa_equivalence(&ta.support(), &tb.support())? {
        return Ok(fail);
    }
    let difference = ta.hadamard(&tb.negate_series()?)?;
    decide_equal_const_on_support(&difference, &Rational::zero())
}

/// Decides `S <= T` for a max-plus `S` and a min-plus `T`, read as:
/// `supp S ⊆ supp T` and `⟨S, w⟩ <= ⟨T, w⟩` on `supp S`.
pub fn decide_series_leq(a: &WeightedAutomaton, b: &WeightedAutomaton) -> Result<Verdict> {
    check_pair(a, b)?;
    let (ta, tb) = (a.trim(), b.trim());
    if let fail @ Verdict::Fails { .. } = nfa_inclusion(&ta.support(), &tb.support())? {
        return Ok(fail);
    }
    decide_nonpositive(&ta.hadamard(&tb.negate_series()?)?)
}
