//! Linear representations `(α, μ, β)` and their Boolean supports.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{dot, TropicalMatrix};
use crate::semiring::{negate_weight, SemiringTag, Weight};
use crate::word::Word;

/// Ordered set of distinct single-character symbols (visible ASCII).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<char>);

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        for (i, c) in symbols.iter().enumerate() {
            if !c.is_ascii_graphic() || *c == '#' {
                return Err(Error::InvalidAlphabet(format!("symbol {c:?} is not allowed")));
            }
            if symbols[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Alphabet(symbols))
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, c: char) -> Result<usize> {
        self.0.iter().position(|x| *x == c).ok_or(Error::UnknownSymbol(c))
    }

    pub fn symbol(&self, i: usize) -> char {
        self.0[i]
    }

    /// Letter indices of `w`.
    pub fn encode(&self, w: &Word) -> Result<Vec<usize>> {
        w.symbols().iter().map(|c| self.index_of(*c)).collect()
    }

    pub fn decode(&self, letters: &[usize]) -> Word {
        Word::new(letters.iter().map(|&i| self.0[i]).collect())
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(char::to_string).collect();
        f.write_str(&s.join(" "))
    }
}

/// A weighted automaton given as a linear representation: initial row vector,
/// one square matrix per letter, final column vector. States are `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedAutomaton {
    tag: SemiringTag,
    alphabet: Alphabet,
    initial: Vec<Weight>,
    finals: Vec<Weight>,
    mu: Vec<TropicalMatrix>,
    labels: Option<Vec<String>>,
}

impl WeightedAutomaton {
    /// Automaton with `n` states and no arcs.
    pub fn new(tag: SemiringTag, alphabet: Alphabet, n: usize) -> Result<Self> {
        if !tag.is_scalar() {
            return Err(Error::TagMismatch {
                expected: "a scalar semiring".into(),
                found: tag,
            });
        }
        let mu = (0..alphabet.len()).map(|_| TropicalMatrix::zeros(tag, n)).collect();
        Ok(WeightedAutomaton {
            tag,
            alphabet,
            initial: vec![Weight::Zero; n],
            finals: vec![Weight::Zero; n],
            mu,
            labels: None,
        })
    }

    /// Assembles an automaton from its parts, checking dimensions and tags.
    pub fn from_parts(
        tag: SemiringTag,
        alphabet: Alphabet,
        initial: Vec<Weight>,
        mu: Vec<TropicalMatrix>,
        finals: Vec<Weight>,
    ) -> Result<Self> {
        let n = initial.len();
        let mut a = WeightedAutomaton::new(tag, alphabet, n)?;
        if finals.len() != n {
            return Err(Error::DimensionMismatch { left: n, right: finals.len() });
        }
        if mu.len() != a.alphabet.len() {
            return Err(Error::DimensionMismatch { left: a.alphabet.len(), right: mu.len() });
        }
        for m in &mu {
            if m.dim() != n {
                return Err(Error::DimensionMismatch { left: n, right: m.dim() });
            }
            if m.tag() != tag {
                return Err(Error::TagMismatch { expected: tag.to_string(), found: m.tag() });
            }
        }
        a.initial = initial;
        a.finals = finals;
        a.mu = mu;
        Ok(a)
    }

    pub fn tag(&self) -> SemiringTag {
        self.tag
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &[Weight] {
        &self.initial
    }

    pub fn finals(&self) -> &[Weight] {
        &self.finals
    }

    /// `μ(a)` for the letter with index `letter`.
    pub fn matrix(&self, letter: usize) -> &TropicalMatrix {
        &self.mu[letter]
    }

    pub fn matrices(&self) -> &[TropicalMatrix] {
        &self.mu
    }

    /// Optional per-state provenance labels, kept through constructions.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) {
        debug_assert!(labels.as_ref().is_none_or(|l| l.len() == self.num_states()));
        self.labels = labels;
    }

    fn check_state(&self, s: usize) -> Result<()> {
        if s < self.num_states() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange { state: s, states: self.num_states() })
        }
    }

    pub fn set_initial(&mut self, s: usize, w: Weight) -> Result<()> {
        self.check_state(s)?;
        self.initial[s] = w;
        Ok(())
    }

    pub fn set_final(&mut self, s: usize, w: Weight) -> Result<()> {
        self.check_state(s)?;
        self.finals[s] = w;
        Ok(())
    }

    /// Sets `μ(symbol)[from, to] = w`, replacing any previous entry.
    pub fn set_arc(&mut self, from: usize, symbol: char, to: usize, w: Weight) -> Result<()> {
        self.check_state(from)?;
        self.check_state(to)?;
        let a = self.alphabet.index_of(symbol)?;
        self.mu[a].set(from, to, w);
        Ok(())
    }

    /// Arcs `(from, letter, to, weight)` ordered by source, letter, target.
    pub fn arcs(&self) -> Vec<(usize, usize, usize, &Weight)> {
        let mut out = Vec::new();
        for p in 0..self.num_states() {
            for (a, m) in self.mu.iter().enumerate() {
                out.extend(m.row(p).iter().map(|(q, w)| (p, a, *q, w)));
            }
        }
        out
    }

    pub fn num_arcs(&self) -> usize {
        self.mu.iter().map(TropicalMatrix::nnz).sum()
    }

    /// `⟨S, w⟩ = α μ(w_1) ⋯ μ(w_k) β`.
    pub fn eval(&self, w: &Word) -> Result<Weight> {
        let letters = self.alphabet.encode(w)?;
        Ok(self.eval_letters(&letters))
    }

    pub(crate) fn eval_letters(&self, letters: &[usize]) -> Weight {
        let mut v = self.initial.clone();
        for &a in letters {
            v = self.mu[a].vec_mul(&v);
        }
        dot(self.tag, &v, &self.finals)
    }

    /// `M = ⊕_a μ(a)`.
    pub fn letter_sum(&self) -> Result<TropicalMatrix> {
        if !matches!(self.tag, SemiringTag::MaxPlus | SemiringTag::MinPlus) {
            return Err(Error::TagMismatch {
                expected: "max-plus or min-plus".into(),
                found: self.tag,
            });
        }
        let mut m = TropicalMatrix::zeros(self.tag, self.num_states());
        for x in &self.mu {
            m = m.oplus(x)?;
        }
        Ok(m)
    }

    /// States reachable from an initial state and co-reachable to a final one,
    /// in increasing order.
    pub fn useful_states(&self) -> Vec<usize> {
        let n = self.num_states();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
        for m in &self.mu {
            for (i, j, _) in m.entries() {
                succ[i].push(j);
                pred[j].push(i);
            }
        }
        let forward = reach(&succ, self.initial.iter().map(Weight::is_finite));
        let backward = reach(&pred, self.finals.iter().map(Weight::is_finite));
        (0..n).filter(|&s| forward[s] && backward[s]).collect()
    }

    /// Restriction to `states` (kept in the given order).
    pub fn restrict(&self, states: &[usize]) -> WeightedAutomaton {
        let n = self.num_states();
        let mut index = vec![usize::MAX; n];
        for (k, &s) in states.iter().enumerate() {
            index[s] = k;
        }
        let pick = |v: &[Weight]| states.iter().map(|&s| v[s].clone()).collect::<Vec<_>>();
        let mu = self
            .mu
            .iter()
            .map(|m| {
                let mut r = TropicalMatrix::zeros(self.tag, states.len());
                for (k, &s) in states.iter().enumerate() {
                    for (t, w) in m.row(s) {
                        if index[*t] != usize::MAX {
                            r.set(k, index[*t], w.clone());
                        }
                    }
                }
                r
            })
            .collect();
        WeightedAutomaton {
            tag: self.tag,
            alphabet: self.alphabet.clone(),
            initial: pick(&self.initial),
            finals: pick(&self.finals),
            mu,
            labels: self
                .labels
                .as_ref()
                .map(|l| states.iter().map(|&s| l[s].clone()).collect()),
        }
    }

    /// Keeps only accessible and co-accessible states, preserving their order.
    pub fn trim(&self) -> WeightedAutomaton {
        let keep = self.useful_states();
        if keep.len() == self.num_states() {
            return self.clone();
        }
        self.restrict(&keep)
    }

    pub fn is_trim(&self) -> bool {
        self.useful_states().len() == self.num_states()
    }

    /// The Boolean automaton obtained by projecting every weight.
    pub fn support(&self) -> BooleanAutomaton {
        let n = self.num_states();
        let mut delta = vec![vec![Vec::new(); self.alphabet.len()]; n];
        for (a, m) in self.mu.iter().enumerate() {
            for (i, j, _) in m.entries() {
                delta[i][a].push(j);
            }
        }
        BooleanAutomaton {
            alphabet: self.alphabet.clone(),
            initial: self.initial.iter().map(Weight::is_finite).collect(),
            finals: self.finals.iter().map(Weight::is_finite).collect(),
            delta,
        }
    }

    /// Pointwise product of series via the tensor product of representations.
    /// State `(p, q)` gets index `p * m + q` where `m` is the state count of `other`.
    pub fn hadamard(&self, other: &WeightedAutomaton) -> Result<WeightedAutomaton> {
        if self.tag != other.tag || !matches!(self.tag, SemiringTag::MaxPlus | SemiringTag::MinPlus) {
            return Err(Error::TagMismatch {
                expected: self.tag.to_string(),
                found: other.tag,
            });
        }
        self.alphabet.ensure_same(&other.alphabet)?;
        let tag = self.tag;
        let (n, m) = (self.num_states(), other.num_states());
        let pair = |u: &[Weight], v: &[Weight]| {
            let mut out = Vec::with_capacity(n * m);
            for x in u {
                for y in v {
                    out.push(tag.mul(x, y));
                }
            }
            out
        };
        let mu = self
            .mu
            .iter()
            .zip(&other.mu)
            .map(|(a, b)| tensor(tag, a, b))
            .collect();
        let mut h = WeightedAutomaton::from_parts(
            tag,
            self.alphabet.clone(),
            pair(&self.initial, &other.initial),
            mu,
            pair(&self.finals, &other.finals),
        )?;
        h.labels = Some(product_labels(n, m));
        Ok(h)
    }

    /// The series `w ↦ -⟨S, w⟩`: every weight negated, max-plus and min-plus swapped.
    pub fn negate_series(&self) -> Result<WeightedAutomaton> {
        let tag = self.tag.dual().ok_or(Error::TagMismatch {
            expected: "max-plus or min-plus".into(),
            found: self.tag,
        })?;
        Ok(WeightedAutomaton {
            tag,
            alphabet: self.alphabet.clone(),
            initial: self.initial.iter().map(negate_weight).collect(),
            finals: self.finals.iter().map(negate_weight).collect(),
            mu: self
                .mu
                .iter()
                .map(|m| m.map_entries(|_, _, w| negate_weight(w)).with_tag(tag))
                .collect(),
            labels: self.labels.clone(),
        })
    }

    /// Same weights read in another semiring (no negation).
    pub fn retag(&self, tag: SemiringTag) -> Result<WeightedAutomaton> {
        if !tag.is_scalar() {
            return Err(Error::TagMismatch { expected: "a scalar semiring".into(), found: tag });
        }
        let mut a = self.clone();
        a.tag = tag;
        a.mu = a.mu.into_iter().map(|m| m.with_tag(tag)).collect();
        Ok(a)
    }

    /// The series `S + c` (rational shift of every value on the support),
    /// applied to the finite final weights.
    pub fn shift(&self, c: &crate::semiring::Rational) -> WeightedAutomaton {
        let mut a = self.clone();
        a.finals = a.finals.iter().map(|w| w.shifted(c)).collect();
        a
    }
}

fn reach(adj: &[Vec<usize>], seeds: impl Iterator<Item = bool>) -> Vec<bool> {
    let mut seen: Vec<bool> = seeds.collect();
    let mut queue: VecDeque<usize> = (0..seen.len()).filter(|&s| seen[s]).collect();
    while let Some(s) = queue.pop_front() {
        for &t in &adj[s] {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    seen
}

fn tensor(tag: SemiringTag, a: &TropicalMatrix, b: &TropicalMatrix) -> TropicalMatrix {
    let (n, m) = (a.dim(), b.dim());
    let mut out = TropicalMatrix::zeros(tag, n * m);
    for p in 0..n {
        for q in 0..m {
            let row = p * m + q;
            for (r, x) in a.row(p) {
                for (s, y) in b.row(q) {
                    out.set(row, r * m + s, tag.mul(x, y));
                }
            }
        }
    }
    out
}

pub(crate) fn product_labels(n: usize, m: usize) -> Vec<String> {
    (0..n)
        .flat_map(|p| (0..m).map(move |q| format!("({p},{q})")))
        .collect()
}

/// A nondeterministic finite automaton without weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanAutomaton {
    alphabet: Alphabet,
    initial: Vec<bool>,
    finals: Vec<bool>,
    /// `delta[state][letter]`: sorted successor list.
    delta: Vec<Vec<Vec<usize>>>,
}

impl BooleanAutomaton {
    pub fn new(alphabet: Alphabet, n: usize) -> Self {
        let k = alphabet.len();
        BooleanAutomaton {
            alphabet,
            initial: vec![false; n],
            finals: vec![false; n],
            delta: vec![vec![Vec::new(); k]; n],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.initial.len()
    }

    pub fn is_initial(&self, s: usize) -> bool {
        self.initial[s]
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    pub fn initial_states(&self) -> Vec<usize> {
        (0..self.num_states()).filter(|&s| self.initial[s]).collect()
    }

    pub fn final_states(&self) -> Vec<usize> {
        (0..self.num_states()).filter(|&s| self.finals[s]).collect()
    }

    pub fn successors(&self, s: usize, letter: usize) -> &[usize] {
        &self.delta[s][letter]
    }

    fn check_state(&self, s: usize) -> Result<()> {
        if s < self.num_states() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange { state: s, states: self.num_states() })
        }
    }

    pub fn set_initial(&mut self, s: usize, on: bool) -> Result<()> {
        self.check_state(s)?;
        self.initial[s] = on;
        Ok(())
    }

    pub fn set_final(&mut self, s: usize, on: bool) -> Result<()> {
        self.check_state(s)?;
        self.finals[s] = on;
        Ok(())
    }

    pub fn add_transition(&mut self, from: usize, symbol: char, to: usize) -> Result<()> {
        self.check_state(from)?;
        self.check_state(to)?;
        let a = self.alphabet.index_of(symbol)?;
        let succ = &mut self.delta[from][a];
        if let Err(k) = succ.binary_search(&to) {
            succ.insert(k, to);
        }
        Ok(())
    }

    /// Successor set of a sorted state set.
    pub fn step(&self, set: &[usize], letter: usize) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().flat_map(|&s| self.delta[s][letter].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        let letters = self.alphabet.encode(w)?;
        let mut cur = self.initial_states();
        for a in letters {
            cur = self.step(&cur, a);
        }
        Ok(cur.iter().any(|&s| self.finals[s]))
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial_states().len() <= 1
            && self.delta.iter().all(|row| row.iter().all(|succ| succ.len() <= 1))
    }
}
