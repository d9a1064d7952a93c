//! From an equivalent max-plus / min-plus pair to a 1-valued automaton, and
//! from a 1-valued automaton to an unambiguous one.
//!
//! The first step runs the max-plus automaton `A` in parallel with `A' = -B`
//! over `R_max × R_max`. The second coordinate recognizes `S - S`, which is
//! `0` on the support, so after normalizing it to nonpositive arc weights the
//! paths that matter are exactly those whose second coordinates are all `0`.
//! Keeping those arcs, weighted by the first coordinate, gives a 1-valued
//! automaton for `S`.
//!
//! The second step takes the Schützenberger covering (product with the
//! subset construction of the support) and removes competing arcs and final
//! arrows, keeping in each group the one whose original state is smallest.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{product_labels, Alphabet, BooleanAutomaton, WeightedAutomaton};
use crate::decisions::{conjugate, decide_nonpositive, decide_series_equal, potential, require_tag, Limits, Verdict};
use crate::error::{Error, Result};
use crate::semiring::{boolean_projection, PairWeight, SemiringTag, Weight};
use crate::word::Word;

/// Automaton over `R_max × R_max`, stored as its two coordinate automata.
/// Both coordinates have the same arcs and the same initial and final states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAutomaton {
    first: WeightedAutomaton,
    second: WeightedAutomaton,
}

impl PairAutomaton {
    pub fn from_coordinates(first: WeightedAutomaton, second: WeightedAutomaton) -> Result<Self> {
        require_tag(&first, SemiringTag::MaxPlus)?;
        require_tag(&second, SemiringTag::MaxPlus)?;
        first.alphabet().ensure_same(second.alphabet())?;
        if first.num_states() != second.num_states() {
            return Err(Error::DimensionMismatch {
                left: first.num_states(),
                right: second.num_states(),
            });
        }
        if first.support() != second.support() {
            return Err(Error::InvalidWeight(
                "pair weights must have both coordinates finite or both zero".into(),
            ));
        }
        Ok(PairAutomaton { first, second })
    }

    pub fn first(&self) -> &WeightedAutomaton {
        &self.first
    }

    pub fn second(&self) -> &WeightedAutomaton {
        &self.second
    }

    pub fn num_states(&self) -> usize {
        self.first.num_states()
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.first.alphabet()
    }

    /// Componentwise evaluation (the pair semiring sums componentwise).
    pub fn eval(&self, w: &Word) -> Result<PairWeight> {
        PairWeight::new(self.first.eval(w)?, self.second.eval(w)?)
    }

    pub fn trim(&self) -> PairAutomaton {
        let keep = self.first.useful_states();
        PairAutomaton {
            first: self.first.restrict(&keep),
            second: self.second.restrict(&keep),
        }
    }
}

/// Product over `R_max × R_max` on `Q × Q'`: the arc `(p,q) -> (r,s)` on `a`
/// carries `(μ(a)_pr, μ(a)_pr + μ'(a)_qs)` and exists only when both entries
/// are finite; initial and final weights are built the same way. State
/// `(p, q)` has index `p * |Q'| + q`.
pub fn pair_product(a: &WeightedAutomaton, other: &WeightedAutomaton) -> Result<PairAutomaton> {
    require_tag(a, SemiringTag::MaxPlus)?;
    require_tag(other, SemiringTag::MaxPlus)?;
    a.alphabet().ensure_same(other.alphabet())?;
    let tag = SemiringTag::MaxPlus;
    let m = other.num_states();
    // First coordinate: μ(a)_pr wherever μ'(a)_qs is finite, i.e. the tensor
    // with the Boolean projection of the other automaton.
    let unit = |v: &[Weight]| v.iter().map(boolean_projection).collect::<Vec<_>>();
    let other_support = WeightedAutomaton::from_parts(
        tag,
        other.alphabet().clone(),
        unit(other.initial()),
        other
            .matrices()
            .iter()
            .map(|x| x.map_entries(|_, _, w| boolean_projection(w)))
            .collect(),
        unit(other.finals()),
    )?;
    let mut first = a.hadamard(&other_support)?;
    let mut second = a.hadamard(other)?;
    let labels = Some(product_labels(a.num_states(), m));
    first.set_labels(labels.clone());
    second.set_labels(labels);
    debug_assert_eq!(
        first.matrices().iter().map(|x| x.nnz()).sum::<usize>(),
        second.matrices().iter().map(|x| x.nnz()).sum::<usize>()
    );
    Ok(PairAutomaton { first, second })
}

/// 1-valued automaton recognizing the common series of a max-plus `a` and a
/// min-plus `b`.
///
/// With `check`, equality of the two series is decided first and a
/// [`Error::NotEqual`] carries the witness. Without it the caller vouches
/// for equality; an inconsistency can still surface as
/// [`Error::NotNonpositive`] from the normalization step.
pub fn extract_one_valued(a: &WeightedAutomaton, b: &WeightedAutomaton, check: bool) -> Result<WeightedAutomaton> {
    require_tag(a, SemiringTag::MaxPlus)?;
    require_tag(b, SemiringTag::MinPlus)?;
    a.alphabet().ensure_same(b.alphabet())?;
    if check {
        if let Verdict::Fails { witness } = decide_series_equal(a, b)? {
            return Err(Error::NotEqual { witness });
        }
    }
    let product = pair_product(a, &b.negate_series()?)?.trim();
    let second = product.second();
    if let Verdict::Fails { witness } = decide_nonpositive(second)? {
        return Err(Error::NotNonpositive { witness });
    }
    let normalized = conjugate(second, &potential(second)?)?;
    let first = product.first();

    let keep = |x: &Weight, y: &Weight| if y.is_unit() { x.clone() } else { Weight::Zero };
    let initial = first.initial().iter().zip(normalized.initial()).map(|(x, y)| keep(x, y)).collect();
    let finals = first.finals().iter().zip(normalized.finals()).map(|(x, y)| keep(x, y)).collect();
    let mu = first
        .matrices()
        .iter()
        .zip(normalized.matrices())
        .map(|(x, y)| x.map_entries(|i, j, w| keep(w, y.get(i, j))))
        .collect();
    let mut out = WeightedAutomaton::from_parts(SemiringTag::MaxPlus, a.alphabet().clone(), initial, mu, finals)?;
    out.set_labels(first.labels().map(<[String]>::to_vec));
    Ok(out.trim())
}

/// Accessible subset construction of an NFA.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Determinization {
    /// Deterministic automaton; state `i` stands for `subsets[i]`.
    pub dfa: BooleanAutomaton,
    /// Sorted NFA state sets, in discovery order (breadth-first, letters in
    /// alphabet order). `subsets[0]` is the set of initial states.
    pub subsets: Vec<Vec<usize>>,
}

/// Subset construction restricted to nonempty accessible subsets (the
/// initial subset is always present). Fails once more than `cap` subsets
/// are needed.
pub fn determinize(nfa: &BooleanAutomaton, cap: usize) -> Result<Determinization> {
    let k = nfa.alphabet().len();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets = vec![nfa.initial_states()];
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    index.insert(subsets[0].clone(), 0);
    let mut head = 0;
    while head < subsets.len() {
        for l in 0..k {
            let next = nfa.step(&subsets[head], l);
            if next.is_empty() {
                continue;
            }
            let target = match index.get(&next) {
                Some(&t) => t,
                None => {
                    if subsets.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "subset construction",
                            cap,
                        });
                    }
                    let t = subsets.len();
                    index.insert(next.clone(), t);
                    subsets.push(next);
                    t
                }
            };
            edges.push((head, l, target));
        }
        head += 1;
    }
    let mut dfa = BooleanAutomaton::new(nfa.alphabet().clone(), subsets.len());
    dfa.set_initial(0, true)?;
    for (i, set) in subsets.iter().enumerate() {
        dfa.set_final(i, set.iter().any(|&s| nfa.is_final(s)))?;
    }
    for (from, l, to) in edges {
        dfa.add_transition(from, nfa.alphabet().symbol(l), to)?;
    }
    Ok(Determinization { dfa, subsets })
}

/// Accessible part of the product of an automaton with the subset
/// construction of its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covering {
    /// The covering automaton, same semiring as the input.
    pub automaton: WeightedAutomaton,
    /// `origin[s] = (p, i)`: state `s` pairs input state `p` with subset `i`.
    pub origin: Vec<(usize, usize)>,
    /// The subsets of the determinization, indexed as in `origin`.
    pub subsets: Vec<Vec<usize>>,
}

/// Schützenberger covering of `a`. It recognizes the same series: the subset
/// component only contributes unit weights.
pub fn covering(a: &WeightedAutomaton, subset_cap: usize) -> Result<Covering> {
    if !matches!(a.tag(), SemiringTag::MaxPlus | SemiringTag::MinPlus) {
        return Err(Error::TagMismatch {
            expected: "max-plus or min-plus".into(),
            found: a.tag(),
        });
    }
    let det = determinize(&a.support(), subset_cap)?;
    let k = a.alphabet().len();

    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut origin: Vec<(usize, usize)> = Vec::new();
    let mut queue = VecDeque::new();
    for (p, w) in a.initial().iter().enumerate() {
        if w.is_finite() {
            index.insert((p, 0), origin.len());
            origin.push((p, 0));
            queue.push_back(origin.len() - 1);
        }
    }
    let mut arcs: Vec<(usize, usize, usize, Weight)> = Vec::new();
    while let Some(s) = queue.pop_front() {
        let (p, set) = origin[s];
        for l in 0..k {
            let Some(&next_set) = det.dfa.successors(set, l).first() else { continue };
            for (r, w) in a.matrix(l).row(p) {
                let key = (*r, next_set);
                let t = *index.entry(key).or_insert_with(|| {
                    origin.push(key);
                    queue.push_back(origin.len() - 1);
                    origin.len() - 1
                });
                arcs.push((s, l, t, w.clone()));
            }
        }
    }

    let mut cov = WeightedAutomaton::new(a.tag(), a.alphabet().clone(), origin.len())?;
    for (s, &(p, set)) in origin.iter().enumerate() {
        if set == 0 {
            cov.set_initial(s, a.initial()[p].clone())?;
        }
        cov.set_final(s, a.finals()[p].clone())?;
    }
    for (s, l, t, w) in arcs {
        cov.set_arc(s, a.alphabet().symbol(l), t, w)?;
    }
    let name = |p: usize| a.labels().map_or_else(|| p.to_string(), |ls| ls[p].clone());
    cov.set_labels(Some(
        origin
            .iter()
            .map(|&(p, set)| {
                let members: Vec<String> = det.subsets[set].iter().map(|x| x.to_string()).collect();
                format!("({},{{{}}})", name(p), members.join(","))
            })
            .collect(),
    ));
    Ok(Covering {
        automaton: cov,
        origin,
        subsets: det.subsets,
    })
}

/// Deletes competing arcs and final arrows of a covering, then trims.
///
/// Arcs on the same letter into the same state from states sharing a subset
/// component compete, as do final arrows on states sharing a subset
/// component. In each group the member whose input state is smallest stays.
pub fn remove_competitions(c: &Covering) -> WeightedAutomaton {
    let a = &c.automaton;
    let n = a.num_states();
    let mut out = a.clone();

    let mut final_winner: HashMap<usize, usize> = HashMap::new();
    for s in (0..n).filter(|&s| a.finals()[s].is_finite()) {
        let (p, set) = c.origin[s];
        final_winner
            .entry(set)
            .and_modify(|w| {
                if p < c.origin[*w].0 {
                    *w = s
                }
            })
            .or_insert(s);
    }
    for s in 0..n {
        if a.finals()[s].is_finite() && final_winner[&c.origin[s].1] != s {
            out.set_final(s, Weight::Zero).expect("in range");
        }
    }

    // (letter, target, subset of source) -> winning source
    let mut arc_winner: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (s, l, t, _) in a.arcs() {
        let (p, set) = c.origin[s];
        arc_winner
            .entry((l, t, set))
            .and_modify(|w| {
                if p < c.origin[*w].0 {
                    *w = s
                }
            })
            .or_insert(s);
    }
    for (s, l, t, _) in a.arcs() {
        if arc_winner[&(l, t, c.origin[s].1)] != s {
            out.set_arc(s, a.alphabet().symbol(l), t, Weight::Zero).expect("in range");
        }
    }
    out.trim()
}

/// Unambiguous automaton equivalent to a 1-valued one. 1-valuedness is the
/// caller's responsibility; it is not checked.
pub fn disambiguate(a: &WeightedAutomaton, limits: &Limits) -> Result<WeightedAutomaton> {
    Ok(remove_competitions(&covering(&a.trim(), limits.subset_cap)?))
}

/// Full construction: equality check (unless `check` is false), 1-valued
/// extraction, then disambiguation.
pub fn unambiguous_from_pair(
    a: &WeightedAutomaton,
    b: &WeightedAutomaton,
    check: bool,
    limits: &Limits,
) -> Result<WeightedAutomaton> {
    disambiguate(&extract_one_valued(a, b, check)?, limits)
}
