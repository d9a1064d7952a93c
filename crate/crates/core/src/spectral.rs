//! Max-plus spectral quantities: the maximum mean circuit weight (Karp) and
//! the matrix star.
//!
//! All routines expect a max-plus matrix. The graph of a matrix has an arc
//! `i -> j` whenever the entry `(i, j)` is finite.

use num_bigint::BigInt;
use num_traits::Signed;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::matrix::TropicalMatrix;
use crate::semiring::{Rational, SemiringTag, Weight};

fn require_max_plus(m: &TropicalMatrix) -> Result<()> {
    if m.tag() == SemiringTag::MaxPlus {
        Ok(())
    } else {
        Err(Error::TagMismatch {
            expected: "max-plus".into(),
            found: m.tag(),
        })
    }
}

/// Strongly connected components that carry at least one circuit.
fn cyclic_components(m: &TropicalMatrix) -> Vec<Vec<usize>> {
    let n = m.dim();
    let mut g = DiGraph::<(), ()>::with_capacity(n, m.nnz());
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for (i, j, _) in m.entries() {
        g.add_edge(nodes[i], nodes[j], ());
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
            c.sort_unstable();
            c
        })
        .filter(|c| c.len() > 1 || !m.get(c[0], c[0]).is_zero())
        .collect()
}

/// Karp's formula on one strongly connected component.
fn karp_component(m: &TropicalMatrix, comp: &[usize]) -> Rational {
    let size = comp.len();
    let mut local = vec![usize::MAX; m.dim()];
    for (k, &v) in comp.iter().enumerate() {
        local[v] = k;
    }
    let edges: Vec<Vec<(usize, &Rational)>> = comp
        .iter()
        .map(|&u| {
            m.row(u)
                .iter()
                .filter(|(v, _)| local[*v] != usize::MAX)
                .map(|(v, w)| (local[*v], w.value().expect("stored entries are finite")))
                .collect()
        })
        .collect();

    // dist[k][v]: heaviest walk of exactly k arcs from local node 0 to v.
    let mut dist: Vec<Vec<Option<Rational>>> = vec![vec![None; size]; size + 1];
    dist[0][0] = Some(Rational::from_integer(BigInt::from(0)));
    for k in 1..=size {
        let (done, rest) = dist.split_at_mut(k);
        let prev = &done[k - 1];
        let cur = &mut rest[0];
        for (u, out) in edges.iter().enumerate() {
            let Some(du) = &prev[u] else { continue };
            for (v, w) in out {
                let cand = du + *w;
                if cur[*v].as_ref().is_none_or(|c| cand > *c) {
                    cur[*v] = Some(cand);
                }
            }
        }
    }

    let mut best: Option<Rational> = None;
    for (v, dn) in dist[size].iter().enumerate() {
        let Some(dn) = dn else { continue };
        let worst = (0..size)
            .filter_map(|k| {
                dist[k][v]
                    .as_ref()
                    .map(|dk| (dn - dk) / Rational::from_integer(BigInt::from(size - k)))
            })
            .min();
        if let Some(w) = worst {
            if best.as_ref().is_none_or(|b| w > *b) {
                best = Some(w);
            }
        }
    }
    best.expect("a cyclic component has a closed walk of every large length")
}

/// Maximum mean weight of a simple circuit in the graph of `m`, as an exact
/// rational. Returns [`Weight::Zero`] (`-inf`) when the graph is acyclic.
pub fn max_mean_cycle(m: &TropicalMatrix) -> Result<Weight> {
    require_max_plus(m)?;
    Ok(cyclic_components(m)
        .iter()
        .map(|c| karp_component(m, c))
        .max()
        .map_or(Weight::Zero, Weight::Finite))
}

/// A simple circuit of maximum mean weight, as the list of visited states
/// `c_0, c_1, ..., c_{k-1}` (the arc `c_{k-1} -> c_0` closes it), with its
/// mean. `None` when the graph is acyclic.
pub fn critical_circuit(m: &TropicalMatrix) -> Result<Option<(Vec<usize>, Rational)>> {
    require_max_plus(m)?;
    let Some((comp, rho)) = cyclic_components(m)
        .into_iter()
        .map(|c| {
            let r = karp_component(m, &c);
            (c, r)
        })
        .max_by(|a, b| a.1.cmp(&b.1))
    else {
        return Ok(None);
    };

    let size = comp.len();
    let mut local = vec![usize::MAX; m.dim()];
    for (k, &v) in comp.iter().enumerate() {
        local[v] = k;
    }
    // Arc weights shifted by -rho: every circuit is then nonpositive and the
    // critical ones have weight exactly 0.
    let edges: Vec<Vec<(usize, Rational)>> = comp
        .iter()
        .map(|&u| {
            m.row(u)
                .iter()
                .filter(|(v, _)| local[*v] != usize::MAX)
                .map(|(v, w)| (local[*v], w.value().expect("finite") - &rho))
                .collect()
        })
        .collect();

    // Longest-walk potentials from local node 0; converges within `size`
    // rounds because no shifted circuit is positive.
    let mut pot: Vec<Option<Rational>> = vec![None; size];
    pot[0] = Some(Rational::from_integer(BigInt::from(0)));
    for _ in 0..size {
        let mut changed = false;
        for u in 0..size {
            let Some(pu) = pot[u].clone() else { continue };
            for (v, w) in &edges[u] {
                let cand = &pu + w;
                if pot[*v].as_ref().is_none_or(|c| cand > *c) {
                    pot[*v] = Some(cand);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    // Tight arcs: pot(u) + w = pot(v). Any circuit made of tight arcs is critical.
    let tight: Vec<Vec<usize>> = (0..size)
        .map(|u| {
            let pu = pot[u].as_ref().expect("strongly connected");
            edges[u]
                .iter()
                .filter(|(v, w)| pu + w == *pot[*v].as_ref().expect("strongly connected"))
                .map(|(v, _)| *v)
                .collect()
        })
        .collect();

    let circuit = find_circuit(&tight).expect("a critical circuit consists of tight arcs");
    Ok(Some((circuit.into_iter().map(|v| comp[v]).collect(), rho)))
}

/// Iterative DFS returning some circuit of the graph, if any.
fn find_circuit(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        state[root] = 1;
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if *next < adj[u].len() {
                let v = adj[u][*next];
                *next += 1;
                match state[v] {
                    0 => {
                        state[v] = 1;
                        stack.push((v, 0));
                    }
                    1 => {
                        let start = stack.iter().position(|(x, _)| *x == v).expect("on stack");
                        return Some(stack[start..].iter().map(|(x, _)| *x).collect());
                    }
                    _ => {}
                }
            } else {
                state[u] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// `M* = I ⊕ M ⊕ M² ⊕ ...`, the all-pairs heaviest path matrix, computed by
/// Floyd–Warshall relaxation. Fails with [`Error::PositiveCycle`] exactly
/// when some circuit has positive weight.
pub fn mat_star(m: &TropicalMatrix) -> Result<TropicalMatrix> {
    require_max_plus(m)?;
    let n = m.dim();
    let mut d: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
    for (i, j, w) in m.entries() {
        d[i][j] = w.value().cloned();
    }
    for k in 0..n {
        let row_k = d[k].clone();
        for row in d.iter_mut() {
            let Some(dik) = row[k].clone() else { continue };
            for (j, dkj) in row_k.iter().enumerate() {
                if let Some(dkj) = dkj {
                    let cand = &dik + dkj;
                    if row[j].as_ref().is_none_or(|c| cand > *c) {
                        row[j] = Some(cand);
                    }
                }
            }
        }
        if d[k][k].as_ref().is_some_and(|x| x.is_positive()) {
            return Err(Error::PositiveCycle);
        }
    }
    if (0..n).any(|i| d[i][i].as_ref().is_some_and(|x| x.is_positive())) {
        return Err(Error::PositiveCycle);
    }
    let zero = Rational::from_integer(BigInt::from(0));
    for (i, row) in d.iter_mut().enumerate() {
        if row[i].as_ref().is_none_or(|x| *x < zero) {
            row[i] = Some(zero.clone());
        }
    }
    TropicalMatrix::from_dense(
        SemiringTag::MaxPlus,
        d.into_iter()
            .map(|r| r.into_iter().map(|x| x.map_or(Weight::Zero, Weight::Finite)).collect())
            .collect(),
    )
}

/// `M* ⊗ v` without forming `M*`: heaviest path weight from each state to
/// the "exit" vector `v`, by Bellman–Ford iteration `u ← v ⊕ M ⊗ u`.
/// Fails with [`Error::PositiveCycle`] if the iteration has not stabilised
/// after `n` rounds.
pub fn star_times_vector(m: &TropicalMatrix, v: &[Weight]) -> Result<Vec<Weight>> {
    require_max_plus(m)?;
    let n = m.dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: v.len(),
        });
    }
    let tag = SemiringTag::MaxPlus;
    let mut u = v.to_vec();
    for _ in 0..=n {
        let mut changed = false;
        for i in 0..n {
            for (j, w) in m.row(i) {
                let cand = tag.mul(w, &u[*j]);
                if tag.beats(&cand, &u[i]) {
                    u[i] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(u);
        }
    }
    Err(Error::PositiveCycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MAX: SemiringTag = SemiringTag::MaxPlus;

    fn m(rows: &[&[Option<i64>]]) -> TropicalMatrix {
        TropicalMatrix::from_dense(
            MAX,
            rows.iter()
                .map(|r| r.iter().map(|x| x.map_or(Weight::Zero, Weight::from_int)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn two_cycle_mean() {
        // Circuits: 0->0 mean -1, 0->1->0 mean (2+0)/2 = 1.
        let a = m(&[&[Some(-1), Some(2)], &[Some(0), None]]);
        assert_eq!(max_mean_cycle(&a).unwrap(), Weight::from_int(1));
        let (c, rho) = critical_circuit(&a).unwrap().unwrap();
        assert_eq!(rho, Rational::from_integer(1.into()));
        let mut sorted = c.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1]);
    }

    #[test]
    fn single_loop_and_acyclic() {
        let a = m(&[&[None, None], &[None, Some(-3)]]);
        assert_eq!(max_mean_cycle(&a).unwrap(), Weight::from_int(-3));
        let b = m(&[&[None, Some(4), Some(1)], &[None, None, Some(2)], &[None, None, None]]);
        assert_eq!(max_mean_cycle(&b).unwrap(), Weight::Zero);
        assert!(critical_circuit(&b).unwrap().is_none());
    }

    #[test]
    fn fractional_mean() {
        // 0->1->2->0 with weights 1, 0, 0: mean 1/3.
        let a = m(&[&[None, Some(1), None], &[None, None, Some(0)], &[Some(0), None, None]]);
        assert_eq!(max_mean_cycle(&a).unwrap(), Weight::from_ratio(1, 3));
    }

    #[test]
    fn star_examples() {
        let a = m(&[&[None, Some(1)], &[None, None]]);
        assert_eq!(mat_star(&a).unwrap(), m(&[&[Some(0), Some(1)], &[None, Some(0)]]));
        let b = m(&[&[Some(-1)]]);
        assert_eq!(mat_star(&b).unwrap(), TropicalMatrix::identity(MAX, 1));
        let c = m(&[&[None, Some(1)], &[Some(0), None]]);
        assert!(matches!(mat_star(&c), Err(Error::PositiveCycle)));
    }

    #[test]
    fn star_vector_matches_star() {
        let a = m(&[&[None, Some(1), Some(-4)], &[Some(-2), None, Some(0)], &[None, Some(-1), Some(-1)]]);
        let v = vec![Weight::Zero, Weight::from_int(3), Weight::from_int(0)];
        let s = mat_star(&a).unwrap();
        assert_eq!(star_times_vector(&a, &v).unwrap(), s.mul_vec(&v));
        let pos = m(&[&[Some(1)]]);
        assert!(star_times_vector(&pos, &[Weight::one()]).is_err());
    }

    #[test]
    fn rejects_min_plus() {
        let a = TropicalMatrix::zeros(SemiringTag::MinPlus, 1);
        assert!(max_mean_cycle(&a).is_err());
    }
}
