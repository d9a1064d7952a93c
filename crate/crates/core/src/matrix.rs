//! Sparse square matrices over a scalar tropical semiring.

use std::fmt;

use crate::error::{Error, Result};
use crate::semiring::{SemiringTag, Weight};

static ZERO: Weight = Weight::Zero;

/// Square matrix of [`Weight`]s. Rows are stored sparsely: each row keeps its
/// nonzero entries sorted by column.
#[derive(Clone, PartialEq, Eq)]
pub struct TropicalMatrix {
    tag: SemiringTag,
    rows: Vec<Vec<(usize, Weight)>>,
}

impl TropicalMatrix {
    /// All-zero `n × n` matrix.
    pub fn zeros(tag: SemiringTag, n: usize) -> Self {
        TropicalMatrix {
            tag,
            rows: vec![Vec::new(); n],
        }
    }

    /// `0` on the diagonal, zero elsewhere.
    pub fn identity(tag: SemiringTag, n: usize) -> Self {
        TropicalMatrix {
            tag,
            rows: (0..n).map(|i| vec![(i, Weight::one())]).collect(),
        }
    }

    pub fn from_dense(tag: SemiringTag, dense: Vec<Vec<Weight>>) -> Result<Self> {
        let n = dense.len();
        let mut m = TropicalMatrix::zeros(tag, n);
        for (i, row) in dense.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            m.rows[i] = row
                .into_iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .collect();
        }
        Ok(m)
    }

    pub fn tag(&self) -> SemiringTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Weight {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => &self.rows[i][k].1,
            Err(_) => &ZERO,
        }
    }

    /// Overwrites entry `(i, j)`. Setting zero removes the entry.
    pub fn set(&mut self, i: usize, j: usize, w: Weight) {
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) if w.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = w,
            Err(_) if w.is_zero() => {}
            Err(k) => row.insert(k, (j, w)),
        }
    }

    /// Nonzero entries of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, Weight)] {
        &self.rows[i]
    }

    /// All nonzero entries `(i, j, w)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Weight)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, w)| (i, *j, w)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Weight>> {
        let n = self.dim();
        let mut d = vec![vec![Weight::Zero; n]; n];
        for (i, j, w) in self.entries() {
            d[i][j] = w.clone();
        }
        d
    }

    pub fn transpose(&self) -> TropicalMatrix {
        let mut rows = vec![Vec::new(); self.dim()];
        for (i, j, w) in self.entries() {
            rows[j].push((i, w.clone()));
        }
        TropicalMatrix {
            tag: self.tag,
            rows,
        }
    }

    /// Applies `f` to every nonzero entry; a zero result drops the entry.
    pub fn map_entries(&self, mut f: impl FnMut(usize, usize, &Weight) -> Weight) -> TropicalMatrix {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .map(|(j, w)| (*j, f(i, *j, w)))
                    .filter(|(_, w)| !w.is_zero())
                    .collect()
            })
            .collect();
        TropicalMatrix {
            tag: self.tag,
            rows,
        }
    }

    pub(crate) fn with_tag(mut self, tag: SemiringTag) -> TropicalMatrix {
        self.tag = tag;
        self
    }

    fn check_compatible(&self, other: &TropicalMatrix) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch {
                expected: self.tag.to_string(),
                found: other.tag,
            });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    /// Entrywise semiring sum.
    pub fn oplus(&self, other: &TropicalMatrix) -> Result<TropicalMatrix> {
        self.check_compatible(other)?;
        let tag = self.tag;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| merge_rows(tag, a, b))
            .collect();
        Ok(TropicalMatrix { tag, rows })
    }

    /// Semiring matrix product `self ⊗ other`.
    pub fn mat_mul(&self, other: &TropicalMatrix) -> Result<TropicalMatrix> {
        self.check_compatible(other)?;
        let tag = self.tag;
        let n = self.dim();
        let mut acc = vec![Weight::Zero; n];
        let mut touched = Vec::new();
        let mut rows = Vec::with_capacity(n);
        for row in &self.rows {
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let t = tag.mul(a, b);
                    if acc[*j].is_zero() {
                        touched.push(*j);
                        acc[*j] = t;
                    } else if tag.beats(&t, &acc[*j]) {
                        acc[*j] = t;
                    }
                }
            }
            touched.sort_unstable();
            rows.push(
                touched
                    .drain(..)
                    .map(|j| (j, std::mem::replace(&mut acc[j], Weight::Zero)))
                    .collect(),
            );
        }
        Ok(TropicalMatrix { tag, rows })
    }

    /// `self^k`, with `self^0` the identity.
    pub fn pow(&self, k: usize) -> TropicalMatrix {
        let mut result = TropicalMatrix::identity(self.tag, self.dim());
        for _ in 0..k {
            result = result.mat_mul(self).expect("same shape");
        }
        result
    }

    /// Row vector times matrix: `(v ⊗ M)_j = ⊕_i v_i ⊗ M_ij`.
    pub fn vec_mul(&self, v: &[Weight]) -> Vec<Weight> {
        let tag = self.tag;
        let mut out = vec![Weight::Zero; self.dim()];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, m) in &self.rows[i] {
                let t = tag.mul(vi, m);
                if tag.beats(&t, &out[*j]) {
                    out[*j] = t;
                }
            }
        }
        out
    }

    /// Matrix times column vector: `(M ⊗ v)_i = ⊕_j M_ij ⊗ v_j`.
    pub fn mul_vec(&self, v: &[Weight]) -> Vec<Weight> {
        let tag = self.tag;
        self.rows
            .iter()
            .map(|row| {
                row.iter().fold(Weight::Zero, |acc, (j, m)| {
                    let t = tag.mul(m, &v[*j]);
                    if tag.beats(&t, &acc) {
                        t
                    } else {
                        acc
                    }
                })
            })
            .collect()
    }
}

fn merge_rows(tag: SemiringTag, a: &[(usize, Weight)], b: &[(usize, Weight)]) -> Vec<(usize, Weight)> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            out.push((a[i].0, tag.add(&a[i].1, &b[j].1)));
            i += 1;
            j += 1;
        }
    }
    out
}

/// Semiring inner product of a row vector and a column vector.
pub fn dot(tag: SemiringTag, u: &[Weight], v: &[Weight]) -> Weight {
    u.iter()
        .zip(v)
        .fold(Weight::Zero, |acc, (a, b)| tag.add(&acc, &tag.mul(a, b)))
}

impl fmt::Debug for TropicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TropicalMatrix<{}>[", self.tag)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|w| self.tag.show(w)).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MAX: SemiringTag = SemiringTag::MaxPlus;

    fn m(rows: &[&[Option<i64>]]) -> TropicalMatrix {
        TropicalMatrix::from_dense(
            MAX,
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.map_or(Weight::Zero, Weight::from_int))
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = m(&[&[Some(-1), Some(2)], &[Some(0), None]]);
        let id = TropicalMatrix::identity(MAX, 2);
        assert_eq!(a.mat_mul(&id).unwrap(), a);
        assert_eq!(id.mat_mul(&a).unwrap(), a);
    }

    #[test]
    fn square_of_upper_unitriangular() {
        let a = m(&[&[Some(0), Some(1)], &[None, Some(0)]]);
        assert_eq!(a.mat_mul(&a).unwrap(), a);
    }

    #[test]
    fn zero_matrix_absorbs() {
        let a = m(&[&[Some(3), Some(1)], &[Some(4), Some(0)]]);
        let z = TropicalMatrix::zeros(MAX, 2);
        assert_eq!(z.mat_mul(&a).unwrap(), z);
    }

    #[test]
    fn dimension_and_tag_mismatch() {
        let a = TropicalMatrix::zeros(MAX, 2);
        let b = TropicalMatrix::zeros(MAX, 3);
        assert!(matches!(a.mat_mul(&b), Err(Error::DimensionMismatch { .. })));
        let c = TropicalMatrix::zeros(SemiringTag::MinPlus, 2);
        assert!(matches!(a.oplus(&c), Err(Error::TagMismatch { .. })));
    }

    #[test]
    fn set_and_get() {
        let mut a = TropicalMatrix::zeros(MAX, 3);
        a.set(0, 2, Weight::from_int(5));
        a.set(0, 1, Weight::from_int(4));
        assert_eq!(a.row(0).iter().map(|e| e.0).collect::<Vec<_>>(), vec![1, 2]);
        a.set(0, 2, Weight::Zero);
        assert_eq!(a.get(0, 2), &Weight::Zero);
        assert_eq!(a.nnz(), 1);
    }

    #[test]
    fn vector_products() {
        let a = m(&[&[Some(-1), Some(2)], &[Some(0), None]]);
        let v = vec![Weight::from_int(0), Weight::from_int(1)];
        assert_eq!(a.vec_mul(&v), vec![Weight::from_int(1), Weight::from_int(2)]);
        assert_eq!(a.mul_vec(&v), vec![Weight::from_int(3), Weight::from_int(0)]);
    }
}
