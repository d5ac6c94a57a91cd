//! The triangular index set `H_n`, dense integer vectors and matrices over it,
//! and exact integer linear algebra.

mod snf;
mod weight;

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use snf::{
    hermite_rank_and_index, smith_normal_form, spans_full_lattice, BigMatrix, SmithForm,
};
pub use weight::{weight_covector, weight_of, Axis};

/// A vertex `(a, b, c)` of the triangular array with `a + b + c = n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TriIndex {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// Position of a vertex relative to the boundary of the triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Corner,
    Edge,
    Interior,
}

impl TriIndex {
    pub const fn new(a: usize, b: usize, c: usize) -> Self {
        TriIndex { a, b, c }
    }

    pub fn n(&self) -> usize {
        self.a + self.b + self.c
    }

    pub fn kind(&self) -> VertexKind {
        let zeros = [self.a, self.b, self.c].iter().filter(|&&x| x == 0).count();
        match zeros {
            0 => VertexKind::Interior,
            1 => VertexKind::Edge,
            _ => VertexKind::Corner,
        }
    }

    pub fn is_frozen(&self) -> bool {
        self.a == 0 || self.b == 0 || self.c == 0
    }

    pub fn is_corner(&self) -> bool {
        self.kind() == VertexKind::Corner
    }

    /// The cyclic rotation `(a, b, c) -> (c, a, b)`.
    pub fn rotate(&self) -> Self {
        TriIndex::new(self.c, self.a, self.b)
    }

    /// The reflection `(a, b, c) -> (c, b, a)`.
    pub fn reflect(&self) -> Self {
        TriIndex::new(self.c, self.b, self.a)
    }

    /// Adds a signed offset, returning `None` if a coordinate would go negative.
    pub fn offset(&self, d: (i64, i64, i64)) -> Option<Self> {
        let a = self.a as i64 + d.0;
        let b = self.b as i64 + d.1;
        let c = self.c as i64 + d.2;
        (a >= 0 && b >= 0 && c >= 0).then(|| TriIndex::new(a as usize, b as usize, c as usize))
    }

    /// Parses `"a,b,c"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected a,b,c but got {s:?}")));
        }
        let mut v = [0usize; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad coordinate {p:?} in {s:?}")))?;
        }
        Ok(TriIndex::new(v[0], v[1], v[2]))
    }
}

impl Ord for TriIndex {
    /// Canonical order: descending `a`, then descending `b`.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .a
            .cmp(&self.a)
            .then(other.b.cmp(&self.b))
            .then(other.c.cmp(&self.c))
    }
}

impl PartialOrd for TriIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TriIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl Serialize for TriIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a, self.b, self.c].serialize(s)
    }
}

impl<'de> Deserialize<'de> for TriIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c] = <[usize; 3]>::deserialize(d)?;
        Ok(TriIndex::new(a, b, c))
    }
}

/// The ordered set `H_n` of all `(a, b, c)` with `a + b + c = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSetH {
    n: usize,
    items: Vec<TriIndex>,
}

impl IndexSetH {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TriIndex> {
        self.items.iter()
    }

    pub fn as_slice(&self) -> &[TriIndex] {
        &self.items
    }

    pub fn get(&self, i: usize) -> TriIndex {
        self.items[i]
    }

    pub fn contains(&self, v: &TriIndex) -> bool {
        v.n() == self.n
    }

    /// Position of `v` in canonical order.
    pub fn position(&self, v: &TriIndex) -> Option<usize> {
        self.contains(v).then(|| position_in(self.n, v))
    }

    pub fn index(&self, v: &TriIndex) -> usize {
        assert!(self.contains(v), "{v} is not in H_{}", self.n);
        position_in(self.n, v)
    }

    pub fn frozen(&self) -> impl Iterator<Item = TriIndex> + '_ {
        self.items.iter().copied().filter(TriIndex::is_frozen)
    }

    pub fn unfrozen(&self) -> impl Iterator<Item = TriIndex> + '_ {
        self.items.iter().copied().filter(|v| !v.is_frozen())
    }

    pub fn corners(&self) -> [TriIndex; 3] {
        let n = self.n;
        [
            TriIndex::new(n, 0, 0),
            TriIndex::new(0, n, 0),
            TriIndex::new(0, 0, n),
        ]
    }
}

impl<'a> IntoIterator for &'a IndexSetH {
    type Item = &'a TriIndex;
    type IntoIter = std::slice::Iter<'a, TriIndex>;
    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

fn position_in(n: usize, v: &TriIndex) -> usize {
    let m = n - v.a;
    m * (m + 1) / 2 + (m - v.b)
}

/// All `(a, b, c)` with `a + b + c = n`, in canonical order.
pub fn enumerate_h(n: usize) -> Result<IndexSetH> {
    if n == 0 {
        return Err(Error::InvalidRank { n, min: 1 });
    }
    let mut items = Vec::with_capacity((n + 1) * (n + 2) / 2);
    for a in (0..=n).rev() {
        for b in (0..=n - a).rev() {
            items.push(TriIndex::new(a, b, n - a - b));
        }
    }
    Ok(IndexSetH { n, items })
}

/// A dense integer vector over `H_n`, ordered lexicographically in canonical index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector {
    n: usize,
    data: Vec<i64>,
}

impl IntVector {
    pub fn zeros(n: usize) -> Self {
        IntVector {
            n,
            data: vec![0; (n + 1) * (n + 2) / 2],
        }
    }

    /// The basis vector `e_v` (or `e*_v`; both are represented the same way).
    pub fn unit(n: usize, v: TriIndex) -> Self {
        let mut out = Self::zeros(n);
        out.set(v, 1);
        out
    }

    pub fn ones(n: usize) -> Self {
        IntVector {
            n,
            data: vec![1; (n + 1) * (n + 2) / 2],
        }
    }

    pub fn from_dense(n: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != (n + 1) * (n + 2) / 2 {
            return Err(Error::Dimension(format!(
                "dense vector of length {} does not match H_{n}",
                data.len()
            )));
        }
        Ok(IntVector { n, data })
    }

    pub fn from_entries(n: usize, entries: &[(TriIndex, i64)]) -> Self {
        let mut out = Self::zeros(n);
        for &(v, x) in entries {
            out.add_at(v, x);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn get(&self, v: TriIndex) -> i64 {
        debug_assert_eq!(v.n(), self.n);
        self.data[position_in(self.n, &v)]
    }

    pub fn set(&mut self, v: TriIndex, x: i64) {
        debug_assert_eq!(v.n(), self.n);
        self.data[position_in(self.n, &v)] = x;
    }

    pub fn add_at(&mut self, v: TriIndex, x: i64) {
        debug_assert_eq!(v.n(), self.n);
        self.data[position_in(self.n, &v)] += x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn sum(&self) -> i64 {
        self.data.iter().sum()
    }

    pub fn dot(&self, other: &IntVector) -> i64 {
        assert_eq!(self.n, other.n, "rank mismatch in dot product");
        self.data.iter().zip(&other.data).map(|(x, y)| x * y).sum()
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        self.axpy(1, other)
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        self.axpy(-1, other)
    }

    /// `self + k * other`.
    pub fn axpy(&self, k: i64, other: &IntVector) -> IntVector {
        assert_eq!(self.n, other.n, "rank mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| x + k * y)
            .collect();
        IntVector { n: self.n, data }
    }

    pub fn scale(&self, k: i64) -> IntVector {
        IntVector {
            n: self.n,
            data: self.data.iter().map(|x| k * x).collect(),
        }
    }

    pub fn neg(&self) -> IntVector {
        self.scale(-1)
    }

    /// Nonzero entries in canonical order.
    pub fn support(&self) -> Vec<(TriIndex, i64)> {
        let h = enumerate_h(self.n).expect("n >= 1");
        h.iter()
            .zip(&self.data)
            .filter(|(_, &x)| x != 0)
            .map(|(&v, &x)| (v, x))
            .collect()
    }

    /// Representative of the class modulo `Z * 1_H` with a zero entry at `(n,0,0)`.
    pub fn normalize_top(&self) -> IntVector {
        let t = self.data[0];
        IntVector {
            n: self.n,
            data: self.data.iter().map(|x| x - t).collect(),
        }
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .support()
            .iter()
            .map(|(v, x)| format!("{x}*{v}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<(usize, usize, usize, i64)> = self
            .support()
            .into_iter()
            .map(|(v, x)| (v.a, v.b, v.c, x))
            .collect();
        let mut st = s.serialize_struct("IntVector", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            entries: Vec<(usize, usize, usize, i64)>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.n == 0 {
            return Err(serde::de::Error::custom("n must be positive"));
        }
        let mut out = IntVector::zeros(raw.n);
        for (a, b, c, x) in raw.entries {
            if a + b + c != raw.n {
                return Err(serde::de::Error::custom(format!(
                    "({a},{b},{c}) not in H_{}",
                    raw.n
                )));
            }
            out.add_at(TriIndex::new(a, b, c), x);
        }
        Ok(out)
    }
}

/// A dense integer matrix with optional vertex labels on rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
    row_labels: Option<Vec<TriIndex>>,
    col_labels: Option<Vec<TriIndex>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
            row_labels: None,
            col_labels: None,
        })
    }

    /// Matrix whose rows are the given vectors, columns labelled by `H_n`.
    pub fn from_vectors(vectors: &[IntVector]) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Ok(Self::zeros(0, 0));
        };
        let n = first.n();
        if vectors.iter().any(|v| v.n() != n) {
            return Err(Error::Dimension("vectors over different H_n".into()));
        }
        let rows: Vec<Vec<i64>> = vectors.iter().map(|v| v.as_slice().to_vec()).collect();
        let mut m = Self::from_rows(&rows)?;
        m.col_labels = Some(enumerate_h(n)?.as_slice().to_vec());
        Ok(m)
    }

    pub fn with_labels(
        mut self,
        rows: Option<Vec<TriIndex>>,
        cols: Option<Vec<TriIndex>>,
    ) -> Result<Self> {
        if rows.as_ref().is_some_and(|r| r.len() != self.rows)
            || cols.as_ref().is_some_and(|c| c.len() != self.cols)
        {
            return Err(Error::Dimension(
                "label count does not match matrix shape".into(),
            ));
        }
        self.row_labels = rows;
        self.col_labels = cols;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> Option<&[TriIndex]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[TriIndex]> {
        self.col_labels.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += x * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == -self.get(j, i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h1_is_the_three_corners() {
        let h = enumerate_h(1).unwrap();
        assert_eq!(
            h.as_slice(),
            &[
                TriIndex::new(1, 0, 0),
                TriIndex::new(0, 1, 0),
                TriIndex::new(0, 0, 1)
            ]
        );
    }

    #[test]
    fn h_sizes_and_positions() {
        for n in 1..=9 {
            let h = enumerate_h(n).unwrap();
            assert_eq!(h.len(), (n + 1) * (n + 2) / 2);
            for (i, v) in h.iter().enumerate() {
                assert_eq!(h.index(v), i);
            }
            assert!(h.as_slice().windows(2).all(|w| w[0] < w[1]));
        }
        assert!(enumerate_h(0).is_err());
    }

    #[test]
    fn h3_has_one_interior_vertex() {
        let h = enumerate_h(3).unwrap();
        let interior: Vec<_> = h.unfrozen().collect();
        assert_eq!(interior, vec![TriIndex::new(1, 1, 1)]);
    }

    #[test]
    fn vertex_kinds() {
        assert_eq!(TriIndex::new(4, 0, 0).kind(), VertexKind::Corner);
        assert_eq!(TriIndex::new(3, 1, 0).kind(), VertexKind::Edge);
        assert_eq!(TriIndex::new(2, 1, 1).kind(), VertexKind::Interior);
    }

    #[test]
    fn int_vector_json_round_trip() {
        let v = IntVector::from_entries(
            3,
            &[(TriIndex::new(1, 1, 1), -2), (TriIndex::new(3, 0, 0), 5)],
        );
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"n":3,"entries":[[3,0,0,5],[1,1,1,-2]]}"#);
        let back: IntVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
