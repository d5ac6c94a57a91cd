//! Seeds of the n-triangulation quiver, mutation, framed seeds with c-vectors,
//! the explicit maximal green sequence and optimized-seed mutation paths.

mod framed;
mod green;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{enumerate_h, IndexSetH, IntMatrix, IntVector, TriIndex};

pub use framed::{is_green, FramedSeed, Status};
pub use green::{
    coframed_relabeling, lemma_itritri_check, mgs_sequence, triangle_sequence, unfrozen_row,
    verify_green_sequence, CoframedCheck, GreenCertificate, ItritriReport, StepRecord,
};

/// The three arrow directions of the triangulation; every arrow points `v -> v + d`.
pub const DIRECTIONS: [(i64, i64, i64); 3] = [(-1, 1, 0), (0, -1, 1), (1, 0, -1)];

/// An exchange matrix over `H_n` with its frozen set and current basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    h: IndexSetH,
    epsilon: IntMatrix,
    frozen: Vec<bool>,
    basis: Vec<IntVector>,
}

/// An ordered list of unfrozen mutation vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutationSequence {
    pub steps: Vec<TriIndex>,
}

impl MutationSequence {
    pub fn new(steps: Vec<TriIndex>) -> Self {
        MutationSequence { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn reversed(&self) -> Self {
        MutationSequence {
            steps: self.steps.iter().rev().copied().collect(),
        }
    }

    /// Checks every step is an unfrozen vertex of `H_n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        for &v in &self.steps {
            if v.n() != n {
                return Err(Error::NotInH { v, n });
            }
            if v.is_frozen() {
                return Err(Error::FrozenVertex(v));
            }
        }
        Ok(())
    }
}

/// `(|x| y + x |y|) / 2`, the composition term of matrix mutation.
fn composite(x: i64, y: i64) -> Result<i64> {
    let t1 = x.abs().checked_mul(y).ok_or(Error::Overflow("mutation"))?;
    let t2 = x.checked_mul(y.abs()).ok_or(Error::Overflow("mutation"))?;
    Ok(t1.checked_add(t2).ok_or(Error::Overflow("mutation"))? / 2)
}

/// The seed of the n-triangulation quiver.
pub fn initial_seed(n: usize) -> Result<Seed> {
    if n < 2 {
        return Err(Error::InvalidRank { n, min: 2 });
    }
    let h = enumerate_h(n)?;
    let size = h.len();
    let mut epsilon = IntMatrix::zeros(size, size);
    for v in h.iter() {
        for d in DIRECTIONS {
            let Some(w) = v.offset(d) else { continue };
            if v.is_frozen() && w.is_frozen() {
                continue;
            }
            let (i, j) = (h.index(v), h.index(&w));
            epsilon.set(i, j, epsilon.get(i, j) + 1);
            epsilon.set(j, i, epsilon.get(j, i) - 1);
        }
    }
    let labels = h.as_slice().to_vec();
    let epsilon = epsilon.with_labels(Some(labels.clone()), Some(labels))?;
    let frozen = h.iter().map(TriIndex::is_frozen).collect();
    let basis = h.iter().map(|&v| IntVector::unit(n, v)).collect();
    Ok(Seed {
        h,
        epsilon,
        frozen,
        basis,
    })
}

impl Seed {
    pub fn n(&self) -> usize {
        self.h.n()
    }

    pub fn index_set(&self) -> &IndexSetH {
        &self.h
    }

    pub fn epsilon(&self) -> &IntMatrix {
        &self.epsilon
    }

    /// `ε_{vw}`: arrows `v -> w` minus arrows `w -> v`.
    pub fn eps(&self, v: TriIndex, w: TriIndex) -> i64 {
        self.epsilon.get(self.h.index(&v), self.h.index(&w))
    }

    pub fn eps_at(&self, i: usize, j: usize) -> i64 {
        self.epsilon.get(i, j)
    }

    pub fn is_frozen(&self, v: TriIndex) -> bool {
        self.frozen[self.h.index(&v)]
    }

    pub fn frozen(&self) -> Vec<TriIndex> {
        self.h.frozen().collect()
    }

    pub fn unfrozen(&self) -> Vec<TriIndex> {
        self.h.unfrozen().collect()
    }

    /// Current basis vector `e_v^{(s)}` in initial-seed coordinates.
    pub fn basis(&self, v: TriIndex) -> &IntVector {
        &self.basis[self.h.index(&v)]
    }

    pub fn bases(&self) -> &[IntVector] {
        &self.basis
    }

    fn check_mutable(&self, k: TriIndex) -> Result<usize> {
        let i = self
            .h
            .position(&k)
            .ok_or(Error::NotInH { v: k, n: self.n() })?;
        if self.frozen[i] {
            return Err(Error::FrozenVertex(k));
        }
        Ok(i)
    }

    /// Matrix mutation at `k` with frozen-frozen entries kept at zero, plus the basis update.
    pub fn mutate(&self, k: TriIndex) -> Result<Seed> {
        let kk = self.check_mutable(k)?;
        let size = self.h.len();
        let mut eps = self.epsilon.clone();
        for i in 0..size {
            for j in 0..size {
                let value = if i == kk || j == kk {
                    -self.epsilon.get(i, j)
                } else if self.frozen[i] && self.frozen[j] {
                    0
                } else {
                    let extra = composite(self.epsilon.get(i, kk), self.epsilon.get(kk, j))?;
                    self.epsilon
                        .get(i, j)
                        .checked_add(extra)
                        .ok_or(Error::Overflow("mutation"))?
                };
                eps.set(i, j, value);
            }
        }
        let ek = self.basis[kk].clone();
        let basis = (0..size)
            .map(|i| {
                if i == kk {
                    ek.neg()
                } else {
                    let p = self.epsilon.get(i, kk).max(0);
                    if p == 0 {
                        self.basis[i].clone()
                    } else {
                        self.basis[i].axpy(p, &ek)
                    }
                }
            })
            .collect();
        Ok(Seed {
            h: self.h.clone(),
            epsilon: eps,
            frozen: self.frozen.clone(),
            basis,
        })
    }

    pub fn mutate_sequence(&self, seq: &MutationSequence) -> Result<Seed> {
        seq.steps.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// True iff every arrow at `v` points into `v`.
    pub fn is_sink(&self, v: TriIndex) -> bool {
        let i = self.h.index(&v);
        (0..self.h.len()).all(|j| self.epsilon.get(i, j) <= 0)
    }

    /// The initial skew form `{x, y} = x^T ε₀ y`.
    pub fn skew_form(eps0: &IntMatrix, x: &IntVector, y: &IntVector) -> i64 {
        let xs = x.as_slice();
        let ys = y.as_slice();
        let mut total = 0;
        for (i, &xi) in xs.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in ys.iter().enumerate() {
                if yj != 0 {
                    total += xi * eps0.get(i, j) * yj;
                }
            }
        }
        total
    }

    /// The ε-row `{e_v, ·}` as a vector over `H_n`.
    pub fn eps_row(&self, v: TriIndex) -> IntVector {
        let i = self.h.index(&v);
        IntVector::from_dense(self.n(), self.epsilon.row(i).to_vec()).expect("square matrix")
    }

    /// The seed with every ε entry negated (fault injection in tests and the CLI).
    pub fn with_flipped_signs(&self) -> Seed {
        let mut out = self.clone();
        let size = self.h.len();
        for i in 0..size {
            for j in 0..size {
                out.epsilon.set(i, j, -self.epsilon.get(i, j));
            }
        }
        out
    }
}

impl Serialize for Seed {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut entries = Vec::new();
        for (i, v) in self.h.iter().enumerate() {
            for (j, w) in self.h.iter().enumerate().skip(i + 1) {
                let x = self.epsilon.get(i, j);
                if x != 0 {
                    entries.push((*v, *w, x));
                }
            }
        }
        let mut st = s.serialize_struct("Seed", 3)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("frozen", &self.frozen())?;
        st.serialize_field("epsilon", &entries)?;
        st.end()
    }
}

/// The mutation path that turns frozen `f` into a sink, running along its line of the triangle.
pub fn optimized_seed_path(n: usize, f: TriIndex) -> Result<MutationSequence> {
    if f.n() != n {
        return Err(Error::NotInH { v: f, n });
    }
    if !f.is_frozen() {
        return Err(Error::UnfrozenVertex(f));
    }
    if f.is_corner() {
        return Ok(MutationSequence::new(Vec::new()));
    }
    let TriIndex { a, b, c } = f;
    let steps: Vec<TriIndex> = if c == 0 {
        (1..b).map(|j| TriIndex::new(a, b - j, j)).collect()
    } else if a == 0 {
        (1..c).map(|j| TriIndex::new(j, b, c - j)).collect()
    } else {
        (1..a).map(|j| TriIndex::new(a - j, j, c)).collect()
    };
    Ok(MutationSequence::new(steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: usize, b: usize, c: usize) -> TriIndex {
        TriIndex::new(a, b, c)
    }

    #[test]
    fn n2_has_no_arrows() {
        let s = initial_seed(2).unwrap();
        assert!(s.unfrozen().is_empty());
        let size = s.index_set().len();
        assert!((0..size).all(|i| (0..size).all(|j| s.eps_at(i, j) == 0)));
    }

    #[test]
    fn n3_center_has_six_arrows() {
        let s = initial_seed(3).unwrap();
        let row = s.eps_row(t(1, 1, 1));
        assert_eq!(row.as_slice().iter().map(|x| x.abs()).sum::<i64>(), 6);
    }

    #[test]
    fn n4_unfrozen_three_cycle() {
        let s = initial_seed(4).unwrap();
        assert_eq!(s.eps(t(2, 1, 1), t(1, 2, 1)), 1);
        assert_eq!(s.eps(t(1, 2, 1), t(1, 1, 2)), 1);
        assert_eq!(s.eps(t(1, 1, 2), t(2, 1, 1)), 1);
    }

    #[test]
    fn corners_are_isolated() {
        for n in 2..=6 {
            let s = initial_seed(n).unwrap();
            for c in s.index_set().corners() {
                assert!(s.eps_row(c).is_zero());
            }
        }
    }

    #[test]
    fn mutation_reverses_incident_arrows() {
        let s = initial_seed(3).unwrap();
        let m = s.mutate(t(1, 1, 1)).unwrap();
        assert_eq!(m.eps_row(t(1, 1, 1)), s.eps_row(t(1, 1, 1)).neg());
        assert_eq!(m.mutate(t(1, 1, 1)).unwrap().epsilon(), s.epsilon());
    }

    #[test]
    fn frozen_mutation_rejected() {
        let s = initial_seed(3).unwrap();
        assert_eq!(s.mutate(t(2, 1, 0)), Err(Error::FrozenVertex(t(2, 1, 0))));
    }

    #[test]
    fn optimized_paths() {
        assert!(optimized_seed_path(4, t(4, 0, 0)).unwrap().is_empty());
        assert!(optimized_seed_path(4, t(3, 1, 0)).unwrap().is_empty());
        let p = optimized_seed_path(4, t(1, 3, 0)).unwrap();
        assert_eq!(p.steps, vec![t(1, 2, 1), t(1, 1, 2)]);
        let s = initial_seed(4).unwrap().mutate_sequence(&p).unwrap();
        assert!(s.is_sink(t(1, 3, 0)));
        assert!(optimized_seed_path(4, t(2, 1, 1)).is_err());
    }
}
