use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{composite, initial_seed, MutationSequence, Seed};
use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, IntVector, TriIndex};

/// Green/red status of an unfrozen vertex of a framed seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Green,
    Red,
}

/// A seed with one frame vertex `w_i` per unfrozen vertex `v_i`.
///
/// `c_matrix[i][k]` is `ε_{v_k, w_i}`, so column `k` is the c-vector of the
/// `k`-th unfrozen vertex. The g-vectors of the current cluster variables are
/// tracked alongside, in the dual basis of the initial seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedSeed {
    base: Seed,
    unfrozen: Vec<TriIndex>,
    c_matrix: IntMatrix,
    g: Vec<IntVector>,
}

impl FramedSeed {
    /// The principal framing of the initial seed: every c-vector is a standard basis vector.
    pub fn initial(n: usize) -> Result<Self> {
        let base = initial_seed(n)?;
        let unfrozen = base.unfrozen();
        let m = unfrozen.len();
        let labels = unfrozen.clone();
        let c_matrix = IntMatrix::identity(m).with_labels(None, Some(labels))?;
        let g = base
            .index_set()
            .iter()
            .map(|&v| IntVector::unit(n, v))
            .collect();
        Ok(FramedSeed {
            base,
            unfrozen,
            c_matrix,
            g,
        })
    }

    pub fn base(&self) -> &Seed {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn c_matrix(&self) -> &IntMatrix {
        &self.c_matrix
    }

    pub fn unfrozen(&self) -> &[TriIndex] {
        &self.unfrozen
    }

    fn unfrozen_pos(&self, k: TriIndex) -> Result<usize> {
        if k.n() != self.n() {
            return Err(Error::NotInH { v: k, n: self.n() });
        }
        self.unfrozen
            .iter()
            .position(|&u| u == k)
            .ok_or(Error::FrozenVertex(k))
    }

    /// The c-vector of unfrozen `k`, indexed by the frame vertices in unfrozen order.
    pub fn c_vector(&self, k: TriIndex) -> Result<Vec<i64>> {
        let kk = self.unfrozen_pos(k)?;
        Ok((0..self.unfrozen.len())
            .map(|i| self.c_matrix.get(i, kk))
            .collect())
    }

    /// g-vector of the cluster variable currently sitting at `v`.
    pub fn g_vector(&self, v: TriIndex) -> &IntVector {
        &self.g[self.base.index_set().index(&v)]
    }

    pub fn status(&self, k: TriIndex) -> Result<Status> {
        is_green(self, k)
    }

    /// Mutation at `k`; frame vertices behave as frozen vertices.
    pub fn mutate(&self, k: TriIndex) -> Result<FramedSeed> {
        let kk = self.unfrozen_pos(k)?;
        let status = self.status(k)?;
        let h = self.base.index_set();
        let ki = h.index(&k);
        let m = self.unfrozen.len();

        let mut c = self.c_matrix.clone();
        for (l, &vl) in self.unfrozen.iter().enumerate() {
            let e_lk = self.base.eps_at(h.index(&vl), ki);
            for i in 0..m {
                let value = if l == kk {
                    -self.c_matrix.get(i, kk)
                } else {
                    let extra = composite(e_lk, self.c_matrix.get(i, kk))?;
                    self.c_matrix
                        .get(i, l)
                        .checked_add(extra)
                        .ok_or(Error::Overflow("c-matrix"))?
                };
                c.set(i, l, value);
            }
        }

        let mut g = self.g.clone();
        let mut gk = self.g[ki].neg();
        for j in 0..h.len() {
            let e_jk = self.base.eps_at(j, ki);
            let coeff = match status {
                Status::Green => e_jk.max(0),
                Status::Red => (-e_jk).max(0),
            };
            if coeff != 0 {
                gk = gk.axpy(coeff, &self.g[j]);
            }
        }
        g[ki] = gk;

        Ok(FramedSeed {
            base: self.base.mutate(k)?,
            unfrozen: self.unfrozen.clone(),
            c_matrix: c,
            g,
        })
    }

    pub fn mutate_sequence(&self, seq: &MutationSequence) -> Result<FramedSeed> {
        seq.steps.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Checks sign coherence of every c-vector.
    pub fn check_sign_coherence(&self) -> Result<()> {
        for &k in &self.unfrozen {
            self.status(k)?;
        }
        Ok(())
    }
}

/// Green iff the c-vector of `k` is nonzero and entrywise non-negative; red iff non-positive.
pub fn is_green(fs: &FramedSeed, k: TriIndex) -> Result<Status> {
    let c = fs.c_vector(k)?;
    let pos = c.iter().any(|&x| x > 0);
    let neg = c.iter().any(|&x| x < 0);
    match (pos, neg) {
        (true, false) => Ok(Status::Green),
        (false, true) => Ok(Status::Red),
        (true, true) => Err(Error::SignCoherence(k)),
        (false, false) => Err(Error::ZeroCVector(k)),
    }
}

impl Serialize for FramedSeed {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let columns: Vec<(TriIndex, Vec<i64>)> = self
            .unfrozen
            .iter()
            .map(|&k| (k, self.c_vector(k).expect("unfrozen")))
            .collect();
        let mut st = s.serialize_struct("FramedSeed", 2)?;
        st.serialize_field("seed", &self.base)?;
        st.serialize_field("c_matrix", &columns)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: usize, b: usize, c: usize) -> TriIndex {
        TriIndex::new(a, b, c)
    }

    #[test]
    fn initial_framing_is_green() {
        let fs = FramedSeed::initial(5).unwrap();
        for &k in fs.unfrozen() {
            assert_eq!(is_green(&fs, k).unwrap(), Status::Green);
        }
    }

    #[test]
    fn one_mutation_turns_red() {
        let fs = FramedSeed::initial(4).unwrap();
        for &k in fs.unfrozen() {
            let m = fs.mutate(k).unwrap();
            assert_eq!(is_green(&m, k).unwrap(), Status::Red);
        }
    }

    #[test]
    fn n3_center_g_vector_after_one_mutation() {
        let fs = FramedSeed::initial(3).unwrap().mutate(t(1, 1, 1)).unwrap();
        let want = IntVector::from_entries(
            3,
            &[
                (t(2, 0, 1), 1),
                (t(1, 2, 0), 1),
                (t(0, 1, 2), 1),
                (t(1, 1, 1), -1),
            ],
        );
        assert_eq!(fs.g_vector(t(1, 1, 1)), &want);
    }
}
