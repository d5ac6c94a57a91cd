use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{IntVector, TriIndex};
use crate::quiver::{mgs_sequence, FramedSeed, MutationSequence};

/// Offsets of a sub-triangle `{a > a3, b > b1, c > c2}` of the unfrozen vertices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Shift {
    pub a3: usize,
    pub b1: usize,
    pub c2: usize,
}

impl Shift {
    /// Size of the sub-triangle, as the rank it mimics.
    pub fn size(&self, n: usize) -> Option<usize> {
        n.checked_sub(self.a3 + self.b1 + self.c2)
    }

    fn contains(&self, v: TriIndex) -> bool {
        v.a > self.a3 && v.b > self.b1 && v.c > self.c2
    }
}

/// The maximal green sequence of rank `size(n)`, translated into the sub-triangle.
pub fn subtriangle_sequence(n: usize, shift: Shift) -> Result<MutationSequence> {
    let m = shift
        .size(n)
        .filter(|&m| m >= 2)
        .ok_or(Error::Invalid(format!(
            "shift {shift:?} too large for n={n}"
        )))?;
    let steps = mgs_sequence(m)
        .steps
        .iter()
        .map(|v| TriIndex::new(v.a + shift.a3, v.b + shift.b1, v.c + shift.c2))
        .collect();
    Ok(MutationSequence::new(steps))
}

/// Closed-form g-vector of the variable at `v` after its `k`-th mutation in the sub-triangle
/// sequence; `k = 0` gives `e*_v`.
pub fn gvector_closed_form(n: usize, shift: Shift, v: TriIndex, k: usize) -> Result<IntVector> {
    if v.n() != n {
        return Err(Error::NotInH { v, n });
    }
    shift
        .size(n)
        .filter(|&m| m >= 3)
        .ok_or(Error::Invalid(format!(
            "shift {shift:?} too large for n={n}"
        )))?;
    if !shift.contains(v) || k > v.a - shift.a3 {
        return Err(Error::Invalid(format!(
            "({v}, {k}) is outside the sub-triangle regime"
        )));
    }
    if k == 0 {
        return Ok(IntVector::unit(n, v));
    }
    let TriIndex { a, b, c } = v;
    let Shift { b1, c2, .. } = shift;
    let e = |a: usize, b: usize, c: usize| IntVector::unit(n, TriIndex::new(a, b, c));
    Ok(e(n - b1 - c2 - k, b1, c2 + k)
        .add(&e(n - b - c2 - k, b + k, c2))
        .add(&e(a - k, b, c + k))
        .sub(&e(n - b - c2 - k, b, c2 + k)))
}

/// Closed form on the full unfrozen triangle.
pub fn gvector_along_mgs(n: usize, v: TriIndex, k: usize) -> Result<IntVector> {
    gvector_closed_form(n, Shift::default(), v, k)
}

/// `(v, k, g)` after every step of the sub-triangle sequence, tracked by the framed engine.
pub fn tracked_gvectors(n: usize, shift: Shift) -> Result<Vec<(TriIndex, usize, IntVector)>> {
    let seq = subtriangle_sequence(n, shift)?;
    let mut fs = FramedSeed::initial(n)?;
    let mut counts = std::collections::BTreeMap::new();
    let mut out = Vec::with_capacity(seq.len());
    for &v in &seq.steps {
        fs = fs.mutate(v)?;
        let k = counts.entry(v).or_insert(0usize);
        *k += 1;
        out.push((v, *k, fs.g_vector(v).clone()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GmgsCertificate {
    pub n: usize,
    pub status: &'static str,
    pub cases: usize,
    pub mismatches: Vec<String>,
}

impl GmgsCertificate {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Closed form against engine tracking for every sub-triangle of size at least 3.
pub fn check_gmgs(n: usize) -> Result<GmgsCertificate> {
    let mut cases = 0;
    let mut mismatches = Vec::new();
    for a3 in 0..n {
        for b1 in 0..n {
            for c2 in 0..n {
                let shift = Shift { a3, b1, c2 };
                if shift.size(n).is_none_or(|m| m < 3) {
                    continue;
                }
                for (v, k, g) in tracked_gvectors(n, shift)? {
                    cases += 1;
                    let want = gvector_closed_form(n, shift, v, k)?;
                    if want != g {
                        mismatches.push(format!(
                            "shift ({a3},{b1},{c2}) {v} k={k}: tracked {g}, formula {want}"
                        ));
                    }
                }
            }
        }
    }
    Ok(GmgsCertificate {
        n,
        status: if mismatches.is_empty() {
            "pass"
        } else {
            "fail"
        },
        cases,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: usize, b: usize, c: usize) -> TriIndex {
        TriIndex::new(a, b, c)
    }

    #[test]
    fn full_triangle_specialization() {
        let n = 5;
        for v in crate::lattice::enumerate_h(n).unwrap().unfrozen() {
            let g = gvector_along_mgs(n, v, v.a).unwrap();
            let e = |x: TriIndex| IntVector::unit(n, x);
            let want = e(t(n - v.a, 0, v.a))
                .add(&e(t(v.c, n - v.c, 0)))
                .add(&e(t(0, v.b, n - v.b)))
                .sub(&e(t(v.c, v.b, v.a)));
            assert_eq!(g, want);
        }
        assert_eq!(
            gvector_along_mgs(4, t(2, 1, 1), 0).unwrap(),
            IntVector::unit(4, t(2, 1, 1))
        );
        assert!(gvector_along_mgs(4, t(2, 1, 1), 3).is_err());
    }

    #[test]
    fn engine_agrees_small() {
        for n in 3..=4 {
            let c = check_gmgs(n).unwrap();
            assert!(c.passed(), "{:?}", c.mismatches);
        }
    }
}
