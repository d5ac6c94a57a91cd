use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{xi_cone, Cone, ConeKind, XiVariant};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_h, IntVector, TriIndex};
use crate::linalg::{dot_q, extreme_rays, nullspace, primitive, rank, solve, to_q, Q};

/// Largest effective dimension accepted by ray enumeration.
pub const MAX_RAY_DIMENSION: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RayKind {
    /// `e*_v` for a non-corner frozen `v`.
    FrozenG,
    /// `e*_v` for an unfrozen `v`.
    InitialG,
    Trivalent,
    Overlaid,
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayVector {
    pub vector: IntVector,
    pub kind: RayKind,
}

/// Extreme rays modulo the lineality space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RaySet {
    pub effective_dimension: usize,
    pub lineality: Vec<IntVector>,
    pub rays: Vec<RayVector>,
}

fn rows_of(vs: &[IntVector]) -> Vec<Vec<i64>> {
    vs.iter().map(|v| v.as_slice().to_vec()).collect()
}

fn to_int_vector(n: usize, v: &[BigInt]) -> Result<IntVector> {
    let data: Option<Vec<i64>> = v.iter().map(ToPrimitive::to_i64).collect();
    IntVector::from_dense(n, data.ok_or(Error::Overflow("ray entry"))?)
}

fn homogeneous_equalities(cone: &Cone) -> Result<Vec<IntVector>> {
    let mut eqs = cone.ambient_equalities();
    for e in &cone.equalities {
        if e.rhs != 0 {
            return Err(Error::Invalid(
                "ray enumeration needs homogeneous equalities".into(),
            ));
        }
        eqs.push(e.coeffs.clone());
    }
    Ok(eqs)
}

fn lineality_of(cone: &Cone) -> Result<Vec<IntVector>> {
    let mut rows = rows_of(&homogeneous_equalities(cone)?);
    rows.extend(
        cone.inequalities
            .iter()
            .map(|i| i.coeffs.as_slice().to_vec()),
    );
    let q_rows: Vec<Vec<Q>> = rows.iter().map(|r| to_q(r)).collect();
    nullspace(&q_rows, cone.dim())
        .iter()
        .map(|v| to_int_vector(cone.index_n(), v))
        .collect()
}

/// Dimension of the cone's span after removing equalities and lineality.
pub fn effective_dimension(cone: &Cone) -> Result<usize> {
    let eqs = rows_of(&homogeneous_equalities(cone)?);
    let r = rank(&eqs.iter().map(|r| to_q(r)).collect::<Vec<_>>());
    Ok(cone.dim() - r - lineality_of(cone)?.len())
}

/// Double description of the cone's extreme rays, guarded by [`MAX_RAY_DIMENSION`].
/// Rays of `Ξ` are tagged against the generated families; other cones are left unclassified.
pub fn enumerate_rays(cone: &Cone) -> Result<RaySet> {
    let eff = effective_dimension(cone)?;
    if eff > MAX_RAY_DIMENSION {
        return Err(Error::Guard(format!(
            "effective dimension {eff} exceeds {MAX_RAY_DIMENSION}"
        )));
    }
    let m = cone.index_n();
    let ineqs: Vec<Vec<i64>> = cone
        .inequalities
        .iter()
        .map(|i| i.coeffs.as_slice().to_vec())
        .collect();
    let eqs = rows_of(&homogeneous_equalities(cone)?);
    let dd = extreme_rays(&ineqs, &eqs, cone.dim());
    let lineality: Vec<IntVector> = dd
        .lineality
        .iter()
        .map(|v| to_int_vector(m, v))
        .collect::<Result<_>>()?;
    let tags: BTreeMap<IntVector, RayKind> = if cone.kind == ConeKind::Xi && cone.n <= 4 {
        generated_rays(cone.n)?
            .into_iter()
            .map(|r| (modulo_lineality(&r.vector, &lineality), r.kind))
            .rev()
            .collect()
    } else {
        BTreeMap::new()
    };
    let mut rays = Vec::new();
    for v in &dd.rays {
        let vector = to_int_vector(m, v)?;
        let kind = tags.get(&vector).copied().unwrap_or(RayKind::Unclassified);
        rays.push(RayVector { vector, kind });
    }
    Ok(RaySet {
        effective_dimension: eff,
        lineality,
        rays,
    })
}

/// Primitive representative of `x` orthogonal to the lineality space.
fn modulo_lineality(x: &IntVector, lineality: &[IntVector]) -> IntVector {
    let xq = to_q(x.as_slice());
    let l: Vec<Vec<Q>> = lineality.iter().map(|v| to_q(v.as_slice())).collect();
    let gram: Vec<Vec<Q>> = l
        .iter()
        .map(|a| l.iter().map(|b| dot_q(a, b)).collect())
        .collect();
    let rhs: Vec<Q> = l.iter().map(|a| dot_q(a, &xq)).collect();
    let coeffs = if l.is_empty() {
        Vec::new()
    } else {
        solve(&gram, &rhs).expect("independent lineality basis")
    };
    let mut out = xq;
    for (c, a) in coeffs.iter().zip(&l) {
        for (o, y) in out.iter_mut().zip(a) {
            *o -= c * y;
        }
    }
    let p = primitive(&out);
    to_int_vector(x.n(), &p).expect("small entries")
}

/// Result of the active-constraint rank test at a point of a cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCheck {
    pub member: bool,
    pub active_rank: usize,
    pub target: usize,
    pub is_edge: bool,
}

fn edge_check_with(cone: &Cone, lineality: &[IntVector], x: &IntVector) -> Result<EdgeCheck> {
    let member = cone.contains(x);
    let mut rows: Vec<Vec<Q>> = homogeneous_equalities(cone)?
        .iter()
        .map(|e| to_q(e.as_slice()))
        .collect();
    rows.extend(lineality.iter().map(|v| to_q(v.as_slice())));
    rows.extend(
        cone.inequalities
            .iter()
            .filter(|i| i.coeffs.dot(x) == 0)
            .map(|i| to_q(i.coeffs.as_slice())),
    );
    let active_rank = rank(&rows);
    let target = cone.dim() - 1;
    Ok(EdgeCheck {
        member,
        active_rank,
        target,
        is_edge: member && !x.is_zero() && active_rank == target,
    })
}

/// `x` spans an edge iff it lies in the cone and the active inequalities together with the
/// equalities and the lineality space have rank one less than the ambient dimension.
pub fn edge_certificate(cone: &Cone, x: &IntVector) -> Result<EdgeCheck> {
    edge_check_with(cone, &lineality_of(cone)?, x)
}

/// The three segments through an interior `v`, each running from a frozen end up to `v`.
pub fn trivalent_segments(n: usize, v: TriIndex) -> Result<[Vec<TriIndex>; 3]> {
    if v.n() != n {
        return Err(Error::NotInH { v, n });
    }
    if v.is_frozen() {
        return Err(Error::FrozenVertex(v));
    }
    let TriIndex { a, b, c } = v;
    Ok([
        (0..c).map(|j| TriIndex::new(a, n - a - j, j)).collect(),
        (0..a).map(|j| TriIndex::new(j, b, n - b - j)).collect(),
        (0..b).map(|j| TriIndex::new(n - c - j, j, c)).collect(),
    ])
}

/// `-1` at `v`, `+1` at one pick on each of its three segments.
pub fn trivalent_vector(n: usize, v: TriIndex, picks: [TriIndex; 3]) -> Result<RayVector> {
    let segments = trivalent_segments(n, v)?;
    for (p, seg) in picks.iter().zip(&segments) {
        if !seg.contains(p) {
            return Err(Error::Invalid(format!(
                "pick {p} is not on its segment through {v}"
            )));
        }
    }
    let mut x = IntVector::unit(n, v).neg();
    for p in picks {
        x.add_at(p, 1);
    }
    let xi = xi_cone(n, XiVariant::Full)?;
    let bad = xi.violations(&x);
    if !bad.is_empty() {
        return Err(Error::Invalid(format!(
            "trivalent vector at {v} violates {}",
            bad.join(", ")
        )));
    }
    Ok(RayVector {
        vector: x,
        kind: RayKind::Trivalent,
    })
}

fn pick_choices(n: usize, v: TriIndex) -> Vec<[TriIndex; 3]> {
    let [s1, s2, s3] = trivalent_segments(n, v).expect("interior");
    let mut out = Vec::new();
    for &p in &s1 {
        for &q in &s2 {
            for &r in &s3 {
                out.push([p, q, r]);
            }
        }
    }
    out
}

/// Candidate generators of `Ξ`: frozen and initial g-vectors, all trivalent vectors, and the
/// overlays of two or more trivalent vertices that share a pick or pick another centre.
/// Overlays are kept only when they pass the edge certificate. Exhaustive for `n <= 4`.
pub fn generated_rays(n: usize) -> Result<Vec<RayVector>> {
    if n > 4 {
        return Err(Error::Guard(format!(
            "overlay generation is exhaustive only for n <= 4, got {n}"
        )));
    }
    let h = enumerate_h(n)?;
    let xi = xi_cone(n, XiVariant::Full)?;
    let lineality = lineality_of(&xi)?;
    let mut out = Vec::new();
    for v in h.frozen().filter(|v| !v.is_corner()) {
        out.push(RayVector {
            vector: IntVector::unit(n, v),
            kind: RayKind::FrozenG,
        });
    }
    let interior: Vec<TriIndex> = h.unfrozen().collect();
    for &v in &interior {
        out.push(RayVector {
            vector: IntVector::unit(n, v),
            kind: RayKind::InitialG,
        });
    }
    for &v in &interior {
        for picks in pick_choices(n, v) {
            out.push(trivalent_vector(n, v, picks)?);
        }
    }

    let mut seen: BTreeSet<IntVector> = out
        .iter()
        .map(|r| modulo_lineality(&r.vector, &lineality))
        .collect();
    for mask in 1usize..(1 << interior.len()) {
        if mask.count_ones() < 2 {
            continue;
        }
        let centres: Vec<TriIndex> = (0..interior.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| interior[i])
            .collect();
        let choices: Vec<Vec<[TriIndex; 3]>> =
            centres.iter().map(|&v| pick_choices(n, v)).collect();
        let mut idx = vec![0usize; centres.len()];
        loop {
            let picks: BTreeSet<TriIndex> =
                idx.iter().zip(&choices).flat_map(|(&i, c)| c[i]).collect();
            let merged =
                picks.len() < 3 * centres.len() || picks.iter().any(|p| centres.contains(p));
            if merged {
                let mut x = IntVector::zeros(n);
                for &v in &centres {
                    x.add_at(v, -1);
                }
                for &p in &picks {
                    x.add_at(p, 1);
                }
                let key = modulo_lineality(&x, &lineality);
                if !seen.contains(&key) && edge_check_with(&xi, &lineality, &x)?.is_edge {
                    seen.insert(key);
                    out.push(RayVector {
                        vector: x,
                        kind: RayKind::Overlaid,
                    });
                }
            }
            // odometer over the pick choices
            let mut j = 0;
            while j < idx.len() {
                idx[j] += 1;
                if idx[j] < choices[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == idx.len() {
                break;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayClassification {
    pub n: usize,
    pub status: &'static str,
    pub dd_rays: usize,
    pub generated: usize,
    pub by_kind: BTreeMap<RayKind, usize>,
    pub unmatched_dd: Vec<IntVector>,
    pub unmatched_generated: Vec<IntVector>,
    pub edge_failures: Vec<IntVector>,
}

impl RayClassification {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Compares the double-description rays of `Ξ` modulo lineality with the generated families.
pub fn classify_rays(n: usize) -> Result<RayClassification> {
    let xi = xi_cone(n, XiVariant::Full)?;
    let set = enumerate_rays(&xi)?;
    let generated = generated_rays(n)?;
    let mut edge_failures = Vec::new();
    let mut gen_keys = BTreeSet::new();
    let mut by_kind = BTreeMap::new();
    for r in &generated {
        if !edge_check_with(&xi, &set.lineality, &r.vector)?.is_edge {
            edge_failures.push(r.vector.clone());
        }
        gen_keys.insert(modulo_lineality(&r.vector, &set.lineality));
        *by_kind.entry(r.kind).or_insert(0) += 1;
    }
    let dd_keys: BTreeSet<IntVector> = set.rays.iter().map(|r| r.vector.clone()).collect();
    let unmatched_dd: Vec<IntVector> = dd_keys.difference(&gen_keys).cloned().collect();
    let unmatched_generated: Vec<IntVector> = gen_keys.difference(&dd_keys).cloned().collect();
    let ok = unmatched_dd.is_empty() && unmatched_generated.is_empty() && edge_failures.is_empty();
    Ok(RayClassification {
        n,
        status: if ok { "pass" } else { "fail" },
        dd_rays: dd_keys.len(),
        generated: gen_keys.len(),
        by_kind,
        unmatched_dd,
        unmatched_generated,
        edge_failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialCertificate {
    pub n: usize,
    pub status: &'static str,
    pub effective_dimension: usize,
    pub lineality_dimension: usize,
    pub expected_rays: usize,
    pub rays: Vec<IntVector>,
    /// Rank of the rays; equal to their number when they are independent.
    pub ray_rank: usize,
}

impl SimplicialCertificate {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// `Ξ_U` is simplicial of dimension `C(n, 2)`: that many independent extreme rays span it.
pub fn check_xi_u(n: usize) -> Result<SimplicialCertificate> {
    let cone = xi_cone(n, XiVariant::U)?;
    let set = enumerate_rays(&cone)?;
    let rays: Vec<IntVector> = set.rays.into_iter().map(|r| r.vector).collect();
    let ray_rank = rank(&rays.iter().map(|r| to_q(r.as_slice())).collect::<Vec<_>>());
    let expected_rays = n * (n - 1) / 2;
    let ok = set.effective_dimension == expected_rays
        && rays.len() == expected_rays
        && ray_rank == rays.len();
    Ok(SimplicialCertificate {
        n,
        status: if ok { "pass" } else { "fail" },
        effective_dimension: set.effective_dimension,
        lineality_dimension: set.lineality.len(),
        expected_rays,
        rays,
        ray_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::TropicalInequality;

    fn t(a: usize, b: usize, c: usize) -> TriIndex {
        TriIndex::new(a, b, c)
    }

    #[test]
    fn orthant_rays() {
        let ineqs = enumerate_h(1)
            .unwrap()
            .iter()
            .map(|&v| TropicalInequality {
                label: format!("{v}"),
                coeffs: IntVector::unit(1, v),
            })
            .collect();
        let cone = Cone::new(1, super::super::Ambient::FullH, ineqs, Vec::new()).unwrap();
        let set = enumerate_rays(&cone).unwrap();
        assert_eq!(set.rays.len(), 3);
        assert!(set
            .rays
            .iter()
            .all(|r| r.vector.sum() == 1 && r.kind == RayKind::Unclassified));
    }

    #[test]
    fn pictured_trivalent() {
        let r = trivalent_vector(4, t(2, 1, 1), [t(2, 2, 0), t(0, 1, 3), t(3, 0, 1)]).unwrap();
        assert_eq!(r.vector.sum(), 2);
        let want = IntVector::from_entries(
            4,
            &[
                (t(2, 1, 1), -1),
                (t(2, 2, 0), 1),
                (t(0, 1, 3), 1),
                (t(3, 0, 1), 1),
            ],
        );
        assert_eq!(r.vector, want);
        let xi = xi_cone(4, XiVariant::Full).unwrap();
        assert!(edge_certificate(&xi, &r.vector).unwrap().is_edge);
        assert!(trivalent_vector(4, t(2, 1, 1), [t(1, 3, 0), t(0, 1, 3), t(3, 0, 1)]).is_err());
    }

    #[test]
    fn guard_refuses_large() {
        let xi = xi_cone(6, XiVariant::Full).unwrap();
        assert!(matches!(enumerate_rays(&xi), Err(Error::Guard(_))));
    }

    #[test]
    fn xi_u_simplicial() {
        for n in 3..=4 {
            let c = check_xi_u(n).unwrap();
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn classification_n3() {
        let c = classify_rays(3).unwrap();
        assert!(c.passed(), "{c:?}");
    }
}
