//! Weight map, integer points of weight fibers, bordered hives and Gelfand-Tsetlin patterns,
//! and the representation-theoretic oracles that certify their counts.

mod enumerate;
mod gt;
mod lr;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cones::{rhombi, xi_cone, Cone, PStarMap, XiVariant};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_h, weight_covector, Axis, IntVector, TriIndex};

pub use crate::lattice::weight_of;
pub use enumerate::{Bounds, LinearSystem};
pub use gt::{gt_patterns, GtPattern};
pub use lr::{count_gt, dual, invariant_dimension, is_dominant, lr_coefficient, weyl_dimension};

/// Three length-`n` weights.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeightTriple {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    pub gamma: Vec<i64>,
}

impl WeightTriple {
    pub fn new(alpha: Vec<i64>, beta: Vec<i64>, gamma: Vec<i64>) -> Result<Self> {
        let n = alpha.len();
        if n == 0 || beta.len() != n || gamma.len() != n {
            return Err(Error::Dimension(format!(
                "weights of lengths {}, {}, {}",
                alpha.len(),
                beta.len(),
                gamma.len()
            )));
        }
        Ok(WeightTriple { alpha, beta, gamma })
    }

    /// The all-zero triple.
    pub fn zero(n: usize) -> Self {
        WeightTriple {
            alpha: vec![0; n],
            beta: vec![0; n],
            gamma: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    /// `|α| + |β| + |γ|`.
    pub fn total(&self) -> i64 {
        self.alpha.iter().chain(&self.beta).chain(&self.gamma).sum()
    }

    pub fn is_dominant(&self) -> bool {
        is_dominant(&self.alpha) && is_dominant(&self.beta) && is_dominant(&self.gamma)
    }

    pub fn check_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::Invalid(format!(
                "weights {self} are not all dominant"
            )))
        }
    }

    /// `(β, γ, α)`.
    pub fn cycled(&self) -> Self {
        WeightTriple {
            alpha: self.beta.clone(),
            beta: self.gamma.clone(),
            gamma: self.alpha.clone(),
        }
    }
}

impl std::fmt::Display for WeightTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "α={:?} β={:?} γ={:?}", self.alpha, self.beta, self.gamma)
    }
}

/// Parses comma-separated signed integers.
pub fn parse_weight(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad weight entry {t:?} in {s:?}")))
        })
        .collect()
}

/// Frozen entries of a hive with the given border weights and top entry zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HiveBorder {
    pub n: usize,
    pub entries: Vec<(TriIndex, i64)>,
}

impl HiveBorder {
    /// Walks `α` from `(n,0,0)` to `(0,n,0)`, `β` to `(0,0,n)` and `γ` back to `(n,0,0)`:
    /// `α_i = x_(n-i,i,0) - x_(n-i+1,i-1,0)`, `β_i = x_(0,n-i,i) - x_(0,n-i+1,i-1)`,
    /// `γ_i = x_(i,0,n-i) - x_(i-1,0,n-i+1)`.
    pub fn from_weights(w: &WeightTriple) -> Result<Self> {
        if w.total() != 0 {
            return Err(Error::Invalid(format!("border of {w} does not close up")));
        }
        let n = w.n();
        let mut entries = vec![(TriIndex::new(n, 0, 0), 0)];
        let mut x = 0;
        for i in 1..=n {
            x += w.alpha[i - 1];
            entries.push((TriIndex::new(n - i, i, 0), x));
        }
        for i in 1..=n {
            x += w.beta[i - 1];
            entries.push((TriIndex::new(0, n - i, i), x));
        }
        for i in 1..n {
            x += w.gamma[i - 1];
            entries.push((TriIndex::new(i, 0, n - i), x));
        }
        entries.sort();
        Ok(HiveBorder { n, entries })
    }

    pub fn get(&self, v: TriIndex) -> Option<i64> {
        self.entries.iter().find(|(u, _)| *u == v).map(|&(_, x)| x)
    }
}

/// Border weights read off a hive.
pub fn border_weights(h: &IntVector) -> WeightTriple {
    let n = h.n();
    let x = |a, b, c| h.get(TriIndex::new(a, b, c));
    WeightTriple {
        alpha: (1..=n)
            .map(|i| x(n - i, i, 0) - x(n - i + 1, i - 1, 0))
            .collect(),
        beta: (1..=n)
            .map(|i| x(0, n - i, i) - x(0, n - i + 1, i - 1))
            .collect(),
        gamma: (1..=n)
            .map(|i| x(i, 0, n - i) - x(i - 1, 0, n - i + 1))
            .collect(),
    }
}

/// Rhombus inequalities on the interior entries, with the border substituted.
pub fn hive_system(w: &WeightTriple) -> Result<(LinearSystem, Vec<TriIndex>)> {
    let border = HiveBorder::from_weights(w)?;
    let n = w.n();
    let h = enumerate_h(n)?;
    let interior: Vec<TriIndex> = h.unfrozen().collect();
    let mut sys = LinearSystem::new(interior.len());
    for r in rhombi(n)? {
        let cov = r.covector();
        let mut row = vec![0; interior.len()];
        let mut constant = 0;
        for (v, c) in cov.support() {
            match interior.iter().position(|&u| u == v) {
                Some(j) => row[j] = c,
                None => constant += c * border.get(v).expect("frozen entry"),
            }
        }
        sys.ge.push((row, -constant));
    }
    Ok((sys, interior))
}

/// All integral hives with the given border, as vectors over `H_n`.
pub fn hives(w: &WeightTriple) -> Result<Vec<IntVector>> {
    if w.total() != 0 {
        return Ok(Vec::new());
    }
    let border = HiveBorder::from_weights(w)?;
    let (sys, interior) = hive_system(w)?;
    sys.solutions()?
        .into_iter()
        .map(|x| {
            let mut h = IntVector::zeros(w.n());
            for &(v, b) in &border.entries {
                h.set(v, b);
            }
            for (v, val) in interior.iter().zip(x) {
                h.set(*v, val);
            }
            Ok(h)
        })
        .collect()
}

/// Number of integral hives with border `(α, β, γ)`; zero when the border does not close up.
pub fn count_hives(w: &WeightTriple) -> Result<u64> {
    Ok(hives(w)?.len() as u64)
}

/// How border weights `(α, β, γ)` become the `(X, Y, Z)` weights of a fiber of `Ξ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightConvention {
    /// `(α, β, γ)`
    Direct,
    /// `(γ, α, β)`
    Rotated,
    /// `(β, γ, α)`
    RotatedInverse,
    /// `(-w0 α, -w0 β, -w0 γ)`
    TwistAll,
    /// `(-w0 α, β, γ)`
    TwistAlpha,
    /// `(α, -w0 β, γ)`
    TwistBeta,
    /// `(α, β, -w0 γ)`
    TwistGamma,
}

impl WeightConvention {
    pub const ALL: [WeightConvention; 7] = [
        WeightConvention::Direct,
        WeightConvention::Rotated,
        WeightConvention::RotatedInverse,
        WeightConvention::TwistAll,
        WeightConvention::TwistAlpha,
        WeightConvention::TwistBeta,
        WeightConvention::TwistGamma,
    ];

    /// Target `(X, Y, Z)`.
    pub fn targets(&self, w: &WeightTriple) -> [Vec<i64>; 3] {
        let (a, b, c) = (w.alpha.clone(), w.beta.clone(), w.gamma.clone());
        match self {
            WeightConvention::Direct => [a, b, c],
            WeightConvention::Rotated => [c, a, b],
            WeightConvention::RotatedInverse => [b, c, a],
            WeightConvention::TwistAll => [dual(&a), dual(&b), dual(&c)],
            WeightConvention::TwistAlpha => [dual(&a), b, c],
            WeightConvention::TwistBeta => [a, dual(&b), c],
            WeightConvention::TwistGamma => [a, b, dual(&c)],
        }
    }
}

/// The convention fixed by [`calibrate`].
pub const CALIBRATED: WeightConvention = WeightConvention::Rotated;

/// Integer points of `cone` with weights `targets`.
pub fn fiber_system(cone: &Cone, targets: &[Vec<i64>; 3]) -> Result<LinearSystem> {
    let n = cone.index_n();
    if targets.iter().any(|t| t.len() != n) {
        return Err(Error::Dimension(format!("weights must have length {n}")));
    }
    let mut sys = LinearSystem::new(cone.dim());
    for i in &cone.inequalities {
        sys.ge.push((i.coeffs.as_slice().to_vec(), 0));
    }
    for e in cone.ambient_equalities() {
        sys.eq.push((e.as_slice().to_vec(), 0));
    }
    for e in &cone.equalities {
        sys.eq.push((e.coeffs.as_slice().to_vec(), e.rhs));
    }
    for (axis, t) in Axis::ALL.iter().zip(targets) {
        for i in 1..=n {
            sys.eq
                .push((weight_covector(n, *axis, i).as_slice().to_vec(), t[i - 1]));
        }
    }
    Ok(sys)
}

pub fn fiber_points_with(
    w: &WeightTriple,
    cone: &Cone,
    convention: WeightConvention,
) -> Result<Vec<IntVector>> {
    let sys = fiber_system(cone, &convention.targets(w))?;
    let n = cone.index_n();
    sys.solutions()?
        .into_iter()
        .map(|x| IntVector::from_dense(n, x))
        .collect()
}

/// Integer points of `cone` in the weight fiber of `w`, under the calibrated convention.
pub fn fiber_points(w: &WeightTriple, cone: &Cone) -> Result<Vec<IntVector>> {
    fiber_points_with(w, cone, CALIBRATED)
}

/// The three counts for one weight triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub weights: WeightTriple,
    pub hive_count: u64,
    pub lr_oracle: u64,
    pub fiber_count: u64,
    pub agree: bool,
}

/// Hive count, tableau oracle and fiber count of `Ξ` for dominant `w`.
pub fn count_all(w: &WeightTriple) -> Result<CountReport> {
    let hive_count = count_hives(w)?;
    let lr_oracle = invariant_dimension(w)?;
    let fiber_count = if w.total() == 0 {
        fiber_points(w, &xi_cone(w.n(), XiVariant::Full)?)?.len() as u64
    } else {
        0
    };
    Ok(CountReport {
        weights: w.clone(),
        hive_count,
        lr_oracle,
        fiber_count,
        agree: hive_count == lr_oracle && lr_oracle == fiber_count,
    })
}

fn dominant_weights(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, max: i64, lo: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in (lo..=max).rev() {
            cur.push(x);
            rec(n, x, lo, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, hi, lo, &mut Vec::new(), &mut out);
    out
}

/// All dominant triples with entries in `[lo, hi]` and `|α| + |β| + |γ| = 0`.
pub fn dominant_grid(n: usize, lo: i64, hi: i64) -> Vec<WeightTriple> {
    let ws = dominant_weights(n, lo, hi);
    let mut out = Vec::new();
    for a in &ws {
        for b in &ws {
            for c in &ws {
                let t = WeightTriple {
                    alpha: a.clone(),
                    beta: b.clone(),
                    gamma: c.clone(),
                };
                if t.total() == 0 {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Asymmetric triples that separate the candidate conventions.
pub fn calibration_suite() -> Vec<WeightTriple> {
    let w = |a: &[i64], b: &[i64], c: &[i64]| WeightTriple {
        alpha: a.to_vec(),
        beta: b.to_vec(),
        gamma: c.to_vec(),
    };
    vec![
        w(&[2, 0], &[1, 0], &[-1, -2]),
        w(&[1, -1], &[2, 0], &[0, -2]),
        w(&[2, 1, 0], &[1, 0, 0], &[-1, -1, -2]),
        w(&[3, 1, 0], &[2, 0, 0], &[-1, -2, -3]),
        w(&[2, 0, 0], &[1, 1, 0], &[-1, -1, -2]),
        w(&[1, 0, -1], &[2, 0, 0], &[0, -1, -1]),
        w(&[2, 1, 0, 0], &[1, 1, 0, 0], &[-1, -1, -1, -2]),
        w(&[2, 1, 1, 0], &[1, 0, 0, 0], &[-1, -1, -1, -2]),
    ]
}

/// Twenty fixed `n = 4` triples: the `n = 4` calibration cases and eighteen with multiplicity above one.
pub fn spot_triples_n4() -> Vec<WeightTriple> {
    let w = |a: &[i64], b: &[i64], c: &[i64]| WeightTriple {
        alpha: a.to_vec(),
        beta: b.to_vec(),
        gamma: c.to_vec(),
    };
    let mut out: Vec<WeightTriple> = calibration_suite()
        .into_iter()
        .filter(|t| t.n() == 4)
        .collect();
    out.extend([
        w(&[2, 2, 1, 0], &[1, 0, 0, -1], &[0, -1, -2, -2]),
        w(&[2, 2, 0, -1], &[1, 0, -1, -1], &[1, 0, -1, -2]),
        w(&[2, 2, -1, -2], &[1, 1, -1, -2], &[2, 1, -1, -2]),
        w(&[2, 1, 1, -2], &[1, 0, -1, -2], &[2, 0, 0, -2]),
        w(&[2, 1, 0, -1], &[1, 0, 0, -1], &[1, 0, -1, -2]),
        w(&[2, 1, 0, -2], &[2, 0, -1, -2], &[1, 1, -1, -1]),
        w(&[2, 1, -1, -1], &[1, 0, 0, -2], &[1, 1, 0, -2]),
        w(&[2, 1, -1, -2], &[1, 1, 0, -2], &[1, 1, 0, -2]),
        w(&[2, 0, 0, -1], &[2, 0, -2, -2], &[2, 2, -1, -2]),
        w(&[2, 0, 0, -2], &[1, 0, -1, -1], &[2, 1, 0, -2]),
        w(&[2, 0, -1, -2], &[2, 1, 0, -2], &[2, 0, -1, -1]),
        w(&[2, 0, -2, -2], &[2, 1, -1, -1], &[2, 1, 0, -2]),
        w(&[1, 1, 0, -1], &[2, 1, -1, -2], &[2, 1, -2, -2]),
        w(&[1, 1, -1, -2], &[2, 1, 1, -1], &[1, 0, -1, -2]),
        w(&[1, 0, 0, -2], &[2, 2, 1, -1], &[2, -1, -2, -2]),
        w(&[1, 0, -1, -1], &[1, 1, 0, -2], &[2, 0, 0, -1]),
        w(&[1, -1, -1, -2], &[2, 0, 0, -1], &[2, 1, 1, -2]),
        w(&[3, 2, 1, 0], &[3, 2, 1, 0], &[-2, -3, -3, -4]),
    ]);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConventionResult {
    pub convention: WeightConvention,
    /// Fiber counts equal the tableau oracle on every calibration triple.
    pub counts_match: bool,
    /// Fibers equal the hives carried across by the transpose of `p*`, point for point.
    pub points_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CalibrationReport {
    pub results: Vec<ConventionResult>,
    pub selected: Option<WeightConvention>,
}

/// Runs every candidate convention on the calibration suite. The selected convention is the
/// unique one whose fibers coincide with the transported hives.
pub fn calibrate(p: &dyn Fn(usize) -> Result<PStarMap>) -> Result<CalibrationReport> {
    let suite = calibration_suite();
    let mut results = Vec::new();
    for convention in WeightConvention::ALL {
        let mut counts_match = true;
        let mut points_match = true;
        for w in &suite {
            let xi = xi_cone(w.n(), XiVariant::Full)?;
            let fiber: BTreeSet<IntVector> =
                fiber_points_with(w, &xi, convention)?.into_iter().collect();
            let pm = p(w.n())?;
            let transported: BTreeSet<IntVector> =
                hives(w)?.iter().map(|h| pm.transpose_apply(h)).collect();
            counts_match &= fiber.len() as u64 == invariant_dimension(w)?;
            points_match &= fiber == transported;
        }
        results.push(ConventionResult {
            convention,
            counts_match,
            points_match,
        });
    }
    let pointwise: Vec<WeightConvention> = results
        .iter()
        .filter(|r| r.points_match)
        .map(|r| r.convention)
        .collect();
    let selected = (pointwise.len() == 1).then(|| pointwise[0]);
    Ok(CalibrationReport { results, selected })
}

/// Image of the initial variable at `v` under the maximal green sequence, as a g-vector:
/// `e*_(n-a,0,a) + e*_(c,n-c,0) + e*_(0,b,n-b) - e*_(c,b,a)`.
pub fn mgs_image_gvector(n: usize, v: TriIndex) -> IntVector {
    let TriIndex { a, b, c } = v;
    let e = |x: TriIndex| IntVector::unit(n, x);
    e(TriIndex::new(n - a, 0, a))
        .add(&e(TriIndex::new(c, n - c, 0)))
        .add(&e(TriIndex::new(0, b, n - b)))
        .sub(&e(TriIndex::new(c, b, a)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionCertificate {
    pub n: usize,
    pub status: &'static str,
    pub variables: usize,
    pub failures: Vec<String>,
}

impl InvolutionCertificate {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

fn differs_by_constant(x: &[i64], y: &[i64]) -> bool {
    let d: Vec<i64> = x.iter().zip(y).map(|(p, q)| p - q).collect();
    d.windows(2).all(|w| w[0] == w[1])
}

/// For every initial variable, the weight `(X', Y', Z')` of its image agrees with
/// `(-w0 X, -w0 Z, -w0 Y)` up to multiples of `(1, ..., 1)`.
pub fn mgs_weight_involution_check(n: usize) -> Result<InvolutionCertificate> {
    if n < 3 {
        return Err(Error::InvalidRank { n, min: 3 });
    }
    let h = enumerate_h(n)?;
    let mut failures = Vec::new();
    for &v in h.iter() {
        let g = mgs_image_gvector(n, v);
        if !v.is_frozen() && crate::cones::gvector_along_mgs(n, v, v.a)? != g {
            failures.push(format!(
                "{v}: closed form disagrees with the full-triangle specialization"
            ));
        }
        let [x, y, z] = weight_of(&IntVector::unit(n, v));
        let [x2, y2, z2] = weight_of(&g);
        let ok = differs_by_constant(&x2, &dual(&x))
            && differs_by_constant(&y2, &dual(&z))
            && differs_by_constant(&z2, &dual(&y));
        if !ok {
            failures.push(format!("{v}: weights {x2:?} {y2:?} {z2:?}"));
        }
    }
    Ok(InvolutionCertificate {
        n,
        status: if failures.is_empty() { "pass" } else { "fail" },
        variables: h.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::pstar;

    fn w(a: &[i64], b: &[i64], c: &[i64]) -> WeightTriple {
        WeightTriple::new(a.to_vec(), b.to_vec(), c.to_vec()).unwrap()
    }

    #[test]
    fn border_round_trip() {
        let t = w(&[2, 1, 0], &[2, 1, 0], &[-1, -2, -3]);
        let b = HiveBorder::from_weights(&t).unwrap();
        assert_eq!(b.entries.len(), 9);
        assert_eq!(b.get(TriIndex::new(3, 0, 0)), Some(0));
        for h in hives(&t).unwrap() {
            assert_eq!(border_weights(&h), t);
        }
    }

    #[test]
    fn spec_counts() {
        assert_eq!(count_hives(&WeightTriple::zero(3)).unwrap(), 1);
        assert_eq!(count_hives(&w(&[1, 0], &[1, 0], &[-1, -1])).unwrap(), 1);
        assert_eq!(
            count_hives(&w(&[2, 1, 0], &[2, 1, 0], &[-1, -2, -3])).unwrap(),
            2
        );
        let r = count_all(&w(&[2, 1, 0], &[2, 1, 0], &[-1, -2, -3])).unwrap();
        assert!(r.agree && r.fiber_count == 2);
        let xi = xi_cone(3, XiVariant::Full).unwrap();
        assert_eq!(
            fiber_points(&WeightTriple::zero(3), &xi).unwrap(),
            vec![IntVector::zeros(3)]
        );
        assert_eq!(count_hives(&w(&[1, 0], &[0, 0], &[0, 0])).unwrap(), 0);
    }

    #[test]
    fn spot_set() {
        let spots = spot_triples_n4();
        assert_eq!(spots.len(), 20);
        for w in &spots {
            let r = count_all(w).unwrap();
            assert!(r.agree && r.lr_oracle > 0, "{r:?}");
        }
    }

    #[test]
    fn calibration_selects_rotated() {
        let report = calibrate(&pstar).unwrap();
        assert_eq!(report.selected, Some(CALIBRATED), "{report:?}");
    }

    #[test]
    fn involution() {
        for n in 3..=4 {
            assert!(mgs_weight_involution_check(n).unwrap().passed());
        }
    }
}
