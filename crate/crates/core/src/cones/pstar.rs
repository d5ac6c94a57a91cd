use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{gt_cone, rhombi, xi_cone, Rhombus, XiVariant};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_h, smith_normal_form, IntMatrix, IntVector, TriIndex};
use crate::linalg::{maximize, q, Constraint, LpOutcome, Relation};
use crate::potential::{build_w, Family, LaurentSum};
use crate::quiver::{initial_seed, Seed};

/// The linear map `p*: N -> M`, stored by its images `p*(e_v)` in dual coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PStarMap {
    n: usize,
    images: BTreeMap<TriIndex, IntVector>,
}

impl PStarMap {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self, v: TriIndex) -> &IntVector {
        &self.images[&v]
    }

    pub fn images(&self) -> impl Iterator<Item = (TriIndex, &IntVector)> {
        self.images.iter().map(|(&v, x)| (v, x))
    }

    /// Replaces one image; used to build deliberately broken maps.
    pub fn with_image(mut self, v: TriIndex, image: IntVector) -> Self {
        self.images.insert(v, image);
        self
    }

    /// `p*(x) = Σ x_v p*(e_v)`.
    pub fn apply(&self, x: &IntVector) -> IntVector {
        x.support()
            .iter()
            .fold(IntVector::zeros(self.n), |acc, &(v, k)| {
                acc.axpy(k, self.image(v))
            })
    }

    /// Transpose: `g_v = ⟨p*(e_v), h⟩`, carrying a hive `h` to a point of `Ξ`.
    pub fn transpose_apply(&self, h: &IntVector) -> IntVector {
        let mut g = IntVector::zeros(self.n);
        for (&v, img) in &self.images {
            g.set(v, img.dot(h));
        }
        g
    }

    /// Images as rows, in canonical order.
    pub fn matrix(&self) -> IntMatrix {
        let rows: Vec<IntVector> = self.images.values().cloned().collect();
        IntMatrix::from_vectors(&rows).expect("images share an index set")
    }
}

impl Serialize for PStarMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            vertex: TriIndex,
            image: &'a IntVector,
        }
        let images: Vec<Entry<'_>> = self
            .images
            .iter()
            .map(|(&vertex, image)| Entry { vertex, image })
            .collect();
        let mut st = s.serialize_struct("PStarMap", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("images", &images)?;
        st.end()
    }
}

fn rotate_vector(x: &IntVector) -> IntVector {
    let mut out = IntVector::zeros(x.n());
    for (v, k) in x.support() {
        out.set(v.rotate(), k);
    }
    out
}

/// Images of the corner `(n,0,0)` and of the non-corner `c = 0` edge.
fn frozen_template(n: usize, v: TriIndex) -> Option<IntVector> {
    let e = |a: usize, b: usize, c: usize| IntVector::unit(n, TriIndex::new(a, b, c));
    let TriIndex { a, b, c } = v;
    if v == TriIndex::new(n, 0, 0) {
        Some(e(n, 0, 0).sub(&e(n - 1, 0, 1)))
    } else if c == 0 && a > 0 && b > 0 {
        Some(
            e(a, b, 0)
                .sub(&e(a - 1, b, 1))
                .add(&e(a, b - 1, 1))
                .sub(&e(a + 1, b - 1, 0)),
        )
    } else {
        None
    }
}

/// `p*` for the given seed's exchange matrix: unfrozen rows of `ε`, frozen vertices by template
/// and its cyclic rotations.
pub fn pstar_from_seed(seed: &Seed) -> PStarMap {
    let n = seed.n();
    let mut images = BTreeMap::new();
    for &v in seed.index_set().iter() {
        let image = if !v.is_frozen() {
            seed.eps_row(v)
        } else {
            // rotate v back into the template domain, then rotate the image forward
            let mut u = v;
            let mut turns = 0;
            let mut found = frozen_template(n, u);
            while found.is_none() {
                u = u.rotate().rotate();
                turns += 1;
                found = frozen_template(n, u);
            }
            let mut img = found.expect("every frozen vertex rotates into the template");
            for _ in 0..turns {
                img = rotate_vector(&img);
            }
            img
        };
        images.insert(v, image);
    }
    PStarMap { n, images }
}

pub fn pstar(n: usize) -> Result<PStarMap> {
    Ok(pstar_from_seed(&initial_seed(n)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnimodularCertificate {
    pub n: usize,
    pub status: &'static str,
    pub rank: usize,
    pub snf_diagonal: Vec<i64>,
    /// Vertices whose removal leaves a set that is not a basis of the sum-zero lattice.
    pub drop_one_failures: Vec<TriIndex>,
    pub deficient: Option<String>,
}

impl UnimodularCertificate {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

fn snf_summary(rows: &[IntVector]) -> Result<(usize, Vec<i64>)> {
    let m = IntMatrix::from_vectors(rows)?;
    let snf = smith_normal_form(&m);
    let diag = snf
        .diag
        .iter()
        .map(|d| d.to_i64().unwrap_or(i64::MAX))
        .collect();
    Ok((snf.rank(), diag))
}

/// Checks that `{e*_(n,0,0)} ∪ images` spans `Z^H` and that every `|H| - 1` images form a
/// basis of the sum-zero sublattice.
pub fn check_unimodular(p: &PStarMap) -> Result<UnimodularCertificate> {
    let n = p.n();
    let h = enumerate_h(n)?;
    let mut rows = vec![IntVector::unit(n, TriIndex::new(n, 0, 0))];
    rows.extend(p.images().map(|(_, x)| x.clone()));
    let (rank, diag) = snf_summary(&rows)?;
    let mut deficient = None;
    if rank < h.len() {
        deficient = Some(format!("rank {rank} < {}", h.len()));
    } else if let Some((i, d)) = diag.iter().enumerate().find(|(_, &d)| d != 1) {
        deficient = Some(format!("SNF entry {i} is {d}"));
    }

    let images: Vec<(TriIndex, IntVector)> = p.images().map(|(v, x)| (v, x.clone())).collect();
    let mut drop_one_failures = Vec::new();
    for (skip, &(v, _)) in images.iter().enumerate() {
        let rest: Vec<IntVector> = images
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, (_, x))| x.clone())
            .collect();
        let sum_zero = rest.iter().all(|x| x.sum() == 0);
        let (r, d) = snf_summary(&rest)?;
        if !sum_zero || r != h.len() - 1 || d.iter().any(|&x| x != 1) {
            drop_one_failures.push(v);
        }
    }
    let ok = deficient.is_none() && drop_one_failures.is_empty();
    Ok(UnimodularCertificate {
        n,
        status: if ok { "pass" } else { "fail" },
        rank,
        snf_diagonal: diag,
        drop_one_failures,
        deficient,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WgsPair {
    pub monomial: String,
    pub exponent: IntVector,
    pub rhombus: Rhombus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WgsCertificate {
    pub n: usize,
    pub status: &'static str,
    pub monomials: usize,
    pub rhombi: usize,
    pub pairs: Vec<WgsPair>,
    pub failures: Vec<String>,
}

impl WgsCertificate {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Matches every monomial `z^{-v}` of `w` with the rhombus whose covector is `p*(v)`.
pub fn check_wgs_with(p: &PStarMap, w: &LaurentSum) -> Result<WgsCertificate> {
    let n = p.n();
    let all = rhombi(n)?;
    let by_covector: BTreeMap<IntVector, usize> = all
        .iter()
        .enumerate()
        .map(|(i, r)| (r.covector(), i))
        .collect();
    let mut used = vec![false; all.len()];
    let mut pairs = Vec::new();
    let mut failures = Vec::new();
    for (e, coeff) in w.terms() {
        let v = e.neg();
        let label = crate::potential::monomial_label(&v);
        if coeff != 1 {
            failures.push(format!("{label}: coefficient {coeff}"));
        }
        match by_covector.get(&p.apply(&v)) {
            Some(&i) if !used[i] => {
                used[i] = true;
                pairs.push(WgsPair {
                    monomial: label,
                    exponent: v,
                    rhombus: all[i],
                });
            }
            Some(&i) => failures.push(format!(
                "{label}: rhombus {} already matched",
                all[i].label()
            )),
            None => failures.push(format!("{label}: p* image is not a rhombus covector")),
        }
    }
    for (i, r) in all.iter().enumerate() {
        if !used[i] {
            failures.push(format!("{}: no monomial", r.label()));
        }
    }
    Ok(WgsCertificate {
        n,
        status: if failures.is_empty() { "pass" } else { "fail" },
        monomials: w.len(),
        rhombi: all.len(),
        pairs,
        failures,
    })
}

/// `p* W` equals the sum of the rhombus monomials, as an explicit bijection.
pub fn check_wgs(n: usize) -> Result<WgsCertificate> {
    check_wgs_with(&pstar(n)?, &build_w(n, &Family::ALL)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvexityCertificate {
    pub n: usize,
    pub status: &'static str,
    /// A functional positive on every `p*(e_v)`, `v` unfrozen.
    pub functional: Option<IntVector>,
    pub pairings: Vec<(TriIndex, i64)>,
}

impl ConvexityCertificate {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Finds `φ` with `⟨φ, p*(e_v)⟩ >= 1` for all unfrozen `v` by exact linear programming.
pub fn convexity_certificate(n: usize) -> Result<ConvexityCertificate> {
    if n < 3 {
        return Err(Error::InvalidRank { n, min: 3 });
    }
    let p = pstar(n)?;
    let h = enumerate_h(n)?;
    let unfrozen: Vec<TriIndex> = h.unfrozen().collect();
    let constraints: Vec<Constraint> = unfrozen
        .iter()
        .map(|&v| Constraint {
            coeffs: p.image(v).as_slice().iter().map(|&x| q(x)).collect(),
            rel: Relation::Ge,
            rhs: q(1),
        })
        .collect();
    let objective = vec![q(0); h.len()];
    let functional = match maximize(&objective, &constraints, true) {
        LpOutcome::Optimal { x, .. } => {
            let lcm = x.iter().fold(num_bigint::BigInt::one(), |acc, r| {
                num_integer::lcm(acc, r.denom().clone())
            });
            let data: Option<Vec<i64>> = x
                .iter()
                .map(|r| {
                    (r * crate::linalg::Q::from_integer(lcm.clone()))
                        .to_integer()
                        .to_i64()
                })
                .collect();
            data.map(|d| IntVector::from_dense(n, d)).transpose()?
        }
        _ => None,
    };
    let pairings: Vec<(TriIndex, i64)> = match &functional {
        Some(phi) => unfrozen.iter().map(|&v| (v, phi.dot(p.image(v)))).collect(),
        None => Vec::new(),
    };
    let ok = functional.as_ref().is_some_and(|phi| !phi.is_zero())
        && pairings.iter().all(|&(_, x)| x > 0);
    Ok(ConvexityCertificate {
        n,
        status: if ok { "pass" } else { "fail" },
        functional,
        pairings,
    })
}

/// `Δ^T(e_(r,k))`: the hive covector of the Gelfand-Tsetlin entry `(r, k)`, the difference of
/// consecutive hive entries along the line `c = r`.
pub fn gt_difference_map(n: usize, r: usize, k: usize) -> IntVector {
    let a = n - r - k;
    IntVector::unit(n, TriIndex::new(a, k, r))
        .sub(&IntVector::unit(n, TriIndex::new(a + 1, k - 1, r)))
}

fn gt_covector(n: usize, x: &IntVector) -> IntVector {
    let mut out = IntVector::zeros(n);
    for (v, c) in x.support() {
        // v = (n-r-k, k-1, r) in H_{n-1}
        let r = v.c;
        let k = v.b + 1;
        out = out.axpy(c, &gt_difference_map(n, r, k));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GtCertificate {
    pub n: usize,
    pub status: &'static str,
    /// `(Ξ_A label, GT label)` pairs.
    pub pairs: Vec<(String, String)>,
    pub failures: Vec<String>,
}

impl GtCertificate {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Each inequality of `Ξ_A`, carried to hives by `p*`, is the pullback of exactly one
/// interlacing inequality under the row-difference map.
pub fn check_gt_correspondence(n: usize) -> Result<GtCertificate> {
    let p = pstar(n)?;
    let xa = xi_cone(n, XiVariant::A)?;
    let gt = gt_cone(n)?;
    let by_covector: BTreeMap<IntVector, usize> = gt
        .inequalities
        .iter()
        .enumerate()
        .map(|(i, ineq)| (gt_covector(n, &ineq.coeffs), i))
        .collect();
    let mut used = vec![false; gt.inequalities.len()];
    let mut pairs = Vec::new();
    let mut failures = Vec::new();
    for ineq in &xa.inequalities {
        match by_covector.get(&p.apply(&ineq.coeffs)) {
            Some(&i) if !used[i] => {
                used[i] = true;
                pairs.push((ineq.label.clone(), gt.inequalities[i].label.clone()));
            }
            _ => failures.push(ineq.label.clone()),
        }
    }
    failures.extend(
        gt.inequalities
            .iter()
            .zip(&used)
            .filter(|(_, &u)| !u)
            .map(|(i, _)| i.label.clone()),
    );
    Ok(GtCertificate {
        n,
        status: if failures.is_empty() { "pass" } else { "fail" },
        pairs,
        failures,
    })
}
