//! Polyhedral cones over `H_n`: `Ξ` and its `A`/`U` variants, the hive cone and the
//! Gelfand-Tsetlin cone, together with the `p*` map and the certificates built on it.

mod gmgs;
mod pstar;
mod rays;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{enumerate_h, weight_covector, Axis, IntVector, TriIndex};
use crate::potential::{build_w, tropicalize, Family, TropicalInequality};

pub use gmgs::{
    check_gmgs, gvector_along_mgs, gvector_closed_form, subtriangle_sequence, tracked_gvectors,
    GmgsCertificate, Shift,
};
pub use pstar::{
    check_gt_correspondence, check_unimodular, check_wgs, check_wgs_with, convexity_certificate,
    gt_difference_map, pstar, pstar_from_seed, ConvexityCertificate, GtCertificate, PStarMap,
    UnimodularCertificate, WgsCertificate, WgsPair,
};
pub use rays::{
    check_xi_u, classify_rays, edge_certificate, effective_dimension, enumerate_rays,
    generated_rays, trivalent_segments, trivalent_vector, EdgeCheck, RayClassification, RayKind,
    RaySet, RayVector, SimplicialCertificate, MAX_RAY_DIMENSION,
};

/// Which slice or quotient of the coordinate space a cone lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ambient {
    #[serde(rename = "full_H")]
    FullH,
    /// Points with entry sum zero.
    #[serde(rename = "sum_zero")]
    SumZero,
    /// Points with a zero entry at `(n, 0, 0)`.
    #[serde(rename = "top_normalized")]
    TopNormalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeKind {
    Xi,
    XiA,
    XiU,
    Hive,
    Gt,
    Custom,
}

/// `⟨coeffs, x⟩ = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equality {
    pub coeffs: IntVector,
    pub rhs: i64,
}

/// A cone `{x : ⟨c, x⟩ >= 0, ⟨e, x⟩ = r}` inside the given ambient slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cone {
    pub n: usize,
    pub kind: ConeKind,
    pub ambient: Ambient,
    pub inequalities: Vec<TropicalInequality>,
    pub equalities: Vec<Equality>,
}

impl Cone {
    pub fn new(
        n: usize,
        ambient: Ambient,
        inequalities: Vec<TropicalInequality>,
        equalities: Vec<Equality>,
    ) -> Result<Cone> {
        let cone = Cone {
            n,
            kind: ConeKind::Custom,
            ambient,
            inequalities,
            equalities,
        };
        let m = cone.index_n();
        if cone.inequalities.iter().any(|i| i.coeffs.n() != m)
            || cone.equalities.iter().any(|e| e.coeffs.n() != m)
        {
            return Err(Error::Dimension(
                "coefficient vectors over different index sets".into(),
            ));
        }
        Ok(cone)
    }

    /// The `m` of the index set `H_m` carrying the coordinates.
    pub fn index_n(&self) -> usize {
        self.inequalities
            .first()
            .map(|i| i.coeffs.n())
            .or_else(|| self.equalities.first().map(|e| e.coeffs.n()))
            .unwrap_or(self.n)
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        let m = self.index_n();
        (m + 1) * (m + 2) / 2
    }

    /// Homogeneous equalities cutting out the ambient slice.
    pub fn ambient_equalities(&self) -> Vec<IntVector> {
        let m = self.index_n();
        match self.ambient {
            Ambient::FullH => Vec::new(),
            Ambient::SumZero => vec![IntVector::ones(m)],
            Ambient::TopNormalized => vec![IntVector::unit(m, TriIndex::new(m, 0, 0))],
        }
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        x.n() == self.index_n()
            && self.ambient_equalities().iter().all(|e| e.dot(x) == 0)
            && self.equalities.iter().all(|e| e.coeffs.dot(x) == e.rhs)
            && self.inequalities.iter().all(|i| i.holds(x))
    }

    /// Labels of the inequalities violated by `x`.
    pub fn violations(&self, x: &IntVector) -> Vec<String> {
        self.inequalities
            .iter()
            .filter(|i| !i.holds(x))
            .map(|i| i.label.clone())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum XiVariant {
    Full,
    A,
    U,
}

/// `Ξ = {W^T >= 0}`; `A` keeps the `AB` and `BC` families, `U` keeps `BC` and slices the
/// `Y` and `Z` weights to zero.
pub fn xi_cone(n: usize, variant: XiVariant) -> Result<Cone> {
    let (families, kind): (&[Family], ConeKind) = match variant {
        XiVariant::Full => (&Family::ALL, ConeKind::Xi),
        XiVariant::A => (&[Family::AB, Family::BC], ConeKind::XiA),
        XiVariant::U => (&[Family::BC], ConeKind::XiU),
    };
    let w = build_w(n, families)?;
    let mut equalities = Vec::new();
    if variant == XiVariant::U {
        for axis in [Axis::Y, Axis::Z] {
            for i in 1..=n {
                equalities.push(Equality {
                    coeffs: weight_covector(n, axis, i),
                    rhs: 0,
                });
            }
        }
    }
    Ok(Cone {
        n,
        kind,
        ambient: Ambient::FullH,
        inequalities: tropicalize(&w),
        equalities,
    })
}

/// Two adjacent unit triangles. The obtuse corners are the endpoints of the shared edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Rhombus {
    pub obtuse: [TriIndex; 2],
    pub acute: [TriIndex; 2],
}

const UNIT_STEPS: [(i64, i64, i64); 6] = [
    (-1, 1, 0),
    (1, -1, 0),
    (0, -1, 1),
    (0, 1, -1),
    (1, 0, -1),
    (-1, 0, 1),
];

impl Rhombus {
    /// `y + z - w - x` with `y, z` obtuse and `w, x` acute.
    pub fn covector(&self) -> IntVector {
        let n = self.obtuse[0].n();
        let mut out = IntVector::zeros(n);
        for v in self.obtuse {
            out.add_at(v, 1);
        }
        for v in self.acute {
            out.add_at(v, -1);
        }
        out
    }

    pub fn label(&self) -> String {
        format!("rhombus:{}{}", self.obtuse[0], self.obtuse[1])
    }
}

/// All rhombi of `H_n`, one per interior edge of the triangulation, in canonical order.
pub fn rhombi(n: usize) -> Result<Vec<Rhombus>> {
    let h = enumerate_h(n)?;
    let mut out = Vec::new();
    for &p in h.iter() {
        for d in crate::quiver::DIRECTIONS {
            let Some(q) = p.offset(d) else { continue };
            let common: Vec<TriIndex> = UNIT_STEPS
                .iter()
                .filter(|e| UNIT_STEPS.contains(&(d.0 - e.0, d.1 - e.1, d.2 - e.2)))
                .filter_map(|&e| p.offset(e))
                .collect();
            if let [x, w] = common[..] {
                let (lo, hi) = if p < q { (p, q) } else { (q, p) };
                let (x, w) = if x < w { (x, w) } else { (w, x) };
                out.push(Rhombus {
                    obtuse: [lo, hi],
                    acute: [x, w],
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The hive cone: one rhombus inequality per rhombus, top entry normalized to zero.
pub fn hive_cone(n: usize) -> Result<Cone> {
    let inequalities = rhombi(n)?
        .iter()
        .map(|r| TropicalInequality {
            label: r.label(),
            coeffs: r.covector(),
        })
        .collect();
    Ok(Cone {
        n,
        kind: ConeKind::Hive,
        ambient: Ambient::TopNormalized,
        inequalities,
        equalities: Vec::new(),
    })
}

/// Position of entry `k` (1-based) of row `r` of a Gelfand-Tsetlin array with top row of length `n`.
/// Rows are stored over `H_{n-1}`: entry `(r, k)` sits at `(n-r-k, k-1, r)`.
pub fn gt_position(n: usize, r: usize, k: usize) -> TriIndex {
    TriIndex::new(n - r - k, k - 1, r)
}

/// Interlacing cone `row_r[k] >= row_{r+1}[k] >= row_r[k+1]` over `H_{n-1}`.
pub fn gt_cone(n: usize) -> Result<Cone> {
    if n < 2 {
        return Err(Error::InvalidRank { n, min: 2 });
    }
    let m = n - 1;
    let mut inequalities = Vec::new();
    for r in 0..n - 1 {
        for k in 1..n - r {
            let upper = gt_position(n, r, k);
            let lower = gt_position(n, r + 1, k);
            let next = gt_position(n, r, k + 1);
            inequalities.push(TropicalInequality {
                label: format!("gt:{r},{k}>={},{k}", r + 1),
                coeffs: IntVector::unit(m, upper).sub(&IntVector::unit(m, lower)),
            });
            inequalities.push(TropicalInequality {
                label: format!("gt:{},{k}>={r},{}", r + 1, k + 1),
                coeffs: IntVector::unit(m, lower).sub(&IntVector::unit(m, next)),
            });
        }
    }
    Ok(Cone {
        n,
        kind: ConeKind::Gt,
        ambient: Ambient::FullH,
        inequalities,
        equalities: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inequality_counts() {
        assert_eq!(xi_cone(4, XiVariant::Full).unwrap().inequalities.len(), 18);
        assert_eq!(xi_cone(4, XiVariant::A).unwrap().inequalities.len(), 12);
        for n in 2..=7 {
            assert_eq!(
                hive_cone(n).unwrap().inequalities.len(),
                3 * n * (n - 1) / 2
            );
            assert_eq!(gt_cone(n).unwrap().inequalities.len(), n * (n - 1));
        }
    }

    #[test]
    fn constant_hive_is_tight() {
        let c = hive_cone(4).unwrap();
        for i in &c.inequalities {
            assert_eq!(i.coeffs.dot(&IntVector::ones(4)), 0);
        }
        assert!(c.contains(&IntVector::zeros(4)));
        assert!(!c.contains(&IntVector::ones(4)));
    }

    #[test]
    fn gt_smallest() {
        let c = gt_cone(2).unwrap();
        assert_eq!(c.index_n(), 1);
        assert!(c.contains(&IntVector::ones(1)));
        // (λ1, λ2; x) = (2, 0; 1) at positions (1,0,0), (0,1,0), (0,0,1)
        let x = IntVector::from_dense(1, vec![2, 0, 1]).unwrap();
        assert!(c.contains(&x));
        let y = IntVector::from_dense(1, vec![2, 0, 3]).unwrap();
        assert!(!c.contains(&y));
    }
}
