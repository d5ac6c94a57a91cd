use rayon::prelude::*;
use serde::Serialize;

use hive_forge::cones::{
    check_gmgs, check_gt_correspondence, check_unimodular, check_wgs, check_wgs_with, check_xi_u,
    classify_rays, convexity_certificate, pstar, pstar_from_seed,
};
use hive_forge::counting::{
    calibrate, count_all, count_gt, dominant_grid, mgs_weight_involution_check, spot_triples_n4,
    weyl_dimension, CALIBRATED,
};
use hive_forge::potential::{build_w, check_theta, Family};
use hive_forge::quiver::{initial_seed, mgs_sequence, verify_green_sequence};
use hive_forge::Result;

/// Largest `n` accepted by `verify-all`.
pub const MAX_SUITE_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Mgs,
    Unimodular,
    Wgs,
    Convexity,
    Theta,
    Gmgs,
    Rays,
    OracleTriangle,
    Gt,
    Involution,
}

impl Category {
    pub const ALL: [Category; 10] = [
        Category::Mgs,
        Category::Unimodular,
        Category::Wgs,
        Category::Convexity,
        Category::Theta,
        Category::Gmgs,
        Category::Rays,
        Category::OracleTriangle,
        Category::Gt,
        Category::Involution,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Category::Mgs => "mgs",
            Category::Unimodular => "unimodular",
            Category::Wgs => "wgs",
            Category::Convexity => "convexity",
            Category::Theta => "theta",
            Category::Gmgs => "gmgs",
            Category::Rays => "rays",
            Category::OracleTriangle => "oracle_triangle",
            Category::Gt => "gt",
            Category::Involution => "involution",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CategoryResult {
    pub name: &'static str,
    pub status: &'static str,
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub n_max: usize,
    pub status: &'static str,
    pub categories: Vec<CategoryResult>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Faults {
    /// Negate every exchange-matrix entry before the potential identity check.
    pub flip_signs: bool,
}

struct Tally {
    checks: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(what());
        }
    }
}

fn run_category(cat: Category, n_max: usize, faults: Faults) -> Result<Tally> {
    let mut t = Tally::new();
    match cat {
        Category::Mgs => {
            for n in 2..=n_max {
                let c = verify_green_sequence(n, &mgs_sequence(n))?;
                t.record(c.passed(), || {
                    format!("n={n}: {}", c.failure.clone().unwrap_or_default())
                });
            }
        }
        Category::Unimodular => {
            for n in 2..=n_max {
                let c = check_unimodular(&pstar(n)?)?;
                t.record(c.passed(), || {
                    format!("n={n}: diagonal {:?}", c.snf_diagonal)
                });
            }
        }
        Category::Wgs => {
            for n in 2..=n_max {
                let c = if faults.flip_signs {
                    let p = pstar_from_seed(&initial_seed(n)?.with_flipped_signs());
                    check_wgs_with(&p, &build_w(n, &Family::ALL)?)?
                } else {
                    check_wgs(n)?
                };
                t.record(c.passed(), || {
                    format!("n={n}: {} unmatched", c.failures.len())
                });
            }
        }
        Category::Convexity => {
            for n in 3..=n_max {
                let c = convexity_certificate(n)?;
                t.record(c.passed(), || format!("n={n}: no positive functional"));
            }
        }
        Category::Theta => {
            for n in 2..=n_max {
                let c = check_theta(n)?;
                t.record(c.passed(), || format!("n={n}: {:?}", c.failures.first()));
            }
        }
        Category::Gmgs => {
            for n in 3..=n_max.min(5) {
                let c = check_gmgs(n)?;
                t.record(c.passed(), || {
                    format!("n={n}: {} mismatches", c.mismatches.len())
                });
            }
        }
        Category::Rays => {
            for n in 3..=n_max.min(4) {
                let c = classify_rays(n)?;
                t.record(c.passed(), || {
                    format!("n={n}: Ξ rays do not match the generated set")
                });
            }
            for n in 3..=n_max.min(5) {
                let c = check_xi_u(n)?;
                t.record(c.passed(), || {
                    format!("n={n}: Ξ_U has {} rays", c.rays.len())
                });
            }
        }
        Category::OracleTriangle => {
            let mut triples = Vec::new();
            for n in 2..=n_max.min(3) {
                triples.extend(dominant_grid(n, -2, 2));
            }
            if n_max >= 4 {
                triples.extend(spot_triples_n4());
                let r = calibrate(&pstar)?;
                t.record(r.selected == Some(CALIBRATED), || {
                    format!("calibration selected {:?}", r.selected)
                });
            }
            for w in &triples {
                let r = count_all(w)?;
                t.record(r.agree, || {
                    format!(
                        "{w}: hives {} oracle {} fiber {}",
                        r.hive_count, r.lr_oracle, r.fiber_count
                    )
                });
            }
        }
        Category::Gt => {
            for n in 1..=n_max.min(4) {
                for lambda in dominant_range(n, -1, 3) {
                    let ok = count_gt(&lambda)? == weyl_dimension(&lambda)?;
                    t.record(ok, || format!("λ={lambda:?}"));
                }
            }
            for n in 2..=n_max {
                let c = check_gt_correspondence(n)?;
                t.record(c.passed(), || format!("n={n}: {:?}", c.failures.first()));
            }
        }
        Category::Involution => {
            for n in 3..=n_max {
                let c = mgs_weight_involution_check(n)?;
                t.record(c.passed(), || format!("n={n}: {:?}", c.failures.first()));
            }
        }
    }
    Ok(t)
}

/// Weakly decreasing length-`n` vectors with entries in `[lo, hi]`.
fn dominant_range(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                let top = p.last().copied().unwrap_or(hi);
                (lo..=top).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn verify_all(n_max: usize, faults: Faults) -> Summary {
    let categories: Vec<CategoryResult> = Category::ALL
        .par_iter()
        .map(|&cat| {
            let (checks, first_failure) = match run_category(cat, n_max, faults) {
                Ok(t) => (t.checks, t.first_failure),
                Err(e) => (0, Some(e.to_string())),
            };
            CategoryResult {
                name: cat.name(),
                status: if first_failure.is_none() {
                    "pass"
                } else {
                    "fail"
                },
                checks,
                first_failure,
            }
        })
        .collect();
    let ok = categories.iter().all(|c| c.first_failure.is_none());
    Summary {
        n_max,
        status: if ok { "pass" } else { "fail" },
        categories,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominant_range_counts() {
        assert_eq!(dominant_range(2, 0, 2).len(), 6);
        assert!(dominant_range(3, -1, 3)
            .iter()
            .all(|p| p.windows(2).all(|w| w[0] >= w[1])));
    }
}
