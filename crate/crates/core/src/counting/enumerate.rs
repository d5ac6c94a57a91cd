use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{maximize, q, Constraint, LpOutcome, Relation, Q};

/// Integer points of `{x : A x >= b, E x = d}`, enumerated exhaustively.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    pub dim: usize,
    /// `coeffs · x >= rhs`
    pub ge: Vec<(Vec<i64>, i64)>,
    /// `coeffs · x = rhs`
    pub eq: Vec<(Vec<i64>, i64)>,
}

pub type Bounds = Vec<(Option<i64>, Option<i64>)>;

fn div_ceil(a: i64, b: i64) -> i64 {
    let d = a / b;
    if (a % b != 0) && ((a < 0) == (b < 0)) {
        d + 1
    } else {
        d
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    let d = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        d - 1
    } else {
        d
    }
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        LinearSystem {
            dim,
            ge: Vec::new(),
            eq: Vec::new(),
        }
    }

    pub fn satisfied(&self, x: &[i64]) -> bool {
        let dot = |a: &[i64]| a.iter().zip(x).map(|(p, q)| p * q).sum::<i64>();
        self.ge.iter().all(|(a, b)| dot(a) >= *b) && self.eq.iter().all(|(a, b)| dot(a) == *b)
    }

    /// Interval propagation to a fixpoint. Returns `false` when some interval becomes empty.
    pub fn propagate(&self, bounds: &mut Bounds) -> bool {
        // each row as `a · x >= b`; equalities contribute both directions
        let mut rows: Vec<(Vec<i64>, i64)> = self.ge.clone();
        for (a, b) in &self.eq {
            rows.push((a.clone(), *b));
            rows.push((a.iter().map(|x| -x).collect(), -b));
        }
        loop {
            let mut changed = false;
            for (a, b) in &rows {
                // max of a·x over the box, with the number of unbounded terms
                let mut max_sum = 0i64;
                let mut unbounded = 0usize;
                let mut unbounded_at = 0usize;
                for (j, &c) in a.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let end = if c > 0 { bounds[j].1 } else { bounds[j].0 };
                    match end {
                        Some(v) => max_sum += c * v,
                        None => {
                            unbounded += 1;
                            unbounded_at = j;
                        }
                    }
                }
                if unbounded == 0 && max_sum < *b {
                    return false;
                }
                for (j, &c) in a.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let rest = match unbounded {
                        0 => {
                            let end = if c > 0 { bounds[j].1 } else { bounds[j].0 };
                            max_sum - c * end.expect("bounded")
                        }
                        1 if unbounded_at == j => max_sum,
                        _ => continue,
                    };
                    // c x_j >= b - rest
                    let need = b - rest;
                    if c > 0 {
                        let lo = div_ceil(need, c);
                        if bounds[j].0.is_none_or(|l| lo > l) {
                            bounds[j].0 = Some(lo);
                            changed = true;
                        }
                    } else {
                        let hi = div_floor(need, c);
                        if bounds[j].1.is_none_or(|h| hi < h) {
                            bounds[j].1 = Some(hi);
                            changed = true;
                        }
                    }
                    if let (Some(l), Some(h)) = bounds[j] {
                        if l > h {
                            return false;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn constraints(&self) -> Vec<Constraint> {
        let mut out: Vec<Constraint> = self
            .ge
            .iter()
            .map(|(a, b)| Constraint {
                coeffs: a.iter().map(|&x| q(x)).collect(),
                rel: Relation::Ge,
                rhs: q(*b),
            })
            .collect();
        out.extend(self.eq.iter().map(|(a, b)| Constraint {
            coeffs: a.iter().map(|&x| q(x)).collect(),
            rel: Relation::Eq,
            rhs: q(*b),
        }));
        out
    }

    /// Exact LP bounds `min/max x_j` over the rational relaxation; `None` when infeasible.
    pub fn lp_bounds(&self, j: usize) -> Result<Option<(i64, i64)>> {
        let cons = self.constraints();
        let mut obj = vec![q(0); self.dim];
        let mut ends = [0i64; 2];
        for (slot, sign) in [(0, -1), (1, 1)] {
            obj[j] = q(sign);
            match maximize(&obj, &cons, true) {
                LpOutcome::Infeasible => return Ok(None),
                LpOutcome::Unbounded { ray, .. } => {
                    return Err(Error::Unbounded(format!(
                        "coordinate {j} is unbounded along {}",
                        show_ray(&ray)
                    )))
                }
                LpOutcome::Optimal { value, .. } => {
                    let v = if sign > 0 {
                        value.floor()
                    } else {
                        (-value).ceil()
                    };
                    ends[slot] = v.to_integer().to_i64().ok_or(Error::Overflow("LP bound"))?;
                }
            }
        }
        Ok(Some((ends[0], ends[1])))
    }

    /// Propagated box, completed by LP bounds where propagation leaves a side open.
    pub fn root_bounds(&self) -> Result<Option<Bounds>> {
        let mut bounds: Bounds = vec![(None, None); self.dim];
        if !self.propagate(&mut bounds) {
            return Ok(None);
        }
        for j in 0..self.dim {
            if bounds[j].0.is_none() || bounds[j].1.is_none() {
                let Some((lo, hi)) = self.lp_bounds(j)? else {
                    return Ok(None);
                };
                bounds[j] = (
                    Some(bounds[j].0.map_or(lo, |l| l.max(lo))),
                    Some(bounds[j].1.map_or(hi, |h| h.min(hi))),
                );
                if !self.propagate(&mut bounds) {
                    return Ok(None);
                }
            }
        }
        Ok(Some(bounds))
    }

    /// All integer points, in lexicographic order.
    pub fn solutions(&self) -> Result<Vec<Vec<i64>>> {
        let Some(bounds) = self.root_bounds()? else {
            return Ok(Vec::new());
        };
        let Some(j) = pick_branch(&bounds) else {
            let x: Vec<i64> = bounds.iter().map(|b| b.0.expect("fixed")).collect();
            return Ok(if self.satisfied(&x) {
                vec![x]
            } else {
                Vec::new()
            });
        };
        let (lo, hi) = (bounds[j].0.expect("bounded"), bounds[j].1.expect("bounded"));
        let parts: Vec<Vec<Vec<i64>>> = (lo..=hi)
            .into_par_iter()
            .map(|v| {
                let mut b = bounds.clone();
                b[j] = (Some(v), Some(v));
                let mut out = Vec::new();
                if self.propagate(&mut b) {
                    self.dfs(b, &mut out);
                }
                out
            })
            .collect();
        let mut all: Vec<Vec<i64>> = parts.into_iter().flatten().collect();
        all.sort();
        Ok(all)
    }

    fn dfs(&self, bounds: Bounds, out: &mut Vec<Vec<i64>>) {
        let Some(j) = pick_branch(&bounds) else {
            let x: Vec<i64> = bounds.iter().map(|b| b.0.expect("fixed")).collect();
            if self.satisfied(&x) {
                out.push(x);
            }
            return;
        };
        let (lo, hi) = (bounds[j].0.expect("bounded"), bounds[j].1.expect("bounded"));
        for v in lo..=hi {
            let mut b = bounds.clone();
            b[j] = (Some(v), Some(v));
            if self.propagate(&mut b) {
                self.dfs(b, out);
            }
        }
    }
}

/// Unfixed coordinate with the narrowest interval.
fn pick_branch(bounds: &Bounds) -> Option<usize> {
    bounds
        .iter()
        .enumerate()
        .filter(|(_, b)| b.0 != b.1)
        .min_by_key(|(_, b)| b.1.expect("bounded") - b.0.expect("bounded"))
        .map(|(j, _)| j)
}

fn show_ray(ray: &[Q]) -> String {
    let parts: Vec<String> = ray.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(div_ceil(7, 2), 4);
        assert_eq!(div_ceil(-7, 2), -3);
        assert_eq!(div_floor(-7, 2), -4);
        assert_eq!(div_floor(7, -2), -4);
        assert_eq!(div_ceil(7, -2), -3);
    }

    #[test]
    fn triangle_points() {
        // x, y >= 0, x + y <= 3  -> 10 points
        let mut s = LinearSystem::new(2);
        s.ge.push((vec![1, 0], 0));
        s.ge.push((vec![0, 1], 0));
        s.ge.push((vec![-1, -1], -3));
        assert_eq!(s.solutions().unwrap().len(), 10);
        s.eq.push((vec![1, -1], 0));
        assert_eq!(s.solutions().unwrap(), vec![vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn unbounded_reports_witness() {
        let mut s = LinearSystem::new(2);
        s.ge.push((vec![1, -1], 0));
        s.ge.push((vec![0, 1], 0));
        assert!(matches!(s.solutions(), Err(Error::Unbounded(_))));
    }

    #[test]
    fn infeasible_is_empty() {
        let mut s = LinearSystem::new(1);
        s.ge.push((vec![2], 1));
        s.ge.push((vec![-2], 0));
        assert!(s.solutions().unwrap().is_empty());
    }
}
