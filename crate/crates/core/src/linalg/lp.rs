use num_traits::{Signed, Zero};

use super::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `coeffs · x (rel) rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub rel: Relation,
    pub rhs: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        x: Vec<Q>,
        value: Q,
    },
    Infeasible,
    /// A feasible point and a ray along which the objective grows without bound.
    Unbounded {
        x: Vec<Q>,
        ray: Vec<Q>,
    },
}

struct Tableau {
    /// rows[i] = coefficients over all columns followed by the rhs
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs `c_j - c_B B^{-1} A_j` for maximizing `obj` (length `cols`).
    fn reduced(&self, obj: &[Q]) -> Vec<Q> {
        let mut red = obj.to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &obj[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (j, x) in row.iter().take(self.cols).enumerate() {
                red[j] -= cb * x;
            }
        }
        red
    }

    /// Bland's rule simplex on the allowed columns. `Err(col)` reports an unbounded column.
    fn run(&mut self, obj: &[Q], allowed: &[bool]) -> Result<(), usize> {
        loop {
            let red = self.reduced(obj);
            let Some(enter) = (0..self.cols).find(|&j| allowed[j] && red[j].is_positive()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[enter].is_positive() {
                    let ratio = &row[self.cols] / &row[enter];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Err(enter),
            }
        }
    }

    fn solution(&self) -> Vec<Q> {
        let mut x = vec![Q::zero(); self.cols];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.rows[i][self.cols].clone();
        }
        x
    }
}

/// Maximizes `objective · x` subject to `constraints`, over exact rationals.
/// Variables are free when `free` is set and non-negative otherwise.
pub fn maximize(objective: &[Q], constraints: &[Constraint], free: bool) -> LpOutcome {
    let nv = objective.len();
    let ns = if free { 2 * nv } else { nv };
    let m = constraints.len();
    let n_slack = constraints.iter().filter(|c| c.rel != Relation::Eq).count();
    let slack_start = ns;
    let art_start = ns + n_slack;
    let total = art_start + m;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut slack = slack_start;
    for (i, con) in constraints.iter().enumerate() {
        let mut row = vec![Q::zero(); total + 1];
        for (j, a) in con.coeffs.iter().enumerate() {
            row[j] = a.clone();
            if free {
                row[nv + j] = -a.clone();
            }
        }
        let slack_col = match con.rel {
            Relation::Le => {
                row[slack] = Q::from_integer(1.into());
                slack += 1;
                Some(slack - 1)
            }
            Relation::Ge => {
                row[slack] = Q::from_integer((-1).into());
                slack += 1;
                Some(slack - 1)
            }
            Relation::Eq => None,
        };
        row[total] = con.rhs.clone();
        if row[total].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        row[art_start + i] = Q::from_integer(1.into());
        let basic = match slack_col {
            Some(s) if row[s].is_positive() => s,
            _ => art_start + i,
        };
        basis.push(basic);
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis,
        cols: total,
    };

    // phase one: drive artificial variables to zero
    let mut phase1 = vec![Q::zero(); total];
    for c in &mut phase1[art_start..] {
        *c = Q::from_integer((-1).into());
    }
    let all = vec![true; total];
    t.run(&phase1, &all).expect("phase one is bounded");
    let x = t.solution();
    if x[art_start..].iter().any(|v| !v.is_zero()) {
        return LpOutcome::Infeasible;
    }
    // pivot remaining artificial variables out of the basis
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= art_start {
            match (0..art_start).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut obj = vec![Q::zero(); total];
    for (j, c) in objective.iter().enumerate() {
        obj[j] = c.clone();
        if free {
            obj[nv + j] = -c.clone();
        }
    }
    let allowed: Vec<bool> = (0..total).map(|j| j < art_start).collect();
    let outcome = t.run(&obj, &allowed);
    let y = t.solution();
    let project = |v: &[Q]| -> Vec<Q> {
        (0..nv)
            .map(|j| {
                if free {
                    &v[j] - &v[nv + j]
                } else {
                    v[j].clone()
                }
            })
            .collect()
    };
    match outcome {
        Ok(()) => {
            let x = project(&y);
            let value = objective
                .iter()
                .zip(&x)
                .fold(Q::zero(), |acc, (c, v)| acc + c * v);
            LpOutcome::Optimal { x, value }
        }
        Err(enter) => {
            let mut dir = vec![Q::zero(); total];
            dir[enter] = Q::from_integer(1.into());
            for (i, &b) in t.basis.iter().enumerate() {
                dir[b] = -t.rows[i][enter].clone();
            }
            LpOutcome::Unbounded {
                x: project(&y),
                ray: project(&dir),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{q, to_q};
    use super::*;

    fn con(c: &[i64], rel: Relation, rhs: i64) -> Constraint {
        Constraint {
            coeffs: to_q(c),
            rel,
            rhs: q(rhs),
        }
    }

    #[test]
    fn small_optimum() {
        // max x + y, x + 2y <= 4, 3x + y <= 6, x,y >= 0  -> (8/5, 6/5), value 14/5
        let out = maximize(
            &to_q(&[1, 1]),
            &[con(&[1, 2], Relation::Le, 4), con(&[3, 1], Relation::Le, 6)],
            false,
        );
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, Q::new(14.into(), 5.into())),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_variables_and_equalities() {
        // max -x, x + y = 1, y <= 3, x free  -> x = -2
        let out = maximize(
            &to_q(&[-1, 0]),
            &[con(&[1, 1], Relation::Eq, 1), con(&[0, 1], Relation::Le, 3)],
            true,
        );
        match out {
            LpOutcome::Optimal { x, .. } => assert_eq!(x[0], q(-2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let inf = maximize(
            &to_q(&[1]),
            &[con(&[1], Relation::Ge, 2), con(&[1], Relation::Le, 1)],
            true,
        );
        assert_eq!(inf, LpOutcome::Infeasible);
        let unb = maximize(&to_q(&[1, 0]), &[con(&[1, -1], Relation::Le, 0)], true);
        match unb {
            LpOutcome::Unbounded { ray, .. } => {
                assert!(ray[0].is_positive());
                assert!(ray[0] <= ray[1]);
            }
            other => panic!("{other:?}"),
        }
    }
}
