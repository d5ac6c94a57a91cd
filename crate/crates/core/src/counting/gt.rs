use serde::{Deserialize, Serialize};

use super::lr::is_dominant;
use crate::cones::gt_position;
use crate::error::{Error, Result};
use crate::lattice::IntVector;

/// Triangular array with rows of lengths `n, n-1, ..., 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GtPattern {
    pub rows: Vec<Vec<i64>>,
}

impl GtPattern {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().enumerate().any(|(r, row)| row.len() != n - r) {
            return Err(Error::Dimension(
                "rows must have lengths n, n-1, ..., 1".into(),
            ));
        }
        Ok(GtPattern { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn top(&self) -> &[i64] {
        &self.rows[0]
    }

    /// `row_r[k] >= row_{r+1}[k] >= row_r[k+1]` everywhere.
    pub fn interlaces(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| (0..w[1].len()).all(|k| w[0][k] >= w[1][k] && w[1][k] >= w[0][k + 1]))
    }

    /// Coordinates over `H_{n-1}`, laid out by [`gt_position`].
    pub fn to_vector(&self) -> Result<IntVector> {
        let n = self.n();
        if n < 2 {
            return Err(Error::InvalidRank { n, min: 2 });
        }
        let mut v = IntVector::zeros(n - 1);
        for (r, row) in self.rows.iter().enumerate() {
            for (k, &x) in row.iter().enumerate() {
                v.set(gt_position(n, r, k + 1), x);
            }
        }
        Ok(v)
    }

    pub fn from_vector(v: &IntVector) -> Result<Self> {
        let n = v.n() + 1;
        GtPattern::new(
            (0..n)
                .map(|r| (1..=n - r).map(|k| v.get(gt_position(n, r, k))).collect())
                .collect(),
        )
    }
}

/// All patterns with top row `λ`, in lexicographic order of rows.
pub fn gt_patterns(lambda: &[i64]) -> Result<Vec<GtPattern>> {
    if lambda.is_empty() || !is_dominant(lambda) {
        return Err(Error::Invalid(format!("{lambda:?} is not dominant")));
    }
    fn extend(rows: &mut Vec<Vec<i64>>, out: &mut Vec<GtPattern>) {
        let last = rows.last().expect("nonempty").clone();
        if last.len() == 1 {
            out.push(GtPattern { rows: rows.clone() });
            return;
        }
        let mut next = vec![0; last.len() - 1];
        fn choose(
            last: &[i64],
            next: &mut Vec<i64>,
            i: usize,
            rows: &mut Vec<Vec<i64>>,
            out: &mut Vec<GtPattern>,
        ) {
            if i == next.len() {
                rows.push(next.clone());
                extend(rows, out);
                rows.pop();
                return;
            }
            for x in last[i + 1]..=last[i] {
                next[i] = x;
                choose(last, next, i + 1, rows, out);
            }
        }
        choose(&last, &mut next, 0, rows, out);
    }
    let mut out = Vec::new();
    extend(&mut vec![lambda.to_vec()], &mut out);
    Ok(out)
}
