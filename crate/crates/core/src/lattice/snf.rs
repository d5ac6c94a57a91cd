use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, IntVector};

/// A dense matrix of arbitrary-precision integers.
pub type BigMatrix = Vec<Vec<BigInt>>;

/// Result of [`smith_normal_form`]: `left * m * right` is diagonal with entries `diag`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diag: Vec<BigInt>,
    pub left: BigMatrix,
    pub right: BigMatrix,
}

impl SmithForm {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

fn identity(k: usize) -> BigMatrix {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn to_big(m: &IntMatrix) -> BigMatrix {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn swap_cols(m: &mut BigMatrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// `row[dst] -= q * row[src]`
fn row_sub(m: &mut BigMatrix, dst: usize, src: usize, q: &BigInt) {
    let (s, d) = if src < dst {
        let (lo, hi) = m.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        *x -= q * y;
    }
}

/// `col[dst] -= q * col[src]`
fn col_sub(m: &mut BigMatrix, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let y = row[src].clone();
        row[dst] -= q * y;
    }
}

fn negate_row(m: &mut BigMatrix, i: usize) {
    for x in m[i].iter_mut() {
        *x = -x.clone();
    }
}

/// Smith normal form with unimodular transforms, over arbitrary-precision integers.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = to_big(m);
    let mut left = identity(rows);
    let mut right = identity(cols);
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        left.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut right, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_sub(&mut a, i, t, &q);
                row_sub(&mut left, i, t, &q);
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    left.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_sub(&mut a, j, t, &q);
                col_sub(&mut right, j, t, &q);
                if !a[t][j].is_zero() {
                    swap_cols(&mut a, t, j);
                    swap_cols(&mut right, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_sub(&mut a, t, i, &minus_one);
                    row_sub(&mut left, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut left, t);
        }
        diag.push(a[t][t].clone());
    }
    SmithForm { diag, left, right }
}

/// True iff the integer span of `vectors` is all of `Z^H`.
pub fn spans_full_lattice(vectors: &[IntVector]) -> bool {
    let Some(first) = vectors.first() else {
        return false;
    };
    let dim = first.len();
    let Ok(m) = IntMatrix::from_vectors(vectors) else {
        return false;
    };
    let snf = smith_normal_form(&m);
    snf.rank() == dim && snf.diag.iter().take(dim).all(|d| d.is_one())
}

/// Rank and lattice index (product of invariant factors) of the row span.
pub fn hermite_rank_and_index(m: &IntMatrix) -> (usize, BigInt) {
    let snf = smith_normal_form(m);
    let index = snf
        .diag
        .iter()
        .filter(|d| !d.is_zero())
        .fold(BigInt::one(), |acc, d| acc * d);
    (snf.rank(), index)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &BigMatrix, b: &BigMatrix) -> BigMatrix {
        let inner = b.len();
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        let prod = mul(&mul(&s.left, &to_big(m)), &s.right);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j && i < s.diag.len() {
                    s.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(*x, want, "entry ({i},{j})");
            }
        }
        for w in s.diag.windows(2) {
            assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn identity_has_unit_diagonal() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.diag, vec![BigInt::one(); 3]);
    }

    #[test]
    fn diagonal_input_is_kept() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]]).unwrap();
        let s = check(&m);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn unimodular_two_by_two() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        let s = check(&m);
        assert_eq!(s.diag, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn divisibility_is_enforced() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        let s = check(&m);
        assert_eq!(s.diag, vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn empty_matrix() {
        let s = smith_normal_form(&IntMatrix::zeros(0, 0));
        assert!(s.diag.is_empty());
    }

    #[test]
    fn full_lattice_examples() {
        let n = 2;
        let h = super::super::enumerate_h(n).unwrap();
        let basis: Vec<IntVector> = h.iter().map(|&v| IntVector::unit(n, v)).collect();
        assert!(spans_full_lattice(&basis));
        let doubled: Vec<IntVector> = basis.iter().map(|v| v.scale(2)).collect();
        assert!(!spans_full_lattice(&doubled));
    }
}
