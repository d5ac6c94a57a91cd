//! Exact rational linear algebra: row reduction, rank, null spaces, a two-phase simplex
//! method and the double description method for polyhedral cones.

mod dd;
mod lp;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use dd::{extreme_rays, ConeRays};
pub use lp::{maximize, Constraint, LpOutcome, Relation};

pub type Q = BigRational;

pub fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

pub fn to_q(row: &[i64]) -> Vec<Q> {
    row.iter().map(|&x| q(x)).collect()
}

pub fn big_to_q(row: &[BigInt]) -> Vec<Q> {
    row.iter().map(|x| Q::from_integer(x.clone())).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (lo, hi) = if i < r {
                    m.split_at_mut(r)
                } else {
                    m.split_at_mut(i)
                };
                let (src, dst) = if i < r {
                    (&hi[0], &mut lo[i])
                } else {
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in dst.iter_mut().zip(src.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    rank(&rows.iter().map(|r| to_q(r)).collect::<Vec<_>>())
}

/// Scales a rational vector to the primitive integer vector with the same direction.
pub fn primitive(v: &[Q]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Q::from_integer(lcm.clone())).to_integer())
        .collect();
    primitive_int(&ints)
}

pub fn primitive_int(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Basis of the right null space `{x : M x = 0}`, as primitive integer vectors.
pub fn nullspace(rows: &[Vec<Q>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            primitive(&v)
        })
        .collect()
}

/// Solves `M x = b` for some `x`, if consistent.
pub fn solve(rows: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Q>> = rows
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn dot_q(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_big(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let m = vec![to_q(&[1, 2, 3]), to_q(&[2, 4, 6]), to_q(&[0, 1, 1])];
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            assert!(dot_q(row, &big_to_q(&ns[0])).is_zero());
        }
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![
            Q::new(BigInt::from(1), BigInt::from(2)),
            Q::new(BigInt::from(-3), BigInt::from(4)),
        ];
        assert_eq!(primitive(&v), vec![BigInt::from(2), BigInt::from(-3)]);
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = vec![to_q(&[1, 1]), to_q(&[1, -1])];
        let x = solve(&m, &to_q(&[3, 1])).unwrap();
        assert_eq!(x, to_q(&[2, 1]));
        let singular = vec![to_q(&[1, 1]), to_q(&[2, 2])];
        assert!(solve(&singular, &to_q(&[1, 3])).is_none());
    }
}
