use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{big_to_q, dot_big, nullspace, primitive, primitive_int, rank, solve, Q};

/// Extreme rays of `{x : E x = 0, A x >= 0}` modulo its lineality space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeRays {
    /// Primitive integer generators of the pointed part, orthogonal to the lineality space.
    pub rays: Vec<Vec<BigInt>>,
    /// Integer basis of the lineality space.
    pub lineality: Vec<Vec<BigInt>>,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn contains(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    y: Vec<BigInt>,
    zeros: Bits,
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Double description method with exact integer arithmetic.
pub fn extreme_rays(ineqs: &[Vec<i64>], eqs: &[Vec<i64>], dim: usize) -> ConeRays {
    let ineqs = to_big(ineqs);
    let eqs = to_big(eqs);
    let q_rows = |rows: &[Vec<BigInt>]| rows.iter().map(|r| big_to_q(r)).collect::<Vec<_>>();

    let mut all = q_rows(&eqs);
    all.extend(q_rows(&ineqs));
    let lineality = nullspace(&all, dim);

    let mut sub = q_rows(&eqs);
    sub.extend(q_rows(&lineality));
    let basis = nullspace(&sub, dim);
    let k = basis.len();
    if k == 0 {
        return ConeRays {
            rays: Vec::new(),
            lineality,
        };
    }

    // inequalities in coordinates of the basis
    let proj: Vec<Vec<BigInt>> = ineqs
        .iter()
        .map(|a| basis.iter().map(|b| dot_big(a, b)).collect())
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();

    // k independent rows give the initial simplicial cone
    let mut chosen: Vec<usize> = Vec::new();
    let mut chosen_rows: Vec<Vec<Q>> = Vec::new();
    for (i, r) in proj.iter().enumerate() {
        let mut trial = chosen_rows.clone();
        trial.push(big_to_q(r));
        if rank(&trial) == trial.len() {
            chosen.push(i);
            chosen_rows = trial;
            if chosen.len() == k {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), k, "pointed cone has full-rank inequalities");

    let m = proj.len();
    let mut rays: Vec<Ray> = (0..k)
        .map(|j| {
            let mut rhs = vec![Q::zero(); k];
            rhs[j] = Q::from_integer(1.into());
            let y = primitive(&solve(&chosen_rows, &rhs).expect("invertible"));
            let mut zeros = Bits::new(m);
            for (t, &i) in chosen.iter().enumerate() {
                if t != j {
                    zeros.set(i);
                }
            }
            Ray { y, zeros }
        })
        .collect();

    let mut processed = vec![false; m];
    for &i in &chosen {
        processed[i] = true;
    }
    for i in 0..m {
        if processed[i] {
            continue;
        }
        processed[i] = true;
        let vals: Vec<BigInt> = rays.iter().map(|r| dot_big(&proj[i], &r.y)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_negative()).collect();
        if neg.is_empty() {
            for (j, r) in rays.iter_mut().enumerate() {
                if vals[j].is_zero() {
                    r.zeros.set(i);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + 2 < k {
                    continue;
                }
                let adjacent =
                    (0..rays.len()).all(|j| j == p || j == q || !rays[j].zeros.contains(&common));
                if !adjacent {
                    continue;
                }
                let y: Vec<BigInt> = rays[q]
                    .y
                    .iter()
                    .zip(&rays[p].y)
                    .map(|(yn, yp)| &vals[p] * yn - &vals[q] * yp)
                    .collect();
                let mut zeros = common;
                zeros.set(i);
                next.push(Ray {
                    y: primitive_int(&y),
                    zeros,
                });
            }
        }
        for (j, mut r) in rays.into_iter().enumerate() {
            if vals[j].is_zero() {
                r.zeros.set(i);
                next.push(r);
            } else if vals[j].is_positive() {
                next.push(r);
            }
        }
        rays = next;
    }

    let mut out: Vec<Vec<BigInt>> = rays
        .iter()
        .map(|r| {
            let x: Vec<BigInt> = (0..dim)
                .map(|c| {
                    r.y.iter()
                        .zip(&basis)
                        .fold(BigInt::zero(), |acc, (yj, b)| acc + yj * &b[c])
                })
                .collect();
            primitive_int(&x)
        })
        .collect();
    out.sort();
    out.dedup();
    ConeRays {
        rays: out,
        lineality,
    }
}
