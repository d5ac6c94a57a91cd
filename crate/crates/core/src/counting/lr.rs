use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::WeightTriple;
use crate::error::{Error, Result};

fn is_partition(p: &[i64]) -> bool {
    p.iter().all(|&x| x >= 0) && p.windows(2).all(|w| w[0] >= w[1])
}

pub fn is_dominant(p: &[i64]) -> bool {
    p.windows(2).all(|w| w[0] >= w[1])
}

struct Skew<'a> {
    lambda: Vec<usize>,
    nu: Vec<usize>,
    mu: &'a [usize],
    /// cells of `ν/λ` in reading order: rows top to bottom, each row right to left
    cells: Vec<(usize, usize)>,
    filling: Vec<Vec<usize>>,
    content: Vec<usize>,
    count: u64,
}

impl Skew<'_> {
    /// Reading order lets the lattice condition be checked as entries are placed.
    fn fill(&mut self, i: usize) {
        let Some(&(r, c)) = self.cells.get(i) else {
            self.count += 1;
            return;
        };
        let right = (c + 1 < self.nu[r]).then(|| self.filling[r][c + 1]);
        let above = (r > 0 && c >= self.lambda[r - 1]).then(|| self.filling[r - 1][c]);
        let lo = above.map_or(1, |x| x + 1);
        let hi = right.unwrap_or(self.mu.len());
        for v in lo..=hi {
            if self.content[v - 1] == self.mu[v - 1]
                || (v > 1 && self.content[v - 1] == self.content[v - 2])
            {
                continue;
            }
            self.content[v - 1] += 1;
            self.filling[r][c] = v;
            self.fill(i + 1);
            self.content[v - 1] -= 1;
        }
    }
}

/// `c^ν_{λμ}`: semistandard fillings of `ν/λ` with content `μ` whose reverse row reading word
/// is a lattice word.
pub fn lr_coefficient(lambda: &[i64], mu: &[i64], nu: &[i64]) -> u64 {
    if !is_partition(lambda) || !is_partition(mu) || !is_partition(nu) {
        return 0;
    }
    let total = |p: &[i64]| p.iter().sum::<i64>();
    if total(nu) != total(lambda) + total(mu) {
        return 0;
    }
    let nu: Vec<usize> = nu.iter().map(|&x| x as usize).filter(|&x| x > 0).collect();
    let mut lam: Vec<usize> = lambda
        .iter()
        .map(|&x| x as usize)
        .filter(|&x| x > 0)
        .collect();
    let mu: Vec<usize> = mu.iter().map(|&x| x as usize).filter(|&x| x > 0).collect();
    if lam.len() > nu.len() {
        return 0;
    }
    lam.resize(nu.len(), 0);
    if lam.iter().zip(&nu).any(|(l, n)| l > n) {
        return 0;
    }
    if mu.is_empty() {
        return 1;
    }
    let cells = (0..nu.len())
        .flat_map(|r| (lam[r]..nu[r]).rev().map(move |c| (r, c)))
        .collect();
    let filling = nu.iter().map(|&n| vec![0; n]).collect();
    let mut s = Skew {
        lambda: lam,
        nu,
        mu: &mu,
        cells,
        filling,
        content: vec![0; mu.len()],
        count: 0,
    };
    s.fill(0);
    s.count
}

/// `-w0(λ) = (-λ_n, ..., -λ_1)`.
pub fn dual(lambda: &[i64]) -> Vec<i64> {
    lambda.iter().rev().map(|x| -x).collect()
}

/// `dim (V_α ⊗ V_β ⊗ V_γ)^{GL_n} = c^{-w0(γ)}_{αβ}`, after shifting `α` and `β` by the smallest
/// multiples of `(1, ..., 1)` that make them partitions and shifting `-w0(γ)` by the sum of both.
pub fn invariant_dimension(w: &WeightTriple) -> Result<u64> {
    w.check_dominant()?;
    if w.total() != 0 {
        return Ok(0);
    }
    let shift = |p: &[i64]| (-p.last().copied().unwrap_or(0)).max(0);
    let s = shift(&w.alpha);
    let t = shift(&w.beta);
    let alpha: Vec<i64> = w.alpha.iter().map(|x| x + s).collect();
    let beta: Vec<i64> = w.beta.iter().map(|x| x + t).collect();
    let nu: Vec<i64> = dual(&w.gamma).iter().map(|x| x + s + t).collect();
    Ok(lr_coefficient(&alpha, &beta, &nu))
}

/// `Π_{i<j} (λ_i - λ_j + j - i) / (j - i)`.
pub fn weyl_dimension(lambda: &[i64]) -> Result<u64> {
    if !is_dominant(lambda) {
        return Err(Error::Invalid(format!("{lambda:?} is not dominant")));
    }
    let n = lambda.len();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= lambda[i] - lambda[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    (num / den)
        .to_u64()
        .ok_or(Error::Overflow("Weyl dimension"))
}

/// Number of Gelfand-Tsetlin patterns with top row `λ`, by direct enumeration of interlacing rows.
pub fn count_gt(lambda: &[i64]) -> Result<u64> {
    if !is_dominant(lambda) {
        return Err(Error::Invalid(format!("{lambda:?} is not dominant")));
    }
    fn below(row: &[i64]) -> u64 {
        if row.len() <= 1 {
            return 1;
        }
        let mut next = vec![0; row.len() - 1];
        fn choose(row: &[i64], next: &mut Vec<i64>, i: usize) -> u64 {
            if i == next.len() {
                return below(next);
            }
            let mut total = 0;
            for x in row[i + 1]..=row[i] {
                next[i] = x;
                total += choose(row, next, i + 1);
            }
            total
        }
        choose(row, &mut next, 0)
    }
    Ok(below(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lr() {
        assert_eq!(lr_coefficient(&[2, 1], &[], &[2, 1]), 1);
        assert_eq!(lr_coefficient(&[1], &[1], &[2]), 1);
        assert_eq!(lr_coefficient(&[1], &[1, 1], &[2, 1]), 1);
        assert_eq!(lr_coefficient(&[2, 1], &[2, 1], &[3, 2, 1]), 2);
        assert_eq!(lr_coefficient(&[1], &[1], &[3]), 0);
        assert_eq!(lr_coefficient(&[1], &[1], &[1, 1]), 1);
    }

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dimension(&[0, 0, 0]).unwrap(), 1);
        assert_eq!(weyl_dimension(&[3, 0]).unwrap(), 4);
        assert_eq!(weyl_dimension(&[2, 1, 0]).unwrap(), 8);
        assert_eq!(count_gt(&[2, 1, 0]).unwrap(), 8);
        assert_eq!(count_gt(&[5, 0]).unwrap(), 6);
        assert!(weyl_dimension(&[0, 1]).is_err());
    }

    #[test]
    fn invariants() {
        let w = |a: &[i64], b: &[i64], c: &[i64]| {
            WeightTriple::new(a.to_vec(), b.to_vec(), c.to_vec()).unwrap()
        };
        assert_eq!(
            invariant_dimension(&w(&[0, 0], &[0, 0], &[0, 0])).unwrap(),
            1
        );
        assert_eq!(
            invariant_dimension(&w(&[1, 0], &[1, 0], &[-1, -1])).unwrap(),
            1
        );
        assert_eq!(
            invariant_dimension(&w(&[2, 1, 0], &[2, 1, 0], &[-1, -2, -3])).unwrap(),
            2
        );
        assert_eq!(
            invariant_dimension(&w(&[1, 0], &[0, 0], &[0, 0])).unwrap(),
            0
        );
    }
}
