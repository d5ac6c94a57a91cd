use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use hive_forge::lattice::{
    enumerate_h, smith_normal_form, spans_full_lattice, IntMatrix, IntVector,
};

type Big = Vec<Vec<BigInt>>;

fn mul(a: &Big, b: &Big) -> Big {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, r)| x * &r[j]).sum())
                .collect()
        })
        .collect()
}

/// Fraction-free elimination.
fn det(m: &Big) -> BigInt {
    let k = m.len();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for i in 0..k {
        let Some(p) = (i..k).find(|&r| !a[r][i].is_zero()) else {
            return BigInt::zero();
        };
        if p != i {
            a.swap(p, i);
            sign = -sign;
        }
        for r in i + 1..k {
            for c in i + 1..k {
                a[r][c] = (&a[r][c] * &a[i][i] - &a[r][i] * &a[i][c]) / &prev;
            }
            a[r][i] = BigInt::zero();
        }
        prev = a[i][i].clone();
    }
    sign * &a[k - 1][k - 1]
}

/// The span is all of `Z^d` iff the maximal minors have gcd one.
fn full_lattice_by_minors(rows: &[Vec<i64>], d: usize) -> bool {
    fn choose(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            choose(m, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut subsets = Vec::new();
    choose(rows.len(), d, 0, &mut Vec::new(), &mut subsets);
    let g = subsets.iter().fold(BigInt::zero(), |g, s| {
        let sub: Big = s
            .iter()
            .map(|&i| rows[i].iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        g.gcd(&det(&sub))
    });
    g.is_one()
}

#[test]
fn h_is_strictly_ordered() {
    for n in 1..=9 {
        let h = enumerate_h(n).unwrap();
        assert_eq!(h.len(), (n + 1) * (n + 2) / 2);
        let mut sorted = h.as_slice().to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), h.len());
        assert!(h
            .as_slice()
            .windows(2)
            .all(|w| (w[0].a, w[0].b) > (w[1].a, w[1].b)));
    }
}

proptest! {
    #[test]
    fn snf_is_a_unimodular_diagonalization(
        (c, data) in (1usize..5, 1usize..5)
            .prop_flat_map(|(r, c)| (Just(c), prop::collection::vec(-6i64..=6, r * c)))
    ) {
        let rows: Vec<Vec<i64>> = data.chunks(c).map(|x| x.to_vec()).collect();
        let m = IntMatrix::from_rows(&rows).unwrap();
        let s = smith_normal_form(&m);
        let big: Big = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let d = mul(&mul(&s.left, &big), &s.right);
        prop_assert_eq!(d.len(), rows.len());
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j && i < s.diag.len() { s.diag[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(x, &want);
            }
        }
        prop_assert!(det(&s.left).abs().is_one());
        prop_assert!(det(&s.right).abs().is_one());
        for w in s.diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
    }

    #[test]
    fn full_lattice_agrees_with_minor_oracle(
        data in (3usize..6).prop_flat_map(|m| prop::collection::vec(-3i64..=3, m * 3))
    ) {
        let rows: Vec<Vec<i64>> = data.chunks(3).map(|x| x.to_vec()).collect();
        let vs: Vec<IntVector> = rows.iter().map(|r| IntVector::from_dense(1, r.clone()).unwrap()).collect();
        prop_assert_eq!(spans_full_lattice(&vs), full_lattice_by_minors(&rows, 3));
    }
}
