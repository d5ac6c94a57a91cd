use serde::{Deserialize, Serialize};

use super::{enumerate_h, IntVector};

/// One of the three torus factors acting on the triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

/// The covector `Σ_{v : coord_axis(v) >= i} e_v`, pairing a g-vector with its `i`-th weight entry.
pub fn weight_covector(n: usize, axis: Axis, i: usize) -> IntVector {
    let h = enumerate_h(n).expect("n >= 1");
    let mut out = IntVector::zeros(n);
    for &v in h.iter() {
        let coord = match axis {
            Axis::X => v.a,
            Axis::Y => v.b,
            Axis::Z => v.c,
        };
        if coord >= i {
            out.set(v, 1);
        }
    }
    out
}

/// Characters `(X, Y, Z)` of `z^g`: `X_i = Σ_{a >= i} g_(a,b,c)` and likewise for `b`, `c`.
pub fn weight_of(g: &IntVector) -> [Vec<i64>; 3] {
    let n = g.n();
    Axis::ALL.map(|axis| {
        (1..=n)
            .map(|i| weight_covector(n, axis, i).dot(g))
            .collect()
    })
}
