//! Laurent sums, mutation pullbacks, theta functions of frozen indices, the potential `W`
//! and its tropicalization.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{enumerate_h, IntMatrix, IntVector, TriIndex};
use crate::quiver::{initial_seed, optimized_seed_path, Seed};

/// A finite sum `Σ c_v z^v` with integer coefficients and exponents in `Z^{H_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSum {
    n: usize,
    terms: BTreeMap<IntVector, i64>,
}

impl LaurentSum {
    pub fn zero(n: usize) -> Self {
        LaurentSum {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exponent: IntVector) -> Self {
        let mut out = Self::zero(exponent.n());
        out.add_term(exponent, 1);
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, exponent: IntVector, coeff: i64) {
        assert_eq!(exponent.n(), self.n, "exponent over a different H_n");
        let entry = self.terms.entry(exponent).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn add(&self, other: &LaurentSum) -> LaurentSum {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    /// Terms in canonical exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&IntVector, i64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: &IntVector) -> i64 {
        self.terms.get(exponent).copied().unwrap_or(0)
    }

    pub fn max_coefficient(&self) -> i64 {
        self.terms.values().copied().max().unwrap_or(0)
    }
}

impl Serialize for LaurentSum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            coeff: i64,
            exponent: &'a IntVector,
        }
        let terms: Vec<Term<'_>> = self
            .terms
            .iter()
            .map(|(e, &c)| Term {
                coeff: c,
                exponent: e,
            })
            .collect();
        let mut st = s.serialize_struct("LaurentSum", 1)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

fn binomial(p: i64, j: i64) -> i64 {
    (0..j).fold(1i64, |acc, i| acc * (p - i) / (i + 1))
}

/// `μ_k^*(z^m) = z^m (1 + z^{e_k})^{-{m, e_k}}`, with `e_k` the basis vector of the seed
/// being mutated (initial coordinates) and `{·,·}` the initial skew form.
pub fn pullback(
    sum: &LaurentSum,
    eps0: &IntMatrix,
    k: TriIndex,
    e_k: &IntVector,
) -> Result<LaurentSum> {
    let mut out = LaurentSum::zero(sum.n());
    for (m, c) in sum.terms() {
        let p = -Seed::skew_form(eps0, m, e_k);
        if p < 0 {
            return Err(Error::NegativeExponent {
                vertex: k,
                exponent: p,
            });
        }
        for j in 0..=p {
            out.add_term(m.axpy(j, e_k), c * binomial(p, j));
        }
    }
    Ok(out)
}

/// The three families of frozen theta functions, named by the edge of the triangle they live on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `c = 0` edge: `ϑ_(a,b,0)`.
    AB,
    /// `a = 0` edge: `ϑ_(0,b,c)`.
    BC,
    /// `b = 0` edge: `ϑ_(a,0,c)`.
    AC,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::AB, Family::BC, Family::AC];

    /// Family of a non-corner frozen index.
    pub fn of(f: TriIndex) -> Option<Family> {
        if f.is_corner() || !f.is_frozen() {
            None
        } else if f.c == 0 {
            Some(Family::AB)
        } else if f.a == 0 {
            Some(Family::BC)
        } else {
            Some(Family::AC)
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::AB => "AB",
            Family::BC => "BC",
            Family::AC => "AC",
        }
    }
}

/// The line of vertices carrying the theta function of non-corner frozen `f`, starting at `f`.
pub fn theta_line(f: TriIndex) -> Vec<TriIndex> {
    let TriIndex { a, b, c } = f;
    match Family::of(f) {
        Some(Family::AB) => (0..b).map(|j| TriIndex::new(a, b - j, j)).collect(),
        Some(Family::BC) => (0..c).map(|j| TriIndex::new(j, b, c - j)).collect(),
        Some(Family::AC) => (0..a).map(|j| TriIndex::new(a - j, j, c)).collect(),
        None => vec![f],
    }
}

/// Closed form of `ϑ_f`: partial sums of the line through `f`, negated, as exponents.
pub fn theta_frozen(n: usize, f: TriIndex) -> Result<LaurentSum> {
    check_frozen(n, f)?;
    let mut out = LaurentSum::zero(n);
    let mut exponent = IntVector::zeros(n);
    for v in theta_line(f) {
        exponent.add_at(v, -1);
        out.add_term(exponent.clone(), 1);
    }
    Ok(out)
}

/// `ϑ_f` computed by pulling `z^{-e_f}` of the optimized seed back to the initial seed.
pub fn theta_by_mutation(n: usize, f: TriIndex) -> Result<LaurentSum> {
    check_frozen(n, f)?;
    let path = optimized_seed_path(n, f)?;
    let s0 = initial_seed(n)?;
    let mut seeds = vec![s0.clone()];
    for &k in &path.steps {
        let next = seeds.last().expect("nonempty").mutate(k)?;
        seeds.push(next);
    }
    let last = seeds.last().expect("nonempty");
    let mut sum = LaurentSum::monomial(last.basis(f).neg());
    for (i, &k) in path.steps.iter().enumerate().rev() {
        sum = pullback(&sum, s0.epsilon(), k, seeds[i].basis(k))?;
    }
    Ok(sum)
}

fn check_frozen(n: usize, f: TriIndex) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidRank { n, min: 2 });
    }
    if f.n() != n {
        return Err(Error::NotInH { v: f, n });
    }
    if !f.is_frozen() {
        return Err(Error::UnfrozenVertex(f));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaCertificate {
    pub n: usize,
    pub status: &'static str,
    pub checked: Vec<TriIndex>,
    pub failures: Vec<TriIndex>,
}

impl ThetaCertificate {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Compares [`theta_by_mutation`] with [`theta_frozen`] at every frozen index.
pub fn check_theta(n: usize) -> Result<ThetaCertificate> {
    let h = enumerate_h(n)?;
    let mut checked = Vec::new();
    let mut failures = Vec::new();
    for f in h.frozen() {
        if theta_by_mutation(n, f)? != theta_frozen(n, f)? {
            failures.push(f);
        }
        checked.push(f);
    }
    Ok(ThetaCertificate {
        n,
        status: if failures.is_empty() { "pass" } else { "fail" },
        checked,
        failures,
    })
}

/// The potential: sum of `ϑ_f` over the non-corner frozen `f` of the selected families.
pub fn build_w(n: usize, families: &[Family]) -> Result<LaurentSum> {
    if families.is_empty() {
        return Err(Error::Invalid("empty family set".into()));
    }
    let h = enumerate_h(n)?;
    let mut out = LaurentSum::zero(n);
    for f in h.frozen() {
        if Family::of(f).is_some_and(|fam| families.contains(&fam)) {
            out = out.add(&theta_frozen(n, f)?);
        }
    }
    Ok(out)
}

/// `⟨coeffs, x⟩ >= 0`, with a label naming its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TropicalInequality {
    pub label: String,
    pub coeffs: IntVector,
}

impl TropicalInequality {
    pub fn holds(&self, x: &IntVector) -> bool {
        self.coeffs.dot(x) >= 0
    }
}

/// One inequality `⟨x, v⟩ >= 0` per monomial `z^{-v}`.
pub fn tropicalize(w: &LaurentSum) -> Vec<TropicalInequality> {
    w.terms()
        .map(|(e, _)| {
            let coeffs = e.neg();
            TropicalInequality {
                label: monomial_label(&coeffs),
                coeffs,
            }
        })
        .collect()
}

/// Label `family:f:i` when `v` is the i-th partial sum along the line of frozen `f`.
pub fn monomial_label(v: &IntVector) -> String {
    let n = v.n();
    let support = v.support();
    if let Ok(h) = enumerate_h(n) {
        for f in h.frozen() {
            let Some(fam) = Family::of(f) else { continue };
            let line = theta_line(f);
            if support.len() <= line.len()
                && support.iter().all(|&(_, x)| x == 1)
                && line[..support.len()].iter().all(|u| v.get(*u) == 1)
            {
                return format!("{}:{}:{}", fam.name(), f, support.len() - 1);
            }
        }
    }
    format!("{v}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: usize, b: usize, c: usize) -> TriIndex {
        TriIndex::new(a, b, c)
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            theta_frozen(4, t(3, 1, 0)).unwrap(),
            LaurentSum::monomial(IntVector::unit(4, t(3, 1, 0)).neg())
        );
        let th = theta_frozen(4, t(1, 3, 0)).unwrap();
        assert_eq!(th.len(), 3);
        let e = |v| IntVector::unit(4, v);
        let want = [
            e(t(1, 3, 0)).neg(),
            e(t(1, 3, 0)).add(&e(t(1, 2, 1))).neg(),
            e(t(1, 3, 0)).add(&e(t(1, 2, 1))).add(&e(t(1, 1, 2))).neg(),
        ];
        for w in &want {
            assert_eq!(th.coefficient(w), 1);
        }
        assert_eq!(theta_frozen(3, t(0, 1, 2)).unwrap().len(), 2);
        assert_eq!(theta_frozen(4, t(4, 0, 0)).unwrap().len(), 1);
        assert!(theta_frozen(4, t(2, 1, 1)).is_err());
    }

    #[test]
    fn pullback_unchanged_when_orthogonal() {
        let s = initial_seed(4).unwrap();
        let k = t(2, 1, 1);
        let m = LaurentSum::monomial(IntVector::unit(4, t(0, 2, 2)).neg());
        let out = pullback(&m, s.epsilon(), k, s.basis(k)).unwrap();
        assert_eq!(out, m);
        let one = LaurentSum::monomial(IntVector::zeros(4));
        assert_eq!(pullback(&one, s.epsilon(), k, s.basis(k)).unwrap(), one);
    }

    #[test]
    fn pullback_rejects_negative_power() {
        let s = initial_seed(3).unwrap();
        let k = t(1, 1, 1);
        // {e_(2,0,1), e_k} = 1, so z^{e_(2,0,1)} would need the power -1.
        let ok = LaurentSum::monomial(IntVector::unit(3, t(2, 0, 1)).neg());
        let bad = LaurentSum::monomial(IntVector::unit(3, t(2, 0, 1)));
        assert_eq!(pullback(&ok, s.epsilon(), k, s.basis(k)).unwrap().len(), 2);
        assert_eq!(
            pullback(&bad, s.epsilon(), k, s.basis(k)),
            Err(Error::NegativeExponent {
                vertex: k,
                exponent: -1
            })
        );
    }

    #[test]
    fn w_counts() {
        assert_eq!(build_w(2, &Family::ALL).unwrap().len(), 3);
        assert_eq!(build_w(4, &Family::ALL).unwrap().len(), 18);
        assert_eq!(build_w(4, &[Family::AB, Family::BC]).unwrap().len(), 12);
        assert!(build_w(4, &[]).is_err());
    }

    #[test]
    fn tropical_labels() {
        let ineq = tropicalize(&theta_frozen(4, t(1, 3, 0)).unwrap());
        let labels: Vec<&str> = ineq.iter().map(|i| i.label.as_str()).collect();
        assert!(labels.contains(&"AB:(1,3,0):1"));
        let box_ineq = tropicalize(&theta_frozen(4, t(3, 1, 0)).unwrap());
        assert_eq!(box_ineq[0].coeffs, IntVector::unit(4, t(3, 1, 0)));
    }
}
