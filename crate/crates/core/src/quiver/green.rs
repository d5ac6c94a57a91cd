use std::collections::BTreeMap;

use serde::Serialize;

use super::{initial_seed, FramedSeed, MutationSequence, Seed, Status};
use crate::error::{Error, Result};
use crate::lattice::TriIndex;

/// Unfrozen row `r` counted from the top: `{(n-1-r, b, r+1-b) : 1 <= b <= r}`, by increasing `b`.
pub fn unfrozen_row(n: usize, r: usize) -> Vec<TriIndex> {
    if r == 0 || r + 2 > n {
        return Vec::new();
    }
    (1..=r)
        .map(|b| TriIndex::new(n - 1 - r, b, r + 1 - b))
        .collect()
}

/// `i_{△_r}`: the top `r` unfrozen rows, top to bottom, each left to right.
pub fn triangle_sequence(n: usize, r: usize) -> MutationSequence {
    MutationSequence::new((1..=r).flat_map(|row| unfrozen_row(n, row)).collect())
}

/// The maximal green sequence `i_{△_{n-2}}, i_{△_{n-3}}, ..., i_{△_1}`.
pub fn mgs_sequence(n: usize) -> MutationSequence {
    let steps = (1..=n.saturating_sub(2))
        .rev()
        .flat_map(|r| triangle_sequence(n, r).steps)
        .collect();
    MutationSequence::new(steps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub vertex: TriIndex,
    pub status_before: Status,
}

/// Outcome of comparing the final framed quiver with the coframed initial quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoframedCheck {
    pub matches: bool,
    /// `relabeling[v]` is the vertex of the final quiver playing the role of initial vertex `v`.
    pub relabeling: Vec<(TriIndex, TriIndex)>,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenCertificate {
    pub n: usize,
    pub status: &'static str,
    pub sequence: Vec<TriIndex>,
    pub steps: Vec<StepRecord>,
    pub all_red: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coframed: Option<CoframedCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl GreenCertificate {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// The vertex relabeling `σ` under which the end of the maximal green sequence is the
/// initial framed quiver with its frame arrows reversed: reflection `(a,b,c) -> (c,b,a)`
/// on unfrozen vertices, `(a,b,0) -> (0,b,a)`, `(0,b,c) -> (b,0,c)`, `(a,0,c) -> (a,c,0)`
/// on the boundary, corners fixed.
pub fn coframed_relabeling(v: TriIndex) -> TriIndex {
    let TriIndex { a, b, c } = v;
    if v.is_corner() {
        v
    } else if !v.is_frozen() {
        v.reflect()
    } else if c == 0 {
        TriIndex::new(0, b, a)
    } else if a == 0 {
        TriIndex::new(b, 0, c)
    } else {
        TriIndex::new(a, c, b)
    }
}

/// Compares the final framed seed with the coframed initial quiver.
///
/// With `σ` from [`coframed_relabeling`], the frame arrow at `v` must end at `σ(v)` with
/// c-vector `-e_v`, and `ε_final(σx, σy) = ε₀(x, y)`. Since the reflection is an
/// anti-automorphism of the initial quiver, `ψ = σ ∘ reflect` then reverses every arrow,
/// `ε_final(ψx, ψy) = -ε₀(x, y)`, which is checked as well.
fn check_coframed(initial: &Seed, fs: &FramedSeed) -> CoframedCheck {
    let h = initial.index_set().clone();
    let unfrozen = fs.unfrozen().to_vec();
    let mut mismatches = Vec::new();
    let relabeling: Vec<(TriIndex, TriIndex)> =
        h.iter().map(|&v| (v, coframed_relabeling(v))).collect();
    let sigma: BTreeMap<TriIndex, TriIndex> = relabeling.iter().copied().collect();

    for (i, &vi) in unfrozen.iter().enumerate() {
        let target = sigma[&vi];
        match fs.c_vector(target) {
            Ok(c) => {
                let want: Vec<i64> = (0..unfrozen.len())
                    .map(|j| if i == j { -1 } else { 0 })
                    .collect();
                if c != want {
                    mismatches.push(format!(
                        "frame arrow at {vi}: c-vector of {target} is {c:?}"
                    ));
                }
            }
            Err(e) => mismatches.push(format!("frame arrow at {vi}: {e}")),
        }
    }
    let fin = fs.base();
    for &x in h.iter() {
        for &y in h.iter() {
            if x.is_frozen() && y.is_frozen() {
                continue;
            }
            let want = initial.eps(x, y);
            let got = fin.eps(sigma[&x], sigma[&y]);
            if got != want {
                mismatches.push(format!(
                    "arrow {x}->{y}: expected {want} between {} and {}, found {got}",
                    sigma[&x], sigma[&y]
                ));
            }
            let psi = |v: TriIndex| sigma[&v.reflect()];
            let reversed = fin.eps(psi(x), psi(y));
            if reversed != -initial.eps(x, y) {
                mismatches.push(format!(
                    "arrow {x}->{y} is not reversed at {} and {}",
                    psi(x),
                    psi(y)
                ));
            }
        }
    }
    CoframedCheck {
        matches: mismatches.is_empty(),
        relabeling,
        mismatches,
    }
}

/// Runs `seq` on the principally framed initial seed, recording green/red status before
/// each step. For the maximal green sequence the final quiver is also compared with
/// the coframed initial quiver.
pub fn verify_green_sequence(n: usize, seq: &MutationSequence) -> Result<GreenCertificate> {
    seq.validate(n)?;
    let initial = initial_seed(n)?;
    let mut fs = FramedSeed::initial(n)?;
    let mut steps = Vec::with_capacity(seq.len());
    let mut failure = None;
    for (i, &k) in seq.steps.iter().enumerate() {
        let status = fs.status(k)?;
        steps.push(StepRecord {
            step: i + 1,
            vertex: k,
            status_before: status,
        });
        if status == Status::Red {
            failure = Some(format!("step {} mutates red vertex {k}", i + 1));
            break;
        }
        fs = fs.mutate(k)?;
        fs.check_sign_coherence()?;
    }
    let all_red = failure.is_none()
        && fs
            .unfrozen()
            .iter()
            .all(|&k| matches!(fs.status(k), Ok(Status::Red)));
    if failure.is_none() && !all_red {
        failure = Some("sequence ends with a green vertex".to_string());
    }
    let coframed =
        (failure.is_none() && *seq == mgs_sequence(n)).then(|| check_coframed(&initial, &fs));
    if let Some(c) = &coframed {
        if !c.matches {
            failure = Some(format!(
                "final quiver differs from coframed quiver: {}",
                c.mismatches[0]
            ));
        }
    }
    Ok(GreenCertificate {
        n,
        status: if failure.is_none() { "pass" } else { "fail" },
        sequence: seq.steps.clone(),
        steps,
        all_red,
        coframed,
        failure,
    })
}

/// Result of the structural check on the unfrozen subquiver after `i_{△_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ItritriReport {
    pub n: usize,
    pub r: usize,
    pub matches: bool,
    pub mismatches: Vec<String>,
}

/// Predicted unfrozen subquiver after `i_{△_r}`: rows above `r - 1` keep their arrows,
/// the horizontal arrows of rows `r` and `r + 1` are gone, and the diagonals between
/// rows `r` and `r + 1` are reversed.
fn predicted_after_triangle(initial: &Seed, r: usize, x: TriIndex, y: TriIndex) -> i64 {
    let n = initial.n();
    let row = |v: TriIndex| n - 1 - v.a;
    let e = initial.eps(x, y);
    if e == 0 {
        return 0;
    }
    let (rx, ry) = (row(x), row(y));
    if rx == ry && (rx == r || rx == r + 1) {
        0
    } else if rx != ry && rx.min(ry) == r && rx.max(ry) == r + 1 {
        -e
    } else {
        e
    }
}

/// Compares the unfrozen subquiver after `i_{△_r}` with its predicted shape.
pub fn lemma_itritri_check(n: usize, r: usize) -> Result<ItritriReport> {
    if r == 0 || r + 2 > n {
        return Err(Error::Invalid(format!("row {r} out of range for n = {n}")));
    }
    let initial = initial_seed(n)?;
    let after = initial.mutate_sequence(&triangle_sequence(n, r))?;
    let unfrozen = initial.unfrozen();
    let mut mismatches = Vec::new();
    for &x in &unfrozen {
        for &y in &unfrozen {
            let want = predicted_after_triangle(&initial, r, x, y);
            let got = after.eps(x, y);
            if want != got {
                mismatches.push(format!("{x}->{y}: predicted {want}, found {got}"));
            }
        }
    }
    Ok(ItritriReport {
        n,
        r,
        matches: mismatches.is_empty(),
        mismatches,
    })
}
