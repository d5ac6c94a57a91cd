//! One line per acceptance criterion; exits non-zero if any fails.

use std::time::{Duration, Instant};

use hive_forge::cones::{
    check_gmgs, check_gt_correspondence, check_unimodular, check_wgs, check_xi_u, classify_rays,
    convexity_certificate, pstar,
};
use hive_forge::counting::{
    calibrate, calibration_suite, count_all, count_gt, dominant_grid, mgs_weight_involution_check,
    spot_triples_n4, weyl_dimension, CALIBRATED,
};
use hive_forge::lattice::enumerate_h;
use hive_forge::potential::check_theta;
use hive_forge::quiver::{mgs_sequence, verify_green_sequence, Status};
use hive_forge::Result;

struct Check {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Result<Check> {
    Ok(Check {
        ok,
        detail: detail.into(),
    })
}

fn mgs() -> Result<Check> {
    for n in 3..=6 {
        let c = verify_green_sequence(n, &mgs_sequence(n))?;
        let every_step_green = c.steps.iter().all(|s| s.status_before == Status::Green);
        let coframed = c.coframed.as_ref().is_some_and(|k| k.matches);
        if !(c.passed() && every_step_green && c.all_red && coframed) {
            return check(false, format!("n={n}: {:?}", c.failure));
        }
    }
    check(true, "n=3..6 green at every step, all red, coframed match")
}

fn unimodular() -> Result<Check> {
    for n in 2..=7 {
        let c = check_unimodular(&pstar(n)?)?;
        if !c.passed() || c.snf_diagonal.iter().any(|&d| d != 1) {
            return check(false, format!("n={n}: diagonal {:?}", c.snf_diagonal));
        }
    }
    check(true, "n=2..7 invariant factors all 1")
}

fn potential_identity() -> Result<Check> {
    for n in 2..=7 {
        let c = check_wgs(n)?;
        let want = 3 * n * (n - 1) / 2;
        if !c.passed() || c.monomials != want || c.rhombi != want || c.pairs.len() != want {
            return check(
                false,
                format!(
                    "n={n}: {} monomials, {} rhombi, {:?}",
                    c.monomials, c.rhombi, c.failures
                ),
            );
        }
    }
    check(
        true,
        "n=2..7 monomials and rhombi in bijection, 3n(n-1)/2 each",
    )
}

fn theta() -> Result<Check> {
    for n in 2..=6 {
        let c = check_theta(n)?;
        if !c.passed() || c.checked.len() != enumerate_h(n)?.frozen().count() {
            return check(false, format!("n={n}: {:?}", c.failures));
        }
    }
    check(true, "n=2..6 every frozen index")
}

fn counting_triangle() -> Result<Check> {
    let calibration = calibrate(&pstar)?;
    if calibration.selected != Some(CALIBRATED) {
        return check(
            false,
            format!("calibration selected {:?}", calibration.selected),
        );
    }
    let mut triples = dominant_grid(2, -2, 2);
    triples.extend(dominant_grid(3, -2, 2));
    let grid = triples.len();
    let spots = spot_triples_n4();
    if spots.len() != 20 {
        return check(false, "spot set is not 20 triples");
    }
    triples.extend(spots);
    triples.extend(calibration_suite());
    for w in &triples {
        let r = count_all(w)?;
        if !r.agree {
            return check(
                false,
                format!(
                    "{w}: hives {} oracle {} fiber {}",
                    r.hive_count, r.lr_oracle, r.fiber_count
                ),
            );
        }
    }
    check(
        true,
        format!(
            "{grid} grid triples, 20 at n=4, calibration suite; hives = tableaux = fiber points"
        ),
    )
}

fn gelfand_tsetlin() -> Result<Check> {
    fn tops(n: usize, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in -1..=max {
            cur.push(x);
            tops(n, x, cur, out);
            cur.pop();
        }
    }
    let mut lambdas = Vec::new();
    for n in 1..=4 {
        tops(n, 3, &mut Vec::new(), &mut lambdas);
    }
    for l in &lambdas {
        if count_gt(l)? != weyl_dimension(l)? {
            return check(false, format!("λ={l:?}"));
        }
    }
    for n in 2..=6 {
        let c = check_gt_correspondence(n)?;
        if !c.passed() || c.pairs.len() != n * (n - 1) {
            return check(false, format!("n={n}: {:?}", c.failures));
        }
    }
    check(
        true,
        format!(
            "{} top rows; Ξ_A and interlacing inequalities paired for n=2..6",
            lambdas.len()
        ),
    )
}

fn rays() -> Result<Check> {
    let mut counts = Vec::new();
    for n in 3..=4 {
        let c = classify_rays(n)?;
        if !c.passed() {
            return check(false, format!("n={n}: {c:?}"));
        }
        counts.push(format!("n={n}: {} rays", c.dd_rays));
    }
    check(true, counts.join(", "))
}

fn gvectors() -> Result<Check> {
    let mut cases = 0;
    for n in 3..=5 {
        let c = check_gmgs(n)?;
        if !c.passed() {
            return check(false, format!("n={n}: {:?}", c.mismatches));
        }
        cases += c.cases;
    }
    for n in 3..=4 {
        let c = mgs_weight_involution_check(n)?;
        if !c.passed() {
            return check(false, format!("involution n={n}: {:?}", c.failures));
        }
    }
    check(
        true,
        format!("{cases} tracked g-vectors; weight involution n=3,4"),
    )
}

fn convexity() -> Result<Check> {
    for n in 3..=6 {
        let c = convexity_certificate(n)?;
        let p = pstar(n)?;
        let Some(phi) = c.functional else {
            return check(false, format!("n={n}: no functional"));
        };
        for v in enumerate_h(n)?.unfrozen() {
            if phi.dot(p.image(v)) <= 0 {
                return check(false, format!("n={n}: pairing with {v} is not positive"));
            }
        }
    }
    check(true, "n=3..6 strictly positive integral functional")
}

fn xi_u() -> Result<Check> {
    for n in 3..=5 {
        let c = check_xi_u(n)?;
        if !c.passed() || c.rays.len() != n * (n - 1) / 2 {
            return check(
                false,
                format!(
                    "n={n}: {} rays, dimension {}",
                    c.rays.len(),
                    c.effective_dimension
                ),
            );
        }
    }
    check(true, "n=3..5 simplicial with C(n,2) rays")
}

type Criterion = (&'static str, fn() -> Result<Check>, Option<Duration>);

fn main() {
    let criteria: [Criterion; 10] = [
        ("maximal green sequence", mgs, Some(Duration::from_secs(10))),
        ("unimodularity", unimodular, Some(Duration::from_secs(5))),
        ("potential identity", potential_identity, None),
        ("theta closed form", theta, None),
        (
            "counting triangle",
            counting_triangle,
            Some(Duration::from_secs(120)),
        ),
        ("gelfand-tsetlin", gelfand_tsetlin, None),
        ("ray classification", rays, Some(Duration::from_secs(60))),
        ("g-vector formula", gvectors, None),
        ("convexity certificate", convexity, None),
        ("xi_u shape", xi_u, None),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(c) => (c.ok, c.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_budget = budget.is_none_or(|b| elapsed < b);
        let ok = ok && in_budget;
        let budget_note = match budget {
            Some(b) if !in_budget => format!(" over budget {b:?}"),
            _ => String::new(),
        };
        println!(
            "criterion {:>2} {:<24} {} ({detail}; {:.2?}{budget_note})",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            elapsed
        );
        failed += usize::from(!ok);
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
