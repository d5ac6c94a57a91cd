mod suite;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hive_forge::cones::{enumerate_rays, gt_cone, hive_cone, xi_cone, Cone, RaySet, XiVariant};
use hive_forge::counting::{
    count_all, count_gt, is_dominant, lr_coefficient, parse_weight, weyl_dimension, CountReport,
    WeightTriple,
};
use hive_forge::lattice::TriIndex;
use hive_forge::potential::{build_w, theta_frozen, Family, LaurentSum};
use hive_forge::quiver::{mgs_sequence, verify_green_sequence, GreenCertificate};
use hive_forge::Error;

use suite::{verify_all, Faults, MAX_SUITE_N};

#[derive(Parser)]
#[command(
    name = "hive-forge",
    version,
    about = "Exact certificates for cluster quivers, hives and their cones"
)]
struct Cli {
    /// Also write the JSON output to this file, atomically.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the maximal green sequence, optionally verified step by step.
    Mgs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Print the potential or a single frozen theta function.
    Potential {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "full")]
        variant: Variant,
        /// Frozen index as `a,b,c`.
        #[arg(long)]
        frozen: Option<String>,
    },
    /// Print an inequality system, optionally with classified extreme rays.
    Cone {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        rays: bool,
    },
    /// Count hives, fiber points and patterns against the representation-theoretic oracles.
    Count(CountArgs),
    /// Run every certificate up to `--n-max`.
    VerifyAll {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, hide = true)]
        inject_sign_flip: bool,
    },
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true, requires_all = ["beta", "gamma"], conflicts_with_all = ["lr", "gt"])]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// `λ μ ν` for a single tableau count.
    #[arg(long, num_args = 3, value_names = ["LAMBDA", "MU", "NU"], conflicts_with = "gt")]
    lr: Option<Vec<String>>,
    /// Top row of Gelfand-Tsetlin patterns.
    #[arg(long, allow_hyphen_values = true)]
    gt: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Full,
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "U", alias = "u")]
    U,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Xi,
    XiA,
    XiU,
    Hive,
    Gt,
}

enum Failure {
    Usage(String),
    Guard(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Guard(_) => Failure::Guard(e.to_string()),
            Error::Unbounded(_) | Error::Infeasible(_) | Error::Overflow(_) => {
                Failure::Runtime(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(serde_json::Value, bool), Failure>;

#[derive(Serialize)]
struct MgsOutput {
    n: usize,
    status: &'static str,
    length: usize,
    sequence: Vec<TriIndex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<GreenCertificate>,
}

#[derive(Serialize)]
struct PotentialOutput {
    n: usize,
    variant: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    frozen: Option<TriIndex>,
    terms: usize,
    sum: LaurentSum,
}

#[derive(Serialize)]
struct ConeOutput {
    #[serde(flatten)]
    cone: Cone,
    #[serde(skip_serializing_if = "Option::is_none")]
    rays: Option<RaySet>,
}

#[derive(Serialize)]
struct LrOutput {
    lambda: Vec<i64>,
    mu: Vec<i64>,
    nu: Vec<i64>,
    lr_coefficient: u64,
}

#[derive(Serialize)]
struct GtOutput {
    lambda: Vec<i64>,
    gt_count: u64,
    weyl_dimension: u64,
    agree: bool,
}

fn check_n(n: usize, min: usize) -> Result<(), Failure> {
    if n < min {
        return Err(Failure::Usage(format!(
            "n = {n} is below the minimum {min}"
        )));
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable output")
}

fn cmd_mgs(n: usize, verify: bool) -> Outcome {
    check_n(n, 2)?;
    let seq = mgs_sequence(n);
    let certificate = if verify {
        Some(verify_green_sequence(n, &seq)?)
    } else {
        None
    };
    let ok = certificate.as_ref().is_none_or(|c| c.passed());
    let out = MgsOutput {
        n,
        status: if ok { "pass" } else { "fail" },
        length: seq.len(),
        sequence: seq.steps.clone(),
        certificate,
    };
    Ok((json(&out), ok))
}

fn cmd_potential(n: usize, variant: Variant, frozen: Option<String>) -> Outcome {
    check_n(n, 2)?;
    let (name, families): (&str, &[Family]) = match variant {
        Variant::Full => ("full", &Family::ALL),
        Variant::A => ("A", &[Family::AB, Family::BC]),
        Variant::U => ("U", &[Family::BC]),
    };
    let frozen = frozen.map(|s| TriIndex::parse(&s)).transpose()?;
    let sum = match frozen {
        Some(f) => theta_frozen(n, f)?,
        None => build_w(n, families)?,
    };
    let out = PotentialOutput {
        n,
        variant: name,
        frozen,
        terms: sum.len(),
        sum,
    };
    Ok((json(&out), true))
}

fn cmd_cone(n: usize, which: Which, rays: bool) -> Outcome {
    check_n(n, 2)?;
    let cone = match which {
        Which::Xi => xi_cone(n, XiVariant::Full)?,
        Which::XiA => xi_cone(n, XiVariant::A)?,
        Which::XiU => xi_cone(n, XiVariant::U)?,
        Which::Hive => hive_cone(n)?,
        Which::Gt => gt_cone(n)?,
    };
    let rays = if rays {
        Some(enumerate_rays(&cone)?)
    } else {
        None
    };
    Ok((json(&ConeOutput { cone, rays }), true))
}

fn weight_of_len(s: &str, n: usize) -> Result<Vec<i64>, Failure> {
    let w = parse_weight(s)?;
    if w.len() != n {
        return Err(Failure::Usage(format!(
            "weight {s:?} has length {}, expected {n}",
            w.len()
        )));
    }
    Ok(w)
}

fn cmd_count(args: CountArgs) -> Outcome {
    let n = args.n;
    check_n(n, 2)?;
    if let Some(lr) = args.lr {
        let (lambda, mu, nu) = (
            parse_weight(&lr[0])?,
            parse_weight(&lr[1])?,
            parse_weight(&lr[2])?,
        );
        let lr_coefficient = lr_coefficient(&lambda, &mu, &nu);
        return Ok((
            json(&LrOutput {
                lambda,
                mu,
                nu,
                lr_coefficient,
            }),
            true,
        ));
    }
    if let Some(gt) = args.gt {
        let lambda = weight_of_len(&gt, n)?;
        if !is_dominant(&lambda) {
            return Err(Failure::Usage(format!("{lambda:?} is not dominant")));
        }
        let gt_count = count_gt(&lambda)?;
        let weyl = weyl_dimension(&lambda)?;
        let out = GtOutput {
            lambda,
            gt_count,
            weyl_dimension: weyl,
            agree: gt_count == weyl,
        };
        let ok = out.agree;
        return Ok((json(&out), ok));
    }
    let (Some(a), Some(b), Some(c)) = (args.alpha, args.beta, args.gamma) else {
        return Err(Failure::Usage(
            "give --alpha/--beta/--gamma, --lr or --gt".into(),
        ));
    };
    let w = WeightTriple::new(
        weight_of_len(&a, n)?,
        weight_of_len(&b, n)?,
        weight_of_len(&c, n)?,
    )?;
    let report: CountReport = count_all(&w)?;
    let ok = report.agree;
    Ok((json(&report), ok))
}

fn cmd_verify_all(n_max: usize, inject_sign_flip: bool) -> Outcome {
    check_n(n_max, 2)?;
    if n_max > MAX_SUITE_N {
        return Err(Failure::Guard(format!(
            "n_max = {n_max} exceeds {MAX_SUITE_N}"
        )));
    }
    let summary = verify_all(
        n_max,
        Faults {
            flip_signs: inject_sign_flip,
        },
    );
    for c in &summary.categories {
        eprintln!(
            "{:<16} {:<4} {:>6} checks{}",
            c.name,
            c.status,
            c.checks,
            match &c.first_failure {
                Some(f) => format!("  first failure: {f}"),
                None => String::new(),
            }
        );
    }
    let ok = summary.status == "pass";
    Ok((json(&summary), ok))
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn configure_threads() {
    if let Some(k) = std::env::var("HIVE_FORGE_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        if k > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let outcome = match cli.command {
        Command::Mgs { n, verify } => cmd_mgs(n, verify),
        Command::Potential { n, variant, frozen } => cmd_potential(n, variant, frozen),
        Command::Cone { n, which, rays } => cmd_cone(n, which, rays),
        Command::Count(args) => cmd_count(args),
        Command::VerifyAll {
            n_max,
            inject_sign_flip,
        } => cmd_verify_all(n_max, inject_sign_flip),
    };
    match outcome {
        Ok((value, ok)) => {
            let mut text = serde_json::to_string_pretty(&value).expect("serializable output");
            text.push('\n');
            print!("{text}");
            if let Some(path) = &cli.out {
                if let Err(e) = write_atomic(path, text.as_bytes()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Guard(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
