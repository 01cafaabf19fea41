//! Command-line front end: generate operators, run bound checks, search for
//! sharpness, run the lemma oracles.
//!
//! Exit codes: 0 when every checked inequality holds, 2 when any violation
//! is found, 1 on usage errors (bad flags, unreadable or mismatched files).

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::bounds::{BoundContext, BoundReport};
use crate::linalg::{C64, ComplexMatrix};
use crate::rkhs::{KernelSpace, SpaceKind};
use crate::verify::{
    self, check_all_bounds, random_operator, OperatorClass, OperatorSpec, ParamGrid,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "berezin-lab", version, about = "Berezin inequality checker")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded random operator and write it as matrix JSON.
    Gen(GenArgs),
    /// Check every bound for the given operators; exit 2 on any violation.
    Check(CheckArgs),
    /// Random search for the smallest slack per bound.
    Sharpness(SharpnessArgs),
    /// Run the vector-level lemma oracles on random instances.
    Lemmas(LemmasArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Operator class: general|nilpotent|normal|selfadjoint|unitary
    #[arg(long, default_value = "general")]
    pub class: OperatorClass,
    /// Matrix dimension
    #[arg(long = "n", visible_alias = "dim")]
    pub dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Scale to unit Frobenius norm
    #[arg(long)]
    pub normalize: bool,
    /// Output file path
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    /// Space kind: standard|hardy|bergman
    #[arg(long, default_value = "standard")]
    pub space: SpaceKind,
    /// Radial grid size for analytic spaces
    #[arg(long, default_value_t = 8)]
    pub nr: usize,
    /// Angular grid size for analytic spaces
    #[arg(long, default_value_t = 16)]
    pub ntheta: usize,
    /// Outer sampling radius for analytic spaces
    #[arg(long, default_value_t = 0.99)]
    pub rmax: f64,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Exponents r (each must be >= 1)
    #[arg(long = "r", value_delimiter = ',', default_values_t = [1.0, 1.5, 2.0])]
    pub r_values: Vec<f64>,
    /// Number of uniform alpha grid points on [0, 1]
    #[arg(long = "alpha-grid", default_value_t = 11)]
    pub alpha_grid: usize,
    /// Interpolation weights nu (each in (0, 1))
    #[arg(long = "nu", value_delimiter = ',', default_values_t = [0.25, 0.5, 0.75])]
    pub nu_values: Vec<f64>,
    /// Exponent splits alpha_f for the f/g power family
    #[arg(long = "alphaf", value_delimiter = ',', default_values_t = [0.0, 0.5, 1.0])]
    pub alpha_f_values: Vec<f64>,
}

impl GridArgs {
    fn to_grid(&self) -> Result<ParamGrid, String> {
        if self.alpha_grid < 1 {
            return Err("alpha-grid must be at least 1".into());
        }
        let alpha_values = if self.alpha_grid == 1 {
            vec![0.0]
        } else {
            (0..self.alpha_grid)
                .map(|i| i as f64 / (self.alpha_grid - 1) as f64)
                .collect()
        };
        Ok(ParamGrid {
            r_values: self.r_values.clone(),
            alpha_values,
            nu_values: self.nu_values.clone(),
            alpha_f_values: self.alpha_f_values.clone(),
        })
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format: json|csv
    #[arg(long, default_value = "json")]
    pub format: String,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub plan: PlanArgs,
    /// Expected operator dimension; files must match when set
    #[arg(long)]
    pub dim: Option<usize>,
    /// Operator files (matrix JSON)
    #[arg(long = "ops", value_delimiter = ',')]
    pub ops: Vec<PathBuf>,
    /// Generate operators of this class instead of (or besides) files
    #[arg(long)]
    pub class: Option<OperatorClass>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of generated operators per dimension when --class is set
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SharpnessArgs {
    #[command(flatten)]
    pub plan: PlanArgs,
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    #[arg(long, default_value = "general")]
    pub class: OperatorClass,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LemmasArgs {
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    if let Err(msg) = validate_thread_cap() {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    let result = match &cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Check(args) => cmd_check(args),
        Command::Sharpness(args) => cmd_sharpness(args),
        Command::Lemmas(args) => cmd_lemmas(args),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

// Processing is sequential, which trivially respects any positive cap; the
// variable is still validated so typos fail loudly.
fn validate_thread_cap() -> Result<(), String> {
    match std::env::var("BEREZIN_LAB_THREADS") {
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(()),
            _ => Err(format!("BEREZIN_LAB_THREADS must be a positive integer, got {v:?}")),
        },
        Err(_) => Ok(()),
    }
}

/// Write a file atomically: temp file in the target directory, then rename.
fn write_atomic(path: &Path, contents: &str) -> Result<(), String> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp",
            path.file_name().and_then(|f| f.to_str()).unwrap_or("out")
        )),
        None => PathBuf::from(format!(".{}.tmp", path.display())),
    };
    fs::write(&tmp, contents).map_err(|e| format!("write {}: {e}", tmp.display()))?;
    fs::rename(&tmp, path).map_err(|e| format!("rename to {}: {e}", path.display()))?;
    Ok(())
}

fn emit(output: &OutputArgs, contents: &str) -> Result<(), String> {
    match &output.out {
        Some(path) => write_atomic(path, contents),
        None => {
            println!("{contents}");
            Ok(())
        }
    }
}

fn cmd_gen(args: &GenArgs) -> Result<i32, String> {
    if args.dim < 1 {
        return Err("dimension must be at least 1".into());
    }
    let spec = OperatorSpec {
        class: args.class,
        dim: args.dim,
        seed: args.seed,
        normalize: args.normalize,
    };
    let m = random_operator(&spec);
    let json = serde_json::to_string_pretty(&m).map_err(|e| e.to_string())?;
    write_atomic(&args.out, &json)?;
    println!("{}", args.out.display());
    Ok(EXIT_OK)
}

fn load_operator(path: &Path) -> Result<ComplexMatrix, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("parse {}: {e}", path.display()))
}

#[derive(Debug, Serialize)]
struct LabeledReport {
    operator: String,
    #[serde(flatten)]
    report: BoundReport,
}

fn report_csv(rows: &[LabeledReport]) -> String {
    let mut out = String::from(
        "operator,bound_id,r,alpha,nu,alphaf,n,swap,variant,lhs,mid,rhs,slack,tol,holds\n",
    );
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for row in rows {
        let p = &row.report.params;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            row.operator,
            row.report.bound_id,
            opt(p.r),
            opt(p.alpha),
            opt(p.nu),
            opt(p.alpha_f),
            p.n.map(|x| x.to_string()).unwrap_or_default(),
            p.swap.map(|x| x.to_string()).unwrap_or_default(),
            p.variant.clone().unwrap_or_default(),
            row.report.lhs,
            opt(row.report.mid),
            row.report.rhs,
            row.report.slack,
            row.report.tol,
            row.report.holds,
        ));
    }
    out
}

fn render<T: Serialize>(format: &str, value: &T, csv: impl FnOnce() -> String) -> Result<String, String> {
    match format {
        "json" => serde_json::to_string_pretty(value).map_err(|e| e.to_string()),
        "csv" => Ok(csv()),
        other => Err(format!("unknown format: {other}")),
    }
}

fn cmd_check(args: &CheckArgs) -> Result<i32, String> {
    let mut operators: Vec<(String, ComplexMatrix)> = Vec::new();
    for path in &args.ops {
        let m = load_operator(path)?;
        if let Some(dim) = args.dim {
            if m.dim() != dim {
                return Err(format!(
                    "{}: dimension {} does not match --dim {}",
                    path.display(),
                    m.dim(),
                    dim
                ));
            }
        }
        operators.push((path.display().to_string(), m));
    }
    if let Some(class) = args.class {
        let dims: Vec<usize> = match args.dim {
            Some(d) => vec![d],
            None => vec![2, 4, 8],
        };
        for &dim in &dims {
            for t in 0..args.trials {
                let spec = OperatorSpec {
                    class,
                    dim,
                    seed: args.seed.wrapping_add(t as u64),
                    normalize: false,
                };
                operators.push((
                    format!("{:?}-{}-seed{}", class, dim, spec.seed),
                    random_operator(&spec),
                ));
            }
        }
    }
    if operators.is_empty() {
        return Err("no operators: pass --ops files or --class".into());
    }

    let grid = args.grid.to_grid()?;
    let mut rows: Vec<LabeledReport> = Vec::new();
    let mut all_hold = true;
    for (label, m) in &operators {
        let space = KernelSpace::new(args.plan.space, m.dim()).map_err(|e| e.to_string())?;
        let plan = space
            .default_sample(args.plan.nr, args.plan.ntheta, args.plan.rmax)
            .map_err(|e| e.to_string())?;
        let ctx = BoundContext::new(&space, &plan);
        for outcome in check_all_bounds(&ctx, m, &grid) {
            let report = outcome.map_err(|e| e.to_string())?;
            all_hold &= report.holds;
            rows.push(LabeledReport {
                operator: label.clone(),
                report,
            });
        }
    }

    let text = render(&args.output.format, &rows, || report_csv(&rows))?;
    emit(&args.output, &text)?;
    Ok(if all_hold { EXIT_OK } else { EXIT_VIOLATION })
}

#[derive(Debug, Serialize)]
struct SharpnessRow {
    bound_id: String,
    min_slack: f64,
    spec: OperatorSpec,
    report: BoundReport,
}

fn cmd_sharpness(args: &SharpnessArgs) -> Result<i32, String> {
    if args.trials < 1 {
        return Err("trials must be at least 1".into());
    }
    let grid = args.grid.to_grid()?;
    let space = KernelSpace::new(args.plan.space, args.dim).map_err(|e| e.to_string())?;
    let plan = space
        .default_sample(args.plan.nr, args.plan.ntheta, args.plan.rmax)
        .map_err(|e| e.to_string())?;
    let ctx = BoundContext::new(&space, &plan);

    let mut best: std::collections::BTreeMap<String, SharpnessRow> = Default::default();
    for t in 0..args.trials {
        let spec = OperatorSpec {
            class: args.class,
            dim: args.dim,
            seed: args.seed.wrapping_add(t as u64),
            normalize: false,
        };
        let m = random_operator(&spec);
        for outcome in check_all_bounds(&ctx, &m, &grid) {
            let Ok(report) = outcome else { continue };
            let entry = best.get(&report.bound_id);
            if entry.map_or(true, |r| report.slack < r.min_slack) {
                best.insert(
                    report.bound_id.clone(),
                    SharpnessRow {
                        bound_id: report.bound_id.clone(),
                        min_slack: report.slack,
                        spec,
                        report,
                    },
                );
            }
        }
    }
    let rows: Vec<&SharpnessRow> = best.values().collect();
    let text = render(&args.output.format, &rows, || {
        let mut out = String::from("bound_id,min_slack,class,dim,seed\n");
        for r in &rows {
            out.push_str(&format!(
                "{},{},{:?},{},{}\n",
                r.bound_id, r.min_slack, r.spec.class, r.spec.dim, r.spec.seed
            ));
        }
        out
    })?;
    emit(&args.output, &text)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Serialize)]
struct LemmaRow {
    lemma: String,
    trials: usize,
    pass: usize,
    fail: usize,
}

fn cmd_lemmas(args: &LemmasArgs) -> Result<i32, String> {
    if args.trials < 1 {
        return Err("trials must be at least 1".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let n = args.dim;
    let mut rows: Vec<LemmaRow> = ["mixed_cs", "mccarthy", "kittaneh", "buzano", "power_sum"]
        .iter()
        .map(|name| LemmaRow {
            lemma: name.to_string(),
            trials: args.trials,
            pass: 0,
            fail: 0,
        })
        .collect();

    let gvec = |rng: &mut ChaCha8Rng| -> Vec<C64> {
        (0..n)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                C64::new(re, im)
            })
            .collect()
    };

    for t in 0..args.trials {
        let spec = OperatorSpec {
            class: OperatorClass::General,
            dim: n,
            seed: args.seed.wrapping_add(t as u64).wrapping_mul(2654435761),
            normalize: false,
        };
        let a = random_operator(&spec);
        let x = gvec(&mut rng);
        let y = gvec(&mut rng);
        let mut e = gvec(&mut rng);
        let en = crate::linalg::vec_norm(&e);
        for z in &mut e {
            *z /= en;
        }
        let r = 1.0 + 2.0 * (t as f64 / args.trials as f64);
        let alpha_f = (t % 11) as f64 / 10.0;

        let mut xu = x.clone();
        let xn = crate::linalg::vec_norm(&xu);
        for z in &mut xu {
            *z /= xn;
        }
        // McCarthy takes PSD input: project through the modulus
        let psd = a.modulus_power(1.0).map_err(|e| e.to_string())?;

        let checks = [
            verify::check_lemma_mixed_cs(&a, &x).map_err(|e| e.to_string())?,
            verify::check_lemma_mccarthy(&psd, &xu, r).map_err(|e| e.to_string())?,
            verify::check_lemma_kittaneh(&a, &x, &y, alpha_f).map_err(|e| e.to_string())?,
            verify::check_lemma_buzano(&x, &y, &e).map_err(|e| e.to_string())?,
            verify::check_power_sum(
                &x.iter().map(|z| z.norm_sqr() + 1e-6).collect::<Vec<_>>(),
                r,
            )
            .map_err(|e| e.to_string())?,
        ];
        for (row, chk) in rows.iter_mut().zip(checks) {
            if chk.holds {
                row.pass += 1;
            } else {
                row.fail += 1;
            }
        }
    }

    let any_fail = rows.iter().any(|r| r.fail > 0);
    let text = render(&args.output.format, &rows, || {
        let mut out = String::from("lemma,trials,pass,fail\n");
        for r in &rows {
            out.push_str(&format!("{},{},{},{}\n", r.lemma, r.trials, r.pass, r.fail));
        }
        out
    })?;
    emit(&args.output, &text)?;
    Ok(if any_fail { EXIT_VIOLATION } else { EXIT_OK })
}
