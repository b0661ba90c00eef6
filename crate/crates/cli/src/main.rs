//! `oddbracket`: batch verification suites with JSON and markdown reports.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use oddbracket::antibracket::{Cochain, Distribution, FormId, Operator};
use oddbracket::cohomology::lemma::check_lemma_coboundary;
use oddbracket::cohomology::table::{jacobiator_table, TableConfig};
use oddbracket::cohomology::verify::{
    residual_grid, verify_bridge, verify_cocycle, verify_exactness_m7, verify_jacobi_m0, verify_negative_control,
    verify_nilpotency, ResidualOptions,
};
use oddbracket::deformation::{
    build_deformation, check_constraints, normalize_c4, verify_jacobi_orderwise, DeformParams, OrderReport,
};
use oddbracket::grassmann::{DeformRing, Truncation};
use oddbracket::report::{Check, Report};
use oddbracket::testfns::{random_cochain1, random_cochain2, TestSet};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "oddbracket", version, about = "Verification suites for deformations of the antibracket")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Highest hbar order checked.
    #[arg(long, global = true, default_value_t = 4)]
    order: u32,
    /// Number of odd generators theta_k.
    #[arg(long, global = true, default_value_t = 3)]
    thetas: u32,
    /// Threshold below which a residual counts as zero.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Threshold above which a residual counts as nonzero.
    #[arg(long, global = true, default_value_t = 1e-6)]
    nu: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Deformation parameters (TOML or JSON).
    #[arg(long, global = true)]
    params: Option<PathBuf>,
    /// Directory for `<command>.json` and `<command>.md`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Rewrite the golden file instead of comparing against it.
    #[arg(long, global = true)]
    bless: bool,
    /// Directory holding golden reports, named `<command>[-<params stem>].json`.
    #[arg(long, global = true, default_value = "fixtures/golden")]
    golden_dir: PathBuf,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// d2 m = 0 for m2_1 .. m2_6 and m2_7(delta).
    VerifyCocycles,
    /// Pairwise Jacobiators of m2_1 .. m2_11 against the expected grid, plus the sum identity.
    JacobiatorTable,
    /// Constraint relations and the order-by-order Jacobi identity for `--params`.
    VerifyDeformation,
    /// Rewrites c4 of `--params` to hbar^q theta1 theta2 times a series.
    NormalizeC4,
    /// J(m, d1 M) = J(m2_0, U) for cocycle / 1-cochain pairs.
    LemmaA1,
    /// All invariant suites except the Jacobiator table.
    Selftest,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::VerifyCocycles => "verify-cocycles",
            Command::JacobiatorTable => "jacobiator-table",
            Command::VerifyDeformation => "verify-deformation",
            Command::NormalizeC4 => "normalize-c4",
            Command::LemmaA1 => "lemma-a1",
            Command::Selftest => "selftest",
        }
    }
}

enum Failure {
    Config(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Config(e.to_string())
    }
}

struct RunConfig {
    command: Command,
    trunc: Truncation,
    opts: ResidualOptions,
    seed: u64,
    params: Option<PathBuf>,
    out: Option<PathBuf>,
    bless: bool,
    golden_dir: PathBuf,
}

impl RunConfig {
    fn new(command: Command, a: RunArgs) -> Result<Self, Failure> {
        if !(a.tol > 0.0) || !a.tol.is_finite() {
            return Err(Failure::Config(format!("--tol must be positive, got {}", a.tol)));
        }
        if !(a.nu > a.tol) || !a.nu.is_finite() {
            return Err(Failure::Config(format!("--nu must exceed --tol, got nu = {} and tol = {}", a.nu, a.tol)));
        }
        if a.thetas > 16 {
            return Err(Failure::Config(format!("--thetas must be at most 16, got {}", a.thetas)));
        }
        let needs_params = matches!(command, Command::VerifyDeformation | Command::NormalizeC4);
        if needs_params && a.params.is_none() {
            return Err(Failure::Config(format!("{} requires --params", command.name())));
        }
        Ok(RunConfig {
            command,
            trunc: Truncation::new(a.order, a.thetas),
            opts: ResidualOptions { grid: residual_grid(61), tol: a.tol, nu: a.nu },
            seed: a.seed,
            params: a.params,
            out: a.out,
            bless: a.bless,
            golden_dir: a.golden_dir,
        })
    }

    fn params(&self) -> Result<DeformParams, Failure> {
        let path = self.params.as_ref().expect("checked in RunConfig::new");
        let p = DeformParams::load(path)?;
        p.validate()?;
        Ok(p)
    }

    fn random(&self, offset: u64, count: usize) -> TestSet {
        TestSet::random(self.seed.wrapping_add(offset), count, 3)
    }
}

fn cocycle_checks(cfg: &RunConfig) -> Vec<Check> {
    let tests = cfg.random(0, 50);
    let forms: Vec<Box<dyn Cochain>> = vec![
        Box::new(FormId::M1),
        Box::new(FormId::M2),
        Box::new(FormId::M3),
        Box::new(FormId::M4),
        Box::new(FormId::M5),
        Box::new(FormId::M6),
        Box::new(FormId::M7(Distribution::delta(0.0))),
    ];
    forms.iter().map(|m| verify_cocycle(m.as_ref(), &tests, &cfg.opts)).collect()
}

fn lemma_checks(cfg: &RunConfig) -> Vec<Check> {
    let tests = cfg.random(8, 3);
    let cocycles: Vec<Arc<dyn Cochain>> =
        vec![Arc::new(FormId::M1), Arc::new(FormId::M3), Arc::new(FormId::M4), Arc::new(FormId::M5), Arc::new(FormId::M6)];
    let ops: Vec<Arc<dyn Cochain>> = vec![Arc::new(Operator::Delta), Arc::new(Operator::XiPairing(Distribution::delta(0.2)))];
    let mut v = Vec::new();
    for m in &cocycles {
        for op in &ops {
            v.push(check_lemma_coboundary(m.clone(), op.clone(), &tests, &cfg.opts));
        }
    }
    v
}

fn order_checks(r: &OrderReport) -> Vec<Check> {
    r.orders
        .iter()
        .map(|o| {
            let c = Check::zero(format!("jacobi at order hbar^{}", o.order), o.residual, r.tol);
            match &o.worst_monomial {
                Some(m) => c.with_detail(format!("worst monomial {m}")),
                None => c,
            }
        })
        .collect()
}

fn deform_tests(cfg: &RunConfig) -> TestSet {
    cfg.random(101, 4).extend(TestSet::witnesses())
}

fn orderwise(cfg: &RunConfig, p: &DeformParams) -> Result<OrderReport, Failure> {
    let d = build_deformation(p)?;
    Ok(verify_jacobi_orderwise(&d, cfg.trunc.order, &deform_tests(cfg), &cfg.opts)?)
}

fn max_coeff(r: &DeformRing) -> f64 {
    r.terms().fold(0.0f64, |m, (_, c)| m.max(c.abs()))
}

fn verify_deformation(cfg: &RunConfig) -> Result<(Report, String), Failure> {
    let p = cfg.params()?;
    let c = check_constraints(&p);
    let mut checks: Vec<Check> = c
        .relations
        .iter()
        .map(|rel| {
            let v = c.violations.iter().find(|v| &v.relation == rel);
            let residual = v.map(|v| max_coeff(&v.product)).unwrap_or(0.0);
            let chk = Check::zero(format!("constraint {rel} = 0"), residual, cfg.opts.tol);
            match v {
                Some(v) => chk.with_detail(format!("product {} (lowest order hbar^{})", v.product, v.order)),
                None => chk,
            }
        })
        .collect();
    let r = orderwise(cfg, &p)?;
    checks.extend(order_checks(&r));
    let md = r.to_markdown();
    let extra = json!({
        "params": p.to_json(),
        "families": c.families,
        "orderwise": r,
    });
    Ok((Report::new(cfg.command.name(), checks).with_extra(extra), md))
}

fn normalize(cfg: &RunConfig) -> Result<(Report, String), Failure> {
    let p = cfg.params()?;
    let (q, change) = normalize_c4(&p)?;
    let before = orderwise(cfg, &p)?;
    let after = orderwise(cfg, &q)?;
    let same = before.passed == after.passed && before.first_failing_order == after.first_failing_order;
    let check = Check::zero("jacobi verdict invariant under the basis change", if same { 0.0 } else { 1.0 }, 0.5)
        .with_detail(format!(
            "before: passed {} first failing {:?}; after: passed {} first failing {:?}",
            before.passed, before.first_failing_order, after.passed, after.first_failing_order
        ));
    let tr = q.trunc;
    let images: Vec<String> = change
        .matrix
        .iter()
        .map(|row| {
            let r = row
                .iter()
                .enumerate()
                .fold(DeformRing::zero(tr), |acc, (l, a)| &acc + &(a * &DeformRing::theta(tr, l + 1)));
            r.to_string()
        })
        .collect();
    let md = format!(
        "## Normalized c4\n\n`{}`\n\n## New generators\n\n{}\n",
        q.ci(4),
        images.iter().enumerate().map(|(k, s)| format!("- theta'_{} = {s}\n", k + 1)).collect::<String>()
    );
    let extra = json!({ "normalized": q.to_json(), "images": images, "before": before, "after": after });
    Ok((Report::new(cfg.command.name(), vec![check]).with_extra(extra), md))
}

fn selftest(cfg: &RunConfig) -> Vec<Check> {
    let mut v = vec![verify_jacobi_m0(&cfg.random(1, 100), &cfg.opts)];
    v.extend(cocycle_checks(cfg));
    v.push(verify_negative_control(&TestSet::witnesses(), &cfg.opts, 1e-4));
    let tests = cfg.random(3, 20);
    for m in [Distribution::delta(0.0), Distribution::delta_deriv(0.0, 1)] {
        match verify_exactness_m7(&m, &tests, &cfg.opts) {
            Ok(c) => v.push(c),
            Err(e) => v.push(Check::failed("m2_7 exactness", e.to_string())),
        }
    }
    let small = cfg.random(9, 3);
    for s in 0..10 {
        v.push(verify_nilpotency(random_cochain1(cfg.seed.wrapping_add(s)), &small, &cfg.opts));
    }
    for s in 0..20 {
        v.push(verify_bridge(&random_cochain2(cfg.seed.wrapping_add(s)), &small, &cfg.opts));
    }
    v.extend(lemma_checks(cfg));
    let tr = cfg.trunc;
    let c4 = DeformParams::zero(tr).with_c(4, DeformRing::hbar(tr));
    let d = build_deformation(&c4).expect("valid");
    match verify_jacobi_orderwise(&d, cfg.trunc.order, &deform_tests(cfg), &cfg.opts) {
        Ok(r) => v.push(Check::zero(
            "jacobi for c4 = hbar",
            r.orders.iter().map(|o| o.residual).fold(0.0, f64::max),
            cfg.opts.tol,
        )),
        Err(e) => v.push(Check::failed("jacobi for c4 = hbar", e.to_string())),
    }
    v
}

fn run(cfg: &RunConfig) -> Result<(Report, String), Failure> {
    Ok(match cfg.command {
        Command::VerifyCocycles => (Report::new(cfg.command.name(), cocycle_checks(cfg)), String::new()),
        Command::JacobiatorTable => {
            let mut t = TableConfig::new(Distribution::delta(0.0), "delta(0)", cfg.seed, 50);
            t.opts = cfg.opts.clone();
            let table = jacobiator_table(&t);
            let md = table.to_markdown();
            (Report::new(cfg.command.name(), table.checks()).with_extra(json!({ "table": table })), md)
        }
        Command::VerifyDeformation => verify_deformation(cfg)?,
        Command::NormalizeC4 => normalize(cfg)?,
        Command::LemmaA1 => (Report::new(cfg.command.name(), lemma_checks(cfg)), String::new()),
        Command::Selftest => (Report::new(cfg.command.name(), selftest(cfg)), String::new()),
    })
}

/// Name, kind and verdict of every check; residuals may drift in the last digits.
fn verdicts(r: &serde_json::Value) -> Vec<(serde_json::Value, serde_json::Value, serde_json::Value)> {
    r["checks"]
        .as_array()
        .map(|a| a.iter().map(|c| (c["name"].clone(), c["kind"].clone(), c["passed"].clone())).collect())
        .unwrap_or_default()
}

fn golden(cfg: &RunConfig, report: &Report) -> Result<Option<Check>, Failure> {
    let stem = cfg.params.as_ref().and_then(|p| p.file_stem()).map(|s| format!("-{}", s.to_string_lossy()));
    let path = cfg.golden_dir.join(format!("{}{}.json", cfg.command.name(), stem.unwrap_or_default()));
    if cfg.bless {
        std::fs::create_dir_all(&cfg.golden_dir)?;
        std::fs::write(&path, report.to_json() + "\n")?;
        eprintln!("blessed {}", path.display());
        return Ok(None);
    }
    if !path.exists() {
        return Ok(None);
    }
    let old: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
    let new: serde_json::Value = serde_json::from_str(&report.to_json())?;
    let same = verdicts(&old) == verdicts(&new);
    let c = Check::zero("verdicts match the golden report", if same { 0.0 } else { 1.0 }, 0.5)
        .with_detail(path.display().to_string());
    Ok(Some(c))
}

fn write_outputs(dir: &Path, name: &str, report: &Report, md: &str) -> Result<(), Failure> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(format!("{name}.json")), report.to_json() + "\n")?;
    std::fs::write(dir.join(format!("{name}.md")), markdown(report, md))?;
    Ok(())
}

fn markdown(report: &Report, md: &str) -> String {
    let mut s = report.to_markdown();
    if !md.is_empty() {
        s += "\n";
        s += md;
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::new(cli.command, cli.run) {
        Ok(c) => c,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = run(&cfg).and_then(|(mut report, md)| {
        if let Some(c) = golden(&cfg, &report)? {
            report.checks.push(c);
            report.passed = report.checks.iter().all(|c| c.passed);
        }
        if let Some(dir) = &cfg.out {
            write_outputs(dir, cfg.command.name(), &report, &md)?;
        }
        Ok((report, md))
    });
    match result {
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Ok((report, md)) => {
            print!("{}", markdown(&report, &md));
            match report.first_failure() {
                None => ExitCode::SUCCESS,
                Some(c) => {
                    let why = c.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default();
                    eprintln!("FAIL: {} (residual {:.3e}, threshold {:.3e}){why}", c.name, c.residual, c.threshold);
                    ExitCode::from(1)
                }
            }
        }
    }
}
