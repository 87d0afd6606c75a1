use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use corrprop::{
    ci_log_bf, ci_prior, default_log_bf, default_q_grid, i_log_bf, mcnemar_test, npp_dependence_curve,
    sensitivity_curve, to_summary, ContingencyTable, DiagonalSplit, DirichletHyper, EvidenceSummary, IntrinsicPrior,
    McNemarVariant, Method, NppPoint, PriorSize, UnitGrid,
};
use serde::{Deserialize, Serialize};

use crate::input::{HyperArgs, TableArgs};
use crate::output::{self, prob, Format};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestMethod {
    Default,
    Ci,
    Intrinsic,
    Mcnemar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IntrinsicMethod {
    Ci,
    Intrinsic,
}

impl IntrinsicMethod {
    fn method(self) -> Method {
        match self {
            IntrinsicMethod::Ci => Method::CiIntrinsic,
            IntrinsicMethod::Intrinsic => Method::IIntrinsic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    ChiSquareCc,
    ChiSquarePlain,
    ExactBinomial,
}

impl From<Variant> for McNemarVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::ChiSquareCc => McNemarVariant::ChiSquareCc,
            Variant::ChiSquarePlain => McNemarVariant::ChiSquarePlain,
            Variant::ExactBinomial => McNemarVariant::ExactBinomial,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestFormat {
    Text,
    Json,
    Csv,
}

/// Deduplicates while keeping the first occurrence, so row order follows the
/// command line.
fn unique<T: PartialEq + Copy>(items: &[T]) -> Result<Vec<T>, CliError> {
    if items.is_empty() {
        return Err(CliError::Usage("select at least one method".into()));
    }
    let mut out = Vec::new();
    for &m in items {
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[command(flatten)]
    table: TableArgs,
    #[command(flatten)]
    hyper: HyperArgs,
    #[arg(long, value_delimiter = ',', default_value = "default,ci,intrinsic,mcnemar")]
    methods: Vec<TestMethod>,
    /// Imaginary swings for the CI prior [default: round(q · n△)]
    #[arg(long)]
    x_triangle: Option<u64>,
    /// Imaginary sample size for the I prior [default: round(q · n++)]
    #[arg(long)]
    x_plus_plus: Option<u64>,
    /// Prior-to-sample size ratio used when no explicit size is given
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    #[arg(long, value_enum, default_value_t = Variant::ExactBinomial)]
    mcnemar_variant: Variant,
    /// Report Bayes factors in favour of the null instead
    #[arg(long)]
    reciprocal: bool,
    #[arg(long, value_enum, default_value_t = TestFormat::Text)]
    format: TestFormat,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    HVsH0,
    H0VsH,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestRecord {
    pub method: String,
    pub direction: Option<Direction>,
    pub log_bf: Option<f64>,
    /// Absent when it overflows.
    pub bf: Option<f64>,
    pub pr_h0: Option<f64>,
    pub x_triangle: Option<u64>,
    pub x_plus_plus: Option<u64>,
    pub statistic: Option<f64>,
    pub p_value: Option<f64>,
    pub variant: Option<McNemarVariant>,
}

impl TestRecord {
    fn evidence(s: &EvidenceSummary, reciprocal: bool) -> Self {
        let (direction, log_bf) =
            if reciprocal { (Direction::H0VsH, s.log_bf_h0_vs_h()) } else { (Direction::HVsH0, s.log_bf_h_vs_h0) };
        let bf = log_bf.exp();
        let (x_triangle, x_plus_plus) = match s.prior_config {
            Some(PriorSize::XTriangle(x)) => (Some(x), None),
            Some(PriorSize::XPlusPlus(x)) => (None, Some(x)),
            None => (None, None),
        };
        TestRecord {
            method: s.method.as_str().to_string(),
            direction: Some(direction),
            log_bf: Some(log_bf),
            bf: bf.is_finite().then_some(bf),
            pr_h0: Some(s.posterior_prob_h0),
            x_triangle,
            x_plus_plus,
            statistic: None,
            p_value: None,
            variant: None,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TestReport {
    pub table: ContingencyTable,
    pub hyper: DirichletHyper,
    pub records: Vec<TestRecord>,
}

fn check_q(q: f64) -> Result<(), CliError> {
    if (0.0..=1.0).contains(&q) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("q = {q} must lie in [0, 1]")))
    }
}

fn size_for(q: f64, denominator: u64) -> u64 {
    (q * denominator as f64).round() as u64
}

pub fn test(args: &TestArgs) -> Result<(), CliError> {
    let methods = unique(&args.methods)?;
    check_q(args.q)?;
    let table = args.table.load()?;
    let hyper = args.hyper.load()?;

    let mut records = Vec::new();
    for m in methods {
        let record = match m {
            TestMethod::Default => TestRecord::evidence(
                &to_summary(default_log_bf(&table, &hyper), Method::Default, None),
                args.reciprocal,
            ),
            TestMethod::Ci => {
                let x = args.x_triangle.unwrap_or_else(|| size_for(args.q, table.n_triangle()));
                let s = to_summary(ci_log_bf(&table, &hyper, x), Method::CiIntrinsic, Some(PriorSize::XTriangle(x)));
                TestRecord::evidence(&s, args.reciprocal)
            }
            TestMethod::Intrinsic => {
                let x = args.x_plus_plus.unwrap_or_else(|| size_for(args.q, table.n_plus_plus()));
                let s = to_summary(i_log_bf(&table, &hyper, x), Method::IIntrinsic, Some(PriorSize::XPlusPlus(x)));
                TestRecord::evidence(&s, args.reciprocal)
            }
            TestMethod::Mcnemar => {
                let r = mcnemar_test(&table, args.mcnemar_variant.into())?;
                TestRecord {
                    method: "mcnemar".into(),
                    direction: None,
                    log_bf: None,
                    bf: None,
                    pr_h0: None,
                    x_triangle: None,
                    x_plus_plus: None,
                    statistic: Some(r.statistic),
                    p_value: Some(r.p_value),
                    variant: Some(r.variant),
                }
            }
        };
        records.push(record);
    }

    let report = TestReport { table, hyper, records };
    let mut out = output::open(args.output.as_deref())?;
    match args.format {
        TestFormat::Json => output::json(&mut out, &report),
        TestFormat::Csv => output::csv(&mut out, &report.records),
        TestFormat::Text => text_report(&mut out, &report),
    }
}

fn text_report(out: &mut dyn Write, r: &TestReport) -> Result<(), CliError> {
    let (t, a) = (&r.table, &r.hyper);
    writeln!(out, "table  n00={} n01={} n10={} n11={}", t.n00(), t.n01(), t.n10(), t.n11())?;
    writeln!(out, "hyper  a00={} a01={} a10={} a11={}", a.a00(), a.a01(), a.a10(), a.a11())?;
    for rec in &r.records {
        if let Some(p) = rec.p_value {
            let variant = rec.variant.map(|v| v.as_str()).unwrap_or_default();
            writeln!(
                out,
                "{:<13} {variant}  statistic={}  p={}",
                rec.method,
                rec.statistic.unwrap_or(f64::NAN),
                prob(p)
            )?;
            continue;
        }
        let size = match (rec.x_triangle, rec.x_plus_plus) {
            (Some(x), _) => format!("x△={x}"),
            (_, Some(x)) => format!("x++={x}"),
            _ => String::new(),
        };
        let label = if rec.direction == Some(Direction::H0VsH) { "BF[H0:H]" } else { "BF[H:H0]" };
        let bf = rec.log_bf.map(f64::exp).unwrap_or(f64::NAN);
        writeln!(
            out,
            "{:<13} {size:<8} {label}={bf:.4}  Pr(H0|n)={}",
            rec.method,
            prob(rec.pr_h0.unwrap_or(f64::NAN))
        )?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Args)]
pub struct SensitivityArgs {
    #[command(flatten)]
    table: TableArgs,
    #[command(flatten)]
    hyper: HyperArgs,
    #[arg(long, value_delimiter = ',', default_value = "ci,intrinsic")]
    methods: Vec<IntrinsicMethod>,
    /// Explicit q values [default: 0, 0.05, ..., 1]
    #[arg(long, value_delimiter = ',', conflicts_with = "q_points")]
    q_grid: Option<Vec<f64>>,
    /// Number of equally spaced q values on [0, 1]
    #[arg(long)]
    q_points: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityRow {
    pub method: Method,
    pub q: f64,
    pub x: u64,
    pub log_bf: f64,
    pub pr_h0: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SensitivityReport {
    pub table: ContingencyTable,
    pub hyper: DirichletHyper,
    pub rows: Vec<SensitivityRow>,
}

pub fn sensitivity(args: &SensitivityArgs) -> Result<(), CliError> {
    let methods = unique(&args.methods)?;
    let q_grid = match (&args.q_grid, args.q_points) {
        (Some(q), _) => q.clone(),
        (None, Some(n)) if n >= 2 => (0..n).map(|i| i as f64 / (n - 1) as f64).collect(),
        (None, Some(n)) => return Err(CliError::Usage(format!("--q-points needs at least 2 points, got {n}"))),
        (None, None) => default_q_grid(),
    };
    for &q in &q_grid {
        check_q(q)?;
    }
    let table = args.table.load()?;
    let hyper = args.hyper.load()?;

    let mut rows = Vec::new();
    for m in methods {
        let curve = sensitivity_curve(&table, &hyper, m.method(), &q_grid)?;
        rows.extend(curve.points.iter().map(|p| SensitivityRow {
            method: curve.method,
            q: p.q,
            x: p.x,
            log_bf: p.log_bf,
            pr_h0: p.posterior_prob_h0,
        }));
    }

    let mut out = output::open(args.output.as_deref())?;
    match args.format {
        Format::Json => output::json(&mut out, &SensitivityReport { table, hyper, rows }),
        Format::Csv => output::csv(&mut out, &rows),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridKind {
    /// Closed grid unless some Beta component diverges at 0 or 1
    Auto,
    Closed,
    Interior,
}

#[derive(Debug, Args)]
pub struct PriorDensityArgs {
    #[command(flatten)]
    hyper: HyperArgs,
    #[arg(long, value_enum)]
    prior: IntrinsicMethod,
    /// Imaginary swings for the CI prior; several values give one curve each
    #[arg(long, value_delimiter = ',', default_value = "5")]
    x_triangle: Vec<u64>,
    /// Imaginary sample size for the I prior
    #[arg(long, default_value_t = 20)]
    x_plus_plus: u64,
    /// Points per axis [default: 201 for ci, 101 for intrinsic]
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, value_enum, default_value_t = GridKind::Auto)]
    grid: GridKind,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CiDensityRow {
    pub x_triangle: u64,
    pub theta: f64,
    pub density: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CiDensityReport {
    pub hyper: DirichletHyper,
    pub rows: Vec<CiDensityRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointRow {
    pub eta: f64,
    pub theta: f64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub at: f64,
    pub density: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IDensityReport {
    pub hyper: DirichletHyper,
    pub x_plus_plus: u64,
    pub joint: Vec<JointRow>,
    pub eta_marginal: Vec<CurveRow>,
    pub theta_marginal: Vec<CurveRow>,
}

/// One CSV layout for all three parts of the I output.
#[derive(Debug, Serialize)]
struct IDensityCsvRow {
    section: &'static str,
    eta: Option<f64>,
    theta: Option<f64>,
    density: f64,
}

fn unit_grid(kind: GridKind, points: usize, boundary_safe: bool) -> Result<Vec<f64>, CliError> {
    let closed = match kind {
        GridKind::Auto => boundary_safe,
        GridKind::Closed => true,
        GridKind::Interior => false,
    };
    let grid = if closed { UnitGrid::closed(points)? } else { UnitGrid::interior(points)? };
    Ok(grid.points())
}

pub fn prior_density(args: &PriorDensityArgs) -> Result<(), CliError> {
    let hyper = args.hyper.load()?;
    let mut out = output::open(args.output.as_deref())?;
    match args.prior {
        IntrinsicMethod::Ci => {
            let sizes = unique(&args.x_triangle)?;
            let thetas = unit_grid(args.grid, args.points.unwrap_or(201), hyper.a01() >= 1.0 && hyper.a10() >= 1.0)?;
            let mut rows = Vec::new();
            for x in sizes {
                let prior = ci_prior(&hyper, x);
                for &theta in &thetas {
                    rows.push(CiDensityRow { x_triangle: x, theta, density: prior.density(theta)? });
                }
            }
            match args.format {
                Format::Json => output::json(&mut out, &CiDensityReport { hyper, rows }),
                Format::Csv => output::csv(&mut out, &rows),
            }
        }
        IntrinsicMethod::Intrinsic => {
            let safe = [hyper.a01(), hyper.a10(), hyper.a_triangle(), hyper.a_diagonal()].iter().all(|&s| s >= 1.0);
            let axis = unit_grid(args.grid, args.points.unwrap_or(101), safe)?;
            let prior = IntrinsicPrior::new(&hyper, args.x_plus_plus);
            let grid = prior.evaluate_grid(&axis, &axis)?;
            let mut joint = Vec::with_capacity(axis.len() * axis.len());
            for (i, &eta) in axis.iter().enumerate() {
                for (j, &theta) in axis.iter().enumerate() {
                    joint.push(JointRow { eta, theta, density: grid.at(i, j) });
                }
            }
            let eta_marginal =
                prior.eta_marginal(&axis)?.into_iter().map(|(at, density)| CurveRow { at, density }).collect();
            let theta_law = prior.theta_marginal();
            let theta_marginal = axis
                .iter()
                .map(|&at| Ok(CurveRow { at, density: theta_law.density(at)? }))
                .collect::<Result<Vec<_>, corrprop::Error>>()?;
            let report = IDensityReport { hyper, x_plus_plus: args.x_plus_plus, joint, eta_marginal, theta_marginal };
            match args.format {
                Format::Json => output::json(&mut out, &report),
                Format::Csv => output::csv(&mut out, &i_density_csv(&report)),
            }
        }
    }
}

fn i_density_csv(r: &IDensityReport) -> Vec<IDensityCsvRow> {
    let joint = r.joint.iter().map(|j| IDensityCsvRow {
        section: "joint",
        eta: Some(j.eta),
        theta: Some(j.theta),
        density: j.density,
    });
    let eta = r.eta_marginal.iter().map(|c| IDensityCsvRow {
        section: "eta_marginal",
        eta: Some(c.at),
        theta: None,
        density: c.density,
    });
    let theta = r.theta_marginal.iter().map(|c| IDensityCsvRow {
        section: "theta_marginal",
        eta: None,
        theta: Some(c.at),
        density: c.density,
    });
    joint.chain(eta).chain(theta).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Split {
    AllToN00,
    Even,
}

#[derive(Debug, Args)]
pub struct NppArgs {
    #[arg(long)]
    n01: u64,
    #[arg(long)]
    n10: u64,
    #[command(flatten)]
    hyper: HyperArgs,
    #[arg(long, default_value_t = 10)]
    x_plus_plus: u64,
    #[arg(long, default_value_t = 5)]
    x_triangle: u64,
    /// Total sample sizes to evaluate
    #[arg(long, value_delimiter = ',', default_value = "10,20,50,100,200")]
    npp: Vec<u64>,
    /// Where the diagonal count goes
    #[arg(long, value_enum, default_value_t = Split::AllToN00)]
    split: Split,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NppReport {
    pub n01: u64,
    pub n10: u64,
    pub x_triangle: u64,
    pub x_plus_plus: u64,
    pub split: DiagonalSplit,
    pub hyper: DirichletHyper,
    pub rows: Vec<NppPoint>,
}

pub fn npp_curve(args: &NppArgs) -> Result<(), CliError> {
    let hyper = args.hyper.load()?;
    let split = match args.split {
        Split::AllToN00 => DiagonalSplit::AllToN00,
        Split::Even => DiagonalSplit::Even,
    };
    let curve = npp_dependence_curve(args.n01, args.n10, args.x_plus_plus, args.x_triangle, &hyper, &args.npp, split)?;
    let mut out = output::open(args.output.as_deref())?;
    match args.format {
        Format::Json => output::json(
            &mut out,
            &NppReport {
                n01: curve.n01,
                n10: curve.n10,
                x_triangle: curve.x_triangle,
                x_plus_plus: curve.x_plus_plus,
                split: curve.split,
                hyper,
                rows: curve.points,
            },
        ),
        Format::Csv => output::csv(&mut out, &curve.points),
    }
}
