//! Command implementations. Each returns the text to print and whether the
//! run counts as a pass; `main` maps that to the exit code.

use anyhow::{anyhow, bail, Context as _, Result};
use mazurtate_core::curves::{bundled_curves, find_curve, parse_curves, verify_tau_congruence_with, TauCongruenceReport};
use mazurtate_core::mazurtate::{
    check_budget, check_lambda_lower_bound, check_norm_relation, compare_theta_mod_p, evaluation_count, theta_from_raw,
    theta_raw, Form, LowerBoundReport, NormRelationReport, ThetaResult, DEFAULT_EXTRA_PRECISION,
};
use mazurtate_core::modsymb::EigenSymbol;
use mazurtate_core::qseries::{check_congruence_qexp, check_tau_lemma_with, delta_qexp, f27_qexp, f32_qexp, CongruenceReport, TauLemmaReport};
use mazurtate_core::WeierstrassCurve;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::cache::EigenCache;
use crate::pattern::predict_lambda;
use crate::tables::{published_classes, published_row};

/// Default cap on symbol evaluations per θ.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Recorded with every θ so μ values can be audited.
pub const NORMALIZATION: &str = "content-1: coprime integer values on the Manin generators of the plus quotient";

pub const Q_CONVENTION: &str = "q_1 = 0 (empty sum)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub passed: bool,
}

/// State shared by the commands.
#[derive(Debug, Clone)]
pub struct Context {
    pub cache: EigenCache,
    pub budget: u64,
    /// Curves from `--curves-file`, searched before the bundled ones.
    pub curves: Vec<WeierstrassCurve>,
}

impl Default for Context {
    fn default() -> Self {
        Context {
            cache: EigenCache::default(),
            budget: DEFAULT_BUDGET,
            curves: Vec::new(),
        }
    }
}

/// λ or μ, with `∞` written as `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inv(pub Option<u64>);

impl Serialize for Inv {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str("inf"),
        }
    }
}

impl std::fmt::Display for Inv {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Reads a curve file in the bundled format.
pub fn load_curves_file(path: &std::path::Path) -> Result<Vec<WeierstrassCurve>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_curves(&text).map_err(|errors| {
        let lines: Vec<String> = errors.iter().map(|e| e.to_string()).collect();
        anyhow!("{}: {}", path.display(), lines.join("; "))
    })
}

impl Context {
    fn available_labels(&self) -> String {
        let mut labels: Vec<String> = self.curves.iter().map(|c| c.label().to_string()).collect();
        labels.extend(bundled_curves().iter().map(|c| c.label().to_string()));
        labels.join(", ")
    }

    pub fn curve(&self, label: &str) -> Result<WeierstrassCurve> {
        self.curves
            .iter()
            .find(|c| c.label() == label || c.class_label() == label)
            .cloned()
            .or_else(|| find_curve(label))
            .ok_or_else(|| anyhow!("unknown curve label {label:?}; available labels: {}", self.available_labels()))
    }

    /// `"delta"` or a curve label.
    pub fn form(&self, name: &str) -> Result<Form> {
        if name.eq_ignore_ascii_case("delta") {
            Ok(Form::Delta)
        } else {
            Ok(Form::Curve(self.curve(name)?))
        }
    }

    fn symbol(&self, form: &Form) -> Result<EigenSymbol> {
        self.cache.eigen_symbol(form)
    }

    fn theta(&self, phi: &EigenSymbol, p: u64, n: u32, precision: Option<u32>) -> Result<ThetaResult> {
        check_budget(p, n, self.budget)?;
        let raw = theta_raw(phi, p, n)?;
        Ok(theta_from_raw(raw, precision.unwrap_or(n + DEFAULT_EXTRA_PRECISION))?)
    }
}

pub fn cmd_tau(bound: usize) -> Result<Output> {
    if bound < 1 {
        bail!("--bound must be at least 1");
    }
    Ok(Output {
        text: delta_qexp(bound).to_json() + "\n",
        passed: true,
    })
}

#[derive(Serialize)]
struct CongruenceOut {
    p: u64,
    bound: u64,
    passed: bool,
    reports: Vec<CongruenceEntry>,
}

#[derive(Serialize)]
struct CongruenceEntry {
    status: &'static str,
    #[serde(flatten)]
    report: TauCongruenceReport,
}

/// `a_ℓ(E) = τ(ℓ) mod p` for each curve; passes when every curve has a
/// rational `p`-torsion point and no mismatch.
pub fn cmd_congruence(p: u64, curves: &[WeierstrassCurve], bound: u64) -> Result<Output> {
    if p != 2 && p != 3 {
        bail!("--p must be 2 or 3, got {p}");
    }
    let delta = delta_qexp(bound.max(1) as usize);
    let reports = curves
        .iter()
        .map(|c| {
            let report = verify_tau_congruence_with(c, p, &delta)?;
            Ok(CongruenceEntry {
                status: report.status(),
                report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.status == "pass");
    let text = to_json(&CongruenceOut { p, bound, passed, reports })?;
    Ok(Output { text, passed })
}

#[derive(Serialize)]
struct ThetaOut<'a> {
    form: String,
    level: u64,
    weight: u32,
    p: u64,
    n: u32,
    evaluations: u64,
    normalization: &'static str,
    exactly_zero: bool,
    theta: &'a RawValue,
}

pub fn cmd_theta(ctx: &Context, form: &Form, p: u64, n: u32, precision: Option<u32>) -> Result<Output> {
    let phi = ctx.symbol(form)?;
    let t = ctx.theta(&phi, p, n, precision)?;
    let element = RawValue::from_string(t.to_json())?;
    let out = ThetaOut {
        form: form.label(),
        level: form.level(),
        weight: form.weight(),
        p,
        n,
        evaluations: evaluation_count(p, n),
        normalization: NORMALIZATION,
        exactly_zero: t.exactly_zero,
        theta: &element,
    };
    Ok(Output {
        text: to_json(&out)?,
        passed: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelInvariants {
    pub n: u32,
    pub mu: Inv,
    pub lambda: Inv,
    pub precision: u32,
    pub precision_certified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LambdaTableRow {
    pub form: String,
    pub p: u64,
    pub invariants: Vec<LevelInvariants>,
    pub pattern: Option<&'static str>,
    /// The pattern evaluated at each `n`, where defined.
    pub predicted: Vec<Option<i128>>,
    /// Published λ for `n = 1..n_max`, where listed.
    pub published: Vec<Option<Inv>>,
    pub agrees_with_published: Option<bool>,
}

#[derive(Serialize)]
struct TableOut<'a> {
    p: u64,
    n_max: u32,
    normalization: &'static str,
    q_convention: &'static str,
    rows: &'a [LambdaTableRow],
}

/// Label used to find the published row: the isogeny class, or `"delta"`.
fn class_of(form: &Form) -> String {
    match form {
        Form::Delta => "delta".into(),
        Form::Curve(e) => e.class_label().to_string(),
    }
}

pub fn lambda_rows(ctx: &Context, forms: &[Form], p: u64, n_max: u32) -> Result<Vec<LambdaTableRow>> {
    for n in 1..=n_max {
        check_budget(p, n, ctx.budget)?;
    }
    forms
        .iter()
        .map(|form| {
            let phi = ctx.symbol(form)?;
            let invariants = (1..=n_max)
                .map(|n| {
                    let t = ctx.theta(&phi, p, n, None)?;
                    Ok(LevelInvariants {
                        n,
                        mu: Inv(t.invariants.mu_value()),
                        lambda: Inv(t.invariants.lambda_value()),
                        precision: t.precision(),
                        precision_certified: t.invariants.precision_certified,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let row = published_row(p, &class_of(form));
            let pattern = row.map(|r| r.pattern);
            let predicted = (1..=n_max)
                .map(|n| pattern.and_then(|pat| predict_lambda(pat, p, n).ok()))
                .collect();
            let published: Vec<Option<Inv>> = (1..=n_max)
                .map(|n| row.and_then(|r| r.lambdas.get(n as usize - 1)).map(|l| Inv(*l)))
                .collect();
            let listed: Vec<(Inv, Inv)> = invariants
                .iter()
                .zip(&published)
                .filter_map(|(inv, pub_l)| pub_l.map(|l| (inv.lambda, l)))
                .collect();
            let agrees_with_published = (!listed.is_empty()).then(|| listed.iter().all(|(a, b)| a == b));
            Ok(LambdaTableRow {
                form: form.label(),
                p,
                invariants,
                pattern,
                predicted,
                published,
                agrees_with_published,
            })
        })
        .collect()
}

/// Forms listed in the tables at `p` that have a bundled curve, Δ first.
pub fn default_forms(ctx: &Context, p: u64) -> Vec<Form> {
    published_classes(p).into_iter().filter_map(|c| ctx.form(c).ok()).collect()
}

pub fn cmd_lambda_table(ctx: &Context, forms: &[Form], p: u64, n_max: u32, format: TableFormat) -> Result<Output> {
    if n_max < 1 {
        bail!("--n-max must be at least 1");
    }
    let rows = lambda_rows(ctx, forms, p, n_max)?;
    let text = match format {
        TableFormat::Json => to_json(&TableOut {
            p,
            n_max,
            normalization: NORMALIZATION,
            q_convention: Q_CONVENTION,
            rows: &rows,
        })?,
        TableFormat::Csv => table_csv(&rows, n_max)?,
    };
    Ok(Output { text, passed: true })
}

/// Columns: form, `n=1..n_max` (λ), pattern, then μ per level joined by
/// `;`, the working precisions, and the normalization.
fn table_csv(rows: &[LambdaTableRow], n_max: u32) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    let mut header = vec!["form".to_string()];
    header.extend((1..=n_max).map(|n| format!("n={n}")));
    header.extend(["pattern", "mu", "precision", "normalization"].map(String::from));
    w.write_record(&header)?;
    for row in rows {
        let mut record = vec![row.form.clone()];
        record.extend(row.invariants.iter().map(|i| i.lambda.to_string()));
        record.push(row.pattern.unwrap_or("").to_string());
        let join = |f: &dyn Fn(&LevelInvariants) -> String| row.invariants.iter().map(f).collect::<Vec<_>>().join(";");
        record.push(join(&|i| i.mu.to_string()));
        record.push(join(&|i| i.precision.to_string()));
        record.push(NORMALIZATION.to_string());
        w.write_record(&record)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    NormRelation,
    LowerBound,
    ThetaCongruence,
    QCongruence,
    TauLemma,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::NormRelation => "norm-relation",
            Check::LowerBound => "lower-bound",
            Check::ThetaCongruence => "theta-congruence",
            Check::QCongruence => "q-congruence",
            Check::TauLemma => "tau-lemma",
        }
    }
}

/// Arguments shared by the checks; each uses the ones it needs.
#[derive(Debug, Clone, Default)]
pub struct VerifyArgs {
    pub p: u64,
    pub form: Option<Form>,
    pub n: Option<u32>,
    pub n_max: Option<u32>,
    pub bound: Option<u64>,
    pub precision: Option<u32>,
}

#[derive(Serialize)]
struct VerifyOut<T: Serialize> {
    check: &'static str,
    p: u64,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    form: Option<String>,
    reports: Vec<T>,
}

#[derive(Serialize)]
struct CongruenceEntryN {
    n: u32,
    congruent: bool,
    mu: [Inv; 2],
    primitive_congruent: bool,
    lambda: [Inv; 2],
    lambda_equal: bool,
    /// λ agreement is not required at `p = 2`, `n <= 3`.
    lambda_report_only: bool,
    passed: bool,
}

#[derive(Serialize)]
struct NormEntry {
    passed: bool,
    #[serde(flatten)]
    report: NormRelationReport,
}

pub fn cmd_verify(ctx: &Context, check: Check, args: &VerifyArgs) -> Result<Output> {
    let p = args.p;
    let need_form = || args.form.clone().ok_or_else(|| anyhow!("{} needs --curve or --form", check.name()));
    macro_rules! finish {
        ($form:expr, $reports:expr, $passed:expr) => {{
            let reports = $reports;
            let passed = $passed(&reports);
            let out = VerifyOut {
                check: check.name(),
                p,
                passed,
                form: $form,
                reports,
            };
            Ok(Output {
                text: to_json(&out)?,
                passed,
            })
        }};
    }
    match check {
        Check::NormRelation => {
            let form = need_form()?;
            let n = args.n.unwrap_or(1);
            check_budget(p, n + 1, ctx.budget)?;
            let phi = ctx.symbol(&form)?;
            let precision = args.precision.unwrap_or(n + 1 + DEFAULT_EXTRA_PRECISION);
            let report = check_norm_relation(&phi, &form.a_p(p)?, p, n, precision)?;
            let entry = NormEntry {
                passed: report.passed(),
                report,
            };
            finish!(Some(form.label()), vec![entry], |r: &Vec<NormEntry>| r.iter().all(|e| e.passed))
        }
        Check::LowerBound => {
            let form = need_form()?;
            match &form {
                Form::Curve(e) if e.is_additive_at(p) => {}
                _ => bail!("the lower bound is for curves with additive reduction at {p}; {} is not one", form.label()),
            }
            let phi = ctx.symbol(&form)?;
            let reports = (1..=args.n_max.unwrap_or(3))
                .map(|n| Ok(check_lambda_lower_bound(&ctx.theta(&phi, p, n, None)?)))
                .collect::<Result<Vec<LowerBoundReport>>>()?;
            finish!(Some(form.label()), reports, |r: &Vec<LowerBoundReport>| r.iter().all(|b| b.passed))
        }
        Check::ThetaCongruence => {
            let form = match (&args.form, p) {
                (Some(f), _) => f.clone(),
                (None, 3) => ctx.form("27a1")?,
                (None, 2) => ctx.form("32a1")?,
                (None, _) => bail!("theta-congruence needs --curve for p = {p}"),
            };
            let delta = ctx.symbol(&Form::Delta)?;
            let other = ctx.symbol(&form)?;
            let reports = (1..=args.n_max.unwrap_or(2))
                .map(|n| {
                    let f = ctx.theta(&delta, p, n, None)?;
                    let g = ctx.theta(&other, p, n, None)?;
                    let r = compare_theta_mod_p(&f.element, &g.element)?;
                    let report_only = p == 2 && n <= 3;
                    Ok(CongruenceEntryN {
                        n,
                        congruent: r.congruent,
                        mu: [Inv(r.mu_first), Inv(r.mu_second)],
                        primitive_congruent: r.primitive_congruent,
                        lambda: [Inv(r.lambda_first), Inv(r.lambda_second)],
                        lambda_equal: r.lambda_equal,
                        lambda_report_only: report_only,
                        passed: r.congruent && r.mu_zero() && (r.lambda_equal || report_only),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            finish!(Some(form.label()), reports, |r: &Vec<CongruenceEntryN>| r.iter().all(|e| e.passed))
        }
        Check::QCongruence => {
            let bound = args.bound.unwrap_or(500) as usize;
            if bound < 1 {
                bail!("--bound must be at least 1");
            }
            let (other, label) = match p {
                3 => (f27_qexp(bound), "27a1"),
                2 => (f32_qexp(bound), "32a1"),
                _ => bail!("q-congruence is stated for p = 2 and p = 3, got {p}"),
            };
            let report = check_congruence_qexp(&delta_qexp(bound), &other, p)?;
            finish!(Some(label.to_string()), vec![report], |r: &Vec<CongruenceReport>| r.iter().all(|c| c.passed()))
        }
        Check::TauLemma => {
            let bound = args.bound.unwrap_or(10_000) as usize;
            let report = check_tau_lemma_with(&delta_qexp(bound.max(1)), p)?;
            finish!(None, vec![report], |r: &Vec<TauLemmaReport>| r.iter().all(|c| c.passed()))
        }
    }
}
