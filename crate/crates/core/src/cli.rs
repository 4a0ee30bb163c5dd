//! Command-line front end. `run` parses arguments, executes one command and
//! returns the process exit code: 0 on success, 1 for usage and input
//! errors, 2 for mathematical or verification failures.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{act_group_on_meta, act_on_meta, random_basis_change, BasisElement, GroupElement};
use crate::circuit::{transform_plan, Circuit, PlanMode, StageReport, TransformOptions, TupleSet};
use crate::error::{Error, Result};
use crate::meta::{Format, MetaPolynomial};
use crate::oracle::{brute_decompose, Decomposition};
use crate::projector::{
    all_gz_plans, all_isotypic_plans, all_weight_plans, apply_plan, plan_gz, plan_hwv_with,
    plan_isotypic_with, plan_weight, Candidates, ProjectorFactor, ProjectorPlan, Target,
};
use crate::rep::{self, Partition, SemistandardTableau, Weight};
use crate::scalar::{self, Scalar};
use crate::text;
use crate::uea::{casimir, central_character};

#[derive(Parser, Debug)]
#[command(
    name = "isotypica",
    version,
    about = "Weight, isotypic, highest weight and Gelfand-Tsetlin projections of metapolynomials and circuits"
)]
pub struct Cli {
    /// Emit JSON reports.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Emit plain text reports (default).
    #[arg(long, global = true)]
    pub text: bool,
    /// Write the main artifact here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Metapolynomial file, text or JSON.
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Metapolynomial given inline, e.g. "c[2,0]*c[0,2] - c[1,1]^2".
    #[arg(long, conflicts_with = "input")]
    pub expr: Option<String>,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct TargetArgs {
    /// Weight space, e.g. 2,2.
    #[arg(long, value_name = "W")]
    pub weight: Option<String>,
    /// Isotypic component of a partition, e.g. 4,2,0.
    #[arg(long, value_name = "LAMBDA")]
    pub isotypic: Option<String>,
    /// Highest weight vectors of a partition.
    #[arg(long, value_name = "LAMBDA")]
    pub hwv: Option<String>,
    /// Tableau component; rows separated by '/', e.g. 1,1,2/2,3.
    #[arg(long, value_name = "ROWS")]
    pub tableau: Option<String>,
    /// Single Casimir C_p instead of a projector.
    #[arg(long, value_name = "P")]
    pub casimir: Option<usize>,
    /// The identity operator (empty plan).
    #[arg(long)]
    pub identity: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Weight,
    Isotypic,
    Hwv,
    Gz,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Route {
    /// Projector plans built from Casimir elements.
    #[default]
    Plan,
    /// Brute-force linear algebra.
    Oracle,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CandidateSet {
    #[default]
    Superset,
    Occurring,
}

impl From<CandidateSet> for Candidates {
    fn from(c: CandidateSet) -> Candidates {
        match c {
            CandidateSet::Superset => Candidates::Superset,
            CandidateSet::Occurring => Candidates::Occurring,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ModeArg {
    #[default]
    Factor,
    Single,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TuplesArg {
    Full,
    #[default]
    Closure,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Split a metapolynomial into all nonzero components of one kind.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, num_args = 3, value_names = ["DELTA", "D", "K"])]
        format: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value = "isotypic")]
        level: Level,
        #[arg(long, value_enum, default_value = "plan")]
        route: Route,
        #[arg(long, value_enum, default_value = "superset")]
        candidates: CandidateSet,
        /// Print brute-force bases of all components instead (needs --format).
        #[arg(long)]
        bases: bool,
    },
    /// Project a metapolynomial onto one component.
    Project {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, num_args = 3, value_names = ["DELTA", "D", "K"])]
        format: Option<Vec<u32>>,
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, value_enum, default_value = "plan")]
        route: Route,
        #[arg(long, value_enum, default_value = "superset")]
        candidates: CandidateSet,
        /// Also print the factors of the plan.
        #[arg(long)]
        show_plan: bool,
    },
    /// Central characters chi_lambda(C_p), p = 1..k.
    Characters {
        /// Dominant weight, e.g. 4,0.
        #[arg(long, value_name = "LAMBDA", allow_hyphen_values = true)]
        lambda: String,
    },
    /// Rewrite a circuit so that it computes a projection of its output.
    Transform {
        /// Circuit JSON file.
        #[arg(long, value_name = "PATH")]
        circuit: PathBuf,
        #[arg(long, num_args = 3, value_names = ["DELTA", "D", "K"])]
        format: Option<Vec<u32>>,
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, value_enum, default_value = "factor")]
        mode: ModeArg,
        /// Term budget of the single-pass normal form.
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
        #[arg(long, value_enum, default_value = "closure")]
        tuples: TuplesArg,
        /// Keep gates for identically zero values.
        #[arg(long)]
        no_fold: bool,
        /// Keep unreachable gates.
        #[arg(long)]
        keep_dead: bool,
        #[arg(long, default_value_t = 2_000_000)]
        max_gates: usize,
        #[arg(long, value_enum, default_value = "superset")]
        candidates: CandidateSet,
        /// Compare the result symbolically with the direct projection.
        #[arg(long)]
        check: bool,
    },
    /// Check projector laws and agreement with brute force on random inputs.
    Verify {
        #[arg(long, num_args = 3, value_names = ["DELTA", "D", "K"], required = true)]
        format: Vec<u32>,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Project a generic translate of a metapolynomial onto all tableau
    /// components of one shape.
    DemoCorollary {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, num_args = 3, value_names = ["DELTA", "D", "K"])]
        format: Option<Vec<u32>>,
        /// Metapolynomial to translate; defaults to c[2,0,0]^3.
        #[arg(long)]
        expr: Option<String>,
        /// Shape to project onto; defaults to the type of the input.
        #[arg(long, value_name = "LAMBDA")]
        shape: Option<String>,
        /// Use the identity instead of a random basis change.
        #[arg(long)]
        identity: bool,
        /// Entries of the random matrix lie in [-bound, bound].
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. }
            | Error::Json(_)
            | Error::FormatMismatch { .. }
            | Error::VariableCountMismatch { .. }
            | Error::IndexOutOfRange(..)
            | Error::InvalidWeight { .. }
            | Error::InvalidPartition(_)
            | Error::NotSemistandard(_)
            | Error::NotDominant(_)
            | Error::HomogenizeDegree { .. }
            | Error::Inhomogeneous(_)
            | Error::InvalidCircuit(_) => Failure::Usage(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Ctx<'a> {
    json: bool,
    out_path: Option<PathBuf>,
    stdout: &'a mut dyn Write,
}

impl Ctx<'_> {
    /// Writes the main artifact: to `--out` when given, else to stdout.
    fn emit(&mut self, text: &str, value: &Value) -> CliResult<()> {
        let body = if self.json {
            serde_json::to_string_pretty(value).expect("report serializes") + "\n"
        } else {
            text.to_string()
        };
        match &self.out_path {
            Some(p) => std::fs::write(p, body)?,
            None => self.stdout.write_all(body.as_bytes())?,
        }
        Ok(())
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let mut ctx = Ctx {
        json: cli.json,
        out_path: cli.out.clone(),
        stdout,
    };
    match execute(cli.command, &mut ctx) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            1
        }
        Err(Failure::Math(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            2
        }
    }
}

fn execute(cmd: Command, ctx: &mut Ctx<'_>) -> CliResult<()> {
    match cmd {
        Command::Decompose {
            input,
            format,
            level,
            route,
            candidates,
            bases,
        } => {
            let format = parse_format(format.as_deref())?;
            if bases {
                let f = format.ok_or_else(|| Failure::Usage("--bases needs --format".into()))?;
                return cmd_bases(f, level, ctx);
            }
            let m = read_meta(&input, format)?;
            let report = decompose(&m, level, route, candidates.into())?;
            ctx.emit(&report.to_text(), &serde_json::to_value(&report).expect("serializes"))?;
            if !report.reconstruction {
                return Err(Failure::Math("components do not sum to the input".into()));
            }
            Ok(())
        }
        Command::Project {
            input,
            format,
            target,
            route,
            candidates,
            show_plan,
        } => {
            let format = parse_format(format.as_deref())?;
            let m = read_meta(&input, format)?;
            let target = parse_target(&target, m.format())?
                .ok_or_else(|| Failure::Usage("project needs a projector target".into()))?;
            let candidates: Candidates = candidates.into();
            let (value, plan) = match route {
                Route::Plan => {
                    let plan = build_plan(&target, m.format(), &candidates)?;
                    (apply_plan(&plan, &m)?, Some(plan))
                }
                Route::Oracle => (brute_decompose(m.format())?.project(&target, &m)?, None),
            };
            let mut text = String::new();
            if show_plan {
                if let Some(p) = &plan {
                    for f in &p.factors {
                        let _ = writeln!(text, "factor {f}");
                    }
                }
            }
            let _ = writeln!(text, "{value}");
            let json = json!({
                "target": target,
                "value": value,
                "plan": if show_plan { serde_json::to_value(&plan).expect("serializes") } else { Value::Null },
            });
            ctx.emit(&text, &json)
        }
        Command::Characters { lambda } => {
            let lambda = parse_list(&lambda)?;
            let table = characters(&lambda)?;
            let mut text = String::new();
            for (p, c) in table.iter().enumerate() {
                let _ = writeln!(text, "C_{}: {}", p + 1, scalar::format(c));
            }
            let json = json!({
                "lambda": lambda,
                "characters": table.iter().map(scalar::format).collect::<Vec<_>>(),
            });
            ctx.emit(&text, &json)
        }
        Command::Transform {
            circuit,
            format,
            target,
            mode,
            budget,
            tuples,
            no_fold,
            keep_dead,
            max_gates,
            candidates,
            check,
        } => {
            let source = std::fs::read_to_string(&circuit)?;
            let c = Circuit::from_json(&source)?;
            let format = match (parse_format(format.as_deref())?, c.format()) {
                (Some(f), Some(g)) if f != g => {
                    return Err(Error::FormatMismatch {
                        expected: f,
                        found: g,
                    }
                    .into())
                }
                (Some(f), _) | (None, Some(f)) => f,
                (None, None) => {
                    let m = c.eval_symbolic()?;
                    m.format()
                }
            };
            let c = c.with_format(Some(format))?;
            let plan = match parse_target(&target, format)? {
                Some(t) => build_plan(&t, format, &candidates.into())?,
                None => operator_plan(&target, format)?,
            };
            let opts = TransformOptions {
                tuples: match tuples {
                    TuplesArg::Full => TupleSet::Full,
                    TuplesArg::Closure => TupleSet::Closure,
                },
                fold_zeros: !no_fold,
                eliminate_dead: !keep_dead,
                max_gates: Some(max_gates),
            };
            let mode = match mode {
                ModeArg::Factor => PlanMode::FactorByFactor,
                ModeArg::Single => PlanMode::SinglePass { term_budget: budget },
            };
            let started = Instant::now();
            let (out, stages) = transform_plan(&c, &plan, mode, &opts)?;
            let verified = if check {
                let expected = apply_plan(&plan, &c.eval_symbolic()?)?;
                Some(out.eval_symbolic()? == expected)
            } else {
                None
            };
            let report = TransformSummary {
                input_size: c.size(),
                output_size: out.size(),
                factors: plan.factors.len(),
                stages,
                verified,
                seconds: started.elapsed().as_secs_f64(),
            };
            let mut text = report.to_text();
            let mut json = serde_json::to_value(&report).expect("serializes");
            match &ctx.out_path {
                Some(p) => {
                    std::fs::write(p, out.to_json() + "\n")?;
                    let _ = writeln!(text, "circuit written to {}", p.display());
                }
                None => {
                    if !ctx.json {
                        let _ = writeln!(text, "{}", out.to_json());
                    }
                    json["circuit"] = serde_json::from_str(&out.to_json()).expect("valid json");
                }
            }
            let body = if ctx.json {
                serde_json::to_string_pretty(&json).expect("serializes") + "\n"
            } else {
                text
            };
            ctx.stdout.write_all(body.as_bytes())?;
            if verified == Some(false) {
                return Err(Failure::Math("transformed circuit disagrees with the direct projection".into()));
            }
            Ok(())
        }
        Command::Verify {
            format,
            samples,
            seed,
        } => {
            let format = parse_format(Some(&format))?.expect("required");
            let checks = verify_format(format, samples, seed)?;
            let mut text = String::new();
            for c in &checks {
                let _ = writeln!(text, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            }
            ctx.emit(&text, &serde_json::to_value(&checks).expect("serializes"))?;
            if checks.iter().all(|c| c.passed) {
                Ok(())
            } else {
                Err(Failure::Math("verification failed".into()))
            }
        }
        Command::DemoCorollary {
            seed,
            format,
            expr,
            shape,
            identity,
            bound,
        } => {
            let format = parse_format(format.as_deref())?.unwrap_or(Format::new(3, 2, 3));
            let m = text::parse_any(expr.as_deref().unwrap_or("c[2,0,0]^3"), Some(format))?;
            let shape = match shape {
                Some(s) => Some(Partition::new(parse_list(&s)?)?),
                None => None,
            };
            let g = if identity {
                GroupElement::identity(format.k)
            } else {
                random_basis_change(format.k, seed, bound)
            };
            let report = demo_corollary(&m, &g, shape)?;
            ctx.emit(&report.to_text(), &serde_json::to_value(&report).expect("serializes"))
        }
    }
}

fn parse_format(v: Option<&[u32]>) -> CliResult<Option<Format>> {
    match v {
        None => Ok(None),
        Some([delta, d, k]) => {
            if *k == 0 {
                return Err(Failure::Usage("k must be positive".into()));
            }
            Ok(Some(Format::new(*delta, *d, *k as usize)))
        }
        Some(_) => Err(Failure::Usage("--format takes three numbers".into())),
    }
}

fn parse_list(s: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Usage(format!("not an integer list: {s}")))
        })
        .collect()
}

fn parse_tableau(s: &str) -> CliResult<SemistandardTableau> {
    let rows = s
        .split('/')
        .map(|r| {
            r.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u32>()
                        .map_err(|_| Failure::Usage(format!("not a tableau: {s}")))
                })
                .collect::<CliResult<Vec<u32>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SemistandardTableau::new(rows)?)
}

fn parse_target(t: &TargetArgs, format: Format) -> CliResult<Option<Target>> {
    Ok(Some(if let Some(w) = &t.weight {
        Target::Weight(Weight::new(parse_list(w)?))
    } else if let Some(l) = &t.isotypic {
        Target::Isotypic(Partition::new(parse_list(l)?)?)
    } else if let Some(l) = &t.hwv {
        Target::HighestWeight(Partition::new(parse_list(l)?)?)
    } else if let Some(s) = &t.tableau {
        let tab = parse_tableau(s)?;
        if tab.max_entry() as usize > format.k {
            return Err(Failure::Usage(format!("tableau entries exceed k = {}", format.k)));
        }
        Target::TIsotypic(tab)
    } else {
        return Ok(None);
    }))
}

fn build_plan(target: &Target, format: Format, candidates: &Candidates) -> Result<ProjectorPlan> {
    match target {
        Target::Weight(w) => plan_weight(w, format),
        Target::Isotypic(l) => plan_isotypic_with(l, format, candidates),
        Target::HighestWeight(l) => plan_hwv_with(l, format, candidates),
        Target::TIsotypic(t) => plan_gz(t, format),
    }
}

/// A plan holding a bare operator: `C_p` as one factor, or no factor.
fn operator_plan(t: &TargetArgs, format: Format) -> CliResult<ProjectorPlan> {
    let factors = match t.casimir {
        Some(p) => {
            if p == 0 || p > format.k {
                return Err(Failure::Usage(format!("Casimir index must lie in 1..={}", format.k)));
            }
            vec![ProjectorFactor::new(casimir(format.k, p)?, Scalar::zero(), scalar::one())?]
        }
        None => Vec::new(),
    };
    Ok(ProjectorPlan {
        target: Target::Weight(Weight::new(vec![0; format.k])),
        format,
        factors,
    })
}

fn read_meta(input: &InputArgs, format: Option<Format>) -> CliResult<MetaPolynomial> {
    let text = match (&input.input, &input.expr) {
        (Some(p), _) => std::fs::read_to_string(p)?,
        (None, Some(e)) => e.clone(),
        (None, None) => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let m = text::parse_any(text.trim(), format)?;
    if let Some(f) = format {
        if m.format() != f {
            return Err(Error::FormatMismatch {
                expected: f,
                found: m.format(),
            }
            .into());
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub target: Target,
    pub value: MetaPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecomposeReport {
    pub format: Format,
    pub level: String,
    pub components: Vec<Component>,
    /// Components sum to the input (for the highest weight level: every
    /// component is killed by all raising operators).
    pub reconstruction: bool,
}

impl DecomposeReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "format {}", self.format);
        for c in &self.components {
            let _ = writeln!(s, "{}: {}", c.target, c.value);
        }
        let check = if self.level == "hwv" { "raising check" } else { "reconstruction" };
        let _ = writeln!(s, "{check}: {}", if self.reconstruction { "ok" } else { "FAILED" });
        s
    }
}

/// Every nonzero component of `m` at `level`.
pub fn decompose(m: &MetaPolynomial, level: Level, route: Route, candidates: Candidates) -> Result<DecomposeReport> {
    let format = m.format();
    let targets: Vec<Target> = match level {
        Level::Weight => rep::enumerate_weights(format.delta, format.d, format.k)
            .into_iter()
            .map(Target::Weight)
            .collect(),
        Level::Isotypic => rep::enumerate_partitions(format.weight_total(), format.k)
            .into_iter()
            .map(Target::Isotypic)
            .collect(),
        Level::Hwv => rep::enumerate_partitions(format.weight_total(), format.k)
            .into_iter()
            .map(Target::HighestWeight)
            .collect(),
        Level::Gz => rep::enumerate_partitions(format.weight_total(), format.k)
            .iter()
            .flat_map(|l| rep::enumerate_tableaux(l, format.k))
            .map(Target::TIsotypic)
            .collect(),
    };
    let oracle: Option<Decomposition> = match route {
        Route::Oracle => Some(brute_decompose(format)?),
        Route::Plan => None,
    };
    let mut components = Vec::new();
    if !m.is_zero() {
        for t in targets {
            let value = match &oracle {
                Some(dec) => dec.project(&t, m)?,
                None => apply_plan(&build_plan(&t, format, &candidates)?, m)?,
            };
            if !value.is_zero() {
                components.push(Component { target: t, value });
            }
        }
    }
    let reconstruction = if level == Level::Hwv {
        let mut ok = true;
        for c in &components {
            for e in BasisElement::all(format.k).into_iter().filter(|e| e.is_raising()) {
                ok &= act_on_meta(e, &c.value)?.is_zero();
            }
        }
        ok
    } else {
        let mut sum = MetaPolynomial::zero(format);
        for c in &components {
            sum = sum.add(&c.value)?;
        }
        sum == *m
    };
    Ok(DecomposeReport {
        format,
        level: format!("{level:?}").to_lowercase(),
        components,
        reconstruction,
    })
}

fn cmd_bases(format: Format, level: Level, ctx: &mut Ctx<'_>) -> CliResult<()> {
    let dec = brute_decompose(format)?;
    let mut blocks: Vec<(Target, Vec<MetaPolynomial>)> = Vec::new();
    match level {
        Level::Weight => {
            for (a, w) in dec.weights.labels().iter().enumerate() {
                blocks.push((Target::Weight(w.clone()), dec.polys(dec.weights.block(a))));
            }
        }
        Level::Isotypic => {
            for (a, l) in dec.isotypic.labels().iter().enumerate() {
                blocks.push((Target::Isotypic(l.clone()), dec.polys(dec.isotypic.block(a))));
            }
        }
        Level::Hwv => {
            for (l, b) in &dec.highest {
                blocks.push((Target::HighestWeight(l.clone()), dec.polys(b)));
            }
        }
        Level::Gz => {
            for (a, t) in dec.tableaux.labels().iter().enumerate() {
                blocks.push((Target::TIsotypic(t.clone()), dec.polys(dec.tableaux.block(a))));
            }
        }
    }
    let mut text = String::new();
    let _ = writeln!(text, "format {format}, dimension {}", dec.dim());
    for (t, b) in &blocks {
        let _ = writeln!(text, "{t}: dimension {}", b.len());
        for p in b {
            let _ = writeln!(text, "  {}", p.primitive());
        }
    }
    let json = json!({
        "format": format,
        "dimension": dec.dim(),
        "components": blocks.iter().map(|(t, b)| json!({
            "target": t,
            "basis": b.iter().map(MetaPolynomial::primitive).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    ctx.emit(&text, &json)
}

/// `chi_lambda(C_p)` for `p = 1..=k`.
pub fn characters(lambda: &[i64]) -> Result<Vec<Scalar>> {
    if !Weight::new(lambda.to_vec()).is_dominant() {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    (1..=lambda.len()).map(|p| central_character(lambda, p)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TransformSummary {
    pub input_size: usize,
    pub output_size: usize,
    pub factors: usize,
    #[serde(serialize_with = "stages_json")]
    pub stages: Vec<StageReport>,
    pub verified: Option<bool>,
    pub seconds: f64,
}

fn stages_json<S: serde::Serializer>(stages: &[StageReport], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Value> = stages
        .iter()
        .map(|st| {
            let r = &st.report;
            json!({
                "terms": st.terms,
                "length": r.length,
                "tuples": r.tuple_count,
                "pair_bound": r.pair_bound.to_string(),
                "input_size": r.input_size,
                "gates_created": r.gates_created,
                "output_size": r.output_size,
                "product_gates": r.product_gates.iter().map(|p| json!({
                    "gate": p.gate, "products": p.products, "adds": p.adds,
                })).collect::<Vec<_>>(),
                "output_gates": r.output_gates,
            })
        })
        .collect();
    v.serialize(s)
}

impl TransformSummary {
    fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "input size {}, output size {}, {} factor(s), {} stage(s)",
            self.input_size,
            self.output_size,
            self.factors,
            self.stages.len()
        );
        for (n, st) in self.stages.iter().enumerate() {
            let r = &st.report;
            let _ = writeln!(
                s,
                "stage {}: {} terms, L = {}, {} tuples, |A| = {}, {} -> {} gates ({} created)",
                n + 1,
                st.terms,
                r.length,
                r.tuple_count,
                r.pair_bound,
                r.input_size,
                r.output_size,
                r.gates_created
            );
        }
        if let Some(v) = self.verified {
            let _ = writeln!(s, "check: {}", if v { "ok" } else { "FAILED" });
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
}

fn random_meta(rng: &mut ChaCha8Rng, format: Format) -> MetaPolynomial {
    let mut terms = Vec::new();
    for m in format.metamonomials() {
        if rng.gen_bool(0.3) {
            terms.push((scalar::int(rng.gen_range(-5..=5)), m.factors().to_vec()));
        }
    }
    MetaPolynomial::from_terms(format, terms).expect("valid terms")
}

/// Idempotence, orthogonality and completeness of every plan family, and
/// agreement with brute force, on `samples` random inputs.
pub fn verify_format(format: Format, samples: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let dec = brute_decompose(format)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<MetaPolynomial> = (0..samples).map(|_| random_meta(&mut rng, format)).collect();
    let mut hwv = Vec::new();
    for l in rep::enumerate_partitions(format.weight_total(), format.k) {
        hwv.push(plan_hwv_with(&l, format, &Candidates::Superset)?);
    }
    let families = [
        ("weight", all_weight_plans(format)?, true),
        ("isotypic", all_isotypic_plans(format)?, true),
        ("hwv", hwv, false),
        ("gz", all_gz_plans(format)?, true),
    ];
    let mut out = Vec::new();
    for (name, plans, complete) in families {
        let (mut idem, mut orth, mut comp, mut agree) = (true, true, true, true);
        for m in &inputs {
            let images: Vec<MetaPolynomial> = plans.iter().map(|p| apply_plan(p, m)).collect::<Result<_>>()?;
            let mut sum = MetaPolynomial::zero(format);
            for (a, (p, img)) in plans.iter().zip(&images).enumerate() {
                agree &= *img == dec.project(&p.target, m)?;
                sum = sum.add(img)?;
                if img.is_zero() {
                    continue;
                }
                idem &= apply_plan(p, img)? == *img;
                for (b, q) in plans.iter().enumerate() {
                    if a != b {
                        orth &= apply_plan(q, img)?.is_zero();
                    }
                }
            }
            if complete {
                comp &= sum == *m;
            }
        }
        out.push(CheckResult { name: format!("{name} idempotence"), passed: idem });
        out.push(CheckResult { name: format!("{name} orthogonality"), passed: orth });
        if complete {
            out.push(CheckResult { name: format!("{name} completeness"), passed: comp });
        }
        out.push(CheckResult { name: format!("{name} matches brute force"), passed: agree });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoReport {
    pub input: MetaPolynomial,
    pub shape: Partition,
    pub translated: MetaPolynomial,
    pub projections: Vec<(SemistandardTableau, bool)>,
    pub nonzero: usize,
}

impl DemoReport {
    fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "input {}", self.input);
        let _ = writeln!(s, "translated {}", self.translated);
        let _ = writeln!(s, "shape {}", self.shape);
        for (t, nz) in &self.projections {
            let _ = writeln!(s, "{t}: {}", if *nz { "nonzero" } else { "zero" });
        }
        let _ = writeln!(s, "nonzero {}/{}", self.nonzero, self.projections.len());
        s
    }
}

/// Projects `g . m` onto every tableau component of `shape`, which defaults
/// to the unique isotypic type of `m`.
pub fn demo_corollary(m: &MetaPolynomial, g: &GroupElement, shape: Option<Partition>) -> Result<DemoReport> {
    let format = m.format();
    let shape = match shape {
        Some(s) => s,
        None => {
            let mut found = None;
            for l in rep::isotypic_types(format).into_iter().map(|(l, _)| l) {
                let p = plan_isotypic_with(&l, format, &Candidates::Occurring)?;
                if apply_plan(&p, m)? == *m {
                    found = Some(l);
                    break;
                }
            }
            found.ok_or_else(|| Error::OutOfRange("input is not isotypic; pass a shape".into()))?
        }
    };
    let translated = act_group_on_meta(g, m)?;
    let mut projections = Vec::new();
    for t in rep::enumerate_tableaux(&shape, format.k) {
        let nz = !apply_plan(&plan_gz(&t, format)?, &translated)?.is_zero();
        projections.push((t, nz));
    }
    let nonzero = projections.iter().filter(|(_, nz)| *nz).count();
    Ok(DemoReport {
        input: m.clone(),
        shape,
        translated,
        projections,
        nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["isotypica"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn characters_table() {
        assert_eq!(call(&["characters", "--lambda", "4,0"]).1, "C_1: 4\nC_2: 20\n");
        assert_eq!(call(&["characters", "--lambda", "2,2"]).1, "C_1: 4\nC_2: 8\n");
        assert_eq!(call(&["characters", "--lambda", "0,0"]).1, "C_1: 0\nC_2: 0\n");
        let (code, out, _) = call(&["--json", "characters", "--lambda", "4,0"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["characters"], json!(["4", "20"]));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["characters", "--lambda", "1,2"]).0, 1);
        assert_eq!(call(&["no-such-command"]).0, 1);
        assert_eq!(call(&["project", "--expr", "c[1,1]^2"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
        let (code, _, err) = call(&["decompose", "--expr", "c[2,0]*c[0,2]", "--format", "1", "2", "2"]);
        assert_eq!(code, 1, "{err}");
    }

    #[test]
    fn decompose_trivial_inputs() {
        let (code, out, _) = call(&["decompose", "--expr", "c[2,0]*c[1,1]", "--level", "weight"]);
        assert_eq!(code, 0);
        assert_eq!(out, "format (2,2,2)\nweight (3,1): c[1,1]*c[2,0]\nreconstruction: ok\n");
        let (code, out, _) = call(&["decompose", "--expr", "0", "--format", "2", "2", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "format (2,2,2)\nreconstruction: ok\n");
    }

    #[test]
    fn decompose_routes_agree() {
        let m = text::parse_meta("c[2,0,0]*c[0,2,0]*c[0,0,2] + c[1,1,0]^3", None).unwrap();
        for level in [Level::Weight, Level::Isotypic, Level::Hwv, Level::Gz] {
            let a = decompose(&m, level, Route::Plan, Candidates::Superset).unwrap();
            let b = decompose(&m, level, Route::Oracle, Candidates::Superset).unwrap();
            assert_eq!(a, b);
            assert!(a.reconstruction);
        }
    }

    #[test]
    fn project_and_json_round_trip() {
        let (code, out, _) = call(&["--json", "project", "--expr", "c[1,1]^2", "--hwv", "2,2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let value: MetaPolynomial = serde_json::from_value(v["value"].clone()).unwrap();
        let expected = text::parse_meta("1/3*c[1,1]^2 - 4/3*c[2,0]*c[0,2]", None).unwrap();
        assert_eq!(value, expected);
        let (_, text_out, _) = call(&["project", "--expr", "c[1,1]^2", "--hwv", "2,2", "--route", "oracle"]);
        assert_eq!(text::parse_meta(text_out.trim(), None).unwrap(), expected);
    }

    #[test]
    fn transform_writes_verified_circuit() {
        let dir = std::env::temp_dir().join(format!("isotypica-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let src = dir.join("disc.json");
        let dst = dir.join("out.json");
        std::fs::write(&src, crate::circuit::discriminant_circuit().to_json()).unwrap();
        let (code, out, err) = call(&[
            "transform",
            "--circuit",
            src.to_str().unwrap(),
            "--format",
            "2",
            "2",
            "2",
            "--isotypic",
            "2,2",
            "--check",
            "--out",
            dst.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
        assert!(out.starts_with("input size 6,"));
        assert!(out.contains("check: ok"));
        let c = Circuit::from_json(&std::fs::read_to_string(&dst).unwrap()).unwrap();
        let disc = crate::circuit::discriminant_circuit().eval_symbolic().unwrap();
        assert_eq!(c.eval_symbolic().unwrap(), disc);
        let (code, out, _) = call(&["transform", "--circuit", src.to_str().unwrap(), "--identity"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("input size 6, output size 6,"));
        let (code, _, _) = call(&[
            "transform",
            "--circuit",
            src.to_str().unwrap(),
            "--isotypic",
            "2,2",
            "--mode",
            "single",
            "--budget",
            "3",
        ]);
        assert_eq!(code, 2);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn demo_counts() {
        let m = text::parse_meta("c[2,0,0]^3", None).unwrap();
        let r = demo_corollary(&m, &GroupElement::identity(3), None).unwrap();
        assert_eq!(r.shape, Partition::new(vec![6]).unwrap());
        assert_eq!(r.projections.len(), 28);
        assert_eq!(r.nonzero, 1);
        let r = demo_corollary(&m, &random_basis_change(3, 1, 3), None).unwrap();
        assert_eq!(r.nonzero, 28);
        let zero = MetaPolynomial::zero(Format::new(3, 2, 3));
        let r = demo_corollary(&zero, &random_basis_change(3, 1, 3), Some(Partition::new(vec![4, 2]).unwrap()))
            .unwrap();
        assert_eq!(r.nonzero, 0);
    }

    #[test]
    fn bases_dump() {
        let (code, out, _) = call(&["decompose", "--bases", "--format", "2", "2", "2", "--level", "hwv"]);
        assert_eq!(code, 0);
        assert!(out.contains("highest weight (2,2): dimension 1\n  4*c[0,2]*c[2,0] - c[1,1]^2\n"), "{out}");
    }
}
