//! Command-line grammar and dispatch.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use sdias_core::checks::{check_ass, check_bar_unit, check_graded_dialgebra, check_graded_leibniz, check_leibniz, is_lie};
use sdias_core::construct::{
    differential_dialgebra, lie_tensor_dialgebra, tensor_dialgebras, to_leibniz, SignConvention,
};
use sdias_core::linalg::{row_reduce, SparseVector};
use sdias_core::matrix::{build_gl_with, build_sl, check_steinberg_relations};
use sdias_core::models::{
    build_a_graded_model, build_canonical_la, build_kappa_model, check_lemma51_conditions, check_thm41_conditions,
};
use sdias_core::weights::{check_delta_graded, weight_decomposition};
use sdias_core::{CheckOptions, LeibnizSuperalgebra, SuperDialgebra, ViolationReport, DEFAULT_MAX_VIOLATIONS};
use serde_json::{json, Value};

use crate::files::{
    algebra_json, parse_algebra, parse_bundle_a, parse_bundle_k, parse_map, parse_steinberg, parse_subspace,
    Algebra, Loaded,
};
use crate::render::{self, Labeling};

#[derive(Parser, Debug)]
#[command(name = "sdias", version, about = "Exact checks and constructions for super dialgebras and Leibniz superalgebras")]
pub struct Cli {
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Violations kept per report (the total is always counted).
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_VIOLATIONS)]
    pub max_violations: usize,
    /// Worker threads; all cores when omitted.
    #[arg(long, global = true)]
    pub parallel: Option<usize>,
    /// Omit timing so that outputs can be compared byte for byte.
    #[arg(long, global = true)]
    pub canonical: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Ass,
    Leibniz,
    Lie,
    Graded,
    Barunit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConditionKind {
    Thm41,
    Lemma51,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    #[default]
    Koszul,
    Literal,
}

impl From<Convention> for SignConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Koszul => SignConvention::Koszul,
            Convention::Literal => SignConvention::Literal,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check an identity on an algebra file. Dialgebras are checked through
    /// their Leibniz bracket for `leibniz` and `lie`.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        file: PathBuf,
    },
    /// Construct an algebra and emit it as an algebra file.
    Build {
        #[command(subcommand)]
        what: Build,
    },
    /// Simultaneous eigenspaces of ad h for the Cartan elements given by label.
    Decompose {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        cartan: Vec<String>,
    },
    /// Certificate for a root grading by the subalgebra spanned in `--subalg`.
    GradeCheck {
        file: PathBuf,
        #[arg(long)]
        subalg: PathBuf,
        /// Names of vectors in the subalgebra file, or basis labels.
        #[arg(long, value_delimiter = ',', required = true)]
        cartan: Vec<String>,
    },
    /// Conditions on coordinate data in a bundle file.
    Conditions {
        #[arg(value_enum)]
        what: ConditionKind,
        bundle: PathBuf,
    },
    /// Steinberg relations for the images listed in `--map`.
    SteinbergCheck {
        m: usize,
        n: usize,
        file: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum, default_value_t = Convention::Koszul)]
        convention: Convention,
    },
}

#[derive(Subcommand, Debug)]
pub enum Build {
    /// gl(m,n) over a dialgebra.
    Gl {
        m: usize,
        n: usize,
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Convention::Koszul)]
        convention: Convention,
    },
    /// Supertrace-free part [gl, gl] on its own basis.
    Sl {
        m: usize,
        n: usize,
        file: PathBuf,
    },
    /// Differential dialgebra of an associative superalgebra and a map file.
    Diff { superalgebra: PathBuf, d: PathBuf },
    /// Tensor product of two dialgebras, or current algebra of a Leibniz
    /// superalgebra and a dialgebra.
    Tensor { first: PathBuf, second: PathBuf },
    /// Canonical sl(p,q)⊗A ⊕ ad [A,A] of a unital dialgebra.
    Canonical {
        p: usize,
        q: usize,
        file: PathBuf,
    },
    /// Model sl(p,q)⊗A ⊕ D from a `bundle-a` file.
    ModelA { bundle: PathBuf },
    /// Model g⊗A ⊕ D over a Lie superalgebra with an invariant form κ, from a
    /// `bundle-kappa` file.
    ModelKappa { bundle: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// What a command produced, before formatting.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
    pub text: String,
    pub warnings: Vec<String>,
    /// Build commands emit the algebra file itself.
    pub document: bool,
}

impl Outcome {
    fn verdict(passed: bool, report: Value, text: String) -> Self {
        Outcome {
            status: if passed { Status::Pass } else { Status::Fail },
            report,
            text,
            warnings: Vec::new(),
            document: false,
        }
    }

    fn algebra(alg: Algebra) -> Self {
        Outcome {
            status: Status::Pass,
            report: algebra_json(&alg),
            text: String::new(),
            warnings: Vec::new(),
            document: true,
        }
    }
}

fn load(path: &Path, warnings: &mut Vec<String>) -> anyhow::Result<Algebra> {
    let Loaded { algebra, grading } = parse_algebra(path)?;
    if !grading.passed {
        warnings.push(format!(
            "{}: products do not respect the parity of the basis ({} violations)",
            path.display(),
            grading.total_violations
        ));
    }
    Ok(algebra)
}

fn dialgebra(alg: Algebra, path: &Path) -> anyhow::Result<SuperDialgebra> {
    match alg {
        Algebra::Dialgebra(d) => Ok(d),
        Algebra::Leibniz(_) => bail!("{}: a dialgebra is required", path.display()),
    }
}

fn leibniz(alg: Algebra) -> LeibnizSuperalgebra {
    match alg {
        Algebra::Dialgebra(d) => to_leibniz(&d),
        Algebra::Leibniz(l) => l,
    }
}

fn report_outcome(r: &ViolationReport, how: Labeling) -> Outcome {
    Outcome::verdict(
        r.passed,
        render::violation_report_json(r, how),
        render::violation_report_text(r, how),
    )
}

fn check(what: CheckKind, file: &Path, opts: &CheckOptions, warnings: &mut Vec<String>) -> anyhow::Result<Outcome> {
    let alg = load(file, warnings)?;
    Ok(match what {
        CheckKind::Ass => {
            let d = dialgebra(alg, file)?;
            report_outcome(&check_ass(&d, opts), Labeling::basis(d.space(), 1))
        }
        CheckKind::Leibniz => {
            let l = leibniz(alg);
            report_outcome(&check_leibniz(&l, opts), Labeling::basis(l.space(), 0))
        }
        CheckKind::Lie => {
            let l = leibniz(alg);
            report_outcome(&is_lie(&l, opts), Labeling::basis(l.space(), 0))
        }
        CheckKind::Graded => match alg {
            Algebra::Dialgebra(d) => report_outcome(&check_graded_dialgebra(&d, opts), Labeling::basis(d.space(), 1)),
            Algebra::Leibniz(l) => report_outcome(&check_graded_leibniz(&l, opts), Labeling::basis(l.space(), 0)),
        },
        CheckKind::Barunit => {
            let d = dialgebra(alg, file)?;
            match check_bar_unit(&d, opts) {
                Ok(r) => report_outcome(&r, Labeling::basis(d.space(), 1)),
                Err(_) => Outcome::verdict(
                    false,
                    json!({"identity": "bar-unit", "passed": false, "message": "no bar-unit declared"}),
                    "bar-unit: no bar-unit declared\n".into(),
                ),
            }
        }
    })
}

fn build(what: &Build, warnings: &mut Vec<String>) -> anyhow::Result<Outcome> {
    let alg = match what {
        Build::Gl { m, n, file, convention } => {
            let d = dialgebra(load(file, warnings)?, file)?;
            Algebra::Leibniz(build_gl_with(*m, *n, &d, (*convention).into())?)
        }
        Build::Sl { m, n, file } => {
            let d = dialgebra(load(file, warnings)?, file)?;
            Algebra::Leibniz(build_sl(*m, *n, &d)?.1.algebra)
        }
        Build::Diff { superalgebra, d } => {
            let a = dialgebra(load(superalgebra, warnings)?, superalgebra)?;
            let map = parse_map(d, a.space())?;
            Algebra::Dialgebra(differential_dialgebra(&a, &map)?)
        }
        Build::Tensor { first, second } => {
            let x = load(first, warnings)?;
            let y = dialgebra(load(second, warnings)?, second)?;
            match x {
                Algebra::Dialgebra(x) => Algebra::Dialgebra(tensor_dialgebras(&x, &y)),
                Algebra::Leibniz(g) => Algebra::Leibniz(lie_tensor_dialgebra(&g, &y)),
            }
        }
        Build::Canonical { p, q, file } => {
            let a = dialgebra(load(file, warnings)?, file)?;
            Algebra::Leibniz(build_canonical_la(&a, *p, *q)?.0)
        }
        Build::ModelA { bundle } => Algebra::Leibniz(build_a_graded_model(&parse_bundle_a(bundle)?)?),
        Build::ModelKappa { bundle } => Algebra::Leibniz(build_kappa_model(&parse_bundle_k(bundle)?)?),
    };
    Ok(Outcome::algebra(alg))
}

fn basis_vectors(l: &LeibnizSuperalgebra, labels: &[String]) -> anyhow::Result<Vec<SparseVector>> {
    labels
        .iter()
        .map(|s| {
            let k = l
                .space()
                .index_of(s)
                .ok_or_else(|| anyhow!("unknown label {s:?} in {}", l.name()))?;
            Ok(SparseVector::unit(l.dim(), k))
        })
        .collect()
}

fn run(cli: &Cli, warnings: &mut Vec<String>) -> anyhow::Result<Outcome> {
    let opts = CheckOptions {
        max_violations: cli.max_violations,
    };
    match &cli.command {
        Command::Check { what, file } => check(*what, file, &opts, warnings),
        Command::Build { what } => build(what, warnings),
        Command::Decompose { file, cartan } => {
            let l = leibniz(load(file, warnings)?);
            let h = basis_vectors(&l, cartan)?;
            let dec = weight_decomposition(&l, &h)?;
            Ok(Outcome::verdict(
                dec.complete,
                render::decomposition_json(&dec, l.space()),
                render::decomposition_text(&dec, l.space()),
            ))
        }
        Command::GradeCheck { file, subalg, cartan } => {
            let l = leibniz(load(file, warnings)?);
            let named = parse_subspace(subalg, l.space())?;
            let vectors: Vec<SparseVector> = named.iter().map(|(_, v)| v.clone()).collect();
            let g = row_reduce(l.dim(), &vectors)?;
            let h = cartan
                .iter()
                .map(|s| match named.iter().find(|(n, _)| n == s) {
                    Some((_, v)) => Ok(v.clone()),
                    None => Ok(basis_vectors(&l, std::slice::from_ref(s))?.remove(0)),
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            let cert = check_delta_graded(&l, &g, &h)?;
            Ok(Outcome::verdict(
                cert.is_graded,
                render::certificate_json(&cert, l.space()),
                render::certificate_text(&cert),
            ))
        }
        Command::Conditions { what, bundle } => {
            let r = match what {
                ConditionKind::Thm41 => check_thm41_conditions(&parse_bundle_a(bundle)?, &opts),
                ConditionKind::Lemma51 => check_lemma51_conditions(&parse_bundle_k(bundle)?, &opts),
            };
            Ok(Outcome::verdict(r.passed(), render::conditions_json(&r), render::conditions_text(&r)))
        }
        Command::SteinbergCheck {
            m,
            n,
            file,
            map,
            convention,
        } => {
            let l = leibniz(load(file, warnings)?);
            let (d, v) = parse_steinberg(map, *m, *n, l.space())?;
            let r = check_steinberg_relations(&l, &d, &v, (*convention).into(), &opts)?;
            Ok(report_outcome(&r, Labeling::vectors(l.space())))
        }
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Check { what, .. } => format!("check {}", value_name(*what)),
        Command::Build { what } => {
            let w = match what {
                Build::Gl { .. } => "gl",
                Build::Sl { .. } => "sl",
                Build::Diff { .. } => "diff",
                Build::Tensor { .. } => "tensor",
                Build::Canonical { .. } => "canonical",
                Build::ModelA { .. } => "model-a",
                Build::ModelKappa { .. } => "model-kappa",
            };
            format!("build {w}")
        }
        Command::Decompose { .. } => "decompose".into(),
        Command::GradeCheck { .. } => "grade-check".into(),
        Command::Conditions { what, .. } => format!("conditions {}", value_name(*what)),
        Command::SteinbergCheck { .. } => "steinberg-check".into(),
    }
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Formatted result of one invocation. `output` goes to `--out` or standard
/// output, `diagnostics` to standard error.
#[derive(Clone, Debug)]
pub struct Execution {
    pub output: String,
    pub diagnostics: String,
    pub status: Status,
}

/// Runs the command. Errors are part of the output in structured mode and
/// diagnostics otherwise.
pub fn execute(cli: &Cli) -> Execution {
    let start = Instant::now();
    let mut warnings = Vec::new();
    let result = match cli.parallel {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .context("cannot start worker pool")
            .and_then(|pool| pool.install(|| run(cli, &mut warnings))),
        None => run(cli, &mut warnings),
    };
    let millis = start.elapsed().as_millis() as u64;
    let name = command_name(&cli.command);
    let mut outcome = match result {
        Ok(o) => o,
        Err(e) => {
            let msg = format!("{e:#}");
            Outcome {
                status: Status::Error,
                report: json!({"error": msg}),
                text: format!("error: {msg}\n"),
                warnings: Vec::new(),
                document: false,
            }
        }
    };
    outcome.warnings.extend(warnings);
    let mut diagnostics = String::new();
    let structured = cli.format == Format::Structured && !outcome.document;
    if !structured {
        for w in &outcome.warnings {
            diagnostics.push_str(&format!("warning: {w}\n"));
        }
        if outcome.status == Status::Error {
            diagnostics.push_str(&outcome.text);
        }
    }
    let output = if outcome.document {
        pretty(&outcome.report)
    } else if outcome.status == Status::Error && !structured {
        String::new()
    } else {
        match cli.format {
            Format::Structured => {
                let mut doc = json!({
                    "command": name,
                    "status": outcome.status.as_str(),
                    "report": outcome.report,
                });
                if !outcome.warnings.is_empty() {
                    doc["warnings"] = json!(outcome.warnings);
                }
                if !cli.canonical {
                    doc["timing_ms"] = json!(millis);
                }
                pretty(&doc)
            }
            Format::Text => {
                let mut s = outcome.text.clone();
                s.push_str(&format!("{name}: {}\n", outcome.status.as_str()));
                if !cli.canonical {
                    s.push_str(&format!("time: {millis} ms\n"));
                }
                s
            }
        }
    };
    Execution {
        output,
        diagnostics,
        status: outcome.status,
    }
}
