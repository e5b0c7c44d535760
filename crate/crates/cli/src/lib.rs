//! Command-line front end for `plumbing-core`.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns
//! the rendered output together with a stable exit code:
//!
//! * `0` success
//! * `1` domain refusal (non-rational singularity, caps exceeded, failed
//!   internal cross-check)
//! * `2` input error (bad arguments, unreadable file, malformed graph or
//!   vector)

pub mod report;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use plumbing_core::cyclic::CyclicType;
use plumbing_core::invariants;
use plumbing_core::lattice::DEFAULT_CLASS_CAP;
use plumbing_core::laufer;
use plumbing_core::scalar::parse_scalar;
use plumbing_core::{build_context, parse_graph, validate, ClassRep, Cycle, Error, LatticeContext, Rational, ResolutionGraph};

pub use report::{Field, FieldValue, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "plumbing", version)]
#[command(about = "Exact lattice invariants of resolution graphs and curve germs")]
#[command(after_help = "VEC is either comma-separated rationals in the E-basis (\"1/2,0,3\"), \
\"dual:a1,...,an\" meaning the sum of a_i E*_i, or \"zk\" for the class of Z_K.")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the graph against every structural rule
    Validate { file: PathBuf },
    /// Summary: |H|, det, Z_K, Z_min, rationality, Kulikov property
    Info { file: PathBuf },
    /// List the discriminant group H by canonical representatives
    Classes {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        cap: usize,
    },
    /// Minimal antinef cycle s_h of a class
    Sh {
        file: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long)]
        trace: bool,
    },
    /// Antinef closure s(l') of a cycle
    Closure {
        file: PathBuf,
        #[arg(long)]
        cycle: String,
        #[arg(long)]
        trace: bool,
    },
    /// Canonical cycle Z_K
    Zk { file: PathBuf },
    /// Fundamental cycle Z_min
    Zmin { file: PathBuf },
    /// Delta invariant of a curve germ
    Delta(CurveArgs),
    /// Topological kappa invariant of a curve germ
    Kappa(CurveArgs),
    /// Blache correction term A of a curve germ
    Blache(CurveArgs),
    /// Mumford intersection multiplicity of two curve germs
    Mumford(PairArgs),
    /// Hironaka generalized intersection multiplicity of two curve germs
    Hironaka(PairArgs),
    /// Check chi(s_-h) = chi(s_[Z_K]+h) over all classes
    VerifyDuality {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        cap: usize,
    },
    /// Emit the Hirzebruch-Jung bamboo of 1/d(1,q) as a graph file
    GenCyclic {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        q: u64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Brute-force s_h over integral shifts bounded by B
    OracleSh {
        file: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Args, Debug)]
struct CurveArgs {
    file: PathBuf,
    #[arg(long)]
    curve: String,
    /// On non-rational graphs print the chi-expression instead of refusing
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
struct PairArgs {
    file: PathBuf,
    /// Two curve names, `A,B`
    #[arg(long)]
    curves: String,
    /// On non-rational graphs print the chi-expression instead of refusing
    #[arg(long)]
    force: bool,
}

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    /// What goes to stdout.
    pub output: String,
    /// What goes to stderr, if anything.
    pub message: Option<String>,
    pub payload: Option<Report>,
}

enum Failure {
    Input(String),
    Refused(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonRational { .. }
            | Error::ClassCapExceeded { .. }
            | Error::StepCapExceeded { .. }
            | Error::OracleBoundTooSmall { .. }
            | Error::Internal(_) => Failure::Refused(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(Report, i32), Failure>;

/// Runs one command. `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CommandResult { exit_code: code, output: text, message: None, payload: None }
            } else {
                CommandResult { exit_code: code, output: String::new(), message: Some(text), payload: None }
            };
        }
    };
    let format = cli.format;
    match execute(cli.command) {
        Ok((report, code)) => {
            let output = render(&report, format);
            CommandResult { exit_code: code, output, message: None, payload: Some(report) }
        }
        Err(f) => {
            let (code, category, msg) = match f {
                Failure::Input(m) => (EXIT_INPUT, "input error", m),
                Failure::Refused(m) => (EXIT_REFUSED, "refused", m),
            };
            let output = match format {
                Format::Json => {
                    let v = serde_json::json!({ "error": { "category": category, "message": msg } });
                    format!("{v}\n")
                }
                Format::Table => String::new(),
            };
            CommandResult { exit_code: code, output, message: Some(format!("{category}: {msg}")), payload: None }
        }
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Table => report.to_table(),
        Format::Json => format!("{}\n", report.to_json()),
    }
}

fn read_graph(path: &Path) -> std::result::Result<ResolutionGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> std::result::Result<LatticeContext, Failure> {
    let g = read_graph(path)?;
    build_context(&g).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Parses a VEC argument into a cycle of the context's lattice.
pub fn parse_vec(ctx: &LatticeContext, s: &str) -> plumbing_core::Result<Cycle> {
    let s = s.trim();
    if matches!(s, "zk" | "ZK" | "dual-of-ZK") {
        return Ok(ctx.zk().clone());
    }
    let (dual, body) = match s.strip_prefix("dual:") {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let coeffs = body
        .split(',')
        .enumerate()
        .map(|(i, part)| {
            parse_scalar::<Rational>(part).ok_or_else(|| Error::Syntax {
                line: 0,
                message: format!("coordinate {} of `{s}` is not a rational: `{}`", i + 1, part.trim()),
            })
        })
        .collect::<plumbing_core::Result<Vec<_>>>()?;
    if coeffs.len() != ctx.len() {
        return Err(Error::DimensionMismatch { expected: ctx.len(), found: coeffs.len() });
    }
    if dual {
        ctx.dual_combination(&coeffs)
    } else {
        Ok(Cycle::new(coeffs))
    }
}

fn parse_class(ctx: &LatticeContext, s: &str) -> std::result::Result<ClassRep, Failure> {
    let cycle = parse_vec(ctx, s).map_err(vec_error)?;
    Ok(ctx.class_of(&cycle)?)
}

fn vec_error(e: Error) -> Failure {
    match e {
        Error::Syntax { message, .. } => Failure::Input(message),
        other => other.into(),
    }
}

fn split_pair(s: &str) -> std::result::Result<(String, String), Failure> {
    match s.split(',').map(str::trim).collect::<Vec<_>>().as_slice() {
        [a, b] if !a.is_empty() && !b.is_empty() => Ok((a.to_string(), b.to_string())),
        _ => Err(Failure::Input(format!("--curves expects two names `A,B`, got `{s}`"))),
    }
}

fn non_rational(ctx: &LatticeContext) -> std::result::Result<Option<Failure>, Failure> {
    let r = invariants::rationality(ctx)?;
    Ok((!r.is_rational()).then(|| Error::NonRational { chi_zmin: r.chi_zmin }.into()))
}

fn execute(cmd: Command) -> Outcome {
    match cmd {
        Command::Validate { file } => {
            let g = read_graph(&file)?;
            let rep = validate(&g);
            let failures: Vec<String> = rep.failures.iter().map(|f| f.to_string()).collect();
            let report = Report::new()
                .text("valid", rep.ok())
                .text("vertices", g.len())
                .text("edges", g.edges().len())
                .list("curves", g.curves().iter().map(|c| c.name.clone()))
                .list("failures", failures);
            Ok((report, if rep.ok() { EXIT_OK } else { EXIT_REFUSED }))
        }
        Command::Info { file } => {
            let ctx = load(&file)?;
            let rat = invariants::rationality(&ctx)?;
            let (kulikov, rv) = invariants::kulikov_check(&ctx)?;
            let report = Report::new()
                .text("vertices", ctx.len())
                .text("det", ctx.det())
                .text("order", ctx.order())
                .list("invariant_factors", ctx.snf().invariant_factors())
                .text("zk", ctx.zk())
                .text("zmin", &rat.zmin)
                .text("chi_zmin", &rat.chi_zmin)
                .text("rational", rat.is_rational())
                .text("kulikov", kulikov)
                .text("rv", rv.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","));
            Ok((report, EXIT_OK))
        }
        Command::Classes { file, cap } => {
            let ctx = load(&file)?;
            let classes = ctx.enumerate_classes(cap)?;
            Ok((Report::new().list("classes", classes), EXIT_OK))
        }
        Command::Sh { file, class, trace } => {
            let ctx = load(&file)?;
            let h = parse_class(&ctx, &class)?;
            closure_report(&ctx, h.rep(), "s_h", trace)
        }
        Command::Closure { file, cycle, trace } => {
            let ctx = load(&file)?;
            let l = parse_vec(&ctx, &cycle).map_err(vec_error)?;
            closure_report(&ctx, &l, "closure", trace)
        }
        Command::Zk { file } => {
            let ctx = load(&file)?;
            Ok((Report::new().text("zk", ctx.zk()), EXIT_OK))
        }
        Command::Zmin { file } => {
            let ctx = load(&file)?;
            Ok((Report::new().text("zmin", laufer::fundamental_cycle(&ctx)?), EXIT_OK))
        }
        Command::Delta(args) => curve_command(args, CurveQuantity::Delta),
        Command::Kappa(args) => curve_command(args, CurveQuantity::Kappa),
        Command::Blache(args) => curve_command(args, CurveQuantity::Blache),
        Command::Mumford(args) => {
            let ctx = load(&args.file)?;
            let (a, b) = split_pair(&args.curves)?;
            let g = ctx.graph();
            let v = invariants::mumford_pairing(&ctx, g.curve(&a)?, g.curve(&b)?)?;
            Ok((Report::new().text("mumford", v), EXIT_OK))
        }
        Command::Hironaka(args) => {
            let ctx = load(&args.file)?;
            let (a, b) = split_pair(&args.curves)?;
            let g = ctx.graph();
            let (c1, c2) = (g.curve(&a)?, g.curve(&b)?);
            if let Some(refusal) = non_rational(&ctx)? {
                if !args.force {
                    return Err(refusal);
                }
                let v = invariants::hironaka_expression(&ctx, c1, c2)?;
                let report = Report::new().labelled("chi_expression", "χ-expression (not Hironaka multiplicity)", v);
                return Ok((report, EXIT_OK));
            }
            Ok((Report::new().text("hironaka", invariants::hironaka_mult(&ctx, c1, c2)?), EXIT_OK))
        }
        Command::VerifyDuality { file, cap } => {
            let ctx = load(&file)?;
            let failures = invariants::verify_duality(&ctx, cap)?;
            let rows = failures
                .iter()
                .map(|f| {
                    vec![
                        ("class".to_string(), f.class.to_string()),
                        ("chi_s_neg".to_string(), f.chi_s_neg.to_string()),
                        ("chi_s_shifted".to_string(), f.chi_s_shifted.to_string()),
                    ]
                })
                .collect();
            let report = Report::new()
                .text("holds", failures.is_empty())
                .text("classes_checked", ctx.order())
                .records("failures", rows);
            Ok((report, EXIT_OK))
        }
        Command::GenCyclic { d, q, output } => {
            let ct = CyclicType::new(d, q)?;
            let text = ct.graph().to_text();
            let digits: Vec<String> = ct.hj_digits().iter().map(|b| format!("-{b}")).collect();
            match output {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
                    let report = Report::new()
                        .text("written", path.display())
                        .text("q_prime", ct.q_prime())
                        .text("euler", digits.join(","));
                    Ok((report, EXIT_OK))
                }
                None => Ok((Report::new().text("graph", text.trim_end()), EXIT_OK)),
            }
        }
        Command::OracleSh { file, class, bound } => {
            let ctx = load(&file)?;
            let h = parse_class(&ctx, &class)?;
            Ok((Report::new().text("s_h", laufer::oracle_sh(&ctx, &h, bound)?), EXIT_OK))
        }
    }
}

fn closure_report(ctx: &LatticeContext, start: &Cycle, key: &str, trace: bool) -> Outcome {
    if trace {
        let (result, tr) = laufer::antinef_closure(ctx, start)?;
        let report = Report::new().list("trace", tr.lines(ctx.graph())).text(key, result);
        Ok((report, EXIT_OK))
    } else {
        Ok((Report::new().text(key, laufer::closure(ctx, start)?), EXIT_OK))
    }
}

#[derive(Clone, Copy)]
enum CurveQuantity {
    Delta,
    Kappa,
    Blache,
}

fn curve_command(args: CurveArgs, q: CurveQuantity) -> Outcome {
    let ctx = load(&args.file)?;
    let c = ctx.graph().curve(&args.curve)?.clone();
    if let Some(refusal) = non_rational(&ctx)? {
        if !args.force {
            return Err(refusal);
        }
        let r = invariants::curve_report(&ctx, &c)?;
        let report = match q {
            CurveQuantity::Delta | CurveQuantity::Kappa => {
                Report::new().labelled("chi_expression", "χ-expression (not δ)", r.delta)
            }
            CurveQuantity::Blache => Report::new().labelled("chi_expression", "χ-expression (not A)", r.blache_a),
        };
        return Ok((report, EXIT_OK));
    }
    let report = match q {
        CurveQuantity::Delta => Report::new().text("delta", invariants::delta(&ctx, &c)?.delta),
        CurveQuantity::Kappa => Report::new().text("kappa", invariants::kappa_topological(&ctx, &c)?),
        CurveQuantity::Blache => Report::new().text("blache_a", invariants::blache_a(&ctx, &c)?),
    };
    Ok((report, EXIT_OK))
}
