//! The `thomsq` command line. [`run`] parses arguments, dispatches and
//! returns the exit code; it never panics on bad input.
//!
//! Exit codes: for `check` subcommands 0 means a certificate (an obstruction
//! or the immersion rule fired), 1 inconclusive, 2 usage or data error.
//! `verify theorem-c` exits 0 iff both sides agree. `validate` exits 1 when
//! it has findings.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thomsq::obstructions::DEFAULT_CAP;
use thomsq::thom::{verify_codim11_identity_with, IdentityOptions};
use thomsq::{
    adem_normalize, apply_steenrod, check_bhk_codim3, check_gsz_immersion, check_prop_kq,
    check_theorem_c, gsz_candidates, mso3_mod3_degree_dims, parse_presentation, reduce_pontryagin,
    serre_generators, validate, whitney_m2_mod2, AlgebraPresentation, PontryaginExpression,
    RingContext, SWPolynomial, SqWord, SteenrodElement, Verdict,
};

#[derive(Debug, Parser)]
#[command(name = "thomsq", version, about = "Steenrod squares, Thom spaces and embedding obstructions")]
struct Cli {
    /// Emit stable `key=value` lines.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rewrite a sum of Steenrod words into admissible normal form.
    Adem {
        /// e.g. `Sq1.Sq10` or `Sq2.Sq2 + Sq3.Sq1`
        element: String,
    },
    /// Apply a Steenrod element to a Stiefel-Whitney polynomial.
    Sq {
        /// e.g. `Sq3.Sq1`
        operation: String,
        /// e.g. `w11*w6*w3`
        polynomial: String,
        /// Rank of the bundle; defaults to the largest index used.
        #[arg(long)]
        k: Option<u32>,
        /// Work in H^*(BO_k) instead of H^*(BSO_k).
        #[arg(long)]
        unoriented: bool,
        /// Read the polynomial as an integral expression in t, p1, p2, ...
        #[arg(long)]
        pontryagin: bool,
    },
    /// Admissible words of excess below k through degree dmax.
    Serre(RangeArgs),
    /// Words J whose squares (Sq^J ι_k)^2 do not lift integrally.
    GszCandidates(RangeArgs),
    /// Check a fixed identity.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Dimensions of the reduced mod-3 cohomology of MSO_3.
    Mso3Dims {
        #[arg(long, default_value_t = 30)]
        dmax: u32,
    },
    /// Check a presentation file against the axioms.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run an obstruction check on a presentation.
    Check {
        #[command(subcommand)]
        which: CheckCommand,
    },
    /// Mod-2 double-point class from Whitney's formula.
    Whitney {
        #[arg(long)]
        input: PathBuf,
        /// f^*x as a combination of generators.
        #[arg(long)]
        fx: String,
        /// w_k of the normal bundle as a combination of generators.
        #[arg(long)]
        wknu: String,
    },
}

#[derive(Debug, Args)]
struct RangeArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    dmax: u32,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// The degree-24 identity in the Thom space of MSO_11.
    TheoremC {
        /// Print only `equal=<bool>`.
        #[arg(long)]
        quiet: bool,
        /// Leave out the Sq9 delta term.
        #[arg(long)]
        omit_sq9_delta: bool,
    },
}

#[derive(Debug, Args)]
struct Target {
    #[arg(long)]
    input: PathBuf,
    /// A generator name or combination.
    #[arg(long)]
    class: String,
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    /// Codimension-11 embedding test in a 24-manifold.
    EmbedC {
        #[command(flatten)]
        target: Target,
        /// Largest number of candidate tuples to enumerate.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Codimension-3 embedding test at the prime 3.
    EmbedBhk3 {
        #[command(flatten)]
        target: Target,
    },
    /// Immersion test through an admissible word of excess k.
    ImmerseGsz {
        #[command(flatten)]
        target: Target,
        /// e.g. `Sq6.Sq2`
        #[arg(long)]
        seq: String,
    },
    /// Immersion rule from vanishing odd-primary Bocksteins.
    ImmerseKq {
        #[command(flatten)]
        target: Target,
    },
}

/// A failure that ends the run with exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line; `args[0]` is the program name.
pub fn run<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args: Vec<&str> = args.iter().map(AsRef::as_ref).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure(reason)) => {
            let _ = writeln!(err, "error: {}", reason.replace('\n', " "));
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let porcelain = cli.porcelain;
    match &cli.command {
        Command::Adem { element } => adem(element, porcelain, out),
        Command::Sq { operation, polynomial, k, unoriented, pontryagin } => {
            sq(operation, polynomial, *k, *unoriented, *pontryagin, porcelain, out)
        }
        Command::Serre(r) => words(serre_generators(r.k, r.dmax), r, porcelain, out),
        Command::GszCandidates(r) => words(gsz_candidates(r.k, r.dmax), r, porcelain, out),
        Command::Verify { which: VerifyCommand::TheoremC { quiet, omit_sq9_delta } } => {
            theorem_c(*quiet, *omit_sq9_delta, porcelain, out)
        }
        Command::Mso3Dims { dmax } => mso3(*dmax, porcelain, out),
        Command::Validate { input } => validate_file(input, porcelain, out),
        Command::Check { which } => check(which, porcelain, out),
        Command::Whitney { input, fx, wknu } => whitney(input, fx, wknu, porcelain, out),
    }
}

fn adem(element: &str, porcelain: bool, out: &mut dyn Write) -> Outcome {
    let e: SteenrodElement = element.parse()?;
    let n = adem_normalize(&e)?;
    if porcelain {
        writeln!(out, "input={e}")?;
        writeln!(out, "normal_form={n}")?;
    } else {
        writeln!(out, "{n}")?;
    }
    Ok(0)
}

fn sq(
    operation: &str,
    text: &str,
    k: Option<u32>,
    unoriented: bool,
    pontryagin: bool,
    porcelain: bool,
    out: &mut dyn Write,
) -> Outcome {
    let op: SteenrodElement = operation.parse()?;
    let op_degree = op.degree()?.unwrap_or(0);
    let oriented = !unoriented;
    let build = |rank: u32, cap: u32| RingContext::with_degree_cap(rank, oriented, cap);
    let read = |ctx: RingContext| -> Result<SWPolynomial, Failure> {
        if pontryagin {
            Ok(reduce_pontryagin(&PontryaginExpression::parse(text)?, ctx)?)
        } else {
            Ok(SWPolynomial::parse(text, ctx)?)
        }
    };
    let rank = match k {
        Some(k) => k,
        None if pontryagin => return Err(Failure("--pontryagin needs --k for the Thom class".into())),
        None => {
            let wide = read(build(u16::MAX as u32, u16::MAX as u32)?)?;
            wide.terms().map(|m| m.max_index()).max().unwrap_or(1).max(1)
        }
    };
    let probe = read(build(rank, 2 * rank + 2)?)?;
    let degree = probe.degree()?.unwrap_or(0);
    let ctx = build(rank, (2 * rank + 2).max(degree + op_degree))?;
    let p = read(ctx)?;
    let result = apply_steenrod(&op, &p)?;
    if porcelain {
        writeln!(out, "ring={ctx}")?;
        writeln!(out, "operation={op}")?;
        writeln!(out, "input={p}")?;
        writeln!(out, "result={result}")?;
    } else {
        writeln!(out, "{result}")?;
        let factored = result.display_factored(rank);
        if oriented && result.divisible_by(rank) && factored != result.to_string() {
            writeln!(out, "= {factored}")?;
        }
    }
    Ok(0)
}

fn words(list: Vec<SqWord>, r: &RangeArgs, porcelain: bool, out: &mut dyn Write) -> Outcome {
    if porcelain {
        writeln!(out, "k={}", r.k)?;
        writeln!(out, "dmax={}", r.dmax)?;
        writeln!(out, "count={}", list.len())?;
        let joined: Vec<String> = list.iter().map(ToString::to_string).collect();
        writeln!(out, "words={}", joined.join(","))?;
    } else {
        for w in &list {
            writeln!(out, "{:>3}  {w}", r.k + w.degree())?;
        }
        writeln!(out, "{} word(s)", list.len())?;
    }
    Ok(0)
}

fn theorem_c(quiet: bool, omit_sq9_delta: bool, porcelain: bool, out: &mut dyn Write) -> Outcome {
    let report = verify_codim11_identity_with(IdentityOptions { omit_sq9_delta });
    let show = |p: &SWPolynomial| report.model.display(p);
    let code = if report.equal { 0 } else { 1 };
    if quiet {
        writeln!(out, "equal={}", report.equal)?;
        return Ok(code);
    }
    if porcelain {
        for (name, class) in &report.classes {
            writeln!(out, "class.{name}={}", show(class))?;
        }
        for e in report.lhs_terms.iter().chain(&report.rhs_terms) {
            writeln!(out, "term.{}={}", e.label, show(&e.result))?;
        }
        writeln!(out, "lhs={}", show(&report.lhs))?;
        writeln!(out, "rhs={}", show(&report.rhs))?;
        writeln!(out, "difference={}", show(&report.difference))?;
        writeln!(out, "equal={}", report.equal)?;
        return Ok(code);
    }
    writeln!(out, "H~^*(MSO_11; F2) = (w11) in H^*(BSO_11; F2)")?;
    for (name, class) in &report.classes {
        writeln!(out, "  {name:<6} = {}", show(class))?;
    }
    writeln!(out, "left-hand side:")?;
    for e in &report.lhs_terms {
        writeln!(out, "  {:<16} = {}", e.label, show(&e.result))?;
    }
    writeln!(out, "right-hand side:")?;
    for e in &report.rhs_terms {
        writeln!(out, "  {:<16} = {}", e.label, show(&e.result))?;
    }
    writeln!(out, "LHS = {}", show(&report.lhs))?;
    writeln!(out, "RHS = {}", show(&report.rhs))?;
    if !report.equal {
        writeln!(out, "LHS + RHS = {}", show(&report.difference))?;
    }
    writeln!(out, "equal: {}", report.equal)?;
    Ok(code)
}

fn mso3(dmax: u32, porcelain: bool, out: &mut dyn Write) -> Outcome {
    let dims = mso3_mod3_degree_dims(dmax);
    if !porcelain {
        writeln!(out, "degree  dim H~^d(MSO_3; F3)")?;
    }
    for (d, n) in dims {
        if porcelain {
            writeln!(out, "dim.{d}={n}")?;
        } else {
            writeln!(out, "{d:>6}  {n}")?;
        }
    }
    Ok(0)
}

fn load(path: &PathBuf) -> Result<AlgebraPresentation, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    parse_presentation(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn validate_file(input: &PathBuf, porcelain: bool, out: &mut dyn Write) -> Outcome {
    let a = load(input)?;
    let report = validate(&a);
    if porcelain {
        writeln!(out, "valid={}", report.is_valid())?;
        writeln!(out, "findings={}", report.findings.len())?;
        writeln!(out, "skipped={}", report.skipped)?;
        for f in &report.findings {
            writeln!(out, "finding.{}={}", f.kind, f.witness)?;
        }
        for s in &report.self_pairings {
            writeln!(out, "pairing.{}.{}={}", s.class, s.label, s.value)?;
        }
    } else {
        for f in &report.findings {
            writeln!(out, "FAIL {}: {}", f.kind, f.witness)?;
        }
        for c in &report.confirmed {
            writeln!(out, "ok   {c}")?;
        }
        if report.skipped > 0 {
            writeln!(out, "skipped {} check(s) with unknown operation values", report.skipped)?;
        }
        let verdict = if report.is_valid() { "valid" } else { "invalid" };
        writeln!(out, "{}: {verdict}", input.display())?;
    }
    Ok(if report.is_valid() { 0 } else { 1 })
}

fn check(which: &CheckCommand, porcelain: bool, out: &mut dyn Write) -> Outcome {
    let (name, target) = match which {
        CheckCommand::EmbedC { target, .. } => ("embed-c", target),
        CheckCommand::EmbedBhk3 { target } => ("embed-bhk3", target),
        CheckCommand::ImmerseGsz { target, .. } => ("immerse-gsz", target),
        CheckCommand::ImmerseKq { target } => ("immerse-kq", target),
    };
    let a = load(&target.input)?;
    let degree = match which {
        CheckCommand::EmbedC { .. } | CheckCommand::ImmerseKq { .. } => Some(11),
        CheckCommand::EmbedBhk3 { .. } => Some(3),
        CheckCommand::ImmerseGsz { .. } => None,
    };
    let x = a.class_in_degree(&target.class, degree)?;
    let verdict = match which {
        CheckCommand::EmbedC { cap, .. } => check_theorem_c(&a, &x, *cap)?,
        CheckCommand::EmbedBhk3 { .. } => check_bhk_codim3(&a, &x)?,
        CheckCommand::ImmerseGsz { seq, .. } => check_gsz_immersion(&a, &x, &seq.parse()?)?,
        CheckCommand::ImmerseKq { .. } => check_prop_kq(&a, &x)?,
    };
    print_verdict(name, &verdict, porcelain, out)?;
    Ok(if verdict.is_certificate() { 0 } else { 1 })
}

fn print_verdict(name: &str, v: &Verdict, porcelain: bool, out: &mut dyn Write) -> Result<(), Failure> {
    if porcelain {
        writeln!(out, "check={name}")?;
        writeln!(out, "outcome={}", v.outcome)?;
        writeln!(out, "missing_data={}", v.is_missing_data())?;
        writeln!(out, "witness={}", v.witness)?;
        for (i, step) in v.trail.iter().enumerate() {
            writeln!(out, "trail.{i}={step}")?;
        }
    } else {
        writeln!(out, "outcome: {}", v.outcome)?;
        writeln!(out, "witness: {}", v.witness)?;
        for step in &v.trail {
            writeln!(out, "  {step}")?;
        }
    }
    Ok(())
}

fn whitney(input: &PathBuf, fx: &str, wknu: &str, porcelain: bool, out: &mut dyn Write) -> Outcome {
    let a = load(input)?;
    let f = a.class(fx)?;
    let w = a.class_in_degree(wknu, Some(f.degree))?;
    let ledger = whitney_m2_mod2(&a, &f, &w)?;
    if porcelain {
        writeln!(out, "m2={}", a.render(&ledger.m2))?;
        let sq2 = ledger.sq2_m2.as_ref().map_or("unknown".to_string(), |c| a.render(c));
        writeln!(out, "sq2_m2={sq2}")?;
        writeln!(out, "m2_nonzero={}", !ledger.m2.is_zero())?;
    } else {
        for step in &ledger.trail {
            writeln!(out, "{step}")?;
        }
    }
    Ok(0)
}
