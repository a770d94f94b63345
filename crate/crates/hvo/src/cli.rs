//! Argument parsing and exit codes: 0 success, 1 a lemma failure or lost
//! certification, 2 a usage, input or evaluation error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hvo_core::hset::{Formula, Hf, NodeId, Term, Universe};
use hvo_core::interval::IntervalAlgebra;
use hvo_core::lab::{LabConfig, LemmaId};
use hvo_core::order::{validate_algebra, Heyting, Parametric};
use hvo_core::ordinal::{self, WitnessPair};
use hvo_core::pipeline::Certify;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::files::{self, Source};
use crate::json::{self, ReportJson};
use crate::runs;

#[derive(Debug, Parser)]
#[command(name = "hvo", version, about = "Exact Heyting-valued set semantics, ordinal constructions and lemma checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check or print an algebra.
    Algebra {
        #[command(subcommand)]
        action: AlgebraCmd,
    },
    /// Evaluate formulas and print their truth values.
    Eval(EvalArgs),
    /// Check lemma inequalities over pools of H-sets.
    Lemma {
        #[command(subcommand)]
        action: LemmaCmd,
    },
    /// Certify the shipped incomparable pair over the interval algebra.
    Witness {
        #[command(subcommand)]
        action: WitnessCmd,
    },
    /// Build pairwise incomparable families of ordinals.
    Antichain {
        #[command(subcommand)]
        action: AntichainCmd,
    },
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Up-set algebra of the poset in FILE.
    #[arg(long, value_name = "FILE")]
    pub poset: Option<PathBuf>,
    /// Up-set algebra of a built-in poset, or `all`.
    #[arg(long, value_name = "NAME")]
    pub zoo: Option<String>,
    /// Open subsets of the rationals.
    #[arg(long)]
    pub interval: bool,
}

impl SourceArgs {
    fn sources(&self) -> Result<Vec<Source>> {
        match (&self.poset, &self.zoo) {
            (Some(path), _) => Ok(vec![Source::from_poset_file(path)?]),
            (_, Some(name)) => Source::zoo(name),
            _ => Ok(vec![Source::Interval]),
        }
    }

    fn single(&self) -> Result<Source> {
        let mut s = self.sources()?;
        if s.len() != 1 {
            bail!("this command needs a single algebra");
        }
        Ok(s.remove(0))
    }
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    /// Check the lattice laws and residuation on every (or, for the
    /// interval algebra, a seeded sample of) element triples.
    Validate {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the poset and the elements of its up-set algebra.
    Show {
        #[command(flatten)]
        source: SourceArgs,
    },
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// A definition `name := literal`; repeatable.
    #[arg(short = 'c', long = "const", value_name = "DEF")]
    pub consts: Vec<String>,
    /// File of definitions, one `name := literal` per line.
    #[arg(long, value_name = "FILE")]
    pub defs: Option<PathBuf>,
    /// Formulas to evaluate.
    #[arg(required = true)]
    pub formulas: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum LemmaCmd {
    /// Run lemma checks and print one line per lemma and algebra.
    Run(LemmaArgs),
}

#[derive(Debug, Args)]
pub struct LemmaArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Comma-separated lemma ids (L1 … L11) or `all`.
    #[arg(long, default_value = "all")]
    pub lemma: String,
    #[arg(long, default_value_t = 2)]
    pub rank: u32,
    /// Largest pool built exhaustively in memory.
    #[arg(long, default_value_t = 100_000)]
    pub budget: usize,
    /// Largest pool scanned exhaustively in chunks.
    #[arg(long, default_value_t = 1 << 25)]
    pub scan_limit: u64,
    /// Largest number of tuples checked exhaustively per lemma.
    #[arg(long, default_value_t = 20_000)]
    pub tuples: usize,
    /// Number of sampled pairs for the pipeline lemmas.
    #[arg(long, default_value_t = 50)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the reports as JSON.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Algebras checked in parallel.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Break equality to its `⊆` half, to see failures reported.
    #[arg(long, hide = true)]
    pub break_equality: bool,
}

#[derive(Debug, Subcommand)]
pub enum WitnessCmd {
    /// Print the constituent values and `perp(A,B)`.
    Check {
        /// The only algebra the witness lives in; accepted for clarity.
        #[arg(long)]
        interval: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum AntichainCmd {
    /// Build `f_{x,γ}` and report its `Θ` values.
    Build(AntichainArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CertifyArg {
    None,
    Final,
    All,
}

#[derive(Debug, Args)]
pub struct AntichainArgs {
    /// Up-set algebra of the poset in FILE (needs --a and --b).
    #[arg(long, value_name = "FILE", conflicts_with_all = ["zoo", "interval"])]
    pub poset: Option<PathBuf>,
    /// Built-in poset (needs --a and --b).
    #[arg(long, value_name = "NAME", conflicts_with = "interval")]
    pub zoo: Option<String>,
    /// The interval algebra with the shipped witness pair (the default).
    #[arg(long)]
    pub interval: bool,
    /// The hereditarily finite input set, e.g. `{0,{0}}`.
    #[arg(long)]
    pub x: String,
    /// Stage; defaults to the least one containing x.
    #[arg(long)]
    pub gamma: Option<u32>,
    #[arg(long, value_enum, default_value_t = CertifyArg::Final)]
    pub certify: CertifyArg,
    /// First ordinal of the pair (finite algebras).
    #[arg(long, value_name = "LITERAL")]
    pub a: Option<String>,
    /// Second ordinal of the pair (finite algebras).
    #[arg(long, value_name = "LITERAL")]
    pub b: Option<String>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run_args<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("error: bad arguments"));
            return 2;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Algebra { action: AlgebraCmd::Validate { source, seed } } => {
            let mut ok = true;
            for s in source.sources()? {
                ok &= match &s {
                    Source::Finite(alg) => validate(out, alg, &alg.elements()?)?,
                    Source::Interval => validate(out, &IntervalAlgebra, &interval_samples(seed)?)?,
                };
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Algebra { action: AlgebraCmd::Show { source } } => {
            for s in source.sources()? {
                show(out, &s)?;
            }
            Ok(0)
        }
        Command::Eval(args) => eval(out, &args),
        Command::Lemma { action: LemmaCmd::Run(args) } => lemma_run(out, &args),
        Command::Witness { action: WitnessCmd::Check { .. } } => {
            let w = runs::witness_check()?;
            for (k, v) in &w.lines {
                writeln!(out, "{k} = {v}")?;
            }
            Ok(if w.incomparable { 0 } else { 1 })
        }
        Command::Antichain { action: AntichainCmd::Build(args) } => antichain(out, &args),
    }
}

fn validate<H: Heyting>(out: &mut dyn Write, alg: &H, samples: &[H::Elem]) -> Result<bool> {
    let report = validate_algebra(alg, samples);
    writeln!(out, "{}: {} elements checked", alg.name(), samples.len())?;
    for law in &report.laws {
        match &law.counterexample {
            None => writeln!(out, "  {}: pass", law.law)?,
            Some(c) => {
                let c: Vec<String> = c.iter().map(|e| alg.format(e)).collect();
                writeln!(out, "  {}: FAIL at ({})", law.law, c.join(", "))?
            }
        }
    }
    Ok(report.passed())
}

/// Seeded unions of up to three intervals with endpoints in
/// `{-2, -1, -1/2, 0, 1/3, 1, 2, ±inf}`, plus ⊥, ⊤ and point complements.
fn interval_samples(seed: u64) -> Result<Vec<<IntervalAlgebra as Heyting>::Elem>> {
    let points = ["-inf", "-2", "-1", "-1/2", "0", "1/3", "1", "2", "+inf"];
    let mut lits: Vec<String> = ["0", "1", "!0", "!1/3", "(0,1)|(1,2)"].iter().map(|s| s.to_string()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while lits.len() < 40 {
        let parts: Vec<String> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let i = rng.gen_range(0..points.len() - 1);
                let j = rng.gen_range(i + 1..points.len());
                format!("({},{})", points[i], points[j])
            })
            .collect();
        lits.push(parts.join("|"));
    }
    lits.iter().map(|l| Ok(IntervalAlgebra.parse(l)?)).collect()
}

fn show(out: &mut dyn Write, s: &Source) -> Result<()> {
    match s {
        Source::Finite(alg) => {
            writeln!(out, "# {}", alg.name())?;
            write!(out, "{}", files::format_poset(alg.poset()))?;
            let els = alg.elements()?;
            writeln!(out, "# {} up-sets", els.len())?;
            for e in &els {
                writeln!(out, "{}", alg.format(e))?;
            }
        }
        Source::Interval => {
            writeln!(out, "# interval: open subsets of the rationals")?;
            writeln!(out, "# elements: 0, 1, (l,r) with rational or infinite ends, unions by |, !r")?;
        }
    }
    Ok(())
}

fn load_defs(args: &EvalArgs) -> Result<Vec<(String, String)>> {
    let mut defs = Vec::new();
    if let Some(path) = &args.defs {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        defs.extend(files::parse_definitions(&text).with_context(|| format!("{}", path.display()))?);
    }
    for c in &args.consts {
        defs.push(files::parse_definition(c)?);
    }
    Ok(defs)
}

fn eval_in<H: Parametric>(out: &mut dyn Write, u: &mut Universe<H>, args: &EvalArgs) -> Result<i32> {
    files::define_all(u, &load_defs(args)?)?;
    let formulas: Vec<Formula> = args
        .formulas
        .iter()
        .map(|f| Formula::parse(f).with_context(|| format!("formula `{f}`")))
        .collect::<Result<_>>()?;
    for (phi, text) in formulas.iter().zip(&args.formulas) {
        let v = u.eval(phi, &[]).with_context(|| format!("formula `{text}`"))?;
        writeln!(out, "{}", u.algebra().format(&v))?;
    }
    Ok(0)
}

fn eval(out: &mut dyn Write, args: &EvalArgs) -> Result<i32> {
    match args.source.single()? {
        Source::Finite(alg) => eval_in(out, &mut Universe::new(alg), args),
        Source::Interval => {
            let mut u = Universe::new(IntervalAlgebra);
            ordinal::witness_pair(&mut u)?;
            eval_in(out, &mut u, args)
        }
    }
}

fn parse_lemmas(s: &str) -> Result<Vec<LemmaId>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(LemmaId::ALL.to_vec());
    }
    let mut ids: Vec<LemmaId> = s.split(',').map(|x| x.parse()).collect::<Result<_, _>>()?;
    ids.sort();
    ids.dedup();
    Ok(ids)
}

fn lemma_run(out: &mut dyn Write, args: &LemmaArgs) -> Result<i32> {
    let lemmas = parse_lemmas(&args.lemma)?;
    let sources = args.source.sources()?;
    let cfg = LabConfig {
        rank: args.rank,
        pool_budget: args.budget,
        scan_limit: args.scan_limit,
        tuple_budget: args.tuples,
        pipeline_budget: args.pairs,
        seed: args.seed,
    };
    let reports = runs::run_lemmas_with(&sources, &lemmas, &cfg, args.jobs, args.break_equality)?;
    for r in &reports {
        writeln!(
            out,
            "{} {}: {} (pool {}, instances {}, skipped {}, failures {}, {} ms)",
            r.lemma,
            r.algebra,
            if r.passed() { "pass" } else { "FAIL" },
            r.pool_size,
            r.instances,
            r.skipped,
            r.failures.len(),
            r.elapsed_ms
        )?;
        if let Some(f) = r.failures.first() {
            writeln!(
                out,
                "  first failure: ({}) premise {} conclusion {}",
                f.tuple.join(", "),
                f.premise,
                f.conclusion
            )?;
        }
    }
    if let Some(path) = &args.out {
        let docs: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
        let text = if docs.len() == 1 { json::to_pretty(&docs[0]) } else { json::to_pretty(&docs) };
        fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
}

fn antichain_in<H: Parametric>(
    out: &mut dyn Write,
    u: &mut Universe<H>,
    p: &WitnessPair<H::Elem>,
    args: &AntichainArgs,
) -> Result<i32> {
    let x = Hf::parse(&args.x).with_context(|| format!("set `{}`", args.x))?;
    let mode = match args.certify {
        CertifyArg::None => Certify::None,
        CertifyArg::Final => Certify::Final,
        CertifyArg::All => Certify::All,
    };
    let run = runs::build_antichain(u, p, &x, args.gamma, mode)?;
    let j = &run.json;
    writeln!(out, "x = {}, gamma = {} (minimal {}), perp = {}", j.x, j.gamma, j.minimal_gamma, j.perp_value)?;
    writeln!(out, "domain: {}", j.values.iter().map(|v| v.key.as_str()).collect::<Vec<_>>().join(", "))?;
    for t in &j.pairs {
        writeln!(out, "theta({}, {}) = {}", t.a, t.b, t.theta)?;
    }
    if !j.round_trip.is_empty() {
        let ok = j.round_trip.iter().filter(|r| r.subset == r.decoded && r.residue.is_empty()).count();
        writeln!(out, "round trip: {ok}/{} subsets", j.round_trip.len())?;
    }
    writeln!(out, "certified: {}", j.certified)?;
    if let Some(path) = &args.out {
        fs::write(path, json::to_pretty(j)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let lost = mode != Certify::None && p.is_incomparable(u) && !j.certified;
    Ok(if run.violated || lost { 1 } else { 0 })
}

/// An H-set given as a term, e.g. `#2`, `{#0 @ {q}}` or `ordem({q})`.
fn term_value<H: Parametric>(u: &mut Universe<H>, text: &str) -> Result<NodeId> {
    let t = Term::parse(text).with_context(|| format!("term `{text}`"))?;
    let b = u.eval_term(&t, &[]).with_context(|| format!("term `{text}`"))?;
    Ok(b.id)
}

fn antichain(out: &mut dyn Write, args: &AntichainArgs) -> Result<i32> {
    let finite = match (&args.poset, &args.zoo) {
        (Some(path), _) => Some(Source::from_poset_file(path)?),
        (_, Some(name)) => {
            let mut s = Source::zoo(name)?;
            if s.len() != 1 {
                bail!("this command needs a single algebra");
            }
            Some(s.remove(0))
        }
        _ => None,
    };
    match finite {
        Some(Source::Finite(alg)) => {
            let mut u = Universe::new(alg);
            let (Some(a), Some(b)) = (&args.a, &args.b) else {
                bail!("finite algebras need the pair as --a and --b");
            };
            let (a, b) = (term_value(&mut u, a)?, term_value(&mut u, b)?);
            let p = WitnessPair::new(&mut u, a, b)?;
            antichain_in(out, &mut u, &p, args)
        }
        _ => {
            if args.a.is_some() || args.b.is_some() {
                bail!("--a and --b apply to finite algebras; the interval algebra uses A and B");
            }
            let mut u = Universe::new(IntervalAlgebra);
            let p = ordinal::witness_pair(&mut u)?;
            antichain_in(out, &mut u, &p, args)
        }
    }
}
