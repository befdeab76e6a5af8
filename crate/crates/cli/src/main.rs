use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use usl_core::claims::{reports_to_json, run_all, run_claim, ClaimOptions, Tier, Verdict};
use usl_core::constructions::{named_semigroup, NAMED_STRUCTURES};
use usl_core::matrices::{bool_family, field_family, BoolFamily, FieldFamily, FieldUnary, InvolutiveField};
use usl_core::sapir::{build_system, factors_upto, is_square_free, model_check_identity, twisted_model, ModelVerdict};
use usl_core::semigroup::{classify_unary, green_r_height, index_period};
use usl_core::terms::{check_identity, isoterm_search, parse_identity, IdentityVerdict, InvolutoryWord};
use usl_core::usg::{usg_load, usg_save, usg_write};
use usl_core::{FiniteUnarySemigroup, UnarySemigroup, DEFAULT_ASSIGNMENT_BUDGET, DEFAULT_MORPHISM_BUDGET};

#[derive(Parser)]
#[command(
    name = "usl",
    version,
    about = "Finite unary semigroups and certified matrix-semigroup facts"
)]
struct Cli {
    /// Worker threads (default: logical cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Assignment budget for exhaustive identity checks.
    #[arg(long, global = true, default_value_t = DEFAULT_ASSIGNMENT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named structure or a matrix family and write it as `.usg`.
    Make(MakeArgs),
    /// Print size, distinguished elements and unary classification.
    Info { file: PathBuf },
    /// Check an identity `u = v` exhaustively.
    Check { file: PathBuf, identity: String },
    /// Search for words equal to `word` up to a length bound.
    Isoterm {
        file: PathBuf,
        word: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Inspect the substitution system and its twisted model.
    Sapir(SapirArgs),
    /// Run the claim registry.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MakeArgs {
    /// A named structure, a field family (full, gl, orthogonal,
    /// star_orthogonal, l1, sing) or a Boolean family (b, hb, bt, br, bu).
    name: String,
    /// Field for field families, such as `gf(3)` or `gf(4,frob)`.
    #[arg(long, default_value = "gf(2)")]
    field: String,
    /// Matrix size for families.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Comma-separated unary operations for field families.
    #[arg(long, default_value = "transpose")]
    unary: String,
    /// Output path (default: standard output).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SapirArgs {
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[arg(long, default_value_t = 16)]
    max_len: usize,
    /// Check square-freeness of every iterate up to `depth`.
    #[arg(long)]
    square_free: bool,
    /// Identity to check in the twisted model.
    #[arg(long)]
    check: Option<String>,
    /// Longest factor used for model elements in `--check`.
    #[arg(long, default_value_t = 2)]
    word_len: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// `fast`, `slow` or `all`.
    #[arg(long, default_value = "fast")]
    tier: String,
    /// Run only these claims.
    #[arg(long)]
    claim: Vec<String>,
    /// Write the report array as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Keep measured times in the JSON report.
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Make(args) => make(args),
        Command::Info { file } => info(&usg_load(&file)?),
        Command::Check { file, identity } => check(&usg_load(&file)?, &identity, cli.budget),
        Command::Isoterm { file, word, max_len } => isoterm(&usg_load(&file)?, &word, max_len, cli.budget),
        Command::Sapir(args) => sapir(args),
        Command::Verify(args) => verify(args, cli.budget),
    }
}

fn build(args: &MakeArgs) -> Result<FiniteUnarySemigroup> {
    if NAMED_STRUCTURES.contains(&args.name.as_str()) {
        return Ok(named_semigroup(&args.name)?);
    }
    if let Ok(family) = FieldFamily::parse(&args.name) {
        let field = Arc::new(InvolutiveField::parse(&args.field)?);
        let unaries = args
            .unary
            .split(',')
            .map(str::trim)
            .filter(|u| !u.is_empty() && *u != "none")
            .map(FieldUnary::parse)
            .collect::<usl_core::Result<Vec<_>>>()?;
        return Ok(field_family(&field, args.n, family, &unaries)?.into_semigroup());
    }
    if let Ok(family) = BoolFamily::parse(&args.name) {
        return Ok(bool_family(family, args.n)?.to_table()?);
    }
    bail!(
        "unknown structure `{}`; named structures are {}",
        args.name,
        NAMED_STRUCTURES.join(", ")
    )
}

fn make(args: MakeArgs) -> Result<ExitCode> {
    let s = build(&args)?;
    match &args.output {
        Some(path) => {
            usg_save(&s, path)?;
            println!("wrote {} ({} elements, {} unary)", path.display(), s.size(), s.arity());
        }
        None => print!("{}", usg_write(&s)),
    }
    Ok(ExitCode::SUCCESS)
}

fn info(s: &FiniteUnarySemigroup) -> Result<ExitCode> {
    println!("size {}", s.size());
    println!("unary {}", s.arity());
    let show = |id: Option<u32>| id.map_or("none".to_string(), |a| s.label(a));
    println!("zero {}", show(s.zero_id()));
    println!("identity {}", show(s.identity_id()));
    println!("idempotents {}", s.idempotent_count());
    for (k, flags) in classify_unary(s).iter().enumerate() {
        let kind = if flags.regular_star {
            "regular *-semigroup"
        } else if flags.involutory {
            "involutory"
        } else {
            "not involutory"
        };
        println!("star{} {kind}", k + 1);
    }
    let height = green_r_height(s);
    println!("r-height {}", height.h);
    let ip = index_period(s);
    println!("index {} period {}", ip.index, ip.period);
    Ok(ExitCode::SUCCESS)
}

fn check(s: &FiniteUnarySemigroup, identity: &str, budget: u64) -> Result<ExitCode> {
    let (u, v) = parse_identity(identity, s.arity())?;
    Ok(match check_identity(s, &u, &v, budget)? {
        IdentityVerdict::Holds { assignments } => {
            println!("holds ({assignments} assignments)");
            ExitCode::SUCCESS
        }
        IdentityVerdict::Fails(w) => {
            println!("fails: {}", w.describe(s));
            ExitCode::from(1)
        }
        IdentityVerdict::Inconclusive { space, budget } => {
            println!("inconclusive: {space} assignments exceed budget {budget}");
            ExitCode::from(3)
        }
    })
}

fn isoterm(s: &FiniteUnarySemigroup, word: &str, max_len: usize, budget: u64) -> Result<ExitCode> {
    let w = InvolutoryWord::parse(word)?;
    let report = isoterm_search(s, &w, max_len, budget)?;
    println!(
        "word {} candidates {} complete through {}",
        report.word, report.candidates, report.complete_through
    );
    if report.found.is_empty() {
        println!("no equal word found");
    }
    for z in &report.found {
        println!("equal: {z}");
    }
    Ok(if report.inconclusive {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn sapir(args: SapirArgs) -> Result<ExitCode> {
    let sys = build_system(args.k)?;
    println!("k {} alphabet {}", sys.k(), sys.alphabet_size());
    if args.square_free {
        for m in 1..=args.depth {
            let w = sys.iterate(m).with_context(|| format!("iterate {m}"))?;
            println!("depth {m} length {} square-free {}", w.len(), is_square_free(&w));
        }
    }
    let factors = factors_upto(&sys, args.max_len, args.depth)?;
    println!(
        "factors {} of length <= {} at depth {} (stabilized {})",
        factors.len(),
        args.max_len,
        args.depth,
        factors.stabilized()
    );
    let mut code = ExitCode::SUCCESS;
    if let Some(text) = &args.check {
        let model = twisted_model(&sys, args.max_len, args.depth)?;
        let (u, v) = parse_identity(text, 1)?;
        let result = model_check_identity(&model, &u, &v, args.word_len)?;
        match &result.verdict {
            ModelVerdict::Fails { assignment, lhs, rhs } => {
                let binds: Vec<String> = assignment
                    .iter()
                    .map(|(x, e)| format!("{x}={}", model.format_element(e)))
                    .collect();
                println!(
                    "fails: {}: lhs={}, rhs={}",
                    binds.join(", "),
                    model.format_element(lhs),
                    model.format_element(rhs)
                );
                code = ExitCode::from(1);
            }
            verdict => {
                println!("{verdict}");
                if matches!(verdict, ModelVerdict::Inconclusive { .. }) {
                    code = ExitCode::from(3);
                }
            }
        }
        if !result.within_k {
            println!("note: identity has more than k variables");
        }
    }
    Ok(code)
}

fn verify(args: VerifyArgs, budget: u64) -> Result<ExitCode> {
    let options = ClaimOptions {
        assignment_budget: budget,
        morphism_budget: DEFAULT_MORPHISM_BUDGET,
    };
    let reports = if args.claim.is_empty() {
        let tier = match args.tier.as_str() {
            "all" => None,
            other => Some(Tier::parse(other)?),
        };
        run_all(tier, &options)
    } else {
        args.claim
            .iter()
            .map(|id| run_claim(id, &options))
            .collect::<usl_core::Result<Vec<_>>>()?
    };
    for r in &reports {
        let verdict = match r.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        println!("{:<4} {verdict:<12} {:>7} ms  {}", r.id, r.ms, r.title);
        if r.verdict != Verdict::Pass {
            println!("     {}", r.witness);
        }
    }
    let passed = reports.iter().filter(|r| r.verdict == Verdict::Pass).count();
    println!("{passed}/{} passed", reports.len());
    if let Some(path) = &args.json {
        std::fs::write(path, reports_to_json(&reports, args.timings) + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let failed = reports.iter().any(|r| r.verdict == Verdict::Fail);
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}
