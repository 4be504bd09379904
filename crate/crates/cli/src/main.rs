use anyhow::{bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use k3cm::counting::{count_curve, count_surface, surface_bad_primes, WorkBudget};
use k3cm::hecke::{CandidateSpace, InfinityType};
use k3cm::pipeline::{
    build_report, match_curve, match_surface, verify_part_c, verify_sigma_relation, Config, Context, MatchReport,
    Verdict,
};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "k3cm", version, about = "Point counts and Hecke character matching for CM K3 surfaces and genus-3 curves")]
struct Cli {
    /// Cap every comparison prime bound at this value.
    #[arg(long, global = true)]
    prime_bound: Option<u64>,
    /// Working precision in decimal digits for certified evaluations.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Maximum number of points evaluated by a single count.
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Field data file replacing the shipped fields.
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Surface,
    Curve,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseKind {
    X,
    A,
    PsiPrime,
}

#[derive(Subcommand)]
enum Command {
    /// Bad primes of the surface and the curve of case i.
    BadPrimes { i: u32 },
    /// Point count and transcendental trace of X_i over F_{p^m}.
    CountSurface {
        i: u32,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Point count and Frobenius trace of the curve C_i over F_{p^m}.
    CountCurve {
        i: u32,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Size of the candidate space for one infinity type.
    Enumerate {
        #[arg(long = "case", value_enum)]
        case: CaseKind,
        i: u32,
    },
    /// Eliminate candidates against point counts.
    Match {
        #[arg(value_enum)]
        kind: Kind,
        i: u32,
    },
    /// Exterior-square decomposition of the curve factor.
    VerifyC { i: u32 },
    /// Relation between the surface and curve characters at degree-one primes.
    VerifySigma { i: u32 },
    /// Full run with tables.
    Report {
        /// Output path for the JSON report; the text tables and timings go
        /// next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Restrict to these cases.
        #[arg(long = "case")]
        cases: Vec<u32>,
    },
}

fn config(cli: &Cli) -> Config {
    let mut c = Config::default();
    if let Some(b) = cli.prime_bound {
        c = c.with_prime_bound(b);
    }
    if let Some(d) = cli.precision {
        c.digits = d;
    }
    if let Some(b) = cli.budget {
        c.budget = WorkBudget::MaxPoints(b);
    }
    c.field_data = cli.data.clone();
    c
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn print_match(r: &MatchReport, json: bool) -> Result<()> {
    if json {
        return print_json(r);
    }
    println!("{} {}", r.target, r.verdict.as_str());
    println!("  infinity type   {}", r.infinity_type);
    println!("  modulus         {} (norm {})", r.modulus, r.modulus_norm);
    println!("  candidates      {} -> {}", r.candidates_before, r.candidates_after);
    if let Some(n) = &r.conductor_norm {
        println!("  conductor norm  {n}");
    }
    if let Some(row) = &r.table_row {
        println!("  factor at {:<5} [{}]", r.table_prime, row.join(", "));
    }
    for rec in &r.comparisons {
        println!("  p = {:<4} {:<7} counted [{}] survivors {}", rec.p, rec.verdict, rec.counted.join(", "), rec.survivors);
    }
    for n in &r.notes {
        println!("  note: {n}");
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Vec<Verdict>> {
    let ctx = Context::new(config(cli))?;
    match &cli.command {
        Command::BadPrimes { i } => {
            if *i <= 3 {
                println!("X{i}: {:?}", surface_bad_primes(ctx.varieties.surface(*i)?)?);
            } else {
                println!("X{i}: no surface known");
            }
            println!("C{i}: {:?}", ctx.varieties.curve(*i)?.bad_primes());
            Ok(Vec::new())
        }
        Command::CountSurface { i, p, m } => {
            let c = count_surface(ctx.varieties.surface(*i)?, *p, *m, ctx.config.budget)?;
            if cli.json {
                print_json(&c)?;
            } else {
                println!("p = {} m = {}: #X = {} nodes = {} s = {}", c.p, c.m, c.n, c.nodes, c.s);
            }
            Ok(Vec::new())
        }
        Command::CountCurve { i, p, m } => {
            let c = count_curve(ctx.varieties.curve(*i)?, *p, *m)?;
            if cli.json {
                print_json(&c)?;
            } else {
                println!("p = {} m = {}: #C = {} t = {}", c.p, c.m, c.n, c.t);
            }
            Ok(Vec::new())
        }
        Command::Enumerate { case, i } => {
            let curve_bad = ctx.varieties.curve(*i)?.bad_primes();
            let (t, bad) = match case {
                CaseKind::X if *i <= 3 => (InfinityType::psi_x(), surface_bad_primes(ctx.varieties.surface(*i)?)?),
                CaseKind::X => (InfinityType::psi_x(), curve_bad),
                CaseKind::A => (InfinityType::psi_a(), curve_bad),
                CaseKind::PsiPrime => (InfinityType::psi_prime(), curve_bad),
            };
            let space = CandidateSpace::new(ctx.field(*i)?, &t, &bad)?;
            let (count, orbits) = space.count_orbits(ctx.config.candidate_budget)?;
            println!("field           {}", space.field.label);
            println!("bad primes      {bad:?}");
            println!("modulus         {} (norm {})", space.group.modulus.describe(), space.group.modulus.norm);
            println!("group           {:?}", space.group.cyc);
            println!("infinity types  {}", space.types.len());
            println!("candidates      {count}");
            println!("orbits          {orbits}");
            Ok(Vec::new())
        }
        Command::Match { kind, i } => {
            let m = match kind {
                Kind::Surface => match_surface(&ctx, *i)?,
                Kind::Curve => match_curve(&ctx, *i)?,
            };
            print_match(&m.report, cli.json)?;
            Ok(vec![m.report.verdict])
        }
        Command::VerifyC { i } => {
            let r = verify_part_c(&ctx, *i, None)?;
            if cli.json {
                print_json(&r)?;
            } else {
                println!("wedge square {} {}", i, r.verdict.as_str());
                println!("  slot source     {}", r.slot_source);
                if let Some(s) = &r.slot_character {
                    println!("  slot conductor  {}", s.conductor_norm);
                }
                if let Some(m) = &r.psi_prime {
                    print_match(m, false)?;
                }
                let exact = r.decomposition.iter().filter(|d| d.exact).count();
                println!("  exact at {exact} of {} primes", r.decomposition.len());
                for n in &r.notes {
                    println!("  note: {n}");
                }
            }
            Ok(vec![r.verdict])
        }
        Command::VerifySigma { i } => {
            let x = match_surface(&ctx, *i)?;
            let a = match_curve(&ctx, *i)?;
            let (Some(px), Some(pa)) = (&x.character, &a.character) else {
                bail!("no unique surface and curve characters for case {i}");
            };
            let r = verify_sigma_relation(&ctx, *i, px, pa)?;
            if cli.json {
                print_json(&r)?;
            } else {
                println!("sigma relation {} {}", i, r.verdict.as_str());
                println!("  curve twist     {:?}", r.curve_twist);
                println!("  assignment      {}", r.assignment);
                println!("  primes          {} above {:?}", r.degree_one_primes, r.rational_primes);
                println!("  residual        {:?} (log10)", r.max_residual_log10);
            }
            Ok(vec![r.verdict])
        }
        Command::Report { out, cases } => {
            let cases = if cases.is_empty() { vec![1, 2, 3, 4] } else { cases.clone() };
            let mut timings: Vec<(String, Duration)> = Vec::new();
            let report = build_report(&ctx, &cases, |stage, d| {
                log::info!("{stage}: {:.1}s", d.as_secs_f64());
                timings.push((stage.to_string(), d));
            })?;
            let text = report.to_text();
            match out {
                Some(path) => {
                    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                    }
                    std::fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
                    std::fs::write(path.with_extension("txt"), &text)?;
                    let timing: String =
                        timings.iter().map(|(s, d)| format!("{s}\t{:.3}\n", d.as_secs_f64())).collect();
                    std::fs::write(path.with_extension("timing.tsv"), timing)?;
                    print!("{text}");
                }
                None if cli.json => print!("{}", report.to_json()),
                None => print!("{text}"),
            }
            Ok(report.verdicts())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(verdicts) if verdicts.iter().all(|v| v.is_success()) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
