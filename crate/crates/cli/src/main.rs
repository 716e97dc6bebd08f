//! `shortcuts`: generate tournaments, build hop-rich paths, shortcut trees
//! and hop-complete paths, run the exact small-instance oracles, emit the z
//! table, and run verification suites and seeded experiments.
//!
//! Exit codes: 0 = success and all checked bounds hold; 1 = some guaranteed
//! bound was violated (a falsification signal, not a usage problem);
//! 2 = usage or input error. All randomized commands are reproducible:
//! identical flags give byte-identical output.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use shortcuts_core::oracle::{self, Caps, OracleReport};
use shortcuts_core::suites;
use shortcuts_core::tournament::DEFAULT_FK_BUDGET;
use shortcuts_core::{
    build_shortcut_tree, ceil_eps, count_hops, format, hop_floor, hop_rich_path, meets_bound,
    middle_counts, middle_floor, shortcut_bounds, square_floor, square_path, tree_shortcuts,
    PivotRule, Seed, Tournament, ZTable,
};

#[derive(Parser)]
#[command(name = "shortcuts", version, about = "Shortcut-rich paths in tournaments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a tournament file in the canonical format.
    Gen(GenArgs),
    /// Run the three constructive algorithms on a tournament file and
    /// check their guarantees.
    Analyze(AnalyzeArgs),
    /// Emit the z recurrence table as CSV.
    Ztable(ZtableArgs),
    /// Exact small-instance oracles.
    Oracle(OracleArgs),
    /// Named verification suites.
    Verify(VerifyArgs),
    /// Seeded random experiments, one CSV row per trial.
    Experiment(ExperimentArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum GenType {
    Transitive,
    Rn,
    Rnk,
    Paley,
    Random,
}

#[derive(Args)]
struct GenArgs {
    /// Construction family.
    #[arg(long = "type", value_enum)]
    kind: GenType,
    /// Vertex count (for paley: the prime q).
    #[arg(long)]
    n: usize,
    /// Block parameter for rnk (k >= 2).
    #[arg(long)]
    k: Option<usize>,
    /// Seed for random and rnk.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Candidate budget for the k >= 4 block search.
    #[arg(long, default_value_t = DEFAULT_FK_BUDGET)]
    fk_budget: usize,
    /// Cache file for a found k >= 4 block witness (reused when valid).
    #[arg(long)]
    fk_cache: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Tournament file in the canonical format.
    input: PathBuf,
    /// Human-readable table instead of TSV.
    #[arg(long)]
    human: bool,
}

#[derive(Args)]
struct ZtableArgs {
    /// Largest n to tabulate.
    #[arg(long)]
    max: usize,
    /// Exit 1 if any row violates a proven lower bound (bound10 for all n,
    /// bound5 for n <= 62540).
    #[arg(long)]
    check: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum OracleWhat {
    Hops,
    Shortcuts,
    Square,
    Tree,
    Beta,
    Transitive,
    Report,
}

#[derive(Args)]
struct OracleArgs {
    /// Tournament file in the canonical format.
    input: PathBuf,
    /// Which exact statistic to compute.
    #[arg(long, value_enum)]
    what: OracleWhat,
    /// Override the default size cap (acknowledges the exponential cost).
    #[arg(long)]
    cap: Option<usize>,
    /// Write the witness (path, ordering or tree) to this file.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: h10, table1, mv, delta2, identity-s-beta, rnk-power, tree.
    #[arg(long)]
    suite: String,
    /// Instance size for parameterized suites.
    #[arg(long, default_value_t = 50)]
    n: usize,
    /// Trial count for parameterized suites.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// For h10: also sweep all tournaments on 7 vertices (slow).
    #[arg(long)]
    full: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    // die quietly when the consumer of a pipe goes away (e.g. `| head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Ztable(args) => cmd_ztable(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Experiment(args) => cmd_experiment(args),
    };
    match outcome {
        Ok(all_bounds_hold) => {
            if all_bounds_hold {
                ExitCode::SUCCESS
            } else {
                // a guaranteed bound failed: distinct from usage errors
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_tournament(path: &PathBuf) -> Result<Tournament> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let t = format::parse_tournament(&bytes).with_context(|| format!("parsing {}", path.display()))?;
    Ok(t)
}

fn write_out(out: Option<&PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<bool> {
    let t = match args.kind {
        GenType::Transitive => Tournament::transitive(args.n)?,
        GenType::Rn => Tournament::rn(args.n)?,
        GenType::Paley => Tournament::paley(args.n)?,
        GenType::Random => Tournament::random(args.n, Seed(args.seed))?,
        GenType::Rnk => {
            let k = args.k.ok_or_else(|| anyhow!("--k is required for --type rnk"))?;
            let block = find_block_cached(k, Seed(args.seed), args.fk_budget, args.fk_cache.as_ref())?;
            Tournament::rnk_with_block(args.n, k, &block)?
        }
    };
    write_out(args.output.as_ref(), &format::serialize_tournament(&t))?;
    Ok(true)
}

/// k >= 4 block witnesses are expensive to search for, so `--fk-cache`
/// reuses a previously found witness file when it is still a valid
/// `T_{k+1}`-free tournament.
fn find_block_cached(k: usize, seed: Seed, budget: usize, cache: Option<&PathBuf>) -> Result<Tournament> {
    if k < 4 {
        return Ok(shortcuts_core::find_fk(k, seed, budget)?);
    }
    if let Some(path) = cache {
        if let Ok(bytes) = fs::read(path) {
            if let Ok(t) = format::parse_tournament(&bytes) {
                if !oracle::has_transitive_k(&t, k + 1) {
                    return Ok(t);
                }
            }
            eprintln!("note: cache {} invalid for k = {k}, searching again", path.display());
        }
    }
    let t = shortcuts_core::find_fk(k, seed, budget)?;
    if let Some(path) = cache {
        fs::write(path, format::serialize_tournament(&t))
            .with_context(|| format!("writing cache {}", path.display()))?;
    }
    Ok(t)
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<bool> {
    let t = load_tournament(&args.input)?;
    let n = t.n();

    let hop_path = hop_rich_path(&t);
    let hops = count_hops(&t, &hop_path).map_err(|e| anyhow!("hop path invalid: {e}"))?;
    let hops_ok = hops >= hop_floor(n);

    let tree = build_shortcut_tree(&t, PivotRule::MaxMiddle);
    let sc = tree_shortcuts(&t, &tree).map_err(|e| anyhow!("built tree invalid: {e}"))?;
    let z = ZTable::compute(n).z(n);
    let bounds = shortcut_bounds(n);
    let tree_floor = z.max(ceil_eps(bounds.tree_lower));
    let tree_ok = sc as i64 >= tree_floor;

    let sq = square_path(&t);
    let sq_complete =
        shortcuts_core::is_hop_complete(&t, &sq).map_err(|e| anyhow!("square path invalid: {e}"))?;
    let sq_len = sq.len() as u64;
    let sq_ok = sq_complete && sq_len >= square_floor(n);

    let pass = |b: bool| if b { "pass" } else { "FAIL" };
    if args.human {
        println!("n                {n}");
        println!("hops             {hops} (floor {}) {}", hop_floor(n), pass(hops_ok));
        println!(
            "tree shortcuts   {sc} (z = {z}, analytic floor {}) {}",
            ceil_eps(bounds.tree_lower),
            pass(tree_ok)
        );
        println!("square length    {sq_len} (floor {}) {}", square_floor(n), pass(sq_ok));
    } else {
        println!("n\thops\thop_floor\thops_ok\ttree_shortcuts\tz\ttree_floor\ttree_ok\tsquare_len\tsquare_floor\tsquare_ok");
        println!(
            "{n}\t{hops}\t{}\t{}\t{sc}\t{z}\t{tree_floor}\t{}\t{sq_len}\t{}\t{}",
            hop_floor(n),
            pass(hops_ok),
            pass(tree_ok),
            square_floor(n),
            pass(sq_ok)
        );
    }
    Ok(hops_ok && tree_ok && sq_ok)
}

fn cmd_ztable(args: ZtableArgs) -> Result<bool> {
    if args.max < 1 {
        return Err(anyhow!("--max must be at least 1"));
    }
    let zt = ZTable::compute(args.max);
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    zt.write_csv(&mut out)?;
    out.flush()?;
    if args.check {
        for n in 1..=args.max {
            if !zt.ok10(n) || (n <= 62540 && !zt.ok5(n)) {
                eprintln!("bound violated at n = {n}");
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn cmd_oracle(args: OracleArgs) -> Result<bool> {
    let t = load_tournament(&args.input)?;
    let caps = Caps::default();
    let cap = |d: usize| args.cap.unwrap_or(d);
    let mut witness_bytes: Option<Vec<u8>> = None;
    match args.what {
        OracleWhat::Hops => {
            let w = oracle::max_hops_exact_capped(&t, cap(caps.hops))?;
            println!("max_hops\t{}", w.value);
            witness_bytes = Some(format::serialize_path(&w.witness).into_bytes());
        }
        OracleWhat::Shortcuts => {
            let w = oracle::max_shortcuts_exact_capped(&t, cap(caps.shortcuts))?;
            println!("max_shortcuts\t{}", w.value);
            witness_bytes = Some(format::serialize_path(&w.witness).into_bytes());
        }
        OracleWhat::Square => {
            let w = oracle::longest_square_exact_capped(&t, cap(caps.square))?;
            println!("longest_square\t{}", w.value);
            witness_bytes = Some(format::serialize_path(&w.witness).into_bytes());
        }
        OracleWhat::Tree => {
            let w = oracle::best_tree_exact_capped(&t, cap(caps.tree))?;
            println!("best_tree\t{}", w.value);
            witness_bytes = Some(format::serialize_tree(&w.witness).into_bytes());
        }
        OracleWhat::Beta => {
            let w = oracle::beta_exact_capped(&t, cap(caps.beta))?;
            println!("beta\t{}", w.value);
            let line = w.order.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",") + "\n";
            witness_bytes = Some(line.into_bytes());
        }
        OracleWhat::Transitive => {
            let w = oracle::max_transitive_exact_capped(&t, cap(caps.transitive))?;
            println!("max_transitive\t{}", w.size);
            let line = w.chain.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",") + "\n";
            witness_bytes = Some(line.into_bytes());
        }
        OracleWhat::Report => {
            let caps = Caps {
                hops: cap(caps.hops),
                shortcuts: cap(caps.shortcuts),
                square: cap(caps.square),
                tree: cap(caps.tree),
                beta: cap(caps.beta),
                transitive: cap(caps.transitive),
            };
            let r = OracleReport::compute(&t, &caps)?;
            println!("{}", OracleReport::TSV_HEADER);
            println!("{}", r.tsv_line());
        }
    }
    if let (Some(path), Some(bytes)) = (args.witness.as_ref(), witness_bytes) {
        fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(true)
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    let seed = Seed(args.seed);
    let checks = match args.suite.as_str() {
        "h10" => suites::suite_h10(args.full),
        "table1" => suites::suite_table1(),
        "mv" => suites::suite_mv(args.n, args.trials, seed),
        "delta2" => suites::suite_delta2(args.n, args.trials, seed),
        "identity-s-beta" => suites::suite_identity_s_beta(args.trials, seed),
        "rnk-power" => suites::suite_rnk_power(seed),
        "tree" => suites::suite_tree(args.n, args.trials, seed),
        other => return Err(anyhow!("unknown suite {other:?}")),
    };
    for c in &checks {
        println!("{}\t{}\t{}", c.name, if c.pass { "PASS" } else { "FAIL" }, c.detail);
    }
    Ok(suites::all_pass(&checks))
}

fn cmd_experiment(args: ExperimentArgs) -> Result<bool> {
    if args.trials < 1 {
        return Err(anyhow!("--trials must be at least 1"));
    }
    let n = args.n;
    let base = Seed(args.seed);
    let zt = ZTable::compute(n);
    let bounds = shortcut_bounds(n);
    let caps = Caps::default();
    let mut rows: Vec<(usize, String, bool)> = (0..args.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = base.child(trial as u64);
            let t = Tournament::random(n, seed).unwrap();
            let max_middle = middle_counts(&t).into_iter().max().unwrap_or(0);
            let middle_ok = max_middle >= middle_floor(n);
            let (trans_size, trans_exact) = if n <= caps.transitive {
                (oracle::max_transitive_exact(&t).unwrap().size, true)
            } else {
                (t.stearns_transitive().len(), false)
            };
            let tree = build_shortcut_tree(&t, PivotRule::MaxMiddle);
            let sc = tree_shortcuts(&t, &tree).unwrap();
            let tree_ok = sc as i64 >= zt.z(n) && meets_bound(sc, bounds.tree_lower);
            // the upper bound applies to every tree, the optimum included
            let upper_ok = (sc as f64) <= bounds.tree_upper;
            let row = format!(
                "{trial},{},{max_middle},{},{},{trans_size},{},{sc},{},{},{},{}",
                seed.0,
                middle_floor(n),
                middle_ok as u8,
                trans_exact as u8,
                zt.z(n),
                ceil_eps(bounds.tree_lower),
                bounds.tree_upper.round() as i64,
                (tree_ok && upper_ok) as u8,
            );
            (trial, row, middle_ok && tree_ok && upper_ok)
        })
        .collect();
    rows.sort_by_key(|r| r.0);
    println!("trial,seed,max_middle,middle_floor,middle_ok,transitive_size,transitive_exact,tree_shortcuts,z,tree_floor,tree_upper,tree_ok");
    let mut all_ok = true;
    for (_, row, ok) in rows {
        println!("{row}");
        all_ok &= ok;
    }
    Ok(all_ok)
}
