use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use multireal::checkers::{
    can_multigraph, is_bigraphic_pair, is_graphic, is_r_max_bigraphic_pair, is_r_max_graphic,
    is_t_tot_bigraphic_pair, is_t_tot_graphic,
};
use multireal::construct::{
    realize_max_mult, realize_max_mult_bi, realize_tot_mult, realize_tot_mult_bi,
    verify_realization, BipartiteMultigraph, Claim, ClaimedDegrees, MultBound, Multigraph,
};
use multireal::families::{
    gap_bipartite, gap_general, partition_prime_bound, partition_prime_instance, tight_rmax,
    tight_ttot, FamilyFixture,
};
use multireal::optimize::{
    max_mult, max_mult_bi, max_mult_bi_pair, tot_mult, tot_mult_bi, tot_mult_bi_pair, OptimalValue,
    SearchOptions,
};
use multireal::oracle::{self, OracleLimits};
use multireal::partitions::{count_balanced_partitions, enumerate_balanced_partitions};
use multireal::{DegreeSequence, Error, PartitionPair};

/// Multigraph realizations of degree sequences with few parallel edges.
#[derive(Parser)]
#[command(name = "multireal", version)]
struct Cli {
    /// Answer check/opt by exhaustive search (small inputs only).
    #[arg(long, global = true)]
    oracle: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for whole-sequence bipartite optimization.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Test one realizability condition.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        #[arg(long)]
        seq: Option<String>,
        /// Bipartition as "a-side | b-side".
        #[arg(long)]
        partition: Option<String>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
    },
    /// Compute an optimal MaxMult or TotMult value.
    Opt {
        #[arg(value_enum)]
        measure: Measure,
        #[arg(long)]
        seq: Option<String>,
        #[arg(long)]
        bipartite: bool,
        #[arg(long)]
        partition: Option<String>,
        /// Give up after examining this many balanced partitions.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Build an optimal realization and print it as JSON.
    Realize {
        #[arg(long)]
        seq: Option<String>,
        #[arg(long)]
        bipartite: bool,
        #[arg(long, value_enum, default_value_t = Measure::Totmult)]
        minimize: Measure,
        #[arg(long)]
        partition: Option<String>,
        /// Write the JSON here instead of standard output.
        #[arg(long)]
        out: Option<String>,
        /// Re-check the result against its claimed degrees and optimum.
        #[arg(long)]
        verify: bool,
    },
    /// List or count the balanced partitions of a sequence.
    Partitions {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        limit: Option<usize>,
        /// Report DP query counts after the listing.
        #[arg(long)]
        stats: bool,
    },
    /// Generate a named family with its known optima.
    Family {
        #[command(subcommand)]
        family: FamilyCommand,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Graphic,
    Multigraph,
    Rmax,
    Ttot,
    Bigraphic,
    RmaxBi,
    TtotBi,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Measure {
    Maxmult,
    Totmult,
}

#[derive(Subcommand)]
enum FamilyCommand {
    GapGeneral {
        #[arg(long)]
        n: u64,
    },
    GapBipartite {
        #[arg(long)]
        n: u64,
    },
    TightRmax {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        k: u64,
    },
    TightTtot {
        #[arg(long)]
        k: u64,
    },
    PartitionPrime {
        /// The base integers a_1 .. a_n.
        #[arg(long)]
        seq: String,
    },
}

/// Process outcome: 0 holds/ok, 1 fails/infeasible, 2 bad input, 3 budget.
enum Outcome {
    Holds,
    Fails,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Holds) => ExitCode::SUCCESS,
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check {
            kind,
            seq,
            partition,
            r,
            t,
        } => check(cli, *kind, seq.as_deref(), partition.as_deref(), *r, *t),
        Command::Opt {
            measure,
            seq,
            bipartite,
            partition,
            budget,
        } => opt(
            cli,
            *measure,
            seq.as_deref(),
            *bipartite,
            partition.as_deref(),
            *budget,
        ),
        Command::Realize {
            seq,
            bipartite,
            minimize,
            partition,
            out,
            verify,
        } => realize(
            cli,
            seq.as_deref(),
            *bipartite,
            *minimize,
            partition.as_deref(),
            out.as_deref(),
            *verify,
        ),
        Command::Partitions {
            seq,
            count,
            limit,
            stats,
        } => partitions(cli, seq, *count, *limit, *stats),
        Command::Family { family } => family_cmd(cli, family),
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn usage(msg: &str) -> Failure {
    Failure::Usage(msg.to_string())
}

fn need_seq(seq: Option<&str>) -> Result<DegreeSequence> {
    Ok(seq.ok_or_else(|| usage("--seq is required"))?.parse()?)
}

fn need_pair(partition: Option<&str>) -> Result<PartitionPair> {
    Ok(partition
        .ok_or_else(|| usage("--partition \"a | b\" is required"))?
        .parse()?)
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| usage(&format!("{flag} is required")))
}

fn emit(cli: &Cli, text: &str, doc: Value) {
    match cli.format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{doc}"),
    }
}

fn check(
    cli: &Cli,
    kind: CheckKind,
    seq: Option<&str>,
    partition: Option<&str>,
    r: Option<u64>,
    t: Option<u64>,
) -> Result<Outcome> {
    let (holds, failing_index) = if cli.oracle {
        (check_oracle(kind, seq, partition, r, t)?, None)
    } else {
        let v = match kind {
            CheckKind::Graphic => is_graphic(&need_seq(seq)?),
            CheckKind::Multigraph => can_multigraph(&need_seq(seq)?)?,
            CheckKind::Rmax => is_r_max_graphic(&need_seq(seq)?, need(r, "--r")?)?,
            CheckKind::Ttot => is_t_tot_graphic(&need_seq(seq)?, need(t, "--t")?)?,
            CheckKind::Bigraphic => is_bigraphic_pair(&need_pair(partition)?),
            CheckKind::RmaxBi => is_r_max_bigraphic_pair(&need_pair(partition)?, need(r, "--r")?)?,
            CheckKind::TtotBi => is_t_tot_bigraphic_pair(&need_pair(partition)?, need(t, "--t")?),
        };
        (v.holds, v.failing_index)
    };
    let text = match (holds, failing_index) {
        (true, _) => "holds".to_string(),
        (false, Some(l)) => format!("fails at index {l}"),
        (false, None) => "fails".to_string(),
    };
    emit(
        cli,
        &text,
        json!({"holds": holds, "failing_index": failing_index, "value": null}),
    );
    Ok(if holds {
        Outcome::Holds
    } else {
        Outcome::Fails
    })
}

fn check_oracle(
    kind: CheckKind,
    seq: Option<&str>,
    partition: Option<&str>,
    r: Option<u64>,
    t: Option<u64>,
) -> Result<bool> {
    let lim = OracleLimits::default();
    match kind {
        CheckKind::Graphic => Ok(oracle::oracle_realizable(&need_seq(seq)?, 1, &lim)?),
        CheckKind::Multigraph => {
            let d = need_seq(seq)?;
            if d.volume() % 2 == 1 {
                return Err(Error::OddVolume(d.volume()).into());
            }
            Ok(oracle::oracle_realizable(&d, d.max_degree(), &lim)?)
        }
        CheckKind::Rmax => {
            let r = need(r, "--r")?;
            if r == 0 {
                return Err(Error::ZeroMultiplicity.into());
            }
            Ok(oracle::oracle_realizable(&need_seq(seq)?, r, &lim)?)
        }
        CheckKind::Ttot => Ok(oracle::oracle_t_tot_realizable(
            &need_seq(seq)?,
            need(t, "--t")?,
            &lim,
        )?),
        CheckKind::Bigraphic => Ok(oracle::oracle_pair_realizable(
            &need_pair(partition)?,
            1,
            0,
            &lim,
        )?),
        CheckKind::RmaxBi => {
            let r = need(r, "--r")?;
            if r == 0 {
                return Err(Error::ZeroMultiplicity.into());
            }
            Ok(oracle::oracle_pair_realizable(
                &need_pair(partition)?,
                r,
                u64::MAX,
                &lim,
            )?)
        }
        CheckKind::TtotBi => {
            let p = need_pair(partition)?;
            let cap = p.merged().max_degree();
            Ok(oracle::oracle_pair_realizable(
                &p,
                cap,
                need(t, "--t")?,
                &lim,
            )?)
        }
    }
}

fn optimum(
    cli: &Cli,
    measure: Measure,
    seq: Option<&str>,
    bipartite: bool,
    partition: Option<&str>,
    budget: Option<usize>,
) -> Result<OptimalValue> {
    let lim = OracleLimits::default();
    let plain = |value| OptimalValue {
        value,
        witness: None,
    };
    if bipartite {
        if let Some(text) = partition {
            let p: PartitionPair = text.parse()?;
            return Ok(match (cli.oracle, measure) {
                (false, Measure::Maxmult) => max_mult_bi_pair(&p),
                (false, Measure::Totmult) => tot_mult_bi_pair(&p),
                (true, Measure::Maxmult) => plain(oracle::oracle_max_mult_bi_pair(&p, &lim)?),
                (true, Measure::Totmult) => plain(oracle::oracle_tot_mult_bi_pair(&p, &lim)?),
            });
        }
        let d = need_seq(seq)?;
        let opts = SearchOptions {
            budget,
            jobs: cli.jobs.max(1),
        };
        return match (cli.oracle, measure) {
            (false, Measure::Maxmult) => Ok(max_mult_bi(&d, &opts)?),
            (false, Measure::Totmult) => Ok(tot_mult_bi(&d, &opts)?),
            (true, Measure::Maxmult) => Ok(oracle::oracle_max_mult_bi(&d, &lim)?),
            (true, Measure::Totmult) => Ok(oracle::oracle_tot_mult_bi(&d, &lim)?),
        };
    }
    let d = need_seq(seq)?;
    match (cli.oracle, measure) {
        (false, Measure::Maxmult) => Ok(max_mult(&d)?),
        (false, Measure::Totmult) => Ok(tot_mult(&d)?),
        (true, Measure::Maxmult) => Ok(oracle::oracle_max_mult(&d, &lim)?),
        (true, Measure::Totmult) => Ok(oracle::oracle_tot_mult(&d, &lim)?),
    }
}

fn opt(
    cli: &Cli,
    measure: Measure,
    seq: Option<&str>,
    bipartite: bool,
    partition: Option<&str>,
    budget: Option<usize>,
) -> Result<Outcome> {
    let o = optimum(cli, measure, seq, bipartite, partition, budget)?;
    let mut text = match o.value {
        Some(v) => v.to_string(),
        None => "infeasible".to_string(),
    };
    if let Some(w) = &o.witness {
        text.push_str(&format!("\nwitness: {w}"));
    }
    let mut doc = json!({"holds": o.value.is_some(), "failing_index": null, "value": o.value});
    if let Some(w) = &o.witness {
        doc["witness"] = json!(w.to_string());
    }
    emit(cli, &text, doc);
    Ok(if o.value.is_some() {
        Outcome::Holds
    } else {
        Outcome::Fails
    })
}

enum Built {
    General(Multigraph),
    Bipartite(BipartiteMultigraph),
}

#[allow(clippy::too_many_arguments)]
fn realize(
    cli: &Cli,
    seq: Option<&str>,
    bipartite: bool,
    minimize: Measure,
    partition: Option<&str>,
    out: Option<&str>,
    verify: bool,
) -> Result<Outcome> {
    let (built, claim) = if bipartite {
        let p = match partition {
            Some(text) => text.parse()?,
            None => {
                let d = need_seq(seq)?;
                let opts = SearchOptions {
                    budget: None,
                    jobs: cli.jobs.max(1),
                };
                let o = match minimize {
                    Measure::Maxmult => max_mult_bi(&d, &opts)?,
                    Measure::Totmult => tot_mult_bi(&d, &opts)?,
                };
                match o.witness {
                    Some(p) => p,
                    None => {
                        eprintln!("no balanced partition");
                        return Ok(Outcome::Fails);
                    }
                }
            }
        };
        let mut claim = Claim::degrees_only(ClaimedDegrees::Pair(p.clone()));
        let h = match minimize {
            Measure::Maxmult => {
                let r = max_mult_bi_pair(&p).value.expect("pairs are feasible");
                claim.max_mult = Some(MultBound::Exactly(r));
                realize_max_mult_bi(&p, r)?
            }
            Measure::Totmult => {
                let t = tot_mult_bi_pair(&p).value.expect("pairs are feasible");
                claim.tot_mult = Some(MultBound::Exactly(t));
                realize_tot_mult_bi(&p)?
            }
        };
        (Built::Bipartite(h), claim)
    } else {
        let d = need_seq(seq)?;
        let mut claim = Claim::degrees_only(ClaimedDegrees::Sequence(d.clone()));
        let value = match minimize {
            Measure::Maxmult => max_mult(&d)?.value,
            Measure::Totmult => tot_mult(&d)?.value,
        };
        let Some(value) = value else {
            eprintln!("no multigraph realization");
            return Ok(Outcome::Fails);
        };
        let h = match minimize {
            Measure::Maxmult => {
                claim.max_mult = Some(MultBound::Exactly(value));
                realize_max_mult(&d, value)?
            }
            Measure::Totmult => {
                claim.tot_mult = Some(MultBound::Exactly(value));
                realize_tot_mult(&d)?
            }
        };
        (Built::General(h), claim)
    };
    let (json, ok) = match &built {
        Built::General(h) => (h.to_json(), !verify || verify_realization(h, &claim)),
        Built::Bipartite(h) => (h.to_json(), !verify || verify_realization(h, &claim)),
    };
    match out {
        Some(path) => fs::write(path, format!("{json}\n"))
            .map_err(|e| Error::ValidationFailed(format!("cannot write {path}: {e}")))?,
        None => println!("{json}"),
    }
    if verify {
        eprintln!(
            "{}",
            if ok {
                "verified"
            } else {
                "verification failed"
            }
        );
    }
    Ok(if ok { Outcome::Holds } else { Outcome::Fails })
}

fn partitions(
    cli: &Cli,
    seq: &str,
    count: bool,
    limit: Option<usize>,
    stats: bool,
) -> Result<Outcome> {
    let d: DegreeSequence = seq.parse()?;
    if count {
        let c = count_balanced_partitions(&d);
        emit(cli, &c.to_string(), json!({ "count": c.to_string() }));
        return Ok(Outcome::Holds);
    }
    let mut it = enumerate_balanced_partitions(&d);
    if let Some(k) = limit {
        it = it.with_limit(k);
    }
    let listed: Vec<String> = it.by_ref().map(|p| p.to_string()).collect();
    let st = it.stats();
    match cli.format {
        Format::Text => {
            for line in &listed {
                println!("{line}");
            }
            if it.truncated() {
                println!("...");
            }
            if stats {
                println!("dp_invocations: {}", st.dp_invocations);
                println!("node_visits: {}", st.node_visits);
            }
        }
        Format::Json => {
            let mut doc = json!({"partitions": listed, "truncated": it.truncated()});
            if stats {
                doc["stats"] = json!(st);
            }
            println!("{doc}");
        }
    }
    Ok(Outcome::Holds)
}

fn family_cmd(cli: &Cli, family: &FamilyCommand) -> Result<Outcome> {
    let fixture = match family {
        FamilyCommand::GapGeneral { n } => gap_general(*n)?,
        FamilyCommand::GapBipartite { n } => gap_bipartite(*n)?,
        FamilyCommand::TightRmax { r, k } => tight_rmax(*r, *k)?,
        FamilyCommand::TightTtot { k } => tight_ttot(*k)?,
        FamilyCommand::PartitionPrime { seq } => {
            let a = multireal::parse_sequence(seq)?;
            let d = partition_prime_instance(a.degrees())?;
            let b = partition_prime_bound(&d).expect("instances have the shape");
            emit(
                cli,
                &format!("sequence: {d}\nB: {b}"),
                json!({"sequence": d, "B": b}),
            );
            return Ok(Outcome::Holds);
        }
    };
    print_fixture(cli, &fixture);
    Ok(Outcome::Holds)
}

fn print_fixture(cli: &Cli, f: &FamilyFixture) {
    if cli.format == Format::Json {
        println!(
            "{}",
            serde_json::to_string(f).expect("plain data serializes")
        );
        return;
    }
    println!("family: {}", f.name);
    println!("sequence: {}", f.sequence);
    if let Some(p) = &f.pair {
        println!("pair: {p}");
    }
    for (name, v) in &f.expected {
        println!("{name}: {v}");
    }
    if f.degenerate {
        println!("degenerate: true");
    }
}
