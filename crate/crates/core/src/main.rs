use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use walker_breaker::audit::AuditMode;
use walker_breaker::board::{play_game, Goal, MatchConfig, Player};
use walker_breaker::boxgame::{exact_box_game_winner, solve_box_game, BoxPlayer};
use walker_breaker::experiment::{
    audit_report, bias_sweep, boxgame_tables, parse_ratio, read_transcript_dir, run_batch, write_batch, write_csv,
    write_records, ExperimentConfig,
};
use walker_breaker::strategy::{breaker_by_name, walker_by_name, StrategyParams};

#[derive(Parser)]
#[command(name = "walker-breaker", version, about = "Biased Walker-Breaker games on K_n")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Play one game and print its transcript
    Play {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value = "connectivity")]
        goal: Goal,
        #[arg(long, default_value = "walker.connectivity")]
        walker: String,
        #[arg(long, default_value = "breaker.random")]
        breaker: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// walker or breaker; defaults like the batch config
        #[arg(long)]
        first: Option<String>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long, default_value = "1/20")]
        epsilon: String,
        #[arg(long)]
        play_out: bool,
        #[arg(long)]
        flag_audits: bool,
        /// Write the transcript here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a config file and write records.csv and summary.csv
    Batch {
        config: PathBuf,
        /// key=value override, repeatable
        #[arg(long = "set")]
        set: Vec<String>,
    },
    /// Bracket the threshold bias for each n
    Sweep {
        config: PathBuf,
        #[arg(long = "set")]
        set: Vec<String>,
    },
    /// Summarise audit events of a directory of transcripts
    Audit { dir: PathBuf },
    /// Box game tables, or the exact winner of one instance
    Boxgame {
        #[arg(long, default_value_t = 10)]
        k_max: u64,
        #[arg(long, default_value_t = 5)]
        a_max: u64,
        /// Comma-separated box sizes to solve instead of printing tables
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        a: u64,
        /// Let BoxMaker move first when solving
        #[arg(long)]
        maker_first: bool,
    },
}

fn main() -> Result<()> {
    match run(Cli::parse()) {
        // output piped into `head` and the like
        Err(e) if e.chain().any(is_broken_pipe) => Ok(()),
        other => other,
    }
}

fn is_broken_pipe(e: &(dyn std::error::Error + 'static)) -> bool {
    e.downcast_ref::<io::Error>()
        .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Play {
            n,
            b,
            goal,
            walker,
            breaker,
            seed,
            first,
            p,
            epsilon,
            play_out,
            flag_audits,
            out,
        } => {
            let mut params = StrategyParams::new(n, b);
            params.p = p.as_deref().map(parse_ratio).transpose()?;
            params.epsilon = parse_ratio(&epsilon)?;
            if flag_audits {
                params.audit = AuditMode::Flag;
            }
            let mut w = walker_by_name(&walker, &params)?;
            let mut br = breaker_by_name(&breaker, &params)?;
            let first = match first.as_deref() {
                Some("walker") => Player::Walker,
                Some("breaker") => Player::Breaker,
                Some(other) => bail!("--first must be walker or breaker, got {other}"),
                None if breaker == "breaker.isolation" => Player::Walker,
                None => Player::Breaker,
            };
            let mut cfg = MatchConfig::new(n, b, goal, seed).first(first);
            cfg.play_out = play_out || walker == "walker.hamiltonicity";
            cfg.p = p;
            cfg.epsilon = Some(epsilon);
            let game = play_game(&cfg, w.as_mut(), br.as_mut())?;
            match out {
                Some(path) => {
                    let f = std::fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                    game.transcript.write_jsonl(io::BufWriter::new(f))?;
                    eprintln!("{:?} after {} rounds", game.outcome, game.state.round());
                }
                None => game.transcript.write_jsonl(io::stdout().lock())?,
            }
        }
        Cmd::Batch { config, set } => {
            let cfg = ExperimentConfig::load(&config, &set)?;
            let result = run_batch(&cfg)?;
            let dir = cfg.resolved_output_dir();
            write_batch(&dir, &result)?;
            write_csv(io::stdout().lock(), "#schema=cell-summary/1", &result.summary)?;
            eprintln!("wrote {} records to {}", result.records.len(), dir.display());
        }
        Cmd::Sweep { config, set } => {
            let cfg = ExperimentConfig::load(&config, &set)?;
            let result = bias_sweep(&cfg)?;
            let dir = cfg.resolved_output_dir();
            std::fs::create_dir_all(&dir)?;
            write_records(std::fs::File::create(dir.join("sweep_records.csv"))?, &result.records)?;
            write_csv(
                std::fs::File::create(dir.join("sweep.csv"))?,
                "#schema=bias-sweep/1",
                &result.rows,
            )?;
            write_csv(io::stdout().lock(), "#schema=bias-sweep/1", &result.rows)?;
        }
        Cmd::Audit { dir } => {
            let transcripts = read_transcript_dir(&dir)?;
            let report = audit_report(&transcripts);
            let mut out = io::stdout().lock();
            writeln!(out, "# games={} hard={}", report.games, report.hard_total())?;
            write_csv(out, "#schema=audit-report/1", &report.checks)?;
        }
        Cmd::Boxgame {
            k_max,
            a_max,
            sizes,
            a,
            maker_first,
        } => {
            if sizes.is_empty() {
                write_csv(
                    io::stdout().lock(),
                    "#schema=boxgame-table/1",
                    &boxgame_tables(k_max, a_max),
                )?;
            } else {
                let winner = if maker_first {
                    solve_box_game(&sizes, a, BoxPlayer::Maker)?
                } else {
                    exact_box_game_winner(&sizes, a)?
                };
                println!(
                    "{}",
                    if winner == BoxPlayer::Maker {
                        "BoxMaker"
                    } else {
                        "BoxBreaker"
                    }
                );
            }
        }
    }
    Ok(())
}
