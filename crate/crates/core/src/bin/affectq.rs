use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use affectq::cli::{cmd_run, cmd_stats, cmd_sweep, Config, OutputFormat, SEED_ENV};
use affectq::experiment::{AgentKind, SeedMode};
use affectq::GridPos;

#[derive(Parser)]
#[command(
    name = "affectq",
    version,
    about = "Affective vs epsilon-greedy Q-learning on a grid pursuit task"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one agent and write per-episode records.
    Run {
        #[arg(long, value_enum, default_value = "standard")]
        agent: Agent,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Run both agents over the epsilon sweep and write figure data and t-test tables.
    Sweep {
        /// Comma-separated epsilon values.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"
        )]
        epsilon: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        runs: usize,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Reuse the same run seeds in every epsilon cell.
        #[arg(long)]
        shared_seeds: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Paired t-test of two single-column numeric files, printed as JSON.
    Stats { file_a: PathBuf, file_b: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Agent {
    Standard,
    Affective,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    #[arg(long, env = SEED_ENV)]
    seed: u64,
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    #[arg(long, default_value_t = 0.9)]
    gamma: f64,
    #[arg(long, default_value_t = 100.0)]
    goal_reward: f64,
    #[arg(long, default_value_t = 200)]
    episodes: usize,
    #[arg(long, default_value_t = 15)]
    width: usize,
    #[arg(long, default_value_t = 15)]
    height: usize,
    /// Start cell as "x,y".
    #[arg(long, default_value = "0,0")]
    start: GridPos,
    /// Goal cell as "x,y".
    #[arg(long, default_value = "6,6")]
    goal: GridPos,
    #[arg(long, default_value_t = 10_000)]
    step_cap: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

impl Common {
    fn config(&self) -> Config {
        Config {
            width: self.width,
            height: self.height,
            start: self.start,
            goal: self.goal,
            alpha: self.alpha,
            gamma: self.gamma,
            goal_reward: self.goal_reward,
            episodes: self.episodes,
            out: self.out.clone(),
            format: match self.format {
                Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            },
            step_cap: self.step_cap,
            ..Config::new(self.seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            agent,
            epsilon,
            common,
        } => {
            let agent = match agent {
                Agent::Standard => AgentKind::Standard,
                Agent::Affective => AgentKind::Affective,
            };
            cmd_run(agent, epsilon, &common.config()).map(|(run, path)| {
                eprintln!(
                    "{} episodes, first optimal: {:?}, wrote {}",
                    run.episodes.len(),
                    run.first_optimal_episode,
                    path.display()
                );
            })
        }
        Command::Sweep {
            epsilon,
            runs,
            workers,
            shared_seeds,
            common,
        } => {
            let config = Config {
                epsilon_list: epsilon,
                runs,
                workers,
                seed_mode: if shared_seeds {
                    SeedMode::SharedAcrossEpsilon
                } else {
                    SeedMode::PerCell
                },
                ..common.config()
            };
            cmd_sweep(&config).map(|(table, paths)| {
                eprintln!("{} runs", table.cells.len());
                for p in paths {
                    eprintln!("wrote {}", p.display());
                }
            })
        }
        Command::Stats { file_a, file_b } => cmd_stats(&file_a, &file_b).and_then(|r| {
            println!("{}", serde_json::to_string_pretty(&r)?);
            Ok(())
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
