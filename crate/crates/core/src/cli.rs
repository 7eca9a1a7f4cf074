//! Configuration and the file artifacts produced by the `affectq` binary.
//!
//! Every file is written to a temporary sibling and renamed into place, so a
//! file either appears complete or not at all. Floats use Rust's shortest
//! round-trip formatting.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::appraisal::{Emotion, DEFAULT_BOOTSTRAP_FACTOR};
use crate::error::{Error, Result};
use crate::experiment::{
    aggregate, default_epsilons, AgentKind, Aggregates, RunSummary, SeedMode, Simulation,
    SweepConfig, SweepTable,
};
use crate::gridworld::{GridPos, GridWorld, DEFAULT_GOAL_REWARD, DEFAULT_STEP_CAP};
use crate::qcore::{LearningParams, DEFAULT_ALPHA, DEFAULT_GAMMA};
use crate::stats::{paired_t_test, TTestResult};

pub const SEED_ENV: &str = "AFFECTQ_SEED";

pub const EPISODES_HEADER: &str =
    "episode,steps,decisions,random_decisions,joy,sadness,anger,fear,norm,exp1,act,truncated";
pub const SWEEP_SUMMARY_HEADER: &str =
    "agent,epsilon,run,first_optimal_episode,total_steps_before_optimal,mean_steps_per_episode";
pub const FIG3_HEADER: &str = "epsilon,mean_steps_standard,mean_steps_affective";
pub const FIG4_HEADER: &str = "epsilon,total_standard,total_affective";
pub const FIG5_HEADER: &str = "episode,joy_frac,sadness_frac,anger_frac,fear_frac";
pub const FIG6_HEADER: &str = "episode,equivalent_epsilon";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub width: usize,
    pub height: usize,
    pub start: GridPos,
    pub goal: GridPos,
    pub alpha: f64,
    pub gamma: f64,
    pub goal_reward: f64,
    pub episodes: usize,
    pub runs: usize,
    pub epsilon_list: Vec<f64>,
    pub master_seed: u64,
    pub step_cap: u64,
    pub bootstrap_factor: f64,
    pub out: PathBuf,
    pub format: OutputFormat,
    pub seed_mode: SeedMode,
    #[serde(skip)]
    pub workers: usize,
}

impl Config {
    pub fn new(master_seed: u64) -> Self {
        Self {
            width: 15,
            height: 15,
            start: GridPos::new(0, 0),
            goal: GridPos::new(6, 6),
            alpha: DEFAULT_ALPHA,
            gamma: DEFAULT_GAMMA,
            goal_reward: DEFAULT_GOAL_REWARD,
            episodes: 200,
            runs: 20,
            epsilon_list: default_epsilons(),
            master_seed,
            step_cap: DEFAULT_STEP_CAP,
            bootstrap_factor: DEFAULT_BOOTSTRAP_FACTOR,
            out: PathBuf::from("out"),
            format: OutputFormat::Csv,
            seed_mode: SeedMode::PerCell,
            workers: 0,
        }
    }

    pub fn world(&self) -> Result<GridWorld> {
        GridWorld::new(
            self.width,
            self.height,
            self.start,
            self.goal,
            self.goal_reward,
        )
    }

    pub fn simulation(&self, epsilon: f64) -> Result<Simulation> {
        let params = LearningParams::new(self.alpha, self.gamma, epsilon)?;
        let sim = Simulation {
            world: self.world()?,
            params,
            step_cap: self.step_cap,
            bootstrap_factor: self.bootstrap_factor,
        };
        sim.validate()?;
        Ok(sim)
    }

    pub fn sweep_config(&self) -> Result<SweepConfig> {
        let first = self.epsilon_list.first().copied().unwrap_or(0.0);
        let cfg = SweepConfig {
            simulation: self.simulation(first)?,
            epsilons: self.epsilon_list.clone(),
            runs: self.runs,
            episodes: self.episodes,
            master_seed: self.master_seed,
            seed_mode: self.seed_mode,
            workers: self.workers,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Writes `contents` to `path` via a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn csv_table(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut s = String::with_capacity(4096);
    s.push_str(header);
    s.push('\n');
    for row in rows {
        s.push_str(&row);
        s.push('\n');
    }
    s
}

pub fn episodes_csv(run: &RunSummary) -> String {
    csv_table(
        EPISODES_HEADER,
        run.episodes.iter().map(|e| {
            let mut row = format!(
                "{},{},{},{}",
                e.index, e.steps, e.decisions, e.random_decisions
            );
            for em in Emotion::ALL {
                let _ = write!(row, ",{}", e.tally(em));
            }
            let _ = write!(
                row,
                ",{},{},{},{}",
                e.norm, e.exp1_final, e.act_final, e.truncated as u8
            );
            row
        }),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummaryRow {
    pub agent: AgentKind,
    pub epsilon: f64,
    pub run: usize,
    pub first_optimal_episode: Option<usize>,
    pub total_steps_before_optimal: u64,
    pub mean_steps_per_episode: f64,
}

pub fn sweep_summary_rows(table: &SweepTable) -> Vec<SweepSummaryRow> {
    table
        .cells
        .iter()
        .map(|(k, r)| SweepSummaryRow {
            agent: k.agent,
            epsilon: table.config.epsilons[k.epsilon_index],
            run: k.run + 1,
            first_optimal_episode: r.first_optimal_episode,
            total_steps_before_optimal: r.total_steps_before_optimal,
            mean_steps_per_episode: r.mean_steps(),
        })
        .collect()
}

/// The two paired tests (standard vs affective, paired by epsilon): mean
/// steps per episode and total steps before the optimal path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairedTables {
    pub steps_per_episode: Option<TTestResult>,
    pub total_steps_before_optimal: Option<TTestResult>,
}

pub fn paired_tables(agg: &Aggregates) -> PairedTables {
    let col = |f: fn(&crate::experiment::EpsilonRow) -> f64| -> Vec<f64> {
        agg.per_epsilon.iter().map(f).collect()
    };
    PairedTables {
        steps_per_episode: paired_t_test(
            &col(|r| r.mean_steps_standard),
            &col(|r| r.mean_steps_affective),
        )
        .ok(),
        total_steps_before_optimal: paired_t_test(
            &col(|r| r.total_standard),
            &col(|r| r.total_affective),
        )
        .ok(),
    }
}

/// Rendered sweep artifacts, file name to contents.
pub fn sweep_artifacts(table: &SweepTable, format: OutputFormat) -> Result<Vec<(String, String)>> {
    let agg = aggregate(table);
    let ext = format.extension();
    let mut files = Vec::new();

    let summary = sweep_summary_rows(table);
    let fig5: Vec<(usize, [f64; 4])> = agg
        .emotion_profile
        .iter()
        .enumerate()
        .map(|(i, s)| (i + 1, *s))
        .collect();
    let fig6: Vec<(usize, f64)> = agg
        .equivalent_epsilon
        .iter()
        .enumerate()
        .map(|(i, e)| (i + 1, *e))
        .collect();

    match format {
        OutputFormat::Csv => {
            files.push(("sweep_summary.csv".to_string(), table_csv_summary(&summary)));
            files.push((
                "fig3.csv".to_string(),
                csv_table(
                    FIG3_HEADER,
                    agg.per_epsilon.iter().map(|r| {
                        format!(
                            "{},{},{}",
                            r.epsilon, r.mean_steps_standard, r.mean_steps_affective
                        )
                    }),
                ),
            ));
            files.push((
                "fig4.csv".to_string(),
                csv_table(
                    FIG4_HEADER,
                    agg.per_epsilon.iter().map(|r| {
                        format!("{},{},{}", r.epsilon, r.total_standard, r.total_affective)
                    }),
                ),
            ));
            files.push((
                "fig5.csv".to_string(),
                csv_table(
                    FIG5_HEADER,
                    fig5.iter()
                        .map(|(i, s)| format!("{},{},{},{},{}", i, s[0], s[1], s[2], s[3])),
                ),
            ));
            files.push((
                "fig6.csv".to_string(),
                csv_table(FIG6_HEADER, fig6.iter().map(|(i, e)| format!("{i},{e}"))),
            ));
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Fig3Row {
                epsilon: f64,
                mean_steps_standard: f64,
                mean_steps_affective: f64,
            }
            #[derive(Serialize)]
            struct Fig4Row {
                epsilon: f64,
                total_standard: f64,
                total_affective: f64,
            }
            #[derive(Serialize)]
            struct Fig5Row {
                episode: usize,
                joy_frac: f64,
                sadness_frac: f64,
                anger_frac: f64,
                fear_frac: f64,
            }
            #[derive(Serialize)]
            struct Fig6Row {
                episode: usize,
                equivalent_epsilon: f64,
            }
            let fig3: Vec<Fig3Row> = agg
                .per_epsilon
                .iter()
                .map(|r| Fig3Row {
                    epsilon: r.epsilon,
                    mean_steps_standard: r.mean_steps_standard,
                    mean_steps_affective: r.mean_steps_affective,
                })
                .collect();
            let fig4: Vec<Fig4Row> = agg
                .per_epsilon
                .iter()
                .map(|r| Fig4Row {
                    epsilon: r.epsilon,
                    total_standard: r.total_standard,
                    total_affective: r.total_affective,
                })
                .collect();
            let fig5: Vec<Fig5Row> = fig5
                .iter()
                .map(|(i, s)| Fig5Row {
                    episode: *i,
                    joy_frac: s[0],
                    sadness_frac: s[1],
                    anger_frac: s[2],
                    fear_frac: s[3],
                })
                .collect();
            let fig6: Vec<Fig6Row> = fig6
                .iter()
                .map(|(i, e)| Fig6Row {
                    episode: *i,
                    equivalent_epsilon: *e,
                })
                .collect();
            files.push((format!("sweep_summary.{ext}"), to_json(&summary)?));
            files.push((format!("fig3.{ext}"), to_json(&fig3)?));
            files.push((format!("fig4.{ext}"), to_json(&fig4)?));
            files.push((format!("fig5.{ext}"), to_json(&fig5)?));
            files.push((format!("fig6.{ext}"), to_json(&fig6)?));
        }
    }
    files.push(("tables.json".to_string(), to_json(&paired_tables(&agg))?));
    Ok(files)
}

fn table_csv_summary(rows: &[SweepSummaryRow]) -> String {
    csv_table(
        SWEEP_SUMMARY_HEADER,
        rows.iter().map(|r| {
            format!(
                "{},{},{},{},{},{}",
                r.agent.name(),
                r.epsilon,
                r.run,
                r.first_optimal_episode
                    .map(|i| i.to_string())
                    .unwrap_or_default(),
                r.total_steps_before_optimal,
                r.mean_steps_per_episode
            )
        }),
    )
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn write_all(out: &Path, files: &[(String, String)]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out)?;
    files
        .iter()
        .map(|(name, contents)| {
            let path = out.join(name);
            write_atomic(&path, contents.as_bytes())?;
            Ok(path)
        })
        .collect()
}

/// Runs a single agent and writes `episodes.csv` (or `.json`).
pub fn cmd_run(agent: AgentKind, epsilon: f64, config: &Config) -> Result<(RunSummary, PathBuf)> {
    let sim = config.simulation(epsilon)?;
    let seed = SweepConfig {
        simulation: sim.clone(),
        epsilons: vec![epsilon],
        runs: 1,
        episodes: config.episodes,
        master_seed: config.master_seed,
        seed_mode: config.seed_mode,
        workers: 1,
    }
    .run_seed(agent, 0, 0);
    let run = sim.run(agent, config.episodes, seed)?;
    let contents = match config.format {
        OutputFormat::Csv => episodes_csv(&run),
        OutputFormat::Json => to_json(&run.episodes)?,
    };
    let name = format!("episodes.{}", config.format.extension());
    let paths = write_all(&config.out, &[(name, contents)])?;
    Ok((run, paths.into_iter().next().expect("one file written")))
}

/// Runs the full sweep and writes the summary, figure series and t-test
/// tables.
pub fn cmd_sweep(config: &Config) -> Result<(SweepTable, Vec<PathBuf>)> {
    let table = crate::experiment::sweep(&config.sweep_config()?)?;
    let files = sweep_artifacts(&table, config.format)?;
    let paths = write_all(&config.out, &files)?;
    Ok((table, paths))
}

/// Reads one number per line. Blank lines are skipped and a non-numeric first
/// line is treated as a header.
pub fn read_column(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match line.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if i == 0 => continue,
            Err(e) => {
                return Err(Error::Parse(format!(
                    "{}:{}: {line:?}: {e}",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(values)
}

pub fn cmd_stats(file_a: &Path, file_b: &Path) -> Result<TTestResult> {
    let a = read_column(file_a)?;
    let b = read_column(file_b)?;
    paired_t_test(&a, &b)
}
