//! Episodes, runs and the epsilon sweep, plus the metrics computed over them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affective::{decide, execute_move};
use crate::appraisal::{AppraisalState, Emotion, DEFAULT_BOOTSTRAP_FACTOR};
use crate::error::{Error, Result};
use crate::gridworld::{GridPos, GridWorld, DEFAULT_STEP_CAP};
use crate::qcore::{epsilon_greedy, td_update, LearningParams, QTable};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AgentKind {
    Standard,
    Affective,
}

impl AgentKind {
    pub const ALL: [AgentKind; 2] = [AgentKind::Standard, AgentKind::Affective];

    pub fn ordinal(self) -> u64 {
        self as u64
    }

    pub fn name(self) -> &'static str {
        match self {
            AgentKind::Standard => "standard",
            AgentKind::Affective => "affective",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeRecord {
    /// 1-based.
    pub index: usize,
    /// Cells moved, with each zero-speed decision counted as one.
    pub steps: u64,
    pub decisions: u64,
    /// Decisions whose direction was drawn uniformly at random.
    pub random_decisions: u64,
    /// Decisions per emotion, indexed by [`Emotion::index`].
    pub emotion_tally: [u64; 4],
    pub truncated: bool,
    pub norm: f64,
    pub exp1_final: f64,
    pub act_final: f64,
}

impl EpisodeRecord {
    fn empty(index: usize) -> Self {
        Self {
            index,
            steps: 0,
            decisions: 0,
            random_decisions: 0,
            emotion_tally: [0; 4],
            truncated: false,
            norm: 0.0,
            exp1_final: 0.0,
            act_final: 0.0,
        }
    }

    pub fn tally(&self, e: Emotion) -> u64 {
        self.emotion_tally[e.index()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquivalentEpsilon {
    pub value: f64,
    /// False when the episode had no decisions; `value` is then 0.
    pub defined: bool,
}

/// Share of an episode's decisions that picked a direction at random.
pub fn equivalent_epsilon(record: &EpisodeRecord) -> EquivalentEpsilon {
    if record.decisions == 0 {
        EquivalentEpsilon {
            value: 0.0,
            defined: false,
        }
    } else {
        EquivalentEpsilon {
            value: record.random_decisions as f64 / record.decisions as f64,
            defined: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub agent_kind: AgentKind,
    pub epsilon: f64,
    pub seed: u64,
    pub optimal_steps: u64,
    pub episodes: Vec<EpisodeRecord>,
    pub first_optimal_episode: Option<usize>,
    pub total_steps_before_optimal: u64,
}

impl RunSummary {
    pub fn new(
        agent_kind: AgentKind,
        epsilon: f64,
        seed: u64,
        optimal_steps: u64,
        episodes: Vec<EpisodeRecord>,
    ) -> Self {
        let first = first_optimal_index(&episodes, optimal_steps);
        let total = steps_before(&episodes, first);
        Self {
            agent_kind,
            epsilon,
            seed,
            optimal_steps,
            episodes,
            first_optimal_episode: first,
            total_steps_before_optimal: total,
        }
    }

    pub fn mean_steps(&self) -> f64 {
        if self.episodes.is_empty() {
            return 0.0;
        }
        self.episodes.iter().map(|e| e.steps as f64).sum::<f64>() / self.episodes.len() as f64
    }

    pub fn truncated_episodes(&self) -> usize {
        self.episodes.iter().filter(|e| e.truncated).count()
    }
}

fn first_optimal_index(episodes: &[EpisodeRecord], optimal_steps: u64) -> Option<usize> {
    episodes
        .iter()
        .find(|e| !e.truncated && e.steps == optimal_steps)
        .map(|e| e.index)
}

fn steps_before(episodes: &[EpisodeRecord], first: Option<usize>) -> u64 {
    episodes
        .iter()
        .take_while(|e| first.is_none_or(|f| e.index < f))
        .map(|e| e.steps)
        .sum()
}

/// Index of the first episode completed in exactly the optimal number of steps.
pub fn first_optimal_episode(run: &RunSummary) -> Option<usize> {
    first_optimal_index(&run.episodes, run.optimal_steps)
}

/// Steps spent in all episodes before the first optimal one (all episodes if
/// none was optimal).
pub fn total_steps_before_optimal(run: &RunSummary) -> u64 {
    steps_before(&run.episodes, first_optimal_episode(run))
}

/// Everything fixed across the runs of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Simulation {
    pub world: GridWorld,
    pub params: LearningParams,
    pub step_cap: u64,
    pub bootstrap_factor: f64,
}

impl Simulation {
    pub fn new(world: GridWorld, params: LearningParams) -> Self {
        Self {
            world,
            params,
            step_cap: DEFAULT_STEP_CAP,
            bootstrap_factor: DEFAULT_BOOTSTRAP_FACTOR,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.step_cap == 0 {
            return Err(Error::InvalidParams("step cap must be positive".into()));
        }
        if !(self.bootstrap_factor.is_finite() && self.bootstrap_factor > 0.0) {
            return Err(Error::InvalidParams(format!(
                "bootstrap factor must be positive, got {}",
                self.bootstrap_factor
            )));
        }
        Ok(())
    }

    pub fn fresh_appraisal(&self) -> AppraisalState {
        AppraisalState::new(&self.world, self.bootstrap_factor)
    }

    /// Runs one episode from the start cell. `appraisal` is only consulted by
    /// the affective agent.
    pub fn run_episode(
        &self,
        kind: AgentKind,
        q: &mut QTable,
        appraisal: &mut AppraisalState,
        rng: &mut SplitMix64,
        index: usize,
    ) -> Result<EpisodeRecord> {
        match kind {
            AgentKind::Standard => self.standard_episode(q, rng, index),
            AgentKind::Affective => self.affective_episode(q, appraisal, rng, index),
        }
    }

    fn standard_episode(
        &self,
        q: &mut QTable,
        rng: &mut SplitMix64,
        index: usize,
    ) -> Result<EpisodeRecord> {
        let mut rec = EpisodeRecord::empty(index);
        let mut pos = self.world.start();
        let mut done = false;
        while !done && rec.steps < self.step_cap {
            let sel = epsilon_greedy(q, pos, &self.params, rng);
            let out = self.world.step(pos, sel.action)?;
            td_update(q, pos, sel.action, out.reward, out.next, &self.params)?;
            pos = out.next;
            done = out.done;
            rec.steps += 1;
            rec.decisions += 1;
            rec.random_decisions += sel.explored as u64;
        }
        rec.truncated = !done;
        Ok(rec)
    }

    fn affective_episode(
        &self,
        q: &mut QTable,
        appraisal: &mut AppraisalState,
        rng: &mut SplitMix64,
        index: usize,
    ) -> Result<EpisodeRecord> {
        let mut rec = EpisodeRecord::empty(index);
        let mut pos = self.world.start();
        let mut done = false;
        // (cell, step count on arrival)
        let mut visits: Vec<(GridPos, u64)> = vec![(pos, 0)];

        appraisal.begin_episode(index);
        rec.norm = appraisal.norm();
        while !done && rec.steps < self.step_cap {
            appraisal.on_step(rec.steps, pos);
            let emotion = appraisal.emotion();
            rec.emotion_tally[emotion.index()] += 1;
            let decision = decide(emotion, q, pos, rng);
            rec.random_decisions += decision.random_direction as u64;
            rec.decisions += 1;

            let out = execute_move(&self.world, q, pos, decision, &self.params)?;
            for (i, &cell) in out.visited.iter().enumerate() {
                visits.push((cell, rec.steps + i as u64 + 1));
            }
            rec.steps += out.cells_moved.max(1) as u64;
            pos = out.final_pos;
            done = out.done;
        }
        rec.truncated = !done;
        if rec.truncated {
            rec.steps = rec.steps.min(self.step_cap);
        }
        rec.exp1_final = appraisal.exp1();
        rec.act_final = appraisal.act();

        let total = rec.steps;
        let trajectory: Vec<(GridPos, u64)> = if done {
            visits.into_iter().map(|(p, at)| (p, total - at)).collect()
        } else {
            Vec::new()
        };
        appraisal.end_episode(total, &trajectory, done)?;
        Ok(rec)
    }

    /// A full run with a fresh Q-table and appraisal state.
    pub fn run(&self, kind: AgentKind, episodes: usize, seed: u64) -> Result<RunSummary> {
        let q = QTable::new(&self.world);
        self.run_from(kind, q, episodes, seed)
    }

    /// A run starting from a given Q-table.
    pub fn run_from(
        &self,
        kind: AgentKind,
        mut q: QTable,
        episodes: usize,
        seed: u64,
    ) -> Result<RunSummary> {
        self.validate()?;
        let mut appraisal = self.fresh_appraisal();
        let mut rng = SplitMix64::new(seed);
        let records = (1..=episodes)
            .map(|i| self.run_episode(kind, &mut q, &mut appraisal, &mut rng, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(RunSummary::new(
            kind,
            self.params.epsilon,
            seed,
            self.world.optimal_steps() as u64,
            records,
        ))
    }
}

/// How run seeds are derived from the master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedMode {
    /// Every (agent, epsilon, run) cell gets its own stream.
    #[default]
    PerCell,
    /// Cells that differ only in epsilon share a stream.
    SharedAcrossEpsilon,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub simulation: Simulation,
    pub epsilons: Vec<f64>,
    pub runs: usize,
    pub episodes: usize,
    pub master_seed: u64,
    pub seed_mode: SeedMode,
    /// Worker threads; 0 uses rayon's default.
    #[serde(skip)]
    pub workers: usize,
}

/// 0.1, 0.2, ..., 0.9
pub fn default_epsilons() -> Vec<f64> {
    (1..=9).map(|k| k as f64 / 10.0).collect()
}

impl SweepConfig {
    pub fn standard(master_seed: u64) -> Self {
        Self {
            simulation: Simulation::new(GridWorld::standard(), LearningParams::default()),
            epsilons: default_epsilons(),
            runs: 20,
            episodes: 200,
            master_seed,
            seed_mode: SeedMode::PerCell,
            workers: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.simulation.validate()?;
        if let Some(e) = self.epsilons.iter().find(|e| !(0.0..=1.0).contains(*e)) {
            return Err(Error::InvalidParams(format!("epsilon {e} outside [0, 1]")));
        }
        if self.epsilons.is_empty() || self.runs == 0 || self.episodes == 0 {
            return Err(Error::InvalidParams(
                "sweep needs at least one epsilon, run and episode".into(),
            ));
        }
        Ok(())
    }

    pub fn run_seed(&self, kind: AgentKind, epsilon_index: usize, run: usize) -> u64 {
        let eps_coord = match self.seed_mode {
            SeedMode::PerCell => epsilon_index as u64,
            SeedMode::SharedAcrossEpsilon => 0,
        };
        SplitMix64::derive_seed(self.master_seed, &[kind.ordinal(), eps_coord, run as u64])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellKey {
    pub agent: AgentKind,
    pub epsilon_index: usize,
    pub run: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub config: SweepConfig,
    pub cells: BTreeMap<CellKey, RunSummary>,
}

impl SweepTable {
    pub fn runs_for(
        &self,
        agent: AgentKind,
        epsilon_index: usize,
    ) -> impl Iterator<Item = &RunSummary> + '_ {
        self.cells
            .range(
                CellKey {
                    agent,
                    epsilon_index,
                    run: 0,
                }..=CellKey {
                    agent,
                    epsilon_index,
                    run: usize::MAX,
                },
            )
            .map(|(_, r)| r)
    }

    pub fn runs_of(&self, agent: AgentKind) -> impl Iterator<Item = &RunSummary> + '_ {
        self.cells
            .iter()
            .filter(move |(k, _)| k.agent == agent)
            .map(|(_, r)| r)
    }
}

/// Runs every (agent, epsilon, run) cell. Output does not depend on the
/// number of workers.
pub fn sweep(config: &SweepConfig) -> Result<SweepTable> {
    config.validate()?;
    let keys: Vec<CellKey> = AgentKind::ALL
        .into_iter()
        .flat_map(|agent| {
            (0..config.epsilons.len()).flat_map(move |epsilon_index| {
                (0..config.runs).map(move |run| CellKey {
                    agent,
                    epsilon_index,
                    run,
                })
            })
        })
        .collect();

    let run_cell = |key: &CellKey| -> Result<(CellKey, RunSummary)> {
        let eps = config.epsilons[key.epsilon_index];
        let sim = Simulation {
            params: config.simulation.params.with_epsilon(eps),
            ..config.simulation.clone()
        };
        let seed = config.run_seed(key.agent, key.epsilon_index, key.run);
        Ok((*key, sim.run(key.agent, config.episodes, seed)?))
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
    let results: Vec<(CellKey, RunSummary)> =
        pool.install(|| keys.par_iter().map(run_cell).collect::<Result<_>>())?;

    Ok(SweepTable {
        config: config.clone(),
        cells: results.into_iter().collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsilonRow {
    pub epsilon: f64,
    pub mean_steps_standard: f64,
    pub mean_steps_affective: f64,
    pub total_standard: f64,
    pub total_affective: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregates {
    pub per_epsilon: Vec<EpsilonRow>,
    /// Mean per-episode emotion shares of the affective agent, indexed by
    /// episode then [`Emotion::index`].
    pub emotion_profile: Vec<[f64; 4]>,
    /// Mean per-episode equivalent epsilon of the affective agent.
    pub equivalent_epsilon: Vec<f64>,
    /// Mean first-optimal episode of affective runs that found one.
    pub affective_mean_first_optimal: Option<f64>,
    pub affective_runs_without_optimal: usize,
    /// Share of all affective decisions taken under each emotion.
    pub affective_emotion_share: [f64; 4],
    pub truncated_episodes: usize,
}

fn mean_of(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

/// Figure-ready series and per-epsilon summaries of a sweep.
pub fn aggregate(table: &SweepTable) -> Aggregates {
    let per_epsilon = table
        .config
        .epsilons
        .iter()
        .enumerate()
        .map(|(i, &epsilon)| {
            let steps = |agent| {
                mean_of(
                    table
                        .runs_for(agent, i)
                        .flat_map(|r| r.episodes.iter().map(|e| e.steps as f64)),
                )
            };
            let totals = |agent| {
                mean_of(
                    table
                        .runs_for(agent, i)
                        .map(|r| r.total_steps_before_optimal as f64),
                )
            };
            EpsilonRow {
                epsilon,
                mean_steps_standard: steps(AgentKind::Standard),
                mean_steps_affective: steps(AgentKind::Affective),
                total_standard: totals(AgentKind::Standard),
                total_affective: totals(AgentKind::Affective),
            }
        })
        .collect();

    let affective: Vec<&RunSummary> = table.runs_of(AgentKind::Affective).collect();
    let n_episodes = affective
        .iter()
        .map(|r| r.episodes.len())
        .max()
        .unwrap_or(0);
    let mut emotion_profile = Vec::with_capacity(n_episodes);
    let mut equivalent = Vec::with_capacity(n_episodes);
    for ep in 0..n_episodes {
        let records: Vec<&EpisodeRecord> = affective
            .iter()
            .filter_map(|r| r.episodes.get(ep))
            .collect();
        let mut shares = [0.0; 4];
        for e in Emotion::ALL {
            shares[e.index()] = mean_of(
                records
                    .iter()
                    .filter(|r| r.decisions > 0)
                    .map(|r| r.tally(e) as f64 / r.decisions as f64),
            );
        }
        emotion_profile.push(shares);
        equivalent.push(mean_of(
            records
                .iter()
                .map(|r| equivalent_epsilon(r))
                .filter(|q| q.defined)
                .map(|q| q.value),
        ));
    }

    let found: Vec<f64> = affective
        .iter()
        .filter_map(|r| r.first_optimal_episode.map(|i| i as f64))
        .collect();
    let mut tally = [0u64; 4];
    for r in &affective {
        for e in &r.episodes {
            for (t, c) in tally.iter_mut().zip(e.emotion_tally) {
                *t += c;
            }
        }
    }
    let total_decisions: u64 = tally.iter().sum();
    let affective_emotion_share = tally.map(|c| {
        if total_decisions == 0 {
            0.0
        } else {
            c as f64 / total_decisions as f64
        }
    });

    Aggregates {
        per_epsilon,
        emotion_profile,
        equivalent_epsilon: equivalent,
        affective_mean_first_optimal: (!found.is_empty()).then(|| mean_of(found.iter().copied())),
        affective_runs_without_optimal: affective.len() - found.len(),
        affective_emotion_share,
        truncated_episodes: table
            .cells
            .values()
            .map(RunSummary::truncated_episodes)
            .sum(),
    }
}
