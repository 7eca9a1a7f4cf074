//! Tabular Q-learning on a grid-world pursuit task, with an affective agent
//! whose appraisal of its own progress (joy, sadness, anger, fear) picks both
//! the direction policy and the movement speed.
//!
//! The crate is organised bottom-up:
//!
//! * [`gridworld`]: the environment.
//! * [`qcore`]: Q-table, TD update, greedy and epsilon-greedy selection.
//! * [`appraisal`]: power-law norm, expected and actual path lengths, emotion.
//! * [`affective`]: emotion to direction and speed, multi-cell moves.
//! * [`experiment`]: episodes, runs, the epsilon sweep and aggregate metrics.
//! * [`stats`]: mean, variance, Pearson, paired t-test, Student-t.
//! * [`cli`]: configuration and the file artifacts behind the `affectq` binary.

pub mod affective;
pub mod appraisal;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod gridworld;
pub mod qcore;
pub mod rng;
pub mod stats;

pub use affective::{decide, execute_move, MoveDecision, MoveOutcome};
pub use appraisal::{classify, fit_power_regression, AppraisalState, Emotion, PowerFit};
pub use error::{Error, Result};
pub use experiment::{
    aggregate, equivalent_epsilon, first_optimal_episode, sweep, total_steps_before_optimal,
    AgentKind, Aggregates, EpisodeRecord, RunSummary, SeedMode, Simulation, SweepConfig,
    SweepTable,
};
pub use gridworld::{Action, GridPos, GridWorld};
pub use qcore::{epsilon_greedy, greedy_action, td_update, LearningParams, QTable};
pub use rng::SplitMix64;
pub use stats::{paired_t_test, pearson, t_cdf, t_critical, TTestResult, Tails};
