//! Tabular Q-learning: the temporal-difference update, greedy selection with
//! random tie-breaking, and the epsilon-greedy policy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gridworld::{Action, GridPos, GridWorld};
use crate::rng::SplitMix64;

pub const DEFAULT_ALPHA: f64 = 0.1;
pub const DEFAULT_GAMMA: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LearningParams {
    pub alpha: f64,
    pub gamma: f64,
    pub epsilon: f64,
}

impl LearningParams {
    pub fn new(alpha: f64, gamma: f64, epsilon: f64) -> Result<Self> {
        let p = Self {
            alpha,
            gamma,
            epsilon,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        if !(self.gamma >= 0.0 && self.gamma < 1.0) {
            return Err(Error::InvalidParams(format!(
                "gamma must lie in [0, 1), got {}",
                self.gamma
            )));
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::InvalidParams(format!(
                "epsilon must lie in [0, 1], got {}",
                self.epsilon
            )));
        }
        Ok(())
    }

    pub fn with_epsilon(self, epsilon: f64) -> Self {
        Self { epsilon, ..self }
    }
}

impl Default for LearningParams {
    fn default() -> Self {
        Self {
            alpha: DEFAULT_ALPHA,
            gamma: DEFAULT_GAMMA,
            epsilon: 0.1,
        }
    }
}

/// Dense Q-table over every cell of a world. Unvisited entries read as 0.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    width: usize,
    height: usize,
    values: Vec<[f64; 4]>,
}

impl QTable {
    pub fn new(world: &GridWorld) -> Self {
        Self {
            width: world.width(),
            height: world.height(),
            values: vec![[0.0; 4]; world.cells()],
        }
    }

    #[inline]
    fn slot(&self, s: GridPos) -> usize {
        debug_assert!(s.x < self.width && s.y < self.height, "{s} outside table");
        s.y * self.width + s.x
    }

    #[inline]
    pub fn get(&self, s: GridPos, a: Action) -> f64 {
        self.values[self.slot(s)][a.index()]
    }

    /// Stores a value. Non-finite values are rejected.
    pub fn set(&mut self, s: GridPos, a: Action, v: f64) -> Result<()> {
        if !v.is_finite() {
            return Err(Error::NonFinite("Q value"));
        }
        let i = self.slot(s);
        self.values[i][a.index()] = v;
        Ok(())
    }

    #[inline]
    pub fn row(&self, s: GridPos) -> &[f64; 4] {
        &self.values[self.slot(s)]
    }

    #[inline]
    pub fn max_value(&self, s: GridPos) -> f64 {
        self.row(s)
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn iter(&self) -> impl Iterator<Item = (GridPos, Action, f64)> + '_ {
        let w = self.width;
        self.values.iter().enumerate().flat_map(move |(i, row)| {
            let p = GridPos::new(i % w, i / w);
            Action::ALL.into_iter().map(move |a| (p, a, row[a.index()]))
        })
    }
}

/// Applies one TD update to `Q(s, a)` and returns the new value:
///
/// `Q(s,a) <- Q(s,a) + alpha * (r + gamma * max_b Q(s', b) - Q(s,a))`
pub fn td_update(
    q: &mut QTable,
    s: GridPos,
    a: Action,
    reward: f64,
    s_next: GridPos,
    params: &LearningParams,
) -> Result<f64> {
    if !reward.is_finite() {
        return Err(Error::NonFinite("reward"));
    }
    let old = q.get(s, a);
    let target = reward + params.gamma * q.max_value(s_next);
    let new = old + params.alpha * (target - old);
    q.set(s, a, new)?;
    Ok(new)
}

/// An argmax action of `Q(s, ·)`, ties broken uniformly at random.
pub fn greedy_action(q: &QTable, s: GridPos, rng: &mut SplitMix64) -> Action {
    let row = q.row(s);
    let best = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut tied = [Action::Up; 4];
    let mut n = 0;
    for a in Action::ALL {
        if row[a.index()] == best {
            tied[n] = a;
            n += 1;
        }
    }
    if n == 1 {
        tied[0]
    } else {
        tied[rng.below(n)]
    }
}

/// Outcome of an epsilon-greedy draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Selection {
    pub action: Action,
    /// The action came from the uniform exploration branch.
    pub explored: bool,
}

/// With probability epsilon a uniformly random action (any of the four),
/// otherwise [`greedy_action`].
pub fn epsilon_greedy(
    q: &QTable,
    s: GridPos,
    params: &LearningParams,
    rng: &mut SplitMix64,
) -> Selection {
    if rng.chance(params.epsilon) {
        Selection {
            action: Action::from_index(rng.below(4)),
            explored: true,
        }
    } else {
        Selection {
            action: greedy_action(q, s, rng),
            explored: false,
        }
    }
}
