//! Bounded 2-D pursuit environment with a static goal.
//!
//! Coordinates: `x` is the column, `y` the row, origin at the top-left.
//! `Down` therefore increases `y`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_GOAL_REWARD: f64 = 100.0;
pub const DEFAULT_STEP_CAP: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPos {
    pub x: usize,
    pub y: usize,
}

impl GridPos {
    pub const fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }

    pub fn manhattan(self, other: GridPos) -> usize {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y)
    }
}

impl fmt::Display for GridPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Parses `"x,y"`.
impl FromStr for GridPos {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (x, y) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected \"x,y\", got {s:?}")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad coordinate {v:?}: {e}")))
        };
        Ok(GridPos::new(parse(x)?, parse(y)?))
    }
}

/// The four moves, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    Up,
    Down,
    Left,
    Right,
}

impl Action {
    pub const ALL: [Action; 4] = [Action::Up, Action::Down, Action::Left, Action::Right];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub const fn from_index(i: usize) -> Action {
        Action::ALL[i]
    }

    /// (dx, dy) for this move.
    pub const fn delta(self) -> (isize, isize) {
        match self {
            Action::Up => (0, -1),
            Action::Down => (0, 1),
            Action::Left => (-1, 0),
            Action::Right => (1, 0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome {
    pub next: GridPos,
    pub reward: f64,
    pub done: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridWorld {
    width: usize,
    height: usize,
    start: GridPos,
    goal: GridPos,
    goal_reward: f64,
}

impl GridWorld {
    pub fn new(
        width: usize,
        height: usize,
        start: GridPos,
        goal: GridPos,
        goal_reward: f64,
    ) -> Result<Self> {
        if width < 2 || height < 2 {
            return Err(Error::InvalidWorld(format!(
                "grid must be at least 2x2, got {width}x{height}"
            )));
        }
        let world = Self {
            width,
            height,
            start,
            goal,
            goal_reward,
        };
        for (name, p) in [("start", start), ("goal", goal)] {
            if !world.contains(p) {
                return Err(Error::InvalidWorld(format!(
                    "{name} {p} outside {width}x{height} grid"
                )));
            }
        }
        if start == goal {
            return Err(Error::InvalidWorld("start and goal coincide".into()));
        }
        if !(goal_reward.is_finite() && goal_reward > 0.0) {
            return Err(Error::InvalidWorld(format!(
                "goal reward must be positive and finite, got {goal_reward}"
            )));
        }
        Ok(world)
    }

    /// 15x15 grid, start (0,0), goal (6,6), reward 100.
    pub fn standard() -> Self {
        Self::new(
            15,
            15,
            GridPos::new(0, 0),
            GridPos::new(6, 6),
            DEFAULT_GOAL_REWARD,
        )
        .expect("default world is valid")
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn start(&self) -> GridPos {
        self.start
    }

    pub fn goal(&self) -> GridPos {
        self.goal
    }

    pub fn goal_reward(&self) -> f64 {
        self.goal_reward
    }

    pub fn cells(&self) -> usize {
        self.width * self.height
    }

    #[inline]
    pub fn contains(&self, p: GridPos) -> bool {
        p.x < self.width && p.y < self.height
    }

    /// Row-major dense index of an in-bounds position.
    #[inline]
    pub fn index_of(&self, p: GridPos) -> usize {
        p.y * self.width + p.x
    }

    pub fn positions(&self) -> impl Iterator<Item = GridPos> + '_ {
        (0..self.height).flat_map(move |y| (0..self.width).map(move |x| GridPos::new(x, y)))
    }

    /// One single-cell move. Off-grid moves leave the agent in place.
    pub fn step(&self, pos: GridPos, action: Action) -> Result<StepOutcome> {
        if !self.contains(pos) {
            return Err(Error::OutOfBounds {
                pos,
                width: self.width,
                height: self.height,
            });
        }
        let (dx, dy) = action.delta();
        let nx = pos.x as isize + dx;
        let ny = pos.y as isize + dy;
        let next = if nx < 0 || ny < 0 || nx >= self.width as isize || ny >= self.height as isize {
            pos
        } else {
            GridPos::new(nx as usize, ny as usize)
        };
        let done = next == self.goal;
        Ok(StepOutcome {
            next,
            reward: if done { self.goal_reward } else { 0.0 },
            done,
        })
    }

    /// Length of a shortest start-to-goal path.
    pub fn optimal_steps(&self) -> usize {
        self.start.manhattan(self.goal)
    }
}
