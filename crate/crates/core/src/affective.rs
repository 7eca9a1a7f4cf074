//! Emotion-driven movement: which way to go and how many cells to move.
//!
//! | emotion | direction       | speed (cells) |
//! |---------|-----------------|---------------|
//! | Joy     | uniform random  | 1 or 2        |
//! | Sadness | greatest reward | 0 or 1        |
//! | Anger   | greatest reward | 1 or 2        |
//! | Fear    | greatest reward | 0 or 1        |

use arrayvec::ArrayVec;

use crate::appraisal::Emotion;
use crate::error::Result;
use crate::gridworld::{Action, GridPos, GridWorld};
use crate::qcore::{greedy_action, td_update, LearningParams, QTable};
use crate::rng::SplitMix64;

pub const MAX_SPEED: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveDecision {
    pub direction: Action,
    pub speed: usize,
    /// Direction was drawn uniformly at random (Joy).
    pub random_direction: bool,
}

/// Speeds available under an emotion.
pub fn speed_range(emotion: Emotion) -> [usize; 2] {
    match emotion {
        Emotion::Joy | Emotion::Anger => [1, 2],
        Emotion::Sadness | Emotion::Fear => [0, 1],
    }
}

/// Direction is drawn first, then speed.
pub fn decide(emotion: Emotion, q: &QTable, s: GridPos, rng: &mut SplitMix64) -> MoveDecision {
    let random_direction = emotion == Emotion::Joy;
    let direction = if random_direction {
        Action::from_index(rng.below(4))
    } else {
        greedy_action(q, s, rng)
    };
    let speed = speed_range(emotion)[rng.below(2)];
    MoveDecision {
        direction,
        speed,
        random_direction,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoveOutcome {
    pub final_pos: GridPos,
    /// Single-cell transitions executed, wall bumps included.
    pub cells_moved: usize,
    pub done: bool,
    /// Cell reached after each transition, in order.
    pub visited: ArrayVec<GridPos, MAX_SPEED>,
}

/// Carries out a decision as `speed` single-cell steps in one direction, with
/// one TD update per step. Stops as soon as the goal is entered.
pub fn execute_move(
    world: &GridWorld,
    q: &mut QTable,
    s: GridPos,
    decision: MoveDecision,
    params: &LearningParams,
) -> Result<MoveOutcome> {
    let mut out = MoveOutcome {
        final_pos: s,
        cells_moved: 0,
        done: false,
        visited: ArrayVec::new(),
    };
    for _ in 0..decision.speed.min(MAX_SPEED) {
        let step = world.step(out.final_pos, decision.direction)?;
        td_update(
            q,
            out.final_pos,
            decision.direction,
            step.reward,
            step.next,
            params,
        )?;
        out.final_pos = step.next;
        out.cells_moved += 1;
        out.visited.push(step.next);
        if step.done {
            out.done = true;
            break;
        }
    }
    Ok(out)
}
