//! Appraisal of the affective agent's situation.
//!
//! Three quantities drive the emotion:
//!
//! * `norm`: the step count the agent considers normal for this episode, a
//!   power-law (log-log least squares) fit over completed-episode step counts,
//!   evaluated at the current episode index.
//! * `exp1`: the expected step count for the running episode. It starts at
//!   `norm` and grows by one for every step taken past `norm`.
//! * `act`: the shortest known path length from the current cell to the goal.
//!   Unknown cells inherit the previous value.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gridworld::{GridPos, GridWorld};

pub const DEFAULT_BOOTSTRAP_FACTOR: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Emotion {
    Joy,
    Sadness,
    Anger,
    Fear,
}

impl Emotion {
    pub const ALL: [Emotion; 4] = [
        Emotion::Joy,
        Emotion::Sadness,
        Emotion::Anger,
        Emotion::Fear,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Emotion::Joy => "joy",
            Emotion::Sadness => "sadness",
            Emotion::Anger => "anger",
            Emotion::Fear => "fear",
        }
    }
}

/// `y = a * t^b`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    pub a: f64,
    pub b: f64,
}

impl PowerFit {
    pub fn eval(&self, t: f64) -> f64 {
        self.a * t.powf(self.b)
    }
}

/// Least squares on `(ln t, ln y)` with `t = 1..=n`. Values must be positive;
/// step histories are integers >= 1 by construction.
pub fn fit_power_regression(history: &[f64]) -> Result<PowerFit> {
    if history.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: history.len(),
        });
    }
    if let Some(bad) = history.iter().find(|&&y| !y.is_finite() || y <= 0.0) {
        return Err(Error::Contract(format!(
            "power regression needs positive finite values, got {bad}"
        )));
    }
    let n = history.len() as f64;
    let xs: Vec<f64> = (1..=history.len()).map(|t| (t as f64).ln()).collect();
    let ys: Vec<f64> = history.iter().map(|y| y.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (sxy, sxx) = xs.iter().zip(&ys).fold((0.0, 0.0), |(sxy, sxx), (x, y)| {
        (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx))
    });
    let b = sxy / sxx;
    let a = (my - b * mx).exp();
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite("power fit"));
    }
    Ok(PowerFit { a, b })
}

/// Emotion from the three appraisal values. `act` may be infinite (no known
/// path); NaN inputs are not meaningful.
///
/// | condition                      | emotion |
/// |--------------------------------|---------|
/// | `act < norm && exp1 > act`     | Anger   |
/// | `act < norm && exp1 <= act`    | Sadness |
/// | `exp1 < norm` (`act >= norm`)  | Fear    |
/// | `act > norm`                   | Joy     |
/// | otherwise (`act == norm`)      | Sadness |
///
/// The `act` rows are tried before the Fear row; the other way round the
/// Sadness row could never fire, since `exp1 <= act < norm` implies
/// `exp1 < norm`.
pub fn classify(act: f64, exp1: f64, norm: f64) -> Emotion {
    if act < norm {
        if exp1 > act {
            Emotion::Anger
        } else {
            Emotion::Sadness
        }
    } else if exp1 < norm {
        Emotion::Fear
    } else if act > norm {
        Emotion::Joy
    } else {
        Emotion::Sadness
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AppraisalState {
    width: usize,
    goal: GridPos,
    prior_norm: f64,
    history: Vec<f64>,
    norm: f64,
    exp1: f64,
    act: f64,
    last_act: f64,
    dist_best: Vec<Option<u64>>,
}

impl AppraisalState {
    /// Fresh state for one run. Before any episode completes, `norm` is
    /// `bootstrap_factor * optimal_steps`. No path is known yet, so `act`
    /// starts at infinity and stays there until a cell with a known distance
    /// is visited.
    pub fn new(world: &GridWorld, bootstrap_factor: f64) -> Self {
        let prior_norm = bootstrap_factor * world.optimal_steps() as f64;
        Self {
            width: world.width(),
            goal: world.goal(),
            prior_norm,
            history: Vec::new(),
            norm: prior_norm,
            exp1: prior_norm,
            act: f64::INFINITY,
            last_act: f64::INFINITY,
            dist_best: vec![None; world.cells()],
        }
    }

    pub fn history(&self) -> &[f64] {
        &self.history
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn exp1(&self) -> f64 {
        self.exp1
    }

    pub fn act(&self) -> f64 {
        self.act
    }

    pub fn last_act(&self) -> f64 {
        self.last_act
    }

    pub fn emotion(&self) -> Emotion {
        classify(self.act, self.exp1, self.norm)
    }

    #[inline]
    fn slot(&self, p: GridPos) -> usize {
        p.y * self.width + p.x
    }

    /// Best known steps-to-goal from `p`, if `p` has been on a successful
    /// trajectory.
    pub fn dist_best(&self, p: GridPos) -> Option<u64> {
        self.dist_best[self.slot(p)]
    }

    /// Sets `norm` (and `exp1`) for episode `episode_index` (1-based).
    pub fn begin_episode(&mut self, episode_index: usize) {
        self.norm = match self.history.len() {
            0 => self.prior_norm,
            1 => self.history[0],
            _ => fit_power_regression(&self.history)
                .map(|fit| fit.eval(episode_index as f64))
                // History entries are validated on entry, so the fit cannot
                // fail; keep the previous norm if it somehow does.
                .unwrap_or(self.norm),
        };
        self.exp1 = self.norm;
    }

    /// Updates `exp1` and `act` before a decision at `pos`.
    pub fn on_step(&mut self, steps_so_far: u64, pos: GridPos) {
        if steps_so_far as f64 > self.norm {
            self.exp1 += 1.0;
        }
        self.act = match self.dist_best(pos) {
            Some(d) => d as f64,
            None => self.last_act,
        };
        self.last_act = self.act;
    }

    /// Records a finished episode. `trajectory` lists every visited cell with
    /// the steps remaining until the episode ended; only the first visit to a
    /// cell counts. Known distances are refreshed only when the goal was
    /// reached.
    pub fn end_episode(
        &mut self,
        steps_taken: u64,
        trajectory: &[(GridPos, u64)],
        reached_goal: bool,
    ) -> Result<()> {
        if steps_taken < 1 {
            return Err(Error::Contract("an episode takes at least one step".into()));
        }
        self.history.push(steps_taken as f64);
        if !reached_goal {
            return Ok(());
        }
        match trajectory.last() {
            Some(&(p, 0)) if p == self.goal => {}
            other => {
                return Err(Error::Contract(format!(
                    "trajectory of a completed episode must end at the goal with 0 remaining, got {other:?}"
                )))
            }
        }
        let mut seen = vec![false; self.dist_best.len()];
        for &(p, remaining) in trajectory {
            let i = self.slot(p);
            if std::mem::replace(&mut seen[i], true) {
                continue;
            }
            let slot = &mut self.dist_best[i];
            *slot = Some(slot.map_or(remaining, |d| d.min(remaining)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn two_point_fit_is_exact() {
        let fit = fit_power_regression(&[8.0, 2.0]).unwrap();
        assert!(close(fit.b, -2.0, 1e-12));
        assert!(close(fit.a, 8.0, 1e-12));
    }

    #[test]
    fn constant_history_fit() {
        let fit = fit_power_regression(&[5.0; 4]).unwrap();
        assert!(close(fit.b, 0.0, 1e-12));
        assert!(close(fit.a, 5.0, 1e-12));
    }

    #[test]
    fn synthetic_power_law_recovered() {
        let ys: Vec<f64> = (1..=10).map(|t| 20.0 * (t as f64).powf(-0.5)).collect();
        let fit = fit_power_regression(&ys).unwrap();
        assert!(close(fit.a, 20.0, 1e-9), "{fit:?}");
        assert!(close(fit.b, -0.5, 1e-9), "{fit:?}");
    }

    #[test]
    fn fit_errors() {
        assert!(matches!(
            fit_power_regression(&[3.0]),
            Err(Error::InsufficientData { needed: 2, got: 1 })
        ));
        assert!(matches!(
            fit_power_regression(&[3.0, 0.0]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn classify_table_rows() {
        assert_eq!(classify(3.0, 7.0, 10.0), Emotion::Anger);
        assert_eq!(classify(12.0, 10.0, 10.0), Emotion::Joy);
        assert_eq!(classify(3.0, 3.0, 10.0), Emotion::Sadness);
        assert_eq!(classify(3.0, 2.0, 10.0), Emotion::Sadness);
        assert_eq!(classify(12.0, 5.0, 10.0), Emotion::Fear);
        assert_eq!(classify(10.0, 5.0, 10.0), Emotion::Fear);
    }

    #[test]
    fn every_row_is_reachable() {
        let mut seen = std::collections::BTreeSet::new();
        for act in [1.0, 2.0, 3.0] {
            for exp1 in [1.0, 2.0, 3.0] {
                for norm in [1.0, 2.0, 3.0] {
                    seen.insert(classify(act, exp1, norm));
                }
            }
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn classify_uncovered_cell_defaults_to_sadness() {
        assert_eq!(classify(10.0, 10.0, 10.0), Emotion::Sadness);
        assert_eq!(classify(10.0, 14.0, 10.0), Emotion::Sadness);
    }

    #[test]
    fn begin_episode_bootstrap() {
        let w = GridWorld::standard();
        let mut s = AppraisalState::new(&w, DEFAULT_BOOTSTRAP_FACTOR);
        s.begin_episode(1);
        assert_eq!(s.norm(), 48.0);
        assert_eq!(s.exp1(), 48.0);
    }

    #[test]
    fn no_known_path_reads_as_joy() {
        let w = GridWorld::standard();
        let mut s = AppraisalState::new(&w, DEFAULT_BOOTSTRAP_FACTOR);
        s.begin_episode(1);
        s.on_step(0, w.start());
        assert_eq!(s.act(), f64::INFINITY);
        assert_eq!(s.emotion(), Emotion::Joy);
        assert_eq!(classify(f64::INFINITY, 100.0, 48.0), Emotion::Joy);
    }

    #[test]
    fn begin_episode_single_history_entry() {
        let w = GridWorld::standard();
        let mut s = AppraisalState::new(&w, DEFAULT_BOOTSTRAP_FACTOR);
        s.end_episode(40, &[], false).unwrap();
        s.begin_episode(2);
        assert_eq!(s.norm(), 40.0);
    }

    #[test]
    fn begin_episode_two_point_extrapolation() {
        let w = GridWorld::standard();
        let mut s = AppraisalState::new(&w, DEFAULT_BOOTSTRAP_FACTOR);
        s.end_episode(100, &[], false).unwrap();
        s.end_episode(50, &[], false).unwrap();
        s.begin_episode(3);
        assert!(close(s.norm(), 100.0 / 3.0, 1e-9));
        assert_eq!(s.exp1(), s.norm());
    }

    #[test]
    fn begin_episode_constant_history() {
        let w = GridWorld::standard();
        let mut s = AppraisalState::new(&w, DEFAULT_BOOTSTRAP_FACTOR);
        for _ in 0..4 {
            s.end_episode(5, &[], false).unwrap();
        }
        s.begin_episode(5);
        assert!(close(s.norm(), 5.0, 1e-9));
        assert!(close(s.exp1(), 5.0, 1e-9));
    }

    #[test]
    fn on_step_exp1_increments_past_norm() {
        let w = GridWorld::standard();
        let mut s = AppraisalState::new(&w, 10.0 / 12.0);
        s.begin_episode(1);
        assert!(close(s.norm(), 10.0, 1e-12));
        s.on_step(5, GridPos::new(1, 0));
        assert_eq!(s.exp1(), s.norm());
        s.on_step(11, GridPos::new(2, 0));
        assert!(close(s.exp1(), 11.0, 1e-12));
    }

    #[test]
    fn on_step_unknown_position_keeps_last_act() {
        let w = GridWorld::standard();
        let mut s = AppraisalState::new(&w, DEFAULT_BOOTSTRAP_FACTOR);
        let traj = [(GridPos::new(5, 6), 7), (GridPos::new(6, 6), 0)];
        s.end_episode(7, &traj, true).unwrap();
        s.begin_episode(2);
        s.on_step(0, GridPos::new(5, 6));
        assert_eq!(s.act(), 7.0);
        s.on_step(1, GridPos::new(13, 13));
        assert_eq!(s.act(), 7.0);
        assert_eq!(s.last_act(), 7.0);
    }

    #[test]
    fn end_episode_min_and_first_visit() {
        let w = GridWorld::standard();
        let mut s = AppraisalState::new(&w, DEFAULT_BOOTSTRAP_FACTOR);
        let p = GridPos::new(6, 3);
        s.end_episode(
            12,
            &[(p, 9), (GridPos::new(6, 4), 8), (p, 5), (w.goal(), 0)],
            true,
        )
        .unwrap();
        assert_eq!(s.dist_best(p), Some(9));
        assert_eq!(s.dist_best(w.goal()), Some(0));
        s.end_episode(12, &[(p, 4), (w.goal(), 0)], true).unwrap();
        assert_eq!(s.dist_best(p), Some(4));
        s.end_episode(12, &[(p, 6), (w.goal(), 0)], true).unwrap();
        assert_eq!(s.dist_best(p), Some(4));
        assert_eq!(s.history(), &[12.0, 12.0, 12.0]);
    }

    #[test]
    fn truncated_episode_only_extends_history() {
        let w = GridWorld::standard();
        let mut s = AppraisalState::new(&w, DEFAULT_BOOTSTRAP_FACTOR);
        s.end_episode(40, &[], false).unwrap();
        s.end_episode(20, &[(GridPos::new(1, 1), 3)], false)
            .unwrap();
        assert_eq!(s.history(), &[40.0, 20.0]);
        assert_eq!(s.dist_best(GridPos::new(1, 1)), None);
    }

    #[test]
    fn completed_episode_must_end_at_goal() {
        let w = GridWorld::standard();
        let mut s = AppraisalState::new(&w, DEFAULT_BOOTSTRAP_FACTOR);
        assert!(s.end_episode(3, &[(GridPos::new(1, 1), 0)], true).is_err());
        assert!(s.end_episode(0, &[], false).is_err());
    }

    fn lattice() -> Vec<f64> {
        vec![-5.0, -1.0, 0.0, 1.0, 2.0, 2.5, 7.0, 100.0]
    }

    #[test]
    fn classify_is_total_over_lattice() {
        let vals = lattice();
        for &act in &vals {
            for &exp1 in &vals {
                for &norm in &vals {
                    let e = classify(act, exp1, norm);
                    assert_eq!(e, classify(act, exp1, norm));
                    let anger = act < norm && exp1 > act;
                    let sadness = act < norm && exp1 <= act;
                    let fear = exp1 < norm;
                    let joy = act > norm;
                    let expected = match (anger, sadness, fear, joy) {
                        (true, ..) => Emotion::Anger,
                        (_, true, ..) => Emotion::Sadness,
                        (_, _, true, _) => Emotion::Fear,
                        (.., true) => Emotion::Joy,
                        _ => Emotion::Sadness,
                    };
                    assert_eq!(e, expected, "act={act} exp1={exp1} norm={norm}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn classify_scale_invariant(
            act in -1e3f64..1e3, exp1 in -1e3f64..1e3, norm in -1e3f64..1e3, k in 1e-3f64..1e3,
        ) {
            // Use dyadic values so scaling is exact in floating point.
            let k = (k.log2().round()).exp2();
            prop_assert_eq!(classify(act, exp1, norm), classify(k * act, k * exp1, k * norm));
        }

        #[test]
        fn fit_recovers_noiseless_power_laws(
            a in prop::sample::select(vec![1.0, 20.0, 100.0]),
            b in prop::sample::select(vec![-1.0, -0.5, 0.0]),
            n in 2usize..200,
        ) {
            let ys: Vec<f64> = (1..=n).map(|t| a * (t as f64).powf(b)).collect();
            let fit = fit_power_regression(&ys).unwrap();
            prop_assert!((fit.a - a).abs() <= 1e-9);
            prop_assert!((fit.b - b).abs() <= 1e-9);
        }
    }
}
