#![allow(dead_code)]

use affectq::{Action, GridPos, GridWorld, QTable};

/// Optimal action values by value iteration, independent of the TD code path.
/// The goal is terminal: its value is 0 and entering it pays the goal reward.
pub fn value_iteration_q(world: &GridWorld, gamma: f64) -> QTable {
    let cells = world.cells();
    let mut v = vec![0.0f64; cells];
    loop {
        let mut delta = 0.0f64;
        for p in world.positions() {
            if p == world.goal() {
                continue;
            }
            let best = Action::ALL
                .iter()
                .map(|&a| backup(world, &v, p, a, gamma))
                .fold(f64::NEG_INFINITY, f64::max);
            let i = world.index_of(p);
            delta = delta.max((best - v[i]).abs());
            v[i] = best;
        }
        if delta < 1e-13 {
            break;
        }
    }
    let mut q = QTable::new(world);
    for p in world.positions() {
        if p == world.goal() {
            continue;
        }
        for a in Action::ALL {
            q.set(p, a, backup(world, &v, p, a, gamma)).unwrap();
        }
    }
    q
}

fn backup(world: &GridWorld, v: &[f64], p: GridPos, a: Action, gamma: f64) -> f64 {
    let (dx, dy) = match a {
        Action::Up => (0i64, -1i64),
        Action::Down => (0, 1),
        Action::Left => (-1, 0),
        Action::Right => (1, 0),
    };
    let nx = (p.x as i64 + dx).clamp(0, world.width() as i64 - 1) as usize;
    let ny = (p.y as i64 + dy).clamp(0, world.height() as i64 - 1) as usize;
    let next = GridPos::new(nx, ny);
    if next == world.goal() {
        world.goal_reward()
    } else {
        gamma * v[world.index_of(next)]
    }
}

/// Brute-force scan for the first episode with exactly `optimal` steps.
pub fn scan_first_optimal(steps: &[(u64, bool)], optimal: u64) -> Option<usize> {
    for (i, &(s, truncated)) in steps.iter().enumerate() {
        if s == optimal && !truncated {
            return Some(i + 1);
        }
    }
    None
}

pub fn scan_total_before(steps: &[(u64, bool)], optimal: u64) -> u64 {
    let stop = scan_first_optimal(steps, optimal).unwrap_or(steps.len() + 1);
    let mut total = 0;
    for (i, &(s, _)) in steps.iter().enumerate() {
        if i + 1 < stop {
            total += s;
        }
    }
    total
}

/// Least-squares slope of `ys` against 1..=n.
pub fn ols_slope(ys: &[f64]) -> f64 {
    let n = ys.len() as f64;
    let mx = (n + 1.0) / 2.0;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (i, y) in ys.iter().enumerate() {
        let x = (i + 1) as f64;
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}
