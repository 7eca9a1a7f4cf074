// The appraisal pipeline on its own: fitting the norm, tracking expected and
// known path lengths, and reading off an emotion.
//
// cargo run --example appraisal

use affectq::{classify, fit_power_regression, AppraisalState, GridPos, GridWorld};

pub fn run_example() -> affectq::Result<()> {
    let history = [240.0, 130.0, 95.0, 60.0, 52.0, 40.0];
    let fit = fit_power_regression(&history)?;
    println!(
        "norm(t) = {:.2} * t^{:.3}; predicted for episode 7: {:.1}",
        fit.a,
        fit.b,
        fit.eval(7.0)
    );

    for (act, exp1, norm) in [(30.0, 45.0, 40.0), (50.0, 40.0, 40.0), (40.0, 40.0, 40.0)] {
        println!(
            "act {act:>4} exp1 {exp1:>4} norm {norm:>4} -> {:?}",
            classify(act, exp1, norm)
        );
    }

    let world = GridWorld::standard();
    let mut state = AppraisalState::new(&world, 4.0);
    state.begin_episode(1);
    println!(
        "episode 1: norm {} (no history), emotion {:?}",
        state.norm(),
        state.emotion()
    );

    // A 14-step episode that reached the goal along row 6.
    let mut trajectory = vec![(GridPos::new(0, 0), 14)];
    trajectory.extend((1..=6).map(|y| (GridPos::new(0, y), 14 - y as u64)));
    trajectory.extend((1..=6).map(|x| (GridPos::new(x, 6), 8 - x as u64)));
    trajectory.pop();
    trajectory.push((world.goal(), 0));
    state.end_episode(14, &trajectory, true)?;

    state.begin_episode(2);
    for (steps, pos) in [
        (0, GridPos::new(0, 0)),
        (1, GridPos::new(0, 1)),
        (2, GridPos::new(9, 9)),
    ] {
        state.on_step(steps, pos);
        println!(
            "episode 2 at {pos}: act {} exp1 {} norm {} -> {:?}",
            state.act(),
            state.exp1(),
            state.norm(),
            state.emotion()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
