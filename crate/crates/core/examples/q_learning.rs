// A standard epsilon-greedy Q-learning agent learning the pursuit task.
//
// cargo run --release --example q_learning

use affectq::{AgentKind, GridWorld, LearningParams, Simulation};

pub fn run_example() -> affectq::Result<()> {
    for epsilon in [0.1, 0.5, 0.9] {
        let sim = Simulation::new(
            GridWorld::standard(),
            LearningParams::new(0.1, 0.9, epsilon)?,
        );
        let run = sim.run(AgentKind::Standard, 200, 2024)?;
        let window = |a: usize, b: usize| {
            run.episodes[a..b]
                .iter()
                .map(|e| e.steps as f64)
                .sum::<f64>()
                / (b - a) as f64
        };
        println!(
            "eps {epsilon:.1}: mean steps ep 1-10 {:7.1}, ep 191-200 {:6.1}, first optimal {:?}, steps before it {}",
            window(0, 10),
            window(190, 200),
            run.first_optimal_episode,
            run.total_steps_before_optimal
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
