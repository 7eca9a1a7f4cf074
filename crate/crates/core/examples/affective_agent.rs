// One run of the affective agent: emotion mix and equivalent epsilon as
// learning progresses.
//
// cargo run --release --example affective_agent

use affectq::{equivalent_epsilon, AgentKind, Emotion, GridWorld, LearningParams, Simulation};

pub fn run_example() -> affectq::Result<()> {
    let sim = Simulation::new(GridWorld::standard(), LearningParams::default());
    let run = sim.run(AgentKind::Affective, 200, 7)?;

    println!("episodes   steps  joy  sad  ang  fear  eq-eps");
    for chunk in run.episodes.chunks(25) {
        let mut tally = [0u64; 4];
        let mut steps = 0;
        let mut eq = 0.0;
        for e in chunk {
            for em in Emotion::ALL {
                tally[em.index()] += e.tally(em);
            }
            steps += e.steps;
            eq += equivalent_epsilon(e).value;
        }
        let total: u64 = tally.iter().sum();
        let pct = |em: Emotion| 100.0 * tally[em.index()] as f64 / total as f64;
        println!(
            "{:>3}-{:<3} {:>7.1} {:>4.0} {:>4.0} {:>4.0} {:>5.0} {:>7.3}",
            chunk[0].index,
            chunk[chunk.len() - 1].index,
            steps as f64 / chunk.len() as f64,
            pct(Emotion::Joy),
            pct(Emotion::Sadness),
            pct(Emotion::Anger),
            pct(Emotion::Fear),
            eq / chunk.len() as f64
        );
    }
    println!(
        "first optimal episode {:?}, {} steps before it",
        run.first_optimal_episode, run.total_steps_before_optimal
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
