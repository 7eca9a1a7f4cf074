// The full comparison: both agents, epsilon 0.1..0.9, 20 runs of 200
// episodes each, with paired t-tests across epsilon.
//
// cargo run --release --example epsilon_sweep

use affectq::cli::paired_tables;
use affectq::experiment::{aggregate, sweep, SweepConfig};
use affectq::Emotion;

pub fn run_example() -> affectq::Result<()> {
    let table = sweep(&SweepConfig::standard(1))?;
    let agg = aggregate(&table);

    println!("  eps   steps/ep std   steps/ep aff   before-opt std   before-opt aff");
    for r in &agg.per_epsilon {
        println!(
            "  {:.1} {:>14.2} {:>14.2} {:>16.1} {:>16.1}",
            r.epsilon,
            r.mean_steps_standard,
            r.mean_steps_affective,
            r.total_standard,
            r.total_affective
        );
    }

    let tables = paired_tables(&agg);
    for (name, test) in [
        ("steps per episode", &tables.steps_per_episode),
        ("steps before optimal", &tables.total_steps_before_optimal),
    ] {
        if let Some(t) = test {
            println!(
                "{name}: t = {:.3}, df = {}, one-tail p = {:.4}, two-tail p = {:.4}",
                t.t_stat, t.df, t.p_one_tail, t.p_two_tail
            );
        }
    }

    let share = agg.affective_emotion_share;
    println!(
        "affective decisions: joy {:.3}, sadness {:.3}, anger {:.3}, fear {:.3}",
        share[Emotion::Joy.index()],
        share[Emotion::Sadness.index()],
        share[Emotion::Anger.index()],
        share[Emotion::Fear.index()]
    );
    println!(
        "equivalent epsilon: episode 1 {:.3}, episode 10 {:.3}, episode 200 {:.3}",
        agg.equivalent_epsilon[0], agg.equivalent_epsilon[9], agg.equivalent_epsilon[199]
    );
    if let Some(first) = agg.affective_mean_first_optimal {
        println!("affective mean first-optimal episode: {first:.2}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
