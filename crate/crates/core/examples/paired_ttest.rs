// The statistics kernel: a spreadsheet-style paired t-test table.
//
// cargo run --example paired_ttest

use affectq::stats::{mean, t_cdf, t_critical, variance, Tails};
use affectq::{paired_t_test, pearson};

pub fn run_example() -> affectq::Result<()> {
    let before = [31.0, 29.5, 35.2, 40.1, 44.0, 52.3, 61.8, 80.4, 140.2];
    let after = [30.1, 31.0, 29.8, 30.5, 29.9, 31.2, 30.4, 29.7, 30.8];

    println!("mean {:.3} / {:.3}", mean(&before)?, mean(&after)?);
    println!(
        "variance {:.3} / {:.3}",
        variance(&before)?,
        variance(&after)?
    );
    println!("pearson {:.4}", pearson(&before, &after)?);

    let t = paired_t_test(&before, &after)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&t).expect("serializable")
    );

    println!(
        "t(8) 95th percentile {:.4}, 97.5th {:.4}; F(2.306) = {:.5}",
        t_critical(8.0, 0.05, Tails::One),
        t_critical(8.0, 0.05, Tails::Two),
        t_cdf(2.306, 8.0)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
