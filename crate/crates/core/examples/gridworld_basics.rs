// The pursuit grid: single-cell moves, wall clamping and the goal reward.
//
// cargo run --example gridworld_basics

use affectq::{Action, GridPos, GridWorld};

pub fn run_example() -> affectq::Result<()> {
    let world = GridWorld::standard();
    println!(
        "{}x{} grid, start {}, goal {}, shortest path {} steps",
        world.width(),
        world.height(),
        world.start(),
        world.goal(),
        world.optimal_steps()
    );

    let moves = [
        (GridPos::new(0, 0), Action::Left),
        (GridPos::new(3, 3), Action::Right),
        (GridPos::new(6, 5), Action::Down),
    ];
    for (pos, action) in moves {
        let out = world.step(pos, action)?;
        println!(
            "{pos} {action:?} -> {} reward {} done {}",
            out.next, out.reward, out.done
        );
    }

    // walk the L-shaped shortest path
    let mut pos = world.start();
    let mut steps = 0;
    for action in [Action::Right; 6].into_iter().chain([Action::Down; 6]) {
        let out = world.step(pos, action)?;
        pos = out.next;
        steps += 1;
        if out.done {
            break;
        }
    }
    assert_eq!(pos, world.goal());
    println!("reached the goal in {steps} steps");

    assert!(world.step(GridPos::new(20, 0), Action::Up).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
