//! A Lévy flight with Pareto jumps and its rescaled interpolation
//! `S_{⌊nt⌋} / n^{1/α}`, which approaches a stable process.

use levy_passage::distributions::PowerLawJumpParams;
use levy_passage::paths::{rescale_walk, simulate_walk};
use levy_passage::rng::replication_stream;

fn main() -> levy_passage::Result<()> {
    let jumps = PowerLawJumpParams::new(1.5, 0.5, 1.0)?;
    let mut rng = replication_stream(3, 0, 0);
    let walk = simulate_walk(1000, &jumps, &mut rng)?;
    let scaled = rescale_walk(&walk, 1.5)?;

    let biggest = walk
        .values()
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(0.0, f64::max);
    println!("n = {} steps, S_n = {:.3}, largest |jump| = {biggest:.2}", walk.len() - 1, walk.values()[walk.len() - 1]);
    for t in [0.1, 0.25, 0.5, 0.75, 1.0] {
        println!("  rescaled path at t = {t:<4}: {:+.4}", scaled.value_at(t).unwrap());
    }
    Ok(())
}
