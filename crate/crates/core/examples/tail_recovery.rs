//! Hill estimates of the jump tail index over a range of k.

use levy_passage::distributions::PowerLawJumpParams;
use levy_passage::mc::{hill_estimator, EmpiricalDistribution};
use levy_passage::paths::simulate_walk;
use levy_passage::rng::replication_stream;

fn main() -> levy_passage::Result<()> {
    let alpha = 1.5;
    let jumps = PowerLawJumpParams::new(alpha, 0.3, 1.0)?;
    let mut rng = replication_stream(5, 0, 0);
    let walk = simulate_walk(100_000, &jumps, &mut rng)?;
    let mags: Vec<f64> = walk.values().windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let sample = EmpiricalDistribution::new(mags)?;
    for k in [100, 1000, 10_000] {
        let est = hill_estimator(&sample, k)?;
        println!("k={k:>6}: alpha_hat={est:.4} (s.e. {:.4})", alpha / (k as f64).sqrt());
    }
    Ok(())
}
