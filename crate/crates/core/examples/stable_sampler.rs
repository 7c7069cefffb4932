//! Chambers–Mallows–Stuck draws against known quantiles.
//!
//! For α = 1 the symmetric law is Cauchy with quantile `tan(π(p - 1/2))`.

use levy_passage::distributions::{sample_stable, StableParams};
use levy_passage::mc::EmpiricalDistribution;
use levy_passage::rng::{replication_stream, stable_deviates};

fn main() -> levy_passage::Result<()> {
    let n = 200_000;
    for alpha in [0.5, 1.0, 1.5, 2.0] {
        let params = StableParams::symmetric(alpha)?;
        let mut rng = replication_stream(1, 0, 0);
        let draws = (0..n)
            .map(|_| {
                let (u, e) = stable_deviates(&mut rng);
                sample_stable(&params, u, e)
            })
            .collect::<levy_passage::Result<Vec<f64>>>()?;
        let d = EmpiricalDistribution::new(draws)?;
        print!("alpha={alpha}: q10={:+.4} q50={:+.4} q90={:+.4}", d.quantile(0.1), d.quantile(0.5), d.quantile(0.9));
        if alpha == 1.0 {
            print!("  (Cauchy q90 = {:.4})", (std::f64::consts::PI * 0.4).tan());
        }
        println!();
    }

    // Totally skewed to the right: for alpha < 1 the support is (0, inf).
    let skewed = StableParams::new(0.7, 1.0, 1.0)?;
    let mut rng = replication_stream(1, 1, 0);
    let negative = (0..n)
        .filter(|_| {
            let (u, e) = stable_deviates(&mut rng);
            sample_stable(&skewed, u, e).unwrap() < 0.0
        })
        .count();
    println!("alpha=0.7 beta=1: {negative} negative draws out of {n}");
    Ok(())
}
