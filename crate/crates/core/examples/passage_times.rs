//! First exits of a stable process from the strip `|x| <= r` and from the
//! curvilinear region `|x| <= r t^κ`, observed on a geometric grid.

use levy_passage::distributions::StableParams;
use levy_passage::mc::{passage_time_sample, EmpiricalDistribution};
use levy_passage::passage::{Region, Side};
use levy_passage::paths::{GridSimulator, TimeGrid};

fn main() -> levy_passage::Result<()> {
    let grid = TimeGrid::geometric_span(1e-4, 100.0, 2048)?;
    let sim = GridSimulator::stable(&StableParams::symmetric(1.5)?, &grid)?;
    for kappa in [0.0, 0.3, 0.5] {
        let region = Region::new(1.0, kappa)?;
        let recs = passage_time_sample(&sim, &region, 5000, 11, 0)?;
        let censored = recs.iter().filter(|r| r.censored).count();
        let upper = recs.iter().filter(|r| r.side == Some(Side::Upper)).count();
        let times: Vec<f64> = recs.iter().map(|r| if r.censored { f64::INFINITY } else { r.exit_time }).collect();
        let d = EmpiricalDistribution::new(times)?;
        let mean_overshoot =
            recs.iter().filter(|r| !r.censored).map(|r| r.overshoot).sum::<f64>() / (recs.len() - censored) as f64;
        println!(
            "kappa={kappa}: median T={:.4} q90={:.4} upper exits={:.3} mean overshoot={mean_overshoot:.3} censored={censored}",
            d.quantile(0.5),
            d.quantile(0.9),
            upper as f64 / recs.len() as f64
        );
    }
    Ok(())
}
