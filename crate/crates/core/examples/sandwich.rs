//! `{T_κ(r) > t} = {sup_{0<s<=t} |X_s|/s^κ <= r}` on the observation grid,
//! checked path by path.

use levy_passage::distributions::StableParams;
use levy_passage::mc::sandwich_check;
use levy_passage::passage::{first_exit_grid, running_sup, Region};
use levy_passage::paths::{simulate_stable_path, GridSimulator, TimeGrid};
use levy_passage::rng::replication_stream;

fn main() -> levy_passage::Result<()> {
    let params = StableParams::symmetric(1.2)?;
    let grid = TimeGrid::geometric_span(1e-3, 10.0, 12)?;
    let region = Region::new(1.0, 0.4)?;

    let path = simulate_stable_path(&params, &grid, &mut replication_stream(2, 0, 0))?;
    let exit = first_exit_grid(&path, &region)?;
    let sups = running_sup(&path, region.kappa())?;
    println!("exit at t={:.4} ({:?})", exit.exit_time, exit.side);
    for ((t, x), s) in path.points().skip(1).zip(&sups) {
        println!("  t={t:<9.4} x={x:+.4} running sup={s:.4} inside={}", *s <= region.r());
    }

    let sim = GridSimulator::stable(&params, &TimeGrid::geometric_span(1e-5, 100.0, 256)?)?;
    let rep = sandwich_check(&sim, &region, 2000, 9)?;
    println!("{} checks, {} violations", rep.checks, rep.violations + rep.reverse_violations);
    Ok(())
}
