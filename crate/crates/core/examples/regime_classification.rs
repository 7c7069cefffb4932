//! What the integral tests say about `(α, κ)`.

use levy_passage::theory::{classify_regime, integral_test_large_time, integral_test_small_time};

fn main() -> levy_passage::Result<()> {
    for (alpha, kappa) in [(1.5, 0.0), (1.5, 0.5), (0.8, 0.4), (1.5, 1.0), (0.6, 1.2), (1.8, 1.2)] {
        let report = classify_regime(alpha, kappa)?;
        println!("{report}");
        println!(
            "    small-time integral {:?}, large-time integral {:?}",
            integral_test_small_time(alpha, kappa)?,
            integral_test_large_time(alpha, kappa)?
        );
    }
    Ok(())
}
