//! Point counts of the reduction curve `f(t, 0, y1, y2) = 0` against the
//! Hasse-Weil interval.

use hasse_core::corpus::t1_n1_params;
use hasse_core::cyclotomic::minimal_polynomial;
use hasse_core::exactmath::primes_below;
use hasse_core::localsolve::{hasse_weil_check, reduction_curve};

fn main() -> hasse_core::Result<()> {
    let params = t1_n1_params();
    let basis = minimal_polynomial(7, params.variant.theta())?;
    println!("curve: {}", reduction_curve(&params, &basis)?);
    for p in primes_below(80).into_iter().filter(|p| 42 % p != 0) {
        let c = hasse_weil_check(&params, &basis, p)?;
        let width = 2.0 * c.genus as f64 * (p as f64).sqrt();
        println!(
            "p = {p:>2}: {:>3} points, interval [{:.1}, {:.1}], smooth {}, within {}",
            c.count,
            (p + 1) as f64 - width,
            (p + 1) as f64 + width,
            c.smooth,
            c.within_bound
        );
    }
    Ok(())
}
