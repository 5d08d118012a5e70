//! Run the classical diagonal cubic and the other corpus forms through the
//! local, real and height checks.

use hasse_core::corpus::corpus;
use hasse_core::exactmath::primes_below;
use hasse_core::globalcheck::height_search;
use hasse_core::localsolve::{local_sweep_form, real_point};

fn main() -> hasse_core::Result<()> {
    for e in corpus()? {
        let sweep = local_sweep_form(&e.form, &primes_below(60), 20);
        let rp = real_point(&e.form)?;
        let h = height_search(&e.form, if e.form.nvars() == 3 { 40 } else { 8 });
        println!(
            "{:<16} local {}/{}  real {}={:.6} (residual {:.1e})  roots <= {}: {}",
            e.name,
            sweep.certificates.len(),
            sweep.certificates.len() + sweep.failures.len(),
            rp.solved,
            rp.value(),
            rp.residual,
            h.height_bound,
            h.roots_found.len()
        );
    }
    Ok(())
}
