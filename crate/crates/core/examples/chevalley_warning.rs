use hasse_core::corpus::cubic_n7_params;
use hasse_core::cyclotomic::minimal_polynomial;
use hasse_core::exactmath::primes_below;
use hasse_core::forms::build_form;
use hasse_core::localsolve::{affine_zero_count, fp_exists};

fn main() -> hasse_core::Result<()> {
    let params = cubic_n7_params();
    let basis = minimal_polynomial(params.n_prime, params.variant.theta())?;
    let f = build_form(&params, &basis)?.form;
    println!("{f}");
    for p in primes_below(30) {
        let first = fp_exists(&f, p, &[])?.first;
        let affine = affine_zero_count(&f, p)?;
        println!(
            "p = {p:>2}: first zero {first:?}, affine zeros {affine} = {} mod p",
            affine % p
        );
    }
    Ok(())
}
