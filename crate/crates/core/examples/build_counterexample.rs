//! Build a family member, print the hypothesis report and the polynomial.
//!
//! Usage: `cargo run --example build_counterexample -- [N]` (N = 3 mod 4).

use hasse_core::cyclotomic::minimal_polynomial;
use hasse_core::forms::{bracket_identity, build_form, check_conditions, search_params, Variant};

fn main() -> hasse_core::Result<()> {
    let n_prime: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let params = search_params(n_prime, Variant::T1, 1, 1, 2)?.remove(0);
    let basis = minimal_polynomial(n_prime, params.variant.theta())?;

    let report = check_conditions(&params);
    for e in &report.entries {
        println!(
            "{:<20} {}  {}",
            e.id,
            if e.pass { "ok  " } else { "FAIL" },
            e.witness
        );
    }

    let built = build_form(&params, &basis)?;
    println!("A = {}", built.a);
    println!("B = {}", built.b);
    println!("B - A = {}", bracket_identity(&params));
    println!(
        "form: degree {}, {} terms",
        built.form.total_degree().unwrap_or(0),
        built.form.num_terms()
    );
    if built.form.num_terms() < 40 {
        println!("{}", built.form);
    }
    Ok(())
}
