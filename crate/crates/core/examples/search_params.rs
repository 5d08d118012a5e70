use hasse_core::forms::search::{reciprocity_admissible, signed_residue_classes};
use hasse_core::forms::{required_primes, search_params, Variant};

fn main() -> hasse_core::Result<()> {
    for n_prime in [7u64, 11, 19, 23, 43] {
        println!(
            "N = {n_prime:>2}: residues {:?}, quick filter {}",
            signed_residue_classes(n_prime),
            reciprocity_admissible(n_prime)
        );
    }

    for p in search_params(7, Variant::T1, 3, 1, 2)? {
        println!("T1 N=7 alpha0 = {}", p.alpha0());
    }

    let p = &search_params(11, Variant::T1, 1, 1, 2)?[0];
    println!("T1 N=11 alpha0 = {}", p.alpha0());
    println!(
        "  primes that must divide alpha0(alpha0+1): {:?}",
        required_primes(2, 11)
    );
    println!("  cofactor: {}", p.alpha0.product.cofactor());

    for p in search_params(13, Variant::G2, 3, 0, 5)? {
        println!("G2 N=13 alpha0 = {}", p.alpha0());
    }
    Ok(())
}
