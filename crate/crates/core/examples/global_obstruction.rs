//! The congruence argument modulo N as a replayable transcript, plus the
//! residue audit and the bounded-height search.

use hasse_core::corpus::t1_n1_params;
use hasse_core::cyclotomic::{minimal_polynomial, ThetaVariant};
use hasse_core::forms::build_form;
use hasse_core::globalcheck::{
    contradiction_sets, height_search, norm_residue_audit, obstruction_transcript,
    replay_transcript, ContradictionRule,
};

fn main() -> hasse_core::Result<()> {
    let params = t1_n1_params();
    let basis = minimal_polynomial(7, ThetaVariant::RealTheta)?;

    let t = obstruction_transcript(&params, &basis, 200)?;
    for s in &t.steps {
        println!(
            "{} [{}] {}",
            s.id,
            if s.pass { "pass" } else { "FAIL" },
            s.statement
        );
    }
    println!("unchecked: {}", t.unchecked.join("; "));
    println!("replay: {:?}", replay_transcript(&t, &params, &basis));

    for e in norm_residue_audit(7, ThetaVariant::RealTheta, 30)? {
        println!("  q = {:>2}  f = {}  q^f = {} mod 7", e.q, e.f, e.residue);
    }
    for n_prime in [7u64, 11, 19] {
        let (l, r) = contradiction_sets(ContradictionRule::Linear, n_prime, 1);
        println!("N = {n_prime}: {l:?} vs {r:?}");
    }

    let f = build_form(&params, &basis)?.form;
    let h = height_search(&f, 12);
    println!(
        "height <= {}: {} primitive tuples, {} roots",
        h.height_bound,
        h.tuples_searched,
        h.roots_found.len()
    );
    Ok(())
}
