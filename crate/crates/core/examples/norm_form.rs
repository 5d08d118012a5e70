//! Expand the norm form of the cubic subfield of Q(zeta_7) and check it
//! against a few values.

use hasse_core::cyclotomic::{minimal_polynomial, norm_form, ThetaVariant};
use num_bigint::BigInt;

fn main() -> hasse_core::Result<()> {
    let basis = minimal_polynomial(7, ThetaVariant::RealTheta)?;
    println!("minimal polynomial: {}", basis.minpoly());

    for gamma in 1..=2 {
        let f = norm_form(&basis, gamma)?;
        println!(
            "gamma = {gamma}: {} terms, vars {:?}",
            f.num_terms(),
            f.vars()
        );
        println!("  {f}");
    }

    let f = norm_form(&basis, 2)?;
    for pt in [[1, 0, 0], [0, 1, 0], [1, 1, 1], [2, -1, 3]] {
        let v: Vec<BigInt> = pt.iter().map(|&c| BigInt::from(c)).collect();
        println!("Norm{pt:?} = {}", f.eval(&v)?);
    }

    let five = minimal_polynomial(5, ThetaVariant::OneMinusZeta)?;
    println!("1 - zeta_5: {}", five.minpoly());
    Ok(())
}
