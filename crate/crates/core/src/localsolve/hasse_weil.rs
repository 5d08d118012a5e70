use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::fp::{gradient, projective_charts, ModPoly};
use crate::cyclotomic::CyclotomicBasis;
use crate::error::{Error, Result};
use crate::exactmath::{var_names, MultiPoly};
use crate::forms::{build_form_unchecked, FormParams, Variant};

/// Point count of the plane curve `f(t, 0, y1, y2) = 0` over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveCount {
    pub p: u64,
    pub count: u64,
    pub genus: u64,
    pub smooth: bool,
    pub within_bound: bool,
}

/// `(count - (p + 1))^2 <= 4 g^2 p`, decided in integers.
pub fn hasse_weil_holds(count: u64, p: u64, genus: u64) -> bool {
    let dev = count as i128 - (p as i128 + 1);
    dev * dev <= 4 * (genus as i128).pow(2) * p as i128
}

/// The reduction curve in variables `(t, y1, y2)`.
pub fn reduction_curve(params: &FormParams, basis: &CyclotomicBasis) -> Result<MultiPoly> {
    let form = build_form_unchecked(params, basis)?.form;
    form.restrict(&var_names(&["t", "y1", "y2"]))
}

pub fn hasse_weil_check(
    params: &FormParams,
    basis: &CyclotomicBasis,
    p: u64,
) -> Result<CurveCount> {
    if !matches!(params.variant, Variant::T1 | Variant::G1 | Variant::L) {
        return Err(Error::Precondition(format!(
            "{:?} has no plane reduction curve of this shape",
            params.variant
        )));
    }
    let bad = params.alpha_product() * BigInt::from(params.n_prime);
    if bad.is_multiple_of(&BigInt::from(p)) {
        return Err(Error::Precondition(format!(
            "p = {p} divides alpha0(alpha0+1) N"
        )));
    }
    let curve = reduction_curve(params, basis)?;
    let n = params.n as u64;
    let genus = n * (2 * n - 1);
    let compiled = ModPoly::new(&curve, p)?;
    let grad: Vec<ModPoly> = gradient(&curve)
        .iter()
        .map(|g| ModPoly::new(g, p))
        .collect::<Result<_>>()?;
    let charts = projective_charts(&compiled, &[None, None, None]);
    let count = charts.iter().map(|c| c.count()).sum();
    let singular = |pt: &[u64]| grad.iter().all(|g| g.eval(pt) == 0);
    let smooth = charts.iter().all(|c| c.find_first(&singular).is_none());
    Ok(CurveCount {
        p,
        count,
        genus,
        smooth,
        within_bound: hasse_weil_holds(count, p, genus),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{minimal_polynomial, ThetaVariant};

    #[test]
    fn genus_one_at_37() {
        let params = FormParams::new(Variant::T1, 1, 2, vec![], vec![], 1, 2).unwrap();
        let basis = minimal_polynomial(7, ThetaVariant::RealTheta).unwrap();
        let c = hasse_weil_check(&params, &basis, 37).unwrap();
        assert_eq!(c.genus, 1);
        assert!(c.smooth);
        assert!(c.within_bound);
        assert!((26..=50).contains(&c.count));
        assert!(hasse_weil_check(&params, &basis, 3).is_err());
        assert!(hasse_weil_check(&params, &basis, 7).is_err());
    }

    #[test]
    fn bound_arithmetic() {
        assert!(hasse_weil_holds(38, 37, 1));
        assert!(hasse_weil_holds(50, 37, 1)); // 144 <= 148
        assert!(!hasse_weil_holds(51, 37, 1)); // 169 > 148
        assert!(!hasse_weil_holds(25, 37, 1));
    }
}
