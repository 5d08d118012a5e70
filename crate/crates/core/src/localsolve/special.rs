//! Certificates built directly at the point `(1, x0, 0, ..., 0)`.
//!
//! When `p` divides `alpha0` or `alpha0 + 1` the value at `(1, 0, 0, ...)` is
//! `alpha0 (alpha0 + 1) = 0 (mod p)` and the `x`-derivative is generically a
//! unit. When `p = N` every bracket reduces to its `t` term, so
//! `f(1, x, 0, ...) = alpha0 (alpha0 + 1) - x^d (mod N)` and `x0 = +-1`.

use num_bigint::BigInt;
use num_integer::Integer;

use super::hensel::{certify_point, Branch, LocalCertificate};
use crate::cyclotomic::CyclotomicBasis;
use crate::error::{Error, Result};
use crate::exactmath::MultiPoly;
use crate::forms::{build_form_unchecked, FormParams};

/// Which recipe applies at `p`, if any.
pub fn special_branch(params: &FormParams, p: u64) -> Option<Branch> {
    let pb = BigInt::from(p);
    if p == params.n_prime {
        Some(Branch::SpecialN)
    } else if params.alpha0().is_multiple_of(&pb) {
        Some(Branch::SpecialAlpha0)
    } else if (params.alpha0() + 1u32).is_multiple_of(&pb) {
        Some(Branch::SpecialAlpha0Plus1)
    } else {
        None
    }
}

/// Build the family form from `params` and apply the recipe at `p`.
pub fn special_prime_certificate(
    params: &FormParams,
    basis: &CyclotomicBasis,
    p: u64,
) -> Result<LocalCertificate> {
    let built = build_form_unchecked(params, basis)?;
    special_prime_certificate_with_form(params, &built.form, p)
}

/// As [`special_prime_certificate`] with the form already built. `form` may
/// be the family form or any slice of it keeping `t` and `x` in front.
pub fn special_prime_certificate_with_form(
    params: &FormParams,
    form: &MultiPoly,
    p: u64,
) -> Result<LocalCertificate> {
    let branch = special_branch(params, p).ok_or_else(|| Error::RecipeInapplicable {
        p,
        reason: "p divides neither alpha0, alpha0 + 1 nor equals N".into(),
    })?;
    if form.nvars() < 2 {
        return Err(Error::RecipeInapplicable {
            p,
            reason: "form has fewer than two variables".into(),
        });
    }
    let candidates: Vec<u64> = match branch {
        Branch::SpecialN => vec![1, p - 1],
        _ => vec![0],
    };
    for x0 in candidates {
        let mut point = vec![BigInt::from(0u32); form.nvars()];
        point[0] = BigInt::from(1u32);
        point[1] = BigInt::from(x0);
        if let Some(cert) = certify_point(form, point.clone(), p, 2, branch)? {
            return Ok(cert);
        }
        // singular base point: v_grad = 1 or 2
        for k in [3u32, 5] {
            if let Some(cert) = certify_point(form, point.clone(), p, k, branch)? {
                return Ok(cert);
            }
        }
    }
    Err(Error::RecipeInapplicable {
        p,
        reason: format!("Newton condition fails at the {branch:?} base point"),
    })
}
