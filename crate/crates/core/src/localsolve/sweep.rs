use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hensel::{certify_point, find_liftable_point, LocalCertificate, DEFAULT_K_MAX};
use super::special::{special_branch, special_prime_certificate_with_form};
use crate::cyclotomic::CyclotomicBasis;
use crate::error::Result;
use crate::exactmath::{primes_below, MultiPoly};
use crate::forms::{build_form_unchecked, FormParams};

pub const DEFAULT_P_ENUM_MAX: u64 = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub p: u64,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub certificates: Vec<LocalCertificate>,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn primes(&self) -> Vec<u64> {
        self.certificates.iter().map(|c| c.p).collect()
    }

    fn from_outcomes(outcomes: Vec<(u64, std::result::Result<LocalCertificate, String>)>) -> Self {
        let mut report = SweepReport::default();
        for (p, o) in outcomes {
            match o {
                Ok(c) => report.certificates.push(c),
                Err(reason) => report.failures.push(SweepFailure { p, reason }),
            }
        }
        report
    }
}

/// Every prime `<= p_enum_max`, every recorded prime factor of
/// `alpha0 (alpha0 + 1)`, and `N`, ascending.
pub fn sweep_primes(params: &FormParams, p_enum_max: u64) -> Vec<u64> {
    let mut ps = primes_below(p_enum_max + 1);
    ps.extend(params.alpha0.product.primes());
    ps.push(params.n_prime);
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// Local certificates for a family member at every prime of
/// [`sweep_primes`]. Points are found on the `gamma = 2` slice and measured
/// against the full form.
pub fn local_sweep(
    params: &FormParams,
    basis: &CyclotomicBasis,
    p_enum_max: u64,
) -> Result<SweepReport> {
    let form = build_form_unchecked(params, basis)?.form;
    Ok(local_sweep_built(params, &form, p_enum_max))
}

pub fn local_sweep_built(params: &FormParams, form: &MultiPoly, p_enum_max: u64) -> SweepReport {
    let keep: Vec<String> = form.vars().iter().take(4).cloned().collect();
    let slice = form
        .restrict(&keep)
        .expect("prefix of the form's own variables");
    let outcomes = sweep_primes(params, p_enum_max)
        .into_par_iter()
        .map(|p| (p, certify_family_prime(params, form, &slice, p, p_enum_max)))
        .collect();
    SweepReport::from_outcomes(outcomes)
}

fn certify_family_prime(
    params: &FormParams,
    form: &MultiPoly,
    slice: &MultiPoly,
    p: u64,
    p_enum_max: u64,
) -> std::result::Result<LocalCertificate, String> {
    let mut notes = Vec::new();
    if special_branch(params, p).is_some() {
        match special_prime_certificate_with_form(params, slice, p) {
            Ok(c) => return extend(form, c),
            Err(e) => notes.push(e.to_string()),
        }
    }
    if p > p_enum_max {
        notes.push(format!(
            "p = {p} exceeds the enumeration bound {p_enum_max}"
        ));
        return Err(notes.join("; "));
    }
    match find_liftable_point(slice, p, DEFAULT_K_MAX) {
        Ok(c) => extend(form, c),
        Err(e) => {
            notes.push(e.to_string());
            Err(notes.join("; "))
        }
    }
}

fn extend(form: &MultiPoly, c: LocalCertificate) -> std::result::Result<LocalCertificate, String> {
    let mut point = c.point;
    point.resize(form.nvars(), BigInt::from(0u32));
    certify_point(form, point, c.p, c.k, c.branch)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| format!("slice point does not certify the full form at p = {}", c.p))
}

/// Enumeration-only sweep for an arbitrary form.
pub fn local_sweep_form(form: &MultiPoly, primes: &[u64], k_max: u32) -> SweepReport {
    let outcomes = primes
        .par_iter()
        .map(|&p| {
            (
                p,
                find_liftable_point(form, p, k_max).map_err(|e| e.to_string()),
            )
        })
        .collect();
    SweepReport::from_outcomes(outcomes)
}
