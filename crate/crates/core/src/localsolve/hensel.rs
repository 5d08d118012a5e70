//! Hensel certificates for Q_p points.
//!
//! A certificate is an integer point `a` (coordinates in `[0, p^k)`, not all
//! divisible by `p`) together with `v_f = min(v_p(f(a)), k)` and
//! `v_grad = min(min_i v_p(df/dx_i (a)), k)`. It is valid when
//! `v_f > 2 v_grad` and `k >= 2 v_grad + 1`; then Newton's iteration from `a`
//! converges to a zero of `f` in Z_p^n congruent to `a` modulo `p^(v_grad+1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::fp::{gradient, projective_charts, to_big, ModPoly};
use crate::error::{Error, Result};
use crate::exactmath::arith::{is_prime, valuation_capped};
use crate::exactmath::MultiPoly;
use crate::serde_big;

pub const DEFAULT_K_MAX: u32 = 25;

/// Evaluation budget for lifting singular points.
const LIFT_BUDGET: usize = 400_000;
/// Cap on the number of singular F_p points used as lifting seeds.
const SEED_CAP: usize = 4_096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Enumeration,
    SpecialAlpha0,
    SpecialAlpha0Plus1,
    SpecialN,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalCertificate {
    pub p: u64,
    pub k: u32,
    #[serde(with = "serde_big::vec")]
    pub point: Vec<BigInt>,
    pub v_f: u32,
    pub v_grad: u32,
    pub branch: Branch,
}

/// `(v_f, v_grad)` of `f` at `point`, both truncated at `k`.
pub fn measure(
    f: &MultiPoly,
    grad: &[MultiPoly],
    point: &[BigInt],
    p: u64,
    k: u32,
) -> Result<(u32, u32)> {
    let v_f = valuation_capped(&f.eval(point)?, p, k);
    let mut v_grad = k;
    for g in grad {
        v_grad = v_grad.min(valuation_capped(&g.eval(point)?, p, k));
    }
    Ok((v_f, v_grad))
}

fn newton_holds(v_f: u32, v_grad: u32, k: u32) -> bool {
    v_f > 2 * v_grad && k > 2 * v_grad
}

/// Replay a certificate against `f` from its stored fields alone.
pub fn verify_certificate(
    f: &MultiPoly,
    cert: &LocalCertificate,
) -> std::result::Result<(), String> {
    let p = cert.p;
    if !is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    if cert.k == 0 {
        return Err("precision must be positive".into());
    }
    if cert.point.len() != f.nvars() {
        return Err(format!(
            "point has {} coordinates, form has {} variables",
            cert.point.len(),
            f.nvars()
        ));
    }
    let pk = BigInt::from(p).pow(cert.k);
    let pb = BigInt::from(p);
    if cert.point.iter().any(|c| c < &BigInt::zero() || c >= &pk) {
        return Err("coordinate outside [0, p^k)".into());
    }
    match cert.point.iter().find(|c| !c.is_multiple_of(&pb)) {
        None => return Err("point vanishes modulo p".into()),
        Some(c) if !c.is_one() => return Err("first unit coordinate is not normalised to 1".into()),
        Some(_) => {}
    }
    let grad = gradient(f);
    let (v_f, v_grad) = measure(f, &grad, &cert.point, p, cert.k).map_err(|e| e.to_string())?;
    if v_f != cert.v_f {
        return Err(format!(
            "v_f recomputes to {v_f}, certificate says {}",
            cert.v_f
        ));
    }
    if v_grad != cert.v_grad {
        return Err(format!(
            "v_grad recomputes to {v_grad}, certificate says {}",
            cert.v_grad
        ));
    }
    if !newton_holds(v_f, v_grad, cert.k) {
        return Err(format!(
            "Newton condition fails: v_f = {v_f}, v_grad = {v_grad}, k = {}",
            cert.k
        ));
    }
    Ok(())
}

/// Re-measure a point against a (possibly larger) form, keeping `k`.
pub(crate) fn certify_point(
    f: &MultiPoly,
    point: Vec<BigInt>,
    p: u64,
    k: u32,
    branch: Branch,
) -> Result<Option<LocalCertificate>> {
    let grad = gradient(f);
    let (v_f, v_grad) = measure(f, &grad, &point, p, k)?;
    Ok(newton_holds(v_f, v_grad, k).then_some(LocalCertificate {
        p,
        k,
        point,
        v_f,
        v_grad,
        branch,
    }))
}

/// Search for a Q_p point on the projective hypersurface `f = 0`.
///
/// First looks for an F_p point where the gradient does not vanish; failing
/// that, lifts the singular F_p points level by level modulo `p^2, p^3, ...`
/// until the Newton condition holds or `k_max` is reached.
pub fn find_liftable_point(f: &MultiPoly, p: u64, k_max: u32) -> Result<LocalCertificate> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let fm = ModPoly::new(f, p)?;
    let grad = gradient(f);
    let grad_m: Vec<ModPoly> = grad
        .iter()
        .map(|g| ModPoly::new(g, p))
        .collect::<Result<_>>()?;
    let charts = projective_charts(&fm, &vec![None; f.nvars()]);

    for chart in &charts {
        let smooth = |pt: &[u64]| grad_m.iter().any(|g| g.eval(pt) != 0);
        if let Some(pt) = chart.find_first(&smooth) {
            let point = to_big(&pt);
            return Ok(LocalCertificate {
                p,
                k: 1,
                point,
                v_f: 1,
                v_grad: 0,
                branch: Branch::Enumeration,
            });
        }
    }

    // Every F_p point is singular: collect seeds with their chart position.
    let mut seeds: Vec<(Vec<BigInt>, usize)> = Vec::new();
    for chart in &charts {
        let lead = chart.base.iter().position(|&v| v == 1).unwrap_or(0);
        for pt in chart.zeros() {
            seeds.push((to_big(&pt), lead));
            if seeds.len() >= SEED_CAP {
                break;
            }
        }
        if seeds.len() >= SEED_CAP {
            break;
        }
    }
    if seeds.is_empty() {
        return Err(Error::NotFound { p, k_max });
    }
    lift_singular(f, &grad, p, k_max, seeds)
}

fn lift_singular(
    f: &MultiPoly,
    grad: &[MultiPoly],
    p: u64,
    k_max: u32,
    seeds: Vec<(Vec<BigInt>, usize)>,
) -> Result<LocalCertificate> {
    let n = f.nvars();
    let pb = BigInt::from(p);
    let mut frontier = seeds;
    let mut pk = pb.clone();
    let mut budget = LIFT_BUDGET;
    for k in 1..=k_max {
        for (pt, _) in &frontier {
            let (v_f, v_grad) = measure(f, grad, pt, p, k)?;
            if newton_holds(v_f, v_grad, k) {
                return Ok(LocalCertificate {
                    p,
                    k,
                    point: pt.clone(),
                    v_f,
                    v_grad,
                    branch: Branch::Enumeration,
                });
            }
        }
        if k == k_max {
            break;
        }
        let next_pk = &pk * &pb;
        let mut next = Vec::new();
        'outer: for (pt, lead) in &frontier {
            let free: Vec<usize> = (0..n).filter(|i| i != lead).collect();
            let mut digits = vec![0u64; free.len()];
            loop {
                let mut cand = pt.clone();
                for (&i, &d) in free.iter().zip(&digits) {
                    if d != 0 {
                        cand[i] += &pk * BigInt::from(d);
                    }
                }
                if budget == 0 {
                    break 'outer;
                }
                budget -= 1;
                if f.eval(&cand)?.is_multiple_of(&next_pk) {
                    next.push((cand, *lead));
                    if next.len() >= SEED_CAP {
                        break 'outer;
                    }
                }
                let mut j = digits.len();
                loop {
                    if j == 0 {
                        continue 'outer;
                    }
                    j -= 1;
                    digits[j] += 1;
                    if digits[j] < p {
                        break;
                    }
                    digits[j] = 0;
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
        pk = next_pk;
    }
    Err(Error::NotFound { p, k_max })
}
