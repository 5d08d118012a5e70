//! Real points by exact dyadic bisection.

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::MultiPoly;
use crate::serde_big;

const TOLERANCE: f64 = 1e-12;
const MAX_STEPS: u32 = 2000;

/// A real projective point: `solved = numerator / 2^exponent`, `fixed = 1`,
/// every other coordinate 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealPoint {
    pub solved: String,
    pub fixed: String,
    #[serde(with = "serde_big")]
    pub numerator: BigInt,
    pub exponent: u32,
    pub point: Vec<f64>,
    pub residual: f64,
}

impl RealPoint {
    pub fn value(&self) -> f64 {
        ratio_to_f64(&self.numerator, self.exponent as u64)
    }
}

/// `num / 2^shift` as a float without overflowing on large operands.
pub fn ratio_to_f64(num: &BigInt, shift: u64) -> f64 {
    let excess = num.bits().saturating_sub(60);
    let head = (num >> excess).to_f64().unwrap_or(0.0);
    let mut e = excess as i64 - shift as i64;
    let mut v = head;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

/// `g(a / 2^e) * 2^(e d)` for `g` of degree `d`, lowest coefficient first.
fn scaled_eval(coeffs: &[BigInt], a: &BigInt, e: u32) -> BigInt {
    let d = coeffs.len() - 1;
    let mut out = BigInt::zero();
    let mut pow_a = BigInt::from(1u32);
    for (i, c) in coeffs.iter().enumerate() {
        out += (c * &pow_a) << (e as usize * (d - i));
        pow_a *= a;
    }
    out
}

fn residual(coeffs: &[BigInt], a: &BigInt, e: u32) -> f64 {
    let d = (coeffs.len() - 1) as u64;
    ratio_to_f64(&scaled_eval(coeffs, a, e), e as u64 * d).abs()
}

/// Integer `B` with every real root of `g` in `(-B, B)`.
fn cauchy_bound(coeffs: &[BigInt]) -> BigInt {
    let lead = coeffs.last().unwrap().abs();
    let max = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    max / lead + 2u32
}

/// Bisect `g` on `[lo, hi] / 2^e` given opposite signs at the ends.
fn bisect(coeffs: &[BigInt], mut lo: BigInt, mut hi: BigInt, mut e: u32) -> (BigInt, u32) {
    let s_lo = scaled_eval(coeffs, &lo, e).sign();
    for _ in 0..MAX_STEPS {
        lo <<= 1;
        hi <<= 1;
        e += 1;
        let mid: BigInt = (&lo + &hi) >> 1;
        let v = scaled_eval(coeffs, &mid, e);
        if v.is_zero() || residual(coeffs, &mid, e) < TOLERANCE {
            return (mid, e);
        }
        if v.sign() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, e)
}

fn root_of(coeffs: &[BigInt]) -> Option<(BigInt, u32)> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return None;
    }
    let b = cauchy_bound(coeffs);
    let sign_at = |x: &BigInt| scaled_eval(coeffs, x, 0).sign();
    if d % 2 == 1 {
        return Some(bisect(coeffs, -b.clone(), b, 0));
    }
    // even degree: look for an integer sign change inside the bound
    let mut prev = -b.clone();
    let mut s_prev = sign_at(&prev);
    let mut x = &prev + 1u32;
    while x <= b {
        let s = sign_at(&x);
        if s == Sign::NoSign {
            return Some((x, 0));
        }
        if s_prev != Sign::NoSign && s != s_prev {
            return Some(bisect(coeffs, prev, x, 0));
        }
        prev = x.clone();
        s_prev = s;
        x += 1u32;
    }
    None
}

/// A real zero of a homogeneous form: for each variable in turn, the next
/// variable (cyclically) is set to 1, the rest to 0, and the univariate
/// polynomial left over is solved. Odd degree always succeeds; even degree
/// succeeds only when a sign change is seen.
pub fn real_point(f: &MultiPoly) -> Result<RealPoint> {
    let n = f.nvars();
    if n < 2 {
        return Err(Error::NoRealPoint("need at least two variables".into()));
    }
    for solve in 0..n {
        let fixed = (solve + 1) % n;
        let mut g = f.clone();
        for j in 0..n {
            if j != solve {
                let v = BigInt::from((j == fixed) as u32);
                g = g.substitute(j, &v);
            }
        }
        let coeffs: Vec<BigInt> = g
            .univariate_coeffs(solve)
            .iter()
            .map(|c| c.as_constant().expect("all other variables substituted"))
            .collect();
        if coeffs.len() < 2 || coeffs.last().unwrap().is_zero() {
            continue;
        }
        if let Some((a, e)) = root_of(&coeffs) {
            let value = ratio_to_f64(&a, e as u64);
            let mut point = vec![0.0; n];
            point[solve] = value;
            point[fixed] = 1.0;
            return Ok(RealPoint {
                solved: f.vars()[solve].clone(),
                fixed: f.vars()[fixed].clone(),
                residual: residual(&coeffs, &a, e),
                numerator: a,
                exponent: e,
                point,
            });
        }
    }
    Err(Error::NoRealPoint(format!(
        "no sign change found on any coordinate line of a degree-{} form",
        f.total_degree().unwrap_or(0)
    )))
}

/// Recompute the residual of a stored real point against `f`.
pub fn real_point_residual(f: &MultiPoly, rp: &RealPoint) -> Result<f64> {
    let solve = f
        .var_index(&rp.solved)
        .ok_or_else(|| Error::MissingVariable(rp.solved.clone()))?;
    let fixed = f
        .var_index(&rp.fixed)
        .ok_or_else(|| Error::MissingVariable(rp.fixed.clone()))?;
    let mut point = vec![BigInt::zero(); f.nvars()];
    point[solve] = rp.numerator.clone();
    point[fixed] = BigInt::from(1u32) << rp.exponent as usize;
    let d = f.total_degree().unwrap_or(0) as u64;
    Ok(ratio_to_f64(&f.eval(&point)?, rp.exponent as u64 * d).abs())
}
