//! Admissible-parameter search.
//!
//! For T1 and L, `alpha0` is assembled by CRT: first a residue `r (mod N)` with
//! `r (r + 1) = +-1`, then for each required prime `q` (ascending) the branch
//! `alpha0 = 0` or `alpha0 = -1 (mod q)` whose combined residue is smaller,
//! ties going to `0`. Each admissible `r` yields one progression
//! `a_r + k M`; the search returns the smallest members of their union.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{check_conditions, required_primes, FormParams, Variant};
use crate::error::{Error, Result};
use crate::exactmath::crt_solve;

/// Residues `r (mod N)` with `r (r + 1) = +-1 (mod N)`, with the sign.
pub fn signed_residue_classes(n_prime: u64) -> Vec<(u64, i8)> {
    (0..n_prime)
        .filter_map(|r| {
            let v = (r * (r + 1)) % n_prime;
            if v == 1 {
                Some((r, 1))
            } else if v == n_prime - 1 {
                Some((r, -1))
            } else {
                None
            }
        })
        .collect()
}

/// Quadratic-reciprocity form of the same test: `(2r+1)^2 = 5` or `-3` is
/// solvable unless `N = 2, 8 (mod 15)`. Valid for primes `N > 5`.
pub fn reciprocity_admissible(n_prime: u64) -> bool {
    !matches!(n_prime % 15, 2 | 8)
}

fn greedy_class(start: u64, n_prime: u64, primes: &[u64]) -> Result<(BigInt, BigInt)> {
    let mut acc = (BigInt::from(start), BigInt::from(n_prime));
    for &q in primes {
        let qb = BigInt::from(q);
        let zero = crt_solve(&[acc.clone(), (BigInt::zero(), qb.clone())])?;
        let minus = crt_solve(&[acc.clone(), (&qb - 1u32, qb)])?;
        acc = if minus.0 < zero.0 { minus } else { zero };
    }
    Ok(acc)
}

/// The `count` smallest admissible `alpha0` values for the family at prime
/// `n_prime`, assembled into full parameter sets.
pub fn search_params(
    n_prime: u64,
    variant: Variant,
    count: usize,
    beta: u32,
    gamma: usize,
) -> Result<Vec<FormParams>> {
    let n = variant.n_for_prime(n_prime)?;
    let (lo, hi) = variant.gamma_range(n);
    if gamma < lo || gamma > hi {
        return Err(Error::Invalid(format!(
            "gamma = {gamma} outside [{lo}, {hi}] for {variant:?}"
        )));
    }
    let alpha0s = match variant {
        Variant::T1 | Variant::L => {
            if beta < 1 {
                return Err(Error::Invalid(format!(
                    "{variant:?} search needs beta >= 1"
                )));
            }
            let classes = signed_residue_classes(n_prime);
            if classes.is_empty() {
                return Err(Error::NoAdmissibleResidue(format!(
                    "alpha0(alpha0+1) = +-1 (mod {n_prime}) has no solution (N = {} mod 15)",
                    n_prime % 15
                )));
            }
            let primes = required_primes(n, n_prime);
            let mut progressions = classes
                .iter()
                .map(|&(r, _)| greedy_class(r, n_prime, &primes))
                .collect::<Result<Vec<_>>>()?;
            progressions.sort();
            let modulus = progressions[0].1.clone();
            let mut out = Vec::with_capacity(count);
            let mut k = BigInt::zero();
            while out.len() < count {
                for (a, _) in &progressions {
                    if out.len() == count {
                        break;
                    }
                    out.push(a + &k * &modulus);
                }
                k += 1;
            }
            out
        }
        Variant::G1 | Variant::G2 | Variant::G3 => {
            // The global theorems only need alpha0(alpha0 + 1) prime to N.
            (1u64..)
                .filter(|a| a % n_prime != 0 && (a + 1) % n_prime != 0)
                .take(count)
                .map(BigInt::from)
                .collect()
        }
    };

    let mut out = Vec::with_capacity(alpha0s.len());
    for a0 in alpha0s {
        let params = assemble(variant, n, n_prime, a0, beta, gamma)?;
        let report = check_conditions(&params);
        if !report.pass {
            let failed: Vec<_> = report.failures().map(|e| e.id.clone()).collect();
            return Err(Error::NoAdmissibleResidue(format!(
                "assembled alpha0 = {} fails {}",
                params.alpha0(),
                failed.join(", ")
            )));
        }
        out.push(params);
    }
    Ok(out)
}

fn minimal_coprime(to: &BigInt) -> BigInt {
    let mut a = BigInt::one();
    while !a.gcd(to).is_one() {
        a += 1;
    }
    a
}

fn assemble(
    variant: Variant,
    n: u32,
    n_prime: u64,
    alpha0: BigInt,
    beta: u32,
    gamma: usize,
) -> Result<FormParams> {
    let prod = &alpha0 * (&alpha0 + 1u32);
    let alpha1 = minimal_coprime(&prod);
    let zero = BigInt::zero;
    let (alphas, betas, beta) = match variant {
        Variant::T1 => {
            let mut a = vec![zero(); (n - 1) as usize];
            if let Some(first) = a.first_mut() {
                *first = alpha1;
            }
            (a, vec![], beta)
        }
        Variant::L => {
            let mut a = vec![zero(); n as usize];
            if n >= 2 {
                a[0] = alpha1;
            }
            a[n as usize - 1] = BigInt::from(n_prime).pow(beta - 1);
            (a.clone(), a, 0)
        }
        Variant::G1 => (vec![zero(); (n - 1) as usize], vec![], beta),
        Variant::G2 | Variant::G3 => (vec![zero(); n.saturating_sub(2) as usize], vec![], beta),
    };
    FormParams::new(variant, n, alpha0, alphas, betas, beta, gamma)
}
