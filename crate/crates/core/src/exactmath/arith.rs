//! Integer and modular helpers: primes, valuations, multiplicative orders, CRT.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serde_big;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes strictly below `bound` (sieve of Eratosthenes).
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// `p`-adic valuation; `None` for zero.
pub fn valuation(value: &BigInt, p: u64) -> Option<u32> {
    if value.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = value.abs();
    let mut k = 0;
    loop {
        let (q, r) = v.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        v = q;
        k += 1;
    }
}

/// `p`-adic valuation truncated at `cap` (zero counts as `cap`).
pub fn valuation_capped(value: &BigInt, p: u64, cap: u32) -> u32 {
    valuation(value, p).map_or(cap, |v| v.min(cap))
}

/// Least `f >= 1` with `q^f = 1 (mod n)`, or `q^f = +-1` when `quotient_by_sign`.
pub fn mod_order(q: u64, n: u64, quotient_by_sign: bool) -> Result<u64> {
    if n < 2 {
        return Err(Error::BadModulus);
    }
    let q = q % n;
    if q == 0 || q.gcd(&n) != 1 {
        return Err(Error::NotUnit {
            value: q,
            modulus: n,
        });
    }
    let mut x = q;
    let mut f = 1;
    loop {
        if x == 1 || (quotient_by_sign && x == n - 1) {
            return Ok(f);
        }
        x = mul_mod(x, q, n);
        f += 1;
    }
}

/// Solve a system of congruences with pairwise coprime moduli.
///
/// Returns the unique residue in `[0, M)` together with `M`.
pub fn crt_solve(congruences: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    let mut r = BigInt::zero();
    let mut m = BigInt::one();
    for (a, n) in congruences {
        if n < &BigInt::one() {
            return Err(Error::BadModulus);
        }
        let eg = m.extended_gcd(n);
        if !eg.gcd.is_one() {
            return Err(Error::NonCoprimeModuli(m.to_string(), n.to_string()));
        }
        // r + m * ((a - r) * m^{-1} mod n)
        let inv = eg.x.mod_floor(n);
        let t = ((a - &r) * inv).mod_floor(n);
        r += &m * t;
        m *= n;
        r = r.mod_floor(&m);
    }
    Ok((r, m))
}

/// An integer with some of its prime factorisation recorded at construction
/// time. The product of the listed prime powers times `cofactor` is `value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredInteger {
    #[serde(with = "serde_big")]
    value: BigInt,
    factors: Vec<(u64, u32)>,
    #[serde(with = "serde_big")]
    cofactor: BigInt,
}

impl FactoredInteger {
    /// Divide out each of `primes` from `value` as far as possible. Only the
    /// given primes are tried; nothing else is factored.
    pub fn with_known_primes(value: BigInt, primes: &[u64]) -> Result<Self> {
        let mut cofactor = value.clone();
        let mut factors = Vec::new();
        let mut seen: Vec<u64> = Vec::new();
        for &p in primes {
            if !is_prime(p) {
                return Err(Error::Invalid(format!("{p} is not prime")));
            }
            if seen.contains(&p) {
                continue;
            }
            seen.push(p);
            if cofactor.is_zero() {
                break;
            }
            let pb = BigInt::from(p);
            let mut e = 0;
            loop {
                let (q, r) = cofactor.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                cofactor = q;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        }
        Ok(FactoredInteger {
            value,
            factors,
            cofactor,
        })
    }

    pub fn from_parts(value: BigInt, factors: Vec<(u64, u32)>, cofactor: BigInt) -> Result<Self> {
        let f = FactoredInteger {
            value,
            factors,
            cofactor,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = Vec::new();
        let mut prod = self.cofactor.clone();
        for &(p, e) in &self.factors {
            if !is_prime(p) {
                return Err(Error::Invalid(format!("listed factor {p} is not prime")));
            }
            if seen.contains(&p) {
                return Err(Error::Invalid(format!("factor {p} listed twice")));
            }
            seen.push(p);
            prod *= BigInt::from(p).pow(e);
        }
        if prod != self.value {
            return Err(Error::Invalid(
                "prime powers times cofactor do not equal the value".into(),
            ));
        }
        Ok(())
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn cofactor(&self) -> &BigInt {
        &self.cofactor
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| *q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// Residue of a big integer modulo a machine-sized modulus, in `[0, m)`.
pub fn residue(value: &BigInt, m: u64) -> u64 {
    value.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn orders_mod_seven() {
        assert_eq!(mod_order(2, 7, false).unwrap(), 3);
        assert_eq!(mod_order(3, 7, false).unwrap(), 6);
        assert_eq!(mod_order(3, 7, true).unwrap(), 3);
        assert_eq!(mod_order(1, 11, false).unwrap(), 1);
        assert_eq!(mod_order(1, 11, true).unwrap(), 1);
        assert_eq!(mod_order(6, 7, true).unwrap(), 1);
    }

    #[test]
    fn order_of_zero_residue_is_an_error() {
        assert!(matches!(
            mod_order(14, 7, false),
            Err(Error::NotUnit { .. })
        ));
    }

    #[test]
    fn crt_examples() {
        assert_eq!(
            crt_solve(&[(big(2), big(3)), (big(2), big(7))]).unwrap(),
            (big(2), big(21))
        );
        assert_eq!(
            crt_solve(&[(big(0), big(2)), (big(2), big(3)), (big(2), big(7))]).unwrap(),
            (big(2), big(42))
        );
        assert_eq!(
            crt_solve(&[(big(1), big(4)), (big(3), big(9))]).unwrap(),
            (big(21), big(36))
        );
    }

    #[test]
    fn crt_rejects_shared_factors() {
        assert!(matches!(
            crt_solve(&[(big(1), big(4)), (big(3), big(6))]),
            Err(Error::NonCoprimeModuli(..))
        ));
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, primes_below(60));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&big(72), 2), Some(3));
        assert_eq!(valuation(&big(-72), 3), Some(2));
        assert_eq!(valuation(&big(0), 3), None);
        assert_eq!(valuation_capped(&big(0), 3, 5), 5);
    }

    #[test]
    fn factored_integer_invariants() {
        let f = FactoredInteger::with_known_primes(big(360), &[2, 3, 7]).unwrap();
        assert_eq!(f.factors(), &[(2, 3), (3, 2)]);
        assert_eq!(f.cofactor(), &big(5));
        f.validate().unwrap();
        assert!(FactoredInteger::from_parts(big(12), vec![(2, 2)], big(4)).is_err());
        assert!(FactoredInteger::from_parts(big(12), vec![(4, 1)], big(3)).is_err());
    }
}
