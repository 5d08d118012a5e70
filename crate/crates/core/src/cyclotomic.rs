//! Minimal polynomials of `theta = 2 - 2cos(2 pi / N)` and `theta = 1 - zeta_N`,
//! and the norm forms `prod_m (x + sum_i theta_m^i y_i)` they induce.
//!
//! Everything here is exact. The real minimal polynomial is obtained by
//! folding the cyclotomic polynomial along `w = z + 1/z` and substituting
//! `w = 2 - theta`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{is_prime, symmetric_functions, MultiPoly};

/// Largest N accepted by [`minimal_polynomial`]; raise it with
/// [`minimal_polynomial_up_to`].
pub const DEFAULT_N_CEILING: u64 = 43;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaVariant {
    /// `theta_m = 2 - 2cos(2 pi m / N)`, degree `(N-1)/2`.
    RealTheta,
    /// `theta_m = 1 - exp(2 pi i m / N)`, degree `N-1`.
    OneMinusZeta,
}

impl ThetaVariant {
    pub fn degree(self, n_prime: u64) -> usize {
        match self {
            ThetaVariant::RealTheta => ((n_prime - 1) / 2) as usize,
            ThetaVariant::OneMinusZeta => (n_prime - 1) as usize,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BasisRecord", into = "BasisRecord")]
pub struct CyclotomicBasis {
    n_prime: u64,
    variant: ThetaVariant,
    minpoly: MultiPoly,
}

#[derive(Serialize, Deserialize)]
struct BasisRecord {
    #[serde(rename = "N")]
    n_prime: u64,
    variant: ThetaVariant,
    minpoly: String,
}

impl From<CyclotomicBasis> for BasisRecord {
    fn from(b: CyclotomicBasis) -> Self {
        BasisRecord {
            n_prime: b.n_prime,
            variant: b.variant,
            minpoly: b.minpoly.to_text(),
        }
    }
}

impl TryFrom<BasisRecord> for CyclotomicBasis {
    type Error = Error;
    fn try_from(r: BasisRecord) -> Result<Self> {
        let minpoly = MultiPoly::parse(&r.minpoly, vec!["z".to_string()])?;
        let b = CyclotomicBasis {
            n_prime: r.n_prime,
            variant: r.variant,
            minpoly,
        };
        b.validate()?;
        Ok(b)
    }
}

impl CyclotomicBasis {
    #[allow(non_snake_case)]
    pub fn N(&self) -> u64 {
        self.n_prime
    }

    pub fn variant(&self) -> ThetaVariant {
        self.variant
    }

    pub fn degree(&self) -> usize {
        self.variant.degree(self.n_prime)
    }

    /// The monic minimal polynomial of `theta_1`, in the variable `z`.
    pub fn minpoly(&self) -> &MultiPoly {
        &self.minpoly
    }

    /// Integer coefficients of the minimal polynomial, lowest power first.
    pub fn coefficients(&self) -> Vec<BigInt> {
        univariate_coeffs(&self.minpoly)
    }

    /// Check the structural invariants: monic of the right degree,
    /// Eisenstein at N, constant term `+-N`.
    pub fn validate(&self) -> Result<()> {
        let c = self.coefficients();
        if c.len() != self.degree() + 1 {
            return Err(Error::Invalid(format!(
                "minimal polynomial has degree {}, expected {}",
                c.len() - 1,
                self.degree()
            )));
        }
        if !eisenstein_at(&self.minpoly, self.n_prime)? {
            return Err(Error::Invalid(format!(
                "not Eisenstein at {}",
                self.n_prime
            )));
        }
        if c[0].abs() != BigInt::from(self.n_prime) {
            return Err(Error::Invalid("constant term is not +-N".into()));
        }
        Ok(())
    }
}

fn univariate_coeffs(p: &MultiPoly) -> Vec<BigInt> {
    p.univariate_coeffs(0)
        .iter()
        .map(|c| c.as_constant().expect("univariate"))
        .collect()
}

fn z_poly(coeffs: &[BigInt]) -> MultiPoly {
    let vars = vec!["z".to_string()];
    MultiPoly::from_terms(
        vars,
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (vec![i as u32], c.clone())),
    )
    .expect("single variable")
}

/// `p(a + b z)` for a univariate coefficient list `p`.
fn compose_affine(p: &[BigInt], a: i64, b: i64) -> Vec<BigInt> {
    let lin = z_poly(&[BigInt::from(a), BigInt::from(b)]);
    let mut acc = MultiPoly::zero(vec!["z".to_string()]);
    for c in p.iter().rev() {
        acc = &(&acc * &lin) + &MultiPoly::constant(vec!["z".to_string()], c.clone());
    }
    let mut out = univariate_coeffs(&acc);
    out.resize(p.len(), BigInt::zero());
    out
}

pub fn minimal_polynomial(n_prime: u64, variant: ThetaVariant) -> Result<CyclotomicBasis> {
    minimal_polynomial_up_to(n_prime, variant, DEFAULT_N_CEILING)
}

pub fn minimal_polynomial_up_to(
    n_prime: u64,
    variant: ThetaVariant,
    ceiling: u64,
) -> Result<CyclotomicBasis> {
    if n_prime < 3 || !is_prime(n_prime) {
        return Err(Error::NotOddPrime(n_prime));
    }
    if n_prime > ceiling {
        return Err(Error::Invalid(format!(
            "N = {n_prime} exceeds the configured ceiling {ceiling}"
        )));
    }
    let cyclo = vec![BigInt::one(); n_prime as usize];
    let coeffs = match variant {
        // Phi_N(1 - z); N - 1 is even so the result is already monic.
        ThetaVariant::OneMinusZeta => compose_affine(&cyclo, 1, -1),
        ThetaVariant::RealTheta => {
            let d = ((n_prime - 1) / 2) as usize;
            // z^{-d} Phi_N(z) = 1 + sum_{k=1..d} (z^k + z^-k) = 1 + sum P_k(w)
            // with P_0 = 2, P_1 = w, P_k = w P_{k-1} - P_{k-2}.
            let mut folded = vec![BigInt::zero(); d + 1];
            folded[0] += 1;
            let mut prev = vec![BigInt::from(2)];
            let mut cur = vec![BigInt::zero(), BigInt::one()];
            for k in 1..=d {
                for (i, c) in cur.iter().enumerate() {
                    folded[i] += c;
                }
                if k == d {
                    break;
                }
                let mut next = vec![BigInt::zero(); cur.len() + 1];
                for (i, c) in cur.iter().enumerate() {
                    next[i + 1] += c;
                }
                for (i, c) in prev.iter().enumerate() {
                    next[i] -= c;
                }
                prev = std::mem::replace(&mut cur, next);
            }
            // theta = 2 - w, i.e. w = 2 - z
            let mut psi = compose_affine(&folded, 2, -1);
            if d % 2 == 1 {
                for c in psi.iter_mut() {
                    *c = -&*c;
                }
            }
            psi
        }
    };
    let basis = CyclotomicBasis {
        n_prime,
        variant,
        minpoly: z_poly(&coeffs),
    };
    basis.validate()?;
    Ok(basis)
}

/// Variable names `x, y1, .., y_gamma`.
pub fn norm_vars(gamma: usize) -> Vec<String> {
    std::iter::once("x".to_string())
        .chain((1..=gamma).map(|i| format!("y{i}")))
        .collect()
}

/// The norm form `prod_m (x + sum_{i=1..gamma} theta_m^i y_i)` over
/// `(x, y1, .., y_gamma)`, equal to `Res_z(Psi(z), x + sum y_i z^i)`.
///
/// With `h = sum y_i z^i` this is `sum_k E_k x^(d-k)`, where the `E_k` are the
/// elementary symmetric functions of the conjugates of `h`; those do not
/// involve `x`, which keeps the intermediate polynomials small.
pub fn norm_form(basis: &CyclotomicBasis, gamma: usize) -> Result<MultiPoly> {
    if gamma < 1 {
        return Err(Error::Invalid("gamma must be at least 1".into()));
    }
    let vars = norm_vars(gamma);
    let mut hvars = vars[1..].to_vec();
    hvars.push("z".to_string());
    let mut h = MultiPoly::zero(hvars.clone());
    for i in 1..=gamma {
        h = &h + &MultiPoly::var(hvars.clone(), &format!("y{i}"))?.shift(gamma, i as u32);
    }
    let elem = symmetric_functions(basis.minpoly(), &h, "z")?;
    let d = elem.len() - 1;
    let mut form = MultiPoly::zero(vars.clone());
    for (k, e) in elem.iter().enumerate() {
        let e = e.embed(&vars)?;
        form = &form + &e.shift(0, (d - k) as u32);
    }
    Ok(form)
}

/// True iff every non-leading coefficient of the monic univariate `psi` is
/// divisible by `p` and the constant term is not divisible by `p^2`.
pub fn eisenstein_at(psi: &MultiPoly, p: u64) -> Result<bool> {
    if psi.nvars() != 1 {
        return Err(Error::Invalid("expected a univariate polynomial".into()));
    }
    let c = univariate_coeffs(psi);
    if c.last() != Some(&BigInt::one()) {
        return Err(Error::NotMonic(psi.vars()[0].clone()));
    }
    let pb = BigInt::from(p);
    let lower_divisible = c[..c.len() - 1].iter().all(|a| a.is_multiple_of(&pb));
    Ok(lower_divisible && !c[0].is_multiple_of(&(&pb * &pb)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::var_names;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn heptagonal_real_minpoly() {
        let b = minimal_polynomial(7, ThetaVariant::RealTheta).unwrap();
        assert_eq!(b.coefficients(), ints(&[-7, 14, -7, 1]));
        assert!(eisenstein_at(b.minpoly(), 7).unwrap());
    }

    #[test]
    fn pentagonal_one_minus_zeta() {
        let b = minimal_polynomial(5, ThetaVariant::OneMinusZeta).unwrap();
        assert_eq!(b.coefficients(), ints(&[5, -10, 10, -5, 1]));
        assert!(eisenstein_at(b.minpoly(), 5).unwrap());
    }

    #[test]
    fn trivial_real_case() {
        let b = minimal_polynomial(3, ThetaVariant::RealTheta).unwrap();
        assert_eq!(b.coefficients(), ints(&[-3, 1]));
    }

    #[test]
    fn rejects_non_primes_and_two() {
        assert_eq!(
            minimal_polynomial(9, ThetaVariant::RealTheta),
            Err(Error::NotOddPrime(9))
        );
        assert_eq!(
            minimal_polynomial(2, ThetaVariant::OneMinusZeta),
            Err(Error::NotOddPrime(2))
        );
        assert!(minimal_polynomial(47, ThetaVariant::RealTheta).is_err());
        assert!(minimal_polynomial_up_to(47, ThetaVariant::RealTheta, 50).is_ok());
    }

    #[test]
    fn every_basis_up_to_ceiling_is_eisenstein() {
        for n in (3..=DEFAULT_N_CEILING).filter(|&n| is_prime(n)) {
            for v in [ThetaVariant::RealTheta, ThetaVariant::OneMinusZeta] {
                let b = minimal_polynomial(n, v).unwrap();
                assert!(eisenstein_at(b.minpoly(), n).unwrap(), "N={n} {v:?}");
                assert_eq!(b.coefficients().len(), v.degree(n) + 1);
            }
        }
    }

    #[test]
    fn eisenstein_examples() {
        let p = MultiPoly::parse("+1 z^2 | +1", var_names(&["z"])).unwrap();
        assert!(!eisenstein_at(&p, 2).unwrap());
        let q = MultiPoly::parse("+2 z^2 | +1", var_names(&["z"])).unwrap();
        assert!(eisenstein_at(&q, 2).is_err());
    }

    #[test]
    fn heptagonal_norm_forms() {
        let b = minimal_polynomial(7, ThetaVariant::RealTheta).unwrap();
        let g1 = norm_form(&b, 1).unwrap();
        assert_eq!(
            g1.to_text(),
            "+1 x^3 | +7 x^2 y1^1 | +14 x^1 y1^2 | +7 y1^3"
        );
        let g2 = norm_form(&b, 2).unwrap();
        let at = |v: [i64; 3]| g2.eval(&ints(&v)).unwrap();
        assert_eq!(at([1, 0, 0]), BigInt::from(1));
        assert_eq!(at([0, 1, 0]), BigInt::from(7));
        assert_eq!(at([0, 0, 1]), BigInt::from(49));
        assert!(g2.is_homogeneous());
        assert_eq!(g2.total_degree(), Some(3));
    }

    #[test]
    fn gamma_zero_rejected() {
        let b = minimal_polynomial(7, ThetaVariant::RealTheta).unwrap();
        assert!(norm_form(&b, 0).is_err());
    }

    #[test]
    fn basis_json_round_trip() {
        let b = minimal_polynomial(11, ThetaVariant::RealTheta).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert!(s.contains("\"N\":11"));
        let back: CyclotomicBasis = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
    }
}
