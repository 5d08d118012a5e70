//! Parameter families, hypothesis checks, admissible-parameter search and the
//! explicit polynomial builders.
//!
//! Five families are modelled:
//!
//! | variant | N      | form                                        | variables |
//! |---------|--------|---------------------------------------------|-----------|
//! | `T1`    | 4n+3   | `t A B - Norm`, trailing `N^beta x^n`        | `gamma+2` |
//! | `G1`    | 4n+3   | `t A B - Norm`, free middle coefficients     | `2n+2`    |
//! | `G2`    | 4n+1   | `t^2 A B - Norm`, brackets of degree `n-1`   | `2n+1`    |
//! | `G3`    | 2n+1   | as `G2` with `theta = 1 - zeta`              | `2n+1`    |
//! | `L`     | 4n+3   | `t A B - Norm`, independent `alpha_i, beta_i`| 4         |

pub mod search;

pub use search::{reciprocity_admissible, search_params, signed_residue_classes};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cyclotomic::{norm_form, norm_vars, CyclotomicBasis, ThetaVariant};
use crate::error::{Error, Result};
use crate::exactmath::arith::residue;
use crate::exactmath::{is_prime, primes_below, FactoredInteger, MultiPoly};
use crate::serde_big;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    T1,
    G1,
    G2,
    G3,
    L,
}

impl Variant {
    pub fn theta(self) -> ThetaVariant {
        match self {
            Variant::G3 => ThetaVariant::OneMinusZeta,
            _ => ThetaVariant::RealTheta,
        }
    }

    /// The prime N attached to `n` for this family.
    pub fn n_prime_for(self, n: u32) -> u64 {
        let n = n as u64;
        match self {
            Variant::T1 | Variant::G1 | Variant::L => 4 * n + 3,
            Variant::G2 => 4 * n + 1,
            Variant::G3 => 2 * n + 1,
        }
    }

    /// Inverse of [`Variant::n_prime_for`].
    pub fn n_for_prime(self, n_prime: u64) -> Result<u32> {
        let fail = |why: &str| Err(Error::Invalid(format!("N = {n_prime}: {why}")));
        if !is_prime(n_prime) {
            return fail("not prime");
        }
        let n = match self {
            Variant::T1 | Variant::G1 | Variant::L => {
                if n_prime % 4 != 3 {
                    return fail(&format!("{} is not 3 (mod 4)", n_prime % 4));
                }
                (n_prime - 3) / 4
            }
            Variant::G2 => {
                if n_prime % 4 != 1 {
                    return fail(&format!("{} is not 1 (mod 4)", n_prime % 4));
                }
                (n_prime - 1) / 4
            }
            Variant::G3 => (n_prime - 1) / 2,
        };
        if n < self.min_n() as u64 {
            return fail(&format!("n = {n} is below {}", self.min_n()));
        }
        Ok(n as u32)
    }

    pub fn min_n(self) -> u32 {
        match self {
            Variant::G2 | Variant::G3 => 2,
            _ => 1,
        }
    }

    /// Total degree of the built form.
    pub fn degree(self, n: u32) -> u32 {
        match self {
            Variant::G2 | Variant::G3 => 2 * n,
            _ => 2 * n + 1,
        }
    }

    /// Degree of the brackets A, B in (t, x).
    pub fn bracket_degree(self, n: u32) -> u32 {
        match self {
            Variant::G2 | Variant::G3 => n - 1,
            _ => n,
        }
    }

    /// Legal range of gamma.
    pub fn gamma_range(self, n: u32) -> (usize, usize) {
        let n = n as usize;
        match self {
            Variant::T1 => (2, 2 * n),
            Variant::G1 => (2 * n, 2 * n),
            Variant::G2 | Variant::G3 => (2 * n - 1, 2 * n - 1),
            Variant::L => (2, 2),
        }
    }

    /// Number of entries expected in `alphas`.
    fn alphas_len(self, n: u32) -> usize {
        let n = n as usize;
        match self {
            Variant::T1 | Variant::G1 => n - 1,
            Variant::G2 | Variant::G3 => n.saturating_sub(2),
            Variant::L => n,
        }
    }

    /// Whether the global unsolubility argument covers this family.
    pub fn has_global_theorem(self) -> bool {
        !matches!(self, Variant::L)
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T1" => Ok(Variant::T1),
            "G1" => Ok(Variant::G1),
            "G2" => Ok(Variant::G2),
            "G3" => Ok(Variant::G3),
            "L" => Ok(Variant::L),
            other => Err(Error::Parse(format!("unknown variant `{other}`"))),
        }
    }
}

/// The bound `4 n^2 (2n - 1)^2` below which every prime other than N must
/// divide `alpha0 (alpha0 + 1)`.
pub fn prime_bound(n: u32) -> u64 {
    let n = n as u64;
    4 * n * n * (2 * n - 1) * (2 * n - 1)
}

/// Primes below [`prime_bound`] other than N.
pub fn required_primes(n: u32, n_prime: u64) -> Vec<u64> {
    primes_below(prime_bound(n))
        .into_iter()
        .filter(|&p| p != n_prime)
        .collect()
}

/// `alpha0` together with the recorded factorisation of `alpha0 (alpha0 + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alpha0 {
    #[serde(with = "serde_big")]
    pub value: BigInt,
    pub product: FactoredInteger,
}

impl Alpha0 {
    pub fn new(value: BigInt, known_primes: &[u64]) -> Result<Self> {
        let prod = &value * (&value + 1u32);
        Ok(Alpha0 {
            product: FactoredInteger::with_known_primes(prod, known_primes)?,
            value,
        })
    }
}

/// One member of one family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormParams {
    pub variant: Variant,
    pub n: u32,
    #[serde(rename = "N")]
    pub n_prime: u64,
    pub alpha0: Alpha0,
    /// `alpha_1..alpha_{n-1}` (T1), `alpha~_i` (G1-G3), `alpha_1..alpha_n` (L).
    #[serde(with = "serde_big::vec")]
    pub alphas: Vec<BigInt>,
    /// `beta_1..beta_n` for L; empty otherwise.
    #[serde(with = "serde_big::vec", default)]
    pub betas: Vec<BigInt>,
    /// Exponent of the trailing `N^beta x^n`; unused by L.
    pub beta: u32,
    pub gamma: usize,
}

impl FormParams {
    pub fn new(
        variant: Variant,
        n: u32,
        alpha0: impl Into<BigInt>,
        alphas: Vec<BigInt>,
        betas: Vec<BigInt>,
        beta: u32,
        gamma: usize,
    ) -> Result<Self> {
        let n_prime = variant.n_prime_for(n);
        let alpha0 = Alpha0::new(alpha0.into(), &required_primes(n, n_prime))?;
        let p = FormParams {
            variant,
            n,
            n_prime,
            alpha0,
            alphas,
            betas,
            beta,
            gamma,
        };
        p.validate()?;
        Ok(p)
    }

    /// Structural validity: shapes, lengths and ranges. Arithmetic hypotheses
    /// live in [`check_conditions`].
    pub fn validate(&self) -> Result<()> {
        let v = self.variant;
        if self.n < v.min_n() {
            return Err(Error::Invalid(format!("{v:?} needs n >= {}", v.min_n())));
        }
        if self.n_prime != v.n_prime_for(self.n) {
            return Err(Error::Invalid(format!(
                "{v:?} with n = {} needs N = {}",
                self.n,
                v.n_prime_for(self.n)
            )));
        }
        let (lo, hi) = v.gamma_range(self.n);
        if self.gamma < lo || self.gamma > hi {
            return Err(Error::Invalid(format!(
                "gamma = {} outside [{lo}, {hi}] for {v:?}",
                self.gamma
            )));
        }
        if self.alphas.len() != v.alphas_len(self.n) {
            return Err(Error::Invalid(format!(
                "{v:?} expects {} alphas, got {}",
                v.alphas_len(self.n),
                self.alphas.len()
            )));
        }
        let want_betas = if v == Variant::L { self.n as usize } else { 0 };
        if self.betas.len() != want_betas {
            return Err(Error::Invalid(format!(
                "{v:?} expects {want_betas} betas, got {}",
                self.betas.len()
            )));
        }
        if v == Variant::T1 && self.beta < 1 {
            return Err(Error::Invalid("T1 needs beta >= 1".into()));
        }
        if self.alpha0.product.value() != &(&self.alpha0.value * (&self.alpha0.value + 1u32)) {
            return Err(Error::Invalid("recorded alpha0(alpha0+1) is wrong".into()));
        }
        self.alpha0.product.validate()
    }

    pub fn alpha0(&self) -> &BigInt {
        &self.alpha0.value
    }

    /// `alpha0 (alpha0 + 1)`.
    pub fn alpha_product(&self) -> &BigInt {
        self.alpha0.product.value()
    }

    pub fn variables(&self) -> Vec<String> {
        std::iter::once("t".to_string())
            .chain(norm_vars(self.gamma))
            .collect()
    }

    /// The same form written with independent `alpha_i, beta_i`, via
    /// `alpha_n = beta_n = N^(beta-1)`. Only meaningful for T1 (and L itself).
    pub fn local_view(&self) -> Option<FormParams> {
        match self.variant {
            Variant::L => Some(self.clone()),
            Variant::T1 => {
                let mut alphas = self.alphas.clone();
                alphas.push(BigInt::from(self.n_prime).pow(self.beta - 1));
                Some(FormParams {
                    variant: Variant::L,
                    alphas: alphas.clone(),
                    betas: alphas,
                    beta: 0,
                    gamma: 2,
                    ..self.clone()
                })
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionEntry {
    pub id: String,
    pub pass: bool,
    pub witness: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub pass: bool,
    pub entries: Vec<ConditionEntry>,
}

impl ConditionReport {
    pub fn entry(&self, id: &str) -> Option<&ConditionEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

fn entry(id: &str, pass: bool, witness: serde_json::Value) -> ConditionEntry {
    ConditionEntry {
        id: id.to_string(),
        pass,
        witness,
    }
}

/// Sign `s` with `value = s (mod m)`, if `value` is `+-1` modulo `m`.
fn unit_sign(value: &BigInt, m: u64) -> Option<i8> {
    let r = residue(value, m);
    if r == 1 {
        Some(1)
    } else if r == m - 1 {
        Some(-1)
    } else {
        None
    }
}

/// Evaluate every hypothesis of the variant's theorem. Failures are report
/// entries, never errors.
pub fn check_conditions(params: &FormParams) -> ConditionReport {
    let v = params.variant;
    let n = params.n;
    let np = params.n_prime;
    let prod = params.alpha_product();
    let mut entries = Vec::new();

    let shape_ok = is_prime(np) && np == v.n_prime_for(n) && n >= v.min_n();
    entries.push(entry(
        "shape",
        shape_ok,
        json!({ "N": np, "expected": v.n_prime_for(n), "prime": is_prime(np) }),
    ));
    let (lo, hi) = v.gamma_range(n);
    entries.push(entry(
        "gamma",
        (lo..=hi).contains(&params.gamma),
        json!({ "gamma": params.gamma, "range": [lo, hi] }),
    ));

    match v {
        Variant::T1 | Variant::L => {
            let bound = prime_bound(n);
            let mut witness = Vec::new();
            let mut missing = Vec::new();
            for p in required_primes(n, np) {
                let e = crate::exactmath::valuation(prod, p).unwrap_or(u32::MAX);
                if e == 0 {
                    missing.push(p);
                }
                witness.push(json!([p, if e == u32::MAX { 0 } else { e }]));
            }
            entries.push(entry(
                "cond1_divisibility",
                missing.is_empty() && !prod.is_zero(),
                json!({ "bound": bound, "exponents": witness, "missing": missing }),
            ));
            let sign = unit_sign(prod, np);
            entries.push(entry(
                "cond2_residue",
                sign.is_some(),
                json!({ "residue": residue(prod, np), "sign": sign }),
            ));
            let a0 = params.alpha0();
            if v == Variant::T1 {
                if n >= 2 {
                    let g = prod.gcd(&params.alphas[0]);
                    entries.push(entry(
                        "cond3_gcd",
                        g.is_one(),
                        json!({ "gcd": g.to_string() }),
                    ));
                } else {
                    entries.push(entry("cond3_gcd", true, json!({ "skipped": "n = 1" })));
                }
            } else {
                let g1 = a0.gcd(&params.alphas[0]);
                let g2 = (a0 + 1u32).gcd(&params.betas[0]);
                entries.push(entry(
                    "cond3_gcd",
                    g1.is_one() && g2.is_one(),
                    json!({ "gcd_alpha0_alpha1": g1.to_string(), "gcd_alpha0p1_beta1": g2.to_string() }),
                ));
            }
        }
        Variant::G1 | Variant::G2 | Variant::G3 => {
            let r = residue(prod, np);
            entries.push(entry("coprime_to_N", r != 0, json!({ "residue": r })));
            if v == Variant::G2 {
                entries.push(entry("N_gt_5", np > 5, json!({ "N": np })));
            }
        }
    }

    ConditionReport {
        pass: entries.iter().all(|e| e.pass),
        entries,
    }
}

/// A built form with its two bracket factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltForm {
    /// `t A B - Norm` (or `t^2 A B - Norm`).
    pub form: MultiPoly,
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub norm: MultiPoly,
}

/// The brackets `(A, B)` in the variables of the form.
pub fn brackets(params: &FormParams) -> (MultiPoly, MultiPoly) {
    let vars = params.variables();
    let m = params.variant.bracket_degree(params.n);
    let np = BigInt::from(params.n_prime);
    let mono = |tp: u32, xp: u32, c: BigInt| {
        MultiPoly::from_terms(vars.clone(), {
            let mut e = vec![0u32; vars.len()];
            e[0] = tp;
            e[1] = xp;
            Some((e, c))
        })
        .expect("arity")
    };
    let a0 = params.alpha0().clone();
    let mut a = mono(m, 0, a0.clone());
    let mut b = mono(m, 0, a0 + 1u32);
    match params.variant {
        Variant::L => {
            for i in 1..=m {
                let ai = &params.alphas[i as usize - 1] * &np;
                let bi = &params.betas[i as usize - 1] * &np;
                a = &a + &mono(m - i, i, ai);
                b = &b + &mono(m - i, i, bi);
            }
        }
        _ => {
            let scale = if params.variant == Variant::T1 {
                np.clone()
            } else {
                BigInt::one()
            };
            let mut shared = MultiPoly::zero(vars.clone());
            for i in 1..m {
                shared = &shared + &mono(m - i, i, &params.alphas[i as usize - 1] * &scale);
            }
            shared = &shared + &mono(0, m, np.pow(params.beta));
            a = &a + &shared;
            b = &b + &shared;
        }
    }
    (a, b)
}

fn check_basis(params: &FormParams, basis: &CyclotomicBasis) -> Result<()> {
    if basis.N() != params.n_prime || basis.variant() != params.variant.theta() {
        return Err(Error::BasisMismatch(format!(
            "params want (N = {}, {:?}), basis is (N = {}, {:?})",
            params.n_prime,
            params.variant.theta(),
            basis.N(),
            basis.variant()
        )));
    }
    Ok(())
}

/// Build the family polynomial, refusing parameters that fail
/// [`check_conditions`].
pub fn build_form(params: &FormParams, basis: &CyclotomicBasis) -> Result<BuiltForm> {
    let report = check_conditions(params);
    if !report.pass {
        let failed: Vec<_> = report.failures().map(|e| e.id.clone()).collect();
        return Err(Error::Precondition(format!(
            "conditions failed: {}",
            failed.join(", ")
        )));
    }
    build_form_unchecked(params, basis)
}

/// Build without checking the arithmetic hypotheses (structure is still
/// validated). For experiments outside the theorems' range.
pub fn build_form_unchecked(params: &FormParams, basis: &CyclotomicBasis) -> Result<BuiltForm> {
    params.validate()?;
    check_basis(params, basis)?;
    let vars = params.variables();
    let (a, b) = brackets(params);
    let t_power = match params.variant {
        Variant::G2 | Variant::G3 => 2,
        _ => 1,
    };
    let prefix = MultiPoly::monomial(vars.clone(), 0, t_power, BigInt::one());
    let norm = norm_form(basis, params.gamma)?.embed(&vars)?;
    let form = &(&(&prefix * &a) * &b) - &norm;
    Ok(BuiltForm { form, a, b, norm })
}

/// `B - A`; for every family except L with `alpha != beta` this is `t^deg`.
pub fn bracket_identity(params: &FormParams) -> MultiPoly {
    let (a, b) = brackets(params);
    &b - &a
}

/// `t^m` with `m` the bracket degree: the value [`bracket_identity`] must take.
pub fn expected_bracket_difference(params: &FormParams) -> MultiPoly {
    MultiPoly::monomial(
        params.variables(),
        0,
        params.variant.bracket_degree(params.n),
        BigInt::one(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::minimal_polynomial;

    fn t1(alpha0: i64) -> FormParams {
        FormParams::new(Variant::T1, 1, alpha0, vec![], vec![], 1, 2).unwrap()
    }

    #[test]
    fn cubic_n7_family_instance_passes() {
        let r = check_conditions(&t1(2));
        assert!(r.pass, "{r:?}");
        assert_eq!(r.entry("cond2_residue").unwrap().witness["sign"], json!(-1));
        assert_eq!(
            r.entry("cond3_gcd").unwrap().witness["skipped"],
            json!("n = 1")
        );
    }

    #[test]
    fn divisibility_failure() {
        let r = check_conditions(&t1(1));
        assert!(!r.pass);
        let e = r.entry("cond1_divisibility").unwrap();
        assert!(!e.pass);
        assert_eq!(e.witness["missing"], json!([3]));
    }

    #[test]
    fn residue_failure() {
        let r = check_conditions(&t1(3));
        let e = r.entry("cond2_residue").unwrap();
        assert!(!e.pass);
        assert_eq!(e.witness["residue"], json!(5));
        assert!(r.entry("cond1_divisibility").unwrap().pass);
    }

    #[test]
    fn structural_errors() {
        assert!(FormParams::new(Variant::T1, 1, 2, vec![], vec![], 0, 2).is_err());
        assert!(FormParams::new(Variant::T1, 1, 2, vec![], vec![], 1, 3).is_err());
        assert!(FormParams::new(Variant::T1, 2, 2, vec![], vec![], 1, 2).is_err());
        assert!(FormParams::new(Variant::G2, 1, 2, vec![], vec![], 0, 1).is_err());
        assert!(FormParams::new(Variant::L, 1, 2, vec![1.into()], vec![], 0, 2).is_err());
    }

    #[test]
    fn t1_cubic_expansion() {
        let p = t1(2);
        let basis = minimal_polynomial(7, ThetaVariant::RealTheta).unwrap();
        let built = build_form(&p, &basis).unwrap();
        assert_eq!(built.a.to_text(), "+2 t^1 | +7 x^1");
        assert_eq!(built.b.to_text(), "+3 t^1 | +7 x^1");
        let text = built.form.to_text();
        assert!(
            text.starts_with("+6 t^3 | +35 t^2 x^1 | +49 t^1 x^2 | -1 x^3"),
            "{text}"
        );
        assert!(built.form.is_homogeneous());
        assert_eq!(built.form.total_degree(), Some(3));
        assert_eq!(built.form.nvars(), 4);
    }

    #[test]
    fn local_parameterisation_coincides_with_t1() {
        let basis = minimal_polynomial(7, ThetaVariant::RealTheta).unwrap();
        let l = FormParams::new(Variant::L, 1, 2, vec![1.into()], vec![1.into()], 0, 2).unwrap();
        assert!(check_conditions(&l).pass);
        let a = build_form(&l, &basis).unwrap().form;
        let b = build_form(&t1(2), &basis).unwrap().form;
        assert_eq!(a, b);
        assert_eq!(t1(2).local_view().unwrap().alphas, vec![BigInt::one()]);
    }

    #[test]
    fn bracket_differences() {
        assert_eq!(bracket_identity(&t1(2)).to_text(), "+1 t^1");
        let p3 =
            FormParams::new(Variant::T1, 3, 5, vec![4.into(), (-9).into()], vec![], 2, 3).unwrap();
        assert_eq!(bracket_identity(&p3).to_text(), "+1 t^3");
        let g2 = FormParams::new(Variant::G2, 2, 5, vec![], vec![], 0, 3).unwrap();
        assert_eq!(bracket_identity(&g2).to_text(), "+1 t^1");
    }

    #[test]
    fn basis_mismatch_is_an_error() {
        let basis = minimal_polynomial(11, ThetaVariant::RealTheta).unwrap();
        assert!(matches!(
            build_form(&t1(2), &basis),
            Err(Error::BasisMismatch(_))
        ));
        let z = minimal_polynomial(7, ThetaVariant::OneMinusZeta).unwrap();
        assert!(matches!(
            build_form(&t1(2), &z),
            Err(Error::BasisMismatch(_))
        ));
    }

    #[test]
    fn failing_conditions_block_the_checked_builder() {
        let basis = minimal_polynomial(7, ThetaVariant::RealTheta).unwrap();
        assert!(matches!(
            build_form(&t1(3), &basis),
            Err(Error::Precondition(_))
        ));
        assert!(build_form_unchecked(&t1(3), &basis).is_ok());
    }

    #[test]
    fn g_variants_have_expected_shapes() {
        let g1 = FormParams::new(Variant::G1, 1, 2, vec![], vec![], 0, 2).unwrap();
        let b7 = minimal_polynomial(7, ThetaVariant::RealTheta).unwrap();
        let f = build_form(&g1, &b7).unwrap();
        assert!(f
            .form
            .to_text()
            .starts_with("+6 t^3 | +5 t^2 x^1 | +1 t^1 x^2"));
        let g3 = FormParams::new(Variant::G3, 2, 1, vec![], vec![], 0, 3).unwrap();
        let b5 = minimal_polynomial(5, ThetaVariant::OneMinusZeta).unwrap();
        let f3 = build_form(&g3, &b5).unwrap();
        assert_eq!(f3.form.total_degree(), Some(4));
        assert!(f3.form.is_homogeneous());
        // n = 2 gives N = 9, which the shape check rejects.
        let g2 = FormParams::new(Variant::G2, 2, 1, vec![], vec![], 0, 3).unwrap();
        let r = check_conditions(&g2);
        assert!(!r.entry("shape").unwrap().pass);
        assert!(r.entry("N_gt_5").unwrap().pass);
        let g2 = FormParams::new(Variant::G2, 3, 1, vec![0.into()], vec![], 0, 5).unwrap();
        assert!(check_conditions(&g2).pass);
    }

    #[test]
    fn params_json_round_trip() {
        let p = t1(2);
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"N\":7"));
        let back: FormParams = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
