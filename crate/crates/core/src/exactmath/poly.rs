//! Sparse multivariate polynomials over the integers.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic *descending*: iterating the map yields the leading
//! term first. The variable list is part of the value; two polynomials with
//! different lists are aligned onto the union of their lists before any
//! arithmetic.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector, one entry per declared variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    // Smaller in this order means "comes first", i.e. larger in grlex.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigInt>,
}

pub fn var_names<S: AsRef<str>>(names: &[S]) -> Vec<String> {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: impl Into<BigInt>) -> Self {
        let mut p = MultiPoly::zero(vars);
        let c = c.into();
        if !c.is_zero() {
            let n = p.vars.len();
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: Vec<String>, name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::MissingVariable(name.to_string()))?;
        Ok(MultiPoly::monomial(vars, idx, 1, BigInt::one()))
    }

    /// `coeff * vars[idx]^exp`.
    pub fn monomial(vars: Vec<String>, idx: usize, exp: u32, coeff: BigInt) -> Self {
        let mut m = Monomial::one(vars.len());
        m.0[idx] = exp;
        let mut p = MultiPoly::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(m, coeff);
        }
        p
    }

    /// Build from raw terms; like terms are combined and zeros dropped.
    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let n = vars.len();
        let mut p = MultiPoly::zero(vars);
        for (exps, c) in terms {
            if exps.len() != n {
                return Err(Error::Arity {
                    expected: n,
                    got: exps.len(),
                });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Terms in canonical order, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Largest exponent of `vars[idx]` over all terms.
    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    /// Integer content (gcd of all coefficients), zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Re-express over a larger variable list containing all of ours.
    pub fn embed(&self, vars: &[String]) -> Result<MultiPoly> {
        if vars == self.vars.as_slice() {
            return Ok(self.clone());
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::MissingVariable(v.clone()))
            })
            .collect::<Result<_>>()?;
        let mut out = MultiPoly::zero(vars.to_vec());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; vars.len()];
            for (i, &j) in map.iter().enumerate() {
                e[j] = m.0[i];
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    fn aligned<'a>(&'a self, other: &'a MultiPoly) -> (Cow<'a, MultiPoly>, Cow<'a, MultiPoly>) {
        if self.vars == other.vars {
            return (Cow::Borrowed(self), Cow::Borrowed(other));
        }
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        let a = self.embed(&vars).expect("union contains all variables");
        let b = other.embed(&vars).expect("union contains all variables");
        (Cow::Owned(a), Cow::Owned(b))
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Multiply by the monomial `vars[idx]^exp`.
    pub fn shift(&self, idx: usize, exp: u32) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m.0[idx] += exp;
                    (m, c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.vars.clone(), 1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_exact_int(&self, k: &BigInt) -> Option<MultiPoly> {
        if k.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(MultiPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Exact multivariate division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (a, b) = self.aligned(divisor);
        let (lm, lc) = b.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = a.into_owned();
        let mut quot = MultiPoly::zero(rem.vars.clone());
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let (q, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let qm = m.div(&lm);
            for (bm, bc) in b.terms.iter() {
                rem.add_term(bm.mul(&qm), -(bc * &q));
            }
            quot.add_term(qm, q);
        }
        Some(quot)
    }

    pub fn derivative(&self, idx: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m = m.clone();
            m.0[idx] -= 1;
            out.terms.insert(m, c * BigInt::from(e));
        }
        out
    }

    /// Substitute `vars[idx] = value`, keeping the variable list.
    pub fn substitute(&self, idx: usize, value: &BigInt) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.clone());
        let mut powers: Vec<BigInt> = vec![BigInt::one()];
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut m = m.clone();
            m.0[idx] = 0;
            out.add_term(m, c * &powers[e]);
        }
        out
    }

    /// Set every variable outside `keep` to zero and drop it from the list.
    pub fn restrict(&self, keep: &[String]) -> Result<MultiPoly> {
        let idx: Vec<usize> = keep
            .iter()
            .map(|v| {
                self.var_index(v)
                    .ok_or_else(|| Error::MissingVariable(v.clone()))
            })
            .collect::<Result<_>>()?;
        let mut out = MultiPoly::zero(keep.to_vec());
        'terms: for (m, c) in &self.terms {
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 && !idx.contains(&j) {
                    continue 'terms;
                }
            }
            let e: Vec<u32> = idx.iter().map(|&j| m.0[j]).collect();
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Coefficients of `self` viewed as a polynomial in `vars[idx]`,
    /// lowest power first. Each coefficient keeps the full variable list.
    pub fn univariate_coeffs(&self, idx: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(idx) as usize;
        let mut out = vec![MultiPoly::zero(self.vars.clone()); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            let mut m = m.clone();
            m.0[idx] = 0;
            out[e].terms.insert(m, c.clone());
        }
        out
    }

    /// Returns the integer value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Reduce coefficients into `[0, modulus)`.
    pub fn reduce_mod(&self, modulus: &BigInt) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mod_floor(modulus));
        }
        out
    }

    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.vars.len() {
            return Err(Error::Arity {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut powers: Vec<Vec<BigInt>> = point
            .iter()
            .map(|v| vec![BigInt::one(), v.clone()])
            .collect();
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                let pw = &mut powers[i];
                while pw.len() <= e {
                    let next = pw.last().unwrap() * &point[i];
                    pw.push(next);
                }
                t *= &pw[e];
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_mod(&self, point: &[BigInt], modulus: &BigInt) -> Result<BigInt> {
        if modulus < &BigInt::from(2) {
            return Err(Error::BadModulus);
        }
        let reduced: Vec<BigInt> = point.iter().map(|v| v.mod_floor(modulus)).collect();
        if reduced.len() != self.vars.len() {
            return Err(Error::Arity {
                expected: self.vars.len(),
                got: reduced.len(),
            });
        }
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.mod_floor(modulus);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = (t * reduced[i].modpow(&BigInt::from(e), modulus)) % modulus;
                }
            }
            acc = (acc + t) % modulus;
        }
        Ok(acc)
    }

    /// Canonical text: `+6 t^3 | +35 t^2 x^1 | ...`; the zero polynomial is `0`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" | ");
            }
            if c.is_negative() {
                out.push('-');
            } else {
                out.push('+');
            }
            out.push_str(&c.abs().to_string());
            for (v, &e) in self.vars.iter().zip(&m.0) {
                if e > 0 {
                    out.push(' ');
                    out.push_str(v);
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
        out
    }

    /// Parse the canonical text format over the given variable list.
    pub fn parse(text: &str, vars: Vec<String>) -> Result<MultiPoly> {
        let text = text.trim();
        let mut p = MultiPoly::zero(vars);
        if text == "0" {
            return Ok(p);
        }
        for chunk in text.split('|') {
            let mut toks = chunk.split_whitespace();
            let coeff = toks
                .next()
                .ok_or_else(|| Error::Parse("empty term".into()))?;
            if !(coeff.starts_with('+') || coeff.starts_with('-')) {
                return Err(Error::Parse(format!("coefficient `{coeff}` lacks a sign")));
            }
            let c: BigInt = coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{coeff}`")))?;
            if c.is_zero() {
                return Err(Error::Parse("zero coefficient".into()));
            }
            let mut m = Monomial::one(p.vars.len());
            for tok in toks {
                let (name, exp) = tok
                    .split_once('^')
                    .ok_or_else(|| Error::Parse(format!("bad factor `{tok}`")))?;
                let idx = p
                    .var_index(name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                let e: u32 = exp
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                if e == 0 || m.0[idx] != 0 {
                    return Err(Error::Parse(format!("non-canonical factor `{tok}`")));
                }
                m.0[idx] = e;
            }
            if p.terms.contains_key(&m) {
                return Err(Error::Parse("duplicate monomial".into()));
            }
            p.terms.insert(m, c);
        }
        Ok(p)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Evaluate `p` at `point`, optionally reduced into `[0, modulus)`.
pub fn poly_eval(p: &MultiPoly, point: &[BigInt], modulus: Option<&BigInt>) -> Result<BigInt> {
    match modulus {
        None => p.eval(point),
        Some(m) => p.eval_mod(point, m),
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let (a, b) = self.aligned(rhs);
        let mut out = a.into_owned();
        for (m, c) in &b.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let (a, b) = self.aligned(rhs);
        let mut out = a.into_owned();
        for (m, c) in &b.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        let (a, b) = self.aligned(rhs);
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        MultiPoly {
            vars: a.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(names: &[&str]) -> Vec<String> {
        var_names(names)
    }

    fn p(text: &str, names: &[&str]) -> MultiPoly {
        MultiPoly::parse(text, vs(names)).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("+1 x^1 | +1 y^1", &["x", "y"]);
        let b = p("+1 x^1 | -1 y^1", &["x", "y"]);
        assert_eq!((&a * &b).to_text(), "+1 x^2 | -1 y^2");
    }

    #[test]
    fn additive_identity() {
        let a = p("+3 x^2 | -5 y^1 | +7", &["x", "y"]);
        let z = MultiPoly::zero(vs(&["x", "y"]));
        assert_eq!(&a + &z, a);
    }

    #[test]
    fn bracket_product_expansion() {
        let a = p("+2 t^1 | +7 x^1", &["t", "x"]);
        let b = p("+3 t^1 | +7 x^1", &["t", "x"]);
        assert_eq!((&a * &b).to_text(), "+6 t^2 | +35 t^1 x^1 | +49 x^2");
    }

    #[test]
    fn eval_examples() {
        let cube = p("+1 x^3", &["x"]);
        assert_eq!(cube.eval(&[BigInt::from(2)]).unwrap(), BigInt::from(8));
        let q = p("+6 t^3 | -7 u^1", &["t", "u"]);
        assert_eq!(q.eval(&[1.into(), 0.into()]).unwrap(), BigInt::from(6));
        let r = p("+6 t^2 | +35 t^1 x^1 | +49 x^2", &["t", "x"]);
        let v = poly_eval(&r, &[1.into(), 1.into()], Some(&BigInt::from(7))).unwrap();
        assert_eq!(v, BigInt::from(6));
    }

    #[test]
    fn eval_arity_and_modulus_errors() {
        let r = p("+1 x^1", &["x"]);
        assert!(matches!(r.eval(&[]), Err(Error::Arity { .. })));
        assert_eq!(
            r.eval_mod(&[1.into()], &BigInt::one()),
            Err(Error::BadModulus)
        );
    }

    #[test]
    fn negative_point_reduces_into_range() {
        let r = p("+1 x^1 | +1", &["x"]);
        let v = r.eval_mod(&[BigInt::from(-5)], &BigInt::from(7)).unwrap();
        assert_eq!(v, BigInt::from(3));
    }

    #[test]
    fn mismatched_variable_lists_align_on_union() {
        let a = p("+1 x^1", &["x"]);
        let b = p("+1 y^1", &["y"]);
        let s = &a + &b;
        assert_eq!(s.vars(), &vs(&["x", "y"])[..]);
        assert_eq!(s.to_text(), "+1 x^1 | +1 y^1");
    }

    #[test]
    fn exact_division() {
        let a = p("+1 x^1 | +1 y^1", &["x", "y"]);
        let b = p("+1 x^1 | -1 y^1", &["x", "y"]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        let c = p("+1 x^1 | +2 y^1", &["x", "y"]);
        assert!(prod.div_exact(&c).is_none());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(MultiPoly::parse("6 t^3", vs(&["t"])).is_err());
        assert!(MultiPoly::parse("+6 s^3", vs(&["t"])).is_err());
        assert!(MultiPoly::parse("+0 t^3", vs(&["t"])).is_err());
        assert!(MultiPoly::parse("+1 t^1 | +2 t^1", vs(&["t"])).is_err());
    }

    #[test]
    fn canonical_order_is_grlex() {
        let q = p("+1 | +1 y^2 | +1 x^1 y^1 | +1 x^2 | +1 x^3", &["x", "y"]);
        assert_eq!(q.to_text(), "+1 x^3 | +1 x^2 | +1 x^1 y^1 | +1 y^2 | +1");
    }

    #[test]
    fn restrict_zeroes_dropped_variables() {
        let q = p("+1 x^1 y^1 | +2 x^2 | +3 z^1", &["x", "y", "z"]);
        let r = q.restrict(&vs(&["x", "z"])).unwrap();
        assert_eq!(r.to_text(), "+2 x^2 | +3 z^1");
    }
}
