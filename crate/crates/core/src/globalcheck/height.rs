//! Exhaustive search for primitive integer zeros of bounded height.
//!
//! Tuples are visited as a prefix of all but the last coordinate followed by
//! a sweep of the last coordinate: the form's coefficients in the last
//! variable are evaluated once per prefix, then Horner's rule runs over
//! `[-H, H]`. Arithmetic is in `i128` when a global magnitude bound allows,
//! otherwise in `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactmath::MultiPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightReport {
    pub height_bound: u64,
    pub tuples_searched: u64,
    pub roots_found: Vec<Vec<i64>>,
}

/// Terms grouped by the power of the last variable.
struct Layout<C> {
    by_last: Vec<Vec<(C, Vec<u32>)>>,
    max_exp: u32,
}

fn layout<C>(f: &MultiPoly, conv: impl Fn(&BigInt) -> C) -> Layout<C> {
    let m = f.nvars();
    let d = f.degree_in(m - 1) as usize;
    let mut by_last: Vec<Vec<(C, Vec<u32>)>> = (0..=d).map(|_| Vec::new()).collect();
    let mut max_exp = 0;
    for (mono, c) in f.terms() {
        let e = mono.exponents();
        max_exp = max_exp.max(e[..m - 1].iter().copied().max().unwrap_or(0));
        by_last[e[m - 1] as usize].push((conv(c), e[..m - 1].to_vec()));
    }
    Layout { by_last, max_exp }
}

trait Ring: Clone + Send + Sync {
    fn nil() -> Self;
    fn from_i64(v: i64) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn is_nil(&self) -> bool;
}

impl Ring for i128 {
    fn nil() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
}

impl Ring for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Number of `z` in `[-h, h]` with `gcd(g, z) = 1`, for `g >= 1`.
fn coprime_count(g: u64, h: u64) -> u64 {
    if g == 1 {
        return 2 * h + 1;
    }
    let mut primes = Vec::new();
    let mut r = g;
    let mut q = 2;
    while q * q <= r {
        if r.is_multiple_of(q) {
            primes.push(q);
            while r.is_multiple_of(q) {
                r /= q;
            }
        }
        q += 1;
    }
    if r > 1 {
        primes.push(r);
    }
    // nonzero z with gcd 1, counted over [1, h] and doubled; z = 0 has gcd g > 1
    let mut positive = 0i64;
    for mask in 0u32..(1 << primes.len()) {
        let d: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .product();
        let term = (h / d) as i64;
        positive += if mask.count_ones() % 2 == 0 {
            term
        } else {
            -term
        };
    }
    2 * positive as u64
}

fn gcd_u(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

struct SlabResult {
    searched: u64,
    roots: Vec<Vec<i64>>,
}

fn scan_slab<C: Ring>(lay: &Layout<C>, m: usize, h: i64, lead: i64) -> SlabResult {
    let mut out = SlabResult {
        searched: 0,
        roots: Vec::new(),
    };
    let outer_n = m - 1;
    let dmax = lay.max_exp as usize;
    let mut prefix = vec![-h; outer_n];
    prefix[0] = lead;
    let mut powers: Vec<Vec<C>> = vec![vec![C::from_i64(1); dmax + 1]; outer_n];
    let mut coeffs: Vec<C> = vec![C::nil(); lay.by_last.len()];
    loop {
        let first_nonzero = prefix.iter().find(|&&v| v != 0).copied();
        if first_nonzero.is_none_or(|v| v > 0) {
            let g = prefix.iter().fold(0u64, |g, &v| gcd_u(g, v.unsigned_abs()));
            if g > 0 {
                for (i, &v) in prefix.iter().enumerate() {
                    let base = C::from_i64(v);
                    for e in 1..=dmax {
                        powers[i][e] = powers[i][e - 1].mul(&base);
                    }
                }
                for (j, terms) in lay.by_last.iter().enumerate() {
                    let mut acc = C::nil();
                    for (c, e) in terms {
                        let mut t = c.clone();
                        for (i, &k) in e.iter().enumerate() {
                            if k > 0 {
                                t = t.mul(&powers[i][k as usize]);
                            }
                        }
                        acc = acc.add(&t);
                    }
                    coeffs[j] = acc;
                }
                out.searched += coprime_count(g, h as u64);
                for z in -h..=h {
                    if g > 1 && gcd_u(g, z.unsigned_abs()) != 1 {
                        continue;
                    }
                    let zc = C::from_i64(z);
                    let mut acc = C::nil();
                    for c in coeffs.iter().rev() {
                        acc = acc.mul(&zc).add(c);
                    }
                    if acc.is_nil() {
                        let mut root = prefix.clone();
                        root.push(z);
                        out.roots.push(root);
                    }
                }
            }
        }
        let mut i = outer_n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            prefix[i] += 1;
            if prefix[i] <= h {
                break;
            }
            prefix[i] = -h;
        }
    }
}

fn fits_i128(f: &MultiPoly, h: u64) -> bool {
    let d = f.total_degree().unwrap_or(0);
    let hb = BigInt::from(h.max(1));
    let mut bound = BigInt::zero();
    for (_, c) in f.terms() {
        bound += BigInt::from(c.magnitude().clone());
    }
    let bound = bound * hb.pow(d) * BigInt::from(2 * h + 2);
    bound.bits() < 126
}

fn search_with<C: Ring>(f: &MultiPoly, h: u64, conv: impl Fn(&BigInt) -> C) -> HeightReport {
    let m = f.nvars();
    let lay = layout(f, conv);
    let hi = h as i64;
    let slabs: Vec<SlabResult> = if m == 1 {
        Vec::new()
    } else {
        (0..=hi)
            .into_par_iter()
            .map(|lead| scan_slab(&lay, m, hi, lead))
            .collect()
    };
    let mut searched = 0;
    let mut roots = Vec::new();
    // the all-zero prefix: only (0, ..., 0, 1)
    let mut unit = vec![BigInt::zero(); m];
    unit[m - 1] = BigInt::from(1);
    searched += 1;
    if f.eval(&unit).map(|v| v.is_zero()).unwrap_or(false) {
        let mut r = vec![0i64; m];
        r[m - 1] = 1;
        roots.push(r);
    }
    for s in slabs {
        searched += s.searched;
        roots.extend(s.roots);
    }
    roots.sort();
    HeightReport {
        height_bound: h,
        tuples_searched: searched,
        roots_found: roots,
    }
}

/// Every primitive integer zero of `f` with max-norm at most `h`, the first
/// nonzero coordinate positive.
pub fn height_search(f: &MultiPoly, h: u64) -> HeightReport {
    assert!(f.nvars() >= 1, "form needs a variable");
    if fits_i128(f, h) {
        search_with(f, h, |c| c.to_i128().expect("checked by fits_i128"))
    } else {
        search_with(f, h, |c| c.clone())
    }
}

/// Re-evaluate reported roots exactly; returns the first one that is not a
/// primitive zero.
pub fn check_roots(f: &MultiPoly, roots: &[Vec<i64>]) -> Option<Vec<i64>> {
    roots
        .iter()
        .find(|r| {
            let pt: Vec<BigInt> = r.iter().map(|&v| BigInt::from(v)).collect();
            let g = r.iter().fold(0u64, |g, &v| gcd_u(g, v.unsigned_abs()));
            g != 1 || !f.eval(&pt).map(|v| v.is_zero()).unwrap_or(false)
        })
        .cloned()
}
