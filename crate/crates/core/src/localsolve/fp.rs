//! Brute-force zero enumeration over F_p.
//!
//! A polynomial is compiled to machine-word residues ([`ModPoly`]) and then
//! split along its last free variable: for each assignment of the outer
//! variables the coefficients in the inner variable are formed once and the
//! inner variable is swept with Horner's rule. The outermost coordinate is
//! distributed over rayon workers; results are merged in coordinate order so
//! they do not depend on the worker count.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::arith::residue;
use crate::exactmath::MultiPoly;

/// Largest prime the word-sized enumerator accepts.
pub const MAX_ENUM_PRIME: u64 = u32::MAX as u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    nvars: usize,
    terms: Vec<(Vec<u32>, u64)>,
}

impl ModPoly {
    pub fn new(f: &MultiPoly, p: u64) -> Result<Self> {
        if !(2..=MAX_ENUM_PRIME).contains(&p) {
            return Err(Error::Invalid(format!(
                "modulus {p} outside the enumerable range"
            )));
        }
        let terms = f
            .terms()
            .filter_map(|(m, c)| {
                let r = residue(c, p);
                (r != 0).then(|| (m.exponents().to_vec(), r))
            })
            .collect();
        Ok(ModPoly {
            p,
            nvars: f.nvars(),
            terms,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t * pow_mod(*x, k, p) % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }

    /// Substitute the `Some` entries of `assignment`; the result is a
    /// polynomial in the `None` positions, in order.
    pub fn specialize(&self, assignment: &[Option<u64>]) -> ModPoly {
        let p = self.p;
        let free: Vec<usize> = (0..self.nvars)
            .filter(|&i| assignment[i].is_none())
            .collect();
        let mut acc: std::collections::BTreeMap<Vec<u32>, u64> = Default::default();
        for (e, c) in &self.terms {
            let mut t = *c;
            for (i, a) in assignment.iter().enumerate() {
                if let Some(v) = a {
                    if e[i] > 0 {
                        t = t * pow_mod(*v, e[i], p) % p;
                    }
                }
            }
            if t == 0 {
                continue;
            }
            let key: Vec<u32> = free.iter().map(|&i| e[i]).collect();
            let slot = acc.entry(key).or_insert(0);
            *slot = (*slot + t) % p;
        }
        ModPoly {
            p,
            nvars: free.len(),
            terms: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }
}

fn pow_mod(b: u64, mut e: u32, p: u64) -> u64 {
    let mut base = b % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// An affine piece of the enumeration: `base` carries the fixed coordinates,
/// `free` lists the positions swept over F_p, `poly` is the restriction.
#[derive(Clone, Debug)]
pub struct Chart {
    pub base: Vec<u64>,
    pub free: Vec<usize>,
    pub poly: ModPoly,
}

/// Charts covering the projective zero set of `f` (restricted by `fixed`)
/// without repetition: for each free position in turn, earlier free
/// coordinates are 0 and this one is 1.
pub fn projective_charts(f: &ModPoly, fixed: &[Option<u64>]) -> Vec<Chart> {
    let free: Vec<usize> = (0..f.nvars).filter(|&i| fixed[i].is_none()).collect();
    let mut charts = Vec::with_capacity(free.len());
    for (k, &pos) in free.iter().enumerate() {
        let mut assignment = fixed.to_vec();
        for &q in &free[..k] {
            assignment[q] = Some(0);
        }
        assignment[pos] = Some(1);
        charts.push(chart_from(f, assignment));
    }
    charts
}

/// A single chart sweeping every non-fixed coordinate.
pub fn affine_chart(f: &ModPoly, fixed: &[Option<u64>]) -> Chart {
    chart_from(f, fixed.to_vec())
}

fn chart_from(f: &ModPoly, assignment: Vec<Option<u64>>) -> Chart {
    let poly = f.specialize(&assignment);
    let free = (0..f.nvars).filter(|&i| assignment[i].is_none()).collect();
    let base = assignment.iter().map(|a| a.unwrap_or(0)).collect();
    Chart { base, free, poly }
}

struct Split {
    /// For each power of the inner variable: (coefficient, outer exponents).
    by_inner: Vec<Vec<(u64, Vec<u32>)>>,
    outer_deg: u32,
}

fn split_inner(poly: &ModPoly) -> Split {
    let m = poly.nvars;
    let inner_deg = poly.terms.iter().map(|(e, _)| e[m - 1]).max().unwrap_or(0) as usize;
    let mut by_inner = vec![Vec::new(); inner_deg + 1];
    let mut outer_deg = 0;
    for (e, c) in &poly.terms {
        outer_deg = outer_deg.max(e[..m - 1].iter().copied().max().unwrap_or(0));
        by_inner[e[m - 1] as usize].push((*c, e[..m - 1].to_vec()));
    }
    Split {
        by_inner,
        outer_deg,
    }
}

impl Chart {
    fn full_point(&self, values: &[u64]) -> Vec<u64> {
        let mut pt = self.base.clone();
        for (&pos, &v) in self.free.iter().zip(values) {
            pt[pos] = v;
        }
        pt
    }

    /// Visit zeros whose first free coordinate equals `lead` (or the single
    /// point when there are no free coordinates), in lexicographic order.
    /// The visitor returns `true` to stop.
    fn scan_slab(&self, lead: u64, visit: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        let p = self.poly.p;
        let m = self.free.len();
        if m == 0 {
            if self.poly.eval(&[]) == 0 {
                return visit(&self.base);
            }
            return false;
        }
        if m == 1 {
            let x = [lead];
            if self.poly.eval(&x) == 0 {
                return visit(&self.full_point(&x));
            }
            return false;
        }
        let split = split_inner(&self.poly);
        let outer_n = m - 1;
        let dmax = split.outer_deg as usize;
        let mut outer = vec![0u64; outer_n];
        outer[0] = lead;
        let mut powers = vec![vec![1u64; dmax + 1]; outer_n];
        let mut coeffs = vec![0u64; split.by_inner.len()];
        let mut values = vec![0u64; m];
        loop {
            for (i, &v) in outer.iter().enumerate() {
                let pw = &mut powers[i];
                for e in 1..=dmax {
                    pw[e] = pw[e - 1] * v % p;
                }
            }
            for (j, terms) in split.by_inner.iter().enumerate() {
                let mut acc = 0u64;
                for (c, e) in terms {
                    let mut t = *c;
                    for (i, &k) in e.iter().enumerate() {
                        if k > 0 {
                            t = t * powers[i][k as usize] % p;
                        }
                    }
                    acc += t;
                    if acc >= p {
                        acc -= p;
                    }
                }
                coeffs[j] = acc;
            }
            values[..outer_n].copy_from_slice(&outer);
            for z in 0..p {
                let mut h = 0u64;
                for c in coeffs.iter().rev() {
                    h = (h * z + c) % p;
                }
                if h == 0 {
                    values[outer_n] = z;
                    if visit(&self.full_point(&values)) {
                        return true;
                    }
                }
            }
            // odometer over outer[1..]
            let mut i = outer_n;
            loop {
                if i == 1 {
                    return false;
                }
                i -= 1;
                outer[i] += 1;
                if outer[i] < p {
                    break;
                }
                outer[i] = 0;
            }
        }
    }

    fn leads(&self) -> u64 {
        if self.free.is_empty() {
            1
        } else {
            self.poly.p
        }
    }

    pub fn count(&self) -> u64 {
        (0..self.leads())
            .into_par_iter()
            .map(|lead| {
                let mut n = 0u64;
                self.scan_slab(lead, &mut |_| {
                    n += 1;
                    false
                });
                n
            })
            .sum()
    }

    /// First zero (in enumeration order) accepted by `accept`.
    pub fn find_first<F>(&self, accept: &F) -> Option<Vec<u64>>
    where
        F: Fn(&[u64]) -> bool + Sync,
    {
        (0..self.leads()).into_par_iter().find_map_first(|lead| {
            let mut found = None;
            self.scan_slab(lead, &mut |pt| {
                if accept(pt) {
                    found = Some(pt.to_vec());
                    true
                } else {
                    false
                }
            });
            found
        })
    }

    /// Every zero, in enumeration order.
    pub fn zeros(&self) -> Vec<Vec<u64>> {
        let slabs: Vec<Vec<Vec<u64>>> = (0..self.leads())
            .into_par_iter()
            .map(|lead| {
                let mut out = Vec::new();
                self.scan_slab(lead, &mut |pt| {
                    out.push(pt.to_vec());
                    false
                });
                out
            })
            .collect();
        slabs.into_iter().flatten().collect()
    }
}

/// Result of [`fp_points`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpPoints {
    pub p: u64,
    /// Number of zeros; projective when every fixed value is 0, affine in the
    /// free coordinates otherwise. In existence mode this is 0 or 1.
    pub count: u64,
    pub projective: bool,
    pub first: Option<Vec<u64>>,
}

fn fixed_vector(f: &MultiPoly, fix: &[(usize, u64)], p: u64) -> Result<Vec<Option<u64>>> {
    let mut fixed = vec![None; f.nvars()];
    for &(i, v) in fix {
        if i >= f.nvars() {
            return Err(Error::Arity {
                expected: f.nvars(),
                got: i + 1,
            });
        }
        fixed[i] = Some(v % p);
    }
    Ok(fixed)
}

/// Count the F_p zeros of `f` with the coordinates in `fix` held fixed.
///
/// When every fixed value is zero (in particular when `fix` is empty) the
/// count is of projective points on that linear section, normalised so the
/// first nonzero free coordinate is 1. Otherwise the fixed nonzero value
/// already normalises the point and the free coordinates are counted
/// affinely.
pub fn fp_points(f: &MultiPoly, p: u64, fix: &[(usize, u64)]) -> Result<FpPoints> {
    fp_points_mode(f, p, fix, false)
}

/// As [`fp_points`] but stops at the first zero.
pub fn fp_exists(f: &MultiPoly, p: u64, fix: &[(usize, u64)]) -> Result<FpPoints> {
    fp_points_mode(f, p, fix, true)
}

fn fp_points_mode(
    f: &MultiPoly,
    p: u64,
    fix: &[(usize, u64)],
    existence: bool,
) -> Result<FpPoints> {
    let compiled = ModPoly::new(f, p)?;
    let fixed = fixed_vector(f, fix, p)?;
    let projective = fixed.iter().all(|v| v.unwrap_or(0) == 0);
    let charts = if projective {
        projective_charts(&compiled, &fixed)
    } else {
        vec![affine_chart(&compiled, &fixed)]
    };
    let mut first = None;
    let mut count = 0;
    for chart in &charts {
        if existence {
            if let Some(pt) = chart.find_first(&|_| true) {
                return Ok(FpPoints {
                    p,
                    count: 1,
                    projective,
                    first: Some(pt),
                });
            }
        } else {
            if first.is_none() {
                first = chart.find_first(&|_| true);
            }
            count += chart.count();
        }
    }
    Ok(FpPoints {
        p,
        count,
        projective,
        first,
    })
}

/// Number of affine zeros in F_p^n, the origin included.
pub fn affine_zero_count(f: &MultiPoly, p: u64) -> Result<u64> {
    let compiled = ModPoly::new(f, p)?;
    Ok(affine_chart(&compiled, &vec![None; f.nvars()]).count())
}

/// Gradient of `f`, one partial derivative per variable.
pub fn gradient(f: &MultiPoly) -> Vec<MultiPoly> {
    (0..f.nvars()).map(|i| f.derivative(i)).collect()
}

pub(crate) fn to_big(point: &[u64]) -> Vec<BigInt> {
    point.iter().map(|&v| BigInt::from(v)).collect()
}
