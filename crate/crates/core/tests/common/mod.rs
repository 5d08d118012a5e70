//! Independent oracles: fixed-point arithmetic for conjugate products,
//! naive enumerators over F_p, and small helpers shared by the test targets.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use hasse_core::exactmath::{var_names, MultiPoly};

/// Fractional bits of the fixed-point representation (about 60 digits).
pub const FRAC: u32 = 200;

/// A real number `v / 2^FRAC`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fx(pub BigInt);

impl Fx {
    pub fn int(v: i64) -> Fx {
        Fx(BigInt::from(v) << FRAC)
    }
    pub fn add(&self, o: &Fx) -> Fx {
        Fx(&self.0 + &o.0)
    }
    pub fn sub(&self, o: &Fx) -> Fx {
        Fx(&self.0 - &o.0)
    }
    pub fn mul(&self, o: &Fx) -> Fx {
        Fx((&self.0 * &o.0) >> FRAC)
    }
    pub fn div_int(&self, k: i64) -> Fx {
        Fx(&self.0 / BigInt::from(k))
    }
    pub fn to_f64(&self) -> f64 {
        let shift = self.0.bits().saturating_sub(60);
        (&self.0 >> shift).to_f64().unwrap() * 2f64.powi(shift as i32 - FRAC as i32)
    }
}

/// `atan(1/k)` by its alternating series.
fn atan_inv(k: i64) -> Fx {
    let k2 = BigInt::from(k * k);
    let mut term = (BigInt::one() << FRAC) / BigInt::from(k);
    let mut sum = BigInt::zero();
    let mut n = 1i64;
    let mut sign = true;
    while !term.is_zero() {
        let t = &term / BigInt::from(n);
        if sign {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &k2;
        n += 2;
        sign = !sign;
    }
    Fx(sum)
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi() -> Fx {
    let a = atan_inv(5);
    let b = atan_inv(239);
    Fx(a.0 * 16 - b.0 * 4)
}

/// `(cos x, sin x)` by Taylor series; fine for `|x| <= 2 pi`.
pub fn cos_sin(x: &Fx) -> (Fx, Fx) {
    let mut c = Fx::int(1);
    let mut s = x.clone();
    let x2 = x.mul(x);
    let mut tc = Fx::int(1);
    let mut ts = x.clone();
    let mut k = 1i64;
    loop {
        tc = Fx(-(tc.mul(&x2).0)).div_int((2 * k - 1) * (2 * k));
        ts = Fx(-(ts.mul(&x2).0)).div_int((2 * k) * (2 * k + 1));
        if tc.0.is_zero() && ts.0.is_zero() {
            break;
        }
        c = c.add(&tc);
        s = s.add(&ts);
        k += 1;
    }
    (c, s)
}

/// Complex fixed point.
#[derive(Clone, Debug)]
pub struct Cx(pub Fx, pub Fx);

impl Cx {
    pub fn real(v: Fx) -> Cx {
        Cx(v, Fx::int(0))
    }
    pub fn add(&self, o: &Cx) -> Cx {
        Cx(self.0.add(&o.0), self.1.add(&o.1))
    }
    pub fn mul(&self, o: &Cx) -> Cx {
        Cx(
            self.0.mul(&o.0).sub(&self.1.mul(&o.1)),
            self.0.mul(&o.1).add(&self.1.mul(&o.0)),
        )
    }
    pub fn scale(&self, k: i64) -> Cx {
        Cx(Fx(&self.0 .0 * k), Fx(&self.1 .0 * k))
    }
}

/// The conjugates `2 - 2 cos(2 pi m / N)`, `m = 1..(N-1)/2`.
pub fn real_thetas(n_prime: u64) -> Vec<Cx> {
    let two_pi = Fx(pi().0 * 2);
    (1..=(n_prime - 1) / 2)
        .map(|m| {
            let ang = two_pi.mul(&Fx::int(m as i64)).div_int(n_prime as i64);
            let (c, _) = cos_sin(&ang);
            Cx::real(Fx::int(2).sub(&Fx(c.0 * 2)))
        })
        .collect()
}

/// The conjugates `1 - zeta^m`, `m = 1..N-1`.
pub fn one_minus_zetas(n_prime: u64) -> Vec<Cx> {
    let two_pi = Fx(pi().0 * 2);
    (1..n_prime)
        .map(|m| {
            let ang = two_pi.mul(&Fx::int(m as i64)).div_int(n_prime as i64);
            let (c, s) = cos_sin(&ang);
            Cx(Fx::int(1).sub(&c), Fx(-s.0))
        })
        .collect()
}

/// `prod_m (x + sum_i theta_m^i y_i)` numerically.
pub fn conjugate_product(thetas: &[Cx], x: i64, ys: &[i64]) -> Cx {
    let mut acc = Cx::real(Fx::int(1));
    for th in thetas {
        let mut lin = Cx::real(Fx::int(x));
        let mut pw = Cx::real(Fx::int(1));
        for &y in ys {
            pw = pw.mul(th);
            lin = lin.add(&pw.scale(y));
        }
        acc = acc.mul(&lin);
    }
    acc
}

/// `|approx - exact| <= tol |exact|` (absolute `tol` when exact is 0).
pub fn close(exact: &BigInt, approx: &Fx, tol: f64) -> bool {
    let diff = Fx((exact << FRAC) - &approx.0).to_f64().abs();
    let scale = exact.abs().to_f64().unwrap().max(1.0);
    diff <= tol * scale
}

/// Parse with the given variable names.
pub fn poly(text: &str, names: &[&str]) -> MultiPoly {
    MultiPoly::parse(text, var_names(names)).unwrap()
}

/// `f(point) mod p` straight from the BigInt terms.
pub fn eval_mod(f: &MultiPoly, point: &[u64], p: u64) -> u64 {
    let pt: Vec<BigInt> = point.iter().map(|&v| BigInt::from(v)).collect();
    f.eval(&pt)
        .unwrap()
        .mod_floor(&BigInt::from(p))
        .to_u64()
        .unwrap()
}

/// Projective F_p zeros by full affine enumeration: count the nonzero
/// affine zeros and divide by `p - 1`.
pub fn naive_projective_count(f: &MultiPoly, p: u64) -> u64 {
    let n = f.nvars();
    let mut pt = vec![0u64; n];
    let mut nonzero = 0u64;
    loop {
        if pt.iter().any(|&v| v != 0) && eval_mod(f, &pt, p) == 0 {
            nonzero += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                assert_eq!(nonzero % (p - 1), 0);
                return nonzero / (p - 1);
            }
            pt[i] += 1;
            if pt[i] < p {
                break;
            }
            pt[i] = 0;
            i += 1;
        }
    }
}

/// Affine F_p zeros (origin included) by full enumeration.
pub fn naive_affine_count(f: &MultiPoly, p: u64) -> u64 {
    naive_projective_count(f, p) * (p - 1) + 1
}
