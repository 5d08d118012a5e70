//! Resultants with respect to one variable.
//!
//! [`resultant`] computes `Res_z(f, g) = prod g(r)` over the roots `r` of a
//! monic `f` as the determinant of multiplication-by-`g` on `R[z]/(f)`. The
//! determinant is obtained from traces of powers (Newton's identities), so
//! the only divisions are exact divisions by small integers.
//!
//! [`sylvester_resultant`] is an independent route: fraction-free (Bareiss)
//! elimination on the Sylvester matrix.

use num_bigint::BigInt;

use super::poly::MultiPoly;
use crate::error::{Error, Result};

struct Univariate {
    vars: Vec<String>,
    var_idx: usize,
    f: Vec<MultiPoly>,
    g: Vec<MultiPoly>,
}

fn split(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<Univariate> {
    let mut vars = f.vars().to_vec();
    for v in g.vars() {
        if !vars.contains(v) {
            vars.push(v.clone());
        }
    }
    let in_f = f.var_index(var).is_some();
    let in_g = g.var_index(var).is_some();
    if !in_f && !in_g {
        return Err(Error::MissingVariable(var.to_string()));
    }
    if !in_f {
        vars.push(var.to_string());
    }
    let var_idx = vars.iter().position(|v| v == var).unwrap();
    let f = f.embed(&vars)?;
    let g = g.embed(&vars)?;
    Ok(Univariate {
        var_idx,
        f: f.univariate_coeffs(var_idx),
        g: g.univariate_coeffs(var_idx),
        vars,
    })
}

fn drop_var(p: &MultiPoly, vars: &[String], var_idx: usize) -> MultiPoly {
    let keep: Vec<String> = vars
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != var_idx)
        .map(|(_, v)| v.clone())
        .collect();
    p.restrict(&keep).expect("kept variables exist")
}

/// Reduce a coefficient vector (lowest power first) modulo the monic `f`.
fn reduce(mut v: Vec<MultiPoly>, f: &[MultiPoly]) -> Vec<MultiPoly> {
    let d = f.len() - 1;
    while v.len() > d {
        let top = v.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = v.len() - d;
        for i in 0..d {
            if !f[i].is_zero() {
                v[shift + i] = &v[shift + i] - &(&top * &f[i]);
            }
        }
    }
    v
}

fn mul_mod(a: &[MultiPoly], b: &[MultiPoly], f: &[MultiPoly], zero: &MultiPoly) -> Vec<MultiPoly> {
    let mut out = vec![zero.clone(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    reduce(out, f)
}

/// Power sums `s_0 .. s_{d-1}` of the roots of the monic `f`.
fn root_power_sums(f: &[MultiPoly], zero: &MultiPoly) -> Vec<MultiPoly> {
    let d = f.len() - 1;
    // e_i = (-1)^i * f[d - i]
    let e: Vec<MultiPoly> = (0..=d)
        .map(|i| {
            if i % 2 == 0 {
                f[d - i].clone()
            } else {
                -&f[d - i]
            }
        })
        .collect();
    let mut s: Vec<MultiPoly> = Vec::with_capacity(d);
    s.push(zero.clone() + MultiPoly::constant(zero.vars().to_vec(), d as i64));
    for k in 1..d {
        let mut acc = e[k].scale(&BigInt::from(k as i64));
        if k % 2 == 0 {
            acc = -acc;
        }
        for i in 1..k {
            let term = &e[i] * &s[k - i];
            acc = if i % 2 == 1 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        s.push(acc);
    }
    s
}

fn trace(h: &[MultiPoly], sums: &[MultiPoly], zero: &MultiPoly) -> MultiPoly {
    let mut acc = zero.clone();
    for (c, s) in h.iter().zip(sums) {
        if !c.is_zero() {
            acc = &acc + &(c * s);
        }
    }
    acc
}

/// Elementary symmetric functions `E_0 = 1, E_1, .., E_d` of the values of
/// `g` at the roots of the monic `f`, over the remaining variables.
///
/// `E_d` is the resultant; `sum_k E_k w^(d-k)` is the characteristic
/// polynomial of multiplication by `-g`.
pub fn symmetric_functions(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<Vec<MultiPoly>> {
    let u = split(f, g, var)?;
    let d = u.f.len() - 1;
    let zero = MultiPoly::zero(u.vars.clone());
    if u.f[d] != MultiPoly::constant(u.vars.clone(), 1) {
        return Err(Error::NotMonic(var.to_string()));
    }
    let one = MultiPoly::constant(u.vars.clone(), 1);
    if d == 0 {
        return Ok(vec![drop_var(&one, &u.vars, u.var_idx)]);
    }
    let mut h = reduce(u.g.clone(), &u.f);
    h.resize(d, zero.clone());
    let sums = root_power_sums(&u.f, &zero);

    // p_k = Tr(h^k), E_k = (1/k) sum_{i=1..k} (-1)^{i-1} E_{k-i} p_i
    let mut power = h.clone();
    let mut p: Vec<MultiPoly> = vec![zero.clone()];
    let mut elem: Vec<MultiPoly> = vec![one];
    for k in 1..=d {
        if k > 1 {
            power = mul_mod(&power, &h, &u.f, &zero);
            power.resize(d, zero.clone());
        }
        p.push(trace(&power, &sums, &zero));
        let mut acc = zero.clone();
        for i in 1..=k {
            let term = &elem[k - i] * &p[i];
            acc = if i % 2 == 1 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        let ek = acc
            .div_exact_int(&BigInt::from(k as i64))
            .expect("Newton identities divide exactly over the integers");
        elem.push(ek);
    }
    Ok(elem
        .iter()
        .map(|e| drop_var(e, &u.vars, u.var_idx))
        .collect())
}

/// `Res_var(f, g)` for `f` monic in `var`, equal to the product of `g` over
/// the roots of `f`. The result is expressed over the remaining variables.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly> {
    Ok(symmetric_functions(f, g, var)?
        .pop()
        .expect("E_0 is always present"))
}

/// Determinant of the Sylvester matrix of `f` and `g` in `var`.
///
/// Equals `lc(f)^deg(g) * prod g(r)`; for monic `f` it agrees with
/// [`resultant`].
pub fn sylvester_resultant(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let u = split(f, g, var)?;
    let m = u.f.len() - 1;
    let n = u.g.len() - 1;
    let zero = MultiPoly::zero(u.vars.clone());
    if u.f[m].is_zero() || u.g[n].is_zero() {
        // one input is identically zero
        return Ok(drop_var(&zero, &u.vars, u.var_idx));
    }
    if n == 0 {
        return Ok(drop_var(&u.g[0].pow(m as u32), &u.vars, u.var_idx));
    }
    if m == 0 {
        return Ok(drop_var(&u.f[0].pow(n as u32), &u.vars, u.var_idx));
    }
    let size = m + n;
    let mut mat = vec![vec![zero.clone(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            mat[i][i + j] = u.f[m - j].clone();
        }
    }
    for i in 0..m {
        for j in 0..=n {
            mat[n + i][i + j] = u.g[n - j].clone();
        }
    }
    let det = bareiss_det(mat, &zero);
    Ok(drop_var(&det, &u.vars, u.var_idx))
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_det(mut a: Vec<Vec<MultiPoly>>, zero: &MultiPoly) -> MultiPoly {
    let n = a.len();
    let mut negate = false;
    let mut prev = MultiPoly::constant(zero.vars().to_vec(), 1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return zero.clone(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
            a[i][k] = zero.clone();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
