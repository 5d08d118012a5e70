mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use hasse_core::corpus::{corpus_entry, cubic_n7_params, selmer, swinnerton_dyer, t1_n1_params};
use hasse_core::cyclotomic::{minimal_polynomial, norm_form, ThetaVariant};
use hasse_core::exactmath::{
    mod_order, primes_below, resultant, sylvester_resultant, var_names, MultiPoly,
};
use hasse_core::forms::{
    bracket_identity, build_form, expected_bracket_difference, search_params, FormParams, Variant,
};
use hasse_core::globalcheck::{
    check_roots, height_search, obstruction_transcript, replay_transcript,
};
use hasse_core::localsolve::{
    find_liftable_point, fp_points, special_branch, special_prime_certificate, verify_certificate,
};

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Random polynomial in `x, y, z` with at most `len` terms of degree <= 3.
fn arb_poly(len: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), -9i64..=9), 0..len).prop_map(|terms| {
        MultiPoly::from_terms(
            var_names(&["x", "y", "z"]),
            terms
                .into_iter()
                .map(|((a, b, c), k)| (vec![a, b, c], BigInt::from(k))),
        )
        .unwrap()
    })
}

fn arb_point() -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(-20i64..=20, 3).prop_map(|v| big(&v))
}

fn one_thread<T: Send>(job: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(job)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_operations_commute_with_evaluation(a in arb_poly(6), b in arb_poly(6), c in arb_poly(6), pt in arb_point()) {
        let ev = |f: &MultiPoly| f.eval(&pt).unwrap();
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(MultiPoly::parse(&a.to_text(), a.vars().to_vec()).unwrap(), a);
    }

    #[test]
    fn reduction_mod_m_matches_evaluation(a in arb_poly(8), pt in arb_point(), m in 2i64..500) {
        let m = BigInt::from(m);
        let direct = a.eval(&pt).unwrap().mod_floor(&m);
        let reduced = a.reduce_mod(&m).eval(&pt).unwrap().mod_floor(&m);
        prop_assert_eq!(direct.clone(), reduced);
        prop_assert_eq!(a.eval_mod(&pt, &m).unwrap().mod_floor(&m), direct);
    }

    #[test]
    fn resultant_routes_agree_and_are_multiplicative(f in arb_poly(5), g in arb_poly(5), h in arb_poly(4)) {
        let r = resultant(&f, &h, "x");
        let s = sylvester_resultant(&f, &h, "x");
        if let (Ok(r), Ok(s)) = (&r, &s) {
            prop_assert_eq!(r, s);
        }
        let fg = &f * &g;
        if let (Ok(a), Ok(b), Ok(c)) = (sylvester_resultant(&f, &h, "x"), sylvester_resultant(&g, &h, "x"), sylvester_resultant(&fg, &h, "x")) {
            if f.degree_in(0) + g.degree_in(0) == fg.degree_in(0) {
                prop_assert_eq!(c, &a * &b);
            }
        }
    }

    #[test]
    fn mod_order_divides_group_order(idx in 0usize..14, q in 2u64..10_000) {
        let n = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47][idx];
        prop_assume!(q % n != 0);
        let f = mod_order(q, n, false).unwrap();
        let g = mod_order(q, n, true).unwrap();
        prop_assert_eq!((n - 1) % f, 0);
        prop_assert!(f == g || f == 2 * g);
        let mut x = 1u64;
        for _ in 0..g {
            x = x * (q % n) % n;
        }
        prop_assert!(x == 1 || x == n - 1);
    }

    #[test]
    fn norm_forms_are_homogeneous(idx in 0usize..4, gamma in 1usize..4, lambda in -6i64..=6, pt in prop::collection::vec(-9i64..=9, 4)) {
        let (n_prime, theta) = [(5, ThetaVariant::RealTheta), (7, ThetaVariant::RealTheta), (5, ThetaVariant::OneMinusZeta), (11, ThetaVariant::RealTheta)][idx];
        let basis = minimal_polynomial(n_prime, theta).unwrap();
        let f = norm_form(&basis, gamma).unwrap();
        prop_assert_eq!(f.nvars(), gamma + 1);
        prop_assert!(f.is_homogeneous());
        prop_assert_eq!(f.total_degree(), Some(basis.degree() as u32));
        let p = big(&pt[..=gamma]);
        let scaled: Vec<BigInt> = p.iter().map(|c| c * lambda).collect();
        let d = basis.degree() as u32;
        prop_assert_eq!(f.eval(&scaled).unwrap(), f.eval(&p).unwrap() * BigInt::from(lambda).pow(d));
    }

    #[test]
    fn one_minus_zeta_norm_matches_conjugates(idx in 0usize..2, pt in prop::collection::vec(-10i64..=10, 3)) {
        let n_prime = [5u64, 7][idx];
        let basis = minimal_polynomial(n_prime, ThetaVariant::OneMinusZeta).unwrap();
        let f = norm_form(&basis, 2).unwrap();
        let exact = f.eval(&big(&pt)).unwrap();
        let approx = common::conjugate_product(&common::one_minus_zetas(n_prime), pt[0], &pt[1..]);
        prop_assert!(common::close(&exact, &approx.0, 1e-9));
        prop_assert!(approx.1.to_f64().abs() < 1e-9);
    }

    #[test]
    fn certificates_replay_and_reject_tampering(idx in 0usize..17) {
        let p = primes_below(60)[idx];
        let f = selmer();
        let cert = find_liftable_point(&f, p, 25).unwrap();
        prop_assert!(verify_certificate(&f, &cert).is_ok());
        prop_assert!(cert.v_f > 2 * cert.v_grad && cert.k > 2 * cert.v_grad);
        let mut bad = cert.clone();
        bad.v_f = 0;
        prop_assert!(verify_certificate(&f, &bad).is_err());
        let mut bad = cert;
        bad.p = 4;
        prop_assert!(verify_certificate(&f, &bad).is_err());
    }

    #[test]
    fn planted_roots_are_found(r in prop::collection::vec(-4i64..=4, 3), g in arb_poly(6)) {
        let rb = big(&r);
        prop_assume!(r.iter().fold(0i64, |a, &b| a.gcd(&b)) == 1);
        let vars = var_names(&["x", "y", "z"]);
        let linear = |c: [i64; 3]| {
            MultiPoly::from_terms(
                vars.clone(),
                (0..3).map(|i| {
                    let mut e = vec![0u32; 3];
                    e[i] = 1;
                    (e, BigInt::from(c[i]))
                }),
            )
            .unwrap()
        };
        let lin = linear([r[1], -r[0], 0]);
        let lin2 = linear([0, r[2], -r[1]]);
        let f = &(&lin * &g) + &(&lin2 * &lin2);
        prop_assume!(!f.is_zero());
        prop_assert!(f.eval(&rb).unwrap().is_zero());
        let rep = height_search(&f, 4);
        let neg: Vec<i64> = r.iter().map(|v| -v).collect();
        prop_assert!(rep.roots_found.contains(&r) || rep.roots_found.contains(&neg));
        prop_assert!(check_roots(&f, &rep.roots_found).is_none());
    }
}

#[test]
fn fp_counts_match_naive_enumeration() {
    let s = selmer();
    for p in primes_below(51) {
        assert_eq!(
            fp_points(&s, p, &[]).unwrap().count,
            common::naive_projective_count(&s, p),
            "selmer p = {p}"
        );
    }
    let foot = corpus_entry("cubic_n7").unwrap().form;
    let sd = swinnerton_dyer().unwrap();
    for p in primes_below(14) {
        for (name, f) in [("cubic_n7", &foot), ("swinnerton_dyer", &sd)] {
            let pts = fp_points(f, p, &[]).unwrap();
            assert_eq!(
                pts.count,
                common::naive_projective_count(f, p),
                "{name} p = {p}"
            );
            if let Some(first) = pts.first {
                assert_eq!(common::eval_mod(f, &first, p), 0);
            }
        }
    }
}

/// `f` at an integer point, reduced mod `m`, with i64 arithmetic.
fn eval_small(terms: &[(Vec<u32>, i64)], pt: &[i64], m: i64) -> i64 {
    terms.iter().fold(0i64, |acc, (e, c)| {
        let v = e
            .iter()
            .zip(pt)
            .fold(*c, |v, (&k, &x)| (0..k).fold(v, |v, _| v * x % m));
        (acc + v).rem_euclid(m)
    })
}

#[test]
fn cubic_n7_has_no_seven_adic_zero() {
    let f = corpus_entry("cubic_n7").unwrap().form;
    assert_eq!(f.nvars(), 4);
    let m = 343i64;
    let terms: Vec<(Vec<u32>, i64)> = f
        .terms()
        .map(|(e, c)| {
            (
                e.exponents().to_vec(),
                c.mod_floor(&BigInt::from(m)).to_i64().unwrap(),
            )
        })
        .collect();

    // Every zero over F_7 has t = x = 0.
    for t in 0..7 {
        for x in 0..7 {
            for y in 0..7 {
                for z in 0..7 {
                    if eval_small(&terms, &[t, x, y, z], 7) == 0 {
                        assert!(t == 0 && x == 0, "F_7 zero {:?}", [t, x, y, z]);
                    }
                }
            }
        }
    }
    // Terms containing t involve only t and x, so they vanish mod 7^3 once
    // t and x are divisible by 7.
    for (e, _) in &terms {
        if e[0] > 0 {
            assert!(e[2] == 0 && e[3] == 0 && e[0] + e[1] == 3);
        }
    }
    // With t = 0, x = 7b and (y, z) primitive mod 7 the value is never 0 mod 7^3.
    for b in 0..49 {
        for y in 0..m {
            for z in 0..m {
                if y % 7 == 0 && z % 7 == 0 {
                    continue;
                }
                assert_ne!(
                    eval_small(&terms, &[0, 7 * b, y, z], m),
                    0,
                    "x = {}, y = {y}, z = {z}",
                    7 * b
                );
            }
        }
    }
}

#[test]
fn special_recipe_agrees_with_generic_search() {
    let params = t1_n1_params();
    let basis = minimal_polynomial(params.n_prime, params.variant.theta()).unwrap();
    let form = build_form(&params, &basis).unwrap().form;
    for p in [2u64, 3, 7] {
        assert!(special_branch(&params, p).is_some());
        let special = special_prime_certificate(&params, &basis, p).unwrap();
        let generic = find_liftable_point(&form, p, 25).unwrap();
        verify_certificate(&form, &special).unwrap();
        verify_certificate(&form, &generic).unwrap();
    }
    assert!(special_branch(&params, 5).is_none());
}

#[test]
fn height_search_is_independent_of_workers() {
    let form = corpus_entry("t1_n1").unwrap().form;
    let one = one_thread(|| height_search(&form, 8));
    let many = rayon::ThreadPoolBuilder::new()
        .num_threads(5)
        .build()
        .unwrap()
        .install(|| height_search(&form, 8));
    assert_eq!(one, many);
    assert!(one.roots_found.is_empty());
}

#[test]
fn bracket_identity_holds_for_every_family() {
    let mut cases: Vec<FormParams> = vec![t1_n1_params(), cubic_n7_params()];
    for (variant, n_prime) in [
        (Variant::T1, 11),
        (Variant::T1, 19),
        (Variant::G1, 7),
        (Variant::G1, 11),
        (Variant::G2, 13),
        (Variant::G3, 7),
    ] {
        let n = variant.n_for_prime(n_prime).unwrap();
        let gamma = variant.gamma_range(n).0;
        cases.extend(search_params(n_prime, variant, 2, 1, gamma).unwrap());
    }
    for p in &cases {
        assert_eq!(bracket_identity(p), expected_bracket_difference(p), "{p:?}");
    }
}

#[test]
fn transcripts_pass_for_search_outputs() {
    for (variant, n_prime) in [
        (Variant::T1, 7),
        (Variant::T1, 11),
        (Variant::T1, 19),
        (Variant::G1, 7),
        (Variant::G1, 11),
        (Variant::G1, 23),
        (Variant::G2, 13),
        (Variant::G2, 17),
        (Variant::G2, 29),
        (Variant::G3, 7),
        (Variant::G3, 11),
        (Variant::G3, 13),
    ] {
        let n = variant.n_for_prime(n_prime).unwrap();
        let (lo, hi) = variant.gamma_range(n);
        for gamma in [lo, hi] {
            for params in search_params(n_prime, variant, 2, 1, gamma).unwrap() {
                let basis = minimal_polynomial(n_prime, variant.theta()).unwrap();
                let t = obstruction_transcript(&params, &basis, 1000).unwrap();
                assert!(t.pass, "{variant:?} N = {n_prime}: {:?}", t.steps);
                replay_transcript(&t, &params, &basis).unwrap();
            }
        }
    }
}
