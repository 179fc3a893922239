mod support;

use kohn_core::forms::{complex_hessian, d_antiholo, d_holo, ddbar, levi_determinants, Form};
use kohn_core::{GaussianRational, Poly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support::*;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_form(r: &mut ChaCha8Rng, n: usize) -> Form {
    let p = r.gen_range(0..=n.min(2));
    let q = r.gen_range(0..=n.min(2));
    let terms = r.gen_range(1..=3);
    from_naive(&random_naive_form(r, n, p, q, terms), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wedge_matches_naive_permutation_sort(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let a = random_form(&mut r, n);
        let b = random_form(&mut r, n);
        let expected = naive_wedge(&to_naive(&a), &to_naive(&b), n);
        prop_assert_eq!(to_naive(&a.wedge(&b)), expected);
    }

    #[test]
    fn d_matches_naive(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let a = random_form(&mut r, n);
        prop_assert_eq!(to_naive(&a.d_holo()), naive_d(&to_naive(&a), n, true));
        prop_assert_eq!(to_naive(&a.d_antiholo()), naive_d(&to_naive(&a), n, false));
    }

    #[test]
    fn graded_anticommutativity(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let a = random_form(&mut r, n);
        let b = random_form(&mut r, n);
        let (da, db) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
        let ba = b.wedge(&a);
        prop_assert_eq!(a.wedge(&b), if da * db % 2 == 1 { ba.neg() } else { ba });
    }

    #[test]
    fn wedge_is_associative(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let (a, b, c) = (random_form(&mut r, n), random_form(&mut r, n), random_form(&mut r, n));
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn d_squares_vanish(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let a = random_form(&mut r, n);
        prop_assert!(a.d_holo().d_holo().is_zero());
        prop_assert!(a.d_antiholo().d_antiholo().is_zero());
        prop_assert_eq!(a.d_holo().d_antiholo(), a.d_antiholo().d_holo().neg());
    }

    #[test]
    fn hessian_of_real_function_is_hermitian(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_poly(&mut r, n, 3, 1, 4);
        let real = &f + &f.conjugate();
        let h = complex_hessian(&real);
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(h[i][j].conjugate(), h[j][i].clone());
            }
        }
    }

    #[test]
    fn levi_determinant_matches_bordered_hessian(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let rr = random_defining_function(&mut r, n, 4);
        let oracle = bordered_hessian_det(&rr).scale(&GaussianRational::from_int(factorial(n - 1)));
        let dets = levi_determinants(&rr, 1, &[]).unwrap();
        if oracle.is_zero() {
            prop_assert!(dets.is_empty());
        } else {
            prop_assert_eq!(dets.len(), 1);
            prop_assert!(dets[0] == oracle || dets[0] == -&oracle, "{} vs {}", dets[0], oracle);
        }
    }
}

#[test]
fn dbar_d_of_function() {
    let f = kohn_core::parse_expression("z1^2*zbar2 + 3*z2*zbar1^2", 2).unwrap();
    assert_eq!(ddbar(&f), d_antiholo(&f).d_holo());
    assert_eq!(d_holo(&f).d_antiholo(), ddbar(&f).neg());
}

#[test]
fn levi_sign_is_fixed_per_dimension() {
    // the sign relation to the bordered Hessian does not depend on r
    for n in 2..=3 {
        let mut sign: Option<bool> = None;
        let mut r = rng(7 + n as u64);
        for _ in 0..20 {
            let rr = random_defining_function(&mut r, n, 4);
            let oracle = bordered_hessian_det(&rr).scale(&GaussianRational::from_int(factorial(n - 1)));
            let dets = levi_determinants(&rr, 1, &[]).unwrap();
            if let Some(d) = dets.first() {
                let same = *d == oracle;
                assert!(same || *d == -&oracle);
                assert_eq!(*sign.get_or_insert(same), same, "sign flips for n = {n}");
            }
        }
    }
}

#[test]
fn tuple_determinant_of_degenerate_model() {
    let r = kohn_core::parse_expression("2*Re(z2) + abs2(z1)^2", 2).unwrap();
    let dets = levi_determinants(&r, 1, &[Poly::z(2, 1)]).unwrap();
    // hand expansion: dz1 ^ (2 z1^2 zbar1 dz1 + dz2) ^ (2 z1 zbar1^2 dzbar1 + dzbar2)
    let expected: Vec<Poly> =
        ["2*z1^2*zbar1", "1"].iter().map(|s| kohn_core::parse_expression(s, 2).unwrap()).collect();
    let mut got = dets.clone();
    got.sort_by_key(|p| p.to_string());
    let mut want = expected;
    want.sort_by_key(|p| p.to_string());
    assert_eq!(got, want);
}
