//! The brute-force oracles checked against closed forms and against the
//! library on inputs the acceptance suite does not use.

mod common;

use ckqw::free::build_reduction;
use ckqw::frt::{corrupt, qybe_check, rmatrix3, rtt_relations, FrtData};
use ckqw::pimenov::{pim_apply, Kernel};
use ckqw::{ParameterSignature, PimenovElement};
use common::{c, complex_rank, finite_difference_lift, qybe_residual, rtt_coefficients, Grassmann};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sig(s: &str) -> ParameterSignature {
    s.parse().unwrap()
}

#[test]
fn finite_differences_reproduce_a_closed_form() {
    // exp(a0 + a1 ι1 + a2 ι2 + a12 ι1ι2) = e^{a0} (1 + a1 ι1 + a2 ι2 + (a12 + a1 a2) ι1ι2)
    let a = PimenovElement::from_coeffs(2, &[c(0.3, 0.2), c(-0.7, 0.1), c(0.4, 0.5), c(1.1, -0.3)]).unwrap();
    let e = a.coeff(0).exp();
    let want = [e, e * a.coeff(1), e * a.coeff(2), e * (a.coeff(3) + a.coeff(1) * a.coeff(2))];
    let got = finite_difference_lift(&|z| z.exp(), &a, 4e-3);
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).norm() < 1e-8, "{g} vs {w}");
    }
}

#[test]
fn finite_differences_follow_the_lifted_power() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let coeffs: Vec<Complex64> = (0..16).map(|_| c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))).collect();
        let mut a = PimenovElement::from_coeffs(4, &coeffs).unwrap();
        a.set_coeff(0, c(rng.gen_range(1.0..2.0), 0.0));
        let got = pim_apply(&Kernel::Pow(0.5), &a).unwrap();
        let fd = finite_difference_lift(&|z| z.sqrt(), &a, 2e-2);
        for (s, o) in fd.iter().enumerate() {
            assert!((got.coeff(s) - o).norm() < 1e-5, "subset {s}: {} vs {o}", got.coeff(s));
        }
    }
}

#[test]
fn grassmann_oracle_on_three_tags() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let mut el = || {
            let coeffs: Vec<Complex64> = (0..8).map(|_| c(rng.gen_range(-4..=4) as f64, 0.0)).collect();
            PimenovElement::from_coeffs(3, &coeffs).unwrap()
        };
        let (a, b, d) = (el(), el(), el());
        let prod = &(&a * &b) * &d;
        let oracle = Grassmann::embed(&a).mul(&Grassmann::embed(&b)).mul(&Grassmann::embed(&d));
        assert_eq!(Grassmann::embed(&prod), oracle);
    }
}

#[test]
fn grassmann_generators_anticommute() {
    let g = |k: usize| {
        let mut c = vec![c(0.0, 0.0); 4];
        c[1 << k] = Complex64::new(1.0, 0.0);
        Grassmann { c }
    };
    let xy = g(0).mul(&g(1));
    let yx = g(1).mul(&g(0));
    assert_eq!(xy.c[3], c(1.0, 0.0));
    assert_eq!(yx.c[3], c(-1.0, 0.0));
    assert!(g(0).mul(&g(0)).c.iter().all(|z| z.norm() == 0.0));
}

#[test]
fn qybe_oracle_agrees_with_the_library() {
    for s in ParameterSignature::quantum3() {
        for v in [c(1.3, 0.0), c(-0.2, 0.8)] {
            let r = rmatrix3(&s, v).unwrap();
            assert!(qybe_residual(&r) < 1e-10);
            assert!(qybe_check(&r) < 1e-10);
            let bad = corrupt(&r);
            assert!(qybe_residual(&bad) > 1e-6);
            assert!(qybe_check(&bad) > 1e-6);
        }
    }
}

#[test]
fn rtt_rank_oracle_matches_the_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..4 {
        let v = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.0..1.0));
        let data = FrtData::new(&sig("1,1"), v).unwrap();
        let lib = build_reduction(&rtt_relations(&data.r, &data.t), 2).unwrap().scalar_heads(2);
        assert_eq!(lib, complex_rank(&rtt_coefficients(&data.r), 1e-10), "v = {v}");
    }
}

#[test]
fn rtt_rank_regression_values() {
    let rank = |v: Complex64| complex_rank(&rtt_coefficients(&rmatrix3(&sig("1,1"), v).unwrap()), 1e-10);
    assert_eq!(rank(c(0.0, 0.0)), 36);
    assert_eq!(rank(c(0.37, 0.0)), 46);
}
