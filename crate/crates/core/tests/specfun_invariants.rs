use std::f64::consts::PI;

use proptest::prelude::*;
use psphere::specfun::{branch_sqrt, digamma, gamma, gauss_2f1, gauss_2f1_second, ln_gamma, rgamma};
use psphere::Complex;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// The log solution as a numerical limit of two ordinary ones, with
/// central differences at delta and 2 delta and one Richardson step.
fn second_by_limit(a: Complex, b: Complex, k: usize, x: f64) -> Complex {
    let kf = k as f64;
    let bracket = |d: f64| -> Complex {
        if k == 0 {
            let g = |t: f64| x.powf(t / 2.0) * gauss_2f1(a + t / 2.0, b + t / 2.0, c(1.0 + t, 0.0), x).unwrap();
            return (g(d) - g(-d)) / d;
        }
        let big_a = gamma(a).unwrap() * gamma(b).unwrap() * rgamma(a - kf) * rgamma(b - kf);
        let at = |t: f64| {
            let mu = (kf + t) / 2.0;
            let t1 = x.powf(-mu) * gauss_2f1(a - kf - t / 2.0, b - kf - t / 2.0, c(1.0 - kf - t, 0.0), x).unwrap();
            let t2 = big_a * gamma(c(1.0 - kf - t, 0.0)).unwrap() * rgamma(c(1.0 + kf + t, 0.0))
                * x.powf(mu)
                * gauss_2f1(a + t / 2.0, b + t / 2.0, c(1.0 + kf + t, 0.0), x).unwrap();
            t1 - t2
        };
        (at(d) + at(-d)) / 2.0
    };
    let (h1, h2) = (bracket(1e-4), bracket(2e-4));
    let limit = (4.0 * h1 - h2) / 3.0;
    limit * x.powf(-kf / 2.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_reflection(z in -9.9f64..9.9) {
        prop_assume!((z - z.round()).abs() > 1e-3);
        let prod = ln_gamma(c(z, 0.0)).unwrap().exp() * ln_gamma(c(1.0 - z, 0.0)).unwrap().exp();
        let want = PI / (PI * z).sin();
        prop_assert!((prod.re - want).abs() <= 1e-11 * want.abs(), "{} vs {}", prod, want);
    }

    #[test]
    fn digamma_recurrence(re in -20.0f64..20.0, im in -20.0f64..20.0) {
        let z = c(re, im);
        prop_assume!(z.norm() > 1e-3 && (im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3));
        let r = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - 1.0 / z;
        let scale = digamma(z).unwrap().norm().max(1.0);
        prop_assert!(r.norm() <= 1e-12 * scale, "residual {}", r);
    }

    #[test]
    fn contiguity(
        ar in -3.0f64..3.0, ai in -2.0f64..2.0,
        br in -3.0f64..3.0, bi in -2.0f64..2.0,
        cr in 0.3f64..4.0, x in 0.0f64..0.98,
    ) {
        let (a, b, cc) = (c(ar, ai), c(br, bi), c(cr, 0.0));
        let f = gauss_2f1(a, b, cc, x).unwrap();
        let g = gauss_2f1(a - 1.0, b, cc, x).unwrap();
        let h = gauss_2f1(a, b + 1.0, cc + 1.0, x).unwrap();
        let parts = [cc * f, -cc * g, -b * x * h];
        let res: Complex = parts.iter().sum();
        let scale = parts.iter().map(|p| p.norm()).fold(0.0, f64::max);
        prop_assert!(res.norm() <= 1e-9 * scale.max(1e-300), "residual {} scale {}", res, scale);
    }

    #[test]
    fn branch_sqrt_has_nonnegative_real_part(re in -50.0f64..50.0, im in -50.0f64..50.0) {
        let s = branch_sqrt(c(re, im));
        prop_assert!(s.re >= 0.0);
        prop_assert!((s * s - c(re, im)).norm() <= 1e-13 * c(re, im).norm().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn second_solution_matches_numerical_limit(
        k in 0usize..4, ar in 0.6f64..3.0, ai in -1.0f64..1.0,
        br in 0.6f64..3.0, bi in -1.0f64..1.0, x in 0.05f64..0.95,
    ) {
        let (a, b) = (c(ar + k as f64, ai), c(br + k as f64, bi));
        let got = gauss_2f1_second(a, b, k, x).unwrap();
        let want = second_by_limit(a, b, k, x);
        prop_assert!((got - want).norm() <= 1e-7 * want.norm(), "k={} got {} want {}", k, got, want);
    }
}

#[test]
fn second_solution_at_degenerate_point_is_logarithmic() {
    // a = b = 3/2, k = 0: the log term dominates as x -> 0
    let a = c(1.5, 0.0);
    for &x in &[1e-6, 1e-9, 1e-12] {
        let v = gauss_2f1_second(a, a, 0, x).unwrap();
        assert!((v.re / x.ln() - 1.0).abs() < 0.2 / x.ln().abs(), "x={x} v={v}");
    }
    let want = second_by_limit(a, a, 0, 0.3);
    let got = gauss_2f1_second(a, a, 0, 0.3).unwrap();
    assert!((got - want).norm() < 1e-8 * want.norm());
}

#[test]
fn gamma_of_one_plus_i() {
    let g = gamma(c(1.0, 1.0)).unwrap();
    assert!((g - c(0.498_015_668_118_356, -0.154_949_828_301_811)).norm() < 1e-13);
}

#[test]
fn hypergeometric_rejects_unit_argument() {
    assert!(gauss_2f1(c(0.5, 0.0), c(0.5, 0.0), c(1.0, 0.0), 1.0).is_err());
    assert!(gauss_2f1_second(c(0.5, 0.0), c(0.5, 0.0), 0, 0.0).is_err());
}
