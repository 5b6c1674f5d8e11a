use ctb_burgers::Error;
use ctb_burgers::exact::{
    bessel_i, bessel_i_ratio, bessel_i_ratios, sine_wave_exact, traveling_wave_exact, SeriesControl,
    TravelingWave,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Ascending series for I_n(2 * half) in exact rational arithmetic.
fn bessel_series_exact(n: u32, half: BigRational, terms: u32) -> f64 {
    let q = &half * &half;
    let mut lead = BigRational::one();
    for k in 1..=n {
        lead = lead * &half / BigRational::from_integer(BigInt::from(k));
    }
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    for k in 0..terms {
        if k > 0 {
            let denom = BigInt::from(k) * BigInt::from(k + n);
            term = term * &q / BigRational::from_integer(denom);
        }
        sum += &term;
    }
    (lead * sum).to_f64().unwrap()
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[test]
fn bessel_matches_exact_rational_series() {
    let v = bessel_i(3, 2.0).unwrap();
    let oracle = bessel_series_exact(3, ratio(1, 1), 40);
    assert!((v - oracle).abs() <= 1e-15 * oracle, "{v} vs {oracle}");

    // z/2 given as an exact fraction
    let cases: [(i64, i64); 8] = [(1, 4), (1, 1), (5, 2), (13, 2), (10, 1), (15, 1), (25, 1), (50, 1)];
    for (num, den) in cases {
        let z = 2.0 * num as f64 / den as f64;
        let terms = 60 + 3 * (z as u32);
        for n in [0, 1, 3, 10, 25] {
            let oracle = bessel_series_exact(n, ratio(num, den), terms);
            let v = bessel_i(n, z).unwrap();
            assert!((v - oracle).abs() <= 1e-12 * oracle, "I_{n}({z}) = {v} vs {oracle}");
        }
    }
}

#[test]
fn bessel_three_term_recurrence() {
    for k in 0..60 {
        let z = 0.5 + 29.5 * k as f64 / 59.0;
        for j in 1..=20u32 {
            let lhs = bessel_i(j - 1, z).unwrap() - bessel_i(j + 1, z).unwrap();
            let rhs = 2.0 * j as f64 / z * bessel_i(j, z).unwrap();
            assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs(), "z {z} j {j}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn ratios_agree_with_direct_values() {
    for k in 1..=30 {
        let z = k as f64;
        let i0 = bessel_i(0, z).unwrap();
        let ratios = bessel_i_ratios(20, z).unwrap();
        for (j, r) in ratios.iter().enumerate() {
            let direct = bessel_i(j as u32, z).unwrap();
            assert!((r * i0 - direct).abs() <= 1e-11 * direct, "z {z} j {j}");
        }
    }
    // far beyond the f64 range of I_0 itself
    let r = bessel_i_ratio(1, 1e4).unwrap();
    assert!((r - (1.0 - 0.5 / 1e4)).abs() < 1e-7);
}

#[test]
fn traveling_wave_satisfies_burgers() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let lambda = 0.1;
    let u = |x: f64, t: f64| traveling_wave_exact(x, t, 0.4, 0.6, 0.125, lambda);
    for _ in 0..50 {
        let x: f64 = rng.gen_range(0.0..1.0);
        let t: f64 = rng.gen_range(0.01..1.0);
        let e = 1e-5;
        let ut = (u(x, t + e) - u(x, t - e)) / (2.0 * e);
        let ux = (u(x + e, t) - u(x - e, t)) / (2.0 * e);
        let uxx = (u(x + e, t) - 2.0 * u(x, t) + u(x - e, t)) / (e * e);
        let residual = ut + u(x, t) * ux - lambda * uxx;
        assert!(residual.abs() < 1e-5, "x {x} t {t}: {residual}");
    }
}

#[test]
fn traveling_wave_reference_value() {
    let w = TravelingWave::new(0.4, 0.6, 0.125, 0.01).unwrap();
    assert!((w.value(8.0 / 18.0, 0.5) - 0.452).abs() < 5e-4);
}

#[test]
fn sine_series_reference_values() {
    let ctl = SeriesControl::default();
    let v = sine_wave_exact(0.5, 0.4, 1.0, ctl).unwrap();
    assert!((v - 0.01924).abs() < 1e-5, "{v}");
    let v = sine_wave_exact(0.75, 3.0, 0.01, ctl).unwrap();
    assert!((v - 0.22481).abs() < 1e-5, "{v}");
}

#[test]
fn sine_series_truncation_is_stable() {
    let ctl = SeriesControl::default();
    let doubled = SeriesControl::new(ctl.abs_tol, 2 * ctl.max_terms).unwrap();
    let tighter = SeriesControl::new(1e-15, 2000).unwrap();
    let mut refused = 0;
    for lambda in [1.0, 0.1, 0.01] {
        for t in [0.1, 0.4, 1.0, 3.0] {
            for x in [0.1, 0.25, 0.5, 0.75, 0.9] {
                let a = match sine_wave_exact(x, t, lambda, ctl) {
                    Ok(v) => v,
                    Err(Error::IllConditioned { .. }) => {
                        refused += 1;
                        continue;
                    }
                    Err(e) => panic!("{e}"),
                };
                let b = sine_wave_exact(x, t, lambda, doubled).unwrap();
                assert!((a - b).abs() < ctl.abs_tol, "x {x} t {t} lambda {lambda}");
                let c = sine_wave_exact(x, t, lambda, tighter).unwrap();
                assert!((a - c).abs() < 1e-6, "x {x} t {t} lambda {lambda}: {a} vs {c}");
            }
        }
    }
    // only the steep early profiles at the smallest viscosity are refused
    assert!(refused > 0 && refused <= 4, "{refused}");
}

#[test]
fn sine_series_refuses_cancelled_denominators() {
    let ctl = SeriesControl::default();
    for x in [0.25, 0.5, 0.75] {
        assert!(matches!(
            sine_wave_exact(x, 0.4, 0.001, ctl),
            Err(Error::IllConditioned { .. })
        ));
    }
}

#[test]
fn sine_series_small_time_approaches_initial_profile() {
    let ctl = SeriesControl::new(1e-14, 2000).unwrap();
    for x in [0.2, 0.5, 0.8] {
        let v = sine_wave_exact(x, 1e-4, 0.1, ctl).unwrap();
        assert!((v - (std::f64::consts::PI * x).sin()).abs() < 1e-3);
    }
}
