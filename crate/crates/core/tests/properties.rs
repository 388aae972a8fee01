//! Randomized cross-module invariants. Exact constructions are checked with
//! exact equality; float paths get relative tolerances.

use std::f64::consts::PI;

use proptest::prelude::*;

use huffman_core::correlate::{
    acorr_aperiodic, acorr_periodic, is_canonical, metrics, peak_closed_form, shifted_product,
};
use huffman_core::families::{build_fib, build_fib_cyclic, build_int, build_three};
use huffman_core::fibpoly::fib_poly;
use huffman_core::spectral::{dft, dft_closed_cyclic, idft, power_spectrum_closed};
use huffman_core::{HuffmanSequence, Numeric, Scale};

fn rational_scale() -> impl Strategy<Value = Scale> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| Scale::from_ratio(p, q))
}

/// Smaller numerators keep the exact auto-correlation grids fast.
fn small_scale() -> impl Strategy<Value = Scale> {
    (-6i64..=6, 1i64..=3).prop_map(|(p, q)| Scale::from_ratio(p, q))
}

fn fib_length() -> impl Strategy<Value = usize> {
    (1usize..=7).prop_map(|k| 4 * k + 3)
}

fn int_sequence(values: &[i64]) -> HuffmanSequence {
    HuffmanSequence::from_raw(values.iter().map(|&v| Numeric::from_i64(v)).collect(), None)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recursion_holds_exactly(n in -58i64..=58, s in rational_scale()) {
        let lhs = fib_poly(n + 2, &s);
        let rhs = &(&s.to_numeric() * &fib_poly(n + 1, &s)) + &fib_poly(n, &s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_holds_exactly(n in 0i64..=60, s in rational_scale()) {
        let sign = if n % 2 == 0 { -1 } else { 1 };
        let want = &Numeric::from_i64(sign) * &fib_poly(n, &s);
        prop_assert_eq!(fib_poly(-n, &s), want);
    }

    #[test]
    fn fib_family_is_exactly_delta(n in fib_length(), s in small_scale()) {
        let seq = build_fib(n, &s).unwrap();
        let profile = acorr_aperiodic(&seq);
        let report = is_canonical(&profile, 0.0).unwrap();
        prop_assert!(report.is_canonical);
        prop_assert!(report.max_interior_abs.is_zero());
        prop_assert_eq!(report.end_value, Numeric::from_i64(-1));
        prop_assert_eq!(profile.peak(), &peak_closed_form(n, &s).unwrap());
    }

    #[test]
    fn fib_family_skew_symmetry(n in fib_length(), s in small_scale()) {
        let seq = build_fib(n, &s).unwrap();
        let e = &seq.elements;
        let mid = (n + 1) / 2;
        // e_{N+1-i} = (-1)^i e_i in 1-based indexing, middle excepted.
        for i in 1..=n {
            if i == mid {
                continue;
            }
            let want = if i % 2 == 0 { e[i - 1].clone() } else { -&e[i - 1] };
            prop_assert_eq!(&e[n - i], &want);
        }
    }

    #[test]
    fn interior_square_of_sum(n in fib_length(), s in small_scale()) {
        let seq = build_fib(n, &s).unwrap();
        let interior = &seq.elements[1..n - 1];
        let sum: Numeric = interior.iter().sum();
        let sum_of_squares: Numeric = interior.iter().map(|e| e * e).sum();
        prop_assert_eq!(&sum * &sum, sum_of_squares);
    }

    #[test]
    fn element_sum_closed_form(n in fib_length(), s in small_scale()) {
        let seq = build_fib(n, &s).unwrap();
        let m = ((n - 3) / 2) as i64;
        let total: Numeric = seq.elements.iter().sum();
        prop_assert_eq!(&total, &(&fib_poly(m + 2, &s) + &fib_poly(m, &s)));
        let peak = acorr_aperiodic(&seq).peak().clone();
        prop_assert_eq!(&total * &total, &peak - &Numeric::from_i64(2));
    }

    #[test]
    fn cyclic_is_a_half_length_rotation(n in fib_length(), s in small_scale()) {
        let lin = build_fib(n, &s).unwrap();
        let cyc = build_fib_cyclic(n, &s).unwrap();
        let r = (n - 1) / 2;
        prop_assert_eq!(cyc.rotation_offset, r);
        for i in 0..n {
            prop_assert_eq!(&cyc.elements[i], &lin.elements[(i + r) % n]);
        }
    }

    #[test]
    fn canonical_metric_relations(n in fib_length(), s in small_scale()) {
        let seq = build_fib(n, &s).unwrap();
        let peak = acorr_aperiodic(&seq).peak().clone();
        let m = metrics(&seq).unwrap();
        // End values are the only off-peak mass, so the merit factor is
        // peak^2 / 2 and the peak ratio is the peak itself.
        prop_assert_eq!(m.merit_factor.unwrap(), &peak.powi(2) / &Numeric::from_i64(2));
        prop_assert_eq!(m.peak_ratio.unwrap(), peak);
    }

    #[test]
    fn shifted_products_sum_to_the_profile(values in proptest::collection::vec(-9i64..=9, 2..=14)) {
        let seq = int_sequence(&values);
        let profile = acorr_aperiodic(&seq);
        let n = values.len() as i64;
        for d in -(n - 1)..=(n - 1) {
            let total: Numeric = shifted_product(&seq, d).unwrap().iter().sum();
            prop_assert_eq!(&total, profile.value(d).unwrap());
        }
        prop_assert!(shifted_product(&seq, n).is_err());
        prop_assert!(shifted_product(&seq, -n).is_err());
    }

    #[test]
    fn periodic_wraps_aperiodic(values in proptest::collection::vec(-9i64..=9, 2..=14)) {
        let seq = int_sequence(&values);
        let ap = acorr_aperiodic(&seq);
        let pe = acorr_periodic(&seq);
        let n = values.len() as i64;
        for d in 0..n {
            let mut want = ap.value(d).unwrap().clone();
            if d > 0 {
                want = &want + ap.value(d - n).unwrap();
            }
            prop_assert_eq!(pe.value(d).unwrap(), &want);
        }
    }

    #[test]
    fn transform_round_trip(values in proptest::collection::vec(-5.0f64..5.0, 1..=24)) {
        let seq = HuffmanSequence::from_raw(
            values.iter().map(|&v| Numeric::from_f64(v)).collect(),
            None,
        );
        let back = idft(&dft(&seq));
        let scale = values.iter().fold(1.0f64, |a, v| a.max(v.abs()));
        for (z, &v) in back.iter().zip(values.iter()) {
            prop_assert!((z.re - v).abs() <= 1e-10 * scale);
            prop_assert!(z.im.abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn periodic_profile_transform_is_the_power_spectrum(n in fib_length(), s_num in -3i64..=3) {
        let s = Scale::from_int(s_num);
        let seq = build_fib_cyclic(n, &s).unwrap();
        let profile = acorr_periodic(&seq);
        let peak = profile.peak().approx();
        let tol = 1e-9 * peak.abs().max(1.0);
        let wrapped = HuffmanSequence::from_raw(profile.values.clone(), None);
        let bins = dft(&wrapped).bins;
        for (q, bin) in bins.iter().enumerate() {
            let want = peak - 2.0 * (2.0 * PI * q as f64 / n as f64).cos();
            prop_assert!((bin.re - want).abs() <= tol);
            prop_assert!(bin.im.abs() <= tol);
            prop_assert!((want - power_spectrum_closed(n, &s, q).unwrap()).abs() <= tol);
        }
    }

    #[test]
    fn cyclic_bins_match_the_closed_form(n in fib_length(), s_num in -3i64..=3) {
        let s = Scale::from_int(s_num);
        let seq = build_fib_cyclic(n, &s).unwrap();
        let bins = dft(&seq).bins;
        for (q, bin) in bins.iter().enumerate() {
            let closed_power = power_spectrum_closed(n, &s, q).unwrap();
            let tol = 1e-9 * closed_power.max(1.0);
            prop_assert!((bin.norm_sqr() - closed_power).abs() <= tol);
            let closed_bin = dft_closed_cyclic(n, &s, q).unwrap();
            prop_assert!((bin - closed_bin).norm() <= 1e-9 * closed_power.sqrt().max(1.0));
        }
    }

    #[test]
    fn integer_family_closed_profile(n in 3usize..=20, s_num in -5i64..=5) {
        prop_assume!(s_num != 0);
        let s = Scale::from_int(s_num);
        let seq = build_int(n, &s).unwrap();
        let profile = acorr_aperiodic(&seq);
        let sv = Numeric::from_i64(s_num);
        prop_assert_eq!(
            profile.peak(),
            &(&Numeric::one() + &sv.powi(2 * n as i32 - 2))
        );
        let end = -&sv.powi(n as i32 - 1);
        prop_assert_eq!(profile.value(n as i64 - 1).unwrap(), &end);
        prop_assert_eq!(profile.value(1 - n as i64).unwrap(), &end);
        let report = is_canonical(&profile, 0.0).unwrap();
        prop_assert!(report.is_canonical);
        prop_assert!(report.max_interior_abs.is_zero());
    }
}

#[test]
fn three_family_profiles_are_canonical() {
    for n in (5..=21).step_by(2) {
        let seq = build_three(n).unwrap();
        let profile = acorr_aperiodic(&seq);
        let report = is_canonical(&profile, 0.0).unwrap();
        assert!(report.is_canonical, "length {n}");
        assert_eq!(report.end_value, Numeric::from_i64(-1), "length {n}");
    }
}
