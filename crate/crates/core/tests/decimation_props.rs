use cyclofix::cosets::beta;
use cyclofix::decimation::{phi_rational, phi_rational_iterate, phi_series};
use cyclofix::exactnum::{root_of_unity, CycloNum};
use cyclofix::ratfunc::{expand_series, LaurentPrefix, Poly, RationalFunction};
use num_traits::ToPrimitive;
use proptest::prelude::*;

/// `x^k P/Q` with `Q(0) = 1`, small integer coefficients and an optional
/// root-of-unity scale.
fn rational() -> impl Strategy<Value = RationalFunction> {
    (
        prop::collection::vec(-4i64..=4, 1..=4),
        prop::collection::vec(-2i64..=2, 0..=3),
        -2i64..=2,
        prop::sample::select(vec![1u64, 3, 4]),
        0i64..4,
    )
        .prop_map(|(num, den_tail, k, r, e)| {
            let mut den = vec![1i64];
            den.extend(den_tail);
            RationalFunction::new(k, Poly::from_ints(&num), Poly::from_ints(&den))
                .unwrap()
                .scale(&root_of_unity(r, e))
        })
}

fn coeff(p: &LaurentPrefix, n: i64, m: u64) -> CycloNum {
    p.get(n).cloned().unwrap_or_else(|| CycloNum::zero(m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_path_matches_rational_path(r in rational(), s in 2i64..=3, t in -3i64..=8) {
        let n_max = 25;
        let m = r.conductor();
        let input = expand_series(&r, s * n_max + t);
        let decimated = phi_series(&input, s, t, n_max).unwrap();
        let image = phi_rational(&r, s, t).unwrap();
        let expanded = expand_series(&image, n_max);
        let lo = decimated.n_min.min(expanded.n_min).min(-5);
        for n in lo..=n_max {
            prop_assert_eq!(coeff(&decimated, n, m), coeff(&expanded, n, m), "n = {}", n);
        }
    }

    #[test]
    fn iterates_compose(r in rational(), s in 2i64..=3, t in 0i64..=3, k in 1u32..=4) {
        let iterated = phi_rational_iterate(&r, s, t, k).unwrap();
        let b = beta(s, t, k as u64).to_i64().unwrap();
        prop_assert_eq!(iterated, phi_rational(&r, s.pow(k), b).unwrap());
    }

    #[test]
    fn operator_is_linear(r1 in rational(), r2 in rational(), a in -3i64..=3, b in 1i64..=3, s in 2i64..=4, t in -2i64..=5) {
        let (a, b) = (CycloNum::from_int(a, 1), &root_of_unity(3, 1) * &CycloNum::from_int(b, 1));
        let combined = &r1.scale(&a) + &r2.scale(&b);
        let lhs = phi_rational(&combined, s, t).unwrap();
        let rhs = &phi_rational(&r1, s, t).unwrap().scale(&a) + &phi_rational(&r2, s, t).unwrap().scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn laurent_polynomials_stay_laurent(coeffs in prop::collection::vec(-5i64..=5, 1..=6), k in -4i64..=4, s in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3, 4]), t in -6i64..=6) {
        let r = RationalFunction::from_poly(Poly::from_ints(&coeffs)).shift(k);
        let image = phi_rational(&r, s, t).unwrap();
        prop_assert!(image.is_laurent_polynomial());
        // Coefficient of x^n in the image is a_{sn+t}.
        let a = |j: i64| {
            let i = j - k;
            if (0..coeffs.len() as i64).contains(&i) { coeffs[i as usize] } else { 0 }
        };
        let span = coeffs.len() as i64 + k.abs() + t.abs() + 2;
        let lowest = image.x_shift();
        for n in -span..=span {
            let got = if n >= lowest { image.num().coeff((n - lowest) as usize) } else { CycloNum::zero(1) };
            prop_assert_eq!(got, CycloNum::from_int(a(s * n + t), 1), "n = {}", n);
        }
    }
}

#[test]
fn rational_inputs_under_negative_stride_are_rejected() {
    let r = RationalFunction::simple_pole(&CycloNum::one(1));
    assert!(phi_rational(&r, -2, 1).is_err());
}
