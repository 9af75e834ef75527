use super::*;
use proptest::prelude::*;

fn q(order: usize, c: &[i64]) -> QSeries {
    QSeries::from_rationals(order, &c.iter().map(|&x| int(x)).collect::<Vec<_>>())
}

fn mono(v: Var, e: i64) -> LaurentPoly {
    LaurentPoly::monomial(Exponent::single(v, e), int(1))
}

#[test]
fn telescoping_product() {
    let a = q(4, &[1, -1]);
    let b = q(4, &[1, 1]);
    assert_eq!(QSeries::mul_q(&a, &b).unwrap(), q(4, &[1, 0, -1]));
}

#[test]
fn truncated_geometric_times_one_minus_q() {
    let a = q(4, &[1, 1, 1, 1, 1]);
    let b = q(4, &[1, -1]);
    assert_eq!(QSeries::mul_q(&a, &b).unwrap(), QSeries::one(4));
}

#[test]
fn order_mismatch_is_error() {
    let err = QSeries::mul_q(&q(2, &[1]), &q(3, &[1])).unwrap_err();
    assert!(matches!(err, Error::OrderMismatch { left: 2, right: 3 }));
}

#[test]
fn inverse_examples() {
    assert_eq!(q(3, &[1, -1]).inv_q().unwrap(), q(3, &[1, 1, 1, 1]));
    let y2 = QSeries::constant(0, mono(Var::Y, 2));
    assert_eq!(y2.inv_q().unwrap(), QSeries::constant(0, mono(Var::Y, -2)));
    // ∏_{n≤3}(1-q^n)^2 expanded by hand: 1 - 2q - q^2 + 2q^3.
    let p = q(3, &[1, -2, -1, 2]);
    assert_eq!(p.inv_q().unwrap(), q(3, &[1, 2, 5, 10]));
}

#[test]
fn inverse_rejects_binomial_leading_term() {
    let a = QSeries::constant(2, &mono(Var::Y, 1) - &mono(Var::Y, -1));
    assert!(matches!(a.inv_q(), Err(Error::NonInvertible(_))));
}

#[test]
fn exact_division() {
    let a = &mono(Var::Y, 1) - &mono(Var::S, 1);
    let b = &mono(Var::Y, 2) + &mono(Var::W, -1);
    let p = &a * &b;
    assert_eq!(p.exact_div(&a), Some(b.clone()));
    assert_eq!(p.exact_div(&b), Some(a.clone()));
    assert_eq!((&p + &LaurentPoly::one()).exact_div(&a), None);
}

#[test]
fn rendering() {
    let lat = Lattice { y_root: 2, w_root: 2 };
    let p = LaurentPoly::from_terms([
        (Exponent([0, -1, 0]), int(1)),
        (Exponent([0, 3, 0]), rat(-3, 2)),
        (Exponent([1, 0, 0]), int(2)),
    ]);
    assert_eq!(p.render(&lat), "y^{-1/2} - 3/2*y^{3/2} + 2*t^{1/2}");
    let s = QSeries::from_coeffs(2, [LaurentPoly::one(), LaurentPoly::zero(), p]);
    assert_eq!(
        s.render(&lat),
        "(1) + (y^{-1/2} - 3/2*y^{3/2} + 2*t^{1/2})*q^2 + O(q^3)"
    );
    assert_eq!(QSeries::zero(1).render(&lat), "0 + O(q^2)");
}

#[test]
fn lattice_rejects_off_lattice_exponent() {
    let lat = Lattice { y_root: 2, w_root: 2 };
    assert!(lat.exponent(&rat(1, 2), &rat(1, 2), &int(0)).is_ok());
    assert!(matches!(
        lat.exponent(&rat(1, 4), &int(0), &int(0)),
        Err(Error::OffLattice { .. })
    ));
    assert!(lat.exponent(&int(0), &rat(1, 3), &int(0)).is_err());
}

#[test]
fn nil_taylor_inverse() {
    // (1 + u)^{-1} = 1 - u + u^2 - u^3
    let one = QSeries::one(1);
    let a = NilTaylor::from_coeffs(vec![one.clone(), one.clone(), QSeries::zero(1), QSeries::zero(1)]);
    let inv = a.inverse().unwrap();
    let expect: Vec<QSeries> = [1, -1, 1, -1].iter().map(|&c| one.scale(&int(c))).collect();
    assert_eq!(inv.coeffs(), &expect[..]);
    let prod = a.mul(&inv);
    assert_eq!(prod, NilTaylor::constant(3, one));
}

#[test]
fn parse_rationals() {
    assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
    assert_eq!(parse_rational(" 7 "), Some(int(7)));
    assert_eq!(parse_rational("1/0"), None);
    assert_eq!(parse_rational("x"), None);
}

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-2i64..=2, -3i64..=3, -1i64..=1), -5i64..=5, 1i64..=3), 0..4).prop_map(
        |ts| {
            LaurentPoly::from_terms(
                ts.into_iter().map(|((a, b, c), n, d)| (Exponent([a, b, c]), rat(n, d))),
            )
        },
    )
}

fn arb_series(order: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(arb_poly(), order + 1).prop_map(move |c| QSeries::from_coeffs(order, c))
}

fn arb_unit_series(order: usize) -> impl Strategy<Value = QSeries> {
    (
        (-2i64..=2, -3i64..=3, -1i64..=1),
        prop_oneof![-4i64..=-1, 1i64..=4],
        1i64..=3,
        prop::collection::vec(arb_poly(), order),
    )
        .prop_map(move |((a, b, c), n, d, rest)| {
            let lead = LaurentPoly::monomial(Exponent([a, b, c]), rat(n, d));
            QSeries::from_coeffs(order, std::iter::once(lead).chain(rest))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in arb_series(3), b in arb_series(3), c in arb_series(3)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &QSeries::one(3), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_is_two_sided(a in arb_unit_series(4)) {
        let inv = a.inv_q().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert!((&inv * &a).is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn interpolation_reproduces_laurent(
        lo in -4i64..=1,
        width in 1usize..=7,
        coeffs in prop::collection::vec((-9i64..=9, 1i64..=4), 7),
        ycoef in prop::collection::vec(-3i64..=3, 7),
    ) {
        let window = Window::new(lo, lo + width as i64 - 1);
        // Coefficients mix a rational scalar with a ŷ-monomial so that the
        // per-monomial reconstruction path is exercised.
        let mut target = LaurentPoly::zero();
        for (i, ((n, d), ye)) in coeffs.iter().zip(&ycoef).take(width).enumerate() {
            target.add_term(Exponent([lo + i as i64, *ye, 0]), rat(*n, *d));
        }
        let primes = [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];
        let samples: Vec<(Rational, QSeries)> = primes[..width + 3]
            .iter()
            .map(|&p| (int(p), QSeries::constant(1, target.eval_var(Var::S, &int(p)))))
            .collect();
        let got = interpolate_laurent(&samples, Var::S, window, 3).unwrap();
        prop_assert_eq!(got.coeff(0), &target);
        prop_assert!(got.coeff(1).is_zero());
    }
}
