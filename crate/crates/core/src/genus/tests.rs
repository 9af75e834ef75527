use super::*;
use crate::fans;
use crate::series::rat;
use crate::toric::OneParamSubgroup;

fn y(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(Exponent::single(Var::Y, e), int(1))
}

#[test]
fn p1_q0_is_hodge_polynomial() {
    let f = fans::p1();
    let g = ell_pair(&f, &PairCoefficients::zero(&f), 3).unwrap();
    assert_eq!(g.y_root(), 2);
    assert_eq!(g.coeff(0).as_laurent(Var::Y).unwrap(), &y(-1) + &y(1));
    assert_eq!(g.render_coeff(0), "y^{-1/2} + y^{1/2}");
}

#[test]
fn p2_q0_is_hodge_polynomial() {
    let f = fans::p2();
    let g = ell_pair(&f, &PairCoefficients::zero(&f), 2).unwrap();
    assert_eq!(g.y_root(), 1);
    assert_eq!(g.coeff(0).as_laurent(Var::Y).unwrap(), &(&y(-1) + &y(0)) + &y(1));
}

#[test]
fn log_canonical_is_rejected() {
    let f = fans::p1();
    let p = PairCoefficients::from_ints(&f, &[-1, -1]).unwrap();
    assert!(matches!(ell_pair(&f, &p, 2), Err(Error::LogCanonicalCoefficient { ray: 0 })));
}

#[test]
fn rational_output_for_fractional_pair() {
    // α = (2, 1): q^0 = (y^{-1} + 1 + y) / (y^{-1/2} + y^{1/2}).
    let f = fans::p1();
    let p = PairCoefficients::from_ints(&f, &[1, 0]).unwrap();
    let g = ell_pair(&f, &p, 1).unwrap();
    let expect = RatFunc1::from_fraction(
        &(&(&y(-2) + &y(0)) + &y(2)),
        &(&y(-1) + &y(1)),
        Var::Y,
    )
    .unwrap();
    assert_eq!(g.y_root(), 2);
    assert_eq!(g.coeff(0), &expect);
}

#[test]
fn cancellation_below_top_degree() {
    for (name, f) in fans::acceptance_fans() {
        for d in generic_subgroups(&f, 2).unwrap() {
            let s = localization_cancellation(&f, &PairCoefficients::zero(&f), &d, 3).unwrap();
            assert!(s.iter().all(|x| x.is_zero()), "{name}");
        }
    }
}

#[test]
fn equivariant_p1_is_constant_at_q0() {
    let f = fans::p1();
    let xi = OneParamSubgroup::new(vec![1]).unwrap();
    let e = ell_pair_equivariant(&f, &PairCoefficients::zero(&f), &xi, 3, 3).unwrap();
    assert_eq!(e.t_support()[0], vec![int(0)]);
    let g = ell_pair(&f, &PairCoefficients::zero(&f), 3).unwrap();
    assert_eq!(e.at_t_one(), &g);
}

#[test]
fn equivariant_cy_on_p1_vanishes() {
    let f = fans::p1();
    let p = PairCoefficients::from_ints(&f, &[1, -3]).unwrap();
    let xi = OneParamSubgroup::new(vec![1]).unwrap();
    let e = ell_pair_equivariant(&f, &p, &xi, 4, 3).unwrap();
    assert!(e.is_zero());
    assert!(ell_pair(&f, &p, 4).unwrap().is_zero());
}

#[test]
fn dual_pipeline_on_p2_with_pair() {
    let f = fans::p2();
    let p = PairCoefficients::new(&f, vec![rat(1, 2), int(-3), int(0)]).unwrap();
    let xi = OneParamSubgroup::new(vec![1, 2]).unwrap();
    let e = ell_pair_equivariant(&f, &p, &xi, 3, 3).unwrap();
    assert_eq!(e.at_t_one(), &ell_pair(&f, &p, 3).unwrap());
}

#[test]
fn specializations() {
    let f = fans::p2();
    let g = ell_pair(&f, &PairCoefficients::zero(&f), 1).unwrap();
    assert_eq!(specialize(&g, SpecializationKind::ChiY).unwrap(), Specialization::ChiY(vec![int(1); 3]));
    assert_eq!(specialize(&g, SpecializationKind::Euler).unwrap(), Specialization::Number(int(3)));
    assert_eq!(specialize(&g, SpecializationKind::Todd).unwrap(), Specialization::Number(int(1)));
    let f = fans::p1xp1();
    let g = ell_pair(&f, &PairCoefficients::zero(&f), 1).unwrap();
    assert_eq!(
        specialize(&g, SpecializationKind::ChiY).unwrap(),
        Specialization::ChiY(vec![int(1), int(2), int(1)])
    );
}

#[test]
fn blowups() {
    let f = fans::p1xp1();
    let p = PairCoefficients::from_ints(&f, &[1, 0, 2, 0]).unwrap();
    let r = verify_blowup_invariance(&f, &p, &[0, 2], &[0, 2], 3).unwrap();
    assert_eq!(r.m, int(4));
    assert!(r.equal);
    let f = fans::p2();
    let r = verify_blowup_invariance(&f, &PairCoefficients::zero(&f), &[0, 1], &[0, 1], 3).unwrap();
    assert_eq!(r.m, int(1));
    assert!(r.equal);
}

#[test]
fn vanishing_reports() {
    let f = fans::p2();
    let p = PairCoefficients::from_alpha(&f, vec![int(1), int(1), int(-2)]).unwrap();
    let r = check_vanishing_cy(&f, &p, 3, 3).unwrap();
    assert!(r.calabi_yau && r.genus_zero && r.equivariant_zero == Some(true) && r.holds);
    let p = PairCoefficients::zero(&f);
    let r = check_vanishing_cy(&f, &p, 2, 3).unwrap();
    assert!(!r.calabi_yau && !r.genus_zero && r.holds);
    assert_eq!(r.witness.as_ref().map(|w| w.0), Some(0));
}
