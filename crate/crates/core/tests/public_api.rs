use toric_elliptic::fans;
use toric_elliptic::genus::{
    check_vanishing_cy, ell_pair, ell_pair_equivariant, specialize, verify_blowup_invariance, Specialization,
    SpecializationKind,
};
use toric_elliptic::series::Rational;
use toric_elliptic::singular::{ell_singular_toric, limit_eps, perturbed_ell, LimitOutcome, PerturbationSpec};
use toric_elliptic::toric::{low_weight_subgroup, PairCoefficients};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

#[test]
fn pipelines_agree_on_hirzebruch_pair() {
    let fan = fans::f2();
    let pair = PairCoefficients::from_ints(&fan, &[1, 0, -2, 2]).unwrap();
    let direct = ell_pair(&fan, &pair, 3).unwrap();
    let xi = low_weight_subgroup(&fan).unwrap().xi;
    let eq = ell_pair_equivariant(&fan, &pair, &xi, 3, 3).unwrap();
    assert_eq!(eq.at_t_one(), &direct);
}

#[test]
fn chi_y_of_p1xp1() {
    let g = ell_pair(&fans::p1xp1(), &PairCoefficients::zero(&fans::p1xp1()), 0).unwrap();
    assert_eq!(specialize(&g, SpecializationKind::ChiY).unwrap(), Specialization::ChiY(ints(&[1, 2, 1])));
}

#[test]
fn calabi_yau_pair_vanishes() {
    let fan = fans::p2();
    let pair = PairCoefficients::from_ints(&fan, &[0, 0, -3]).unwrap();
    let r = check_vanishing_cy(&fan, &pair, 3, 3).unwrap();
    assert!(r.calabi_yau && r.genus_zero);
    assert_eq!(r.equivariant_zero, Some(true));
}

#[test]
fn blowup_of_p2() {
    let fan = fans::p2();
    let r = verify_blowup_invariance(&fan, &PairCoefficients::zero(&fan), &[0, 1], &[0, 1], 3).unwrap();
    assert!(r.equal);
    assert_eq!(r.m, Rational::from_integer(1.into()));
}

#[test]
fn weighted_projective_plane() {
    let s = ell_singular_toric(&fans::p112(), 3).unwrap();
    assert!(s.consistent);
}

#[test]
fn full_boundary_limit_is_zero() {
    let fan = fans::p2();
    let pair = PairCoefficients::from_ints(&fan, &[-1, -1, -1]).unwrap();
    let pg = perturbed_ell(&fan, &pair, &PerturbationSpec::from_ints(&[1, 1, -2]), 2).unwrap();
    match limit_eps(&pg).unwrap() {
        LimitOutcome::Regular(g) => assert!(g.is_zero()),
        LimitOutcome::Pole(p) => panic!("unexpected pole: {:?}", p.orders),
    }
}
