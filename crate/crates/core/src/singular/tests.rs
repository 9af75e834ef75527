use super::*;
use crate::fans;
use crate::series::rat;

fn pair(fan: &Fan, a: &[i64]) -> PairCoefficients {
    PairCoefficients::from_ints(fan, a).unwrap()
}

fn b(v: &[i64]) -> PerturbationSpec {
    PerturbationSpec::from_ints(v)
}

/// Blow-up of `(P², (-1/2, -3/2, 0))` at the corner of rays 0 and 1; the
/// exceptional curve gets coefficient −1.
fn exceptional_pair() -> (Fan, PairCoefficients, PairCoefficients, Fan) {
    let f = fans::p2();
    let p = PairCoefficients::new(&f, vec![rat(-1, 2), rat(-3, 2), int(0)]).unwrap();
    let (g, q, s) = star_subdivide(&f, &p, &[1, 1]).unwrap();
    assert_eq!(s.a_new, int(-1));
    (g, q, p, f)
}

#[test]
fn degenerate_perturbation_is_rejected() {
    let f = fans::p1xp1();
    let p = pair(&f, &[-1, -1, -1, -1]);
    let err = perturbed_ell(&f, &p, &b(&[1, -1, 0, 0]), 2).unwrap_err();
    assert_eq!(err, Error::DegeneratePerturbation { ray: 2 });
}

#[test]
fn calabi_yau_perturbation_vanishes_in_w() {
    let f = fans::p2();
    let p = pair(&f, &[-1, -1, -1]);
    let pg = perturbed_ell(&f, &p, &b(&[1, 1, -2]), 3).unwrap();
    assert!(pg.is_zero());
    assert_eq!(limit_eps(&pg).unwrap(), LimitOutcome::Regular(GenusResult::zero(2, 3)));
}

#[test]
fn zero_perturbation_is_identity() {
    let f = fans::p2();
    let p = pair(&f, &[0, 0, 0]);
    let pg = perturbed_ell(&f, &p, &PerturbationSpec::zero(3), 3).unwrap();
    assert!(pg.is_w_independent());
    assert_eq!(pg.vanishing_rays(), 0);
    assert_eq!(limit_eps(&pg).unwrap().value(), Some(&ell_pair(&f, &p, 3).unwrap()));
}

#[test]
fn regular_limit_matches_direct_genus() {
    let f = fans::p2();
    let p = PairCoefficients::new(&f, vec![rat(1, 2), int(0), rat(-1, 3)]).unwrap();
    let pg = perturbed_ell(&f, &p, &b(&[1, 2, 3]), 2).unwrap();
    assert!(!pg.is_w_independent());
    assert_eq!(limit_eps(&pg).unwrap().value(), Some(&ell_pair(&f, &p, 2).unwrap()));
}

#[test]
fn negative_case_has_simple_pole() {
    let f = fans::p1xp1();
    let p = pair(&f, &[-1, -1, 0, 0]);
    let bb = b(&[1, 1, 0, 0]);
    assert!(validate_perturbation(&f, &p, &bb).unwrap());
    let pg = perturbed_ell(&f, &p, &bb, 2).unwrap();
    assert!(!pg.is_w_independent());
    let LimitOutcome::Pole(report) = limit_eps(&pg).unwrap() else { panic!("expected a pole") };
    assert_eq!(report.orders[0], 1);
    assert!(!report.exceeds_simple);
    assert_eq!(report.render_term(0, 1), "-2*y^{-1} + 2*y");
    let a = expand_eps(&pg).unwrap().leading_terms();
    assert_eq!(leading_terms_by_reconstruction(&pg, 3).unwrap(), a);
}

#[test]
fn invalid_perturbation() {
    let f = fans::p2();
    let p = pair(&f, &[-1, -1, -1]);
    assert_eq!(perturbation_violations(&f, &p, &b(&[1, 0, 0])).unwrap(), vec![0, 1, 2]);
    let err = check_perturbation_independence(&f, &p, &b(&[1, 0, 0]), &b(&[1, 1, -2]), 2).unwrap_err();
    assert_eq!(err, Error::InvalidPerturbation { ray: 0 });
}

#[test]
fn full_boundary_independence() {
    let f = fans::p1xp1();
    let p = pair(&f, &[-1, -1, -1, -1]);
    let r = check_perturbation_independence(&f, &p, &b(&[1, -1, 1, -1]), &b(&[2, -2, -1, 1]), 3).unwrap();
    assert!(r.equal);
    assert_eq!(r.first.value().unwrap(), &GenusResult::zero(2, 3));
}

#[test]
fn exceptional_curve_limit_recovers_base_genus() {
    let (g, q, p, f) = exceptional_pair();
    let base = ell_pair(&f, &p, 2).unwrap();
    let e = g.num_rays() - 1;
    let b1 = b(&[1, 0, 0, 1]);
    let b2 = b(&[2, -3, 5, -1]);
    for bb in [&b1, &b2] {
        assert!(validate_perturbation(&g, &q, bb).unwrap());
        assert_eq!(bb.b[e], &bb.b[0] + &bb.b[1]);
    }
    let r = check_perturbation_independence(&g, &q, &b1, &b2, 2).unwrap();
    assert!(r.equal);
    assert_eq!(r.first.value(), Some(&base));
    let pg = perturbed_ell(&g, &q, &b2, 2).unwrap();
    let lead = leading_terms_by_reconstruction(&pg, 3).unwrap();
    assert_eq!(lead, expand_eps(&pg).unwrap().leading_terms());
    assert!(lead.terms.iter().all(|(p, _)| *p == 0));
}

#[test]
fn pullback_preserves_validity_and_limit() {
    let f = fans::p1xp1();
    let p = pair(&f, &[-1, -1, -1, -1]);
    let bb = b(&[1, -1, 1, -1]);
    let (g, q, c) = pullback(&f, &p, &bb, &[1, 1]).unwrap();
    assert_eq!(q.a()[4], int(-1));
    assert_eq!(c.b[4], int(2));
    assert!(validate_perturbation(&g, &q, &c).unwrap());
    let before = limit_eps(&perturbed_ell(&f, &p, &bb, 2).unwrap()).unwrap();
    let after = limit_eps(&perturbed_ell(&g, &q, &c, 2).unwrap()).unwrap();
    assert_eq!(before, after);
}

#[test]
fn pullback_of_pole_case_keeps_principal_part() {
    let f = fans::p2();
    let p = pair(&f, &[-1, 0, 0]);
    let bb = b(&[2, -1, -1]);
    let (g, q, c) = pullback(&f, &p, &bb, &[-1, 0]).unwrap();
    assert_eq!(c.b[3], int(-2));
    assert!(validate_perturbation(&g, &q, &c).unwrap());
    let before = expand_eps(&perturbed_ell(&f, &p, &bb, 1).unwrap()).unwrap();
    let after = expand_eps(&perturbed_ell(&g, &q, &c, 1).unwrap()).unwrap();
    assert!(matches!(before.outcome(), LimitOutcome::Pole(_)));
    assert_eq!(before.leading_terms(), after.leading_terms());
}

#[test]
fn singular_weighted_projective_plane() {
    let s = ell_singular_toric(&fans::p112(), 3).unwrap();
    assert!(s.consistent);
    assert!(s.resolution.pair.a().iter().all(|a| a > &int(-1)));
    assert_eq!(s.resolution.chain.len(), 1);
    assert_eq!(s.resolution.chain[0].a_new, int(0));
}
