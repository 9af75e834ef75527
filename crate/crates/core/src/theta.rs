//! The reduced theta block
//! `Θ(X) = (X^{1/2} - X^{-1/2}) Π_{n≥1} (1 - q^n X)(1 - q^n X^{-1})`
//! and its normalized derivative `Θ'(1) = Π_{n≥1} (1 - q^n)^2`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{Exponent, Lattice, LaurentPoly, NilTaylor, QSeries, Rational, Var};

/// Argument `e^{scale·u} t^{t_exp} y^{y_exp} w^{w_exp}` of a theta block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaArg {
    pub t_exp: Rational,
    pub y_exp: Rational,
    pub w_exp: Rational,
    pub nilpotent_scale: Option<Rational>,
}

impl ThetaArg {
    pub fn monomial(t_exp: Rational, y_exp: Rational, w_exp: Rational) -> Self {
        ThetaArg { t_exp, y_exp, w_exp, nilpotent_scale: None }
    }

    pub fn inverse(&self) -> Self {
        ThetaArg {
            t_exp: -self.t_exp.clone(),
            y_exp: -self.y_exp.clone(),
            w_exp: -self.w_exp.clone(),
            nilpotent_scale: self.nilpotent_scale.as_ref().map(|s| -s.clone()),
        }
    }

    /// Internal exponent of `X^{1/2}` for the monomial part.
    pub fn half_exponent(&self, lattice: &Lattice) -> Result<Exponent> {
        let two = Rational::from_integer(2.into());
        lattice.exponent(&(&self.t_exp / &two), &(&self.y_exp / &two), &(&self.w_exp / &two))
    }
}

/// `Θ` of the monomial `x^{2h}` where `h` is the internal exponent of the
/// square root.
pub fn theta_half_exponent(h: Exponent, order: usize) -> Result<QSeries> {
    if h.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut s = QSeries::constant(order, LaurentPoly::binomial(h));
    let x = LaurentPoly::monomial(h.scaled(2), Rational::one());
    let xinv = LaurentPoly::monomial(h.scaled(-2), Rational::one());
    for n in 1..=order {
        s.mul_one_minus_qn(n, &x);
        s.mul_one_minus_qn(n, &xinv);
    }
    Ok(s)
}

pub fn theta_monomial(arg: &ThetaArg, lattice: &Lattice, order: usize) -> Result<QSeries> {
    if arg.nilpotent_scale.is_some() {
        return Err(Error::Internal("theta_monomial takes a monomial argument".into()));
    }
    theta_half_exponent(arg.half_exponent(lattice)?, order)
}

/// `Π_{n≥1} (1 - q^n)^2`.
pub fn eta_sq(order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    for n in 1..=order {
        s.mul_one_minus_qn(n, &LaurentPoly::one());
        s.mul_one_minus_qn(n, &LaurentPoly::one());
    }
    s
}

fn exp_coeffs(c: &Rational, n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    for j in 1..=n {
        let prev = out[j - 1].clone();
        out.push(prev * c / Rational::from_integer(j.into()));
    }
    out
}

/// `Θ(e^{scale·u} Z)` with `Z^{1/2} = x^h`, as a Taylor polynomial in `u`
/// of degree `n`.
pub fn theta_nilpotent_half(h: Exponent, scale: &Rational, n: usize, order: usize) -> NilTaylor {
    let half = scale / Rational::from_integer(2.into());
    let e_half = exp_coeffs(&half, n);
    let e_full = exp_coeffs(scale, n);
    let zh = LaurentPoly::monomial(h, Rational::one());
    let zmh = LaurentPoly::monomial(-h, Rational::one());
    let mut coeffs: Vec<QSeries> = (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { -Rational::one() } else { Rational::one() };
            let c = &zh.scale(&e_half[j]) + &zmh.scale(&(&e_half[j] * &sign));
            QSeries::constant(order, c)
        })
        .collect();
    let z = LaurentPoly::monomial(h.scaled(2), Rational::one());
    let zinv = LaurentPoly::monomial(h.scaled(-2), Rational::one());
    let signed: Vec<Rational> = e_full
        .iter()
        .enumerate()
        .map(|(j, c)| if j % 2 == 0 { c.clone() } else { -c.clone() })
        .collect();
    for m in 1..=order {
        for (zz, ec) in [(&z, &e_full), (&zinv, &signed)] {
            // coeffs <- coeffs · (1 - q^m zz e^{±scale u})
            for j in (0..=n).rev() {
                for k in (m..=order).rev() {
                    let mut acc = LaurentPoly::zero();
                    for i in 0..=j {
                        if ec[i].is_zero() {
                            continue;
                        }
                        let src = coeffs[j - i].coeff(k - m);
                        if src.is_zero() {
                            continue;
                        }
                        acc += &src.scale(&ec[i]);
                    }
                    if acc.is_zero() {
                        continue;
                    }
                    let t = &acc * zz;
                    let mut cur = coeffs[j].coeff(k).clone();
                    cur -= &t;
                    coeffs[j].set_coeff(k, cur);
                }
            }
        }
    }
    NilTaylor::from_coeffs(coeffs)
}

pub fn theta_nilpotent(
    y_exp: &Rational,
    w_exp: &Rational,
    scale: &Rational,
    n: usize,
    lattice: &Lattice,
    order: usize,
) -> Result<NilTaylor> {
    let h = ThetaArg::monomial(Rational::zero(), y_exp.clone(), w_exp.clone()).half_exponent(lattice)?;
    Ok(theta_nilpotent_half(h, scale, n, order))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationReport {
    pub order: usize,
    /// `Θ(X^{-1}) = -Θ(X)`.
    pub inversion: bool,
    /// `Θ(qX) = -q^{-1/2} X^{-1} Θ(X)`.
    pub shift: bool,
}

impl TranslationReport {
    pub fn holds(&self) -> bool {
        self.inversion && self.shift
    }
}

/// Largest `d` with `d(d+1)/2 <= k`.
fn tri_root(k: usize) -> usize {
    let mut d = 0;
    while (d + 1) * (d + 2) / 2 <= k {
        d += 1;
    }
    d
}

/// `q^{1/2} X Θ(qX)` to order `N`, where `X^{1/2} = x^h`.
pub(crate) fn shifted_theta(h: Exponent, order: usize) -> Result<QSeries> {
    // A term q^k X^{e} of Θ has e >= -(d + 1/2) with d(d+1)/2 <= k. After
    // X -> qX and multiplication by q^{1/2} X it sits at q-degree >= k - d.
    let mut internal = order;
    while (internal + 1) - tri_root(internal + 1) <= order {
        internal += 1;
    }
    // Generic Θ in a formal variable whose exponent counts halves of X.
    let generic = theta_half_exponent(Exponent::single(Var::S, 1), internal)?;
    let mut lhs: BTreeMap<(usize, i64), Rational> = BTreeMap::new();
    for (k, c) in generic.coeffs().iter().enumerate() {
        for (e, v) in c.terms() {
            let half = e.get(Var::S);
            // q^k X^{half/2} -> q^{k + half/2 + 1/2} X^{half/2 + 1}
            let qdeg = 2 * k as i64 + half + 1;
            debug_assert!(qdeg.is_even());
            let qdeg = qdeg / 2;
            if qdeg < 0 {
                return Err(Error::Internal("negative q-degree after shift".into()));
            }
            if qdeg as usize <= order {
                *lhs.entry((qdeg as usize, half + 2)).or_insert_with(Rational::zero) += v;
            }
        }
    }
    let mut shifted = QSeries::zero(order);
    for ((k, half), v) in lhs {
        let mut c = shifted.coeff(k).clone();
        c.add_term(h.scaled(half), v);
        shifted.set_coeff(k, c);
    }
    Ok(shifted)
}

/// Verifies both translation laws to order `N`. The shift law is checked by
/// substituting `X -> qX` into a generic expansion of `Θ` computed to a
/// higher order, so that the re-indexed terms up to `q^N` are complete.
pub fn check_translation(arg: &ThetaArg, lattice: &Lattice, order: usize) -> Result<TranslationReport> {
    let h = arg.half_exponent(lattice)?;
    let theta = theta_half_exponent(h, order)?;
    let inverse = theta_half_exponent(-h, order)?;
    let inversion = inverse == -&theta;

    let shifted = shifted_theta(h, order)?;
    let shift = (&shifted + &theta).is_zero();
    Ok(TranslationReport { order, inversion, shift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};
    use proptest::prelude::*;

    fn lat() -> Lattice {
        Lattice { y_root: 2, w_root: 2 }
    }

    fn s(e: i64) -> LaurentPoly {
        LaurentPoly::monomial(Exponent::single(Var::S, e), int(1))
    }

    #[test]
    fn q0_of_y_inverse() {
        let arg = ThetaArg::monomial(int(0), int(-1), int(0));
        let th = theta_monomial(&arg, &lat(), 0).unwrap();
        assert_eq!(th.render(&lat()), "(y^{-1/2} - y^{1/2}) + O(q^1)");
    }

    #[test]
    fn theta_of_t_to_first_order() {
        let arg = ThetaArg::monomial(int(1), int(0), int(0));
        let th = theta_monomial(&arg, &lat(), 1).unwrap();
        assert_eq!(th.coeff(0), &(&s(1) - &s(-1)));
        // -(t^{1/2} - t^{-1/2})(t + t^{-1})
        let q1 = LaurentPoly::from_terms([
            (Exponent::single(Var::S, 3), int(-1)),
            (Exponent::single(Var::S, 1), int(1)),
            (Exponent::single(Var::S, -1), int(-1)),
            (Exponent::single(Var::S, -3), int(1)),
        ]);
        assert_eq!(th.coeff(1), &q1);
    }

    #[test]
    fn zero_argument() {
        let arg = ThetaArg::monomial(int(0), int(0), int(0));
        assert!(matches!(theta_monomial(&arg, &lat(), 3), Err(Error::ZeroArgument)));
    }

    #[test]
    fn inverse_argument_is_negative() {
        let a = ThetaArg::monomial(int(1), int(-1), int(0));
        let l = lat();
        assert_eq!(theta_monomial(&a.inverse(), &l, 8).unwrap(), -&theta_monomial(&a, &l, 8).unwrap());
    }

    #[test]
    fn eta_sq_low_orders() {
        let e = eta_sq(3);
        let expect = QSeries::from_rationals(3, &[int(1), int(-2), int(-1), int(2)]);
        assert_eq!(e, expect);
    }

    #[test]
    fn nilpotent_expansions() {
        let n0 = theta_nilpotent(&int(0), &int(0), &int(1), 3, &lat(), 0).unwrap();
        let got: Vec<Rational> = (0..=3).map(|j| n0.coeff(j).coeff(0).constant_term()).collect();
        assert_eq!(got, vec![int(0), int(1), int(0), rat(1, 24)]);

        // q^1 part: -(2 sinh(3u/2) - 2 sinh(u/2)).
        let n1 = theta_nilpotent(&int(0), &int(0), &int(1), 3, &lat(), 1).unwrap();
        let got: Vec<Rational> = (0..=3).map(|j| n1.coeff(j).coeff(1).constant_term()).collect();
        assert_eq!(got, vec![int(0), int(-2), int(0), rat(-13, 12)]);
        assert!((0..=3).all(|j| n1.coeff(j).coeff(1).len() <= 1));
    }

    #[test]
    fn nilpotent_degree_zero_matches_monomial() {
        let l = lat();
        let n = theta_nilpotent(&int(-1), &int(0), &int(0), 0, &l, 5).unwrap();
        let m = theta_monomial(&ThetaArg::monomial(int(0), int(-1), int(0)), &l, 5).unwrap();
        assert_eq!(n.coeff(0), &m);
        let n = theta_nilpotent(&rat(3, 2), &int(0), &int(2), 2, &Lattice { y_root: 4, w_root: 2 }, 4)
            .unwrap();
        let m = theta_monomial(
            &ThetaArg::monomial(int(0), rat(3, 2), int(0)),
            &Lattice { y_root: 4, w_root: 2 },
            4,
        )
        .unwrap();
        assert_eq!(n.coeff(0), &m);
    }

    #[test]
    fn derivative_is_eta_sq() {
        for order in [0, 3, 7] {
            let n = theta_nilpotent(&int(0), &int(0), &int(1), 1, &lat(), order).unwrap();
            assert_eq!(n.coeff(1), &eta_sq(order));
        }
    }

    #[test]
    fn translation_examples() {
        let l = lat();
        let r = check_translation(&ThetaArg::monomial(int(1), int(0), int(0)), &l, 10).unwrap();
        assert!(r.holds(), "{r:?}");
        let r = check_translation(&ThetaArg::monomial(int(2), int(-1), int(0)), &l, 8).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn shift_law_needs_the_sign() {
        let h = Exponent::single(Var::S, 1);
        let th = theta_half_exponent(h, 6).unwrap();
        let sh = shifted_theta(h, 6).unwrap();
        assert!((&sh + &th).is_zero());
        assert!(!(&sh - &th).is_zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn oddness_and_shift(te in -3i64..=3, yn in -4i64..=4, yd in 1i64..=2, wn in -2i64..=2) {
            prop_assume!(te != 0 || yn != 0 || wn != 0);
            let l = Lattice { y_root: 4, w_root: 2 };
            let arg = ThetaArg::monomial(int(te), rat(yn, yd), int(wn));
            let th = theta_monomial(&arg, &l, 10).unwrap();
            prop_assert_eq!(theta_monomial(&arg.inverse(), &l, 10).unwrap(), -&th);
            let r = check_translation(&arg, &l, 6).unwrap();
            prop_assert!(r.holds());
        }
    }
}
