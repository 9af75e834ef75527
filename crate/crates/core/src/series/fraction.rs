use std::collections::BTreeMap;

use num_traits::One;

use super::{LaurentPoly, QSeries, RatFunc1, Rational, Var};
use crate::error::{Error, Result};
use crate::par;

/// Quotient `num / den` of q-series in a single Laurent variable, where the
/// `q^0` coefficient of `den` is a monomial times a product of binomials
/// `x^m - 1`.
#[derive(Clone, Debug)]
pub struct SeriesFraction {
    var: Var,
    num: QSeries,
    den: QSeries,
    den0_const: Rational,
    den0_shift: i64,
    cyclo: BTreeMap<usize, u32>,
}

impl SeriesFraction {
    /// `binomials` lists the `m` of each factor `x^m - 1` of the `q^0`
    /// coefficient of `den`; the remaining cofactor must be a monomial.
    pub fn new(num: QSeries, den: QSeries, var: Var, binomials: &[usize]) -> Result<Self> {
        if num.order() != den.order() {
            return Err(Error::OrderMismatch { left: num.order(), right: den.order() });
        }
        let mut q0 = LaurentPoly::one();
        let mut cyclo = BTreeMap::new();
        for &m in binomials {
            if m == 0 {
                return Err(Error::NonInvertible("factor x^0 - 1".into()));
            }
            let b = &LaurentPoly::monomial(super::Exponent::single(var, m as i64), Rational::one())
                - &LaurentPoly::one();
            q0 = &q0 * &b;
            for d in (1..=m).filter(|d| m % d == 0) {
                *cyclo.entry(d).or_insert(0) += 1;
            }
        }
        let rest = den
            .coeff(0)
            .exact_div(&q0)
            .ok_or_else(|| Error::Internal("denominator factorization mismatch".into()))?;
        let (e, c) = rest
            .as_monomial()
            .ok_or_else(|| Error::Internal("denominator cofactor is not a monomial".into()))?;
        Ok(SeriesFraction {
            var,
            den0_const: c.clone(),
            den0_shift: e.get(var),
            num,
            den,
            cyclo,
        })
    }

    pub fn order(&self) -> usize {
        self.num.order()
    }

    pub fn numerator(&self) -> &QSeries {
        &self.num
    }

    pub fn denominator(&self) -> &QSeries {
        &self.den
    }

    /// Numerators `M_k` with `(num/den)_k = M_k / den_0^{k+1}`.
    pub fn scaled_numerators(&self) -> Vec<LaurentPoly> {
        scaled_numerators(&self.num, &self.den)
    }

    /// Canonical rational function at every q-order.
    pub fn to_ratfuncs(&self) -> Result<Vec<RatFunc1>> {
        let m = self.scaled_numerators();
        par::try_map(&(0..m.len()).collect::<Vec<_>>(), |&k| self.reduce_numerator(k, &m[k]))
    }

    /// `poly / den_0^{k+1}` in canonical form; `poly` must be univariate.
    pub fn reduce_numerator(&self, k: usize, poly: &LaurentPoly) -> Result<RatFunc1> {
        let p = (k + 1) as u32;
        let cyc: BTreeMap<usize, u32> = self.cyclo.iter().map(|(&d, &e)| (d, e * p)).collect();
        RatFunc1::from_cyclotomic_den(
            poly,
            self.var,
            &num_traits::pow(self.den0_const.clone(), k + 1),
            self.den0_shift * (k as i64 + 1),
            &cyc,
        )
    }
}

/// Numerators `M_k` with `(num/den)_k = M_k / den_0^{k+1}`, from
/// `M_k = N_k D_0^k - Σ_{l=1}^{k} D_l M_{k-l} D_0^{l-1}`.
pub fn scaled_numerators(num: &QSeries, den: &QSeries) -> Vec<LaurentPoly> {
    let n = num.order();
    let d0 = den.coeff(0);
    let mut d0_pow = vec![LaurentPoly::one()];
    for k in 1..=n {
        d0_pow.push(&d0_pow[k - 1] * d0);
    }
    let mut m: Vec<LaurentPoly> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = num.coeff(k) * &d0_pow[k];
        for l in 1..=k {
            let dl = den.coeff(l);
            if dl.is_zero() || m[k - l].is_zero() {
                continue;
            }
            let t = &(dl * &m[k - l]) * &d0_pow[l - 1];
            acc -= &t;
        }
        m.push(acc);
    }
    m
}
