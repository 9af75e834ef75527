//! Dense univariate q-series with integer coefficients over one common
//! denominator. Used for the many products at fixed sample points, where
//! normalizing every rational coefficient would dominate the cost.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Exponent, LaurentPoly, QSeries, Rational, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Row {
    lo: i64,
    c: Vec<BigInt>,
}

impl Row {
    fn zero() -> Self {
        Row { lo: 0, c: Vec::new() }
    }

    fn mul_add(&mut self, a: &Row, b: &Row) {
        if a.c.is_empty() || b.c.is_empty() {
            return;
        }
        let lo = a.lo + b.lo;
        let hi = lo + (a.c.len() + b.c.len() - 2) as i64;
        self.widen(lo, hi);
        let off = (lo - self.lo) as usize;
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                self.c[off + i + j] += x * y;
            }
        }
    }

    fn widen(&mut self, lo: i64, hi: i64) {
        if self.c.is_empty() {
            self.lo = lo;
            self.c = vec![BigInt::zero(); (hi - lo + 1) as usize];
            return;
        }
        let cur_hi = self.lo + self.c.len() as i64 - 1;
        if lo < self.lo {
            let mut v = vec![BigInt::zero(); (self.lo - lo) as usize];
            v.append(&mut self.c);
            self.c = v;
            self.lo = lo;
        }
        if hi > cur_hi {
            self.c.resize(self.c.len() + (hi - cur_hi) as usize, BigInt::zero());
        }
    }

    fn scaled_add(&mut self, o: &Row, k: &BigInt) {
        if o.c.is_empty() {
            return;
        }
        self.widen(o.lo, o.lo + o.c.len() as i64 - 1);
        let off = (o.lo - self.lo) as usize;
        for (i, x) in o.c.iter().enumerate() {
            self.c[off + i] += x * k;
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct DenseSeries {
    rows: Vec<Row>,
    den: BigInt,
}

impl DenseSeries {
    pub fn zero(order: usize) -> Self {
        DenseSeries { rows: vec![Row::zero(); order + 1], den: BigInt::one() }
    }

    /// Requires every coefficient to involve `var` only.
    pub fn from_qseries(s: &QSeries, var: Var) -> Result<Self> {
        let mut den = BigInt::one();
        for c in s.coeffs() {
            for (_, v) in c.terms() {
                den = den.lcm(v.denom());
            }
        }
        let mut rows = Vec::with_capacity(s.order() + 1);
        for c in s.coeffs() {
            let (Some(lo), Some(hi)) = (c.min_exponent(var), c.max_exponent(var)) else {
                rows.push(Row::zero());
                continue;
            };
            let mut row = vec![BigInt::zero(); (hi - lo + 1) as usize];
            for (e, v) in c.terms() {
                if e.with(var, 0) != Exponent::ZERO {
                    return Err(Error::Internal("dense series must be univariate".into()));
                }
                row[(e.get(var) - lo) as usize] = v.numer() * (&den / v.denom());
            }
            rows.push(Row { lo, c: row });
        }
        Ok(DenseSeries { rows, den })
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn mul(&self, o: &DenseSeries) -> DenseSeries {
        let n = self.order();
        let mut rows = vec![Row::zero(); n + 1];
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in o.rows[..=n - i].iter().enumerate() {
                rows[i + j].mul_add(a, b);
            }
        }
        DenseSeries { rows, den: &self.den * &o.den }
    }

    pub fn add_assign(&mut self, o: &DenseSeries) {
        let l = self.den.lcm(&o.den);
        let ks = &l / &self.den;
        if !ks.is_one() {
            for r in &mut self.rows {
                for x in &mut r.c {
                    *x *= &ks;
                }
            }
        }
        let ko = &l / &o.den;
        for (r, s) in self.rows.iter_mut().zip(&o.rows) {
            r.scaled_add(s, &ko);
        }
        self.den = l;
    }

    pub fn to_qseries(&self, var: Var) -> QSeries {
        QSeries::from_coeffs(
            self.order(),
            self.rows.iter().map(|r| {
                LaurentPoly::from_terms(r.c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| {
                    (Exponent::single(var, r.lo + i as i64), Rational::new(x.clone(), self.den.clone()))
                }))
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};

    fn sample(order: usize, seed: i64) -> QSeries {
        QSeries::from_coeffs(
            order,
            (0..=order as i64).map(|k| {
                LaurentPoly::from_terms(
                    (-2..=2).map(|e| (Exponent::single(Var::Y, e + k), rat((e + 3) * seed - k, 1 + (e + k).abs()))),
                )
            }),
        )
    }

    #[test]
    fn agrees_with_sparse_arithmetic() {
        let a = sample(4, 3);
        let b = sample(4, -5);
        let da = DenseSeries::from_qseries(&a, Var::Y).unwrap();
        let db = DenseSeries::from_qseries(&b, Var::Y).unwrap();
        assert_eq!(da.mul(&db).to_qseries(Var::Y), &a * &b);
        let mut s = da.clone();
        s.add_assign(&db);
        assert_eq!(s.to_qseries(Var::Y), &a + &b);
        let mut z = DenseSeries::zero(4);
        z.add_assign(&da);
        assert_eq!(z.to_qseries(Var::Y), a);
        assert_eq!(DenseSeries::from_qseries(&QSeries::zero(2), Var::Y).unwrap().to_qseries(Var::Y), QSeries::zero(2));
        let _ = int(0);
    }
}
