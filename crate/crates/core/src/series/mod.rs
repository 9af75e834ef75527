//! Exact arithmetic on truncated q-series with Laurent-polynomial coefficients.
//!
//! All exponents live on an integer lattice of internal variables:
//! `s` with `s^2 = t`, `ŷ` with `ŷ^{y_root} = y`, and `ŵ` with `ŵ^{w_root} = w`.
//! A [`Lattice`] records the roots so that results can be printed against the
//! user-facing variables with rational exponents.

mod dense;
mod fraction;
mod interpolate;
mod poly1;

pub use fraction::{scaled_numerators, SeriesFraction};
pub use interpolate::{interpolate_laurent, interpolate_laurent_by_order, Window};
pub use poly1::{Poly1, RatFunc1};
pub(crate) use dense::DenseSeries;
pub(crate) use poly1::laurent_to_poly1;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

pub(crate) fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> i64 {
    values.into_iter().fold(1i64, |acc, v| {
        let d = v.denom().to_i64().expect("denominator fits in i64");
        acc.lcm(&d)
    })
}

/// Integer power of a rational, negative exponents allowed for nonzero bases.
pub fn rational_pow(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Internal variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    S = 0,
    Y = 1,
    W = 2,
}

/// Exponent vector over `(s, ŷ, ŵ)`, ordered lexicographically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub [i64; 3]);

impl Exponent {
    pub const ZERO: Exponent = Exponent([0, 0, 0]);

    pub fn single(var: Var, e: i64) -> Self {
        let mut v = [0; 3];
        v[var as usize] = e;
        Exponent(v)
    }

    pub fn get(&self, var: Var) -> i64 {
        self.0[var as usize]
    }

    pub fn with(mut self, var: Var, e: i64) -> Self {
        self.0[var as usize] = e;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn scaled(&self, k: i64) -> Self {
        Exponent([self.0[0] * k, self.0[1] * k, self.0[2] * k])
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, o: Exponent) -> Exponent {
        Exponent([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, o: Exponent) -> Exponent {
        Exponent([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        self.scaled(-1)
    }
}

/// Finite sum of rational multiples of monomials `s^a ŷ^b ŵ^c`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Exponent::ZERO, c)
    }

    pub fn monomial(e: Exponent, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// `x^{e} - x^{-e}` for a monomial exponent `e`.
    pub fn binomial(e: Exponent) -> Self {
        let mut p = Self::monomial(e, Rational::one());
        p.add_term(-e, -Rational::one());
        p
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&Exponent::ZERO).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The single `(exponent, coefficient)` pair, if this is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(Exponent, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn shift(&self, by: Exponent) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (*e + by, v.clone())).collect(),
        }
    }

    pub fn mul_term(&self, e: Exponent, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(x, v)| (*x + e, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Whether only the given variables occur.
    pub fn uses_only(&self, vars: &[Var]) -> bool {
        self.terms.keys().all(|e| {
            [Var::S, Var::Y, Var::W]
                .iter()
                .all(|v| vars.contains(v) || e.get(*v) == 0)
        })
    }

    /// Substitutes a nonzero rational value for one variable.
    pub fn eval_var(&self, var: Var, value: &Rational) -> Self {
        let mut out = Self::zero();
        let mut powers: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e.get(var);
            let p = powers
                .entry(k)
                .or_insert_with(|| rational_pow(value, k))
                .clone();
            out.add_term(e.with(var, 0), c * p);
        }
        out
    }

    /// Substitutes 1 for one variable.
    pub fn eval_var_one(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(e.with(var, 0), c.clone());
        }
        out
    }

    /// Evaluates a polynomial in which every variable has been fixed.
    pub fn eval_all(&self, values: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in values.iter().enumerate() {
                if e.0[i] != 0 {
                    t *= rational_pow(v, e.0[i]);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Exponent::ZERO)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (&dlead_e, dlead_c) = d.terms.last_key_value()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((e, c)) = d.as_monomial() {
            return Some(self.mul_term(-e, &c.recip()));
        }
        // The quotient's support lies in the coordinatewise box
        // [min(P) - min(D), max(P) - max(D)].
        let bounds = |p: &LaurentPoly| {
            let mut lo = [i64::MAX; 3];
            let mut hi = [i64::MIN; 3];
            for e in p.terms.keys() {
                for i in 0..3 {
                    lo[i] = lo[i].min(e.0[i]);
                    hi[i] = hi[i].max(e.0[i]);
                }
            }
            (lo, hi)
        };
        let (plo, phi) = bounds(self);
        let (dlo, dhi) = bounds(d);
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some((&e, c)) = r.terms.last_key_value() {
            let qe = e - dlead_e;
            if (0..3).any(|i| qe.0[i] < plo[i] - dlo[i] || qe.0[i] > phi[i] - dhi[i]) {
                return None;
            }
            let qc = c / dlead_c;
            for (de, dc) in &d.terms {
                r.add_term(*de + qe, -(dc * &qc));
            }
            q.add_term(qe, qc);
        }
        Some(q)
    }

    pub fn min_exponent(&self, var: Var) -> Option<i64> {
        self.terms.keys().map(|e| e.get(var)).min()
    }

    pub fn max_exponent(&self, var: Var) -> Option<i64> {
        self.terms.keys().map(|e| e.get(var)).max()
    }

    pub fn render(&self, lattice: &Lattice) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mono = lattice.render_monomial(e);
            let neg = c.is_negative();
            let abs = c.abs();
            let body = match (mono.is_empty(), abs.is_one()) {
                (true, _) => abs.to_string(),
                (false, true) => mono,
                (false, false) => format!("{}*{}", abs, mono),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, o: &LaurentPoly) {
        for (e, c) in &o.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, o: &LaurentPoly) {
        for (e, c) in &o.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        if let Some((e, c)) = o.as_monomial() {
            return self.mul_term(e, c);
        }
        if let Some((e, c)) = self.as_monomial() {
            return o.mul_term(e, c);
        }
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(*e1 + *e2, c1 * c2);
            }
        }
        out
    }
}

/// Exponent roots of the internal variables: `s^2 = t`, `ŷ^{y_root} = y`,
/// `ŵ^{w_root} = w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub y_root: i64,
    pub w_root: i64,
}

impl Default for Lattice {
    fn default() -> Self {
        Lattice { y_root: 2, w_root: 2 }
    }
}

impl Lattice {
    /// Lattice fitting `y`-exponents `alpha_i / 2` and `w`-exponents `b_i / 2`.
    pub fn for_coefficients<'a>(
        alphas: impl IntoIterator<Item = &'a Rational>,
        perturbation: impl IntoIterator<Item = &'a Rational>,
    ) -> Self {
        Lattice {
            y_root: 2 * lcm_denominators(alphas),
            w_root: 2 * lcm_denominators(perturbation),
        }
    }

    fn scaled(value: &Rational, root: i64) -> Result<i64> {
        let v = value * int(root);
        if !v.is_integer() {
            return Err(Error::OffLattice { value: value.to_string(), root });
        }
        v.to_integer()
            .to_i64()
            .ok_or_else(|| Error::Internal("exponent overflow".into()))
    }

    /// Internal exponent of the monomial `t^{t} y^{y} w^{w}`.
    pub fn exponent(&self, t: &Rational, y: &Rational, w: &Rational) -> Result<Exponent> {
        Ok(Exponent([
            Self::scaled(t, 2)?,
            Self::scaled(y, self.y_root)?,
            Self::scaled(w, self.w_root)?,
        ]))
    }

    /// User-facing rational exponents of `t`, `y`, `w`.
    pub fn user_exponents(&self, e: &Exponent) -> [Rational; 3] {
        [rat(e.0[0], 2), rat(e.0[1], self.y_root), rat(e.0[2], self.w_root)]
    }

    pub fn render_monomial(&self, e: &Exponent) -> String {
        let names = ["t", "y", "w"];
        let parts: Vec<String> = self
            .user_exponents(e)
            .iter()
            .zip(names)
            .filter(|(x, _)| !x.is_zero())
            .map(|(x, n)| if x.is_one() { n.to_string() } else { format!("{}^{{{}}}", n, x) })
            .collect();
        parts.join("*")
    }
}

/// Truncated power series `Σ_{k ≤ order} c_k q^k` with Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<LaurentPoly>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![LaurentPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, LaurentPoly::one())
    }

    pub fn constant(order: usize, c: LaurentPoly) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from its first coefficients, padding with zeros.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = LaurentPoly>) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    /// Series in `q` with rational coefficients.
    pub fn from_rationals(order: usize, coeffs: &[Rational]) -> Self {
        Self::from_coeffs(order, coeffs.iter().map(|c| LaurentPoly::constant(c.clone())))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &LaurentPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: LaurentPoly) {
        self.coeffs[k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Cauchy product; both operands must share the truncation order.
    pub fn mul_q(a: &QSeries, b: &QSeries) -> Result<QSeries> {
        if a.order() != b.order() {
            return Err(Error::OrderMismatch { left: a.order(), right: b.order() });
        }
        Ok(a * b)
    }

    /// Inverse of a series whose `q^0` coefficient is a single monomial.
    pub fn inv_q(&self) -> Result<QSeries> {
        let (e, c) = self.coeffs[0]
            .as_monomial()
            .ok_or_else(|| Error::NonInvertible(self.coeffs[0].render(&Lattice::default())))?;
        let lead_inv = LaurentPoly::monomial(-e, c.recip());
        let n = self.order();
        let mut out = QSeries::zero(n);
        out.coeffs[0] = lead_inv.clone();
        for k in 1..=n {
            let mut acc = LaurentPoly::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() || out.coeffs[k - j].is_zero() {
                    continue;
                }
                acc += &(&self.coeffs[j] * &out.coeffs[k - j]);
            }
            out.coeffs[k] = -&(&acc * &lead_inv);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|c| c * p).collect() }
    }

    /// In-place multiplication by `(1 - q^n z)` for a Laurent polynomial `z`.
    pub fn mul_one_minus_qn(&mut self, n: usize, z: &LaurentPoly) {
        if n > self.order() {
            return;
        }
        for k in (n..=self.order()).rev() {
            if self.coeffs[k - n].is_zero() {
                continue;
            }
            let t = &self.coeffs[k - n] * z;
            self.coeffs[k] -= &t;
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = QSeries::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        QSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn eval_var(&self, var: Var, value: &Rational) -> Self {
        self.map_coeffs(|c| c.eval_var(var, value))
    }

    pub fn eval_var_one(&self, var: Var) -> Self {
        self.map_coeffs(|c| c.eval_var_one(var))
    }

    pub fn render(&self, lattice: &Lattice) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = c.render(lattice);
            parts.push(match k {
                0 => format!("({})", body),
                1 => format!("({})*q", body),
                _ => format!("({})*q^{}", body, k),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        format!("{} + O(q^{})", parts.join(" + "), self.order() + 1)
    }
}

impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        assert_eq!(self.order(), o.order(), "series order mismatch");
        QSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        assert_eq!(self.order(), o.order(), "series order mismatch");
        QSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl AddAssign<&QSeries> for QSeries {
    fn add_assign(&mut self, o: &QSeries) {
        assert_eq!(self.order(), o.order(), "series order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b;
        }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Truncated Cauchy product. Panics on order mismatch; use
/// [`QSeries::mul_q`] for a checked product.
impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        assert_eq!(self.order(), o.order(), "series order mismatch");
        let n = self.order();
        let mut out = QSeries::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                let p = &self.coeffs[i] * &o.coeffs[j];
                out.coeffs[i + j] += &p;
            }
        }
        out
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Lattice::default()))
    }
}

/// Taylor polynomial in a nilpotent variable `u` (`u^{n+1} = 0`) with
/// q-series coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilTaylor {
    coeffs: Vec<QSeries>,
}

impl NilTaylor {
    pub fn zero(nilpotency: usize, order: usize) -> Self {
        NilTaylor { coeffs: vec![QSeries::zero(order); nilpotency + 1] }
    }

    pub fn constant(nilpotency: usize, c: QSeries) -> Self {
        let mut t = Self::zero(nilpotency, c.order());
        t.coeffs[0] = c;
        t
    }

    pub fn from_coeffs(coeffs: Vec<QSeries>) -> Self {
        assert!(!coeffs.is_empty());
        NilTaylor { coeffs }
    }

    pub fn nilpotency(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn order(&self) -> usize {
        self.coeffs[0].order()
    }

    pub fn coeff(&self, k: usize) -> &QSeries {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[QSeries] {
        &self.coeffs
    }

    pub fn coeff_mut(&mut self, k: usize) -> &mut QSeries {
        &mut self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, o: &NilTaylor) -> NilTaylor {
        let n = self.nilpotency().min(o.nilpotency());
        let mut out = NilTaylor::zero(n, self.order());
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                let p = &self.coeffs[i] * &o.coeffs[j];
                out.coeffs[i + j] += &p;
            }
        }
        out
    }

    pub fn mul_series(&self, s: &QSeries) -> NilTaylor {
        NilTaylor { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Inverse; the `u^0` coefficient must be invertible as a q-series.
    pub fn inverse(&self) -> Result<NilTaylor> {
        let lead = self.coeffs[0].inv_q()?;
        let n = self.nilpotency();
        let mut out = NilTaylor::zero(n, self.order());
        out.coeffs[0] = lead.clone();
        for k in 1..=n {
            let mut acc = QSeries::zero(self.order());
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &out.coeffs[k - j]);
            }
            out.coeffs[k] = -&(&acc * &lead);
        }
        Ok(out)
    }

    /// Divides by `u`, dropping to nilpotency `n - 1`. The `u^0` coefficient
    /// must vanish.
    pub fn div_u(&self) -> Result<NilTaylor> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Internal("division by u of a series with nonzero constant term".into()));
        }
        if self.coeffs.len() < 2 {
            return Err(Error::Internal("division by u needs nilpotency >= 1".into()));
        }
        Ok(NilTaylor { coeffs: self.coeffs[1..].to_vec() })
    }

    pub fn truncate(&self, nilpotency: usize) -> NilTaylor {
        NilTaylor { coeffs: self.coeffs[..=nilpotency].to_vec() }
    }
}

#[cfg(test)]
mod tests;
