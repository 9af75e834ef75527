use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{int, rational_pow, Exponent, Lattice, LaurentPoly, Rational, Var};
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly1 {
    c: Vec<Rational>,
}

impl Poly1 {
    pub fn zero() -> Self {
        Poly1 { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly1 { c: vec![Rational::one()] }
    }

    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly1 { c }
    }

    /// `x^m - 1`.
    pub fn x_pow_minus_one(m: usize) -> Self {
        let mut c = vec![Rational::zero(); m + 1];
        c[0] = -Rational::one();
        c[m] = Rational::one();
        Poly1::new(c)
    }

    /// The `d`-th cyclotomic polynomial.
    pub fn cyclotomic(d: usize) -> Self {
        let mut p = Self::x_pow_minus_one(d);
        for e in 1..d {
            if d % e == 0 {
                p = p.exact_div(&Self::cyclotomic(e)).expect("cyclotomic divides x^d - 1");
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.c.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.c.iter().rev().fold(Rational::zero(), |acc, a| acc * x + a)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Poly1::new(self.c.iter().map(|a| a * k).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    pub fn add(&self, o: &Poly1) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = Rational::zero();
        Poly1::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &Poly1) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn mul(&self, o: &Poly1) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly1::new(c)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn divrem(&self, d: &Poly1) -> (Poly1, Poly1) {
        let dl = d.lead().expect("division by zero polynomial").recip();
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let k = &r[i + dd] * &dl;
            if k.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[i + j] -= &k * b;
            }
            q[i] = k;
        }
        r.truncate(dd);
        (Poly1::new(q), Poly1::new(r))
    }

    pub fn exact_div(&self, d: &Poly1) -> Option<Poly1> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly1) -> Poly1 {
        let (mut a, mut b) = (self.monic(), o.monic());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Largest `v` with `x^v | self`, and the cofactor.
    pub fn split_x_power(&self) -> (usize, Poly1) {
        let v = self.c.iter().take_while(|a| a.is_zero()).count();
        (v, Poly1::new(self.c[v.min(self.c.len())..].to_vec()))
    }

    /// Order of vanishing at `x = 1` and the quotient by `(x - 1)^order`.
    pub fn split_at_one(&self) -> (usize, Poly1) {
        let mut p = self.clone();
        let mut k = 0;
        if p.is_zero() {
            return (0, p);
        }
        loop {
            let (q, rem) = p.div_x_minus_one();
            if !rem.is_zero() {
                return (k, p);
            }
            p = q;
            k += 1;
        }
    }

    /// Synthetic division by `x - 1`: quotient and remainder `p(1)`.
    fn div_x_minus_one(&self) -> (Poly1, Rational) {
        if self.c.is_empty() {
            return (Self::zero(), Rational::zero());
        }
        let n = self.c.len();
        let mut q = vec![Rational::zero(); n - 1];
        let mut acc = Rational::zero();
        for i in (0..n).rev() {
            acc += &self.c[i];
            if i > 0 {
                q[i - 1] = acc.clone();
            }
        }
        (Poly1::new(q), acc)
    }

    pub fn to_laurent(&self, var: Var, shift: i64) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.c
                .iter()
                .enumerate()
                .map(|(i, a)| (Exponent::single(var, i as i64 + shift), a.clone())),
        )
    }

    /// Substitutes `x -> x^g`.
    pub fn inflate(&self, g: usize) -> Poly1 {
        if self.c.is_empty() || g == 1 {
            return self.clone();
        }
        let mut c = vec![Rational::zero(); (self.c.len() - 1) * g + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[i * g] = a.clone();
        }
        Poly1::new(c)
    }

    fn exponent_gcd(&self) -> usize {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .fold(0usize, |g, (i, _)| num_integer::gcd(g, i))
    }

    fn deflate(&self, g: usize) -> Poly1 {
        Poly1::new(self.c.iter().step_by(g).cloned().collect())
    }
}

/// Integer numerators over the least common denominator.
fn integer_form(p: &Poly1) -> (Vec<BigInt>, BigInt) {
    let den = p.c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    (p.c.iter().map(|x| x.numer() * (&den / x.denom())).collect(), den)
}

/// Exact quotient by a monic integer polynomial.
fn div_monic(n: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = d.len() - 1;
    if n.len() <= dd {
        return n.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    let mut r = n.to_vec();
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (0..q.len()).rev() {
        let k = std::mem::take(&mut r[i + dd]);
        if k.is_zero() {
            continue;
        }
        for (j, b) in d[..dd].iter().enumerate() {
            if !b.is_zero() {
                r[i + j] -= &k * b;
            }
        }
        q[i] = k;
    }
    r[..dd].iter().all(|x| x.is_zero()).then_some(q)
}

/// Converts a Laurent polynomial in one variable to `x^shift * p(x)` with
/// `p(0) != 0`.
pub(crate) fn laurent_to_poly1(p: &LaurentPoly, var: Var) -> Result<(i64, Poly1)> {
    if !p.uses_only(&[var]) {
        return Err(Error::Internal("expected a univariate Laurent polynomial".into()));
    }
    let Some(lo) = p.min_exponent(var) else {
        return Ok((0, Poly1::zero()));
    };
    let hi = p.max_exponent(var).unwrap_or(lo);
    let mut c = vec![Rational::zero(); (hi - lo) as usize + 1];
    for (e, a) in p.terms() {
        c[(e.get(var) - lo) as usize] = a.clone();
    }
    Ok((lo, Poly1::new(c)))
}

/// Canonical rational function `x^shift * num(x) / den(x)` in one variable.
///
/// `num(0) != 0`, `den` is monic with `den(0) != 0`, and the two are coprime.
/// Zero is stored as `0 / 1` with `shift = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc1 {
    shift: i64,
    num: Poly1,
    den: Poly1,
}

impl RatFunc1 {
    pub fn zero() -> Self {
        RatFunc1 { shift: 0, num: Poly1::zero(), den: Poly1::one() }
    }

    pub fn from_laurent(p: &LaurentPoly, var: Var) -> Result<Self> {
        let (shift, num) = laurent_to_poly1(p, var)?;
        Ok(Self::normalized(shift, num, Poly1::one()))
    }

    /// `num / den` for univariate Laurent polynomials; `den` must be nonzero.
    pub fn from_fraction(num: &LaurentPoly, den: &LaurentPoly, var: Var) -> Result<Self> {
        let (ns, n) = laurent_to_poly1(num, var)?;
        let (ds, d) = laurent_to_poly1(den, var)?;
        if d.is_zero() {
            return Err(Error::NonInvertible("zero denominator".into()));
        }
        Ok(Self::reduce(ns - ds, n, d))
    }

    /// `num / (c * x^m * Π Φ_d^{e_d})` where the cyclotomic factors are given
    /// by `cyclo`. Uses trial division by each factor.
    pub fn from_cyclotomic_den(
        num: &LaurentPoly,
        var: Var,
        c: &Rational,
        m: i64,
        cyclo: &BTreeMap<usize, u32>,
    ) -> Result<Self> {
        let (ns, n) = laurent_to_poly1(num, var)?;
        if n.is_zero() {
            return Ok(Self::zero());
        }
        let (mut ni, nd) = integer_form(&n);
        let mut den = Poly1::one();
        for (&d, &e) in cyclo {
            let phi = Poly1::cyclotomic(d);
            let (phi_i, _) = integer_form(&phi);
            let mut left = e;
            while left > 0 {
                match div_monic(&ni, &phi_i) {
                    Some(q) => {
                        ni = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            den = den.mul(&phi.pow(left));
        }
        let n = Poly1::new(ni.into_iter().map(|x| Rational::new(x, nd.clone())).collect());
        Ok(Self::normalized(ns - m, n.scale(&c.recip()), den))
    }

    fn reduce(shift: i64, num: Poly1, den: Poly1) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        Self::normalized(shift, num, den)
    }

    /// Moves powers of `x` into the shift and makes `den` monic. Assumes
    /// `num` and `den` are coprime apart from powers of `x`.
    fn normalized(shift: i64, num: Poly1, den: Poly1) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (nv, num) = num.split_x_power();
        let (dv, den) = den.split_x_power();
        let l = den.lead().expect("nonzero denominator").recip();
        RatFunc1 {
            shift: shift + nv as i64 - dv as i64,
            num: num.scale(&l),
            den: den.scale(&l),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &Poly1 {
        &self.num
    }

    pub fn denominator(&self) -> &Poly1 {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self, var: Var) -> Option<LaurentPoly> {
        self.is_laurent().then(|| self.num.to_laurent(var, self.shift))
    }

    pub fn numerator_laurent(&self, var: Var) -> LaurentPoly {
        self.num.to_laurent(var, self.shift)
    }

    pub fn add(&self, o: &RatFunc1) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(o.shift);
        let a = self.num.mul(&o.den).mul(&x_pow((self.shift - s) as usize));
        let b = o.num.mul(&self.den).mul(&x_pow((o.shift - s) as usize));
        Self::reduce(s, a.add(&b), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        RatFunc1 { shift: self.shift, num: self.num.scale(&-Rational::one()), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc1) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc1) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::reduce(self.shift + o.shift, self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        RatFunc1 { shift: self.shift, num: self.num.scale(k), den: self.den.clone() }
    }

    /// Value at a point where the denominator does not vanish.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() || (x.is_zero() && self.shift < 0) {
            return Err(Error::NonInvertible(format!("pole at {}", x)));
        }
        Ok(rational_pow(x, self.shift) * self.num.eval(x) / d)
    }

    /// Order at `x = 1` (negative for a pole) and the leading coefficient
    /// `c` with `f ~ c (x - 1)^order`.
    pub fn expansion_at_one(&self) -> Option<(i64, Rational)> {
        if self.is_zero() {
            return None;
        }
        let (a, n) = self.num.split_at_one();
        let (b, d) = self.den.split_at_one();
        let one = Rational::one();
        Some((a as i64 - b as i64, n.eval(&one) / d.eval(&one)))
    }

    /// Largest `g` such that this is a function of `x^g`, or 0 for zero.
    pub fn exponent_gcd(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        let g = num_integer::gcd(self.num.exponent_gcd(), self.den.exponent_gcd());
        num_integer::gcd(g as i64, self.shift.abs())
    }

    /// Substitutes `x -> x^(1/g)`; `g` must divide [`Self::exponent_gcd`].
    pub fn deflate(&self, g: i64) -> Self {
        if self.is_zero() || g == 1 {
            return self.clone();
        }
        let gu = g as usize;
        RatFunc1 { shift: self.shift / g, num: self.num.deflate(gu), den: self.den.deflate(gu) }
    }

    /// Substitutes `x -> x^g`.
    pub fn inflate(&self, g: i64) -> Self {
        if self.is_zero() || g == 1 {
            return self.clone();
        }
        let gu = g as usize;
        RatFunc1 { shift: self.shift * g, num: self.num.inflate(gu), den: self.den.inflate(gu) }
    }

    pub fn render(&self, var: Var, lattice: &Lattice) -> String {
        let num = self.num.to_laurent(var, self.shift).render(lattice);
        if self.den.is_one() {
            return num;
        }
        let den = self.den.to_laurent(var, 0).render(lattice);
        format!("({})/({})", num, den)
    }
}

fn x_pow(k: usize) -> Poly1 {
    let mut c = vec![Rational::zero(); k + 1];
    c[k] = Rational::one();
    Poly1::new(c)
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let sign = if a.is_negative() { "-" } else { "+" };
            if !first || a.is_negative() {
                write!(f, "{}", if first { "-".to_string() } else { format!(" {} ", sign) })?;
            }
            let abs = a.abs();
            match i {
                0 => write!(f, "{}", abs)?,
                _ if abs == int(1) => write!(f, "x^{}", i)?,
                _ => write!(f, "{}*x^{}", abs, i)?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn p(v: &[i64]) -> Poly1 {
        Poly1::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(Poly1::cyclotomic(1), p(&[-1, 1]));
        assert_eq!(Poly1::cyclotomic(2), p(&[1, 1]));
        assert_eq!(Poly1::cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(Poly1::cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn gcd_and_reduce() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        let y = |e| LaurentPoly::monomial(Exponent::single(Var::Y, e), int(1));
        let num = &y(2) - &y(0);
        let den = &y(1) - &y(0);
        let r = RatFunc1::from_fraction(&num, &den, Var::Y).unwrap();
        assert!(r.is_laurent());
        assert_eq!(r.as_laurent(Var::Y).unwrap(), &y(1) + &y(0));
    }

    #[test]
    fn cyclotomic_denominator_matches_gcd_route() {
        let y = |e| LaurentPoly::monomial(Exponent::single(Var::Y, e), int(1));
        // (y^3 - 1) / (3 y (y^6 - 1))
        let num = &y(3) - &y(0);
        let den = (&y(7) - &y(1)).scale(&int(3));
        let mut cyc = BTreeMap::new();
        for d in [1, 2, 3, 6] {
            cyc.insert(d, 1);
        }
        let a = RatFunc1::from_cyclotomic_den(&num, Var::Y, &int(3), 1, &cyc).unwrap();
        let b = RatFunc1::from_fraction(&num, &den, Var::Y).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.denominator(), &p(&[1, 0, 0, 1]));
        assert_eq!(a.shift(), -1);
        assert_eq!(a.eval(&int(2)).unwrap(), rat(1, 54));
    }

    #[test]
    fn expansion_at_one_orders() {
        let r = RatFunc1::normalized(0, p(&[1, -2, 1]), p(&[-1, 1]).mul(&p(&[2, 1])));
        let r = RatFunc1::reduce(r.shift, r.num, r.den);
        assert_eq!(r.expansion_at_one(), Some((1, rat(1, 3))));
        let pole = RatFunc1::reduce(0, p(&[3]), p(&[1, -2, 1]));
        assert_eq!(pole.expansion_at_one(), Some((-2, int(3))));
    }

    #[test]
    fn deflate_inflate_roundtrip() {
        let r = RatFunc1::reduce(4, p(&[1, 0, 1]), p(&[1, 0, 0, 0, 3]));
        assert_eq!(r.exponent_gcd(), 2);
        let d = r.deflate(2);
        assert_eq!(d.inflate(2), r);
    }
}
