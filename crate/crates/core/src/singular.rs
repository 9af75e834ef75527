//! Singular genera via resolution, and limits of perturbed pairs.
//!
//! A perturbation `a_i -> a_i + ε b_i` enters the genus only through
//! `w = y^ε`, so the theta arguments become `y^{-α_i} w^{-b_i}` and the limit
//! `ε -> 0` is the behaviour at `w = 1`. Two strategies compute it: an exact
//! expansion in `s_e = w - 1`, and reconstruction from the univariate
//! rational functions in `w` obtained at sampled values of `y`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::genus::{ell_pair, index_prefactor, localization_sums, GenusResult, RayData};
use crate::par;
use crate::series::{
    int, interpolate_laurent, rational_pow, scaled_numerators, Exponent, Lattice, LaurentPoly, QSeries,
    RatFunc1, Rational, SeriesFraction, Var, Window,
};
use crate::toric::{
    generic_subgroups, intersection_number, resolve, resolve_surface, star_subdivide, Fan, PairCoefficients,
    Resolution,
};

const RANK3_MAX_STEPS: usize = 64;
const WINDOW_CAP: usize = 1 << 10;

#[derive(Clone, Debug)]
pub struct SingularGenus {
    pub resolution: Resolution,
    pub genus: GenusResult,
    /// The exceptional ray of the extra corner blow-up and its coefficient.
    pub extra_ray: Vec<i64>,
    pub extra_coefficient: Rational,
    /// The genus of the once-more-blown-up model agrees.
    pub consistent: bool,
}

/// Genus of a complete simplicial toric variety through a toric resolution
/// with its discrepancies, cross-checked on a further blow-up.
pub fn ell_singular_toric(fan: &Fan, order: usize) -> Result<SingularGenus> {
    let pair = PairCoefficients::zero(fan);
    let resolution = match fan.rank() {
        2 => resolve_surface(fan, &pair)?,
        _ => {
            if !fan.is_complete() {
                return Err(Error::NotComplete);
            }
            resolve(fan, &pair, RANK3_MAX_STEPS)?
        }
    };
    let genus = ell_pair(&resolution.fan, &resolution.pair, order)?;
    let cone = &resolution.fan.cones()[0];
    let extra_ray: Vec<i64> =
        (0..fan.rank()).map(|k| cone.iter().map(|&r| resolution.fan.ray(r)[k]).sum()).collect();
    let (fan2, pair2, sub) = star_subdivide(&resolution.fan, &resolution.pair, &extra_ray)?;
    let extra = ell_pair(&fan2, &pair2, order)?;
    Ok(SingularGenus {
        consistent: extra == genus,
        resolution,
        genus,
        extra_ray,
        extra_coefficient: sub.a_new,
    })
}

/// Coefficients `b_i` of the perturbation `D_ε = ε Σ b_i D_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PerturbationSpec {
    pub b: Vec<Rational>,
}

impl PerturbationSpec {
    pub fn new(b: Vec<Rational>) -> Self {
        PerturbationSpec { b }
    }

    pub fn from_ints(b: &[i64]) -> Self {
        PerturbationSpec { b: b.iter().map(|&x| int(x)).collect() }
    }

    pub fn zero(n: usize) -> Self {
        PerturbationSpec { b: vec![Rational::zero(); n] }
    }
}

fn intersection_matrix(fan: &Fan) -> Result<Vec<Vec<Rational>>> {
    let n = fan.num_rays();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = intersection_number(fan, &[i, j])?;
            m[i][j] = v.clone();
            m[j][i] = v;
        }
    }
    Ok(m)
}

/// Rays with `a_i = -1` whose constraint `Σ_j b_j D_i·D_j = 0` fails.
pub fn perturbation_violations(fan: &Fan, pair: &PairCoefficients, b: &PerturbationSpec) -> Result<Vec<usize>> {
    if fan.rank() != 2 {
        return Err(Error::UnsupportedRank(fan.rank()));
    }
    fan.require_smooth_complete()?;
    for len in [pair.len(), b.b.len()] {
        if len != fan.num_rays() {
            return Err(Error::LengthMismatch { expected: fan.num_rays(), got: len });
        }
    }
    let m = intersection_matrix(fan)?;
    let minus_one = -Rational::one();
    Ok((0..fan.num_rays())
        .filter(|&i| pair.a()[i] == minus_one)
        .filter(|&i| !(0..fan.num_rays()).map(|j| &b.b[j] * &m[i][j]).sum::<Rational>().is_zero())
        .collect())
}

/// Whether `D_ε` has zero intersection with every component of coefficient −1.
pub fn validate_perturbation(fan: &Fan, pair: &PairCoefficients, b: &PerturbationSpec) -> Result<bool> {
    Ok(perturbation_violations(fan, pair, b)?.is_empty())
}

/// `Ell(X, D + D_ε)` as an exact quotient of q-series in `ŷ` and `ŵ`.
#[derive(Clone, Debug)]
pub struct PerturbedGenus {
    order: usize,
    rank: usize,
    lattice: Lattice,
    num: QSeries,
    den: QSeries,
    alpha: Vec<Rational>,
    b: Vec<Rational>,
}

impl PerturbedGenus {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn perturbation(&self) -> &[Rational] {
        &self.b
    }

    pub fn numerator(&self) -> &QSeries {
        &self.num
    }

    pub fn denominator(&self) -> &QSeries {
        &self.den
    }

    /// Number of rays with `α_i = 0`, the order of the denominator at `w = 1`.
    pub fn vanishing_rays(&self) -> usize {
        self.alpha.iter().filter(|a| a.is_zero()).count()
    }

    /// Half exponents of the `ŷ`-binomials `Θ(y^{-α_i})` for `α_i ≠ 0`.
    fn y_halves(&self) -> Vec<i64> {
        self.alpha
            .iter()
            .filter(|a| !a.is_zero())
            .map(|a| (a * int(self.lattice.y_root) / int(2)).to_integer().try_into().expect("small exponent"))
            .collect()
    }

    fn y_binomials(&self) -> Vec<usize> {
        self.y_halves().iter().map(|e: &i64| 2 * e.unsigned_abs() as usize).collect()
    }

    /// Value at fixed `ŷ` and `ŵ`.
    pub fn evaluate(&self, y_hat: &Rational, w_hat: &Rational) -> Result<QSeries> {
        let n = self.num.eval_var(Var::Y, y_hat).eval_var(Var::W, w_hat);
        let d = self.den.eval_var(Var::Y, y_hat).eval_var(Var::W, w_hat);
        QSeries::mul_q(&n, &d.inv_q()?)
    }

    /// Whether the quotient is free of `w`.
    pub fn is_w_independent(&self) -> bool {
        let w_free = |s: &QSeries| s.coeffs().iter().all(|c| c.uses_only(&[Var::S, Var::Y]));
        if w_free(&self.num) && w_free(&self.den) {
            return true;
        }
        // N(w) D(1) = N(1) D(w) as series, when D(1) is nonzero.
        let n1 = self.num.eval_var_one(Var::W);
        let d1 = self.den.eval_var_one(Var::W);
        !d1.coeff(0).is_zero() && &self.num * &d1 == &n1 * &self.den
    }

    /// Whether the quotient vanishes identically.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// Localization with perturbed theta arguments `y^{-α_i} w^{-b_i}`.
pub fn perturbed_ell(
    fan: &Fan,
    pair: &PairCoefficients,
    b: &PerturbationSpec,
    order: usize,
) -> Result<PerturbedGenus> {
    fan.require_smooth_complete()?;
    for len in [pair.len(), b.b.len()] {
        if len != fan.num_rays() {
            return Err(Error::LengthMismatch { expected: fan.num_rays(), got: len });
        }
    }
    let alpha = pair.alpha();
    if let Some(ray) = (0..alpha.len()).find(|&i| alpha[i].is_zero() && b.b[i].is_zero()) {
        return Err(Error::DegeneratePerturbation { ray });
    }
    let lattice = Lattice::for_coefficients(pair.a().iter(), b.b.iter());
    let rays = RayData::new(&alpha, Some(&b.b), &lattice, order)?;
    let data = generic_subgroups(fan, 1)?;
    let sums = localization_sums(fan, &rays, &data[0], order)?;
    let num = &index_prefactor(fan.rank(), &lattice, order)? * &sums[fan.rank()];
    Ok(PerturbedGenus {
        order,
        rank: fan.rank(),
        lattice,
        num,
        den: rays.denominator(order),
        alpha,
        b: b.b.clone(),
    })
}

/// Laurent expansion in `s_e = w - 1`: per q-order, the coefficients of
/// `s_e^{-z}, …, s_e^{0}`, where `z` bounds the pole order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsExpansion {
    pub rank: usize,
    pub y_root: i64,
    pub max_pole: usize,
    /// `coeffs[k][j]` is the coefficient of `q^k s_e^{j - max_pole}`.
    pub coeffs: Vec<Vec<RatFunc1>>,
}

/// Principal part of a pole at `w = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleReport {
    pub y_root: i64,
    /// Pole order per q-order (0 where regular).
    pub orders: Vec<usize>,
    /// `principal[k][p-1]` is the coefficient of `q^k s_e^{-p}`.
    pub principal: Vec<Vec<RatFunc1>>,
    /// Some pole is worse than simple.
    pub exceeds_simple: bool,
}

impl PoleReport {
    pub fn max_order(&self) -> usize {
        self.orders.iter().copied().max().unwrap_or(0)
    }

    pub fn render_term(&self, k: usize, p: usize) -> String {
        self.principal[k][p - 1].render(Var::Y, &Lattice { y_root: self.y_root, w_root: 1 })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitOutcome {
    Regular(GenusResult),
    Pole(PoleReport),
}

impl LimitOutcome {
    pub fn value(&self) -> Option<&GenusResult> {
        match self {
            LimitOutcome::Regular(g) => Some(g),
            LimitOutcome::Pole(_) => None,
        }
    }
}

/// Leading behaviour at `w = 1` per q-order: pole order (0 when regular)
/// and the coefficient of `s_e^{-order}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerms {
    pub y_root: i64,
    pub terms: Vec<(usize, RatFunc1)>,
}

impl LeadingTerms {
    fn canonical(y_root: i64, terms: Vec<(usize, RatFunc1)>) -> Self {
        let g = terms.iter().fold(y_root, |g, (_, c)| num_integer::gcd(g, c.exponent_gcd()));
        LeadingTerms { y_root: y_root / g, terms: terms.into_iter().map(|(p, c)| (p, c.deflate(g))).collect() }
    }
}

impl EpsExpansion {
    pub fn outcome(&self) -> LimitOutcome {
        let z = self.max_pole;
        let orders: Vec<usize> = self
            .coeffs
            .iter()
            .map(|row| (1..=z).rev().find(|&p| !row[z - p].is_zero()).unwrap_or(0))
            .collect();
        if orders.iter().all(|&p| p == 0) {
            let value = self.coeffs.iter().map(|row| row[z].clone()).collect();
            return LimitOutcome::Regular(GenusResult::new(self.rank, self.y_root, value));
        }
        let principal = self.coeffs.iter().map(|row| (1..=z).map(|p| row[z - p].clone()).collect()).collect();
        LimitOutcome::Pole(PoleReport {
            y_root: self.y_root,
            exceeds_simple: orders.iter().any(|&p| p > 1),
            orders,
            principal,
        })
    }

    pub fn leading_terms(&self) -> LeadingTerms {
        let z = self.max_pole;
        let terms = self
            .coeffs
            .iter()
            .map(|row| match (1..=z).rev().find(|&p| !row[z - p].is_zero()) {
                Some(p) => (p, row[z - p].clone()),
                None => (0, row[z].clone()),
            })
            .collect();
        LeadingTerms::canonical(self.y_root, terms)
    }
}

/// Rewrites a series in `ŵ` as a Taylor polynomial in `s_e`, using
/// `ŵ^f = (1 + s_e)^{f / w_root}`.
fn expand_in_se(series: &QSeries, w_root: i64, degree: usize) -> Vec<QSeries> {
    let mut out = vec![QSeries::zero(series.order()); degree + 1];
    let mut binom: BTreeMap<i64, Vec<Rational>> = BTreeMap::new();
    for (k, c) in series.coeffs().iter().enumerate() {
        let mut rows = vec![LaurentPoly::zero(); degree + 1];
        for (e, v) in c.terms() {
            let f = e.get(Var::W);
            let bs = binom.entry(f).or_insert_with(|| {
                let r = Rational::new(f.into(), w_root.into());
                let mut b = vec![Rational::one()];
                for j in 1..=degree {
                    let prev = b[j - 1].clone();
                    b.push(prev * (&r - int(j as i64 - 1)) / int(j as i64));
                }
                b
            });
            for (j, bj) in bs.iter().enumerate() {
                rows[j].add_term(e.with(Var::W, 0), v * bj);
            }
        }
        for (j, r) in rows.into_iter().enumerate() {
            out[j].set_coeff(k, r);
        }
    }
    out
}

/// Strategy (a): exact expansion at `w = 1 + s_e`.
pub fn expand_eps(pg: &PerturbedGenus) -> Result<EpsExpansion> {
    let z = pg.vanishing_rays();
    let order = pg.order;
    let nexp = expand_in_se(&pg.num, pg.lattice.w_root, z);
    let dexp = expand_in_se(&pg.den, pg.lattice.w_root, 2 * z);
    if dexp[..z].iter().any(|d| !d.is_zero()) || dexp[z].coeff(0).is_zero() {
        return Err(Error::Internal("denominator order at w = 1 differs from the vanishing count".into()));
    }
    let dt: Vec<&QSeries> = dexp[z..].iter().collect();
    let mut pow = vec![QSeries::one(order)];
    for i in 1..=z + 1 {
        pow.push(&pow[i - 1] * dt[0]);
    }
    // 1/D̃ = Σ_m E_m s_e^m / D̃_0^{m+1}.
    let mut e: Vec<QSeries> = vec![QSeries::one(order)];
    for m in 1..=z {
        let mut acc = QSeries::zero(order);
        for l in 1..=m {
            acc += &(&(dt[l] * &e[m - l]) * &pow[l - 1]);
        }
        e.push(-&acc);
    }
    let bin = pg.y_binomials();
    let js: Vec<usize> = (0..=z).collect();
    let cols = par::try_map(&js, |&j| {
        let mut num = QSeries::zero(order);
        for i in 0..=j {
            num += &(&(&nexp[i] * &e[j - i]) * &pow[i]);
        }
        let reps: Vec<usize> = (0..=j).flat_map(|_| bin.iter().copied()).collect();
        SeriesFraction::new(num, pow[j + 1].clone(), Var::Y, &reps)?.to_ratfuncs()
    })?;
    let coeffs = (0..=order).map(|k| cols.iter().map(|c| c[k].clone()).collect()).collect();
    Ok(EpsExpansion { rank: pg.rank, y_root: pg.lattice.y_root, max_pole: z, coeffs })
}

/// The limit `ε -> 0`, or the principal part when the genus has a pole.
pub fn limit_eps(pg: &PerturbedGenus) -> Result<LimitOutcome> {
    Ok(expand_eps(pg)?.outcome())
}

/// Order at `x = 1` and leading coefficient of a univariate Laurent polynomial.
fn at_one(p: &LaurentPoly, var: Var) -> Result<Option<(i64, Rational)>> {
    let (_, poly) = crate::series::laurent_to_poly1(p, var)?;
    if poly.is_zero() {
        return Ok(None);
    }
    let (k, rest) = poly.split_at_one();
    Ok(Some((k as i64, rest.eval(&Rational::one()))))
}

/// Per q-order `(order at ŵ = 1, leading coefficient in ŵ - 1)` at `ŷ = y0`.
fn sample_leading(pg: &PerturbedGenus, y0: &Rational) -> Result<Vec<Option<(i64, Rational)>>> {
    let num = pg.num.eval_var(Var::Y, y0);
    let den = pg.den.eval_var(Var::Y, y0);
    let (d_ord, d_val) =
        at_one(den.coeff(0), Var::W)?.ok_or_else(|| Error::Internal("denominator vanishes at sample".into()))?;
    scaled_numerators(&num, &den)
        .iter()
        .enumerate()
        .map(|(k, mk)| {
            let p = (k + 1) as i64;
            Ok(at_one(mk, Var::W)?.map(|(o, c)| (o - p * d_ord, c / rational_pow(&d_val, p))))
        })
        .collect()
}

/// Strategy (b): rational functions in `w` at sampled `ŷ`, then
/// interpolation in `ŷ` after clearing the known denominator.
pub fn leading_terms_by_reconstruction(pg: &PerturbedGenus, validation: usize) -> Result<LeadingTerms> {
    let order = pg.order;
    let z = pg.vanishing_rays();
    let w_root = int(pg.lattice.w_root);
    let base: LaurentPoly = pg
        .y_halves()
        .iter()
        .fold(LaurentPoly::one(), |acc, &e| &acc * &LaurentPoly::binomial(Exponent::single(Var::Y, e)));
    let mut samples: Vec<(Rational, Vec<Option<(i64, Rational)>>)> = Vec::new();
    let mut terms = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let clear = base.pow(((z + 1) * (k + 1)) as u32);
        let deg = clear.max_exponent(Var::Y).unwrap_or(0).max(-clear.min_exponent(Var::Y).unwrap_or(0));
        let initial = Window::symmetric(deg + 4);
        let mut window = initial;
        let result = loop {
            let needed = window.width() + validation;
            if samples.len() < needed {
                let ps = crate::genus::equivariant::primes(needed);
                let fresh: Vec<Rational> = ps[samples.len()..].iter().map(|&p| int(p)).collect();
                let vals = par::try_map(&fresh, |y0| sample_leading(pg, y0))?;
                samples.extend(fresh.into_iter().zip(vals));
            }
            let lowest = samples.iter().filter_map(|s| s.1[k].as_ref().map(|x| x.0)).min();
            let pole = lowest.map(|o| (-o).max(0) as usize).unwrap_or(0);
            let target = -(pole as i64);
            let pts: Vec<(Rational, QSeries)> = samples
                .iter()
                .map(|(y0, lead)| {
                    let v = match &lead[k] {
                        Some((o, c)) if *o == target => c * rational_pow(&w_root, pole as i64),
                        _ => Rational::zero(),
                    };
                    let q = clear.eval_var(Var::Y, y0).constant_term();
                    (y0.clone(), QSeries::constant(0, LaurentPoly::constant(v * q)))
                })
                .collect();
            match interpolate_laurent(&pts, Var::Y, window, validation) {
                Ok(s) => {
                    let r = RatFunc1::from_fraction(s.coeff(0), &clear, Var::Y)?;
                    break (pole, r);
                }
                Err(Error::InterpolationInconsistent { order: _, point }) => {
                    let next = window.doubled();
                    if next.width() > initial.width() * WINDOW_CAP {
                        return Err(Error::InterpolationInconsistent { order: k, point });
                    }
                    window = next;
                }
                Err(e) => return Err(e),
            }
        };
        terms.push(result);
    }
    Ok(LeadingTerms::canonical(pg.lattice.y_root, terms))
}

#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub first: LimitOutcome,
    pub second: LimitOutcome,
    pub equal: bool,
}

/// Both perturbations must lie in the admissible class; the report is
/// positive when both limits exist and coincide.
pub fn check_perturbation_independence(
    fan: &Fan,
    pair: &PairCoefficients,
    b1: &PerturbationSpec,
    b2: &PerturbationSpec,
    order: usize,
) -> Result<IndependenceReport> {
    for b in [b1, b2] {
        if let Some(&ray) = perturbation_violations(fan, pair, b)?.first() {
            return Err(Error::InvalidPerturbation { ray });
        }
    }
    let first = limit_eps(&perturbed_ell(fan, pair, b1, order)?)?;
    let second = limit_eps(&perturbed_ell(fan, pair, b2, order)?)?;
    let equal = matches!((&first, &second), (LimitOutcome::Regular(a), LimitOutcome::Regular(b)) if a == b);
    Ok(IndependenceReport { first, second, equal })
}

/// Star subdivision carrying the perturbation along: the new ray gets
/// `b_new = Σ λ_i b_i`, matching the discrepancy rule for `a + ε b`.
pub fn pullback(
    fan: &Fan,
    pair: &PairCoefficients,
    b: &PerturbationSpec,
    new_ray: &[i64],
) -> Result<(Fan, PairCoefficients, PerturbationSpec)> {
    let (fan2, pair2, sub) = star_subdivide(fan, pair, new_ray)?;
    let mut b2 = b.b.clone();
    b2.push(sub.combine(&b.b));
    Ok((fan2, pair2, PerturbationSpec { b: b2 }))
}

#[cfg(test)]
mod tests;
