//! Fixed-point theta summation with the circle parameter `t` kept symbolic.
//!
//! For each sample `s = t^{1/2}` (the primes 2, 3, 5, …) the sum
//! `G(s) = Σ_σ Θ(y)^n Π_{i∉σ} Θ(y^{α_i}) Π_{j∈σ} Θ(t^{m_j} y^{-α_j}) / Θ(t^{m_j})`
//! is evaluated exactly; each q-order of `G` is then reconstructed as a
//! Laurent polynomial in `s` and the genus is `G / Π_i Θ(y^{α_i})`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::par;
use crate::series::{
    int, interpolate_laurent_by_order, DenseSeries, Exponent, Lattice, QSeries, RatFunc1, Rational, SeriesFraction, Var,
    Window,
};
use crate::theta::theta_half_exponent;
use crate::toric::{fixed_point_data, Fan, OneParamSubgroup, PairCoefficients};

use super::{check_pair, pair_lattice, GenusResult};

/// Window caps at this multiple of the initial width.
const WINDOW_CAP: usize = 1 << 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleLog {
    /// Sample values of `s = t^{1/2}`.
    pub points: Vec<Rational>,
    /// Final `s`-exponent window per q-order.
    pub windows: Vec<Window>,
    /// Number of validation points per q-order.
    pub validation: Vec<usize>,
    /// Number of window doublings per q-order.
    pub widenings: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct EquivariantGenus {
    order: usize,
    rank: usize,
    lattice: Lattice,
    xi: OneParamSubgroup,
    /// Per q-order: `s`-exponent to coefficient of `s^e`, rational in `y`.
    by_t: Vec<BTreeMap<i64, RatFunc1>>,
    at_one: GenusResult,
    log: SampleLog,
}

impl EquivariantGenus {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn xi(&self) -> &OneParamSubgroup {
        &self.xi
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn sample_log(&self) -> &SampleLog {
        &self.log
    }

    /// Coefficients of `t^{e/2}` at q-order `k`, keyed by `e`.
    pub fn t_coefficients(&self, k: usize) -> &BTreeMap<i64, RatFunc1> {
        &self.by_t[k]
    }

    /// `t`-exponents with a nonzero coefficient, per q-order.
    pub fn t_support(&self) -> Vec<Vec<Rational>> {
        self.by_t.iter().map(|m| m.keys().map(|&e| Rational::new(e.into(), 2.into())).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.by_t.iter().all(|m| m.is_empty())
    }

    /// The genus at `t = 1`.
    pub fn at_t_one(&self) -> &GenusResult {
        &self.at_one
    }

    pub fn render_coeff(&self, k: usize) -> String {
        if self.by_t[k].is_empty() {
            return "0".into();
        }
        self.by_t[k]
            .iter()
            .map(|(e, c)| {
                let t = Lattice { y_root: self.lattice.y_root, w_root: 1 }
                    .render_monomial(&Exponent::single(Var::S, *e));
                let c = c.render(Var::Y, &self.lattice);
                if t.is_empty() { format!("[{}]", c) } else { format!("[{}]*{}", c, t) }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub(crate) fn primes(count: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(count);
    let mut n = 2i64;
    while out.len() < count {
        if out.iter().take_while(|&&p| p * p <= n).all(|&p| n % p != 0) {
            out.push(n);
        }
        n += 1;
    }
    out
}

struct ConeTerms {
    /// `Θ(y)^n Π_{i∉σ} Θ(y^{α_i})`.
    bracket: DenseSeries,
    /// `(m_j, ŷ-exponent of Y_j^{1/2})` per ray of the cone.
    factors: Vec<(i64, i64)>,
}

/// Symbolic `Θ(t^m Y)` keyed by `(m, ŷ-exponent)` and `Θ(t^m)` keyed by `m`.
struct SymbolicFactors {
    num: BTreeMap<(i64, i64), QSeries>,
    den: BTreeMap<i64, QSeries>,
}

fn evaluate(cones: &[ConeTerms], sym: &SymbolicFactors, s: &Rational, order: usize) -> Result<QSeries> {
    let mut num = BTreeMap::new();
    for (k, v) in &sym.num {
        num.insert(*k, DenseSeries::from_qseries(&v.eval_var(Var::S, s), Var::Y)?);
    }
    let mut den = BTreeMap::new();
    for (k, v) in &sym.den {
        den.insert(*k, DenseSeries::from_qseries(&v.eval_var(Var::S, s).inv_q()?, Var::Y)?);
    }
    let mut total = DenseSeries::zero(order);
    for c in cones {
        let mut prod = c.bracket.clone();
        for (m, e) in &c.factors {
            prod = prod.mul(&num[&(*m, *e)]);
        }
        for (m, _) in &c.factors {
            prod = prod.mul(&den[m]);
        }
        total.add_assign(&prod);
    }
    Ok(total.to_qseries(Var::Y))
}

/// Equivariant genus for the circle `ξ`, certified to be a Laurent
/// polynomial in `t^{1/2}` at every q-order by `validation` extra samples.
pub fn ell_pair_equivariant(
    fan: &Fan,
    pair: &PairCoefficients,
    xi: &OneParamSubgroup,
    order: usize,
    validation: usize,
) -> Result<EquivariantGenus> {
    check_pair(fan, pair)?;
    if validation == 0 {
        return Err(Error::InsufficientSamples { needed: 1, got: 0 });
    }
    let data = fixed_point_data(fan, xi)?;
    let n = fan.rank();
    let lattice = pair_lattice(pair);
    let alpha = pair.alpha();
    let half_y = |a: &Rational| -> Result<i64> { Ok(lattice.exponent(&int(0), &(a / int(2)), &int(0))?.get(Var::Y)) };
    let e: Vec<i64> = alpha.iter().map(half_y).collect::<Result<_>>()?;
    let theta_pos: Vec<QSeries> =
        par::try_map(&e, |&x| theta_half_exponent(Exponent::single(Var::Y, x), order))?;
    let theta_y = theta_half_exponent(Exponent::single(Var::Y, lattice.y_root / 2), order)?;
    let prefactor = theta_y.pow(n as u32);

    let mut sym = SymbolicFactors { num: BTreeMap::new(), den: BTreeMap::new() };
    for (c, cone) in fan.cones().iter().enumerate() {
        for (&r, &m) in cone.iter().zip(&data.tangent[c]) {
            if !sym.den.contains_key(&m) {
                sym.den.insert(m, theta_half_exponent(Exponent::single(Var::S, m), order)?);
            }
            if let std::collections::btree_map::Entry::Vacant(v) = sym.num.entry((m, -e[r])) {
                v.insert(theta_half_exponent(Exponent([m, -e[r], 0]), order)?);
            }
        }
    }
    let cone_ids: Vec<usize> = (0..fan.cones().len()).collect();
    let cones: Vec<ConeTerms> = par::try_map(&cone_ids, |&c| {
        let cone = &fan.cones()[c];
        let mut bracket = prefactor.clone();
        for i in (0..fan.num_rays()).filter(|i| !cone.contains(i)) {
            bracket = &bracket * &theta_pos[i];
        }
        let factors = cone.iter().zip(&data.tangent[c]).map(|(&r, &m)| (m, -e[r])).collect();
        Ok(ConeTerms { bracket: DenseSeries::from_qseries(&bracket, Var::Y)?, factors })
    })?;

    // A q^k coefficient of Π_j Θ(t^{m_j} Y_j)/Θ(t^{m_j}) grows at most like
    // t^{±Mk}, M = max |m_j|.
    let big_m = data.max_abs_weight();
    let initial: Vec<Window> = (0..=order).map(|k| Window::symmetric(2 * big_m * k as i64)).collect();
    let mut windows = initial.clone();
    let mut widenings = vec![0usize; order + 1];
    let mut samples: Vec<(Rational, QSeries)> = Vec::new();
    let interpolated = loop {
        let needed = windows.iter().map(|w| w.width()).max().unwrap_or(1) + validation;
        if samples.len() < needed {
            let ps = primes(needed);
            let fresh: Vec<Rational> = ps[samples.len()..].iter().map(|&p| int(p)).collect();
            let values = par::try_map(&fresh, |s| evaluate(&cones, &sym, s, order))?;
            samples.extend(fresh.into_iter().zip(values));
        }
        match interpolate_laurent_by_order(&samples, Var::S, &windows, validation) {
            Ok(g) => break g,
            Err(Error::InterpolationInconsistent { order: k, point }) => {
                let next = windows[k].doubled();
                if next.width() > initial[k].width() * WINDOW_CAP {
                    return Err(Error::InterpolationInconsistent { order: k, point });
                }
                windows[k] = next;
                widenings[k] += 1;
            }
            Err(other) => return Err(other),
        }
    };

    let den = theta_pos.iter().fold(QSeries::one(order), |acc, t| &acc * t);
    let binomials: Vec<usize> = e.iter().map(|x| 2 * x.unsigned_abs() as usize).collect();
    let frac = SeriesFraction::new(interpolated.clone(), den.clone(), Var::Y, &binomials)?;
    let scaled = frac.scaled_numerators();
    let mut by_t = Vec::with_capacity(order + 1);
    for (k, mk) in scaled.iter().enumerate() {
        let mut split: BTreeMap<i64, crate::series::LaurentPoly> = BTreeMap::new();
        for (ex, c) in mk.terms() {
            split.entry(ex.get(Var::S)).or_default().add_term(ex.with(Var::S, 0), c.clone());
        }
        let mut row = BTreeMap::new();
        for (s_exp, poly) in split {
            let r = frac.reduce_numerator(k, &poly)?;
            if !r.is_zero() {
                row.insert(s_exp, r);
            }
        }
        by_t.push(row);
    }
    let at_one_frac = SeriesFraction::new(interpolated.eval_var_one(Var::S), den, Var::Y, &binomials)?;
    let at_one = GenusResult::new(n, lattice.y_root, at_one_frac.to_ratfuncs()?);
    let points = samples.iter().map(|s| s.0.clone()).collect();
    let validation_counts = windows.iter().map(|w| samples.len() - w.width()).collect();
    Ok(EquivariantGenus {
        order,
        rank: n,
        lattice,
        xi: xi.clone(),
        by_t,
        at_one,
        log: SampleLog { points, windows, validation: validation_counts, widenings },
    })
}
