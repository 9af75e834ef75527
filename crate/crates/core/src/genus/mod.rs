//! Elliptic genus of a smooth complete toric pair.
//!
//! The non-equivariant pipeline localizes the Chern-root integrand
//! `Π_i f(x_i; α_i)`, `f(x; α) = x Θ'(1) Θ(e^x y^{-α}) / (Θ(e^x) Θ(y^{-α}))`,
//! at the fixed points of a generic circle and multiplies by
//! `(Θ(y^{-1}) / Θ'(1))^n`, which makes the `q^0` term `y^{-n/2} χ_{-y}`.
//! The equivariant pipeline lives in [`equivariant`].

pub mod checks;
pub mod equivariant;

pub use checks::{
    check_rigidity, check_vanishing_cy, specialize, verify_blowup_invariance, BlowupReport, RigidityReport,
    Specialization, SpecializationKind, VanishingReport,
};
pub use equivariant::{ell_pair_equivariant, EquivariantGenus, SampleLog};

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::par;
use crate::series::{
    int, Exponent, Lattice, LaurentPoly, NilTaylor, QSeries, RatFunc1, Rational, SeriesFraction, Var,
};
use crate::theta::{eta_sq, theta_half_exponent, theta_nilpotent_half};
use crate::toric::{generic_subgroups, FixedPointData, Fan, PairCoefficients};

pub const NORMALIZATION: &str = "theta-block; (Θ(y^-1)/Θ'(1))^n prefactor; q^0 = y^{-n/2}·χ_{-y}";

/// Elliptic genus as a canonical rational function of `y` at every q-order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenusResult {
    order: usize,
    rank: usize,
    lattice: Lattice,
    coeffs: Vec<RatFunc1>,
}

impl GenusResult {
    /// Canonicalizes the `y`-root so that equal genera compare equal.
    pub fn new(rank: usize, y_root: i64, coeffs: Vec<RatFunc1>) -> Self {
        let g = coeffs.iter().fold(y_root, |g, c| num_integer::gcd(g, c.exponent_gcd()));
        let coeffs = coeffs.iter().map(|c| c.deflate(g)).collect::<Vec<_>>();
        GenusResult {
            order: coeffs.len() - 1,
            rank,
            lattice: Lattice { y_root: y_root / g, w_root: 1 },
            coeffs,
        }
    }

    pub fn zero(rank: usize, order: usize) -> Self {
        Self::new(rank, 1, vec![RatFunc1::zero(); order + 1])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `ŷ^{y_root} = y` for the stored coefficients.
    pub fn y_root(&self) -> i64 {
        self.lattice.y_root
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn coeffs(&self) -> &[RatFunc1] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &RatFunc1 {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// First nonzero q-order.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// The series as Laurent polynomials in `ŷ`, if every coefficient is one.
    pub fn as_qseries(&self) -> Option<QSeries> {
        let c: Option<Vec<LaurentPoly>> = self.coeffs.iter().map(|r| r.as_laurent(Var::Y)).collect();
        c.map(|c| QSeries::from_coeffs(self.order, c))
    }

    pub fn render_coeff(&self, k: usize) -> String {
        self.coeffs[k].render(Var::Y, &self.lattice)
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for k in 0..=self.order {
            if self.coeffs[k].is_zero() {
                continue;
            }
            let body = self.render_coeff(k);
            parts.push(match k {
                0 => format!("({})", body),
                1 => format!("({})*q", body),
                _ => format!("({})*q^{}", body, k),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        format!("{} + O(q^{})", parts.join(" + "), self.order + 1)
    }

    pub fn truncate(&self, order: usize) -> Self {
        GenusResult::new(self.rank, self.lattice.y_root, self.coeffs[..=order].to_vec())
    }
}

/// Per-ray data shared by the localization sums.
pub(crate) struct RayData {
    /// Internal exponent of `Y_i^{1/2}` where `Y_i = y^{-α_i} w^{-b_i}`.
    pub half: Vec<Exponent>,
    /// `Θ(Y_i)`.
    pub theta: Vec<QSeries>,
}

impl RayData {
    pub fn new(alpha: &[Rational], b: Option<&[Rational]>, lattice: &Lattice, order: usize) -> Result<Self> {
        let half: Vec<Exponent> = alpha
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let w = b.map(|b| -b[i].clone()).unwrap_or_else(Rational::zero);
                lattice.exponent(&int(0), &(-a.clone() / int(2)), &(w / int(2)))
            })
            .collect::<Result<_>>()?;
        let theta = par::try_map(&half, |h| theta_half_exponent(*h, order))?;
        Ok(RayData { half, theta })
    }

    pub fn denominator(&self, order: usize) -> QSeries {
        self.theta.iter().fold(QSeries::one(order), |acc, t| &acc * t)
    }

    /// Binomial degrees of the `ŷ`-only `q^0` factors of `Θ(Y_i)`.
    pub fn y_binomials(&self) -> Vec<usize> {
        self.half.iter().map(|h| 2 * h.get(Var::Y).unsigned_abs() as usize).collect()
    }
}

/// `(Θ(e^{mu}) / u)^{-1}` to nilpotency `n`.
fn inverse_theta_over_u(m: i64, n: usize, order: usize) -> Result<NilTaylor> {
    theta_nilpotent_half(Exponent::ZERO, &int(m), n + 1, order).div_u()?.inverse()
}

/// Localization sums `S_k = Σ_σ coeff_{u^k}[Π_{j∈σ} φ_j] Π_{i∉σ} Θ(Y_i) / Π_j m_j(σ)`
/// for `k = 0..=n`, with `φ_j(u) = Θ'(1) m_j u Θ(e^{m_j u} Y_j) / Θ(e^{m_j u})`.
/// `S_n / Π_i Θ(Y_i)` is the fixed-point integral; `S_k` vanishes for `k < n`.
pub(crate) fn localization_sums(
    fan: &Fan,
    rays: &RayData,
    data: &FixedPointData,
    order: usize,
) -> Result<Vec<QSeries>> {
    let n = fan.rank();
    let eta = eta_sq(order);
    let mut weights: Vec<i64> = data.tangent.iter().flatten().copied().collect();
    weights.sort_unstable();
    weights.dedup();
    let inv: BTreeMap<i64, NilTaylor> = weights
        .iter()
        .copied()
        .zip(par::try_map(&weights, |&m| inverse_theta_over_u(m, n, order))?)
        .collect();
    let cones: Vec<usize> = (0..fan.cones().len()).collect();
    let per_cone = par::map(&cones, |&c| {
        let cone = &fan.cones()[c];
        let mut prod = NilTaylor::constant(n, QSeries::one(order));
        for (j, &r) in cone.iter().enumerate() {
            let m = data.tangent[c][j];
            let a = theta_nilpotent_half(rays.half[r], &int(m), n, order);
            let phi = a.mul(&inv[&m]).mul_series(&eta.scale(&int(m)));
            prod = prod.mul(&phi);
        }
        let mut outside = QSeries::one(order);
        for i in (0..fan.num_rays()).filter(|i| !cone.contains(i)) {
            outside = &outside * &rays.theta[i];
        }
        let w = int(data.weight_product(c)).recip();
        (0..=n).map(|k| (prod.coeff(k) * &outside).scale(&w)).collect::<Vec<_>>()
    });
    let mut sums = vec![QSeries::zero(order); n + 1];
    for terms in per_cone {
        for (k, t) in terms.iter().enumerate() {
            sums[k] += t;
        }
    }
    Ok(sums)
}

/// `(Θ(y^{-1}) / Θ'(1))^n`.
pub(crate) fn index_prefactor(n: usize, lattice: &Lattice, order: usize) -> Result<QSeries> {
    let h = Exponent::single(Var::Y, -lattice.y_root / 2);
    let ratio = &theta_half_exponent(h, order)? * &eta_sq(order).inv_q()?;
    Ok(ratio.pow(n as u32))
}

pub(crate) fn pair_lattice(pair: &PairCoefficients) -> Lattice {
    Lattice::for_coefficients(pair.a().iter(), std::iter::empty())
}

pub(crate) fn check_pair(fan: &Fan, pair: &PairCoefficients) -> Result<()> {
    fan.require_smooth_complete()?;
    if pair.len() != fan.num_rays() {
        return Err(Error::LengthMismatch { expected: fan.num_rays(), got: pair.len() });
    }
    pair.require_not_log_canonical()
}

/// Numerator and denominator of the genus for one choice of fixed-point data.
pub(crate) fn genus_fraction(
    fan: &Fan,
    pair: &PairCoefficients,
    data: &FixedPointData,
    order: usize,
) -> Result<(SeriesFraction, Lattice)> {
    let lattice = pair_lattice(pair);
    let rays = RayData::new(&pair.alpha(), None, &lattice, order)?;
    let sums = localization_sums(fan, &rays, data, order)?;
    let num = &index_prefactor(fan.rank(), &lattice, order)? * &sums[fan.rank()];
    let frac = SeriesFraction::new(num, rays.denominator(order), Var::Y, &rays.y_binomials())?;
    Ok((frac, lattice))
}

/// The genus computed with the given fixed-point data.
pub fn ell_pair_with(fan: &Fan, pair: &PairCoefficients, data: &FixedPointData, order: usize) -> Result<GenusResult> {
    check_pair(fan, pair)?;
    let (frac, lattice) = genus_fraction(fan, pair, data, order)?;
    Ok(GenusResult::new(fan.rank(), lattice.y_root, frac.to_ratfuncs()?))
}

/// `Ell(X, D)` by nilpotent localization, checked for independence of the
/// generic subgroup used.
pub fn ell_pair(fan: &Fan, pair: &PairCoefficients, order: usize) -> Result<GenusResult> {
    check_pair(fan, pair)?;
    let data = generic_subgroups(fan, 2)?;
    let a = ell_pair_with(fan, pair, &data[0], order)?;
    let b = ell_pair_with(fan, pair, &data[1], order)?;
    if a != b {
        return Err(Error::Internal("genus depends on the choice of subgroup".into()));
    }
    Ok(a)
}

/// The sums `S_k` for `k < n` (all zero on complete fans).
pub fn localization_cancellation(
    fan: &Fan,
    pair: &PairCoefficients,
    data: &FixedPointData,
    order: usize,
) -> Result<Vec<QSeries>> {
    check_pair(fan, pair)?;
    let lattice = pair_lattice(pair);
    let rays = RayData::new(&pair.alpha(), None, &lattice, order)?;
    let mut sums = localization_sums(fan, &rays, data, order)?;
    sums.truncate(fan.rank());
    Ok(sums)
}

#[cfg(test)]
mod tests;
