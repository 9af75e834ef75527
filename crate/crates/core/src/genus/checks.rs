use num_traits::{One, Zero};

use super::{ell_pair, ell_pair_equivariant, EquivariantGenus, GenusResult};
use crate::error::{Error, Result};
use crate::series::{Rational, Var};
use crate::toric::{low_weight_subgroup, q_trivial, star_subdivide, Fan, PairCoefficients};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    /// `t`-exponents with nonzero coefficient, per q-order.
    pub support: Vec<Vec<Rational>>,
    pub rigid: bool,
}

/// Rigid when every q-order has `t`-support within `{0}`.
pub fn check_rigidity(eq: &EquivariantGenus) -> RigidityReport {
    let support = eq.t_support();
    let rigid = support.iter().all(|s| s.iter().all(|e| e.is_zero()));
    RigidityReport { support, rigid }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    /// `α` is the restriction of a linear functional.
    pub calabi_yau: bool,
    pub genus_zero: bool,
    pub equivariant_zero: Option<bool>,
    /// First nonzero q-order and its coefficient, when the genus is nonzero.
    pub witness: Option<(usize, String)>,
    /// The implication "Calabi–Yau ⇒ both pipelines vanish".
    pub holds: bool,
}

pub fn check_vanishing_cy(
    fan: &Fan,
    pair: &PairCoefficients,
    order: usize,
    validation: usize,
) -> Result<VanishingReport> {
    let calabi_yau = q_trivial(fan, &pair.alpha())?;
    let g = ell_pair(fan, pair, order)?;
    let witness = g.first_nonzero().map(|k| (k, g.render_coeff(k)));
    let equivariant_zero = if calabi_yau {
        let data = low_weight_subgroup(fan)?;
        Some(ell_pair_equivariant(fan, pair, &data.xi, order, validation)?.is_zero())
    } else {
        None
    };
    let genus_zero = g.is_zero();
    let holds = !calabi_yau || (genus_zero && equivariant_zero == Some(true));
    Ok(VanishingReport { calabi_yau, genus_zero, equivariant_zero, witness, holds })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecializationKind {
    ChiY,
    Euler,
    Todd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// Coefficients of `χ_y`, lowest degree first.
    ChiY(Vec<Rational>),
    Number(Rational),
}

/// `χ_y = y^{n/2} · (q^0 coefficient)`; Euler number `χ_y(1)`; Todd genus `χ_y(0)`.
pub fn chi_y(g: &GenusResult) -> Result<Vec<Rational>> {
    let c0 = g.coeff(0);
    let bad = || Error::ChiYNotPolynomial(g.render_coeff(0));
    let p = c0.as_laurent(Var::Y).ok_or_else(bad)?;
    let root = g.y_root();
    let shift = g.rank() as i64 * root / 2;
    if (g.rank() as i64 * root) % 2 != 0 {
        return Err(bad());
    }
    let mut out: Vec<Rational> = Vec::new();
    for (e, c) in p.terms() {
        let ex = e.get(Var::Y) + shift;
        if ex < 0 || ex % root != 0 {
            return Err(bad());
        }
        let d = (ex / root) as usize;
        if out.len() <= d {
            out.resize(d + 1, Rational::zero());
        }
        out[d] = c.clone();
    }
    Ok(out)
}

pub fn specialize(g: &GenusResult, which: SpecializationKind) -> Result<Specialization> {
    let chi = chi_y(g)?;
    Ok(match which {
        SpecializationKind::ChiY => Specialization::ChiY(chi),
        SpecializationKind::Euler => Specialization::Number(chi.iter().sum()),
        SpecializationKind::Todd => Specialization::Number(chi.first().cloned().unwrap_or_else(Rational::zero)),
    })
}

#[derive(Clone, Debug)]
pub struct BlowupReport {
    /// Discrepancy of the exceptional ray.
    pub m: Rational,
    pub new_ray: Vec<i64>,
    pub before: GenusResult,
    pub after: GenusResult,
    pub equal: bool,
}

/// Blows up the face spanned by `subset` of `cone` and compares genera.
pub fn verify_blowup_invariance(
    fan: &Fan,
    pair: &PairCoefficients,
    cone: &[usize],
    subset: &[usize],
    order: usize,
) -> Result<BlowupReport> {
    if fan.find_cone(cone).is_none() {
        return Err(Error::MalformedCone { cone: usize::MAX, reason: format!("{:?} is not a maximal cone", cone) });
    }
    if subset.len() < 2 || !subset.iter().all(|r| cone.contains(r)) {
        return Err(Error::MalformedCone {
            cone: usize::MAX,
            reason: format!("{:?} does not span a face of {:?} of dimension at least 2", subset, cone),
        });
    }
    let new_ray: Vec<i64> =
        (0..fan.rank()).map(|k| subset.iter().map(|&r| fan.ray(r)[k]).sum()).collect();
    let (fan2, pair2, sub) = star_subdivide(fan, pair, &new_ray)?;
    if sub.a_new == -Rational::one() {
        return Err(Error::LogCanonicalCoefficient { ray: sub.new_index });
    }
    let before = ell_pair(fan, pair, order)?;
    let after = ell_pair(&fan2, &pair2, order)?;
    let equal = before == after;
    Ok(BlowupReport { m: sub.a_new, new_ray, before, after, equal })
}
