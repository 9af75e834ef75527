use num_traits::Zero;

use super::{linalg, Fan};
use crate::error::{Error, Result};
use crate::series::{int, Rational};

/// A cocharacter `ξ ∈ Z^n` selecting a circle action.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneParamSubgroup {
    xi: Vec<i64>,
}

impl OneParamSubgroup {
    pub fn new(xi: Vec<i64>) -> Result<Self> {
        if xi.iter().all(|&x| x == 0) {
            return Err(Error::MalformedFan("one-parameter subgroup must be nonzero".into()));
        }
        Ok(OneParamSubgroup { xi })
    }

    /// `(1, M, M^2, ...)`.
    pub fn powers(m: i64, rank: usize) -> Self {
        OneParamSubgroup { xi: (0..rank as u32).map(|k| m.pow(k)).collect() }
    }

    pub fn xi(&self) -> &[i64] {
        &self.xi
    }
}

/// Tangent weights `m_j(σ)` and divisor weights `d_i(σ)` at every fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointData {
    pub xi: OneParamSubgroup,
    /// Per cone, in the order of the cone's rays.
    pub tangent: Vec<Vec<i64>>,
    /// Per cone, one entry per ray of the fan.
    pub divisor: Vec<Vec<i64>>,
}

impl FixedPointData {
    pub fn weight_product(&self, c: usize) -> i64 {
        self.tangent[c].iter().product()
    }

    pub fn max_abs_weight(&self) -> i64 {
        self.tangent.iter().flatten().map(|m| m.abs()).max().unwrap_or(0)
    }
}

/// Weights of the circle action at each fixed point. `m(σ)` are the
/// coordinates of `ξ` in the basis of σ's rays.
pub fn fixed_point_data(fan: &Fan, xi: &OneParamSubgroup) -> Result<FixedPointData> {
    fan.require_smooth_complete()?;
    if xi.xi.len() != fan.rank() {
        return Err(Error::LengthMismatch { expected: fan.rank(), got: xi.xi.len() });
    }
    let mut tangent = Vec::with_capacity(fan.cones().len());
    let mut divisor = Vec::with_capacity(fan.cones().len());
    for (c, cone) in fan.cones().iter().enumerate() {
        let coords = linalg::coordinates(&fan.cone_rays(c), &xi.xi)
            .ok_or_else(|| Error::Internal("singular cone basis".into()))?;
        let m: Vec<i64> = coords
            .iter()
            .map(|x| {
                debug_assert!(x.is_integer());
                num_traits::ToPrimitive::to_i64(&x.to_integer()).expect("weight fits in i64")
            })
            .collect();
        if m.contains(&0) {
            return Err(Error::NonGenericSubgroup { xi: xi.xi.clone(), cone: c });
        }
        let mut d = vec![0; fan.num_rays()];
        for (j, &r) in cone.iter().enumerate() {
            d[r] = m[j];
        }
        tangent.push(m);
        divisor.push(d);
    }
    Ok(FixedPointData { xi: xi.clone(), tangent, divisor })
}

const RETRY_BASES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// The first `count` generic subgroups of the sequence `ξ = (1, M, M², …)`
/// with `M = 2, 3, 5, …`.
pub fn generic_subgroups(fan: &Fan, count: usize) -> Result<Vec<FixedPointData>> {
    fan.require_smooth_complete()?;
    let mut out = Vec::new();
    for &m in &RETRY_BASES {
        match fixed_point_data(fan, &OneParamSubgroup::powers(m, fan.rank())) {
            Ok(d) => out.push(d),
            Err(Error::NonGenericSubgroup { .. }) => continue,
            Err(e) => return Err(e),
        }
        if out.len() == count {
            return Ok(out);
        }
    }
    Err(Error::NoGenericSubgroup)
}

const LOW_WEIGHT_BOX: i64 = 3;

/// A generic subgroup minimizing the largest tangent weight (then the total
/// weight), searched over `ξ ∈ [-3, 3]^n` up to sign. Falls back to
/// [`generic_subgroups`] when the box contains none.
pub fn low_weight_subgroup(fan: &Fan) -> Result<FixedPointData> {
    fan.require_smooth_complete()?;
    let n = fan.rank();
    let side = (2 * LOW_WEIGHT_BOX + 1) as usize;
    let mut best: Option<((i64, i64), FixedPointData)> = None;
    for idx in 0..side.pow(n as u32) {
        let xi: Vec<i64> =
            (0..n).map(|k| (idx / side.pow(k as u32) % side) as i64 - LOW_WEIGHT_BOX).collect();
        match xi.iter().find(|&&x| x != 0) {
            Some(&x) if x > 0 => {}
            _ => continue,
        }
        let Ok(d) = fixed_point_data(fan, &OneParamSubgroup { xi }) else { continue };
        let key = (d.max_abs_weight(), d.tangent.iter().flatten().map(|m| m.abs()).sum());
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, d));
        }
    }
    match best {
        Some((_, d)) => Ok(d),
        None => generic_subgroups(fan, 1).map(|mut v| v.remove(0)),
    }
}

/// `Σ_σ Π_k d_{i_k}(σ) / Π_j m_j(σ)` for one choice of fixed-point data.
pub fn intersection_number_with(data: &FixedPointData, rays: &[usize]) -> Rational {
    let mut total = Rational::zero();
    for c in 0..data.tangent.len() {
        let num: i64 = rays.iter().map(|&i| data.divisor[c][i]).product();
        if num != 0 {
            total += Rational::new(num.into(), data.weight_product(c).into());
        }
    }
    total
}

/// Intersection number of the toric divisors `D_{i_1} ⋯ D_{i_n}`, computed by
/// localization under two distinct generic subgroups that must agree.
pub fn intersection_number(fan: &Fan, rays: &[usize]) -> Result<Rational> {
    if rays.len() != fan.rank() {
        return Err(Error::LengthMismatch { expected: fan.rank(), got: rays.len() });
    }
    if let Some(&i) = rays.iter().find(|&&i| i >= fan.num_rays()) {
        return Err(Error::MalformedFan(format!("unknown ray {}", i)));
    }
    let data = generic_subgroups(fan, 2)?;
    let a = intersection_number_with(&data[0], rays);
    let b = intersection_number_with(&data[1], rays);
    if a != b {
        return Err(Error::Internal(format!("intersection number depends on ξ: {} vs {}", a, b)));
    }
    Ok(a)
}

/// `Σ_σ 1 / Π_j m_j(σ)`, which vanishes for complete fans of positive rank.
pub fn degree_zero_sum(data: &FixedPointData) -> Rational {
    (0..data.tangent.len()).map(|c| int(data.weight_product(c)).recip()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fans;
    use proptest::prelude::*;

    #[test]
    fn p1_weights() {
        let d = fixed_point_data(&fans::p1(), &OneParamSubgroup::new(vec![1]).unwrap()).unwrap();
        assert_eq!(d.tangent, vec![vec![1], vec![-1]]);
    }

    #[test]
    fn p2_weights() {
        let f = fans::p2();
        let d = fixed_point_data(&f, &OneParamSubgroup::new(vec![1, 2]).unwrap()).unwrap();
        assert_eq!(d.tangent, vec![vec![1, 2], vec![1, -1], vec![-2, -1]]);
        assert_eq!(d.divisor[1], vec![0, 1, -1]);
        let err = fixed_point_data(&f, &OneParamSubgroup::new(vec![1, 1]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NonGenericSubgroup { cone: 1, .. }));
    }

    #[test]
    fn intersection_numbers() {
        assert_eq!(intersection_number(&fans::p2(), &[0, 1]).unwrap(), int(1));
        assert_eq!(intersection_number(&fans::p2(), &[0, 0]).unwrap(), int(1));
        assert_eq!(intersection_number(&fans::p1xp1(), &[0, 0]).unwrap(), int(0));
        assert_eq!(intersection_number(&fans::p1xp1(), &[0, 1]).unwrap(), int(0));
        assert_eq!(intersection_number(&fans::p1xp1(), &[0, 2]).unwrap(), int(1));
        assert_eq!(intersection_number(&fans::f2(), &[3, 3]).unwrap(), int(-2));
        assert_eq!(intersection_number(&fans::p1cubed(), &[0, 2, 4]).unwrap(), int(1));
    }

    #[test]
    fn degree_zero_cancellation() {
        for (name, fan) in fans::acceptance_fans() {
            for d in generic_subgroups(&fan, 2).unwrap() {
                assert!(degree_zero_sum(&d).is_zero(), "{name}");
            }
        }
    }

    #[test]
    fn low_weight_choices() {
        assert_eq!(low_weight_subgroup(&fans::p1cubed()).unwrap().max_abs_weight(), 1);
        assert_eq!(low_weight_subgroup(&fans::p2()).unwrap().max_abs_weight(), 2);
        for (name, fan) in fans::acceptance_fans() {
            let d = low_weight_subgroup(&fan).unwrap();
            assert!(d.tangent.iter().flatten().all(|m| *m != 0), "{name}");
            assert!(degree_zero_sum(&d).is_zero(), "{name}");
        }
    }

    #[test]
    fn rejects_singular_fan() {
        assert!(matches!(
            fixed_point_data(&fans::p112(), &OneParamSubgroup::new(vec![1, 2]).unwrap()),
            Err(Error::NotSmooth)
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn intersections_agree_under_random_generic_xi(
            which in 0usize..5,
            xi in prop::collection::vec(-9i64..=9, 3),
            pick in prop::collection::vec(0usize..6, 3),
        ) {
            let (_, fan) = fans::acceptance_fans().swap_remove(which);
            let n = fan.rank();
            let xi = OneParamSubgroup::new(xi[..n].to_vec());
            prop_assume!(xi.is_ok());
            let d = fixed_point_data(&fan, &xi.unwrap());
            prop_assume!(d.is_ok());
            let rays: Vec<usize> = pick[..n].iter().map(|&p| p % fan.num_rays()).collect();
            prop_assert_eq!(
                intersection_number_with(&d.unwrap(), &rays),
                intersection_number(&fan, &rays).unwrap()
            );
        }
    }
}
