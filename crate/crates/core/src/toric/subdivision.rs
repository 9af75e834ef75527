use num_traits::{One, Signed, Zero};

use super::{linalg, Fan, PairCoefficients};
use crate::error::{Error, Result};
use crate::series::Rational;

/// One star subdivision: the inserted ray, the face it subdivides, and its
/// barycentric coordinates in that face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub new_ray: Vec<i64>,
    pub new_index: usize,
    pub support: Vec<usize>,
    pub lambdas: Vec<Rational>,
    pub a_new: Rational,
}

impl Subdivision {
    /// `Σ λ_i c_i` over the support, for propagating auxiliary coefficients.
    pub fn combine(&self, c: &[Rational]) -> Rational {
        self.support.iter().zip(&self.lambdas).map(|(&i, l)| l * &c[i]).sum()
    }
}

/// The face of the fan containing `v` in its relative interior, with the
/// positive coordinates of `v` in that face.
pub fn locate(fan: &Fan, v: &[i64]) -> Option<(Vec<usize>, Vec<Rational>)> {
    for c in 0..fan.cones().len() {
        let l = linalg::coordinates(&fan.cone_rays(c), v)?;
        if l.iter().all(|x| !x.is_negative()) {
            let (support, lambdas) = fan.cones()[c]
                .iter()
                .zip(l)
                .filter(|(_, x)| !x.is_zero())
                .map(|(&i, x)| (i, x))
                .unzip();
            return Some((support, lambdas));
        }
    }
    None
}

/// Inserts `new_ray` and replaces every maximal cone containing its
/// supporting face by the star subdivision. The new coefficient satisfies
/// `1 + a_new = Σ λ_i (1 + a_i)`.
pub fn star_subdivide(
    fan: &Fan,
    pair: &PairCoefficients,
    new_ray: &[i64],
) -> Result<(Fan, PairCoefficients, Subdivision)> {
    if new_ray.len() != fan.rank() {
        return Err(Error::LengthMismatch { expected: fan.rank(), got: new_ray.len() });
    }
    if linalg::gcd_all(new_ray) != 1 {
        return Err(Error::NonPrimitiveRay { ray: fan.num_rays() });
    }
    let (support, lambdas) = locate(fan, new_ray).ok_or_else(|| Error::NotInterior(new_ray.to_vec()))?;
    if support.len() < 2 {
        return Err(Error::NotInterior(new_ray.to_vec()));
    }
    let new_index = fan.num_rays();
    let mut cones = Vec::new();
    for cone in fan.cones() {
        if support.iter().all(|r| cone.contains(r)) {
            for r in &support {
                cones.push(cone.iter().map(|x| if x == r { new_index } else { *x }).collect());
            }
        } else {
            cones.push(cone.clone());
        }
    }
    let mut rays = fan.rays().to_vec();
    rays.push(new_ray.to_vec());
    let new_fan = Fan::new(fan.rank(), rays, cones)?;
    let alpha = pair.alpha();
    let a_new: Rational =
        support.iter().zip(&lambdas).map(|(&i, l)| l * &alpha[i]).sum::<Rational>() - Rational::one();
    let mut new_pair = pair.clone();
    new_pair.push(a_new.clone());
    Ok((
        new_fan,
        new_pair,
        Subdivision { new_ray: new_ray.to_vec(), new_index, support, lambdas, a_new },
    ))
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub fan: Fan,
    pub pair: PairCoefficients,
    pub chain: Vec<Subdivision>,
}

/// Nonzero lattice point of the half-open parallelepiped of a cone that
/// minimizes the sum of its coordinates (ties broken lexicographically).
fn best_parallelepiped_point(fan: &Fan, c: usize) -> Option<Vec<i64>> {
    let rays = fan.cone_rays(c);
    let n = fan.rank();
    let lo: Vec<i64> = (0..n).map(|i| rays.iter().map(|r| r[i].min(0)).sum()).collect();
    let hi: Vec<i64> = (0..n).map(|i| rays.iter().map(|r| r[i].max(0)).sum()).collect();
    let mut best: Option<(Rational, Vec<i64>)> = None;
    let mut p = lo.clone();
    loop {
        if p.iter().any(|&x| x != 0) {
            if let Some(t) = linalg::coordinates(&rays, &p) {
                if t.iter().all(linalg::is_in_unit_interval) {
                    let s: Rational = t.iter().sum();
                    if best.as_ref().is_none_or(|(bs, bp)| s < *bs || (s == *bs && p < *bp)) {
                        best = Some((s, p.clone()));
                    }
                }
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return best.map(|b| b.1);
            }
            if p[i] < hi[i] {
                p[i] += 1;
                break;
            }
            p[i] = lo[i];
            i += 1;
        }
    }
}

/// Greedy resolution in any rank: repeatedly insert the minimal
/// parallelepiped point of the first non-smooth cone. Gives up after
/// `max_steps` insertions.
pub fn resolve(fan: &Fan, pair: &PairCoefficients, max_steps: usize) -> Result<Resolution> {
    let mut fan = fan.clone();
    let mut pair = pair.clone();
    let mut chain = Vec::new();
    loop {
        let Some(c) = (0..fan.cones().len()).find(|&c| fan.cone_det(c).abs() != 1) else {
            return Ok(Resolution { fan, pair, chain });
        };
        if chain.len() >= max_steps {
            return Err(Error::ResolutionFailed(fan.rank()));
        }
        let p = best_parallelepiped_point(&fan, c).ok_or(Error::ResolutionFailed(fan.rank()))?;
        let (f, a, s) = star_subdivide(&fan, &pair, &p)?;
        fan = f;
        pair = a;
        chain.push(s);
    }
}

/// Resolution of a complete simplicial rank-2 fan.
pub fn resolve_surface(fan: &Fan, pair: &PairCoefficients) -> Result<Resolution> {
    if fan.rank() != 2 {
        return Err(Error::UnsupportedRank(fan.rank()));
    }
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    // |det| strictly decreases along each chain of insertions, so the total
    // number of steps is bounded by the sum of the determinants.
    let bound: i64 = (0..fan.cones().len()).map(|c| fan.cone_det(c).abs()).sum();
    resolve(fan, pair, bound as usize)
}
