//! Fans, toric divisors and piecewise-linear functionals.

pub mod fixed_point;
pub mod linalg;
pub mod subdivision;

pub use fixed_point::{
    fixed_point_data, generic_subgroups, intersection_number, intersection_number_with, low_weight_subgroup,
    FixedPointData,
    OneParamSubgroup,
};
pub use subdivision::{resolve, resolve_surface, star_subdivide, Resolution, Subdivision};

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{int, Rational};

/// A simplicial fan: primitive rays in `Z^n` and maximal cones of `n` rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Checks the structural invariants: arity, primitivity, distinct rays,
    /// cone size and linear independence.
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::MalformedFan("rank must be positive".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::LengthMismatch { expected: rank, got: r.len() });
            }
            if linalg::gcd_all(r) != 1 {
                return Err(Error::NonPrimitiveRay { ray: i });
            }
        }
        let distinct: BTreeSet<&Vec<i64>> = rays.iter().collect();
        if distinct.len() != rays.len() {
            return Err(Error::MalformedFan("repeated ray".into()));
        }
        for (c, cone) in cones.iter().enumerate() {
            if cone.len() != rank {
                return Err(Error::MalformedCone {
                    cone: c,
                    reason: format!("has {} rays, expected {}", cone.len(), rank),
                });
            }
            if let Some(&i) = cone.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::MalformedCone { cone: c, reason: format!("unknown ray {}", i) });
            }
            let set: BTreeSet<usize> = cone.iter().copied().collect();
            if set.len() != cone.len() {
                return Err(Error::MalformedCone { cone: c, reason: "repeated ray".into() });
            }
        }
        let fan = Fan { rank, rays, cones };
        for c in 0..fan.cones.len() {
            if fan.cone_det(c) == 0 {
                return Err(Error::MalformedCone { cone: c, reason: "rays are linearly dependent".into() });
            }
        }
        let set: BTreeSet<BTreeSet<usize>> =
            fan.cones.iter().map(|c| c.iter().copied().collect()).collect();
        if set.len() != fan.cones.len() {
            return Err(Error::MalformedFan("repeated cone".into()));
        }
        Ok(fan)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn ray(&self, i: usize) -> &[i64] {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn cone_rays(&self, c: usize) -> Vec<&[i64]> {
        self.cones[c].iter().map(|&i| self.rays[i].as_slice()).collect()
    }

    /// Determinant of the matrix whose columns are the cone's rays.
    pub fn cone_det(&self, c: usize) -> i64 {
        let n = self.rank;
        let rows: Vec<Vec<i64>> =
            (0..n).map(|i| self.cones[c].iter().map(|&r| self.rays[r][i]).collect()).collect();
        linalg::det(&rows)
    }

    pub fn is_smooth(&self) -> bool {
        (0..self.cones.len()).all(|c| self.cone_det(c).abs() == 1)
    }

    pub fn is_complete(&self) -> bool {
        completeness(self)
    }

    pub fn require_smooth_complete(&self) -> Result<()> {
        if !self.is_smooth() {
            return Err(Error::NotSmooth);
        }
        if !self.is_complete() {
            return Err(Error::NotComplete);
        }
        Ok(())
    }

    /// Index of the cone with exactly these rays, in any order.
    pub fn find_cone(&self, rays: &[usize]) -> Option<usize> {
        let want: BTreeSet<usize> = rays.iter().copied().collect();
        self.cones.iter().position(|c| c.iter().copied().collect::<BTreeSet<_>>() == want)
    }

    pub fn find_ray(&self, v: &[i64]) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanReport {
    pub simplicial: bool,
    pub smooth: bool,
    pub complete: bool,
}

/// Smoothness and completeness of a structurally valid fan. Fans are
/// simplicial by construction.
pub fn validate_fan(fan: &Fan) -> FanReport {
    FanReport { simplicial: true, smooth: fan.is_smooth(), complete: fan.is_complete() }
}

fn completeness(fan: &Fan) -> bool {
    let n = fan.rank;
    // facet -> [(cone, opposite ray)]
    let mut facets: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, cone) in fan.cones.iter().enumerate() {
        for &opp in cone {
            let mut f: Vec<usize> = cone.iter().copied().filter(|&r| r != opp).collect();
            f.sort_unstable();
            facets.entry(f).or_default().push((c, opp));
        }
    }
    let mut adj = vec![Vec::new(); fan.cones.len()];
    for (facet, users) in &facets {
        if users.len() != 2 {
            return false;
        }
        let vs: Vec<&[i64]> = facet.iter().map(|&r| fan.rays[r].as_slice()).collect();
        let nrm = linalg::normal(&vs, n);
        let s0 = linalg::dot(&nrm, &fan.rays[users[0].1]).signum();
        let s1 = linalg::dot(&nrm, &fan.rays[users[1].1]).signum();
        if s0 * s1 != -1 {
            return false;
        }
        adj[users[0].0].push(users[1].0);
        adj[users[1].0].push(users[0].0);
    }
    if fan.cones.is_empty() {
        return false;
    }
    let mut seen = vec![false; fan.cones.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(c) = stack.pop() {
        for &d in &adj[c] {
            if !seen[d] {
                seen[d] = true;
                stack.push(d);
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        return false;
    }
    covering_degree(fan) == 1
}

/// Number of maximal cones containing a generic point in their interior.
fn covering_degree(fan: &Fan) -> usize {
    let n = fan.rank;
    let mut base = 7919i64;
    'retry: loop {
        let p: Vec<i64> = (0..n).map(|i| base.pow(i as u32) * if i % 2 == 0 { 1 } else { -1 }).collect();
        let mut count = 0;
        for c in 0..fan.cones.len() {
            let rays = fan.cone_rays(c);
            let Some(l) = linalg::coordinates(&rays, &p) else {
                return 0;
            };
            if l.iter().any(|x| x.is_zero()) {
                base += 2;
                continue 'retry;
            }
            if l.iter().all(linalg::is_positive) {
                count += 1;
            }
        }
        return count;
    }
}

/// Per-ray divisor coefficients `a_i`; the pair's `α_i = a_i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairCoefficients {
    a: Vec<Rational>,
}

impl PairCoefficients {
    pub fn new(fan: &Fan, a: Vec<Rational>) -> Result<Self> {
        if a.len() != fan.num_rays() {
            return Err(Error::LengthMismatch { expected: fan.num_rays(), got: a.len() });
        }
        Ok(PairCoefficients { a })
    }

    pub fn zero(fan: &Fan) -> Self {
        PairCoefficients { a: vec![Rational::zero(); fan.num_rays()] }
    }

    pub fn from_alpha(fan: &Fan, alpha: Vec<Rational>) -> Result<Self> {
        Self::new(fan, alpha.into_iter().map(|x| x - Rational::one()).collect())
    }

    pub fn from_ints(fan: &Fan, a: &[i64]) -> Result<Self> {
        Self::new(fan, a.iter().map(|&x| int(x)).collect())
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn alpha(&self) -> Vec<Rational> {
        self.a.iter().map(|x| x + Rational::one()).collect()
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub(crate) fn push(&mut self, v: Rational) {
        self.a.push(v);
    }

    /// Rejects coefficients equal to −1.
    pub fn require_not_log_canonical(&self) -> Result<()> {
        let minus_one = -Rational::one();
        match self.a.iter().position(|x| *x == minus_one) {
            Some(ray) => Err(Error::LogCanonicalCoefficient { ray }),
            None => Ok(()),
        }
    }
}

/// Values of a piecewise-linear functional on the rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunctional {
    pub values: Vec<Rational>,
}

impl PLFunctional {
    pub fn canonical(fan: &Fan) -> Self {
        PLFunctional { values: vec![-Rational::one(); fan.num_rays()] }
    }

    /// Values of the linear functional `f` on the rays.
    pub fn linear(fan: &Fan, f: &[i64]) -> Self {
        PLFunctional { values: fan.rays.iter().map(|r| int(linalg::dot(f, r))).collect() }
    }

    /// The global linear functional agreeing with these values, if any.
    pub fn as_linear(&self, fan: &Fan) -> Option<Vec<Rational>> {
        let rows: Vec<Vec<Rational>> = fan.rays.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        linalg::solve_consistent(&rows, &self.values, fan.rank)
    }
}

/// Whether the divisor with ray coefficients `c` is Q-linearly trivial, i.e.
/// `c` is the restriction of a single linear functional.
pub fn q_trivial(fan: &Fan, c: &[Rational]) -> Result<bool> {
    if c.len() != fan.num_rays() {
        return Err(Error::LengthMismatch { expected: fan.num_rays(), got: c.len() });
    }
    Ok(PLFunctional { values: c.to_vec() }.as_linear(fan).is_some())
}
