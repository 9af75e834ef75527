use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::{Exponent, LaurentPoly, QSeries, Rational, Var};
use crate::error::{Error, Result};

/// Inclusive exponent range `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty window");
        Window { lo, hi }
    }

    pub fn symmetric(r: i64) -> Self {
        Window::new(-r, r)
    }

    pub fn width(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn doubled(&self) -> Self {
        let w = self.width() as i64;
        let extra = (w + 1) / 2;
        Window::new(self.lo - extra, self.hi + extra)
    }
}

fn check_points(points: &[Rational]) -> Result<()> {
    let one = Rational::one();
    let mut seen = BTreeSet::new();
    for p in points {
        if p.is_zero() || *p == one || *p == -one.clone() || !seen.insert(p.clone()) {
            return Err(Error::BadSamplePoints);
        }
    }
    Ok(())
}

/// Fits `Σ_{e in window} c_e x^e` to the first `width` samples and checks
/// the rest. Returns the nonzero coefficients, or the index of the first
/// failing validation point.
fn fit_scalar(
    points: &[Rational],
    values: &[Rational],
    window: Window,
) -> std::result::Result<Vec<(i64, Rational)>, usize> {
    let w = window.width();
    // g(x) = x^{-lo} v(x) is a polynomial of degree < w.
    let g: Vec<Rational> = points
        .iter()
        .zip(values)
        .map(|(x, v)| v * super::rational_pow(x, -window.lo))
        .collect();
    // Newton divided differences on the first w points.
    let mut dd = g[..w].to_vec();
    for j in 1..w {
        for i in (j..w).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&points[i] - &points[i - j]);
        }
    }
    let newton_eval = |x: &Rational| {
        let mut acc = dd[w - 1].clone();
        for i in (0..w - 1).rev() {
            acc = acc * (x - &points[i]) + &dd[i];
        }
        acc
    };
    for (i, x) in points.iter().enumerate().skip(w) {
        if newton_eval(x) != g[i] {
            return Err(i);
        }
    }
    // Expand the Newton form into monomial coefficients.
    let mut c = vec![Rational::zero(); w];
    c[0] = dd[w - 1].clone();
    let mut deg = 0;
    for i in (0..w - 1).rev() {
        // c <- c * (x - points[i]) + dd[i]
        for k in (0..=deg + 1).rev() {
            let lower = if k > 0 { c[k - 1].clone() } else { Rational::zero() };
            let here = if k <= deg { &c[k] * &points[i] } else { Rational::zero() };
            c[k] = lower - here;
        }
        c[0] += &dd[i];
        deg += 1;
    }
    Ok(c
        .into_iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(k, a)| (k as i64 + window.lo, a))
        .collect())
}

/// Reconstructs a Laurent polynomial in `var` at every q-order from exact
/// samples. Each sample value must not involve `var`. The first `width`
/// samples determine the fit; at least `min_validation` further samples must
/// agree exactly.
pub fn interpolate_laurent(
    samples: &[(Rational, QSeries)],
    var: Var,
    window: Window,
    min_validation: usize,
) -> Result<QSeries> {
    let order = samples.first().map(|s| s.1.order()).unwrap_or(0);
    interpolate_laurent_by_order(samples, var, &vec![window; order + 1], min_validation)
}

/// As [`interpolate_laurent`] with a separate window per q-order. Samples
/// beyond `width + min_validation` at a given order are used as extra
/// validation points.
pub fn interpolate_laurent_by_order(
    samples: &[(Rational, QSeries)],
    var: Var,
    windows: &[Window],
    min_validation: usize,
) -> Result<QSeries> {
    let Some(first) = samples.first() else {
        return Err(Error::InsufficientSamples { needed: 1, got: 0 });
    };
    let order = first.1.order();
    if windows.len() != order + 1 {
        return Err(Error::LengthMismatch { expected: order + 1, got: windows.len() });
    }
    let points: Vec<Rational> = samples.iter().map(|s| s.0.clone()).collect();
    check_points(&points)?;
    let mut out = QSeries::zero(order);
    for (k, window) in windows.iter().enumerate() {
        let needed = window.width() + min_validation;
        if samples.len() < needed {
            return Err(Error::InsufficientSamples { needed, got: samples.len() });
        }
        let mut by_mono: BTreeMap<Exponent, Vec<Rational>> = BTreeMap::new();
        for (idx, (_, v)) in samples.iter().enumerate() {
            if v.order() != order {
                return Err(Error::OrderMismatch { left: order, right: v.order() });
            }
            for (e, c) in v.coeff(k).terms() {
                if e.get(var) != 0 {
                    return Err(Error::Internal("sample already involves the variable".into()));
                }
                by_mono
                    .entry(*e)
                    .or_insert_with(|| vec![Rational::zero(); samples.len()])[idx] = c.clone();
            }
        }
        let mut poly = LaurentPoly::zero();
        for (e, values) in by_mono {
            let fit = fit_scalar(&points, &values, *window).map_err(|i| {
                Error::InterpolationInconsistent { order: k, point: points[i].to_string() }
            })?;
            for (x, c) in fit {
                poly.add_term(e.with(var, x), c);
            }
        }
        out.set_coeff(k, poly);
    }
    Ok(out)
}
