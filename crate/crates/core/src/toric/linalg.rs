use num_traits::{One, Signed, Zero};

use crate::series::{int, Rational};

/// Determinant of a square integer matrix given by rows (Bareiss elimination).
pub fn det(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]) as i64
}

/// Solves `A x = b` for square invertible `A` given by rows.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        let inv = m[k][k].recip();
        for j in k..=n {
            m[k][j] = &m[k][j] * &inv;
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in k..=n {
                    let t = &f * &m[k][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Coordinates of `x` in the basis given by `cols`.
pub fn coordinates(cols: &[&[i64]], x: &[i64]) -> Option<Vec<Rational>> {
    let n = x.len();
    let rows: Vec<Vec<Rational>> = (0..n).map(|i| cols.iter().map(|c| int(c[i])).collect()).collect();
    let rhs: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
    solve(&rows, &rhs)
}

/// A solution of the possibly overdetermined system `A x = b`, if consistent.
pub fn solve_consistent(rows: &[Vec<Rational>], rhs: &[Rational], unknowns: usize) -> Option<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for j in col..=unknowns {
            m[row][j] = &m[row][j] * &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=unknowns {
                    let t = &f * &m[row][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][unknowns].clone();
    }
    Some(x)
}

/// Integer normal to the hyperplane spanned by `n - 1` vectors in `Z^n`
/// (generalized cross product via cofactors).
pub fn normal(vectors: &[&[i64]], n: usize) -> Vec<i64> {
    (0..n)
        .map(|i| {
            let minor: Vec<Vec<i64>> = vectors
                .iter()
                .map(|v| (0..n).filter(|&j| j != i).map(|j| v[j]).collect())
                .collect();
            let d = det(&minor);
            if (i + n - 1) % 2 == 0 { d } else { -d }
        })
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x))
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}

pub fn is_in_unit_interval(x: &Rational) -> bool {
    !x.is_negative() && *x < Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![1, 0], vec![0, 1]]), 1);
        assert_eq!(det(&[vec![1, -1], vec![0, -2]]), -2);
        assert_eq!(det(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]), -1);
        assert_eq!(det(&[vec![2, 4], vec![1, 2]]), 0);
    }

    #[test]
    fn normals_are_orthogonal() {
        let a = [1i64, 2, 3];
        let b = [0i64, 1, -1];
        let nrm = normal(&[&a, &b], 3);
        assert_eq!(dot(&nrm, &a), 0);
        assert_eq!(dot(&nrm, &b), 0);
        assert_ne!(nrm, vec![0, 0, 0]);
        assert_eq!(normal(&[], 1), vec![1]);
        assert_eq!(dot(&normal(&[&[1, 0]], 2), &[0, 1]).abs(), 1);
    }

    #[test]
    fn coordinates_in_cone_basis() {
        let c = coordinates(&[&[1, 0], &[-1, -2]], &[0, -1]).unwrap();
        assert_eq!(c, vec![crate::series::rat(1, 2), crate::series::rat(1, 2)]);
    }

    #[test]
    fn consistency() {
        let rows = vec![vec![int(1)], vec![int(-1)]];
        assert_eq!(solve_consistent(&rows, &[int(3), int(-3)], 1), Some(vec![int(3)]));
        assert_eq!(solve_consistent(&rows, &[int(1), int(0)], 1), None);
    }
}
