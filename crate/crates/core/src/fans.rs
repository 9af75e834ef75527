//! Standard fans used throughout the tests and the verification suite.

use crate::toric::Fan;

fn fan(rank: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
    Fan::new(
        rank,
        rays.iter().map(|r| r.to_vec()).collect(),
        cones.iter().map(|c| c.to_vec()).collect(),
    )
    .expect("standard fan is well formed")
}

pub fn p1() -> Fan {
    fan(1, &[&[1], &[-1]], &[&[0], &[1]])
}

/// Rays `e1, e2, -e1-e2`.
pub fn p2() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 0]])
}

/// Rays `e1, -e1, e2, -e2`.
pub fn p1xp1() -> Fan {
    fan(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[&[0, 2], &[2, 1], &[1, 3], &[3, 0]])
}

/// Hirzebruch surface with rays `(1,0), (0,1), (-1,-2), (0,-1)`.
pub fn f2() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, -2], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]])
}

/// Rays `e1, -e1, e2, -e2, e3, -e3`.
pub fn p1cubed() -> Fan {
    let mut cones = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                cones.push(vec![a, b, c]);
            }
        }
    }
    Fan::new(
        3,
        vec![
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
        ],
        cones,
    )
    .expect("standard fan is well formed")
}

/// `P(1,1,2)`: rays `(1,0), (0,1), (-1,-2)`.
pub fn p112() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, -2]], &[&[0, 1], &[1, 2], &[2, 0]])
}

/// `P(1,1,3)`: rays `(1,0), (0,1), (-1,-3)`.
pub fn p113() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, -3]], &[&[0, 1], &[1, 2], &[2, 0]])
}

/// The five smooth fans of the acceptance list.
pub fn acceptance_fans() -> Vec<(&'static str, Fan)> {
    vec![("P1", p1()), ("P2", p2()), ("P1xP1", p1xp1()), ("F2", f2()), ("(P1)^3", p1cubed())]
}

pub fn by_name(name: &str) -> Option<Fan> {
    Some(match name {
        "P1" => p1(),
        "P2" => p2(),
        "P1xP1" => p1xp1(),
        "F2" => f2(),
        "(P1)^3" | "P1^3" => p1cubed(),
        "P(1,1,2)" => p112(),
        "P(1,1,3)" => p113(),
        _ => return None,
    })
}
