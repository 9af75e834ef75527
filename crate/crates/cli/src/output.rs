//! Exact JSON and text renderings of results. Exponents and coefficients are
//! written as rational strings.

use serde_json::{json, Map, Value};
use toric_elliptic::genus::{EquivariantGenus, GenusResult, SampleLog};
use toric_elliptic::series::{Lattice, LaurentPoly, RatFunc1, Rational, Var};

use crate::input::Input;

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn input_json(input: &Input) -> Value {
    let mut m = Map::new();
    m.insert("rank".into(), json!(input.rank));
    m.insert("rays".into(), json!(input.rays));
    m.insert("cones".into(), json!(input.cones));
    if let Some(p) = &input.pair {
        m.insert("pair".into(), rationals(p));
    }
    if let Some(p) = &input.perturbation {
        m.insert("perturbation".into(), rationals(p));
    }
    Value::Object(m)
}

/// `{exponent: coefficient}` for a Laurent polynomial in `var`, where the
/// internal exponent `e` stands for `e / root`.
fn terms(p: &LaurentPoly, var: Var, root: i64) -> Value {
    let mut m = Map::new();
    for (e, c) in p.terms() {
        m.insert(Rational::new(e.get(var).into(), root.into()).to_string(), Value::String(c.to_string()));
    }
    Value::Object(m)
}

pub fn ratfunc_json(r: &RatFunc1, y_root: i64) -> Value {
    let lattice = Lattice { y_root, w_root: 1 };
    let mut m = Map::new();
    match r.as_laurent(Var::Y) {
        Some(p) => {
            m.insert("terms".into(), terms(&p, Var::Y, y_root));
        }
        None => {
            m.insert("numerator".into(), terms(&r.numerator_laurent(Var::Y), Var::Y, y_root));
            m.insert("denominator".into(), terms(&r.denominator().to_laurent(Var::Y, 0), Var::Y, y_root));
        }
    }
    m.insert("text".into(), Value::String(r.render(Var::Y, &lattice)));
    Value::Object(m)
}

pub fn genus_json(g: &GenusResult) -> Value {
    let coeffs: Vec<Value> = (0..=g.order())
        .map(|k| {
            let mut entry = Map::new();
            entry.insert("q".into(), json!(k));
            if let Value::Object(c) = ratfunc_json(g.coeff(k), g.y_root()) {
                entry.extend(c);
            }
            Value::Object(entry)
        })
        .collect();
    json!({
        "order": g.order(),
        "zero": g.is_zero(),
        "coefficients": coeffs,
        "text": g.render(),
    })
}

pub fn genus_text(g: &GenusResult) -> String {
    (0..=g.order()).map(|k| format!("  q^{}: {}\n", k, g.render_coeff(k))).collect()
}

fn t_exponent(e: i64) -> String {
    Rational::new(e.into(), 2.into()).to_string()
}

pub fn sample_log_json(log: &SampleLog) -> Value {
    json!({
        "points": rationals(&log.points),
        "windows": log.windows.iter().map(|w| json!([w.lo, w.hi])).collect::<Vec<_>>(),
        "validation": log.validation,
        "widenings": log.widenings,
    })
}

pub fn equivariant_json(eq: &EquivariantGenus) -> Value {
    let y_root = eq.lattice().y_root;
    let rows: Vec<Value> = (0..=eq.order())
        .map(|k| {
            let terms: Vec<Value> = eq
                .t_coefficients(k)
                .iter()
                .map(|(e, c)| json!({"t_exponent": t_exponent(*e), "coefficient": ratfunc_json(c, y_root)}))
                .collect();
            json!({"q": k, "t_terms": terms})
        })
        .collect();
    json!({
        "xi": eq.xi().xi(),
        "by_t": rows,
        "at_t_one": genus_json(eq.at_t_one()),
        "samples": sample_log_json(eq.sample_log()),
    })
}

pub fn equivariant_text(eq: &EquivariantGenus) -> String {
    (0..=eq.order()).map(|k| format!("  q^{}: {}\n", k, eq.render_coeff(k))).collect()
}

pub fn t_support_json(support: &[Vec<Rational>]) -> Value {
    Value::Array(support.iter().map(|s| rationals(s)).collect())
}
