use std::path::PathBuf;
use std::time::Instant;

use serde_json::{json, Map, Value};
use thiserror::Error;
use toric_elliptic::acceptance::{Acceptance, AcceptanceConfig};
use toric_elliptic::genus::{
    check_rigidity, check_vanishing_cy, ell_pair, ell_pair_equivariant, ell_pair_with, verify_blowup_invariance,
    NORMALIZATION,
};
use toric_elliptic::singular::{
    ell_singular_toric, expand_eps, leading_terms_by_reconstruction, perturbation_violations, perturbed_ell,
    LimitOutcome,
};
use toric_elliptic::toric::{fixed_point_data, low_weight_subgroup, validate_fan, OneParamSubgroup};
use toric_elliptic::{Error as CoreError, ErrorClass};

use crate::input::{load_path, InputError, Loaded};
use crate::output::{equivariant_json, equivariant_text, genus_json, genus_text, input_json, t_support_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Genus,
    Equivariant,
    Rigidity,
    Vanishing,
    Blowup,
    Singular,
    Limit,
    Suite,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Genus => "genus",
            Command::Equivariant => "equivariant",
            Command::Rigidity => "rigidity",
            Command::Vanishing => "vanishing",
            Command::Blowup => "blowup",
            Command::Singular => "singular",
            Command::Limit => "limit",
            Command::Suite => "suite",
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub order: Option<usize>,
    pub xi: Option<Vec<i64>>,
    /// Extra interpolation checkpoints.
    pub validation: usize,
    pub cone: Option<Vec<usize>>,
    pub subset: Option<Vec<usize>>,
    pub seed: Option<u64>,
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 2;
    pub const PRECONDITION: i32 = 3;
    pub const POLE: i32 = 4;
    pub const INTERNAL: i32 = 5;
}

#[derive(Debug, Error)]
pub enum JobError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl JobError {
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Input(_) | JobError::Usage(_) => exit::PARSE,
            JobError::Core(e) => match e {
                CoreError::MalformedCone { .. } | CoreError::MalformedFan(_) | CoreError::NonPrimitiveRay { .. } => {
                    exit::PARSE
                }
                e if e.class() == ErrorClass::Internal => exit::INTERNAL,
                _ => exit::PRECONDITION,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            exit::PARSE => "parse",
            exit::PRECONDITION => "precondition",
            _ => "internal",
        }
    }
}

/// Result of one invocation: exit status plus the structured and text reports.
#[derive(Clone, Debug)]
pub struct JobOutcome {
    pub exit: i32,
    pub structured: Value,
    pub text: String,
}

struct Report {
    exit: i32,
    result: Value,
    text: String,
}

impl Report {
    fn ok(result: Value, text: String) -> Self {
        Report { exit: exit::OK, result, text }
    }
}

fn order(spec: &JobSpec) -> Result<usize, JobError> {
    spec.order.ok_or_else(|| JobError::Usage(format!("'{}' requires --order", spec.command.name())))
}

fn load(spec: &JobSpec) -> Result<Loaded, JobError> {
    let path = spec
        .input
        .as_ref()
        .ok_or_else(|| JobError::Usage(format!("'{}' requires an input file", spec.command.name())))?;
    Ok(load_path(path)?)
}

fn subgroup(spec: &JobSpec, l: &Loaded) -> Result<OneParamSubgroup, JobError> {
    Ok(match &spec.xi {
        Some(xi) => OneParamSubgroup::new(xi.clone())?,
        None => low_weight_subgroup(&l.fan)?.xi,
    })
}

pub fn run_job(spec: &JobSpec) -> JobOutcome {
    let start = Instant::now();
    let mut out = Map::new();
    out.insert("command".into(), json!(spec.command.name()));
    let loaded = match spec.command {
        Command::Suite => None,
        _ => match load(spec) {
            Ok(l) => Some(l),
            Err(e) => return failure(spec, out, e),
        },
    };
    if let Some(l) = &loaded {
        out.insert("input".into(), input_json(&l.input));
    }
    if let Some(n) = spec.order {
        if spec.command != Command::Suite {
            out.insert("order".into(), json!(n));
        }
    }
    if !matches!(spec.command, Command::Validate | Command::Suite) {
        out.insert("convention".into(), json!(NORMALIZATION));
    }
    let report = match (spec.command, &loaded) {
        (Command::Suite, _) => suite(spec),
        (_, Some(l)) => dispatch(spec, l),
        _ => unreachable!("input loaded for every non-suite command"),
    };
    match report {
        Ok(r) => {
            out.insert("status".into(), json!(if r.exit == exit::OK { "ok" } else { status_name(r.exit) }));
            out.insert("result".into(), r.result);
            if spec.command != Command::Suite {
                out.insert("timing".into(), json!({"seconds": start.elapsed().as_secs_f64()}));
            }
            JobOutcome { exit: r.exit, structured: Value::Object(out), text: r.text }
        }
        Err(e) => failure(spec, out, e),
    }
}

fn status_name(code: i32) -> &'static str {
    match code {
        exit::POLE => "pole",
        exit::INTERNAL => "failed",
        _ => "error",
    }
}

fn failure(spec: &JobSpec, mut out: Map<String, Value>, e: JobError) -> JobOutcome {
    out.insert("status".into(), json!("error"));
    out.insert("error".into(), json!({"kind": e.kind(), "message": e.to_string()}));
    JobOutcome { exit: e.exit_code(), structured: Value::Object(out), text: format!("{}: error: {}\n", spec.command.name(), e) }
}

fn dispatch(spec: &JobSpec, l: &Loaded) -> Result<Report, JobError> {
    match spec.command {
        Command::Validate => validate(l),
        Command::Genus => genus(spec, l),
        Command::Equivariant => equivariant(spec, l, false),
        Command::Rigidity => equivariant(spec, l, true),
        Command::Vanishing => vanishing(spec, l),
        Command::Blowup => blowup(spec, l),
        Command::Singular => singular(spec, l),
        Command::Limit => limit(spec, l),
        Command::Suite => unreachable!(),
    }
}

fn validate(l: &Loaded) -> Result<Report, JobError> {
    let r = validate_fan(&l.fan);
    let mut result = json!({
        "simplicial": r.simplicial,
        "smooth": r.smooth,
        "complete": r.complete,
        "rays": l.fan.num_rays(),
        "cones": l.fan.cones().len(),
    });
    let mut text = format!(
        "fan of rank {}: {} rays, {} cones, smooth {}, complete {}\n",
        l.fan.rank(),
        l.fan.num_rays(),
        l.fan.cones().len(),
        r.smooth,
        r.complete
    );
    if let Some(b) = &l.perturbation {
        if l.fan.rank() == 2 && r.smooth && r.complete {
            let bad = perturbation_violations(&l.fan, &l.pair, b)?;
            result["perturbation_valid"] = json!(bad.is_empty());
            result["perturbation_violations"] = json!(bad);
            text.push_str(&format!("perturbation valid {}\n", bad.is_empty()));
        }
    }
    Ok(Report::ok(result, text))
}

fn genus(spec: &JobSpec, l: &Loaded) -> Result<Report, JobError> {
    let n = order(spec)?;
    let g = match &spec.xi {
        Some(xi) => ell_pair_with(&l.fan, &l.pair, &fixed_point_data(&l.fan, &OneParamSubgroup::new(xi.clone())?)?, n)?,
        None => ell_pair(&l.fan, &l.pair, n)?,
    };
    let text = format!("elliptic genus to q^{}\n{}", n, genus_text(&g));
    Ok(Report::ok(genus_json(&g), text))
}

fn equivariant(spec: &JobSpec, l: &Loaded, rigidity: bool) -> Result<Report, JobError> {
    let n = order(spec)?;
    let xi = subgroup(spec, l)?;
    let eq = ell_pair_equivariant(&l.fan, &l.pair, &xi, n, spec.validation)?;
    let mut result = equivariant_json(&eq);
    let mut text = format!("equivariant genus for xi = {:?} to q^{}\n{}", xi.xi(), n, equivariant_text(&eq));
    if rigidity {
        let r = check_rigidity(&eq);
        result["rigid"] = json!(r.rigid);
        result["t_support"] = t_support_json(&r.support);
        text.push_str(&format!("rigid {}\n", r.rigid));
    }
    Ok(Report::ok(result, text))
}

fn vanishing(spec: &JobSpec, l: &Loaded) -> Result<Report, JobError> {
    let n = order(spec)?;
    let r = check_vanishing_cy(&l.fan, &l.pair, n, spec.validation)?;
    let summary = if r.genus_zero {
        format!("identically zero to order {}", n)
    } else {
        let (k, c) = r.witness.clone().unwrap_or_default();
        format!("nonzero: first term at q^{} is {}", k, c)
    };
    let result = json!({
        "calabi_yau": r.calabi_yau,
        "genus_zero": r.genus_zero,
        "equivariant_zero": r.equivariant_zero,
        "witness": r.witness.as_ref().map(|(k, c)| json!({"q": k, "text": c})),
        "holds": r.holds,
        "summary": summary,
    });
    let text = format!("calabi-yau {}; {}; vanishing theorem holds {}\n", r.calabi_yau, summary, r.holds);
    Ok(Report { exit: if r.holds { exit::OK } else { exit::INTERNAL }, result, text })
}

fn blowup(spec: &JobSpec, l: &Loaded) -> Result<Report, JobError> {
    let n = order(spec)?;
    let cone = spec.cone.clone().ok_or_else(|| JobError::Usage("'blowup' requires --cone".into()))?;
    let subset = spec.subset.clone().unwrap_or_else(|| cone.clone());
    let r = verify_blowup_invariance(&l.fan, &l.pair, &cone, &subset, n)?;
    let result = json!({
        "new_ray": r.new_ray,
        "m": r.m.to_string(),
        "equal": r.equal,
        "before": genus_json(&r.before),
        "after": genus_json(&r.after),
    });
    let text = format!("blow-up at {:?}: m = {}, genera equal {}\n{}", r.new_ray, r.m, r.equal, genus_text(&r.before));
    Ok(Report { exit: if r.equal { exit::OK } else { exit::INTERNAL }, result, text })
}

fn singular(spec: &JobSpec, l: &Loaded) -> Result<Report, JobError> {
    let n = order(spec)?;
    let s = ell_singular_toric(&l.fan, n)?;
    let chain: Vec<Value> = s
        .resolution
        .chain
        .iter()
        .map(|c| json!({"ray": c.new_ray, "a": c.a_new.to_string()}))
        .collect();
    let result = json!({
        "resolution": {
            "rays": s.resolution.fan.rays(),
            "cones": s.resolution.fan.cones(),
            "pair": s.resolution.pair.a().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "insertions": chain,
        },
        "extra_blowup": {"ray": s.extra_ray, "a": s.extra_coefficient.to_string(), "equal": s.consistent},
        "genus": genus_json(&s.genus),
    });
    let text = format!(
        "resolution with {} insertions; extra blow-up consistent {}\n{}",
        s.resolution.chain.len(),
        s.consistent,
        genus_text(&s.genus)
    );
    Ok(Report { exit: if s.consistent { exit::OK } else { exit::INTERNAL }, result, text })
}

fn limit(spec: &JobSpec, l: &Loaded) -> Result<Report, JobError> {
    let n = order(spec)?;
    let b = l.perturbation.as_ref().ok_or_else(|| JobError::Usage("'limit' requires a perturbation line".into()))?;
    if l.fan.rank() == 2 {
        if let Some(&ray) = perturbation_violations(&l.fan, &l.pair, b)?.first() {
            return Err(CoreError::InvalidPerturbation { ray }.into());
        }
    }
    let pg = perturbed_ell(&l.fan, &l.pair, b, n)?;
    let expansion = expand_eps(&pg)?;
    let agree = leading_terms_by_reconstruction(&pg, spec.validation)? == expansion.leading_terms();
    if !agree {
        return Err(CoreError::Internal("limit strategies disagree".into()).into());
    }
    Ok(match expansion.outcome() {
        LimitOutcome::Regular(g) => {
            let text = format!("limit exists to q^{}\n{}", n, genus_text(&g));
            Report::ok(json!({"outcome": "regular", "strategies_agree": agree, "limit": genus_json(&g)}), text)
        }
        LimitOutcome::Pole(p) => {
            let mut rows = Vec::new();
            let mut text = format!("pole at epsilon = 0 (maximal order {})\n", p.max_order());
            for (k, &ord) in p.orders.iter().enumerate() {
                let terms: Vec<Value> = (1..=ord)
                    .map(|j| json!({"power": -(j as i64), "coefficient": p.render_term(k, j)}))
                    .collect();
                for j in 1..=ord {
                    text.push_str(&format!("  q^{} s^-{}: {}\n", k, j, p.render_term(k, j)));
                }
                rows.push(json!({"q": k, "pole_order": ord, "principal": terms}));
            }
            let result = json!({
                "outcome": "pole",
                "strategies_agree": agree,
                "exceeds_simple": p.exceeds_simple,
                "principal_part": rows,
            });
            Report { exit: exit::POLE, result, text }
        }
    })
}

fn suite(spec: &JobSpec) -> Result<Report, JobError> {
    let mut cfg = AcceptanceConfig { validation: spec.validation, ..AcceptanceConfig::default() };
    if let Some(seed) = spec.seed {
        cfg.seed = seed;
    }
    let outcomes = Acceptance::new(cfg.clone()).run_all();
    let passed = outcomes.iter().all(|o| o.passed);
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({"id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail}))
        .collect();
    let text: String = outcomes.iter().map(|o| format!("{}\n", o.line())).collect();
    let result = json!({"seed": cfg.seed, "validation": cfg.validation, "passed": passed, "criteria": rows});
    Ok(Report { exit: if passed { exit::OK } else { exit::INTERNAL }, result, text })
}
