//! Line-based input format for fans, pairs and perturbations.
//!
//! ```text
//! # P^2 with a fractional pair
//! rank 2
//! ray 1 0
//! ray 0 1
//! ray -1 -1
//! cone 0 1
//! cone 1 2
//! cone 2 0
//! pair 0 1/2 0
//! perturbation 1 1 -2
//! ```
//!
//! Rationals are written `p` or `p/q`; never as decimals.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;
use toric_elliptic::series::{parse_rational, Rational};
use toric_elliptic::singular::PerturbationSpec;
use toric_elliptic::toric::{Fan, PairCoefficients};
use toric_elliptic::Error as CoreError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

/// The parsed contents of an input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Input {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
    pub pair: Option<Vec<Rational>>,
    pub perturbation: Option<Vec<Rational>>,
}

/// Source lines of each record, for error messages.
#[derive(Clone, Debug, Default)]
pub struct SourceMap {
    rays: Vec<usize>,
    cones: Vec<usize>,
    pair: usize,
    perturbation: usize,
}

/// A validated input.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub input: Input,
    pub fan: Fan,
    pub pair: PairCoefficients,
    pub perturbation: Option<PerturbationSpec>,
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], col: line[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> InputError {
    InputError::Syntax { line, col, message: message.into() }
}

fn semantic(line: usize, message: impl Into<String>) -> InputError {
    InputError::Semantic { line, message: message.into() }
}

fn integers<T: std::str::FromStr>(line: usize, toks: &[Token]) -> Result<Vec<T>, InputError> {
    toks.iter()
        .map(|t| t.text.parse().map_err(|_| syntax(line, t.col, format!("expected an integer, found '{}'", t.text))))
        .collect()
}

fn rationals(line: usize, toks: &[Token]) -> Result<Vec<Rational>, InputError> {
    toks.iter()
        .map(|t| {
            parse_rational(t.text).ok_or_else(|| syntax(line, t.col, format!("expected a rational p/q, found '{}'", t.text)))
        })
        .collect()
}

pub fn parse_str(text: &str) -> Result<(Input, SourceMap), InputError> {
    let mut rank: Option<usize> = None;
    let mut input = Input { rank: 0, rays: Vec::new(), cones: Vec::new(), pair: None, perturbation: None };
    let mut map = SourceMap::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks = tokens(body);
        let Some((head, args)) = toks.split_first() else { continue };
        match head.text {
            "rank" => {
                if rank.is_some() {
                    return Err(semantic(line, "rank given twice"));
                }
                let [value] = args else {
                    return Err(syntax(line, head.col, "rank takes exactly one integer"));
                };
                let r: usize = integers(line, std::slice::from_ref(value))?[0];
                if r == 0 {
                    return Err(semantic(line, "rank must be positive"));
                }
                rank = Some(r);
            }
            "ray" | "cone" | "pair" | "perturbation" if rank.is_none() => {
                return Err(semantic(line, format!("'{}' before 'rank'", head.text)));
            }
            "ray" => {
                let r = rank.expect("checked");
                let v: Vec<i64> = integers(line, args)?;
                if v.len() != r {
                    return Err(semantic(line, format!("ray has {} entries, expected rank {}", v.len(), r)));
                }
                input.rays.push(v);
                map.rays.push(line);
            }
            "cone" => {
                input.cones.push(integers(line, args)?);
                map.cones.push(line);
            }
            "pair" => {
                if input.pair.is_some() {
                    return Err(semantic(line, "pair given twice"));
                }
                input.pair = Some(rationals(line, args)?);
                map.pair = line;
            }
            "perturbation" => {
                if input.perturbation.is_some() {
                    return Err(semantic(line, "perturbation given twice"));
                }
                input.perturbation = Some(rationals(line, args)?);
                map.perturbation = line;
            }
            other => return Err(syntax(line, head.col, format!("unknown keyword '{}'", other))),
        }
    }
    input.rank = rank.ok_or_else(|| InputError::Invalid("missing 'rank'".into()))?;
    Ok((input, map))
}

pub fn read(path: &Path) -> Result<(Input, SourceMap), InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_str(&text)
}

impl Input {
    pub fn serialize(&self) -> String {
        let join = |v: &[String]| v.join(" ");
        let mut out = String::new();
        writeln!(out, "rank {}", self.rank).unwrap();
        for r in &self.rays {
            writeln!(out, "ray {}", join(&r.iter().map(|x| x.to_string()).collect::<Vec<_>>())).unwrap();
        }
        for c in &self.cones {
            writeln!(out, "cone {}", join(&c.iter().map(|x| x.to_string()).collect::<Vec<_>>())).unwrap();
        }
        if let Some(p) = &self.pair {
            writeln!(out, "pair {}", join(&p.iter().map(|x| x.to_string()).collect::<Vec<_>>())).unwrap();
        }
        if let Some(p) = &self.perturbation {
            writeln!(out, "perturbation {}", join(&p.iter().map(|x| x.to_string()).collect::<Vec<_>>())).unwrap();
        }
        out
    }

    pub fn from_parts(fan: &Fan, pair: Option<&PairCoefficients>, perturbation: Option<&PerturbationSpec>) -> Self {
        Input {
            rank: fan.rank(),
            rays: fan.rays().to_vec(),
            cones: fan.cones().to_vec(),
            pair: pair.map(|p| p.a().to_vec()),
            perturbation: perturbation.map(|b| b.b.clone()),
        }
    }

    /// Builds the fan and coefficient records, reporting the offending line
    /// for structural errors.
    pub fn load(self, map: &SourceMap) -> Result<Loaded, InputError> {
        let fan = Fan::new(self.rank, self.rays.clone(), self.cones.clone()).map_err(|e| match e {
            CoreError::NonPrimitiveRay { ray } => {
                semantic(map.rays[ray], format!("non-primitive ray {:?}", self.rays[ray]))
            }
            CoreError::MalformedCone { cone, reason } => semantic(map.cones[cone], format!("malformed cone: {}", reason)),
            other => InputError::Invalid(other.to_string()),
        })?;
        let n = fan.num_rays();
        let check_len = |v: &Option<Vec<Rational>>, line: usize, what: &str| match v {
            Some(v) if v.len() != n => Err(semantic(line, format!("{} has {} entries, expected {}", what, v.len(), n))),
            _ => Ok(()),
        };
        check_len(&self.pair, map.pair, "pair")?;
        check_len(&self.perturbation, map.perturbation, "perturbation")?;
        let pair = match &self.pair {
            Some(a) => PairCoefficients::new(&fan, a.clone()).map_err(|e| InputError::Invalid(e.to_string()))?,
            None => PairCoefficients::zero(&fan),
        };
        let perturbation = self.perturbation.clone().map(PerturbationSpec::new);
        Ok(Loaded { input: self, fan, pair, perturbation })
    }
}

pub fn load_path(path: &Path) -> Result<Loaded, InputError> {
    let (input, map) = read(path)?;
    input.load(&map)
}

pub fn load_str(text: &str) -> Result<Loaded, InputError> {
    let (input, map) = parse_str(text)?;
    input.load(&map)
}
