//! Hypersurface files: a JSON object
//!
//! ```text
//! {
//!   "n_plus_1": 2,
//!   "field": "Fp:7",
//!   "terms": [
//!     {"exps": [0, 1], "coeff": "1"},
//!     {"exps": [2, 2], "coeff": "1"}
//!   ]
//! }
//! ```
//!
//! Coefficients are strings: `"<num>/<den>"` (or an integer) over ℚ, a
//! residue in `[0, p)` over `F_p`. Errors carry the 1-based source line.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Deserialize;
use serde_json::value::RawValue;
use thiserror::Error;

use crate::algebra::{parse_rational, Field, Fp, Modulus, Rationals, Q};
use crate::hypersurface::{GenConfig, HypersurfaceError, MultiQuadric};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

/// `"Q"` or `"Fp:<p>"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    Fp(Modulus),
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "Q" {
            return Ok(FieldSpec::Q);
        }
        let p = s
            .strip_prefix("Fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| format!("field must be \"Q\" or \"Fp:<p>\", got {s:?}"))?;
        Modulus::new(p).map(FieldSpec::Fp).map_err(|e| e.to_string())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => f.write_str("Q"),
            FieldSpec::Fp(m) => write!(f, "{m}"),
        }
    }
}

/// A hypersurface over whichever field its file declares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyQuadric {
    Q(MultiQuadric<Q>),
    Fp(MultiQuadric<Fp>),
}

impl AnyQuadric {
    pub fn field(&self) -> FieldSpec {
        match self {
            AnyQuadric::Q(_) => FieldSpec::Q,
            AnyQuadric::Fp(x) => FieldSpec::Fp(*x.ctx()),
        }
    }

    pub fn n_factors(&self) -> usize {
        match self {
            AnyQuadric::Q(x) => x.n_factors(),
            AnyQuadric::Fp(x) => x.n_factors(),
        }
    }

    pub fn random(field: FieldSpec, n_factors: usize, seed: u64) -> Result<Self, HypersurfaceError> {
        let cfg = GenConfig::default();
        Ok(match field {
            FieldSpec::Q => AnyQuadric::Q(crate::hypersurface::random_hypersurface(n_factors, &Rationals, seed, cfg)?),
            FieldSpec::Fp(m) => AnyQuadric::Fp(crate::hypersurface::random_hypersurface(n_factors, &m, seed, cfg)?),
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile<'a> {
    n_plus_1: usize,
    field: String,
    #[serde(borrow)]
    terms: Vec<&'a RawValue>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    exps: Vec<u32>,
    coeff: String,
}

fn line_at(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

/// Line on which a top-level key first appears, for errors that serde
/// reports without a useful position.
fn key_line(src: &str, key: &str) -> usize {
    src.find(&format!("\"{key}\"")).map_or(1, |o| line_at(src, o))
}

pub fn parse(src: &str) -> Result<AnyQuadric, FormatError> {
    let raw: RawFile =
        serde_json::from_str(src).map_err(|e| FormatError { line: e.line().max(1), message: e.to_string() })?;
    let field: FieldSpec =
        raw.field.parse().map_err(|message| FormatError { line: key_line(src, "field"), message })?;
    if raw.n_plus_1 == 0 {
        return Err(FormatError { line: key_line(src, "n_plus_1"), message: "n_plus_1 must be positive".into() });
    }
    match field {
        FieldSpec::Q => build(src, &raw, &Rationals, parse_rational).map(AnyQuadric::Q),
        FieldSpec::Fp(m) => build(src, &raw, &m, |s| parse_residue(&m, s)).map(AnyQuadric::Fp),
    }
}

fn parse_residue(m: &Modulus, s: &str) -> Result<Fp, String> {
    let r: u64 = s.parse().map_err(|_| format!("residue {s:?} is not a nonnegative integer"))?;
    if r >= m.get() {
        return Err(format!("residue {r} is not below p = {}", m.get()));
    }
    Ok(m.elem(r))
}

fn build<F: Field, E: fmt::Display>(
    src: &str,
    raw: &RawFile,
    ctx: &F::Ctx,
    coeff: impl Fn(&str) -> Result<F, E>,
) -> Result<MultiQuadric<F>, FormatError> {
    let n = raw.n_plus_1;
    let mut seen = BTreeSet::new();
    let mut terms = Vec::with_capacity(raw.terms.len());
    for r in &raw.terms {
        let offset = r.get().as_ptr() as usize - src.as_ptr() as usize;
        let line = line_at(src, offset);
        let err = |message: String| FormatError { line, message };
        let t: RawTerm = serde_json::from_str(r.get())
            .map_err(|e| FormatError { line: line + e.line().saturating_sub(1), message: e.to_string() })?;
        if t.exps.len() != n {
            return Err(err(format!("exponent vector has {} entries, expected {n}", t.exps.len())));
        }
        if let Some(e) = t.exps.iter().find(|&&e| e > 2) {
            return Err(err(format!("exponent {e} exceeds 2")));
        }
        if !seen.insert(t.exps.clone()) {
            return Err(err(format!("duplicate exponent vector {:?}", t.exps)));
        }
        let c = coeff(&t.coeff).map_err(|e| err(e.to_string()))?;
        terms.push((t.exps, c));
    }
    MultiQuadric::from_terms(ctx, n, terms)
        .map_err(|e| FormatError { line: key_line(src, "terms"), message: e.to_string() })
}

/// Deterministic rendering: one term per line, exponents ascending lex.
pub fn write(x: &AnyQuadric) -> String {
    match x {
        AnyQuadric::Q(x) => render(x, "Q", |c: &Q| format!("{}/{}", c.numer(), c.denom())),
        AnyQuadric::Fp(x) => render(x, &x.ctx().to_string(), |c: &Fp| c.value().to_string()),
    }
}

fn render<F: Field>(x: &MultiQuadric<F>, field: &str, coeff: impl Fn(&F) -> String) -> String {
    let terms: Vec<String> = x
        .poly()
        .terms()
        .map(|(e, c)| {
            let exps: Vec<String> = e.iter().map(u32::to_string).collect();
            format!("    {{\"exps\": [{}], \"coeff\": \"{}\"}}", exps.join(", "), coeff(c))
        })
        .collect();
    format!(
        "{{\n  \"n_plus_1\": {},\n  \"field\": \"{field}\",\n  \"terms\": [\n{}\n  ]\n}}\n",
        x.n_factors(),
        terms.join(",\n")
    )
}
