//! JSON file formats.
//!
//! Moments: `{"moments": ["1", "0", "1/2", ...]}`. Entries may also be JSON
//! numbers; exact rings then parse their decimal text exactly.
//!
//! P-fractions:
//! `{"status": "open", "degree_cap": 8, "terms": [{"epsilon": 1, "b_squared": "1/4", "p": ["0", "0", "1"]}]}`
//! with `p` listed from the constant coefficient up and `b_squared` null
//! when unknown.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::moments::MomentSequence;
use crate::pfraction::{PFraction, PFractionTerm, Status, DEFAULT_DEGREE_CAP};
use crate::poly::Polynomial;
use crate::scalar::{Scalar, Sign};

#[derive(Serialize, Deserialize)]
struct MomentsFile {
    moments: Vec<Value>,
}

#[derive(Serialize, Deserialize)]
struct TermFile {
    epsilon: Sign,
    b_squared: Option<Value>,
    p: Vec<Value>,
}

#[derive(Serialize, Deserialize)]
struct PFractionFile {
    #[serde(default = "default_status")]
    status: Status,
    #[serde(default = "default_cap")]
    degree_cap: usize,
    terms: Vec<TermFile>,
}

fn default_status() -> Status {
    Status::Open
}

fn default_cap() -> usize {
    DEFAULT_DEGREE_CAP
}

/// Contents of an input file.
#[derive(Clone, Debug, PartialEq)]
pub enum Input<T> {
    Moments(MomentSequence<T>),
    PFraction(PFraction<T>),
}

fn scalar<T: Scalar>(v: &Value) -> Result<T> {
    match v {
        Value::String(s) => T::parse_scalar(s),
        Value::Number(n) => T::parse_scalar(&n.to_string()),
        other => Err(Error::Parse(format!("expected a number or string, got {other}"))),
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_moments<T: Scalar>(text: &str) -> Result<MomentSequence<T>> {
    let file: MomentsFile = serde_json::from_str(text).map_err(json_err)?;
    MomentSequence::new(file.moments.iter().map(scalar).collect::<Result<_>>()?)
}

pub fn parse_pfraction<T: Scalar>(text: &str) -> Result<PFraction<T>> {
    let file: PFractionFile = serde_json::from_str(text).map_err(json_err)?;
    let terms = file
        .terms
        .iter()
        .map(|t| {
            let p = Polynomial::from_coeffs(t.p.iter().map(scalar).collect::<Result<_>>()?);
            let b2 = t.b_squared.as_ref().map(scalar).transpose()?;
            PFractionTerm::new(t.epsilon, b2, p)
        })
        .collect::<Result<_>>()
        .map_err(invalid)?;
    PFraction::new(terms, file.status, file.degree_cap).map_err(invalid)
}

/// Structural problems in a file are reported as parse errors.
fn invalid(e: Error) -> Error {
    match e {
        Error::Parse(_) | Error::DegreeCapExceeded { .. } | Error::EmptyPFraction => e,
        other => Error::Parse(other.to_string()),
    }
}

/// Detects the format from the top-level keys.
pub fn parse_input<T: Scalar>(text: &str) -> Result<Input<T>> {
    let v: Value = serde_json::from_str(text).map_err(json_err)?;
    match &v {
        Value::Object(map) if map.contains_key("moments") => Ok(Input::Moments(parse_moments(text)?)),
        Value::Object(map) if map.contains_key("terms") => Ok(Input::PFraction(parse_pfraction(text)?)),
        _ => Err(Error::Parse("expected an object with \"moments\" or \"terms\"".into())),
    }
}

pub fn read_input<T: Scalar>(path: &Path) -> Result<Input<T>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_input(&text)
}

/// Compact form with a trailing newline.
pub fn render_moments<T: Scalar>(s: &MomentSequence<T>) -> String {
    let file = MomentsFile {
        moments: s.coeffs().iter().map(|c| Value::String(c.render())).collect(),
    };
    serde_json::to_string(&file).expect("serializable") + "\n"
}

/// One term per line, with a trailing newline.
pub fn render_pfraction<T: Scalar>(pf: &PFraction<T>) -> String {
    let terms: Vec<String> = pf
        .terms
        .iter()
        .map(|t| {
            let term = TermFile {
                epsilon: t.epsilon,
                b_squared: t.b_squared.as_ref().map(|b| Value::String(b.render())),
                p: t.p.coeffs().iter().map(|c| Value::String(c.render())).collect(),
            };
            format!("    {}", serde_json::to_string(&term).expect("serializable"))
        })
        .collect();
    let status = serde_json::to_string(&pf.status).expect("serializable");
    format!(
        "{{\n  \"status\": {status},\n  \"degree_cap\": {},\n  \"terms\": [\n{}\n  ]\n}}\n",
        pf.degree_cap,
        terms.join(",\n")
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn moments_round_trip() {
        let text = "{\"moments\":[\"1\",\"0\",\"1/2\",\"-3\"]}\n";
        let s: MomentSequence<Rational> = parse_moments(text).unwrap();
        assert_eq!(s.coeffs()[2], Rational::new(1.into(), 2.into()));
        assert_eq!(render_moments(&s), text);
        let s: MomentSequence<Rational> = parse_moments("{\"moments\":[0.1, 2]}").unwrap();
        assert_eq!(s.coeffs()[0], Rational::new(1.into(), 10.into()));
        assert!(parse_moments::<Rational>("{\"moments\":[true]}").is_err());
        assert!(parse_moments::<Rational>("{\"moments\":[]}").is_err());
    }

    #[test]
    fn pfraction_round_trip() {
        let text = r#"{"status":"open","terms":[{"epsilon":1,"b_squared":"1/4","p":["0","0","1"]},{"epsilon":-1,"b_squared":null,"p":[1,1]}]}"#;
        let pf: PFraction<Rational> = parse_pfraction(text).unwrap();
        assert_eq!(pf.block_degrees(), vec![2, 1]);
        assert_eq!(pf.terms[1].epsilon, Sign::Minus);
        assert_eq!(pf.degree_cap, DEFAULT_DEGREE_CAP);
        let again: PFraction<Rational> = parse_pfraction(&render_pfraction(&pf)).unwrap();
        assert_eq!(again, pf);
        assert!(parse_pfraction::<Rational>(r#"{"terms":[{"epsilon":2,"b_squared":null,"p":["0","1"]}]}"#).is_err());
        assert!(parse_pfraction::<Rational>(r#"{"terms":[{"epsilon":1,"b_squared":null,"p":["0","2"]}]}"#).is_err());
    }

    #[test]
    fn detects_format() {
        assert!(matches!(parse_input::<f64>("{\"moments\":[\"1\"]}"), Ok(Input::Moments(_))));
        assert!(matches!(
            parse_input::<f64>(r#"{"terms":[{"epsilon":1,"b_squared":null,"p":["0","1"]}]}"#),
            Ok(Input::PFraction(_))
        ));
        assert!(parse_input::<f64>("[1,2]").is_err());
        assert!(parse_input::<f64>("not json").is_err());
    }
}
