use serde::{Deserialize, Serialize};

use super::form::PolyForm;
use super::value::{ValueSpace, ValueTag};
use crate::error::FormatError;
use crate::ratpoly::{format_rational, parse_rational, Monomial, Poly};

/// Largest ambient dimension accepted by the decoder.
pub const MAX_JSON_DIM: usize = 16;
/// Largest single exponent accepted by the decoder.
pub const MAX_JSON_EXPONENT: u32 = 64;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyFormJson {
    pub n: usize,
    pub k: usize,
    pub value: String,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    /// 1-based, strictly increasing.
    #[serde(rename = "I")]
    pub index: Vec<usize>,
    pub a: usize,
    pub monomial: Vec<u32>,
    pub coeff: String,
}

fn field(field: &'static str, reason: impl Into<String>) -> FormatError {
    FormatError::Field {
        field,
        reason: reason.into(),
    }
}

impl PolyFormJson {
    pub fn from_form(u: &PolyForm) -> Self {
        let terms = u
            .terms()
            .map(|(i, a, m, c)| TermJson {
                index: i.iter().map(|j| j + 1).collect(),
                a,
                monomial: m.exponents().to_vec(),
                coeff: format_rational(c),
            })
            .collect();
        PolyFormJson {
            n: u.n(),
            k: u.k(),
            value: u.value().tag.to_string(),
            terms,
        }
    }

    /// Validates and canonicalizes (repeated terms are summed, zeros dropped).
    pub fn to_form(&self) -> Result<PolyForm, FormatError> {
        if self.n == 0 || self.n > MAX_JSON_DIM {
            return Err(field("n", format!("must be in 1..={MAX_JSON_DIM}")));
        }
        let tag: ValueTag = self
            .value
            .parse()
            .map_err(|_| field("value", format!("unknown value space `{}`", self.value)))?;
        let value = ValueSpace::new(tag, self.n);
        let mut u = PolyForm::try_zero(self.n, self.k, value)?;
        for t in &self.terms {
            if t.index.iter().any(|&i| i == 0 || i > self.n) {
                return Err(field("I", "entries must lie in 1..=n"));
            }
            if t.monomial.len() != self.n {
                return Err(field("monomial", "length must equal n"));
            }
            if t.monomial.iter().any(|&e| e > MAX_JSON_EXPONENT) {
                return Err(field(
                    "monomial",
                    format!("exponent above {MAX_JSON_EXPONENT}"),
                ));
            }
            let c = parse_rational(&t.coeff)?;
            let index = t.index.iter().map(|i| i - 1).collect();
            let p = Poly::term(Monomial::new(t.monomial.clone()), c);
            u.try_add_coeff(index, t.a, &p)?;
        }
        Ok(u)
    }
}

pub fn polyform_to_json(u: &PolyForm) -> String {
    serde_json::to_string(&PolyFormJson::from_form(u)).expect("plain data serializes")
}

pub fn polyform_from_json(s: &str) -> Result<PolyForm, FormatError> {
    let raw: PolyFormJson = serde_json::from_str(s)?;
    raw.to_form()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_example() {
        let s = r#"{"n":3,"k":1,"value":"S","terms":[{"I":[1],"a":0,"monomial":[2,0,0],"coeff":"3/2"}]}"#;
        let u = polyform_from_json(s).unwrap();
        assert_eq!(polyform_to_json(&u), s);
    }

    #[test]
    fn canonicalizes_duplicates() {
        let s = r#"{"n":2,"k":0,"value":"R","terms":[
            {"I":[],"a":0,"monomial":[1,0],"coeff":"1/2"},
            {"I":[],"a":0,"monomial":[1,0],"coeff":"-1/2"},
            {"I":[],"a":0,"monomial":[0,1],"coeff":"2/4"}]}"#;
        let u = polyform_from_json(s).unwrap();
        assert_eq!(
            polyform_to_json(&u),
            r#"{"n":2,"k":0,"value":"R","terms":[{"I":[],"a":0,"monomial":[0,1],"coeff":"1/2"}]}"#
        );
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            r#"{"n":3,"k":1,"value":"S","terms":[{"I":[0],"a":0,"monomial":[0,0,0],"coeff":"1"}]}"#,
            r#"{"n":3,"k":1,"value":"S","terms":[{"I":[1],"a":6,"monomial":[0,0,0],"coeff":"1"}]}"#,
            r#"{"n":3,"k":2,"value":"R","terms":[{"I":[2,1],"a":0,"monomial":[0,0,0],"coeff":"1"}]}"#,
            r#"{"n":3,"k":1,"value":"Q","terms":[]}"#,
            r#"{"n":3,"k":4,"value":"R","terms":[]}"#,
            r#"{"n":3,"k":1,"value":"R","terms":[{"I":[1],"a":0,"monomial":[0,0],"coeff":"1"}]}"#,
            r#"{"n":3,"k":1,"value":"R","terms":[{"I":[1],"a":0,"monomial":[0,0,0],"coeff":"1/0"}]}"#,
            r#"{"n":99,"k":0,"value":"R","terms":[]}"#,
        ] {
            assert!(polyform_from_json(bad).is_err(), "{bad}");
        }
    }
}
