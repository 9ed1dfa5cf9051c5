//! Reading and writing exchanges as JSON documents.
//!
//! A document carries the scalar basis (names, with decimal expansions for
//! constants the library cannot recompute on its own), the alphabet, both
//! permutation rows, the length coefficients, and the base interval:
//!
//! ```json
//! {
//!   "basis": [{ "name": "1" }, { "name": "sqrt5" }],
//!   "alphabet": ["A", "B"],
//!   "pi0": [1, 2],
//!   "pi1": [2, 1],
//!   "lambda": [["-1/2", "1/2"], ["3/2", "-1/2"]],
//!   "base": [["0", "0"], ["1", "0"]]
//! }
//! ```
//!
//! Every scalar is a list of `p/q` coefficient strings, one per basis
//! element, so documents are exact and reruns are reproducible to the byte.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{Basis, ExactError, ExactScalar};
use crate::iet::{Iet, IetError, Interval};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad field: {0}")]
    BadField(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Iet(#[from] IetError),
}

/// One basis element. The decimal expansion is required for names the
/// library cannot recompute (anything other than `"1"` and `"sqrtN"`), and
/// optional — but validated — otherwise.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisElementSpec {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decimal: Option<String>,
}

/// The JSON shape of an exchange.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IetSpec {
    pub basis: Vec<BasisElementSpec>,
    pub alphabet: Vec<String>,
    pub pi0: Vec<usize>,
    pub pi1: Vec<usize>,
    pub lambda: Vec<Vec<String>>,
    /// The two endpoints of the base interval, as coefficient lists.
    pub base: Vec<Vec<String>>,
}

/// True when the library can recompute this element to any precision
/// without a stored expansion.
fn self_describing(name: &str) -> bool {
    name == "1"
        || name
            .strip_prefix("sqrt")
            .and_then(|s| s.parse::<u64>().ok())
            .is_some()
}

impl IetSpec {
    /// Describe an existing exchange.
    pub fn from_iet(t: &Iet) -> Result<IetSpec, IoError> {
        let basis = t.basis();
        let mut elements = Vec::new();
        for (i, name) in basis.names().iter().enumerate() {
            let decimal = if self_describing(name) {
                None
            } else {
                Some(basis.decimal_of(i, 50)?)
            };
            elements.push(BasisElementSpec {
                name: name.clone(),
                decimal,
            });
        }
        Ok(IetSpec {
            basis: elements,
            alphabet: t.labels().to_vec(),
            pi0: (0..t.d()).map(|l| t.pi0(l)).collect(),
            pi1: (0..t.d()).map(|l| t.pi1(l)).collect(),
            lambda: t.lengths().iter().map(|s| s.coeff_strings()).collect(),
            base: vec![
                t.base().left.coeff_strings(),
                t.base().right.coeff_strings(),
            ],
        })
    }

    /// Build the exchange this document describes.
    pub fn build(&self) -> Result<Iet, IoError> {
        let basis = Basis::new(
            self.basis
                .iter()
                .map(|e| (e.name.clone(), e.decimal.clone()))
                .collect(),
        )?;
        let mut lengths = Vec::new();
        for coeffs in &self.lambda {
            lengths.push(parse(&basis, coeffs)?);
        }
        if self.base.len() != 2 {
            return Err(IoError::BadField(format!(
                "base must list exactly two endpoints, found {}",
                self.base.len()
            )));
        }
        let left = parse(&basis, &self.base[0])?;
        let right = parse(&basis, &self.base[1])?;
        Ok(Iet::new(
            self.alphabet.clone(),
            self.pi0.clone(),
            self.pi1.clone(),
            lengths,
            Interval::new(left, right),
        )?)
    }
}

fn parse(basis: &std::sync::Arc<Basis>, coeffs: &[String]) -> Result<ExactScalar, IoError> {
    Ok(basis.parse_scalar(coeffs)?)
}

/// Serialize an exchange as a pretty-printed document.
pub fn iet_to_json(t: &Iet) -> Result<String, IoError> {
    let spec = IetSpec::from_iet(t)?;
    Ok(serde_json::to_string_pretty(&spec)?)
}

/// Parse and build an exchange from a document.
pub fn iet_from_json(text: &str) -> Result<Iet, IoError> {
    let spec: IetSpec = serde_json::from_str(text)?;
    spec.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{example1, example2, example2_irrational, golden};

    fn assert_same(a: &Iet, b: &Iet) {
        assert_eq!(a.labels(), b.labels());
        assert_eq!(a.d(), b.d());
        for l in 0..a.d() {
            assert_eq!(a.pi0(l), b.pi0(l));
            assert_eq!(a.pi1(l), b.pi1(l));
            assert_eq!(a.length(l).coeff_strings(), b.length(l).coeff_strings());
        }
        assert_eq!(a.base().left.coeff_strings(), b.base().left.coeff_strings());
        assert_eq!(
            a.base().right.coeff_strings(),
            b.base().right.coeff_strings()
        );
    }

    #[test]
    fn presets_round_trip_through_json() {
        for t in [golden(), example1(), example2(), example2_irrational()] {
            let text = iet_to_json(&t).unwrap();
            let back = iet_from_json(&text).unwrap();
            assert_same(&t, &back);
            // Byte stability: describing the rebuilt map yields the same text.
            assert_eq!(text, iet_to_json(&back).unwrap());
        }
    }

    #[test]
    fn documents_spell_out_scalars() {
        let text = iet_to_json(&golden()).unwrap();
        assert!(text.contains("\"sqrt5\""));
        assert!(text.contains("\"-1/2\""));
        // Self-describing elements carry no decimal payload.
        assert!(!text.contains("decimal"));
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(matches!(iet_from_json("{"), Err(IoError::Json(_))));

        // Missing length row for the second letter.
        let text = r#"{
            "basis": [{"name": "1"}],
            "alphabet": ["a", "b"],
            "pi0": [1, 2],
            "pi1": [2, 1],
            "lambda": [["1/2"]],
            "base": [["0"], ["1"]]
        }"#;
        assert!(matches!(iet_from_json(text), Err(IoError::Iet(_))));

        let text = r#"{
            "basis": [{"name": "1"}],
            "alphabet": ["a"],
            "pi0": [1],
            "pi1": [1],
            "lambda": [["1"]],
            "base": [["0"]]
        }"#;
        assert!(matches!(iet_from_json(text), Err(IoError::BadField(_))));

        // Unknown constants must bring their own expansion.
        let text = r#"{
            "basis": [{"name": "1"}, {"name": "phi"}],
            "alphabet": ["a"],
            "pi0": [1],
            "pi1": [1],
            "lambda": [["1", "0"]],
            "base": [["0", "0"], ["1", "0"]]
        }"#;
        assert!(matches!(iet_from_json(text), Err(IoError::Exact(_))));
    }
}
