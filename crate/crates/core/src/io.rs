//! File formats: JSON code specs, whitespace-separated words, CSV export.
//!
//! A spec file looks like
//!
//! ```json
//! {"field": "5^2", "subsets": ["full", [0, 1, 7]], "deltas": [6, 2], "d": 3}
//! ```
//!
//! where each subset is either `"full"` or a list of element ranks. Words are
//! written as whitespace-separated symbols, each an element rank (or a
//! coefficient tuple such as `(2,1)`) or `?` for an erasure.

use serde::{Deserialize, Serialize};

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::linalg::Matrix;
use crate::recovery::{Codeword, ErasedWord};

pub const ERASURE_TOKEN: &str = "?";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubsetFile {
    Named(String),
    Ranks(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub field: String,
    pub subsets: Vec<SubsetFile>,
    pub deltas: Vec<i64>,
    pub d: i64,
}

impl SpecFile {
    pub fn to_spec(&self) -> Result<CodeSpec> {
        let field: FiniteField = self.field.parse()?;
        let subsets = self
            .subsets
            .iter()
            .map(|s| match s {
                SubsetFile::Named(name) if name == "full" => Ok(field.elements().collect()),
                SubsetFile::Named(name) => Err(Error::Parse(format!(
                    "unknown subset {name:?}, expected \"full\" or a list of ranks"
                ))),
                SubsetFile::Ranks(ranks) => ranks.iter().map(|&r| field.element(r)).collect(),
            })
            .collect::<Result<Vec<Vec<FieldElement>>>>()?;
        CodeSpec::new(field, subsets, self.deltas.clone(), self.d)
    }

    /// Spec file for `spec`, subsets in the spec's sorted order.
    pub fn from_spec(spec: &CodeSpec) -> Self {
        let q = spec.field().order() as usize;
        SpecFile {
            field: spec.field().descriptor(),
            subsets: spec
                .subsets()
                .iter()
                .map(|s| {
                    if s.len() == q {
                        SubsetFile::Named("full".into())
                    } else {
                        SubsetFile::Ranks(s.iter().map(|a| a.rank() as u64).collect())
                    }
                })
                .collect(),
            deltas: spec.deltas().iter().map(|&x| x as i64).collect(),
            d: spec.degree_bound() as i64,
        }
    }
}

pub fn parse_spec_json(text: &str) -> Result<CodeSpec> {
    let file: SpecFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("spec file: {e}")))?;
    file.to_spec()
}

pub fn parse_erased_word(field: &FiniteField, text: &str) -> Result<ErasedWord> {
    text.split_whitespace()
        .map(|tok| {
            if tok == ERASURE_TOKEN {
                Ok(None)
            } else {
                field.parse_element(tok).map(Some)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(ErasedWord::new)
}

/// Parses symbols with no erasures allowed (messages, codewords).
pub fn parse_symbols(field: &FiniteField, text: &str) -> Result<Vec<FieldElement>> {
    text.split_whitespace().map(|tok| field.parse_element(tok)).collect()
}

pub fn format_erased_word(field: &FiniteField, word: &ErasedWord, verbose: bool) -> String {
    let toks: Vec<String> = word
        .entries()
        .iter()
        .map(|e| match e {
            Some(a) => field.format_element(*a, verbose),
            None => ERASURE_TOKEN.to_string(),
        })
        .collect();
    let mut out = toks.join(" ");
    out.push('\n');
    out
}

pub fn format_codeword(field: &FiniteField, word: &Codeword, verbose: bool) -> String {
    format_erased_word(field, &ErasedWord::from(word), verbose)
}

/// One row per line, ranks separated by commas.
pub fn matrix_csv(matrix: &Matrix) -> String {
    let mut out = String::new();
    for row in matrix.iter_rows() {
        let cells: Vec<String> = row.iter().map(|a| a.rank().to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
