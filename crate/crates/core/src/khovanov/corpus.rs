//! Named diagrams for regression runs, stored as a JSON array of
//! `{name, family?, strands, braid}` or `{name, family?, pd}`. Entries of
//! the same family are diagrams of the same link.

use serde::{Deserialize, Serialize};

use super::{parse_braid, parse_pd, Diagram};
use crate::error::KhovanovError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strands: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braid: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd: Option<String>,
}

impl CorpusEntry {
    pub fn diagram(&self) -> Result<Diagram, KhovanovError> {
        match (&self.braid, &self.strands, &self.pd) {
            (Some(w), Some(m), None) => Ok(Diagram::from_braid(&parse_braid(w, *m)?)),
            (None, None, Some(pd)) => Ok(Diagram::from_pd(&parse_pd(pd)?)),
            _ => Err(KhovanovError::MalformedDiagram(format!(
                "corpus entry {:?} needs either `strands` and `braid`, or `pd`",
                self.name
            ))),
        }
    }
}

pub fn parse_corpus(json: &str) -> Result<Vec<CorpusEntry>, KhovanovError> {
    serde_json::from_str(json).map_err(|e| KhovanovError::Parse { line: e.line().max(1), column: e.column().max(1), msg: e.to_string() })
}
