//! The JSON interchange format for schemes. Indices are 1-based throughout.

use std::collections::BTreeMap;

use picod_core::schemes::Param;
use picod_core::{verify, Built, Instance, InstanceError, Scheme, Transmission};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("bad instance: {0}")]
    Instance(#[from] InstanceError),
    #[error("transmissions[{index}]: {detail}")]
    Transmission { index: usize, detail: String },
    #[error("length is {recorded} but there are {actual} transmissions")]
    Length { recorded: usize, actual: usize },
    #[error("assignment has {recorded} entries, expected m = {m}")]
    Assignment { recorded: usize, m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransmissionDoc {
    pub support: Vec<usize>,
    pub sender: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeDoc {
    pub name: String,
    pub params: BTreeMap<String, Param>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeDocument {
    pub m: usize,
    pub s: usize,
    pub transmissions: Vec<TransmissionDoc>,
    /// Message served to each user, `assignment[i - 1]` for user `i`.
    pub assignment: Vec<usize>,
    pub recipe: RecipeDoc,
    pub length: usize,
}

impl SchemeDocument {
    /// Document for a verified scheme. Panics if the scheme is not valid.
    pub fn from_built(built: &Built) -> Self {
        let scheme = built.scheme.with_resolved_senders();
        let report = verify(&scheme);
        let inst = scheme.instance();
        SchemeDocument {
            m: inst.m(),
            s: inst.s(),
            transmissions: scheme
                .transmissions()
                .iter()
                .map(|t| TransmissionDoc {
                    support: t.support().to_vec(),
                    sender: t.sender().expect("built schemes have senders"),
                })
                .collect(),
            assignment: report.assignment.expect("built schemes are correct"),
            recipe: RecipeDoc {
                name: built.recipe.name.clone(),
                params: built.recipe.params.clone(),
            },
            length: scheme.len(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let doc: SchemeDocument = serde_json::from_str(text)?;
        if doc.length != doc.transmissions.len() {
            return Err(DocumentError::Length {
                recorded: doc.length,
                actual: doc.transmissions.len(),
            });
        }
        if doc.assignment.len() != doc.m {
            return Err(DocumentError::Assignment {
                recorded: doc.assignment.len(),
                m: doc.m,
            });
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("documents serialize");
        out.push('\n');
        out
    }

    /// The scheme described, with each recorded sender attached.
    pub fn to_scheme(&self) -> Result<Scheme, DocumentError> {
        let inst = Instance::new(self.m, self.s)?;
        let txs = self
            .transmissions
            .iter()
            .enumerate()
            .map(|(index, t)| {
                Transmission::new(t.support.iter().copied())
                    .map(|tx| tx.with_sender(t.sender))
                    .map_err(|e| DocumentError::Transmission {
                        index,
                        detail: e.to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Scheme::new(inst, txs).map_err(|e| DocumentError::Transmission {
            index: 0,
            detail: e.to_string(),
        })
    }
}
