//! Witness-carrying results of the checkers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::span::{Span, SpanMorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanData {
    pub src: usize,
    pub tgt: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl From<&Span> for SpanData {
    fn from(s: &Span) -> Self {
        SpanData {
            src: s.src().size(),
            tgt: s.tgt().size(),
            left: s.left().table().to_vec(),
            right: s.right().table().to_vec(),
        }
    }
}

impl SpanData {
    pub fn to_span(&self) -> Result<Span> {
        Span::from_tables(self.src, self.tgt, self.left.clone(), self.right.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellData {
    pub source: SpanData,
    pub target: SpanData,
    pub map: Vec<usize>,
}

impl From<&SpanMorphism> for CellData {
    fn from(m: &SpanMorphism) -> Self {
        CellData {
            source: m.source().into(),
            target: m.target().into(),
            map: m.map().table().to_vec(),
        }
    }
}

impl CellData {
    pub fn to_morphism(&self) -> Result<SpanMorphism> {
        SpanMorphism::from_table(&self.source.to_span()?, &self.target.to_span()?, self.map.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A 2-cell exhibiting the property.
    Cell(CellData),
    /// An invertible 2-cell exhibiting the property.
    Iso(CellData),
    /// The property was verified by exhaustive search over `checked` cases.
    Exhaustive { checked: usize },
}

impl Witness {
    pub fn cell(m: &SpanMorphism) -> Self {
        Witness::Cell(m.into())
    }

    pub fn iso(m: &SpanMorphism) -> Self {
        Witness::Iso(m.into())
    }

    /// Re-validates the recorded tables.
    pub fn validate(&self) -> Result<()> {
        match self {
            Witness::Cell(c) => c.to_morphism().map(|_| ()),
            Witness::Iso(c) => {
                if c.to_morphism()?.is_invertible() {
                    Ok(())
                } else {
                    Err(Error::NotBijection)
                }
            }
            Witness::Exhaustive { .. } => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub kind: String,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell: Option<CellData>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub spans: Vec<SpanData>,
}

impl Counterexample {
    pub fn new(kind: &str, detail: impl Into<String>) -> Self {
        Counterexample {
            kind: kind.into(),
            detail: detail.into(),
            cell: None,
            spans: Vec::new(),
        }
    }

    pub fn with_cell(mut self, cell: CellData) -> Self {
        self.cell = Some(cell);
        self
    }

    pub fn with_spans<'a>(mut self, spans: impl IntoIterator<Item = &'a Span>) -> Self {
        self.spans = spans.into_iter().map(SpanData::from).collect();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub subject: String,
    pub holds: bool,
    /// The verdict rests on a sweep over a bounded family of test objects.
    #[serde(default)]
    pub bounded: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl AxiomReport {
    pub fn pass(subject: impl Into<String>, witness: Witness) -> Self {
        AxiomReport {
            subject: subject.into(),
            holds: true,
            bounded: false,
            witness: Some(witness),
            counterexample: None,
        }
    }

    pub fn fail(subject: impl Into<String>, counterexample: Counterexample) -> Self {
        AxiomReport {
            subject: subject.into(),
            holds: false,
            bounded: false,
            witness: None,
            counterexample: Some(counterexample),
        }
    }

    pub fn bounded(mut self) -> Self {
        self.bounded = true;
        self
    }

    /// A verdict is consistent when it carries exactly the datum it claims.
    pub fn is_consistent(&self) -> bool {
        self.holds == self.witness.is_some() && self.holds != self.counterexample.is_some()
    }

    /// Conjunction of several reports under a new subject. The first failure
    /// is kept as the counterexample.
    pub fn all(subject: impl Into<String>, parts: Vec<AxiomReport>) -> Self {
        let bounded = parts.iter().any(|p| p.bounded);
        let report = match parts.iter().find(|p| !p.holds) {
            Some(failed) => {
                let mut ce = failed
                    .counterexample
                    .clone()
                    .unwrap_or_else(|| Counterexample::new("failed", ""));
                ce.detail = format!("{}: {}", failed.subject, ce.detail);
                AxiomReport::fail(subject, ce)
            }
            None => {
                let witness = match parts.as_slice() {
                    [only] => only.witness.clone().expect("passing reports carry witnesses"),
                    _ => Witness::Exhaustive {
                        checked: parts.len(),
                    },
                };
                AxiomReport::pass(subject, witness)
            }
        };
        AxiomReport { bounded, ..report }
    }

    /// Validates the invariant and every recorded table.
    pub fn validate(&self) -> Result<()> {
        if !self.is_consistent() {
            return Err(Error::Precondition(format!(
                "report '{}' is inconsistent with its verdict",
                self.subject
            )));
        }
        if let Some(w) = &self.witness {
            w.validate()?;
        }
        Ok(())
    }
}
