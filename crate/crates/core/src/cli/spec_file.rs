//! JSON interchange format for algebra presentations.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{Arrow, Presentation, Quiver, Relation};
use crate::error::{Error, Result};
use crate::linalg::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: usize,
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: i64,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldSpec,
    pub quiver: QuiverSpec,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    pub truncation: usize,
}

impl AlgebraSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::SpecFile(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::SpecFile(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec files always serialize");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())
            .map_err(|e| Error::SpecFile(format!("{}: {e}", path.display())))
    }

    /// Validates the quiver and reduces every coefficient into `[0, p)`.
    pub fn to_presentation(&self) -> Result<Presentation> {
        let field = PrimeField::new(self.field.p)?;
        let arrows = self
            .quiver
            .arrows
            .iter()
            .map(|a| Arrow::new(a.name.clone(), a.source, a.target))
            .collect();
        let quiver = Quiver::new(self.quiver.vertices, arrows)?;
        let relations = self
            .relations
            .iter()
            .map(|terms| {
                Relation::new(
                    terms
                        .iter()
                        .map(|t| (i64::from(field.reduce(t.coeff)), t.path.clone()))
                        .collect(),
                )
            })
            .collect();
        let p = Presentation::new(field, quiver, relations, self.truncation);
        Ok(match &self.name {
            Some(name) => p.named(name.clone()),
            None => p,
        })
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        Self {
            name: p.name.clone(),
            field: FieldSpec {
                p: u64::from(p.field.modulus()),
            },
            quiver: QuiverSpec {
                vertices: p.quiver.vertex_count(),
                arrows: p
                    .quiver
                    .arrows()
                    .iter()
                    .map(|a| ArrowSpec {
                        name: a.name.clone(),
                        source: a.source,
                        target: a.target,
                    })
                    .collect(),
            },
            relations: p
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(coeff, path)| TermSpec {
                            coeff: *coeff,
                            path: path.clone(),
                        })
                        .collect()
                })
                .collect(),
            truncation: p.truncation,
        }
    }
}
