//! TOML documents describing one bound-quiver algebra and, optionally, a
//! weight poset on its vertices.
//!
//! ```toml
//! name = "two-cycle"
//! characteristic = 2
//! vertices = ["1", "2"]
//!
//! [[arrows]]
//! label = "a"
//! source = "1"
//! target = "2"
//! grade = 1
//!
//! [[relations]]
//! terms = [{ coeff = 1, path = "a b" }]
//!
//! [poset]
//! covers = [["1", "2"]]
//! ```
//!
//! Paths are arrow labels separated by spaces, the rightmost acting first.
//! A cover `[x, y]` means `x < y`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{GrexError, Result};
use crate::exact::Field;
use crate::gradalg::{build_algebra, ArrowSpec, GradedAlgebra, QuiverSpec, RelationTerm};
use crate::qha::WeightPoset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: i64,
    pub path: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub covers: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// 0 for ℚ, otherwise a prime.
    pub characteristic: u64,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<RelationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetDoc>,
}

impl AlgebraDoc {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: AlgebraDoc = toml::from_str(text).map_err(|e| GrexError::Parse(e.to_string()))?;
        Field::from_characteristic(doc.characteristic)?;
        Ok(doc)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| GrexError::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_text(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| GrexError::Parse(e.to_string()))
    }

    pub fn from_quiver(spec: &QuiverSpec, poset: Option<&WeightPoset>) -> Self {
        AlgebraDoc {
            name: None,
            characteristic: spec.field.characteristic(),
            vertices: spec.vertices.clone(),
            arrows: spec.arrows.clone(),
            relations: spec
                .relations
                .iter()
                .map(|r| RelationDoc { terms: r.iter().map(|t| TermDoc { coeff: t.coeff, path: t.path.join(" ") }).collect() })
                .collect(),
            poset: poset.map(|p| PosetDoc { covers: p.covers().into_iter().map(|(a, b)| (p.labels[a].clone(), p.labels[b].clone())).collect() }),
        }
    }

    pub fn quiver(&self) -> Result<QuiverSpec> {
        Ok(QuiverSpec {
            field: Field::from_characteristic(self.characteristic)?,
            vertices: self.vertices.clone(),
            arrows: self.arrows.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| r.terms.iter().map(|t| RelationTerm { coeff: t.coeff, path: t.path.split_whitespace().map(str::to_string).collect() }).collect())
                .collect(),
        })
    }

    pub fn build(&self) -> Result<Arc<GradedAlgebra>> {
        Ok(Arc::new(build_algebra(&self.quiver()?)?))
    }

    /// The declared poset, or the chain in vertex order when none is given.
    pub fn weight_poset(&self, a: &GradedAlgebra) -> Result<WeightPoset> {
        match &self.poset {
            None => Ok(WeightPoset::chain(a)),
            Some(p) => {
                let pairs: Vec<(&str, &str)> = p.covers.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
                WeightPoset::for_algebra(a, &pairs)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_CYCLE: &str = r#"
name = "two-cycle"
characteristic = 2
vertices = ["1", "2"]

[[arrows]]
label = "a"
source = "1"
target = "2"
grade = 1

[[arrows]]
label = "b"
source = "2"
target = "1"
grade = 1

[[relations]]
terms = [{ coeff = 1, path = "a b" }]

[poset]
covers = [["1", "2"]]
"#;

    #[test]
    fn parse_build_and_round_trip() {
        let doc = AlgebraDoc::parse(TWO_CYCLE).unwrap();
        let a = doc.build().unwrap();
        assert_eq!(a.dim(), 5);
        let p = doc.weight_poset(&a).unwrap();
        assert!(p.lt(0, 1));
        let text = doc.to_text().unwrap();
        let again = AlgebraDoc::parse(&text).unwrap();
        assert_eq!(again, doc);
        assert_eq!(again.to_text().unwrap(), text);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(AlgebraDoc::parse("characteristic = 4\nvertices = [\"1\"]"), Err(GrexError::InvalidInput(_))));
        assert!(matches!(AlgebraDoc::parse("vertices = [\"1\"]"), Err(GrexError::Parse(_))));
        assert!(matches!(AlgebraDoc::parse("characteristic = 2\nvertices = [\"1\"]\nextra = 1"), Err(GrexError::Parse(_))));
    }
}
