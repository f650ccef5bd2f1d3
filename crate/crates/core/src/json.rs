//! JSON documents for matrices, objects, morphisms and sequences.
//!
//! Entries are strings (`"3"`, `"-1/2"`), never floats; over `F_p` they are
//! residues in `0..p`. The field is declared once per document with a
//! top-level `{"field": "Q"}` or `{"field": "Fp", "p": 7}`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{NilError, Result};
use crate::matrix::Mat;
use crate::object::{JordanType, NilMorphism, NilObject};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Text(String),
    Int(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Entry>>,
}

impl MatDoc {
    pub fn encode(m: &Mat) -> MatDoc {
        MatDoc {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows()).map(|i| m.row(i).iter().map(|s| Entry::Text(s.to_string())).collect()).collect(),
        }
    }

    pub fn decode(&self, field: Field) -> Result<Mat> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(NilError::Parse(format!("entries do not form a {}x{} array", self.rows, self.cols)));
        }
        let data = self
            .entries
            .iter()
            .flatten()
            .map(|e| match e {
                Entry::Text(s) => Scalar::parse(field, s),
                Entry::Int(v) => Ok(Scalar::from_i64(field, *v)),
            })
            .collect::<Result<Vec<_>>>()?;
        Mat::from_vec(field, self.rows, self.cols, data)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectDoc {
    Explicit { dim: usize, endo: MatDoc },
    Jordan { jordan_type: Vec<usize> },
}

impl ObjectDoc {
    pub fn encode(a: &NilObject) -> ObjectDoc {
        ObjectDoc::Explicit { dim: a.dim(), endo: MatDoc::encode(a.endo()) }
    }

    pub fn decode(&self, field: Field) -> Result<NilObject> {
        match self {
            ObjectDoc::Explicit { dim, endo } => NilObject::new(*dim, endo.decode(field)?),
            ObjectDoc::Jordan { jordan_type } => {
                Ok(NilObject::from_jordan_type(field, &JordanType::new(jordan_type.clone())?))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub src: ObjectDoc,
    pub dst: ObjectDoc,
    pub mat: MatDoc,
}

impl MorphismDoc {
    pub fn encode(f: &NilMorphism) -> MorphismDoc {
        MorphismDoc { src: ObjectDoc::encode(f.src()), dst: ObjectDoc::encode(f.dst()), mat: MatDoc::encode(f.mat()) }
    }

    pub fn decode(&self, field: Field) -> Result<NilMorphism> {
        NilMorphism::new(self.src.decode(field)?, self.dst.decode(field)?, self.mat.decode(field)?)
    }
}

/// A composable pair `f`, `g` checked for exactness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDoc {
    pub f: MorphismDoc,
    pub g: MorphismDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl FieldDoc {
    pub fn encode(field: Field) -> FieldDoc {
        match field {
            Field::Rationals => FieldDoc { field: "Q".into(), p: None },
            Field::Prime(p) => FieldDoc { field: "Fp".into(), p: Some(p) },
        }
    }

    pub fn decode(&self) -> Result<Field> {
        match (self.field.as_str(), self.p) {
            ("Q", None) => Ok(Field::Rationals),
            ("Fp", Some(p)) => Field::prime(p),
            _ => Err(NilError::Parse(format!("unknown field declaration {:?}", self))),
        }
    }
}

/// The field declared at the top level of a document, if any.
pub fn declared_field(doc: &Value) -> Result<Option<Field>> {
    match doc.get("field") {
        None => Ok(None),
        Some(_) => {
            let fd = FieldDoc {
                field: doc["field"].as_str().ok_or_else(|| NilError::Parse("\"field\" must be a string".into()))?.into(),
                p: match doc.get("p") {
                    None => None,
                    Some(p) => Some(p.as_u64().ok_or_else(|| NilError::Parse("\"p\" must be an integer".into()))?),
                },
            };
            fd.decode().map(Some)
        }
    }
}

pub fn from_value<T: DeserializeOwned>(doc: &Value) -> Result<T> {
    T::deserialize(doc).map_err(|e| NilError::Parse(e.to_string()))
}

pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| NilError::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    const Q: Field = Field::Rationals;

    #[test]
    fn matrix_round_trip() {
        let m = Mat::from_fn(Q, 2, 3, |i, j| Scalar::parse(Q, &format!("{}/{}", i as i64 - j as i64, j + 1)).unwrap());
        let doc = MatDoc::encode(&m);
        let text = serde_json::to_string(&doc).unwrap();
        let back: MatDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.decode(Q).unwrap(), m);
        assert!(text.contains("\"-1/2\""));
    }

    #[test]
    fn prime_field_entries_are_reduced() {
        let f7 = Field::prime(7).unwrap();
        let doc: MatDoc = from_value(&json!({"rows": 1, "cols": 2, "entries": [["-1", "9"]]})).unwrap();
        let m = doc.decode(f7).unwrap();
        assert_eq!(MatDoc::encode(&m).entries, vec![vec![Entry::Text("6".into()), Entry::Text("2".into())]]);
    }

    #[test]
    fn ragged_entries_are_rejected() {
        let doc: MatDoc = from_value(&json!({"rows": 2, "cols": 2, "entries": [["1", "0"], ["0"]]})).unwrap();
        assert!(matches!(doc.decode(Q), Err(NilError::Parse(_))));
    }

    #[test]
    fn objects_from_jordan_type_and_explicit() {
        let doc: ObjectDoc = from_value(&json!({"jordan_type": [2, 1]})).unwrap();
        let a = doc.decode(Q).unwrap();
        assert_eq!(a, NilObject::from_jordan_type(Q, &JordanType::new(vec![2, 1]).unwrap()));
        let doc: ObjectDoc = from_value(&json!({"dim": 2, "endo": {"rows": 2, "cols": 2, "entries": [["1","0"],["0","0"]]}})).unwrap();
        assert_eq!(doc.decode(Q), Err(NilError::NotNilpotent(2)));
    }

    #[test]
    fn field_declarations() {
        assert_eq!(declared_field(&json!({"field": "Q"})).unwrap(), Some(Q));
        assert_eq!(declared_field(&json!({"field": "Fp", "p": 7})).unwrap(), Some(Field::Prime(7)));
        assert_eq!(declared_field(&json!({})).unwrap(), None);
        assert!(declared_field(&json!({"field": "Fp", "p": 8})).is_err());
        assert_eq!(FieldDoc::encode(Field::Prime(5)).decode().unwrap(), Field::Prime(5));
    }
}
