//! JSON exchange format for complex series matrices:
//! `{"n": 2, "entries": [[{"re": "1", "im": "0"}, ...], ...]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Complex;
use crate::parse::parse_series;
use crate::series::SeriesScalar;

use super::{HermitianForm, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexEntry {
    pub re: String,
    #[serde(default = "zero_literal")]
    pub im: String,
}

fn zero_literal() -> String {
    "0".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub n: usize,
    pub entries: Vec<Vec<ComplexEntry>>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &Matrix<Complex<SeriesScalar>>) -> Self {
        MatrixDoc {
            n: m.rows(),
            entries: m
                .to_rows()
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|z| ComplexEntry { re: z.re.to_string(), im: z.im.to_string() })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix<Complex<SeriesScalar>>> {
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.n) {
            return Err(Error::DimensionMismatch(format!("entries do not form a {0}x{0} matrix", self.n)));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| Ok(Complex::new(parse_series(&e.re)?, parse_series(&e.im)?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }
}

pub fn form_from_json(text: &str) -> Result<HermitianForm<SeriesScalar>> {
    let doc: MatrixDoc = serde_json::from_str(text)?;
    HermitianForm::new(doc.to_matrix()?)
}

pub fn form_to_json(phi: &HermitianForm<SeriesScalar>) -> String {
    serde_json::to_string(&MatrixDoc::from_matrix(phi.entries())).expect("matrix document serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"n": 2, "entries": [[{"re": "h", "im": "0"}, {"re": "0", "im": "1/2*h"}],
                                        [{"re": "0", "im": "-1/2*h"}, {"re": "h"}]]}"#;
        let phi = form_from_json(text).unwrap();
        assert_eq!(phi.n(), 2);
        let again = form_from_json(&form_to_json(&phi)).unwrap();
        assert_eq!(again, phi);
    }

    #[test]
    fn rejects_bad_shapes() {
        let text = r#"{"n": 2, "entries": [[{"re": "1", "im": "0"}]]}"#;
        assert!(matches!(form_from_json(text), Err(Error::DimensionMismatch(_))));
        assert!(matches!(form_from_json("{"), Err(Error::Syntax { .. })));
    }
}
