use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::codes::{DistanceProvenance, LinearCode};
use crate::error::{Error, Result};
use crate::galois::Field;

/// Parameter summary emitted next to generator matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub p: u32,
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub d_lb: usize,
    pub provenance: DistanceProvenance,
}

impl LinearCode {
    /// One row per line, entries separated by single spaces. Prime-field
    /// entries are written as integers, extension entries as `e<j>` or `0`.
    pub fn to_matrix_text(&self) -> String {
        let f = self.field();
        let mut out = String::new();
        for row in self.basis() {
            for (i, &x) in row.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                if f.m() == 1 {
                    write!(out, "{}", x.raw()).unwrap();
                } else {
                    out.push_str(&f.format_elem(x));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Reads the matrix text format. Blank lines are skipped; `n` is needed
/// because a matrix with no rows does not determine its width.
pub fn parse_matrix(field: &Arc<Field>, n: usize, text: &str) -> Result<LinearCode> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| field.parse_elem(tok))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        rows.push(row);
    }
    LinearCode::new(field, n, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FieldElem;

    #[test]
    fn round_trip_prime_and_extension() {
        let f3 = Arc::new(Field::new(3, 1).unwrap());
        let c = LinearCode::new(
            &f3,
            3,
            vec![vec![f3.from_int(1), f3.from_int(2), f3.from_int(0)]],
        )
        .unwrap();
        assert_eq!(c.to_matrix_text(), "1 2 0\n");
        assert_eq!(parse_matrix(&f3, 3, &c.to_matrix_text()).unwrap(), c);

        let f8 = Arc::new(Field::new(2, 3).unwrap());
        let c = LinearCode::new(&f8, 2, vec![vec![FieldElem::ONE, f8.eta_pow(4)]]).unwrap();
        assert_eq!(c.to_matrix_text(), "e0 e4\n");
        assert_eq!(parse_matrix(&f8, 2, "e0 e4\n\n").unwrap(), c);
        assert!(parse_matrix(&f8, 2, "e0 x\n").is_err());
    }

    #[test]
    fn summary_json() {
        let f = Arc::new(Field::new(2, 1).unwrap());
        let s = LinearCode::full(&f, 3)
            .with_distance(1, DistanceProvenance::DesignMds)
            .summary();
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"p":2,"m":1,"n":3,"k":3,"d_lb":1,"provenance":"design (MDS)"}"#
        );
    }
}
