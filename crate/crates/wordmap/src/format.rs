//! JSON formats for matrices and constant bindings.
//!
//! A matrix is a row-major array of rows whose entries are scalar literals,
//! either strings (`"1/2"`, `"i"`) or JSON integers. A binding file is an
//! object with an optional `"ring"` string and one matrix per constant:
//!
//! ```json
//! {"ring": "Fp:13", "s1": [["2", "0"], ["0", "7"]]}
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::Value;
use wordmap_core::eval::Binding;
use wordmap_core::literal::parse_scalar;
use wordmap_core::matrix::Matrix;
use wordmap_core::ring::{RingDescriptor, Scalar};

use crate::CliError;

/// Rendered matrix: rows of canonical scalar strings.
pub type MatrixJson = Vec<Vec<String>>;

pub fn matrix_to_json(ring: &RingDescriptor, m: &Matrix) -> MatrixJson {
    m.rows().iter().map(|row| row.iter().map(|a| ring.render(a)).collect()).collect()
}

fn scalar_from_value(ring: &RingDescriptor, v: &Value) -> Result<Scalar, CliError> {
    match v {
        Value::String(s) => Ok(parse_scalar(ring, s)?),
        Value::Number(n) => match n.as_i64() {
            Some(k) => Ok(ring.from_int(k)),
            None => Err(CliError::Input(format!("matrix entry {n} is not an integer; quote fractions as strings"))),
        },
        other => Err(CliError::Input(format!("matrix entry {other} is neither a string nor an integer"))),
    }
}

pub fn matrix_from_value(ring: &RingDescriptor, v: &Value) -> Result<Matrix, CliError> {
    let rows = v.as_array().ok_or_else(|| CliError::Input("a matrix must be an array of rows".into()))?;
    let rows: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| CliError::Input("each matrix row must be an array".into()))?
                .iter()
                .map(|e| scalar_from_value(ring, e))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    Matrix::from_rows(rows).map_err(|e| CliError::Input(e.to_string()))
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_matrix(ring: &RingDescriptor, path: &Path) -> Result<Matrix, CliError> {
    matrix_from_value(ring, &read_json(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// A parsed binding file before the ring is known.
pub struct SigmaFile {
    pub ring: Option<String>,
    pub matrices: BTreeMap<String, Value>,
}

pub fn read_sigma(path: &Path) -> Result<SigmaFile, CliError> {
    let Value::Object(map) = read_json(path)? else {
        return Err(CliError::Input(format!("{}: binding file must be a JSON object", path.display())));
    };
    let mut ring = None;
    let mut matrices = BTreeMap::new();
    for (k, v) in map {
        if k == "ring" {
            let s = v.as_str().ok_or_else(|| CliError::Input("\"ring\" must be a string".into()))?;
            ring = Some(s.to_string());
        } else {
            matrices.insert(k, v);
        }
    }
    Ok(SigmaFile { ring, matrices })
}

impl SigmaFile {
    pub fn binding(&self, ring: &RingDescriptor) -> Result<Binding, CliError> {
        let mut b = Binding::new();
        for (name, v) in &self.matrices {
            let m = matrix_from_value(ring, v).map_err(|e| CliError::Input(format!("constant {name}: {e}")))?;
            b.insert(ring, name, m)?;
        }
        Ok(b)
    }
}
