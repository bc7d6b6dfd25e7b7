//! JSON documents for forms, kernels, vectors and results.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use sesqui::{ComplexMatrix, ComplexVector, Form, Kernel, Tolerances};

use crate::CliError;

/// `[re, im]`.
pub type ComplexDoc = [f64; 2];
pub type MatrixDoc = Vec<Vec<ComplexDoc>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub dim: usize,
    pub matrix: MatrixDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelDoc {
    pub set_size: usize,
    pub block_dim: usize,
    pub blocks: Vec<Vec<MatrixDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TolerancesDoc {
    pub sym: f64,
    pub psd: f64,
    pub recon: f64,
    pub rank: f64,
}

impl From<Tolerances> for TolerancesDoc {
    fn from(t: Tolerances) -> Self {
        TolerancesDoc {
            sym: t.sym,
            psd: t.psd,
            recon: t.recon,
            rank: t.rank,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Envelope<R: Serialize> {
    pub command: String,
    pub tolerances: TolerancesDoc,
    pub result: R,
}

pub fn complex_doc(z: Complex64) -> ComplexDoc {
    // canonical zero sign
    [z.re + 0.0, z.im + 0.0]
}

pub fn matrix_doc(m: &ComplexMatrix) -> MatrixDoc {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| complex_doc(m[(r, c)])).collect())
        .collect()
}

pub fn vector_doc(v: &ComplexVector) -> Vec<ComplexDoc> {
    v.iter().map(|&z| complex_doc(z)).collect()
}

pub fn form_doc(f: &Form) -> FormDoc {
    FormDoc {
        dim: f.dim(),
        matrix: matrix_doc(f.matrix()),
    }
}

pub fn kernel_doc(k: &Kernel) -> KernelDoc {
    let m = k.set_size();
    KernelDoc {
        set_size: m,
        block_dim: k.block_dim(),
        blocks: (0..m)
            .map(|s| (0..m).map(|t| matrix_doc(k.block(s, t))).collect())
            .collect(),
        labels: k.labels().map(|l| l.to_vec()),
    }
}

fn matrix_from_doc(doc: &MatrixDoc, rows: usize, cols: usize, field: &str) -> Result<ComplexMatrix, CliError> {
    if doc.len() != rows {
        return Err(CliError::Validation(format!(
            "field `{field}`: {} rows, expected {rows}",
            doc.len()
        )));
    }
    for (r, row) in doc.iter().enumerate() {
        if row.len() != cols {
            return Err(CliError::Validation(format!(
                "field `{field}`: row {r} has {} entries, expected {cols}",
                row.len()
            )));
        }
    }
    Ok(ComplexMatrix::from_fn(rows, cols, |r, c| {
        let [re, im] = doc[r][c];
        Complex64::new(re, im)
    }))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{}: {e}", path.display()))
}

pub fn form_from_doc(doc: &FormDoc, tol: Tolerances) -> Result<Form, CliError> {
    let m = matrix_from_doc(&doc.matrix, doc.dim, doc.dim, "matrix")?;
    Form::with_tolerances(m, tol).map_err(|e| CliError::Validation(e.to_string()))
}

pub fn read_form(path: &Path, tol: Tolerances) -> Result<Form, CliError> {
    let doc: FormDoc = read_json(path)?;
    form_from_doc(&doc, tol).map_err(|e| located(path, e))
}

pub fn kernel_from_doc(doc: &KernelDoc, tol: Tolerances) -> Result<Kernel, CliError> {
    let (m, d) = (doc.set_size, doc.block_dim);
    if doc.blocks.len() != m {
        return Err(CliError::Validation(format!(
            "field `blocks`: {} block rows, expected {m}",
            doc.blocks.len()
        )));
    }
    let mut blocks = Vec::with_capacity(m * m);
    for (s, row) in doc.blocks.iter().enumerate() {
        if row.len() != m {
            return Err(CliError::Validation(format!(
                "field `blocks`: block row {s} has {} blocks, expected {m}",
                row.len()
            )));
        }
        for (t, block) in row.iter().enumerate() {
            blocks.push(matrix_from_doc(block, d, d, &format!("blocks[{s}][{t}]"))?);
        }
    }
    let k = Kernel::with_tolerances(m, d, blocks, tol).map_err(|e| CliError::Validation(e.to_string()))?;
    match &doc.labels {
        Some(labels) => k
            .with_labels(labels.clone())
            .map_err(|e| CliError::Validation(format!("field `labels`: {e}"))),
        None => Ok(k),
    }
}

pub fn read_kernel(path: &Path, tol: Tolerances) -> Result<Kernel, CliError> {
    let doc: KernelDoc = read_json(path)?;
    kernel_from_doc(&doc, tol).map_err(|e| located(path, e))
}

/// A JSON array of `[re, im]` pairs.
pub fn read_vector(path: &Path, dim: usize) -> Result<ComplexVector, CliError> {
    let doc: Vec<ComplexDoc> = read_json(path)?;
    if doc.len() != dim {
        return Err(located(path, format!("vector has {} entries, expected {dim}", doc.len())));
    }
    if doc.iter().flatten().any(|x| !x.is_finite()) {
        return Err(located(path, "vector has a non-finite entry"));
    }
    Ok(ComplexVector::from_iterator(dim, doc.iter().map(|&[re, im]| Complex64::new(re, im))))
}

/// Pretty JSON with matrix rows and complex entries kept on one line.
pub fn render<R: Serialize>(envelope: &Envelope<R>) -> String {
    let value = serde_json::to_value(envelope).expect("result documents serialize");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_flat) => {
            out.push_str(&serde_json::to_string(v).expect("flat array").replace(',', ", "));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(key).expect("string key"));
                out.push_str(": ");
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalar")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_documents_round_trip_bitwise() {
        let mut rng = sesqui::random::seeded(7);
        let f = sesqui::random::random_form(4, 3, &mut rng);
        let text = serde_json::to_string(&form_doc(&f)).unwrap();
        let back: FormDoc = serde_json::from_str(&text).unwrap();
        let m = matrix_from_doc(&back.matrix, back.dim, back.dim, "matrix").unwrap();
        // emitted entries carry a canonical zero sign
        let same = |a: f64, b: f64| (a + 0.0).to_bits() == b.to_bits();
        assert!(f.matrix().iter().zip(m.iter()).all(|(a, b)| same(a.re, b.re) && same(a.im, b.im)));
    }

    #[test]
    fn ragged_matrix_names_the_row() {
        let doc = FormDoc {
            dim: 2,
            matrix: vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[1.0, 0.0]]],
        };
        let e = form_from_doc(&doc, Tolerances::default()).unwrap_err();
        assert_eq!(e.to_string(), "field `matrix`: row 1 has 1 entries, expected 2");
    }

    #[test]
    fn kernel_documents_round_trip() {
        let k = Kernel::identity(2, 2).with_labels(vec!["a".into(), "b".into()]).unwrap();
        let text = serde_json::to_string(&kernel_doc(&k)).unwrap();
        let back = kernel_from_doc(&serde_json::from_str(&text).unwrap(), Tolerances::default()).unwrap();
        assert_eq!(back.max_block_diff(&k), 0.0);
        assert_eq!(back.labels().unwrap(), ["a", "b"]);
    }
}
