//! File formats: algebra descriptors, representation files, Kronecker
//! files, and LaTeX rendering. Rationals are always strings.

use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::algebra::CanonicalAlgebra;
use crate::error::{Error, Result};
use crate::kronecker::ThetaRep;
use crate::linalg::Matrix;
use crate::representation::Rep;
use crate::scalar::{format_scalar, latex_scalar, parse_scalar, Scalar};
use crate::weight::WeightSequence;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub weights: Vec<i64>,
    pub lambdas: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub algebra: AlgebraFile,
    pub dims: IndexMap<String, usize>,
    pub mats: IndexMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KronFile {
    pub n: usize,
    pub v: usize,
    pub u: usize,
    pub mats: Vec<Vec<Vec<String>>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn to_json<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn matrix_rows<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_scalar).collect())
        .collect()
}

fn matrix_from_rows<T: Scalar>(
    rows: &[Vec<String>],
    shape: (usize, usize),
    at: &str,
) -> Result<Matrix<T>> {
    if rows.len() != shape.0 {
        return Err(Error::Dimension(format!(
            "at {at}: expected {} rows, got {}",
            shape.0,
            rows.len()
        )));
    }
    let mut data = Vec::with_capacity(shape.0 * shape.1);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != shape.1 {
            return Err(Error::Dimension(format!(
                "at {at}[{i}]: expected {} entries, got {}",
                shape.1,
                row.len()
            )));
        }
        for (j, s) in row.iter().enumerate() {
            let x = parse_scalar(s)
                .map_err(|_| Error::Parse(format!("at {at}[{i}][{j}]: invalid rational `{s}`")))?;
            data.push(x);
        }
    }
    Matrix::new(shape.0, shape.1, data)
}

pub fn algebra_file<T: Scalar>(alg: &CanonicalAlgebra<T>) -> AlgebraFile {
    AlgebraFile {
        weights: alg.weights().weights().to_vec(),
        lambdas: alg.lambdas().iter().map(format_scalar).collect(),
    }
}

pub fn algebra_from_file<T: Scalar>(f: &AlgebraFile) -> Result<CanonicalAlgebra<T>> {
    let lambdas = f
        .lambdas
        .iter()
        .enumerate()
        .map(|(i, s)| {
            parse_scalar(s).map_err(|_| {
                Error::Parse(format!("at algebra.lambdas[{i}]: invalid rational `{s}`"))
            })
        })
        .collect::<Result<Vec<T>>>()?;
    CanonicalAlgebra::new(WeightSequence::new(f.weights.clone())?, lambdas)
}

pub fn emit_algebra<T: Scalar>(alg: &CanonicalAlgebra<T>) -> String {
    to_json(&algebra_file(alg))
}

pub fn parse_algebra<T: Scalar>(text: &str) -> Result<CanonicalAlgebra<T>> {
    let f: AlgebraFile = serde_json::from_str(text).map_err(json_error)?;
    algebra_from_file(&f)
}

pub fn rep_file<T: Scalar>(m: &Rep<T>) -> RepFile {
    let alg = m.algebra();
    RepFile {
        algebra: algebra_file(alg),
        dims: alg
            .vertices()
            .iter()
            .zip(m.dims())
            .map(|(v, &d)| (v.label(), d))
            .collect(),
        mats: alg
            .arrows()
            .iter()
            .zip(m.mats())
            .map(|(a, mat)| (a.label(), matrix_rows(mat)))
            .collect(),
    }
}

pub fn emit_rep<T: Scalar>(m: &Rep<T>) -> String {
    to_json(&rep_file(m))
}

/// Parses a representation file. Shapes are checked against the dims
/// map; relations are not.
pub fn parse_rep<T: Scalar>(text: &str) -> Result<Rep<T>> {
    let f: RepFile = serde_json::from_str(text).map_err(json_error)?;
    rep_from_file(&f)
}

pub fn rep_from_file<T: Scalar>(f: &RepFile) -> Result<Rep<T>> {
    let alg = Arc::new(algebra_from_file::<T>(&f.algebra)?);
    rep_from_file_over(f, alg)
}

/// Like `rep_from_file` but reuses an existing algebra handle, which must
/// match the descriptor.
pub fn rep_from_file_over<T: Scalar>(f: &RepFile, alg: Arc<CanonicalAlgebra<T>>) -> Result<Rep<T>> {
    if algebra_file(&alg) != f.algebra {
        return Err(Error::AlgebraMismatch);
    }
    for key in f.dims.keys() {
        if alg.vertex_by_label(key).is_none() {
            return Err(Error::Parse(format!("at dims.{key}: unknown vertex")));
        }
    }
    for key in f.mats.keys() {
        if alg.arrow_by_label(key).is_none() {
            return Err(Error::Parse(format!("at mats.{key}: unknown arrow")));
        }
    }
    let dims = alg
        .vertices()
        .iter()
        .map(|v| {
            let l = v.label();
            f.dims
                .get(&l)
                .copied()
                .ok_or_else(|| Error::Parse(format!("at dims: missing vertex {l}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mats = alg
        .arrows()
        .iter()
        .map(|&a| {
            let l = a.label();
            let rows = f
                .mats
                .get(&l)
                .ok_or_else(|| Error::Parse(format!("at mats: missing arrow {l}")))?;
            let shape = (
                dims[alg.vertex_index(alg.source(a))],
                dims[alg.vertex_index(alg.target(a))],
            );
            matrix_from_rows(rows, shape, &format!("mats.{l}"))
        })
        .collect::<Result<Vec<_>>>()?;
    Rep::new(alg, dims, mats)
}

pub fn emit_kron<T: Scalar>(k: &ThetaRep<T>) -> String {
    to_json(&KronFile {
        n: k.n(),
        v: k.v(),
        u: k.u(),
        mats: k.mats().iter().map(matrix_rows).collect(),
    })
}

pub fn parse_kron<T: Scalar>(text: &str) -> Result<ThetaRep<T>> {
    let f: KronFile = serde_json::from_str(text).map_err(json_error)?;
    if f.mats.len() != f.n {
        return Err(Error::Dimension(format!(
            "n = {} but {} matrices",
            f.n,
            f.mats.len()
        )));
    }
    let mats = f
        .mats
        .iter()
        .enumerate()
        .map(|(m, rows)| matrix_from_rows(rows, (f.v, f.u), &format!("mats[{m}]")))
        .collect::<Result<Vec<_>>>()?;
    ThetaRep::new(f.v, f.u, mats)
}

/// `\begin{pmatrix} ... \end{pmatrix}`, or `0_{r \times c}` when a side is
/// empty.
pub fn latex_matrix<T: Scalar>(m: &Matrix<T>) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("0_{{{} \\times {}}}", m.rows(), m.cols());
    }
    let body: Vec<String> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(latex_scalar)
                .collect::<Vec<_>>()
                .join(" & ")
        })
        .collect();
    format!(
        "\\begin{{pmatrix}} {} \\end{{pmatrix}}",
        body.join(" \\\\ ")
    )
}

/// One display-math line per arrow, preceded by the dimension vector.
pub fn latex_rep<T: Scalar>(m: &Rep<T>) -> String {
    let alg = m.algebra();
    let dims: Vec<String> = m.dims().iter().map(usize::to_string).collect();
    let mut out = format!("% dimension vector ({})\n", dims.join(", "));
    for (a, mat) in alg.arrows().iter().zip(m.mats()) {
        out.push_str(&format!("\\[ {} = {} \\]\n", a.latex(), latex_matrix(mat)));
    }
    out
}

pub fn latex_kron<T: Scalar>(k: &ThetaRep<T>) -> String {
    let mut out = format!(
        "% Theta({}) representation of dimension ({}, {})\n",
        k.n(),
        k.v(),
        k.u()
    );
    for (m, mat) in k.mats().iter().enumerate() {
        out.push_str(&format!(
            "\\[ A_{{{}}} = {} \\]\n",
            m + 1,
            latex_matrix(mat)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio_i64;
    use crate::small_rank::{rank_one, RankOneSpec};
    use crate::{Rational, Rep as QRep};

    fn alg() -> Arc<CanonicalAlgebra<Rational>> {
        Arc::new(
            CanonicalAlgebra::new(
                WeightSequence::new(vec![2, 3, 7]).unwrap(),
                vec![ratio_i64(0, 1), ratio_i64(1, 1)],
            )
            .unwrap(),
        )
    }

    #[test]
    fn rep_round_trip_is_bit_exact() {
        let m = rank_one(&alg(), &RankOneSpec::new(vec![1, 1, 1], 2)).unwrap();
        let text = emit_rep(&m);
        let back: QRep = parse_rep(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(emit_rep(&back), text);
        assert!(text.contains("\"alpha_3_7\""));
        assert!(text.contains("\"x_2_1\""));
    }

    #[test]
    fn rationals_are_strings() {
        let a = alg();
        let m = QRep::simple(a.clone(), crate::algebra::Vertex::Zero);
        let text = emit_rep(&m);
        assert!(text.contains("\"lambdas\": [\n      \"0\",\n      \"1\"\n    ]"));
        let x: Rational = ratio_i64(-3, 2);
        assert_eq!(format_scalar(&x), "-3/2");
        assert_eq!(latex_scalar(&x), "-\\tfrac{3}{2}");
    }

    #[test]
    fn latex_identity_block() {
        let s = latex_matrix(&Matrix::<Rational>::identity(2));
        assert!(s.contains("1 & 0 \\\\ 0 & 1"));
        let m = rank_one(&alg(), &RankOneSpec::new(vec![0, 0, 0], 1)).unwrap();
        assert!(latex_rep(&m).contains("\\alpha_{1}^{(3)} = \\begin{pmatrix}"));
    }

    #[test]
    fn malformed_files_report_position() {
        let err = parse_rep::<Rational>("{\n  \"algebra\": [\n").unwrap_err();
        assert!(
            matches!(&err, Error::Parse(s) if s.contains("line 3 column")),
            "{err}"
        );
        let m = rank_one(&alg(), &RankOneSpec::new(vec![0, 0, 0], 0)).unwrap();
        let text = emit_rep(&m).replacen("\"v0\": 1", "\"v0\": 2", 1);
        assert!(
            matches!(parse_rep::<Rational>(&text), Err(Error::Dimension(s)) if s.contains("mats.alpha_1_1"))
        );
        let text = emit_rep(&m).replacen("\"x_1_1\"", "\"x_9_1\"", 1);
        assert!(matches!(parse_rep::<Rational>(&text), Err(Error::Parse(_))));
    }

    #[test]
    fn kron_round_trip() {
        let k = crate::kronecker::exceptional_preprojective::<Rational>(3, 3).unwrap();
        let text = emit_kron(&k);
        let back: ThetaRep<Rational> = parse_kron(&text).unwrap();
        assert_eq!(back, k);
        assert!(latex_kron(&k).contains("A_{3}"));
    }
}
