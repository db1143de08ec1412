//! The JSON matrix-file format and command-line vector syntax.
//!
//! A matrix file is a single JSON object:
//!
//! ```text
//! { "mode": "real",    "n": 2, "G1": [[1,0],[0,1]], "G2": [[1,0],[0,4]] }
//! { "mode": "complex", "n": 2, "G1": ..., "G2": ... }
//! { "mode": "real",    "n": 2, "A": [[1,1],[0,1]] }
//! ```
//!
//! `G1`/`G2` give the two Gram matrices directly; `A` gives an invertible
//! matrix inducing the second product as `<x,y>_2 = (Ay)*(Ax)` with the
//! standard product first. Real mode uses plain numbers; complex mode
//! writes every entry as a two-element `[re, im]` array. Parsing is
//! strict: unknown keys, ragged rows, wrong sizes and non-Hermitian Gram
//! matrices are rejected up front, while positive definiteness is checked
//! when the pair is built.
//!
//! Command-line vectors are comma-separated entries, each a real number
//! or a `re:im` pair: `--u 1,0.5` or `--u 1:0,0:-1`.

use crate::error::{Error, Result};
use crate::linalg::{Complex64, HermMatrix, Matrix, Vector};
use crate::spectrum::{GramPair, Mode};
use serde_json::{json, Value};

/// Parsed matrix file: the declared mode and dimension plus the payload.
#[derive(Clone, Debug)]
pub struct MatrixFile {
    pub mode: Mode,
    pub n: usize,
    pub source: FileSource,
}

/// Which of the two input layouts the file used.
#[derive(Clone, Debug)]
pub enum FileSource {
    /// `"A"`: second product induced by an invertible matrix.
    SourceMatrix(Vec<Vec<Complex64>>),
    /// `"G1"`/`"G2"`: explicit Gram pair.
    Grams { g1: Vec<Vec<Complex64>>, g2: Vec<Vec<Complex64>> },
}

fn parse_entry(v: &Value, mode: Mode, ctx: &str) -> Result<Complex64> {
    match mode {
        Mode::Real => match v.as_f64() {
            Some(x) => Ok(Complex64::new(x, 0.0)),
            None => Err(Error::Parse(format!(
                "{ctx}: expected a real number in real mode, found {v}"
            ))),
        },
        Mode::Complex => {
            let arr = v.as_array().ok_or_else(|| {
                Error::Parse(format!(
                    "{ctx}: expected a two-element [re, im] array in complex mode, found {v}"
                ))
            })?;
            if arr.len() != 2 {
                return Err(Error::Parse(format!(
                    "{ctx}: complex entry must have exactly two elements, found {}",
                    arr.len()
                )));
            }
            let re = arr[0].as_f64().ok_or_else(|| {
                Error::Parse(format!("{ctx}: real part is not a number"))
            })?;
            let im = arr[1].as_f64().ok_or_else(|| {
                Error::Parse(format!("{ctx}: imaginary part is not a number"))
            })?;
            Ok(Complex64::new(re, im))
        }
    }
}

fn parse_matrix(v: &Value, mode: Mode, n: usize, name: &str) -> Result<Vec<Vec<Complex64>>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("\"{name}\" must be an array of rows")))?;
    if rows.len() != n {
        return Err(Error::Parse(format!(
            "\"{name}\" has {} rows, expected n = {n}",
            rows.len()
        )));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let cells = row.as_array().ok_or_else(|| {
            Error::Parse(format!("\"{name}\" row {i} is not an array"))
        })?;
        if cells.len() != n {
            return Err(Error::Parse(format!(
                "\"{name}\" row {i} has {} entries, expected n = {n}",
                cells.len()
            )));
        }
        let mut r = Vec::with_capacity(n);
        for (j, cell) in cells.iter().enumerate() {
            r.push(parse_entry(cell, mode, &format!("\"{name}\"[{i}][{j}]"))?);
        }
        out.push(r);
    }
    Ok(out)
}

impl MatrixFile {
    /// Parses and validates the JSON text of a matrix file.
    pub fn parse_str(text: &str) -> Result<MatrixFile> {
        let root: Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        let obj = root
            .as_object()
            .ok_or_else(|| Error::Parse("top level must be a JSON object".into()))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "mode" | "n" | "A" | "G1" | "G2") {
                return Err(Error::Parse(format!("unknown key \"{key}\"")));
            }
        }
        let mode = match obj.get("mode").and_then(Value::as_str) {
            Some("real") => Mode::Real,
            Some("complex") => Mode::Complex,
            Some(other) => {
                return Err(Error::Parse(format!(
                    "\"mode\" must be \"real\" or \"complex\", found \"{other}\""
                )))
            }
            None => return Err(Error::Parse("missing string field \"mode\"".into())),
        };
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing positive integer field \"n\"".into()))?;
        if n == 0 {
            return Err(Error::Parse("\"n\" must be at least 1".into()));
        }
        let n = n as usize;

        let source = match (obj.get("A"), obj.get("G1"), obj.get("G2")) {
            (Some(a), None, None) => FileSource::SourceMatrix(parse_matrix(a, mode, n, "A")?),
            (None, Some(g1), Some(g2)) => {
                let g1 = parse_matrix(g1, mode, n, "G1")?;
                let g2 = parse_matrix(g2, mode, n, "G2")?;
                // Hermitian structure is a parse-level guarantee
                for (name, g) in [("G1", &g1), ("G2", &g2)] {
                    HermMatrix::from_rows(g.clone()).map_err(|e| {
                        Error::Parse(format!("\"{name}\" is not Hermitian: {e}"))
                    })?;
                }
                FileSource::Grams { g1, g2 }
            }
            (None, Some(_), None) | (None, None, Some(_)) => {
                return Err(Error::Parse(
                    "\"G1\" and \"G2\" must be given together".into(),
                ))
            }
            (Some(_), _, _) => {
                return Err(Error::Parse(
                    "give either \"A\" or the pair \"G1\"/\"G2\", not both".into(),
                ))
            }
            (None, None, None) => {
                return Err(Error::Parse(
                    "missing matrices: expected \"A\" or \"G1\"/\"G2\"".into(),
                ))
            }
        };
        Ok(MatrixFile { mode, n, source })
    }

    /// Builds the validated pair; positive definiteness is checked here.
    pub fn to_pair(&self) -> Result<GramPair> {
        match &self.source {
            FileSource::SourceMatrix(a) => {
                let m = Matrix::from_rows(a.clone())?;
                GramPair::from_matrix(m, self.mode)
            }
            FileSource::Grams { g1, g2 } => {
                let g1 = HermMatrix::from_rows(g1.clone())?;
                let g2 = HermMatrix::from_rows(g2.clone())?;
                GramPair::new(g1, g2, self.mode)
            }
        }
    }

    /// Input echo for reports, with entries normalized to floats.
    pub fn echo(&self) -> Value {
        let entry = |z: &Complex64| match self.mode {
            Mode::Real => json!(z.re),
            Mode::Complex => json!([z.re, z.im]),
        };
        let matrix = |m: &Vec<Vec<Complex64>>| {
            Value::Array(
                m.iter()
                    .map(|row| Value::Array(row.iter().map(entry).collect()))
                    .collect(),
            )
        };
        let mode = match self.mode {
            Mode::Real => "real",
            Mode::Complex => "complex",
        };
        match &self.source {
            FileSource::SourceMatrix(a) => json!({
                "mode": mode,
                "n": self.n,
                "A": matrix(a),
            }),
            FileSource::Grams { g1, g2 } => json!({
                "mode": mode,
                "n": self.n,
                "G1": matrix(g1),
                "G2": matrix(g2),
            }),
        }
    }
}

/// Parses a command-line vector: comma-separated entries, each `x` or
/// `re:im`.
pub fn parse_vector(text: &str, mode: Mode, n: usize) -> Result<Vector> {
    let mut data = Vec::new();
    for (i, part) in text.split(',').enumerate() {
        let part = part.trim();
        let z = if let Some((re, im)) = part.split_once(':') {
            if matches!(mode, Mode::Real) {
                return Err(Error::Parse(format!(
                    "entry {i}: complex entry \"{part}\" in real mode"
                )));
            }
            let re: f64 = re.trim().parse().map_err(|_| {
                Error::Parse(format!("entry {i}: bad real part in \"{part}\""))
            })?;
            let im: f64 = im.trim().parse().map_err(|_| {
                Error::Parse(format!("entry {i}: bad imaginary part in \"{part}\""))
            })?;
            Complex64::new(re, im)
        } else {
            let x: f64 = part.parse().map_err(|_| {
                Error::Parse(format!("entry {i}: \"{part}\" is not a number"))
            })?;
            Complex64::new(x, 0.0)
        };
        data.push(z);
    }
    if data.len() != n {
        return Err(Error::Parse(format!(
            "vector has {} entries, expected n = {n}",
            data.len()
        )));
    }
    Vector::new(data)
}

/// Parses a command-line scalar: `x` or `re:im`.
pub fn parse_scalar(text: &str) -> Result<Complex64> {
    let part = text.trim();
    if let Some((re, im)) = part.split_once(':') {
        let re: f64 = re
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad real part in \"{part}\"")))?;
        let im: f64 = im
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad imaginary part in \"{part}\"")))?;
        Ok(Complex64::new(re, im))
    } else {
        let x: f64 = part
            .parse()
            .map_err(|_| Error::Parse(format!("\"{part}\" is not a number")))?;
        Ok(Complex64::new(x, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIX_A: &str =
        r#"{"mode":"real","n":2,"G1":[[1,0],[0,1]],"G2":[[1,0],[0,4]]}"#;

    #[test]
    fn parses_a_gram_pair_file() {
        let f = MatrixFile::parse_str(FIX_A).unwrap();
        assert_eq!(f.n, 2);
        assert!(matches!(f.mode, Mode::Real));
        let pair = f.to_pair().unwrap();
        assert_eq!(pair.n(), 2);
    }

    #[test]
    fn parses_a_source_matrix_file() {
        let f = MatrixFile::parse_str(
            r#"{"mode":"real","n":2,"A":[[1,1],[0,1]]}"#,
        )
        .unwrap();
        let pair = f.to_pair().unwrap();
        // G2 = A*A = [[1,1],[1,2]]
        assert_eq!(pair.g2().get(1, 0), Complex64::new(1.0, 0.0));
        assert_eq!(pair.g2().get(1, 1), Complex64::new(2.0, 0.0));
    }

    #[test]
    fn parses_complex_entries() {
        let f = MatrixFile::parse_str(
            r#"{"mode":"complex","n":2,
                "G1":[[[1,0],[0,0]],[[0,0],[1,0]]],
                "G2":[[[2,0],[0,1]],[[0,-1],[2,0]]]}"#,
        )
        .unwrap();
        let pair = f.to_pair().unwrap();
        assert_eq!(pair.g2().get(0, 1), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn rejects_malformed_files() {
        let cases = [
            ("not json", "invalid JSON"),
            (r#"{"mode":"real","n":2}"#, "missing matrices"),
            (r#"{"mode":"quaternion","n":2,"A":[[1,0],[0,1]]}"#, "mode"),
            (r#"{"mode":"real","n":2,"A":[[1,0],[0,1]],"G1":[[1]]}"#, "not both"),
            (r#"{"mode":"real","n":2,"G1":[[1,0],[0,1]]}"#, "together"),
            (r#"{"mode":"real","n":2,"A":[[1,0]]}"#, "rows"),
            (r#"{"mode":"real","n":2,"A":[[1],[0,1]]}"#, "entries"),
            (r#"{"mode":"real","n":2,"A":[[1,0],[0,1]],"extra":1}"#, "unknown key"),
            (r#"{"mode":"real","n":0,"A":[]}"#, "at least 1"),
            (r#"{"mode":"real","n":2,"G1":[[1,2],[0,1]],"G2":[[1,0],[0,1]]}"#, "Hermitian"),
            (r#"{"mode":"real","n":1,"G1":[[[1,0]]],"G2":[[1]]}"#, "real number"),
        ];
        for (text, needle) in cases {
            let err = MatrixFile::parse_str(text).unwrap_err();
            let msg = err.to_string();
            assert!(
                matches!(err, Error::Parse(_)) && msg.contains(needle),
                "for {text}: got {msg}"
            );
        }
    }

    #[test]
    fn non_positive_definite_is_a_numeric_error_not_a_parse_error() {
        let f = MatrixFile::parse_str(
            r#"{"mode":"real","n":2,"G1":[[1,0],[0,1]],"G2":[[1,3],[3,1]]}"#,
        )
        .unwrap();
        assert!(matches!(
            f.to_pair(),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn echo_round_trips_the_input_shape() {
        let f = MatrixFile::parse_str(FIX_A).unwrap();
        let echo = f.echo();
        assert_eq!(echo["n"], 2);
        assert_eq!(echo["G2"][1][1], 4.0);
        let f2 = MatrixFile::parse_str(&echo.to_string()).unwrap();
        assert_eq!(f2.n, f.n);
    }

    #[test]
    fn parses_command_line_vectors() {
        let v = parse_vector("1, -2.5", Mode::Real, 2).unwrap();
        assert_eq!(v[1], Complex64::new(-2.5, 0.0));
        let v = parse_vector("1:0,0:-1", Mode::Complex, 2).unwrap();
        assert_eq!(v[1], Complex64::new(0.0, -1.0));
        assert!(parse_vector("1,2,3", Mode::Real, 2).is_err());
        assert!(parse_vector("1:2,0", Mode::Real, 2).is_err());
        assert!(parse_vector("a,b", Mode::Real, 2).is_err());
        assert_eq!(parse_scalar("0:1").unwrap(), Complex64::new(0.0, 1.0));
        assert!(parse_scalar("x").is_err());
    }
}
