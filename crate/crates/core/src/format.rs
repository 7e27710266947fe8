//! File formats: section grids and matrices as JSON, coefficient tables as
//! CSV. Complex numbers are `[re, im]` pairs; a matrix is a list of rows.

use std::io::{BufRead, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bundle::{CoeffTable, SectionGrid};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::params::ModularParams;

/// 17 significant digits in scientific notation.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

type MatrixRows = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_rows(m: &ComplexMatrix) -> MatrixRows {
    m.row_iter()
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn matrix_from_rows(rows: &MatrixRows) -> Result<ComplexMatrix> {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Format("ragged matrix rows".into()));
    }
    Ok(ComplexMatrix::from_fn(n, cols, |i, j| {
        Complex64::new(rows[i][j][0], rows[i][j][1])
    }))
}

pub fn read_matrix_json(text: &str) -> Result<ComplexMatrix> {
    let rows: MatrixRows = serde_json::from_str(text)?;
    matrix_from_rows(&rows)
}

pub fn write_matrix_json(m: &ComplexMatrix) -> Result<String> {
    Ok(serde_json::to_string(&matrix_to_rows(m))?)
}

#[derive(Serialize, Deserialize)]
struct SectionFile {
    p: i64,
    q: i64,
    n: usize,
    values: Vec<MatrixRows>,
}

pub fn read_section_json(text: &str) -> Result<SectionGrid> {
    let file: SectionFile = serde_json::from_str(text)?;
    let params = ModularParams::new(file.p, file.q)?;
    let values = file
        .values
        .iter()
        .map(matrix_from_rows)
        .collect::<Result<Vec<_>>>()?;
    SectionGrid::new(params, file.n, values)
}

pub fn write_section_json(s: &SectionGrid) -> Result<String> {
    let file = SectionFile {
        p: s.params().p() as i64,
        q: s.params().q() as i64,
        n: s.n(),
        values: s.values().iter().map(matrix_to_rows).collect(),
    };
    Ok(serde_json::to_string(&file)?)
}

pub const COEFF_HEADER: &str = "m,n,re,im";

pub fn write_coeff_csv(table: &CoeffTable, mut out: impl Write) -> Result<()> {
    writeln!(out, "{COEFF_HEADER}")?;
    for ((m, n), c) in &table.entries {
        writeln!(out, "{m},{n},{},{}", sig17(c.re), sig17(c.im))?;
    }
    Ok(())
}

/// Reads `m,n,re,im` rows; `m_max` is taken from the largest index present.
pub fn read_coeff_csv(input: impl BufRead) -> Result<CoeffTable> {
    let mut table = CoeffTable::default();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        if lineno == 0 && line.trim() == COEFF_HEADER {
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::Format(format!("line {}: expected m,n,re,im", lineno + 1));
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [m, n, re, im] = fields.as_slice() else {
            return Err(bad());
        };
        let m: i64 = m.parse().map_err(|_| bad())?;
        let n: i64 = n.parse().map_err(|_| bad())?;
        let c = Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?);
        table.m_max = table.m_max.max(m.unsigned_abs() as usize).max(n.unsigned_abs() as usize);
        table.entries.insert((m, n), c);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::synthesize_section;
    use crate::ncpoly::NCLaurentPoly;

    #[test]
    fn sig17_digits() {
        assert_eq!(sig17(0.5), "5.0000000000000000e-1");
        let x = 2.0 * 2f64.sqrt();
        assert_eq!(sig17(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn section_json_roundtrip() {
        let m = ModularParams::new(1, 2).unwrap();
        let s = synthesize_section(&NCLaurentPoly::harper(m), 8).unwrap();
        let text = write_section_json(&s).unwrap();
        assert!(text.starts_with("{\"p\":1,\"q\":2,\"n\":8,\"values\":[[[["));
        assert_eq!(read_section_json(&text).unwrap(), s);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(read_matrix_json("[[[1,0]],[[0,0],[1,0]]]"), Err(Error::Format(_))));
        assert!(matches!(read_matrix_json("{"), Err(Error::Json(_))));
        assert!(matches!(
            read_section_json(r#"{"p":2,"q":4,"n":16,"values":[]}"#),
            Err(Error::Coprimality { .. })
        ));
        assert!(read_coeff_csv("m,n,re,im\n1,2,3\n".as_bytes()).is_err());
    }

    #[test]
    fn coeff_csv_roundtrip() {
        let mut table = CoeffTable::default();
        table.entries.insert((-2, 1), Complex64::new(0.1, -3.0));
        table.entries.insert((0, 0), Complex64::new(1.0 / 3.0, 0.0));
        table.m_max = 2;
        let mut buf = Vec::new();
        write_coeff_csv(&table, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("m,n,re,im\n-2,1,"));
        assert_eq!(read_coeff_csv(buf.as_slice()).unwrap(), table);
    }
}
