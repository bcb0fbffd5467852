//! JSON matrix files: `{"n": rows, "m": cols, "re": [[..]], "im": [[..]]}`.
//!
//! `im` may be omitted on input. Numbers are written with shortest
//! round-trip formatting, so a write/read cycle is lossless.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CMat, C64};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub m: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixFile {
    pub fn from_cmat(m: &CMat) -> Self {
        let re = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].re).collect()).collect();
        let im = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].im).collect()).collect();
        MatrixFile { n: m.rows(), m: m.cols(), re, im: Some(im) }
    }

    pub fn to_cmat(&self) -> Result<CMat> {
        let check = |rows: &Vec<Vec<f64>>, what: &str| -> Result<()> {
            if rows.len() != self.n || rows.iter().any(|r| r.len() != self.m) {
                return Err(Error::ParseError(format!(
                    "\"{what}\" must be a {}x{} nested array",
                    self.n, self.m
                )));
            }
            Ok(())
        };
        check(&self.re, "re")?;
        if let Some(im) = &self.im {
            check(im, "im")?;
        }
        let mut data = Vec::with_capacity(self.n * self.m);
        for i in 0..self.n {
            for j in 0..self.m {
                let im = self.im.as_ref().map_or(0.0, |im| im[i][j]);
                data.push(C64::new(self.re[i][j], im));
            }
        }
        CMat::from_vec(self.n, self.m, data).map_err(|e| Error::ParseError(e.to_string()))
    }
}

pub fn parse_matrix(text: &str) -> Result<CMat> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
    file.to_cmat()
}

pub fn matrix_to_json(m: &CMat) -> String {
    serde_json::to_string(&MatrixFile::from_cmat(m)).expect("matrix serialization")
}

pub fn read_matrix(path: &Path) -> Result<CMat> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| match e {
        Error::ParseError(msg) => Error::ParseError(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn write_matrix(path: &Path, m: &CMat) -> std::io::Result<()> {
    let mut text = matrix_to_json(m);
    text.push('\n');
    std::fs::write(path, text)
}
