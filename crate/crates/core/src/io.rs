//! JSON and CSV forms of the library types (f64 only).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{CovarianceMatrix, OscillatorConfig};
use crate::linalg::{Mat2, Mat4};
use crate::polymer::PolymerState;
use crate::special_forms::TrajectoryPoint;
use crate::symplectic::{LieAlgebraElement, Ordering, SymplecticMatrix};

/// `{"a":[4],"b":[4],"c":[4]}`, each block row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LieJson {
    pub a: [f64; 4],
    pub b: [f64; 4],
    pub c: [f64; 4],
}

impl LieJson {
    pub fn to_element(&self) -> Result<LieAlgebraElement<f64>> {
        LieAlgebraElement::new(
            Mat2::from_row_major(self.a),
            Mat2::from_row_major(self.b),
            Mat2::from_row_major(self.c),
        )
    }
}

impl From<&LieAlgebraElement<f64>> for LieJson {
    fn from(l: &LieAlgebraElement<f64>) -> Self {
        Self {
            a: l.a().to_row_major(),
            b: l.b().to_row_major(),
            c: l.c().to_row_major(),
        }
    }
}

/// `{"ordering":"Y"|"X","entries":[16]}`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub ordering: Ordering,
    pub entries: Vec<f64>,
}

impl MatrixJson {
    fn mat4(&self) -> Result<Mat4<f64>> {
        let e: [f64; 16] = self
            .entries
            .as_slice()
            .try_into()
            .map_err(|_| Error::LengthMismatch(format!("matrix needs 16 entries, got {}", self.entries.len())))?;
        Ok(Mat4::from_row_major(&e))
    }

    /// Checked against the symplectic condition at `tol`.
    pub fn to_matrix(&self, tol: f64) -> Result<SymplecticMatrix<f64>> {
        SymplecticMatrix::with_tolerance(self.mat4()?, self.ordering, tol)
    }
}

impl From<&SymplecticMatrix<f64>> for MatrixJson {
    fn from(m: &SymplecticMatrix<f64>) -> Self {
        Self {
            ordering: m.ordering(),
            entries: m.entries().to_row_major().to_vec(),
        }
    }
}

/// `{"entries":[16],"l":[l1,l2],"hbar":h}`, X order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarianceJson {
    pub entries: Vec<f64>,
    pub l: [f64; 2],
    pub hbar: f64,
}

impl CovarianceJson {
    pub fn to_covariance(&self) -> Result<CovarianceMatrix<f64>> {
        let e: [f64; 16] = self
            .entries
            .as_slice()
            .try_into()
            .map_err(|_| Error::LengthMismatch(format!("covariance needs 16 entries, got {}", self.entries.len())))?;
        let config = OscillatorConfig::new(self.l[0], self.l[1], self.hbar)?;
        CovarianceMatrix::new(Mat4::from_row_major(&e), config)
    }
}

impl From<&CovarianceMatrix<f64>> for CovarianceJson {
    fn from(v: &CovarianceMatrix<f64>) -> Self {
        Self {
            entries: v.entries().to_row_major().to_vec(),
            l: v.config().l,
            hbar: v.config().hbar,
        }
    }
}

/// `{"points":[[x1,x2],...],"coeffs":[[re,im],...],"mu":[mu1,mu2]?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolymerJson {
    pub points: Vec<[f64; 2]>,
    pub coeffs: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<[f64; 2]>,
}

impl PolymerJson {
    pub fn to_state(&self) -> Result<PolymerState<f64>> {
        let coeffs = self.coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect();
        let s = PolymerState::new(self.points.clone(), coeffs)?;
        Ok(match self.mu {
            Some(mu) => s.with_mu(mu),
            None => s,
        })
    }
}

impl From<&PolymerState<f64>> for PolymerJson {
    fn from(s: &PolymerState<f64>) -> Self {
        Self {
            points: s.points().to_vec(),
            coeffs: s.coeffs().iter().map(|c| [c.re, c.im]).collect(),
            mu: s.mu(),
        }
    }
}

pub const TRAJECTORY_HEADER: [&str; 9] = ["t", "q1", "p1", "q2", "p2", "q1p", "p1p", "q2p", "p2p"];

/// One CSV row: t, the input state, the transformed state.
pub type TrajectoryRow = [f64; 9];

pub fn trajectory_rows(samples: &[(TrajectoryPoint<f64>, TrajectoryPoint<f64>)]) -> Vec<TrajectoryRow> {
    samples
        .iter()
        .map(|(a, b)| {
            let (x, y) = (a.state(), b.state());
            [a.t, x[0], x[1], x[2], x[3], y[0], y[1], y[2], y[3]]
        })
        .collect()
}

/// 17 significant digits, enough to round-trip any f64.
fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_error(e: csv::Error) -> Error {
    Error::InvalidParameter(format!("CSV: {e}"))
}

pub fn write_trajectory_csv<W: std::io::Write>(rows: &[TrajectoryRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(TRAJECTORY_HEADER).map_err(csv_error)?;
    for r in rows {
        w.write_record(r.iter().map(|&x| fmt17(x))).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::InvalidParameter(format!("CSV: {e}")))
}

pub fn trajectory_csv_string(rows: &[TrajectoryRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_trajectory_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::InvalidParameter(e.to_string()))
}

pub fn read_trajectory_csv<R: std::io::Read>(input: R) -> Result<Vec<TrajectoryRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(csv_error)?.clone();
    if header.iter().ne(TRAJECTORY_HEADER.iter().copied()) {
        return Err(Error::InvalidParameter(format!("unexpected CSV header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_error)?;
        if rec.len() != 9 {
            return Err(Error::LengthMismatch(format!("CSV row has {} fields", rec.len())));
        }
        let mut row = [0.0; 9];
        for (slot, field) in row.iter_mut().zip(rec.iter()) {
            *slot = field
                .trim()
                .parse()
                .map_err(|e| Error::InvalidParameter(format!("CSV field {field:?}: {e}")))?;
        }
        rows.push(row);
    }
    Ok(rows)
}
