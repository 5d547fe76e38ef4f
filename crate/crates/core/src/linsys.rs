//! Linear systems `x = Ax + rhs` solved by certified Picard iteration in the
//! S_1 metric, plus a Gaussian-elimination cross-check.

use std::fmt;

use crate::catalog::s1;
use crate::error::{invalid, Error, Result};
use crate::fixpoint::{
    certify, picard, CertificateKind, ContractionCertificate, ContractionParams, IterationTrace, PicardOptions, SelfMap,
};
use crate::numeric::{format_sig17, parse_real};
use crate::point::Point;

/// Pivots at or below this magnitude count as singular.
pub const PIVOT_THRESHOLD: f64 = 1e-12;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(invalid("matrix", "must have at least one row"));
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            data.extend(row);
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemForm {
    /// `x = Ax + rhs`.
    FixedPoint,
    /// `Ax = rhs`.
    Standard,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    pub matrix: Matrix,
    pub rhs: Vec<f64>,
    pub form: SystemForm,
}

impl LinearSystem {
    pub fn new(matrix: Matrix, rhs: Vec<f64>, form: SystemForm) -> Result<Self> {
        if rhs.len() != matrix.n() {
            return Err(Error::DimensionMismatch { expected: matrix.n(), found: rhs.len() });
        }
        if rhs.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { matrix, rhs, form })
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }
}

/// `max_j Σ_i |a_ij|`.
pub fn column_sum_norm(a: &Matrix) -> f64 {
    (0..a.n()).map(|j| (0..a.n()).map(|i| a.get(i, j).abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// Rewrites `Cx = d` as `x = (I − C)x + d`.
pub fn to_fixed_point_form(sys: &LinearSystem) -> Result<LinearSystem> {
    if sys.form != SystemForm::Standard {
        return Err(Error::Precondition("system is already in fixed-point form".into()));
    }
    let n = sys.n();
    let mut a = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { 1.0 } else { 0.0 };
            a.data[i * n + j] = id - sys.matrix.get(i, j);
        }
    }
    LinearSystem::new(a, sys.rhs.clone(), SystemForm::FixedPoint)
}

/// Gaussian elimination with partial pivoting.
pub fn direct_solve(c: &Matrix, d: &[f64]) -> Result<Vec<f64>> {
    let n = c.n();
    if d.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: d.len() });
    }
    let mut m = c.data.clone();
    let mut rhs = d.to_vec();
    for col in 0..n {
        let pivot_row =
            (col..n).max_by(|&r, &s| m[r * n + col].abs().total_cmp(&m[s * n + col].abs())).expect("nonempty range");
        let pivot = m[pivot_row * n + col];
        if pivot.abs() <= PIVOT_THRESHOLD {
            return Err(Error::Singular { column: col, pivot: pivot.abs() });
        }
        if pivot_row != col {
            for j in 0..n {
                m.swap(col * n + j, pivot_row * n + j);
            }
            rhs.swap(col, pivot_row);
        }
        for r in col + 1..n {
            let f = m[r * n + col] / pivot;
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                m[r * n + j] -= f * m[col * n + j];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let tail: f64 = (i + 1..n).map(|j| m[i * n + j] * x[j]).sum();
        x[i] = (rhs[i] - tail) / m[i * n + i];
    }
    Ok(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearSolution {
    /// Last iterate; the fixed-point estimate when the trace converged.
    pub solution: Vec<f64>,
    pub trace: IterationTrace,
    pub certificate: ContractionCertificate,
}

/// `Tx = Ax + rhs` as a self-map of ℝⁿ.
pub fn affine_map(sys: &LinearSystem) -> SelfMap {
    let a = sys.matrix.clone();
    let rhs = sys.rhs.clone();
    SelfMap::new("linear", move |x| match x.coords() {
        Some(c) if c.len() == rhs.len() => {
            let ax = a.mul_vec(c);
            Point::Real(ax.iter().zip(&rhs).map(|(u, v)| u + v).collect())
        }
        _ => x.clone(),
    })
}

/// Picard iteration from `x₀ = rhs` in the S_1 metric. A column-sum norm
/// below 1 yields a Banach certificate with `b = 1`; otherwise the run is
/// heuristic.
pub fn solve_iterative(sys: &LinearSystem, opts: PicardOptions) -> Result<LinearSolution> {
    if sys.form != SystemForm::FixedPoint {
        return Err(Error::Precondition("solve_iterative needs x = Ax + rhs; convert with to_fixed_point_form".into()));
    }
    let metric = s1(Some(sys.n()))?;
    let h = column_sum_norm(&sys.matrix);
    let certificate = certify(CertificateKind::Banach, &metric, ContractionParams::Banach { h })?;
    let x0 = Point::new(sys.rhs.clone())?;
    let trace = picard(&metric, &affine_map(sys), &x0, Some(&certificate), opts)?;
    let solution = trace.points.last().and_then(Point::coords).map(<[f64]>::to_vec).unwrap_or_default();
    Ok(LinearSolution { solution, trace, certificate })
}

fn parse_numbers(line: &str, line_no: usize) -> Result<Vec<f64>> {
    line.split_whitespace()
        .map(|tok| parse_real(tok).map_err(|_| Error::Parse { line: line_no, message: format!("bad number `{tok}`") }))
        .collect()
}

/// First nonblank line holds `n`, the next `n` nonblank lines hold the rows.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
    let (first, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty matrix file".into() })?;
    let n: usize = header.trim().parse().ok().filter(|&n| n >= 1).ok_or_else(|| Error::Parse {
        line: first,
        message: format!("expected a positive size, got `{}`", header.trim()),
    })?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (no, line) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: first + rows.len() + 1, message: format!("expected {n} rows") })?;
        let row = parse_numbers(line, no)?;
        if row.len() != n {
            return Err(Error::Parse { line: no, message: format!("expected {n} entries, found {}", row.len()) });
        }
        rows.push(row);
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::Parse { line: no, message: "trailing content after matrix".into() });
    }
    Matrix::from_rows(rows).map_err(|e| Error::Parse { line: first, message: e.to_string() })
}

/// Whitespace-separated numbers; newlines allowed.
pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        out.extend(parse_numbers(line, i + 1)?);
    }
    if out.is_empty() {
        return Err(Error::Parse { line: 1, message: "empty vector file".into() });
    }
    Ok(out)
}

/// One value per line, 17 significant digits.
pub fn format_vector(x: &[f64]) -> String {
    x.iter().map(|v| format_sig17(*v) + "\n").collect()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| format_sig17(*v)).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
