//! Contraction certificates and the a priori tail bound.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::metric::SbMetricSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    /// `S(Tx,Tx,Ty) ≤ h·S(x,x,y)` with `h < 1/b²`.
    Banach,
    /// Same condition on a symmetric metric, `h < 1/b`.
    BanachSymmetric,
    /// Mixed condition with `α₁ + (2b² + b)·α₂ < 1`.
    Generalized,
    /// Mixed condition on a symmetric metric, `α₁ + 3b·α₂ < 1`.
    GeneralizedSymmetric,
    None,
}

impl CertificateKind {
    pub fn tag(self) -> &'static str {
        match self {
            CertificateKind::Banach => "BANACH",
            CertificateKind::BanachSymmetric => "BANACH_SYMMETRIC",
            CertificateKind::Generalized => "GENERALIZED",
            CertificateKind::GeneralizedSymmetric => "GENERALIZED_SYMMETRIC",
            CertificateKind::None => "NONE",
        }
    }

    /// CLI spellings: `banach`, `banach-sym`, `generalized`, `generalized-sym`, `none`.
    pub fn from_short(name: &str) -> Option<Self> {
        Some(match name {
            "banach" => CertificateKind::Banach,
            "banach-sym" => CertificateKind::BanachSymmetric,
            "generalized" => CertificateKind::Generalized,
            "generalized-sym" => CertificateKind::GeneralizedSymmetric,
            "none" => CertificateKind::None,
            _ => return None,
        })
    }

    fn symmetric(self) -> bool {
        matches!(self, CertificateKind::BanachSymmetric | CertificateKind::GeneralizedSymmetric)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContractionParams {
    Banach { h: f64 },
    Generalized { alpha1: f64, alpha2: f64 },
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContractionCertificate {
    pub kind: CertificateKind,
    pub h: Option<f64>,
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
    pub b: f64,
    /// The threshold inequality holds.
    pub valid: bool,
    /// Threshold minus attained value; positive exactly when `valid`.
    pub margin: f64,
    /// Per-step decay factor of `S(xₙ,xₙ,xₙ₊₁)`: `h` for the Banach kinds,
    /// the derived ratio for the generalized kinds.
    pub rate: Option<f64>,
    /// `valid` and `b²·rate < 1`, so the a priori tail bound applies.
    pub tail_bound_usable: bool,
    pub warnings: Vec<String>,
}

impl ContractionCertificate {
    pub fn none(b: f64) -> Self {
        Self {
            kind: CertificateKind::None,
            h: None,
            alpha1: None,
            alpha2: None,
            b,
            valid: false,
            margin: f64::NEG_INFINITY,
            rate: None,
            tail_bound_usable: false,
            warnings: Vec::new(),
        }
    }
}

impl fmt::Display for ContractionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "certificate kind={} b={}", self.kind.tag(), self.b)?;
        if let Some(h) = self.h {
            write!(f, " h={h}")?;
        }
        if let (Some(a1), Some(a2)) = (self.alpha1, self.alpha2) {
            write!(f, " alpha1={a1} alpha2={a2}")?;
        }
        write!(f, " valid={} margin={}", self.valid, self.margin)?;
        if let Some(r) = self.rate {
            write!(f, " rate={r}")?;
        }
        write!(f, " tail_bound={}", self.tail_bound_usable)
    }
}

fn nonneg(name: &'static str, v: f64) -> Result<f64> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(invalid(name, format!("must be finite and >= 0, got {v}")));
    }
    Ok(v)
}

/// Checks the threshold inequality of `kind` for `metric.b()`.
pub fn certify(
    kind: CertificateKind,
    metric: &SbMetricSpec,
    params: ContractionParams,
) -> Result<ContractionCertificate> {
    let b = metric.b();
    if kind.symmetric() && !metric.symmetric() {
        return Err(Error::Precondition(format!(
            "{} needs a symmetric metric; `{}` is not",
            kind.tag(),
            metric.name()
        )));
    }
    let mut cert = ContractionCertificate::none(b);
    cert.kind = kind;
    match (kind, params) {
        (CertificateKind::None, _) => return Ok(cert),
        (CertificateKind::Banach | CertificateKind::BanachSymmetric, ContractionParams::Banach { h }) => {
            let h = nonneg("h", h)?;
            let threshold = if kind == CertificateKind::Banach { 1.0 / (b * b) } else { 1.0 / b };
            cert.h = Some(h);
            cert.valid = h < threshold;
            cert.margin = threshold - h;
            cert.rate = Some(h);
        }
        (
            CertificateKind::Generalized | CertificateKind::GeneralizedSymmetric,
            ContractionParams::Generalized { alpha1, alpha2 },
        ) => {
            let a1 = nonneg("alpha1", alpha1)?;
            let a2 = nonneg("alpha2", alpha2)?;
            // Step ratio from S_n ≤ α₁S_{n−1} + α₂·max{…} after bounding the
            // max with the triangle clause; the symmetric case avoids the
            // extra factor b from reorienting S(x,x,y).
            let (weight, denom) = if kind == CertificateKind::Generalized {
                (2.0 * b * b + b, 1.0 - 2.0 * b * b * a2)
            } else {
                (3.0 * b, 1.0 - 2.0 * b * a2)
            };
            let attained = a1 + weight * a2;
            cert.alpha1 = Some(a1);
            cert.alpha2 = Some(a2);
            cert.valid = attained < 1.0;
            cert.margin = 1.0 - attained;
            cert.rate = (denom > 0.0).then(|| (a1 + b * a2) / denom);
        }
        _ => {
            return Err(invalid("params", format!("{} certificate given mismatched parameters {params:?}", kind.tag())))
        }
    }
    cert.tail_bound_usable = cert.valid && cert.rate.is_some_and(|r| b * b * r < 1.0);
    if cert.valid && !cert.tail_bound_usable {
        cert.warnings.push(format!(
            "threshold holds but b^2 * rate = {} >= 1; the a priori tail bound does not apply, stopping will be heuristic",
            b * b * cert.rate.unwrap_or(f64::INFINITY)
        ));
    }
    Ok(cert)
}

/// `2b·hⁿ / (1 − b²h) · s0`, an upper bound on `S(xₙ,xₙ,xₘ)` for all `m > n`
/// when the step distances decay by `h` and `s0 = S(x₀,x₀,x₁)`.
pub fn apriori_tail_bound(h: f64, b: f64, n: usize, s0: f64) -> Result<f64> {
    nonneg("h", h)?;
    nonneg("s0", s0)?;
    if !(b.is_finite() && b >= 1.0) {
        return Err(invalid("b", format!("coefficient must be >= 1, got {b}")));
    }
    if b * b * h >= 1.0 {
        return Err(Error::Certificate(format!("b^2 h = {} is not below 1", b * b * h)));
    }
    let hn = if n > i32::MAX as usize { 0.0 } else { h.powi(n as i32) };
    Ok(2.0 * b * hn / (1.0 - b * b * h) * s0)
}
