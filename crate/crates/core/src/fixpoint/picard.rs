//! Picard iteration with certified or heuristic stopping.

use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};
use crate::metric::SbMetricSpec;
use crate::numeric::format_sig17;
use crate::point::Point;
use crate::sampler::run_items;

use super::certificate::{apriori_tail_bound, CertificateKind, ContractionCertificate};
use super::map::SelfMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Converged,
    MaxIters,
    DivergedBound,
}

impl Termination {
    pub fn tag(self) -> &'static str {
        match self {
            Termination::Converged => "CONVERGED",
            Termination::MaxIters => "MAX_ITERS",
            Termination::DivergedBound => "DIVERGED_BOUND",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StoppingMode {
    /// Stop once the a priori tail bound drops below `eps`.
    Certified,
    /// Stop once one step distance drops below `eps`; no accuracy guarantee.
    Heuristic,
}

impl StoppingMode {
    pub fn tag(self) -> &'static str {
        match self {
            StoppingMode::Certified => "certified",
            StoppingMode::Heuristic => "heuristic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PicardOptions {
    pub eps: f64,
    pub max_iters: usize,
}

impl Default for PicardOptions {
    fn default() -> Self {
        Self { eps: 1e-10, max_iters: 10_000 }
    }
}

impl PicardOptions {
    fn validate(&self) -> Result<()> {
        if !(self.eps.is_finite() && self.eps > 0.0) {
            return Err(invalid("eps", format!("must be positive, got {}", self.eps)));
        }
        if self.max_iters == 0 {
            return Err(invalid("max_iters", "must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub metric: String,
    pub map: String,
    /// `x₀, x₁ = Tx₀, …`.
    pub points: Vec<Point>,
    /// `S(xₙ,xₙ,xₙ₊₁)` for each computed step.
    pub step_distances: Vec<f64>,
    /// Tail bound at each checked index; empty in heuristic mode.
    pub bound_values: Vec<f64>,
    pub termination: Termination,
    pub fixed_point: Option<Point>,
    /// Number of map applications.
    pub iterations: usize,
    pub mode: StoppingMode,
    pub warnings: Vec<String>,
}

impl IterationTrace {
    /// Plain-text records, one line each.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "trace metric={} map={} mode={} termination={} iterations={}",
            self.metric,
            self.map,
            self.mode.tag(),
            self.termination.tag(),
            self.iterations
        );
        for (n, x) in self.points.iter().enumerate() {
            let _ = write!(out, "step n={n} x={x}");
            if let Some(s) = self.step_distances.get(n) {
                let _ = write!(out, " step={}", format_sig17(*s));
            }
            if let Some(b) = self.bound_values.get(n) {
                let _ = write!(out, " bound={}", format_sig17(*b));
            }
            out.push('\n');
        }
        if let Some(x) = &self.fixed_point {
            let _ = writeln!(out, "fixed_point x={x}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning {w}");
        }
        out
    }
}

fn stopping_rule(metric: &SbMetricSpec, cert: Option<&ContractionCertificate>) -> Result<(Option<f64>, Vec<String>)> {
    let Some(cert) = cert.filter(|c| c.kind != CertificateKind::None) else {
        return Ok((None, vec!["no certificate; stopping on step distance is heuristic".into()]));
    };
    if cert.b != metric.b() {
        return Err(Error::Precondition(format!(
            "certificate was issued for b = {} but `{}` has b = {}",
            cert.b,
            metric.name(),
            metric.b()
        )));
    }
    let mut warnings = cert.warnings.clone();
    if !cert.valid {
        warnings.push(format!("{} certificate is not valid; stopping is heuristic", cert.kind.tag()));
        return Ok((None, warnings));
    }
    match cert.rate {
        Some(rate) if cert.tail_bound_usable => Ok((Some(rate), warnings)),
        _ => {
            if warnings.is_empty() {
                warnings.push("tail bound unavailable; stopping is heuristic".into());
            }
            Ok((None, warnings))
        }
    }
}

/// Iterates `xₙ₊₁ = T xₙ` from `x0`.
///
/// With a usable certificate the run stops at the first `n` whose tail bound
/// is below `eps`, or as soon as a step distance is exactly zero (then
/// `xₙ = Txₙ`). Otherwise it stops at the first step distance below `eps`.
/// Either way the returned estimate is the newest point `xₙ₊₁`.
pub fn picard(
    metric: &SbMetricSpec,
    map: &SelfMap,
    x0: &Point,
    cert: Option<&ContractionCertificate>,
    opts: PicardOptions,
) -> Result<IterationTrace> {
    opts.validate()?;
    metric.carrier().check(&[x0])?;
    let (rate, warnings) = stopping_rule(metric, cert)?;
    let b = metric.b();
    let mut trace = IterationTrace {
        metric: metric.name().to_string(),
        map: map.name().to_string(),
        points: vec![x0.clone()],
        step_distances: Vec::new(),
        bound_values: Vec::new(),
        termination: Termination::MaxIters,
        fixed_point: None,
        iterations: 0,
        mode: if rate.is_some() { StoppingMode::Certified } else { StoppingMode::Heuristic },
        warnings,
    };
    while trace.iterations < opts.max_iters {
        let n = trace.iterations;
        let next = map.apply(&trace.points[n]);
        trace.iterations += 1;
        let ok = next.is_finite() && metric.carrier().check(&[&next]).is_ok();
        if !ok {
            trace.points.push(next);
            trace.termination = Termination::DivergedBound;
            return Ok(trace);
        }
        let step = metric.pair(&trace.points[n], &next);
        trace.points.push(next);
        trace.step_distances.push(step);
        if !step.is_finite() {
            trace.termination = Termination::DivergedBound;
            return Ok(trace);
        }
        let done = match rate {
            Some(h) => {
                let bound = apriori_tail_bound(h, b, n, trace.step_distances[0])?;
                trace.bound_values.push(bound);
                bound < opts.eps || step == 0.0
            }
            None => step < opts.eps,
        };
        if done {
            trace.termination = Termination::Converged;
            trace.fixed_point = trace.points.last().cloned();
            return Ok(trace);
        }
    }
    Ok(trace)
}

/// Runs [`picard`] from each start; independent runs share nothing.
pub fn picard_from_starts(
    metric: &SbMetricSpec,
    map: &SelfMap,
    starts: &[Point],
    cert: Option<&ContractionCertificate>,
    opts: PicardOptions,
    parallel: bool,
) -> Result<Vec<IterationTrace>> {
    run_items(starts, parallel, |x0| picard(metric, map, x0, cert, opts)).into_iter().collect()
}

/// `S(Tx,Tx,x) ≤ tol`.
pub fn verify_fixed_point(metric: &SbMetricSpec, map: &SelfMap, x: &Point, tol: f64) -> Result<bool> {
    let tx = map.apply(x);
    Ok(metric.eval(&tx, &tx, x)? <= tol)
}

/// Map applications a certified run needs: one more than the first `n` with
/// tail bound below `eps`.
pub fn predicted_iterations(rate: f64, b: f64, s0: f64, eps: f64) -> Result<usize> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(invalid("eps", format!("must be positive, got {eps}")));
    }
    let mut n = 0usize;
    while apriori_tail_bound(rate, b, n, s0)? >= eps {
        n += 1;
    }
    Ok(n + 1)
}
