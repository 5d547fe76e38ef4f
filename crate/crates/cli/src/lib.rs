//! Command-line front end. [`run`] does all the work so tests can drive it
//! without spawning a process.

mod args;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use clap::Parser;
use sbmetric::catalog::CATALOG;
use sbmetric::fixpoint::PicardOptions;
use sbmetric::linsys::{
    format_vector, parse_matrix, parse_vector, solve_iterative, to_fixed_point_form, LinearSystem, SystemForm,
};
use sbmetric::numeric::{format_sig17, parse_real};
use sbmetric::point::format_tuple;
use sbmetric::topology::{self, FinitePointSet};
use sbmetric::{
    builtin, builtin_binary, builtin_map, certify, check_axioms, check_symmetry, estimate_min_b, picard, AxiomFamily,
    AxiomSchema, CertificateKind, ContractionCertificate, ContractionParams, MetricRef, Point, SamplerConfig,
    SbMetricSpec, Termination,
};

pub use args::{Cli, Command};

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

struct Report {
    /// 0 on success, 1 on a detected FAIL or invalid certificate.
    code: i32,
    out: String,
    err: String,
}

impl Report {
    fn ok(out: String) -> Self {
        Self { code: 0, out, err: String::new() }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command).and_then(|r| emit(r, cli.out.as_deref())) {
        Ok(outcome) => outcome,
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn emit(r: Report, out: Option<&Path>) -> Res<Outcome> {
    let stdout = match out {
        Some(path) => {
            fs::write(path, &r.out).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            String::new()
        }
        None => r.out,
    };
    Ok(Outcome { code: r.code, stdout, stderr: r.err })
}

fn sampler(s: &args::Sampling) -> Res<SamplerConfig> {
    let mut cfg = SamplerConfig::default();
    if let Some(seed) = s.seed {
        cfg.seed = seed;
    }
    if let Some(n) = s.samples {
        cfg.random_count = n;
    }
    if let Some(g) = &s.grid {
        cfg.grid_step = if g == "none" { None } else { Some(parse_real(g)?) };
    }
    if let Some(r) = &s.range {
        let (lo, hi) = r.split_once(':').ok_or_else(|| format!("range must be LO:HI, got `{r}`"))?;
        cfg.range = (parse_real(lo)?, parse_real(hi)?);
    }
    if let Some(d) = s.dim {
        cfg.dim = d;
    }
    for t in &s.probes {
        cfg.probes.push(parse_points(t)?);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_points(text: &str) -> Res<Vec<Point>> {
    Ok(text.split(';').map(str::parse).collect::<Result<Vec<Point>, _>>()?)
}

fn parse_set(text: &str) -> Res<FinitePointSet> {
    Ok(FinitePointSet::new(parse_points(text)?)?)
}

fn family(schema: &str) -> Res<AxiomFamily> {
    if schema == "gen" {
        return Ok(AxiomFamily::Generated);
    }
    AxiomFamily::from_short(schema)
        .ok_or_else(|| Failure::Usage(format!("unknown schema `{schema}` (b, g, gb, s, sb, sym, quasi, gen)")))
}

fn contraction(c: &args::Contraction) -> Res<Option<(CertificateKind, ContractionParams)>> {
    let kind = match &c.kind {
        Some(k) => Some(CertificateKind::from_short(k).ok_or_else(|| {
            format!("unknown certificate kind `{k}` (banach, banach-sym, generalized, generalized-sym, none)")
        })?),
        None => None,
    };
    let generalized = c.alpha1.is_some() || c.alpha2.is_some();
    let kind = match kind {
        Some(k) => k,
        None if c.h.is_some() && generalized => {
            return Err(Failure::Usage("give either --h or --alpha1/--alpha2, not both".into()))
        }
        None if c.h.is_some() => CertificateKind::Banach,
        None if generalized => CertificateKind::Generalized,
        None => return Ok(None),
    };
    let params = match kind {
        CertificateKind::None => ContractionParams::None,
        CertificateKind::Banach | CertificateKind::BanachSymmetric => {
            ContractionParams::Banach { h: c.h.ok_or_else(|| format!("{} needs --h", kind.tag()))? }
        }
        CertificateKind::Generalized | CertificateKind::GeneralizedSymmetric => {
            if !generalized {
                return Err(Failure::Usage(format!("{} needs --alpha1 and/or --alpha2", kind.tag())));
            }
            ContractionParams::Generalized { alpha1: c.alpha1.unwrap_or(0.0), alpha2: c.alpha2.unwrap_or(0.0) }
        }
    };
    Ok(Some((kind, params)))
}

fn issue(metric: &SbMetricSpec, c: &args::Contraction) -> Res<Option<ContractionCertificate>> {
    Ok(match contraction(c)? {
        Some((kind, params)) => Some(certify(kind, metric, params)?),
        None => None,
    })
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn dispatch(cmd: Command) -> Res<Report> {
    match cmd {
        Command::ListMetrics => {
            let width = CATALOG.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
            let mut out = String::new();
            for (name, desc) in CATALOG {
                let _ = writeln!(out, "{name:<width$}  {desc}");
            }
            Ok(Report::ok(out))
        }
        Command::Check { metric, schema, b, sampling } => {
            let fam = family(&schema)?;
            let cfg = sampler(&sampling)?;
            let schema = match b {
                Some(b) => AxiomSchema::with_b(fam, b),
                None => AxiomSchema::new(fam),
            };
            let report = if fam == AxiomFamily::BMetric {
                let d = builtin_binary(&metric)?;
                check_axioms(schema, MetricRef::from(&d), &cfg)?
            } else {
                let m = builtin(&metric)?;
                check_axioms(schema, &m, &cfg)?
            };
            Ok(Report { code: i32::from(!report.passed()), out: report.to_records(), err: String::new() })
        }
        Command::Symmetry { metric, sampling } => {
            let report = check_symmetry(&builtin(&metric)?, &sampler(&sampling)?)?;
            Ok(Report { code: i32::from(!report.passed()), out: report.to_records(), err: String::new() })
        }
        Command::MinB { metric, sampling } => {
            let m = builtin(&metric)?;
            let est = estimate_min_b(&m, &sampler(&sampling)?)?;
            Ok(Report::ok(format!(
                "min_b metric={} value={} witness={} samples={} claimed_b={}\n",
                m.name(),
                format_sig17(est.lower_bound),
                format_tuple(&est.witness, true),
                est.samples,
                m.b()
            )))
        }
        Command::Ball { metric, center, radius, y, closed } => {
            let m = builtin(&metric)?;
            let member = if closed {
                topology::in_closed_ball(&m, &center, radius, &y)?
            } else {
                topology::in_open_ball(&m, &center, radius, &y)?
            };
            let value = m.eval(&y, &y, &center)?;
            Ok(Report::ok(format!(
                "ball metric={} kind={} center={center} radius={radius} y={y} value={} member={member}\n",
                m.name(),
                if closed { "closed" } else { "open" },
                format_sig17(value)
            )))
        }
        Command::Distance { metric, x, set, set_b } => {
            let m = builtin(&metric)?;
            let a = parse_set(&set)?;
            let (what, value) = match (x, set_b) {
                (Some(x), _) => (format!("point={x}"), topology::point_set_distance(&m, &x, &a)?),
                (None, Some(b)) => ("sets=2".to_string(), topology::set_set_distance(&m, &a, &parse_set(&b)?)?),
                (None, None) => return Err(Failure::Usage("give --x or --set-b".into())),
            };
            Ok(Report::ok(format!("distance metric={} {what} value={}\n", m.name(), format_sig17(value))))
        }
        Command::Diameter { metric, set, radius } => {
            let m = builtin(&metric)?;
            let a = parse_set(&set)?;
            let mut out = format!("diameter metric={} value={}", m.name(), format_sig17(topology::diameter(&m, &a)?));
            if let Some(r) = radius {
                let _ = write!(out, " radius={r} bounded={}", topology::is_bounded(&m, &a, r)?);
            }
            out.push('\n');
            Ok(Report::ok(out))
        }
        Command::Iterate { metric, map, x0, eps, max_iters, contraction, trace } => {
            let m = builtin(&metric)?;
            let t = builtin_map(&map)?;
            let cert = issue(&m, &contraction)?;
            let tr = picard(&m, &t, &x0, cert.as_ref(), PicardOptions { eps, max_iters })?;
            if let Some(path) = trace {
                fs::write(&path, tr.to_records()).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            let mut out = format!(
                "iterate metric={} map={} x0={x0} mode={} termination={} iterations={}\n",
                m.name(),
                t.name(),
                tr.mode.tag(),
                tr.termination.tag(),
                tr.iterations
            );
            if let Some(c) = &cert {
                let _ = writeln!(out, "{c}");
            }
            if let Some(x) = &tr.fixed_point {
                let tx = t.apply(x);
                let _ = writeln!(out, "fixed_point x={x} residual={}", format_sig17(m.eval(&tx, &tx, x)?));
            } else if let Some(last) = tr.points.last() {
                let _ = writeln!(out, "last_point x={last}");
            }
            let err: String = tr.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
            let failed = tr.termination != Termination::Converged || cert.as_ref().is_some_and(|c| !c.valid);
            Ok(Report { code: i32::from(failed), out, err })
        }
        Command::Certify { metric, contraction } => {
            let m = builtin(&metric)?;
            let cert = issue(&m, &contraction)?
                .ok_or_else(|| Failure::Usage("give --h, --alpha1/--alpha2 or --kind".into()))?;
            let err: String = cert.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
            let valid = cert.valid || cert.kind == CertificateKind::None;
            Ok(Report { code: i32::from(!valid), out: format!("{cert}\n"), err })
        }
        Command::Solve { matrix, rhs, standard, eps, max_iters, trace } => {
            let a = parse_matrix(&read(&matrix)?).map_err(|e| format!("{}: {e}", matrix.display()))?;
            let b = parse_vector(&read(&rhs)?).map_err(|e| format!("{}: {e}", rhs.display()))?;
            let form = if standard { SystemForm::Standard } else { SystemForm::FixedPoint };
            let mut sys = LinearSystem::new(a, b, form)?;
            if standard {
                sys = to_fixed_point_form(&sys)?;
            }
            let sol = solve_iterative(&sys, PicardOptions { eps, max_iters })?;
            if let Some(path) = trace {
                fs::write(&path, sol.trace.to_records())
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            let mut err = format!(
                "solve n={} h={} certified={} mode={} termination={} iterations={}\n",
                sys.n(),
                format_sig17(sol.certificate.h.unwrap_or(f64::NAN)),
                sol.certificate.valid,
                sol.trace.mode.tag(),
                sol.trace.termination.tag(),
                sol.trace.iterations
            );
            for w in &sol.trace.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let code = i32::from(sol.trace.termination != Termination::Converged);
            Ok(Report { code, out: format_vector(&sol.solution), err })
        }
    }
}
