//! Sampling-based verification and falsification of the generalized-metric
//! axiom families.
//!
//! A `PASS_SAMPLED` verdict only says no sampled tuple violated the clause.
//! A `FAIL` verdict always carries a concrete witness.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::metric::{BMetricSpec, SbMetricSpec};
use crate::point::{format_tuple, Carrier, Point};
use crate::sampler::{require_samples, Domain, Merge, SamplerConfig, Sweep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxiomFamily {
    BMetric,
    GMetric,
    GbMetric,
    SMetric,
    SbMetric,
    Symmetry,
    QuasiSymmetry,
    /// Necessary identity for an S_b-metric of the form `d(x,z) + d(y,z)`.
    Generated,
}

impl AxiomFamily {
    pub fn tag(self) -> &'static str {
        match self {
            AxiomFamily::BMetric => "B_METRIC",
            AxiomFamily::GMetric => "G_METRIC",
            AxiomFamily::GbMetric => "GB_METRIC",
            AxiomFamily::SMetric => "S_METRIC",
            AxiomFamily::SbMetric => "SB_METRIC",
            AxiomFamily::Symmetry => "SYMMETRY",
            AxiomFamily::QuasiSymmetry => "QUASI_SYMMETRY",
            AxiomFamily::Generated => "B_GENERATED",
        }
    }

    /// Short CLI names: `b`, `g`, `gb`, `s`, `sb`, `sym`, `quasi`.
    pub fn from_short(name: &str) -> Option<Self> {
        Some(match name {
            "b" => AxiomFamily::BMetric,
            "g" => AxiomFamily::GMetric,
            "gb" => AxiomFamily::GbMetric,
            "s" => AxiomFamily::SMetric,
            "sb" => AxiomFamily::SbMetric,
            "sym" => AxiomFamily::Symmetry,
            "quasi" => AxiomFamily::QuasiSymmetry,
            _ => return None,
        })
    }

    fn binary(self) -> bool {
        self == AxiomFamily::BMetric
    }

    /// Whether the family's triangle clause carries a coefficient.
    fn uses_coefficient(self) -> bool {
        matches!(
            self,
            AxiomFamily::BMetric | AxiomFamily::GbMetric | AxiomFamily::SbMetric | AxiomFamily::QuasiSymmetry
        )
    }

    fn clauses(self) -> &'static [Clause] {
        use Clause::*;
        match self {
            AxiomFamily::BMetric => &[B1, B2, B3],
            AxiomFamily::GMetric => &[G1, G2, G3, G4, G5],
            AxiomFamily::GbMetric => &[Gb1, Gb2, Gb3, Gb4, Gb5],
            AxiomFamily::SMetric => &[S1, S2],
            AxiomFamily::SbMetric => &[Sb1, Sb2],
            AxiomFamily::Symmetry => &[Sym],
            AxiomFamily::QuasiSymmetry => &[QuasiXY, QuasiYX],
            AxiomFamily::Generated => &[Gen],
        }
    }
}

impl fmt::Display for AxiomFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A family plus the coefficient to test with. `b: None` uses the metric's
/// claimed coefficient; families without a coefficient ignore it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxiomSchema {
    pub family: AxiomFamily,
    pub b: Option<f64>,
}

impl AxiomSchema {
    pub fn new(family: AxiomFamily) -> Self {
        Self { family, b: None }
    }

    pub fn with_b(family: AxiomFamily, b: f64) -> Self {
        Self { family, b: Some(b) }
    }
}

/// The metric under test.
#[derive(Debug, Clone, Copy)]
pub enum MetricRef<'a> {
    Ternary(&'a SbMetricSpec),
    Binary(&'a BMetricSpec),
}

impl<'a> From<&'a SbMetricSpec> for MetricRef<'a> {
    fn from(m: &'a SbMetricSpec) -> Self {
        MetricRef::Ternary(m)
    }
}

impl<'a> From<&'a BMetricSpec> for MetricRef<'a> {
    fn from(m: &'a BMetricSpec) -> Self {
        MetricRef::Binary(m)
    }
}

impl MetricRef<'_> {
    fn name(&self) -> &str {
        match self {
            MetricRef::Ternary(m) => m.name(),
            MetricRef::Binary(m) => m.name(),
        }
    }

    fn b(&self) -> f64 {
        match self {
            MetricRef::Ternary(m) => m.b(),
            MetricRef::Binary(m) => m.b(),
        }
    }

    fn carrier(&self) -> Carrier {
        match self {
            MetricRef::Ternary(m) => m.carrier(),
            MetricRef::Binary(m) => m.carrier(),
        }
    }

    fn value_tol(&self) -> f64 {
        match self {
            MetricRef::Ternary(m) => m.value_tol(),
            MetricRef::Binary(_) => crate::metric::DEFAULT_VALUE_TOL,
        }
    }

    fn reference_tuples(&self) -> &[Vec<Point>] {
        match self {
            MetricRef::Ternary(m) => m.reference_tuples(),
            MetricRef::Binary(_) => &[],
        }
    }

    fn s(&self, x: &Point, y: &Point, z: &Point) -> f64 {
        match self {
            MetricRef::Ternary(m) => m.eval_unchecked(x, y, z),
            MetricRef::Binary(_) => unreachable!("ternary clause on a binary metric"),
        }
    }

    fn d(&self, x: &Point, y: &Point) -> f64 {
        match self {
            MetricRef::Binary(m) => m.eval_unchecked(x, y),
            MetricRef::Ternary(_) => unreachable!("binary clause on a ternary metric"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Clause {
    B1,
    B2,
    B3,
    G1,
    G2,
    G3,
    G4,
    G5,
    Gb1,
    Gb2,
    Gb3,
    Gb4,
    Gb5,
    S1,
    S2,
    Sb1,
    Sb2,
    Sym,
    QuasiXY,
    QuasiYX,
    Gen,
}

/// What a clause demands of `lhs` relative to `rhs`.
#[derive(Debug, Clone, Copy)]
enum Relation {
    AtMost,
    Equal,
    /// `lhs` must vanish (rhs is 0).
    Zero,
    /// `lhs` must be strictly positive (rhs is 0).
    Positive,
}

struct Evaluation {
    lhs: f64,
    rhs: f64,
    relation: Relation,
    /// `(numerator, denominator)` for coefficient estimation on triangle
    /// clauses: `lhs / (rhs / b)`.
    ratio: Option<(f64, f64)>,
}

impl Clause {
    fn name(self) -> &'static str {
        match self {
            Clause::B1 => "b1",
            Clause::B2 => "b2",
            Clause::B3 => "b3",
            Clause::G1 => "G1",
            Clause::G2 => "G2",
            Clause::G3 => "G3",
            Clause::G4 => "G4",
            Clause::G5 => "G5",
            Clause::Gb1 => "G_b1",
            Clause::Gb2 => "G_b2",
            Clause::Gb3 => "G_b3",
            Clause::Gb4 => "G_b4",
            Clause::Gb5 => "G_b5",
            Clause::S1 => "S1",
            Clause::S2 => "S2",
            Clause::Sb1 => "S_b1",
            Clause::Sb2 => "S_b2",
            Clause::Sym => "symmetry",
            Clause::QuasiXY => "quasi_xy",
            Clause::QuasiYX => "quasi_yx",
            Clause::Gen => "generated_identity",
        }
    }

    fn arity(self) -> usize {
        match self {
            Clause::G1 | Clause::Gb1 => 1,
            Clause::B1 | Clause::B2 | Clause::G2 | Clause::Gb2 | Clause::Sym | Clause::QuasiXY | Clause::QuasiYX => 2,
            Clause::B3
            | Clause::G3
            | Clause::Gb3
            | Clause::G4
            | Clause::Gb4
            | Clause::S1
            | Clause::Sb1
            | Clause::Gen => 3,
            Clause::G5 | Clause::Gb5 | Clause::S2 | Clause::Sb2 => 4,
        }
    }

    /// Quadruple clauses quantify over an auxiliary point `a`, printed last.
    fn aux_last(self) -> bool {
        self.arity() == 4
    }

    /// Evaluates the clause on one tuple; `None` when the tuple falls outside
    /// the clause's quantifier (e.g. `y = z` for G3).
    fn evaluate(self, m: &MetricRef<'_>, b: f64, t: &[&Point]) -> Option<Evaluation> {
        let le = |lhs: f64, base: f64, coef: f64| Evaluation {
            lhs,
            rhs: coef * base,
            relation: Relation::AtMost,
            ratio: Some((lhs, base)),
        };
        let plain = |lhs: f64, rhs: f64, relation: Relation| Evaluation { lhs, rhs, relation, ratio: None };
        let zero_iff = |value: f64, identical: bool| {
            plain(value, 0.0, if identical { Relation::Zero } else { Relation::Positive })
        };
        Some(match self {
            Clause::B1 => zero_iff(m.d(t[0], t[1]), t[0] == t[1]),
            Clause::B2 => plain(m.d(t[0], t[1]), m.d(t[1], t[0]), Relation::Equal),
            Clause::B3 => {
                let (x, y, z) = (t[0], t[1], t[2]);
                le(m.d(x, z), m.d(x, y) + m.d(y, z), b)
            }
            Clause::G1 | Clause::Gb1 => plain(m.s(t[0], t[0], t[0]), 0.0, Relation::Zero),
            Clause::G2 | Clause::Gb2 => {
                if t[0] == t[1] {
                    return None;
                }
                plain(m.s(t[0], t[0], t[1]), 0.0, Relation::Positive)
            }
            Clause::G3 | Clause::Gb3 => {
                let (x, y, z) = (t[0], t[1], t[2]);
                if y == z {
                    return None;
                }
                plain(m.s(x, x, y), m.s(x, y, z), Relation::AtMost)
            }
            Clause::G4 | Clause::Gb4 => {
                let (x, y, z) = (t[0], t[1], t[2]);
                let base = m.s(x, y, z);
                let perms = [m.s(x, z, y), m.s(y, x, z), m.s(y, z, x), m.s(z, x, y), m.s(z, y, x)];
                let worst =
                    perms.into_iter().max_by(|a, c| (a - base).abs().total_cmp(&(c - base).abs())).unwrap_or(base);
                plain(base, worst, Relation::Equal)
            }
            Clause::G5 => {
                let (x, y, z, a) = (t[0], t[1], t[2], t[3]);
                le(m.s(x, y, z), m.s(x, a, a) + m.s(a, y, z), 1.0)
            }
            Clause::Gb5 => {
                let (x, y, z, a) = (t[0], t[1], t[2], t[3]);
                le(m.s(x, y, z), m.s(x, a, a) + m.s(a, y, z), b)
            }
            Clause::S1 | Clause::Sb1 => {
                let (x, y, z) = (t[0], t[1], t[2]);
                zero_iff(m.s(x, y, z), x == y && y == z)
            }
            Clause::S2 | Clause::Sb2 => {
                let (x, y, z, a) = (t[0], t[1], t[2], t[3]);
                let coef = if self == Clause::S2 { 1.0 } else { b };
                le(m.s(x, y, z), m.s(x, x, a) + m.s(y, y, a) + m.s(z, z, a), coef)
            }
            Clause::Sym => plain(m.s(t[0], t[0], t[1]), m.s(t[1], t[1], t[0]), Relation::Equal),
            Clause::QuasiXY => le(m.s(t[0], t[0], t[1]), m.s(t[1], t[1], t[0]), b),
            Clause::QuasiYX => le(m.s(t[1], t[1], t[0]), m.s(t[0], t[0], t[1]), b),
            Clause::Gen => {
                let (x, y, z) = (t[0], t[1], t[2]);
                plain(m.s(x, y, z), 0.5 * (m.s(x, x, z) + m.s(y, y, z)), Relation::Equal)
            }
        })
    }
}

impl Evaluation {
    /// Positive when the clause is violated beyond tolerance.
    fn violation(&self, slack: f64, value_tol: f64) -> Option<f64> {
        let (v, limit) = match self.relation {
            Relation::AtMost => (self.lhs - self.rhs, slack),
            Relation::Equal => ((self.lhs - self.rhs).abs(), slack),
            Relation::Zero => (self.lhs.abs(), slack),
            Relation::Positive => (value_tol - self.lhs, 0.0),
        };
        // NaN compares false and is reported as a violation of infinite size.
        if v.is_nan() {
            return Some(f64::INFINITY);
        }
        (v > limit).then_some(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    PassSampled,
    Fail,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::PassSampled => "PASS_SAMPLED",
            Verdict::Fail => "FAIL",
        }
    }
}

/// A sampled tuple that violates a clause.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub clause: &'static str,
    pub tuple: Vec<Point>,
    pub lhs: f64,
    pub rhs: f64,
    /// Amount by which the clause is violated (always above tolerance).
    pub violation: f64,
    /// Came from an explicit probe or a catalog reference tuple.
    pub pinned: bool,
    index: u64,
    aux_last: bool,
}

impl Counterexample {
    pub fn tuple_text(&self) -> String {
        format_tuple(&self.tuple, self.aux_last)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClauseResult {
    pub name: &'static str,
    pub verdict: Verdict,
    /// Tuples that fell inside the clause's quantifier.
    pub samples: u64,
    pub skipped: u64,
    pub violations: u64,
    pub counterexamples: Vec<Counterexample>,
}

/// Outcome of one counterexample search.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub family: AxiomFamily,
    pub metric: String,
    pub b: Option<f64>,
    pub seed: u64,
    pub slack: f64,
    pub clauses: Vec<ClauseResult>,
    /// Largest sampled `lhs / base` on the triangle clause; a lower bound on
    /// any admissible coefficient.
    pub empirical_b_lower: Option<f64>,
    /// Largest sampled `S(x,x,y) / S(y,y,x)` (quasi-symmetry only).
    pub max_ratio: Option<f64>,
    pub samples_evaluated: u64,
}

impl AxiomReport {
    pub fn verdict(&self) -> Verdict {
        if self.clauses.iter().any(|c| c.verdict == Verdict::Fail) {
            Verdict::Fail
        } else {
            Verdict::PassSampled
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Verdict::PassSampled
    }

    pub fn clause(&self, name: &str) -> Option<&ClauseResult> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &Counterexample> {
        self.clauses.iter().flat_map(|c| c.counterexamples.iter())
    }

    /// Key-value text form, one record per line.
    pub fn to_records(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "report family={} metric={}", self.family, self.metric)?;
        if let Some(b) = self.b {
            write!(f, " b={b}")?;
        }
        writeln!(f, " seed={} slack={} verdict={}", self.seed, self.slack, self.verdict().tag())?;
        for c in &self.clauses {
            writeln!(
                f,
                "clause name={} verdict={} samples={} skipped={} violations={}",
                c.name,
                c.verdict.tag(),
                c.samples,
                c.skipped,
                c.violations
            )?;
        }
        for cx in self.counterexamples() {
            writeln!(
                f,
                "counterexample clause={} tuple={} lhs={} rhs={} violation={} pinned={}",
                cx.clause,
                cx.tuple_text(),
                cx.lhs,
                cx.rhs,
                cx.violation,
                cx.pinned
            )?;
        }
        if let Some(v) = self.empirical_b_lower {
            writeln!(f, "empirical_b_lower value={v}")?;
        }
        if let Some(v) = self.max_ratio {
            writeln!(f, "max_ratio value={v}")?;
        }
        writeln!(f, "samples_evaluated total={}", self.samples_evaluated)
    }
}

/// Running maximum with the sample index as a deterministic tie-break.
#[derive(Debug, Clone, Default)]
pub(crate) struct ArgMax {
    pub best: Option<(f64, u64, Vec<Point>)>,
    pub count: u64,
}

impl ArgMax {
    pub(crate) fn offer(&mut self, value: f64, index: u64, tuple: &[&Point]) {
        self.count += 1;
        let better = match &self.best {
            None => true,
            Some((v, i, _)) => match value.total_cmp(v) {
                Ordering::Greater => true,
                Ordering::Equal => index < *i,
                Ordering::Less => false,
            },
        };
        if better {
            self.best = Some((value, index, tuple.iter().map(|p| (*p).clone()).collect()));
        }
    }
}

impl Merge for ArgMax {
    fn merge(&mut self, later: Self) {
        let count = self.count + later.count;
        if let Some((v, i, t)) = later.best {
            let refs: Vec<&Point> = t.iter().collect();
            self.offer(v, i, &refs);
        }
        self.count = count;
    }
}

struct Tally {
    samples: u64,
    skipped: u64,
    violations: u64,
    pinned: Vec<Counterexample>,
    top: Vec<Counterexample>,
    cap: usize,
    ratio: ArgMax,
}

fn by_severity(a: &Counterexample, b: &Counterexample) -> Ordering {
    b.violation.total_cmp(&a.violation).then(a.index.cmp(&b.index))
}

impl Tally {
    fn new(cap: usize) -> Self {
        Self {
            samples: 0,
            skipped: 0,
            violations: 0,
            pinned: Vec::new(),
            top: Vec::new(),
            cap,
            ratio: ArgMax::default(),
        }
    }

    fn prune(&mut self) {
        self.top.sort_by(by_severity);
        self.top.truncate(self.cap);
    }

    fn push(&mut self, cx: Counterexample) {
        if cx.pinned {
            self.pinned.push(cx);
        } else {
            self.top.push(cx);
            if self.top.len() > 2 * self.cap.max(16) {
                self.prune();
            }
        }
    }
}

impl Merge for Tally {
    fn merge(&mut self, later: Self) {
        self.samples += later.samples;
        self.skipped += later.skipped;
        self.violations += later.violations;
        self.pinned.extend(later.pinned);
        self.top.extend(later.top);
        self.prune();
        self.ratio.merge(later.ratio);
    }
}

fn check_family(
    family: AxiomFamily,
    b_override: Option<f64>,
    metric: MetricRef<'_>,
    cfg: &SamplerConfig,
) -> Result<AxiomReport> {
    match (family.binary(), &metric) {
        (true, MetricRef::Ternary(_)) => return Err(Error::ArityMismatch { schema: family.tag(), expected: "binary" }),
        (false, MetricRef::Binary(_)) => {
            return Err(Error::ArityMismatch { schema: family.tag(), expected: "ternary" })
        }
        _ => {}
    }
    let b = b_override.unwrap_or_else(|| metric.b());
    if !(b.is_finite() && b >= 1.0) {
        return Err(crate::error::invalid("b", format!("coefficient must be >= 1, got {b}")));
    }
    let domain = Domain::new(metric.carrier(), cfg)?;
    let value_tol = metric.value_tol();
    let mut clauses = Vec::new();
    let mut empirical = None;
    let mut max_ratio = None;
    let mut total = 0;
    for &clause in family.clauses() {
        let sweep = Sweep::new(&domain, cfg, clause.arity(), metric.reference_tuples())?;
        total += sweep.total();
        let tally = sweep.run(
            || Tally::new(cfg.max_counterexamples),
            |acc, smp| {
                let Some(ev) = clause.evaluate(&metric, b, smp.points) else {
                    acc.skipped += 1;
                    return;
                };
                acc.samples += 1;
                if let Some((num, den)) = ev.ratio {
                    if den > 0.0 {
                        acc.ratio.offer(num / den, smp.index, smp.points);
                    }
                }
                if let Some(violation) = ev.violation(cfg.slack, value_tol) {
                    acc.violations += 1;
                    acc.push(Counterexample {
                        clause: clause.name(),
                        tuple: smp.points.iter().map(|p| (*p).clone()).collect(),
                        lhs: ev.lhs,
                        rhs: ev.rhs,
                        violation,
                        pinned: smp.pinned,
                        index: smp.index,
                        aux_last: clause.aux_last(),
                    });
                }
            },
        );
        if let Some((v, _, _)) = &tally.ratio.best {
            match clause {
                Clause::QuasiXY | Clause::QuasiYX => {
                    max_ratio = Some(max_ratio.map_or(*v, |m: f64| m.max(*v)));
                }
                _ => empirical = Some(*v),
            }
        }
        let mut cexs = tally.pinned;
        let mut top = tally.top;
        top.sort_by(by_severity);
        top.truncate(cfg.max_counterexamples);
        cexs.extend(top);
        clauses.push(ClauseResult {
            name: clause.name(),
            verdict: if tally.violations > 0 { Verdict::Fail } else { Verdict::PassSampled },
            samples: tally.samples,
            skipped: tally.skipped,
            violations: tally.violations,
            counterexamples: cexs,
        });
    }
    Ok(AxiomReport {
        family,
        metric: metric.name().to_string(),
        b: family.uses_coefficient().then_some(b),
        seed: cfg.seed,
        slack: cfg.slack,
        clauses,
        empirical_b_lower: empirical,
        max_ratio,
        samples_evaluated: total,
    })
}

/// Evaluates every clause of `schema` on the grid, the seeded random tuples,
/// and any pinned probes.
pub fn check_axioms<'a>(
    schema: AxiomSchema,
    metric: impl Into<MetricRef<'a>>,
    cfg: &SamplerConfig,
) -> Result<AxiomReport> {
    check_family(schema.family, schema.b, metric.into(), cfg)
}

/// `S(x,x,y) = S(y,y,x)` on sampled pairs.
pub fn check_symmetry(metric: &SbMetricSpec, cfg: &SamplerConfig) -> Result<AxiomReport> {
    check_family(AxiomFamily::Symmetry, None, metric.into(), cfg)
}

/// `S(x,x,y) ≤ b·S(y,y,x)` in both orientations, with the largest observed
/// ratio.
pub fn check_quasi_symmetry(metric: &SbMetricSpec, cfg: &SamplerConfig) -> Result<AxiomReport> {
    check_family(AxiomFamily::QuasiSymmetry, None, metric.into(), cfg)
}

/// Tests `S(x,y,z) = [S(x,x,z) + S(y,y,z)] / 2`, which every metric of the
/// form `d(x,z) + d(y,z)` satisfies. `FAIL` means no b-metric generates `S`.
pub fn check_not_b_generated(metric: &SbMetricSpec, cfg: &SamplerConfig) -> Result<AxiomReport> {
    check_family(AxiomFamily::Generated, None, metric.into(), cfg)
}

/// Empirical lower bound on any admissible coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientEstimate {
    pub lower_bound: f64,
    /// Quadruple `(x,y,z,a)` attaining the bound.
    pub witness: Vec<Point>,
    /// Quadruples with a positive denominator.
    pub samples: u64,
}

/// Supremum of `S(x,y,z) / [S(x,x,a) + S(y,y,a) + S(z,z,a)]` over sampled
/// quadruples with a positive denominator.
pub fn estimate_min_b(metric: &SbMetricSpec, cfg: &SamplerConfig) -> Result<CoefficientEstimate> {
    let domain = Domain::new(metric.carrier(), cfg)?;
    let sweep = Sweep::new(&domain, cfg, 4, metric.reference_tuples())?;
    let best = sweep.run(ArgMax::default, |acc, smp| {
        let [x, y, z, a] = [smp.points[0], smp.points[1], smp.points[2], smp.points[3]];
        if x == y && y == z {
            return;
        }
        let den = metric.pair(x, a) + metric.pair(y, a) + metric.pair(z, a);
        if den > 0.0 {
            acc.offer(metric.eval_unchecked(x, y, z) / den, smp.index, smp.points);
        }
    });
    require_samples(best.count, "a positive denominator")?;
    let (lower_bound, _, witness) = best.best.expect("count > 0");
    Ok(CoefficientEstimate { lower_bound, witness, samples: best.count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    fn small() -> SamplerConfig {
        SamplerConfig::default().with_range(-3.0, 3.0).with_random_count(500).with_seed(3)
    }

    #[test]
    fn arity_mismatch_is_an_input_error() {
        let m = ex2_1();
        let err = check_axioms(AxiomSchema::new(AxiomFamily::BMetric), &m, &small()).unwrap_err();
        assert!(matches!(err, Error::ArityMismatch { .. }));
        let d = abs_metric();
        assert!(check_axioms(AxiomSchema::new(AxiomFamily::SMetric), &d, &small()).is_err());
    }

    #[test]
    fn one_point_space_passes_everything() {
        let m = SbMetricSpec::finite_table("one", 1, 1.0, true, vec![0.0]).unwrap();
        for fam in [
            AxiomFamily::GMetric,
            AxiomFamily::GbMetric,
            AxiomFamily::SMetric,
            AxiomFamily::SbMetric,
            AxiomFamily::Symmetry,
            AxiomFamily::QuasiSymmetry,
            AxiomFamily::Generated,
        ] {
            let r = check_axioms(AxiomSchema::new(fam), &m, &small()).unwrap();
            assert!(r.passed(), "{fam}: {r}");
        }
    }

    #[test]
    fn zero_iff_identical_catches_pseudometrics() {
        // S ≡ 0 everywhere fails the "only if" direction.
        let m = SbMetricSpec::real("zero", Some(1), 1.0, true, |_, _, _| 0.0).unwrap();
        let r = check_axioms(AxiomSchema::new(AxiomFamily::SMetric), &m, &small()).unwrap();
        assert_eq!(r.clause("S1").unwrap().verdict, Verdict::Fail);
        assert_eq!(r.clause("S2").unwrap().verdict, Verdict::PassSampled);
    }

    #[test]
    fn g3_skips_equal_tail_points() {
        let m = ex2_5();
        let r = check_axioms(AxiomSchema::new(AxiomFamily::GMetric), &m, &small()).unwrap();
        let g3 = r.clause("G3").unwrap();
        assert_eq!(g3.skipped, 49);
        assert_eq!(r.clause("G1").unwrap().verdict, Verdict::PassSampled);
    }

    #[test]
    fn b_metric_schema() {
        let r = check_axioms(AxiomSchema::new(AxiomFamily::BMetric), &squared_metric(), &small()).unwrap();
        assert!(r.passed(), "{r}");
        let est = r.empirical_b_lower.unwrap();
        assert!((1.9..=2.0 + 1e-12).contains(&est), "{est}");
        let r1 = check_axioms(AxiomSchema::with_b(AxiomFamily::BMetric, 1.0), &squared_metric(), &small()).unwrap();
        assert_eq!(r1.clause("b3").unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn counterexamples_sorted_and_capped() {
        let m = ex2_1();
        let r = check_axioms(AxiomSchema::new(AxiomFamily::SMetric), &m, &small()).unwrap();
        let s2 = r.clause("S2").unwrap();
        assert_eq!(s2.verdict, Verdict::Fail);
        // pinned (4,6,8;5) plus the ten worst
        assert_eq!(s2.counterexamples.len(), 11);
        assert!(s2.counterexamples[0].pinned);
        let rest = &s2.counterexamples[1..];
        assert!(rest.windows(2).all(|w| w[0].violation >= w[1].violation));
        for cx in s2.counterexamples.iter() {
            assert!(cx.lhs > cx.rhs + r.slack);
        }
    }

    #[test]
    fn symmetry_and_quasi_for_ex2_3() {
        let m = ex2_3();
        let cfg = SamplerConfig::default().with_range(-2.0, 2.0).with_random_count(100);
        let r = check_symmetry(&m, &cfg).unwrap();
        assert_eq!(r.verdict(), Verdict::Fail);
        let q = check_quasi_symmetry(&m, &cfg).unwrap();
        assert!(q.passed(), "{q}");
        assert_eq!(q.max_ratio, Some(2.0));
    }

    #[test]
    fn min_b_degenerate_space() {
        let m = SbMetricSpec::finite_table("one", 1, 1.0, true, vec![0.0]).unwrap();
        assert!(matches!(estimate_min_b(&m, &small()), Err(Error::Degenerate(_))));
    }

    #[test]
    fn min_b_for_ex2_3_is_two() {
        let cfg = SamplerConfig::default().with_range(-1.0, 2.0).with_random_count(0);
        let e = estimate_min_b(&ex2_3(), &cfg).unwrap();
        assert_eq!(e.lower_bound, 2.0);
    }

    #[test]
    fn report_text_is_stable() {
        let cfg = small();
        let a = check_axioms(AxiomSchema::new(AxiomFamily::SbMetric), &ex2_1(), &cfg).unwrap();
        let b =
            check_axioms(AxiomSchema::new(AxiomFamily::SbMetric), &ex2_1(), &cfg.clone().with_parallel(false)).unwrap();
        assert_eq!(a.to_records(), b.to_records());
        assert!(a.to_records().starts_with("report family=SB_METRIC metric=ex2_1 b=4 seed=3"));
    }
}
