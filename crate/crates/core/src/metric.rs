//! Ternary S_b-metrics, binary b-metrics, and the constructors that induce
//! one from the other.

use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::point::{Carrier, Point};

/// Default tolerance for comparing distance values (not points).
pub const DEFAULT_VALUE_TOL: f64 = 1e-12;

type TernaryFn = Arc<dyn Fn(&Point, &Point, &Point) -> f64 + Send + Sync>;
type BinaryFn = Arc<dyn Fn(&Point, &Point) -> f64 + Send + Sync>;

fn check_coefficient(b: f64) -> Result<()> {
    if !(b.is_finite() && b >= 1.0) {
        return Err(invalid("b", format!("coefficient must be a finite real >= 1, got {b}")));
    }
    Ok(())
}

fn real_coords(p: &Point) -> &[f64] {
    match p {
        Point::Real(c) => c,
        Point::Label(_) => unreachable!("carrier check admits only real points"),
    }
}

fn label_index(p: &Point) -> usize {
    match p {
        Point::Label(i) => *i,
        Point::Real(_) => unreachable!("carrier check admits only labels"),
    }
}

/// A ternary distance functional together with its claimed coefficient `b`
/// and symmetry flag. The claims are not verified on construction; that is
/// what [`crate::axioms`] is for.
#[derive(Clone)]
pub struct SbMetricSpec {
    name: String,
    b: f64,
    symmetric: bool,
    carrier: Carrier,
    kernel: TernaryFn,
    value_tol: f64,
    reference_tuples: Vec<Vec<Point>>,
}

impl SbMetricSpec {
    /// Metric on ℝⁿ from a closed form over coordinate slices.
    pub fn real<F>(name: impl Into<String>, dim: Option<usize>, b: f64, symmetric: bool, f: F) -> Result<Self>
    where
        F: Fn(&[f64], &[f64], &[f64]) -> f64 + Send + Sync + 'static,
    {
        check_coefficient(b)?;
        if dim == Some(0) {
            return Err(invalid("dim", "dimension must be at least 1"));
        }
        Ok(Self {
            name: name.into(),
            b,
            symmetric,
            carrier: Carrier::Real { dim },
            kernel: Arc::new(move |x, y, z| f(real_coords(x), real_coords(y), real_coords(z))),
            value_tol: DEFAULT_VALUE_TOL,
            reference_tuples: Vec::new(),
        })
    }

    /// Metric on a finite carrier `{0..size}` given by a row-major table
    /// `table[(x * size + y) * size + z]`.
    pub fn finite_table(
        name: impl Into<String>,
        size: usize,
        b: f64,
        symmetric: bool,
        table: Vec<f64>,
    ) -> Result<Self> {
        check_coefficient(b)?;
        if size == 0 {
            return Err(invalid("size", "finite carrier must be nonempty"));
        }
        if table.len() != size * size * size {
            return Err(invalid("table", format!("expected {} entries, got {}", size * size * size, table.len())));
        }
        if table.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(invalid("table", "entries must be finite and nonnegative"));
        }
        Ok(Self {
            name: name.into(),
            b,
            symmetric,
            carrier: Carrier::Finite { size },
            kernel: Arc::new(move |x, y, z| table[(label_index(x) * size + label_index(y)) * size + label_index(z)]),
            value_tol: DEFAULT_VALUE_TOL,
            reference_tuples: Vec::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn value_tol(&self) -> f64 {
        self.value_tol
    }

    /// Tuples of known interest (textbook witnesses). Axiom checks always
    /// evaluate those whose length matches a clause's arity.
    pub fn reference_tuples(&self) -> &[Vec<Point>] {
        &self.reference_tuples
    }

    pub fn with_value_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(invalid("value_tol", "tolerance must be finite and >= 0"));
        }
        self.value_tol = tol;
        Ok(self)
    }

    pub fn with_reference_tuples(mut self, tuples: Vec<Vec<Point>>) -> Self {
        self.reference_tuples = tuples;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same functional, different claimed coefficient.
    pub fn with_b(mut self, b: f64) -> Result<Self> {
        check_coefficient(b)?;
        self.b = b;
        Ok(self)
    }

    /// `c · S(x,y,z)` for `c > 0`, keeping the claims.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(invalid("c", "scale factor must be finite and positive"));
        }
        let inner = Arc::clone(&self.kernel);
        Ok(Self {
            name: format!("{}*{c}", self.name),
            kernel: Arc::new(move |x, y, z| c * inner(x, y, z)),
            ..self.clone()
        })
    }

    pub fn eval(&self, x: &Point, y: &Point, z: &Point) -> Result<f64> {
        self.carrier.check(&[x, y, z])?;
        Ok((self.kernel)(x, y, z))
    }

    /// Evaluation without the carrier check, for samplers that only ever
    /// produce points of the right shape.
    pub(crate) fn eval_unchecked(&self, x: &Point, y: &Point, z: &Point) -> f64 {
        (self.kernel)(x, y, z)
    }

    /// `S(x, x, y)`, the two-point form used by balls, distances and the
    /// contraction conditions.
    pub(crate) fn pair(&self, x: &Point, y: &Point) -> f64 {
        (self.kernel)(x, x, y)
    }
}

impl fmt::Debug for SbMetricSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SbMetricSpec")
            .field("name", &self.name)
            .field("b", &self.b)
            .field("symmetric", &self.symmetric)
            .field("carrier", &self.carrier)
            .finish_non_exhaustive()
    }
}

/// A binary distance with triangle coefficient `b` (`b = 1` is an ordinary
/// metric).
#[derive(Clone)]
pub struct BMetricSpec {
    name: String,
    b: f64,
    carrier: Carrier,
    kernel: BinaryFn,
}

impl BMetricSpec {
    pub fn real<F>(name: impl Into<String>, dim: Option<usize>, b: f64, f: F) -> Result<Self>
    where
        F: Fn(&[f64], &[f64]) -> f64 + Send + Sync + 'static,
    {
        check_coefficient(b)?;
        if dim == Some(0) {
            return Err(invalid("dim", "dimension must be at least 1"));
        }
        Ok(Self {
            name: name.into(),
            b,
            carrier: Carrier::Real { dim },
            kernel: Arc::new(move |x, y| f(real_coords(x), real_coords(y))),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn with_b(mut self, b: f64) -> Result<Self> {
        check_coefficient(b)?;
        self.b = b;
        Ok(self)
    }

    pub fn eval(&self, x: &Point, y: &Point) -> Result<f64> {
        self.carrier.check(&[x, y])?;
        Ok((self.kernel)(x, y))
    }

    pub(crate) fn eval_unchecked(&self, x: &Point, y: &Point) -> f64 {
        (self.kernel)(x, y)
    }
}

impl fmt::Debug for BMetricSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BMetricSpec")
            .field("name", &self.name)
            .field("b", &self.b)
            .field("carrier", &self.carrier)
            .finish_non_exhaustive()
    }
}

/// `S_d(x,y,z) = d(x,z) + d(y,z)` for an ordinary metric `d`; an S-metric.
pub fn induce_s_from_metric(d: &BMetricSpec) -> Result<SbMetricSpec> {
    if d.b != 1.0 {
        return Err(Error::Precondition(format!(
            "`{}` has coefficient {}; an ordinary metric (b = 1) is required",
            d.name, d.b
        )));
    }
    Ok(sum_form(d, format!("s_from:{}", d.name)))
}

/// `S(x,y,z) = d(x,z) + d(y,z)` for a b-metric `d`, carrying the same `b`.
pub fn induce_sb_from_b(d: &BMetricSpec) -> SbMetricSpec {
    sum_form(d, format!("sb_from:{}", d.name))
}

fn sum_form(d: &BMetricSpec, name: String) -> SbMetricSpec {
    let k = Arc::clone(&d.kernel);
    SbMetricSpec {
        name,
        b: d.b,
        symmetric: true,
        carrier: d.carrier,
        kernel: Arc::new(move |x, y, z| k(x, z) + k(y, z)),
        value_tol: DEFAULT_VALUE_TOL,
        reference_tuples: Vec::new(),
    }
}

/// `d(x,y) = S(x,x,y)`, a b-metric with coefficient `3b/2` when `S` is
/// symmetric.
pub fn induce_b_from_sb(s: &SbMetricSpec, require_symmetric: bool) -> Result<BMetricSpec> {
    if require_symmetric && !s.symmetric {
        return Err(Error::Precondition(format!(
            "`{}` is not symmetric; the induced distance needs S(x,x,y) = S(y,y,x)",
            s.name
        )));
    }
    let k = Arc::clone(&s.kernel);
    Ok(BMetricSpec {
        name: format!("b_from:{}", s.name),
        b: 1.5 * s.b,
        carrier: s.carrier,
        kernel: Arc::new(move |x, y| k(x, x, y)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{abs_metric, builtin, squared_metric};

    fn p(x: f64) -> Point {
        Point::scalar(x)
    }

    #[test]
    fn rejects_small_coefficient() {
        assert!(SbMetricSpec::real("bad", Some(1), 0.5, true, |_, _, _| 0.0).is_err());
        assert!(BMetricSpec::real("bad", Some(1), f64::NAN, |_, _| 0.0).is_err());
    }

    #[test]
    fn eval_checks_dimensions() {
        let s1 = builtin("s1").unwrap();
        let v = Point::new(vec![1.0, 2.0]).unwrap();
        assert!(matches!(s1.eval(&p(0.0), &p(0.0), &v), Err(Error::DimensionMismatch { .. })));
        let ex = builtin("ex2_1").unwrap();
        assert!(ex.eval(&v, &v, &v).is_err());
    }

    #[test]
    fn finite_table_lookup() {
        let mut table = vec![1.0; 8];
        table[0] = 0.0;
        table[7] = 0.0;
        let m = SbMetricSpec::finite_table("two", 2, 1.0, true, table).unwrap();
        assert_eq!(m.eval(&Point::label(0), &Point::label(0), &Point::label(0)), Ok(0.0));
        assert_eq!(m.eval(&Point::label(0), &Point::label(1), &Point::label(0)), Ok(1.0));
        assert!(SbMetricSpec::finite_table("short", 2, 1.0, true, vec![0.0; 7]).is_err());
    }

    #[test]
    fn s_from_ordinary_metric_values() {
        let s = induce_s_from_metric(&abs_metric()).unwrap();
        assert_eq!(s.eval(&p(1.0), &p(2.0), &p(4.0)), Ok(5.0));
        assert_eq!(s.eval(&p(-3.0), &p(7.0), &p(7.0)), Ok(10.0));
        assert!(s.symmetric());
        assert_eq!(s.b(), 1.0);
        assert!(induce_s_from_metric(&squared_metric()).is_err());
    }

    #[test]
    fn sb_from_b_metric_values() {
        let s = induce_sb_from_b(&squared_metric());
        assert_eq!(s.eval(&p(0.0), &p(1.0), &p(3.0)), Ok(13.0));
        assert_eq!(s.eval(&p(2.5), &p(2.5), &p(2.5)), Ok(0.0));
        assert_eq!(s.b(), 2.0);
        let a = induce_sb_from_b(&abs_metric());
        let b = induce_s_from_metric(&abs_metric()).unwrap();
        for t in [(1.0, 2.0, 4.0), (-1.0, 5.0, 0.5), (3.0, 3.0, -2.0)] {
            assert_eq!(a.eval(&p(t.0), &p(t.1), &p(t.2)), b.eval(&p(t.0), &p(t.1), &p(t.2)));
        }
    }

    #[test]
    fn b_metric_from_sb_values() {
        let d = induce_b_from_sb(&builtin("ex2_1").unwrap(), true).unwrap();
        assert_eq!(d.b(), 6.0);
        assert_eq!(d.eval(&p(1.0), &p(4.0)), Ok(9.0 / 4.0));
        assert_eq!(d.eval(&p(1.5), &p(1.5)), Ok(0.0));

        let d = induce_b_from_sb(&builtin("ex2_5").unwrap(), true).unwrap();
        assert_eq!(d.b(), 1.5);
        assert_eq!(d.eval(&p(-1.0), &p(2.0)), Ok(6.0));

        let ex23 = builtin("ex2_3").unwrap();
        assert!(matches!(induce_b_from_sb(&ex23, true), Err(Error::Precondition(_))));
        assert!(induce_b_from_sb(&ex23, false).is_ok());
    }

    #[test]
    fn scaling_preserves_claims() {
        let m = builtin("ex2_5").unwrap();
        let m3 = m.scaled(3.0).unwrap();
        assert_eq!(m3.b(), m.b());
        assert_eq!(m3.eval(&p(0.0), &p(1.0), &p(2.0)), Ok(6.0));
        assert!(m.scaled(0.0).is_err());
    }
}
