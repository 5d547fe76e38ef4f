//! Carrier-space elements.
//!
//! A [`Point`] is either a real vector or a label into a finite carrier set.
//! Equality is exact: the axiom logic quantifies over identity, so two
//! vectors are the same point only when every coordinate compares equal.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::numeric::parse_real;

#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Real(Vec<f64>),
    Label(usize),
}

impl Point {
    /// Validated real vector; rejects empty and non-finite input.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Point::Real(coords))
    }

    /// One-dimensional point. Panics on a non-finite value.
    pub fn scalar(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite scalar point");
        Point::Real(vec![x])
    }

    pub fn label(index: usize) -> Self {
        Point::Label(index)
    }

    pub fn coords(&self) -> Option<&[f64]> {
        match self {
            Point::Real(c) => Some(c),
            Point::Label(_) => None,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.coords().map(<[f64]>::len)
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Point::Real(c) => c.iter().all(|v| v.is_finite()),
            Point::Label(_) => true,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Real(c) if c.len() == 1 => write!(f, "{}", c[0]),
            Point::Real(c) => {
                f.write_str("[")?;
                for (i, v) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
            Point::Label(i) => write!(f, "#{i}"),
        }
    }
}

impl std::str::FromStr for Point {
    type Err = Error;

    /// `4`, `1/3`, `[1,-0.5]` (brackets optional for vectors) or `#3`.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some(label) = t.strip_prefix('#') {
            return label.parse().map(Point::Label).map_err(|_| invalid("point", format!("bad label `{t}`")));
        }
        let inner = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(t);
        let coords = inner.split(',').map(parse_real).collect::<Result<Vec<f64>>>()?;
        Point::new(coords)
    }
}

/// The set a metric is defined on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    /// ℝⁿ. `dim: None` accepts any dimension as long as all arguments agree.
    Real { dim: Option<usize> },
    /// `{0, 1, ..., size-1}`.
    Finite { size: usize },
}

impl Carrier {
    pub fn real(dim: usize) -> Self {
        Carrier::Real { dim: Some(dim) }
    }

    /// Checks that every point belongs to this carrier and, for real spaces,
    /// that all points share one dimension.
    pub fn check(&self, points: &[&Point]) -> Result<()> {
        match *self {
            Carrier::Real { dim } => {
                let mut expected = dim;
                for p in points {
                    let found = match p {
                        Point::Real(c) => c.len(),
                        Point::Label(_) => {
                            return Err(Error::CarrierMismatch(format!("label {p} in a real vector space")))
                        }
                    };
                    match expected {
                        Some(e) if e != found => return Err(Error::DimensionMismatch { expected: e, found }),
                        None => expected = Some(found),
                        _ => {}
                    }
                }
                Ok(())
            }
            Carrier::Finite { size } => {
                for p in points {
                    match p {
                        Point::Label(i) if *i < size => {}
                        _ => {
                            return Err(Error::CarrierMismatch(format!(
                                "{p} is not an element of a {size}-point space"
                            )))
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

/// Formats a tuple of points as `(x,y,z)` or, when `aux_last` is set,
/// `(x,y,z;a)` with the auxiliary point separated.
pub fn format_tuple(points: &[Point], aux_last: bool) -> String {
    let mut out = String::from("(");
    let n = points.len();
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            out.push(if aux_last && i == n - 1 { ';' } else { ',' });
        }
        out.push_str(&p.to_string());
    }
    out.push(')');
    out
}
