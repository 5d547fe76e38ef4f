use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::parse_real;
use crate::point::Point;

type MapFn = Arc<dyn Fn(&Point) -> Point + Send + Sync>;

/// A self-map of the carrier space.
#[derive(Clone)]
pub struct SelfMap {
    name: String,
    f: MapFn,
}

impl SelfMap {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Point) -> Point + Send + Sync + 'static,
    {
        Self { name: name.into(), f: Arc::new(f) }
    }

    /// Applies `f` to every coordinate; labels pass through unchanged.
    pub fn coordinatewise<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(name, move |p| match p {
            Point::Real(c) => Point::Real(c.iter().map(|&v| f(v)).collect()),
            Point::Label(_) => p.clone(),
        })
    }

    /// `Tx = c·x`.
    pub fn scale(c: f64) -> Self {
        Self::coordinatewise(format!("scale:{c}"), move |x| c * x)
    }

    /// `Tx = c·x + d`.
    pub fn affine(c: f64, d: f64) -> Self {
        Self::coordinatewise(format!("affine:{c}:{d}"), move |x| c * x + d)
    }

    pub fn constant(c: f64) -> Self {
        Self::coordinatewise(format!("const:{c}"), move |_| c)
    }

    pub fn identity() -> Self {
        Self::new("identity", Point::clone)
    }

    /// `x + 50` when `|x − 1| = 1`, otherwise `45`. The test is exact, so
    /// only `x = 0` and `x = 2` take the first branch.
    pub fn ex3_2() -> Self {
        Self::coordinatewise("ex3_2", |x| if (x - 1.0).abs() == 1.0 { x + 50.0 } else { 45.0 })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, x: &Point) -> Point {
        (self.f)(x)
    }
}

impl fmt::Debug for SelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SelfMap").field("name", &self.name).finish_non_exhaustive()
    }
}

/// Parses `scale:<c>`, `affine:<c>:<d>`, `const:<c>`, `identity`, `ex3_2`.
/// Numbers accept `p/q`.
pub fn builtin_map(spec: &str) -> Result<SelfMap> {
    let spec = spec.trim();
    let parts: Vec<&str> = spec.split(':').collect();
    let map = match parts.as_slice() {
        ["scale", c] => SelfMap::scale(parse_real(c)?),
        ["affine", c, d] => SelfMap::affine(parse_real(c)?, parse_real(d)?),
        ["const", c] => SelfMap::constant(parse_real(c)?),
        ["identity"] => SelfMap::identity(),
        ["ex3_2"] => SelfMap::ex3_2(),
        _ => return Err(Error::UnknownMap(spec.to_string())),
    };
    Ok(map.renamed(spec))
}

impl SelfMap {
    fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}
