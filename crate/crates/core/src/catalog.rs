//! Named metrics.
//!
//! Ternary names: `ex2_1`, `ex2_2[:p]`, `ex2_3`, `ex2_5`, `ex2_6[:b]`,
//! `s1[:n]`, `s_from:<binary>`, `sb_from:<binary>`.
//! Binary names: `abs`, `sq`, `l1`, `b_from:<ternary>`.

use crate::error::{invalid, Error, Result};
use crate::metric::{induce_b_from_sb, induce_s_from_metric, induce_sb_from_b, BMetricSpec, SbMetricSpec};
use crate::numeric::parse_real;
use crate::point::Point;

/// One line per catalog entry, for listings.
pub const CATALOG: &[(&str, &str)] = &[
    ("ex2_1", "(|x-y|+|y-z|+|x-z|)^2/16 on R, b=4, symmetric"),
    ("ex2_2[:p]", "(|x-y|+|y-z|+|x-z|)^p on R, p>1 (default 2), b=3^(p-1), symmetric"),
    ("ex2_3", "four-case table on R (S(0,0,1)=2, S(1,1,0)=4), b=2, not symmetric"),
    ("ex2_5", "|x-z|+|x+z-2y| on R, b=1, symmetric"),
    ("ex2_6[:b]", "b(|x-z|+|x+z-2y|) on R, b>=1 (default 1), symmetric"),
    ("s1[:n]", "sum|x_i-z_i| + sum|y_i-z_i| on R^n (any n if omitted), b=1, symmetric"),
    ("s_from:<binary>", "d(x,z)+d(y,z) for an ordinary metric d, b=1"),
    ("sb_from:<binary>", "d(x,z)+d(y,z) for a b-metric d, same b"),
    ("abs", "binary: |x-y| on R, b=1"),
    ("sq", "binary: |x-y|^2 on R, b=2"),
    ("l1", "binary: sum|x_i-y_i| on R^n, b=1"),
    ("b_from:<ternary>", "binary: S(x,x,y) for a symmetric S_b-metric, b'=3b/2"),
];

fn p(x: f64) -> Point {
    Point::scalar(x)
}

fn perimeter(x: f64, y: f64, z: f64) -> f64 {
    (x - y).abs() + (y - z).abs() + (x - z).abs()
}

pub fn ex2_1() -> SbMetricSpec {
    SbMetricSpec::real("ex2_1", Some(1), 4.0, true, |x, y, z| {
        let s = perimeter(x[0], y[0], z[0]);
        s * s / 16.0
    })
    .expect("valid coefficient")
    .with_reference_tuples(vec![vec![p(4.0), p(6.0), p(8.0), p(5.0)]])
}

/// `(|x−y|+|y−z|+|x−z|)^p`. With `u,v,w` the distances to the auxiliary
/// point the perimeter is at most `2(u+v+w)`, and power-mean convexity gives
/// `(u+v+w)^p ≤ 3^(p−1)(u^p+v^p+w^p)`, so `b = 3^(p−1)` is admissible.
pub fn ex2_2(exponent: f64) -> Result<SbMetricSpec> {
    if !(exponent.is_finite() && exponent > 1.0) {
        return Err(invalid("p", format!("exponent must exceed 1, got {exponent}")));
    }
    let name = if exponent == 2.0 { "ex2_2".to_string() } else { format!("ex2_2:{exponent}") };
    SbMetricSpec::real(name, Some(1), 3f64.powf(exponent - 1.0), true, move |x, y, z| {
        perimeter(x[0], y[0], z[0]).powf(exponent)
    })
}

pub fn ex2_3() -> SbMetricSpec {
    SbMetricSpec::real("ex2_3", Some(1), 2.0, false, |x, y, z| {
        let (x, y, z) = (x[0], y[0], z[0]);
        if (x, y, z) == (0.0, 0.0, 1.0) {
            2.0
        } else if (x, y, z) == (1.0, 1.0, 0.0) {
            4.0
        } else if x == y && y == z {
            0.0
        } else {
            1.0
        }
    })
    .expect("valid coefficient")
    .with_reference_tuples(vec![vec![p(0.0), p(1.0)]])
}

pub fn ex2_5() -> SbMetricSpec {
    SbMetricSpec::real("ex2_5", Some(1), 1.0, true, |x, y, z| (x[0] - z[0]).abs() + (x[0] + z[0] - 2.0 * y[0]).abs())
        .expect("valid coefficient")
}

pub fn ex2_6(b: f64) -> Result<SbMetricSpec> {
    let name = if b == 1.0 { "ex2_6".to_string() } else { format!("ex2_6:{b}") };
    Ok(SbMetricSpec::real(name, Some(1), b, true, move |x, y, z| {
        b * ((x[0] - z[0]).abs() + (x[0] + z[0] - 2.0 * y[0]).abs())
    })?
    .with_reference_tuples(vec![vec![p(0.0), p(1.0), p(0.0)]]))
}

/// The S-metric induced on ℝⁿ by the ℓ¹ distance. `dim: None` accepts any
/// dimension.
pub fn s1(dim: Option<usize>) -> Result<SbMetricSpec> {
    let name = match dim {
        Some(n) => format!("s1:{n}"),
        None => "s1".to_string(),
    };
    SbMetricSpec::real(name, dim, 1.0, true, |x, y, z| {
        x.iter().zip(y).zip(z).map(|((xi, yi), zi)| (xi - zi).abs() + (yi - zi).abs()).sum()
    })
}

pub fn abs_metric() -> BMetricSpec {
    BMetricSpec::real("abs", Some(1), 1.0, |x, y| (x[0] - y[0]).abs()).expect("valid coefficient")
}

/// `|x−y|²`, a b-metric with `b = 2` since `(u+v)² ≤ 2(u²+v²)`.
pub fn squared_metric() -> BMetricSpec {
    BMetricSpec::real("sq", Some(1), 2.0, |x, y| (x[0] - y[0]).powi(2)).expect("valid coefficient")
}

pub fn l1_metric(dim: Option<usize>) -> BMetricSpec {
    BMetricSpec::real("l1", dim, 1.0, |x, y| x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum())
        .expect("valid coefficient")
}

/// Looks up a ternary metric by name.
pub fn builtin(name: &str) -> Result<SbMetricSpec> {
    let name = name.trim();
    if let Some(inner) = name.strip_prefix("s_from:") {
        return induce_s_from_metric(&builtin_binary(inner)?);
    }
    if let Some(inner) = name.strip_prefix("sb_from:") {
        return Ok(induce_sb_from_b(&builtin_binary(inner)?));
    }
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    match (head, arg) {
        ("ex2_1", None) => Ok(ex2_1()),
        ("ex2_2", None) => ex2_2(2.0),
        ("ex2_2", Some(a)) => ex2_2(parse_real(a)?),
        ("ex2_3", None) => Ok(ex2_3()),
        ("ex2_5", None) => Ok(ex2_5()),
        ("ex2_6", None) => ex2_6(1.0),
        ("ex2_6", Some(a)) => ex2_6(parse_real(a)?),
        ("s1", None) => s1(None),
        ("s1", Some(a)) => {
            let n: usize = a.parse().map_err(|_| invalid("n", format!("`{a}` is not a dimension")))?;
            s1(Some(n))
        }
        _ => Err(Error::UnknownMetric(name.to_string())),
    }
}

/// Looks up a binary metric by name.
pub fn builtin_binary(name: &str) -> Result<BMetricSpec> {
    let name = name.trim();
    if let Some(inner) = name.strip_prefix("b_from:") {
        return induce_b_from_sb(&builtin(inner)?, true);
    }
    match name {
        "abs" => Ok(abs_metric()),
        "sq" => Ok(squared_metric()),
        "l1" => Ok(l1_metric(None)),
        _ => Err(Error::UnknownMetric(name.to_string())),
    }
}
