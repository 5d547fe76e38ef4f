//! Balls, point/set distances and diameters over finite point sets.
//!
//! All set-level quantities use the two-point form `S(x, x, y)` with the
//! orientation written in the definitions; nothing is symmetrized.

use crate::error::{invalid, Error, Result};
use crate::metric::SbMetricSpec;
use crate::point::Point;

/// A finite, nonempty set of points from one carrier space.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePointSet {
    elements: Vec<Point>,
}

impl FinitePointSet {
    pub fn new(elements: Vec<Point>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Self { elements })
    }

    pub fn scalars(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Point::scalar(v)).collect())
    }

    pub fn elements(&self) -> &[Point] {
        &self.elements
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.elements.contains(p)
    }

    fn check(&self, metric: &SbMetricSpec, extra: &[&Point]) -> Result<()> {
        let mut all: Vec<&Point> = self.elements.iter().collect();
        all.extend_from_slice(extra);
        metric.carrier().check(&all)
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(invalid("r", format!("radius must be positive, got {r}")));
    }
    Ok(())
}

/// `S(y, y, center) < r`.
pub fn in_open_ball(metric: &SbMetricSpec, center: &Point, r: f64, y: &Point) -> Result<bool> {
    check_radius(r)?;
    Ok(metric.eval(y, y, center)? < r)
}

/// `S(y, y, center) ≤ r`, up to the metric's value tolerance.
pub fn in_closed_ball(metric: &SbMetricSpec, center: &Point, r: f64, y: &Point) -> Result<bool> {
    check_radius(r)?;
    Ok(metric.eval(y, y, center)? <= r + metric.value_tol())
}

/// `inf { S(x, x, y) : y ∈ A }`.
pub fn point_set_distance(metric: &SbMetricSpec, x: &Point, set: &FinitePointSet) -> Result<f64> {
    set.check(metric, &[x])?;
    Ok(set.elements.iter().map(|y| metric.pair(x, y)).fold(f64::INFINITY, f64::min))
}

/// `inf { S(x, x, y) : x ∈ A, y ∈ B }`.
pub fn set_set_distance(metric: &SbMetricSpec, a: &FinitePointSet, b: &FinitePointSet) -> Result<f64> {
    let b_refs: Vec<&Point> = b.elements.iter().collect();
    a.check(metric, &b_refs)?;
    Ok(a.elements
        .iter()
        .flat_map(|x| b.elements.iter().map(move |y| (x, y)))
        .map(|(x, y)| metric.pair(x, y))
        .fold(f64::INFINITY, f64::min))
}

/// `sup { S(x, x, y) : x, y ∈ A }` over ordered pairs.
pub fn diameter(metric: &SbMetricSpec, set: &FinitePointSet) -> Result<f64> {
    set.check(metric, &[])?;
    let e = &set.elements;
    Ok(e.iter().flat_map(|x| e.iter().map(move |y| (x, y))).map(|(x, y)| metric.pair(x, y)).fold(0.0, f64::max))
}

/// Whether every ordered pair satisfies `S(x, x, y) < r`.
pub fn is_bounded(metric: &SbMetricSpec, set: &FinitePointSet, r: f64) -> Result<bool> {
    check_radius(r)?;
    Ok(diameter(metric, set)? < r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{ex2_1, ex2_3, s1};
    use proptest::prelude::*;

    fn p(x: f64) -> Point {
        Point::scalar(x)
    }

    #[test]
    fn ball_membership_ex2_1() {
        let m = ex2_1();
        assert!(in_open_ball(&m, &p(0.0), 2.0, &p(2.8)).unwrap());
        assert!(!in_open_ball(&m, &p(0.0), 2.0, &p(2.9)).unwrap());
        assert!(in_open_ball(&m, &p(5.0), 0.001, &p(5.0)).unwrap());
        let edge = 2.0 * 2f64.sqrt();
        assert!(!in_open_ball(&m, &p(0.0), 2.0, &p(edge)).unwrap());
        assert!(in_closed_ball(&m, &p(0.0), 2.0, &p(edge)).unwrap());
        assert!(in_closed_ball(&m, &p(0.0), 2.0, &p(-edge)).unwrap());
        assert!(in_open_ball(&m, &p(0.0), 0.0, &p(1.0)).is_err());
        assert!(in_closed_ball(&m, &p(0.0), -1.0, &p(1.0)).is_err());
    }

    #[test]
    fn distances() {
        let m = ex2_1();
        let a = FinitePointSet::scalars(&[2.0, 3.0]).unwrap();
        assert_eq!(point_set_distance(&m, &p(0.0), &a).unwrap(), 1.0);
        assert_eq!(point_set_distance(&m, &p(3.0), &a).unwrap(), 0.0);
        let zero = FinitePointSet::scalars(&[0.0]).unwrap();
        assert_eq!(set_set_distance(&m, &zero, &a).unwrap(), 1.0);

        let s = s1(Some(1)).unwrap();
        let b = FinitePointSet::scalars(&[1.0, 4.0]).unwrap();
        assert_eq!(point_set_distance(&s, &p(5.0), &b).unwrap(), 2.0);
        let a = FinitePointSet::scalars(&[0.0, 10.0]).unwrap();
        let b = FinitePointSet::scalars(&[4.0]).unwrap();
        assert_eq!(set_set_distance(&s, &a, &b).unwrap(), 8.0);
        let overlap = FinitePointSet::scalars(&[4.0, 9.0]).unwrap();
        assert_eq!(set_set_distance(&s, &a, &overlap).unwrap(), 2.0);
        assert_eq!(set_set_distance(&s, &b, &overlap).unwrap(), 0.0);
    }

    #[test]
    fn diameter_and_boundedness() {
        let m = ex2_1();
        let a = FinitePointSet::scalars(&[0.0, 1.0, 2.0]).unwrap();
        assert_eq!(diameter(&m, &a).unwrap(), 1.0);
        assert!(!is_bounded(&m, &a, 1.0).unwrap());
        assert!(is_bounded(&m, &a, 1.5).unwrap());
        assert!(is_bounded(&m, &a, 2.0).unwrap());
        assert!(is_bounded(&m, &a, 0.0).is_err());
        assert_eq!(diameter(&m, &FinitePointSet::scalars(&[7.0]).unwrap()).unwrap(), 0.0);
        let ab = FinitePointSet::scalars(&[0.0, 1.0]).unwrap();
        assert_eq!(diameter(&ex2_3(), &ab).unwrap(), 4.0);
    }

    #[test]
    fn empty_and_mismatched_sets() {
        assert_eq!(FinitePointSet::new(vec![]), Err(Error::EmptySet));
        let v = FinitePointSet::new(vec![Point::new(vec![1.0, 2.0]).unwrap()]).unwrap();
        assert!(diameter(&ex2_1(), &v).is_err());
        let one = FinitePointSet::scalars(&[1.0]).unwrap();
        assert!(point_set_distance(&ex2_1(), &Point::label(0), &one).is_err());
    }

    fn set_strategy() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-20.0f64..20.0, 1..8)
    }

    proptest! {
        #[test]
        fn monotone_under_inclusion(a in set_strategy(), extra in set_strategy(), x in -20.0f64..20.0) {
            let m = ex2_1();
            let small = FinitePointSet::scalars(&a).unwrap();
            let mut bigger = a.clone();
            bigger.extend(extra);
            let big = FinitePointSet::scalars(&bigger).unwrap();
            prop_assert!(diameter(&m, &small).unwrap() <= diameter(&m, &big).unwrap());
            prop_assert!(point_set_distance(&m, &p(x), &big).unwrap() <= point_set_distance(&m, &p(x), &small).unwrap());
        }

        #[test]
        fn set_distance_is_a_lower_bound(a in set_strategy(), b in set_strategy()) {
            let m = ex2_3();
            let sa = FinitePointSet::scalars(&a).unwrap();
            let sb = FinitePointSet::scalars(&b).unwrap();
            let d = set_set_distance(&m, &sa, &sb).unwrap();
            for x in &a {
                for y in &b {
                    prop_assert!(d <= m.eval(&p(*x), &p(*x), &p(*y)).unwrap());
                }
            }
        }

        #[test]
        fn symmetric_diameter_matches_unordered(a in set_strategy()) {
            let m = ex2_1();
            let set = FinitePointSet::scalars(&a).unwrap();
            let mut unordered: f64 = 0.0;
            for i in 0..a.len() {
                for j in i..a.len() {
                    unordered = unordered.max(m.eval(&p(a[i]), &p(a[i]), &p(a[j])).unwrap());
                }
            }
            prop_assert_eq!(diameter(&m, &set).unwrap(), unordered);
        }

        #[test]
        fn ball_monotone_in_radius(r1 in 0.01f64..10.0, dr in 0.0f64..10.0, c in -5.0f64..5.0, y in -10.0f64..10.0) {
            let m = ex2_1();
            if in_open_ball(&m, &p(c), r1, &p(y)).unwrap() {
                prop_assert!(in_open_ball(&m, &p(c), r1 + dr, &p(y)).unwrap());
            }
        }
    }
}
