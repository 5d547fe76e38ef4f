//! Sampled checks of the contraction inequalities for a concrete map.

use crate::axioms::ArgMax;
use crate::error::{invalid, Error, Result};
use crate::metric::SbMetricSpec;
use crate::point::Point;
use crate::sampler::{require_samples, Domain, SamplerConfig, Sweep};

use super::map::SelfMap;

#[derive(Debug, Clone, PartialEq)]
pub struct ContractionEstimate {
    /// Largest sampled `S(Tx,Tx,Ty) / S(x,x,y)`; no admissible `h` is smaller.
    pub h: f64,
    pub witness: (Point, Point),
    pub pairs: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedCheck {
    pub holds: bool,
    /// Smallest `rhs − lhs` seen; negative when the inequality fails.
    pub worst_slack: f64,
    pub witness: (Point, Point),
    pub pairs: u64,
}

fn images(metric: &SbMetricSpec, map: &SelfMap, x: &Point, y: &Point) -> Option<(Point, Point)> {
    let (tx, ty) = (map.apply(x), map.apply(y));
    metric.carrier().check(&[&tx, &ty]).ok()?;
    Some((tx, ty))
}

fn pair_of(tuple: Vec<Point>) -> (Point, Point) {
    let mut it = tuple.into_iter();
    let x = it.next().expect("pair");
    let y = it.next().expect("pair");
    (x, y)
}

/// Sup of `S(Tx,Tx,Ty) / S(x,x,y)` over sampled pairs with a positive
/// denominator. A map that leaves the carrier or produces non-finite values
/// is reported as [`Error::NonFinite`] with the offending pair in the sweep.
pub fn estimate_contraction_h(
    metric: &SbMetricSpec,
    map: &SelfMap,
    cfg: &SamplerConfig,
) -> Result<ContractionEstimate> {
    let domain = Domain::new(metric.carrier(), cfg)?;
    let sweep = Sweep::new(&domain, cfg, 2, metric.reference_tuples())?;
    let best = sweep.run(ArgMax::default, |acc, smp| {
        let (x, y) = (smp.points[0], smp.points[1]);
        let den = metric.pair(x, y);
        if den > 0.0 {
            let ratio = match images(metric, map, x, y) {
                Some((tx, ty)) => metric.pair(&tx, &ty) / den,
                None => f64::NAN,
            };
            acc.offer(ratio, smp.index, smp.points);
        }
    });
    require_samples(best.count, "S(x,x,y) > 0")?;
    let (h, _, witness) = best.best.expect("count > 0");
    if !h.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(ContractionEstimate { h, witness: pair_of(witness), pairs: best.count })
}

/// Checks `S(Tx,Tx,Ty) ≤ α₁·S(x,x,y) + α₂·max{S(Tx,Tx,x), S(Tx,Tx,y),
/// S(Ty,Ty,y), S(Ty,Ty,x)}` on every sampled pair, up to `cfg.slack`.
pub fn check_generalized(
    metric: &SbMetricSpec,
    map: &SelfMap,
    alpha1: f64,
    alpha2: f64,
    cfg: &SamplerConfig,
) -> Result<GeneralizedCheck> {
    for (name, v) in [("alpha1", alpha1), ("alpha2", alpha2)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(invalid(name, format!("must be finite and >= 0, got {v}")));
        }
    }
    let domain = Domain::new(metric.carrier(), cfg)?;
    let sweep = Sweep::new(&domain, cfg, 2, metric.reference_tuples())?;
    // Maximizing lhs − rhs finds the pair with the least slack.
    let worst = sweep.run(ArgMax::default, |acc, smp| {
        let (x, y) = (smp.points[0], smp.points[1]);
        let excess = match images(metric, map, x, y) {
            Some((tx, ty)) => {
                let lhs = metric.pair(&tx, &ty);
                let orbit =
                    metric.pair(&tx, x).max(metric.pair(&tx, y)).max(metric.pair(&ty, y)).max(metric.pair(&ty, x));
                let rhs = alpha1 * metric.pair(x, y) + alpha2 * orbit;
                lhs - rhs
            }
            None => f64::NAN,
        };
        acc.offer(excess, smp.index, smp.points);
    });
    require_samples(worst.count, "a sampled pair")?;
    let (excess, _, witness) = worst.best.expect("count > 0");
    Ok(GeneralizedCheck {
        holds: excess <= cfg.slack,
        worst_slack: -excess,
        witness: pair_of(witness),
        pairs: worst.count,
    })
}
