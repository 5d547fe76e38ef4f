//! Deterministic grid + seeded random sampling of point tuples.
//!
//! Every sweep is cut into work items (pinned probes, grid slices, random
//! blocks). Each random block draws from its own ChaCha stream selected by
//! the block number, so the tuples do not depend on how items are scheduled.
//! Partial results are merged in item order, which makes parallel and
//! sequential runs produce identical output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::point::{Carrier, Point};

const GRID_CHUNK: u64 = 8192;
const RANDOM_BLOCK: u64 = 1024;

/// Sampling configuration shared by every counterexample search.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Per-coordinate range for the grid and for uniform random draws.
    pub range: (f64, f64),
    /// Grid step; `None` disables the grid.
    pub grid_step: Option<f64>,
    pub random_count: usize,
    /// Tolerance added to the right side of each inequality.
    pub slack: f64,
    /// Cap on reported counterexamples per clause (pinned probes excluded).
    pub max_counterexamples: usize,
    /// Dimension used when the carrier does not fix one.
    pub dim: usize,
    /// Refuse grids that would enumerate more tuples than this.
    pub max_grid_tuples: u64,
    /// Spread work over the rayon pool when the `parallel` feature is on.
    pub parallel: bool,
    /// Explicit tuples always evaluated and always reported on failure.
    pub probes: Vec<Vec<Point>>,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            range: (-10.0, 10.0),
            grid_step: Some(1.0),
            random_count: 10_000,
            slack: 1e-9,
            max_counterexamples: 10,
            dim: 1,
            max_grid_tuples: 50_000_000,
            parallel: true,
            probes: Vec::new(),
        }
    }
}

impl SamplerConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_range(mut self, lo: f64, hi: f64) -> Self {
        self.range = (lo, hi);
        self
    }

    pub fn with_grid_step(mut self, step: Option<f64>) -> Self {
        self.grid_step = step;
        self
    }

    pub fn with_random_count(mut self, n: usize) -> Self {
        self.random_count = n;
        self
    }

    pub fn with_dim(mut self, dim: usize) -> Self {
        self.dim = dim;
        self
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn with_probe(mut self, tuple: Vec<Point>) -> Self {
        self.probes.push(tuple);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.range;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(invalid("range", format!("need finite lo <= hi, got [{lo}, {hi}]")));
        }
        if let Some(step) = self.grid_step {
            if !(step.is_finite() && step > 0.0) {
                return Err(invalid("step", format!("grid step must be positive, got {step}")));
            }
        }
        if !(self.slack.is_finite() && self.slack >= 0.0) {
            return Err(invalid("slack", "slack must be finite and >= 0"));
        }
        if self.dim == 0 {
            return Err(invalid("dim", "dimension must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
enum Draw {
    Real { dim: usize, lo: f64, hi: f64 },
    Label { size: usize },
}

/// The finite grid and random-draw rule for one carrier.
#[derive(Debug, Clone)]
pub(crate) struct Domain {
    grid: Vec<Point>,
    draw: Draw,
    carrier: Carrier,
}

impl Domain {
    pub(crate) fn new(carrier: Carrier, cfg: &SamplerConfig) -> Result<Self> {
        cfg.validate()?;
        match carrier {
            Carrier::Real { dim } => {
                let dim = dim.unwrap_or(cfg.dim);
                let (lo, hi) = cfg.range;
                let grid = match cfg.grid_step {
                    Some(step) => {
                        let count = ((hi - lo) / step + 1e-9).floor() as u64 + 1;
                        let total = (count as f64).powi(dim as i32);
                        if total > cfg.max_grid_tuples as f64 {
                            return Err(invalid(
                                "grid",
                                format!("{total} grid points in dimension {dim}; disable the grid or coarsen it"),
                            ));
                        }
                        let axis: Vec<f64> = (0..count).map(|i| lo + i as f64 * step).collect();
                        cartesian(&axis, dim)
                    }
                    None => Vec::new(),
                };
                Ok(Self { grid, draw: Draw::Real { dim, lo, hi }, carrier: Carrier::Real { dim: Some(dim) } })
            }
            Carrier::Finite { size } => {
                Ok(Self { grid: (0..size).map(Point::Label).collect(), draw: Draw::Label { size }, carrier })
            }
        }
    }

    fn random_point(&self, rng: &mut ChaCha8Rng) -> Point {
        match self.draw {
            Draw::Real { dim, lo, hi } => {
                Point::Real((0..dim).map(|_| if lo < hi { rng.random_range(lo..hi) } else { lo }).collect())
            }
            Draw::Label { size } => Point::Label(rng.random_range(0..size)),
        }
    }
}

fn cartesian(axis: &[f64], dim: usize) -> Vec<Point> {
    let mut out: Vec<Vec<f64>> = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(Point::Real).collect()
}

/// Results that can be combined; `later` always covers higher sample
/// indices than `self`.
pub(crate) trait Merge {
    fn merge(&mut self, later: Self);
}

/// One sampled tuple.
pub(crate) struct Sample<'a> {
    pub index: u64,
    pub points: &'a [&'a Point],
    pub pinned: bool,
}

#[derive(Debug, Clone, Copy)]
enum Work {
    Pinned,
    Grid { start: u64, end: u64 },
    Random { block: u64 },
}

/// A sweep over all tuples of one arity.
pub(crate) struct Sweep<'a> {
    domain: &'a Domain,
    cfg: &'a SamplerConfig,
    arity: usize,
    pinned: Vec<Vec<Point>>,
    grid_tuples: u64,
}

impl<'a> Sweep<'a> {
    /// `extra` tuples of the right arity join `cfg.probes` as pinned samples.
    pub(crate) fn new(domain: &'a Domain, cfg: &'a SamplerConfig, arity: usize, extra: &[Vec<Point>]) -> Result<Self> {
        let mut pinned = Vec::new();
        for t in cfg.probes.iter().chain(extra) {
            if t.len() != arity {
                continue;
            }
            let refs: Vec<&Point> = t.iter().collect();
            domain.carrier.check(&refs)?;
            if !pinned.contains(t) {
                pinned.push(t.clone());
            }
        }
        let g = domain.grid.len() as f64;
        let grid_tuples = g.powi(arity as i32);
        if grid_tuples > cfg.max_grid_tuples as f64 {
            return Err(invalid(
                "grid",
                format!("{grid_tuples} grid tuples of arity {arity} exceed the limit {}", cfg.max_grid_tuples),
            ));
        }
        Ok(Self { domain, cfg, arity, pinned, grid_tuples: grid_tuples as u64 })
    }

    pub(crate) fn total(&self) -> u64 {
        self.pinned.len() as u64 + self.grid_tuples + self.cfg.random_count as u64
    }

    fn work_items(&self) -> Vec<Work> {
        let mut items = vec![Work::Pinned];
        let mut start = 0;
        while start < self.grid_tuples {
            let end = (start + GRID_CHUNK).min(self.grid_tuples);
            items.push(Work::Grid { start, end });
            start = end;
        }
        let blocks = (self.cfg.random_count as u64).div_ceil(RANDOM_BLOCK);
        items.extend((0..blocks).map(|block| Work::Random { block }));
        items
    }

    fn process<A, F>(&self, item: Work, init: &(impl Fn() -> A + Sync), visit: &F) -> A
    where
        F: Fn(&mut A, Sample<'_>) + Sync,
    {
        let mut acc = init();
        let pinned_len = self.pinned.len() as u64;
        match item {
            Work::Pinned => {
                for (i, t) in self.pinned.iter().enumerate() {
                    let refs: Vec<&Point> = t.iter().collect();
                    visit(&mut acc, Sample { index: i as u64, points: &refs, pinned: true });
                }
            }
            Work::Grid { start, end } => {
                let g = self.domain.grid.len() as u64;
                let mut refs: Vec<&Point> = Vec::with_capacity(self.arity);
                for i in start..end {
                    refs.clear();
                    let mut rem = i;
                    let mut div = g.pow(self.arity as u32 - 1);
                    for _ in 0..self.arity {
                        refs.push(&self.domain.grid[(rem / div) as usize]);
                        rem %= div;
                        div = (div / g).max(1);
                    }
                    visit(&mut acc, Sample { index: pinned_len + i, points: &refs, pinned: false });
                }
            }
            Work::Random { block } => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
                rng.set_stream(block);
                let first = block * RANDOM_BLOCK;
                let last = (first + RANDOM_BLOCK).min(self.cfg.random_count as u64);
                for j in first..last {
                    let owned: Vec<Point> = (0..self.arity).map(|_| self.domain.random_point(&mut rng)).collect();
                    let refs: Vec<&Point> = owned.iter().collect();
                    visit(&mut acc, Sample { index: pinned_len + self.grid_tuples + j, points: &refs, pinned: false });
                }
            }
        }
        acc
    }

    /// Visits every tuple and merges the per-item accumulators in order.
    pub(crate) fn run<A, I, F>(&self, init: I, visit: F) -> A
    where
        A: Merge + Send,
        I: Fn() -> A + Sync,
        F: Fn(&mut A, Sample<'_>) + Sync,
    {
        let items = self.work_items();
        let parts: Vec<A> = run_items(&items, self.cfg.parallel, |w| self.process(*w, &init, &visit));
        let mut acc = init();
        for part in parts {
            acc.merge(part);
        }
        acc
    }
}

/// Maps `f` over `items`, on the rayon pool when enabled, keeping order.
pub(crate) fn run_items<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(&f).collect();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = parallel;
    items.iter().map(f).collect()
}

/// Ensures a sweep produced at least one usable sample.
pub(crate) fn require_samples(count: u64, what: &str) -> Result<()> {
    if count == 0 {
        return Err(Error::Degenerate(format!("no sampled tuple has {what}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Default)]
    struct Collect(Vec<(u64, Vec<Point>, bool)>);

    impl Merge for Collect {
        fn merge(&mut self, later: Self) {
            self.0.extend(later.0);
        }
    }

    fn collect(cfg: &SamplerConfig, arity: usize) -> Vec<(u64, Vec<Point>, bool)> {
        let d = Domain::new(Carrier::real(1), cfg).unwrap();
        let s = Sweep::new(&d, cfg, arity, &[]).unwrap();
        s.run(Collect::default, |acc, smp| {
            acc.0.push((smp.index, smp.points.iter().map(|p| (*p).clone()).collect(), smp.pinned))
        })
        .0
    }

    #[test]
    fn grid_is_first_coordinate_major() {
        let cfg = SamplerConfig::default().with_range(0.0, 2.0).with_random_count(0);
        let all = collect(&cfg, 2);
        assert_eq!(all.len(), 9);
        assert_eq!(all[1].1, vec![Point::scalar(0.0), Point::scalar(1.0)]);
        assert_eq!(all[3].1, vec![Point::scalar(1.0), Point::scalar(0.0)]);
        assert!(all.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn parallel_equals_sequential_and_seed_matters() {
        let cfg = SamplerConfig::default().with_random_count(3000).with_seed(7);
        let par = collect(&cfg.clone().with_parallel(true), 2);
        let seq = collect(&cfg.clone().with_parallel(false), 2);
        assert_eq!(par, seq);
        let other = collect(&cfg.with_seed(8), 2);
        assert_ne!(par, other);
        assert_eq!(par.len(), 441 + 3000);
    }

    #[test]
    fn random_points_stay_in_range() {
        let cfg = SamplerConfig::default().with_grid_step(None).with_range(-5.0, 55.0).with_random_count(2000);
        for (_, t, _) in collect(&cfg, 2) {
            for p in t {
                let x = p.coords().unwrap()[0];
                assert!((-5.0..55.0).contains(&x));
            }
        }
    }

    #[test]
    fn probes_are_pinned_and_checked() {
        let cfg = SamplerConfig::default()
            .with_random_count(0)
            .with_range(0.0, 1.0)
            .with_probe(vec![Point::scalar(4.0), Point::scalar(6.0)]);
        let all = collect(&cfg, 2);
        assert!(all[0].2);
        assert_eq!(all[0].1[1], Point::scalar(6.0));
        let bad = SamplerConfig::default().with_probe(vec![Point::label(0), Point::label(1)]);
        let d = Domain::new(Carrier::real(1), &bad).unwrap();
        assert!(Sweep::new(&d, &bad, 2, &[]).is_err());
    }

    #[test]
    fn rejects_bad_config_and_huge_grids() {
        assert!(SamplerConfig::default().with_grid_step(Some(0.0)).validate().is_err());
        assert!(SamplerConfig::default().with_range(1.0, 0.0).validate().is_err());
        let cfg = SamplerConfig::default();
        assert!(Domain::new(Carrier::real(10), &cfg).is_err());
        let d = Domain::new(Carrier::real(2), &cfg).unwrap();
        assert_eq!(d.grid.len(), 441);
        assert!(Sweep::new(&d, &cfg, 4, &[]).is_err());
    }

    #[test]
    fn finite_domain_enumerates_labels() {
        let cfg = SamplerConfig::default().with_random_count(5);
        let d = Domain::new(Carrier::Finite { size: 3 }, &cfg).unwrap();
        assert_eq!(d.grid.len(), 3);
    }
}
