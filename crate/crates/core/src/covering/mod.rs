//! ℓ¹ covering geometry on `Z^n`: the radius `r_t`, lattice centers,
//! exact Chebyshev centers and the covering-hypothesis verifier.

pub mod lp;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::complex::for_each_subset;
use crate::metric::{l1_unchecked, Lattice, LatticePoint, MetricError, VertexSet, Window};
use crate::rational::{ceil_i64, floor_i64, int, ratio, round_half_down, serde_fraction, Rational};
use lp::{lp_solve, LinearProgram, LpError, LpOutcome, Relation};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CoveringError {
    #[error("r_t needs t >= n^2 + n = {threshold} (n = {n}), got t = {t}")]
    BelowThreshold { n: usize, t: u64, threshold: u64 },
    #[error("diameter {diam} does not match t = {t}")]
    DiameterMismatch { diam: u64, t: u64 },
    #[error("the Helly check needs more than n + 1 = {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("window {window} does not contain the search box {required}")]
    WindowTooSmall { window: String, required: String },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("linear program: {0}")]
    Lp(#[from] LpError),
}

/// `r_t = tn/(n+1) + n/2`, defined for `t >= n^2 + n`.
pub fn r_t(n: usize, t: u64) -> Result<Rational, CoveringError> {
    if n == 0 {
        return Err(MetricError::ZeroDimension.into());
    }
    let threshold = (n * n + n) as u64;
    if t < threshold {
        return Err(CoveringError::BelowThreshold { n, t, threshold });
    }
    let (n, ti) = (n as i64, t as i64);
    let r = ratio(ti * n, n + 1) + ratio(n, 2);
    assert!(r <= int(ti) - ratio(n, 2), "r_t exceeds t - n/2");
    Ok(r)
}

/// The Helly radius `tn/(n+1)`.
pub fn helly_radius(n: usize, t: u64) -> Rational {
    ratio(t as i64 * n as i64, n as i64 + 1)
}

pub fn center_of_mass(s: &VertexSet<LatticePoint>) -> Vec<Rational> {
    let n = s.points()[0].dim();
    let m = s.len() as i64;
    (0..n)
        .map(|i| ratio(s.points().iter().map(|p| p.0[i]).sum::<i64>(), m))
        .collect()
}

/// ℓ¹ distance between a rational and a lattice point.
pub fn rational_l1(x: &[Rational], p: &LatticePoint) -> Rational {
    x.iter()
        .zip(&p.0)
        .map(|(a, &b)| (a - int(b)).abs())
        .sum()
}

fn round_point(x: &[Rational]) -> LatticePoint {
    LatticePoint(x.iter().map(round_half_down).collect())
}

fn max_distance(center: &LatticePoint, s: &VertexSet<LatticePoint>) -> u64 {
    s.points().iter().map(|p| l1_unchecked(&center.0, &p.0)).max().unwrap_or(0)
}

/// The center of mass rounded coordinatewise to a nearest integer.
pub fn center_of_mass_center(s: &VertexSet<LatticePoint>) -> LatticePoint {
    let x0 = center_of_mass(s);
    let y0 = round_point(&x0);
    let n = x0.len();
    assert!(rational_l1(&x0, &y0) <= ratio(n as i64, 2), "rounding moved the center by more than n/2");
    if s.len() <= n + 1 {
        if let Ok(r) = r_t(n, s.diam()) {
            assert!(int(max_distance(&y0, s) as i64) <= r, "center of mass misses the r_t ball");
        }
    }
    y0
}

/// A ball containing a point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnclosingBall {
    #[serde(with = "crate::rational::serde_fraction_vec")]
    pub center: Vec<Rational>,
    #[serde(with = "serde_fraction")]
    pub radius: Rational,
    pub covers: VertexSet<LatticePoint>,
}

impl EnclosingBall {
    /// The center, if it is a lattice point.
    pub fn lattice_center(&self) -> Option<LatticePoint> {
        self.center
            .iter()
            .map(|c| c.is_integer().then(|| floor_i64(c)))
            .collect::<Option<Vec<_>>>()
            .map(LatticePoint)
    }

    /// Exact check that every covered point is within the radius.
    pub fn is_valid(&self) -> bool {
        self.covers
            .points()
            .iter()
            .all(|p| rational_l1(&self.center, p) <= self.radius)
    }
}

/// The Chebyshev-center LP in shifted coordinates.
///
/// With `lo` the bounding-box corner and `M = max_s ‖s − lo‖₁`, the variables
/// are `x' = x − lo >= 0` and `v = M − ρ >= 0`; each sign vector `σ` and point
/// `s` contributes `σ·x' + v <= M + σ·(s − lo)`. The origin is feasible, and
/// the optimum `−v*` gives `ρ* = M − v*`.
pub fn chebyshev_lp(s: &VertexSet<LatticePoint>) -> (LinearProgram, Window, i64) {
    let pts: Vec<LatticePoint> = s.points().to_vec();
    let bbox = Window::bounding_box(&pts).expect("vertex sets are nonempty");
    let lo = bbox.lo().clone();
    let n = lo.dim();
    let shifted: Vec<Vec<i64>> = pts
        .iter()
        .map(|p| p.0.iter().zip(&lo.0).map(|(a, b)| a - b).collect())
        .collect();
    let big_m: i64 = shifted.iter().map(|q| q.iter().sum::<i64>()).max().unwrap_or(0);

    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = int(-1);
    let mut lp = LinearProgram::minimize(objective);
    for q in &shifted {
        for signs in 0u32..(1 << n) {
            let sigma: Vec<i64> = (0..n).map(|i| if signs >> i & 1 == 1 { -1 } else { 1 }).collect();
            let mut row: Vec<Rational> = sigma.iter().map(|&g| int(g)).collect();
            row.push(int(1));
            let rhs = big_m + sigma.iter().zip(q).map(|(g, c)| g * c).sum::<i64>();
            lp = lp.constrain(row, Relation::Le, int(rhs));
        }
    }
    (lp, bbox, big_m)
}

/// An exact ℓ¹ Chebyshev center and radius `ρ*` of `s`.
pub fn chebyshev_center_l1(s: &VertexSet<LatticePoint>) -> Result<EnclosingBall, CoveringError> {
    let (lp, bbox, big_m) = chebyshev_lp(s);
    let n = bbox.dim();
    let (x, value) = match lp_solve(&lp)? {
        LpOutcome::Optimal { x, value } => (x, value),
        other => unreachable!("the Chebyshev LP is feasible and bounded, got {other:?}"),
    };
    let center: Vec<Rational> = (0..n).map(|i| &x[i] + int(bbox.lo().0[i])).collect();
    let radius = int(big_m) + value;
    let diam = s.diam();
    if diam >= (n * n + n) as u64 {
        assert!(radius <= helly_radius(n, diam), "Chebyshev radius exceeds tn/(n+1)");
    }
    let ball = EnclosingBall {
        center,
        radius,
        covers: s.clone(),
    };
    debug_assert!(ball.is_valid());
    Ok(ball)
}

/// The least radius of an ℓ¹ ball around `s` whose center lies in the convex
/// hull of `s`, with such a center.
///
/// Every ball around `s` contains the hull, so any lattice point within `r`
/// of all of `s` is also within `r` of this center. The unconstrained
/// Chebyshev center has no such property: for the diagonal
/// `{(0,0),(1,1),(2,2),(3,3)}` the point `(3,0)` is an optimal center too.
pub fn hull_chebyshev_center_l1(s: &VertexSet<LatticePoint>) -> Result<EnclosingBall, CoveringError> {
    let (base, bbox, big_m) = chebyshev_lp(s);
    let n = bbox.dim();
    let k = s.len();
    let lo = bbox.lo().clone();
    // append one weight per point: x' = Σ λ_s (s − lo), Σ λ_s = 1
    let mut objective = base.objective.clone();
    objective.extend(std::iter::repeat_n(Rational::zero(), k));
    let mut lp = LinearProgram::minimize(objective);
    for c in &base.constraints {
        let mut row = c.coefficients.clone();
        row.extend(std::iter::repeat_n(Rational::zero(), k));
        lp = lp.constrain(row, c.relation, c.rhs.clone());
    }
    for i in 0..n {
        let mut row = vec![Rational::zero(); n + 1 + k];
        row[i] = int(1);
        for (j, p) in s.points().iter().enumerate() {
            row[n + 1 + j] = int(lo.0[i] - p.0[i]);
        }
        lp = lp.constrain(row, Relation::Eq, Rational::zero());
    }
    let mut row = vec![Rational::zero(); n + 1];
    row.extend(std::iter::repeat_n(int(1), k));
    lp = lp.constrain(row, Relation::Eq, int(1));

    let (x, value) = match lp_solve(&lp)? {
        LpOutcome::Optimal { x, value } => (x, value),
        other => unreachable!("the hull-constrained LP is feasible and bounded, got {other:?}"),
    };
    let center: Vec<Rational> = (0..n).map(|i| &x[i] + int(lo.0[i])).collect();
    let ball = EnclosingBall {
        center,
        radius: int(big_m) + value,
        covers: s.clone(),
    };
    debug_assert!(ball.is_valid());
    Ok(ball)
}

/// The best lattice-centered ball, scanning the bounding box inflated by the
/// diameter in lexicographic order; ties keep the least center.
pub fn min_enclosing_lattice_ball(s: &VertexSet<LatticePoint>) -> EnclosingBall {
    let bbox = Window::bounding_box(s.points()).expect("vertex sets are nonempty");
    let window = bbox.inflated(s.diam() as i64);
    let mut best: Option<(u64, LatticePoint)> = None;
    for y in window.points() {
        let limit = best.as_ref().map_or(u64::MAX, |b| b.0);
        let mut worst = 0;
        for p in s.points() {
            worst = worst.max(l1_unchecked(&y.0, &p.0));
            if worst >= limit {
                break;
            }
        }
        if worst < limit {
            best = Some((worst, y));
        }
    }
    let (radius, center) = best.expect("the window contains the bounding box");
    EnclosingBall {
        center: center.0.iter().map(|&c| int(c)).collect(),
        radius: int(radius as i64),
        covers: s.clone(),
    }
}

/// Bounding box of `s` inflated by `⌈r⌉`, which holds every center within `r` of `s`.
pub fn center_search_window(s: &VertexSet<LatticePoint>, r: &Rational) -> Window {
    Window::bounding_box(s.points())
        .expect("vertex sets are nonempty")
        .inflated(ceil_i64(r))
}

/// `Y = {y in window : max_s d(y, s) <= r_t}`.
pub fn enclosing_center_set(
    s: &VertexSet<LatticePoint>,
    t: u64,
    lattice: &Lattice,
    window: &Window,
) -> Result<Vec<LatticePoint>, CoveringError> {
    if s.diam() != t {
        return Err(CoveringError::DiameterMismatch { diam: s.diam(), t });
    }
    for p in s.points() {
        use crate::metric::MetricSpace;
        lattice.validate_point(p)?;
    }
    let r = r_t(lattice.dim(), t)?;
    let required = center_search_window(s, &r);
    if window.dim() != lattice.dim() || !window.contains_window(&required) {
        return Err(CoveringError::WindowTooSmall {
            window: format!("{window:?}"),
            required: format!("{required:?}"),
        });
    }
    let bound = floor_i64(&r) as u64;
    Ok(window
        .points()
        .filter(|y| max_distance(y, s) <= bound)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterSource {
    CenterOfMass,
    RoundedHullChebyshev,
}

/// Outcome of checking the covering hypothesis on one set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    #[serde(rename = "S")]
    pub subject: VertexSet<LatticePoint>,
    pub t: u64,
    #[serde(with = "serde_fraction")]
    pub r_t: Rational,
    pub y0: LatticePoint,
    #[serde(rename = "Y_size")]
    pub y_size: usize,
    pub proximity_ok: bool,
    pub violations: Vec<String>,
    #[serde(skip)]
    pub centers: Vec<LatticePoint>,
    #[serde(skip)]
    pub center_source: CenterSource,
}

impl CoveringReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `Y` is nonempty, that the constructed center `y0` lies in it,
/// and that every `y in Y` is within `t` of `y0`.
pub fn verify_covering_hypothesis(
    s: &VertexSet<LatticePoint>,
    lattice: &Lattice,
) -> Result<CoveringReport, CoveringError> {
    let n = lattice.dim();
    let t = s.diam();
    let r = r_t(n, t)?;
    let window = center_search_window(s, &r);
    let centers = enclosing_center_set(s, t, lattice, &window)?;

    let mut violations = Vec::new();
    let (y0, center_source) = if s.len() <= n + 1 {
        (center_of_mass_center(s), CenterSource::CenterOfMass)
    } else {
        let ball = hull_chebyshev_center_l1(s)?;
        if ball.radius > helly_radius(n, t) {
            violations.push(format!(
                "no point of the hull is within tn/(n+1) of S; best is {}",
                crate::rational::to_fraction_string(&ball.radius)
            ));
        }
        (round_point(&ball.center), CenterSource::RoundedHullChebyshev)
    };

    if int(t as i64) < &r + ratio(n as i64, 2) {
        violations.push(format!("r_t + n/2 exceeds t = {t}"));
    }
    if centers.is_empty() {
        violations.push("no lattice center within r_t of every point".into());
    }
    let y0_radius = max_distance(&y0, s);
    let y0_in_y = int(y0_radius as i64) <= r;
    if !y0_in_y {
        violations.push(format!("y0 = {:?} is at distance {y0_radius} from S, beyond r_t", y0.0));
    }
    let far: Vec<&LatticePoint> = centers
        .iter()
        .filter(|y| l1_unchecked(&y.0, &y0.0) > t)
        .collect();
    for y in &far {
        violations.push(format!(
            "center {:?} is at distance {} from y0, beyond t",
            y.0,
            l1_unchecked(&y.0, &y0.0)
        ));
    }
    Ok(CoveringReport {
        subject: s.clone(),
        t,
        r_t: r,
        y0,
        y_size: centers.len(),
        proximity_ok: y0_in_y && far.is_empty(),
        violations,
        centers,
        center_source,
    })
}

/// Exact check of both sides of the Helly step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HellyReport {
    #[serde(rename = "S")]
    pub subject: VertexSet<LatticePoint>,
    pub t: u64,
    #[serde(with = "serde_fraction")]
    pub bound: Rational,
    pub subsets_checked: usize,
    #[serde(with = "serde_fraction")]
    pub max_subset_radius: Rational,
    #[serde(with = "serde_fraction")]
    pub full_radius: Rational,
    /// every `(n+1)`-subset has `ρ* <= tn/(n+1)`
    pub hypothesis_ok: bool,
    /// the whole set has `ρ* <= tn/(n+1)`
    pub conclusion_ok: bool,
    pub failing_subsets: Vec<VertexSet<LatticePoint>>,
}

pub fn helly_crosscheck(s: &VertexSet<LatticePoint>, lattice: &Lattice) -> Result<HellyReport, CoveringError> {
    let n = lattice.dim();
    if s.len() <= n + 1 {
        return Err(CoveringError::TooFewPoints {
            needed: n + 1,
            got: s.len(),
        });
    }
    let t = s.diam();
    r_t(n, t)?;
    let bound = helly_radius(n, t);

    let idx: Vec<u32> = (0..s.len() as u32).collect();
    let mut subsets = Vec::new();
    for_each_subset(&idx, n + 1, |sub| {
        let pts = sub.iter().map(|&i| s.points()[i as usize].clone()).collect();
        subsets.push(VertexSet::new(lattice, pts).expect("subsets of a valid set are valid"));
    });
    let mut max_subset_radius = Rational::zero();
    let mut failing_subsets = Vec::new();
    for sub in &subsets {
        let rho = chebyshev_center_l1(sub)?.radius;
        if rho > bound {
            failing_subsets.push(sub.clone());
        }
        if rho > max_subset_radius {
            max_subset_radius = rho;
        }
    }
    let full_radius = chebyshev_center_l1(s)?.radius;
    debug_assert!(!full_radius.is_negative());
    Ok(HellyReport {
        subject: s.clone(),
        t,
        hypothesis_ok: failing_subsets.is_empty(),
        conclusion_ok: full_radius <= bound,
        bound,
        subsets_checked: subsets.len(),
        max_subset_radius,
        full_radius,
        failing_subsets,
    })
}
