//! Finite integer metric spaces: the ℓ¹ lattice `Z^n` and distance-matrix spaces.

use std::fmt::Debug;
use std::hash::Hash;
use std::io::Read;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{floor_i64, Rational};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("lattice dimension must be at least 1")]
    ZeroDimension,
    #[error("empty point set")]
    EmptySet,
    #[error("point index {index} out of range for a space with {size} points")]
    PointOutOfRange { index: usize, size: usize },
    #[error("n_t bound (t+1)^n overflows u64 for t = {t}, n = {n}")]
    BoundExceeded { t: u64, n: usize },
    #[error("window corner lo exceeds hi in coordinate {axis}")]
    InvalidWindow { axis: usize },
    #[error("distance matrix violates {0}")]
    Axiom(#[from] AxiomViolation),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("search window too small: {point} lies outside it")]
    WindowTooSmall { point: String },
}

/// A failed metric axiom, naming the offending indices.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    #[error("squareness: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("identity: dist({i},{i}) = {value} is not 0")]
    NonzeroDiagonal { i: usize, value: u64 },
    #[error("definiteness: dist({i},{j}) = 0 for distinct points")]
    ZeroOffDiagonal { i: usize, j: usize },
    #[error("symmetry: dist({i},{j}) = {forward} but dist({j},{i}) = {backward}")]
    Asymmetric { i: usize, j: usize, forward: u64, backward: u64 },
    #[error("triangle inequality: dist({i},{k}) > dist({i},{j}) + dist({j},{k})")]
    Triangle { i: usize, j: usize, k: usize },
    #[error("nonemptiness: the matrix has no rows")]
    Empty,
}

/// A point of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn origin(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(v: [i64; N]) -> Self {
        LatticePoint(v.to_vec())
    }
}

#[inline]
pub(crate) fn l1_unchecked(p: &[i64], q: &[i64]) -> u64 {
    p.iter().zip(q).map(|(a, b)| a.abs_diff(*b)).sum()
}

/// ℓ¹ (word-metric) distance between two lattice points.
pub fn l1_distance(p: &LatticePoint, q: &LatticePoint) -> Result<u64, MetricError> {
    if p.dim() != q.dim() {
        return Err(MetricError::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    Ok(l1_unchecked(&p.0, &q.0))
}

/// An axis-aligned box of lattice points, bounds inclusive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    lo: LatticePoint,
    hi: LatticePoint,
}

impl Window {
    pub fn new(lo: LatticePoint, hi: LatticePoint) -> Result<Self, MetricError> {
        if lo.dim() != hi.dim() {
            return Err(MetricError::DimensionMismatch {
                left: lo.dim(),
                right: hi.dim(),
            });
        }
        if lo.dim() == 0 {
            return Err(MetricError::ZeroDimension);
        }
        if let Some(axis) = (0..lo.dim()).find(|&i| lo.0[i] > hi.0[i]) {
            return Err(MetricError::InvalidWindow { axis });
        }
        Ok(Window { lo, hi })
    }

    /// The cube `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Result<Self, MetricError> {
        Window::new(LatticePoint(vec![lo; dim]), LatticePoint(vec![hi; dim]))
    }

    /// Smallest window containing every point.
    pub fn bounding_box(points: &[LatticePoint]) -> Result<Self, MetricError> {
        let first = points.first().ok_or(MetricError::EmptySet)?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for p in points {
            if p.dim() != first.dim() {
                return Err(MetricError::DimensionMismatch {
                    left: first.dim(),
                    right: p.dim(),
                });
            }
            for i in 0..p.dim() {
                lo.0[i] = lo.0[i].min(p.0[i]);
                hi.0[i] = hi.0[i].max(p.0[i]);
            }
        }
        Window::new(lo, hi)
    }

    /// The window grown by `by` in every direction.
    pub fn inflated(&self, by: i64) -> Window {
        Window {
            lo: LatticePoint(self.lo.0.iter().map(|c| c - by).collect()),
            hi: LatticePoint(self.hi.0.iter().map(|c| c + by).collect()),
        }
    }

    pub fn lo(&self) -> &LatticePoint {
        &self.lo
    }

    pub fn hi(&self) -> &LatticePoint {
        &self.hi
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        p.dim() == self.dim()
            && (0..self.dim()).all(|i| self.lo.0[i] <= p.0[i] && p.0[i] <= self.hi.0[i])
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        self.contains(&other.lo) && self.contains(&other.hi)
    }

    /// Number of lattice points, `∏ (hi_i - lo_i + 1)`; `None` on overflow.
    pub fn point_count(&self) -> Option<u64> {
        (0..self.dim()).try_fold(1u64, |acc, i| {
            let side = u64::try_from(self.hi.0[i] - self.lo.0[i] + 1).ok()?;
            acc.checked_mul(side)
        })
    }

    /// All lattice points in lexicographic order.
    pub fn points(&self) -> WindowPoints<'_> {
        WindowPoints {
            window: self,
            next: Some(self.lo.clone()),
        }
    }
}

pub struct WindowPoints<'a> {
    window: &'a Window,
    next: Option<LatticePoint>,
}

impl Iterator for WindowPoints<'_> {
    type Item = LatticePoint;

    fn next(&mut self) -> Option<LatticePoint> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut axis = succ.dim();
        loop {
            if axis == 0 {
                break;
            }
            axis -= 1;
            if succ.0[axis] < self.window.hi.0[axis] {
                succ.0[axis] += 1;
                self.next = Some(succ);
                break;
            }
            succ.0[axis] = self.window.lo.0[axis];
        }
        Some(current)
    }
}

/// All window points within `radius` of `center`, compared exactly.
pub fn ball_points(
    center: &LatticePoint,
    radius: &Rational,
    window: &Window,
) -> Result<Vec<LatticePoint>, MetricError> {
    if center.dim() != window.dim() {
        return Err(MetricError::DimensionMismatch {
            left: center.dim(),
            right: window.dim(),
        });
    }
    if radius < &Rational::from_integer(0.into()) {
        return Ok(Vec::new());
    }
    // distances are integers, so d <= r iff d <= floor(r)
    let r = floor_i64(radius) as u64;
    Ok(window
        .points()
        .filter(|q| l1_unchecked(&center.0, &q.0) <= r)
        .collect())
}

/// A metric space with integer distances satisfying the finiteness property
/// `|S| <= n_t` for every `S` of diameter `t`.
pub trait MetricSpace: Sync {
    type Point: Clone + Ord + Hash + Debug + Send + Sync + Serialize;
    /// A finite search region (windows on the lattice).
    type Region: Debug + Sync;

    /// Distance between two points already validated against this space.
    fn distance(&self, p: &Self::Point, q: &Self::Point) -> u64;

    fn validate_point(&self, p: &Self::Point) -> Result<(), MetricError>;

    /// A bound `n_t` with `|S| <= n_t` whenever `diam(S) = t`.
    fn n_bound(&self, t: u64) -> Result<u64, MetricError>;

    /// Every point within `radius` of all anchors. Finite in both kinds of space.
    fn common_ball(&self, anchors: &[Self::Point], radius: u64) -> Vec<Self::Point>;

    fn region_contains(&self, region: &Self::Region, p: &Self::Point) -> bool;

    /// [`common_ball`](Self::common_ball), checked against an optional region:
    /// a region that misses part of the ball is an error, never a silent cut.
    fn common_ball_within(
        &self,
        anchors: &[Self::Point],
        radius: u64,
        region: Option<&Self::Region>,
    ) -> Result<Vec<Self::Point>, MetricError> {
        let ball = self.common_ball(anchors, radius);
        if let Some(region) = region {
            if let Some(p) = ball.iter().find(|p| !self.region_contains(region, p)) {
                return Err(MetricError::WindowTooSmall {
                    point: format!("{p:?}"),
                });
            }
        }
        Ok(ball)
    }

    /// The ball radius `r_t` used by the covering argument, when one is known
    /// for this space and scale.
    fn covering_radius(&self, _t: u64) -> Option<Rational> {
        None
    }
}

/// The lattice `Z^n` with its ℓ¹ metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lattice {
    dim: usize,
}

impl Lattice {
    pub fn new(dim: usize) -> Result<Self, MetricError> {
        if dim == 0 {
            return Err(MetricError::ZeroDimension);
        }
        Ok(Lattice { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl MetricSpace for Lattice {
    type Point = LatticePoint;
    type Region = Window;

    fn distance(&self, p: &LatticePoint, q: &LatticePoint) -> u64 {
        debug_assert_eq!(p.dim(), q.dim());
        l1_unchecked(&p.0, &q.0)
    }

    fn validate_point(&self, p: &LatticePoint) -> Result<(), MetricError> {
        if p.dim() != self.dim {
            return Err(MetricError::DimensionMismatch {
                left: self.dim,
                right: p.dim(),
            });
        }
        Ok(())
    }

    /// `(t+1)^n`: an ℓ¹-diameter-`t` set spreads at most `t` along each axis.
    fn n_bound(&self, t: u64) -> Result<u64, MetricError> {
        let overflow = MetricError::BoundExceeded { t, n: self.dim };
        let base = t.checked_add(1).ok_or(overflow.clone())?;
        let exp = u32::try_from(self.dim).map_err(|_| overflow.clone())?;
        base.checked_pow(exp).ok_or(overflow)
    }

    fn common_ball(&self, anchors: &[LatticePoint], radius: u64) -> Vec<LatticePoint> {
        let Some(first) = anchors.first() else {
            return Vec::new();
        };
        // the intersection lies inside the ball around any single anchor
        let bbox = Window {
            lo: first.clone(),
            hi: first.clone(),
        }
        .inflated(radius as i64);
        bbox.points()
            .filter(|q| anchors.iter().all(|a| l1_unchecked(&a.0, &q.0) <= radius))
            .collect()
    }

    fn region_contains(&self, region: &Window, p: &LatticePoint) -> bool {
        region.contains(p)
    }

    fn covering_radius(&self, t: u64) -> Option<Rational> {
        crate::covering::r_t(self.dim, t).ok()
    }
}

/// A finite metric space given by an integer distance matrix; points are
/// the indices `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteMetricSpace {
    dist: Vec<Vec<u64>>,
}

impl FiniteMetricSpace {
    /// Validates every metric axiom.
    pub fn new(dist: Vec<Vec<u64>>) -> Result<Self, MetricError> {
        let m = dist.len();
        if m == 0 {
            return Err(AxiomViolation::Empty.into());
        }
        for (row, r) in dist.iter().enumerate() {
            if r.len() != m {
                return Err(AxiomViolation::NotSquare {
                    row,
                    len: r.len(),
                    expected: m,
                }
                .into());
            }
        }
        for i in 0..m {
            if dist[i][i] != 0 {
                return Err(AxiomViolation::NonzeroDiagonal {
                    i,
                    value: dist[i][i],
                }
                .into());
            }
        }
        for i in 0..m {
            for j in (i + 1)..m {
                if dist[i][j] != dist[j][i] {
                    return Err(AxiomViolation::Asymmetric {
                        i,
                        j,
                        forward: dist[i][j],
                        backward: dist[j][i],
                    }
                    .into());
                }
                if dist[i][j] == 0 {
                    return Err(AxiomViolation::ZeroOffDiagonal { i, j }.into());
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if dist[i][k] > dist[i][j] + dist[j][k] {
                        return Err(AxiomViolation::Triangle { i, j, k }.into());
                    }
                }
            }
        }
        Ok(FiniteMetricSpace { dist })
    }

    /// Parses a headerless CSV of nonnegative integers.
    pub fn from_csv_reader(reader: impl Read) -> Result<Self, MetricError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut dist = Vec::new();
        for (row, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| MetricError::Parse(e.to_string()))?;
            let parsed = record
                .iter()
                .enumerate()
                .map(|(col, field)| {
                    field.parse::<u64>().map_err(|_| {
                        MetricError::Parse(format!(
                            "entry ({row},{col}) = {field:?} is not a nonnegative integer"
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            dist.push(parsed);
        }
        Self::new(dist)
    }

    pub fn from_csv_str(s: &str) -> Result<Self, MetricError> {
        Self::from_csv_reader(s.as_bytes())
    }

    /// The subspace of `Z^n` spanned by `points`, with induced ℓ¹ distances.
    pub fn from_lattice_points(points: &[LatticePoint]) -> Result<Self, MetricError> {
        let mut dist = vec![vec![0; points.len()]; points.len()];
        for i in 0..points.len() {
            for j in 0..points.len() {
                dist[i][j] = l1_distance(&points[i], &points[j])?;
            }
        }
        Self::new(dist)
    }

    /// `Z ∩ [0, m-1]`.
    pub fn path(m: usize) -> Self {
        let dist = (0..m)
            .map(|i| (0..m).map(|j| i.abs_diff(j) as u64).collect())
            .collect();
        Self::new(dist).expect("path metric is valid")
    }

    /// Graph metric of the cycle on `m` vertices.
    pub fn cycle(m: usize) -> Self {
        let dist = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let d = i.abs_diff(j);
                        d.min(m - d) as u64
                    })
                    .collect()
            })
            .collect();
        Self::new(dist).expect("cycle metric is valid")
    }

    /// `m` points at mutual distance 1.
    pub fn discrete(m: usize) -> Self {
        let dist = (0..m)
            .map(|i| (0..m).map(|j| u64::from(i != j)).collect())
            .collect();
        Self::new(dist).expect("discrete metric is valid")
    }

    pub fn size(&self) -> usize {
        self.dist.len()
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.dist
    }

    pub fn diameter(&self) -> u64 {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.size()
    }
}

impl MetricSpace for FiniteMetricSpace {
    type Point = usize;
    type Region = ();

    fn distance(&self, p: &usize, q: &usize) -> u64 {
        self.dist[*p][*q]
    }

    fn validate_point(&self, p: &usize) -> Result<(), MetricError> {
        if *p >= self.size() {
            return Err(MetricError::PointOutOfRange {
                index: *p,
                size: self.size(),
            });
        }
        Ok(())
    }

    /// The whole space bounds every subset.
    fn n_bound(&self, _t: u64) -> Result<u64, MetricError> {
        Ok(self.size() as u64)
    }

    fn common_ball(&self, anchors: &[usize], radius: u64) -> Vec<usize> {
        if anchors.is_empty() {
            return Vec::new();
        }
        self.points()
            .filter(|&q| anchors.iter().all(|&a| self.dist[a][q] <= radius))
            .collect()
    }

    fn region_contains(&self, _region: &(), _p: &usize) -> bool {
        true
    }
}

/// Diameter of a nonempty point set.
pub fn diameter<M: MetricSpace>(space: &M, points: &[M::Point]) -> Result<u64, MetricError> {
    if points.is_empty() {
        return Err(MetricError::EmptySet);
    }
    for p in points {
        space.validate_point(p)?;
    }
    Ok(raw_diameter(space, points))
}

pub(crate) fn raw_diameter<M: MetricSpace>(space: &M, points: &[M::Point]) -> u64 {
    let mut d = 0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max(space.distance(p, q));
        }
    }
    d
}

/// Largest distance from `p` to any point of `points`.
pub(crate) fn eccentricity<M: MetricSpace>(space: &M, p: &M::Point, points: &[M::Point]) -> u64 {
    points.iter().map(|q| space.distance(p, q)).max().unwrap_or(0)
}

/// A finite nonempty subset of a space, sorted and duplicate free, with its
/// diameter cached. Doubles as a vertex of the subdivided Rips complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet<P> {
    points: Vec<P>,
    diam: u64,
}

impl<P: Clone + Ord> VertexSet<P> {
    pub fn new<M>(space: &M, mut points: Vec<P>) -> Result<Self, MetricError>
    where
        M: MetricSpace<Point = P>,
    {
        if points.is_empty() {
            return Err(MetricError::EmptySet);
        }
        for p in &points {
            space.validate_point(p)?;
        }
        points.sort();
        points.dedup();
        let diam = raw_diameter(space, &points);
        Ok(VertexSet { points, diam })
    }

    /// Builds from points known to be valid, sorted and distinct.
    pub(crate) fn from_sorted_unchecked<M>(space: &M, points: Vec<P>) -> Self
    where
        M: MetricSpace<Point = P>,
    {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        let diam = raw_diameter(space, &points);
        VertexSet { points, diam }
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn diam(&self) -> u64 {
        self.diam
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: &P) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_subset_of(&self, other: &VertexSet<P>) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    /// `self ∪ extra`.
    pub fn union_with<M>(&self, space: &M, extra: &[P]) -> Self
    where
        M: MetricSpace<Point = P>,
    {
        let mut pts = self.points.clone();
        pts.extend(extra.iter().cloned());
        pts.sort();
        pts.dedup();
        Self::from_sorted_unchecked(space, pts)
    }
}

impl<P: Serialize> Serialize for VertexSet<P> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.points.serialize(s)
    }
}

/// Parses a JSON array of integer arrays such as `[[0,0],[1,2]]`.
pub fn parse_point_set(json: &str) -> Result<Vec<LatticePoint>, MetricError> {
    let points: Vec<LatticePoint> =
        serde_json::from_str(json).map_err(|e| MetricError::Parse(e.to_string()))?;
    let first = points.first().ok_or(MetricError::EmptySet)?;
    if first.dim() == 0 {
        return Err(MetricError::ZeroDimension);
    }
    if let Some(bad) = points.iter().find(|p| p.dim() != first.dim()) {
        return Err(MetricError::DimensionMismatch {
            left: first.dim(),
            right: bad.dim(),
        });
    }
    Ok(points)
}
