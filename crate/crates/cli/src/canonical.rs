//! Orbit representatives of lattice subsets under translations and signed
//! coordinate permutations, the ℓ¹ isometries of `Z^n`.

use rips_morse::metric::MetricError;
use rips_morse::{Lattice, LatticePoint, VertexSet, Window};
use serde::Serialize;

/// Lexicographically least translated image of a set over all signed
/// permutations, with the minimum corner at the origin.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CanonicalKey(pub Vec<LatticePoint>);

/// A signed permutation: coordinate `i` of the image is `sign[i] * x[perm[i]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub sign: Vec<i64>,
}

impl SignedPermutation {
    pub fn apply(&self, p: &LatticePoint) -> LatticePoint {
        LatticePoint(self.perm.iter().zip(&self.sign).map(|(&j, &s)| s * p.0[j]).collect())
    }
}

/// All `2^n n!` signed permutations of `n` coordinates.
pub fn hyperoctahedral_group(n: usize) -> Vec<SignedPermutation> {
    let mut perms = vec![Vec::new()];
    for k in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    perms.sort();
    let mut group = Vec::with_capacity(perms.len() << n);
    for perm in perms {
        for signs in 0u32..1 << n {
            let sign = (0..n).map(|i| if signs >> i & 1 == 1 { -1 } else { 1 }).collect();
            group.push(SignedPermutation { perm: perm.clone(), sign });
        }
    }
    group
}

fn normalized(points: impl Iterator<Item = LatticePoint>) -> Vec<LatticePoint> {
    let mut pts: Vec<LatticePoint> = points.collect();
    let n = pts[0].dim();
    let lo: Vec<i64> = (0..n).map(|i| pts.iter().map(|p| p.0[i]).min().unwrap()).collect();
    for p in &mut pts {
        for (c, l) in p.0.iter_mut().zip(&lo) {
            *c -= l;
        }
    }
    pts.sort();
    pts
}

pub fn canonical_key_with(group: &[SignedPermutation], points: &[LatticePoint]) -> CanonicalKey {
    assert!(!points.is_empty(), "canonical keys need a nonempty set");
    let best = group
        .iter()
        .map(|g| normalized(points.iter().map(|p| g.apply(p))))
        .min()
        .expect("the group contains the identity");
    CanonicalKey(best)
}

pub fn canonical_key(points: &[LatticePoint]) -> CanonicalKey {
    canonical_key_with(&hyperoctahedral_group(points[0].dim()), points)
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("max size must be at least 2, got {0}")]
    MaxSizeTooSmall(usize),
    #[error("diameter t must be positive")]
    ZeroDiameter,
    #[error("window dimension {window} does not match n = {n}")]
    WindowDimension { window: usize, n: usize },
    #[error("window is too large to enumerate ({0} points)")]
    WindowTooLarge(u64),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

const MAX_WINDOW_POINTS: u64 = 1 << 16;

/// One representative per orbit of sets with diameter exactly `t` and at most
/// `max_size` points whose canonical form fits in the window's shape
/// `[0, hi − lo]`. Output is sorted by canonical key.
pub fn enumerate_canonical_sets(
    n: usize,
    t: u64,
    max_size: usize,
    window: &Window,
) -> Result<Vec<VertexSet<LatticePoint>>, EnumerationError> {
    let lattice = Lattice::new(n)?;
    if max_size < 2 {
        return Err(EnumerationError::MaxSizeTooSmall(max_size));
    }
    if t == 0 {
        return Err(EnumerationError::ZeroDiameter);
    }
    if window.dim() != n {
        return Err(EnumerationError::WindowDimension { window: window.dim(), n });
    }
    let count = window.point_count().unwrap_or(u64::MAX);
    if count > MAX_WINDOW_POINTS {
        return Err(EnumerationError::WindowTooLarge(count));
    }
    let extent: Vec<i64> = (0..n).map(|i| window.hi().0[i] - window.lo().0[i]).collect();
    let shape = Window::new(LatticePoint::origin(n), LatticePoint(extent))?;
    let points: Vec<LatticePoint> = shape.points().collect();
    let group = hyperoctahedral_group(n);

    let mut found = Vec::new();
    let mut chosen = Vec::new();
    extend_cliques(&points, t, max_size, &mut chosen, &mut |set| {
        if set.len() < 2 {
            return;
        }
        let pts: Vec<LatticePoint> = set.iter().map(|&i| points[i].clone()).collect();
        let diam = diam_of(&pts);
        if diam != t {
            return;
        }
        for i in 0..n {
            if pts.iter().map(|p| p.0[i]).min() != Some(0) {
                return;
            }
        }
        if canonical_key_with(&group, &pts).0 == pts {
            found.push(pts);
        }
    });
    found.sort();
    Ok(found
        .into_iter()
        .map(|pts| VertexSet::new(&lattice, pts).expect("window points are valid"))
        .collect())
}

fn diam_of(pts: &[LatticePoint]) -> u64 {
    let mut d = 0;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            d = d.max(l1(p, q));
        }
    }
    d
}

fn l1(p: &LatticePoint, q: &LatticePoint) -> u64 {
    p.0.iter().zip(&q.0).map(|(a, b)| a.abs_diff(*b)).sum()
}

/// Visits every set of pairwise distance `<= t` that extends `chosen` by
/// later indices, up to `max_size` points.
fn extend_cliques(
    points: &[LatticePoint],
    t: u64,
    max_size: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    visit(chosen);
    if chosen.len() == max_size {
        return;
    }
    let start = chosen.last().map_or(0, |&i| i + 1);
    for j in start..points.len() {
        if chosen.iter().all(|&i| l1(&points[i], &points[j]) <= t) {
            chosen.push(j);
            extend_cliques(points, t, max_size, chosen, visit);
            chosen.pop();
        }
    }
}
