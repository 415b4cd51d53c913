//! The Morse function `h(S) = diam(S) − (|S|−1)/n_diam(S)` on the subdivided
//! Rips complex, descending links, and filtration checks.

use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complex::{is_cone, join, nerve_of_coface_cover, order_complex, rips_complex, ComplexError};
use crate::complex::{FinitePoset, SimplicialComplex};
use crate::homology::{
    contractibility_verdict, reduced_betti, BettiVector, ContractibilityVerdict, HomologyError, JoinSide, VerdictStatus,
    Witness,
};
use crate::metric::{eccentricity, FiniteMetricSpace, MetricError, MetricSpace, VertexSet};
use crate::rational::{floor_i64, int, serde_fraction_opt, to_fraction_string, Rational};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MorseError {
    #[error("|S| = {size} exceeds n_t = {bound} at diameter {diam}")]
    BoundViolated { size: usize, bound: u64, diam: u64 },
    #[error("{size} points exceed the face-link cap of {cap}")]
    FaceCap { size: usize, cap: usize },
    #[error("{count} coface candidates exceed the cap of {cap}; use the nerve path")]
    CofaceCap { count: usize, cap: usize },
    #[error("filtration check needs s < t, got s = {s}, t = {t}")]
    EmptyBand { s: u64, t: u64 },
    #[error("space has {size} points, above the cap of {cap}")]
    SpaceTooLarge { size: usize, cap: usize },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// An exact value of `h`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorseValue(pub Rational);

impl fmt::Display for MorseValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_fraction_string(&self.0))
    }
}

impl Serialize for MorseValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn morse_h<M: MetricSpace>(space: &M, s: &VertexSet<M::Point>) -> Result<MorseValue, MorseError> {
    let diam = s.diam();
    let bound = space.n_bound(diam)?;
    if s.len() as u64 > bound {
        return Err(MorseError::BoundViolated {
            size: s.len(),
            bound,
            diam,
        });
    }
    let h = int(diam as i64) - Rational::new((s.len() as i64 - 1).into(), (bound as i64).into());
    Ok(MorseValue(h))
}

/// Proper nonempty subsets of `s`, in increasing bitmask order over the
/// sorted points.
fn proper_subsets<'a, M: MetricSpace>(
    space: &'a M,
    s: &'a VertexSet<M::Point>,
) -> impl Iterator<Item = VertexSet<M::Point>> + 'a {
    let k = s.len();
    let pts = s.points();
    (1u64..(1u64 << k) - 1).map(move |mask| {
        let sub = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| pts[i].clone()).collect();
        VertexSet::from_sorted_unchecked(space, sub)
    })
}

fn check_face_cap(size: usize, cap: usize) -> Result<(), MorseError> {
    if size > cap || size >= 64 {
        return Err(MorseError::FaceCap { size, cap });
    }
    Ok(())
}

/// Proper subsets of strictly smaller diameter, ordered by inclusion.
pub fn face_link_poset<M: MetricSpace>(
    space: &M,
    s: &VertexSet<M::Point>,
    cap: usize,
) -> Result<FinitePoset<VertexSet<M::Point>>, MorseError> {
    check_face_cap(s.len(), cap)?;
    let elements: Vec<_> = proper_subsets(space, s).filter(|f| f.diam() < s.diam()).collect();
    Ok(FinitePoset::by_inclusion(elements)?)
}

/// Points outside `s` within `diam(s)` of all of `s`; the only points that
/// can enlarge `s` without raising its diameter.
pub fn coface_candidates<M: MetricSpace>(
    space: &M,
    s: &VertexSet<M::Point>,
    region: Option<&M::Region>,
) -> Result<Vec<M::Point>, MorseError> {
    let ball = space.common_ball_within(s.points(), s.diam(), region)?;
    Ok(ball.into_iter().filter(|p| !s.contains(p)).collect())
}

/// The poset `{S̃ : S ⊊ S̃ ⊆ S ∪ candidates, diam S̃ = diam S}`.
pub fn coface_link_poset<M: MetricSpace>(
    space: &M,
    s: &VertexSet<M::Point>,
    candidates: &[M::Point],
    cap: usize,
) -> Result<FinitePoset<VertexSet<M::Point>>, MorseError> {
    let count = candidates.len();
    if count > cap || count >= 64 {
        return Err(MorseError::CofaceCap { count, cap });
    }
    let elements: Vec<_> = (1u64..1u64 << count)
        .map(|mask| {
            let extra: Vec<_> = (0..count)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| candidates[i].clone())
                .collect();
            s.union_with(space, &extra)
        })
        .filter(|c| c.diam() == s.diam())
        .collect();
    Ok(FinitePoset::by_inclusion(elements)?)
}

pub fn coface_link_complex<M: MetricSpace>(
    space: &M,
    s: &VertexSet<M::Point>,
    region: Option<&M::Region>,
    cap: usize,
) -> Result<SimplicialComplex<VertexSet<M::Point>>, MorseError> {
    let candidates = coface_candidates(space, s, region)?;
    Ok(order_complex(&coface_link_poset(space, s, &candidates, cap)?))
}

/// The descending link of `s`: the join of the face and coface links.
pub fn descending_link<M: MetricSpace>(
    space: &M,
    s: &VertexSet<M::Point>,
    region: Option<&M::Region>,
    config: &LinkConfig,
) -> Result<SimplicialComplex<VertexSet<M::Point>>, MorseError> {
    let face = order_complex(&face_link_poset(space, s, config.face_cap)?);
    let coface = coface_link_complex(space, s, region, config.coface_cap)?;
    Ok(join(&face, &coface)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkConfig {
    /// Largest `|S|` whose face-link subsets are enumerated at all.
    pub face_cap: usize,
    /// Largest `|S|` whose face link is analysed directly.
    pub direct_face_cap: usize,
    /// Largest candidate count for the direct coface link.
    pub coface_cap: usize,
    /// Try the closure-operator and nerve certificates before the direct path.
    pub use_covering: bool,
    /// Also run the direct coface path after a nerve certificate and compare.
    pub cross_check: bool,
}

impl Default for LinkConfig {
    fn default() -> Self {
        LinkConfig {
            face_cap: 16,
            direct_face_cap: 7,
            coface_cap: 6,
            use_covering: true,
            cross_check: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LinkMethod {
    #[serde(rename = "direct")]
    Direct,
    #[serde(rename = "nerve")]
    Nerve,
    #[serde(rename = "closure-operator")]
    ClosureOperator,
}

impl LinkMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            LinkMethod::Direct => "direct",
            LinkMethod::Nerve => "nerve",
            LinkMethod::ClosureOperator => "closure-operator",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescendingLinkReport<P> {
    pub subject: VertexSet<P>,
    pub diam: u64,
    pub morse_value: MorseValue,
    #[serde(with = "serde_fraction_opt")]
    pub covering_radius: Option<Rational>,
    pub method: LinkMethod,
    pub face_link_verdict: ContractibilityVerdict<VertexSet<P>>,
    pub coface_link_verdict: ContractibilityVerdict<VertexSet<P>>,
    pub joined_verdict: ContractibilityVerdict<VertexSet<P>>,
    /// face-link subsets `S'` checked against `diam(S' ∪ {y}) < diam(S)`
    pub closure_checked: Option<usize>,
    /// size of the nerve's vertex set `Y`
    pub nerve_size: Option<usize>,
    pub coface_candidates: Option<usize>,
    /// direct coface status from a cross-check run
    pub direct_coface_status: Option<VerdictStatus>,
    pub notes: Vec<String>,
    pub violations: Vec<String>,
}

/// Verdict of a join from the verdicts of its factors.
pub fn join_verdict<L>(face: &ContractibilityVerdict<L>, coface: &ContractibilityVerdict<L>) -> ContractibilityVerdict<L> {
    if face.is_certified() {
        return ContractibilityVerdict::certified(Witness::JoinFactor { side: JoinSide::Face });
    }
    if coface.is_certified() {
        return ContractibilityVerdict::certified(Witness::JoinFactor { side: JoinSide::Coface });
    }
    // over a field the lowest nonzero degrees i, j give rank b_i·b_j in degree i+j+1
    match (&face.witness, &coface.witness) {
        (Witness::ReducedBetti { degree: i, rank: a }, Witness::ReducedBetti { degree: j, rank: b })
            if face.status == VerdictStatus::NotContractible && coface.status == VerdictStatus::NotContractible =>
        {
            ContractibilityVerdict::not_contractible(i + j + 1, a * b)
        }
        _ => ContractibilityVerdict::unknown(Witness::None),
    }
}

fn not_computed<L>() -> ContractibilityVerdict<L> {
    ContractibilityVerdict::unknown(Witness::None)
}

fn size_guard<L>(e: &MorseError) -> ContractibilityVerdict<L> {
    ContractibilityVerdict::unknown(Witness::SizeGuard { detail: e.to_string() })
}

/// Certifies the descending link of `s` by, in order, the closure-operator
/// argument on the face link, the nerve cone on the coface link, and direct
/// computation within the configured caps.
pub fn analyze_descending_link<M: MetricSpace>(
    space: &M,
    s: &VertexSet<M::Point>,
    region: Option<&M::Region>,
    config: &LinkConfig,
) -> Result<DescendingLinkReport<M::Point>, MorseError> {
    let t = s.diam();
    let morse_value = morse_h(space, s)?;
    let radius = if t >= 1 { space.covering_radius(t) } else { None };
    let mut report = DescendingLinkReport {
        subject: s.clone(),
        diam: t,
        morse_value,
        covering_radius: radius.clone(),
        method: LinkMethod::Direct,
        face_link_verdict: not_computed(),
        coface_link_verdict: not_computed(),
        joined_verdict: not_computed(),
        closure_checked: None,
        nerve_size: None,
        coface_candidates: None,
        direct_coface_status: None,
        notes: Vec::new(),
        violations: Vec::new(),
    };

    if config.use_covering {
        match &radius {
            Some(r) => covering_certificates(space, s, region, config, r, &mut report)?,
            None if t >= 1 => report.notes.push(format!("r_t is not available at t = {t}")),
            None => {}
        }
    }

    let face_done = report.face_link_verdict.is_certified();
    let coface_done = report.coface_link_verdict.is_certified();
    if !face_done && !coface_done {
        report.face_link_verdict = if s.len() > config.direct_face_cap {
            size_guard(&MorseError::FaceCap {
                size: s.len(),
                cap: config.direct_face_cap,
            })
        } else {
            contractibility_verdict(&order_complex(&face_link_poset(space, s, config.face_cap)?))
        };
    }
    if !face_done && (!coface_done || config.cross_check) {
        let candidates = coface_candidates(space, s, region)?;
        report.coface_candidates = Some(candidates.len());
        let direct = match coface_link_poset(space, s, &candidates, config.coface_cap) {
            Ok(poset) => contractibility_verdict(&order_complex(&poset)),
            Err(e @ MorseError::CofaceCap { .. }) => size_guard(&e),
            Err(e) => return Err(e),
        };
        if coface_done {
            if direct.status == VerdictStatus::NotContractible {
                report
                    .violations
                    .push("nerve certificate contradicts a noncontractible direct coface link".into());
            }
            report.direct_coface_status = Some(direct.status);
        } else {
            report.coface_link_verdict = direct;
        }
    }

    report.joined_verdict = join_verdict(&report.face_link_verdict, &report.coface_link_verdict);
    Ok(report)
}

fn covering_certificates<M: MetricSpace>(
    space: &M,
    s: &VertexSet<M::Point>,
    region: Option<&M::Region>,
    config: &LinkConfig,
    r: &Rational,
    report: &mut DescendingLinkReport<M::Point>,
) -> Result<(), MorseError> {
    let t = s.diam();
    // integer distances: d <= r iff d <= floor(r)
    let bound = floor_i64(r).max(0) as u64;

    if let Some(y) = s.points().iter().find(|y| eccentricity(space, y, s.points()) <= bound) {
        if check_face_cap(s.len(), config.face_cap).is_err() {
            report
                .notes
                .push(format!("closure operator applies but |S| = {} exceeds the face cap", s.len()));
        } else {
            let mut checked = 0;
            let mut failures = Vec::new();
            for sub in proper_subsets(space, s).filter(|f| f.diam() < t) {
                checked += 1;
                let image = sub.union_with(space, std::slice::from_ref(y));
                if image.diam() >= t || !sub.is_subset_of(&image) {
                    failures.push(sub);
                }
            }
            report.closure_checked = Some(checked);
            if failures.is_empty() {
                let apex = VertexSet::from_sorted_unchecked(space, vec![y.clone()]);
                report.face_link_verdict = ContractibilityVerdict::certified(Witness::ClosureOperator { apex });
                report.method = LinkMethod::ClosureOperator;
                return Ok(());
            }
            for f in failures {
                report
                    .violations
                    .push(format!("closure map leaves the face link at {:?}", f.points()));
            }
        }
    }

    let ys: Vec<M::Point> = space
        .common_ball_within(s.points(), bound, region)?
        .into_iter()
        .filter(|y| !s.contains(y))
        .collect();
    report.nerve_size = Some(ys.len());
    if ys.is_empty() {
        report
            .violations
            .push("no center within r_t of every point of S outside S".into());
        return Ok(());
    }
    let nerve = nerve_of_coface_cover(space, s, &ys, t)?;
    match is_cone(&nerve) {
        Some(y0) => {
            let apex = s.union_with(space, &[y0]);
            report.coface_link_verdict = ContractibilityVerdict::certified(Witness::NerveCone { apex });
            report.method = LinkMethod::Nerve;
        }
        None => report.notes.push("the nerve of the star cover is not a cone".into()),
    }
    Ok(())
}

/// Reduced Betti numbers of the coface link computed two ways: through the
/// nerve `Rips_t(Y)` and directly from the order complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NerveComparison {
    pub candidates: usize,
    pub nerve_size: usize,
    /// `Y` came from the `r_t` ball rather than all coface candidates
    pub uses_covering_radius: bool,
    pub nerve_betti: Option<BettiVector>,
    pub direct_betti: Option<BettiVector>,
}

impl NerveComparison {
    /// Both sides are acyclic, or neither is. Empty covers count as agreement
    /// when the direct link is empty too.
    pub fn agrees(&self) -> bool {
        self.nerve_betti.as_ref().map(BettiVector::is_trivial) == self.direct_betti.as_ref().map(BettiVector::is_trivial)
    }
}

/// Compares the nerve and direct coface links of `s`. `Y` is the `r_t` ball
/// when the covering argument reaches the nerve step, and otherwise every
/// coface candidate, which covers the link just as well.
pub fn compare_nerve_and_direct<M: MetricSpace>(
    space: &M,
    s: &VertexSet<M::Point>,
    region: Option<&M::Region>,
    cap: usize,
) -> Result<NerveComparison, MorseError> {
    let t = s.diam();
    let candidates = coface_candidates(space, s, region)?;
    let poset = coface_link_poset(space, s, &candidates, cap)?;
    let direct = order_complex(&poset);
    let direct_betti = if direct.is_empty() {
        None
    } else {
        Some(reduced_betti(&direct)?)
    };

    let radius = if t >= 1 { space.covering_radius(t) } else { None };
    let bound = radius.as_ref().map(|r| floor_i64(r).max(0) as u64);
    let closure_fires = bound.is_some_and(|b| s.points().iter().any(|y| eccentricity(space, y, s.points()) <= b));
    let (ys, uses_covering_radius) = match bound {
        Some(b) if !closure_fires => {
            let ys: Vec<_> = space
                .common_ball_within(s.points(), b, region)?
                .into_iter()
                .filter(|y| !s.contains(y))
                .collect();
            (ys, true)
        }
        _ => (candidates.clone(), false),
    };
    let nerve_betti = if ys.is_empty() {
        None
    } else {
        Some(reduced_betti(&nerve_of_coface_cover(space, s, &ys, t)?)?)
    };
    Ok(NerveComparison {
        candidates: candidates.len(),
        nerve_size: ys.len(),
        uses_covering_radius,
        nerve_betti,
        direct_betti,
    })
}

/// One band vertex in a filtration check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkSummary {
    pub subject: Vec<usize>,
    pub h: MorseValue,
    pub method: LinkMethod,
    pub face: VerdictStatus,
    pub coface: VerdictStatus,
    pub joined: VerdictStatus,
    pub witness: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub space_size: usize,
    pub s: u64,
    pub t: u64,
    pub band_size: usize,
    pub certified: usize,
    pub not_contractible: usize,
    pub unknown: usize,
    pub all_certified: bool,
    pub betti_s: BettiVector,
    pub betti_t: BettiVector,
    pub betti_equal: bool,
    pub links: Vec<LinkSummary>,
    pub violations: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub const FILTRATION_SPACE_CAP: usize = 9;

/// Checks the Morse lemma at homology level between `Rips_s` and `Rips_t`:
/// when every descending link with `s < h(S) <= t` is certified contractible,
/// the two complexes must have equal reduced Betti numbers.
pub fn filtration_check(
    space: &FiniteMetricSpace,
    s: u64,
    t: u64,
    cap: usize,
    config: &LinkConfig,
) -> Result<VerificationReport, MorseError> {
    if s >= t {
        return Err(MorseError::EmptyBand { s, t });
    }
    let m = space.size();
    if m > cap || m >= 64 {
        return Err(MorseError::SpaceTooLarge { size: m, cap });
    }
    let (lo, hi) = (int(s as i64), int(t as i64));
    let mut subjects: Vec<VertexSet<usize>> = (1u64..1u64 << m)
        .map(|mask| VertexSet::from_sorted_unchecked(space, (0..m).filter(|i| mask >> i & 1 == 1).collect()))
        .collect();
    subjects.sort();

    let mut links = Vec::new();
    let (mut certified, mut not_contractible, mut unknown) = (0, 0, 0);
    for subject in &subjects {
        let h = morse_h(space, subject)?;
        if !(h.0 > lo && h.0 <= hi) {
            continue;
        }
        let rep = analyze_descending_link(space, subject, None, config)?;
        match rep.joined_verdict.status {
            VerdictStatus::ContractibleCertified => certified += 1,
            VerdictStatus::NotContractible => not_contractible += 1,
            VerdictStatus::Unknown => unknown += 1,
        }
        links.push(LinkSummary {
            subject: subject.points().to_vec(),
            h,
            method: rep.method,
            face: rep.face_link_verdict.status,
            coface: rep.coface_link_verdict.status,
            joined: rep.joined_verdict.status,
            witness: rep.joined_verdict.witness_kind(),
        });
    }

    let points: Vec<usize> = space.points().collect();
    let betti_s = reduced_betti(&rips_complex(space, &points, s, None)?)?;
    let betti_t = reduced_betti(&rips_complex(space, &points, t, None)?)?;
    let betti_equal = betti_s.same_homology(&betti_t);
    let all_certified = certified == links.len();
    let mut violations = Vec::new();
    if all_certified && !betti_equal {
        violations.push(format!(
            "all band links certified but Betti numbers differ: {:?} vs {:?}",
            betti_s.0, betti_t.0
        ));
    }
    debug_assert!(lo < hi && !hi.is_zero());
    Ok(VerificationReport {
        space_size: m,
        s,
        t,
        band_size: links.len(),
        certified,
        not_contractible,
        unknown,
        all_certified,
        betti_s,
        betti_t,
        betti_equal,
        links,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{Lattice, LatticePoint};
    use crate::rational::ratio;

    fn z1(pts: &[i64]) -> (Lattice, VertexSet<LatticePoint>) {
        let l = Lattice::new(1).unwrap();
        let s = VertexSet::new(&l, pts.iter().map(|&x| LatticePoint(vec![x])).collect()).unwrap();
        (l, s)
    }

    fn labels(k: &SimplicialComplex<VertexSet<LatticePoint>>) -> Vec<Vec<i64>> {
        k.vertices().iter().map(|v| v.points().iter().map(|p| p.0[0]).collect()).collect()
    }

    #[test]
    fn morse_values() {
        let (l, s) = z1(&[5]);
        assert_eq!(morse_h(&l, &s).unwrap().0, int(0));
        let (l, s) = z1(&[0, 1]);
        assert_eq!(morse_h(&l, &s).unwrap().0, ratio(1, 2));
        let (l, s) = z1(&[0, 1, 2]);
        assert_eq!(morse_h(&l, &s).unwrap().to_string(), "4/3");
        let tiny = FiniteMetricSpace::discrete(2);
        let all = VertexSet::new(&tiny, vec![0, 1]).unwrap();
        assert_eq!(morse_h(&tiny, &all).unwrap().0, ratio(1, 2));
    }

    #[test]
    fn face_links() {
        let (l, s) = z1(&[3]);
        assert!(face_link_poset(&l, &s, 16).unwrap().is_empty());
        let (l, s) = z1(&[0, 1]);
        let p = face_link_poset(&l, &s, 16).unwrap();
        assert_eq!(p.len(), 2);
        assert!(!p.less(0, 1) && !p.less(1, 0));
        let (l, s) = z1(&[0, 2, 4]);
        let p = face_link_poset(&l, &s, 16).unwrap();
        let got: Vec<Vec<i64>> = p.elements().iter().map(|v| v.points().iter().map(|q| q.0[0]).collect()).collect();
        assert_eq!(got, vec![vec![0], vec![0, 2], vec![2], vec![2, 4], vec![4]]);
        let (l, s) = z1(&[0, 1, 2, 3]);
        assert!(matches!(face_link_poset(&l, &s, 3), Err(MorseError::FaceCap { .. })));
    }

    #[test]
    fn candidates() {
        let (l, s) = z1(&[0, 1]);
        assert!(coface_candidates(&l, &s, None).unwrap().is_empty());
        let (l, s) = z1(&[0, 2]);
        assert_eq!(coface_candidates(&l, &s, None).unwrap(), vec![LatticePoint(vec![1])]);
        let exact = crate::metric::Window::cube(1, 0, 2).unwrap();
        assert_eq!(coface_candidates(&l, &s, Some(&exact)).unwrap(), vec![LatticePoint(vec![1])]);
        let tight = crate::metric::Window::cube(1, 1, 2).unwrap();
        assert!(matches!(
            coface_candidates(&l, &s, Some(&tight)),
            Err(MorseError::Metric(MetricError::WindowTooSmall { .. }))
        ));

        let z2 = Lattice::new(2).unwrap();
        let s = VertexSet::new(&z2, vec![LatticePoint(vec![0, 0]), LatticePoint(vec![2, 0])]).unwrap();
        let c = coface_candidates(&z2, &s, None).unwrap();
        let want: Vec<LatticePoint> = [[1, -1], [1, 0], [1, 1]].iter().map(|p| LatticePoint(p.to_vec())).collect();
        assert_eq!(c, want);
        let k = coface_link_complex(&z2, &s, None, 6).unwrap();
        // all seven extensions keep diameter 2
        assert_eq!(k.vertex_count(), 7);
        assert!(reduced_betti(&k).unwrap().is_trivial());
        assert!(matches!(coface_link_complex(&z2, &s, None, 2), Err(MorseError::CofaceCap { .. })));
    }

    #[test]
    fn descending_links() {
        let config = LinkConfig::default();
        let (l, s) = z1(&[0]);
        let w = crate::metric::Window::cube(1, -1, 1).unwrap();
        assert!(descending_link(&l, &s, Some(&w), &config).unwrap().is_empty());

        let (l, s) = z1(&[0, 1]);
        let k = descending_link(&l, &s, None, &config).unwrap();
        assert_eq!(labels(&k), vec![vec![0], vec![1]]);
        assert_eq!(contractibility_verdict(&k), ContractibilityVerdict::not_contractible(0, 1));

        let (l, s) = z1(&[0, 2]);
        let k = descending_link(&l, &s, None, &config).unwrap();
        assert_eq!(is_cone(&k).map(|v| v.points()[..].to_vec()), Some(vec![0, 1, 2].into_iter().map(|x| LatticePoint(vec![x])).collect()));
    }

    #[test]
    fn analysis_paths() {
        let config = LinkConfig::default();
        // below the r_t threshold for n = 1 everything is direct
        let (l, s) = z1(&[0, 1]);
        let rep = analyze_descending_link(&l, &s, None, &config).unwrap();
        assert_eq!(rep.method, LinkMethod::Direct);
        assert_eq!(rep.joined_verdict.status, VerdictStatus::NotContractible);
        assert_eq!(rep.joined_verdict.witness, Witness::ReducedBetti { degree: 0, rank: 1 });

        let (l, s) = z1(&[0, 2]);
        let rep = analyze_descending_link(&l, &s, None, &config).unwrap();
        assert_eq!(rep.method, LinkMethod::Nerve);
        assert_eq!(rep.nerve_size, Some(1));
        assert!(rep.joined_verdict.is_certified());

        let (l, s) = z1(&[0, 1, 2]);
        let rep = analyze_descending_link(&l, &s, None, &config).unwrap();
        assert_eq!(rep.method, LinkMethod::ClosureOperator);
        assert_eq!(rep.closure_checked, Some(5));

        let z2 = Lattice::new(2).unwrap();
        let pts = [[0, 0], [6, 0], [3, 0], [3, 2]];
        let s = VertexSet::new(&z2, pts.iter().map(|p| LatticePoint(p.to_vec())).collect()).unwrap();
        assert_eq!(s.diam(), 6);
        let rep = analyze_descending_link(&z2, &s, None, &config).unwrap();
        assert_eq!(rep.method, LinkMethod::ClosureOperator);
        assert_eq!(rep.face_link_verdict.witness_kind(), "closure_operator");
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn joins_of_verdicts() {
        let nc = ContractibilityVerdict::<u8>::not_contractible(0, 1);
        let empty = ContractibilityVerdict::<u8>::not_contractible(-1, 1);
        assert_eq!(join_verdict(&nc, &empty), nc);
        assert_eq!(join_verdict(&nc, &nc), ContractibilityVerdict::not_contractible(1, 1));
        let yes = ContractibilityVerdict::<u8>::certified(Witness::Apex { vertex: 1 });
        assert!(join_verdict(&nc, &yes).is_certified());
        let unk = ContractibilityVerdict::<u8>::unknown(Witness::None);
        assert_eq!(join_verdict(&unk, &nc).status, VerdictStatus::Unknown);
    }

    #[test]
    fn filtration_on_a_path() {
        let p = FiniteMetricSpace::path(4);
        let rep = filtration_check(&p, 2, 3, FILTRATION_SPACE_CAP, &LinkConfig::default()).unwrap();
        assert!(rep.all_certified && rep.betti_equal && rep.passed());
        // only {0,3}-containing subsets have diameter 3
        assert_eq!(rep.band_size, 4);
        assert!(matches!(
            filtration_check(&p, 3, 3, 9, &LinkConfig::default()),
            Err(MorseError::EmptyBand { .. })
        ));
        assert!(matches!(
            filtration_check(&FiniteMetricSpace::path(10), 1, 2, 9, &LinkConfig::default()),
            Err(MorseError::SpaceTooLarge { .. })
        ));
        let d = FiniteMetricSpace::discrete(5);
        let rep = filtration_check(&d, 1, 2, 9, &LinkConfig::default()).unwrap();
        assert_eq!(rep.band_size, 0);
        assert!(rep.all_certified && rep.passed());
    }
}
