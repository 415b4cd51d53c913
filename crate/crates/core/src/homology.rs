//! Reduced simplicial homology over GF(2), elementary collapses and a
//! three-valued contractibility verdict.
//!
//! `ContractibleCertified` is only issued with a checkable witness (a cone
//! apex or a complete collapse sequence) and `NotContractible` only with a
//! nonzero reduced Betti number. Everything else is `Unknown`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::complex::SimplicialComplex;

/// Column limit for the dense elimination.
pub const MAX_COLUMNS: usize = 1 << 15;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("the complex is empty")]
    EmptyComplex,
    #[error("dimension {k} out of range for a complex of dimension {dim}")]
    DimensionOutOfRange { k: usize, dim: usize },
    #[error("{count} simplices in dimension {k} exceed the elimination limit of {limit}")]
    TooLarge { k: usize, count: usize, limit: usize },
}

/// A matrix over GF(2), stored as packed columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    columns: Vec<BitSet>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            columns: vec![BitSet::new(rows); cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.columns[c].contains(r)
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.columns[c].insert(r);
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    /// Rank by column reduction on lowest set bits.
    pub fn rank(&self) -> usize {
        let mut pivot_col: Vec<Option<usize>> = vec![None; self.rows];
        let mut reduced: Vec<BitSet> = Vec::with_capacity(self.columns.len());
        let mut rank = 0;
        for col in &self.columns {
            let mut c = col.clone();
            while let Some(low) = c.last() {
                match pivot_col[low] {
                    Some(j) => c.xor_with(&reduced[j]),
                    None => {
                        pivot_col[low] = Some(reduced.len());
                        rank += 1;
                        break;
                    }
                }
            }
            reduced.push(c);
        }
        rank
    }

    /// `self · other` over GF(2).
    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols(), other.rows, "shape mismatch");
        let columns = other
            .columns
            .iter()
            .map(|oc| {
                let mut acc = BitSet::new(self.rows);
                for k in oc.iter() {
                    acc.xor_with(&self.columns[k]);
                }
                acc
            })
            .collect();
        Gf2Matrix {
            rows: self.rows,
            columns,
        }
    }
}

/// Simplices of every dimension with index lookups, shared by the boundary
/// operators.
struct Chains {
    simplices: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
}

impl Chains {
    fn new<L: Clone + Ord>(k: &SimplicialComplex<L>, limit: usize) -> Result<Self, HomologyError> {
        let dim = k.dim().ok_or(HomologyError::EmptyComplex)?;
        let mut simplices = Vec::with_capacity(dim + 1);
        for d in 0..=dim {
            let s = k.simplices_of_dim(d);
            if s.len() > limit {
                return Err(HomologyError::TooLarge {
                    k: d,
                    count: s.len(),
                    limit,
                });
            }
            simplices.push(s);
        }
        let index = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(Chains { simplices, index })
    }

    fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    fn boundary(&self, k: usize) -> Gf2Matrix {
        if k == 0 {
            let mut m = Gf2Matrix::zeros(1, self.count(0));
            for c in 0..self.count(0) {
                m.set(0, c);
            }
            return m;
        }
        let mut m = Gf2Matrix::zeros(self.count(k - 1), self.count(k));
        for (c, s) in self.simplices[k].iter().enumerate() {
            for skip in 0..s.len() {
                let mut face = s.clone();
                face.remove(skip);
                m.set(self.index[k - 1][&face], c);
            }
        }
        m
    }
}

/// Boundary operator `∂_k` with rows indexed by `(k-1)`-simplices and
/// columns by `k`-simplices, both in lexicographic order. `∂_0` is the
/// augmentation, a single row of ones.
pub fn boundary_matrix<L: Clone + Ord>(k: &SimplicialComplex<L>, dim: usize) -> Result<Gf2Matrix, HomologyError> {
    let top = k.dim().ok_or(HomologyError::EmptyComplex)?;
    if dim > top {
        return Err(HomologyError::DimensionOutOfRange { k: dim, dim: top });
    }
    let chains = Chains::new(k, MAX_COLUMNS)?;
    Ok(chains.boundary(dim))
}

/// Reduced Betti numbers `β̃_0, …, β̃_d` over GF(2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// Lowest degree with a nonzero Betti number.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.0.iter().copied().enumerate().find(|&(_, b)| b != 0)
    }

    /// Reduced Euler characteristic `Σ (-1)^k β̃_k`.
    pub fn reduced_euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Same homology after trimming trailing zeros.
    pub fn same_homology(&self, other: &BettiVector) -> bool {
        let trim = |v: &[usize]| v.len() - v.iter().rev().take_while(|&&b| b == 0).count();
        self.0[..trim(&self.0)] == other.0[..trim(&other.0)]
    }
}

pub fn reduced_betti<L: Clone + Ord>(k: &SimplicialComplex<L>) -> Result<BettiVector, HomologyError> {
    reduced_betti_guarded(k, MAX_COLUMNS)
}

pub fn reduced_betti_guarded<L: Clone + Ord>(
    k: &SimplicialComplex<L>,
    limit: usize,
) -> Result<BettiVector, HomologyError> {
    let chains = Chains::new(k, limit)?;
    let d = chains.dim();
    // ranks[k] = rank ∂_k, with ∂_{d+1} = 0
    let ranks: Vec<usize> = (0..=d).map(|j| chains.boundary(j).rank()).chain([0]).collect();
    let betti = (0..=d)
        .map(|j| chains.count(j) - ranks[j] - ranks[j + 1])
        .collect();
    Ok(BettiVector(betti))
}

/// Outcome of the greedy collapse. Simplices are vertex-index lists of the
/// input complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseOutcome {
    pub collapsed: bool,
    /// `(free face, its unique coface)` in removal order.
    pub steps: Vec<(Vec<u32>, Vec<u32>)>,
    pub remaining: usize,
}

/// Greedy elementary collapses: always remove a free face whose coface has
/// the highest available dimension, lexicographically least face first.
/// `collapsed` is true iff a single vertex remains; false is inconclusive.
pub fn collapse_to_point<L: Clone + Ord>(k: &SimplicialComplex<L>) -> CollapseOutcome {
    let Some(dim) = k.dim() else {
        return CollapseOutcome {
            collapsed: false,
            steps: Vec::new(),
            remaining: 0,
        };
    };
    let mut simplices: Vec<Vec<u32>> = Vec::new();
    let mut dims: Vec<usize> = Vec::new();
    let mut id_of: HashMap<Vec<u32>, usize> = HashMap::new();
    for d in 0..=dim {
        for s in k.simplices_of_dim(d) {
            id_of.insert(s.clone(), simplices.len());
            simplices.push(s);
            dims.push(d);
        }
    }
    let n = simplices.len();
    let mut faces: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut cofaces: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, s) in simplices.iter().enumerate() {
        if s.len() < 2 {
            continue;
        }
        for skip in 0..s.len() {
            let mut f = s.clone();
            f.remove(skip);
            let fid = id_of[&f];
            faces[id].push(fid);
            cofaces[fid].push(id);
        }
    }
    drop(id_of);
    let mut alive = vec![true; n];
    let mut live_cofaces: Vec<usize> = cofaces.iter().map(Vec::len).collect();
    // ids are assigned in lexicographic order within each dimension
    let mut free: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); dim + 1];
    for id in 0..n {
        if live_cofaces[id] == 1 {
            free[dims[id]].insert(id);
        }
    }
    let mut remaining = n;
    let mut steps = Vec::new();
    while let Some(level) = (0..dim).rev().find(|&d| !free[d].is_empty()) {
        let tau = free[level].pop_first().expect("nonempty level");
        if !alive[tau] || live_cofaces[tau] != 1 {
            continue;
        }
        let sigma = *cofaces[tau]
            .iter()
            .find(|&&c| alive[c])
            .expect("free face has a live coface");
        alive[tau] = false;
        alive[sigma] = false;
        remaining -= 2;
        for &f in faces[sigma].iter().chain(&faces[tau]) {
            if f == tau || !alive[f] {
                continue;
            }
            live_cofaces[f] -= 1;
            if live_cofaces[f] == 1 {
                free[dims[f]].insert(f);
            }
        }
        steps.push((simplices[tau].clone(), simplices[sigma].clone()));
    }
    CollapseOutcome {
        collapsed: remaining == 1,
        steps,
        remaining,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictStatus {
    ContractibleCertified,
    NotContractible,
    Unknown,
}

/// One elementary collapse, by vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseStep<L> {
    pub face: Vec<L>,
    pub coface: Vec<L>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JoinSide {
    Face,
    Coface,
}

/// Evidence backing a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness<L> {
    /// Every simplex extends by this vertex.
    Apex { vertex: L },
    /// Elementary collapses ending in a single vertex.
    Collapse { steps: Vec<CollapseStep<L>> },
    /// A nonzero reduced Betti number; degree `-1` marks the empty complex.
    ReducedBetti { degree: i64, rank: usize },
    /// `x ↦ x ∪ {apex}` is a closure operator on the poset whose image has
    /// least element `apex`.
    ClosureOperator { apex: L },
    /// The nerve of the star cover is a cone; the star of `apex` meets all others.
    NerveCone { apex: L },
    /// A join with a certified contractible factor.
    JoinFactor { side: JoinSide },
    /// A size guard stopped the computation.
    SizeGuard { detail: String },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractibilityVerdict<L> {
    pub status: VerdictStatus,
    pub witness: Witness<L>,
}

impl<L> ContractibilityVerdict<L> {
    pub fn certified(witness: Witness<L>) -> Self {
        ContractibilityVerdict {
            status: VerdictStatus::ContractibleCertified,
            witness,
        }
    }

    pub fn not_contractible(degree: i64, rank: usize) -> Self {
        ContractibilityVerdict {
            status: VerdictStatus::NotContractible,
            witness: Witness::ReducedBetti { degree, rank },
        }
    }

    pub fn unknown(witness: Witness<L>) -> Self {
        ContractibilityVerdict {
            status: VerdictStatus::Unknown,
            witness,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.status == VerdictStatus::ContractibleCertified
    }

    /// Short name of the witness kind, for summaries.
    pub fn witness_kind(&self) -> &'static str {
        match self.witness {
            Witness::Apex { .. } => "apex",
            Witness::Collapse { .. } => "collapse",
            Witness::ReducedBetti { .. } => "reduced_betti",
            Witness::ClosureOperator { .. } => "closure_operator",
            Witness::NerveCone { .. } => "nerve_cone",
            Witness::JoinFactor { .. } => "join_factor",
            Witness::SizeGuard { .. } => "size_guard",
            Witness::None => "none",
        }
    }
}

/// Cone check, then homology, then greedy collapse.
///
/// The empty complex is reported `NotContractible` with a degree `-1`
/// witness (it is the (-1)-sphere).
pub fn contractibility_verdict<L: Clone + Ord>(k: &SimplicialComplex<L>) -> ContractibilityVerdict<L> {
    if k.is_empty() {
        return ContractibilityVerdict::not_contractible(-1, 1);
    }
    if let Some(apex) = k.cone_apex() {
        return ContractibilityVerdict::certified(Witness::Apex {
            vertex: apex.clone(),
        });
    }
    match reduced_betti(k) {
        Ok(betti) => {
            if let Some((degree, rank)) = betti.first_nonzero() {
                return ContractibilityVerdict::not_contractible(degree as i64, rank);
            }
        }
        Err(e) => {
            return ContractibilityVerdict::unknown(Witness::SizeGuard {
                detail: e.to_string(),
            })
        }
    }
    let outcome = collapse_to_point(k);
    if outcome.collapsed {
        let steps = outcome
            .steps
            .iter()
            .map(|(f, c)| CollapseStep {
                face: k.labels_of(f),
                coface: k.labels_of(c),
            })
            .collect();
        ContractibilityVerdict::certified(Witness::Collapse { steps })
    } else {
        ContractibilityVerdict::unknown(Witness::None)
    }
}
