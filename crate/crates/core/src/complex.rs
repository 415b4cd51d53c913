//! Finite abstract simplicial complexes and the constructions used on them:
//! flag (Rips) complexes, order complexes, joins, cones and nerves.
//!
//! A complex is stored by its maximal simplices (facets) over a sorted vertex
//! list. Equality, cone checks and serialization work on facets; the full
//! simplex family is expanded on demand.

use std::collections::HashSet;
use std::fmt::Debug;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::metric::{MetricSpace, VertexSet};

/// Largest vertex count for which flag complexes are built without an
/// explicit dimension cap.
pub const UNCAPPED_VERTEX_LIMIT: usize = 20;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("adjacency is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("adjacency has a loop at vertex {0}")]
    Loop(usize),
    #[error("adjacency matrix has {rows} rows for {vertices} vertices")]
    Shape { rows: usize, vertices: usize },
    #[error("{vertices} vertices exceed {limit}; an explicit max_dim is required")]
    MaxDimRequired { vertices: usize, limit: usize },
    #[error("join factors share vertex labels")]
    OverlappingLabels,
    #[error("the cover is empty")]
    EmptyCover,
    #[error("cover element {0} is not an admissible coface direction")]
    NotACoface(String),
    #[error("order relation is not a strict partial order: {0}")]
    InvalidOrder(String),
    #[error("duplicate vertex labels")]
    DuplicateLabels,
    #[error("{count} simplices in one dimension exceed the guard of {limit}")]
    TooLarge { count: usize, limit: usize },
}

/// A finite simple graph with labelled vertices.
#[derive(Clone, Debug)]
pub struct Graph<L> {
    vertices: Vec<L>,
    adj: Vec<BitSet>,
}

impl<L: Clone + Ord> Graph<L> {
    /// Builds from an adjacency matrix indexed like `vertices`; the matrix
    /// must be symmetric with an empty diagonal.
    pub fn new(vertices: Vec<L>, adjacency: &[Vec<bool>]) -> Result<Self, ComplexError> {
        let m = vertices.len();
        if adjacency.len() != m || adjacency.iter().any(|r| r.len() != m) {
            return Err(ComplexError::Shape {
                rows: adjacency.len(),
                vertices: m,
            });
        }
        for i in 0..m {
            if adjacency[i][i] {
                return Err(ComplexError::Loop(i));
            }
            for j in 0..m {
                if adjacency[i][j] != adjacency[j][i] {
                    return Err(ComplexError::Asymmetric(i, j));
                }
            }
        }
        Self::from_fn_indexed(vertices, |i, j| adjacency[i][j])
    }

    /// Adjacency given by a symmetric predicate; loops are ignored.
    pub fn from_fn(vertices: Vec<L>, adjacent: impl Fn(&L, &L) -> bool) -> Result<Self, ComplexError> {
        let mut vertices = vertices;
        vertices.sort();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateLabels);
        }
        let m = vertices.len();
        let mut adj = vec![BitSet::new(m); m];
        for i in 0..m {
            for j in (i + 1)..m {
                if adjacent(&vertices[i], &vertices[j]) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        Ok(Graph { vertices, adj })
    }

    fn from_fn_indexed(vertices: Vec<L>, adjacent: impl Fn(usize, usize) -> bool) -> Result<Self, ComplexError> {
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        if order.windows(2).any(|w| vertices[w[0]] == vertices[w[1]]) {
            return Err(ComplexError::DuplicateLabels);
        }
        let m = vertices.len();
        let mut adj = vec![BitSet::new(m); m];
        for i in 0..m {
            for j in (i + 1)..m {
                if adjacent(order[i], order[j]) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        let vertices = order.iter().map(|&k| vertices[k].clone()).collect();
        Ok(Graph { vertices, adj })
    }

    pub fn from_edges(vertices: Vec<L>, edges: &[(L, L)]) -> Result<Self, ComplexError> {
        let g = Self::from_fn(vertices, |_, _| false)?;
        let mut adj = g.adj;
        for (a, b) in edges {
            let i = g.vertices.binary_search(a).map_err(|_| ComplexError::DuplicateLabels)?;
            let j = g.vertices.binary_search(b).map_err(|_| ComplexError::DuplicateLabels)?;
            if i == j {
                return Err(ComplexError::Loop(i));
            }
            adj[i].insert(j);
            adj[j].insert(i);
        }
        Ok(Graph {
            vertices: g.vertices,
            adj,
        })
    }

    pub fn vertices(&self) -> &[L] {
        &self.vertices
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    /// All maximal cliques as sorted index lists, in lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<Vec<u32>> {
        let m = self.vertices.len();
        let mut out = Vec::new();
        let mut r = Vec::new();
        bron_kerbosch(&self.adj, &mut r, BitSet::full(m), BitSet::new(m), &mut out);
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort();
        out
    }
}

fn bron_kerbosch(adj: &[BitSet], r: &mut Vec<u32>, p: BitSet, mut x: BitSet, out: &mut Vec<Vec<u32>>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    // Tomita pivot: the vertex of P ∪ X with most neighbours in P
    let mut pool = p.clone();
    pool.union_with(&x);
    let pivot = pool
        .iter()
        .max_by_key(|&u| (adj[u].intersection(&p).count(), std::cmp::Reverse(u)))
        .expect("nonempty pool");
    let mut p = p;
    for v in p.difference(&adj[pivot]).iter().collect::<Vec<_>>() {
        r.push(v as u32);
        bron_kerbosch(adj, r, p.intersection(&adj[v]), x.intersection(&adj[v]), out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// A finite strict partial order.
#[derive(Clone, Debug)]
pub struct FinitePoset<L> {
    elements: Vec<L>,
    /// `above[i]` holds every `j` with `elements[i] < elements[j]`.
    above: Vec<BitSet>,
}

impl<L: Clone + Ord + Debug> FinitePoset<L> {
    /// Builds from a strict order predicate and validates irreflexivity,
    /// antisymmetry and transitivity.
    pub fn new(elements: Vec<L>, less: impl Fn(&L, &L) -> bool) -> Result<Self, ComplexError> {
        let poset = Self::from_fn_unchecked(elements, less)?;
        let m = poset.elements.len();
        for i in 0..m {
            if poset.above[i].contains(i) {
                return Err(ComplexError::InvalidOrder(format!(
                    "{:?} < {:?}",
                    poset.elements[i], poset.elements[i]
                )));
            }
            for j in poset.above[i].iter() {
                if poset.above[j].contains(i) {
                    return Err(ComplexError::InvalidOrder(format!(
                        "{:?} and {:?} are mutually below each other",
                        poset.elements[i], poset.elements[j]
                    )));
                }
                for k in poset.above[j].iter() {
                    if !poset.above[i].contains(k) {
                        return Err(ComplexError::InvalidOrder(format!(
                            "{:?} < {:?} < {:?} but not {:?} < {:?}",
                            poset.elements[i],
                            poset.elements[j],
                            poset.elements[k],
                            poset.elements[i],
                            poset.elements[k]
                        )));
                    }
                }
            }
        }
        Ok(poset)
    }

    /// Builds without validating the order axioms.
    pub fn from_fn_unchecked(elements: Vec<L>, less: impl Fn(&L, &L) -> bool) -> Result<Self, ComplexError> {
        let mut elements = elements;
        elements.sort();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateLabels);
        }
        let m = elements.len();
        let mut above = vec![BitSet::new(m); m];
        for i in 0..m {
            for j in 0..m {
                if less(&elements[i], &elements[j]) {
                    above[i].insert(j);
                }
            }
        }
        Ok(FinitePoset { elements, above })
    }

    pub fn elements(&self) -> &[L] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    fn comparability_graph(&self) -> Graph<L> {
        let m = self.elements.len();
        let mut adj = self.above.clone();
        for (i, row) in self.above.iter().enumerate() {
            for j in row.iter() {
                adj[j].insert(i);
            }
        }
        debug_assert!(adj.iter().all(|r| r.len() == m));
        Graph {
            vertices: self.elements.clone(),
            adj,
        }
    }
}

impl<P: Clone + Ord + Debug> FinitePoset<VertexSet<P>> {
    /// Vertex sets ordered by proper inclusion.
    pub fn by_inclusion(elements: Vec<VertexSet<P>>) -> Result<Self, ComplexError> {
        Self::from_fn_unchecked(elements, |a, b| a.len() < b.len() && a.is_subset_of(b))
    }
}

/// A finite abstract simplicial complex, stored by its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex<L> {
    vertices: Vec<L>,
    facets: Vec<Vec<u32>>,
}

impl<L: Clone + Ord> SimplicialComplex<L> {
    pub fn empty() -> Self {
        SimplicialComplex {
            vertices: Vec::new(),
            facets: Vec::new(),
        }
    }

    /// The downward closure of `simplices`; empty simplices are ignored.
    pub fn from_simplices<I>(simplices: I) -> Self
    where
        I: IntoIterator<Item = Vec<L>>,
    {
        let simplices: Vec<Vec<L>> = simplices.into_iter().filter(|s| !s.is_empty()).collect();
        let mut vertices: Vec<L> = simplices.iter().flatten().cloned().collect();
        vertices.sort();
        vertices.dedup();
        let facets = simplices
            .iter()
            .map(|s| {
                let mut idx: Vec<u32> = s
                    .iter()
                    .map(|l| vertices.binary_search(l).expect("label collected") as u32)
                    .collect();
                idx.sort_unstable();
                idx.dedup();
                idx
            })
            .collect();
        Self::from_index_facets(vertices, facets)
    }

    /// The full simplex on `labels`.
    pub fn simplex(labels: Vec<L>) -> Self {
        Self::from_simplices([labels])
    }

    /// Sorted vertices plus arbitrary index simplices; keeps the maximal ones.
    pub(crate) fn from_index_facets(vertices: Vec<L>, mut simplices: Vec<Vec<u32>>) -> Self {
        simplices.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        simplices.dedup();
        let m = vertices.len();
        let mut kept: Vec<(Vec<u32>, BitSet)> = Vec::new();
        for s in simplices {
            let mut bits = BitSet::new(m);
            for &v in &s {
                bits.insert(v as usize);
            }
            let dominated = kept
                .iter()
                .any(|(f, fb)| f.len() > s.len() && s.iter().all(|&v| fb.contains(v as usize)));
            if !dominated {
                kept.push((s, bits));
            }
        }
        let mut facets: Vec<Vec<u32>> = kept.into_iter().map(|(f, _)| f).collect();
        facets.sort();
        SimplicialComplex { vertices, facets }
    }

    /// Sorted vertices plus facets already known to be an antichain.
    pub(crate) fn from_maximal_unchecked(vertices: Vec<L>, mut facets: Vec<Vec<u32>>) -> Self {
        facets.sort();
        SimplicialComplex { vertices, facets }
    }

    pub fn vertices(&self) -> &[L] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Facets as sorted vertex-index lists.
    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn facet_labels(&self) -> Vec<Vec<L>> {
        self.facets.iter().map(|f| self.labels_of(f)).collect()
    }

    pub fn labels_of(&self, simplex: &[u32]) -> Vec<L> {
        simplex.iter().map(|&i| self.vertices[i as usize].clone()).collect()
    }

    pub fn index_of(&self, label: &L) -> Option<u32> {
        self.vertices.binary_search(label).ok().map(|i| i as u32)
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    pub fn contains_simplex(&self, labels: &[L]) -> bool {
        let Some(mut idx) = labels
            .iter()
            .map(|l| self.index_of(l))
            .collect::<Option<Vec<u32>>>()
        else {
            return false;
        };
        if idx.is_empty() {
            return false;
        }
        idx.sort_unstable();
        idx.dedup();
        self.facets.iter().any(|f| is_sorted_subset(&idx, f))
    }

    /// Number of `k`-simplices for each `k`, computed without materializing
    /// more than one dimension at a time.
    pub fn f_vector(&self) -> Vec<usize> {
        match self.dim() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.simplices_of_dim(k).len()).collect(),
        }
    }

    /// Upper bound on the number of `k`-simplices (sum over facets).
    pub fn face_count_bound(&self, k: usize) -> usize {
        self.facets
            .iter()
            .map(|f| binomial(f.len(), k + 1))
            .fold(0usize, |a, b| a.saturating_add(b))
    }

    /// All `k`-simplices as sorted index lists, lexicographically ordered.
    pub fn simplices_of_dim(&self, k: usize) -> Vec<Vec<u32>> {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for f in &self.facets {
            if f.len() > k {
                for_each_subset(f, k + 1, |s| {
                    if !seen.contains(s) {
                        seen.insert(s.to_vec());
                    }
                });
            }
        }
        let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Like [`simplices_of_dim`](Self::simplices_of_dim) but refuses to
    /// expand more than `limit` simplices.
    pub fn simplices_of_dim_guarded(&self, k: usize, limit: usize) -> Result<Vec<Vec<u32>>, ComplexError> {
        let out = self.simplices_of_dim(k);
        if out.len() > limit {
            return Err(ComplexError::TooLarge {
                count: out.len(),
                limit,
            });
        }
        Ok(out)
    }

    /// Every simplex, grouped by dimension.
    pub fn all_simplices(&self) -> Vec<Vec<Vec<u32>>> {
        match self.dim() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.simplices_of_dim(k)).collect(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Checks the representation invariants: sorted distinct vertices,
    /// facets forming an antichain of sorted in-range simplices, and every
    /// vertex a 0-simplex.
    pub fn audit(&self) -> Result<(), String> {
        if self.vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err("vertices not sorted and distinct".into());
        }
        let m = self.vertices.len();
        let mut covered = BitSet::new(m);
        for f in &self.facets {
            if f.is_empty() {
                return Err("empty facet".into());
            }
            if f.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("facet {f:?} not sorted"));
            }
            if f.iter().any(|&v| v as usize >= m) {
                return Err(format!("facet {f:?} refers to a missing vertex"));
            }
            for &v in f {
                covered.insert(v as usize);
            }
        }
        if self.facets.windows(2).any(|w| w[0] >= w[1]) {
            return Err("facets not sorted and distinct".into());
        }
        for (i, a) in self.facets.iter().enumerate() {
            for (j, b) in self.facets.iter().enumerate() {
                if i != j && is_sorted_subset(a, b) {
                    return Err(format!("facet {a:?} is a face of {b:?}"));
                }
            }
        }
        if covered.count() != m {
            return Err("some vertex is not a 0-simplex".into());
        }
        // downward closure of the expanded family
        if let Some(d) = self.dim() {
            for k in 1..=d {
                let lower: HashSet<Vec<u32>> = self.simplices_of_dim(k - 1).into_iter().collect();
                for s in self.simplices_of_dim(k) {
                    for skip in 0..s.len() {
                        let mut face = s.clone();
                        face.remove(skip);
                        if !lower.contains(&face) {
                            return Err(format!("face {face:?} of {s:?} missing"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies an injective, order-agnostic relabelling.
    pub fn relabel<M: Clone + Ord>(&self, f: impl Fn(&L) -> M) -> SimplicialComplex<M> {
        SimplicialComplex::from_simplices(self.facet_labels().iter().map(|s| s.iter().map(&f).collect()))
    }

    /// Some vertex `v` such that `σ ∪ {v}` is a simplex for every simplex
    /// `σ`; the least such label is returned.
    pub fn cone_apex(&self) -> Option<&L> {
        if self.facets.is_empty() {
            return None;
        }
        // σ ∪ {v} ∈ K for all σ  ⟺  v lies in every facet
        let mut apex = BitSet::new(self.vertices.len());
        for &v in &self.facets[0] {
            apex.insert(v as usize);
        }
        for f in &self.facets[1..] {
            let mut bits = BitSet::new(self.vertices.len());
            for &v in f {
                bits.insert(v as usize);
            }
            apex = apex.intersection(&bits);
        }
        let first = apex.iter().next();
        first.map(|i| &self.vertices[i])
    }
}

impl<L: Serialize> Serialize for SimplicialComplex<L> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let facets: Vec<Vec<&L>> = self
            .facets
            .iter()
            .map(|f| f.iter().map(|&i| &self.vertices[i as usize]).collect())
            .collect();
        let mut st = s.serialize_struct("SimplicialComplex", 2)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.serialize_field("maximal_simplices", &facets)?;
        st.end()
    }
}

pub(crate) fn is_sorted_subset(a: &[u32], b: &[u32]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Calls `f` on every `k`-subset of the sorted slice, in lexicographic order.
pub(crate) fn for_each_subset(items: &[u32], k: usize, mut f: impl FnMut(&[u32])) {
    let n = items.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<u32> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        // rightmost position that can still advance
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        let i = i - 1;
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..k {
            buf[j] = items[idx[j]];
        }
    }
}

/// The clique complex of `graph`, truncated to dimension `max_dim` when given.
///
/// Graphs with more than [`UNCAPPED_VERTEX_LIMIT`] vertices need an explicit cap.
pub fn flag_complex<L: Clone + Ord>(
    graph: &Graph<L>,
    max_dim: Option<usize>,
) -> Result<SimplicialComplex<L>, ComplexError> {
    if max_dim.is_none() && graph.vertices.len() > UNCAPPED_VERTEX_LIMIT {
        return Err(ComplexError::MaxDimRequired {
            vertices: graph.vertices.len(),
            limit: UNCAPPED_VERTEX_LIMIT,
        });
    }
    Ok(flag_complex_unbounded(graph, max_dim))
}

pub(crate) fn flag_complex_unbounded<L: Clone + Ord>(
    graph: &Graph<L>,
    max_dim: Option<usize>,
) -> SimplicialComplex<L> {
    let cliques = graph.maximal_cliques();
    let facets = match max_dim {
        None => cliques,
        Some(d) => {
            let mut capped: Vec<Vec<u32>> = Vec::new();
            for c in cliques {
                if c.len() <= d + 1 {
                    capped.push(c);
                } else {
                    for_each_subset(&c, d + 1, |s| capped.push(s.to_vec()));
                }
            }
            capped.sort();
            capped.dedup();
            capped
        }
    };
    SimplicialComplex::from_maximal_unchecked(graph.vertices.clone(), facets)
}

/// `Rips_t` on the given points: simplices are sets of pairwise distance `<= t`.
pub fn rips_complex<M: MetricSpace>(
    space: &M,
    points: &[M::Point],
    t: u64,
    max_dim: Option<usize>,
) -> Result<SimplicialComplex<M::Point>, ComplexError> {
    let graph = Graph::from_fn(points.to_vec(), |a, b| space.distance(a, b) <= t)?;
    flag_complex(&graph, max_dim)
}

/// The complex of nonempty chains of `poset`.
pub fn order_complex<L: Clone + Ord + Debug>(poset: &FinitePoset<L>) -> SimplicialComplex<L> {
    flag_complex_unbounded(&poset.comparability_graph(), None)
}

/// The simplicial join `K * L`; the empty complex is its unit.
pub fn join<L: Clone + Ord>(
    k: &SimplicialComplex<L>,
    l: &SimplicialComplex<L>,
) -> Result<SimplicialComplex<L>, ComplexError> {
    if k.vertices.iter().any(|v| l.vertices.binary_search(v).is_ok()) {
        return Err(ComplexError::OverlappingLabels);
    }
    if k.is_empty() {
        return Ok(l.clone());
    }
    if l.is_empty() {
        return Ok(k.clone());
    }
    let mut vertices: Vec<L> = k.vertices.iter().chain(&l.vertices).cloned().collect();
    vertices.sort();
    let remap_k: Vec<u32> = k
        .vertices
        .iter()
        .map(|v| vertices.binary_search(v).unwrap() as u32)
        .collect();
    let remap_l: Vec<u32> = l
        .vertices
        .iter()
        .map(|v| vertices.binary_search(v).unwrap() as u32)
        .collect();
    let mut facets = Vec::with_capacity(k.facets.len() * l.facets.len());
    for a in &k.facets {
        for b in &l.facets {
            let mut f: Vec<u32> = a
                .iter()
                .map(|&i| remap_k[i as usize])
                .chain(b.iter().map(|&i| remap_l[i as usize]))
                .collect();
            f.sort_unstable();
            facets.push(f);
        }
    }
    Ok(SimplicialComplex::from_maximal_unchecked(vertices, facets))
}

/// Apex of `k` if it is a cone.
pub fn is_cone<L: Clone + Ord>(k: &SimplicialComplex<L>) -> Option<L> {
    k.cone_apex().cloned()
}

/// Nerve of the cover of the descending coface link of `s` by the stars
/// `Z_y = st(S ∪ {y})`, `y ∈ ys`. Subfamilies intersect exactly when their
/// centres have diameter `<= t`, so the nerve is the flag complex of that
/// relation on `ys`.
pub fn nerve_of_coface_cover<M: MetricSpace>(
    space: &M,
    s: &VertexSet<M::Point>,
    ys: &[M::Point],
    t: u64,
) -> Result<SimplicialComplex<M::Point>, ComplexError> {
    if ys.is_empty() {
        return Err(ComplexError::EmptyCover);
    }
    for y in ys {
        let ecc = s.points().iter().map(|p| space.distance(p, y)).max().unwrap_or(0);
        if s.contains(y) || ecc > t {
            return Err(ComplexError::NotACoface(format!("{y:?}")));
        }
    }
    let graph = Graph::from_fn(ys.to_vec(), |a, b| space.distance(a, b) <= t)?;
    Ok(flag_complex_unbounded(&graph, None))
}
